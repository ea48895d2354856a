use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::gb::RingPresentation;
use crate::poly::{parse_poly, FlatRing, OrderKind};
use crate::qthpower::{closure_powers, integral_closure};

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn poly_ideal(vars: &[&str], gens: &[&str]) -> Ideal {
    let r = FlatRing::new(2, vec![], names(vars), vec![], OrderKind::Global, None).unwrap();
    let pres = Arc::new(RingPresentation::new(&r, &[]).unwrap());
    let g = gens.iter().map(|s| parse_poly(s, &r).unwrap()).collect();
    Ideal::new(&pres, g).unwrap()
}

fn p(s: &str, i: &Ideal) -> Poly {
    parse_poly(s, i.ring()).unwrap()
}

#[test]
fn generators_land_in_level_one() {
    let i = poly_ideal(&["x", "y"], &["x^2", "y^2"]);
    let rp = build_rees(&i).unwrap();
    assert_eq!(rp.gvars.len(), 2);
    assert_eq!(rp.stages.len(), 1);
    for g in &i.generators {
        let (ok, ans) = rp.member(g, 1).unwrap();
        assert!(ok);
        assert_eq!(ans.k_attained, Some(1));
        assert!(ans.normal_form.is_monomial());
    }
    let (ok, ans) = rp.member(&p("x*y", &i), 1).unwrap();
    assert!(!ok);
    assert_eq!(ans.k_attained, Some(0));
    assert!(ans.lower_bound_only);
}

#[test]
fn closure_square_reaches_two() {
    let i = poly_ideal(&["x", "y"], &["x^2", "y^2"]);
    let (c, _) = integral_closure(&i, None).unwrap();
    let rp = extend_rees(&build_rees(&i).unwrap(), &[c]).unwrap();
    assert_eq!(rp.stages[1].added.len(), 1);
    let ans = member(&p("x^2*y^2", &i), 2, &rp).unwrap();
    assert_eq!(ans.k_attained, Some(2));
    let ans = member(&p("x*y", &i), 1, &rp).unwrap();
    assert_eq!(ans.k_attained, Some(1));
    assert!(!ans.lower_bound_only);
    assert!(rp.check_soundness().unwrap());
    assert!(rp.check_grading());
}

#[test]
fn unit_ideal_relation() {
    let i = poly_ideal(&["x"], &["1"]);
    let rp = build_rees(&i).unwrap();
    assert_eq!(rp.relations.generators.len(), 1);
    let rel = &rp.relations.generators[0];
    assert_eq!(rel.len(), 2);
    assert!(rel.terms().iter().any(|(m, _)| m.is_one()));
    assert!(rp.is_unit_ideal());
    let (ok, ans) = rp.member(&p("x+1", &i), 5).unwrap();
    assert!(ok);
    assert_eq!(ans.k_attained, None);
}

#[test]
fn zero_query_reaches_everything() {
    let i = poly_ideal(&["x", "y"], &["x", "y"]);
    let rp = build_rees(&i).unwrap();
    let ans = member(&Poly::zero(i.ring()), 7, &rp).unwrap();
    assert_eq!(ans.k_attained, None);
    assert!(ans.reaches(100));
    assert_eq!(ans.witness, "0");
}

#[test]
fn foreign_query_rejected() {
    let i = poly_ideal(&["x", "y"], &["x", "y"]);
    let other = poly_ideal(&["a"], &["a"]);
    let rp = build_rees(&i).unwrap();
    assert!(matches!(rp.nf(&p("a", &other)), Err(Error::RingMismatch(_))));
}

#[test]
fn index_names_option() {
    let i = poly_ideal(&["x", "y"], &["x^2", "y^3"]);
    let opts = ReesOptions { named_by_weights: false, ..Default::default() };
    let rp = ReesPresentation::build(&i, &opts).unwrap();
    let mut got: Vec<&str> = rp.gvars.iter().map(|v| v.name.as_str()).collect();
    got.sort();
    assert_eq!(got, vec!["G_1_0", "G_1_1"]);
}

#[test]
fn weight_names_disambiguate() {
    let i = poly_ideal(&["x", "y"], &["x^2", "y^2"]);
    let rp = build_rees(&i).unwrap();
    let mut got: Vec<&str> = rp.gvars.iter().map(|v| v.name.as_str()).collect();
    got.sort();
    assert_eq!(got, vec!["G_2", "G_2_1"]);
}

#[test]
fn block_order_is_sound() {
    let i = poly_ideal(&["x", "y"], &["x^3", "x*y", "y^3"]);
    let opts = ReesOptions { order: ReesOrder::Block, ..Default::default() };
    let res = closure_powers(&i, 2, None).unwrap();
    let rp = ReesPresentation::build(&i, &opts).unwrap().extend(&res.closures, true).unwrap();
    assert!(rp.check_soundness().unwrap());
    assert!(rp.check_grading());
    assert!(rp.member(&p("x^2*y^2", &i), 2).unwrap().0);
}

fn monomial_ideal() -> impl Strategy<Value = Vec<(u32, u32)>> {
    prop::collection::vec((0u32..4, 0u32..4), 1..4)
        .prop_filter("no unit", |v| v.iter().all(|&(a, b)| a + b > 0))
}

fn render(v: &[(u32, u32)]) -> Vec<String> {
    v.iter().map(|&(a, b)| format!("x^{a}*y^{b}")).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn products_of_generators_reach_their_length(
        gens in monomial_ideal(),
        picks in prop::collection::vec(0usize..8, 1..4),
    ) {
        let text = render(&gens);
        let refs: Vec<&str> = text.iter().map(String::as_str).collect();
        let i = poly_ideal(&["x", "y"], &refs);
        let res = closure_powers(&i, 2, None).unwrap();
        let rp = build_rees(&i).unwrap().extend(&res.closures, true).unwrap();
        prop_assert!(rp.check_soundness().unwrap());
        prop_assert!(rp.check_grading());
        let mut f = Poly::one(i.ring());
        for &k in &picks {
            f = f.mul(&i.generators[k % i.generators.len()]).unwrap();
        }
        let k = picks.len() as u32;
        let ans = member(&f, k, &rp).unwrap();
        prop_assert!(ans.reaches(k));
        for j in 0..k {
            prop_assert!(ans.reaches(j));
        }
        for (lvl, c) in res.closures.iter().enumerate() {
            for g in &c.generators {
                prop_assert!(rp.member(g, lvl as u32 + 1).unwrap().0);
            }
        }
    }
}
