use std::sync::Arc;

use qth_core::gb::RingPresentation;
use qth_core::oracle::{np_closure, ExponentCone};
use qth_core::poly::{parse_poly, FlatRing, OrderKind, Poly, WeightRow};
use qth_core::qthpower::{closure_powers, integral_closure, Ideal};
use qth_core::rees::{ReesOptions, ReesPresentation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn curve() -> Ideal {
    let rows = vec![WeightRow::new(vec![9, 3, 2], false), WeightRow::new(vec![0, 1, 0], true)];
    let r = FlatRing::new(2, names(&["y"]), names(&["x2", "x1"]), vec![], OrderKind::Global, Some(rows)).unwrap();
    let rel = parse_poly("y^2 + x1^9 + y*x2^3", &r).unwrap();
    let pres = Arc::new(RingPresentation::new(&r, &[rel]).unwrap());
    let gens = ["x2*x1", "x1^3", "x2^2"].iter().map(|s| parse_poly(s, &r).unwrap()).collect();
    Ideal::new(&pres, gens).unwrap()
}

#[test]
fn curve_rees_stages() {
    let i = curve();
    let res = closure_powers(&i, 3, None).unwrap();
    assert_eq!(res.stop_index, Some(3));
    let rp = ReesPresentation::build(&i, &ReesOptions::default())
        .unwrap()
        .extend(&res.closures[..3], true)
        .unwrap();
    assert_eq!(rp.stages.len(), 4);
    assert!(rp.stages[3].added.is_empty());
    assert_eq!(rp.stages[1].added.len(), 1);
    assert_eq!(rp.stages[2].added.len(), 2);
    assert!(rp.check_soundness().unwrap());
    assert!(rp.check_grading());
    let y = parse_poly("y", i.ring()).unwrap();
    let (ok, ans) = rp.member(&y, 1).unwrap();
    assert!(ok);
    assert_eq!(ans.k_attained, Some(1));
    assert!(!rp.member(&y, 2).unwrap().0);
}

fn units() -> (Ideal, Poly) {
    let rows = vec![
        WeightRow::new(vec![0, 1, 1], true),
        WeightRow::new(vec![0, 1, 0], true),
        WeightRow::new(vec![1, 0, 0], false),
    ];
    let r = FlatRing::new(2, names(&["u"]), names(&["x11", "x10"]), vec![], OrderKind::Local, Some(rows)).unwrap();
    let rel = parse_poly("1 - u - u^2*x11^3", &r).unwrap();
    let pres = Arc::new(RingPresentation::new(&r, &[rel]).unwrap());
    let gens = ["x10^3*u^2", "x11^3*x10*u"].iter().map(|s| parse_poly(s, &r).unwrap()).collect();
    let x = parse_poly("x11*x10*u", &r).unwrap();
    let y = parse_poly("x11", &r).unwrap();
    let z = parse_poly("x10^3*u^2", &r).unwrap();
    let f = x.pow(3).mul(&y.pow(2)).unwrap().mul(&z).unwrap();
    (Ideal::new(&pres, gens).unwrap(), f)
}

#[test]
fn units_membership_depth() {
    let (i, f) = units();
    let res = closure_powers(&i, 4, None).unwrap();
    let upto = res.stop_index.unwrap_or(res.closures.len()).min(res.closures.len());
    let rp = ReesPresentation::build(&i, &ReesOptions::default())
        .unwrap()
        .extend(&res.closures[..upto], res.stop_index.is_some())
        .unwrap();
    let (ok, ans) = rp.member(&f, 3).unwrap();
    assert!(ok);
    assert_eq!(ans.k_attained, Some(3));
    assert!(!rp.member(&f, 4).unwrap().0);
}

fn random_monomials(rng: &mut ChaCha8Rng, nvars: usize) -> Vec<Vec<u32>> {
    let n = rng.gen_range(1..=3);
    (0..n)
        .map(|_| loop {
            let e: Vec<u32> = (0..nvars).map(|_| rng.gen_range(0..5)).collect();
            if e.iter().any(|&a| a > 0) {
                break e;
            }
        })
        .collect()
}

#[test]
fn closure_agrees_with_newton_polyhedron() {
    let vars = ["a", "b", "c"];
    let r = FlatRing::new(2, vec![], names(&vars), vec![], OrderKind::Global, None).unwrap();
    let pres = Arc::new(RingPresentation::new(&r, &[]).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..12 {
        let exps = random_monomials(&mut rng, 3);
        let gens = exps
            .iter()
            .map(|e| Poly::monomial(&r, qth_core::poly::Monomial::from_exponents(e.clone())))
            .collect();
        let i = Ideal::new(&pres, gens).unwrap();
        let (c, trace) = integral_closure(&i, None).unwrap();
        assert!(trace.check_nesting().unwrap());
        let want = np_closure(&ExponentCone::new(exps.clone()), 24);
        let got: Vec<Vec<u32>> = c
            .minimalized()
            .unwrap()
            .leading_monomials()
            .iter()
            .map(|m| m.exponents().to_vec())
            .collect();
        let got = ExponentCone::new(got);
        assert_eq!(got.generators(), want.generators(), "ideal {exps:?}");
    }
}
