//! Acceptance criteria, one test per criterion. Each prints a single
//! `criterion N: PASS|FAIL ...` line (run with `--nocapture` to see them).

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::{Duration, Instant};

use qth_cli::commands::{monomial_cone, presentation};
use qth_cli::{load_problem, Problem};
use qth_core::gb::{homogenize, normal_form, standard_basis, Basis, RingPresentation};
use qth_core::oracle::{np_closure, np_member, ExponentCone, NpAnswer, DEFAULT_KBOUND};
use qth_core::poly::{format_poly, parse_poly, FlatRing, Monomial, OrderKind, Poly, WeightRow};
use qth_core::qthpower::{integral_closure, ChainTrace, Ideal, LocalShadow};
use qth_core::rees::ReesPresentation;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fixture(name: &str) -> Problem {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name);
    load_problem(&path).unwrap()
}

fn report(n: u32, ok: bool, started: Instant, limit: Duration, detail: &str) {
    let fast = started.elapsed() <= limit;
    let verdict = if ok && fast { "PASS" } else { "FAIL" };
    println!(
        "criterion {n}: {verdict} ({:.2?} of {:?}) {detail}",
        started.elapsed(),
        limit
    );
    assert!(ok, "criterion {n}: {detail}");
    assert!(fast, "criterion {n}: over the time limit");
}

fn set(polys: &[Poly]) -> BTreeSet<String> {
    polys.iter().map(format_poly).collect()
}

fn parsed(ring: &Arc<FlatRing>, src: &[&str]) -> BTreeSet<String> {
    src.iter().map(|s| format_poly(&parse_poly(s, ring).unwrap().monic())).collect()
}

fn trace_ok(t: &ChainTrace) -> bool {
    t.check_nesting().unwrap() && t.check_monotone().unwrap()
}

#[test]
fn criterion_1_two_rounds_at_q2() {
    let t0 = Instant::now();
    let pb = fixture("mono3.prob");
    let (c, trace) = integral_closure(&pb.ideal, Some(1)).unwrap();
    let ring = pb.ring();
    let input = ["a^5*b^4", "b^5*c^4", "c^5*a^4"];
    let nine = [
        "a^4*b^4*c", "a^4*b^3*c^2", "a^4*b^2*c^3", "a^4*b*c^4", "a^3*b^4*c^2",
        "a^3*b^2*c^4", "a^2*b^4*c^3", "a^2*b^3*c^4", "a*b^4*c^4",
    ];
    let mut round1 = parsed(ring, &nine);
    round1.extend(parsed(ring, &input));
    let mut round2 = round1.clone();
    round2.insert("a^3*b^3*c^3".into());
    let ok = trace.q_exp == 2
        && trace.rounds.len() == 4
        && set(&trace.rounds[1].generators) == round1
        && set(&trace.rounds[2].generators) == round2
        && set(&trace.rounds[3].generators) == round2
        && set(&c.generators) == round2
        && trace.stabilized
        && trace_ok(&trace);
    report(1, ok, t0, Duration::from_secs(60), "round 1 = I + nine, round 2 adds a^3*b^3*c^3, then stable");
}

#[test]
fn criterion_2_cyclic_needs_q4() {
    let t0 = Instant::now();
    let pb = fixture("cyclic4.prob");
    let target = pb.parse_poly("a1*a2*a3*a4").unwrap();
    let (c2, t2) = integral_closure(&pb.ideal, Some(1)).unwrap();
    let (c4, t4) = integral_closure(&pb.ideal, Some(2)).unwrap();
    let (_, cone) = monomial_cone(&pb.ideal).unwrap();
    let oracle = np_member(&[1, 1, 1, 1], &cone, DEFAULT_KBOUND);
    let ok = t2.q_exp == 2
        && t2.stabilized
        && !c2.contains(&target).unwrap()
        && t4.q_exp == 4
        && c4.contains(&target).unwrap()
        && matches!(oracle, NpAnswer::Member { k: 4, .. })
        && trace_ok(&t2)
        && trace_ok(&t4);
    report(2, ok, t0, Duration::from_secs(60), "Q = 2 misses a1*a2*a3*a4, Q = 4 finds it, oracle k = 4");
}

#[test]
fn criterion_3_membership_by_normal_form() {
    let t0 = Instant::now();
    let pb = fixture("units.prob");
    let rp = presentation(&pb, 4).unwrap();
    let f = pb.parse_poly("x^3*y^2*z").unwrap();
    let witness = parse_poly("G_4_3*G_4_2*G_3_0*s^3", &rp.ring).unwrap();
    let mut ok = rp.complete && rp.check_soundness().unwrap();
    for k in 1..=3 {
        let (yes, ans) = rp.member(&f, k).unwrap();
        ok &= yes && ans.normal_form == witness && ans.witness == "G_4_3*G_4_2*G_3_0";
    }
    let (four, _) = rp.member(&f, 4).unwrap();
    ok &= !four;
    // the same query against the Newton polyhedra of I^3 and I^4
    let sh = LocalShadow::new(&pb.ideal).unwrap();
    let a = sh.push(&f).unwrap().leading_monomial().unwrap().exponents().to_vec();
    let cone_of = |k: u32| monomial_cone(&sh.ideal.power(k).unwrap()).unwrap().1;
    ok &= a == vec![5, 6];
    ok &= np_member(&a, &cone_of(3), DEFAULT_KBOUND).is_member();
    ok &= matches!(np_member(&a, &cone_of(4), DEFAULT_KBOUND), NpAnswer::NotMember { .. });
    report(3, ok, t0, Duration::from_secs(10), "true for k <= 3 with witness G_4_3*G_4_2*G_3_0, false at k = 4");
}

/// Paper relation with `s` restored so that every term has the lowest grade.
fn with_s(rp: &ReesPresentation, src: &str) -> Poly {
    let p = parse_poly(src, &rp.ring).unwrap();
    let low = p.terms().iter().map(|(m, _)| rp.grade(m)).min().unwrap();
    let terms = p
        .terms()
        .iter()
        .map(|(m, c)| {
            let e = (rp.grade(m) - low) as u32;
            (m.mul(&Monomial::var(rp.ring.nvars(), rp.s, e)), *c)
        })
        .collect();
    Poly::from_terms(&rp.ring, terms).monic()
}

const LEVEL0: [&str; 7] = [
    "x2*x1 + G_5_1",
    "x1^3 + G_6_0",
    "x2^2 + G_6_2",
    "G_5_1*x2 + G_6_2*x1",
    "G_6_2*G_6_0 + G_5_1^2*x1",
    "G_6_0*x2 + G_5_1*x1^2",
    "y^2 + G_6_2*y*x2 + G_6_0^3",
];
const LEVEL1: [&str; 2] = ["y + G_9_0", "G_9_0^2 + G_9_0*G_6_2*x2 + G_6_0^3"];
const LEVEL2: [&str; 14] = [
    "G_9_0*x2 + G_12_1",
    "G_9_0*x1^2 + G_13_0",
    "G_9_0*G_5_1 + G_12_1*x1",
    "G_9_0*G_6_0 + G_13_0*x1",
    "G_9_0*G_6_2 + G_12_1*x2",
    "G_9_0^2 + G_6_0^3 + G_12_1*G_6_2",
    "G_12_1*G_6_0 + G_13_0*G_5_1",
    "G_12_1*G_9_0 + G_6_0^2*G_5_1*x1^2 + G_12_1*G_6_2*x2",
    "G_12_1^2 + G_6_0^2*G_5_1^2*x1 + G_12_1*G_6_2^2",
    "G_13_0*x2 + G_12_1*x1^2",
    "G_13_0*G_6_2 + G_12_1*G_5_1*x1",
    "G_13_0*G_9_0 + G_6_0^3*x1^2 + G_12_1*G_5_1^2",
    "G_13_0*G_12_1 + G_6_0^3*G_5_1*x1 + G_12_1*G_6_2*G_5_1*x1",
    "G_13_0^2 + G_6_0^4*x1 + G_12_1*G_5_1^2*x1^2",
];

#[test]
fn criterion_4_relation_lists() {
    let t0 = Instant::now();
    let pb = fixture("curve.prob");
    let rp = presentation(&pb, 2).unwrap();
    let paper = |src: &[&str]| -> BTreeSet<String> { src.iter().map(|s| format_poly(&with_s(&rp, s))).collect() };
    let ours = |k: usize| -> BTreeSet<String> { rp.new_relations(k).iter().map(|p| format_poly(&p.monic())).collect() };
    let l0 = ours(0) == paper(&LEVEL0);
    let l1 = ours(1) == paper(&LEVEL1);
    let (p2, o2) = (paper(&LEVEL2), ours(2));
    let literal = p2.intersection(&o2).count();
    // canonical form of a relation list: its reduced basis, no saturation
    let all: Vec<Poly> = LEVEL0.iter().chain(&LEVEL1).chain(&LEVEL2).map(|s| with_s(&rp, s)).collect();
    let canon = set(&rp.basis_of(&all).unwrap().generators);
    let mine = set(&rp.relations.generators);
    let l2 = o2.len() == LEVEL2.len() && canon == mine;
    let ok = l0 && l1 && l2 && rp.check_soundness().unwrap() && rp.check_grading();
    let detail = format!(
        "level 0 {}, level 1 {}, level 2 canonical {} (literal {literal}/{})",
        if l0 { "equal" } else { "differs" },
        if l1 { "equal" } else { "differs" },
        if l2 { "equal" } else { "differs" },
        LEVEL2.len()
    );
    report(4, ok, t0, Duration::from_secs(120), &detail);
}

#[test]
fn criterion_5_homogenized_warning() {
    let t0 = Instant::now();
    let names = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let local = FlatRing::new(2, vec![], names(&["x", "y"]), vec![], OrderKind::Local, None).unwrap();
    let gens = vec![parse_poly("1+x^2", &local).unwrap(), parse_poly("1+y^2", &local).unwrap()];
    let unit = standard_basis(&gens).unwrap().is_unit_ideal();
    let global = FlatRing::new(2, vec![], names(&["x", "y", "h"]), vec![], OrderKind::Global, None).unwrap();
    let gens = vec![parse_poly("1+x^2", &global).unwrap(), parse_poly("1+y^2", &global).unwrap()];
    let hom = homogenize(&gens, 2).unwrap();
    let pres = Arc::new(RingPresentation::new(&global, &[]).unwrap());
    let (c, trace) = integral_closure(&Ideal::new(&pres, hom.clone()).unwrap(), None).unwrap();
    let ok = unit
        && set(&hom) == parsed(&global, &["h^2+x^2", "h^2+y^2"])
        && set(&c.generators) == parsed(&global, &["h^2+x^2", "h^2+h*y+h*x+y*x", "h^2+y^2"])
        && trace_ok(&trace);
    report(5, ok, t0, Duration::from_secs(30), "local basis is <1>; homogenized closure has the three generators");
}

#[test]
fn criterion_6_unit_generators() {
    let t0 = Instant::now();
    let pb = fixture("unit_generators.prob");
    let (c, trace) = integral_closure(&pb.ideal, None).unwrap();
    let xy = pb.parse_poly("x*y").unwrap();
    let newton = np_closure(&ExponentCone::new(vec![vec![2, 0], vec![0, 2]]), DEFAULT_KBOUND);
    let ok = c.contains(&xy).unwrap()
        && set(&c.generators) == parsed(pb.ring(), &["x^2", "x*y", "y^2"])
        && newton.generators() == [vec![0, 2], vec![1, 1], vec![2, 0]]
        && trace_ok(&trace);
    report(6, ok, t0, Duration::from_secs(30), "closure of <x^5+x^2, y^5+y^2> is <x^2, x*y, y^2>");
}

fn random_monomial_ideal(rng: &mut ChaCha8Rng) -> (usize, Vec<Vec<u32>>) {
    let n = rng.gen_range(2..=3);
    let k = rng.gen_range(1..=4);
    let mut gens = Vec::new();
    while gens.len() < k {
        let e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=6)).collect();
        if e.iter().any(|&x| x > 0) {
            gens.push(e);
        }
    }
    (n, gens)
}

fn exponents(c: &Ideal) -> Vec<Vec<u32>> {
    let mut v: Vec<Vec<u32>> = c
        .generators
        .iter()
        .map(|g| g.leading_monomial().unwrap().exponents().to_vec())
        .collect();
    v.sort();
    v
}

#[test]
fn criterion_7_oracle_sweep() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(20240607);
    let mut agree = 0;
    let mut traces = true;
    let mut first_bad = String::new();
    for case in 0..50 {
        let (n, gens) = random_monomial_ideal(&mut rng);
        let names: Vec<String> = ["a", "b", "c"][..n].iter().map(|s| s.to_string()).collect();
        let ring = FlatRing::new(2, vec![], names, vec![], OrderKind::Global, None).unwrap();
        let pres = Arc::new(RingPresentation::new(&ring, &[]).unwrap());
        let polys = gens
            .iter()
            .map(|e| Poly::monomial(&ring, Monomial::from_exponents(e.clone())))
            .collect();
        let ideal = Ideal::new(&pres, polys).unwrap();
        let (c, trace) = integral_closure(&ideal, None).unwrap();
        traces &= trace_ok(&trace) && trace.q_exp > ideal.max_degree();
        let newton = np_closure(&ExponentCone::new(gens.clone()), DEFAULT_KBOUND);
        if exponents(&c.minimalized().unwrap()) == newton.generators() {
            agree += 1;
        } else if first_bad.is_empty() {
            first_bad = format!(" first mismatch: case {case} {gens:?}");
        }
    }
    let detail = format!("{agree}/50 agree{first_bad}");
    report(7, agree == 50 && traces, t0, Duration::from_secs(600), &detail);
}

fn random_ring(rng: &mut ChaCha8Rng) -> Arc<FlatRing> {
    let q = [2u32, 3, 5, 7][rng.gen_range(0..4)];
    let n = rng.gen_range(1..=4);
    let d = rng.gen_range(0..n);
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let (dep, ind) = names.split_at(d);
    let local = rng.gen_bool(0.5);
    let rows: Vec<WeightRow> = (0..rng.gen_range(1..=3))
        .map(|r| {
            let w = (0..n).map(|_| rng.gen_range(if r == 0 { 1..=5 } else { -3..=5 })).collect();
            WeightRow::new(w, if r == 0 { local } else { rng.gen_bool(0.5) })
        })
        .collect();
    let kind = if local { OrderKind::Local } else { OrderKind::Global };
    FlatRing::new(q, dep.to_vec(), ind.to_vec(), vec![], kind, Some(rows)).unwrap()
}

fn random_monomial(rng: &mut ChaCha8Rng, n: usize, top: u32) -> Monomial {
    Monomial::from_exponents((0..n).map(|_| rng.gen_range(0..=top)).collect())
}

fn random_poly(rng: &mut ChaCha8Rng, ring: &Arc<FlatRing>, terms: usize, top: u32) -> Poly {
    let q = ring.modulus();
    let t = (0..terms)
        .map(|_| (random_monomial(rng, ring.nvars(), top), rng.gen_range(0..q)))
        .collect();
    Poly::from_terms(ring, t)
}

#[test]
fn criterion_8_property_suites() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut violations = Vec::new();

    // ordering axioms
    for _ in 0..10_000 {
        let ring = random_ring(&mut rng);
        let n = ring.nvars();
        let (a, b, c) = (
            random_monomial(&mut rng, n, 4),
            random_monomial(&mut rng, n, 4),
            random_monomial(&mut rng, n, 4),
        );
        let ab = ring.compare(&a, &b);
        let ok = ab == ring.compare(&b, &a).reverse()
            && (ab.is_ne() || a == b)
            && ring.compare(&a.mul(&c), &b.mul(&c)) == ab
            && !(ab.is_lt() && ring.compare(&b, &c).is_lt() && !ring.compare(&a, &c).is_lt());
        if !ok {
            violations.push(format!("order {a:?} {b:?} {c:?}"));
        }
    }

    // parse and format round trip
    for _ in 0..1_000 {
        let ring = random_ring(&mut rng);
        let terms = rng.gen_range(0..6);
        let f = random_poly(&mut rng, &ring, terms, 5);
        let back = parse_poly(&f.to_string(), &ring).unwrap();
        if back != f {
            violations.push(format!("round trip {f}"));
        }
    }

    // bases: S-pairs reduce to zero and normal forms are idempotent
    let mut bases: Vec<Basis> = Vec::new();
    for name in ["mono3.prob", "cyclic4.prob", "curve.prob", "units.prob", "unit_generators.prob", "squares.prob"] {
        let pb = fixture(name);
        bases.push(pb.presentation.j.clone());
        bases.push(pb.ideal.basis().unwrap());
        if pb.presentation.is_global() {
            let (c, trace) = integral_closure(&pb.ideal, None).unwrap();
            bases.push(c.basis().unwrap());
            if !trace_ok(&trace) {
                violations.push(format!("chain {name}"));
            }
        }
    }
    for _ in 0..40 {
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let ring = FlatRing::new(3, vec![], names, vec![], OrderKind::Global, None).unwrap();
        let gens: Vec<Poly> = (0..3).map(|_| random_poly(&mut rng, &ring, 3, 3)).collect();
        bases.push(qth_core::gb::buchberger(&gens).unwrap());
    }
    for b in &bases {
        if !b.check_s_pairs().unwrap() {
            violations.push(format!("s-pairs of {:?}", b.generators.iter().map(format_poly).collect::<Vec<_>>()));
        }
        if b.kind == OrderKind::Global {
            for _ in 0..5 {
                let f = random_poly(&mut rng, &b.ring, 4, 6);
                let once = normal_form(&f, b).unwrap();
                if normal_form(&once, b).unwrap() != once {
                    violations.push(format!("nf idempotence {f}"));
                }
            }
        }
    }

    // soundness of every presentation built here
    for (name, kmax) in [("curve.prob", 2), ("units.prob", 4), ("unit_generators.prob", 2), ("squares.prob", 2)] {
        let rp = presentation(&fixture(name), kmax).unwrap();
        if !rp.check_soundness().unwrap() || !rp.check_grading() {
            violations.push(format!("rees {name}"));
        }
    }

    let detail = format!("{} violations {:?}", violations.len(), violations.iter().take(3).collect::<Vec<_>>());
    report(8, violations.is_empty(), t0, Duration::from_secs(600), &detail);
}
