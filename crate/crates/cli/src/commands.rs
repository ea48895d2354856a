use std::fmt::Write as _;

use qth_core::gb::Limits;
use qth_core::oracle::{certify_integral_with, np_closure, np_member, ExponentCone, NpAnswer};
use qth_core::poly::{FlatRing, Monomial, OrderKind, Poly};
use qth_core::qthpower::{
    closure_powers_with, integral_closure_with, ClosureOptions, Ideal, LocalShadow, PowerSeed,
};
use qth_core::rees::{ReesOptions, ReesPresentation};
use qth_core::{Error, Result};

use crate::problem::Problem;

/// Ascending by leading monomial, ties by text.
pub fn sorted(polys: &[Poly]) -> Vec<Poly> {
    let mut v = polys.to_vec();
    v.sort_by(|a, b| match (a.leading_monomial(), b.leading_monomial()) {
        (Some(x), Some(y)) => a.ring().compare(x, y).then_with(|| a.to_string().cmp(&b.to_string())),
        (x, y) => x.is_some().cmp(&y.is_some()),
    });
    v
}

fn list(out: &mut String, title: &str, polys: &[Poly], show: impl Fn(&Poly) -> String) {
    writeln!(out, "{title} ({}):", polys.len()).unwrap();
    for p in sorted(polys) {
        writeln!(out, "  {}", show(&p)).unwrap();
    }
}

fn plain(p: &Poly) -> String {
    p.to_string()
}

pub fn describe_ring(ring: &FlatRing) -> String {
    let dep = ring.dependent_names().join(", ");
    let ind = ring.independent_names().join(", ");
    let vars = if dep.is_empty() { ind } else { format!("{dep}; {ind}") };
    let kind = match ring.order_kind() {
        OrderKind::Global => "global",
        OrderKind::Local => "local",
    };
    let rows: Vec<String> = ring
        .rows()
        .iter()
        .map(|r| {
            let w: Vec<String> = r.weights.iter().map(|w| w.to_string()).collect();
            format!("{} [{}]", if r.local { "local" } else { "global" }, w.join(" "))
        })
        .collect();
    format!("F_{}[{}], {} order, rows {}", ring.modulus(), vars, kind, rows.join(", "))
}

pub fn gb(pb: &Problem, reduced: bool) -> Result<String> {
    let pres = &pb.presentation;
    if reduced && !pres.is_global() {
        return Err(Error::unsupported("reduced bases need a global order"));
    }
    let mut out = String::new();
    writeln!(out, "ring: {}", describe_ring(&pres.ring)).unwrap();
    let y: Vec<String> = pres.y.iter().map(|m| Poly::monomial(&pres.ring, m.clone()).to_string()).collect();
    writeln!(out, "free basis: {}", y.join(", ")).unwrap();
    list(&mut out, "relation basis", &pres.j.generators, plain);
    let b = pb.ideal.basis()?;
    let title = if pres.is_global() { "groebner basis" } else { "standard basis" };
    list(&mut out, title, &b.generators, plain);
    Ok(out)
}

pub fn nf(pb: &Problem, poly: &str) -> Result<String> {
    let f = pb.parse_poly(poly)?;
    Ok(format!("{}\n", pb.presentation.normal_form(&f)?))
}

pub struct ClosureFlags {
    pub e: Option<u32>,
    pub max_rounds: Option<usize>,
    pub box_bound: Option<u32>,
}

impl ClosureFlags {
    fn options(&self) -> ClosureOptions {
        let mut o = ClosureOptions {
            e: self.e,
            box_bound: self.box_bound,
            ..ClosureOptions::default()
        };
        if let Some(r) = self.max_rounds {
            o.max_rounds = r;
        }
        o
    }
}

pub fn closure(pb: &Problem, flags: &ClosureFlags) -> Result<String> {
    let (c, trace) = integral_closure_with(&pb.ideal, &flags.options())?;
    let mut out = String::new();
    writeln!(out, "Q = {}", trace.q_exp).unwrap();
    let last = trace.rounds.len() - 1;
    for (r, round) in trace.rounds.iter().enumerate().skip(1) {
        if r == last && trace.stabilized {
            writeln!(out, "round {r}: no change").unwrap();
        } else {
            list(&mut out, &format!("round {r}"), &round.generators, plain);
        }
    }
    writeln!(out, "nesting: {}", if trace.check_nesting()? { "ok" } else { "violated" }).unwrap();
    writeln!(out, "monotone: {}", if trace.check_monotone()? { "ok" } else { "violated" }).unwrap();
    list(&mut out, "closure", &c.generators, plain);
    Ok(out)
}

fn powers_with(pb: &Problem, kmax: usize, seed: PowerSeed) -> Result<qth_core::qthpower::PowersResult> {
    closure_powers_with(&pb.ideal, kmax, seed, &ClosureOptions::default())
}

pub fn powers(pb: &Problem, kmax: usize, seed: PowerSeed) -> Result<String> {
    let r = powers_with(pb, kmax, seed)?;
    let mut out = String::new();
    writeln!(out, "Q = {}", r.traces[0].q_exp).unwrap();
    for (k, c) in r.closures.iter().enumerate() {
        list(&mut out, &format!("C(I^{})", k + 1), &c.generators, plain);
    }
    match r.stop_index {
        Some(k) => writeln!(out, "stop index: {k}").unwrap(),
        None => writeln!(out, "stop index: not reached within kmax = {kmax}").unwrap(),
    }
    Ok(out)
}

/// Builds `rees_k` from the closures of `I, ..., I^kmax`, stopping early at
/// the stopping index.
pub fn presentation(pb: &Problem, kmax: usize) -> Result<ReesPresentation> {
    let r = powers_with(pb, kmax, PowerSeed::PreviousClosure)?;
    let upto = r.stop_index.unwrap_or(r.closures.len()).min(r.closures.len());
    ReesPresentation::build(&pb.ideal, &ReesOptions::default())?.extend(&r.closures[..upto], r.stop_index.is_some())
}

/// One term is an added `G` times a power of `s`, and no other term
/// involves the variables added at this stage.
fn is_defining(rp: &ReesPresentation, added: &[String], p: &Poly) -> bool {
    let nb = rp.base.ring.nvars();
    let fresh: Vec<usize> = (0..rp.gvars.len())
        .filter(|&k| added.contains(&rp.gvars[k].name))
        .map(|k| nb + k)
        .collect();
    let mut pure = 0;
    for (m, _) in p.terms() {
        let used: Vec<usize> = fresh.iter().copied().filter(|&i| m.exp(i) > 0).collect();
        match used[..] {
            [] => {}
            [i] if m.exponents().iter().enumerate().all(|(v, &e)| e == 0 || v == rp.s || (v == i && e == 1)) => {
                pure += 1
            }
            _ => return false,
        }
    }
    pure == 1
}

pub fn rees(pb: &Problem, kmax: usize, suppress: bool) -> Result<String> {
    let rp = presentation(pb, kmax)?;
    let mut out = String::new();
    let levels = rp.gvars.iter().map(|v| v.level).max().unwrap_or(0);
    writeln!(
        out,
        "rees presentation: {} stages, G levels 1..{}, {}",
        rp.stages.len(),
        levels,
        if rp.complete { "complete" } else { "partial (stop index not reached)" }
    )
    .unwrap();
    writeln!(out, "variables:").unwrap();
    for v in &rp.gvars {
        writeln!(out, "  {} = {} (level {})", v.name, v.source, v.level).unwrap();
    }
    let show = |p: &Poly| rp.show(p, suppress);
    for (k, st) in rp.stages.iter().enumerate() {
        let fresh = rp.new_relations(k);
        let (def, ind): (Vec<Poly>, Vec<Poly>) = fresh.into_iter().partition(|p| is_defining(&rp, &st.added, p));
        list(&mut out, &format!("relations level {k}"), &def, show);
        list(&mut out, &format!("induced level {k}"), &ind, show);
    }
    writeln!(out, "soundness: {}", if rp.check_soundness()? { "ok" } else { "violated" }).unwrap();
    writeln!(out, "grading: {}", if rp.check_grading() { "ok" } else { "violated" }).unwrap();
    Ok(out)
}

pub fn member(pb: &Problem, poly: &str, k: u32, kmax: usize) -> Result<String> {
    let f = pb.parse_poly(poly)?;
    let rp = presentation(pb, kmax)?;
    let (ok, ans) = rp.member(&f, k)?;
    let mut out = String::new();
    writeln!(out, "query: {f}").unwrap();
    writeln!(out, "member of C(I^{k}): {ok}").unwrap();
    match ans.k_attained {
        Some(a) => writeln!(out, "k attained: {a}").unwrap(),
        None => writeln!(out, "k attained: unbounded").unwrap(),
    }
    writeln!(out, "normal form: {}", rp.show(&ans.normal_form, false)).unwrap();
    writeln!(out, "witness: {}", ans.witness).unwrap();
    if ans.lower_bound_only {
        writeln!(out, "lower bound only: presentation stops before the stop index").unwrap();
    }
    Ok(out)
}

/// The ideal as a monomial ideal of a polynomial ring, if it is one.
pub fn monomial_cone(ideal: &Ideal) -> Result<(Ideal, ExponentCone)> {
    let base = if ideal.presentation.is_global() {
        ideal.clone()
    } else {
        LocalShadow::new(ideal)?.ideal
    };
    let pres = &base.presentation;
    if !pres.j.generators.is_empty() || !pres.ring.dependent_names().is_empty() {
        return Err(Error::unsupported("the oracle needs a polynomial ring"));
    }
    let mut gens = Vec::new();
    for g in &base.generators {
        if !g.is_monomial() {
            return Err(Error::unsupported(format!("{g} is not a monomial")));
        }
        gens.push(g.leading_monomial().unwrap().exponents().to_vec());
    }
    Ok((base, ExponentCone::new(gens)))
}

pub fn oracle(pb: &Problem, kbound: u32) -> Result<String> {
    let (base, cone) = monomial_cone(&pb.ideal)?;
    let ring = base.ring();
    let closed = np_closure(&cone, kbound);
    let mut out = String::new();
    writeln!(out, "kbound = {kbound}").unwrap();
    let polys: Vec<Poly> = closed
        .generators()
        .iter()
        .map(|e| Poly::monomial(ring, Monomial::from_exponents(e.clone())))
        .collect();
    writeln!(out, "newton closure ({}):", polys.len()).unwrap();
    for p in sorted(&polys) {
        let e = p.leading_monomial().unwrap().exponents();
        let tag = match np_member(e, &cone, kbound) {
            NpAnswer::Member { k, .. } => format!("k = {k}"),
            NpAnswer::NotMember { .. } => "not integral".to_string(),
            NpAnswer::Unknown { kbound } => format!("unknown <= {kbound}"),
        };
        writeln!(out, "  {p}  [{tag}]").unwrap();
    }
    Ok(out)
}

pub fn certify(pb: &Problem, poly: &str, kmax: u32) -> Result<String> {
    let f = pb.parse_poly(poly)?;
    let mut out = String::new();
    writeln!(out, "element: {f}").unwrap();
    match certify_integral_with(&f, &pb.ideal, kmax, &Limits::default())? {
        None => writeln!(out, "no certificate with degree <= {kmax}").unwrap(),
        Some(c) => {
            writeln!(out, "degree: {}", c.degree).unwrap();
            for (j, a) in c.coefficients.iter().enumerate() {
                writeln!(out, "a_{} = {}", j + 1, a).unwrap();
                for t in &c.combinations[j] {
                    let y = Poly::monomial(&c.presentation.ring, t.standard_monomial.clone());
                    let gs: Vec<String> = t.factors.iter().map(|&i| format!("({})", c.generators[i])).collect();
                    writeln!(out, "    ({}) * {} * {}", t.coefficient, y, gs.join("*")).unwrap();
                }
            }
            writeln!(out, "replay: {}", if c.replay()? { "ok" } else { "failed" }).unwrap();
        }
    }
    Ok(out)
}
