use std::cmp::Ordering;
use std::sync::Arc;

use super::reduce::{mora_weak_nf, reduce_full, reduce_top, s_poly, Budget, Lead};
use super::{Basis, Limits};
use crate::error::{Error, Result};
use crate::poly::{FlatRing, Monomial, OrderKind, Poly};

/// Restricts which critical pairs are formed (e.g. same module position).
pub type PairFilter<'a> = &'a (dyn Fn(&Monomial, &Monomial) -> bool + Sync);

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Engine {
    /// Plain Buchberger with full reduction; needs a well-ordered input space.
    Buchberger,
    /// Mora's weak normal form, for local and mixed orders.
    Mora,
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

fn common_ring(gens: &[Poly]) -> Result<Option<Arc<FlatRing>>> {
    let Some(first) = gens.first() else {
        return Ok(None);
    };
    for g in gens {
        first.check_ring(g)?;
    }
    Ok(Some(first.ring().clone()))
}

/// Reduced Gröbner basis under a global order.
pub fn buchberger(gens: &[Poly]) -> Result<Basis> {
    buchberger_with(gens, &Limits::default())
}

pub fn buchberger_with(gens: &[Poly], limits: &Limits) -> Result<Basis> {
    if let Some(ring) = common_ring(gens)? {
        if !ring.is_global() {
            return Err(Error::input(
                "buchberger needs a global order; use standard_basis for local orders",
            ));
        }
    }
    groebner_core(gens, limits, Engine::Buchberger, None)
}

/// Standard basis via Mora's weak normal form (any order, meant for local).
pub fn standard_basis(gens: &[Poly]) -> Result<Basis> {
    standard_basis_with(gens, &Limits::default())
}

pub fn standard_basis_with(gens: &[Poly], limits: &Limits) -> Result<Basis> {
    groebner_core(gens, limits, Engine::Mora, None)
}

fn pick_pair(ring: &FlatRing, pairs: &[Pair], engine: Engine) -> usize {
    let mut best = 0;
    for k in 1..pairs.len() {
        let (a, b) = (&pairs[k], &pairs[best]);
        let ord = match engine {
            Engine::Buchberger => ring.compare(&a.lcm, &b.lcm),
            Engine::Mora => a
                .lcm
                .degree()
                .cmp(&b.lcm.degree())
                .then_with(|| ring.compare(&a.lcm, &b.lcm).reverse()),
        };
        let ord = ord.then_with(|| (a.i, a.j).cmp(&(b.i, b.j)));
        if ord == Ordering::Less {
            best = k;
        }
    }
    best
}

/// Shared S-pair loop. Returns the basis with minimal monic leads, sorted
/// ascending; tails are fully reduced for the Buchberger engine.
pub(crate) fn groebner_core(
    gens: &[Poly],
    limits: &Limits,
    engine: Engine,
    filter: Option<PairFilter<'_>>,
) -> Result<Basis> {
    let Some(ring) = common_ring(gens)? else {
        return Err(Error::input("empty generator list has no ring"));
    };
    let kind = if engine == Engine::Buchberger {
        OrderKind::Global
    } else {
        OrderKind::Local
    };
    let mut budget = Budget::new(limits.max_steps);
    let mut input: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).map(Poly::monic).collect();
    input.sort_by(|a, b| {
        ring.compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
    });
    input.dedup();

    let mut polys: Vec<Poly> = Vec::new();
    let mut leads: Vec<Lead> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    // active basis elements, mirrored for reduction
    let mut cur: Vec<Poly> = Vec::new();
    let mut cur_leads: Vec<Lead> = Vec::new();
    let mut cur_idx: Vec<usize> = Vec::new();

    let mut queue: std::collections::VecDeque<Poly> = input.into();
    loop {
        let h = if let Some(g) = queue.pop_front() {
            g
        } else if !pairs.is_empty() {
            let k = pick_pair(&ring, &pairs, engine);
            let p = pairs.swap_remove(k);
            s_poly(&polys[p.i], &polys[p.j])
        } else {
            break;
        };
        let h = match engine {
            Engine::Buchberger => reduce_top(&h, &cur, &cur_leads, &mut budget)?,
            Engine::Mora => mora_weak_nf(&h, &cur, &mut budget)?.poly,
        };
        if h.is_zero() {
            continue;
        }
        let h = h.monic();
        let hl = Lead::of(&h);
        let idx = polys.len();
        if idx >= limits.max_basis {
            return Err(Error::resource(format!(
                "basis size cap of {} exceeded",
                limits.max_basis
            )));
        }

        // Gebauer-Moeller update
        let mut cand: Vec<Pair> = Vec::new();
        for (i, l) in leads.iter().enumerate() {
            if !active[i] {
                continue;
            }
            if let Some(f) = filter {
                if !f(&l.mono, &hl.mono) {
                    continue;
                }
            }
            cand.push(Pair {
                i,
                j: idx,
                lcm: l.mono.lcm(&hl.mono),
            });
        }
        let coprime: Vec<bool> = cand
            .iter()
            .map(|p| leads[p.i].mono.is_coprime(&hl.mono))
            .collect();
        let mut keep = vec![true; cand.len()];
        for a in 0..cand.len() {
            if coprime[a] {
                continue;
            }
            for b in 0..cand.len() {
                if a == b || !keep[b] {
                    continue;
                }
                if cand[b].lcm.divides(&cand[a].lcm)
                    && (cand[b].lcm != cand[a].lcm || b < a)
                {
                    keep[a] = false;
                    break;
                }
            }
        }
        // a coprime pair also disqualifies others with the same lcm
        for a in 0..cand.len() {
            if keep[a] && !coprime[a]
                && (0..cand.len()).any(|b| coprime[b] && cand[b].lcm == cand[a].lcm) {
                    keep[a] = false;
                }
        }
        pairs.retain(|p| {
            !(hl.mono.divides(&p.lcm)
                && leads[p.i].mono.lcm(&hl.mono) != p.lcm
                && leads[p.j].mono.lcm(&hl.mono) != p.lcm)
        });
        for (a, p) in cand.into_iter().enumerate() {
            if keep[a] && !coprime[a] {
                pairs.push(p);
            }
        }
        for (i, l) in leads.iter().enumerate() {
            if active[i] && hl.mono.divides(&l.mono) {
                active[i] = false;
            }
        }
        let mut k = 0;
        while k < cur.len() {
            if !active[cur_idx[k]] {
                cur.remove(k);
                cur_leads.remove(k);
                cur_idx.remove(k);
            } else {
                k += 1;
            }
        }
        cur.push(h.clone());
        cur_leads.push(hl.clone());
        cur_idx.push(idx);
        polys.push(h);
        leads.push(hl);
        active.push(true);
    }

    let mut out: Vec<Poly> = polys
        .into_iter()
        .zip(active)
        .filter(|(_, a)| *a)
        .map(|(p, _)| p)
        .collect();
    out.sort_by(|a, b| ring.compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    if out.iter().any(|g| g.leading_monomial().unwrap().is_one()) {
        // a unit lead: the ideal is everything
        out = vec![Poly::one(&ring)];
    }
    let reduced = if engine == Engine::Buchberger {
        out = interreduce(&out, &mut budget)?;
        true
    } else {
        false
    };
    Ok(Basis {
        ring,
        generators: out,
        reduced,
        kind,
    })
}

/// Tail-reduces a basis with minimal leads (global orders).
pub(crate) fn interreduce(basis: &[Poly], budget: &mut Budget) -> Result<Vec<Poly>> {
    let leads: Vec<Lead> = basis.iter().map(Lead::of).collect();
    let mut out = Vec::with_capacity(basis.len());
    for (k, g) in basis.iter().enumerate() {
        let lm = g.leading_monomial().unwrap().clone();
        let tail = Poly::from_terms(g.ring(), g.terms()[1..].to_vec());
        let others: Vec<Poly> = basis
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, p)| p.clone())
            .collect();
        let other_leads: Vec<Lead> = leads
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, l)| l.clone())
            .collect();
        let tail = reduce_full(&tail, &others, &other_leads, budget)?;
        let mut terms = vec![(lm, g.leading_coeff())];
        terms.extend_from_slice(tail.terms());
        out.push(Poly::from_terms(g.ring(), terms).monic());
    }
    Ok(out)
}

/// Buchberger run for grade-homogeneous inputs in a ring whose order is a
/// well-order on each graded piece (Rees presentations with `1 > s`).
pub(crate) fn graded_basis(gens: &[Poly], limits: &Limits) -> Result<Basis> {
    groebner_core(gens, limits, Engine::Buchberger, None)
}

/// Saturation by the variable `s`: strips `s`-power factors off the basis
/// and recomputes until nothing changes.
pub(crate) fn saturate_var(gens: &[Poly], s: usize, limits: &Limits) -> Result<Basis> {
    let mut cur = gens.to_vec();
    loop {
        let b = graded_basis(&cur, limits)?;
        let mut changed = false;
        let stripped: Vec<Poly> = b
            .generators
            .iter()
            .map(|g| {
                let e = g.terms().iter().map(|(m, _)| m.exp(s)).min().unwrap_or(0);
                if e == 0 {
                    return g.clone();
                }
                changed = true;
                let n = g.ring().nvars();
                g.divide_by_monomial(&crate::poly::Monomial::var(n, s, e)).expect("s-power divides")
            })
            .collect();
        if !changed {
            return Ok(b);
        }
        cur = stripped;
    }
}
