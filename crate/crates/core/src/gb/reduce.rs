use std::cmp::Ordering;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{FlatRing, Monomial, Poly};

/// Bit signature of a monomial's support, for fast non-divisibility tests.
#[inline]
pub(crate) fn divmask(m: &Monomial) -> u64 {
    let mut mask = 0u64;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e > 0 {
            mask |= 1 << (i % 64);
        }
    }
    mask
}

/// Leading data cached per basis element.
#[derive(Clone)]
pub(crate) struct Lead {
    pub mono: Monomial,
    pub mask: u64,
}

impl Lead {
    pub fn of(p: &Poly) -> Lead {
        let mono = p.leading_monomial().expect("nonzero").clone();
        let mask = divmask(&mono);
        Lead { mono, mask }
    }

    #[inline]
    pub fn divides(&self, m: &Monomial, mask: u64) -> bool {
        self.mask & !mask == 0 && self.mono.divides(m)
    }
}

/// Counts reduction steps against a shared cap.
pub(crate) struct Budget {
    pub steps: u64,
    pub cap: u64,
}

impl Budget {
    pub fn new(cap: u64) -> Self {
        Budget { steps: 0, cap }
    }

    #[inline]
    pub fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.cap {
            Err(Error::resource(format!(
                "reduction step cap of {} exceeded",
                self.cap
            )))
        } else {
            Ok(())
        }
    }
}

/// `terms[start..] -= c * m * g`, leaving `terms[..start]` untouched.
fn sub_scaled_tail(
    ring: &Arc<FlatRing>,
    terms: &mut Vec<(Monomial, u32)>,
    start: usize,
    c: u32,
    m: &Monomial,
    g: &Poly,
) {
    let field = ring.field();
    let negc = field.neg(c);
    let tail: Vec<(Monomial, u32)> = terms.drain(start..).collect();
    let mut i = 0;
    let gt = g.terms();
    let mut j = 0;
    while i < tail.len() || j < gt.len() {
        if j >= gt.len() {
            terms.extend_from_slice(&tail[i..]);
            break;
        }
        let bm = gt[j].0.mul(m);
        if i >= tail.len() {
            terms.push((bm, field.mul(gt[j].1, negc)));
            j += 1;
            continue;
        }
        match ring.compare(&tail[i].0, &bm) {
            Ordering::Greater => {
                terms.push(tail[i].clone());
                i += 1;
            }
            Ordering::Less => {
                terms.push((bm, field.mul(gt[j].1, negc)));
                j += 1;
            }
            Ordering::Equal => {
                let s = field.add(tail[i].1, field.mul(gt[j].1, negc));
                if s != 0 {
                    terms.push((bm, s));
                }
                i += 1;
                j += 1;
            }
        }
    }
}

/// Full reduction of `f` by monic `basis` (global orders: always terminates).
pub(crate) fn reduce_full(
    f: &Poly,
    basis: &[Poly],
    leads: &[Lead],
    budget: &mut Budget,
) -> Result<Poly> {
    let ring = f.ring().clone();
    let mut terms = f.terms().to_vec();
    let mut start = 0;
    while start < terms.len() {
        let (m, c) = terms[start].clone();
        let mask = divmask(&m);
        match leads.iter().position(|l| l.divides(&m, mask)) {
            Some(k) => {
                budget.tick()?;
                let q = leads[k].mono.quotient_of(&m).unwrap();
                sub_scaled_tail(&ring, &mut terms, start, c, &q, &basis[k]);
            }
            None => start += 1,
        }
    }
    Ok(Poly::from_sorted_unchecked(&ring, terms))
}

/// Reduces only the leading term until it is irreducible.
pub(crate) fn reduce_top(
    f: &Poly,
    basis: &[Poly],
    leads: &[Lead],
    budget: &mut Budget,
) -> Result<Poly> {
    let ring = f.ring().clone();
    let mut terms = f.terms().to_vec();
    while let Some((m, c)) = terms.first().cloned() {
        let mask = divmask(&m);
        match leads.iter().position(|l| l.divides(&m, mask)) {
            Some(k) => {
                budget.tick()?;
                let q = leads[k].mono.quotient_of(&m).unwrap();
                sub_scaled_tail(&ring, &mut terms, 0, c, &q, &basis[k]);
            }
            None => break,
        }
    }
    Ok(Poly::from_sorted_unchecked(&ring, terms))
}

/// Outcome of a Mora weak normal form.
pub(crate) struct WeakNf {
    pub poly: Poly,
    /// A reducer outside the basis was used, so the result is `NF(u*f)` for
    /// some unit `u` that may differ from 1.
    pub unit_multiplier: bool,
}

/// Mora's weak normal form: reducers of minimal ecart, with intermediate
/// results joining the reducer set when they beat the chosen reducer.
pub(crate) fn mora_weak_nf(f: &Poly, basis: &[Poly], budget: &mut Budget) -> Result<WeakNf> {
    let mut extra: Vec<Poly> = Vec::new();
    let mut h = f.clone();
    let mut unit_multiplier = false;
    let field = f.ring().field();
    while let Some(lm) = h.leading_monomial().cloned() {
        let mut best: Option<(u64, bool, usize)> = None;
        for (k, g) in basis.iter().enumerate() {
            if g.leading_monomial().unwrap().divides(&lm) {
                let e = g.ecart();
                if best.is_none_or(|(b, _, _)| e < b) {
                    best = Some((e, false, k));
                }
            }
        }
        for (k, g) in extra.iter().enumerate() {
            if g.leading_monomial().unwrap().divides(&lm) {
                let e = g.ecart();
                if best.is_none_or(|(b, _, _)| e < b) {
                    best = Some((e, true, k));
                }
            }
        }
        let Some((e, from_extra, k)) = best else {
            break;
        };
        budget.tick()?;
        let g = if from_extra { extra[k].clone() } else { basis[k].clone() };
        if from_extra {
            unit_multiplier = true;
        }
        if e > h.ecart() {
            extra.push(h.clone());
        }
        let q = g.leading_monomial().unwrap().quotient_of(&lm).unwrap();
        let c = field.mul(h.leading_coeff(), field.inv(g.leading_coeff()).unwrap());
        let mut terms = h.terms().to_vec();
        sub_scaled_tail(h.ring(), &mut terms, 0, c, &q, &g);
        h = Poly::from_sorted_unchecked(h.ring(), terms);
    }
    Ok(WeakNf {
        poly: h,
        unit_multiplier,
    })
}

/// S-polynomial of two monic polynomials.
pub(crate) fn s_poly(f: &Poly, g: &Poly) -> Poly {
    let lf = f.leading_monomial().unwrap();
    let lg = g.leading_monomial().unwrap();
    let l = lf.lcm(lg);
    let a = lf.quotient_of(&l).unwrap();
    let b = lg.quotient_of(&l).unwrap();
    let field = f.ring().field();
    let cf = field.inv(f.leading_coeff()).unwrap();
    let cg = field.inv(g.leading_coeff()).unwrap();
    let fa = f.mul_monomial(&a).scale(cf);
    fa.add_scaled(field.neg(cg), &b, g)
}
