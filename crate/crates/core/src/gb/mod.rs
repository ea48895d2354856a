//! Gröbner and standard bases, quotient-ring presentations and P-modules.

mod buchberger;
mod homogenize;
mod module;
mod presentation;
mod reduce;

use std::sync::Arc;

pub use buchberger::{buchberger, buchberger_with, standard_basis, standard_basis_with, PairFilter};
pub use homogenize::{dehomogenize, homogenize};
pub use module::{module_gb, module_member, module_member_with, Membership, PModule};
pub use presentation::RingPresentation;

pub(crate) use buchberger::{graded_basis, saturate_var};
pub(crate) use module::{ModuleGb, ModuleRing};
pub(crate) use reduce::{Budget, Lead};

use crate::error::Result;
use crate::poly::{FlatRing, OrderKind, Poly};

/// Caps on Gröbner computations; exceeding one is a resource error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_basis: usize,
    pub max_steps: u64,
    /// Tail-reduction steps allowed for local normal forms.
    pub max_tail_steps: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_basis: 20_000,
            max_steps: 200_000_000,
            max_tail_steps: 20_000,
        }
    }
}

/// A Gröbner basis (global) or standard basis (local).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    pub ring: Arc<FlatRing>,
    pub generators: Vec<Poly>,
    pub reduced: bool,
    pub kind: OrderKind,
}

/// Normal form together with how it was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub poly: Poly,
    /// Mora used an intermediate reducer: `poly` is a normal form of `u*f`
    /// for a unit `u`, not necessarily of `f`.
    pub unit_multiplier: bool,
    /// Every term is irreducible (local tails may be cut off by the step cap).
    pub complete: bool,
}

impl NormalForm {
    pub fn is_exact(&self) -> bool {
        !self.unit_multiplier && self.complete
    }
}

impl Basis {
    /// The basis of the unit ideal.
    pub fn unit(ring: &Arc<FlatRing>) -> Basis {
        Basis {
            ring: ring.clone(),
            generators: vec![Poly::one(ring)],
            reduced: true,
            kind: if ring.is_global() { OrderKind::Global } else { OrderKind::Local },
        }
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.generators.iter().any(|g| g.leading_monomial().is_some_and(|m| m.is_one()))
    }

    pub fn leads(&self) -> Vec<&crate::poly::Monomial> {
        self.generators.iter().map(|g| g.leading_monomial().unwrap()).collect()
    }

    /// Every S-polynomial reduces to zero (the defining Gröbner property).
    pub fn check_s_pairs(&self) -> Result<bool> {
        let mut budget = Budget::new(Limits::default().max_steps);
        let g = &self.generators;
        let leads: Vec<Lead> = g.iter().map(Lead::of).collect();
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                let s = reduce::s_poly(&g[i], &g[j]);
                let r = match self.kind {
                    OrderKind::Global => reduce::reduce_top(&s, g, &leads, &mut budget)?,
                    OrderKind::Local => reduce::mora_weak_nf(&s, g, &mut budget)?.poly,
                };
                if !r.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

pub fn normal_form(f: &Poly, b: &Basis) -> Result<Poly> {
    Ok(normal_form_record(f, b, &Limits::default())?.poly)
}

/// Normal form with its reduction record.
pub fn normal_form_record(f: &Poly, b: &Basis, limits: &Limits) -> Result<NormalForm> {
    if let Some(g) = b.generators.first() {
        f.check_ring(g)?;
    }
    let mut budget = Budget::new(limits.max_steps);
    match b.kind {
        OrderKind::Global => {
            let leads: Vec<Lead> = b.generators.iter().map(Lead::of).collect();
            let poly = reduce::reduce_full(f, &b.generators, &leads, &mut budget)?;
            Ok(NormalForm {
                poly,
                unit_multiplier: false,
                complete: true,
            })
        }
        OrderKind::Local => {
            let ring = f.ring();
            let mut done: Vec<(crate::poly::Monomial, u32)> = Vec::new();
            let mut rest = f.clone();
            let mut unit_multiplier = false;
            let mut tail_steps = 0u64;
            while !rest.is_zero() {
                let w = reduce::mora_weak_nf(&rest, &b.generators, &mut budget)?;
                unit_multiplier |= w.unit_multiplier;
                let Some((m, c)) = w.poly.terms().first().cloned() else {
                    break;
                };
                done.push((m, c));
                rest = Poly::from_terms(ring, w.poly.terms()[1..].to_vec());
                tail_steps += 1;
                if tail_steps > limits.max_tail_steps {
                    let mut terms = done;
                    terms.extend_from_slice(rest.terms());
                    return Ok(NormalForm {
                        poly: Poly::from_terms(ring, terms),
                        unit_multiplier,
                        complete: false,
                    });
                }
            }
            Ok(NormalForm {
                poly: Poly::from_terms(ring, done),
                unit_multiplier,
                complete: true,
            })
        }
    }
}
