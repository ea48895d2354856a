use std::sync::Arc;

use super::{buchberger, normal_form_record, standard_basis, Basis, Limits, NormalForm};
use crate::error::{Error, Result};
use crate::poly::{FlatRing, Monomial, Poly};

/// `Ā = F_q[y; x] / J`, free over `P = F_q[x]` on the standard monomials `Y`.
#[derive(Clone, Debug)]
pub struct RingPresentation {
    pub ring: Arc<FlatRing>,
    pub j: Basis,
    /// Dependent-variable standard monomials, ascending under the ring order.
    pub y: Vec<Monomial>,
}

impl RingPresentation {
    pub fn new(ring: &Arc<FlatRing>, relations: &[Poly]) -> Result<RingPresentation> {
        for r in relations {
            if !FlatRing::same(r.ring(), ring) {
                return Err(Error::RingMismatch("relation from another ring".into()));
            }
        }
        if !ring.aux_names().is_empty() {
            return Err(Error::input("a base ring has no auxiliary variables"));
        }
        let nonzero: Vec<Poly> = relations.iter().filter(|r| !r.is_zero()).cloned().collect();
        let j = if nonzero.is_empty() {
            Basis {
                ring: ring.clone(),
                generators: vec![],
                reduced: true,
                kind: ring.order_kind(),
            }
        } else if ring.is_global() {
            buchberger(&nonzero)?
        } else {
            standard_basis(&nonzero)?
        };
        if j.is_unit_ideal() {
            return Err(Error::input("the relations generate the unit ideal"));
        }
        let dep = ring.dependent_range();
        let leads = j.leads();
        for m in &leads {
            if !m.support_within(dep.clone()) {
                return Err(Error::unsupported(format!(
                    "relation leading monomial {} is not a pure dependent-variable monomial",
                    Poly::monomial(ring, (*m).clone())
                )));
            }
        }
        let mut bound = vec![0u32; ring.nvars()];
        for v in dep.clone() {
            let pure = leads
                .iter()
                .filter(|m| m.support_within(v..v + 1))
                .map(|m| m.exp(v))
                .min();
            match pure {
                Some(e) => bound[v] = e,
                None => {
                    return Err(Error::unsupported(format!(
                        "dependent variable {} is not integral over the independent variables",
                        ring.var_name(v)
                    )))
                }
            }
        }
        // standard monomials inside the box of pure powers
        let mut y = Vec::new();
        let mut cur = vec![0u32; ring.nvars()];
        loop {
            let m = Monomial::from_exponents(cur.clone());
            if !leads.iter().any(|l| l.divides(&m)) {
                y.push(m);
            }
            let mut k = dep.start;
            loop {
                if k == dep.end {
                    y.sort_by(|a, b| ring.compare(a, b));
                    return Ok(RingPresentation {
                        ring: ring.clone(),
                        j,
                        y,
                    });
                }
                cur[k] += 1;
                if cur[k] < bound[k] {
                    break;
                }
                cur[k] = 0;
                k += 1;
            }
        }
    }

    /// Rank of `Ā` as a free `P`-module.
    pub fn rank(&self) -> usize {
        self.y.len()
    }

    pub fn is_global(&self) -> bool {
        self.ring.is_global()
    }

    pub fn normal_form(&self, f: &Poly) -> Result<Poly> {
        let nf = self.normal_form_record(f)?;
        if !nf.is_exact() {
            return Err(Error::unsupported(
                "normal form in the local ring is only known up to a unit; normalize units first",
            ));
        }
        Ok(nf.poly)
    }

    pub fn normal_form_record(&self, f: &Poly) -> Result<NormalForm> {
        if !FlatRing::same(f.ring(), &self.ring) {
            return Err(Error::RingMismatch("polynomial from another ring".into()));
        }
        if self.j.generators.is_empty() {
            return Ok(NormalForm {
                poly: f.clone(),
                unit_multiplier: false,
                complete: true,
            });
        }
        normal_form_record(f, &self.j, &Limits::default())
    }

    /// Ideal membership in `Ā` via a basis of `J + ⟨gens⟩`.
    pub fn ideal_basis(&self, gens: &[Poly]) -> Result<Basis> {
        let mut all: Vec<Poly> = self.j.generators.clone();
        all.extend(gens.iter().filter(|g| !g.is_zero()).cloned());
        if all.is_empty() {
            return Ok(Basis {
                ring: self.ring.clone(),
                generators: vec![],
                reduced: true,
                kind: self.ring.order_kind(),
            });
        }
        if self.ring.is_global() {
            buchberger(&all)
        } else {
            standard_basis(&all)
        }
    }

    /// `f` is a unit of the (local) ring.
    pub fn is_unit(&self, f: &Poly) -> Result<bool> {
        if f.is_zero() {
            return Ok(false);
        }
        if self.ring.is_global() {
            return Ok(f.is_constant());
        }
        Ok(self.ideal_basis(std::slice::from_ref(f))?.is_unit_ideal())
    }

    /// Variables that are units of the local ring.
    pub fn unit_variables(&self) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for v in 0..self.ring.nvars() {
            if self.is_unit(&Poly::var(&self.ring, v))? {
                out.push(v);
            }
        }
        Ok(out)
    }
}
