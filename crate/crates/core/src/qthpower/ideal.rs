use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gb::{normal_form, Basis, PModule, RingPresentation};
use crate::poly::{Monomial, Poly};

/// An ideal of `Ā` given by NF-reduced generators.
#[derive(Clone, Debug)]
pub struct Ideal {
    pub presentation: Arc<RingPresentation>,
    pub generators: Vec<Poly>,
}

impl Ideal {
    pub fn new(presentation: &Arc<RingPresentation>, generators: Vec<Poly>) -> Result<Ideal> {
        let mut gens: Vec<Poly> = Vec::with_capacity(generators.len());
        for g in generators {
            if !crate::poly::FlatRing::same(g.ring(), &presentation.ring) {
                return Err(Error::RingMismatch("ideal generator from another ring".into()));
            }
            let g = if presentation.is_global() {
                presentation.normal_form(&g)?.monic()
            } else {
                g.monic()
            };
            if !g.is_zero() && !gens.contains(&g) {
                gens.push(g);
            }
        }
        Ok(Ideal {
            presentation: presentation.clone(),
            generators: gens,
        })
    }

    pub fn unit(presentation: &Arc<RingPresentation>) -> Ideal {
        Ideal {
            presentation: presentation.clone(),
            generators: vec![Poly::one(&presentation.ring)],
        }
    }

    pub fn ring(&self) -> &Arc<crate::poly::FlatRing> {
        &self.presentation.ring
    }

    /// Basis of `J + I` in the ambient polynomial ring.
    pub fn basis(&self) -> Result<Basis> {
        self.presentation.ideal_basis(&self.generators)
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.basis()?.is_unit_ideal())
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        let b = self.basis()?;
        Ideal::contains_in(&b, f)
    }

    fn contains_in(b: &Basis, f: &Poly) -> Result<bool> {
        if b.generators.is_empty() {
            return Ok(f.is_zero());
        }
        Ok(normal_form(f, b)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        let b = self.basis()?;
        for g in &other.generators {
            if !Ideal::contains_in(&b, g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_ideal(&self, other: &Ideal) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    /// Generators times the standard monomials: a `P`-module generating set.
    pub fn as_pmodule(&self) -> Result<PModule> {
        let pres = &self.presentation;
        let mut gens = Vec::new();
        for g in &self.generators {
            for y in &pres.y {
                gens.push(pres.normal_form(&g.mul_monomial(y))?);
            }
        }
        PModule::new(pres, gens)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        let pres = &self.presentation;
        let mut gens = Vec::new();
        for a in &self.generators {
            for b in &other.generators {
                gens.push(pres.normal_form(&a.mul(b)?)?);
            }
        }
        Ideal::new(pres, gens)?.minimalized()
    }

    pub fn power(&self, k: u32) -> Result<Ideal> {
        let mut acc = Ideal::unit(&self.presentation);
        for _ in 0..k {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// Canonical generating set: basis of `J + I` modulo `J`, with redundant
    /// generators dropped, sorted ascending by leading monomial.
    pub fn minimalized(&self) -> Result<Ideal> {
        let pres = &self.presentation;
        let b = self.basis()?;
        let jb = &pres.j;
        let mut cands: Vec<Poly> = Vec::new();
        for g in &b.generators {
            let r = if jb.generators.is_empty() {
                g.clone()
            } else if pres.is_global() {
                normal_form(g, jb)?
            } else {
                let nf = pres.normal_form_record(g)?;
                if nf.is_exact() {
                    nf.poly
                } else {
                    g.clone()
                }
            };
            if !r.is_zero() {
                cands.push(r.monic());
            }
        }
        let ring = pres.ring.clone();
        cands.sort_by(|a, b| ring.compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
        cands.dedup();
        // drop generators lying in the ideal of the others, largest first
        let mut keep = cands.clone();
        let mut i = keep.len();
        while i > 0 {
            i -= 1;
            let others: Vec<Poly> = keep
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i)
                .map(|(_, p)| p.clone())
                .collect();
            let rest = Ideal {
                presentation: pres.clone(),
                generators: others,
            };
            if keep.len() > 1 && rest.contains(&keep[i])? {
                keep.remove(i);
            }
        }
        Ok(Ideal {
            presentation: pres.clone(),
            generators: keep,
        })
    }

    /// Componentwise maximum of the independent-variable exponents.
    pub fn beta(&self) -> Vec<u32> {
        let ring = self.ring();
        let xr = ring.independent_range();
        let mut beta = vec![0u32; xr.len()];
        for g in &self.generators {
            for (m, _) in g.terms() {
                for (k, i) in xr.clone().enumerate() {
                    beta[k] = beta[k].max(m.exp(i));
                }
            }
        }
        beta
    }

    pub fn max_degree(&self) -> u64 {
        self.generators.iter().map(|g| g.degree()).max().unwrap_or(0)
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.generators
            .iter()
            .map(|g| g.leading_monomial().unwrap().clone())
            .collect()
    }

    pub fn display(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.to_string()).collect()
    }
}
