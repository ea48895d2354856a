//! Non-homogeneous Rees presentations and normal-form membership in the
//! integral closure of powers.

mod order;

use std::sync::Arc;

pub use order::ReesOrder;

use crate::error::{Error, Result};
use crate::gb::{normal_form, Basis, Limits, RingPresentation};
use crate::poly::{format_poly_with, wt, FlatRing, FormatOptions, Monomial, Poly};
use crate::qthpower::{strip_unit, Ideal, LocalShadow};

/// A variable `G` standing for `source * t^level`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GVar {
    pub name: String,
    pub level: u32,
    /// Source element, in the computation ring.
    pub source: Poly,
    /// Source weight per row of the computation ring.
    pub weights: Vec<i64>,
    /// Source weights in the first two rows of the query ring.
    pub label: Vec<i64>,
    pub degree: i64,
}

impl GVar {
    /// Ring position key: heavier sources first, as for the base variables.
    fn key(&self) -> (Vec<i64>, Vec<i64>, String) {
        (
            self.weights.iter().map(|w| -w).collect(),
            self.label.iter().map(|w| -w).collect(),
            self.name.clone(),
        )
    }
}

/// One construction stage: `rees(I)`, then `rees_1`, `rees_2`, ...
#[derive(Clone, Debug)]
pub struct Stage {
    pub index: usize,
    /// Names of the variables introduced at this stage.
    pub added: Vec<String>,
    /// Relation basis after this stage.
    pub relations: Vec<Poly>,
}

#[derive(Clone, Debug)]
pub struct ReesPresentation {
    /// Ring of the queries.
    pub origin: Arc<RingPresentation>,
    /// Ring the relations live over (the origin, or its polynomial shadow
    /// for a local origin).
    pub base: Arc<RingPresentation>,
    pub ring: Arc<FlatRing>,
    pub gvars: Vec<GVar>,
    /// Index of `s`, the stand-in for `t^-1`.
    pub s: usize,
    pub relations: Basis,
    pub stages: Vec<Stage>,
    pub options: ReesOptions,
    /// Built from closures up to the stopping index.
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipAnswer {
    /// Largest `k` with `s^k` dividing the normal form; `None` when every
    /// level is reached (zero query or unit ideal).
    pub k_attained: Option<u32>,
    pub normal_form: Poly,
    /// Normal form with `s` suppressed.
    pub witness: String,
    /// The presentation stops short of the stopping index.
    pub lower_bound_only: bool,
}

impl MembershipAnswer {
    pub fn reaches(&self, k: u32) -> bool {
        self.k_attained.is_none_or(|a| a >= k)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReesOptions {
    pub order: ReesOrder,
    /// Name variables `G_<w0>_<w1>` by source weights instead of `G_<k>_<i>`.
    pub named_by_weights: bool,
    pub limits: Limits,
}

impl Default for ReesOptions {
    fn default() -> Self {
        ReesOptions {
            order: ReesOrder::default(),
            named_by_weights: true,
            limits: Limits::default(),
        }
    }
}

fn label(w: i64) -> String {
    if w < 0 {
        format!("m{}", -w)
    } else {
        w.to_string()
    }
}

impl ReesPresentation {
    /// Level-one presentation `rees(I)`.
    pub fn build(ideal: &Ideal, options: &ReesOptions) -> Result<ReesPresentation> {
        let origin = ideal.presentation.clone();
        let (base, gens) = if origin.is_global() {
            (origin.clone(), ideal.generators.clone())
        } else {
            let sh = LocalShadow::new(ideal)?;
            (sh.ideal.presentation.clone(), sh.ideal.generators.clone())
        };
        let empty = ReesPresentation {
            origin,
            base: base.clone(),
            ring: base.ring.clone(),
            gvars: vec![],
            s: 0,
            relations: base.j.clone(),
            stages: vec![],
            options: options.clone(),
            complete: false,
        };
        let mut gens: Vec<Poly> = gens.into_iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
        gens.dedup();
        empty.register(gens, 1)
    }

    fn register(&self, sources: Vec<Poly>, level: u32) -> Result<ReesPresentation> {
        let base_ring = &self.base.ring;
        let nb = base_ring.nvars();
        let mut gvars = self.gvars.clone();
        let mut added = Vec::new();
        for g in sources {
            let weights = (0..base_ring.rows().len())
                .map(|r| wt(&g, r))
                .collect::<Result<Vec<_>>>()?;
            let lifted = g.embed_by_name(&self.origin.ring)?;
            let lw: Vec<i64> = (0..self.origin.ring.rows().len().min(2))
                .map(|r| wt(&lifted, r))
                .collect::<Result<Vec<_>>>()?;
            let stem = if self.options.named_by_weights {
                let w: Vec<String> = lw.iter().map(|&w| label(w)).collect();
                format!("G_{}", w.join("_"))
            } else {
                let i = gvars.iter().filter(|v| v.level == level).count();
                format!("G_{level}_{i}")
            };
            let taken = |n: &str| base_ring.var_index(n).is_some() || gvars.iter().any(|v| v.name == n);
            let mut name = stem.clone();
            let mut k = 1;
            while taken(&name) {
                name = format!("{stem}_{k}");
                k += 1;
            }
            added.push(name.clone());
            let degree = g.degree() as i64;
            gvars.push(GVar { name, level, source: g, weights, label: lw, degree });
        }
        gvars.sort_by_key(GVar::key);
        let ring = order::rees_ring(base_ring, &gvars, self.options.order)?;
        let s = ring.nvars() - 1;
        let base_map: Vec<usize> = (0..nb).collect();
        let mut gens: Vec<Poly> = if self.gvars.is_empty() {
            self.base.j.generators.iter().map(|p| p.embed(&ring, &base_map)).collect()
        } else {
            self.relations
                .generators
                .iter()
                .map(|p| p.embed_by_name(&ring))
                .collect::<Result<Vec<_>>>()?
        };
        for (k, v) in gvars.iter().enumerate().filter(|(_, v)| added.contains(&v.name)) {
            let g = Monomial::var(ring.nvars(), nb + k, 1).mul(&Monomial::var(ring.nvars(), s, v.level));
            gens.push(v.source.embed(&ring, &base_map).sub(&Poly::monomial(&ring, g))?);
        }
        let relations = crate::gb::saturate_var(&gens, s, &self.options.limits)?;
        let mut stages = self.stages.clone();
        for st in &mut stages {
            st.relations = st
                .relations
                .iter()
                .map(|p| p.embed_by_name(&ring))
                .collect::<Result<Vec<_>>>()?;
        }
        stages.push(Stage {
            index: stages.len(),
            added,
            relations: relations.generators.clone(),
        });
        Ok(ReesPresentation {
            origin: self.origin.clone(),
            base: self.base.clone(),
            ring,
            gvars,
            s,
            relations,
            stages,
            options: self.options.clone(),
            complete: self.complete,
        })
    }

    /// Moves an origin ideal into the computation ring.
    fn to_base(&self, ideal: &Ideal) -> Result<Ideal> {
        if self.origin.is_global() {
            return Ok(ideal.clone());
        }
        Ok(LocalShadow::new(ideal)?.ideal)
    }

    /// Adds closure levels from `closures[k-1] = C(I^k)`: level 1 gets the
    /// closure generators outside `I`, level `k >= 2` those outside
    /// `C(I^(k-1)) C(I)`. `complete` marks the list as reaching the
    /// stopping index.
    pub fn extend(&self, closures: &[Ideal], complete: bool) -> Result<ReesPresentation> {
        let mut rp = self.clone();
        let cs: Vec<Ideal> = closures.iter().map(|c| self.to_base(c)).collect::<Result<Vec<_>>>()?;
        let pres = &self.base;
        for (idx, ck) in cs.iter().enumerate() {
            let k = idx as u32 + 1;
            let mut have = if k == 1 {
                rp.gvars.iter().filter(|v| v.level == 1).map(|v| v.source.clone()).collect()
            } else {
                cs[idx - 1].product(&cs[0])?.generators
            };
            let mut fresh = Vec::new();
            for g in &ck.minimalized()?.generators {
                if !Ideal::new(pres, have.clone())?.contains(g)? {
                    fresh.push(g.clone());
                    have.push(g.clone());
                }
            }
            rp = rp.register(fresh, k)?;
        }
        rp.complete = complete;
        Ok(rp)
    }

    pub fn level_of(&self, var: usize) -> Option<u32> {
        let nb = self.base.ring.nvars();
        (nb..nb + self.gvars.len()).contains(&var).then(|| self.gvars[var - nb].level)
    }

    pub fn show(&self, p: &Poly, suppress_s: bool) -> String {
        if suppress_s {
            format_poly_with(p, &FormatOptions { hidden: vec![self.s] })
        } else {
            p.to_string()
        }
    }

    /// Embeds a query from the origin ring. Local queries must be a
    /// monomial times a unit; the unit is dropped.
    fn embed_query(&self, f: &Poly) -> Result<Poly> {
        if !FlatRing::same(f.ring(), &self.origin.ring) {
            return Err(Error::RingMismatch("query is not an element of the base ring".into()));
        }
        let nb = self.base.ring.nvars();
        let map: Vec<usize> = (0..nb).collect();
        if self.origin.is_global() {
            return Ok(self.origin.normal_form(f)?.embed(&self.ring, &map));
        }
        let m = strip_unit(&self.origin, f)?;
        Ok(m.embed_by_name_restricted(&self.base.ring)?.embed(&self.ring, &map))
    }

    pub fn nf(&self, f: &Poly) -> Result<Poly> {
        normal_form(&self.embed_query(f)?, &self.relations)
    }

    /// `I` is the unit ideal, so every `C(I^k)` is too.
    pub fn is_unit_ideal(&self) -> bool {
        self.gvars.iter().any(|v| v.level == 1 && v.source.is_constant())
    }

    /// Normal-form membership of `f` in the closure of `I^k`.
    pub fn member(&self, f: &Poly, k: u32) -> Result<(bool, MembershipAnswer)> {
        let nf = self.nf(f)?;
        let k_attained = if self.is_unit_ideal() {
            None
        } else {
            nf.terms().iter().map(|(m, _)| m.exp(self.s)).min()
        };
        let ans = MembershipAnswer {
            k_attained,
            witness: self.show(&nf, true),
            normal_form: nf,
            lower_bound_only: !self.complete,
        };
        Ok((ans.reaches(k), ans))
    }

    /// Every relation vanishes under `s -> 1`, `G -> source` modulo `J`.
    pub fn check_soundness(&self) -> Result<bool> {
        let nb = self.base.ring.nvars();
        let map: Vec<usize> = (0..nb).collect();
        let mut images: Vec<Option<Poly>> = vec![None; self.ring.nvars()];
        for (k, v) in self.gvars.iter().enumerate() {
            images[nb + k] = Some(v.source.embed(&self.ring, &map));
        }
        images[self.s] = Some(Poly::one(&self.ring));
        for r in &self.relations.generators {
            let e = r.substitute(&images);
            let back = Poly::from_terms(
                &self.base.ring,
                e.terms()
                    .iter()
                    .map(|(m, c)| (Monomial::from_exponents(m.exponents()[..nb].to_vec()), *c))
                    .collect(),
            );
            if !self.base.normal_form(&back)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Reduced basis of the ideal generated by `gens` in the presentation
    /// ring, without saturating by `s`.
    pub fn basis_of(&self, gens: &[Poly]) -> Result<Basis> {
        crate::gb::graded_basis(gens, &self.options.limits)
    }

    /// Grade with `s` in degree -1 and `G` in its level.
    pub fn grade(&self, m: &Monomial) -> i64 {
        let nb = self.base.ring.nvars();
        let g: i64 = self
            .gvars
            .iter()
            .enumerate()
            .map(|(k, v)| v.level as i64 * m.exp(nb + k) as i64)
            .sum();
        g - m.exp(self.s) as i64
    }

    /// Every relation is homogeneous for the grading.
    pub fn check_grading(&self) -> bool {
        self.relations.generators.iter().all(|r| {
            let mut it = r.terms().iter().map(|(m, _)| self.grade(m));
            let first = it.next();
            it.all(|g| Some(g) == first)
        })
    }

    /// Relations of stage `k` that are not in the previous stage's list.
    pub fn new_relations(&self, k: usize) -> Vec<Poly> {
        let cur = &self.stages[k].relations;
        if k == 0 {
            return cur.clone();
        }
        let prev = &self.stages[k - 1].relations;
        cur.iter().filter(|p| !prev.contains(p)).cloned().collect()
    }
}

pub fn build_rees(ideal: &Ideal) -> Result<ReesPresentation> {
    ReesPresentation::build(ideal, &ReesOptions::default())
}

pub fn extend_rees(rp: &ReesPresentation, closures: &[Ideal]) -> Result<ReesPresentation> {
    rp.extend(closures, true)
}

pub fn member(f: &Poly, k: u32, rp: &ReesPresentation) -> Result<MembershipAnswer> {
    Ok(rp.member(f, k)?.1)
}

pub fn nf_rees(f: &Poly, rp: &ReesPresentation) -> Result<Poly> {
    rp.nf(f)
}
#[cfg(test)]
mod tests;
