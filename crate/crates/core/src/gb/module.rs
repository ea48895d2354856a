use std::collections::HashMap;
use std::sync::Arc;

use super::buchberger::{groebner_core, Engine};
use super::reduce::{reduce_full, Budget, Lead};
use super::{Limits, RingPresentation};
use crate::error::{Error, Result};
use crate::poly::{FlatRing, Monomial, OrderKind, Poly, WeightRow};

/// A finitely generated `P`-submodule of `Ā`.
#[derive(Clone, Debug)]
pub struct PModule {
    pub presentation: Arc<RingPresentation>,
    pub generators: Vec<Poly>,
}

/// Coordinates of `Ā` over `P`: one position per standard monomial in `Y`,
/// plus optional tag positions ranked below them.
pub(crate) struct ModuleRing {
    pub ring: Arc<FlatRing>,
    pub base: Arc<FlatRing>,
    pub y_index: HashMap<Monomial, usize>,
    pub y: Vec<Monomial>,
    pub ntags: usize,
    /// `x_map[i]` = module-ring index of base independent variable `i`.
    x_map: Vec<usize>,
}

fn fresh_name(stem: &str, k: usize, taken: &dyn Fn(&str) -> bool) -> String {
    let mut name = format!("{stem}{k}");
    while taken(&name) {
        name.push('_');
    }
    name
}

impl ModuleRing {
    pub fn new(pres: &RingPresentation, ntags: usize) -> Result<ModuleRing> {
        let base = &pres.ring;
        let d = pres.y.len();
        let taken = |n: &str| base.var_index(n).is_some();
        let mut pos_names: Vec<String> = (0..d).map(|i| fresh_name("e", i, &taken)).collect();
        pos_names.extend((0..ntags).map(|i| fresh_name("t", i, &taken)));
        let xr = base.independent_range();
        let npos = d + ntags;
        let n = npos + xr.len();
        let mut rows = Vec::new();
        let mut w0 = vec![0i64; n];
        for (i, w) in w0.iter_mut().take(d).enumerate() {
            *w = (ntags + i + 1) as i64;
        }
        for t in 0..ntags {
            w0[d + t] = (t + 1) as i64;
        }
        rows.push(WeightRow::new(w0, false));
        let restricted: Vec<WeightRow> = base
            .rows()
            .iter()
            .map(|r| {
                let mut w = vec![0i64; n];
                for (k, i) in xr.clone().enumerate() {
                    w[npos + k] = r.weights[i];
                }
                WeightRow::new(w, r.local)
            })
            .collect();
        let mut candidate = rows.clone();
        candidate.extend(restricted);
        let ring = match FlatRing::new(
            base.modulus(),
            pos_names.clone(),
            base.independent_names().to_vec(),
            vec![],
            OrderKind::Global,
            Some(candidate),
        ) {
            Ok(r) => r,
            Err(_) => {
                let mut ones = vec![0i64; n];
                for k in 0..xr.len() {
                    ones[npos + k] = 1;
                }
                rows.push(WeightRow::new(ones, false));
                FlatRing::new(
                    base.modulus(),
                    pos_names,
                    base.independent_names().to_vec(),
                    vec![],
                    OrderKind::Global,
                    Some(rows),
                )?
            }
        };
        let y_index = pres.y.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Ok(ModuleRing {
            ring,
            base: base.clone(),
            y_index,
            y: pres.y.clone(),
            ntags,
            x_map: (0..xr.len()).map(|k| npos + k).collect(),
        })
    }

    pub fn npos(&self) -> usize {
        self.y.len() + self.ntags
    }

    /// Position of a module-ring monomial (its single `e`/tag variable).
    pub fn position(&self, m: &Monomial) -> usize {
        m.exponents()[..self.npos()]
            .iter()
            .position(|&e| e > 0)
            .expect("module element without position")
    }

    pub fn is_tag(&self, pos: usize) -> bool {
        pos >= self.y.len()
    }

    /// Coordinates of an NF-reduced element of `Ā`.
    pub fn to_vector(&self, f: &Poly) -> Result<Poly> {
        let dep = self.base.dependent_range();
        let xr = self.base.independent_range();
        let n = self.ring.nvars();
        let mut terms = Vec::with_capacity(f.len());
        for (m, c) in f.terms() {
            let ypart = m.restrict(dep.clone());
            let Some(&pos) = self.y_index.get(&ypart) else {
                return Err(Error::unsupported(format!(
                    "term {} is not supported on the standard monomials",
                    Poly::monomial(&self.base, m.clone())
                )));
            };
            let mut e = vec![0u32; n];
            e[pos] = 1;
            for (k, i) in xr.clone().enumerate() {
                e[self.x_map[k]] = m.exp(i);
            }
            terms.push((Monomial::from_exponents(e), *c));
        }
        Ok(Poly::from_terms(&self.ring, terms))
    }

    /// Inverse of [`to_vector`](Self::to_vector) on the real positions.
    pub fn vector_to_poly(&self, v: &Poly) -> Poly {
        let xr = self.base.independent_range();
        let mut terms = Vec::with_capacity(v.len());
        for (m, c) in v.terms() {
            let pos = self.position(m);
            if self.is_tag(pos) {
                continue;
            }
            let mut e = self.y[pos].exponents().to_vec();
            for (k, i) in xr.clone().enumerate() {
                e[i] = m.exp(self.x_map[k]);
            }
            terms.push((Monomial::from_exponents(e), *c));
        }
        Poly::from_terms(&self.base, terms)
    }

    /// Extracts the `P`-polynomial in tag position `t` of a vector.
    pub fn tag_coefficient(&self, v: &Poly, t: usize) -> Poly {
        let pos = self.y.len() + t;
        let xr = self.base.independent_range();
        let mut terms = Vec::new();
        for (m, c) in v.terms() {
            if self.position(m) != pos {
                continue;
            }
            let mut e = vec![0u32; self.base.nvars()];
            for (k, i) in xr.clone().enumerate() {
                e[i] = m.exp(self.x_map[k]);
            }
            terms.push((Monomial::from_exponents(e), *c));
        }
        Poly::from_terms(&self.base, terms)
    }

    pub fn tag(&self, t: usize) -> Poly {
        Poly::var(&self.ring, self.y.len() + t)
    }
}

/// A module Gröbner basis with its coordinate ring, ready for reduction.
pub(crate) struct ModuleGb {
    pub mring: Arc<ModuleRing>,
    pub basis: Vec<Poly>,
    leads: Vec<Lead>,
}

impl ModuleGb {
    pub fn compute(mring: Arc<ModuleRing>, vectors: Vec<Poly>, limits: &Limits) -> Result<ModuleGb> {
        let nonzero: Vec<Poly> = vectors.into_iter().filter(|v| !v.is_zero()).collect();
        if nonzero.is_empty() {
            return Ok(ModuleGb {
                mring,
                basis: vec![],
                leads: vec![],
            });
        }
        if nonzero.iter().all(|v| v.is_monomial()) {
            return Ok(Self::monomial(mring, nonzero));
        }
        let npos = mring.npos();
        let d = mring.y.len();
        let filter = move |a: &Monomial, b: &Monomial| {
            let pa = a.exponents()[..npos].iter().position(|&e| e > 0);
            let pb = b.exponents()[..npos].iter().position(|&e| e > 0);
            pa == pb && pa.is_some_and(|p| p < d)
        };
        let b = groebner_core(&nonzero, limits, Engine::Buchberger, Some(&filter))?;
        let leads = b.generators.iter().map(Lead::of).collect();
        Ok(ModuleGb {
            mring,
            basis: b.generators,
            leads,
        })
    }

    /// Minimal generators of a module spanned by monomial vectors.
    fn monomial(mring: Arc<ModuleRing>, vectors: Vec<Poly>) -> ModuleGb {
        let ring = mring.ring.clone();
        let mut monos: Vec<Monomial> = vectors
            .iter()
            .map(|v| v.leading_monomial().unwrap().clone())
            .collect();
        monos.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| ring.compare(a, b)));
        monos.dedup();
        let mut keep: Vec<Monomial> = Vec::new();
        let mut masks: Vec<u64> = Vec::new();
        for m in monos {
            let mask = super::reduce::divmask(&m);
            if !keep.iter().zip(&masks).any(|(k, km)| km & !mask == 0 && k.divides(&m)) {
                keep.push(m);
                masks.push(mask);
            }
        }
        keep.sort_by(|a, b| ring.compare(a, b));
        let basis: Vec<Poly> = keep.into_iter().map(|m| Poly::monomial(&ring, m)).collect();
        let leads = basis.iter().map(Lead::of).collect();
        ModuleGb {
            mring,
            basis,
            leads,
        }
    }

    pub fn reduce(&self, v: &Poly, budget: &mut Budget) -> Result<Poly> {
        if self.basis.is_empty() {
            return Ok(v.clone());
        }
        reduce_full(v, &self.basis, &self.leads, budget)
    }
}

impl PModule {
    pub fn new(presentation: &Arc<RingPresentation>, generators: Vec<Poly>) -> Result<PModule> {
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            let g = presentation.normal_form(&g)?;
            if !g.is_zero() && !gens.contains(&g) {
                gens.push(g);
            }
        }
        Ok(PModule {
            presentation: presentation.clone(),
            generators: gens,
        })
    }

    pub(crate) fn module_ring(&self, ntags: usize) -> Result<Arc<ModuleRing>> {
        Ok(Arc::new(ModuleRing::new(&self.presentation, ntags)?))
    }

    pub(crate) fn gb(&self, limits: &Limits) -> Result<ModuleGb> {
        let mring = self.module_ring(0)?;
        let vectors = self
            .generators
            .iter()
            .map(|g| mring.to_vector(g))
            .collect::<Result<Vec<_>>>()?;
        ModuleGb::compute(mring, vectors, limits)
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        let gb = self.gb(&Limits::default())?;
        let f = self.presentation.normal_form(f)?;
        let v = gb.mring.to_vector(&f)?;
        Ok(gb.reduce(&v, &mut Budget::new(Limits::default().max_steps))?.is_zero())
    }

    /// Mutual containment of generators.
    pub fn same_span(&self, other: &PModule) -> Result<bool> {
        let a = self.gb(&Limits::default())?;
        let b = other.gb(&Limits::default())?;
        let mut budget = Budget::new(Limits::default().max_steps);
        for g in &other.generators {
            if !a.reduce(&a.mring.to_vector(g)?, &mut budget)?.is_zero() {
                return Ok(false);
            }
        }
        for g in &self.generators {
            if !b.reduce(&b.mring.to_vector(g)?, &mut budget)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Module Gröbner basis, returned as elements of `Ā` spanning the same module.
pub fn module_gb(m: &PModule) -> Result<PModule> {
    let gb = m.gb(&Limits::default())?;
    let gens = gb.basis.iter().map(|v| gb.mring.vector_to_poly(v)).collect();
    Ok(PModule {
        presentation: m.presentation.clone(),
        generators: gens,
    })
}

/// Decision for `f ∈ M` with explicit `P`-coefficients on success.
#[derive(Clone, Debug)]
pub enum Membership {
    Member(Vec<Poly>),
    NotMember,
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }
}

/// `f ∈ M` over `P`; on success `f = Σ c_i m_i` in `Ā`.
pub fn module_member(f: &Poly, m: &PModule) -> Result<Membership> {
    module_member_with(f, m, &Limits::default())
}

pub fn module_member_with(f: &Poly, m: &PModule, limits: &Limits) -> Result<Membership> {
    let pres = &m.presentation;
    let f = pres.normal_form(f)?;
    let base = &pres.ring;
    if f.is_zero() {
        return Ok(Membership::Member(vec![Poly::zero(base); m.generators.len()]));
    }
    let k = m.generators.len();
    let mring = m.module_ring(k)?;
    let vectors = m
        .generators
        .iter()
        .enumerate()
        .map(|(i, g)| mring.to_vector(g)?.add(&mring.tag(i)))
        .collect::<Result<Vec<_>>>()?;
    let gb = ModuleGb::compute(mring.clone(), vectors, limits)?;
    let mut budget = Budget::new(limits.max_steps);
    let r = gb.reduce(&mring.to_vector(&f)?, &mut budget)?;
    if r.terms().iter().any(|(t, _)| !mring.is_tag(mring.position(t))) {
        return Ok(Membership::NotMember);
    }
    let coeffs = (0..k).map(|i| mring.tag_coefficient(&r, i).neg()).collect();
    Ok(Membership::Member(coeffs))
}
