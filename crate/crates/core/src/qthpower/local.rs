use std::sync::Arc;

use super::Ideal;
use crate::error::{Error, Result};
use crate::gb::RingPresentation;
use crate::poly::{FlatRing, Monomial, OrderKind, Poly};

/// Replaces each generator `m * u` (monomial `m`, unit `u`) by `m` with
/// unit variables removed; a unit generator turns the ideal into `⟨1⟩`.
pub fn normalize_units(ideal: &Ideal) -> Result<Ideal> {
    let pres = &ideal.presentation;
    if pres.is_global() {
        return Ok(ideal.clone());
    }
    let ring = &pres.ring;
    let units = pres.unit_variables()?;
    let mut gens = Vec::with_capacity(ideal.generators.len());
    for g in &ideal.generators {
        let content = g.monomial_content();
        let rest = g.divide_by_monomial(&content).expect("content divides");
        if pres.is_unit(&rest)? {
            let mut e = content.exponents().to_vec();
            for &u in &units {
                e[u] = 0;
            }
            let m = Monomial::from_exponents(e);
            if m.is_one() {
                return Ok(Ideal::unit(pres));
            }
            gens.push(Poly::monomial(ring, m));
        } else {
            gens.push(g.clone());
        }
    }
    Ideal::new(pres, gens)
}

/// Writes `f = m * u` with `m` a monomial and `u` a unit and returns `m`
/// with the unit variables removed.
pub fn strip_unit(pres: &RingPresentation, f: &Poly) -> Result<Poly> {
    if f.is_zero() {
        return Ok(f.clone());
    }
    let content = f.monomial_content();
    let rest = f.divide_by_monomial(&content).expect("content divides");
    if !pres.is_unit(&rest)? {
        return Err(Error::unsupported(format!(
            "{f} is not a monomial times a unit of the local ring"
        )));
    }
    let mut e = content.exponents().to_vec();
    for u in pres.unit_variables()? {
        e[u] = 0;
    }
    Ok(Poly::monomial(&pres.ring, Monomial::from_exponents(e)))
}

/// A local problem moved to the global polynomial ring on the non-unit
/// independent variables, where closures are computed and then localized.
pub struct LocalShadow {
    pub original: Arc<RingPresentation>,
    pub ideal: Ideal,
}

impl LocalShadow {
    pub fn new(ideal: &Ideal) -> Result<LocalShadow> {
        let pres = &ideal.presentation;
        let ring = &pres.ring;
        let units = pres.unit_variables()?;
        if ring.dependent_range().any(|v| !units.contains(&v)) || pres.rank() != 1 {
            return Err(Error::unsupported(
                "local presentations are supported when every dependent variable is a unit",
            ));
        }
        let normalized = normalize_units(ideal)?;
        let keep: Vec<usize> = ring
            .independent_range()
            .filter(|v| !units.contains(v))
            .collect();
        let names: Vec<String> = keep.iter().map(|&v| ring.var_name(v).to_string()).collect();
        let shadow_ring = FlatRing::new(ring.modulus(), vec![], names, vec![], OrderKind::Global, None)?;
        let shadow_pres = Arc::new(RingPresentation::new(&shadow_ring, &[])?);
        let unit_ideal = normalized.generators.iter().any(|g| g.is_constant());
        let gens = if unit_ideal {
            vec![Poly::one(&shadow_ring)]
        } else {
            normalized
                .generators
                .iter()
                .map(|g| {
                    if g.terms().iter().any(|(m, _)| units.iter().any(|&u| m.exp(u) > 0)) {
                        return Err(Error::unsupported(format!(
                            "generator {g} does not reduce to a polynomial in the local parameters"
                        )));
                    }
                    g.embed_by_name_restricted(&shadow_ring)
                })
                .collect::<Result<Vec<_>>>()?
        };
        Ok(LocalShadow {
            original: pres.clone(),
            ideal: Ideal::new(&shadow_pres, gens)?,
        })
    }

    /// Moves an element of the local ring to the shadow ring.
    pub fn push(&self, f: &Poly) -> Result<Poly> {
        strip_unit(&self.original, f)?.embed_by_name_restricted(&self.ideal.presentation.ring)
    }

    /// Moves a shadow ideal back into the local ring.
    pub fn lift(&self, ideal: &Ideal) -> Result<Ideal> {
        let target = &self.original.ring;
        let gens = ideal
            .generators
            .iter()
            .map(|g| g.embed_by_name(target))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(&self.original, gens)
    }
}
