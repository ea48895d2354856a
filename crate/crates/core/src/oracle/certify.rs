use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gb::{module_member_with, Limits, Membership, PModule, RingPresentation};
use crate::poly::{Monomial, Poly};
use crate::qthpower::{Ideal, LocalShadow};

/// One summand `coefficient * y * g_{i_1} ... g_{i_j}` of an `I^j` member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Combination {
    pub coefficient: Poly,
    pub standard_monomial: Monomial,
    /// Indices into the ideal's generators.
    pub factors: Vec<usize>,
}

/// `f^k + a_1 f^(k-1) + ... + a_k = 0` with `a_j` in `I^j`.
#[derive(Clone, Debug)]
pub struct IntegralityCertificate {
    pub presentation: Arc<RingPresentation>,
    pub element: Poly,
    pub generators: Vec<Poly>,
    pub degree: u32,
    /// `coefficients[j - 1] = a_j`.
    pub coefficients: Vec<Poly>,
    /// `combinations[j - 1]` expands to `a_j`.
    pub combinations: Vec<Vec<Combination>>,
}

impl IntegralityCertificate {
    /// Re-expands every `a_j` and re-evaluates the monic polynomial.
    pub fn replay(&self) -> Result<bool> {
        let pres = &self.presentation;
        let ring = &pres.ring;
        for (j, combo) in self.combinations.iter().enumerate() {
            let mut acc = Poly::zero(ring);
            for c in combo {
                let mut t = c.coefficient.mul_monomial(&c.standard_monomial);
                if c.factors.len() != j + 1 {
                    return Ok(false);
                }
                for &i in &c.factors {
                    t = t.mul(&self.generators[i])?;
                }
                acc = acc.add(&t)?;
            }
            if !pres.normal_form(&acc.sub(&self.coefficients[j])?)?.is_zero() {
                return Ok(false);
            }
        }
        let k = self.degree;
        let mut total = self.element.pow(k);
        for (j, a) in self.coefficients.iter().enumerate() {
            total = total.add(&a.mul(&self.element.pow(k - 1 - j as u32))?)?;
        }
        Ok(pres.normal_form(&total)?.is_zero())
    }
}

fn multisets(n: usize, j: usize, start: usize) -> Vec<Vec<usize>> {
    if j == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in start..n {
        for mut rest in multisets(n, j - 1, i) {
            rest.insert(0, i);
            out.push(rest);
        }
    }
    out
}

pub fn certify_integral(f: &Poly, ideal: &Ideal, kmax: u32) -> Result<Option<IntegralityCertificate>> {
    certify_integral_with(f, ideal, kmax, &Limits::default())
}

/// Searches `k = 1..=kmax` for a monic `I`-polynomial annihilating `f`.
/// Local problems are moved to the polynomial shadow first.
pub fn certify_integral_with(
    f: &Poly,
    ideal: &Ideal,
    kmax: u32,
    limits: &Limits,
) -> Result<Option<IntegralityCertificate>> {
    if !ideal.presentation.is_global() {
        let sh = LocalShadow::new(ideal)?;
        return certify_integral_with(&sh.push(f)?, &sh.ideal, kmax, limits);
    }
    let pres = &ideal.presentation;
    if !crate::poly::FlatRing::same(f.ring(), &pres.ring) {
        return Err(Error::RingMismatch("element is not in the ideal's ring".into()));
    }
    let f = pres.normal_form(f)?;
    let gens = &ideal.generators;
    for k in 1..=kmax {
        // summands y * m * f^(k-j), m a product of j generators
        let mut items: Vec<Poly> = Vec::new();
        let mut meta: Vec<(usize, Monomial, Vec<usize>)> = Vec::new();
        for j in 1..=k as usize {
            let fpow = f.pow(k - j as u32);
            for ms in multisets(gens.len(), j, 0) {
                let mut m = Poly::one(&pres.ring);
                for &i in &ms {
                    m = m.mul(&gens[i])?;
                }
                let mf = m.mul(&fpow)?;
                for y in &pres.y {
                    let v = pres.normal_form(&mf.mul_monomial(y))?;
                    if v.is_zero() || items.contains(&v) {
                        continue;
                    }
                    items.push(v);
                    meta.push((j, y.clone(), ms.clone()));
                }
            }
        }
        let module = PModule::new(pres, items.clone())?;
        debug_assert_eq!(module.generators.len(), items.len());
        let target = f.pow(k);
        let coeffs = match module_member_with(&target, &module, limits) {
            Ok(Membership::Member(c)) => c,
            Ok(Membership::NotMember) => continue,
            Err(Error::Resource(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        let mut combinations: Vec<Vec<Combination>> = vec![Vec::new(); k as usize];
        let mut coefficients: Vec<Poly> = vec![Poly::zero(&pres.ring); k as usize];
        for (c, (j, y, ms)) in coeffs.iter().zip(&meta) {
            if c.is_zero() {
                continue;
            }
            let c = c.neg();
            let mut t = c.mul_monomial(y);
            for &i in ms {
                t = t.mul(&gens[i])?;
            }
            coefficients[j - 1] = coefficients[j - 1].add(&t)?;
            combinations[j - 1].push(Combination {
                coefficient: c,
                standard_monomial: y.clone(),
                factors: ms.clone(),
            });
        }
        let coefficients = coefficients
            .iter()
            .map(|a| pres.normal_form(a))
            .collect::<Result<Vec<_>>>()?;
        return Ok(Some(IntegralityCertificate {
            presentation: pres.clone(),
            element: f,
            generators: gens.clone(),
            degree: k,
            coefficients,
            combinations,
        }));
    }
    Ok(None)
}
