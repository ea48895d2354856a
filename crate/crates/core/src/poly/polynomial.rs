use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::format::format_poly;
use super::monomial::Monomial;
use super::ring::FlatRing;
use crate::error::{Error, Result};

/// Sparse polynomial over a [`FlatRing`].
///
/// Terms are kept strictly descending under the ring order with nonzero
/// coefficients; the empty term list is zero.
#[derive(Clone)]
pub struct Poly {
    ring: Arc<FlatRing>,
    terms: Vec<(Monomial, u32)>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        FlatRing::same(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Poly {
    pub fn zero(ring: &Arc<FlatRing>) -> Poly {
        Poly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<FlatRing>, c: i64) -> Poly {
        Poly::term(ring, ring.one(), ring.field().reduce(c))
    }

    pub fn one(ring: &Arc<FlatRing>) -> Poly {
        Poly::constant(ring, 1)
    }

    pub fn term(ring: &Arc<FlatRing>, m: Monomial, c: u32) -> Poly {
        let c = c % ring.modulus();
        let terms = if c == 0 { Vec::new() } else { vec![(m, c)] };
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn monomial(ring: &Arc<FlatRing>, m: Monomial) -> Poly {
        Poly::term(ring, m, 1)
    }

    pub fn var(ring: &Arc<FlatRing>, i: usize) -> Poly {
        Poly::monomial(ring, Monomial::var(ring.nvars(), i, 1))
    }

    /// Canonicalizes an arbitrary term list (any order, repeats allowed).
    pub fn from_terms(ring: &Arc<FlatRing>, mut terms: Vec<(Monomial, u32)>) -> Poly {
        let field = ring.field();
        terms.sort_by(|a, b| ring.compare(&b.0, &a.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            let c = c % field.modulus();
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = field.add(*lc, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| *c != 0);
        Poly {
            ring: ring.clone(),
            terms: out,
        }
    }

    pub(crate) fn from_sorted_unchecked(ring: &Arc<FlatRing>, terms: Vec<(Monomial, u32)>) -> Poly {
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<FlatRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, u32)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> u32 {
        self.terms.first().map_or(0, |(_, c)| *c)
    }

    /// Total degree of the polynomial (max over terms).
    pub fn degree(&self) -> u64 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// `deg(f) - deg(LM(f))`, the quantity driving Mora's reducer choice.
    pub fn ecart(&self) -> u64 {
        match self.leading_monomial() {
            Some(lm) => self.degree() - lm.degree(),
            None => 0,
        }
    }

    pub fn check_ring(&self, other: &Poly) -> Result<()> {
        if FlatRing::same(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch(
                "operands live in different rings".to_string(),
            ))
        }
    }

    pub fn coeff_of(&self, m: &Monomial) -> u32 {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map_or(0, |(_, c)| *c)
    }

    /// `self + c * m * other`, one linear merge.
    pub fn add_scaled(&self, c: u32, m: &Monomial, other: &Poly) -> Poly {
        let field = self.ring.field();
        let ring = &self.ring;
        if c == 0 || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted = |k: usize| -> (Monomial, u32) {
            let (om, oc) = &other.terms[k];
            (om.mul(m), field.mul(*oc, c))
        };
        let mut pending: Option<(Monomial, u32)> = if j < other.terms.len() {
            Some(shifted(0))
        } else {
            None
        };
        while i < self.terms.len() || pending.is_some() {
            match (&self.terms.get(i), &pending) {
                (Some((am, ac)), Some((bm, bc))) => match ring.compare(am, bm) {
                    Ordering::Greater => {
                        out.push((am.clone(), *ac));
                        i += 1;
                    }
                    Ordering::Less => {
                        out.push((bm.clone(), *bc));
                        j += 1;
                        pending = if j < other.terms.len() { Some(shifted(j)) } else { None };
                    }
                    Ordering::Equal => {
                        let s = field.add(*ac, *bc);
                        if s != 0 {
                            out.push((am.clone(), s));
                        }
                        i += 1;
                        j += 1;
                        pending = if j < other.terms.len() { Some(shifted(j)) } else { None };
                    }
                },
                (Some((am, ac)), None) => {
                    out.push((am.clone(), *ac));
                    i += 1;
                }
                (None, Some((bm, bc))) => {
                    out.push((bm.clone(), *bc));
                    j += 1;
                    pending = if j < other.terms.len() { Some(shifted(j)) } else { None };
                }
                (None, None) => break,
            }
        }
        Poly {
            ring: ring.clone(),
            terms: out,
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        Ok(self.add_scaled(1, &self.ring.one(), other))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        let m1 = self.ring.field().neg(1);
        Ok(self.add_scaled(m1, &self.ring.one(), other))
    }

    pub fn neg(&self) -> Poly {
        self.scale(self.ring.field().neg(1))
    }

    pub fn scale(&self, c: u32) -> Poly {
        let field = self.ring.field();
        let c = c % field.modulus();
        if c == 0 {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), field.mul(*a, c)))
                .collect(),
        }
    }

    /// Multiplication by a monomial keeps the term order.
    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), *c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.ring);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_monomial(m).scale(*c);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_monomial(m).scale(*c);
        }
        let field = self.ring.field();
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, ac) in &self.terms {
            for (b, bc) in &other.terms {
                terms.push((a.mul(b), field.mul(*ac, *bc)));
            }
        }
        Poly::from_terms(&self.ring, terms)
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(&self.ring);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// `f^Q` for `Q` a power of the characteristic: `(Σ c m)^Q = Σ c m^Q`.
    pub fn frobenius_power(&self, big_q: u64) -> Result<Poly> {
        let q = self.ring.modulus() as u64;
        let mut t = big_q;
        if t < q {
            return Err(Error::input(format!("{big_q} is not a positive power of {q}")));
        }
        while t.is_multiple_of(q) {
            t /= q;
        }
        if t != 1 {
            return Err(Error::input(format!("{big_q} is not a power of {q}")));
        }
        let k = u32::try_from(big_q).map_err(|_| Error::input("Frobenius exponent too large"))?;
        // c^Q = c in F_q, and m -> m^Q preserves the order.
        Ok(Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.pow(k), *c)).collect(),
        })
    }

    pub fn monic(&self) -> Poly {
        match self.ring.field().inv(self.leading_coeff()) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    /// Re-expresses the polynomial in `target` through a variable map
    /// (`map[i]` is the target index of source variable `i`).
    pub fn embed(&self, target: &Arc<FlatRing>, map: &[usize]) -> Poly {
        let n = target.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; n];
                for (i, &x) in m.exponents().iter().enumerate() {
                    e[map[i]] += x;
                }
                (Monomial::from_exponents(e), *c)
            })
            .collect();
        Poly::from_terms(target, terms)
    }

    /// Embeds into a ring whose variables are named like ours (by name).
    pub fn embed_by_name(&self, target: &Arc<FlatRing>) -> Result<Poly> {
        let map = (0..self.ring.nvars())
            .map(|i| {
                let name = self.ring.var_name(i);
                target
                    .var_index(name)
                    .ok_or_else(|| Error::RingMismatch(format!("variable {name} missing in target ring")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.embed(target, &map))
    }

    /// Embeds by name, requiring every variable that occurs to exist in
    /// `target` (absent variables must have exponent zero).
    pub fn embed_by_name_restricted(&self, target: &Arc<FlatRing>) -> Result<Poly> {
        let n = target.nvars();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut e = vec![0u32; n];
            for (i, &x) in m.exponents().iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let name = self.ring.var_name(i);
                let j = target.var_index(name).ok_or_else(|| {
                    Error::RingMismatch(format!("variable {name} missing in target ring"))
                })?;
                e[j] += x;
            }
            terms.push((Monomial::from_exponents(e), *c));
        }
        Ok(Poly::from_terms(target, terms))
    }

    /// Substitutes `images[i]` for variable `i`; `None` keeps the variable.
    pub fn substitute(&self, images: &[Option<Poly>]) -> Poly {
        let ring = &self.ring;
        let mut acc = Poly::zero(ring);
        for (m, c) in &self.terms {
            let mut kept = vec![0u32; ring.nvars()];
            let mut t = Poly::one(ring);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match &images[i] {
                    Some(p) => t = t.mul_unchecked(&p.pow(e)),
                    None => kept[i] = e,
                }
            }
            let t = t.mul_monomial(&Monomial::from_exponents(kept)).scale(*c);
            acc = acc.add_scaled(1, &ring.one(), &t);
        }
        acc
    }

    /// Monomial content: gcd of all term monomials.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            Some((m, _)) => it.fold(m.clone(), |g, (t, _)| g.gcd(t)),
            None => self.ring.one(),
        }
    }

    pub fn divide_by_monomial(&self, m: &Monomial) -> Option<Poly> {
        let terms = self
            .terms
            .iter()
            .map(|(t, c)| m.quotient_of(t).map(|q| (q, *c)))
            .collect::<Option<Vec<_>>>()?;
        Some(Poly::from_terms(&self.ring, terms))
    }

    pub fn uses_only(&self, range: std::ops::Range<usize>) -> bool {
        self.terms.iter().all(|(m, _)| m.support_within(range.clone()))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_poly(self))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", format_poly(self))
    }
}
