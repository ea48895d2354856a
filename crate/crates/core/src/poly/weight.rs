use std::cmp::Ordering;

use super::monomial::Monomial;
use super::polynomial::Poly;
use super::ring::FlatRing;
use crate::error::{Error, Result};

/// Weight of `f` under one matrix row: the extremal term weight in the
/// direction the row treats as leading (max for global rows, min for local).
pub fn wt(f: &Poly, row: usize) -> Result<i64> {
    let ring = f.ring();
    let r = ring
        .rows()
        .get(row)
        .ok_or_else(|| Error::input(format!("weight row {row} out of range")))?;
    let it = f.terms().iter().map(|(m, _)| r.dot(m));
    let v = if r.local { it.min() } else { it.max() };
    v.ok_or_else(|| Error::input("the zero polynomial has no weight"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightViolation {
    pub property: &'static str,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightReport {
    pub is_multiplicative: bool,
    pub is_order_compatible: bool,
    pub relation_balance: Vec<bool>,
    pub violations: Vec<WeightViolation>,
}

impl WeightReport {
    pub fn all_ok(&self) -> bool {
        self.is_multiplicative && self.is_order_compatible && self.relation_balance.iter().all(|b| *b)
    }
}

fn sample_monomials(ring: &FlatRing) -> Vec<Monomial> {
    let n = ring.nvars();
    let mut out = vec![ring.one()];
    for i in 0..n {
        out.push(Monomial::var(n, i, 1));
        for j in i..n {
            out.push(Monomial::var(n, i, 1).mul(&Monomial::var(n, j, 1)));
        }
    }
    out
}

/// Checks the weight-function axioms on a fixed sample of monomials and
/// the balance condition on each relation.
pub fn validate_weights(ring: &std::sync::Arc<FlatRing>, relations: &[Poly]) -> WeightReport {
    let mut violations = Vec::new();
    let sample = sample_monomials(ring);
    let rows = ring.rows();
    let show = |m: &Monomial| Poly::monomial(ring, m.clone()).to_string();

    let mut multiplicative = true;
    let mut compatible = true;
    for a in &sample {
        for b in &sample {
            let ab = a.mul(b);
            for r in rows {
                if r.dot(&ab) != r.dot(a) + r.dot(b) {
                    multiplicative = false;
                    violations.push(WeightViolation {
                        property: "multiplicative",
                        left: show(a),
                        right: show(b),
                    });
                }
            }
            // a heavier first-row weight in the leading direction must dominate
            let (wa, wb) = (rows[0].dot(a), rows[0].dot(b));
            let expected = if rows[0].local { wb.cmp(&wa) } else { wa.cmp(&wb) };
            if expected != Ordering::Equal && ring.compare(a, b) != expected {
                compatible = false;
                violations.push(WeightViolation {
                    property: "order-compatible",
                    left: show(a),
                    right: show(b),
                });
            }
        }
    }

    let mut balance = Vec::with_capacity(relations.len());
    for f in relations {
        let ok = match wt(f, 0) {
            Ok(w) => f.terms().iter().filter(|(m, _)| rows[0].dot(m) == w).count() >= 2,
            Err(_) => true,
        };
        if !ok {
            violations.push(WeightViolation {
                property: "relation-balance",
                left: f.to_string(),
                right: String::new(),
            });
        }
        balance.push(ok);
    }

    WeightReport {
        is_multiplicative: multiplicative,
        is_order_compatible: compatible,
        relation_balance: balance,
        violations,
    }
}
