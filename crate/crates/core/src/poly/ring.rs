//! Flattened polynomial rings F_q[y; x; aux] with matrix monomial orders.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::sync::Arc;

use super::field::PrimeField;
use super::monomial::Monomial;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Global,
    Local,
}

/// One row of a weight matrix. A local row ranks smaller weights higher.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightRow {
    pub weights: Vec<i64>,
    pub local: bool,
}

impl WeightRow {
    pub fn new(weights: Vec<i64>, local: bool) -> Self {
        WeightRow { weights, local }
    }

    #[inline]
    pub fn dot(&self, m: &Monomial) -> i64 {
        self.weights
            .iter()
            .zip(m.exponents())
            .map(|(w, &e)| w * e as i64)
            .sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct SparseRow {
    entries: Vec<(usize, i64)>,
    local: bool,
}

/// A polynomial ring over F_q with three ordered variable blocks.
///
/// Variables are indexed dependent block first, then independent, then
/// auxiliary. Monomials are compared row by row through the weight matrix
/// (sense flipped on local rows); remaining ties fall to reverse
/// lexicographic comparison of the exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FlatRing {
    field: PrimeField,
    dependent: Vec<String>,
    independent: Vec<String>,
    aux: Vec<String>,
    order_kind: OrderKind,
    rows: Vec<WeightRow>,
    sparse: Vec<SparseRow>,
}

pub(crate) const WEIGHT_BOUND: i64 = i32::MAX as i64;

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl FlatRing {
    /// Builds and validates a ring. `rows = None` gives a single all-ones
    /// row whose sense follows `order_kind`.
    pub fn new(
        q: u32,
        dependent: Vec<String>,
        independent: Vec<String>,
        aux: Vec<String>,
        order_kind: OrderKind,
        rows: Option<Vec<WeightRow>>,
    ) -> Result<Arc<FlatRing>> {
        let field = PrimeField::new(q)?;
        let n = dependent.len() + independent.len() + aux.len();
        let mut seen = HashSet::new();
        for name in dependent.iter().chain(&independent).chain(&aux) {
            if !is_identifier(name) {
                return Err(Error::input(format!("invalid variable name {name:?}")));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::input(format!("duplicate variable name {name:?}")));
            }
        }
        let rows = rows.unwrap_or_else(|| {
            vec![WeightRow::new(vec![1; n], order_kind == OrderKind::Local)]
        });
        for (i, row) in rows.iter().enumerate() {
            if row.weights.len() != n {
                return Err(Error::input(format!(
                    "weight row {} has {} columns, ring has {} variables",
                    i + 1,
                    row.weights.len(),
                    n
                )));
            }
            if row.weights.iter().any(|w| w.abs() > WEIGHT_BOUND) {
                return Err(Error::input(format!(
                    "weight row {} exceeds the 32-bit bound",
                    i + 1
                )));
            }
        }
        if order_kind == OrderKind::Global {
            if let Some(first) = rows.first() {
                if first.weights.iter().any(|&w| w < 0) {
                    return Err(Error::input(
                        "first weight row must be nonnegative for a global order",
                    ));
                }
            }
        }
        let sparse = rows
            .iter()
            .map(|r| SparseRow {
                entries: r
                    .weights
                    .iter()
                    .enumerate()
                    .filter(|(_, &w)| w != 0)
                    .map(|(i, &w)| (i, w))
                    .collect(),
                local: r.local,
            })
            .collect();
        let ring = FlatRing {
            field,
            dependent,
            independent,
            aux,
            order_kind,
            rows,
            sparse,
        };
        if order_kind == OrderKind::Global && !ring.is_global() {
            return Err(Error::input(
                "order declared global but some variable is not greater than 1",
            ));
        }
        Ok(Arc::new(ring))
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn modulus(&self) -> u32 {
        self.field.modulus()
    }

    pub fn nvars(&self) -> usize {
        self.dependent.len() + self.independent.len() + self.aux.len()
    }

    pub fn order_kind(&self) -> OrderKind {
        self.order_kind
    }

    pub fn rows(&self) -> &[WeightRow] {
        &self.rows
    }

    pub fn dependent_names(&self) -> &[String] {
        &self.dependent
    }

    pub fn independent_names(&self) -> &[String] {
        &self.independent
    }

    pub fn aux_names(&self) -> &[String] {
        &self.aux
    }

    pub fn dependent_range(&self) -> std::ops::Range<usize> {
        0..self.dependent.len()
    }

    pub fn independent_range(&self) -> std::ops::Range<usize> {
        let s = self.dependent.len();
        s..s + self.independent.len()
    }

    pub fn aux_range(&self) -> std::ops::Range<usize> {
        let s = self.dependent.len() + self.independent.len();
        s..s + self.aux.len()
    }

    /// Dependent and independent variables: the variables of the base ring.
    pub fn base_range(&self) -> std::ops::Range<usize> {
        0..self.dependent.len() + self.independent.len()
    }

    pub fn var_name(&self, i: usize) -> &str {
        let d = self.dependent.len();
        let x = self.independent.len();
        if i < d {
            &self.dependent[i]
        } else if i < d + x {
            &self.independent[i - d]
        } else {
            &self.aux[i - d - x]
        }
    }

    pub fn var_names(&self) -> impl Iterator<Item = &str> {
        self.dependent
            .iter()
            .chain(&self.independent)
            .chain(&self.aux)
            .map(String::as_str)
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.var_names().position(|n| n == name)
    }

    pub fn one(&self) -> Monomial {
        Monomial::one(self.nvars())
    }

    /// Compares two monomials under the ring's active order.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ea, eb) = (a.exponents(), b.exponents());
        for row in &self.sparse {
            let mut diff = 0i64;
            for &(i, w) in &row.entries {
                diff += w * (ea[i] as i64 - eb[i] as i64);
            }
            if diff != 0 {
                let o = diff.cmp(&0);
                return if row.local { o.reverse() } else { o };
            }
        }
        for i in (0..ea.len()).rev() {
            if ea[i] != eb[i] {
                return if ea[i] < eb[i] {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
            }
        }
        Ordering::Equal
    }

    /// Checked comparison for callers holding monomials of unknown origin.
    pub fn compare_monomials(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.len() != self.nvars() || b.len() != self.nvars() {
            return Err(Error::RingMismatch(format!(
                "monomial lengths {} and {} for a ring with {} variables",
                a.len(),
                b.len(),
                self.nvars()
            )));
        }
        Ok(self.compare(a, b))
    }

    pub fn var_exceeds_one(&self, i: usize) -> bool {
        let x = Monomial::var(self.nvars(), i, 1);
        self.compare(&x, &self.one()) == Ordering::Greater
    }

    /// Every variable is greater than 1, so the order is a well-order.
    pub fn is_global(&self) -> bool {
        (0..self.nvars()).all(|i| self.var_exceeds_one(i))
    }

    pub fn weight(&self, row: usize, m: &Monomial) -> i64 {
        self.rows[row].dot(m)
    }

    /// Same ring up to structure (pointer equality is the fast path).
    pub fn same(a: &Arc<FlatRing>, b: &Arc<FlatRing>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn weight_matrix_decides_before_tiebreak() {
        let r = FlatRing::new(
            2,
            names(&["y"]),
            names(&["x2", "x1"]),
            vec![],
            OrderKind::Local,
            Some(vec![
                WeightRow::new(vec![9, 3, 2], true),
                WeightRow::new(vec![0, 1, 0], true),
            ]),
        )
        .unwrap();
        let x2 = Monomial::var(3, 1, 1);
        let x1 = Monomial::var(3, 2, 1);
        // smaller weight wins on a local row
        assert_eq!(r.compare(&x2, &x1), Ordering::Less);
        assert_eq!(r.compare(&x2, &x2), Ordering::Equal);
        assert!(!r.is_global());
    }

    #[test]
    fn local_single_row_puts_one_on_top() {
        let r = FlatRing::new(
            3,
            vec![],
            names(&["x"]),
            vec![],
            OrderKind::Local,
            Some(vec![WeightRow::new(vec![1], true)]),
        )
        .unwrap();
        let x = Monomial::var(1, 0, 1);
        assert_eq!(r.compare(&r.one(), &x), Ordering::Greater);
    }

    #[test]
    fn rejects_bad_rings() {
        assert!(FlatRing::new(4, vec![], names(&["x"]), vec![], OrderKind::Global, None).is_err());
        assert!(FlatRing::new(2, vec![], names(&["x", "x"]), vec![], OrderKind::Global, None).is_err());
        assert!(FlatRing::new(
            2,
            vec![],
            names(&["x", "y"]),
            vec![],
            OrderKind::Global,
            Some(vec![WeightRow::new(vec![1], false)])
        )
        .is_err());
        assert!(FlatRing::new(
            2,
            vec![],
            names(&["x"]),
            vec![],
            OrderKind::Global,
            Some(vec![WeightRow::new(vec![-1], false)])
        )
        .is_err());
        assert!(FlatRing::new(
            2,
            vec![],
            names(&["x"]),
            vec![],
            OrderKind::Global,
            Some(vec![WeightRow::new(vec![1i64 << 40], false)])
        )
        .is_err());
    }
}
