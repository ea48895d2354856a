//! Sparse Gaussian elimination over F_q.

use std::collections::{BTreeMap, HashMap};

use crate::poly::PrimeField;

/// Sparse vector: `(index, nonzero coefficient)` sorted by index.
pub type SparseVec = Vec<(usize, u32)>;

fn axpy(field: PrimeField, acc: &mut BTreeMap<usize, u32>, c: u32, row: &SparseVec) {
    for &(k, v) in row {
        let e = acc.entry(k).or_insert(0);
        *e = field.add(*e, field.mul(c, v));
        if *e == 0 {
            acc.remove(&k);
        }
    }
}

/// Incremental echelon form that remembers how each row was combined.
pub struct Eliminator {
    field: PrimeField,
    pivots: HashMap<usize, usize>,
    rows: Vec<SparseVec>,
    combos: Vec<SparseVec>,
}

/// Result of inserting a vector.
pub enum Insert {
    /// New pivot row; the vector was independent.
    Independent,
    /// The vector depends on earlier inputs: `Σ c_j v_j = 0` with these
    /// coefficients over input indices (including the new one).
    Dependent(SparseVec),
}

impl Eliminator {
    pub fn new(field: PrimeField) -> Self {
        Eliminator {
            field,
            pivots: HashMap::new(),
            rows: Vec::new(),
            combos: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Inserts input number `id` (ids must be distinct).
    pub fn insert(&mut self, id: usize, v: &SparseVec) -> Insert {
        let f = self.field;
        let mut acc: BTreeMap<usize, u32> = v.iter().copied().filter(|(_, c)| *c != 0).collect();
        let mut combo: BTreeMap<usize, u32> = BTreeMap::new();
        combo.insert(id, 1);
        let mut from = 0;
        while let Some((&k, &c)) = acc.range(from..).find(|(k, _)| self.pivots.contains_key(k)) {
            from = k;
            let r = self.pivots[&k];
            // rows are normalized to pivot coefficient 1
            let m = f.neg(c);
            axpy(f, &mut acc, m, &self.rows[r]);
            axpy(f, &mut combo, m, &self.combos[r]);
        }
        if acc.is_empty() {
            return Insert::Dependent(combo.into_iter().collect());
        }
        let (&p, &pc) = acc.iter().next().unwrap();
        let inv = f.inv(pc).unwrap();
        let row: SparseVec = acc.into_iter().map(|(k, c)| (k, f.mul(c, inv))).collect();
        let cmb: SparseVec = combo.into_iter().map(|(k, c)| (k, f.mul(c, inv))).collect();
        self.pivots.insert(p, self.rows.len());
        self.rows.push(row);
        self.combos.push(cmb);
        Insert::Independent
    }
}

/// Basis of `{γ : Σ γ_i v_i = 0}`, one sparse vector over input indices each.
pub fn kernel(field: PrimeField, vectors: &[SparseVec]) -> Vec<SparseVec> {
    let mut e = Eliminator::new(field);
    let mut out = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        if let Insert::Dependent(c) = e.insert(i, v) {
            out.push(c);
        }
    }
    out
}

/// Indices of a maximal independent subset, scanning in order.
pub fn independent_subset(field: PrimeField, vectors: &[SparseVec]) -> Vec<usize> {
    let mut e = Eliminator::new(field);
    let mut out = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        if let Insert::Independent = e.insert(i, v) {
            out.push(i);
        }
    }
    out
}
