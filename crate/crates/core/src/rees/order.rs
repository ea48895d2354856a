use std::sync::Arc;

use super::GVar;
use crate::error::Result;
use crate::poly::{FlatRing, OrderKind, WeightRow};

/// Monomial order on `base[G; s]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ReesOrder {
    /// Base rows first (zero on `G`, `s`), then total `G` degree, then `s`.
    Block,
    /// Each base row extended by the source weights of the `G`s, with a
    /// local `s` row after the first so that `1 > s`.
    #[default]
    Weighted,
}

pub(crate) fn s_name(base: &FlatRing, gvars: &[GVar]) -> String {
    let mut name = "s".to_string();
    while base.var_index(&name).is_some() || gvars.iter().any(|v| v.name == name) {
        name.push('_');
    }
    name
}

pub(crate) fn rees_ring(base: &FlatRing, gvars: &[GVar], order: ReesOrder) -> Result<Arc<FlatRing>> {
    let nb = base.nvars();
    let ng = gvars.len();
    let n = nb + ng + 1;
    let mut aux: Vec<String> = gvars.iter().map(|v| v.name.clone()).collect();
    aux.push(s_name(base, gvars));
    let extend = |r: usize, with_sources: bool| -> WeightRow {
        let row = &base.rows()[r];
        let mut w = row.weights.clone();
        for v in gvars {
            w.push(if with_sources { v.weights[r] } else { 0 });
        }
        w.push(0);
        WeightRow::new(w, row.local)
    };
    let mut rows = Vec::new();
    let kind = match order {
        ReesOrder::Block => {
            for r in 0..base.rows().len() {
                rows.push(extend(r, false));
            }
            let mut g = vec![0i64; n];
            g[nb..nb + ng].iter_mut().for_each(|w| *w = 1);
            rows.push(WeightRow::new(g, false));
            let mut s = vec![0i64; n];
            s[n - 1] = 1;
            rows.push(WeightRow::new(s, false));
            OrderKind::Global
        }
        ReesOrder::Weighted => {
            let first = &base.rows()[0];
            if first.local || first.weights.iter().any(|&w| w <= 0) || gvars.iter().any(|v| v.weights[0] <= 0) {
                // a positive first row keeps each graded piece well-ordered
                let mut d = vec![1i64; nb];
                d.extend(gvars.iter().map(|v| v.degree.max(1)));
                d.push(0);
                rows.push(WeightRow::new(d, false));
            }
            rows.push(extend(0, true));
            let mut s = vec![0i64; n];
            s[n - 1] = 1;
            rows.push(WeightRow::new(s, true));
            for r in 1..base.rows().len() {
                rows.push(extend(r, true));
            }
            OrderKind::Local
        }
    };
    FlatRing::new(
        base.modulus(),
        base.dependent_names().to_vec(),
        base.independent_names().to_vec(),
        aux,
        kind,
        Some(rows),
    )
}
