use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly};

/// Homogenizes each generator to its first-row weight degree with powers
/// of the variable `h` (which must have first-row weight 1 and not occur).
pub fn homogenize(gens: &[Poly], h: usize) -> Result<Vec<Poly>> {
    let mut out = Vec::with_capacity(gens.len());
    for g in gens {
        let ring = g.ring();
        if h >= ring.nvars() {
            return Err(Error::input("homogenizing variable out of range"));
        }
        let row = &ring.rows()[0];
        if row.weights[h] != 1 {
            return Err(Error::input(format!(
                "homogenizing variable {} must have weight 1",
                ring.var_name(h)
            )));
        }
        if g.terms().iter().any(|(m, _)| m.exp(h) > 0) {
            return Err(Error::input(format!(
                "{} is not fresh: it occurs in {}",
                ring.var_name(h),
                g
            )));
        }
        let deg = g.terms().iter().map(|(m, _)| row.dot(m)).max().unwrap_or(0);
        let terms = g
            .terms()
            .iter()
            .map(|(m, c)| {
                let k = deg - row.dot(m);
                let shift = u32::try_from(k)
                    .map_err(|_| Error::input("negative weights cannot be homogenized"))?;
                Ok((m.mul(&Monomial::var(ring.nvars(), h, shift)), *c))
            })
            .collect::<Result<Vec<_>>>()?;
        out.push(Poly::from_terms(ring, terms));
    }
    Ok(out)
}

/// Sets `h = 1`.
pub fn dehomogenize(f: &Poly, h: usize) -> Poly {
    let ring = f.ring();
    let mut images = vec![None; ring.nvars()];
    images[h] = Some(Poly::one(ring));
    f.substitute(&images)
}
