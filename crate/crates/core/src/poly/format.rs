use super::polynomial::Poly;

/// Display options for [`format_poly_with`].
#[derive(Clone, Debug, Default)]
pub struct FormatOptions {
    /// Variable indices omitted from the output (their exponents are dropped).
    pub hidden: Vec<usize>,
}

pub fn format_poly(f: &Poly) -> String {
    format_poly_with(f, &FormatOptions::default())
}

/// Canonical rendering: terms in descending order, coefficients above `q/2`
/// written as subtraction.
pub fn format_poly_with(f: &Poly, opts: &FormatOptions) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let ring = f.ring();
    let q = ring.modulus();
    let mut out = String::new();
    for (k, (m, c)) in f.terms().iter().enumerate() {
        let (neg, mag) = if q > 2 && *c > q / 2 { (true, q - c) } else { (false, *c) };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut factors: Vec<String> = Vec::new();
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 || opts.hidden.contains(&i) {
                continue;
            }
            if e == 1 {
                factors.push(ring.var_name(i).to_string());
            } else {
                factors.push(format!("{}^{}", ring.var_name(i), e));
            }
        }
        if mag != 1 || factors.is_empty() {
            factors.insert(0, mag.to_string());
        }
        out.push_str(&factors.join("*"));
    }
    out
}
