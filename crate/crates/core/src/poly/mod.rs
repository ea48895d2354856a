//! Coefficient field, monomials, rings with matrix orders, and polynomials.

mod field;
mod format;
mod monomial;
mod parse;
mod polynomial;
mod ring;
mod weight;

pub use field::{is_prime, FieldScalar, PrimeField};
pub use format::{format_poly, format_poly_with, FormatOptions};
pub use monomial::Monomial;
pub use parse::{parse_poly, parse_poly_with, Aliases};
pub use polynomial::Poly;
pub use ring::{is_identifier, FlatRing, OrderKind, WeightRow};
pub use weight::{validate_weights, wt, WeightReport, WeightViolation};
