//! Brute-force checks: Newton-polyhedron closure of monomial ideals and
//! explicit integral-dependence certificates.

mod certify;
mod cone;

pub use certify::{certify_integral, certify_integral_with, Combination, IntegralityCertificate};
pub use cone::{np_closure, np_member, ExponentCone, NpAnswer, DEFAULT_KBOUND};
