//! Integral closure of ideals over finite fields by the Qth-power method,
//! non-homogeneous Rees presentations, and brute-force oracles.

pub mod error;
pub mod gb;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod qthpower;
pub mod rees;

pub use error::{Error, Result};
