//! Exact-arithmetic toolkit for deciding which integer rank sequences can
//! arise from subcomplexes of Koszul, Eagon-Northcott and BGG-derived
//! complexes, together with brute-force oracles over small finite fields.

pub mod error;
pub mod matrix;
pub mod poly;
pub mod scalar;

pub use error::{Error, Result};
