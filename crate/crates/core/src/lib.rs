//! Exact computations on projective scrolls over an elliptic curve: jet ranks,
//! inflection loci, Segre invariants and the checks that tie them together.

pub mod bundlesec;
pub mod catalog;
pub mod ellcurve;
pub mod error;
pub mod exactlin;
pub mod scrolljet;
pub mod segrethm;
pub mod serial;

pub use error::{Error, Result};
