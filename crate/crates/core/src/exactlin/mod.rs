pub mod field;
pub mod laurent;
pub mod matrix;
pub mod poly;

pub use field::{AnyField, Field, FieldDesc, FiniteField, Rationals};
pub use laurent::{laurent_arith, LaurentOp, LaurentPoly, LaurentSeries};
pub use matrix::{mat_rank_kernel, Echelon, ExactMatrix};
pub use poly::Poly;
