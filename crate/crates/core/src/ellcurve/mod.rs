pub mod curve;
pub mod divisor;
pub mod expansion;
pub mod function;
pub mod riemann_roch;

pub use curve::{c7, Curve, Place};
pub use divisor::{divisor_reduce, is_principal, linearly_equivalent, pic0_class, principal_function, Divisor};
pub use expansion::{expand_to, local_expansion, ord_at};
pub use function::FunctionRep;
pub use riemann_roch::{certify_in_rr, rr_basis};
