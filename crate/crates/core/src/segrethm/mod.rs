//! Segre invariants, closed-form bounds, and end-to-end verifiers for the
//! osculation theorems.

pub mod bounds;
pub mod nilpotent;
pub mod report;
pub mod segre;
pub mod verify;

pub use bounds::{hirschowitz_bound, kprime_expected_dims, specialcases_ranges, KPrimeRecord, SpecialCases};
pub use nilpotent::{nilpotent_rank1_exists, quot_tangent_obstruction, NilpotentReport};
pub use segre::{line_class, search_window, segre1, segre1_bundle, SegreMethod, SegreReport, SegreWitness};
pub use report::{Clause, TheoremReport};
pub use verify::{appendix_a_verify, cohstab_verify, main_a_verify, main_b_verify, main_c_verify, PicScan, MAX_EXT};
