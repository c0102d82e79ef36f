pub mod lattice;
pub mod sections;
pub mod spec;

pub use lattice::{Bundle, LMat, LocalLattice};
pub use sections::{chi_h1, h0, h0_dim, SectionBasis};
pub use spec::{spec_from_json, spec_to_json, BundleSpec, Modification};
