//! Osculating spaces of scrolls `P(E)` under `|O(1) ⊗ π^*M|`: jet ranks, the
//! principal-parts oracle, subsheaf witnesses, scans and projections.

pub mod jet;
pub mod oracle;
pub mod point;
pub mod projection;
pub mod scan;
pub mod witness;

pub use jet::{check_order, complete_system, jet_matrix, jet_matrix_in_frame, osc_dim, Deficiency, FiberJets, FiberLevel, JetMatrix};
pub use oracle::osc_dim_oracle;
pub use point::{normalize_direction, projective_points, projective_span, ScrollPoint};
pub use witness::{subsheaf_witnesses, witness_space};
pub use scan::{global_generation_check, infl_scan, pic0_classes, witness_agreement, OscReport, ScanOptions, SystemScan};
pub use projection::{adversarial_subspace, project_system};
