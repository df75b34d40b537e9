//! Singular sets of generated surfaces: tracing, null directions and the
//! cuspidal edge / swallowtail / cuspidal cross cap criteria.

pub mod classify;
pub mod frontal;
pub mod locate;
pub mod report;
pub mod tolerance;
pub mod trace;
pub mod walk;

pub use classify::{
    ccr_psi, classify_point, kernel_direction, lift_rank, null_vector, Classification, Evidence,
    SingError, SingularClass,
};
pub use frontal::{Frontal, PolyFrontal};
pub use locate::locate_swallowtails;
pub use report::{build_report, snap_probe, ClassificationReport, PointReport};
pub use tolerance::Tolerances;
pub use trace::{trace_singular_curves, SingularCurve, MIN_TRACE_RES};
pub use walk::{project_to_zero, Path, DEFAULT_WINDOW};
