//! Split-complex (para-complex) and complex polynomial algebra.

pub mod bipoly;
pub mod cr;
pub mod dalembert;
pub mod number;
pub mod poly;

pub use bipoly::BiPoly;
pub use cr::para_cr_residual;
pub use dalembert::{dalembert_to_para, para_to_dalembert, DAlembertPair};
pub use number::{Complex, Hyper, Imag, ParaComplex, Signature, Split, Unit};
pub use poly::{HoloPoly, ParaPoly, Poly, PolyError, UnitPoly, MAX_DEGREE};
