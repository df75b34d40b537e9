//! Surfaces from curve pairs: exact potentials, samples, jets and meshes.

pub mod curve;
pub mod export;
pub mod grid;
pub mod jet;
pub mod surface;

pub use curve::{AnyCurve, CurvePair, HoloCurve, ParaCurve};
pub use grid::{sample_grid, Domain, SurfaceGrid};
pub use jet::Jet2;
pub use surface::{
    lsc_potential, phi_from_components, phi_potential, synth_indefinite, synth_lsc, FieldJets,
    JetTarget, Surface, SurfaceError, SurfaceFields, SurfaceSample,
};
