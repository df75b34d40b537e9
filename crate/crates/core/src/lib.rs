//! Improper affine spheres from curve pairs.

pub mod cli;
pub mod convert;
pub mod format;
pub mod paraalg;
pub mod scalar;
pub mod singlab;
pub mod surfgen;
pub mod verify;
