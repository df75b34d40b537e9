use crate::paraalg::Unit;
use crate::surfgen::{Domain, Surface};

/// Scale-aware thresholds for the classification pipeline.
///
/// `scale` is the curve scale `S` (largest coefficient magnitude times
/// the domain radius); density-valued thresholds go with `S²`, derivative
/// and coefficient thresholds with `S`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub scale: f64,
    /// `|λ|` at or below this is singular.
    pub sing: f64,
    /// `|dλ|` at or below this is degenerate.
    pub deg: f64,
    /// Derivatives at or below this count as vanishing (branch points).
    pub branch: f64,
    /// `|det(γ′, η)|` and its derivative at or below this count as zero.
    pub det: f64,
    /// Relative bound on `|dψ(η)|`.
    pub null: f64,
    /// Equality tolerance for the frontal-not-front conditions.
    pub ff: f64,
    /// Relative threshold on the largest 2×2 minor of the lift Jacobian.
    pub lift_minor: f64,
}

impl Tolerances {
    pub fn from_scale(scale: f64) -> Self {
        Tolerances {
            scale,
            sing: 1e-9 * scale * scale,
            deg: 1e-7 * scale,
            branch: 1e-9 * scale,
            det: 1e-6,
            null: 1e-7,
            ff: 1e-7 * scale,
            lift_minor: 1e-6,
        }
    }

    pub fn for_surface<U: Unit>(surface: &Surface<U>, domain: &Domain) -> Self {
        Tolerances::from_scale(surface.coefficient_scale() * domain.radius())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thresholds_follow_scale() {
        let t = Tolerances::from_scale(2.0);
        assert_eq!(t.sing, 4e-9);
        assert_eq!(t.deg, 2e-7);
        assert_eq!(t.branch, 2e-9);
        assert_eq!(t.det, 1e-6);
    }
}
