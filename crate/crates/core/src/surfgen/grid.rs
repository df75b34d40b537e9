use rayon::prelude::*;

use super::surface::{Surface, SurfaceError, SurfaceSample};
use crate::paraalg::Unit;

/// Axis-aligned parameter rectangle `[u0, u1] × [v0, v1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Domain {
    pub u0: f64,
    pub u1: f64,
    pub v0: f64,
    pub v1: f64,
}

impl Default for Domain {
    fn default() -> Self {
        Domain {
            u0: -1.0,
            u1: 1.0,
            v0: -1.0,
            v1: 1.0,
        }
    }
}

impl Domain {
    pub fn new(u0: f64, u1: f64, v0: f64, v1: f64) -> Result<Self, SurfaceError> {
        let d = Domain { u0, u1, v0, v1 };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<(), SurfaceError> {
        let all = [self.u0, self.u1, self.v0, self.v1];
        if all.iter().any(|x| !x.is_finite()) {
            return Err(SurfaceError::InvalidDomain("bounds must be finite".into()));
        }
        if self.u0 >= self.u1 || self.v0 >= self.v1 {
            return Err(SurfaceError::InvalidDomain(format!(
                "empty rectangle [{}, {}] x [{}, {}]",
                self.u0, self.u1, self.v0, self.v1
            )));
        }
        Ok(())
    }

    /// Largest Euclidean norm of a corner.
    pub fn radius(&self) -> f64 {
        [
            (self.u0, self.v0),
            (self.u0, self.v1),
            (self.u1, self.v0),
            (self.u1, self.v1),
        ]
        .iter()
        .map(|(u, v)| u.hypot(*v))
        .fold(0.0, f64::max)
    }

    pub fn contains(&self, p: [f64; 2]) -> bool {
        (self.u0..=self.u1).contains(&p[0]) && (self.v0..=self.v1).contains(&p[1])
    }

    /// Node `(i, j)` of an `nu × nv` lattice including both edges.
    pub fn node(&self, nu: usize, nv: usize, i: usize, j: usize) -> [f64; 2] {
        [lerp(self.u0, self.u1, i, nu), lerp(self.v0, self.v1, j, nv)]
    }
}

fn lerp(a: f64, b: f64, i: usize, n: usize) -> f64 {
    if i + 1 == n {
        b
    } else {
        a + (b - a) * i as f64 / (n - 1) as f64
    }
}

/// Row-major samples: index `j * nu + i` holds node `(u_i, v_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceGrid {
    pub nu: usize,
    pub nv: usize,
    pub domain: Domain,
    pub samples: Vec<SurfaceSample>,
    /// Signed area density at each node.
    pub density: Vec<f64>,
}

impl SurfaceGrid {
    pub fn at(&self, i: usize, j: usize) -> &SurfaceSample {
        &self.samples[j * self.nu + i]
    }
}

pub fn sample_grid<U: Unit>(
    surface: &Surface<U>,
    domain: Domain,
    res: (usize, usize),
) -> Result<SurfaceGrid, SurfaceError> {
    domain.validate()?;
    let (nu, nv) = res;
    if nu < 2 || nv < 2 {
        return Err(SurfaceError::InvalidDomain(format!(
            "resolution {nu}x{nv} is below 2x2"
        )));
    }
    let (samples, density) = (0..nu * nv)
        .into_par_iter()
        .map(|k| {
            let [u, v] = domain.node(nu, nv, k % nu, k / nu);
            (surface.sample(u, v), surface.density(u, v))
        })
        .unzip();
    Ok(SurfaceGrid {
        nu,
        nv,
        domain,
        samples,
        density,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paraalg::ParaPoly;
    use crate::scalar::Rational;
    use crate::surfgen::curve::ParaCurve;

    #[test]
    fn center_of_identity_grid() {
        let s = Surface::new(ParaCurve::new(ParaPoly::z(), ParaPoly::zero())).unwrap();
        let g = sample_grid(&s, Domain::default(), (3, 3)).unwrap();
        assert_eq!(g.at(1, 1).position, [0.0, 0.0, 0.0]);
        assert_eq!(g.samples.len(), 9);
    }

    #[test]
    fn unit_node_of_cubic_quartic() {
        let s = Surface::new(ParaCurve::<Rational>::monomials(3, 4)).unwrap();
        let g = sample_grid(&s, Domain::default(), (3, 3)).unwrap();
        let node = g.at(2, 1);
        assert_eq!(node.domain_point, [1.0, 0.0]);
        assert!((node.position[2] - 1.0 / 7.0).abs() < 1e-15);
    }

    #[test]
    fn two_by_two_is_the_corners() {
        let s = Surface::new(ParaCurve::new(ParaPoly::z(), ParaPoly::zero())).unwrap();
        let g = sample_grid(&s, Domain::new(0.0, 1.0, 0.0, 1.0).unwrap(), (2, 2)).unwrap();
        let pts: Vec<_> = g.samples.iter().map(|s| s.domain_point).collect();
        assert_eq!(pts, vec![[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]]);
    }

    #[test]
    fn rejects_degenerate_domains() {
        assert!(Domain::new(1.0, 1.0, 0.0, 1.0).is_err());
        assert!(Domain::new(0.0, 1.0, f64::NAN, 1.0).is_err());
        let s = Surface::new(ParaCurve::new(ParaPoly::z(), ParaPoly::zero())).unwrap();
        assert!(sample_grid(&s, Domain::default(), (1, 5)).is_err());
    }

    #[test]
    fn radius_is_farthest_corner() {
        assert!((Domain::default().radius() - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(Domain::new(0.0, 3.0, 0.0, 4.0).unwrap().radius(), 5.0);
    }
}
