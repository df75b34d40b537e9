//! Maps with a unit normal field, the objects the criteria act on.

use super::tolerance::Tolerances;
use crate::paraalg::{BiPoly, Signature, Unit};
use crate::surfgen::jet::{assemble, det3, dot3, norm3, normalize, Jet2, PolyJet};
use crate::surfgen::Surface;

/// A frontal `ψ: R² → R³` with unit normal `ν̃` and a signed area density
/// `λ` whose zero set is the singular set.
pub trait Frontal: Sync {
    fn position_jet(&self, p: [f64; 2]) -> Jet2<3>;
    fn normal_jet(&self, p: [f64; 2]) -> Jet2<3>;
    fn density(&self, p: [f64; 2]) -> f64;
    fn density_gradient(&self, p: [f64; 2]) -> [f64; 2];

    /// Vector fields that span `ker dψ` on the singular set wherever they
    /// are nonzero. The default is the least singular direction of `dψ`.
    fn null_candidates(&self, p: [f64; 2]) -> Vec<[f64; 2]> {
        let j = self.position_jet(p);
        vec![least_singular_direction(&j.du, &j.dv)]
    }

    /// Whether `dψ` vanishes at `p`.
    fn is_branch(&self, p: [f64; 2], tol: &Tolerances) -> bool {
        let j = self.position_jet(p);
        norm3(&j.du) <= tol.branch && norm3(&j.dv) <= tol.branch
    }

    /// Direction of a line of frontal-but-not-front points through `p`, if
    /// the algebraic conditions for one hold there.
    fn not_front_line(&self, _p: [f64; 2], _tol: &Tolerances) -> Option<[f64; 2]> {
        None
    }
}

/// Unit eigenvector of the smaller eigenvalue of the Gram matrix of `(a, b)`.
pub fn least_singular_direction(a: &[f64; 3], b: &[f64; 3]) -> [f64; 2] {
    let (g11, g12, g22) = (dot3(a, a), dot3(a, b), dot3(b, b));
    let half_tr = 0.5 * (g11 + g22);
    let mu = half_tr - (0.25 * (g11 - g22) * (g11 - g22) + g12 * g12).sqrt();
    let c1 = [g12, mu - g11];
    let c2 = [mu - g22, g12];
    let pick = if c1[0].hypot(c1[1]) >= c2[0].hypot(c2[1]) {
        c1
    } else {
        c2
    };
    let n = pick[0].hypot(pick[1]);
    if n == 0.0 {
        [1.0, 0.0]
    } else {
        [pick[0] / n, pick[1] / n]
    }
}

impl<U: Unit> Frontal for Surface<U> {
    fn position_jet(&self, p: [f64; 2]) -> Jet2<3> {
        self.jets().position_jet(p[0], p[1])
    }

    fn normal_jet(&self, p: [f64; 2]) -> Jet2<3> {
        self.jets().unit_normal_jet(p[0], p[1])
    }

    fn density(&self, p: [f64; 2]) -> f64 {
        Surface::density(self, p[0], p[1])
    }

    fn density_gradient(&self, p: [f64; 2]) -> [f64; 2] {
        Surface::density_gradient(self, p[0], p[1])
    }

    /// The kernels `(−x1_v, x1_u)` and `(−x2_v, x2_u)` of the two rows of the
    /// chart Jacobian; they are parallel on the singular set.
    fn null_candidates(&self, p: [f64; 2]) -> Vec<[f64; 2]> {
        let [[a, b], [c, d]] = self.chart_jacobian(p[0], p[1]);
        vec![[-b, a], [-d, c]]
    }

    fn is_branch(&self, p: [f64; 2], tol: &Tolerances) -> bool {
        let (f, g) = self.derivatives(p[0], p[1]);
        [f.re, f.im, g.re, g.im]
            .iter()
            .all(|x| x.abs() <= tol.branch)
    }

    /// `f¹_u = f²_u, g¹_u = g²_u` gives the line `u − v = const`;
    /// `f¹_u = −f²_u, g¹_u = −g²_u` gives `u + v = const`.
    fn not_front_line(&self, p: [f64; 2], tol: &Tolerances) -> Option<[f64; 2]> {
        if self.signature() != Signature::Indefinite {
            return None;
        }
        let (f, g) = self.derivatives(p[0], p[1]);
        if (f.re - f.im).abs() <= tol.ff && (g.re - g.im).abs() <= tol.ff {
            Some([1.0, 1.0])
        } else if (f.re + f.im).abs() <= tol.ff && (g.re + g.im).abs() <= tol.ff {
            Some([1.0, -1.0])
        } else {
            None
        }
    }
}

/// A polynomial frontal given by its position and a (not necessarily unit)
/// normal field; the density is `det(ψ_u, ψ_v, w)`.
#[derive(Clone, Debug)]
pub struct PolyFrontal {
    position: [PolyJet<f64>; 3],
    normal: [PolyJet<f64>; 3],
    density: BiPoly<f64>,
    density_u: BiPoly<f64>,
    density_v: BiPoly<f64>,
}

impl PolyFrontal {
    pub fn new(position: [BiPoly<f64>; 3], normal: [BiPoly<f64>; 3]) -> Self {
        let du: Vec<_> = position.iter().map(BiPoly::partial_u).collect();
        let dv: Vec<_> = position.iter().map(BiPoly::partial_v).collect();
        let cross = [
            &(&du[1] * &dv[2]) - &(&du[2] * &dv[1]),
            &(&du[2] * &dv[0]) - &(&du[0] * &dv[2]),
            &(&du[0] * &dv[1]) - &(&du[1] * &dv[0]),
        ];
        let density =
            &(&(&cross[0] * &normal[0]) + &(&cross[1] * &normal[1])) + &(&cross[2] * &normal[2]);
        PolyFrontal {
            density_u: density.partial_u(),
            density_v: density.partial_v(),
            density,
            position: position.map(PolyJet::new),
            normal: normal.map(PolyJet::new),
        }
    }
}

impl Frontal for PolyFrontal {
    fn position_jet(&self, p: [f64; 2]) -> Jet2<3> {
        let [a, b, c] = &self.position;
        assemble([a.at(p[0], p[1]), b.at(p[0], p[1]), c.at(p[0], p[1])])
    }

    fn normal_jet(&self, p: [f64; 2]) -> Jet2<3> {
        let [a, b, c] = &self.normal;
        normalize(&assemble([
            a.at(p[0], p[1]),
            b.at(p[0], p[1]),
            c.at(p[0], p[1]),
        ]))
    }

    fn density(&self, p: [f64; 2]) -> f64 {
        self.density.at(p[0], p[1])
    }

    fn density_gradient(&self, p: [f64; 2]) -> [f64; 2] {
        [self.density_u.at(p[0], p[1]), self.density_v.at(p[0], p[1])]
    }
}

fn poly(terms: &[(u32, u32, f64)]) -> BiPoly<f64> {
    BiPoly::from_terms(terms.iter().map(|&(i, j, c)| ((i, j), c)))
}

/// Cuspidal edge `(u², u³, v)`, singular along `u = 0`.
pub fn cuspidal_edge() -> PolyFrontal {
    PolyFrontal::new(
        [
            poly(&[(2, 0, 1.0)]),
            poly(&[(3, 0, 1.0)]),
            poly(&[(0, 1, 1.0)]),
        ],
        [poly(&[(1, 0, 3.0)]), poly(&[(0, 0, -2.0)]), BiPoly::zero()],
    )
}

/// Swallowtail `(3u⁴ + u²v, 4u³ + 2uv, v)`, singular along `v = −6u²`.
pub fn swallowtail() -> PolyFrontal {
    PolyFrontal::new(
        [
            poly(&[(4, 0, 3.0), (2, 1, 1.0)]),
            poly(&[(3, 0, 4.0), (1, 1, 2.0)]),
            poly(&[(0, 1, 1.0)]),
        ],
        [
            poly(&[(0, 0, 1.0)]),
            poly(&[(1, 0, -1.0)]),
            poly(&[(2, 0, 1.0)]),
        ],
    )
}

/// Cuspidal cross cap `(u, v², uv³)`, singular along `v = 0`.
pub fn cuspidal_cross_cap() -> PolyFrontal {
    PolyFrontal::new(
        [
            poly(&[(1, 0, 1.0)]),
            poly(&[(0, 2, 1.0)]),
            poly(&[(1, 3, 1.0)]),
        ],
        [
            poly(&[(0, 3, -2.0)]),
            poly(&[(1, 1, -3.0)]),
            poly(&[(0, 0, 2.0)]),
        ],
    )
}

/// Signed volume `det(ψ_u, ψ_v, ν̃)` from jets.
pub fn jet_density<F: Frontal + ?Sized>(f: &F, p: [f64; 2]) -> f64 {
    let j = f.position_jet(p);
    det3(&j.du, &j.dv, &f.normal_jet(p).value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_frontal(f: &PolyFrontal, pts: &[[f64; 2]]) {
        for &p in pts {
            let j = f.position_jet(p);
            let n = f.normal_jet(p).value;
            assert!(dot3(&j.du, &n).abs() < 1e-12);
            assert!(dot3(&j.dv, &n).abs() < 1e-12);
            let lam = f.density(p);
            let det = jet_density(f, p);
            if lam.abs() > 1e-9 {
                assert_eq!(lam.signum(), det.signum());
            }
        }
    }

    #[test]
    fn normal_forms_are_frontals() {
        let pts = [[0.3, -0.2], [-0.7, 0.5], [0.0, 0.4], [0.25, 0.0]];
        assert_frontal(&cuspidal_edge(), &pts);
        assert_frontal(&swallowtail(), &pts);
        assert_frontal(&cuspidal_cross_cap(), &pts);
    }

    #[test]
    fn normal_form_singular_sets() {
        assert_eq!(cuspidal_edge().density([0.0, 0.7]), 0.0);
        assert_eq!(swallowtail().density([0.5, -1.5]), 0.0);
        assert_eq!(cuspidal_cross_cap().density([0.4, 0.0]), 0.0);
        assert!(cuspidal_cross_cap().density([0.4, 0.1]) > 0.0);
    }

    #[test]
    fn least_singular_direction_finds_kernel() {
        let a = [1.0, 2.0, 0.5];
        let b = [-2.0, -4.0, -1.0];
        let d = least_singular_direction(&a, &b);
        let img: Vec<f64> = (0..3).map(|k| d[0] * a[k] + d[1] * b[k]).collect();
        assert!(img.iter().all(|x| x.abs() < 1e-12));
    }
}
