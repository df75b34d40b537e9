//! Whole-domain classification: trace, classify every traced point and any
//! requested probes, then search for swallowtails.

use rayon::prelude::*;

use super::classify::{classify_point, Classification, SingError};
use super::frontal::Frontal;
use super::locate::locate_swallowtails;
use super::tolerance::Tolerances;
use super::trace::{trace_singular_curves, SingularCurve};
use super::walk::project_to_zero;
use crate::surfgen::Domain;

/// Largest move, relative to `max(1, domain radius)`, when snapping a probe
/// onto the singular set.
pub const PROBE_SNAP: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct PointReport {
    pub point: [f64; 2],
    /// The user-supplied location, for probes.
    pub requested: Option<[f64; 2]>,
    pub outcome: Result<Classification, SingError>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassificationReport {
    pub domain: Domain,
    pub curves: Vec<SingularCurve>,
    pub points: Vec<PointReport>,
    pub swallowtails: Vec<[f64; 2]>,
}

/// Moves a probe typed with finite precision onto `λ = 0` when it is within
/// [`PROBE_SNAP`]; otherwise returns it unchanged.
pub fn snap_probe<F: Frontal + ?Sized>(
    f: &F,
    p: [f64; 2],
    domain: &Domain,
    tol: &Tolerances,
) -> [f64; 2] {
    if f.density(p).abs() <= tol.sing {
        return p;
    }
    project_to_zero(f, p, tol, PROBE_SNAP * domain.radius().max(1.0)).unwrap_or(p)
}

pub fn build_report<F: Frontal + ?Sized>(
    f: &F,
    domain: &Domain,
    res: (usize, usize),
    probes: &[[f64; 2]],
    tol: &Tolerances,
) -> ClassificationReport {
    let curves = trace_singular_curves(f, domain, res, tol);
    let traced: Vec<([f64; 2], Option<[f64; 2]>)> = curves
        .iter()
        .flat_map(|c| c.points.iter().map(|p| (*p, None)))
        .collect();
    let probed = probes
        .iter()
        .map(|&q| (snap_probe(f, q, domain, tol), Some(q)));
    let all: Vec<_> = traced.into_iter().chain(probed).collect();
    let points = all
        .into_par_iter()
        .map(|(point, requested)| PointReport {
            point,
            requested,
            outcome: classify_point(f, point, tol),
        })
        .collect();
    let swallowtails = locate_swallowtails(f, &curves, tol);
    ClassificationReport {
        domain: *domain,
        curves,
        points,
        swallowtails,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paraalg::ParaPoly;
    use crate::scalar::Rational;
    use crate::singlab::SingularClass;
    use crate::surfgen::{ParaCurve, Surface};

    #[test]
    fn typed_probe_snaps_to_swallowtail() {
        let s = Surface::new(ParaCurve::<Rational>::monomials(2, 3)).unwrap();
        let dom = Domain::new(-1.2, 1.2, -1.2, 1.2).unwrap();
        let tol = Tolerances::for_surface(&s, &dom);
        let r = build_report(&s, &dom, (32, 32), &[[-0.6666667, 0.0]], &tol);
        let probe = r.points.last().unwrap();
        assert_eq!(probe.requested, Some([-0.6666667, 0.0]));
        assert!((probe.point[0] + 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(
            probe.outcome.as_ref().unwrap().class,
            SingularClass::Swallowtail
        );
        assert_eq!(r.swallowtails.len(), 1);
    }

    #[test]
    fn far_probe_is_not_moved() {
        let s = Surface::new(ParaCurve::new(ParaPoly::z(), ParaPoly::zero())).unwrap();
        let dom = Domain::default();
        let tol = Tolerances::for_surface(&s, &dom);
        let r = build_report(&s, &dom, (16, 16), &[[0.25, 0.5]], &tol);
        assert!(r.curves.is_empty() && r.swallowtails.is_empty());
        assert_eq!(r.points.len(), 1);
        assert_eq!(r.points[0].point, [0.25, 0.5]);
        assert_eq!(
            r.points[0].outcome.as_ref().unwrap().class,
            SingularClass::Regular
        );
    }
}
