//! Residual suites for the identities satisfied by generated surfaces.
//!
//! Suites read the five surface fields through [`FieldJets`], so a caller can
//! corrupt a field and watch the matching suite fail.

use rayon::prelude::*;
use thiserror::Error;

use crate::paraalg::{Signature, Split};
use crate::singlab::{
    ccr_psi, classify_point, trace_singular_curves, SingularClass, Tolerances, DEFAULT_WINDOW,
};
use crate::surfgen::jet::{cross3, Jet2};
use crate::surfgen::{Domain, FieldJets, Surface};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error("patch is not a graph: chart Jacobian {det} at ({u}, {v})")]
    PatchNotGraph { u: f64, v: f64, det: f64 },
}

/// Summary of one suite.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidualReport {
    pub name: String,
    pub max_abs: f64,
    pub mean_abs: f64,
    pub points_checked: usize,
    pub tolerance: f64,
    pub pass: bool,
}

impl ResidualReport {
    pub fn from_residuals(name: &str, residuals: &[f64], tolerance: f64) -> Self {
        let max_abs = residuals.iter().copied().fold(0.0, f64::max);
        let mean_abs = if residuals.is_empty() {
            0.0
        } else {
            residuals.iter().sum::<f64>() / residuals.len() as f64
        };
        // NaN residuals fail
        let pass = residuals.iter().all(|r| *r <= tolerance);
        ResidualReport {
            name: name.to_string(),
            max_abs: if residuals.iter().any(|r| r.is_nan()) {
                f64::NAN
            } else {
                max_abs
            },
            mean_abs,
            points_checked: residuals.len(),
            tolerance,
            pass,
        }
    }
}

pub const IDENTITY_TOLERANCE: f64 = 1e-8;
pub const GRAPH_TOLERANCE: f64 = 1e-5;
/// Smallest `|det J|` accepted on a graph patch.
pub const MIN_CHART_DET: f64 = 1e-6;
/// `|det J| / |J|²` below which automatic patch selection skips a point.
const PATCH_CONDITION: f64 = 1e-2;

/// Suite identifiers accepted on the command line.
pub const SUITES: [&str; 6] = [
    "duality",
    "two_form",
    "conformal",
    "monge_ampere",
    "lift",
    "ccr",
];

/// Suites whose identities hold for the given signature.
pub fn applicable_suites(signature: Signature) -> &'static [&'static str] {
    match signature {
        Signature::Indefinite => &SUITES,
        Signature::Lsc => &["monge_ampere", "lift"],
    }
}

fn rel(diff: f64, size: f64) -> f64 {
    diff.abs() / size.max(1.0)
}

fn norm(a: &[f64; 3]) -> f64 {
    (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt()
}

fn vec_rel(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    let d = [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
    norm(&d) / (norm(a) + norm(b)).max(1.0)
}

fn first_order(j: &FieldJets, p: [f64; 2]) -> (Jet2<3>, Jet2<3>) {
    (j.position_jet(p[0], p[1]), j.conormal_jet(p[0], p[1]))
}

/// `ψ_u = ν×ν_v`, `ψ_v = ν×ν_u`, `ν_u = ψ_v×ξ`, `ν_v = ψ_u×ξ` with `ξ = e₃`.
pub fn duality_residual(jets: &FieldJets, points: &[[f64; 2]]) -> ResidualReport {
    let xi = [0.0, 0.0, 1.0];
    let res: Vec<f64> = points
        .par_iter()
        .map(|&p| {
            let (psi, nu) = first_order(jets, p);
            [
                vec_rel(&psi.du, &cross3(&nu.value, &nu.dv)),
                vec_rel(&psi.dv, &cross3(&nu.value, &nu.du)),
                vec_rel(&nu.du, &cross3(&psi.dv, &xi)),
                vec_rel(&nu.dv, &cross3(&psi.du, &xi)),
            ]
            .into_iter()
            .fold(0.0, f64::max)
        })
        .collect();
    ResidualReport::from_residuals("duality", &res, IDENTITY_TOLERANCE)
}

/// `dx¹∧dx² + dn¹∧dn²` and `dx¹∧dn¹ + dx²∧dn²` pulled back to the domain.
pub fn two_form_residual(jets: &FieldJets, points: &[[f64; 2]]) -> ResidualReport {
    let res: Vec<f64> = points
        .par_iter()
        .map(|&p| {
            let (x, n) = first_order(jets, p);
            let w = |a: &Jet2<3>, i: usize, b: &Jet2<3>, k: usize| {
                (a.du[i] * b.dv[k], a.dv[i] * b.du[k])
            };
            let terms1 = [w(&x, 0, &x, 1), w(&n, 0, &n, 1)];
            let terms2 = [w(&x, 0, &n, 0), w(&x, 1, &n, 1)];
            let r = |t: [(f64, f64); 2]| {
                let sum: f64 = t.iter().map(|(a, b)| a - b).sum();
                let size: f64 = t.iter().map(|(a, b)| a.abs() + b.abs()).sum();
                rel(sum, size)
            };
            r(terms1).max(r(terms2))
        })
        .collect();
    ResidualReport::from_residuals("two_form", &res, IDENTITY_TOLERANCE)
}

fn dot2(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

/// `g = −⟨dx, dn⟩` is a multiple of `du² − dv²`: residuals `g_uv` and `g_uu + g_vv`.
pub fn metric_conformality(jets: &FieldJets, points: &[[f64; 2]]) -> ResidualReport {
    let res: Vec<f64> = points
        .par_iter()
        .map(|&p| {
            let (x, n) = first_order(jets, p);
            let (xu, xv) = ([x.du[0], x.du[1]], [x.dv[0], x.dv[1]]);
            let (nu, nv) = ([n.du[0], n.du[1]], [n.dv[0], n.dv[1]]);
            let guu = -dot2(xu, nu);
            let gvv = -dot2(xv, nv);
            let guv = -0.5 * (dot2(xu, nv) + dot2(xv, nu));
            let size_uu: f64 = (0..2)
                .map(|k| (xu[k] * nu[k]).abs() + (xv[k] * nv[k]).abs())
                .sum();
            let size_uv: f64 = (0..2)
                .map(|k| (xu[k] * nv[k]).abs() + (xv[k] * nu[k]).abs())
                .sum();
            rel(guu + gvv, size_uu).max(rel(guv, size_uv))
        })
        .collect();
    ResidualReport::from_residuals("conformal", &res, IDENTITY_TOLERANCE)
}

/// Monge–Ampère constant: `det Hess φ` of the graph.
pub fn monge_ampere_constant(signature: Signature) -> f64 {
    match signature {
        Signature::Indefinite => -1.0,
        Signature::Lsc => 1.0,
    }
}

fn chart(x: &Jet2<3>) -> [[f64; 2]; 2] {
    [[x.du[0], x.dv[0]], [x.du[1], x.dv[1]]]
}

fn det22(m: [[f64; 2]; 2]) -> f64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

fn check_graph(jets: &FieldJets, patch: &[[f64; 2]]) -> Result<(), VerifyError> {
    for &[u, v] in patch {
        let det = det22(chart(&jets.position_jet(u, v)));
        if det.is_nan() || det.abs() <= MIN_CHART_DET {
            return Err(VerifyError::PatchNotGraph { u, v, det });
        }
    }
    Ok(())
}

/// `det Hess φ(x¹, x²)` at a point of a graph patch, by pushing the
/// `(u, v)` Hessian through the inverse chart.
pub fn graph_hessian_det(jets: &FieldJets, p: [f64; 2]) -> f64 {
    let x = jets.position_jet(p[0], p[1]);
    let j = chart(&x);
    let det = det22(j);
    let inv = [
        [j[1][1] / det, -j[0][1] / det],
        [-j[1][0] / det, j[0][0] / det],
    ];
    // gradient in x: solve Jᵀ g = (φ_u, φ_v)
    let g = [
        inv[0][0] * x.du[2] + inv[1][0] * x.dv[2],
        inv[0][1] * x.du[2] + inv[1][1] * x.dv[2],
    ];
    let hess = |k: usize| [[x.duu[k], x.duv[k]], [x.duv[k], x.dvv[k]]];
    let (h_phi, h1, h2) = (hess(2), hess(0), hess(1));
    let m: [[f64; 2]; 2] = std::array::from_fn(|r| {
        std::array::from_fn(|c| h_phi[r][c] - g[0] * h1[r][c] - g[1] * h2[r][c])
    });
    det22(m) / (det * det)
}

pub fn monge_ampere_residual(
    jets: &FieldJets,
    patch: &[[f64; 2]],
    signature: Signature,
) -> Result<ResidualReport, VerifyError> {
    check_graph(jets, patch)?;
    let c = monge_ampere_constant(signature);
    let res: Vec<f64> = patch
        .par_iter()
        .map(|&p| (graph_hessian_det(jets, p) - c).abs())
        .collect();
    Ok(ResidualReport::from_residuals(
        "monge_ampere",
        &res,
        GRAPH_TOLERANCE,
    ))
}

/// Lift `(x¹, x², φ, p, q)` with `(p, q) = −n`: residuals of the contact form
/// `θ = dφ − p dx¹ − q dx²` and of `ω = c dx¹∧dx² − dp∧dq`.
pub fn lift_residual(
    jets: &FieldJets,
    patch: &[[f64; 2]],
    signature: Signature,
) -> Result<ResidualReport, VerifyError> {
    check_graph(jets, patch)?;
    let c = monge_ampere_constant(signature);
    let res: Vec<f64> = patch
        .par_iter()
        .map(|&pt| {
            let (x, n) = first_order(jets, pt);
            let (p, q) = (-n.value[0], -n.value[1]);
            let theta = |d: &[f64; 3]| {
                rel(
                    d[2] - p * d[0] - q * d[1],
                    d[2].abs() + (p * d[0]).abs() + (q * d[1]).abs(),
                )
            };
            let (pu, pv, qu, qv) = (-n.du[0], -n.dv[0], -n.du[1], -n.dv[1]);
            let area = x.du[0] * x.dv[1] - x.dv[0] * x.du[1];
            let omega = rel(
                c * area - (pu * qv - pv * qu),
                area.abs() + (pu * qv).abs() + (pv * qu).abs(),
            );
            theta(&x.du).max(theta(&x.dv)).max(omega)
        })
        .collect();
    Ok(ResidualReport::from_residuals(
        "lift",
        &res,
        GRAPH_TOLERANCE,
    ))
}

/// Centers of an `n × n` cell lattice over `domain`.
pub fn cell_centers(domain: &Domain, n: usize) -> Vec<[f64; 2]> {
    let (du, dv) = (
        (domain.u1 - domain.u0) / n as f64,
        (domain.v1 - domain.v0) / n as f64,
    );
    (0..n * n)
        .map(|k| {
            [
                domain.u0 + du * ((k % n) as f64 + 0.5),
                domain.v0 + dv * ((k / n) as f64 + 0.5),
            ]
        })
        .collect()
}

/// Points of `candidates` where `|λ| > tol_sing`.
pub fn regular_points(
    jets: &FieldJets,
    candidates: &[[f64; 2]],
    tol: &Tolerances,
) -> Vec<[f64; 2]> {
    candidates
        .iter()
        .copied()
        .filter(|p| det22(chart(&jets.position_jet(p[0], p[1]))).abs() > tol.sing)
        .collect()
}

/// Automatic graph patch: candidates whose chart is well conditioned.
pub fn graph_patch(jets: &FieldJets, candidates: &[[f64; 2]]) -> Vec<[f64; 2]> {
    candidates
        .iter()
        .copied()
        .filter(|p| {
            let j = chart(&jets.position_jet(p[0], p[1]));
            let size: f64 = j.iter().flatten().map(|x| x * x).sum();
            let det = det22(j).abs();
            det > MIN_CHART_DET && det > PATCH_CONDITION * size
        })
        .collect()
}

/// `Ψ′(0)` at traced frontal-not-front points, relative to the curve scale.
pub fn ccr_residual(
    surface: &Surface<Split>,
    domain: &Domain,
    res: (usize, usize),
    tol: &Tolerances,
) -> ResidualReport {
    let curves = trace_singular_curves(surface, domain, res, tol);
    let points: Vec<[f64; 2]> = curves
        .iter()
        .flat_map(|c| c.points.iter().copied())
        .collect();
    let scale = tol.scale.max(1.0);
    let residuals: Vec<f64> = points
        .par_iter()
        .filter(|p| {
            matches!(classify_point(surface, **p, tol), Ok(c) if c.class == SingularClass::FrontalNotFront)
        })
        .map(|p| ccr_psi(surface, *p, DEFAULT_WINDOW, tol).map_or(f64::NAN, |(_, d)| d.abs() / scale))
        .collect();
    ResidualReport::from_residuals("ccr", &residuals, 1e-6)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paraalg::{HoloPoly, ParaPoly};
    use crate::scalar::Rational;
    use crate::surfgen::{HoloCurve, ParaCurve};

    fn jets_of(s: &Surface<Split>) -> FieldJets {
        s.jets().clone()
    }

    fn negated(s: &Surface<Split>, field: &str) -> FieldJets {
        let mut f = s.fields().clone();
        let slot = f.field_mut(field).unwrap();
        *slot = -slot.clone();
        FieldJets::new(&f)
    }

    #[test]
    fn identity_curve_is_exact() {
        let s = Surface::new(ParaCurve::new(ParaPoly::z(), ParaPoly::zero())).unwrap();
        let pts = cell_centers(&Domain::default(), 5);
        let j = jets_of(&s);
        for r in [
            duality_residual(&j, &pts),
            two_form_residual(&j, &pts),
            metric_conformality(&j, &pts),
        ] {
            assert!(
                r.max_abs <= 1e-10 && r.pass && r.points_checked == 25,
                "{r:?}"
            );
        }
        let ma = monge_ampere_residual(&j, &pts, Signature::Indefinite).unwrap();
        assert!(ma.max_abs < 1e-12);
        assert!(
            lift_residual(&j, &pts, Signature::Indefinite)
                .unwrap()
                .max_abs
                < 1e-12
        );
    }

    #[test]
    fn identity_metric_components() {
        let s = Surface::new(ParaCurve::new(ParaPoly::z(), ParaPoly::zero())).unwrap();
        let (x, n) = first_order(s.jets(), [0.3, 0.7]);
        assert_eq!(-dot2([x.du[0], x.du[1]], [n.du[0], n.du[1]]), -1.0);
        assert_eq!(-dot2([x.dv[0], x.dv[1]], [n.dv[0], n.dv[1]]), 1.0);
    }

    #[test]
    fn example_one_suites_pass_and_controls_fail() {
        let s = Surface::new(ParaCurve::<Rational>::monomials(2, 3)).unwrap();
        let dom = Domain::new(-1.2, 1.2, -1.2, 1.2).unwrap();
        let tol = Tolerances::for_surface(&s, &dom);
        let pts = regular_points(s.jets(), &cell_centers(&dom, 10), &tol);
        assert!(duality_residual(s.jets(), &pts).pass);
        assert!(two_form_residual(s.jets(), &pts).pass);
        assert!(metric_conformality(s.jets(), &pts).pass);
        let bad = negated(&s, "n2");
        assert!(!duality_residual(&bad, &pts).pass);
        assert!(!two_form_residual(&bad, &pts).pass);
        assert!(!metric_conformality(&bad, &pts).pass);
        let patch = graph_patch(s.jets(), &pts);
        assert!(patch.len() > 20);
        assert!(
            monge_ampere_residual(s.jets(), &patch, Signature::Indefinite)
                .unwrap()
                .pass
        );
        assert!(
            lift_residual(s.jets(), &patch, Signature::Indefinite)
                .unwrap()
                .pass
        );
        assert!(
            !lift_residual(&bad, &patch, Signature::Indefinite)
                .unwrap()
                .pass
        );
    }

    #[test]
    fn lsc_graph_suites() {
        let s = Surface::new(HoloCurve::new(HoloPoly::zero(), HoloPoly::z())).unwrap();
        let pts = cell_centers(&Domain::default(), 4);
        let r = monge_ampere_residual(s.jets(), &pts, Signature::Lsc).unwrap();
        assert!(r.max_abs < 1e-12, "{r:?}");
        let s = Surface::new(HoloCurve::<Rational>::monomials(2, 3)).unwrap();
        let patch = graph_patch(s.jets(), &cell_centers(&Domain::default(), 10));
        assert!(
            monge_ampere_residual(s.jets(), &patch, Signature::Lsc)
                .unwrap()
                .pass
        );
        assert!(
            lift_residual(s.jets(), &patch, Signature::Lsc)
                .unwrap()
                .pass
        );
        assert!(
            !monge_ampere_residual(s.jets(), &patch, Signature::Indefinite)
                .unwrap()
                .pass
        );
    }

    #[test]
    fn singular_patch_is_rejected() {
        let s = Surface::new(ParaCurve::<Rational>::monomials(2, 3)).unwrap();
        let err =
            monge_ampere_residual(s.jets(), &[[0.5, 0.5]], Signature::Indefinite).unwrap_err();
        assert!(matches!(err, VerifyError::PatchNotGraph { .. }));
    }

    #[test]
    fn not_front_points_have_flat_psi() {
        let s = Surface::new(ParaCurve::<Rational>::monomials(2, 3)).unwrap();
        let dom = Domain::new(-1.2, 1.2, -1.2, 1.2).unwrap();
        let tol = Tolerances::for_surface(&s, &dom);
        let r = ccr_residual(&s, &dom, (48, 48), &tol);
        assert!(r.pass && r.points_checked > 20, "{r:?}");
    }
}
