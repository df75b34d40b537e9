use thiserror::Error;

use super::frontal::{least_singular_direction, Frontal};
use super::tolerance::Tolerances;
use super::walk::{five_point, level_tangent, stations, unit, Path, Station, DEFAULT_WINDOW};
use crate::surfgen::jet::{det3, norm3};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SingError {
    #[error("point is a branch point: dψ vanishes")]
    BranchPoint,
    #[error("point is not singular (λ = {lambda})")]
    NotSingular { lambda: f64 },
    #[error("singular curve could not be followed through the point: {0}")]
    TraceRequired(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SingularClass {
    Regular,
    BranchPoint,
    FrontalNotFront,
    CuspidalEdge,
    Swallowtail,
    FrontUnclassified,
    DegenerateOther,
}

impl SingularClass {
    pub fn as_str(self) -> &'static str {
        match self {
            SingularClass::Regular => "Regular",
            SingularClass::BranchPoint => "BranchPoint",
            SingularClass::FrontalNotFront => "FrontalNotFront",
            SingularClass::CuspidalEdge => "CuspidalEdge",
            SingularClass::Swallowtail => "Swallowtail",
            SingularClass::FrontUnclassified => "FrontUnclassified",
            SingularClass::DegenerateOther => "DegenerateOther",
        }
    }
}

/// Numbers behind a verdict. Quantities that need a null vector or a
/// singular curve are absent where those do not exist.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Evidence {
    pub lambda: f64,
    pub grad_norm: f64,
    /// `det(γ′, η)` with unit `γ′` and `η`.
    pub det_ge: Option<f64>,
    /// Arc-length derivative of `det(γ′, η)`.
    pub ddet_ge: Option<f64>,
    pub psi0: Option<f64>,
    pub dpsi0: Option<f64>,
    pub lift_rank: u8,
    /// `|dλ| ≤ tol_deg`.
    pub degenerate: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Classification {
    pub class: SingularClass,
    pub evidence: Evidence,
}

/// Unit null direction at `p` without checking that `p` is singular;
/// `None` when `dψ` vanishes.
pub fn kernel_direction<F: Frontal + ?Sized>(
    f: &F,
    p: [f64; 2],
    tol: &Tolerances,
) -> Option<[f64; 2]> {
    let best = f
        .null_candidates(p)
        .into_iter()
        .max_by(|a, b| a[0].hypot(a[1]).total_cmp(&b[0].hypot(b[1])))?;
    if best[0].hypot(best[1]) > tol.branch {
        return unit(best);
    }
    let j = f.position_jet(p);
    if norm3(&j.du) <= tol.branch && norm3(&j.dv) <= tol.branch {
        return None;
    }
    Some(least_singular_direction(&j.du, &j.dv))
}

/// Unit vector spanning `ker dψ` at a corank-one singular point.
pub fn null_vector<F: Frontal + ?Sized>(
    f: &F,
    p: [f64; 2],
    tol: &Tolerances,
) -> Result<[f64; 2], SingError> {
    let lambda = f.density(p);
    if lambda.abs() > tol.sing {
        return Err(SingError::NotSingular { lambda });
    }
    kernel_direction(f, p, tol).ok_or(SingError::BranchPoint)
}

/// Numeric rank of the Jacobian of `(ψ, ν̃)`.
pub fn lift_rank<F: Frontal + ?Sized>(f: &F, p: [f64; 2], tol: &Tolerances) -> u8 {
    let pj = f.position_jet(p);
    let nj = f.normal_jet(p);
    let lu: Vec<f64> = pj.du.iter().chain(&nj.du).copied().collect();
    let lv: Vec<f64> = pj.dv.iter().chain(&nj.dv).copied().collect();
    let nu = lu.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nv = lv.iter().map(|x| x * x).sum::<f64>().sqrt();
    if nu <= tol.branch && nv <= tol.branch {
        return 0;
    }
    let mut minor: f64 = 0.0;
    for a in 0..6 {
        for b in a + 1..6 {
            minor = minor.max((lu[a] * lv[b] - lu[b] * lv[a]).abs());
        }
    }
    if minor <= tol.lift_minor * nu * nv {
        1
    } else {
        2
    }
}

fn oriented(v: [f64; 2], like: [f64; 2]) -> [f64; 2] {
    if v[0] * like[0] + v[1] * like[1] < 0.0 {
        [-v[0], -v[1]]
    } else {
        v
    }
}

/// Null directions at the stations, oriented continuously from the middle.
fn station_nulls<F: Frontal + ?Sized>(
    f: &F,
    st: &[Station; 5],
    tol: &Tolerances,
) -> Option<[[f64; 2]; 5]> {
    let mid = kernel_direction(f, st[2].point, tol)?;
    let mut out = [mid; 5];
    for k in [1usize, 0, 3, 4] {
        let prev = if k < 2 { out[k + 1] } else { out[k - 1] };
        out[k] = oriented(kernel_direction(f, st[k].point, tol)?, prev);
    }
    Some(out)
}

fn det2(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

/// `Ψ = det(dψ(γ′), dν̃(η), ν̃)` at a station.
fn psi_at<F: Frontal + ?Sized>(f: &F, s: &Station, eta: [f64; 2]) -> f64 {
    let pj = f.position_jet(s.point);
    let nj = f.normal_jet(s.point);
    det3(&pj.along(s.tangent), &nj.along(eta), &nj.value)
}

/// The curve-following path at a singular point: the not-front line if
/// there is one, else the level set of `λ`.
pub fn path_at<F: Frontal + ?Sized>(f: &F, p: [f64; 2], tol: &Tolerances) -> Path {
    f.not_front_line(p, tol).map_or(Path::Level, Path::Line)
}

/// `(Ψ(0), Ψ′(0))` along the singular curve through `p`, using a five-point
/// stencil with arc-length spacing `window`.
pub fn ccr_psi<F: Frontal + ?Sized>(
    f: &F,
    p: [f64; 2],
    window: f64,
    tol: &Tolerances,
) -> Result<(f64, f64), SingError> {
    let path = path_at(f, p, tol);
    let st = stations(f, p, path, window, tol).ok_or_else(|| {
        SingError::TraceRequired(format!("continuation failed at ({}, {})", p[0], p[1]))
    })?;
    let etas = station_nulls(f, &st, tol).ok_or(SingError::BranchPoint)?;
    let vals: [f64; 5] = std::array::from_fn(|k| psi_at(f, &st[k], etas[k]));
    Ok((vals[2], five_point(vals, window)))
}

/// `(det(γ′, η), d/dt det(γ′, η))` along the singular curve through `p`.
fn det_profile<F: Frontal + ?Sized>(
    f: &F,
    p: [f64; 2],
    path: Path,
    window: f64,
    tol: &Tolerances,
) -> Option<(f64, f64, f64, f64)> {
    let st = stations(f, p, path, window, tol)?;
    let etas = station_nulls(f, &st, tol)?;
    let dets: [f64; 5] = std::array::from_fn(|k| det2(st[k].tangent, etas[k]));
    let psis: [f64; 5] = std::array::from_fn(|k| psi_at(f, &st[k], etas[k]));
    Some((
        dets[2],
        five_point(dets, window),
        psis[2],
        five_point(psis, window),
    ))
}

/// Runs the decision pipeline at `p`.
pub fn classify_point<F: Frontal + ?Sized>(
    f: &F,
    p: [f64; 2],
    tol: &Tolerances,
) -> Result<Classification, SingError> {
    let lambda = f.density(p);
    let g = f.density_gradient(p);
    let grad_norm = g[0].hypot(g[1]);
    let degenerate = grad_norm <= tol.deg;
    let mut evidence = Evidence {
        lambda,
        grad_norm,
        det_ge: None,
        ddet_ge: None,
        psi0: None,
        dpsi0: None,
        lift_rank: lift_rank(f, p, tol),
        degenerate,
    };
    let verdict = |class, evidence| Ok(Classification { class, evidence });

    if lambda.abs() > tol.sing {
        return verdict(SingularClass::Regular, evidence);
    }
    if f.is_branch(p, tol) {
        return verdict(SingularClass::BranchPoint, evidence);
    }
    if let Some(dir) = f.not_front_line(p, tol) {
        if let Some((d, dd, psi, dpsi)) = det_profile(f, p, Path::Line(dir), DEFAULT_WINDOW, tol) {
            evidence.det_ge = Some(d);
            evidence.ddet_ge = Some(dd);
            evidence.psi0 = Some(psi);
            evidence.dpsi0 = Some(dpsi);
        }
        return verdict(SingularClass::FrontalNotFront, evidence);
    }
    if degenerate {
        if let Some(eta) = kernel_direction(f, p, tol) {
            evidence.det_ge = unit(g).map(|n| det2([-n[1], n[0]], eta));
        }
        return verdict(SingularClass::DegenerateOther, evidence);
    }

    let tangent =
        level_tangent(f, p).ok_or_else(|| SingError::TraceRequired("vanishing gradient".into()))?;
    let eta = kernel_direction(f, p, tol).ok_or(SingError::BranchPoint)?;
    let det = det2(tangent, eta);
    evidence.det_ge = Some(det);
    let profile = det_profile(f, p, Path::Level, DEFAULT_WINDOW, tol);
    if let Some((_, dd, psi, dpsi)) = profile {
        evidence.ddet_ge = Some(dd);
        evidence.psi0 = Some(psi);
        evidence.dpsi0 = Some(dpsi);
    }
    if evidence.lift_rank == 2 && det.abs() > tol.det {
        return verdict(SingularClass::CuspidalEdge, evidence);
    }
    let Some((_, dd, _, _)) = profile else {
        return Err(SingError::TraceRequired(format!(
            "continuation failed at ({}, {})",
            p[0], p[1]
        )));
    };
    if evidence.lift_rank == 2 && det.abs() <= tol.det && dd.abs() > tol.det {
        return verdict(SingularClass::Swallowtail, evidence);
    }
    verdict(SingularClass::FrontUnclassified, evidence)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paraalg::{HoloPoly, ParaPoly};
    use crate::scalar::Rational;
    use crate::singlab::frontal::{cuspidal_cross_cap, cuspidal_edge, swallowtail};
    use crate::surfgen::{Domain, HoloCurve, ParaCurve, Surface};

    fn example(a: usize, b: usize) -> (Surface<crate::paraalg::Split>, Tolerances) {
        let s = Surface::new(ParaCurve::<Rational>::monomials(a, b)).unwrap();
        let t = Tolerances::for_surface(&s, &Domain::new(-1.2, 1.2, -1.2, 1.2).unwrap());
        (s, t)
    }

    #[test]
    fn normal_form_verdicts() {
        let t = Tolerances::from_scale(1.0);
        let c = classify_point(&cuspidal_edge(), [0.0, 0.3], &t).unwrap();
        assert_eq!(c.class, SingularClass::CuspidalEdge);
        let c = classify_point(&swallowtail(), [0.0, 0.0], &t).unwrap();
        assert_eq!(c.class, SingularClass::Swallowtail);
        let c = classify_point(&swallowtail(), [0.2, -0.24], &t).unwrap();
        assert_eq!(c.class, SingularClass::CuspidalEdge);
        assert_eq!(
            classify_point(&cuspidal_edge(), [0.3, 0.3], &t)
                .unwrap()
                .class,
            SingularClass::Regular
        );
    }

    #[test]
    fn cross_cap_psi_derivative() {
        // along (t, 0): Ψ(t) = −3t/2
        let t = Tolerances::from_scale(1.0);
        let (psi, dpsi) = ccr_psi(&cuspidal_cross_cap(), [0.0, 0.0], DEFAULT_WINDOW, &t).unwrap();
        assert!(psi.abs() < 1e-12);
        assert!((dpsi.abs() - 1.5).abs() < 1e-8, "{dpsi}");
        assert_eq!(lift_rank(&cuspidal_cross_cap(), [0.0, 0.0], &t), 1);
        assert_eq!(lift_rank(&cuspidal_cross_cap(), [0.5, 0.0], &t), 2);
    }

    #[test]
    fn example_one_swallowtail_and_edges() {
        let (s, t) = example(2, 3);
        let c = classify_point(&s, [-2.0 / 3.0, 0.0], &t).unwrap();
        assert_eq!(c.class, SingularClass::Swallowtail, "{c:?}");
        for tt in [-1.0f64, 0.3, 1.0] {
            let p = [2.0 / 3.0 * tt.cosh(), 2.0 / 3.0 * tt.sinh()];
            assert_eq!(
                classify_point(&s, p, &t).unwrap().class,
                SingularClass::CuspidalEdge
            );
        }
        let c = classify_point(&s, [0.4, 0.4], &t).unwrap();
        assert_eq!(c.class, SingularClass::FrontalNotFront);
        assert_eq!(c.evidence.lift_rank, 1);
        assert!(c.evidence.dpsi0.unwrap().abs() < 1e-9);
        let c = classify_point(&s, [0.0, 0.0], &t).unwrap();
        assert_eq!(c.class, SingularClass::BranchPoint);
        assert!(c.evidence.degenerate);
    }

    #[test]
    fn example_one_null_vector_matches_printed_field() {
        let (s, t) = example(2, 3);
        for tt in [-0.8f64, 0.5, 1.3] {
            let (ch, sh) = (tt.cosh(), tt.sinh());
            let p = [2.0 / 3.0 * ch, 2.0 / 3.0 * sh];
            let eta = null_vector(&s, p, &t).unwrap();
            let want = [-(ch + 1.0) * (2.0 * ch - 1.0), sh * (1.0 + 2.0 * ch)];
            assert!(det2(eta, want).abs() < 1e-9 * want[0].hypot(want[1]));
            let p = [-2.0 / 3.0 * ch, -2.0 / 3.0 * sh];
            let eta = null_vector(&s, p, &t).unwrap();
            let want = [-sh * (1.0 + 2.0 * ch), (ch + 1.0) * (2.0 * ch - 1.0)];
            assert!(det2(eta, want).abs() < 1e-9 * want[0].hypot(want[1]));
        }
        assert_eq!(null_vector(&s, [0.0, 0.0], &t), Err(SingError::BranchPoint));
        assert!(matches!(
            null_vector(&s, [1.0, 0.0], &t),
            Err(SingError::NotSingular { .. })
        ));
    }

    #[test]
    fn example_two_corank_one_not_front() {
        let (s, t) = example(3, 4);
        let c = classify_point(&s, [1.0, 1.0], &t).unwrap();
        assert_eq!(c.class, SingularClass::FrontalNotFront);
        assert!(c.evidence.degenerate);
        assert_eq!(c.evidence.lift_rank, 1);
        let eta = null_vector(&s, [1.0, 1.0], &t).unwrap();
        let j = s.position_jet([1.0, 1.0]);
        assert!(norm3(&j.along(eta)) < 1e-12);
        let (psi, dpsi) = ccr_psi(&s, [1.0, 1.0], DEFAULT_WINDOW, &t).unwrap();
        assert!(psi.abs() < 1e-12 && dpsi.abs() < 1e-9);
    }

    #[test]
    fn example_two_swallowtail_on_front_locus() {
        let (s, t) = example(3, 4);
        assert_eq!(
            classify_point(&s, [-0.75, 0.0], &t).unwrap().class,
            SingularClass::Swallowtail
        );
        assert_eq!(
            classify_point(&s, [0.75, 0.0], &t).unwrap().class,
            SingularClass::CuspidalEdge
        );
        assert_eq!(
            classify_point(&s, [-2.0 / 3.0, 0.0], &t).unwrap().class,
            SingularClass::Regular
        );
    }

    #[test]
    fn lsc_singular_points_are_fronts() {
        let s = Surface::new(HoloCurve::<Rational>::monomials(2, 3)).unwrap();
        let t = Tolerances::for_surface(&s, &Domain::default());
        // |F′| = |G′| ⇔ 2|z| = 3|z|², i.e. the circle |z| = 2/3
        for a in [0.1f64, 1.0, 2.5, 4.0] {
            let p = [2.0 / 3.0 * a.cos(), 2.0 / 3.0 * a.sin()];
            assert!(s.density(p[0], p[1]).abs() < 1e-12);
            assert_eq!(lift_rank(&s, p, &t), 2);
        }
        let f = Surface::new(HoloCurve::new(HoloPoly::z(), HoloPoly::zero())).unwrap();
        assert_eq!(
            classify_point(&f, [0.2, 0.1], &t).unwrap().class,
            SingularClass::Regular
        );
    }

    #[test]
    fn zero_curve_has_rank_zero() {
        let s = Surface::new(ParaCurve::<Rational>::new(
            ParaPoly::zero(),
            ParaPoly::zero(),
        ))
        .unwrap();
        let t = Tolerances::for_surface(&s, &Domain::default());
        assert_eq!(lift_rank(&s, [0.3, 0.2], &t), 0);
        assert_eq!(
            classify_point(&s, [0.3, 0.2], &t).unwrap().class,
            SingularClass::BranchPoint
        );
    }
}
