//! Arc-length stations along a singular curve through a point.

use super::frontal::Frontal;
use super::tolerance::Tolerances;

/// How the singular curve through a point is followed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Path {
    /// A straight line of singular points with the given direction.
    Line([f64; 2]),
    /// The level set `λ = 0`, followed by predictor-corrector continuation.
    Level,
}

/// A point of the curve with its unit tangent.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Station {
    pub point: [f64; 2],
    pub tangent: [f64; 2],
}

/// Window half-width (arc length) used for derivative stencils.
pub const DEFAULT_WINDOW: f64 = 1e-3;

const SUBSTEPS: usize = 4;

pub fn unit(v: [f64; 2]) -> Option<[f64; 2]> {
    let n = v[0].hypot(v[1]);
    (n > 0.0 && n.is_finite()).then(|| [v[0] / n, v[1] / n])
}

fn oriented(v: [f64; 2], like: [f64; 2]) -> [f64; 2] {
    if v[0] * like[0] + v[1] * like[1] < 0.0 {
        [-v[0], -v[1]]
    } else {
        v
    }
}

/// Unit tangent `(−λ_v, λ_u)/|dλ|` of the level set, if `dλ ≠ 0`.
pub fn level_tangent<F: Frontal + ?Sized>(f: &F, q: [f64; 2]) -> Option<[f64; 2]> {
    let g = f.density_gradient(q);
    unit([-g[1], g[0]])
}

/// Newton steps along `dλ` onto `λ = 0`, moving at most `max_move`.
pub fn project_to_zero<F: Frontal + ?Sized>(
    f: &F,
    q: [f64; 2],
    tol: &Tolerances,
    max_move: f64,
) -> Option<[f64; 2]> {
    let mut p = q;
    for _ in 0..40 {
        let lam = f.density(p);
        if lam == 0.0 {
            break;
        }
        let g = f.density_gradient(p);
        let g2 = g[0] * g[0] + g[1] * g[1];
        if g2 == 0.0 || !g2.is_finite() {
            return None;
        }
        let step = [lam * g[0] / g2, lam * g[1] / g2];
        p = [p[0] - step[0], p[1] - step[1]];
        if (p[0] - q[0]).hypot(p[1] - q[1]) > max_move {
            return None;
        }
        if step[0].hypot(step[1]) <= 1e-16 * (1.0 + p[0].hypot(p[1])) {
            break;
        }
    }
    (f.density(p).abs() <= tol.sing).then_some(p)
}

fn walk_level<F: Frontal + ?Sized>(
    f: &F,
    start: Station,
    distance: f64,
    tol: &Tolerances,
) -> Option<Station> {
    let ds = distance / SUBSTEPS as f64;
    let mut s = start;
    for _ in 0..SUBSTEPS {
        let guess = [
            s.point[0] + ds * s.tangent[0],
            s.point[1] + ds * s.tangent[1],
        ];
        let point = project_to_zero(f, guess, tol, ds.abs())?;
        let tangent = oriented(level_tangent(f, point)?, s.tangent);
        s = Station { point, tangent };
    }
    Some(s)
}

/// Stations at arc lengths `−2h, −h, 0, h, 2h` from `p`.
pub fn stations<F: Frontal + ?Sized>(
    f: &F,
    p: [f64; 2],
    path: Path,
    h: f64,
    tol: &Tolerances,
) -> Option<[Station; 5]> {
    match path {
        Path::Line(dir) => {
            let t = unit(dir)?;
            Some(std::array::from_fn(|k| {
                let s = (k as f64 - 2.0) * h;
                Station {
                    point: [p[0] + s * t[0], p[1] + s * t[1]],
                    tangent: t,
                }
            }))
        }
        Path::Level => {
            let mid = Station {
                point: p,
                tangent: level_tangent(f, p)?,
            };
            let fwd1 = walk_level(f, mid, h, tol)?;
            let fwd2 = walk_level(f, fwd1, h, tol)?;
            let back1 = walk_level(f, mid, -h, tol)?;
            let back2 = walk_level(f, back1, -h, tol)?;
            Some([back2, back1, mid, fwd1, fwd2])
        }
    }
}

/// Central 5-point derivative at the middle sample.
pub fn five_point(values: [f64; 5], h: f64) -> f64 {
    (values[0] - 8.0 * values[1] + 8.0 * values[3] - values[4]) / (12.0 * h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::singlab::frontal::swallowtail;

    #[test]
    fn five_point_is_exact_on_quartics() {
        let h = 0.1;
        let f = |t: f64| 3.0 * t.powi(4) - t.powi(3) + 2.0 * t + 1.0;
        let vals = std::array::from_fn(|k| f((k as f64 - 2.0) * h));
        assert!((five_point(vals, h) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn level_walk_stays_on_parabola() {
        // singular set of the swallowtail normal form is v = −6u²
        let f = swallowtail();
        let tol = Tolerances::from_scale(1.0);
        let st = stations(&f, [0.0, 0.0], Path::Level, 0.01, &tol).unwrap();
        for s in &st {
            let [u, v] = s.point;
            assert!((v + 6.0 * u * u).abs() < 1e-12);
        }
        // arc-length spacing
        for k in 0..4 {
            let d =
                (st[k + 1].point[0] - st[k].point[0]).hypot(st[k + 1].point[1] - st[k].point[1]);
            assert!((d - 0.01).abs() < 1e-5, "{d}");
        }
        assert!(st[3].point[0] * st[1].point[0] < 0.0);
    }

    #[test]
    fn projection_moves_onto_zero_set() {
        let f = swallowtail();
        let tol = Tolerances::from_scale(1.0);
        let p = project_to_zero(&f, [0.5, -1.49], &tol, 0.1).unwrap();
        assert!((p[1] + 6.0 * p[0] * p[0]).abs() < 1e-12);
        assert!(project_to_zero(&f, [0.5, 3.0], &tol, 1e-3).is_none());
    }
}
