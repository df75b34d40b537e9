//! Swallowtail search along traced curves: zeros of `η·dλ`, which vanish
//! exactly where the null direction is tangent to the singular curve.

use rayon::prelude::*;

use super::classify::{classify_point, SingularClass};
use super::frontal::Frontal;
use super::tolerance::Tolerances;
use super::trace::SingularCurve;
use super::walk::project_to_zero;

fn null_slopes<F: Frontal + ?Sized>(f: &F, p: [f64; 2]) -> Vec<f64> {
    let g = f.density_gradient(p);
    f.null_candidates(p)
        .iter()
        .map(|e| e[0] * g[0] + e[1] * g[1])
        .collect()
}

fn refine<F: Frontal + ?Sized>(
    f: &F,
    a: [f64; 2],
    b: [f64; 2],
    which: usize,
    tol: &Tolerances,
) -> Option<[f64; 2]> {
    let span = (b[0] - a[0]).hypot(b[1] - a[1]);
    let at = |s: f64| {
        let q = [a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])];
        project_to_zero(f, q, tol, span).unwrap_or(q)
    };
    let slope = |s: f64| null_slopes(f, at(s))[which];
    let (mut lo, mut hi) = (0.0, 1.0);
    let slo = slope(lo) >= 0.0;
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if (slope(mid) >= 0.0) == slo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let p = at(0.5 * (lo + hi));
    (f.density(p).abs() <= tol.sing).then_some(p)
}

/// Swallowtail points on the traced curves, confirmed by the classifier.
pub fn locate_swallowtails<F: Frontal + ?Sized>(
    f: &F,
    curves: &[SingularCurve],
    tol: &Tolerances,
) -> Vec<[f64; 2]> {
    let mut candidates = Vec::new();
    for c in curves {
        let usable: Vec<bool> = c
            .points
            .iter()
            .zip(&c.degenerate_flags)
            .map(|(p, &deg)| !deg && !f.is_branch(*p, tol) && f.not_front_line(*p, tol).is_none())
            .collect();
        let slopes: Vec<Vec<f64>> = c.points.iter().map(|p| null_slopes(f, *p)).collect();
        for k in 0..c.points.len().saturating_sub(1) {
            if !(usable[k] && usable[k + 1]) {
                continue;
            }
            for (w, (&s0, &s1)) in slopes[k].iter().zip(&slopes[k + 1]).enumerate() {
                if (s0 >= 0.0) != (s1 >= 0.0) {
                    candidates.push((c.points[k], c.points[k + 1], w));
                }
            }
        }
    }
    let found: Vec<[f64; 2]> = candidates
        .into_par_iter()
        .filter_map(|(a, b, w)| refine(f, a, b, w, tol))
        .filter(|p| matches!(classify_point(f, *p, tol), Ok(c) if c.class == SingularClass::Swallowtail))
        .collect();
    let mut out: Vec<[f64; 2]> = Vec::new();
    for p in found {
        if !out.iter().any(|q| (q[0] - p[0]).hypot(q[1] - p[1]) < 1e-6) {
            out.push(p);
        }
    }
    out.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use crate::singlab::frontal::{cuspidal_edge, swallowtail};
    use crate::singlab::trace::trace_singular_curves;
    use crate::surfgen::{Domain, ParaCurve, Surface};

    #[test]
    fn normal_form_swallowtail_at_origin() {
        let f = swallowtail();
        let dom = Domain::new(-0.5, 0.5, -1.0, 0.4).unwrap();
        let tol = Tolerances::from_scale(1.0);
        let curves = trace_singular_curves(&f, &dom, (33, 33), &tol);
        let st = locate_swallowtails(&f, &curves, &tol);
        assert_eq!(st.len(), 1);
        assert!(st[0][0].hypot(st[0][1]) < 1e-8, "{st:?}");
    }

    #[test]
    fn cuspidal_edge_has_none() {
        let f = cuspidal_edge();
        let dom = Domain::new(-0.5, 0.5, -1.0, 1.0).unwrap();
        let tol = Tolerances::from_scale(1.0);
        let curves = trace_singular_curves(&f, &dom, (33, 33), &tol);
        assert!(locate_swallowtails(&f, &curves, &tol).is_empty());
    }

    #[test]
    fn examples() {
        let dom = Domain::new(-1.2, 1.2, -1.2, 1.2).unwrap();
        let s = Surface::new(ParaCurve::<Rational>::monomials(2, 3)).unwrap();
        let tol = Tolerances::for_surface(&s, &dom);
        let st = locate_swallowtails(&s, &trace_singular_curves(&s, &dom, (64, 64), &tol), &tol);
        assert_eq!(st.len(), 1, "{st:?}");
        assert!((st[0][0] + 2.0 / 3.0).abs() < 1e-8 && st[0][1].abs() < 1e-8);

        let s = Surface::new(ParaCurve::<Rational>::monomials(3, 4)).unwrap();
        let tol = Tolerances::for_surface(&s, &dom);
        let st = locate_swallowtails(&s, &trace_singular_curves(&s, &dom, (64, 64), &tol), &tol);
        assert_eq!(st.len(), 1, "{st:?}");
        assert!((st[0][0] + 0.75).abs() < 1e-8 && st[0][1].abs() < 1e-8);
    }
}
