//! Marching-squares extraction of `λ = 0`, with a second pass for lines of
//! double roots that `λ` touches without changing sign.

use std::collections::HashMap;

use rayon::prelude::*;

use super::frontal::Frontal;
use super::tolerance::Tolerances;
use super::walk::{level_tangent, unit};
use crate::surfgen::Domain;

/// A traced polyline of singular points.
#[derive(Clone, Debug, PartialEq)]
pub struct SingularCurve {
    pub points: Vec<[f64; 2]>,
    /// Unit tangents, perpendicular to `dλ` at non-degenerate points.
    pub tangents: Vec<[f64; 2]>,
    /// `|dλ| ≤ tol_deg` at the point.
    pub degenerate_flags: Vec<bool>,
}

/// Minimum lattice resolution per axis.
pub const MIN_TRACE_RES: usize = 16;

/// Direction used to detect double roots via `dλ · d = 0`.
const PROBE_ANGLE: f64 = 0.3;

const BISECTIONS: usize = 80;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum EdgeKey {
    /// Between nodes `(i, j)` and `(i+1, j)`.
    H(usize, usize),
    /// Between nodes `(i, j)` and `(i, j+1)`.
    V(usize, usize),
}

struct Lattice {
    domain: Domain,
    nu: usize,
    nv: usize,
}

impl Lattice {
    fn node(&self, i: usize, j: usize) -> [f64; 2] {
        self.domain.node(self.nu, self.nv, i, j)
    }

    fn ends(&self, e: EdgeKey) -> ([f64; 2], [f64; 2]) {
        match e {
            EdgeKey::H(i, j) => (self.node(i, j), self.node(i + 1, j)),
            EdgeKey::V(i, j) => (self.node(i, j), self.node(i, j + 1)),
        }
    }
}

/// Root of `g` on the segment `[a, b]` by bisection, given a sign change.
fn bisect(g: &impl Fn([f64; 2]) -> f64, a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    let mut lo = 0.0;
    let mut hi = 1.0;
    let at = |s: f64| [a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])];
    let glo = g(a) >= 0.0;
    if g(a) == 0.0 {
        return a;
    }
    if g(b) == 0.0 {
        return b;
    }
    for _ in 0..BISECTIONS {
        let mid = 0.5 * (lo + hi);
        let gm = g(at(mid));
        if gm == 0.0 {
            return at(mid);
        }
        if (gm >= 0.0) == glo {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-17 {
            break;
        }
    }
    at(0.5 * (lo + hi))
}

/// Segments of the zero contour of `values` as pairs of edge keys.
fn contour_segments(
    values: &[f64],
    lat: &Lattice,
    center: impl Fn(usize, usize) -> f64 + Sync,
) -> Vec<(EdgeKey, EdgeKey)> {
    let (nu, nv) = (lat.nu, lat.nv);
    let pos = |i: usize, j: usize| values[j * nu + i] >= 0.0;
    (0..(nu - 1) * (nv - 1))
        .into_par_iter()
        .flat_map_iter(|k| {
            let (i, j) = (k % (nu - 1), k / (nu - 1));
            let c = [pos(i, j), pos(i + 1, j), pos(i + 1, j + 1), pos(i, j + 1)];
            let bottom = EdgeKey::H(i, j);
            let right = EdgeKey::V(i + 1, j);
            let top = EdgeKey::H(i, j + 1);
            let left = EdgeKey::V(i, j);
            let crossed: Vec<EdgeKey> = [(bottom, 0, 1), (right, 1, 2), (top, 2, 3), (left, 3, 0)]
                .into_iter()
                .filter(|&(_, a, b)| c[a] != c[b])
                .map(|(e, _, _)| e)
                .collect();
            let segs = match crossed.len() {
                2 => vec![(crossed[0], crossed[1])],
                4 => {
                    // saddle: corners 0 and 2 agree; join around the corner
                    // whose sign differs from the center
                    if (center(i, j) >= 0.0) == c[0] {
                        vec![(bottom, right), (top, left)]
                    } else {
                        vec![(bottom, left), (right, top)]
                    }
                }
                _ => vec![],
            };
            segs.into_iter()
        })
        .collect()
}

/// Chains segments sharing edge keys into polylines of keys.
fn chain(segments: &[(EdgeKey, EdgeKey)]) -> Vec<Vec<EdgeKey>> {
    let mut adj: HashMap<EdgeKey, Vec<usize>> = HashMap::new();
    for (k, (a, b)) in segments.iter().enumerate() {
        adj.entry(*a).or_default().push(k);
        adj.entry(*b).or_default().push(k);
    }
    let mut used = vec![false; segments.len()];
    let mut out = Vec::new();
    let mut starts: Vec<EdgeKey> = adj
        .iter()
        .filter(|(_, v)| v.len() == 1)
        .map(|(k, _)| *k)
        .collect();
    // deterministic order regardless of hashing
    starts.sort_by_key(|e| match *e {
        EdgeKey::H(i, j) => (0, j, i),
        EdgeKey::V(i, j) => (1, j, i),
    });
    let follow = |start: EdgeKey, used: &mut Vec<bool>| -> Option<Vec<EdgeKey>> {
        let mut line = vec![start];
        let mut cur = start;
        loop {
            let next = adj.get(&cur)?.iter().copied().find(|&s| !used[s]);
            let Some(s) = next else { break };
            used[s] = true;
            let (a, b) = segments[s];
            cur = if a == cur { b } else { a };
            line.push(cur);
        }
        (line.len() > 1).then_some(line)
    };
    for s in starts {
        if let Some(line) = follow(s, &mut used) {
            out.push(line);
        }
    }
    for k in 0..segments.len() {
        if !used[k] {
            if let Some(line) = follow(segments[k].0, &mut used) {
                out.push(line);
            }
        }
    }
    out
}

fn dedup(points: Vec<[f64; 2]>, eps: f64) -> Vec<[f64; 2]> {
    let mut out: Vec<[f64; 2]> = Vec::with_capacity(points.len());
    for p in points {
        if out
            .last()
            .is_none_or(|q| (q[0] - p[0]).hypot(q[1] - p[1]) > eps)
        {
            out.push(p);
        }
    }
    out
}

fn finish<F: Frontal + ?Sized>(
    f: &F,
    points: Vec<[f64; 2]>,
    tol: &Tolerances,
    eps: f64,
) -> Option<SingularCurve> {
    let points = dedup(points, eps);
    if points.len() < 2 {
        return None;
    }
    let n = points.len();
    let mut tangents = Vec::with_capacity(n);
    let mut flags = Vec::with_capacity(n);
    for k in 0..n {
        let (a, b) = (points[k.saturating_sub(1)], points[(k + 1).min(n - 1)]);
        let chord = unit([b[0] - a[0], b[1] - a[1]]).unwrap_or([1.0, 0.0]);
        let g = f.density_gradient(points[k]);
        let degenerate = g[0].hypot(g[1]) <= tol.deg;
        let t = if degenerate {
            None
        } else {
            level_tangent(f, points[k])
        };
        let t = t.map_or(chord, |t| {
            if t[0] * chord[0] + t[1] * chord[1] < 0.0 {
                [-t[0], -t[1]]
            } else {
                t
            }
        });
        tangents.push(t);
        flags.push(degenerate);
    }
    Some(SingularCurve {
        points,
        tangents,
        degenerate_flags: flags,
    })
}

/// Traces `{λ = 0}` on an `nu × nv` lattice over `domain`.
pub fn trace_singular_curves<F: Frontal + ?Sized>(
    f: &F,
    domain: &Domain,
    res: (usize, usize),
    tol: &Tolerances,
) -> Vec<SingularCurve> {
    let (nu, nv) = (res.0.max(MIN_TRACE_RES), res.1.max(MIN_TRACE_RES));
    let lat = Lattice {
        domain: *domain,
        nu,
        nv,
    };
    let cell =
        ((domain.u1 - domain.u0) / (nu - 1) as f64).min((domain.v1 - domain.v0) / (nv - 1) as f64);
    let eps = 1e-9 * cell;
    let nodes: Vec<[f64; 2]> = (0..nu * nv).map(|k| lat.node(k % nu, k / nu)).collect();
    let mid = |i: usize, j: usize| {
        let (a, b) = (lat.node(i, j), lat.node(i + 1, j + 1));
        [0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])]
    };
    let mut curves = Vec::new();

    // simple zeros
    let lam = |p: [f64; 2]| f.density(p);
    let values: Vec<f64> = nodes.par_iter().map(|&p| lam(p)).collect();
    let segs = contour_segments(&values, &lat, |i, j| lam(mid(i, j)));
    let roots: HashMap<EdgeKey, [f64; 2]> = segs
        .iter()
        .flat_map(|(a, b)| [*a, *b])
        .collect::<std::collections::BTreeSet<_>>()
        .into_par_iter()
        .map(|e| {
            let (a, b) = lat.ends(e);
            (e, bisect(&lam, a, b))
        })
        .collect();
    for line in chain(&segs) {
        let pts = line.iter().map(|e| roots[e]).collect();
        curves.extend(finish(f, pts, tol, eps));
    }

    // double roots: zeros of a directional derivative that are also
    // zeros of λ with vanishing gradient
    let d = [PROBE_ANGLE.cos(), PROBE_ANGLE.sin()];
    let dlam = |p: [f64; 2]| {
        let g = f.density_gradient(p);
        g[0] * d[0] + g[1] * d[1]
    };
    let values: Vec<f64> = nodes.par_iter().map(|&p| dlam(p)).collect();
    let segs = contour_segments(&values, &lat, |i, j| dlam(mid(i, j)));
    let keep: HashMap<EdgeKey, [f64; 2]> = segs
        .iter()
        .flat_map(|(a, b)| [*a, *b])
        .collect::<std::collections::BTreeSet<_>>()
        .into_par_iter()
        .filter_map(|e| {
            let (a, b) = lat.ends(e);
            let p = bisect(&dlam, a, b);
            let g = f.density_gradient(p);
            (f.density(p).abs() <= tol.sing && g[0].hypot(g[1]) <= tol.deg).then_some((e, p))
        })
        .collect();
    let kept: Vec<(EdgeKey, EdgeKey)> = segs
        .into_iter()
        .filter(|(a, b)| keep.contains_key(a) && keep.contains_key(b))
        .collect();
    for line in chain(&kept) {
        let pts = line.iter().map(|e| keep[e]).collect();
        curves.extend(finish(f, pts, tol, eps));
    }
    curves
}
