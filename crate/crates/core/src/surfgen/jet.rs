//! Second-order jets: value plus exact first and second partials.

use crate::paraalg::BiPoly;
use crate::scalar::Scalar;

/// Value and partials of a `K`-vector valued map at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet2<const K: usize> {
    pub value: [f64; K],
    pub du: [f64; K],
    pub dv: [f64; K],
    pub duu: [f64; K],
    pub duv: [f64; K],
    pub dvv: [f64; K],
}

impl<const K: usize> Jet2<K> {
    pub fn zero() -> Self {
        Jet2 {
            value: [0.0; K],
            du: [0.0; K],
            dv: [0.0; K],
            duu: [0.0; K],
            duv: [0.0; K],
            dvv: [0.0; K],
        }
    }

    /// Directional first derivative `d(map)(dir)`.
    pub fn along(&self, dir: [f64; 2]) -> [f64; K] {
        std::array::from_fn(|k| dir[0] * self.du[k] + dir[1] * self.dv[k])
    }

    pub fn slots(&self) -> [&[f64; K]; 6] {
        [
            &self.value,
            &self.du,
            &self.dv,
            &self.duu,
            &self.duv,
            &self.dvv,
        ]
    }
}

/// A polynomial together with its partial derivatives up to order two.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyJet<S: Scalar> {
    pub p: BiPoly<S>,
    pub pu: BiPoly<S>,
    pub pv: BiPoly<S>,
    pub puu: BiPoly<S>,
    pub puv: BiPoly<S>,
    pub pvv: BiPoly<S>,
}

impl<S: Scalar> PolyJet<S> {
    pub fn new(p: BiPoly<S>) -> Self {
        let pu = p.partial_u();
        let pv = p.partial_v();
        PolyJet {
            puu: pu.partial_u(),
            puv: pu.partial_v(),
            pvv: pv.partial_v(),
            pu,
            pv,
            p,
        }
    }

    pub fn to_f64(&self) -> PolyJet<f64> {
        PolyJet {
            p: self.p.to_f64(),
            pu: self.pu.to_f64(),
            pv: self.pv.to_f64(),
            puu: self.puu.to_f64(),
            puv: self.puv.to_f64(),
            pvv: self.pvv.to_f64(),
        }
    }
}

impl PolyJet<f64> {
    /// `[value, u, v, uu, uv, vv]` at a point.
    pub fn at(&self, u: f64, v: f64) -> [f64; 6] {
        [
            self.p.at(u, v),
            self.pu.at(u, v),
            self.pv.at(u, v),
            self.puu.at(u, v),
            self.puv.at(u, v),
            self.pvv.at(u, v),
        ]
    }
}

/// Assembles a jet from per-component `[value, u, v, uu, uv, vv]` arrays.
pub fn assemble<const K: usize>(parts: [[f64; 6]; K]) -> Jet2<K> {
    let pick = |slot: usize| std::array::from_fn(|k| parts[k][slot]);
    Jet2 {
        value: pick(0),
        du: pick(1),
        dv: pick(2),
        duu: pick(3),
        duv: pick(4),
        dvv: pick(5),
    }
}

pub fn dot3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross3(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn det3(a: &[f64; 3], b: &[f64; 3], c: &[f64; 3]) -> f64 {
    dot3(&cross3(a, b), c)
}

pub fn norm3(a: &[f64; 3]) -> f64 {
    dot3(a, a).sqrt()
}

/// Jet of `w / |w|` from the jet of a nowhere-vanishing field `w`, by the
/// quotient rule on `Δ^{-1/2}` with `Δ = ⟨w, w⟩`.
pub fn normalize(w: &Jet2<3>) -> Jet2<3> {
    let delta = dot3(&w.value, &w.value);
    let d_u = 2.0 * dot3(&w.value, &w.du);
    let d_v = 2.0 * dot3(&w.value, &w.dv);
    let d_uu = 2.0 * (dot3(&w.du, &w.du) + dot3(&w.value, &w.duu));
    let d_uv = 2.0 * (dot3(&w.du, &w.dv) + dot3(&w.value, &w.duv));
    let d_vv = 2.0 * (dot3(&w.dv, &w.dv) + dot3(&w.value, &w.dvv));

    let s = delta.powf(-0.5);
    let s3 = delta.powf(-1.5);
    let s5 = delta.powf(-2.5);
    let s_u = -0.5 * s3 * d_u;
    let s_v = -0.5 * s3 * d_v;
    let s_uu = 0.75 * s5 * d_u * d_u - 0.5 * s3 * d_uu;
    let s_uv = 0.75 * s5 * d_u * d_v - 0.5 * s3 * d_uv;
    let s_vv = 0.75 * s5 * d_v * d_v - 0.5 * s3 * d_vv;

    let f = |k: usize| {
        [
            w.value[k] * s,
            w.du[k] * s + w.value[k] * s_u,
            w.dv[k] * s + w.value[k] * s_v,
            w.duu[k] * s + 2.0 * w.du[k] * s_u + w.value[k] * s_uu,
            w.duv[k] * s + w.du[k] * s_v + w.dv[k] * s_u + w.value[k] * s_uv,
            w.dvv[k] * s + 2.0 * w.dv[k] * s_v + w.value[k] * s_vv,
        ]
    };
    assemble([f(0), f(1), f(2)])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(u: f64, v: f64) -> [f64; 3] {
        [u * u - v, 3.0 * u * v + 1.0, 2.0 + v * v * v]
    }

    fn field_jet(u: f64, v: f64) -> Jet2<3> {
        assemble([
            [u * u - v, 2.0 * u, -1.0, 2.0, 0.0, 0.0],
            [3.0 * u * v + 1.0, 3.0 * v, 3.0 * u, 0.0, 3.0, 0.0],
            [2.0 + v * v * v, 0.0, 3.0 * v * v, 0.0, 0.0, 6.0 * v],
        ])
    }

    fn unit(u: f64, v: f64) -> [f64; 3] {
        let w = field(u, v);
        let n = norm3(&w);
        [w[0] / n, w[1] / n, w[2] / n]
    }

    #[test]
    fn normalized_jet_matches_finite_differences() {
        let (u, v) = (0.4, -0.7);
        let j = normalize(&field_jet(u, v));
        let h = 1e-4;
        for k in 0..3 {
            let fu = (unit(u + h, v)[k] - unit(u - h, v)[k]) / (2.0 * h);
            let fv = (unit(u, v + h)[k] - unit(u, v - h)[k]) / (2.0 * h);
            let fuu = (unit(u + h, v)[k] - 2.0 * unit(u, v)[k] + unit(u - h, v)[k]) / (h * h);
            let fvv = (unit(u, v + h)[k] - 2.0 * unit(u, v)[k] + unit(u, v - h)[k]) / (h * h);
            let fuv = (unit(u + h, v + h)[k] - unit(u + h, v - h)[k] - unit(u - h, v + h)[k]
                + unit(u - h, v - h)[k])
                / (4.0 * h * h);
            assert!((j.value[k] - unit(u, v)[k]).abs() < 1e-14);
            assert!((j.du[k] - fu).abs() < 1e-6, "du[{k}]");
            assert!((j.dv[k] - fv).abs() < 1e-6, "dv[{k}]");
            assert!((j.duu[k] - fuu).abs() < 1e-5, "duu[{k}]");
            assert!((j.duv[k] - fuv).abs() < 1e-5, "duv[{k}]");
            assert!((j.dvv[k] - fvv).abs() < 1e-5, "dvv[{k}]");
        }
    }

    #[test]
    fn constant_field_has_zero_derivatives() {
        let j = normalize(&assemble([
            [0.0; 6],
            [0.0; 6],
            [1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        ]));
        assert_eq!(j.value, [0.0, 0.0, 1.0]);
        for slot in &j.slots()[1..] {
            assert_eq!(**slot, [0.0; 3]);
        }
    }
}
