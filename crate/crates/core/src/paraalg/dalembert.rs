//! Two-function (d'Alembert) form of para-holomorphic polynomials:
//! `F(u + jv) = ρ(u+v) + σ(u−v) + j(ρ(u+v) − σ(u−v))`.
//!
//! In the idempotent basis `e± = (1 ± j)/2`, a coefficient `a + jb` equals
//! `(a+b)e₊ + (a−b)e₋` and `z = (u+v)e₊ + (u−v)e₋`, so the `z^k` coefficient
//! of `ρ` is `(a+b)/2` and that of `σ` is `(a−b)/2`.

use super::number::{Hyper, ParaComplex};
use super::poly::{ParaPoly, Poly};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct DAlembertPair<S: Scalar> {
    pub rho: Poly<S>,
    pub sigma: Poly<S>,
}

/// Decomposes `F` into `(ρ, σ)`.
pub fn para_to_dalembert<S: Scalar>(f: &ParaPoly<S>) -> DAlembertPair<S> {
    let rho = f
        .coeffs()
        .iter()
        .map(|c| (c.re.clone() + c.im.clone()).div_int(2))
        .collect();
    let sigma = f
        .coeffs()
        .iter()
        .map(|c| (c.re.clone() - c.im.clone()).div_int(2))
        .collect();
    DAlembertPair {
        rho: Poly::new(rho),
        sigma: Poly::new(sigma),
    }
}

/// Reassembles the para-holomorphic polynomial from `(ρ, σ)`.
pub fn dalembert_to_para<S: Scalar>(pair: &DAlembertPair<S>) -> ParaPoly<S> {
    let n = pair.rho.len().max(pair.sigma.len());
    ParaPoly::from_coeffs(
        (0..n)
            .map(|k| {
                let r = pair.rho.coeff(k);
                let s = pair.sigma.coeff(k);
                Hyper::new(r.clone() + s.clone(), r - s)
            })
            .collect(),
    )
}

impl<S: Scalar> DAlembertPair<S> {
    /// Evaluates `ρ(u+v) + σ(u−v) + j(ρ(u+v) − σ(u−v))` directly.
    pub fn eval(&self, u: &S, v: &S) -> ParaComplex<S> {
        let r = self.rho.eval(&(u.clone() + v.clone()));
        let s = self.sigma.eval(&(u.clone() - v.clone()));
        Hyper::new(r.clone() + s.clone(), r - s)
    }
}
