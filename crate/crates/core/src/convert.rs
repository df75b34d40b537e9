//! Conversions between curve pairs and the one-potential and
//! two-function parametrizations of the same surfaces.

use crate::paraalg::{
    dalembert_to_para, para_to_dalembert, DAlembertPair, HoloPoly, Hyper, ParaPoly, Poly, Unit,
    UnitPoly,
};
use crate::scalar::Scalar;
use crate::surfgen::{CurvePair, HoloCurve, ParaCurve};

/// `F = ½(z − e f′)`, `G = ½(z + e f′)` where `e` is the unit of `U`.
fn potential_to_curve<S: Scalar, U: Unit>(f: &UnitPoly<S, U>) -> CurvePair<S, U> {
    let half = Hyper::real(S::one().div_int(2));
    let z = UnitPoly::<S, U>::z();
    let ef = f.derive().scale(&Hyper::unit());
    CurvePair::new((&z - &ef).scale(&half), (&z + &ef).scale(&half))
}

/// Split-complex potential to an indefinite curve pair.
pub fn cls_to_curve<S: Scalar>(f: &ParaPoly<S>) -> ParaCurve<S> {
    potential_to_curve(f)
}

/// Holomorphic potential to a convex curve pair.
pub fn cortes_to_holo<S: Scalar>(f: &HoloPoly<S>) -> HoloCurve<S> {
    potential_to_curve(f)
}

/// `f′` from a pair built by [`cls_to_curve`] or [`cortes_to_holo`]:
/// `G − F = e f′`, so `f′ = (G − F)·e / e²`.
pub fn recover_potential_derivative<S: Scalar, U: Unit>(curve: &CurvePair<S, U>) -> UnitPoly<S, U> {
    let e_inv = if U::SQUARE > 0 {
        Hyper::unit()
    } else {
        -Hyper::<S, U>::unit()
    };
    (&curve.g - &curve.f).scale(&e_inv)
}

/// Potential with zero constant term recovered from a converted pair.
pub fn recover_potential<S: Scalar, U: Unit>(curve: &CurvePair<S, U>) -> UnitPoly<S, U> {
    recover_potential_derivative(curve).antiderivative()
}

/// Four real polynomials of the two-function parametrization.
#[derive(Clone, Debug, PartialEq)]
pub struct Blaschke<S: Scalar> {
    pub u1: Poly<S>,
    pub v1: Poly<S>,
    pub u2: Poly<S>,
    pub v2: Poly<S>,
}

/// `U₁ = ρ₁+ρ₂`, `V₁ = σ₁+σ₂`, `U₂ = ρ₂−ρ₁`, `V₂ = σ₁−σ₂` from the
/// d'Alembert pairs of `F` and `G`.
pub fn curve_to_blaschke<S: Scalar>(curve: &ParaCurve<S>) -> Blaschke<S> {
    let a = para_to_dalembert(&curve.f);
    let b = para_to_dalembert(&curve.g);
    Blaschke {
        u1: &a.rho + &b.rho,
        v1: &a.sigma + &b.sigma,
        u2: &b.rho - &a.rho,
        v2: &a.sigma - &b.sigma,
    }
}

pub fn blaschke_to_curve<S: Scalar>(b: &Blaschke<S>) -> ParaCurve<S> {
    let half = S::one().div_int(2);
    let f = DAlembertPair {
        rho: (&b.u1 - &b.u2).scale(&half),
        sigma: (&b.v1 + &b.v2).scale(&half),
    };
    let g = DAlembertPair {
        rho: (&b.u1 + &b.u2).scale(&half),
        sigma: (&b.v1 - &b.v2).scale(&half),
    };
    CurvePair::new(dalembert_to_para(&f), dalembert_to_para(&g))
}
