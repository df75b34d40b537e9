//! Dense polynomials: `UnitPoly` over the split-complex or complex numbers
//! (coefficient of `z^k` at index `k`) and `Poly` over the reals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use super::bipoly::BiPoly;
use super::number::{Hyper, Imag, Split, Unit};
use crate::scalar::Scalar;

/// Largest degree accepted for user-supplied curve polynomials.
pub const MAX_DEGREE: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomial degree {degree} exceeds the cap of {cap}")]
    DegreeTooHigh { degree: usize, cap: usize },
}

/// Polynomial in `z` with coefficients in `R[e]/(e² − s)`.
pub struct UnitPoly<S, U> {
    coeffs: Vec<Hyper<S, U>>,
}

/// Para-holomorphic polynomial `F(z)`, `z = u + j v`.
pub type ParaPoly<S> = UnitPoly<S, Split>;
/// Holomorphic polynomial `F(z)`, `z = u + i v`.
pub type HoloPoly<S> = UnitPoly<S, Imag>;

impl<S: Clone, U> Clone for UnitPoly<S, U> {
    fn clone(&self) -> Self {
        UnitPoly {
            coeffs: self.coeffs.clone(),
        }
    }
}

impl<S: PartialEq, U> PartialEq for UnitPoly<S, U> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<S: fmt::Debug, U: Unit> fmt::Debug for UnitPoly<S, U> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

impl<S: Scalar, U: Unit> UnitPoly<S, U> {
    /// Validated constructor for user input; trailing zeros are trimmed
    /// before the degree cap is checked.
    pub fn new(coeffs: Vec<Hyper<S, U>>) -> Result<Self, PolyError> {
        let p = Self::from_coeffs(coeffs);
        match p.degree() {
            Some(d) if d > MAX_DEGREE => Err(PolyError::DegreeTooHigh {
                degree: d,
                cap: MAX_DEGREE,
            }),
            _ => Ok(p),
        }
    }

    /// Unchecked constructor for derived polynomials (products may exceed
    /// the input cap).
    pub fn from_coeffs(mut coeffs: Vec<Hyper<S, U>>) -> Self {
        while coeffs.last().is_some_and(Hyper::is_zero) {
            coeffs.pop();
        }
        UnitPoly { coeffs }
    }

    pub fn zero() -> Self {
        UnitPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Hyper<S, U>) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c·z^k`.
    pub fn monomial(c: Hyper<S, U>, k: usize) -> Self {
        let mut coeffs = vec![Hyper::zero(); k];
        coeffs.push(c);
        Self::from_coeffs(coeffs)
    }

    /// The identity map `z`.
    pub fn z() -> Self {
        Self::monomial(Hyper::one(), 1)
    }

    pub fn coeffs(&self) -> &[Hyper<S, U>] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Hyper<S, U> {
        self.coeffs.get(k).cloned().unwrap_or_else(Hyper::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.re.abs_f64().max(c.im.abs_f64()))
            .fold(0.0, f64::max)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: &Hyper<S, U>) -> Hyper<S, U> {
        self.coeffs
            .iter()
            .rev()
            .fold(Hyper::zero(), |acc, c| acc * z.clone() + c.clone())
    }

    /// Formal derivative `F'`.
    pub fn derive(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&S::from_i64(k as i64)))
                .collect(),
        )
    }

    /// Antiderivative vanishing at `z = 0`.
    pub fn antiderivative(&self) -> Self {
        let mut coeffs = vec![Hyper::zero()];
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| Hyper::new(c.re.div_int(k as i64 + 1), c.im.div_int(k as i64 + 1))),
        );
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, k: &Hyper<S, U>) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.clone() * k.clone()).collect())
    }

    pub fn to_f64(&self) -> UnitPoly<f64, U> {
        UnitPoly::from_coeffs(self.coeffs.iter().map(Hyper::to_f64).collect())
    }

    /// Real and imaginary parts as polynomials in `(u, v)`, from the
    /// expansion of `(u + e v)^k`.
    pub fn components(&self) -> (BiPoly<S>, BiPoly<S>) {
        let u = BiPoly::<S>::u();
        let v = BiPoly::<S>::v();
        let sq = S::from_i64(U::SQUARE);
        let mut pow_re = BiPoly::constant(S::one());
        let mut pow_im = BiPoly::zero();
        let mut re = BiPoly::zero();
        let mut im = BiPoly::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                // (a + e b)(u + e v) = (a u + s b v) + e (a v + b u)
                let next_re = &(&pow_re * &u) + &(&pow_im * &v).scale(&sq);
                let next_im = &(&pow_re * &v) + &(&pow_im * &u);
                pow_re = next_re;
                pow_im = next_im;
            }
            // (cr + e ci)(a + e b) = (cr a + s ci b) + e (cr b + ci a)
            re = &re + &(&pow_re.scale(&c.re) + &pow_im.scale(&(c.im.clone() * sq.clone())));
            im = &im + &(&pow_im.scale(&c.re) + &pow_re.scale(&c.im));
        }
        (re, im)
    }
}

impl<S: Scalar, U: Unit> Add for &UnitPoly<S, U> {
    type Output = UnitPoly<S, U>;
    fn add(self, rhs: &UnitPoly<S, U>) -> UnitPoly<S, U> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UnitPoly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<S: Scalar, U: Unit> Sub for &UnitPoly<S, U> {
    type Output = UnitPoly<S, U>;
    fn sub(self, rhs: &UnitPoly<S, U>) -> UnitPoly<S, U> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UnitPoly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<S: Scalar, U: Unit> Neg for &UnitPoly<S, U> {
    type Output = UnitPoly<S, U>;
    fn neg(self) -> UnitPoly<S, U> {
        UnitPoly::from_coeffs(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<S: Scalar, U: Unit> Mul for &UnitPoly<S, U> {
    type Output = UnitPoly<S, U>;
    fn mul(self, rhs: &UnitPoly<S, U>) -> UnitPoly<S, U> {
        if self.is_zero() || rhs.is_zero() {
            return UnitPoly::zero();
        }
        let mut out = vec![Hyper::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        UnitPoly::from_coeffs(out)
    }
}

/// Real univariate polynomial, coefficient of `t^k` at index `k`.
#[derive(Clone, PartialEq)]
pub struct Poly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> fmt::Debug for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

impl<S: Scalar> Poly<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, t: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * t.clone() + c.clone())
    }

    pub fn derive(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * S::from_i64(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, k: &S) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.clone() * k.clone()).collect())
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(S, S) -> S) -> Self {
        let n = self.len().max(rhs.len());
        Poly::new((0..n).map(|k| f(self.coeff(k), rhs.coeff(k))).collect())
    }
}

impl<S: Scalar> Add for &Poly<S> {
    type Output = Poly<S>;
    fn add(self, rhs: &Poly<S>) -> Poly<S> {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl<S: Scalar> Sub for &Poly<S> {
    type Output = Poly<S>;
    fn sub(self, rhs: &Poly<S>) -> Poly<S> {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl<S: Scalar> Neg for &Poly<S> {
    type Output = Poly<S>;
    fn neg(self) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paraalg::number::ParaComplex;
    use crate::scalar::{ratio, Rational};
    use proptest::prelude::*;

    type PP = ParaPoly<Rational>;

    fn zpow(k: usize) -> PP {
        PP::monomial(Hyper::one(), k)
    }

    fn bi(terms: &[((u32, u32), i64)]) -> BiPoly<Rational> {
        BiPoly::from_terms(terms.iter().map(|(k, c)| (*k, ratio(*c, 1))))
    }

    #[test]
    fn z_squared_components() {
        let (f1, f2) = zpow(2).components();
        assert_eq!(f1, bi(&[((2, 0), 1), ((0, 2), 1)]));
        assert_eq!(f2, bi(&[((1, 1), 2)]));
    }

    #[test]
    fn z_cubed_components() {
        let (g1, g2) = zpow(3).components();
        assert_eq!(g1, bi(&[((3, 0), 1), ((1, 2), 3)]));
        assert_eq!(g2, bi(&[((2, 1), 3), ((0, 3), 1)]));
    }

    #[test]
    fn holomorphic_components_use_minus_one() {
        let (re, im) = HoloPoly::<Rational>::monomial(Hyper::one(), 2).components();
        assert_eq!(re, bi(&[((2, 0), 1), ((0, 2), -1)]));
        assert_eq!(im, bi(&[((1, 1), 2)]));
    }

    #[test]
    fn constant_evaluates_to_itself() {
        let p = PP::constant(Hyper::one());
        let z: ParaComplex<Rational> = Hyper::new(ratio(5, 3), ratio(-2, 7));
        assert_eq!(p.eval(&z), Hyper::one());
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(zpow(2).derive(), zpow(1).scale(&Hyper::real(ratio(2, 1))));
        assert_eq!(
            zpow(3).derive().eval(&Hyper::one()),
            Hyper::real(ratio(3, 1))
        );
        assert!(PP::constant(Hyper::new(ratio(4, 1), ratio(1, 1)))
            .derive()
            .is_zero());
        assert_eq!(zpow(5).derive().degree(), Some(4));
    }

    #[test]
    fn degree_cap_is_enforced() {
        let mut coeffs = vec![Hyper::zero(); MAX_DEGREE + 1];
        coeffs.push(Hyper::one());
        assert_eq!(
            PP::new(coeffs).unwrap_err(),
            PolyError::DegreeTooHigh {
                degree: MAX_DEGREE + 1,
                cap: MAX_DEGREE
            }
        );
        let mut trailing = vec![Hyper::one()];
        trailing.extend(vec![Hyper::zero(); 40]);
        assert_eq!(PP::new(trailing).unwrap().degree(), Some(0));
    }

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-12i64..=12, 1i64..=4).prop_map(|(p, q)| ratio(p, q))
    }

    fn para_poly() -> impl Strategy<Value = PP> {
        prop::collection::vec((small_rat(), small_rat()), 0..6)
            .prop_map(|cs| PP::from_coeffs(cs.into_iter().map(|(a, b)| Hyper::new(a, b)).collect()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn para_cauchy_riemann_holds_on_coefficients(p in para_poly()) {
            let (f1, f2) = p.components();
            prop_assert!((&f1.partial_u() - &f2.partial_v()).is_zero());
            prop_assert!((&f1.partial_v() - &f2.partial_u()).is_zero());
        }

        #[test]
        fn derivative_matches_u_partials(p in para_poly()) {
            let (f1, f2) = p.components();
            let (d1, d2) = p.derive().components();
            prop_assert_eq!(d1, f1.partial_u());
            prop_assert_eq!(d2, f2.partial_u());
        }

        #[test]
        fn horner_matches_bivariate_expansion(p in para_poly(), u in small_rat(), v in small_rat()) {
            let (f1, f2) = p.components();
            let val = p.eval(&Hyper::new(u.clone(), v.clone()));
            prop_assert_eq!(val.re, f1.eval(&u, &v));
            prop_assert_eq!(val.im, f2.eval(&u, &v));
        }

        #[test]
        fn product_expansion_is_multiplicative(p in para_poly(), q in para_poly()) {
            let (p1, p2) = p.components();
            let (q1, q2) = q.components();
            let (r1, r2) = (&p * &q).components();
            prop_assert_eq!(r1, &(&p1 * &q1) + &(&p2 * &q2));
            prop_assert_eq!(r2, &(&p1 * &q2) + &(&p2 * &q1));
        }
    }
}
