use crate::paraalg::{Hyper, Imag, Signature, Split, Unit, UnitPoly};
use crate::scalar::{Rational, Scalar};

/// The pair `(F, G)` driving a representation formula.
pub struct CurvePair<S, U> {
    pub f: UnitPoly<S, U>,
    pub g: UnitPoly<S, U>,
}

/// Para-holomorphic pair, yields indefinite surfaces.
pub type ParaCurve<S> = CurvePair<S, Split>;
/// Holomorphic pair, yields locally strongly convex surfaces.
pub type HoloCurve<S> = CurvePair<S, Imag>;

impl<S: Clone, U> Clone for CurvePair<S, U> {
    fn clone(&self) -> Self {
        CurvePair {
            f: self.f.clone(),
            g: self.g.clone(),
        }
    }
}

impl<S: PartialEq, U> PartialEq for CurvePair<S, U> {
    fn eq(&self, other: &Self) -> bool {
        self.f == other.f && self.g == other.g
    }
}

impl<S: std::fmt::Debug, U: Unit> std::fmt::Debug for CurvePair<S, U> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CurvePair")
            .field("signature", &U::SIGNATURE)
            .field("F", &self.f)
            .field("G", &self.g)
            .finish()
    }
}

impl<S: Scalar, U: Unit> CurvePair<S, U> {
    pub fn new(f: UnitPoly<S, U>, g: UnitPoly<S, U>) -> Self {
        CurvePair { f, g }
    }

    /// `(z^a, z^b)`, the shape of the worked examples.
    pub fn monomials(a: usize, b: usize) -> Self {
        CurvePair::new(
            UnitPoly::monomial(Hyper::one(), a),
            UnitPoly::monomial(Hyper::one(), b),
        )
    }

    pub fn signature(&self) -> Signature {
        U::SIGNATURE
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.f.max_abs_coeff().max(self.g.max_abs_coeff())
    }

    pub fn to_f64(&self) -> CurvePair<f64, U> {
        CurvePair::new(self.f.to_f64(), self.g.to_f64())
    }
}

/// Curve of either signature, as read from a curve file.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyCurve {
    Indefinite(ParaCurve<Rational>),
    Lsc(HoloCurve<Rational>),
}

impl AnyCurve {
    pub fn signature(&self) -> Signature {
        match self {
            AnyCurve::Indefinite(_) => Signature::Indefinite,
            AnyCurve::Lsc(_) => Signature::Lsc,
        }
    }

    pub fn max_abs_coeff(&self) -> f64 {
        match self {
            AnyCurve::Indefinite(c) => c.max_abs_coeff(),
            AnyCurve::Lsc(c) => c.max_abs_coeff(),
        }
    }
}
