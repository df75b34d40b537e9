//! Two-dimensional real algebras `R[e]/(e² − s)`: split-complex (`s = +1`)
//! and complex (`s = −1`) numbers share one implementation.

use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;

/// Which real algebra the imaginary unit generates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Signature {
    /// Split-complex unit `j` with `j² = 1`; drives indefinite surfaces.
    Indefinite,
    /// Complex unit `i` with `i² = −1`; drives locally strongly convex surfaces.
    Lsc,
}

impl Signature {
    pub fn as_str(self) -> &'static str {
        match self {
            Signature::Indefinite => "indefinite",
            Signature::Lsc => "lsc",
        }
    }
}

/// Type-level marker for the imaginary unit.
pub trait Unit: Copy + Default + fmt::Debug + PartialEq + Send + Sync + 'static {
    /// Square of the unit: `+1` or `−1`.
    const SQUARE: i64;
    const SIGNATURE: Signature;
}

/// `j² = 1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Split;

/// `i² = −1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Imag;

impl Unit for Split {
    const SQUARE: i64 = 1;
    const SIGNATURE: Signature = Signature::Indefinite;
}

impl Unit for Imag {
    const SQUARE: i64 = -1;
    const SIGNATURE: Signature = Signature::Lsc;
}

/// `re + e·im` with `e² = U::SQUARE`.
///
/// There is deliberately no division: the split-complex ring has zero
/// divisors on the null cone `re = ±im`.
pub struct Hyper<S, U> {
    pub re: S,
    pub im: S,
    _unit: PhantomData<U>,
}

/// Split-complex number `u + j v`, `j² = 1`.
pub type ParaComplex<S> = Hyper<S, Split>;
/// Complex number `u + i v`.
pub type Complex<S> = Hyper<S, Imag>;

impl<S: Clone, U> Clone for Hyper<S, U> {
    fn clone(&self) -> Self {
        Hyper::new(self.re.clone(), self.im.clone())
    }
}

impl<S: Copy, U> Copy for Hyper<S, U> {}

impl<S: PartialEq, U> PartialEq for Hyper<S, U> {
    fn eq(&self, other: &Self) -> bool {
        self.re == other.re && self.im == other.im
    }
}

impl<S: fmt::Debug, U: Unit> fmt::Debug for Hyper<S, U> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let unit = if U::SQUARE > 0 { "j" } else { "i" };
        write!(f, "({:?} + {unit}·{:?})", self.re, self.im)
    }
}

impl<S, U> Hyper<S, U> {
    pub const fn new(re: S, im: S) -> Self {
        Hyper {
            re,
            im,
            _unit: PhantomData,
        }
    }
}

impl<S: Scalar, U: Unit> Hyper<S, U> {
    pub fn zero() -> Self {
        Hyper::new(S::zero(), S::zero())
    }

    pub fn one() -> Self {
        Hyper::new(S::one(), S::zero())
    }

    /// The imaginary unit itself.
    pub fn unit() -> Self {
        Hyper::new(S::zero(), S::one())
    }

    pub fn real(re: S) -> Self {
        Hyper::new(re, S::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Hyper::new(self.re.clone(), -self.im.clone())
    }

    /// `z·z̄ = re² − s·im²`. For split-complex numbers this is `u² − v²` and
    /// may be zero or negative; it is not a norm.
    pub fn modulus(&self) -> S {
        let re2 = self.re.clone() * self.re.clone();
        let im2 = self.im.clone() * self.im.clone();
        if U::SQUARE > 0 {
            re2 - im2
        } else {
            re2 + im2
        }
    }

    pub fn scale(&self, k: &S) -> Self {
        Hyper::new(self.re.clone() * k.clone(), self.im.clone() * k.clone())
    }

    pub fn to_f64(&self) -> Hyper<f64, U> {
        Hyper::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc * self.clone();
        }
        acc
    }
}

impl<S: Scalar, U: Unit> Add for Hyper<S, U> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Hyper::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl<S: Scalar, U: Unit> Sub for Hyper<S, U> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Hyper::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl<S: Scalar, U: Unit> Neg for Hyper<S, U> {
    type Output = Self;
    fn neg(self) -> Self {
        Hyper::new(-self.re, -self.im)
    }
}

impl<S: Scalar, U: Unit> Mul for Hyper<S, U> {
    type Output = Self;
    /// `(a + e b)(c + e d) = (ac + s·bd) + e(ad + bc)`.
    fn mul(self, rhs: Self) -> Self {
        let bd = self.im.clone() * rhs.im.clone();
        let re = if U::SQUARE > 0 {
            self.re.clone() * rhs.re.clone() + bd
        } else {
            self.re.clone() * rhs.re.clone() - bd
        };
        let im = self.re * rhs.im + self.im * rhs.re;
        Hyper::new(re, im)
    }
}
