//! Sparse bivariate polynomials in `(u, v)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;

/// `Σ c_{ij} u^i v^j`, zero coefficients never stored.
#[derive(Clone, PartialEq)]
pub struct BiPoly<S> {
    terms: BTreeMap<(u32, u32), S>,
}

impl<S: Scalar> Default for BiPoly<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> BiPoly<S> {
    pub fn zero() -> Self {
        BiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: S) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: S, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    /// The coordinate function `u`.
    pub fn u() -> Self {
        Self::monomial(S::one(), 1, 0)
    }

    /// The coordinate function `v`.
    pub fn v() -> Self {
        Self::monomial(S::one(), 0, 1)
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), S)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for ((i, j), c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    fn add_term(&mut self, i: u32, j: u32, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&(i, j)) {
            Some(existing) => {
                let sum = existing + c;
                if !sum.is_zero() {
                    self.terms.insert((i, j), sum);
                }
            }
            None => {
                self.terms.insert((i, j), c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `u^i v^j`.
    pub fn coeff(&self, i: u32, j: u32) -> S {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(S::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &S)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(Scalar::abs_f64).fold(0.0, f64::max)
    }

    /// True when no monomial contains `u`.
    pub fn is_free_of_u(&self) -> bool {
        self.terms.keys().all(|(i, _)| *i == 0)
    }

    pub fn scale(&self, k: &S) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(key, c)| (*key, c.clone() * k.clone())),
        )
    }

    pub fn partial_u(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|((i, _), _)| *i > 0)
                .map(|((i, j), c)| ((i - 1, *j), c.clone() * S::from_i64(*i as i64))),
        )
    }

    pub fn partial_v(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|((_, j), _)| *j > 0)
                .map(|((i, j), c)| ((*i, j - 1), c.clone() * S::from_i64(*j as i64))),
        )
    }

    /// `∫_0^u p(s, v) ds`.
    pub fn integrate_u(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|((i, j), c)| ((i + 1, *j), c.div_int(*i as i64 + 1))),
        )
    }

    /// `∫_0^v p(u, s) ds`.
    pub fn integrate_v(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|((i, j), c)| ((*i, j + 1), c.div_int(*j as i64 + 1))),
        )
    }

    pub fn eval(&self, u: &S, v: &S) -> S {
        let (du, dv) = self.degrees();
        let upow = powers(u, du);
        let vpow = powers(v, dv);
        self.terms.iter().fold(S::zero(), |acc, ((i, j), c)| {
            acc + c.clone() * upow[*i as usize].clone() * vpow[*j as usize].clone()
        })
    }

    fn degrees(&self) -> (u32, u32) {
        self.terms
            .keys()
            .fold((0, 0), |(a, b), (i, j)| (a.max(*i), b.max(*j)))
    }

    pub fn to_f64(&self) -> BiPoly<f64> {
        BiPoly::from_terms(self.terms.iter().map(|(k, c)| (*k, c.to_f64())))
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> BiPoly<T> {
        BiPoly::from_terms(self.terms.iter().map(|(k, c)| (*k, f(c))))
    }
}

impl BiPoly<f64> {
    /// Float evaluation with cached powers.
    pub fn at(&self, u: f64, v: f64) -> f64 {
        self.eval(&u, &v)
    }
}

fn powers<S: Scalar>(x: &S, n: u32) -> Vec<S> {
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(S::one());
    for k in 0..n as usize {
        out.push(out[k].clone() * x.clone());
    }
    out
}

impl<S: Scalar> Add for &BiPoly<S> {
    type Output = BiPoly<S>;
    fn add(self, rhs: &BiPoly<S>) -> BiPoly<S> {
        let mut out = self.clone();
        for ((i, j), c) in &rhs.terms {
            out.add_term(*i, *j, c.clone());
        }
        out
    }
}

impl<S: Scalar> Sub for &BiPoly<S> {
    type Output = BiPoly<S>;
    fn sub(self, rhs: &BiPoly<S>) -> BiPoly<S> {
        let mut out = self.clone();
        for ((i, j), c) in &rhs.terms {
            out.add_term(*i, *j, -c.clone());
        }
        out
    }
}

impl<S: Scalar> Mul for &BiPoly<S> {
    type Output = BiPoly<S>;
    fn mul(self, rhs: &BiPoly<S>) -> BiPoly<S> {
        let mut out = BiPoly::zero();
        for ((i1, j1), a) in &self.terms {
            for ((i2, j2), b) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, a.clone() * b.clone());
            }
        }
        out
    }
}

impl<S: Scalar> Neg for &BiPoly<S> {
    type Output = BiPoly<S>;
    fn neg(self) -> BiPoly<S> {
        BiPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<S: Scalar> $tr for BiPoly<S> {
            type Output = BiPoly<S>;
            fn $m(self, rhs: BiPoly<S>) -> BiPoly<S> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<S: Scalar> Neg for BiPoly<S> {
    type Output = BiPoly<S>;
    fn neg(self) -> BiPoly<S> {
        -&self
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for BiPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Graded order, highest total degree last, so printouts read like hand-written formulas.
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|(i, j)| (i + j, std::cmp::Reverse(*i)));
        for (n, (i, j)) in keys.into_iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})", self.terms[&(i, j)])?;
            match i {
                0 => {}
                1 => write!(f, "·u")?,
                _ => write!(f, "·u^{i}")?,
            }
            match j {
                0 => {}
                1 => write!(f, "·v")?,
                _ => write!(f, "·v^{j}")?,
            }
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for BiPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}
