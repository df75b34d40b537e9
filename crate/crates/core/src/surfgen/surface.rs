use thiserror::Error;

use super::curve::CurvePair;
use super::jet::{assemble, normalize, Jet2, PolyJet};
use crate::paraalg::{BiPoly, Hyper, Signature, Unit, UnitPoly};
use crate::scalar::{Rational, Scalar};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SurfaceError {
    /// The potential's 1-form is not closed; the curve is not (para-)holomorphic.
    #[error("potential 1-form is not closed (largest defect coefficient {defect})")]
    ClosednessViolation { defect: f64 },
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
}

/// The five polynomial fields of a surface: position `(x1, x2, phi)` and
/// conormal `(n1, n2, 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceFields<S: Scalar> {
    pub x1: BiPoly<S>,
    pub x2: BiPoly<S>,
    pub phi: BiPoly<S>,
    pub n1: BiPoly<S>,
    pub n2: BiPoly<S>,
}

impl<S: Scalar> SurfaceFields<S> {
    pub fn to_f64(&self) -> SurfaceFields<f64> {
        SurfaceFields {
            x1: self.x1.to_f64(),
            x2: self.x2.to_f64(),
            phi: self.phi.to_f64(),
            n1: self.n1.to_f64(),
            n2: self.n2.to_f64(),
        }
    }

    /// Mutable access by field name (`x1`, `x2`, `phi`, `n1`, `n2`).
    pub fn field_mut(&mut self, name: &str) -> Option<&mut BiPoly<S>> {
        match name {
            "x1" => Some(&mut self.x1),
            "x2" => Some(&mut self.x2),
            "phi" => Some(&mut self.phi),
            "n1" => Some(&mut self.n1),
            "n2" => Some(&mut self.n2),
            _ => None,
        }
    }
}

/// Float jets of the five fields, for pointwise evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldJets {
    pub x1: PolyJet<f64>,
    pub x2: PolyJet<f64>,
    pub phi: PolyJet<f64>,
    pub n1: PolyJet<f64>,
    pub n2: PolyJet<f64>,
}

impl FieldJets {
    pub fn new<S: Scalar>(fields: &SurfaceFields<S>) -> Self {
        FieldJets {
            x1: PolyJet::new(fields.x1.clone()).to_f64(),
            x2: PolyJet::new(fields.x2.clone()).to_f64(),
            phi: PolyJet::new(fields.phi.clone()).to_f64(),
            n1: PolyJet::new(fields.n1.clone()).to_f64(),
            n2: PolyJet::new(fields.n2.clone()).to_f64(),
        }
    }

    pub fn position_jet(&self, u: f64, v: f64) -> Jet2<3> {
        assemble([self.x1.at(u, v), self.x2.at(u, v), self.phi.at(u, v)])
    }

    /// Jet of the conormal `(n1, n2, 1)`.
    pub fn conormal_jet(&self, u: f64, v: f64) -> Jet2<3> {
        assemble([
            self.n1.at(u, v),
            self.n2.at(u, v),
            [1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        ])
    }

    pub fn unit_normal_jet(&self, u: f64, v: f64) -> Jet2<3> {
        normalize(&self.conormal_jet(u, v))
    }
}

/// Which map a jet is taken of.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JetTarget {
    Position,
    UnitNormal,
    Conormal,
}

/// One evaluated point of a surface.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SurfaceSample {
    pub position: [f64; 3],
    pub conormal: [f64; 3],
    pub unit_normal: [f64; 3],
    pub domain_point: [f64; 2],
}

/// A surface synthesized from a curve pair, held exactly and as float jets.
#[derive(Clone, Debug)]
pub struct Surface<U: Unit> {
    curve: CurvePair<Rational, U>,
    exact: SurfaceFields<Rational>,
    jets: FieldJets,
    fp: UnitPoly<f64, U>,
    gp: UnitPoly<f64, U>,
    fpp: UnitPoly<f64, U>,
    gpp: UnitPoly<f64, U>,
}

/// Potential of an indefinite surface from the components of `F` and `G`:
/// integrates `φ_u = −{(f¹+g¹)(f¹_u−g¹_u) + (−f²+g²)(f²_u+g²_u)}` and
/// `φ_v = −{(f¹+g¹)(f²_u−g²_u) + (−f²+g²)(f¹_u+g¹_u)}` with `φ(0,0) = 0`,
/// after checking that the two are compatible.
pub fn phi_from_components(
    f1: &BiPoly<Rational>,
    f2: &BiPoly<Rational>,
    g1: &BiPoly<Rational>,
    g2: &BiPoly<Rational>,
) -> Result<BiPoly<Rational>, SurfaceError> {
    let (f1u, f2u, g1u, g2u) = (
        f1.partial_u(),
        f2.partial_u(),
        g1.partial_u(),
        g2.partial_u(),
    );
    let n1 = f1 + g1;
    let n2 = g2 - f2;
    let p = -(&(&n1 * &(&f1u - &g1u)) + &(&n2 * &(&f2u + &g2u)));
    let q = -(&(&n1 * &(&f2u - &g2u)) + &(&n2 * &(&f1u + &g1u)));
    let defect = &p.partial_v() - &q.partial_u();
    if !defect.is_zero() {
        return Err(SurfaceError::ClosednessViolation {
            defect: defect.max_abs_coeff(),
        });
    }
    let along_u = p.integrate_u();
    let rest = &q - &along_u.partial_v();
    debug_assert!(rest.is_free_of_u());
    Ok(&along_u + &rest.integrate_v())
}

/// Exact potential `Φ` of the indefinite surface of `(F, G)`.
pub fn phi_potential<U: Unit>(
    curve: &CurvePair<Rational, U>,
) -> Result<BiPoly<Rational>, SurfaceError> {
    let (f1, f2) = curve.f.components();
    let (g1, g2) = curve.g.components();
    phi_from_components(&f1, &f2, &g1, &g2)
}

/// Potential of the locally strongly convex surface:
/// `½(|G|² − |F|²) + Re(GF) − 2 Re ∫ F G′ dz`, the integral vanishing at 0.
pub fn lsc_potential<U: Unit>(curve: &CurvePair<Rational, U>) -> BiPoly<Rational> {
    let (f1, f2) = curve.f.components();
    let (g1, g2) = curve.g.components();
    let squares = &(&(&g1 * &g1) + &(&g2 * &g2)) - &(&(&f1 * &f1) + &(&f2 * &f2));
    let (gf, _) = (&curve.g * &curve.f).components();
    let (h, _) = (&curve.f * &curve.g.derive()).antiderivative().components();
    let two = Rational::from_i64(2);
    &(&squares.scale(&Rational::one().div_int(2)) + &gf) - &h.scale(&two)
}

fn fields_of<U: Unit>(
    curve: &CurvePair<Rational, U>,
) -> Result<SurfaceFields<Rational>, SurfaceError> {
    let (f1, f2) = curve.f.components();
    let (g1, g2) = curve.g.components();
    Ok(match U::SIGNATURE {
        Signature::Indefinite => SurfaceFields {
            phi: phi_from_components(&f1, &f2, &g1, &g2)?,
            x1: &f1 - &g1,
            x2: &f2 + &g2,
            n1: &f1 + &g1,
            n2: &g2 - &f2,
        },
        Signature::Lsc => SurfaceFields {
            phi: lsc_potential(curve),
            x1: &f1 + &g1,
            x2: &g2 - &f2,
            n1: &f1 - &g1,
            n2: -(&f2 + &g2),
        },
    })
}

impl<U: Unit> Surface<U> {
    pub fn new(curve: CurvePair<Rational, U>) -> Result<Self, SurfaceError> {
        let exact = fields_of(&curve)?;
        let jets = FieldJets::new(&exact);
        let fp = curve.f.derive();
        let gp = curve.g.derive();
        Ok(Surface {
            fpp: fp.derive().to_f64(),
            gpp: gp.derive().to_f64(),
            fp: fp.to_f64(),
            gp: gp.to_f64(),
            curve,
            exact,
            jets,
        })
    }

    pub fn curve(&self) -> &CurvePair<Rational, U> {
        &self.curve
    }

    pub fn signature(&self) -> Signature {
        U::SIGNATURE
    }

    pub fn fields(&self) -> &SurfaceFields<Rational> {
        &self.exact
    }

    pub fn jets(&self) -> &FieldJets {
        &self.jets
    }

    /// Largest coefficient magnitude of `F` and `G`.
    pub fn coefficient_scale(&self) -> f64 {
        self.curve.max_abs_coeff()
    }

    /// Exact position `(x1, x2, φ)`.
    pub fn position_exact(&self, u: &Rational, v: &Rational) -> [Rational; 3] {
        [
            self.exact.x1.eval(u, v),
            self.exact.x2.eval(u, v),
            self.exact.phi.eval(u, v),
        ]
    }

    /// `(F′(z), G′(z))`; their components are `(f¹_u, f²_u)` and `(g¹_u, g²_u)`.
    pub fn derivatives(&self, u: f64, v: f64) -> (Hyper<f64, U>, Hyper<f64, U>) {
        let z = Hyper::new(u, v);
        (self.fp.eval(&z), self.gp.eval(&z))
    }

    /// Jacobian `[[x1_u, x1_v], [x2_u, x2_v]]` of `(u,v) ↦ (x1, x2)`, from
    /// `F′` and `G′` via the Cauchy-Riemann relations of the signature.
    pub fn chart_jacobian(&self, u: f64, v: f64) -> [[f64; 2]; 2] {
        let (f, g) = self.derivatives(u, v);
        match U::SIGNATURE {
            Signature::Indefinite => [[f.re - g.re, f.im - g.im], [f.im + g.im, f.re + g.re]],
            Signature::Lsc => [[f.re + g.re, -(f.im + g.im)], [g.im - f.im, g.re - f.re]],
        }
    }

    /// Exact signed area density as a polynomial.
    pub fn density_poly(&self) -> BiPoly<Rational> {
        let modulus = |p: &UnitPoly<Rational, U>| {
            let (a, b) = p.derive().components();
            &(&a * &a) - &(&b * &b).scale(&Rational::from_i64(U::SQUARE))
        };
        let diff = &modulus(&self.curve.f) - &modulus(&self.curve.g);
        match U::SIGNATURE {
            Signature::Indefinite => diff,
            Signature::Lsc => -diff,
        }
    }

    fn orientation(&self) -> f64 {
        match U::SIGNATURE {
            Signature::Indefinite => 1.0,
            Signature::Lsc => -1.0,
        }
    }

    /// Signed area density `λ`, the Jacobian determinant of `(u,v) ↦ (x1, x2)`.
    pub fn density(&self, u: f64, v: f64) -> f64 {
        let (f, g) = self.derivatives(u, v);
        self.orientation() * (f.modulus() - g.modulus())
    }

    pub fn density_gradient(&self, u: f64, v: f64) -> [f64; 2] {
        let z = Hyper::new(u, v);
        let s = U::SQUARE as f64;
        let grad = |p: &UnitPoly<f64, U>, pp: &UnitPoly<f64, U>| {
            let Hyper { re: a, im: b, .. } = p.eval(&z);
            let Hyper { re: c, im: d, .. } = pp.eval(&z);
            [2.0 * (a * c - s * b * d), 2.0 * s * (a * d - b * c)]
        };
        let gf = grad(&self.fp, &self.fpp);
        let gg = grad(&self.gp, &self.gpp);
        let o = self.orientation();
        [o * (gf[0] - gg[0]), o * (gf[1] - gg[1])]
    }

    pub fn jet(&self, u: f64, v: f64, which: JetTarget) -> Jet2<3> {
        match which {
            JetTarget::Position => self.jets.position_jet(u, v),
            JetTarget::Conormal => self.jets.conormal_jet(u, v),
            JetTarget::UnitNormal => self.jets.unit_normal_jet(u, v),
        }
    }

    pub fn sample(&self, u: f64, v: f64) -> SurfaceSample {
        let j = &self.jets;
        let conormal = [j.n1.p.at(u, v), j.n2.p.at(u, v), 1.0];
        let len = (conormal[0] * conormal[0] + conormal[1] * conormal[1] + 1.0).sqrt();
        SurfaceSample {
            position: [j.x1.p.at(u, v), j.x2.p.at(u, v), j.phi.p.at(u, v)],
            conormal,
            unit_normal: [conormal[0] / len, conormal[1] / len, 1.0 / len],
            domain_point: [u, v],
        }
    }
}

/// Samples the indefinite surface of `curve` at one point.
pub fn synth_indefinite(
    curve: &CurvePair<Rational, crate::paraalg::Split>,
    p: [f64; 2],
) -> Result<SurfaceSample, SurfaceError> {
    Ok(Surface::new(curve.clone())?.sample(p[0], p[1]))
}

/// Samples the locally strongly convex surface of `curve` at one point.
pub fn synth_lsc(
    curve: &CurvePair<Rational, crate::paraalg::Imag>,
    p: [f64; 2],
) -> Result<SurfaceSample, SurfaceError> {
    Ok(Surface::new(curve.clone())?.sample(p[0], p[1]))
}
