//! JSON encodings of polynomials, curve files, conversion data and reports.
//!
//! A polynomial is an array of `[re, im]` pairs indexed by the power of `z`.
//! Coefficients are written as `"p/q"` strings and read from strings or
//! plain JSON numbers (decimals are taken exactly as written).

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::convert::Blaschke;
use crate::paraalg::{Hyper, Poly, PolyError, Signature, Unit, UnitPoly};
use crate::scalar::{parse_rational, Rational};
use crate::singlab::{ClassificationReport, Evidence};
use crate::surfgen::{AnyCurve, CurvePair};
use crate::verify::ResidualReport;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Schema(String),
    #[error("invalid coefficient {0}")]
    Coefficient(String),
    #[error(transparent)]
    Degree(#[from] PolyError),
}

fn schema(msg: impl Into<String>) -> FormatError {
    FormatError::Schema(msg.into())
}

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn rational_from_json(v: &Value) -> Result<Rational, FormatError> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        other => return Err(FormatError::Coefficient(other.to_string())),
    };
    parse_rational(&text).ok_or(FormatError::Coefficient(text))
}

pub fn poly_to_json<U: Unit>(p: &UnitPoly<Rational, U>) -> Value {
    Value::Array(
        p.coeffs()
            .iter()
            .map(|c| json!([rational_to_json(&c.re), rational_to_json(&c.im)]))
            .collect(),
    )
}

pub fn poly_from_json<U: Unit>(v: &Value) -> Result<UnitPoly<Rational, U>, FormatError> {
    let items = v
        .as_array()
        .ok_or_else(|| schema("polynomial must be an array of [re, im] pairs"))?;
    let coeffs = items
        .iter()
        .map(|pair| match pair.as_array().map(Vec::as_slice) {
            Some([re, im]) => Ok(Hyper::new(rational_from_json(re)?, rational_from_json(im)?)),
            _ => Err(schema(format!(
                "coefficient {pair} is not an [re, im] pair"
            ))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(UnitPoly::new(coeffs)?)
}

pub fn real_poly_to_json(p: &Poly<Rational>) -> Value {
    Value::Array(p.coeffs().iter().map(rational_to_json).collect())
}

pub fn real_poly_from_json(v: &Value) -> Result<Poly<Rational>, FormatError> {
    let items = v
        .as_array()
        .ok_or_else(|| schema("real polynomial must be an array of coefficients"))?;
    let coeffs = items
        .iter()
        .map(rational_from_json)
        .collect::<Result<Vec<_>, _>>()?;
    if coeffs.len() > crate::paraalg::MAX_DEGREE + 1 {
        return Err(schema(format!(
            "degree exceeds {}",
            crate::paraalg::MAX_DEGREE
        )));
    }
    Ok(Poly::new(coeffs))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value, FormatError> {
    obj.get(key)
        .ok_or_else(|| schema(format!("missing field \"{key}\"")))
}

fn parse_signature(v: &Value) -> Result<Signature, FormatError> {
    match v.as_str() {
        Some("indefinite") => Ok(Signature::Indefinite),
        Some("lsc") => Ok(Signature::Lsc),
        _ => Err(schema(format!(
            "signature must be \"indefinite\" or \"lsc\", got {v}"
        ))),
    }
}

fn pair_to_json<U: Unit>(c: &CurvePair<Rational, U>) -> Value {
    json!({ "signature": U::SIGNATURE.as_str(), "F": poly_to_json(&c.f), "G": poly_to_json(&c.g) })
}

pub fn curve_to_json(curve: &AnyCurve) -> Value {
    match curve {
        AnyCurve::Indefinite(c) => pair_to_json(c),
        AnyCurve::Lsc(c) => pair_to_json(c),
    }
}

/// Post-synthesis corruption of surface fields, used for negative controls.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Perturb {
    /// Fields among `x1, x2, phi, n1, n2` replaced by their negatives.
    pub negate: Vec<String>,
}

pub const FIELD_NAMES: [&str; 5] = ["x1", "x2", "phi", "n1", "n2"];

#[derive(Clone, Debug, PartialEq)]
pub struct CurveFile {
    pub curve: AnyCurve,
    pub perturb: Perturb,
}

fn parse_perturb(v: &Value) -> Result<Perturb, FormatError> {
    let obj = v
        .as_object()
        .ok_or_else(|| schema("perturb must be an object"))?;
    let mut p = Perturb::default();
    for (k, val) in obj {
        match k.as_str() {
            "negate" => {
                let names = val
                    .as_array()
                    .ok_or_else(|| schema("perturb.negate must be an array"))?;
                for n in names {
                    match n.as_str() {
                        Some(s) if FIELD_NAMES.contains(&s) => p.negate.push(s.to_string()),
                        _ => return Err(schema(format!("unknown field {n} in perturb.negate"))),
                    }
                }
            }
            other => return Err(schema(format!("unknown perturbation \"{other}\""))),
        }
    }
    Ok(p)
}

pub fn curve_from_value(v: &Value) -> Result<AnyCurve, FormatError> {
    let obj = v
        .as_object()
        .ok_or_else(|| schema("curve file must be a JSON object"))?;
    Ok(match parse_signature(field(obj, "signature")?)? {
        Signature::Indefinite => AnyCurve::Indefinite(CurvePair::new(
            poly_from_json(field(obj, "F")?)?,
            poly_from_json(field(obj, "G")?)?,
        )),
        Signature::Lsc => AnyCurve::Lsc(CurvePair::new(
            poly_from_json(field(obj, "F")?)?,
            poly_from_json(field(obj, "G")?)?,
        )),
    })
}

pub fn parse_curve_file(text: &str) -> Result<CurveFile, FormatError> {
    let v: Value = serde_json::from_str(text)?;
    let curve = curve_from_value(&v)?;
    let perturb = match v.get("perturb") {
        Some(p) => parse_perturb(p)?,
        None => Perturb::default(),
    };
    Ok(CurveFile { curve, perturb })
}

/// Potential for the one-function conversions: a bare polynomial array or
/// an object `{"f": [...]}`.
pub fn parse_potential<U: Unit>(text: &str) -> Result<UnitPoly<Rational, U>, FormatError> {
    let v: Value = serde_json::from_str(text)?;
    match &v {
        Value::Array(_) => poly_from_json(&v),
        Value::Object(obj) => poly_from_json(field(obj, "f")?),
        _ => Err(schema(
            "potential must be a polynomial array or an object with field \"f\"",
        )),
    }
}

pub fn blaschke_to_json(b: &Blaschke<Rational>) -> Value {
    json!({
        "U1": real_poly_to_json(&b.u1),
        "V1": real_poly_to_json(&b.v1),
        "U2": real_poly_to_json(&b.u2),
        "V2": real_poly_to_json(&b.v2),
    })
}

pub fn parse_blaschke(text: &str) -> Result<Blaschke<Rational>, FormatError> {
    let v: Value = serde_json::from_str(text)?;
    let obj = v
        .as_object()
        .ok_or_else(|| schema("expected an object with fields U1, V1, U2, V2"))?;
    Ok(Blaschke {
        u1: real_poly_from_json(field(obj, "U1")?)?,
        v1: real_poly_from_json(field(obj, "V1")?)?,
        u2: real_poly_from_json(field(obj, "U2")?)?,
        v2: real_poly_from_json(field(obj, "V2")?)?,
    })
}

/// Non-finite numbers become `null`.
fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

fn opt(x: Option<f64>) -> Value {
    x.map_or(Value::Null, num)
}

fn point(p: [f64; 2]) -> Value {
    json!([num(p[0]), num(p[1])])
}

fn evidence_to_json(e: &Evidence) -> Value {
    json!({
        "lambda": num(e.lambda),
        "grad_norm": num(e.grad_norm),
        "det_ge": opt(e.det_ge),
        "ddet_ge": opt(e.ddet_ge),
        "psi0": opt(e.psi0),
        "dpsi0": opt(e.dpsi0),
        "lift_rank": e.lift_rank,
        "degenerate": e.degenerate,
    })
}

pub fn report_to_json(curve: &AnyCurve, r: &ClassificationReport) -> Value {
    let d = &r.domain;
    let points: Vec<Value> = r
        .points
        .iter()
        .map(|p| {
            let mut o = Map::new();
            o.insert("u".into(), num(p.point[0]));
            o.insert("v".into(), num(p.point[1]));
            match &p.outcome {
                Ok(c) => {
                    o.insert("class".into(), json!(c.class.as_str()));
                    o.insert("evidence".into(), evidence_to_json(&c.evidence));
                }
                Err(e) => {
                    o.insert("class".into(), Value::Null);
                    o.insert("error".into(), json!(e.to_string()));
                }
            }
            if let Some(q) = p.requested {
                o.insert("probe".into(), point(q));
            }
            Value::Object(o)
        })
        .collect();
    json!({
        "curve": curve_to_json(curve),
        "domain": [num(d.u0), num(d.u1), num(d.v0), num(d.v1)],
        "singular_curves": r.curves.iter().map(|c| c.points.iter().map(|p| point(*p)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "points": points,
        "swallowtails": r.swallowtails.iter().map(|p| point(*p)).collect::<Vec<_>>(),
    })
}

pub fn residuals_to_json(reports: &[ResidualReport]) -> Value {
    Value::Array(
        reports
            .iter()
            .map(|r| {
                json!({
                    "name": r.name,
                    "max_abs": num(r.max_abs),
                    "mean_abs": num(r.mean_abs),
                    "points_checked": r.points_checked,
                    "tolerance": num(r.tolerance),
                    "pass": r.pass,
                })
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paraalg::{ParaPoly, Split};
    use crate::scalar::ratio;
    use crate::surfgen::ParaCurve;

    #[test]
    fn z_squared_encoding() {
        let p = ParaPoly::<Rational>::monomial(Hyper::one(), 2);
        assert_eq!(
            poly_to_json(&p).to_string(),
            r#"[["0","0"],["0","0"],["1","0"]]"#
        );
        let back: UnitPoly<Rational, Split> =
            poly_from_json(&serde_json::from_str("[[0,0],[0,0],[1,0]]").unwrap()).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn mixed_coefficient_forms() {
        let v: Value = serde_json::from_str(r#"[["-1/7", 0.25], [3, "2e-1"]]"#).unwrap();
        let p: ParaPoly<Rational> = poly_from_json(&v).unwrap();
        assert_eq!(p.coeff(0), Hyper::new(ratio(-1, 7), ratio(1, 4)));
        assert_eq!(p.coeff(1), Hyper::new(ratio(3, 1), ratio(1, 5)));
        assert_eq!(
            poly_to_json(&p).to_string(),
            r#"[["-1/7","1/4"],["3","1/5"]]"#
        );
    }

    #[test]
    fn rejects_bad_input() {
        let bad = [
            r#"{"signature":"indefinite","F":[[1,0]]}"#,
            r#"{"signature":"elliptic","F":[],"G":[]}"#,
            r#"{"signature":"lsc","F":[[1]],"G":[]}"#,
            r#"{"signature":"lsc","F":[["1/0",0]],"G":[]}"#,
            r#"{"signature":"lsc","F":[],"G":[],"perturb":{"negate":["q"]}}"#,
            r#"[1,2"#,
        ];
        for text in bad {
            assert!(parse_curve_file(text).is_err(), "{text}");
        }
        let long = format!(
            r#"{{"signature":"lsc","F":[{}],"G":[]}}"#,
            vec!["[1,0]"; 40].join(",")
        );
        assert!(matches!(
            parse_curve_file(&long),
            Err(FormatError::Degree(_))
        ));
    }

    #[test]
    fn curve_file_round_trip() {
        let c = AnyCurve::Indefinite(ParaCurve::monomials(2, 3));
        let text = curve_to_json(&c).to_string();
        let back = parse_curve_file(&text).unwrap();
        assert_eq!(back.curve, c);
        assert!(back.perturb.negate.is_empty());
        let mut v = curve_to_json(&c);
        v["perturb"] = json!({"negate": ["n2"]});
        assert_eq!(
            parse_curve_file(&v.to_string()).unwrap().perturb.negate,
            vec!["n2".to_string()]
        );
    }

    #[test]
    fn potential_forms() {
        let a: ParaPoly<Rational> = parse_potential("[[0,0],[0,0],[\"1/2\",0]]").unwrap();
        let b: ParaPoly<Rational> = parse_potential(r#"{"f": [[0,0],[0,0],["1/2",0]]}"#).unwrap();
        assert_eq!(a, b);
        assert!(parse_potential::<Split>(r#"{"g": []}"#).is_err());
    }

    #[test]
    fn blaschke_text_round_trip() {
        let b = crate::convert::curve_to_blaschke(&ParaCurve::<Rational>::monomials(2, 3));
        let text = blaschke_to_json(&b).to_string();
        assert_eq!(parse_blaschke(&text).unwrap(), b);
    }
}
