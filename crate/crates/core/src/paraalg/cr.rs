//! Finite-difference residuals of the para-Cauchy-Riemann equations
//! `f¹_u = f²_v`, `f¹_v = f²_u` for a black-box planar map.

/// Default central-difference step for float-mode checks.
pub const DEFAULT_STEP: f64 = 1e-5;

/// Returns `(f¹_u − f²_v, f¹_v − f²_u)` at `p` from central differences
/// with step `h`. Errors from the map are propagated.
pub fn para_cr_residual<E, M>(map: M, p: [f64; 2], h: f64) -> Result<(f64, f64), E>
where
    M: Fn(f64, f64) -> Result<[f64; 2], E>,
{
    let [u, v] = p;
    let up = map(u + h, v)?;
    let um = map(u - h, v)?;
    let vp = map(u, v + h)?;
    let vm = map(u, v - h)?;
    let d_du = [(up[0] - um[0]) / (2.0 * h), (up[1] - um[1]) / (2.0 * h)];
    let d_dv = [(vp[0] - vm[0]) / (2.0 * h), (vp[1] - vm[1]) / (2.0 * h)];
    Ok((d_du[0] - d_dv[1], d_dv[0] - d_du[1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paraalg::number::Hyper;
    use crate::paraalg::poly::ParaPoly;
    use std::convert::Infallible;

    fn eval_map(p: &ParaPoly<f64>) -> impl Fn(f64, f64) -> Result<[f64; 2], Infallible> + '_ {
        move |u, v| {
            let w = p.eval(&Hyper::new(u, v));
            Ok([w.re, w.im])
        }
    }

    #[test]
    fn z_squared_is_para_holomorphic() {
        let h = DEFAULT_STEP;
        let p = ParaPoly::<f64>::monomial(Hyper::one(), 2);
        for pt in [[0.0, 0.0], [0.3, -1.2], [2.0, 1.5]] {
            let (a, b) = para_cr_residual(eval_map(&p), pt, h).unwrap();
            assert!(
                a.abs() <= 10.0 * h * h && b.abs() <= 10.0 * h * h,
                "{a} {b}"
            );
        }
    }

    #[test]
    fn non_holomorphic_map_has_unit_residual() {
        let (a, b) = para_cr_residual(
            |u, _v| Ok::<_, Infallible>([u, 0.0]),
            [0.0, 0.0],
            DEFAULT_STEP,
        )
        .unwrap();
        assert!((a - 1.0).abs() < 1e-9);
        assert!(b.abs() < 1e-12);
    }

    #[test]
    fn cubic_plus_linear_at_one_two() {
        let p = &ParaPoly::<f64>::monomial(Hyper::one(), 3) + &ParaPoly::z();
        let (a, b) = para_cr_residual(eval_map(&p), [1.0, 2.0], DEFAULT_STEP).unwrap();
        assert!(a.abs() < 1e-6 && b.abs() < 1e-6, "{a} {b}");
    }

    #[test]
    fn map_errors_propagate() {
        let r = para_cr_residual(|_, _| Err::<[f64; 2], _>("boom"), [0.0, 0.0], 0.1);
        assert_eq!(r, Err("boom"));
    }
}
