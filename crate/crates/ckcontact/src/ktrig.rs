//! The kappa-dependent cosine, sine and tangent.
//!
//! One parameter family interpolating circular (`kappa > 0`), parabolic
//! (`kappa = 0`) and hyperbolic (`kappa < 0`) trigonometry. These functions
//! underlie every metric, contact form and flow formula in the crate, and
//! they accept arbitrary real `kappa` so contraction limits can be swept
//! continuously.

use crate::ad::Scalar;
use crate::error::{CkError, Result};

/// Below this |C_kappa(x)| the kappa-tangent is treated as a pole; the zero
/// crossing is no longer resolvable in double precision.
pub const POLE_TOL: f64 = 1e-13;

/// C_kappa(x): cos(sqrt(k) x) for k > 0, 1 for k = 0, cosh(sqrt(-k) x) for k < 0.
pub fn ck_cos<S: Scalar>(kappa: f64, x: S) -> S {
    if kappa > 0.0 {
        (x * kappa.sqrt()).cos()
    } else if kappa < 0.0 {
        (x * (-kappa).sqrt()).cosh()
    } else {
        S::from_f64(1.0)
    }
}

/// S_kappa(x): sin(sqrt(k) x)/sqrt(k) for k > 0, x for k = 0,
/// sinh(sqrt(-k) x)/sqrt(-k) for k < 0.
pub fn ck_sin<S: Scalar>(kappa: f64, x: S) -> S {
    if kappa > 0.0 {
        let r = kappa.sqrt();
        (x * r).sin() / r
    } else if kappa < 0.0 {
        let r = (-kappa).sqrt();
        (x * r).sinh() / r
    } else {
        x
    }
}

/// T_kappa(x) = S_kappa(x) / C_kappa(x).
pub fn ck_tan<S: Scalar>(kappa: f64, x: S) -> Result<S> {
    let c = ck_cos(kappa, x);
    if c.value().abs() < POLE_TOL {
        return Err(CkError::Pole {
            x: x.value(),
            cos_abs: c.value().abs(),
        });
    }
    Ok(ck_sin(kappa, x) / c)
}

/// T_kappa without the pole check, for use inside evaluators whose chart
/// boxes already exclude the poles.
pub fn ck_tan_unchecked<S: Scalar>(kappa: f64, x: S) -> S {
    ck_sin(kappa, x) / ck_cos(kappa, x)
}

/// Inverse of C restricted to the principal branch, with the sign of the
/// angle recovered from a companion S value: returns `a` such that
/// C_kappa(a) = c/h and S_kappa(a) = s/h for the (unknown) positive scale h.
/// This is the kappa-analogue of `atan2`.
pub fn ck_atan2(kappa: f64, s: f64, c: f64) -> f64 {
    if kappa > 0.0 {
        let r = kappa.sqrt();
        (r * s).atan2(c) / r
    } else if kappa < 0.0 {
        let r = (-kappa).sqrt();
        (r * s / c).atanh() / r
    } else {
        s / c
    }
}

/// Inverse of S on the principal branch.
pub fn ck_asin(kappa: f64, s: f64) -> f64 {
    if kappa > 0.0 {
        let r = kappa.sqrt();
        (r * s).clamp(-1.0, 1.0).asin() / r
    } else if kappa < 0.0 {
        let r = (-kappa).sqrt();
        (r * s).asinh() / r
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ad::{DiffScalar, D1};
    use proptest::prelude::*;
    use std::f64::consts::PI;

    #[test]
    fn branch_values() {
        assert!((ck_cos(1.0, PI) - (-1.0)).abs() < 1e-15);
        assert_eq!(ck_cos(0.0, 2.5), 1.0);
        assert_eq!(ck_cos(-1.0, 0.0), 1.0);

        assert_eq!(ck_sin(0.0, 2.5), 2.5);
        assert!((ck_sin(1.0, PI / 2.0) - 1.0).abs() < 1e-15);
        assert!((ck_sin(-1.0, 1.0) - 1.0f64.sinh()).abs() < 1e-15);
        assert!((ck_sin(-1.0, 1.0) - 1.1752012).abs() < 1e-7);

        assert_eq!(ck_tan(0.0, 3.0).unwrap(), 3.0);
        assert!((ck_tan(1.0, PI / 4.0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn tan_pole_at_half_pi() {
        match ck_tan(1.0, PI / 2.0) {
            Err(CkError::Pole { .. }) => {}
            other => panic!("expected pole, got {other:?}"),
        }
    }

    #[test]
    fn derivative_identities_against_ad() {
        // d/dx C = -kappa S and d/dx S = C, at dual-number precision. On the
        // hyperbolic side the values grow like exp(sqrt(-kappa)|x|), so the
        // tolerance is scaled by the magnitude once it exceeds 1.
        for &kappa in &[-2.0, -1.0, -0.3, 0.0, 0.4, 1.0, 2.0] {
            for i in 0..=20 {
                let x = -10.0 + i as f64;
                let d = D1::variable(x);
                let dc = ck_cos(kappa, d).im;
                let ds = ck_sin(kappa, d).im;
                let scale_c = (kappa * ck_sin(kappa, x)).abs().max(1.0);
                let scale_s = ck_cos(kappa, x).abs().max(1.0);
                assert!(
                    (dc + kappa * ck_sin(kappa, x)).abs() < 1e-10 * scale_c,
                    "dC at kappa={kappa}, x={x}"
                );
                assert!(
                    (ds - ck_cos(kappa, x)).abs() < 1e-10 * scale_s,
                    "dS at kappa={kappa}, x={x}"
                );
                // Absolute form on the moderate box.
                if x.abs() <= 3.0 {
                    assert!((dc + kappa * ck_sin(kappa, x)).abs() < 1e-10);
                    assert!((ds - ck_cos(kappa, x)).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn tan_derivative_is_inverse_cos_squared() {
        let e = evaluator!(1, 1; move |p| vec![ck_tan_unchecked(0.7, p[0])]);
        let (_, jac) = f64::jacobian(&e, &[0.4]);
        let c = ck_cos(0.7, 0.4);
        assert!((jac[0][0] - 1.0 / (c * c)).abs() < 1e-12);
    }

    #[test]
    fn continuity_in_kappa_at_zero() {
        // The parabolic branch is the kappa -> 0 limit; the deviation at
        // kappa = +-1e-8 is bounded by the Taylor estimate |kappa| x^2 / 2.
        for i in 0..=40 {
            let x = -10.0 + 0.5 * i as f64;
            for kappa in [1e-8, -1e-8] {
                let dev = (ck_cos(kappa, x) - 1.0).abs();
                assert!(dev < 1e-6);
                assert!(dev <= kappa.abs() * x * x / 2.0 + 1e-12);
                let sdev = (ck_sin(kappa, x) - x).abs();
                assert!(sdev <= kappa.abs() * x.abs().powi(3) / 6.0 + 1e-12);
            }
        }
    }

    proptest! {
        #[test]
        fn pythagorean_identity(kappa in -2.0f64..2.0, x in -10.0f64..10.0) {
            // Residual scaled by the magnitude of the summed terms;
            // equivalent to the absolute bound wherever |C|, |S| <= 1.
            let c = ck_cos(kappa, x);
            let s = ck_sin(kappa, x);
            let scale = (c * c + (kappa * s * s).abs()).max(1.0);
            prop_assert!((c * c + kappa * s * s - 1.0).abs() < 1e-12 * scale);
        }

        #[test]
        fn double_angle(kappa in -2.0f64..2.0, x in -10.0f64..10.0) {
            let lhs = ck_sin(kappa, 2.0 * x);
            let rhs = 2.0 * ck_sin(kappa, x) * ck_cos(kappa, x);
            prop_assert!((lhs - rhs).abs() < 1e-12 * lhs.abs().max(1.0));
            let cl = ck_cos(kappa, 2.0 * x);
            let cr = ck_cos(kappa, x).powi(2) - kappa * ck_sin(kappa, x).powi(2);
            prop_assert!((cl - cr).abs() < 1e-11 * cl.abs().max(1.0));
        }
    }
}
