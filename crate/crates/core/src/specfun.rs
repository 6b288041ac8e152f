//! Complex logarithm and dilogarithm on the principal branch.
//!
//! `dilog` evaluates the power series directly for `|z| <= 1/2`. Other
//! arguments are first mapped into the closed unit disk with the inversion
//! relation and, when `Re z > 1/2`, moved next to the origin with the
//! reflection relation. What remains (`1/2 < |z| <= 1`, `Re z <= 1/2`) is
//! handled by the Bernoulli series in `u = -log(1 - z)`, for which
//! `|u| <= pi/3` on that region.
//!
//! On the cut `[1, inf)` the value continues from the lower half-plane,
//! i.e. `Im Li2(x) = -pi ln x` for real `x > 1`, which is what the
//! principal logarithm `log(-1) = i pi` produces in the integral
//! representation.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex scalar used throughout the crate.
pub type ComplexValue = Complex64;

const PI2_6: f64 = PI * PI / 6.0;

/// `B_{2k} / (2k+1)!` for k = 1..=10.
const BERNOULLI_COEFFS: [f64; 10] = [
    1.0 / 36.0,
    -1.0 / 3600.0,
    1.0 / 211_680.0,
    -1.0 / 10_886_400.0,
    1.0 / 526_901_760.0,
    -4.064_761_645_144_225_5e-11,
    8.921_691_020_456_452_6e-13,
    -1.993_929_586_072_107_6e-14,
    4.518_980_029_619_918_2e-16,
    -1.035_651_761_218_124_7e-17,
];

fn check_finite(z: ComplexValue, what: &str) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(format!("{what} argument {z}")))
    }
}

/// Turns a negative zero imaginary part into a positive one so that the
/// negative real axis always maps to `arg = +pi`.
#[inline]
fn canonical(z: ComplexValue) -> ComplexValue {
    ComplexValue::new(z.re, z.im + 0.0)
}

#[inline]
fn ln(z: ComplexValue) -> ComplexValue {
    canonical(z).ln()
}

/// Principal logarithm, imaginary part in `(-pi, pi]`.
pub fn principal_log(z: ComplexValue) -> Result<ComplexValue> {
    check_finite(z, "log")?;
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::Domain("log(0)".into()));
    }
    Ok(ln(z))
}

/// Dilogarithm `Li2(z)` on the principal branch (cut along `[1, inf)`).
pub fn dilog(z: ComplexValue) -> Result<ComplexValue> {
    check_finite(z, "dilog")?;
    Ok(dilog_unchecked(z))
}

pub(crate) fn dilog_unchecked(z: ComplexValue) -> ComplexValue {
    let z = canonical(z);
    if z.re == 0.0 && z.im == 0.0 {
        return ComplexValue::new(0.0, 0.0);
    }
    if z.re == 1.0 && z.im == 0.0 {
        return ComplexValue::new(PI2_6, 0.0);
    }
    if z.norm_sqr() > 1.0 {
        let log_minus = ln(-z);
        return -PI2_6 - 0.5 * log_minus * log_minus - dilog_unit_disk(z.inv());
    }
    dilog_unit_disk(z)
}

fn dilog_unit_disk(z: ComplexValue) -> ComplexValue {
    if z.norm_sqr() <= 0.25 {
        return dilog_power_series(z);
    }
    if z.re > 0.5 {
        let w = ComplexValue::new(1.0, 0.0) - z;
        return PI2_6 - ln(z) * ln(w) - dilog_kernel(w);
    }
    dilog_bernoulli(z)
}

fn dilog_kernel(z: ComplexValue) -> ComplexValue {
    if z.norm_sqr() <= 0.25 {
        dilog_power_series(z)
    } else {
        dilog_bernoulli(z)
    }
}

/// `sum z^n / n^2`, intended for `|z| <= 1/2`.
fn dilog_power_series(z: ComplexValue) -> ComplexValue {
    let mut sum = ComplexValue::new(0.0, 0.0);
    let mut power = z;
    for n in 1..200u32 {
        let k = n as f64;
        let term = power / (k * k);
        sum += term;
        if term.norm() <= 1e-18 * sum.norm() {
            break;
        }
        power *= z;
    }
    sum
}

/// Bernoulli series in `u = -log(1 - z)`; accurate while `|u|` stays well
/// below `2 pi`.
fn dilog_bernoulli(z: ComplexValue) -> ComplexValue {
    let u = -ln(ComplexValue::new(1.0, 0.0) - z);
    let u2 = u * u;
    let mut acc = ComplexValue::new(0.0, 0.0);
    for &c in BERNOULLI_COEFFS.iter().rev() {
        acc = acc * u2 + c;
    }
    u - 0.25 * u2 + u * u2 * acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> ComplexValue {
        ComplexValue::new(re, im)
    }

    #[test]
    fn log_examples() {
        assert_eq!(principal_log(c(1.0, 0.0)).unwrap(), c(0.0, 0.0));
        let w = principal_log(c(-1.0, 0.0)).unwrap();
        assert!(w.re.abs() < 1e-16 && (w.im - PI).abs() < 1e-15);
        let w = principal_log(c(-1.0, -0.0)).unwrap();
        assert!((w.im - PI).abs() < 1e-15);
        let w = principal_log(c(0.0, 2.0)).unwrap();
        assert!((w.re - 2f64.ln()).abs() < 1e-15 && (w.im - PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn log_of_zero_is_a_domain_error() {
        assert!(matches!(principal_log(c(0.0, 0.0)), Err(Error::Domain(_))));
        assert!(matches!(
            principal_log(c(f64::NAN, 0.0)),
            Err(Error::NonFinite(_))
        ));
    }

    #[test]
    fn dilog_special_values() {
        assert_eq!(dilog(c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        assert!((dilog(c(1.0, 0.0)).unwrap() - PI2_6).norm() < 1e-15);
        assert!((dilog(c(-1.0, 0.0)).unwrap() + PI * PI / 12.0).norm() < 1e-15);
        assert!((dilog(c(0.5, 0.0)).unwrap().re - (PI2_6 / 2.0 - 0.5 * 2f64.ln().powi(2))).abs() < 1e-15);
        assert!(dilog(c(f64::INFINITY, 0.0)).is_err());
    }

    #[test]
    fn coefficient_table_matches_bernoulli_numbers() {
        // B2..B20 as rationals.
        let b: [(f64, f64); 10] = [
            (1.0, 6.0),
            (-1.0, 30.0),
            (1.0, 42.0),
            (-1.0, 30.0),
            (5.0, 66.0),
            (-691.0, 2730.0),
            (7.0, 6.0),
            (-3617.0, 510.0),
            (43867.0, 798.0),
            (-174611.0, 330.0),
        ];
        let mut fact = 1.0;
        let mut m = 1.0;
        for (k, (num, den)) in b.iter().enumerate() {
            while m < (2 * k + 3) as f64 {
                m += 1.0;
                fact *= m;
            }
            let expect = num / den / fact;
            assert!(
                ((BERNOULLI_COEFFS[k] - expect) / expect).abs() < 1e-14,
                "k={k}: {} vs {}",
                BERNOULLI_COEFFS[k],
                expect
            );
        }
    }
}
