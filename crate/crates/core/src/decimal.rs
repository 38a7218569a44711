//! Decimal rendering of exact values. Presentation only; no computation in
//! this crate consumes these strings.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Pow, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::quadratic::QuadraticRational;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rounding {
    #[default]
    HalfEven,
    HalfAwayFromZero,
}

fn pow10(e: usize) -> BigInt {
    BigInt::from(10u32).pow(e)
}

/// `round(x · 10^digits)` as an integer.
pub fn scaled_round(x: &BigRational, digits: usize, mode: Rounding) -> BigInt {
    let num = x.numer().abs() * pow10(digits);
    let den = x.denom().abs();
    let (mut q, r) = num.div_rem(&den);
    let twice = &r * 2u32;
    let round_up = match twice.cmp(&den) {
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Less => false,
        std::cmp::Ordering::Equal => match mode {
            Rounding::HalfEven => q.is_odd(),
            Rounding::HalfAwayFromZero => true,
        },
    };
    if round_up {
        q += 1u32;
    }
    if x.is_negative() {
        -q
    } else {
        q
    }
}

fn place_point(scaled: &BigInt, digits: usize) -> String {
    let neg = scaled.sign() == Sign::Minus;
    let mut s = scaled.abs().to_string();
    if digits > 0 {
        if s.len() <= digits {
            s = format!("{}{}", "0".repeat(digits + 1 - s.len()), s);
        }
        s.insert(s.len() - digits, '.');
    }
    if neg {
        format!("-{s}")
    } else {
        s
    }
}

/// Fixed-point string with `digits` places, e.g. `1.84444444`.
pub fn format_rational(x: &BigRational, digits: usize, mode: Rounding) -> String {
    place_point(&scaled_round(x, digits, mode), digits)
}

/// `x · 10^scale`, rounded, accurate to a unit in the last place.
fn scaled_quadratic(v: &QuadraticRational, scale: usize) -> BigInt {
    const GUARD: usize = 12;
    let s = pow10(scale + GUARD);
    let p = (&v.p * BigRational::from_integer(s.clone())).floor().to_integer();
    // floor(|q|·√3·s) = floor(isqrt(3·a²·s²) / b) for |q| = a/b
    let (a, b) = (v.q.numer().abs(), v.q.denom().abs());
    let root = (BigInt::from(3) * &a * &a * &s * &s).sqrt();
    let qs = root.div_floor(&b);
    let total = if v.q.is_negative() { p - qs } else { p + qs };
    let x = BigRational::new(total, pow10(GUARD));
    scaled_round(&x, 0, Rounding::HalfEven)
}

/// Scientific notation with `sig` significant digits, e.g. `4.18e-6`.
pub fn format_quadratic_sci(v: &QuadraticRational, sig: usize) -> String {
    let sig = sig.max(1);
    if v.is_zero() {
        return "0".into();
    }
    let mut scale = sig + 10;
    let scaled = loop {
        let x = scaled_quadratic(v, scale);
        let len = x.abs().to_string().len();
        if !x.is_zero() && len >= sig + 6 {
            break x;
        }
        scale += if x.is_zero() { 40 } else { sig + 6 - len + 4 };
    };
    let neg = scaled.is_negative();
    let digits = scaled.abs().to_string();
    let exponent = digits.len() as i64 - 1 - scale as i64;
    // round the leading `sig` digits
    let cut = digits.len() - sig;
    let mantissa = scaled_round(&BigRational::new(scaled.abs(), pow10(cut)), 0, Rounding::HalfEven);
    let (mantissa, exponent) = if mantissa.to_string().len() > sig {
        (mantissa / 10u32, exponent + 1)
    } else {
        (mantissa, exponent)
    };
    let m = mantissa.to_string();
    let body = if sig > 1 { format!("{}.{}", &m[..1], &m[1..]) } else { m };
    format!("{}{}e{}", if neg { "-" } else { "" }, body, exponent)
}

/// Fixed-point rendering of `p + q√3` with `digits` places.
pub fn format_quadratic(v: &QuadraticRational, digits: usize) -> String {
    if let Some(r) = v.to_rational() {
        return format_rational(&r, digits, Rounding::HalfEven);
    }
    place_point(&scaled_quadratic(v, digits), digits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadratic::ratio;

    #[test]
    fn fixed_point() {
        assert_eq!(format_rational(&ratio(5, 3), 8, Rounding::HalfEven), "1.66666667");
        assert_eq!(format_rational(&ratio(83, 45), 8, Rounding::HalfEven), "1.84444444");
        assert_eq!(format_rational(&ratio(2, 1), 8, Rounding::HalfEven), "2.00000000");
        assert_eq!(format_rational(&ratio(1, 200), 2, Rounding::HalfEven), "0.00");
        assert_eq!(format_rational(&ratio(3, 200), 2, Rounding::HalfEven), "0.02");
        assert_eq!(format_rational(&ratio(1, 200), 2, Rounding::HalfAwayFromZero), "0.01");
        assert_eq!(format_rational(&ratio(-7, 4), 1, Rounding::HalfEven), "-1.8");
        assert_eq!(format_rational(&ratio(7, 3), 0, Rounding::HalfEven), "2");
    }

    #[test]
    fn gamma_digits() {
        assert_eq!(format_quadratic(&QuadraticRational::gamma(), 8), "2.14023734");
        assert_eq!(format_quadratic(&QuadraticRational::sqrt3(), 20), "1.73205080756887729353");
    }

    #[test]
    fn scientific() {
        assert_eq!(format_quadratic_sci(&QuadraticRational::sqrt3(), 5), "1.7321e0");
        let tiny = &QuadraticRational::lambda_inv().pow(30) * &ratio(-1, 1);
        let f = (2.0 - 3f64.sqrt()).powi(30);
        let s = format_quadratic_sci(&tiny, 6);
        assert!(s.starts_with('-'));
        let parsed: f64 = s.parse().unwrap();
        assert!((parsed + f).abs() < 1e-5 * f);
        assert_eq!(format_quadratic_sci(&QuadraticRational::from(1000), 3), "1.00e3");
        assert_eq!(format_quadratic_sci(&QuadraticRational::zero(), 3), "0");
    }
}
