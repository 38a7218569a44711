//! Exact arithmetic in the field ℚ(√3).
//!
//! Every irrational constant this crate compares against (λ = 2+√3, the
//! limit constant γ, the bound constants of the κ estimates) lives in
//! ℚ(√3), so comparisons reduce to a sign test on `p + q√3` that only needs
//! rational arithmetic.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// `p + q·√3` with rational `p`, `q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticRational {
    pub p: BigRational,
    pub q: BigRational,
}

impl QuadraticRational {
    pub fn new(p: BigRational, q: BigRational) -> Self {
        Self { p, q }
    }

    pub fn from_ints(p: i64, q: i64) -> Self {
        Self::new(BigRational::from_integer(p.into()), BigRational::from_integer(q.into()))
    }

    pub fn from_bigints(p: BigInt, q: BigInt) -> Self {
        Self::new(BigRational::from_integer(p), BigRational::from_integer(q))
    }

    pub fn rational(p: BigRational) -> Self {
        Self::new(p, BigRational::zero())
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0)
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0)
    }

    pub fn sqrt3() -> Self {
        Self::from_ints(0, 1)
    }

    /// λ = 2 + √3, the larger root of t² − 4t + 1.
    pub fn lambda() -> Self {
        Self::from_ints(2, 1)
    }

    /// λ⁻¹ = 2 − √3.
    pub fn lambda_inv() -> Self {
        Self::from_ints(2, -1)
    }

    /// γ = 2 + (33 − 18√3)/13 = 59/13 − (18/13)√3.
    pub fn gamma() -> Self {
        Self::new(ratio(59, 13), ratio(-18, 13))
    }

    /// Galois conjugate `p − q√3`.
    pub fn conj(&self) -> Self {
        Self::new(self.p.clone(), -self.q.clone())
    }

    /// Field norm `p² − 3q²`.
    pub fn norm(&self) -> BigRational {
        &self.p * &self.p - BigRational::from_integer(3.into()) * &self.q * &self.q
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.p.clone())
    }

    /// Exact sign of `p + q√3`.
    ///
    /// Positive iff both parts are non-negative (and not both zero), or the
    /// parts disagree in sign and the positive part dominates after squaring.
    pub fn signum(&self) -> Ordering {
        let zero = BigRational::zero();
        let p_sign = self.p.cmp(&zero);
        let q_sign = self.q.cmp(&zero);
        match (p_sign, q_sign) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
            (Ordering::Less, Ordering::Less) => Ordering::Less,
            _ => {
                let p2 = &self.p * &self.p;
                let q2 = BigRational::from_integer(3.into()) * &self.q * &self.q;
                // the sign is that of whichever part has the larger square
                match p2.cmp(&q2) {
                    Ordering::Greater => p_sign,
                    Ordering::Less => q_sign,
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conj();
        Some(Self::new(c.p / &n, c.q / n))
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Lossy conversion for plotting and diagnostics only.
    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.p) + rational_to_f64(&self.q) * 3f64.sqrt()
    }
}

pub(crate) fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // numerator/denominator beyond f64 range: shift both down together
        let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
        let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

impl From<BigRational> for QuadraticRational {
    fn from(p: BigRational) -> Self {
        Self::rational(p)
    }
}

impl From<BigInt> for QuadraticRational {
    fn from(p: BigInt) -> Self {
        Self::rational(BigRational::from_integer(p))
    }
}

impl From<i64> for QuadraticRational {
    fn from(p: i64) -> Self {
        Self::from_ints(p, 0)
    }
}

impl PartialOrd for QuadraticRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadraticRational {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl fmt::Display for QuadraticRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            write!(f, "{}", self.p)
        } else if self.p.is_zero() {
            write!(f, "({})·√3", self.q)
        } else {
            write!(f, "{} + ({})·√3", self.p, self.q)
        }
    }
}

impl<'a> Add<&'a QuadraticRational> for &'a QuadraticRational {
    type Output = QuadraticRational;
    fn add(self, rhs: &QuadraticRational) -> QuadraticRational {
        QuadraticRational::new(&self.p + &rhs.p, &self.q + &rhs.q)
    }
}

impl<'a> Sub<&'a QuadraticRational> for &'a QuadraticRational {
    type Output = QuadraticRational;
    fn sub(self, rhs: &QuadraticRational) -> QuadraticRational {
        QuadraticRational::new(&self.p - &rhs.p, &self.q - &rhs.q)
    }
}

impl<'a> Mul<&'a QuadraticRational> for &'a QuadraticRational {
    type Output = QuadraticRational;
    fn mul(self, rhs: &QuadraticRational) -> QuadraticRational {
        let three = BigRational::from_integer(3.into());
        QuadraticRational::new(
            &self.p * &rhs.p + three * &self.q * &rhs.q,
            &self.p * &rhs.q + &self.q * &rhs.p,
        )
    }
}

/// Panics on division by zero, like the rational types it wraps.
impl<'a> Div<&'a QuadraticRational> for &'a QuadraticRational {
    type Output = QuadraticRational;
    fn div(self, rhs: &QuadraticRational) -> QuadraticRational {
        let inv = rhs.recip().expect("division by zero in ℚ(√3)");
        self * &inv
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QuadraticRational {
            type Output = QuadraticRational;
            fn $m(self, rhs: QuadraticRational) -> QuadraticRational {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a QuadraticRational> for QuadraticRational {
            type Output = QuadraticRational;
            fn $m(self, rhs: &QuadraticRational) -> QuadraticRational {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for QuadraticRational {
    type Output = QuadraticRational;
    fn neg(self) -> QuadraticRational {
        QuadraticRational::new(-self.p, -self.q)
    }
}

impl Mul<&BigRational> for &QuadraticRational {
    type Output = QuadraticRational;
    fn mul(self, rhs: &BigRational) -> QuadraticRational {
        QuadraticRational::new(&self.p * rhs, &self.q * rhs)
    }
}

impl QuadraticRational {
    pub fn scale(&self, r: &BigRational) -> Self {
        self * r
    }

    pub fn add_rational(&self, r: &BigRational) -> Self {
        Self::new(&self.p + r, self.q.clone())
    }

    pub fn is_one(&self) -> bool {
        self.p.is_one() && self.q.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_times_inverse_is_one() {
        let l = QuadraticRational::lambda();
        assert_eq!(&l * &QuadraticRational::lambda_inv(), QuadraticRational::one());
        assert_eq!(l.recip().unwrap(), QuadraticRational::lambda_inv());
    }

    #[test]
    fn sign_cases() {
        assert_eq!(QuadraticRational::from_ints(2, -1).signum(), Ordering::Greater);
        assert_eq!(QuadraticRational::from_ints(1, -1).signum(), Ordering::Less);
        assert_eq!(QuadraticRational::from_ints(-2, 1).signum(), Ordering::Less);
        assert_eq!(QuadraticRational::from_ints(-1, 1).signum(), Ordering::Greater);
        assert_eq!(QuadraticRational::from_ints(0, 0).signum(), Ordering::Equal);
        assert_eq!(QuadraticRational::from_ints(0, -3).signum(), Ordering::Less);
    }

    #[test]
    fn gamma_lies_between_two_and_three() {
        let g = QuadraticRational::gamma();
        assert!(g > QuadraticRational::from(2));
        assert!(g < QuadraticRational::from(3));
        assert!((g.to_f64() - 2.14023734).abs() < 1e-8);
    }

    #[test]
    fn pow_matches_repeated_products() {
        let l = QuadraticRational::lambda();
        assert_eq!(l.pow(3), &(&l * &l) * &l);
        assert_eq!(l.pow(0), QuadraticRational::one());
        // λ³ = A_3 + √3·B_3
        assert_eq!(l.pow(3), QuadraticRational::from_ints(26, 15));
    }
}
