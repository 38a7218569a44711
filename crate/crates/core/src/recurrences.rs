//! The integer solutions `A_k`, `B_k` of `f_{k-1} − 4f_k + f_{k+1} = 0`.
//!
//! `A_k = ½(λ^k + λ^{−k})` and `√3·B_k = ½(λ^k − λ^{−k})` with λ = 2+√3, so
//! `λ^{±k} = A_k ± √3·B_k` exactly. All closed forms for the inverse Gram
//! matrix are polynomials in these two sequences.

use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::quadratic::QuadraticRational;

/// `(A_k, B_k)` at one index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperbolicPair {
    pub k: usize,
    pub a: BigInt,
    pub b: BigInt,
}

impl HyperbolicPair {
    /// `A_k² − 3B_k²`, which is 1 for every k.
    pub fn pell(&self) -> BigInt {
        &self.a * &self.a - BigInt::from(3) * &self.b * &self.b
    }
}

/// Prefix of both sequences, indices `0..len`.
#[derive(Debug, Clone)]
pub struct HyperbolicTable {
    a: Vec<BigInt>,
    b: Vec<BigInt>,
}

static SHARED: OnceLock<RwLock<Arc<HyperbolicTable>>> = OnceLock::new();

impl HyperbolicTable {
    /// Builds indices `0..=max_index` from the coupled recurrence
    /// `A_{k+1} = 2A_k + 3B_k`, `B_{k+1} = A_k + 2B_k`.
    pub fn new(max_index: usize) -> Self {
        let mut t = Self { a: vec![BigInt::one()], b: vec![BigInt::zero()] };
        t.extend_to(max_index);
        t
    }

    fn extend_to(&mut self, max_index: usize) {
        while self.a.len() <= max_index {
            let (a, b) = (self.a.last().unwrap(), self.b.last().unwrap());
            let next_a = BigInt::from(2) * a + BigInt::from(3) * b;
            let next_b = a + BigInt::from(2) * b;
            self.a.push(next_a);
            self.b.push(next_b);
        }
    }

    /// Process-wide memoized table covering at least `0..=max_index`.
    pub fn shared(max_index: usize) -> Arc<HyperbolicTable> {
        let lock = SHARED.get_or_init(|| RwLock::new(Arc::new(HyperbolicTable::new(64))));
        {
            let current = lock.read().unwrap_or_else(|e| e.into_inner());
            if current.len() > max_index {
                return Arc::clone(&current);
            }
        }
        let mut w = lock.write().unwrap_or_else(|e| e.into_inner());
        if w.len() <= max_index {
            let mut grown = (**w).clone();
            grown.extend_to(max_index.max(2 * w.len()));
            *w = Arc::new(grown);
        }
        Arc::clone(&w)
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// `A_k`. Panics when `k` is beyond the table.
    pub fn a(&self, k: usize) -> &BigInt {
        &self.a[k]
    }

    /// `B_k`. Panics when `k` is beyond the table.
    pub fn b(&self, k: usize) -> &BigInt {
        &self.b[k]
    }

    pub fn pair(&self, k: usize) -> HyperbolicPair {
        HyperbolicPair { k, a: self.a[k].clone(), b: self.b[k].clone() }
    }

    /// λ^k = A_k + √3·B_k.
    pub fn lambda_pow(&self, k: usize) -> QuadraticRational {
        QuadraticRational::from_bigints(self.a[k].clone(), self.b[k].clone())
    }

    /// λ^{−k} = A_k − √3·B_k.
    pub fn lambda_pow_neg(&self, k: usize) -> QuadraticRational {
        QuadraticRational::from_bigints(self.a[k].clone(), -self.b[k].clone())
    }

    /// `A_{m/2}·λ^{1/2}` (odd `m`) or `A_{m/2}` (even `m`).
    ///
    /// At half-integer arguments the sequences leave ℤ[√3], but a common
    /// factor λ^{1/2} brings them back, so quotients of two values with the
    /// same parity of `m` are exact. Used only through [`Self::half_ratio_a`].
    fn a_half_scaled(&self, m: usize) -> QuadraticRational {
        if m % 2 == 0 {
            return QuadraticRational::from(self.a[m / 2].clone());
        }
        // 2λ^{1/2}·A_{m/2} = λ^{(m+1)/2} + λ^{−(m−1)/2}
        &self.lambda_pow((m + 1) / 2) + &self.lambda_pow_neg((m - 1) / 2)
    }

    fn b_half_scaled(&self, m: usize) -> QuadraticRational {
        if m % 2 == 0 {
            return QuadraticRational::from(self.b[m / 2].clone());
        }
        // 2√3·λ^{1/2}·B_{m/2} = λ^{(m+1)/2} − λ^{−(m−1)/2}
        &self.lambda_pow((m + 1) / 2) - &self.lambda_pow_neg((m - 1) / 2)
    }

    /// `A_{m1/2} / A_{m2/2}` for arguments of equal parity.
    pub fn half_ratio_a(&self, m1: usize, m2: usize) -> Result<QuadraticRational> {
        same_parity(m1, m2)?;
        Ok(&self.a_half_scaled(m1) / &self.a_half_scaled(m2))
    }

    /// `B_{m1/2} / B_{m2/2}` for arguments of equal parity; `m2 > 0`.
    pub fn half_ratio_b(&self, m1: usize, m2: usize) -> Result<QuadraticRational> {
        same_parity(m1, m2)?;
        if m2 == 0 {
            return Err(Error::OutOfRange("B_0 = 0 in denominator".into()));
        }
        Ok(&self.b_half_scaled(m1) / &self.b_half_scaled(m2))
    }
}

fn same_parity(m1: usize, m2: usize) -> Result<()> {
    if m1 % 2 != m2 % 2 {
        return Err(Error::OutOfRange(format!(
            "half-index quotient needs equal parity, got {m1}/2 and {m2}/2"
        )));
    }
    Ok(())
}

/// Pairs `(A_k, B_k)` for `k = 0..=max_index`.
pub fn hyperbolic_sequence(max_index: usize) -> Vec<HyperbolicPair> {
    let t = HyperbolicTable::shared(max_index);
    (0..=max_index).map(|k| t.pair(k)).collect()
}

/// φ(t) = (1+t²)/(1+t)² for rational t > 0.
pub fn phi(t: &BigRational) -> Result<BigRational> {
    if !t.is_positive() {
        return Err(Error::NonPositive(t.to_string()));
    }
    let one = BigRational::one();
    let s = &one + t;
    Ok((&one + t * t) / (&s * &s))
}

/// φ over ℚ(√3), t > 0.
pub fn phi_quadratic(t: &QuadraticRational) -> Result<QuadraticRational> {
    if !t.is_positive() {
        return Err(Error::NonPositive(t.to_string()));
    }
    let one = QuadraticRational::one();
    let s = &one + t;
    Ok(&(&one + &(t * t)) / &(&s * &s))
}

/// φ′(t) = 2(t−1)/(1+t)³.
pub fn phi_prime(t: &QuadraticRational) -> QuadraticRational {
    let one = QuadraticRational::one();
    let s = &one + t;
    &(&QuadraticRational::from(2) * &(t - &one)) / &s.pow(3)
}

/// φ(λ), which simplifies to exactly 2/3.
pub fn phi_at_lambda() -> QuadraticRational {
    phi_quadratic(&QuadraticRational::lambda()).expect("λ > 0")
}

/// First index at which one of the four partial-sum identities fails.
///
/// For every K′ ≤ K:
/// `Σ_{k≤K′} (B_k + B_{k+1}) = A_{K′+1} − 1`,
/// `2Σ A_k = 3B_{K′+1} − A_{K′+1} + 1`,
/// `Σ (A_k + A_{k+1}) = 3B_{K′+1}`,
/// `2Σ B_k = A_{K′+1} − B_{K′+1} − 1`.
pub fn sum_identity_violation(max_index: usize) -> Option<(usize, &'static str)> {
    let t = HyperbolicTable::shared(max_index + 1);
    let (mut s_bb, mut s_a, mut s_aa, mut s_b) =
        (BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::zero());
    let (two, three) = (BigInt::from(2), BigInt::from(3));
    for k in 0..=max_index {
        s_bb += t.b(k) + t.b(k + 1);
        s_a += t.a(k);
        s_aa += t.a(k) + t.a(k + 1);
        s_b += t.b(k);
        let (a1, b1) = (t.a(k + 1), t.b(k + 1));
        if s_bb != a1 - 1 {
            return Some((k, "sum B_k + B_{k+1} = A_{K+1} - 1"));
        }
        if &two * &s_a != &three * b1 - a1 + 1 {
            return Some((k, "2 sum A_k = 3B_{K+1} - A_{K+1} + 1"));
        }
        if s_aa != &three * b1 {
            return Some((k, "sum A_k + A_{k+1} = 3B_{K+1}"));
        }
        if &two * &s_b != a1 - b1 - 1 {
            return Some((k, "2 sum B_k = A_{K+1} - B_{K+1} - 1"));
        }
    }
    None
}

pub fn check_sum_identities(max_index: usize) -> bool {
    sum_identity_violation(max_index).is_none()
}

/// First failing instance of the λ-gap identities, the addition formulas,
/// or the growth bounds `A_{k+1} ≤ 4A_k`, `B_{k+1} ≤ 4B_k`.
pub fn asym_identity_violation(max_index: usize) -> Option<String> {
    let t = HyperbolicTable::shared(max_index + 1);
    let lambda = QuadraticRational::lambda();
    let sqrt3 = QuadraticRational::sqrt3();
    let three = BigInt::from(3);
    let four = BigInt::from(4);
    for k in 0..=max_index {
        let inv = t.lambda_pow_neg(k);
        let (ak, bk) = (QuadraticRational::from(t.a(k).clone()), QuadraticRational::from(t.b(k).clone()));
        let (ak1, bk1) =
            (QuadraticRational::from(t.a(k + 1).clone()), QuadraticRational::from(t.b(k + 1).clone()));
        if &(&lambda * &bk) - &bk1 != -inv.clone() {
            return Some(format!("λB_k − B_(k+1) = −λ^(−k) fails at k={k}"));
        }
        if &(&lambda * &ak) - &ak1 != &sqrt3 * &inv {
            return Some(format!("λA_k − A_(k+1) = √3·λ^(−k) fails at k={k}"));
        }
        if &(&sqrt3 * &bk) - &ak != -inv {
            return Some(format!("√3B_k − A_k = −λ^(−k) fails at k={k}"));
        }
        if t.a(k + 1) > &(&four * t.a(k)) {
            return Some(format!("A_(k+1) ≤ 4A_k fails at k={k}"));
        }
        if k >= 1 && t.b(k + 1) > &(&four * t.b(k)) {
            return Some(format!("B_(k+1) ≤ 4B_k fails at k={k}"));
        }
    }
    for n in 0..=max_index {
        let (an, bn) = (t.a(n), t.b(n));
        for k in 0..=n {
            let (ak, bk) = (t.a(k), t.b(k));
            let (am, bm) = (t.a(n - k), t.b(n - k));
            if bk * am + ak * bm != *bn {
                return Some(format!("B_kA_(n−k) + A_kB_(n−k) = B_n fails at n={n}, k={k}"));
            }
            if bn * am - bm * an != *bk {
                return Some(format!("B_nA_(n−k) − B_(n−k)A_n = B_k fails at n={n}, k={k}"));
            }
            if ak * am + &three * bm * bk != *an {
                return Some(format!("A_kA_(n−k) + 3B_(n−k)B_k = A_n fails at n={n}, k={k}"));
            }
            if an * am - &three * bn * bm != *ak {
                return Some(format!("A_nA_(n−k) − 3B_nB_(n−k) = A_k fails at n={n}, k={k}"));
            }
        }
    }
    None
}

pub fn check_asym_identities(max_index: usize) -> bool {
    asym_identity_violation(max_index).is_none()
}
