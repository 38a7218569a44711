//! Periodic knot sets on the torus `[0, 1)`, degree-one B-splines (hat
//! functions) over them, and their exact Gram matrices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Reduces a possibly negative index into `0..modulus`.
///
/// All wraparound (δ_{−1} = δ_{N−1}, row N ≡ row 0) goes through here.
pub fn wrap(index: isize, modulus: usize) -> usize {
    index.rem_euclid(modulus as isize) as usize
}

/// Partially equally spaced knots: `2ν` gaps of `1/(2n)` followed by `n − ν`
/// gaps of `1/n`, giving `N = n + ν` knots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KnotConfig {
    pub n: usize,
    pub nu: usize,
}

impl KnotConfig {
    pub fn new(n: usize, nu: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidConfig { n: n as i64, nu: nu as i64, reason: "n must be positive" });
        }
        if nu > n {
            return Err(Error::InvalidConfig { n: n as i64, nu: nu as i64, reason: "nu must not exceed n" });
        }
        if n + nu < 2 {
            return Err(Error::InvalidConfig { n: n as i64, nu: nu as i64, reason: "need at least two knots" });
        }
        Ok(Self { n, nu })
    }

    /// Configuration by total knot count, `n = N − ν`.
    pub fn from_knot_count(knots: usize, nu: usize) -> Result<Self> {
        if nu > knots {
            return Err(Error::InvalidConfig { n: knots as i64 - nu as i64, nu: nu as i64, reason: "nu exceeds N" });
        }
        Self::new(knots - nu, nu)
    }

    /// Number of knots `N = n + ν`.
    pub fn knot_count(&self) -> usize {
        self.n + self.nu
    }

    /// Both `ν = 0` and `ν = n` give uniform knots.
    pub fn is_equally_spaced(&self) -> bool {
        self.nu == 0 || self.nu == self.n
    }

    /// The uniform spacing when [`Self::is_equally_spaced`].
    pub fn uniform_spacing(&self) -> Option<BigRational> {
        match self.nu {
            0 => Some(BigRational::new(BigInt::one(), self.n.into())),
            nu if nu == self.n => Some(BigRational::new(BigInt::one(), (2 * self.n).into())),
            _ => None,
        }
    }
}

/// Strictly increasing knots `0 = t_0 < … < t_{N−1} < 1` with gaps
/// `δ_j = t_{j+1} − t_j`, where `t_N := 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotSequence {
    knots: Vec<BigRational>,
    gaps: Vec<BigRational>,
}

impl KnotSequence {
    pub fn new(knots: Vec<BigRational>) -> Result<Self> {
        if knots.len() < 2 {
            return Err(Error::OutOfRange(format!("need at least 2 knots, got {}", knots.len())));
        }
        if !knots[0].is_zero() {
            return Err(Error::OutOfRange("first knot must be 0".into()));
        }
        let one = BigRational::one();
        let mut gaps = Vec::with_capacity(knots.len());
        for j in 0..knots.len() {
            let next = knots.get(j + 1).unwrap_or(&one);
            let gap = next - &knots[j];
            if !gap.is_positive() {
                return Err(Error::OutOfRange(format!("knots must increase strictly inside [0,1) at index {j}")));
            }
            gaps.push(gap);
        }
        Ok(Self { knots, gaps })
    }

    pub fn len(&self) -> usize {
        self.knots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.knots.is_empty()
    }

    pub fn knots(&self) -> &[BigRational] {
        &self.knots
    }

    pub fn gaps(&self) -> &[BigRational] {
        &self.gaps
    }

    /// `δ_j` for any integer `j`, taken modulo `N`.
    pub fn gap(&self, j: isize) -> &BigRational {
        &self.gaps[wrap(j, self.len())]
    }

    /// Index `k` of the interval `[t_k, t_{k+1})` containing `t ∈ [0,1)`.
    fn interval_of(&self, t: &BigRational) -> usize {
        // knots are sorted and t_0 = 0 <= t
        match self.knots.binary_search(t) {
            Ok(k) => k,
            Err(k) => k - 1,
        }
    }
}

/// Knots `t_j = j/(2n)` for `j ≤ 2ν`, then `(j − ν)/n`.
pub fn special_knots(cfg: KnotConfig) -> KnotSequence {
    let KnotConfig { n, nu } = cfg;
    let count = cfg.knot_count();
    let knots = (0..count)
        .map(|j| {
            if nu == n {
                BigRational::new(j.into(), (2 * n).into())
            } else if j <= 2 * nu {
                BigRational::new(j.into(), (2 * n).into())
            } else {
                BigRational::new((j - nu).into(), n.into())
            }
        })
        .collect();
    KnotSequence::new(knots).expect("special knots are strictly increasing")
}

/// Value of the periodic hat function `N_j` at `t` (taken modulo 1).
pub fn bspline_eval(ks: &KnotSequence, j: usize, t: &BigRational) -> Result<BigRational> {
    let count = ks.len();
    if j >= count {
        return Err(Error::OutOfRange(format!("basis index {j} >= N = {count}")));
    }
    let t = t - t.floor();
    let k = ks.interval_of(&t);
    // on [t_k, t_{k+1}] only N_k (falling) and N_{k+1} (rising) are nonzero
    let u = (&t - &ks.knots[k]) / &ks.gaps[k];
    let mut value = BigRational::zero();
    if j == k {
        value += BigRational::one() - &u;
    }
    if j == wrap(k as isize + 1, count) {
        value += u;
    }
    Ok(value)
}

/// Symmetric periodic tridiagonal Gram matrix `b_{jk} = ∫ N_j N_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    /// `b_{jj} = (δ_{j−1} + δ_j)/3`.
    pub diag: Vec<BigRational>,
    /// `δ_j/6`, the contribution of interval `j` to `b_{j, j+1 mod N}`.
    pub off: Vec<BigRational>,
}

impl GramMatrix {
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Entry `b_{jk}`; for `N = 2` both intervals contribute to `b_{01}`.
    pub fn entry(&self, j: usize, k: usize) -> BigRational {
        let count = self.dim();
        let mut v = BigRational::zero();
        if j == k {
            v += &self.diag[j];
        }
        if k == wrap(j as isize + 1, count) && j != k {
            v += &self.off[j];
        }
        if j == wrap(k as isize + 1, count) && j != k {
            v += &self.off[k];
        }
        v
    }

    pub fn to_dense(&self) -> Vec<Vec<BigRational>> {
        let count = self.dim();
        (0..count).map(|j| (0..count).map(|k| self.entry(j, k)).collect()).collect()
    }

    pub fn row_sum(&self, j: usize) -> BigRational {
        (0..self.dim()).map(|k| self.entry(j, k)).sum()
    }
}

pub fn gram_matrix(ks: &KnotSequence) -> GramMatrix {
    let count = ks.len();
    let three = BigRational::from_integer(3.into());
    let six = BigRational::from_integer(6.into());
    let diag = (0..count as isize).map(|j| (ks.gap(j - 1) + ks.gap(j)) / &three).collect();
    let off = ks.gaps().iter().map(|d| d / &six).collect();
    GramMatrix { diag, off }
}
