//! Closed-form rows of the inverse Gram matrix.
//!
//! For partially equally spaced knots every inverse entry has the form
//! `a_{j,k} = scale · (−1)^{j+k} · g_k / D`, where the `g_k` are integer
//! polynomials in `A_i`, `B_i` and `D` is a common integer denominator. No
//! linear system is solved here; the dense elimination lives in
//! [`crate::oracle`] and is used only to cross-check these formulas.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::recurrences::HyperbolicTable;
use crate::splines::{wrap, KnotConfig};

/// One row `j` of the inverse Gram matrix in integer form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseRow {
    pub knot_count: usize,
    pub nu: usize,
    pub j: usize,
    /// `g_k = D·a_{j,k}·(−1)^{j+k} / scale`.
    pub g: Vec<BigInt>,
    pub denom: BigRational,
    pub scale: BigRational,
}

impl InverseRow {
    /// `(−1)^{j+k} g_k`, proportional to `a_{j,k}` with positive factor
    /// `scale / denom`.
    pub fn signed_numerators(&self) -> Vec<BigInt> {
        self.g
            .iter()
            .enumerate()
            .map(|(k, g)| if (self.j + k) % 2 == 0 { g.clone() } else { -g.clone() })
            .collect()
    }

    /// `scale / denom`.
    pub fn factor(&self) -> BigRational {
        &self.scale / &self.denom
    }

    /// The entry `a_{j,k}`.
    pub fn entry(&self, k: usize) -> BigRational {
        let v = BigRational::from_integer(self.g[k].clone()) * self.factor();
        if (self.j + k) % 2 == 0 {
            v
        } else {
            -v
        }
    }

    pub fn entries(&self) -> Vec<BigRational> {
        (0..self.knot_count).map(|k| self.entry(k)).collect()
    }

    /// First `k` violating the sign pattern of `g`: all `g_k ≥ 0` for even
    /// `N`; for odd `N`, `g_k ≥ 0` when `|k − j| ≤ (N−1)/2` and `g_k ≤ 0`
    /// when `|k − j| ≥ (N+1)/2`. The distance is the plain index difference.
    pub fn sign_structure_violation(&self) -> Option<usize> {
        let count = self.knot_count;
        self.g.iter().enumerate().find_map(|(k, g)| {
            let ok = if count % 2 == 0 || k.abs_diff(self.j) <= (count - 1) / 2 {
                !g.is_negative()
            } else {
                !g.is_positive()
            };
            (!ok).then_some(k)
        })
    }
}

fn parity_sign(knot_count: usize) -> BigInt {
    if knot_count % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `D(N) = 2((−1)^{N−1} + A_N)` for uniform knots.
pub fn equally_spaced_denominator(knot_count: usize) -> BigInt {
    let t = HyperbolicTable::shared(knot_count);
    BigInt::from(2) * (-parity_sign(knot_count) + t.a(knot_count))
}

/// `g_k = B_{N−k} + (−1)^N B_k`: row 0 for uniform knots.
pub fn g_equally_spaced(knot_count: usize, k: usize) -> BigInt {
    let t = HyperbolicTable::shared(knot_count);
    t.b(knot_count - k) + parity_sign(knot_count) * t.b(k)
}

/// Common denominator `D(N, ν)`.
///
/// `ν = 0` gives the uniform `D(N)`; `1 ≤ ν` with `2ν ≤ N−1` gives
/// `2A_N + (3/2)B_{2ν}B_{N−2ν} − 2(−1)^N`.
pub fn denominator(knot_count: usize, nu: usize) -> Result<BigRational> {
    if knot_count < 2 {
        return Err(Error::OutOfRange(format!("N = {knot_count} < 2")));
    }
    if nu == 0 {
        return Ok(BigRational::from_integer(equally_spaced_denominator(knot_count)));
    }
    if 2 * nu > knot_count - 1 {
        return Err(Error::OutOfRange(format!("need 2ν ≤ N − 1, got N = {knot_count}, ν = {nu}")));
    }
    let t = HyperbolicTable::shared(knot_count);
    let bb = t.b(2 * nu) * t.b(knot_count - 2 * nu);
    let d = BigRational::from_integer(BigInt::from(2) * t.a(knot_count) - BigInt::from(2) * parity_sign(knot_count))
        + BigRational::new(BigInt::from(3) * bb, BigInt::from(2));
    Ok(d)
}

/// The six index regions of the general closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `j < 2ν`, `k ≤ j`.
    LowLeft,
    /// `j < 2ν`, `j ≤ k ≤ 2ν`.
    LowMiddle,
    /// `j < 2ν`, `2ν ≤ k`.
    LowRight,
    /// `2ν ≤ j`, `k ≤ 2ν`.
    HighLeft,
    /// `2ν ≤ j`, `2ν ≤ k ≤ j`.
    HighMiddle,
    /// `2ν ≤ j`, `j ≤ k`.
    HighRight,
}

impl Branch {
    pub const ALL: [Branch; 6] =
        [Branch::LowLeft, Branch::LowMiddle, Branch::LowRight, Branch::HighLeft, Branch::HighMiddle, Branch::HighRight];

    pub fn applies(self, nu: usize, j: usize, k: usize) -> bool {
        let m = 2 * nu;
        match self {
            Branch::LowLeft => j < m && k <= j,
            Branch::LowMiddle => j < m && j <= k && k <= m,
            Branch::LowRight => j < m && m <= k,
            Branch::HighLeft => m <= j && k <= m,
            Branch::HighMiddle => m <= j && m <= k && k <= j,
            Branch::HighRight => m <= j && j <= k,
        }
    }
}

fn check_general(knot_count: usize, nu: usize, j: usize, k: usize) -> Result<()> {
    if nu == 0 || 2 * nu + 1 > knot_count {
        return Err(Error::OutOfRange(format!("general formula needs 1 ≤ ν and 2ν ≤ N − 1, got N = {knot_count}, ν = {nu}")));
    }
    if j >= knot_count || k >= knot_count {
        return Err(Error::OutOfRange(format!("indices j = {j}, k = {k} must be below N = {knot_count}")));
    }
    Ok(())
}

/// Evaluates one branch formula, whether or not `(j, k)` lies in its region.
/// The caller guarantees all subscripts stay non-negative, which holds
/// inside the region (and on its boundary).
pub fn g_branch(branch: Branch, knot_count: usize, nu: usize, j: usize, k: usize) -> Result<BigInt> {
    check_general(knot_count, nu, j, k)?;
    if !branch.applies(nu, j, k) {
        return Err(Error::OutOfRange(format!("({j}, {k}) outside region {branch:?} for ν = {nu}")));
    }
    let t = HyperbolicTable::shared(knot_count);
    let a = |i: usize| t.a(i);
    let b = |i: usize| t.b(i);
    let s = parity_sign(knot_count);
    let n = knot_count;
    let m = 2 * nu;
    let two = BigInt::from(2);
    let three = BigInt::from(3);
    // B_{2ν} is even, so (3/2)·B_{2ν} stays integral
    let half_b_m = b(m) / 2;
    let g = match branch {
        Branch::LowLeft => {
            &two * &s * b(j - k)
                + b(n - j + k)
                + b(m - j) * a(n - m + k)
                + b(k) * (a(n - j) + &three * b(m - j) * b(n - m))
        }
        Branch::LowMiddle => {
            &two * &s * b(k - j)
                + b(n - k + j)
                + b(m - k) * a(n - m + j)
                + b(j) * (a(n - k) + &three * b(m - k) * b(n - m))
        }
        Branch::LowRight => &s * (b(k - j) + a(k - m) * b(m - j)) + b(n - k + j) + b(j) * a(n - k),
        Branch::HighLeft => &s * (b(j - k) + a(j - m) * b(m - k)) + b(n - j + k) + a(n - j) * b(k),
        Branch::HighMiddle => {
            &s * b(j - k) + a(k - m) * b(n - j + m) + a(n - j) * b(k) + &three * b(k - m) * &half_b_m * b(n - j)
        }
        Branch::HighRight => {
            &s * b(k - j) + a(n - k) * b(j) + a(j - m) * b(n - k + m) + &three * &half_b_m * b(n - k) * b(j - m)
        }
    };
    Ok(g)
}

/// Every branch whose region contains `(j, k)`, with its value.
pub fn g_all_branches(knot_count: usize, nu: usize, j: usize, k: usize) -> Result<Vec<(Branch, BigInt)>> {
    check_general(knot_count, nu, j, k)?;
    Branch::ALL
        .into_iter()
        .filter(|br| br.applies(nu, j, k))
        .map(|br| g_branch(br, knot_count, nu, j, k).map(|g| (br, g)))
        .collect()
}

/// `g(N, ν, j, k)` from the first applicable branch.
pub fn g_general(knot_count: usize, nu: usize, j: usize, k: usize) -> Result<BigInt> {
    check_general(knot_count, nu, j, k)?;
    let branch = Branch::ALL.into_iter().find(|br| br.applies(nu, j, k)).expect("regions cover all (j, k)");
    g_branch(branch, knot_count, nu, j, k)
}

/// Row `j` of the inverse Gram matrix of `special_knots(cfg)`.
pub fn inverse_row(cfg: KnotConfig, j: usize) -> Result<InverseRow> {
    let count = cfg.knot_count();
    if j >= count {
        return Err(Error::OutOfRange(format!("row {j} >= N = {count}")));
    }
    if let Some(h) = cfg.uniform_spacing() {
        // rows are circular shifts of row 0; re-sign so that the (−1)^{j+k}
        // convention uses the unshifted indices
        let s = parity_sign(count);
        let g = (0..count)
            .map(|k| {
                if k >= j {
                    g_equally_spaced(count, k - j)
                } else {
                    &s * g_equally_spaced(count, k + count - j)
                }
            })
            .collect();
        return Ok(InverseRow {
            knot_count: count,
            nu: cfg.nu,
            j,
            g,
            denom: BigRational::from_integer(equally_spaced_denominator(count)),
            scale: BigRational::from_integer(6.into()) / h,
        });
    }
    let g = (0..count).map(|k| g_general(count, cfg.nu, j, k)).collect::<Result<Vec<_>>>()?;
    Ok(InverseRow {
        knot_count: count,
        nu: cfg.nu,
        j,
        g,
        denom: denominator(count, cfg.nu)?,
        scale: BigRational::from_integer((6 * cfg.n).into()),
    })
}

/// All rows, computed in parallel and returned in row order.
pub fn inverse_rows(cfg: KnotConfig) -> Result<Vec<InverseRow>> {
    (0..cfg.knot_count()).into_par_iter().map(|j| inverse_row(cfg, j)).collect()
}

/// Identities for `ν = 1`, `j = 1` (write `K = N − 1`, indices mod N):
/// the three-case specialisation of the closed form, `g_2 = g_0`,
/// `D(N,1) = 18B_K − 2A_K − 2(−1)^N`, the pair sums `|g_k| + |g_{k+1}|`, and
/// the quotients `|g_{k+1}|/|g_k|` for `2 ≤ k ≤ N−1`. Returns a description
/// of the first failure.
pub fn nu1_identity_violation(knot_count: usize) -> Result<Option<String>> {
    let n = knot_count;
    if n < 3 {
        return Err(Error::OutOfRange(format!("ν = 1 needs N ≥ 3, got {n}")));
    }
    let cfg = KnotConfig::from_knot_count(n, 1)?;
    let row = inverse_row(cfg, 1)?;
    let t = HyperbolicTable::shared(n + 1);
    let (a, b) = (|i: usize| t.a(i).clone(), |i: usize| t.b(i).clone());
    let s = parity_sign(n);
    let kk = n - 1;
    let two = BigInt::from(2);
    let g = |k: usize| row.g[wrap(k as isize, n)].clone();
    let fail = |what: String| Ok(Some(format!("N={n}: {what}")));

    if g(0) != &two * (&s + a(kk) - b(kk)) {
        return fail("g_0 = 2[(−1)^N + A_K − B_K]".into());
    }
    if g(1) != BigInt::from(8) * b(kk) {
        return fail("g_1 = 8B_K".into());
    }
    for k in 2..n {
        let want = &two * (a(n - k) + b(n - k) + &s * (a(k - 2) + b(k - 2)));
        if g(k) != want {
            return fail(format!("g_k three-case form at k={k}"));
        }
    }
    if n > 2 && g(2) != g(0) {
        return fail("g_2 = g_0".into());
    }
    let d1 = BigInt::from(18) * b(kk) - &two * a(kk) - &two * &s;
    if row.denom != BigRational::from_integer(d1) {
        return fail("D(N,1) = 18B_K − 2A_K − 2(−1)^N".into());
    }
    if g(1).abs() + g(2).abs() != &two * &s + BigInt::from(6) * b(kk) + &two * a(kk) {
        return fail("|g_1| + |g_2| = 2(−1)^N + 6B_K + 2A_K".into());
    }
    let middle = (n % 2 == 1).then_some((n + 1) / 2);
    for k in 2..n {
        let pair = g(k).abs() + g(k + 1).abs();
        if Some(k) == middle {
            if pair != BigInt::from(8) * b(kk / 2) {
                return fail(format!("|g_(N+1)/2| + |g_(N+3)/2| = 8B_(K/2) at k={k}"));
            }
        } else if pair != BigInt::from(4) * (a(n - k) + &s * a(k - 1)).abs() {
            return fail(format!("|g_k| + |g_(k+1)| = 4|A_(N−k) + (−1)^N A_(k−1)| at k={k}"));
        }
    }
    // |g_{k+1}|/|g_k| = X_{|N/2−k|}/X_{|N/2−k+1|}, X = A (N even) or B (N odd);
    // doubled arguments keep everything on integers
    for k in 2..n {
        let m1 = n.abs_diff(2 * k);
        let m2 = n.abs_diff(2 * k - 2);
        let q = if n % 2 == 0 { t.half_ratio_a(m1, m2)? } else { t.half_ratio_b(m1, m2)? };
        let Some(q) = q.to_rational() else {
            return fail(format!("quotient at k={k} is irrational"));
        };
        if g(k).is_zero() || BigRational::new(g(k + 1).abs(), g(k).abs()) != q {
            return fail(format!("|g_(k+1)|/|g_k| quotient at k={k}"));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadratic::ratio;
    use crate::splines::{gram_matrix, special_knots};

    fn cfg(n: usize, nu: usize) -> KnotConfig {
        KnotConfig::new(n, nu).unwrap()
    }

    fn assert_inverse(c: KnotConfig) {
        let g = gram_matrix(&special_knots(c)).to_dense();
        let rows = inverse_rows(c).unwrap();
        let count = c.knot_count();
        for j in 0..count {
            let a = rows[j].entries();
            for (l, gl) in g.iter().enumerate() {
                let prod: BigRational = (0..count).map(|k| &a[k] * &gl[k]).sum();
                let want = if l == j { ratio(1, 1) } else { ratio(0, 1) };
                assert_eq!(prod, want, "cfg {c:?}, row {j}, col {l}");
            }
        }
    }

    #[test]
    fn denominators() {
        assert_eq!(denominator(3, 1).unwrap(), ratio(60, 1));
        assert_eq!(denominator(2, 0).unwrap(), ratio(12, 1));
        assert_eq!(denominator(5, 1).unwrap(), ratio(816, 1));
        assert_eq!(denominator(3, 0).unwrap(), ratio(54, 1));
        assert!(denominator(4, 2).is_err());
        assert!(denominator(1, 0).is_err());
    }

    #[test]
    fn two_by_two_row() {
        let row = inverse_row(cfg(2, 0), 0).unwrap();
        assert_eq!(row.entries(), vec![ratio(4, 1), ratio(-2, 1)]);
    }

    #[test]
    fn three_uniform_row() {
        // a_{0,k} = 18(−1)^k (B_{3−k} − B_k)/54
        let row = inverse_row(cfg(3, 0), 0).unwrap();
        assert_eq!(row.entries(), vec![ratio(5, 1), ratio(-1, 1), ratio(-1, 1)]);
        assert_inverse(cfg(3, 0));
    }

    #[test]
    fn exact_inverse_small() {
        for n in 1..9 {
            for nu in 0..=n {
                if let Ok(c) = KnotConfig::new(n, nu) {
                    assert_inverse(c);
                }
            }
        }
    }

    #[test]
    fn nu1_row1_examples() {
        let t = HyperbolicTable::shared(30);
        for n in 3..12usize {
            let kk = n - 1;
            assert_eq!(g_general(n, 1, 1, 1).unwrap(), BigInt::from(8) * t.b(kk));
            let s = parity_sign(n);
            assert_eq!(g_general(n, 1, 1, 0).unwrap(), BigInt::from(2) * (s + t.a(kk) - t.b(kk)));
        }
        assert_eq!(g_general(6, 1, 1, 2).unwrap(), g_general(6, 1, 1, 0).unwrap());
    }

    #[test]
    fn branch_boundaries_agree() {
        for n in 3..25 {
            for nu in 1..=(n - 1) / 2 {
                for j in 0..n {
                    for k in [j, 2 * nu] {
                        let vals = g_all_branches(n, nu, j, k).unwrap();
                        assert!(vals.windows(2).all(|w| w[0].1 == w[1].1), "N={n} ν={nu} j={j} k={k}: {vals:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn sign_structure() {
        for n in 2..30 {
            for nu in 0..=(n - 1) / 2 {
                let c = KnotConfig::from_knot_count(n, nu).unwrap();
                for row in inverse_rows(c).unwrap() {
                    assert_eq!(row.sign_structure_violation(), None, "N={n} ν={nu} j={}", row.j);
                }
            }
        }
    }

    #[test]
    fn nu1_identities() {
        for n in 3..60 {
            assert_eq!(nu1_identity_violation(n).unwrap(), None);
        }
    }

    #[test]
    fn symmetric_inverse() {
        for (n, nu) in [(7, 3), (9, 2), (10, 1), (6, 0)] {
            let rows = inverse_rows(cfg(n, nu)).unwrap();
            for j in 0..rows.len() {
                for k in 0..rows.len() {
                    assert_eq!(rows[j].entry(k), rows[k].entry(j));
                }
            }
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(g_general(5, 0, 0, 0).is_err());
        assert!(g_general(5, 3, 0, 0).is_err());
        assert!(g_general(5, 1, 5, 0).is_err());
        assert!(inverse_row(cfg(4, 1), 5).is_err());
    }
}
