//! Brute-force reference pipeline.
//!
//! Inverts the Gram matrix by exact fraction-free elimination and integrates
//! `|k(t_j, ·)|` geometrically (root splitting and triangle areas). It shares
//! nothing with [`crate::invgram`] or [`crate::lebesgue`] beyond the knot
//! sequence, so agreement between the two routes is a real check.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::quadratic::rational_to_f64;
use crate::splines::{bspline_eval, gram_matrix, KnotSequence};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    entries: Vec<Vec<BigRational>>,
}

impl DenseMatrix {
    pub fn new(entries: Vec<Vec<BigRational>>) -> Result<Self> {
        let dim = entries.len();
        if entries.iter().any(|r| r.len() != dim) {
            return Err(Error::Dimension(format!("matrix must be square, {dim} rows")));
        }
        Ok(Self { entries })
    }

    pub fn identity(dim: usize) -> Self {
        let entries = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
            .collect();
        Self { entries }
    }

    pub fn gram(ks: &KnotSequence) -> Self {
        Self { entries: gram_matrix(ks).to_dense() }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i][j]
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.entries[i]
    }

    pub fn mul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        let n = self.dim();
        if other.dim() != n {
            return Err(Error::Dimension(format!("{n} × {n} times {} × {}", other.dim(), other.dim())));
        }
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n)
                            .filter(|&k| !self.entries[i][k].is_zero())
                            .map(|k| &self.entries[i][k] * &other.entries[k][j])
                            .sum()
                    })
                    .collect()
            })
            .collect();
        Ok(DenseMatrix { entries })
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim())
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }
}

/// Exact inverse by fraction-free Gauss–Jordan elimination.
///
/// The rational matrix is first cleared to an integer matrix `M = L·m`.
/// Every intermediate entry of the augmented `[M | I]` is then a minor of
/// it, so each division by the previous pivot is exact; at the end the left
/// block is `det(M)·I` and the right block `det(M)·M⁻¹`.
pub fn dense_inverse(m: &DenseMatrix) -> Result<DenseMatrix> {
    let n = m.dim();
    if n == 0 {
        return Ok(m.clone());
    }
    let lcm = m.entries.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let width = 2 * n;
    let mut aug: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigInt> =
                m.entries[i].iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
            row.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            row
        })
        .collect();

    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = (k..n).find(|&r| !aug[r][k].is_zero()).ok_or(Error::Singular)?;
        aug.swap(k, pivot);
        let pivot_row = aug[k].clone();
        for (i, row) in aug.iter_mut().enumerate() {
            if i == k {
                continue;
            }
            let factor = row[k].clone();
            for c in 0..width {
                let num = &pivot_row[k] * &row[c] - &factor * &pivot_row[c];
                let (q, r) = num.div_rem(&prev);
                if !r.is_zero() {
                    return Err(Error::InexactElimination);
                }
                row[c] = q;
            }
        }
        prev = pivot_row[k].clone();
    }

    let lcm = BigRational::from_integer(lcm);
    let entries = (0..n)
        .map(|i| (0..n).map(|j| BigRational::new(aug[i][n + j].clone(), aug[i][i].clone()) * &lcm).collect())
        .collect();
    Ok(DenseMatrix { entries })
}

/// `∫₀¹ |k(t_j, t)| dt` for the kernel with inverse Gram `inv`.
///
/// On `[t_k, t_{k+1}]` the section is linear from `a = a_{j,k}` to
/// `b = a_{j,k+1}`. Without a sign change the integral is a trapezoid;
/// otherwise the root at `τ = δ|a|/(|a|+|b|)` splits it into two triangles.
pub fn abs_kernel_integral(j: usize, inv: &DenseMatrix, ks: &KnotSequence) -> Result<BigRational> {
    let n = ks.len();
    if inv.dim() != n || j >= n {
        return Err(Error::Dimension(format!("row {j} of a {} × {} inverse for {n} knots", inv.dim(), inv.dim())));
    }
    let two = BigRational::from_integer(2.into());
    let mut total = BigRational::zero();
    for (k, delta) in ks.gaps().iter().enumerate() {
        let a = inv.get(j, k);
        let b = inv.get(j, (k + 1) % n);
        let (abs_a, abs_b) = (a.abs(), b.abs());
        if !(a * b).is_negative() {
            total += delta * (&abs_a + &abs_b) / &two;
        } else {
            let tau = delta * &abs_a / (&abs_a + &abs_b);
            total += &tau * &abs_a / &two + (delta - &tau) * &abs_b / &two;
        }
    }
    Ok(total)
}

/// Midpoint-rule estimate of `∫|k(t_j, ·)|` on a uniform grid, in floats.
pub fn float_quadrature_check(j: usize, inv: &DenseMatrix, ks: &KnotSequence, grid: usize) -> Result<f64> {
    let n = ks.len();
    if inv.dim() != n || j >= n {
        return Err(Error::Dimension(format!("row {j} of a {} × {} inverse for {n} knots", inv.dim(), inv.dim())));
    }
    if grid == 0 {
        return Err(Error::OutOfRange("grid must be positive".into()));
    }
    let knots: Vec<f64> = ks.knots().iter().map(rational_to_f64).chain([1.0]).collect();
    let vals: Vec<f64> = (0..=n).map(|k| rational_to_f64(inv.get(j, k % n))).collect();
    let h = 1.0 / grid as f64;
    let mut k = 0;
    let mut sum = 0.0;
    for i in 0..grid {
        let t = (i as f64 + 0.5) * h;
        while k + 1 < n && t >= knots[k + 1] {
            k += 1;
        }
        let u = (t - knots[k]) / (knots[k + 1] - knots[k]);
        sum += (vals[k] * (1.0 - u) + vals[k + 1] * u).abs();
    }
    Ok(sum * h)
}

/// `∫|k(t_j, ·)|` for every knot.
pub fn oracle_kappas(ks: &KnotSequence) -> Result<Vec<BigRational>> {
    let inv = dense_inverse(&DenseMatrix::gram(ks))?;
    (0..ks.len()).map(|j| abs_kernel_integral(j, &inv, ks)).collect()
}

/// `max_j ∫|k(t_j, ·)|`, the projection norm, by brute force.
pub fn oracle_norm(ks: &KnotSequence) -> Result<BigRational> {
    Ok(oracle_kappas(ks)?.into_iter().max().expect("at least two knots"))
}

/// Gram matrix by integrating products of hats interval by interval:
/// `∫ u·v = δ/6·(2u₁v₁ + u₁v₂ + u₂v₁ + 2u₂v₂)` for linear `u`, `v` with
/// endpoint values `u₁, u₂`, `v₁, v₂`. Hat values come from point evaluation,
/// not from the gap pattern used by [`gram_matrix`].
pub fn integrated_gram(ks: &KnotSequence) -> Result<DenseMatrix> {
    let n = ks.len();
    let mut entries = vec![vec![BigRational::zero(); n]; n];
    let six = BigRational::from_integer(6.into());
    let two = BigRational::from_integer(2.into());
    for k in 0..n {
        let left = &ks.knots()[k];
        let right = ks.knots().get(k + 1).cloned().unwrap_or_else(BigRational::one);
        let delta = &right - left;
        let u: Vec<BigRational> = (0..n).map(|j| bspline_eval(ks, j, left)).collect::<Result<_>>()?;
        let v: Vec<BigRational> = (0..n).map(|j| bspline_eval(ks, j, &right)).collect::<Result<_>>()?;
        for a in 0..n {
            if u[a].is_zero() && v[a].is_zero() {
                continue;
            }
            for b in 0..n {
                let s = &two * &u[a] * &u[b] + &u[a] * &v[b] + &v[a] * &u[b] + &two * &v[a] * &v[b];
                entries[a][b] += &delta * s / &six;
            }
        }
    }
    DenseMatrix::new(entries)
}

/// Pivots of the exact LDLᵀ factorisation (no pivoting). All positive iff
/// the symmetric matrix is positive definite.
pub fn ldl_pivots(m: &DenseMatrix) -> Vec<BigRational> {
    let n = m.dim();
    let mut a = m.entries.clone();
    let mut pivots = Vec::with_capacity(n);
    for k in 0..n {
        let p = a[k][k].clone();
        pivots.push(p.clone());
        if p.is_zero() {
            break;
        }
        for i in k + 1..n {
            let f = &a[i][k] / &p;
            for c in k..n {
                let sub = &f * &a[k][c];
                a[i][c] -= sub;
            }
        }
    }
    pivots
}
