//! The operator norm `‖P_{n,ν}‖_∞ = max_j κ(j)` and its certification
//! against the limit constant γ = 2 + (33 − 18√3)/13.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::decimal::{format_quadratic_sci, format_rational, Rounding};
use crate::error::{Error, Result};
use crate::invgram::{inverse_row, inverse_rows, InverseRow};
use crate::quadratic::QuadraticRational;
use crate::recurrences::{phi, phi_quadratic, HyperbolicTable};
use crate::splines::{special_knots, KnotConfig, KnotSequence};

/// Exact norm of one projection together with every κ(j).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormReport {
    pub cfg: KnotConfig,
    pub kappas: Vec<BigRational>,
    pub norm: BigRational,
    /// Smallest maximising row.
    pub argmax: usize,
    pub below_gamma: bool,
    /// `norm` rounded half-even to 8 places.
    pub decimal: String,
}

impl NormReport {
    /// κ(j) is the same for every row (expected for uniform knots).
    pub fn is_shift_invariant(&self) -> bool {
        self.kappas.windows(2).all(|w| w[0] == w[1])
    }
}

fn same_sign(u: &BigInt, v: &BigInt) -> bool {
    // a zero endpoint agrees with either neighbour
    u.is_zero() || v.is_zero() || u.is_positive() == v.is_positive()
}

/// κ(j) = ∫|k(t_j, t)| dt from one inverse row.
///
/// Interval `k` contributes `δ_k/2 · (|a_k| + |a_{k+1}|)`, damped by
/// `φ(|a_{k+1}|/|a_k|)` when the two endpoint values have opposite signs.
/// The damped term is summed in the equivalent form
/// `δ_k/2 · (a_k² + a_{k+1}²)/(|a_k| + |a_{k+1}|)`.
pub fn kappa(row: &InverseRow, ks: &KnotSequence) -> Result<BigRational> {
    let count = ks.len();
    if row.knot_count != count {
        return Err(Error::Dimension(format!("row for N = {} against {count} knots", row.knot_count)));
    }
    let v = row.signed_numerators();
    let mut sum = LazySum::default();
    for (k, delta) in ks.gaps().iter().enumerate() {
        let (u, w) = (&v[k], &v[(k + 1) % count]);
        let (au, aw) = (u.abs(), w.abs());
        let mass = &au + &aw;
        if mass.is_zero() {
            continue;
        }
        let half_delta = delta.denom() * 2u32;
        if same_sign(u, w) {
            sum.add(delta.numer() * mass, half_delta);
        } else {
            // mass · φ(|w|/|u|) = (u² + w²) / (|u| + |w|)
            sum.add(delta.numer() * (&au * &au + &aw * &aw), half_delta * mass);
        }
    }
    Ok(sum.finish() * row.factor())
}

/// Sum of fractions with a single reduction at the end.
#[derive(Debug)]
struct LazySum {
    num: BigInt,
    den: BigInt,
}

impl Default for LazySum {
    fn default() -> Self {
        LazySum { num: BigInt::zero(), den: BigInt::one() }
    }
}

impl LazySum {
    fn add(&mut self, a: BigInt, b: BigInt) {
        let (q, r) = self.den.div_rem(&b);
        if r.is_zero() {
            self.num += a * q;
        } else {
            self.num = &self.num * &b + a * &self.den;
            self.den *= b;
        }
    }

    fn finish(self) -> BigRational {
        BigRational::new(self.num, self.den)
    }
}

/// Exact comparison of `x` with γ.
pub fn gamma_compare(x: &BigRational) -> Ordering {
    QuadraticRational::rational(x.clone()).cmp(&QuadraticRational::gamma())
}

/// ‖P_{n,ν}‖_∞ with all κ(j).
pub fn projection_norm(cfg: KnotConfig) -> Result<NormReport> {
    let ks = special_knots(cfg);
    let kappas = inverse_rows(cfg)?.iter().map(|row| kappa(row, &ks)).collect::<Result<Vec<_>>>()?;
    Ok(report_from_kappas(cfg, kappas))
}

pub(crate) fn report_from_kappas(cfg: KnotConfig, kappas: Vec<BigRational>) -> NormReport {
    let mut argmax = 0;
    for (j, k) in kappas.iter().enumerate() {
        if *k > kappas[argmax] {
            argmax = j;
        }
    }
    let norm = kappas[argmax].clone();
    NormReport {
        cfg,
        below_gamma: gamma_compare(&norm) == Ordering::Less,
        decimal: format_rational(&norm, 8, Rounding::HalfEven),
        norm,
        argmax,
        kappas,
    }
}

/// Norms for many configurations in parallel, in input order.
pub fn projection_norms(cfgs: &[KnotConfig]) -> Result<Vec<NormReport>> {
    cfgs.par_iter().map(|&c| projection_norm(c)).collect()
}

/// First `k` at which the consecutive quotient bounds fail.
///
/// Checks `c⁻¹ ≤ |g_{k+1}|/|g_k| ≤ c` with `c = 6` at `k ∈ {0, 2ν−1}` and
/// `c = 4` elsewhere, and `c = 4` at `j = k = 0`. For odd `N` only
/// `|k − j| ≤ (N−5)/2` or `|k − j| ≥ (N+5)/2` is in scope, and odd `N < 7`
/// has no checked indices.
pub fn quotient_bound_violation(cfg: KnotConfig, j: usize) -> Result<Option<usize>> {
    let count = cfg.knot_count();
    if cfg.nu == 0 || 2 * cfg.nu + 1 > count {
        return Err(Error::OutOfRange(format!("quotient bounds need 1 ≤ ν ≤ (N−1)/2, got N = {count}, ν = {}", cfg.nu)));
    }
    let row = inverse_row(cfg, j)?;
    Ok(quotient_bound_violation_in(&row, cfg.nu))
}

pub(crate) fn quotient_bound_violation_in(row: &InverseRow, nu: usize) -> Option<usize> {
    let count = row.knot_count;
    let j = row.j;
    let odd = count % 2 == 1;
    if odd && count < 7 {
        return None;
    }
    (0..count).find(|&k| {
        if odd {
            let d = k.abs_diff(j);
            if !(2 * d + 5 <= count || 2 * d >= count + 5) {
                return false;
            }
        }
        let c: u32 = if j == 0 && k == 0 {
            4
        } else if k == 0 || k + 1 == 2 * nu {
            6
        } else {
            4
        };
        let (gk, gk1) = (row.g[k].abs(), row.g[(k + 1) % count].abs());
        gk.is_zero() || gk1.is_zero() || gk > &gk1 * c || gk1 > &gk * c
    })
}

pub fn check_quotient_bounds(cfg: KnotConfig, j: usize) -> Result<bool> {
    Ok(quotient_bound_violation(cfg, j)?.is_none())
}

/// One point of the norm-versus-N series.
#[derive(Clone, Debug, Serialize)]
pub struct SweepEntry {
    pub knot_count: usize,
    #[serde(skip)]
    pub norm: BigRational,
    pub decimal: String,
    /// γ − norm, exactly.
    #[serde(skip)]
    pub gap: QuadraticRational,
    /// |γ − norm| to 30 significant digits.
    pub gap_decimal: String,
}

/// Norms for fixed ν and `n = 2..=N_max − ν` (configurations with ν > n
/// are skipped).
pub fn asymptotic_sweep(nu: usize, max_knots: usize) -> Result<Vec<SweepEntry>> {
    if max_knots < nu + 2 {
        return Err(Error::OutOfRange(format!("N_max = {max_knots} must be at least ν + 2 = {}", nu + 2)));
    }
    let cfgs: Vec<KnotConfig> = (2..=max_knots - nu).filter_map(|n| KnotConfig::new(n, nu).ok()).collect();
    cfgs.par_iter()
        .map(|&cfg| {
            let report = projection_norm(cfg)?;
            let gap = &QuadraticRational::gamma() - &QuadraticRational::rational(report.norm.clone());
            Ok(SweepEntry {
                knot_count: cfg.knot_count(),
                gap_decimal: format_quadratic_sci(&gap.abs(), 30),
                decimal: report.decimal,
                norm: report.norm,
                gap,
            })
        })
        .collect()
}

/// κ(1) for ν = 1 from the specialised sums over `A_k`, `B_k` (with
/// `K = N − 1`). For even N:
/// `3D⁻¹[(2+6B_K+2A_K)φ((1+A_K−B_K)/(4B_K)) + 8Σ_{k=2}^{K} A_{k−1}φ(A_{|N/2−k|}/A_{|N/2−k+1|})]`;
/// for odd N:
/// `6D⁻¹[(3B_K+A_K−1)φ((A_K−B_K−1)/(4B_K)) + 4Σ_{k=2}^{K/2}(A_{N−k}−A_{k−1})φ(B_{N/2−k}/B_{N/2−k+1}) + 4B_{K/2}]`.
pub fn kappa_nu1_closed_form(knot_count: usize) -> Result<BigRational> {
    let n = knot_count;
    if n < 4 {
        return Err(Error::OutOfRange(format!("closed form needs N ≥ 4, got {n}")));
    }
    let t = HyperbolicTable::shared(n + 1);
    let q = |x: &BigInt| QuadraticRational::from(x.clone());
    let kk = n - 1;
    let (ak, bk) = (q(t.a(kk)), q(t.b(kk)));
    let one = QuadraticRational::one();
    let int = |x: i64| QuadraticRational::from(x);
    let d = crate::invgram::denominator(n, 1)?;
    let bracket = if n % 2 == 0 {
        let head_mass = &(&int(2) + &(&int(6) * &bk)) + &(&int(2) * &ak);
        let head = &head_mass * &phi_quadratic(&(&(&(&one + &ak) - &bk) / &(&int(4) * &bk)))?;
        let mut sum = QuadraticRational::zero();
        for k in 2..=kk {
            let ratio = t.half_ratio_a(n.abs_diff(2 * k), n.abs_diff(2 * k - 2))?;
            sum = &sum + &(&q(t.a(k - 1)) * &phi_quadratic(&ratio)?);
        }
        &(&head + &(&int(8) * &sum)) * &int(3)
    } else {
        let head_mass = &(&(&int(3) * &bk) + &ak) - &one;
        let head = &head_mass * &phi_quadratic(&(&(&(&ak - &bk) - &one) / &(&int(4) * &bk)))?;
        let mut sum = QuadraticRational::zero();
        for k in 2..=kk / 2 {
            let ratio = t.half_ratio_b(n - 2 * k, n - 2 * k + 2)?;
            let mass = &q(t.a(n - k)) - &q(t.a(k - 1));
            sum = &sum + &(&mass * &phi_quadratic(&ratio)?);
        }
        let tail = &int(4) * &q(t.b(kk / 2));
        &(&(&head + &(&int(4) * &sum)) + &tail) * &int(6)
    };
    let value = &bracket / &QuadraticRational::rational(d);
    value
        .to_rational()
        .ok_or_else(|| Error::OutOfRange(format!("closed form for N = {n} left ℚ: {value}")))
}

/// Whether the generic κ(1) and [`kappa_nu1_closed_form`] agree exactly.
pub fn kappa_decomposition_check(knot_count: usize) -> Result<bool> {
    let cfg = KnotConfig::from_knot_count(knot_count, 1)?;
    let generic = kappa(&inverse_row(cfg, 1)?, &special_knots(cfg))?;
    Ok(generic == kappa_nu1_closed_form(knot_count)?)
}

/// Constants from the estimates of κ(j), as exact elements of ℚ(√3).
pub mod constants {
    use super::*;
    use crate::recurrences::{phi_at_lambda, phi_prime};

    fn rat(n: i64, d: i64) -> QuadraticRational {
        QuadraticRational::rational(BigRational::new(n.into(), d.into()))
    }

    /// `s = (3/2)(φ(6) − φ(4))`.
    pub fn s() -> BigRational {
        let (p6, p4) = (phi(&BigRational::from_integer(6.into())).unwrap(), phi(&BigRational::from_integer(4.into())).unwrap());
        BigRational::new(3.into(), 2.into()) * (p6 - p4)
    }

    /// η = (√3 − 1)/4.
    pub fn eta() -> QuadraticRational {
        QuadraticRational::new(BigRational::new((-1).into(), 4.into()), BigRational::new(1.into(), 4.into()))
    }

    /// Limit of κ(1) for ν = 1:
    /// `6/(18 − 2√3)·[(3+√3)φ(η) + 2φ(λ)(3−√3)]`.
    pub fn nu1_limit() -> QuadraticRational {
        let lhs = &QuadraticRational::from_ints(3, 1) * &phi_quadratic(&eta()).unwrap();
        let rhs = &(&QuadraticRational::from(2) * &phi_at_lambda()) * &QuadraticRational::from_ints(3, -1);
        &(&QuadraticRational::from(6) / &QuadraticRational::from_ints(18, -2)) * &(&lhs + &rhs)
    }

    /// Bound on κ(0): `51/25 + s/(2λ)·(2√3 − 1)`.
    pub fn row0_bound() -> QuadraticRational {
        let s = QuadraticRational::rational(s());
        let tail = &(&s / &(&QuadraticRational::from(2) * &QuadraticRational::lambda())) * &QuadraticRational::from_ints(-1, 2);
        &rat(51, 25) + &tail
    }

    /// `a₂` for rows `1 ≤ j ≤ 2ν − 1`: `3/2 + λ⁻² + √3λ⁻³`.
    pub fn a2_low_rows() -> QuadraticRational {
        let li = QuadraticRational::lambda_inv();
        &(&rat(3, 2) + &li.pow(2)) + &(&QuadraticRational::sqrt3() * &li.pow(3))
    }

    /// `a₂` for rows `2ν ≤ j`: `(3/2)(√3 − 1) + λ⁻¹`.
    pub fn a2_high_rows() -> QuadraticRational {
        &(&rat(3, 2) * &QuadraticRational::from_ints(-1, 1)) + &QuadraticRational::lambda_inv()
    }

    /// `51/25 + s·a₂/2`.
    pub fn rows_bound(a2: &QuadraticRational) -> QuadraticRational {
        &rat(51, 25) + &(&(&QuadraticRational::rational(s()) * a2) / &QuadraticRational::from(2))
    }

    /// θ from the odd uniform estimate, which vanishes:
    /// `(1 − λ⁻¹) − (√3 − 1/3) + (1+λ)λφ′(λ)(√3 − 1)`.
    pub fn uniform_theta() -> QuadraticRational {
        let l = QuadraticRational::lambda();
        let one = QuadraticRational::one();
        let a = &one - &QuadraticRational::lambda_inv();
        let b = &QuadraticRational::sqrt3() - &rat(1, 3);
        let c = &(&(&(&one + &l) * &l) * &phi_prime(&l)) * &QuadraticRational::from_ints(-1, 1);
        &(&a - &b) + &c
    }

    /// σ = (3+√3)φ(η) + 2φ(λ)(3−√3), which equals γ(18 − 2√3)/6.
    pub fn sigma() -> QuadraticRational {
        &(&QuadraticRational::from_ints(3, 1) * &phi_quadratic(&eta()).unwrap())
            + &(&(&QuadraticRational::from(2) * &phi_at_lambda()) * &QuadraticRational::from_ints(3, -1))
    }

    /// τ = 12φ(λ) − 4 − 48φ′(λ)/(1 − λ⁻¹).
    pub fn tau() -> QuadraticRational {
        let l = QuadraticRational::lambda();
        let frac = &(&QuadraticRational::from(48) * &phi_prime(&l)) / &(&QuadraticRational::one() - &QuadraticRational::lambda_inv());
        &(&(&QuadraticRational::from(12) * &phi_at_lambda()) - &QuadraticRational::from(4)) - &frac
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadratic::ratio;

    fn norm(n: usize, nu: usize) -> NormReport {
        projection_norm(KnotConfig::new(n, nu).unwrap()).unwrap()
    }

    #[test]
    fn two_uniform_knots() {
        let ks = special_knots(KnotConfig::new(2, 0).unwrap());
        let row = inverse_row(KnotConfig::new(2, 0).unwrap(), 0).unwrap();
        assert_eq!(kappa(&row, &ks).unwrap(), ratio(5, 3));
        assert_eq!(norm(2, 0).decimal, "1.66666667");
    }

    #[test]
    fn small_table_values() {
        assert_eq!(norm(2, 1).norm, ratio(83, 45));
        assert_eq!(norm(3, 0).norm, ratio(16, 9));
        assert_eq!(norm(3, 1).norm, ratio(2, 1));
        assert_eq!(norm(3, 1).decimal, "2.00000000");
        assert_eq!(norm(19, 1).decimal, "2.14023316");
        assert_eq!(norm(19, 1).argmax, 1);
    }

    #[test]
    fn uniform_rows_agree() {
        for n in 2..12 {
            assert!(norm(n, 0).is_shift_invariant());
            assert!(norm(n, n).is_shift_invariant());
        }
    }

    #[test]
    fn gamma_comparisons() {
        assert_eq!(gamma_compare(&ratio(2, 1)), Ordering::Less);
        assert_eq!(gamma_compare(&ratio(3, 1)), Ordering::Greater);
        assert_eq!(gamma_compare(&norm(19, 1).norm), Ordering::Less);
        // bracket γ ≈ 2.140237343...
        assert_eq!(gamma_compare(&ratio(2_140_237_343, 1_000_000_000)), Ordering::Less);
        assert_eq!(gamma_compare(&ratio(2_140_237_344, 1_000_000_000)), Ordering::Greater);
    }

    #[test]
    fn quotient_bounds() {
        let c = KnotConfig::new(4, 1).unwrap();
        assert!(check_quotient_bounds(c, 0).unwrap());
        let c = KnotConfig::new(10, 3).unwrap();
        for j in 0..13 {
            assert!(check_quotient_bounds(c, j).unwrap(), "j={j}");
        }
        assert!(check_quotient_bounds(KnotConfig::new(5, 0).unwrap(), 0).is_err());
    }

    #[test]
    fn quotient_domain_for_odd_n() {
        // N = 7, j = 3: k with |k − j| = 3 = (N−1)/2 is outside the domain
        let row = inverse_row(KnotConfig::from_knot_count(7, 1).unwrap(), 3).unwrap();
        let mut g = row.clone();
        g.g[0] = BigInt::zero();
        g.g[6] = BigInt::zero();
        // only k ∈ {2, 3, 4} (|k − 3| ≤ 1) are inspected; k = 2 reads g_3
        assert_eq!(quotient_bound_violation_in(&g, 1), None);
        g.g[3] = BigInt::zero();
        assert_eq!(quotient_bound_violation_in(&g, 1), Some(2));
    }

    #[test]
    fn nu1_closed_forms() {
        for n in [4, 5, 6, 7, 8, 13, 20, 21] {
            assert!(kappa_decomposition_check(n).unwrap(), "N={n}");
        }
    }

    #[test]
    fn sweep_small() {
        let s = asymptotic_sweep(1, 8).unwrap();
        assert_eq!(s.iter().map(|e| e.knot_count).collect::<Vec<_>>(), vec![3, 4, 5, 6, 7, 8]);
        assert!(s.iter().all(|e| e.gap.is_positive()));
        assert_eq!(s[1].decimal, "2.00000000");
        assert!(asymptotic_sweep(3, 4).is_err());
    }

    #[test]
    fn estimate_constants() {
        use constants::*;
        assert_eq!(s(), ratio(138, 1225));
        assert_eq!(nu1_limit(), QuadraticRational::gamma());
        assert!(uniform_theta().is_zero());
        let gamma = QuadraticRational::gamma();
        assert_eq!(sigma(), &(&gamma * &QuadraticRational::from_ints(18, -2)) / &QuadraticRational::from(6));
        assert!(tau().is_positive());
        let r0 = row0_bound();
        let low = rows_bound(&a2_low_rows());
        let high = rows_bound(&a2_high_rows());
        assert!(r0 < gamma && low < gamma && high < gamma);
        assert!((r0.to_f64() - 2.07719).abs() < 5e-6);
        assert!(low.to_f64() <= 2.130411 && low.to_f64() > 2.1304);
        assert!((high.to_f64() - 2.117).abs() < 5e-4);
    }
}
