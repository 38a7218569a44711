//! The verification suite behind `franklin verify`.
//!
//! Every check that consumes inverse rows takes them from a caller-supplied
//! row source, so a deliberately broken formula can be fed through the same
//! pipeline and must surface as a concrete `(N, ν, j, k)` counterexample.

use std::fmt;

use rayon::prelude::*;

use crate::cli::{render_table, table_cells_with, TableFormat};
use crate::error::Result;
use crate::invgram::{inverse_row, nu1_identity_violation, InverseRow};
use crate::lebesgue::{
    constants, gamma_compare, kappa, kappa_decomposition_check, quotient_bound_violation_in, report_from_kappas,
    NormReport,
};
use crate::oracle::{abs_kernel_integral, dense_inverse, DenseMatrix};
use crate::quadratic::{ratio, QuadraticRational};
use crate::recurrences::{asym_identity_violation, phi, phi_at_lambda, sum_identity_violation};
use crate::splines::{special_knots, KnotConfig};

/// Golden rendering of `table --n-max 20 --format text`.
pub const GOLDEN_TABLE: &str = include_str!("../tests/golden/table1.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

/// Index ranges exercised at one level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub identity_index: usize,
    pub oracle_knots: usize,
    pub structure_knots: usize,
    pub nu1_knots: usize,
    pub certificate_knots: usize,
}

impl Level {
    pub fn limits(self) -> Limits {
        match self {
            Level::Quick => Limits {
                identity_index: 200,
                oracle_knots: 20,
                structure_knots: 20,
                nu1_knots: 40,
                certificate_knots: 30,
            },
            Level::Full => Limits {
                identity_index: 2000,
                oracle_knots: 40,
                structure_knots: 40,
                nu1_knots: 100,
                certificate_knots: 60,
            },
        }
    }
}

/// Where a check failed. Unknown coordinates are left empty.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Counterexample {
    pub knot_count: Option<usize>,
    pub nu: Option<usize>,
    pub j: Option<usize>,
    pub k: Option<usize>,
    pub detail: String,
}

impl Counterexample {
    fn at(cfg: KnotConfig, j: Option<usize>, k: Option<usize>, detail: impl Into<String>) -> Self {
        Counterexample { knot_count: Some(cfg.knot_count()), nu: Some(cfg.nu), j, k, detail: detail.into() }
    }

    fn plain(detail: impl Into<String>) -> Self {
        Counterexample { detail: detail.into(), ..Default::default() }
    }
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords: Vec<String> = [("N", self.knot_count), ("nu", self.nu), ("j", self.j), ("k", self.k)]
            .iter()
            .filter_map(|(name, v)| v.map(|v| format!("{name}={v}")))
            .collect();
        if coords.is_empty() {
            write!(f, "{}", self.detail)
        } else {
            write!(f, "({}) {}", coords.join(", "), self.detail)
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub scope: String,
    pub failure: Option<Counterexample>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "PASS  {} [{}]", self.name, self.scope),
            Some(c) => write!(f, "FAIL  {} [{}]: {}", self.name, self.scope, c),
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub level: Level,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }

    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| !c.passed())
    }
}

/// Configurations with `N` knots: `ν = 0..=N/2`.
pub fn admissible(knot_count: usize) -> impl Iterator<Item = KnotConfig> {
    (0..=knot_count / 2).filter_map(move |nu| KnotConfig::from_knot_count(knot_count, nu).ok())
}

/// Configurations with `2 ≤ N ≤ max_knots`, ordered by `(N, ν)`.
pub fn admissible_upto(max_knots: usize) -> Vec<KnotConfig> {
    (2..=max_knots).flat_map(admissible).collect()
}

fn non_uniform_upto(max_knots: usize) -> Vec<KnotConfig> {
    admissible_upto(max_knots).into_iter().filter(|c| c.nu >= 1 && 2 * c.nu < c.knot_count()).collect()
}

fn error_at(cfg: KnotConfig, e: impl fmt::Display) -> Counterexample {
    Counterexample::at(cfg, None, None, format!("error: {e}"))
}

fn rows_of<F>(cfg: KnotConfig, rows: &F) -> std::result::Result<Vec<InverseRow>, Counterexample>
where
    F: Fn(KnotConfig, usize) -> Result<InverseRow>,
{
    (0..cfg.knot_count()).map(|j| rows(cfg, j).map_err(|e| Counterexample::at(cfg, Some(j), None, format!("error: {e}")))).collect()
}

/// Norm of `cfg` from the given row source.
pub fn norm_with<F>(cfg: KnotConfig, rows: &F) -> Result<NormReport>
where
    F: Fn(KnotConfig, usize) -> Result<InverseRow>,
{
    let ks = special_knots(cfg);
    let kappas = (0..cfg.knot_count()).map(|j| kappa(&rows(cfg, j)?, &ks)).collect::<Result<Vec<_>>>()?;
    Ok(report_from_kappas(cfg, kappas))
}

fn first_failure<T, C>(items: &[T], check: C) -> Option<Counterexample>
where
    T: Sync,
    C: Fn(&T) -> Option<Counterexample> + Sync + Send,
{
    items.par_iter().find_map_first(check)
}

/// Rows against dense exact inversion of the Gram matrix.
pub fn check_rows_against_oracle<F>(max_knots: usize, rows: &F) -> Option<Counterexample>
where
    F: Fn(KnotConfig, usize) -> Result<InverseRow> + Sync,
{
    first_failure(&admissible_upto(max_knots), |&cfg| {
        let inv = match dense_inverse(&DenseMatrix::gram(&special_knots(cfg))) {
            Ok(inv) => inv,
            Err(e) => return Some(error_at(cfg, e)),
        };
        let rows = match rows_of(cfg, rows) {
            Ok(r) => r,
            Err(c) => return Some(c),
        };
        rows.iter().enumerate().find_map(|(j, row)| {
            (0..cfg.knot_count()).find_map(|k| {
                let (got, want) = (row.entry(k), inv.get(j, k));
                (&got != want).then(|| Counterexample::at(cfg, Some(j), Some(k), format!("closed form {got}, dense {want}")))
            })
        })
    })
}

/// κ(j) from rows against the geometric integral of the dense kernel.
pub fn check_kappa_against_oracle<F>(max_knots: usize, rows: &F) -> Option<Counterexample>
where
    F: Fn(KnotConfig, usize) -> Result<InverseRow> + Sync,
{
    first_failure(&admissible_upto(max_knots), |&cfg| {
        let ks = special_knots(cfg);
        let inv = match dense_inverse(&DenseMatrix::gram(&ks)) {
            Ok(inv) => inv,
            Err(e) => return Some(error_at(cfg, e)),
        };
        let rows = match rows_of(cfg, rows) {
            Ok(r) => r,
            Err(c) => return Some(c),
        };
        rows.iter().enumerate().find_map(|(j, row)| {
            let got = match kappa(row, &ks) {
                Ok(v) => v,
                Err(e) => return Some(Counterexample::at(cfg, Some(j), None, format!("error: {e}"))),
            };
            match abs_kernel_integral(j, &inv, &ks) {
                Ok(want) if want == got => None,
                Ok(want) => Some(Counterexample::at(cfg, Some(j), None, format!("kappa {got}, oracle {want}"))),
                Err(e) => Some(Counterexample::at(cfg, Some(j), None, format!("error: {e}"))),
            }
        })
    })
}

/// Sign pattern of `g` for `1 ≤ ν ≤ (N−1)/2`, every row.
pub fn check_sign_structure<F>(max_knots: usize, rows: &F) -> Option<Counterexample>
where
    F: Fn(KnotConfig, usize) -> Result<InverseRow> + Sync,
{
    first_failure(&non_uniform_upto(max_knots), |&cfg| match rows_of(cfg, rows) {
        Err(c) => Some(c),
        Ok(rows) => rows.iter().find_map(|row| {
            row.sign_structure_violation()
                .map(|k| Counterexample::at(cfg, Some(row.j), Some(k), format!("g_k = {} has the wrong sign", row.g[k])))
        }),
    })
}

/// Consecutive quotient bounds for `1 ≤ ν ≤ (N−1)/2`, every row.
pub fn check_quotient_bounds<F>(max_knots: usize, rows: &F) -> Option<Counterexample>
where
    F: Fn(KnotConfig, usize) -> Result<InverseRow> + Sync,
{
    first_failure(&non_uniform_upto(max_knots), |&cfg| match rows_of(cfg, rows) {
        Err(c) => Some(c),
        Ok(rows) => rows.iter().find_map(|row| {
            quotient_bound_violation_in(row, cfg.nu).map(|k| {
                let next = (k + 1) % cfg.knot_count();
                Counterexample::at(cfg, Some(row.j), Some(k), format!("|g_{next}| / |g_{k}| = {} / {}", row.g[next], row.g[k]))
            })
        }),
    })
}

/// `table --n-max 20` against the golden rendering.
pub fn check_golden_table<F>(rows: &F) -> Option<Counterexample>
where
    F: Fn(KnotConfig, usize) -> Result<InverseRow> + Sync,
{
    let cells = match table_cells_with(20, 8, rows) {
        Ok(c) => c,
        Err(e) => return Some(Counterexample::plain(format!("error: {e}"))),
    };
    let rendered = render_table(&cells, TableFormat::Text);
    if rendered == GOLDEN_TABLE {
        return None;
    }
    let golden: Vec<Vec<&str>> = GOLDEN_TABLE.lines().skip(1).map(|l| l.split_whitespace().skip(1).collect()).collect();
    let mismatch = cells.iter().find(|c| {
        golden.get(c.knot_count - 2).and_then(|r| r.get(c.nu)).map_or(true, |g| *g != c.norm_decimal)
    });
    Some(match mismatch {
        Some(c) => Counterexample {
            knot_count: Some(c.knot_count),
            nu: Some(c.nu),
            detail: format!("computed {}", c.norm_decimal),
            ..Default::default()
        },
        None => Counterexample::plain("layout differs from the golden table"),
    })
}

/// `norm < γ` for every admissible configuration.
pub fn check_gamma_certificates<F>(max_knots: usize, rows: &F) -> Option<Counterexample>
where
    F: Fn(KnotConfig, usize) -> Result<InverseRow> + Sync,
{
    first_failure(&admissible_upto(max_knots), |&cfg| match norm_with(cfg, rows) {
        Err(e) => Some(error_at(cfg, e)),
        Ok(r) if gamma_compare(&r.norm).is_lt() => None,
        Ok(r) => Some(Counterexample::at(cfg, Some(r.argmax), None, format!("norm {} ≥ γ", r.decimal))),
    })
}

/// The constants behind the row estimates: each bound is below γ and the
/// limit of κ(1) for ν = 1 is exactly γ.
pub fn check_estimate_constants() -> Option<Counterexample> {
    use constants::*;
    let gamma = QuadraticRational::gamma();
    let checks: [(&str, bool); 7] = [
        ("s = 138/1225", s() == ratio(138, 1225)),
        ("row-0 bound < γ", row0_bound() < gamma),
        ("low-row bound < γ", rows_bound(&a2_low_rows()) < gamma),
        ("high-row bound < γ", rows_bound(&a2_high_rows()) < gamma),
        ("θ = 0", uniform_theta().is_zero()),
        ("τ > 0", tau().is_positive()),
        ("ν = 1 limit = γ", nu1_limit() == gamma),
    ];
    checks.iter().find(|(_, ok)| !ok).map(|(name, _)| Counterexample::plain(format!("{name} fails")))
}

fn check_phi_values() -> Option<Counterexample> {
    let at = |t: i64| phi(&ratio(t, 1)).ok();
    let cases = [
        ("φ(4) = 17/25", at(4) == Some(ratio(17, 25))),
        ("φ(6) = 37/49", at(6) == Some(ratio(37, 49))),
        ("φ(λ) = 2/3", phi_at_lambda() == QuadraticRational::rational(ratio(2, 3))),
        ("φ(1) = 1/2", at(1) == Some(ratio(1, 2))),
    ];
    cases.iter().find(|(_, ok)| !ok).map(|(name, _)| Counterexample::plain(format!("{name} fails")))
}

fn nu1_failure(max_knots: usize) -> Option<Counterexample> {
    let ns: Vec<usize> = (3..=max_knots).collect();
    first_failure(&ns, |&n| {
        let cfg = KnotConfig::from_knot_count(n, 1).ok()?;
        match nu1_identity_violation(n) {
            Ok(None) => None,
            Ok(Some(what)) => Some(Counterexample::at(cfg, Some(1), None, what)),
            Err(e) => Some(error_at(cfg, e)),
        }
    })
}

fn nu1_kappa_failure(max_knots: usize) -> Option<Counterexample> {
    let ns: Vec<usize> = (4..=max_knots).collect();
    first_failure(&ns, |&n| {
        let cfg = KnotConfig::from_knot_count(n, 1).ok()?;
        match kappa_decomposition_check(n) {
            Ok(true) => None,
            Ok(false) => Some(Counterexample::at(cfg, Some(1), None, "closed-form κ(1) differs")),
            Err(e) => Some(error_at(cfg, e)),
        }
    })
}

/// Runs the suite with the closed-form rows.
pub fn run(level: Level) -> VerifyReport {
    run_with(level, &inverse_row)
}

/// Runs the suite with rows from `rows`.
pub fn run_with<F>(level: Level, rows: &F) -> VerifyReport
where
    F: Fn(KnotConfig, usize) -> Result<InverseRow> + Sync,
{
    let l = level.limits();
    let outcome = |name, scope: String, failure| CheckOutcome { name, scope, failure };
    let checks = vec![
        outcome(
            "recurrence sums",
            format!("K ≤ {}", l.identity_index),
            sum_identity_violation(l.identity_index)
                .map(|(k, what)| Counterexample { k: Some(k), detail: what.into(), ..Default::default() }),
        ),
        outcome(
            "recurrence asymptotics",
            format!("K ≤ {}", l.identity_index),
            asym_identity_violation(l.identity_index).map(Counterexample::plain),
        ),
        outcome("phi special values", "exact".into(), check_phi_values()),
        outcome("inverse rows = dense inverse", format!("N ≤ {}", l.oracle_knots), check_rows_against_oracle(l.oracle_knots, rows)),
        outcome("kappa = geometric integral", format!("N ≤ {}", l.oracle_knots), check_kappa_against_oracle(l.oracle_knots, rows)),
        outcome("sign structure", format!("N ≤ {}", l.structure_knots), check_sign_structure(l.structure_knots, rows)),
        outcome("quotient bounds", format!("N ≤ {}", l.structure_knots), check_quotient_bounds(l.structure_knots, rows)),
        outcome("nu=1 row identities", format!("N ≤ {}", l.nu1_knots), nu1_failure(l.nu1_knots)),
        outcome("nu=1 closed-form kappa", format!("N ≤ {}", l.nu1_knots), nu1_kappa_failure(l.nu1_knots)),
        outcome("golden table", "N ≤ 20".into(), check_golden_table(rows)),
        outcome("gamma certificate", format!("N ≤ {}", l.certificate_knots), check_gamma_certificates(l.certificate_knots, rows)),
        outcome("estimate constants", "exact".into(), check_estimate_constants()),
    ];
    VerifyReport { level, checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissible_shapes() {
        let cfgs: Vec<_> = admissible(6).map(|c| (c.n, c.nu)).collect();
        assert_eq!(cfgs, vec![(6, 0), (5, 1), (4, 2), (3, 3)]);
        assert_eq!(non_uniform_upto(5).len(), 1 + 1 + 2);
    }

    #[test]
    fn counterexample_display() {
        let c = Counterexample::at(KnotConfig::new(5, 2).unwrap(), Some(1), Some(4), "bad");
        assert_eq!(c.to_string(), "(N=7, nu=2, j=1, k=4) bad");
        assert_eq!(Counterexample::plain("x").to_string(), "x");
    }

    #[test]
    fn small_oracle_checks_pass() {
        assert_eq!(check_rows_against_oracle(9, &inverse_row), None);
        assert_eq!(check_kappa_against_oracle(9, &inverse_row), None);
        assert_eq!(check_sign_structure(12, &inverse_row), None);
        assert_eq!(check_quotient_bounds(12, &inverse_row), None);
        assert_eq!(check_estimate_constants(), None);
    }

    #[test]
    fn flipped_entry_is_located() {
        let broken = |cfg: KnotConfig, j: usize| {
            let mut row = inverse_row(cfg, j)?;
            if cfg.knot_count() == 6 && cfg.nu == 1 && j == 2 {
                row.g[4] = -row.g[4].clone();
            }
            Ok(row)
        };
        let c = check_rows_against_oracle(8, &broken).unwrap();
        assert_eq!((c.knot_count, c.nu, c.j, c.k), (Some(6), Some(1), Some(2), Some(4)));
    }
}
