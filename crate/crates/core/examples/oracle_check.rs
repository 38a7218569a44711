//! Closed-form inverse rows against dense exact elimination, for the
//! special knots and for an arbitrary knot sequence.

use franklin_lebesgue::invgram::inverse_rows;
use franklin_lebesgue::lebesgue::{kappa, projection_norm};
use franklin_lebesgue::oracle::{dense_inverse, float_quadrature_check, oracle_kappas, oracle_norm, DenseMatrix};
use franklin_lebesgue::quadratic::QuadraticRational;
use franklin_lebesgue::splines::{special_knots, KnotConfig, KnotSequence};
use num_rational::BigRational;

fn main() -> franklin_lebesgue::Result<()> {
    let cfg = KnotConfig::new(7, 3)?;
    let ks = special_knots(cfg);
    let inv = dense_inverse(&DenseMatrix::gram(&ks))?;
    let rows = inverse_rows(cfg)?;
    let rows_match = rows.iter().all(|r| r.entries().iter().enumerate().all(|(k, a)| a == inv.get(r.j, k)));
    println!("N = {}, nu = {}: closed-form rows equal dense inverse: {rows_match}", cfg.knot_count(), cfg.nu);

    let oracle = oracle_kappas(&ks)?;
    let closed: Vec<BigRational> = rows.iter().map(|r| kappa(r, &ks)).collect::<Result<_, _>>()?;
    println!("kappa from the weight formula equals the geometric integral: {}", oracle == closed);
    println!("norm {} (both paths)", projection_norm(cfg)?.decimal);

    let float = float_quadrature_check(1, &inv, &ks, 100_000)?;
    println!("midpoint rule for kappa(1): {float:.8} vs exact {:.8}", QuadraticRational::rational(closed[1].clone()).to_f64());

    let weights = [3, 1, 4, 1, 5, 9, 2, 6];
    let total: i64 = weights.iter().sum();
    let knots = weights
        .iter()
        .scan(0, |acc, w| {
            let t = BigRational::new((*acc).into(), total.into());
            *acc += w;
            Some(t)
        })
        .collect();
    let irregular = KnotSequence::new(knots)?;
    println!("irregular knots {:?}: norm {}", weights, oracle_norm(&irregular)?);
    Ok(())
}
