//! The integer sequences A_k, B_k and the identities they satisfy.

use franklin_lebesgue::invgram::nu1_identity_violation;
use franklin_lebesgue::recurrences::{
    asym_identity_violation, phi, phi_at_lambda, sum_identity_violation, HyperbolicTable,
};
use num_rational::BigRational;

fn main() -> franklin_lebesgue::Result<()> {
    let t = HyperbolicTable::new(12);
    for k in 0..=12 {
        let p = t.pair(k);
        println!("k={k:>2}  A={:<10} B={:<10} A²-3B²={}", p.a, p.b, p.pell());
    }
    println!("lambda^5 = {}", t.lambda_pow(5));

    let max = 500;
    println!("sum identities up to {max}: {:?}", sum_identity_violation(max).map_or("ok".into(), |v| format!("{v:?}")));
    println!("asymptotic identities up to {max}: {}", asym_identity_violation(max).unwrap_or_else(|| "ok".into()));

    let int = |n: i64| BigRational::from_integer(n.into());
    println!("phi(4) = {}, phi(6) = {}, phi(lambda) = {}", phi(&int(4))?, phi(&int(6))?, phi_at_lambda());

    let bad = (3..=60).find_map(|n| nu1_identity_violation(n).transpose());
    println!("nu = 1 row identities for N ≤ 60: {}", bad.map_or(Ok("ok".to_string()), |r| r)?);
    Ok(())
}
