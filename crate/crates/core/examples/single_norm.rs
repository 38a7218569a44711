//! Exact norm of one projection, with every κ(j).

use franklin_lebesgue::decimal::{format_rational, Rounding};
use franklin_lebesgue::lebesgue::projection_norm;
use franklin_lebesgue::splines::{special_knots, KnotConfig};

fn main() -> franklin_lebesgue::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<usize>());
    let n = args.next().and_then(Result::ok).unwrap_or(19);
    let nu = args.next().and_then(Result::ok).unwrap_or(1);

    let cfg = KnotConfig::new(n, nu)?;
    let knots = special_knots(cfg);
    println!("knots: {}", knots.knots().iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" "));

    let report = projection_norm(cfg)?;
    for (j, k) in report.kappas.iter().enumerate() {
        println!("kappa({j:>2}) = {}", format_rational(k, 12, Rounding::HalfEven));
    }
    println!("norm = {} ≈ {} at j = {}", report.norm, report.decimal, report.argmax);
    println!("below gamma: {}", report.below_gamma);
    Ok(())
}
