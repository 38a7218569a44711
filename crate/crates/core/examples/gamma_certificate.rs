//! Certifies norm < γ = 2 + (33 − 18√3)/13 for every configuration up to a
//! knot count, and checks the constants behind the analytic estimates.

use franklin_lebesgue::decimal::format_quadratic;
use franklin_lebesgue::lebesgue::{constants, projection_norms};
use franklin_lebesgue::verify::admissible_upto;
use franklin_lebesgue::QuadraticRational;

fn main() -> franklin_lebesgue::Result<()> {
    let max_knots = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(40);
    let gamma = QuadraticRational::gamma();
    println!("gamma = {gamma} ≈ {}", format_quadratic(&gamma, 20));

    let reports = projection_norms(&admissible_upto(max_knots))?;
    let worst = reports.iter().max_by(|a, b| a.norm.cmp(&b.norm)).expect("at least one configuration");
    let all_below = reports.iter().all(|r| r.below_gamma);
    println!(
        "{} configurations with N ≤ {max_knots}; all below gamma: {all_below}; largest {} at N = {}, nu = {}",
        reports.len(),
        worst.decimal,
        worst.cfg.knot_count(),
        worst.cfg.nu
    );

    let bounds = [
        ("kappa(0) bound", constants::row0_bound()),
        ("rows j < 2nu bound", constants::rows_bound(&constants::a2_low_rows())),
        ("rows j ≥ 2nu bound", constants::rows_bound(&constants::a2_high_rows())),
    ];
    for (name, b) in bounds {
        println!("{name:<20} {} < gamma: {}", format_quadratic(&b, 8), b < gamma);
    }
    println!("nu=1 limit equals gamma: {}", constants::nu1_limit() == gamma);
    Ok(())
}
