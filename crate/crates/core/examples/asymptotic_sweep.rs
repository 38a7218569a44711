//! Distance from γ as N grows with ν fixed.

use franklin_lebesgue::lebesgue::asymptotic_sweep;

fn main() -> franklin_lebesgue::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<usize>());
    let nu = args.next().and_then(Result::ok).unwrap_or(1);
    let n_max = args.next().and_then(Result::ok).unwrap_or(40);

    let entries = asymptotic_sweep(nu, n_max)?;
    println!("{:>4}  {:<12}  gamma - norm", "N", "norm");
    for e in &entries {
        println!("{:>4}  {:<12}  {}", e.knot_count, e.decimal, e.gap_decimal);
    }
    let ratios: Vec<f64> = entries.windows(2).map(|w| w[1].gap.to_f64() / w[0].gap.to_f64()).collect();
    if let Some(r) = ratios.last() {
        println!("last gap ratio {r:.6}");
    }
    Ok(())
}
