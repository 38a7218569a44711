//! Feeds a deliberately broken inverse formula through the verification
//! suite and prints the counterexample it produces.

use franklin_lebesgue::invgram::{inverse_row, Branch};
use franklin_lebesgue::splines::KnotConfig;
use franklin_lebesgue::verify::{run_with, Level};

fn main() {
    let broken = |cfg: KnotConfig, j: usize| {
        let mut row = inverse_row(cfg, j)?;
        if !cfg.is_equally_spaced() {
            for k in 0..row.g.len() {
                if Branch::HighRight.applies(cfg.nu, j, k) {
                    row.g[k] = -row.g[k].clone();
                }
            }
        }
        Ok(row)
    };
    let report = run_with(Level::Quick, &broken);
    for c in &report.checks {
        println!("{c}");
    }
    match report.first_failure() {
        Some(c) => println!("first counterexample: {}", c.failure.as_ref().expect("failed")),
        None => println!("the mutation went unnoticed"),
    }
}
