//! Reproduces the table of norms for N = 2..=20 in all three formats.
//!
//! ```text
//! cargo run --example norm_table [n_max]
//! ```

use franklin_lebesgue::cli::{render_table, table_cells, TableFormat};

fn main() -> franklin_lebesgue::Result<()> {
    let n_max = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(20);
    let cells = table_cells(n_max, 8)?;
    print!("{}", render_table(&cells, TableFormat::Text));

    let small: Vec<_> = cells.iter().filter(|c| c.knot_count <= 4).cloned().collect();
    println!();
    print!("{}", render_table(&small, TableFormat::Csv));
    println!();
    print!("{}", render_table(&small, TableFormat::Json));
    Ok(())
}
