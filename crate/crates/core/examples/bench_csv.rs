//! Size experiment over 1..=N written to stdout as CSV, summary on stderr.
//!
//! cargo run --release --example bench_csv -- 10000 > sizes.csv

use std::io;

use church_compact::bench::{format_rational, run_bench, write_csv};

fn main() -> io::Result<()> {
    let to: u64 = std::env::args()
        .nth(1)
        .map_or(2000, |s| s.parse().expect("N"));
    let (rows, summary) = run_bench(1, to);
    write_csv(io::stdout().lock(), &rows)?;
    eprintln!(
        "wins {}/{}, average ratio {}, first crossover {:?}",
        summary.wins_vs_binary,
        rows.len(),
        format_rational(&summary.avg_ratio_vs_binary),
        summary.crossover()
    );
    Ok(())
}
