//! Tetrational partitions of n for a few bases, and the λ-term for each.

use church_compact::rtp::{greedy_coefficients, slog, tetration};
use church_compact::{rtp, translate};

fn main() {
    let n: u64 = std::env::args()
        .nth(1)
        .map_or(201, |s| s.parse().expect("n"));
    println!(
        "towers of 2: {:?}",
        (0..5).map(|i| tetration(2, i).unwrap()).collect::<Vec<_>>()
    );
    println!("slog_2({n}) = {}", slog(2, n).unwrap());

    for phi in [2, 3, 4, 7] {
        if phi > n {
            break;
        }
        let d = rtp(n, phi).unwrap();
        let t = translate(&d).unwrap();
        println!("\nphi = {phi}: {n} = {} + {}", d.expr, d.r);
        println!("  coefficients {:?}", greedy_coefficients(phi, d.n_bar()));
        println!("  {:?}", d.ops());
        println!("  {} (size {})", t.term.to_text(true), t.size());
    }
}
