//! Compacts a numeral and prints each stage of the chain.
//!
//! cargo run --example compact_numeral -- 1000

use church_compact::{compact_min, compact_recursive};

fn main() {
    let n: u64 = std::env::args()
        .nth(1)
        .map_or(1000, |s| s.parse().expect("n"));
    let min = compact_min(n);
    println!("n = {n}, plain size {}", 2 * n + 3);
    println!(
        "single stage: phi* = {:?}, size {}",
        min.phi_star(),
        min.size()
    );

    let rec = compact_recursive(n);
    for stage in &rec.stages {
        println!(
            "  {} = T[{}] + {} with phi* = {}, function part size {}",
            stage.n,
            stage.n - stage.r,
            stage.r,
            stage.phi_star,
            stage.function_part.size()
        );
    }
    println!(
        "recursive: size {}, ends in C({})",
        rec.final_size, rec.tail
    );
    println!("{}", rec.final_term.to_text(true));
}
