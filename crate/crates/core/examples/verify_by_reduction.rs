//! Checks compacted terms against C(n) by normalizing them, and by the
//! faster value decoder.

use church_compact::{church, church_value, compact_recursive, normalize, Fuel, NormalizeOutcome};

fn main() {
    for n in [9, 64, 201, 300, 1000] {
        let t = compact_recursive(n).final_term;
        match normalize(&t, Fuel::default()) {
            NormalizeOutcome::Normal { term, steps } => {
                let ok = term == church(n);
                println!(
                    "n = {n:>4}: size {:>3}, {steps:>5} β-steps, normal form is C(n): {ok}",
                    t.size()
                );
            }
            NormalizeOutcome::Exhausted { steps, .. } => {
                println!("n = {n}: gave up after {steps} steps")
            }
        }
    }

    // decoding scales to numerals too large to print
    let n = 5_000_000;
    let t = compact_recursive(n).final_term;
    println!(
        "n = {n}: size {}, decodes to {:?}",
        t.size(),
        church_value(&t, n)
    );
}
