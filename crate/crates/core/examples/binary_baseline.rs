//! The binary-digit baseline next to the tetrational compaction.

use church_compact::numerals::binary_church;
use church_compact::{church_value, compact_recursive};

fn main() {
    println!("{:>6} {:>7} {:>5}  binary term", "n", "binary", "rtp");
    for n in [2, 3, 13, 16, 100, 255, 256, 1000, 65536] {
        let b = binary_church(n);
        assert_eq!(church_value(&b, n), Ok(n));
        let text = if n < 20 {
            b.to_text(true)
        } else {
            String::new()
        };
        println!(
            "{n:>6} {:>7} {:>5}  {text}",
            b.size(),
            compact_recursive(n).final_size
        );
    }
}
