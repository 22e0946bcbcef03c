//! Plain and minimal sizes for the first numerals that compact.

use church_compact::bench::{format_table1, table1};

fn main() {
    print!("{}", format_table1(&table1()));
}
