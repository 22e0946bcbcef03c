//! A repeated string as a numeral applied to its pattern.

use church_compact::bench::repeat_demo;
use church_compact::Fuel;

fn main() {
    let r = repeat_demo("abc", 4, Fuel::default()).unwrap();
    println!("{}", r.term.to_text(true));
    println!("  -> {}", r.outcome.normal_form().unwrap());

    let r = repeat_demo("ab", 500, Fuel::default()).unwrap();
    println!(
        "ab×500: term size {}, flat size {}, matches: {}",
        r.term.size(),
        r.expected.size(),
        r.matches()
    );
}
