//! Size experiment over a range of n: plain numeral, binary baseline, the
//! single-stage minimum and the recursive chain, with CSV output.

use std::fmt::Write as _;
use std::io;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::compact::Compactor;
use crate::numerals::{binary_church_size, church};
use crate::reduce::{church_value, normalize, ChurchValueError, Fuel, NormalizeOutcome};
use crate::term::{is_terminal_symbol, Term};

pub const DEFAULT_SEED: u64 = 0xC0FFEE;
pub const SPOT_CHECKS: usize = 100;
pub const CSV_HEADER: &str = "n,plain,binary,rtp_min,rtp_rec,ratio_rtp_binary";

/// Reference figures for the same experiment, printed for comparison.
pub const REFERENCE_WINS_VS_BINARY: u64 = 5187;
pub const REFERENCE_AVG_RATIO_VS_BINARY: f64 = 0.9962;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRow {
    pub n: u64,
    pub plain_size: usize,
    pub binary_size: usize,
    pub rtp_min_size: usize,
    pub rtp_recursive_size: usize,
    pub ratio_rtp_over_binary: Ratio<u64>,
}

/// How the cumulative curve is averaged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CumulativeMode {
    /// mean(rtp_rec over 1..n) / binary(n)
    #[default]
    RatioOfMeans,
    /// mean over m in 1..n of rtp_rec(m) / binary(m)
    MeanOfRatios,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchSummary {
    pub from: u64,
    pub to: u64,
    /// Rows with rtp_recursive_size ≤ binary_size.
    pub wins_vs_binary: u64,
    pub avg_ratio_vs_binary: BigRational,
    pub cumulative_avg_ratio_series: Vec<BigRational>,
    pub mode: CumulativeMode,
    pub spot_checked: Vec<u64>,
    pub spot_failures: Vec<u64>,
}

impl BenchSummary {
    /// First n at which the cumulative curve moves from below 1 to 1 or more.
    pub fn crossover(&self) -> Option<u64> {
        self.crossovers().next()
    }

    /// Every upward crossing of 1.
    pub fn crossovers(&self) -> impl Iterator<Item = u64> + '_ {
        let one = BigRational::one();
        let s = &self.cumulative_avg_ratio_series;
        (1..s.len())
            .filter(move |&i| s[i - 1] < one && s[i] >= one)
            .map(|i| self.from + i as u64)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct BenchConfig {
    pub seed: u64,
    pub mode: CumulativeMode,
    pub spot_checks: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            seed: DEFAULT_SEED,
            mode: CumulativeMode::RatioOfMeans,
            spot_checks: SPOT_CHECKS,
        }
    }
}

pub fn bench_row(compactor: &Compactor, n: u64) -> BenchRow {
    let binary_size = binary_church_size(n);
    let rtp_recursive_size = compactor.recursive_size(n);
    BenchRow {
        n,
        plain_size: 2 * n as usize + 3,
        binary_size,
        rtp_min_size: compactor.choice(n).size,
        rtp_recursive_size,
        ratio_rtp_over_binary: Ratio::new(rtp_recursive_size as u64, binary_size as u64),
    }
}

fn big(r: Ratio<u64>) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

pub fn run_bench(from: u64, to: u64) -> (Vec<BenchRow>, BenchSummary) {
    run_bench_with(&Compactor::new(), from, to, BenchConfig::default())
}

/// Panics unless `1 <= from <= to`.
pub fn run_bench_with(
    compactor: &Compactor,
    from: u64,
    to: u64,
    config: BenchConfig,
) -> (Vec<BenchRow>, BenchSummary) {
    assert!(1 <= from && from <= to, "need 1 <= from <= to");
    let rows: Vec<BenchRow> = (from..=to)
        .into_par_iter()
        .map(|n| bench_row(compactor, n))
        .collect();

    let width = rows.len() as u64;
    let wins = rows
        .iter()
        .filter(|r| r.rtp_recursive_size <= r.binary_size)
        .count() as u64;
    let ratio_sum: BigRational = rows.iter().map(|r| big(r.ratio_rtp_over_binary)).sum();
    let avg = ratio_sum / BigRational::from_integer(BigInt::from(width));

    let mut series = Vec::with_capacity(rows.len());
    let mut size_sum = BigInt::zero();
    let mut ratio_acc = BigRational::zero();
    for (i, r) in rows.iter().enumerate() {
        let count = BigInt::from(i as u64 + 1);
        series.push(match config.mode {
            CumulativeMode::RatioOfMeans => {
                size_sum += r.rtp_recursive_size as u64;
                BigRational::new(size_sum.clone(), count * r.binary_size as u64)
            }
            CumulativeMode::MeanOfRatios => {
                ratio_acc += big(r.ratio_rtp_over_binary);
                ratio_acc.clone() / BigRational::from_integer(count)
            }
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let picks = config.spot_checks.min(rows.len());
    let mut spot: Vec<u64> = sample(&mut rng, rows.len(), picks)
        .into_iter()
        .map(|i| from + i as u64)
        .collect();
    spot.sort_unstable();
    let failures = spot
        .par_iter()
        .copied()
        .filter(|&n| {
            let t = compactor.compact_recursive(n).final_term;
            church_value(&t, n) != Ok(n)
        })
        .collect();

    let summary = BenchSummary {
        from,
        to,
        wins_vs_binary: wins,
        avg_ratio_vs_binary: avg,
        cumulative_avg_ratio_series: series,
        mode: config.mode,
        spot_checked: spot,
        spot_failures: failures,
    };
    (rows, summary)
}

/// `num/den` rounded half-up to six fractional digits.
pub fn format_ratio(num: &BigInt, den: &BigInt) -> String {
    let scaled = (num * BigInt::from(2_000_000u32) + den) / (den * BigInt::from(2u32));
    let million = BigInt::from(1_000_000u32);
    let int = &scaled / &million;
    let frac = &scaled % &million;
    format!("{int}.{frac:0>6}")
}

pub fn format_rational(r: &BigRational) -> String {
    format_ratio(r.numer(), r.denom())
}

pub fn write_csv<W: io::Write>(mut out: W, rows: &[BenchRow]) -> io::Result<()> {
    let mut buf = String::with_capacity(rows.len() * 32 + 64);
    buf.push_str(CSV_HEADER);
    buf.push('\n');
    for r in rows {
        let ratio = format_ratio(
            &BigInt::from(*r.ratio_rtp_over_binary.numer()),
            &BigInt::from(*r.ratio_rtp_over_binary.denom()),
        );
        writeln!(
            buf,
            "{},{},{},{},{},{}",
            r.n, r.plain_size, r.binary_size, r.rtp_min_size, r.rtp_recursive_size, ratio
        )
        .expect("writing to a String");
    }
    out.write_all(buf.as_bytes())
}

pub const FIG2_HEADER: &str = "n,cumulative_ratio";

/// Cumulative curve as CSV.
pub fn write_cumulative_csv<W: io::Write>(mut out: W, summary: &BenchSummary) -> io::Result<()> {
    let mut buf = String::new();
    buf.push_str(FIG2_HEADER);
    buf.push('\n');
    for (i, r) in summary.cumulative_avg_ratio_series.iter().enumerate() {
        writeln!(buf, "{},{}", summary.from + i as u64, format_rational(r)).expect("String write");
    }
    out.write_all(buf.as_bytes())
}

/// `(#C(n), compact_min size)` for n = 9..=15.
pub fn table1() -> Vec<(u64, usize, usize)> {
    (9..=15)
        .map(|n| {
            (
                n,
                church(n).size(),
                Compactor::global().compact_min(n).size(),
            )
        })
        .collect()
}

pub fn format_table1(rows: &[(u64, usize, usize)]) -> String {
    let mut s = String::from(" n | #C(n) | #min\n---+-------+-----\n");
    for (n, plain, min) in rows {
        writeln!(s, "{n:>2} | {plain:>5} | {min:>4}").expect("String write");
    }
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DemoError {
    #[error("pattern must be non-empty")]
    EmptyPattern,
    #[error("{0:?} is not a terminal symbol")]
    BadSymbol(char),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DemoReport {
    pub term: Term,
    pub expected: Term,
    pub outcome: NormalizeOutcome,
}

impl DemoReport {
    pub fn matches(&self) -> bool {
        self.outcome.normal_form() == Some(&self.expected)
    }

    pub fn exhausted(&self) -> bool {
        matches!(self.outcome, NormalizeOutcome::Exhausted { .. })
    }
}

fn pattern_term(pattern: &str) -> Result<Term, DemoError> {
    let mut chars = pattern.chars();
    let first = chars.next().ok_or(DemoError::EmptyPattern)?;
    let sym = |c: char| {
        if is_terminal_symbol(c) {
            Ok(Term::Const(c))
        } else {
            Err(DemoError::BadSymbol(c))
        }
    };
    let head = sym(first)?;
    let args = chars.map(sym).collect::<Result<Vec<_>, _>>()?;
    Ok(Term::apps(head, args))
}

/// The text `pattern^count $` as nested applications `(P (P … (P $)))`.
pub fn repeated_text_term(pattern: &str, count: u64) -> Result<Term, DemoError> {
    let p = pattern_term(pattern)?;
    Ok((0..count).fold(Term::Const('$'), |acc, _| Term::app(p.clone(), acc)))
}

/// Applies the compacted numeral for `count` to the pattern and `$`, then
/// normalizes and compares with the flat repetition.
pub fn repeat_demo(pattern: &str, count: u64, fuel: Fuel) -> Result<DemoReport, DemoError> {
    let p = pattern_term(pattern)?;
    if pattern.contains('$') {
        return Err(DemoError::BadSymbol('$'));
    }
    let numeral = Compactor::global().compact_recursive(count).final_term;
    let term = Term::apps(numeral, [p, Term::Const('$')]);
    let expected = repeated_text_term(pattern, count)?;
    let outcome = normalize(&term, fuel);
    Ok(DemoReport {
        term,
        expected,
        outcome,
    })
}

/// Checks `n` with both oracles: value decoding, and (when `normalize_too`)
/// syntactic normalization against C(n).
pub fn verify(n: u64, fuel: Fuel) -> VerifyReport {
    let result = Compactor::global().compact_recursive(n);
    let value = church_value(&result.final_term, n);
    let outcome = normalize(&result.final_term, fuel);
    VerifyReport {
        n,
        size: result.final_size,
        value,
        outcome,
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub n: u64,
    pub size: usize,
    pub value: Result<u64, ChurchValueError>,
    pub outcome: NormalizeOutcome,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.value == Ok(self.n) && self.outcome.normal_form() == Some(&church(self.n))
    }
}
