use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use church_compact::bench::{
    self, format_rational, format_table1, BenchConfig, CumulativeMode, DEFAULT_SEED,
    REFERENCE_AVG_RATIO_VS_BINARY, REFERENCE_WINS_VS_BINARY,
};
use church_compact::reduce::{NormalizeOutcome, DEFAULT_FUEL};
use church_compact::{church, normalize, rtp, translate, Compactor, Fuel, Term};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_FUEL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "church-compact",
    version,
    about = "Compact λ-terms for Church numerals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a compact term for n.
    Compact {
        n: u64,
        /// Use this base instead of searching for the best one.
        #[arg(long)]
        phi: Option<u64>,
        /// Stop after the single-stage minimum.
        #[arg(long)]
        no_recursive: bool,
        /// Show the decomposition and each stage of the chain.
        #[arg(long)]
        explain: bool,
        /// Print Church numerals as C<k>.
        #[arg(long)]
        sugar: bool,
        /// Normalize the result and report the β-step count.
        #[arg(long)]
        stats: bool,
    },
    /// Normalize the compact term for n and compare it with C(n).
    Verify {
        n: u64,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: u64,
    },
    /// Size experiment over [from, to], written as CSV.
    Bench {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEED, value_parser = parse_seed)]
        seed: u64,
        /// Cumulative curve as the mean of per-n ratios.
        #[arg(long)]
        alt_fig2: bool,
    },
    /// Plain and minimal sizes for n = 9..15.
    Table1,
    /// Repeat a pattern via a compact numeral and check the normal form.
    Demo {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        count: u64,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: u64,
    },
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| e.to_string())
}

fn fuel(steps: u64) -> Result<Fuel> {
    Fuel::new(steps).context("--fuel")
}

fn print_outcome(outcome: &NormalizeOutcome) {
    match outcome {
        NormalizeOutcome::Normal { steps, .. } => println!("steps: {steps}"),
        NormalizeOutcome::Exhausted { steps, .. } => println!("fuel exhausted after {steps} steps"),
    }
}

fn compact(
    n: u64,
    phi: Option<u64>,
    no_recursive: bool,
    explain: bool,
    sugar: bool,
    stats: bool,
) -> Result<u8> {
    if n == 0 {
        bail!("n must be positive");
    }
    let show = |t: &Term| t.to_text(sugar);
    let term = if let Some(phi) = phi {
        let d = rtp(n, phi)?;
        if explain {
            println!("decomposition: {n} = {} + {}", d.expr, d.r);
            println!("ops: {:?}", d.ops());
        }
        let t = translate(&d)?;
        t.term
    } else if no_recursive {
        let m = Compactor::global().compact_min(n);
        if explain {
            match m.translation() {
                None => println!("plain numeral is minimal"),
                Some(t) => {
                    let d = rtp(n, t.phi)?;
                    println!("phi*: {}", t.phi);
                    println!("decomposition: {n} = {} + {}", d.expr, d.r);
                }
            }
        }
        m.term().clone()
    } else {
        let r = Compactor::global().compact_recursive(n);
        if explain {
            for s in &r.stages {
                println!(
                    "stage n={} phi*={} r={} function part ({}): {}",
                    s.n,
                    s.phi_star,
                    s.r,
                    s.function_part.size(),
                    show(&s.function_part)
                );
            }
            println!("tail: C({})", r.tail);
        }
        r.final_term
    };
    println!("{}", show(&term));
    println!("size: {} (plain {})", term.size(), 2 * n as u128 + 3);
    if stats {
        let outcome = normalize(&term, Fuel::default());
        print_outcome(&outcome);
        if outcome.normal_form().is_none() {
            return Ok(EXIT_FUEL);
        }
    }
    Ok(0)
}

fn verify(n: u64, steps: u64) -> Result<u8> {
    if n == 0 {
        bail!("n must be positive");
    }
    let report = bench::verify(n, fuel(steps)?);
    println!("n: {n}  size: {}", report.size);
    print_outcome(&report.outcome);
    if report.outcome.normal_form().is_none() {
        println!("FAIL");
        return Ok(EXIT_FUEL);
    }
    if report.passed() {
        println!("PASS");
        Ok(0)
    } else {
        println!("FAIL (expected {})", church(n));
        Ok(EXIT_VERIFY_FAILED)
    }
}

fn run_bench(from: u64, to: u64, out: PathBuf, seed: u64, alt_fig2: bool) -> Result<u8> {
    if from == 0 || from > to {
        bail!("need 1 <= --from <= --to");
    }
    let config = BenchConfig {
        seed,
        mode: if alt_fig2 {
            CumulativeMode::MeanOfRatios
        } else {
            CumulativeMode::RatioOfMeans
        },
        ..BenchConfig::default()
    };
    let (rows, summary) = bench::run_bench_with(Compactor::global(), from, to, config);
    let file = File::create(&out).with_context(|| format!("creating {}", out.display()))?;
    bench::write_csv(BufWriter::new(file), &rows)?;
    let curve = out.with_extension("fig2.csv");
    let file = File::create(&curve).with_context(|| format!("creating {}", curve.display()))?;
    bench::write_cumulative_csv(BufWriter::new(file), &summary)?;

    println!(
        "rows: {}  -> {}, {}",
        rows.len(),
        out.display(),
        curve.display()
    );
    println!(
        "rtp_rec <= binary: {} of {} (reference: {REFERENCE_WINS_VS_BINARY} of 10000)",
        summary.wins_vs_binary,
        rows.len()
    );
    println!(
        "avg ratio rtp_rec/binary: {} (reference: {REFERENCE_AVG_RATIO_VS_BINARY})",
        format_rational(&summary.avg_ratio_vs_binary)
    );
    let crossings: Vec<u64> = summary.crossovers().collect();
    match (crossings.first(), crossings.last()) {
        (Some(first), Some(last)) => println!(
            "cumulative ratio crosses 1 upward {} time(s), first at n = {first}, last at n = {last}",
            crossings.len()
        ),
        _ => println!("cumulative ratio never crosses 1 upward"),
    }
    println!(
        "spot checks: {} sampled, {} failed",
        summary.spot_checked.len(),
        summary.spot_failures.len()
    );
    Ok(if summary.spot_failures.is_empty() {
        0
    } else {
        EXIT_VERIFY_FAILED
    })
}

fn demo(pattern: &str, count: u64, steps: u64) -> Result<u8> {
    let report = bench::repeat_demo(pattern, count, fuel(steps)?)?;
    println!("term: {}", report.term.to_text(true));
    print_outcome(&report.outcome);
    if report.exhausted() {
        return Ok(EXIT_FUEL);
    }
    if let Some(nf) = report.outcome.normal_form() {
        println!("normal form: {nf}");
    }
    if report.matches() {
        println!("PASS");
        Ok(0)
    } else {
        println!("FAIL");
        Ok(EXIT_VERIFY_FAILED)
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Compact {
            n,
            phi,
            no_recursive,
            explain,
            sugar,
            stats,
        } => compact(n, phi, no_recursive, explain, sugar, stats),
        Command::Verify { n, fuel } => verify(n, fuel),
        Command::Bench {
            from,
            to,
            out,
            seed,
            alt_fig2,
        } => run_bench(from, to, out, seed, alt_fig2),
        Command::Table1 => {
            print!("{}", format_table1(&bench::table1()));
            Ok(0)
        }
        Command::Demo {
            pattern,
            count,
            fuel,
        } => demo(&pattern, count, fuel),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
