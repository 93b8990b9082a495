mod expr;

use anyhow::{anyhow, bail, Result};
use clap::{Parser, Subcommand, ValueEnum};
use sl2dist::arith::{Integers, PLocal, PrimeField, ResidueRing, Ring};
use sl2dist::par::Execution;
use sl2dist::presentation::{eval_word, straighten, Word};
use sl2dist::report::{summary_table, Record};
use sl2dist::splitting::Splitting;
use sl2dist::verify::{run_suite, RunConfig, Suite};
use std::process::ExitCode;
use std::time::Duration;

#[derive(Parser)]
#[command(name = "sl2dist", version, about = "Distribution algebra of SL2: products, checks and normal forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RingArg {
    #[value(name = "Z")]
    Z,
    #[value(name = "Zp-local")]
    ZpLocal,
    #[value(name = "Fp")]
    Fp,
    #[value(name = "Z/p^m")]
    ZpM,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Records,
}

#[derive(Subcommand)]
enum Command {
    /// Multiply two element expressions and print the normal form.
    Mul {
        lhs: String,
        rhs: String,
        /// Coefficient ring; defaults to Fp when --p is given, else Z.
        #[arg(long, value_enum)]
        ring: Option<RingArg>,
        #[arg(long)]
        p: Option<u64>,
        /// Exponent for Z/p^m.
        #[arg(long, default_value_t = 2)]
        m: u32,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
        /// Primes, comma separated or repeated.
        #[arg(long = "p", value_delimiter = ',', default_values_t = [3u64, 5])]
        primes: Vec<u64>,
        #[arg(long, default_value_t = 2)]
        kmax: u32,
        #[arg(long, default_value_t = 2)]
        nmax: u32,
        /// Inclusive range a:b; defaults to [-2p^2, 2p^2].
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        h_range: Option<(i64, i64)>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Worker threads; 1 runs sequentially.
        #[arg(long)]
        jobs: Option<usize>,
        /// Seconds; checks not started in time are reported as skipped.
        #[arg(long)]
        time_budget: Option<f64>,
    },
    /// Rewrite a word in e_k, f_k to normal form.
    Straighten {
        word: String,
        #[arg(long)]
        p: u64,
    },
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: sl2dist::Error| e.to_string())
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected a:b, got {s:?}"))?;
    let a = a.trim().parse::<i64>().map_err(|e| e.to_string())?;
    let b = b.trim().parse::<i64>().map_err(|e| e.to_string())?;
    Ok((a, b))
}

/// A failure exit code distinct from usage errors.
struct Failed;

fn multiply<R: Ring>(ring: R, lhs: &expr::Expr, rhs: &expr::Expr) -> String {
    lhs.eval(ring).mul(&rhs.eval(ring)).to_string()
}

fn cmd_mul(lhs: &str, rhs: &str, ring: Option<RingArg>, p: Option<u64>, m: u32) -> Result<String> {
    let (l, r) = (expr::parse(lhs)?, expr::parse(rhs)?);
    let need_p = || p.ok_or_else(|| anyhow!("this ring needs --p"));
    Ok(match ring.unwrap_or(if p.is_some() { RingArg::Fp } else { RingArg::Z }) {
        RingArg::Z => multiply(Integers, &l, &r),
        RingArg::ZpLocal => multiply(PLocal::new(need_p()?)?, &l, &r),
        RingArg::Fp => multiply(PrimeField::new(need_p()?)?, &l, &r),
        RingArg::ZpM => multiply(ResidueRing::new(need_p()?, m)?, &l, &r),
    })
}

fn configure_jobs(jobs: Option<usize>) -> Result<Execution> {
    match jobs {
        Some(0) => bail!("--jobs must be positive"),
        Some(1) => Ok(Execution::Sequential),
        #[cfg(feature = "parallel")]
        Some(n) => {
            rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| anyhow!("thread pool: {e}"))?;
            Ok(Execution::Parallel)
        }
        #[cfg(not(feature = "parallel"))]
        Some(_) => Ok(Execution::Sequential),
        None => Ok(Execution::default()),
    }
}

fn print_records(records: &[Record], format: Format) {
    match format {
        Format::Records => {
            for r in records {
                println!("{}", r.to_json_line());
            }
        }
        Format::Text => print!("{}", summary_table(records)),
    }
}

fn run(cli: Cli) -> Result<std::result::Result<(), Failed>> {
    match cli.command {
        Command::Mul { lhs, rhs, ring, p, m } => {
            println!("{}", cmd_mul(&lhs, &rhs, ring, p, m)?);
            Ok(Ok(()))
        }
        Command::Verify { suite, primes, kmax, nmax, h_range, seed, format, jobs, time_budget } => {
            let time_budget = match time_budget {
                Some(s) if !(s.is_finite() && s >= 0.0) => bail!("--time-budget must be a non-negative number"),
                other => other.map(Duration::from_secs_f64),
            };
            let cfg = RunConfig { primes, kmax, nmax, h_range, seed, exec: configure_jobs(jobs)?, time_budget };
            cfg.validate()?;
            let records = run_suite(suite, &cfg)?;
            print_records(&records, format);
            Ok(if records.iter().any(Record::failed) { Err(Failed) } else { Ok(()) })
        }
        Command::Straighten { word, p } => {
            let w: Word = word.parse()?;
            let nf = straighten(&w, p)?;
            let ok = Splitting::new(p)?.from_xbasis(&nf)? == eval_word(&w, p);
            println!("{nf} [cross-check: {}]", if ok { "OK" } else { "FAILED" });
            Ok(if ok { Ok(()) } else { Err(Failed) })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(Failed)) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
