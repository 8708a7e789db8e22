//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage errors.

use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::fast_eval::{eval_any, sigma_triple_descent_counted, stern_pair_descent_counted};
use crate::oracle::{gf_counts_with_cap, DEFAULT_TABLE_CAP};
use crate::sequences::SequenceMemo;
use crate::types::{DigitBound, Index, SequenceKind};
use crate::verify::{self, CheckReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "binpart",
    version,
    about = "Binary partition functions and Stern's diatomic sequence"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a range of sequence values
    Gen(GenArgs),
    /// Print one sequence value
    Eval(EvalArgs),
    /// Run identity checks
    Verify(VerifyArgs),
    /// Compare generating-function counts with the digit recurrence
    Oracle(OracleArgs),
    /// Time each engine at one index
    Bench(BenchArgs),
    /// Check the embedded reference prefix
    Selftest,
}

#[derive(Debug, Clone, Args)]
pub struct SeqArgs {
    /// bprime, b, hatb, stern, sigma or digitcount
    #[arg(long)]
    pub seq: String,
    /// Largest digit for --seq digitcount
    #[arg(long)]
    pub digit_bound: Option<u32>,
}

impl SeqArgs {
    fn kind(&self) -> Result<SequenceKind> {
        SequenceKind::from_parts(&self.seq, self.digit_bound)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Bfile,
    Csv,
    Plain,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub seq: SeqArgs,
    #[arg(long, default_value = "0", value_parser = parse_index)]
    pub from: Index,
    #[arg(long, value_parser = parse_index)]
    pub to: Index,
    #[arg(long, value_enum, default_value_t = Format::Bfile)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub seq: SeqArgs,
    #[arg(long, value_parser = parse_index)]
    pub index: Index,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// hatb == sigma
    #[arg(long)]
    pub identity: bool,
    /// bprime(2k+1) == bprime(2k)
    #[arg(long)]
    pub halving: bool,
    /// Replay every step of the proof
    #[arg(long)]
    pub replay: bool,
    /// Descent engines against memoized recurrences
    #[arg(long)]
    pub cross: bool,
    /// Upper index for the range checks (per-check default otherwise)
    #[arg(long)]
    pub limit: Option<u64>,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 256)]
    pub max_bits: u64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long, default_value_t = 5)]
    pub digit_bound: u32,
    #[arg(long)]
    pub limit: u64,
    /// Largest table the oracle may build
    #[arg(long, default_value_t = DEFAULT_TABLE_CAP)]
    pub cap: u64,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Bit-length of the benchmark index 2^(bits-1) + 1
    #[arg(long, default_value_t = 10_000)]
    pub bits: u64,
}

fn parse_index(s: &str) -> std::result::Result<Index, String> {
    s.parse::<Index>().map_err(|e| e.to_string())
}

/// Runs a parsed command, writing results to `out` and returning the exit
/// code. Argument errors detected after parsing print to `err`.
pub fn run<W: Write, E: Write>(cli: Cli, out: &mut W, err: &mut E) -> i32 {
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Io(_) => EXIT_FAILED,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn dispatch<W: Write>(command: Command, out: &mut W) -> Result<i32> {
    match command {
        Command::Gen(args) => gen(args, out),
        Command::Eval(args) => {
            let kind = args.seq.kind()?;
            writeln!(out, "{}", eval_any(kind, &args.index))?;
            Ok(EXIT_OK)
        }
        Command::Verify(args) => verify_cmd(args, out),
        Command::Oracle(args) => oracle_cmd(args, out),
        Command::Bench(args) => bench(args, out),
        Command::Selftest => report_all(verify::selftest(), out),
    }
}

fn gen<W: Write>(args: GenArgs, out: &mut W) -> Result<i32> {
    let kind = args.seq.kind()?;
    let records = verify::emit_bfile(kind, &args.from, &args.to)?;
    for r in records {
        match args.format {
            Format::Bfile => writeln!(out, "{} {}", r.n, r.value)?,
            Format::Csv => writeln!(out, "{},{}", r.n, r.value)?,
            Format::Plain => writeln!(out, "{}", r.value)?,
        }
    }
    Ok(EXIT_OK)
}

fn report_all<W: Write>(reports: Vec<CheckReport>, out: &mut W) -> Result<i32> {
    let mut ok = true;
    for r in reports {
        writeln!(out, "{r}")?;
        ok &= r.passed();
    }
    Ok(if ok { EXIT_OK } else { EXIT_FAILED })
}

fn verify_cmd<W: Write>(args: VerifyArgs, out: &mut W) -> Result<i32> {
    let all = !(args.identity || args.halving || args.replay || args.cross);
    let mut reports = Vec::new();
    if all || args.identity {
        reports.push(verify::check_main_identity(args.limit.unwrap_or(1 << 16)));
    }
    if all || args.halving {
        reports.push(verify::check_halving(args.limit.unwrap_or(1 << 15)));
    }
    if all || args.replay {
        reports.push(verify::replay_proof(args.limit.unwrap_or(1 << 14))?);
    }
    if all || args.cross {
        reports.push(verify::cross_engines(
            args.samples,
            args.max_bits,
            args.seed,
        )?);
    }
    report_all(reports, out)
}

fn oracle_cmd<W: Write>(args: OracleArgs, out: &mut W) -> Result<i32> {
    let d = DigitBound::new(args.digit_bound)?;
    let table = gf_counts_with_cap(d, args.limit, args.cap)?;
    let mut memo = SequenceMemo::new(SequenceKind::DigitCount(d));
    let failure = (0..=args.limit).find_map(|n| {
        let v = memo.get_u64(n);
        (v != table[n]).then(|| verify::Mismatch {
            index: n.into(),
            expected: table[n].clone(),
            actual: v,
            note: None,
        })
    });
    let report = CheckReport {
        name: format!("oracle==digitcount:{d}"),
        range: Some((Index::zero(), Index::from(args.limit))),
        first_failure: failure,
        seed: None,
    };
    report_all(vec![report], out)
}

fn bench<W: Write>(args: BenchArgs, out: &mut W) -> Result<i32> {
    if args.bits == 0 {
        return Err(Error::InvalidArgument("--bits must be >= 1".into()));
    }
    let k = if args.bits == 1 {
        Index::from(1u64)
    } else {
        Index::pow2(args.bits - 1).succ()
    };
    writeln!(out, "index bits={}", k.bits())?;

    let t = Instant::now();
    let (_, stats) = stern_pair_descent_counted(&k);
    let elapsed = t.elapsed();
    writeln!(
        out,
        "stern-pair-descent   time={:.3}ms steps={} big_ops={}",
        elapsed.as_secs_f64() * 1e3,
        stats.steps,
        stats.big_ops
    )?;

    let t = Instant::now();
    let (_, stats) = sigma_triple_descent_counted(&k)?;
    let elapsed = t.elapsed();
    writeln!(
        out,
        "sigma-triple-descent time={:.3}ms steps={} big_ops={}",
        elapsed.as_secs_f64() * 1e3,
        stats.steps,
        stats.big_ops
    )?;

    for kind in [SequenceKind::Stern, SequenceKind::Sigma] {
        let mut memo = SequenceMemo::new(kind);
        let t = Instant::now();
        memo.get(&k);
        let elapsed = t.elapsed();
        writeln!(
            out,
            "memo-{:<15} time={:.3}ms entries={}",
            kind.to_string(),
            elapsed.as_secs_f64() * 1e3,
            memo.len()
        )?;
    }
    Ok(EXIT_OK)
}
