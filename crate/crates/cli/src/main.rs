//! `diatomic`: evaluate, encode, render and verify the Stern diatomic
//! sequence from the command line.
//!
//! Exit codes: 0 on success, 1 when a verification or cross-check fails,
//! 2 on malformed input or usage errors.

use std::io::Write;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use diatomic::encoding::{
    bit_reverse, digit_sum, gaps_of, parse_nat, random_odd, ratio_integer, to_odd, value_of,
    GapCode,
};
use diatomic::identities::{run_identity, Identity, Report, SweepConfig};
use diatomic::stern::build_table;
use diatomic::subsets::SUBSET_DIGIT_SUM_LIMIT;
use diatomic::sympoly::{build_p, build_q, Format as PolyFormat};
use diatomic::{binet, stern_pair, stern_via_det, stern_via_gaps, stern_via_subsets, Nat};
use serde_json::json;

#[derive(Debug, Parser)]
#[command(name = "diatomic", version, about = "Exact Stern diatomic sequence toolkit")]
struct Cli {
    /// Output format; latex is only meaningful for `poly`.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
    Latex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Auto,
    Pair,
    Gaps,
    Det,
    Subsets,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BenchAlgo {
    Pair,
    Gaps,
    Det,
    Subsets,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Basis {
    Q,
    P,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a(n). N is a decimal or 0x literal, a gap code such as [2,2],
    /// or ratio:R,T for (2^(RT)-1)/(2^T-1).
    Eval {
        n: String,
        #[arg(long, value_enum, default_value_t = Algo::Auto)]
        algo: Algo,
    },
    /// Print the odd part, trailing zeros, gap code, digit sum and bit length.
    Gaps { n: String },
    /// Print a(0), ..., a(COUNT-1).
    Table { count: usize },
    /// Render q_R or p_R.
    Poly {
        r: usize,
        #[arg(long, value_enum, default_value_t = Basis::Q)]
        basis: Basis,
    },
    /// Check an identity over a finite range (or `all`).
    Verify(VerifyArgs),
    /// a((2^(RT)-1)/(2^T-1)) by the closed form.
    Binet { r: u64, t: u64 },
    /// Time the evaluation routes on a pseudorandom odd integer.
    Bench {
        #[arg(long)]
        bits: u64,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "pair,gaps,det")]
        algo: Vec<BenchAlgo>,
        #[arg(long, default_value_t = 3)]
        reps: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, clap::Args)]
struct VerifyArgs {
    /// shift, code, lemma-l2, reversal, splitting, coons, reznick,
    /// linear-comb, divisibility, binet, cross or all
    identity: String,
    /// Use the reduced smoke-test ranges as the base preset.
    #[arg(long)]
    quick: bool,
    /// Largest e for the coons, reznick and linear-comb sweeps.
    #[arg(long)]
    e: Option<u32>,
    #[arg(long)]
    u_max: Option<u64>,
    /// Exclusive bound on n for shift, reversal and cross.
    #[arg(long)]
    max: Option<u64>,
    /// Largest c for the shift identity.
    #[arg(long)]
    c_max: Option<u32>,
    /// Largest divisor k for the divisibility check.
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    /// Longest gap code (code, lemma-l2) and largest r (binet).
    #[arg(long)]
    r_max: Option<u64>,
    #[arg(long)]
    entry_max: Option<u64>,
    #[arg(long)]
    t_min: Option<u64>,
    #[arg(long)]
    t_max: Option<u64>,
    #[arg(long)]
    cases: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

/// Error carrying the process exit code.
enum Failure {
    Usage(anyhow::Error),
    Check(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::try_parse().unwrap_or_else(|e| e.exit());
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("diatomic: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("diatomic: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> CmdResult {
    if cli.format == OutputFormat::Latex && !matches!(cli.command, Command::Poly { .. }) {
        return Err(anyhow!("--format latex is only valid for `poly`").into());
    }
    let json = cli.format == OutputFormat::Json;
    match cli.command {
        Command::Eval { n, algo } => cmd_eval(&n, algo, json),
        Command::Gaps { n } => cmd_gaps(&n, json),
        Command::Table { count } => cmd_table(count, json),
        Command::Poly { r, basis } => cmd_poly(r, basis, cli.format),
        Command::Verify(args) => cmd_verify(&args, json),
        Command::Binet { r, t } => cmd_binet(r, t, json),
        Command::Bench {
            bits,
            algo,
            reps,
            seed,
        } => cmd_bench(bits, &algo, reps, seed, json),
    }
}

fn emit(line: impl std::fmt::Display) {
    let mut out = std::io::stdout().lock();
    // a closed pipe is not an error worth reporting
    let _ = writeln!(out, "{line}");
}

enum NInput {
    Literal(Nat),
    Ratio { r: u64, t: u64 },
}

fn parse_n_input(input: &str) -> anyhow::Result<NInput> {
    let input = input.trim();
    if let Some(rest) = input.strip_prefix("ratio:") {
        let (r, t) = rest
            .split_once(',')
            .ok_or_else(|| anyhow!("ratio shorthand is ratio:R,T, got {input:?}"))?;
        let r = r.trim().parse().with_context(|| format!("bad R in {input:?}"))?;
        let t = t.trim().parse().with_context(|| format!("bad T in {input:?}"))?;
        if r == 0 || t == 0 {
            bail!("ratio:R,T needs R >= 1 and T >= 1");
        }
        return Ok(NInput::Ratio { r, t });
    }
    if input.starts_with('[') {
        let code: GapCode = input.parse()?;
        return Ok(NInput::Literal(value_of(&code)));
    }
    Ok(NInput::Literal(parse_nat(input)?))
}

fn odd_part(n: &Nat) -> anyhow::Result<Nat> {
    let (odd, twos) = to_odd(n).map_err(|_| anyhow!("n = 0 has no odd part for this route"))?;
    if twos > 0 {
        eprintln!("note: reducing even input to its odd part (removed 2^{twos}); a(n) is unchanged");
    }
    Ok(odd)
}

fn evaluate(n: &Nat, algo: Algo) -> anyhow::Result<Nat> {
    Ok(match algo {
        Algo::Auto | Algo::Pair => stern_pair(n),
        Algo::Gaps => stern_via_gaps(&odd_part(n)?)?,
        Algo::Det => stern_via_det(&odd_part(n)?)?,
        Algo::Subsets => stern_via_subsets(&odd_part(n)?)?,
    })
}

fn algo_name(algo: Algo) -> &'static str {
    match algo {
        Algo::Auto => "auto",
        Algo::Pair => "pair",
        Algo::Gaps => "gaps",
        Algo::Det => "det",
        Algo::Subsets => "subsets",
    }
}

fn cmd_eval(input: &str, algo: Algo, json: bool) -> CmdResult {
    let (n, value, used) = match parse_n_input(input)? {
        NInput::Ratio { r, t } if algo == Algo::Auto && t >= 2 => {
            let value = binet(r, t).map_err(anyhow::Error::from)?;
            (ratio_integer(r, t).map_err(anyhow::Error::from)?, value, "binet")
        }
        NInput::Ratio { r, t } => {
            let n = ratio_integer(r, t).map_err(anyhow::Error::from)?;
            let algo = if algo == Algo::Auto { Algo::Pair } else { algo };
            let value = evaluate(&n, algo)?;
            (n, value, algo_name(algo))
        }
        NInput::Literal(n) => {
            let algo = if algo == Algo::Auto { Algo::Pair } else { algo };
            let value = evaluate(&n, algo)?;
            (n, value, algo_name(algo))
        }
    };
    if json {
        emit(json!({ "n": n.to_string(), "algo": used, "value": value.to_string() }));
    } else {
        emit(value);
    }
    Ok(())
}

fn cmd_gaps(input: &str, json: bool) -> CmdResult {
    let n = match parse_n_input(input)? {
        NInput::Literal(n) => n,
        NInput::Ratio { r, t } => ratio_integer(r, t).map_err(anyhow::Error::from)?,
    };
    let (odd, twos) = to_odd(&n).map_err(|_| anyhow!("gaps needs n >= 1"))?;
    let code = gaps_of(&odd).map_err(anyhow::Error::from)?;
    let digits = digit_sum(&n);
    let bits = n.bits();
    if json {
        emit(json!({
            "odd": odd.to_string(),
            "twos": twos,
            "gaps": code.gaps(),
            "digit_sum": digits,
            "bits": bits,
        }));
    } else {
        emit(format!("odd: {odd}"));
        emit(format!("twos: {twos}"));
        emit(format!("gaps: {code}"));
        emit(format!("digit_sum: {digits}"));
        emit(format!("bits: {bits}"));
        if let Ok(rev) = bit_reverse(&odd) {
            emit(format!("reversed_odd: {rev}"));
        }
    }
    Ok(())
}

fn cmd_table(count: usize, json: bool) -> CmdResult {
    let table = build_table(count).map_err(anyhow::Error::from)?;
    if json {
        emit(serde_json::Value::from(table.values().to_vec()));
    } else {
        for (n, v) in table.values().iter().enumerate() {
            emit(format!("{n}\t{v}"));
        }
    }
    Ok(())
}

fn cmd_poly(r: usize, basis: Basis, format: OutputFormat) -> CmdResult {
    let (poly, var) = match basis {
        Basis::Q => (build_q(r), "y"),
        Basis::P => (build_p(r), "x"),
    };
    let poly = poly.map_err(anyhow::Error::from)?;
    match format {
        OutputFormat::Text => emit(poly.render(PolyFormat::Text, var)),
        OutputFormat::Latex => emit(poly.render(PolyFormat::Latex, var)),
        OutputFormat::Json => emit(poly.to_json()),
    }
    Ok(())
}

fn sweep_config(args: &VerifyArgs) -> anyhow::Result<SweepConfig> {
    let mut cfg = if args.quick {
        SweepConfig::quick()
    } else {
        SweepConfig::standard()
    };
    if let Some(e) = args.e {
        if e > 30 {
            bail!("--e {e} is beyond an exhaustive sweep (max 30)");
        }
        cfg.e_max = e;
    }
    if let Some(u) = args.u_max {
        cfg.u_max = u;
    }
    if let Some(max) = args.max {
        cfg.shift_n_max = max;
        cfg.reversal_max = max;
        cfg.cross_max = max;
        cfg.cross_subsets_max = cfg.cross_subsets_max.min(max);
    }
    if let Some(c) = args.c_max {
        cfg.shift_c_max = c;
    }
    if let Some(k) = args.k {
        if k == 0 {
            bail!("--k must be at least 1");
        }
        cfg.k_max = k;
    }
    if let Some(trials) = args.trials {
        cfg.divisibility_trials = trials;
    }
    if let Some(r) = args.r_max {
        cfg.code_r_max = r as usize;
        cfg.binet_r_max = r;
    }
    if let Some(entry) = args.entry_max {
        cfg.code_entry_max = entry;
    }
    let (t_min, t_max) = (
        args.t_min.unwrap_or(*cfg.binet_t.start()),
        args.t_max.unwrap_or(*cfg.binet_t.end()),
    );
    if t_min < 2 || t_min > t_max {
        bail!("binet needs 2 <= t-min <= t-max (got {t_min}..={t_max})");
    }
    cfg.binet_t = t_min..=t_max;
    if let Some(cases) = args.cases {
        cfg.splitting_cases = cases;
    }
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    Ok(cfg)
}

fn cmd_verify(args: &VerifyArgs, json: bool) -> CmdResult {
    let ids: Vec<Identity> = if args.identity == "all" {
        Identity::ALL.to_vec()
    } else {
        vec![args.identity.parse().map_err(anyhow::Error::from)?]
    };
    let cfg = sweep_config(args)?;
    let mut reports: Vec<Report> = Vec::with_capacity(ids.len());
    for id in ids {
        let report = run_identity(id, &cfg).map_err(anyhow::Error::from)?;
        if !json {
            emit(&report);
        }
        reports.push(report);
    }
    if json {
        let value = if reports.len() == 1 {
            serde_json::to_value(&reports[0])
        } else {
            serde_json::to_value(&reports)
        };
        emit(value.map_err(anyhow::Error::from)?);
    }
    let failed: Vec<&str> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| r.identity.as_str())
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(format!("verification failed: {}", failed.join(", "))))
    }
}

fn cmd_binet(r: u64, t: u64, json: bool) -> CmdResult {
    let value = binet(r, t).map_err(anyhow::Error::from)?;
    if json {
        emit(json!({ "r": r, "t": t, "value": value.to_string() }));
    } else {
        emit(value);
    }
    Ok(())
}

fn bench_name(algo: BenchAlgo) -> &'static str {
    match algo {
        BenchAlgo::Pair => "pair",
        BenchAlgo::Gaps => "gaps",
        BenchAlgo::Det => "det",
        BenchAlgo::Subsets => "subsets",
    }
}

fn cmd_bench(bits: u64, algos: &[BenchAlgo], reps: u32, seed: u64, json: bool) -> CmdResult {
    if bits == 0 {
        return Err(anyhow!("--bits must be at least 1").into());
    }
    if reps == 0 {
        return Err(anyhow!("--reps must be at least 1").into());
    }
    let n = random_odd(bits, seed).map_err(anyhow::Error::from)?;
    let digits = digit_sum(&n);
    if algos.contains(&BenchAlgo::Subsets) && digits > SUBSET_DIGIT_SUM_LIMIT {
        return Err(anyhow!(
            "subsets route refused: s(n) = {digits} exceeds {SUBSET_DIGIT_SUM_LIMIT}"
        )
        .into());
    }
    let eval = |algo: BenchAlgo| -> anyhow::Result<Nat> {
        Ok(match algo {
            BenchAlgo::Pair => stern_pair(&n),
            BenchAlgo::Gaps => stern_via_gaps(&n)?,
            BenchAlgo::Det => stern_via_det(&n)?,
            BenchAlgo::Subsets => stern_via_subsets(&n)?,
        })
    };
    let mut rows = Vec::new();
    let mut reference: Option<Nat> = None;
    for &algo in algos {
        let mut times = Vec::with_capacity(reps as usize);
        let mut value = None;
        for _ in 0..reps {
            let start = Instant::now();
            let v = eval(algo)?;
            times.push(start.elapsed());
            value = Some(v);
        }
        let value = value.expect("reps >= 1");
        match &reference {
            Some(expected) if *expected != value => {
                return Err(Failure::Check(format!(
                    "route {} disagrees with {}",
                    bench_name(algo),
                    bench_name(algos[0])
                )))
            }
            Some(_) => {}
            None => reference = Some(value),
        }
        let total: Duration = times.iter().sum();
        let mean = total / reps;
        let min = *times.iter().min().expect("reps >= 1");
        rows.push((algo, mean, min));
    }
    let value_bits = reference.as_ref().map(|v| v.bits()).unwrap_or(0);
    if json {
        let results: Vec<_> = rows
            .iter()
            .map(|(a, mean, min)| {
                json!({
                    "algo": bench_name(*a),
                    "mean_ms": mean.as_secs_f64() * 1e3,
                    "min_ms": min.as_secs_f64() * 1e3,
                })
            })
            .collect();
        emit(json!({
            "bits": bits,
            "seed": seed,
            "digit_sum": digits,
            "value_bits": value_bits,
            "reps": reps,
            "results": results,
        }));
    } else {
        emit(format!(
            "n: {bits} bits, s(n) = {digits}, seed {seed}; a(n): {value_bits} bits (all routes agree)"
        ));
        emit(format!("{:<8} {:>14} {:>14}", "algo", "mean", "min"));
        for (algo, mean, min) in rows {
            emit(format!(
                "{:<8} {:>14} {:>14}",
                bench_name(algo),
                format!("{mean:.3?}"),
                format!("{min:.3?}")
            ));
        }
    }
    Ok(())
}
