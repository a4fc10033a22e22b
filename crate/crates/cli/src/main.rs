//! `zetafrac` — certified verification of zeta floor identities and exact
//! fractional-part scanning, from the command line.
//!
//! Every numeric statement printed by this tool is backed by the core
//! library's exact rational enclosures: strict inequalities are reported
//! `TRUE` only when a certified interval lies strictly inside the claimed
//! window, floors only come with an integer-free witness interval, and when
//! bounded precision cannot separate a near-tie the verdict is
//! `INCONCLUSIVE` — reflected in the exit status, never papered over.
//!
//! Output contract: records go to stdout (one line per instance, in
//! ascending order), progress and advisory notes go to stderr. For a fixed
//! command line the bytes on stdout are identical from run to run — worker
//! counts, checkpoint pauses, and resumes never change them.
//!
//! Exit status: 0 when every verdict is as claimed (`TRUE`, or an expected
//! `SKIPPED`/`NOT-APPLICABLE`), 2 when at least one check came back
//! `INCONCLUSIVE`, 3 on an integrity violation (a certified result
//! contradicting a proved statement — an implementation bug, never a shrug),
//! 1 for usage or I/O errors.

use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde::Deserialize;

use zetafrac_core::series::cf_second_term_with;
use zetafrac_core::theorems::{
    check_egypt, check_fractional_sum, check_prime_gap, check_prime_lower, check_prime_upper,
    check_zeta_lower, check_zeta_upper, classify_general_k, classify_k, classify_m,
};
use zetafrac_core::{
    render, scan, CheckOptions, Enclosure, Error, Rational, Result, ScanConfig, ScanOutcome,
    ScanRecord, ScanSummary, Schedule, ThresholdMode, Verdict, VerdictRecord,
};

/// The claim catalog: every certified statement `check` can run, with the
/// smallest exponent its hypotheses admit.
///
/// * `prop2.1` — `1 < 1/(ζ(n)−1) − 2^n + (4/3)^n + 2` for n ≥ 2.
/// * `prop2.2` — `1/(ζ(n)−1) − 2^n + (4/3)^n + 2 < 1 + ε(n)` for n ≥ 2.
/// * `prop2.3` — `1/P(s) − 2^s + (4/3)^s < δ(s)` for s ≥ 2 (P = prime zeta).
/// * `prop2.4` — `0 < 1/P(s) − 2^s + (4/3)^s` for s ≥ 4.
/// * `prop3.3` — `k−1 < {1/(ζ(n)−1)} + {(4/3)^n} < k−1+ε(n)` for n ≥ 2.
/// * `prop3.5` — floor difference `⌊x^n/(ζ(n)−1)⌋ − ⌊(2x)^n⌋ ∈ {−1, 0}` with
///   its fractional window, for rational 1/2 < x < 3/4 and n ≥ 2.
/// * `thm1`    — `⌊1/(ζ(n)−1)⌋ = 2^n − ⌊(4/3)^n⌋ − k` with k ∈ {1, 2},
///   reporting k per exponent, for n ≥ 2.
/// * `thm1.5`  — three-window classification of
///   `{1/(ζ(n)−1)} + {(2/3)^n/(ζ(n)−1)}`, reporting m ∈ {0, 1, 2}, n ≥ 2.
/// * `thm1.6`  — `1 − ε(s) < 1/P(s) − 1/(ζ(s)−1) < 1 + δ(s)` for s ≥ 7.
const CLAIMS: &[(&str, u32)] = &[
    ("prop2.1", 2),
    ("prop2.2", 2),
    ("prop2.3", 2),
    ("prop2.4", 4),
    ("prop3.3", 2),
    ("prop3.5", 2),
    ("thm1", 2),
    ("thm1.5", 2),
    ("thm1.6", 7),
];

#[derive(Parser)]
#[command(
    name = "zetafrac",
    version,
    about = "Certified zeta floor identities and exact fractional-part scans",
    long_about = "Certified verification of floor identities of the Riemann zeta function \
                  (second continued-fraction terms, fractional-part sandwiches, prime zeta \
                  gap bounds) and a deterministic exact scanner for small fractional parts \
                  of (p/q)^n. All verdicts are backed by exact rational enclosures."
)]
struct Cli {
    /// Emit one JSON object per line instead of plain text.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,

    /// Emit CSV (a header line, then one row per record) instead of plain text.
    #[arg(long, global = true)]
    csv: bool,

    /// Base dyadic precision in bits for certified evaluations (default: a
    /// per-exponent schedule).
    #[arg(long, global = true, value_name = "B")]
    precision_bits: Option<u32>,

    /// Maximum refinement rounds before a check reports INCONCLUSIVE.
    #[arg(long, global = true, value_name = "R")]
    max_rounds: Option<u32>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print ⌊1/(ζ(n)−1)⌋, the second simple-continued-fraction term of ζ(n).
    CfTerm {
        /// Exponent (n ≥ 2).
        n: u32,
    },

    /// Print k from the identity ⌊1/(ζ(n)−1)⌋ = 2^n − ⌊(4/3)^n⌋ − k.
    K {
        /// Exponent (n ≥ 2).
        n: u32,
    },

    /// Run one claim from the catalog over a range of exponents.
    Check {
        /// Claim to check: prop2.1, prop2.2, prop2.3, prop2.4, prop3.3,
        /// prop3.5, thm1, thm1.5, or thm1.6.
        claim_id: String,

        /// First exponent (inclusive).
        #[arg(long, value_name = "N")]
        from: u32,

        /// Last exponent (inclusive).
        #[arg(long, value_name = "M")]
        to: u32,

        /// Base x for prop3.5, as a rational a/b with 1/2 < x < 3/4
        /// (default 2/3). Only valid with prop3.5.
        #[arg(long, value_name = "A/B")]
        x: Option<String>,
    },

    /// Scan the fractional parts {(p/q)^n} exactly, reporting hits below a
    /// threshold, running prefix minima, and periodic samples.
    Scan {
        /// Numerator of the base ratio (coprime to q, p > q).
        #[arg(long, default_value_t = 4)]
        p: u64,

        /// Denominator of the base ratio (q ≥ 2).
        #[arg(long, default_value_t = 3)]
        q: u64,

        /// First exponent (inclusive).
        #[arg(long, default_value_t = 2, value_name = "N")]
        from: u64,

        /// Last exponent (inclusive).
        #[arg(long, value_name = "M")]
        to: u64,

        /// Hit threshold: "adaptive" for the sandwich width
        /// ε(n) = (4^n+3^n)²/18^n, or a fixed rational like "1/1000".
        #[arg(long, default_value = "adaptive")]
        threshold: String,

        /// Emit a sample record at every multiple of this stride
        /// (default 1000).
        #[arg(long)]
        stride: Option<u64>,

        /// Exponents per parallel work unit (default 1024). Scheduling only:
        /// never changes the output.
        #[arg(long)]
        chunk_size: Option<u64>,

        /// Persist scan state here after every committed chunk; a matching
        /// checkpoint resumes the scan where it left off.
        #[arg(long, value_name = "PATH")]
        checkpoint: Option<PathBuf>,

        /// Checkpoint and pause once this exponent completes (exit 0; rerun
        /// to resume).
        #[arg(long, value_name = "N")]
        stop_after: Option<u64>,

        /// Worker threads (default: available parallelism, capped by
        /// ZETAFRAC_THREADS).
        #[arg(long)]
        threads: Option<usize>,

        /// Disable the conservative floating-point prefilter and compare
        /// exactly at every exponent (cross-validation aid; much slower).
        #[arg(long)]
        no_prefilter: bool,
    },

    /// Certify the gap bound 1 − ε(s) < 1/P(s) − 1/(ζ(s)−1) < 1 + δ(s).
    PrimeGap {
        /// Exponent (s ≥ 7).
        s: u32,
    },

    /// When k = 2, certify that ζ(n) is not 1 + 1/m for any integer m
    /// (no one-term Egyptian fraction); SKIPPED when k = 1.
    Egypt {
        /// Exponent (n ≥ 2).
        n: u32,
    },

    /// Classify n into its window m ∈ {0, 1, 2} for the two-term fractional
    /// sum {1/(ζ(n)−1)} + {(2/3)^n/(ζ(n)−1)}.
    MClass {
        /// Exponent (n ≥ 2).
        n: u32,
    },
}

// ---------------------------------------------------------------------------
// Configuration file
// ---------------------------------------------------------------------------

/// `./zetafrac.toml`, when present, supplies defaults for these settings
/// (`key = value`, kebab-case keys mirroring the flags). Command-line flags
/// win over the file.
#[derive(Debug, Default, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
struct FileConfig {
    json: Option<bool>,
    csv: Option<bool>,
    precision_bits: Option<u32>,
    max_rounds: Option<u32>,
    threads: Option<usize>,
    stride: Option<u64>,
    chunk_size: Option<u64>,
}

fn load_file_config() -> Result<FileConfig> {
    match std::fs::read_to_string("zetafrac.toml") {
        Ok(text) => {
            toml::from_str(&text).map_err(|e| Error::domain(format!("zetafrac.toml: {e}")))
        }
        Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(FileConfig::default()),
        Err(e) => Err(e.into()),
    }
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Plain,
    Json,
    Csv,
}

fn resolve_mode(cli: &Cli, file: &FileConfig) -> Result<Mode> {
    if cli.json {
        return Ok(Mode::Json);
    }
    if cli.csv {
        return Ok(Mode::Csv);
    }
    match (file.json.unwrap_or(false), file.csv.unwrap_or(false)) {
        (true, true) => Err(Error::domain(
            "zetafrac.toml sets both json and csv; pick one",
        )),
        (true, false) => Ok(Mode::Json),
        (false, true) => Ok(Mode::Csv),
        (false, false) => Ok(Mode::Plain),
    }
}

/// Streams verdict records in the chosen mode and remembers whether any
/// verdict was INCONCLUSIVE (that decides the exit status).
struct RecordSink {
    mode: Mode,
    header_written: bool,
    inconclusive: bool,
}

impl RecordSink {
    fn new(mode: Mode) -> Self {
        RecordSink {
            mode,
            header_written: false,
            inconclusive: false,
        }
    }

    fn emit(&mut self, rec: &VerdictRecord) {
        if rec.verdict == Verdict::Inconclusive {
            self.inconclusive = true;
        }
        match self.mode {
            Mode::Json => println!("{}", rec.to_json_line()),
            Mode::Csv => {
                if !self.header_written {
                    println!("claim-id,n,verdict,k,m,lo,hi");
                    self.header_written = true;
                }
                println!("{}", verdict_csv_row(rec));
            }
            Mode::Plain => println!("{}", verdict_plain_line(rec)),
        }
    }
}

fn verdict_plain_line(rec: &VerdictRecord) -> String {
    let mut s = format!("{} n={} {}", rec.claim_id, rec.n, rec.verdict);
    if let Some(k) = rec.k {
        s.push_str(&format!(" k={k}"));
    }
    if let Some(m) = rec.m {
        s.push_str(&format!(" m={m}"));
    }
    if let (Some(lo), Some(hi)) = (&rec.lo, &rec.hi) {
        s.push_str(&format!(" enclosure=[{lo}, {hi}]"));
    }
    if let Some(note) = &rec.note {
        s.push_str(&format!(" ({note})"));
    }
    s
}

fn verdict_csv_row(rec: &VerdictRecord) -> String {
    format!(
        "{},{},{},{},{},{},{}",
        rec.claim_id,
        rec.n,
        rec.verdict,
        rec.k.map_or_else(String::new, |v| v.to_string()),
        rec.m.map_or_else(String::new, |v| v.to_string()),
        rec.lo.as_deref().unwrap_or(""),
        rec.hi.as_deref().unwrap_or("")
    )
}

fn join_u64(v: &[u64]) -> String {
    if v.is_empty() {
        "none".to_string()
    } else {
        v.iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    }
}

// ---------------------------------------------------------------------------
// Shared pieces
// ---------------------------------------------------------------------------

fn parse_rational(s: &str) -> Result<Rational> {
    let (num, den) = s.split_once('/').unwrap_or((s, "1"));
    let parse = |part: &str| -> Result<BigInt> {
        part.trim()
            .parse()
            .map_err(|_| Error::domain(format!("invalid rational {s:?} (expected a or a/b)")))
    };
    Rational::new(parse(num)?, parse(den)?)
}

fn straddle_record(claim: &str, n: u32, rounds: u32, enclosure: &Enclosure) -> VerdictRecord {
    VerdictRecord::new(claim, u64::from(n), Verdict::Inconclusive)
        .with_enclosure(enclosure)
        .with_note(format!(
            "floor uncertified: enclosure still straddles an integer after {rounds} refinement round(s)"
        ))
}

/// Evaluates one claim at one exponent. `x` is only consulted by prop3.5.
fn eval_claim(claim: &str, n: u32, x: &Rational, opts: &CheckOptions) -> Result<VerdictRecord> {
    let with_pair = |(verdict, enclosure): (Verdict, Enclosure)| {
        VerdictRecord::new(claim, u64::from(n), verdict).with_enclosure(&enclosure)
    };
    Ok(match claim {
        "prop2.1" => with_pair(check_zeta_lower(n, opts)?),
        "prop2.2" => with_pair(check_zeta_upper(n, opts)?),
        "prop2.3" => with_pair(check_prime_upper(n, opts)?),
        "prop2.4" => with_pair(check_prime_lower(n, opts)?),
        "prop3.3" => with_pair(check_fractional_sum(n, opts)?),
        "thm1.6" => with_pair(check_prime_gap(n, opts)?),
        "prop3.5" => {
            let rec = classify_general_k(x, n, opts)?;
            VerdictRecord::new(claim, u64::from(n), rec.verdict)
                .with_k(rec.k)
                .with_enclosure(&rec.diff)
        }
        "thm1" => {
            let rec = classify_k(n, opts)?;
            VerdictRecord::new(claim, u64::from(n), rec.window_verdict())
                .with_k(i64::from(rec.k()))
                .with_enclosure(rec.frac_sum_enclosure())
        }
        "thm1.5" => {
            let rec = classify_m(n, opts)?;
            VerdictRecord::new(claim, u64::from(n), rec.verdict)
                .with_m(i64::from(rec.m))
                .with_enclosure(&rec.sum)
        }
        other => {
            let known = CLAIMS
                .iter()
                .map(|(id, _)| *id)
                .collect::<Vec<_>>()
                .join(", ");
            return Err(Error::domain(format!(
                "unknown claim-id {other:?} (expected one of: {known})"
            )));
        }
    })
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

fn run_check(
    claim: &str,
    from: u32,
    to: u32,
    x_flag: Option<&str>,
    opts: &CheckOptions,
    mode: Mode,
) -> Result<bool> {
    let min = CLAIMS
        .iter()
        .find(|(id, _)| *id == claim)
        .map(|(_, min)| *min)
        .ok_or_else(|| {
            let known = CLAIMS
                .iter()
                .map(|(id, _)| *id)
                .collect::<Vec<_>>()
                .join(", ");
            Error::domain(format!(
                "unknown claim-id {claim:?} (expected one of: {known})"
            ))
        })?;
    if from > to {
        return Err(Error::domain(format!(
            "empty range: --from {from} exceeds --to {to}"
        )));
    }
    if from < min {
        return Err(Error::domain(format!(
            "{claim} requires exponents >= {min}, got --from {from}"
        )));
    }
    if x_flag.is_some() && claim != "prop3.5" {
        return Err(Error::domain("--x only applies to prop3.5"));
    }
    let x = match x_flag {
        Some(s) => parse_rational(s)?,
        None => Rational::new(BigInt::from(2), BigInt::from(3))?,
    };

    let mut sink = RecordSink::new(mode);
    let mut k1 = Vec::new();
    let mut m_odd = Vec::new();
    for n in from..=to {
        match eval_claim(claim, n, &x, opts) {
            Ok(rec) => {
                if claim == "thm1" && rec.k == Some(1) {
                    k1.push(u64::from(n));
                }
                if claim == "thm1.5" && rec.m.is_some() && rec.m != Some(1) {
                    m_odd.push(u64::from(n));
                }
                sink.emit(&rec);
            }
            Err(Error::StraddlesInteger { rounds, enclosure }) => {
                sink.emit(&straddle_record(claim, n, rounds, &enclosure));
            }
            Err(e) => return Err(e),
        }
    }
    if claim == "thm1" {
        eprintln!(
            "thm1: k = 1 at {} of {} exponents: {}",
            k1.len(),
            u64::from(to) - u64::from(from) + 1,
            join_u64(&k1)
        );
    }
    if claim == "thm1.5" && !m_odd.is_empty() {
        eprintln!("thm1.5: m != 1 at: {}", join_u64(&m_odd));
    }
    Ok(sink.inconclusive)
}

/// `check` specialized to a single exponent; used by the one-shot commands.
fn run_single(claim: &str, n: u32, opts: &CheckOptions, mode: Mode) -> Result<bool> {
    let x = Rational::new(BigInt::from(2), BigInt::from(3))?;
    let mut sink = RecordSink::new(mode);
    match eval_claim(claim, n, &x, opts) {
        Ok(rec) => sink.emit(&rec),
        Err(Error::StraddlesInteger { rounds, enclosure }) => {
            sink.emit(&straddle_record(claim, n, rounds, &enclosure));
        }
        Err(e) => return Err(e),
    }
    Ok(sink.inconclusive)
}

fn run_cf_term(n: u32, opts: &CheckOptions, mode: Mode) -> Result<bool> {
    let schedule = Schedule::for_zeta(n).with_bits(opts.precision_bits);
    match cf_second_term_with(n, &schedule, opts.max_rounds) {
        Ok(cert) => {
            let (lo, hi) = render::enclosure_endpoints(cert.witness(), 60);
            match mode {
                Mode::Plain => println!("{}", cert.value()),
                Mode::Json => println!(
                    "{{\"n\":{n},\"value\":\"{}\",\"lo\":\"{lo}\",\"hi\":\"{hi}\"}}",
                    cert.value()
                ),
                Mode::Csv => {
                    println!("n,value,lo,hi");
                    println!("{n},{},{lo},{hi}", cert.value());
                }
            }
            Ok(false)
        }
        Err(Error::StraddlesInteger { rounds, enclosure }) => {
            let mut sink = RecordSink::new(mode);
            sink.emit(&straddle_record("cf-term", n, rounds, &enclosure));
            Ok(true)
        }
        Err(e) => Err(e),
    }
}

fn run_k(n: u32, opts: &CheckOptions, mode: Mode) -> Result<bool> {
    let mut sink = RecordSink::new(mode);
    match classify_k(n, opts) {
        Ok(kr) => {
            if mode == Mode::Plain {
                println!("{}", kr.k());
                if kr.window_verdict() == Verdict::Inconclusive {
                    eprintln!(
                        "note: k = {} is certified, but the fractional-sum window is \
                         INCONCLUSIVE at n={n}",
                        kr.k()
                    );
                    sink.inconclusive = true;
                }
            } else {
                sink.emit(
                    &VerdictRecord::new("thm1", u64::from(n), kr.window_verdict())
                        .with_k(i64::from(kr.k()))
                        .with_enclosure(kr.frac_sum_enclosure()),
                );
            }
            Ok(sink.inconclusive)
        }
        Err(Error::StraddlesInteger { rounds, enclosure }) => {
            sink.emit(&straddle_record("thm1", n, rounds, &enclosure));
            Ok(true)
        }
        Err(e) => Err(e),
    }
}

fn run_egypt(n: u32, opts: &CheckOptions, mode: Mode) -> Result<bool> {
    let (verdict, enclosure) = check_egypt(n, opts)?;
    let mut rec = VerdictRecord::new("egypt", u64::from(n), verdict);
    if let Some(e) = &enclosure {
        rec = rec.with_enclosure(e);
    }
    rec = match verdict {
        Verdict::True => rec.with_note(
            "1/(ζ(n)−1) is certifiably not an integer, so ζ(n) ≠ 1 + 1/m for every integer m",
        ),
        Verdict::Skipped => rec.with_note("k = 1 at this exponent; the exclusion needs k = 2"),
        Verdict::Inconclusive => {
            rec.with_note("reciprocal enclosure still straddles an integer at the refinement cap")
        }
        _ => rec,
    };
    let mut sink = RecordSink::new(mode);
    sink.emit(&rec);
    Ok(sink.inconclusive)
}

// ---------------------------------------------------------------------------
// Scan command
// ---------------------------------------------------------------------------

fn parse_threshold(s: &str) -> Result<ThresholdMode> {
    if s.trim() == "adaptive" {
        Ok(ThresholdMode::Adaptive)
    } else {
        Ok(ThresholdMode::Fixed(parse_rational(s)?))
    }
}

/// Worker count: flag, else file config, else available parallelism — then
/// capped by the ZETAFRAC_THREADS environment variable when it is set.
fn resolve_threads(flag: Option<usize>, file: Option<usize>) -> Result<usize> {
    let default = std::thread::available_parallelism()
        .map(std::num::NonZeroUsize::get)
        .unwrap_or(1);
    let requested = flag.or(file).unwrap_or(default);
    match std::env::var("ZETAFRAC_THREADS") {
        Ok(raw) => {
            let cap: usize = raw
                .trim()
                .parse()
                .ok()
                .filter(|c| *c >= 1)
                .ok_or_else(|| {
                    Error::domain(format!(
                        "ZETAFRAC_THREADS must be a positive integer, got {raw:?}"
                    ))
                })?;
            Ok(requested.min(cap))
        }
        Err(std::env::VarError::NotPresent) => Ok(requested),
        Err(e) => Err(Error::domain(format!("ZETAFRAC_THREADS: {e}"))),
    }
}

fn scan_plain_line(rec: &ScanRecord) -> String {
    format!(
        "n={} {} frac={} below_threshold={} mahler_margin={}",
        rec.n,
        rec.kind.as_str(),
        rec.frac_sci,
        rec.below_threshold,
        rec.mahler_margin
    )
}

fn print_scan_summary_plain(s: &ScanSummary) {
    println!(
        "summary p/q={}/{} n=[{}, {}] threshold={} stride={}",
        s.p, s.q, s.n_min, s.n_max, s.threshold, s.stride
    );
    println!("hits ({}): {}", s.hits.len(), join_u64(&s.hits));
    if let Some(confirmed) = &s.confirmed_k1 {
        println!(
            "confirmed k=1 ({}): {}",
            confirmed.len(),
            join_u64(confirmed)
        );
    }
    println!("min frac {} at n={}", s.min_frac, s.min_frac_n);
    println!("min mahler margin {} at n={}", s.min_mahler, s.min_mahler_n);
    println!("records emitted: {}", s.records_emitted);
}

fn run_scan(cfg: ScanConfig, mode: Mode) -> Result<bool> {
    eprintln!(
        "scan p/q={}/{} n=[{}, {}] threshold={} stride={} threads={}{}",
        cfg.p,
        cfg.q,
        cfg.n_min,
        cfg.n_max,
        cfg.threshold.canonical(),
        cfg.stride,
        cfg.threads,
        if cfg.prefilter { "" } else { " (no prefilter)" }
    );

    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    if mode == Mode::Csv {
        writeln!(out, "n,frac,below_threshold,mahler_margin")?;
    }
    let outcome = scan(&cfg, |rec| {
        match mode {
            Mode::Json => writeln!(out, "{}", rec.json_line())?,
            Mode::Csv => writeln!(out, "{}", rec.csv_line())?,
            Mode::Plain => writeln!(out, "{}", scan_plain_line(rec))?,
        }
        Ok(())
    })?;

    match outcome {
        ScanOutcome::Completed(summary) => {
            match mode {
                // In CSV mode stdout stays pure CSV; the summary (a single
                // JSON object) goes to stderr instead.
                Mode::Json => writeln!(out, "{}", summary.json_line())?,
                Mode::Csv => eprintln!("{}", summary.json_line()),
                Mode::Plain => {
                    out.flush()?;
                    print_scan_summary_plain(&summary);
                }
            }
            out.flush()?;
            Ok(false)
        }
        ScanOutcome::Paused { last_completed_n } => {
            out.flush()?;
            eprintln!(
                "paused after n={last_completed_n}; rerun with the same configuration and \
                 checkpoint to resume"
            );
            Ok(false)
        }
    }
}

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

fn run(cli: Cli) -> Result<bool> {
    let file = load_file_config()?;
    let mode = resolve_mode(&cli, &file)?;
    let defaults = CheckOptions::default();
    let opts = CheckOptions {
        precision_bits: cli.precision_bits.or(file.precision_bits),
        max_rounds: cli.max_rounds.or(file.max_rounds).unwrap_or(defaults.max_rounds),
    };

    match cli.command {
        Command::CfTerm { n } => run_cf_term(n, &opts, mode),
        Command::K { n } => run_k(n, &opts, mode),
        Command::Check {
            claim_id,
            from,
            to,
            x,
        } => run_check(&claim_id, from, to, x.as_deref(), &opts, mode),
        Command::Scan {
            p,
            q,
            from,
            to,
            threshold,
            stride,
            chunk_size,
            checkpoint,
            stop_after,
            threads,
            no_prefilter,
        } => {
            let cfg = ScanConfig {
                p,
                q,
                n_min: from,
                n_max: to,
                threshold: parse_threshold(&threshold)?,
                chunk_size: chunk_size.or(file.chunk_size).unwrap_or(1024),
                stride: stride.or(file.stride).unwrap_or(1000),
                checkpoint_path: checkpoint,
                threads: resolve_threads(threads, file.threads)?,
                prefilter: !no_prefilter,
                stop_after,
            };
            run_scan(cfg, mode)
        }
        Command::PrimeGap { s } => run_single("thm1.6", s, &opts, mode),
        Command::Egypt { n } => run_egypt(n, &opts, mode),
        Command::MClass { n } => run_single("thm1.5", n, &opts, mode),
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let code = match run(cli) {
        Ok(false) => 0,
        Ok(true) => 2,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Integrity(_) => 3,
                _ => 1,
            }
        }
    };
    std::process::exit(code);
}
