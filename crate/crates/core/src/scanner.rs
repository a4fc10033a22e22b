//! Exact high-throughput scanner for fractional parts `{(p/q)^n}`.
//!
//! For coprime `p > q >= 2` the scanner walks `n = n_min..=n_max` keeping the
//! exact decomposition `p^n = k·q^n + r` (so `{(p/q)^n} = r/q^n` exactly) and
//! updates it incrementally: with `p·k = t·q + u`,
//!
//! ```text
//! p^(n+1) = (p·k)·q^n + p·r = t·q^(n+1) + (u·q^n + p·r),
//! ```
//!
//! and the new remainder `u·q^n + p·r < (p+q)·q^n` needs at most a few
//! subtractions of `q^(n+1)` (or one division when `p/q` is large) to land in
//! `[0, q^(n+1))`. Every reported fractional part is exact; no floating-point
//! value ever decides a result.
//!
//! Floating point *is* used as a conservative pre-filter: `log2 r − log2 q^n`
//! is computed from the exact integers with absolute error far below the
//! filter margins, so a comparison is delegated to exact big-integer
//! arithmetic whenever the approximate gap is smaller than the margin. The
//! filter therefore never changes a decision, only skips exact comparisons
//! whose outcome is already forced.
//!
//! # Hit tests
//!
//! A scan reports `n` as a **hit** when `{(p/q)^n} < threshold(n)`:
//!
//! * [`ThresholdMode::Fixed`] compares against a fixed rational `t`
//!   (`r·den(t) < num(t)·q^n` exactly);
//! * [`ThresholdMode::Adaptive`] compares against the sandwich width
//!   `ε(n) = (4^n + 3^n)² / 18^n` (`r·18^n < q^n·(4^n + 3^n)²` exactly),
//!   the bound controlling when the floor identity
//!   `⌊1/(ζ(n)−1)⌋ = 2^n − ⌊(4/3)^n⌋ − k` can have `k = 1`.
//!
//! # Records and determinism
//!
//! Each scanned exponent emits at most one [`ScanRecord`]: a `hit` when below
//! the threshold, otherwise a `min` when it improves the running minimum of
//! the fractional part, otherwise a `sample` when `n % stride == 0`. Records
//! are emitted in strictly ascending `n`. The full record stream and the
//! final [`ScanSummary`] are a pure function of the semantic configuration
//! (`p`, `q`, range, threshold, stride): worker count, chunk size, and
//! checkpoint/resume cycles never change a byte of output. See
//! [`crate::checkpoint`] for the resume format.

use std::path::{Path, PathBuf};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::bigratio::{log2_biguint, Rational};
use crate::checkpoint::Checkpoint;
use crate::error::{Error, Result};
use crate::parallel::ordered_chunks;
use crate::render::{to_scientific, Round};
use crate::theorems::{classify_k, CheckOptions};

/// Significant digits used when rendering fractional parts.
const FRAC_DIGITS: usize = 60;

/// Hit threshold for a scan.
#[derive(Debug, Clone, PartialEq)]
pub enum ThresholdMode {
    /// Exact hit test `{(p/q)^n} < t` against a fixed rational `t`.
    Fixed(Rational),
    /// Hit test `{(p/q)^n} < ε(n)` with `ε(n) = (4^n + 3^n)² / 18^n`, the
    /// width of the fractional-part sandwich that controls the `k = 1`
    /// exceptions of the zeta floor identity.
    Adaptive,
}

impl ThresholdMode {
    /// Canonical one-line description; part of the hashed configuration.
    pub fn canonical(&self) -> String {
        match self {
            ThresholdMode::Fixed(t) => format!("fixed {t}"),
            ThresholdMode::Adaptive => "adaptive".to_string(),
        }
    }
}

/// Scan configuration.
///
/// `p`, `q`, `n_min`, `n_max`, `threshold`, and `stride` are *semantic*: they
/// determine the output and are covered by [`ScanConfig::config_hash`].
/// `chunk_size`, `threads`, `prefilter`, `checkpoint_path`, and `stop_after`
/// affect only scheduling and persistence, never the emitted bytes.
#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub p: u64,
    pub q: u64,
    pub n_min: u64,
    pub n_max: u64,
    pub threshold: ThresholdMode,
    /// Exponents per work unit.
    pub chunk_size: u64,
    /// Emit a sample record whenever `n % stride == 0`.
    pub stride: u64,
    /// When set, scan state is persisted here after every committed chunk
    /// and a matching file resumes the scan after its last completed `n`.
    pub checkpoint_path: Option<PathBuf>,
    pub threads: usize,
    /// Gate exact hit tests behind the conservative floating-point filter.
    /// The filter is sound in both directions; disabling it forces an exact
    /// comparison at every exponent (a cross-validation aid — quadratic cost
    /// on long ranges).
    pub prefilter: bool,
    /// Pause (after checkpointing) once the last completed exponent reaches
    /// this value; the scan reports [`ScanOutcome::Paused`].
    pub stop_after: Option<u64>,
}

impl ScanConfig {
    /// A configuration with default scheduling: adaptive threshold,
    /// chunks of 1024 exponents, samples every 1000, one worker.
    pub fn new(p: u64, q: u64, n_min: u64, n_max: u64) -> Self {
        ScanConfig {
            p,
            q,
            n_min,
            n_max,
            threshold: ThresholdMode::Adaptive,
            chunk_size: 1024,
            stride: 1000,
            checkpoint_path: None,
            threads: 1,
            prefilter: true,
            stop_after: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.q < 2 {
            return Err(Error::domain("scan base requires q >= 2"));
        }
        if self.p <= self.q {
            return Err(Error::domain("scan base requires p > q (a ratio > 1)"));
        }
        if num_integer::gcd(self.p, self.q) != 1 {
            return Err(Error::domain("scan base p/q must be in lowest terms"));
        }
        if self.n_min < 1 {
            return Err(Error::domain("scan range requires n_min >= 1"));
        }
        if self.n_min > self.n_max {
            return Err(Error::domain("scan range requires n_min <= n_max"));
        }
        if self.n_max > 1 << 31 {
            return Err(Error::domain("scan range requires n_max <= 2^31"));
        }
        if self.chunk_size < 1 || self.chunk_size > 1 << 31 {
            return Err(Error::domain("chunk size must be in 1..=2^31"));
        }
        if self.stride < 1 {
            return Err(Error::domain("stride must be >= 1"));
        }
        if self.threads < 1 {
            return Err(Error::domain("worker count must be >= 1"));
        }
        Ok(())
    }

    /// Canonical string over the semantic fields only.
    fn canonical(&self) -> String {
        format!(
            "ZFSCAN1|p={}|q={}|n_min={}|n_max={}|threshold={}|stride={}",
            self.p,
            self.q,
            self.n_min,
            self.n_max,
            self.threshold.canonical(),
            self.stride
        )
    }

    /// SHA-256 (hex) of the canonical configuration string; identifies which
    /// checkpoints belong to which scans.
    pub fn config_hash(&self) -> String {
        let digest = Sha256::digest(self.canonical().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Why a record was emitted. At most one record exists per exponent; `hit`
/// takes precedence over `min`, which takes precedence over `sample`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RecordKind {
    Hit,
    Sample,
    Min,
}

impl RecordKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            RecordKind::Hit => "hit",
            RecordKind::Sample => "sample",
            RecordKind::Min => "min",
        }
    }
}

/// One scanned exponent. `frac` is the exact fractional part `r/q^n`;
/// `frac_sci` is its 60-significant-digit decimal rendering (truncated, so
/// the printed value never exceeds the true one). `mahler_margin` is the
/// diagnostic ratio `{(p/q)^n} / (9/10)^n` — how far the fractional part sits
/// above the `(9/10)^n` lower-bound scale — rendered from a floating-point
/// logarithm (it is the one non-exact field, and decides nothing).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRecord {
    pub n: u64,
    pub kind: RecordKind,
    #[serde(skip)]
    pub frac: Rational,
    #[serde(rename = "frac")]
    pub frac_sci: String,
    pub below_threshold: bool,
    pub mahler_margin: String,
}

impl ScanRecord {
    /// The four-column CSV row: `n,frac,below_threshold,mahler_margin`.
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{}",
            self.n, self.frac_sci, self.below_threshold, self.mahler_margin
        )
    }

    pub fn json_line(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}

/// Final scan report. Deterministic: contains no timestamps or run metadata,
/// so two runs of the same semantic configuration produce identical bytes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanSummary {
    pub p: u64,
    pub q: u64,
    pub n_min: u64,
    pub n_max: u64,
    pub threshold: String,
    pub stride: u64,
    /// Exponents below the threshold, ascending.
    pub hits: Vec<u64>,
    /// For the adaptive threshold on `(p, q) = (4, 3)` only: the subset of
    /// hits (with `n >= 2`) at which the floor identity's `k` is certified to
    /// equal 1 by the independent series evaluator. A hit merely means the
    /// fractional part is small enough to *permit* `k = 1`; this field is
    /// the certified exception set itself.
    pub confirmed_k1: Option<Vec<u64>>,
    pub min_frac_n: u64,
    pub min_frac: String,
    pub min_mahler_n: u64,
    pub min_mahler: String,
    pub records_emitted: u64,
}

impl ScanSummary {
    pub fn json_line(&self) -> String {
        serde_json::to_string(self).expect("summary serializes")
    }
}

/// How a scan ended: ran through `n_max`, or paused at a chunk boundary
/// because `stop_after` was reached (state is in the checkpoint, if any).
#[derive(Debug, Clone, PartialEq)]
pub enum ScanOutcome {
    Completed(ScanSummary),
    Paused { last_completed_n: u64 },
}

// ---------------------------------------------------------------------------
// Floating-point filter pieces.
//
// `log2_biguint` carries an absolute error below ~1e-10 at the magnitudes a
// scan can reach (the dominant term is the rounding of the final sum, one or
// two ulps of `n·log2 q`). The margins below exceed those errors by several
// orders of magnitude, growing with `n` like the errors do, so a filter
// decision taken outside the margin band is always the exact one.
// ---------------------------------------------------------------------------

/// Margin for comparisons of two fractional-part logarithms.
fn min_margin(n: u64) -> f64 {
    1e-9 + n as f64 * 1e-15
}

/// Margin for comparisons against a threshold logarithm. Wider than
/// [`min_margin`]: the adaptive threshold's logarithm is itself synthesized
/// from `n·(4 − log2 18)`, whose rounding error grows like `n` ulps.
fn thr_margin(n: u64) -> f64 {
    1e-6 + n as f64 * 1e-12
}

/// `log2 ε(n)` for the adaptive threshold,
/// `ε(n) = (4^n + 3^n)²/18^n = 4^n·(1 + (3/4)^n)²/18^n · 4^n`.
fn adaptive_log2_eps(n: u64) -> f64 {
    let nf = n as f64;
    // log2 ε(n) = n(4 − log2 18) + 2·log2(1 + (3/4)^n); the second term
    // underflows to exactly 0 for large n, where it is < 1e-150 anyway.
    let tail = 2.0 * 0.75f64.powf(nf).ln_1p() / std::f64::consts::LN_2;
    nf * (4.0 - 18f64.log2()) + tail
}

/// Renders `2^l2` in decimal scientific notation (six fractional digits)
/// directly from the exponent; the value itself may be far outside f64
/// range. Used only for the diagnostic Mahler margin.
fn format_pow2(l2: f64) -> String {
    let d = l2 * std::f64::consts::LOG10_2;
    let mut e = d.floor();
    let mut m = 10f64.powf(d - e);
    if m < 1.0 {
        m = 1.0;
    }
    // Keep the printed mantissa inside [1, 10): 9.9999995 rounds to "10.000000"
    // under {:.6}, so renormalize just below that boundary.
    if m >= 9.999_999_5 {
        m /= 10.0;
        e += 1.0;
        if m < 1.0 {
            m = 1.0;
        }
    }
    format!("{m:.6}e{:+}", e as i64)
}

fn log2_10_9() -> f64 {
    (10f64 / 9.0).log2()
}

// ---------------------------------------------------------------------------
// Per-chunk worker.
// ---------------------------------------------------------------------------

/// Immutable context shared by all workers.
struct Ctx {
    p: u64,
    q: u64,
    p_big: BigUint,
    q_big: BigUint,
    stride: u64,
    prefilter: bool,
    /// `p/q < 8`: reduce remainders by repeated subtraction (a handful of
    /// O(size) passes) instead of a full division.
    small_ratio: bool,
    /// Prime factors of `q` (possibly partial for huge `q`), used only for
    /// a cheap linear-time debug check that `gcd(r, q^n) = 1`.
    q_factors: Vec<u64>,
    thr: ThrCtx,
}

enum ThrCtx {
    Adaptive,
    Fixed {
        log2_t: f64,
        num: BigUint,
        den: BigUint,
        /// `Some(false)` when `t <= 0` (nothing is a hit), `Some(true)` when
        /// `t >= 1` (every fractional part is a hit).
        always: Option<bool>,
    },
}

impl Ctx {
    fn new(cfg: &ScanConfig) -> Ctx {
        let thr = match &cfg.threshold {
            ThresholdMode::Adaptive => ThrCtx::Adaptive,
            ThresholdMode::Fixed(t) => {
                let always = if !t.is_positive() {
                    Some(false)
                } else if t.num().magnitude() >= t.den().magnitude() {
                    Some(true)
                } else {
                    None
                };
                ThrCtx::Fixed {
                    log2_t: t.log2_approx().unwrap_or(0.0),
                    num: t.num().magnitude().clone(),
                    den: t.den().magnitude().clone(),
                    always,
                }
            }
        };
        Ctx {
            p: cfg.p,
            q: cfg.q,
            p_big: BigUint::from(cfg.p),
            q_big: BigUint::from(cfg.q),
            stride: cfg.stride,
            prefilter: cfg.prefilter,
            small_ratio: cfg.p / cfg.q < 8,
            q_factors: prime_factors(cfg.q),
            thr,
        }
    }
}

/// Small prime factors of `v` (complete for `v < 2^40`; possibly missing
/// factors above 2^20 otherwise, which only weakens a debug diagnostic).
fn prime_factors(mut v: u64) -> Vec<u64> {
    let mut fs = Vec::new();
    let mut d = 2u64;
    while d <= 1 << 20 && d.saturating_mul(d) <= v {
        if v % d == 0 {
            fs.push(d);
            while v % d == 0 {
                v /= d;
            }
        }
        d += 1;
    }
    if v > 1 {
        fs.push(v);
    }
    fs
}

/// A local prefix minimum of the fractional part within a chunk. Only these
/// can become global minima, so workers ship them (with the exact integers)
/// to the merger for the ordered global decision.
struct MinCandidate {
    n: u64,
    log2: f64,
    r: BigUint,
    qn: BigUint,
    below: bool,
    mahler: String,
}

struct ChunkOut {
    records: Vec<ScanRecord>,
    frac_minima: Vec<MinCandidate>,
    mahler_minima: Vec<(u64, f64)>,
    hits: Vec<u64>,
}

fn make_record(
    n: u64,
    kind: RecordKind,
    r: &BigUint,
    qn: &BigUint,
    below: bool,
    mahler: String,
) -> ScanRecord {
    let frac = Rational::from_coprime(BigInt::from(r.clone()), BigInt::from(qn.clone()));
    let frac_sci = to_scientific(&frac, FRAC_DIGITS, Round::Floor);
    ScanRecord {
        n,
        kind,
        frac,
        frac_sci,
        below_threshold: below,
        mahler_margin: mahler,
    }
}

/// Advances `p^n = k·q^n + r` to `n+1` in place.
fn step(ctx: &Ctx, k: &mut BigUint, r: &mut BigUint, qn: &mut BigUint) {
    // p^(n+1) = (p·k)·q^n + p·r; with p·k = t·q + u this is
    // t·q^(n+1) + (u·q^n + p·r), and the remainder term is < (p+q)·q^n.
    let pk = std::mem::take(k) * ctx.p;
    let (mut t, u) = pk.div_rem(&ctx.q_big);
    let mut rho = std::mem::take(r) * ctx.p + &u * &*qn;
    *qn *= ctx.q;
    if ctx.small_ratio {
        while rho >= *qn {
            rho -= &*qn;
            t += 1u32;
        }
    } else {
        let (extra, rem) = rho.div_rem(qn);
        t += extra;
        rho = rem;
    }
    *k = t;
    *r = rho;
}

/// Exact hit decision, gated by the floating-point filter when enabled.
fn below_threshold(ctx: &Ctx, n: u64, log2_frac: f64, r: &BigUint, qn: &BigUint) -> bool {
    match &ctx.thr {
        ThrCtx::Fixed {
            always: Some(b), ..
        } => *b,
        ThrCtx::Fixed {
            log2_t, num, den, ..
        } => {
            if ctx.prefilter {
                let margin = thr_margin(n);
                if log2_frac > log2_t + margin {
                    return false;
                }
                if log2_frac < log2_t - margin {
                    return true;
                }
            }
            // r/q^n < num/den  ⇔  r·den < num·q^n
            r * den < num * qn
        }
        ThrCtx::Adaptive => {
            if ctx.prefilter {
                let margin = thr_margin(n);
                let t = adaptive_log2_eps(n);
                if log2_frac > t + margin {
                    return false;
                }
                if log2_frac < t - margin {
                    return true;
                }
            }
            // r/q^n < (4^n+3^n)²/18^n  ⇔  r·18^n < q^n·(4^n+3^n)²
            let e = n as usize;
            let s = num_traits::pow(BigUint::from(4u32), e)
                + num_traits::pow(BigUint::from(3u32), e);
            r * num_traits::pow(BigUint::from(18u32), e) < qn * (&s * &s)
        }
    }
}

/// Scans the inclusive exponent range `[a, b]`. Pure function of the context
/// and the range; chunk boundaries never influence record content.
fn scan_chunk(ctx: &Ctx, a: u64, b: u64) -> ChunkOut {
    let mut qn = num_traits::pow(ctx.q_big.clone(), a as usize);
    let pn = num_traits::pow(ctx.p_big.clone(), a as usize);
    let (mut k, mut r) = pn.div_rem(&qn);

    let mut out = ChunkOut {
        records: Vec::new(),
        frac_minima: Vec::new(),
        mahler_minima: Vec::new(),
        hits: Vec::new(),
    };
    let mut loc_min: Option<(f64, BigUint, BigUint)> = None;
    let mut loc_mahler = f64::INFINITY;
    let log2_mahler_scale = log2_10_9();

    let mut n = a;
    loop {
        // gcd(p, q) = 1 forces gcd(p^n mod q^n, q^n) = 1; check the residues
        // against q's prime factors (linear time, debug builds only).
        debug_assert!(
            ctx.q_factors.iter().all(|f| !(&r % *f).is_zero()),
            "remainder shares a factor with q at n = {n}"
        );
        let log2_frac = log2_biguint(&r) - log2_biguint(&qn);
        let below = below_threshold(ctx, n, log2_frac, &r, &qn);
        let mahler_log2 = log2_frac + n as f64 * log2_mahler_scale;
        let mahler = format_pow2(mahler_log2);

        let is_loc_min = match &loc_min {
            None => true,
            Some((ml2, mr, mqn)) => {
                let margin = min_margin(n);
                if log2_frac < ml2 - margin {
                    true
                } else if log2_frac > ml2 + margin {
                    false
                } else {
                    &r * mqn < mr * &qn
                }
            }
        };
        if is_loc_min {
            loc_min = Some((log2_frac, r.clone(), qn.clone()));
            out.frac_minima.push(MinCandidate {
                n,
                log2: log2_frac,
                r: r.clone(),
                qn: qn.clone(),
                below,
                mahler: mahler.clone(),
            });
        }
        if mahler_log2 < loc_mahler {
            loc_mahler = mahler_log2;
            out.mahler_minima.push((n, mahler_log2));
        }

        if below {
            out.hits.push(n);
            out.records
                .push(make_record(n, RecordKind::Hit, &r, &qn, below, mahler));
        } else if n % ctx.stride == 0 {
            out.records
                .push(make_record(n, RecordKind::Sample, &r, &qn, below, mahler));
        }

        if n == b {
            break;
        }
        step(ctx, &mut k, &mut r, &mut qn);
        n += 1;
    }
    out
}

// ---------------------------------------------------------------------------
// Ordered merge and persistence.
// ---------------------------------------------------------------------------

struct MinState {
    n: u64,
    log2: f64,
    r: BigUint,
    qn: BigUint,
    /// Base-10 renderings cached for checkpoint writes.
    num_str: String,
    den_str: String,
}

struct RunState {
    last_completed_n: u64,
    records_emitted: u64,
    hits: Vec<u64>,
    min: Option<MinState>,
    mahler: Option<(u64, f64)>,
}

fn merge_chunk<E>(state: &mut RunState, chunk: ChunkOut, emit: &mut E) -> Result<()>
where
    E: FnMut(&ScanRecord) -> Result<()>,
{
    let ChunkOut {
        records,
        frac_minima,
        mahler_minima,
        hits,
    } = chunk;
    state.hits.extend(hits);
    for (n, l2) in mahler_minima {
        if state.mahler.map_or(true, |(_, cur)| l2 < cur) {
            state.mahler = Some((n, l2));
        }
    }

    let mut recs = records.into_iter().peekable();
    for cand in frac_minima {
        while recs.peek().is_some_and(|rec| rec.n < cand.n) {
            let rec = recs.next().expect("peeked");
            state.records_emitted += 1;
            emit(&rec)?;
        }
        let accept = match &state.min {
            None => true,
            Some(m) => {
                let margin = min_margin(cand.n);
                if cand.log2 < m.log2 - margin {
                    true
                } else if cand.log2 > m.log2 + margin {
                    false
                } else {
                    &cand.r * &m.qn < &m.r * &cand.qn
                }
            }
        };
        if !accept {
            continue;
        }
        // One record per exponent: an existing hit keeps its kind, an
        // existing sample is upgraded, otherwise a min record is synthesized.
        let rec = if recs.peek().is_some_and(|rec| rec.n == cand.n) {
            let mut rec = recs.next().expect("peeked");
            if rec.kind == RecordKind::Sample {
                rec.kind = RecordKind::Min;
            }
            rec
        } else {
            make_record(
                cand.n,
                RecordKind::Min,
                &cand.r,
                &cand.qn,
                cand.below,
                cand.mahler.clone(),
            )
        };
        state.records_emitted += 1;
        emit(&rec)?;
        state.min = Some(MinState {
            n: cand.n,
            log2: cand.log2,
            num_str: cand.r.to_str_radix(10),
            den_str: cand.qn.to_str_radix(10),
            r: cand.r,
            qn: cand.qn,
        });
    }
    for rec in recs {
        state.records_emitted += 1;
        emit(&rec)?;
    }
    Ok(())
}

fn write_checkpoint(cfg: &ScanConfig, hash: &str, state: &RunState, path: &Path) -> Result<()> {
    let min = state
        .min
        .as_ref()
        .expect("minimum exists after a committed chunk");
    let (mahler_n, mahler_l2) = state.mahler.expect("mahler minimum exists");
    Checkpoint {
        config_hash: hash.to_string(),
        p: cfg.p,
        q: cfg.q,
        n_min: cfg.n_min,
        n_max: cfg.n_max,
        threshold: cfg.threshold.canonical(),
        stride: cfg.stride,
        last_completed_n: state.last_completed_n,
        records_emitted: state.records_emitted,
        hits: state.hits.clone(),
        min_frac_n: min.n,
        min_frac_num: min.num_str.clone(),
        min_frac_den: min.den_str.clone(),
        min_mahler_n: mahler_n,
        min_mahler_log2: mahler_l2,
    }
    .save(path)
}

fn check_config_match(cfg: &ScanConfig, hash: &str, cp: &Checkpoint) -> Result<()> {
    if cp.config_hash == hash {
        return Ok(());
    }
    let mut diff = Vec::new();
    let mut field = |name: &str, have: &str, want: &str| {
        if have != want {
            diff.push(format!("  {name}: checkpoint has {have}, run requests {want}"));
        }
    };
    field("p", &cp.p.to_string(), &cfg.p.to_string());
    field("q", &cp.q.to_string(), &cfg.q.to_string());
    field("n_min", &cp.n_min.to_string(), &cfg.n_min.to_string());
    field("n_max", &cp.n_max.to_string(), &cfg.n_max.to_string());
    field("threshold", &cp.threshold, &cfg.threshold.canonical());
    field("stride", &cp.stride.to_string(), &cfg.stride.to_string());
    if diff.is_empty() {
        diff.push("  configuration hash differs".to_string());
    }
    Err(Error::ConfigMismatch(diff.join("\n")))
}

fn resume_state(cfg: &ScanConfig, hash: &str, cp: Checkpoint) -> Result<RunState> {
    check_config_match(cfg, hash, &cp)?;
    if cp.last_completed_n < cfg.n_min {
        return Err(Error::Checkpoint(format!(
            "last completed exponent {} below scan start {}",
            cp.last_completed_n, cfg.n_min
        )));
    }
    let r: BigUint = cp
        .min_frac_num
        .parse()
        .map_err(|e| Error::Checkpoint(format!("min_frac_num: {e}")))?;
    let qn: BigUint = cp
        .min_frac_den
        .parse()
        .map_err(|e| Error::Checkpoint(format!("min_frac_den: {e}")))?;
    if r.is_zero() || qn.is_zero() {
        return Err(Error::Checkpoint(
            "running minimum must be a positive fraction".to_string(),
        ));
    }
    // Recomputing the logarithm from the exact integers reproduces the same
    // f64 the uninterrupted run carried, so later filter decisions match.
    let log2 = log2_biguint(&r) - log2_biguint(&qn);
    Ok(RunState {
        last_completed_n: cp.last_completed_n,
        records_emitted: cp.records_emitted,
        hits: cp.hits,
        min: Some(MinState {
            n: cp.min_frac_n,
            log2,
            num_str: cp.min_frac_num,
            den_str: cp.min_frac_den,
            r,
            qn,
        }),
        mahler: Some((cp.min_mahler_n, cp.min_mahler_log2)),
    })
}

fn build_summary(cfg: &ScanConfig, state: &RunState) -> Result<ScanSummary> {
    let min = state
        .min
        .as_ref()
        .expect("at least one exponent was scanned");
    let frac = Rational::from_coprime(BigInt::from(min.r.clone()), BigInt::from(min.qn.clone()));
    let min_frac = to_scientific(&frac, FRAC_DIGITS, Round::Floor);
    let (mahler_n, mahler_l2) = state.mahler.expect("mahler minimum exists");
    let adaptive_43 =
        cfg.p == 4 && cfg.q == 3 && matches!(cfg.threshold, ThresholdMode::Adaptive);
    let confirmed_k1 = if adaptive_43 {
        let opts = CheckOptions::default();
        let mut confirmed = Vec::new();
        for &n in &state.hits {
            if n < 2 {
                continue; // k is defined for n >= 2 only
            }
            let n32 = u32::try_from(n).expect("n_max is bounded by validate()");
            if classify_k(n32, &opts)?.k() == 1 {
                confirmed.push(n);
            }
        }
        Some(confirmed)
    } else {
        None
    };
    Ok(ScanSummary {
        p: cfg.p,
        q: cfg.q,
        n_min: cfg.n_min,
        n_max: cfg.n_max,
        threshold: cfg.threshold.canonical(),
        stride: cfg.stride,
        hits: state.hits.clone(),
        confirmed_k1,
        min_frac_n: min.n,
        min_frac,
        min_mahler_n: mahler_n,
        min_mahler: format_pow2(mahler_l2),
        records_emitted: state.records_emitted,
    })
}

/// Runs a scan, feeding each emitted record to `emit` in ascending `n`.
///
/// Resumes from `checkpoint_path` when it holds a matching checkpoint, and
/// pauses at the first chunk boundary at or past `stop_after`. The emitted
/// record stream (across pause/resume cycles) and the summary depend only on
/// the semantic configuration fields.
pub fn scan<E>(cfg: &ScanConfig, mut emit: E) -> Result<ScanOutcome>
where
    E: FnMut(&ScanRecord) -> Result<()>,
{
    cfg.validate()?;
    let hash = cfg.config_hash();

    let mut state = RunState {
        last_completed_n: 0,
        records_emitted: 0,
        hits: Vec::new(),
        min: None,
        mahler: None,
    };
    let mut start = cfg.n_min;
    if let Some(path) = &cfg.checkpoint_path {
        if let Some(cp) = Checkpoint::load(path)? {
            state = resume_state(cfg, &hash, cp)?;
            start = state.last_completed_n + 1;
            if let Some(stop) = cfg.stop_after {
                if state.last_completed_n >= stop && state.last_completed_n < cfg.n_max {
                    return Ok(ScanOutcome::Paused {
                        last_completed_n: state.last_completed_n,
                    });
                }
            }
        }
    }

    if start <= cfg.n_max {
        let ctx = Ctx::new(cfg);
        let cs = cfg.chunk_size;
        let units = (cfg.n_max - start) / cs + 1;
        let mut paused = false;
        ordered_chunks(
            units,
            cfg.threads,
            |i| {
                let a = start + i * cs;
                let b = (a + cs - 1).min(cfg.n_max);
                Ok(scan_chunk(&ctx, a, b))
            },
            |i, chunk| {
                merge_chunk(&mut state, chunk, &mut emit)?;
                state.last_completed_n = (start + i * cs + cs - 1).min(cfg.n_max);
                if let Some(path) = &cfg.checkpoint_path {
                    write_checkpoint(cfg, &hash, &state, path)?;
                }
                if let Some(stop) = cfg.stop_after {
                    if state.last_completed_n >= stop && state.last_completed_n < cfg.n_max {
                        paused = true;
                        return Ok(false);
                    }
                }
                Ok(true)
            },
        )?;
        if paused {
            return Ok(ScanOutcome::Paused {
                last_completed_n: state.last_completed_n,
            });
        }
    }

    build_summary(cfg, &state).map(ScanOutcome::Completed)
}
