//! The claim catalog: bound functions, k/m classification, and certified
//! verdicts for every inequality the library can verify.
//!
//! Checked claims (the identifiers are the CLI's claim ids):
//!
//! * `prop2.1` / `prop2.2` — the zeta sandwich: for n ≥ 2,
//!   `1 < 1/(ζ(n)−1) − 2^n + (4/3)^n + 2 < 1 + ε(n)`.
//! * `prop2.3` / `prop2.4` — the prime sandwich: `0 < 1/P(s) − 2^s + (4/3)^s`
//!   for s ≥ 4, and `< δ(s)` for s ≥ 2.
//! * `thm1` — the floor identity `⌊1/(ζ(n)−1)⌋ = 2^n − ⌊(4/3)^n⌋ − k` with
//!   k ∈ {1, 2}.
//! * `prop3.3` — the fractional-part sandwich
//!   `k−1 < {1/(ζ(n)−1)} + {(4/3)^n} < k−1+ε(n)`.
//! * `prop3.5` — for rational 1/2 < x < 3/4, the difference
//!   `{x^n/(ζ(n)−1)} − {(2x)^n}` lies in the ε_x(n)-wide window shifted by
//!   `k = ⌊x^n/(ζ(n)−1)⌋ − ⌊(2x)^n⌋ ∈ {−1, 0}`.
//! * `thm1.5` — `{1/(ζ(n)−1)} + {(2/3)^n/(ζ(n)−1)}` lies in one of three
//!   m-indexed windows, m ∈ {0, 1, 2}, generically m = 1.
//! * `thm1.6` — the gap bound `1−ε(s) < 1/P(s) − 1/(ζ(s)−1) < 1+δ(s)` for
//!   s ≥ 7.
//!
//! Bound functions (exact rationals for rational x and integer s):
//! `ε_x(s) = (2x)^s ((2/3)^s + (1/2)^s)²`, `ε(s) = ε_1(s)`, and
//! `δ(s) = 2^s ((2/3)^s + (2/5)^s)² − (4/5)^s`.
//!
//! Verdicts are certified: `TRUE` means the enclosure lies strictly inside
//! the claimed open window, so the inequality is proved for that instance;
//! `INCONCLUSIVE` means the refinement cap was hit before separation. A
//! certified violation does not produce a `FALSE` verdict — it raises an
//! integrity error, because every claim here is a proved statement and a
//! genuine violation can only mean an implementation bug.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::bigratio::{pow_decompose, Rational};
use crate::enclosure::{certified_floor, Enclosure};
use crate::error::{Error, Result};
use crate::render;
use crate::series::{cf_second_term_with, prime_recip_enclosure, zeta_recip_enclosure, Schedule};

/// Outcome of a certified check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    /// The claim is certified for this instance.
    #[serde(rename = "TRUE")]
    True,
    /// The claim is certifiably violated (reported via integrity errors;
    /// never returned by the checkers themselves).
    #[serde(rename = "FALSE")]
    False,
    /// The refinement cap was reached before the enclosure separated.
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
    /// The claim's hypotheses exclude this instance (e.g. "n large enough").
    #[serde(rename = "NOT-APPLICABLE")]
    NotApplicable,
    /// The claim's hypothesis is not met, by the claim's own design.
    #[serde(rename = "SKIPPED")]
    Skipped,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::True => "TRUE",
            Verdict::False => "FALSE",
            Verdict::Inconclusive => "INCONCLUSIVE",
            Verdict::NotApplicable => "NOT-APPLICABLE",
            Verdict::Skipped => "SKIPPED",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Knobs shared by every checker.
#[derive(Clone, Copy, Debug)]
pub struct CheckOptions {
    /// Base dyadic precision override (bits); `None` uses the per-exponent
    /// default.
    pub precision_bits: Option<u32>,
    /// Maximum number of refinement rounds before giving up.
    pub max_rounds: u32,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            precision_bits: None,
            max_rounds: 64,
        }
    }
}

impl CheckOptions {
    fn zeta_schedule(&self, n: u32) -> Schedule {
        Schedule::for_zeta(n).with_bits(self.precision_bits)
    }

    fn prime_schedule(&self, s: u32) -> Schedule {
        Schedule::for_primes(s).with_bits(self.precision_bits)
    }
}

/// One serializable verdict line (JSONL external format).
#[derive(Clone, Debug, Serialize)]
pub struct VerdictRecord {
    #[serde(rename = "claim-id")]
    pub claim_id: String,
    pub n: u64,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<i64>,
    /// Lower enclosure endpoint, rounded down, 60 significant digits.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lo: Option<String>,
    /// Upper enclosure endpoint, rounded up, 60 significant digits.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hi: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl VerdictRecord {
    pub fn new(claim_id: &str, n: u64, verdict: Verdict) -> Self {
        VerdictRecord {
            claim_id: claim_id.to_string(),
            n,
            verdict,
            k: None,
            m: None,
            lo: None,
            hi: None,
            note: None,
        }
    }

    pub fn with_enclosure(mut self, e: &Enclosure) -> Self {
        let (lo, hi) = render::enclosure_endpoints(e, 60);
        self.lo = Some(lo);
        self.hi = Some(hi);
        self
    }

    pub fn with_k(mut self, k: i64) -> Self {
        self.k = Some(k);
        self
    }

    pub fn with_m(mut self, m: i64) -> Self {
        self.m = Some(m);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}

// ---------------------------------------------------------------------------
// Bound functions
// ---------------------------------------------------------------------------

fn r(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d)).expect("nonzero literal denominator")
}

/// `ε_x(s) = (2x)^s ((2/3)^s + (1/2)^s)²` as an exact rational. `x` must be
/// positive.
pub fn eval_epsilon(x: &Rational, s: u32) -> Rational {
    assert!(x.is_positive(), "epsilon requires x > 0");
    let e = s as i32;
    let two_x = x + x;
    let inner = &r(2, 3).pow_i(e) + &r(1, 2).pow_i(e);
    &two_x.pow_i(e) * &inner.pow_i(2)
}

/// `ε(s) = ε_1(s)`.
pub fn epsilon1(s: u32) -> Rational {
    eval_epsilon(&Rational::one(), s)
}

/// `δ(s) = 2^s ((2/3)^s + (2/5)^s)² − (4/5)^s` as an exact rational.
pub fn eval_delta(s: u32) -> Rational {
    let e = s as i32;
    let inner = &r(2, 3).pow_i(e) + &r(2, 5).pow_i(e);
    &(&r(2, 1).pow_i(e) * &inner.pow_i(2)) - &r(4, 5).pow_i(e)
}

/// The auxiliary margin function
/// `(5^n/(6^n−4^n−3^n)) ((16^n+9^n)/12^n + 2) − (n+4)/(n−1)`,
/// whose positivity for n ≥ 7 underpins the lower zeta sandwich bound.
/// Exact for integer n ≥ 2.
pub fn lower_sandwich_margin(n: u32) -> Result<Rational> {
    if n < 2 {
        return Err(Error::domain("margin function requires n >= 2"));
    }
    let e = n as i32;
    let six = r(6, 1).pow_i(e);
    let four = r(4, 1).pow_i(e);
    let three = r(3, 1).pow_i(e);
    let denom = &(&six - &four) - &three;
    if !denom.is_positive() {
        return Err(Error::domain("6^n - 4^n - 3^n must be positive"));
    }
    let first = &r(5, 1).pow_i(e) / &denom;
    let second = &(&(&r(16, 1).pow_i(e) + &r(9, 1).pow_i(e)) / &r(12, 1).pow_i(e)) + &r(2, 1);
    let last = &Rational::from_int(i64::from(n) + 4) / &Rational::from_int(i64::from(n) - 1);
    Ok(&(&first * &second) - &last)
}

// ---------------------------------------------------------------------------
// Certification core
// ---------------------------------------------------------------------------

/// The claimed position of a value relative to exact rational bounds
/// (always strict / open).
enum Claim {
    Above(Rational),
    Below(Rational),
    Inside(Rational, Rational),
}

impl Claim {
    fn certified(&self, e: &Enclosure) -> bool {
        match self {
            Claim::Above(a) => e.lo() > a,
            Claim::Below(b) => e.hi() < b,
            Claim::Inside(a, b) => e.strictly_inside(a, b),
        }
    }

    fn violated(&self, e: &Enclosure) -> bool {
        match self {
            Claim::Above(a) => e.hi() <= a,
            Claim::Below(b) => e.lo() >= b,
            Claim::Inside(a, b) => e.strictly_outside(a, b),
        }
    }

    fn describe(&self) -> String {
        match self {
            Claim::Above(a) => format!("value > {a}"),
            Claim::Below(b) => format!("value < {b}"),
            Claim::Inside(a, b) => format!("{a} < value < {b}"),
        }
    }
}

/// Refines `initial` (intersecting each round, so the enclosure never
/// widens) until the claim is certified, certifiably violated, or the round
/// cap is hit.
fn certify<F>(
    claim_id: &str,
    initial: Enclosure,
    claim: &Claim,
    mut refine: F,
    max_rounds: u32,
) -> Result<(Verdict, Enclosure)>
where
    F: FnMut(u32) -> Result<Enclosure>,
{
    let mut current = initial;
    for round in 0..=max_rounds {
        if claim.certified(&current) {
            return Ok((Verdict::True, current));
        }
        if claim.violated(&current) {
            return Err(Error::Integrity(format!(
                "{claim_id}: claimed {} but certified enclosure is [{}, {}]",
                claim.describe(),
                current.lo(),
                current.hi(),
            )));
        }
        if round == max_rounds {
            break;
        }
        current = current.intersect(&refine(round)?)?;
    }
    Ok((Verdict::Inconclusive, current))
}

/// `e + c` for an exact shift c.
fn shift(e: &Enclosure, c: &Rational) -> Enclosure {
    e.add(&Enclosure::point(c.clone()))
}

/// Exact rational `2^n`.
fn two_pow(n: u32) -> Rational {
    Rational::from(BigInt::one() << n)
}

// ---------------------------------------------------------------------------
// Zeta-side checks
// ---------------------------------------------------------------------------

/// The shifted zeta quantity `1/(ζ(n)−1) − 2^n + (4/3)^n + 2` at one
/// refinement round.
fn zeta_sandwich_value(n: u32, sched: &Schedule, round: u32) -> Result<Enclosure> {
    let c = &(&r(4, 3).pow_i(n as i32) - &two_pow(n)) + &r(2, 1);
    Ok(shift(&zeta_recip_enclosure(n, sched, round)?, &c))
}

fn check_zeta_claim(n: u32, opts: &CheckOptions, claim_id: &str, claim: Claim) -> Result<(Verdict, Enclosure)> {
    if n < 2 {
        return Err(Error::domain("zeta claims require n >= 2"));
    }
    let sched = opts.zeta_schedule(n);
    let initial = zeta_sandwich_value(n, &sched, 0)?;
    certify(
        claim_id,
        initial,
        &claim,
        |round| zeta_sandwich_value(n, &sched, round + 1),
        opts.max_rounds,
    )
}

/// Certifies `1 < 1/(ζ(n)−1) − 2^n + (4/3)^n + 2` (lower sandwich bound).
pub fn check_zeta_lower(n: u32, opts: &CheckOptions) -> Result<(Verdict, Enclosure)> {
    check_zeta_claim(n, opts, "prop2.1", Claim::Above(Rational::one()))
}

/// Certifies `1/(ζ(n)−1) − 2^n + (4/3)^n + 2 < 1 + ε(n)` (upper sandwich
/// bound).
pub fn check_zeta_upper(n: u32, opts: &CheckOptions) -> Result<(Verdict, Enclosure)> {
    let bound = &Rational::one() + &epsilon1(n);
    check_zeta_claim(n, opts, "prop2.2", Claim::Below(bound))
}

/// Certifies both sandwich bounds at once: the value lies strictly inside
/// `(1, 1 + ε(n))`.
pub fn check_zeta_sandwich(n: u32, opts: &CheckOptions) -> Result<(Verdict, Enclosure)> {
    let hi = &Rational::one() + &epsilon1(n);
    check_zeta_claim(
        n,
        opts,
        "prop2.1+prop2.2",
        Claim::Inside(Rational::one(), hi),
    )
}

// ---------------------------------------------------------------------------
// Prime-side checks
// ---------------------------------------------------------------------------

/// The shifted prime quantity `1/P(s) − 2^s + (4/3)^s` at one round.
fn prime_sandwich_value(s: u32, sched: &Schedule, round: u32) -> Result<Enclosure> {
    let c = &r(4, 3).pow_i(s as i32) - &two_pow(s);
    Ok(shift(&prime_recip_enclosure(s, sched, round)?, &c))
}

fn check_prime_claim(
    s: u32,
    min_s: u32,
    opts: &CheckOptions,
    claim_id: &str,
    claim: Claim,
) -> Result<(Verdict, Enclosure)> {
    if s < min_s {
        return Err(Error::domain(format!(
            "{claim_id} requires s >= {min_s}, got {s}"
        )));
    }
    let sched = opts.prime_schedule(s);
    let initial = prime_sandwich_value(s, &sched, 0)?;
    certify(
        claim_id,
        initial,
        &claim,
        |round| prime_sandwich_value(s, &sched, round + 1),
        opts.max_rounds,
    )
}

/// Certifies `1/P(s) − 2^s + (4/3)^s < δ(s)` for s ≥ 2.
pub fn check_prime_upper(s: u32, opts: &CheckOptions) -> Result<(Verdict, Enclosure)> {
    check_prime_claim(s, 2, opts, "prop2.3", Claim::Below(eval_delta(s)))
}

/// Certifies `0 < 1/P(s) − 2^s + (4/3)^s` for s ≥ 4.
pub fn check_prime_lower(s: u32, opts: &CheckOptions) -> Result<(Verdict, Enclosure)> {
    check_prime_claim(s, 4, opts, "prop2.4", Claim::Above(Rational::zero()))
}

/// Certifies the full prime sandwich `0 < 1/P(s) − 2^s + (4/3)^s < δ(s)`
/// for s ≥ 4.
pub fn check_prime_sandwich(s: u32, opts: &CheckOptions) -> Result<(Verdict, Enclosure)> {
    check_prime_claim(
        s,
        4,
        opts,
        "prop2.3+prop2.4",
        Claim::Inside(Rational::zero(), eval_delta(s)),
    )
}

/// Certifies the gap bound `1 − ε(s) < 1/P(s) − 1/(ζ(s)−1) < 1 + δ(s)` for
/// s ≥ 7, returning the gap enclosure.
pub fn check_prime_gap(s: u32, opts: &CheckOptions) -> Result<(Verdict, Enclosure)> {
    if s < 7 {
        return Err(Error::domain(format!("thm1.6 requires s >= 7, got {s}")));
    }
    let zs = opts.zeta_schedule(s);
    let ps = opts.prime_schedule(s);
    let gap_at = |round: u32| -> Result<Enclosure> {
        Ok(prime_recip_enclosure(s, &ps, round)?.sub(&zeta_recip_enclosure(s, &zs, round)?))
    };
    let one = Rational::one();
    let window = Claim::Inside(&one - &epsilon1(s), &one + &eval_delta(s));
    let initial = gap_at(0)?;
    certify("thm1.6", initial, &window, |round| gap_at(round + 1), opts.max_rounds)
}

// ---------------------------------------------------------------------------
// k / m classification
// ---------------------------------------------------------------------------

/// Per-n record for the floor identity
/// `⌊1/(ζ(n)−1)⌋ = 2^n − ⌊(4/3)^n⌋ − k`, k ∈ {1, 2}, together with the
/// certified fractional-part sandwich evidence.
#[derive(Clone, Debug)]
pub struct KRecord {
    n: u32,
    k: i8,
    floor_lhs: BigInt,
    floor_pow: BigInt,
    frac_sum: Enclosure,
    window_verdict: Verdict,
    recip_witness: Enclosure,
}

impl KRecord {
    pub fn n(&self) -> u32 {
        self.n
    }

    /// k ∈ {1, 2}.
    pub fn k(&self) -> i8 {
        self.k
    }

    /// `⌊1/(ζ(n)−1)⌋`.
    pub fn floor_lhs(&self) -> &BigInt {
        &self.floor_lhs
    }

    /// `⌊(4/3)^n⌋`.
    pub fn floor_pow(&self) -> &BigInt {
        &self.floor_pow
    }

    /// Enclosure of `{1/(ζ(n)−1)} + {(4/3)^n}`.
    pub fn frac_sum_enclosure(&self) -> &Enclosure {
        &self.frac_sum
    }

    /// Verdict of the sandwich `k−1 < {1/(ζ(n)−1)} + {(4/3)^n} < k−1+ε(n)`.
    pub fn window_verdict(&self) -> Verdict {
        self.window_verdict
    }

    /// Certified enclosure of `1/(ζ(n)−1)` (contains no integer).
    pub fn recip_witness(&self) -> &Enclosure {
        &self.recip_witness
    }
}

/// Classifies n by the floor identity: computes `⌊1/(ζ(n)−1)⌋` (certified)
/// and `⌊(4/3)^n⌋` (exact), derives `k = 2^n − ⌊(4/3)^n⌋ − ⌊1/(ζ(n)−1)⌋`,
/// checks k ∈ {1, 2}, and certifies the fractional-part sandwich.
pub fn classify_k(n: u32, opts: &CheckOptions) -> Result<KRecord> {
    if n < 2 {
        return Err(Error::domain("classify_k requires n >= 2"));
    }
    let sched = opts.zeta_schedule(n);
    let cert = cf_second_term_with(n, &sched, opts.max_rounds)?;
    let floor_lhs = cert.value().clone();
    let rp = pow_decompose(4, 3, u64::from(n))?;
    let floor_pow = BigInt::from(rp.int_part().clone());
    let k_big = (BigInt::one() << n) - &floor_pow - &floor_lhs;
    let k = k_big.to_i8().filter(|k| *k == 1 || *k == 2).ok_or_else(|| {
        Error::Integrity(format!(
            "thm1: n={n} gives k={k_big} outside {{1,2}} \
             (floor_lhs={floor_lhs}, floor_pow={floor_pow})"
        ))
    })?;

    // {1/(ζ(n)−1)} + {(4/3)^n}, certified inside (k−1, k−1+ε(n)).
    let shift_c = &rp.frac() - &Rational::from_int(floor_lhs.clone());
    let frac_sum0 = shift(cert.witness(), &shift_c);
    let window_lo = Rational::from_int(i64::from(k) - 1);
    let window_hi = &window_lo + &epsilon1(n);
    let (window_verdict, frac_sum) = certify(
        "prop3.3",
        frac_sum0,
        &Claim::Inside(window_lo, window_hi),
        |round| Ok(shift(&zeta_recip_enclosure(n, &sched, round + 1)?, &shift_c)),
        opts.max_rounds,
    )?;

    Ok(KRecord {
        n,
        k,
        floor_lhs,
        floor_pow,
        frac_sum,
        window_verdict,
        recip_witness: cert.witness().clone(),
    })
}

/// Certifies `k−1 < {1/(ζ(n)−1)} + {(4/3)^n} < k−1+ε(n)`.
pub fn check_fractional_sum(n: u32, opts: &CheckOptions) -> Result<(Verdict, Enclosure)> {
    let kr = classify_k(n, opts)?;
    Ok((kr.window_verdict, kr.frac_sum))
}

/// Per-(x, n) record for the generalized floor-difference claim.
#[derive(Clone, Debug)]
pub struct GeneralKRecord {
    pub x: Rational,
    pub n: u32,
    /// `⌊x^n/(ζ(n)−1)⌋ − ⌊(2x)^n⌋`, in {−1, 0} for n large enough.
    pub k: i64,
    pub verdict: Verdict,
    /// Enclosure of `{x^n/(ζ(n)−1)} − {(2x)^n}`.
    pub diff: Enclosure,
}

/// For rational `1/2 < x < 3/4`: computes
/// `k = ⌊x^n/(ζ(n)−1)⌋ − ⌊(2x)^n⌋` and certifies
/// `−(4x/3)^n − x^n − k < {x^n/(ζ(n)−1)} − {(2x)^n} < ε_x(n) − (4x/3)^n − x^n − k`.
///
/// For small n (< 10) where k falls outside {−1, 0} the verdict is
/// NOT-APPLICABLE (the claim only asserts "n large enough"); for n ≥ 10 such
/// a k is an integrity error.
pub fn classify_general_k(x: &Rational, n: u32, opts: &CheckOptions) -> Result<GeneralKRecord> {
    if !(x > &r(1, 2) && x < &r(3, 4)) {
        return Err(Error::domain(format!(
            "prop3.5 requires 1/2 < x < 3/4, got {x}"
        )));
    }
    if n < 2 {
        return Err(Error::domain("prop3.5 requires n >= 2"));
    }
    let sched = opts.zeta_schedule(n);
    let e = n as i32;
    let xn = x.pow_i(e);
    let two_x_n = (x + x).pow_i(e);
    let floor_2x = two_x_n.floor_int();
    let frac_2x = &two_x_n - &Rational::from_int(floor_2x.clone());

    // Certified ⌊x^n/(ζ(n)−1)⌋.
    let scaled = |round: u32| -> Result<Enclosure> {
        Ok(zeta_recip_enclosure(n, &sched, round)?.mul(&Enclosure::point(xn.clone())))
    };
    let cert = certified_floor(scaled(0)?, |round| scaled(round + 1), opts.max_rounds)?;
    let k_big = cert.value() - &floor_2x;
    let k = k_big
        .to_i64()
        .ok_or_else(|| Error::Integrity(format!("prop3.5: k={k_big} out of integer range")))?;

    // {x^n/(ζ(n)−1)} − {(2x)^n} with its claimed window.
    let shift_c = &(-&Rational::from_int(cert.value().clone())) - &frac_2x;
    let diff0 = shift(cert.witness(), &shift_c);
    if k != 0 && k != -1 {
        if n < 10 {
            return Ok(GeneralKRecord {
                x: x.clone(),
                n,
                k,
                verdict: Verdict::NotApplicable,
                diff: diff0,
            });
        }
        return Err(Error::Integrity(format!(
            "prop3.5: n={n}, x={x} gives k={k} outside {{-1,0}}"
        )));
    }
    let base = &(-&(&r(4, 3) * x).pow_i(e)) - &xn;
    let k_rat = Rational::from_int(k);
    let window_lo = &base - &k_rat;
    let window_hi = &(&eval_epsilon(x, n) + &base) - &k_rat;
    let (verdict, diff) = certify(
        "prop3.5",
        diff0,
        &Claim::Inside(window_lo, window_hi),
        |round| Ok(shift(&scaled(round + 1)?, &shift_c)),
        opts.max_rounds,
    )?;
    Ok(GeneralKRecord {
        x: x.clone(),
        n,
        k,
        verdict,
        diff,
    })
}

/// Per-n record for the three-window classification of
/// `{1/(ζ(n)−1)} + {(2/3)^n/(ζ(n)−1)}`.
#[derive(Clone, Debug)]
pub struct MRecord {
    pub n: u32,
    /// Window index m ∈ {0, 1, 2}; m = 1 is the generic case.
    pub m: i8,
    pub verdict: Verdict,
    /// Enclosure of the two-term fractional sum.
    pub sum: Enclosure,
}

/// The m-window `(max(0, m−(8/9)^n−(2/3)^n), min(2, m+ε(n)+ε_{2/3}(n)−(8/9)^n−(2/3)^n))`.
fn m_window(n: u32, m: i8) -> (Rational, Rational) {
    let e = n as i32;
    let drop = &r(8, 9).pow_i(e) + &r(2, 3).pow_i(e);
    let m_rat = Rational::from_int(i64::from(m));
    let lo = (&m_rat - &drop).max(Rational::zero());
    let hi = (&(&m_rat + &(&epsilon1(n) + &eval_epsilon(&r(2, 3), n))) - &drop)
        .min(Rational::from_int(2));
    (lo, hi)
}

/// Classifies n into its m-window: determines m structurally from the two
/// certified floors (`m = k' − 1 − k` with k' from the floor identity and k
/// from the x=2/3 floor difference), then certifies that the fractional sum
/// lies strictly inside window m.
pub fn classify_m(n: u32, opts: &CheckOptions) -> Result<MRecord> {
    if n < 2 {
        return Err(Error::domain("thm1.5 requires n >= 2"));
    }
    let sched = opts.zeta_schedule(n);
    let e = n as i32;
    let c = r(2, 3).pow_i(e);

    // f1 = ⌊1/(ζ(n)−1)⌋ and k' from the floor identity.
    let cert1 = cf_second_term_with(n, &sched, opts.max_rounds)?;
    let f1 = cert1.value().clone();
    let rp = pow_decompose(4, 3, u64::from(n))?;
    let int_pow = BigInt::from(rp.int_part().clone());
    let k_prime = (BigInt::one() << n) - &int_pow - &f1;

    // f2 = ⌊(2/3)^n/(ζ(n)−1)⌋ and the x=2/3 floor difference (note
    // 2x = 4/3, so the subtracted floor is ⌊(4/3)^n⌋ again).
    let scaled = |round: u32| -> Result<Enclosure> {
        Ok(zeta_recip_enclosure(n, &sched, round)?.mul(&Enclosure::point(c.clone())))
    };
    let cert2 = certified_floor(scaled(0)?, |round| scaled(round + 1), opts.max_rounds)?;
    let f2 = cert2.value().clone();
    let k_gen = &f2 - &int_pow;

    let k_prime = k_prime.to_i64().unwrap_or(i64::MIN);
    let k_gen = k_gen.to_i64().unwrap_or(i64::MIN);
    if !(k_prime == 1 || k_prime == 2) || !(k_gen == -1 || k_gen == 0) {
        return Err(Error::Integrity(format!(
            "thm1.5: n={n} floor offsets (k'={k_prime}, k={k_gen}) out of range"
        )));
    }
    let m = (k_prime - 1 - k_gen) as i8;

    // Sum of the two fractional parts, written with a single occurrence of
    // R = 1/(ζ(n)−1): {R} + {R c} = R(1+c) − (f1+f2).
    let scale = &Rational::one() + &c;
    let offset = Rational::from_int(&f1 + &f2);
    let sum_at = |round: u32| -> Result<Enclosure> {
        Ok(shift(
            &zeta_recip_enclosure(n, &sched, round)?.mul(&Enclosure::point(scale.clone())),
            &(-&offset),
        ))
    };

    let (w_lo, w_hi) = m_window(n, m);
    let mut current = sum_at(0)?;
    for round in 0..=opts.max_rounds {
        if current.strictly_inside(&w_lo, &w_hi) {
            return Ok(MRecord {
                n,
                m,
                verdict: Verdict::True,
                sum: current,
            });
        }
        let outside_all = (0..=2).all(|mm| {
            let (a, b) = m_window(n, mm);
            current.strictly_outside(&a, &b)
        });
        if outside_all {
            return Err(Error::Integrity(format!(
                "thm1.5: n={n} sum enclosure [{}, {}] lies outside every m-window",
                current.lo(),
                current.hi()
            )));
        }
        if round == opts.max_rounds {
            break;
        }
        current = current.intersect(&sum_at(round + 1)?)?;
    }
    Ok(MRecord {
        n,
        m,
        verdict: Verdict::Inconclusive,
        sum: current,
    })
}

/// If k = 2, certifies that `1/(ζ(n)−1)` is not an integer — hence ζ(n) is
/// not of the form `1 + 1/m` — returning TRUE with the integer-free
/// enclosure as evidence. If k = 1 the claim's hypothesis is not met:
/// SKIPPED. A persistent integer straddle yields INCONCLUSIVE.
pub fn check_egypt(n: u32, opts: &CheckOptions) -> Result<(Verdict, Option<Enclosure>)> {
    if n < 2 {
        return Err(Error::domain("egypt check requires n >= 2"));
    }
    match classify_k(n, opts) {
        Ok(kr) => {
            if kr.k() == 2 {
                Ok((Verdict::True, Some(kr.recip_witness().clone())))
            } else {
                Ok((Verdict::Skipped, Some(kr.recip_witness().clone())))
            }
        }
        Err(Error::StraddlesInteger { enclosure, .. }) => {
            Ok((Verdict::Inconclusive, Some(*enclosure)))
        }
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigratio::rat;
    use proptest::prelude::*;

    fn opts() -> CheckOptions {
        CheckOptions::default()
    }

    fn rq(n: i64, d: i64) -> Rational {
        rat(n, d).unwrap()
    }

    #[test]
    fn epsilon_reference_values() {
        assert_eq!(eval_epsilon(&Rational::one(), 2), rq(625, 324));
        // ε(7) ≈ 0.5633
        let e7 = epsilon1(7);
        assert!(e7 > rq(5633, 10_000) && e7 < rq(5634, 10_000));
        // threshold crossing: ε(175) > 10⁻⁹ > ε(176)
        let nano = rq(1, 1_000_000_000);
        assert!(epsilon1(175) > nano);
        assert!(epsilon1(176) < nano);
    }

    #[test]
    fn epsilon_scaling_identity() {
        for s in [0u32, 1, 2, 5, 17, 30] {
            let lhs = eval_epsilon(&rq(2, 3), s);
            let rhs = &rq(2, 3).pow_i(s as i32) * &epsilon1(s);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn delta_reference_values() {
        assert_eq!(eval_delta(0), rq(3, 1));
        let d4 = eval_delta(4);
        assert!(d4 > rq(38698, 100_000) && d4 < rq(38700, 100_000));
        let d7 = eval_delta(7);
        assert!(d7 > rq(25363, 100_000) && d7 < rq(25365, 100_000));
    }

    #[test]
    fn bound_functions_vanish_monotonically() {
        let mut prev_eps = epsilon1(2);
        let mut prev_delta = eval_delta(2);
        for s in 3..=500u32 {
            let e = epsilon1(s);
            let d = eval_delta(s);
            assert!(e < prev_eps, "epsilon not decreasing at s={s}");
            assert!(d < prev_delta, "delta not decreasing at s={s}");
            assert!(e.is_positive());
            prev_eps = e;
            prev_delta = d;
        }
    }

    #[test]
    fn margin_function_positive_from_7() {
        for n in 7..=100u32 {
            assert!(
                lower_sandwich_margin(n).unwrap().is_positive(),
                "margin not positive at n={n}"
            );
        }
    }

    #[test]
    fn classify_k_small_table() {
        // (n, k, floor_lhs)
        let table: [(u32, i8, i64); 8] = [
            (2, 2, 1),
            (3, 2, 4),
            (4, 1, 12),
            (5, 1, 27),
            (6, 2, 57),
            (7, 2, 119),
            (13, 1, 8149),
            (17, 1, 130938),
        ];
        for &(n, k, lhs) in &table {
            let kr = classify_k(n, &opts()).unwrap();
            assert_eq!(kr.k(), k, "k mismatch at n={n}");
            assert_eq!(kr.floor_lhs(), &BigInt::from(lhs), "floor mismatch at n={n}");
            // identity: floor_lhs + floor_pow + k = 2^n
            let sum = kr.floor_lhs() + kr.floor_pow() + BigInt::from(kr.k());
            assert_eq!(sum, BigInt::one() << n);
            assert_eq!(kr.window_verdict(), Verdict::True, "window at n={n}");
        }
    }

    #[test]
    fn zeta_sandwich_first_fifty() {
        for n in 2..=50u32 {
            let (v, e) = check_zeta_sandwich(n, &opts()).unwrap();
            assert_eq!(v, Verdict::True, "n={n}, enclosure [{}, {}]", e.lo(), e.hi());
        }
    }

    #[test]
    fn zeta_one_sided_checks() {
        for n in [2u32, 7, 33] {
            assert_eq!(check_zeta_lower(n, &opts()).unwrap().0, Verdict::True);
            assert_eq!(check_zeta_upper(n, &opts()).unwrap().0, Verdict::True);
        }
    }

    #[test]
    fn prime_sandwich_small_range() {
        for s in 4..=30u32 {
            let (v, _) = check_prime_sandwich(s, &opts()).unwrap();
            assert_eq!(v, Verdict::True, "s={s}");
        }
        // upper bound alone holds from s=2
        for s in [2u32, 3] {
            assert_eq!(check_prime_upper(s, &opts()).unwrap().0, Verdict::True);
        }
    }

    #[test]
    fn prime_gap_reference_values() {
        let (v, gap) = check_prime_gap(7, &opts()).unwrap();
        assert_eq!(v, Verdict::True);
        // gap(7) ≈ 0.9462, inside the acceptance spot-window (0.90, 1.00)
        assert!(gap.strictly_inside(&rq(90, 100), &rq(100, 100)));
        assert!(gap.strictly_inside(&rq(9455, 10_000), &rq(9470, 10_000)));

        let (v, gap) = check_prime_gap(20, &opts()).unwrap();
        assert_eq!(v, Verdict::True);
        // |gap − 1| < 0.01 by s = 20
        assert!(gap.strictly_inside(&rq(99, 100), &rq(101, 100)));
    }

    #[test]
    fn general_k_examples() {
        let g = classify_general_k(&rq(2, 3), 20, &opts()).unwrap();
        assert!(g.k == 0 || g.k == -1);
        assert_eq!(g.verdict, Verdict::True);

        let g = classify_general_k(&rq(3, 5), 30, &opts()).unwrap();
        assert_eq!(g.verdict, Verdict::True);

        assert!(classify_general_k(&rq(1, 2), 20, &opts()).is_err());
        assert!(classify_general_k(&rq(3, 4), 20, &opts()).is_err());
    }

    #[test]
    fn m_classification_generic_case() {
        for n in [20u32, 35, 50] {
            let mr = classify_m(n, &opts()).unwrap();
            assert_eq!(mr.m, 1, "n={n}");
            assert_eq!(mr.verdict, Verdict::True, "n={n}");
            assert!(mr
                .sum
                .strictly_inside(&Rational::zero(), &Rational::from_int(2)));
        }
    }

    #[test]
    fn egypt_checks() {
        let (v, e) = check_egypt(2, &opts()).unwrap();
        assert_eq!(v, Verdict::True);
        assert!(e.is_some());
        assert_eq!(check_egypt(6, &opts()).unwrap().0, Verdict::True);
        assert_eq!(check_egypt(4, &opts()).unwrap().0, Verdict::Skipped);
    }

    #[test]
    fn verdict_rendering() {
        assert_eq!(Verdict::True.to_string(), "TRUE");
        assert_eq!(Verdict::NotApplicable.to_string(), "NOT-APPLICABLE");
        let rec = VerdictRecord::new("thm1", 4, Verdict::True).with_k(1);
        let line = rec.to_json_line();
        let parsed: serde_json::Value = serde_json::from_str(&line).unwrap();
        assert_eq!(parsed["claim-id"], "thm1");
        assert_eq!(parsed["verdict"], "TRUE");
        assert_eq!(parsed["k"], 1);
        assert!(parsed.get("m").is_none());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn epsilon_scaling_random(
            xn in 1i64..50, xd in 1i64..50,
            yn in 1i64..50, yd in 1i64..50,
            s in 0u32..50,
        ) {
            let x = rq(xn, xd);
            let y = rq(yn, yd);
            let lhs = eval_epsilon(&(&x * &y), s);
            let rhs = &x.pow_i(s as i32) * &eval_epsilon(&y, s);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
