//! Certified enclosures of ζ(s)−1 and of the prime zeta function P(s),
//! prime generation, and the certified second continued-fraction term of
//! ζ(n).
//!
//! Both series are evaluated as `S_M + tail`, where `S_M` is the sum of the
//! leading terms and the tail is bracketed by the integral pair
//!
//! ```text
//! (M+1)^(1−s)/(s−1)  ≤  Σ_{i>M} i^(−s)  ≤  M^(1−s)/(s−1)
//! ```
//!
//! (for the prime series the lower tail bound is 0 and the upper bound is
//! the same integral, since the primes beyond the table are a subset of the
//! integers beyond it).
//!
//! Endpoints are managed on a dyadic grid: each term is rounded down into
//! the lower accumulator and up into the upper one, in units of `2^-B`. This
//! is the "round lo down / hi up to a bounded denominator" endpoint
//! simplification applied eagerly at the accumulation site — containment is
//! preserved exactly, denominators never grow past `2^B`, and the enclosure
//! width exceeds the pure tail width by at most `(M+2)` grid steps. Terms
//! too small to register on the grid are skipped and covered by an explicit
//! ulp bound added to the upper endpoint, so large `M` at large `s` costs
//! almost nothing.
//!
//! Exponents may be non-integer rationals `a/b`: terms `i^(−a/b)` are then
//! bracketed by scaled integer b-th roots, which keeps the enclosure
//! contract fully certified (no floating point, no error budget).
//! Enclosures produced at a higher cutoff/precision are nested inside
//! earlier ones up to one grid step; refinement loops intersect successive
//! enclosures, which restores exact monotonicity.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::bigratio::Rational;
use crate::enclosure::{certified_floor, Enclosure, FloorCertificate};
use crate::error::{Error, Result};

/// A request to evaluate one of the series: exponent `s > 1` (integer or
/// rational), cutoff `terms >= 2`, and the dyadic endpoint precision.
#[derive(Clone, Debug)]
pub struct SeriesRequest {
    s: Rational,
    terms: u64,
    precision_bits: u32,
}

impl SeriesRequest {
    /// Validates `s > 1` (the series diverge otherwise) and `terms >= 2`.
    /// Precision defaults to [`default_precision_bits`] for the exponent.
    pub fn new(s: Rational, terms: u64) -> Result<Self> {
        if s <= Rational::one() {
            return Err(Error::domain(format!(
                "series exponent must exceed 1, got {s}"
            )));
        }
        if terms < 2 {
            return Err(Error::domain("series cutoff must be at least 2"));
        }
        let den = s.den();
        if den.bits() > 10 {
            return Err(Error::domain(format!(
                "exponent denominator {den} is unreasonably large"
            )));
        }
        if s.num().bits() > 32 {
            return Err(Error::domain(format!("exponent {s} is too large")));
        }
        let precision_bits = default_precision_bits(&s);
        Ok(SeriesRequest {
            s,
            terms,
            precision_bits,
        })
    }

    pub fn with_precision(mut self, bits: u32) -> Self {
        self.precision_bits = bits.max(32);
        self
    }

    pub fn s(&self) -> &Rational {
        &self.s
    }

    pub fn terms(&self) -> u64 {
        self.terms
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }
}

/// Default dyadic precision for exponent `s`: `ceil(9s/4) + 96` bits.
///
/// Downstream pipelines divide by values of size `~2^-s` (reciprocals of the
/// series), which amplifies absolute error by `~2^(2s)`; the extra `s/4`
/// covers the tightest certified margins, which shrink like `(16/27)^s`.
pub fn default_precision_bits(s: &Rational) -> u32 {
    let s_ceil = s.ceil_int().to_u64().unwrap_or(1 << 20).min(1 << 20) as u32;
    s_ceil.saturating_mul(9).div_ceil(4) + 96
}

/// Skip-margin bits: terms below `2^-(B + SKIP_MARGIN)` are not evaluated;
/// their total is covered by an ulp bound on the upper endpoint.
const SKIP_MARGIN: u64 = 16;

/// Dyadic two-sided accumulator in units of `2^-bits`.
struct DyadicAcc {
    lo_units: BigUint,
    hi_units: BigUint,
    bits: u32,
    skipped: u64,
}

impl DyadicAcc {
    fn new(bits: u32) -> Self {
        DyadicAcc {
            lo_units: BigUint::zero(),
            hi_units: BigUint::zero(),
            bits,
            skipped: 0,
        }
    }

    /// Adds `1/den` rounded outward.
    fn add_recip(&mut self, den: &BigUint) {
        let numer = BigUint::one() << self.bits;
        let (q, r) = numer.div_rem(den);
        self.lo_units += &q;
        self.hi_units += &q;
        if !r.is_zero() {
            self.hi_units += 1u32;
        }
    }

    /// Adds an interval `[lo, hi]` of exact rationals, rounded outward.
    fn add_interval(&mut self, lo: &Rational, hi: &Rational) {
        debug_assert!(!lo.is_negative() && lo <= hi);
        let scale = Rational::from(BigInt::one() << self.bits);
        self.lo_units += (lo * &scale).floor_int().magnitude();
        self.hi_units += (hi * &scale).ceil_int().magnitude();
    }

    /// Records a term that was skipped because it is below the grid
    /// resolution (smaller than `2^-(bits + SKIP_MARGIN)`).
    fn skip_term(&mut self) {
        self.skipped += 1;
    }

    fn into_enclosure(mut self) -> Enclosure {
        if self.skipped > 0 {
            // total skipped mass < skipped * 2^-(bits+SKIP_MARGIN)
            let ulps = (self.skipped >> SKIP_MARGIN) + 1;
            self.hi_units += BigUint::from(ulps);
        }
        let den = BigInt::one() << self.bits;
        let lo = Rational::new(BigInt::from(self.lo_units), den.clone())
            .expect("power-of-two denominator");
        let hi = Rational::new(BigInt::from(self.hi_units), den).expect("power-of-two denominator");
        Enclosure::new(lo, hi).expect("lo <= hi by construction")
    }
}

/// Exponent decomposed for term evaluation.
enum Exp {
    Int(u32),
    /// `a/b` in lowest terms with `b >= 2`.
    Root { a: u32, b: u32 },
}

fn decompose_exponent(s: &Rational) -> Result<Exp> {
    if s.is_integer() {
        let v = s.num().to_u32().ok_or_else(|| {
            Error::domain(format!("integer exponent {s} out of supported range"))
        })?;
        Ok(Exp::Int(v))
    } else {
        let a = s
            .num()
            .to_u32()
            .ok_or_else(|| Error::domain(format!("exponent numerator of {s} too large")))?;
        let b = s
            .den()
            .to_u32()
            .ok_or_else(|| Error::domain(format!("exponent denominator of {s} too large")))?;
        Ok(Exp::Root { a, b })
    }
}

/// True iff `base^(s) > 2^(threshold_bits)` is guaranteed from bit lengths
/// alone (conservative: may answer false for values slightly above).
fn power_exceeds(base: u64, s: &Exp, threshold_bits: u64) -> bool {
    debug_assert!(base >= 2);
    let floor_log2 = 63 - base.leading_zeros() as u64; // base >= 2^floor_log2
    match s {
        Exp::Int(e) => floor_log2 * u64::from(*e) > threshold_bits,
        Exp::Root { a, b } => {
            floor_log2 * u64::from(*a) > threshold_bits * u64::from(*b) + u64::from(*b)
        }
    }
}

/// Adds `base^(−s)` to the accumulator, rounded outward, unless the term is
/// provably below the grid (then it is skipped and bounded globally).
fn add_power_recip(acc: &mut DyadicAcc, base: u64, s: &Exp) {
    if power_exceeds(base, s, u64::from(acc.bits) + SKIP_MARGIN) {
        acc.skip_term();
        return;
    }
    match s {
        Exp::Int(e) => {
            let den = num_traits::pow(BigUint::from(base), *e as usize);
            acc.add_recip(&den);
        }
        Exp::Root { a, b } => {
            // base^(a/b) ∈ [y, y+1] / 2^bits with y = floor((base^a << b*bits)^(1/b))
            let pow_a = num_traits::pow(BigUint::from(base), *a as usize);
            let scaled = pow_a << (u64::from(*b) * u64::from(acc.bits));
            let y = scaled.nth_root(*b);
            // 1/base^(a/b) ∈ [2^bits/(y+1), 2^bits/y], i.e. in grid units
            // of 2^-bits the term lies in [2^(2 bits)/(y+1), 2^(2 bits)/y].
            let numer = BigUint::one() << (2 * u64::from(acc.bits));
            let y1 = &y + 1u32;
            let lo_q = &numer / &y1;
            let (hi_q, hi_r) = numer.div_rem(&y);
            let mut hi_units = hi_q;
            if !hi_r.is_zero() {
                hi_units += 1u32;
            }
            acc.lo_units += lo_q;
            acc.hi_units += hi_units;
        }
    }
}

/// Enclosure of `base^(1−s)/(s−1)` (the integral tail bound from `base`),
/// for `s > 1` and `base >= 2`.
fn tail_bound(base: u64, s: &Rational, exp: &Exp, bits: u32) -> Enclosure {
    let s_minus_1 = s - &Rational::one();
    let inv_s1 = s_minus_1.recip().expect("s > 1");
    // The magnitude that decides whether the tail registers on the grid is
    // base^(s-1), not base^s.
    let exp_minus_1 = match exp {
        Exp::Int(e) => Exp::Int(*e - 1),
        Exp::Root { a, b } => Exp::Root { a: *a - *b, b: *b },
    };
    if power_exceeds(base, &exp_minus_1, u64::from(bits)) {
        // base^(s-1) > 2^bits, so the tail is below ulp/(s-1): [0, ulp/(s-1)]
        let ulp = Rational::new(BigInt::one(), BigInt::one() << bits).expect("nonzero");
        let hi = &ulp * &inv_s1;
        return Enclosure::new(Rational::zero(), hi).expect("ordered");
    }
    match exp {
        Exp::Int(e) => {
            // base^(1-s) = 1 / base^(e-1), exact rational
            let den = num_traits::pow(BigUint::from(base), (*e - 1) as usize);
            let v = Rational::new(BigInt::one(), BigInt::from(den)).expect("nonzero");
            let t = &v * &inv_s1;
            Enclosure::point(t)
        }
        Exp::Root { a, b } => {
            // base^(s-1) = base^((a-b)/b) ∈ [y, y+1]/2^bits
            let pow = num_traits::pow(BigUint::from(base), (*a - *b) as usize);
            let scaled = pow << (u64::from(*b) * u64::from(bits));
            let y = scaled.nth_root(*b);
            let two_b = BigInt::one() << bits;
            let lo_root = Rational::new(BigInt::from(y.clone()), two_b.clone()).expect("nonzero");
            let hi_root = Rational::new(BigInt::from(y + 1u32), two_b).expect("nonzero");
            // base^(1-s)/(s-1) ∈ [1/hi_root, 1/lo_root] * inv_s1
            let lo = &hi_root.recip().expect("positive") * &inv_s1;
            let hi = &lo_root.recip().expect("positive") * &inv_s1;
            Enclosure::new(lo, hi).expect("ordered")
        }
    }
}

/// Certified enclosure of `ζ(s) − 1 = Σ_{i≥2} i^(−s)`.
///
/// Returns `[S_M + T_lo, S_M + T_hi]` with the leading `terms` summed on the
/// dyadic grid and the tail bracketed by the integral pair; the true value
/// is guaranteed inside.
pub fn zeta_minus1(req: &SeriesRequest) -> Result<Enclosure> {
    let exp = decompose_exponent(&req.s)?;
    let mut acc = DyadicAcc::new(req.precision_bits);
    for i in 2..=req.terms {
        add_power_recip(&mut acc, i, &exp);
    }
    let tail = tail_pair(req.terms, &req.s, &exp, req.precision_bits);
    acc.add_interval(tail.lo(), tail.hi());
    Ok(apply_leading_term_floor(acc.into_enclosure(), &req.s))
}

/// Tightens a series enclosure with the exact bound `value > 2^(−s) ≥
/// 2^(−⌈s⌉)` (the `i = 2` term alone; every other term is positive).
///
/// When the requested precision is far below the exponent the dyadic grid
/// floors the lower endpoint all the way to 0, and an enclosure containing 0
/// cannot be inverted — which would abort the refinement loops that exist
/// precisely to recover from too little precision. The clamp keeps such
/// enclosures invertible (wide, but sound), so low-precision rounds degrade
/// into ordinary refinement instead of hard errors.
fn apply_leading_term_floor(enc: Enclosure, s: &Rational) -> Enclosure {
    let bound = match s.ceil_int().to_u64() {
        // Beyond any practicable exponent the bound is unrepresentably
        // cheap to skip; the default schedules never floor to 0 anyway.
        Some(e) if e <= 1 << 22 => {
            Rational::new(BigInt::one(), BigInt::one() << e).expect("nonzero")
        }
        _ => return enc,
    };
    if enc.lo() < &bound {
        let hi = enc.hi().clone();
        Enclosure::new(bound, hi).expect("series value exceeds its leading term")
    } else {
        enc
    }
}

/// `[lower-tail from M+1, upper-tail from M]`: the two-sided integral
/// bracket of `Σ_{i>M} i^(−s)`.
fn tail_pair(terms: u64, s: &Rational, exp: &Exp, bits: u32) -> Enclosure {
    let from_m = tail_bound(terms, s, exp, bits);
    let from_m1 = tail_bound(terms + 1, s, exp, bits);
    Enclosure::new(from_m1.lo().clone(), from_m.hi().clone()).expect("integral pair ordered")
}

/// The exact set of primes up to `limit`, ascending.
#[derive(Clone, Debug)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }
}

/// Simple array-marking sieve of Eratosthenes.
pub fn sieve(limit: u64) -> PrimeTable {
    assert!(limit >= 2, "sieve limit must be at least 2");
    assert!(limit <= (1 << 31), "sieve limit unreasonably large");
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    PrimeTable { limit, primes }
}

/// Certified enclosure of the prime zeta function `P(s) = Σ_p p^(−s)`.
///
/// The leading sum runs over the table's primes; the tail over primes beyond
/// the table limit `L` is bracketed by `[0, L^(1−s)/(s−1)]` (primes > L are
/// a subset of the integers > L).
pub fn prime_zeta(req: &SeriesRequest, table: &PrimeTable) -> Result<Enclosure> {
    if table.limit < 5 {
        return Err(Error::domain(
            "prime zeta needs a prime table covering at least 5",
        ));
    }
    let exp = decompose_exponent(&req.s)?;
    let mut acc = DyadicAcc::new(req.precision_bits);
    for &p in &table.primes {
        add_power_recip(&mut acc, p, &exp);
    }
    let tail_hi = tail_bound(table.limit, &req.s, &exp, req.precision_bits);
    acc.add_interval(&Rational::zero(), tail_hi.hi());
    // P(s) > 2^(−s) for the same reason ζ(s)−1 is: 2 is prime.
    Ok(apply_leading_term_floor(acc.into_enclosure(), &req.s))
}

/// Refinement schedule shared by the certified pipelines: round `r` uses
/// cutoff `M0 * 2^r` and precision `B0 + 192 r`.
#[derive(Clone, Copy, Debug)]
pub struct Schedule {
    pub base_terms: u64,
    pub base_bits: u32,
}

impl Schedule {
    /// Zeta pipeline defaults: `M0 = max(16, n)`, `B0` from the exponent.
    pub fn for_zeta(n: u32) -> Schedule {
        Schedule {
            base_terms: u64::from(n.max(16)),
            base_bits: default_precision_bits(&Rational::from_int(i64::from(n))),
        }
    }

    /// Prime pipeline defaults: the cutoff is the sieve limit.
    pub fn for_primes(s: u32) -> Schedule {
        Schedule {
            base_terms: 1024,
            base_bits: default_precision_bits(&Rational::from_int(i64::from(s))),
        }
    }

    /// Overrides the base precision when one was requested explicitly.
    pub fn with_bits(mut self, bits: Option<u32>) -> Schedule {
        if let Some(b) = bits {
            self.base_bits = b.max(32);
        }
        self
    }

    pub fn terms_at(&self, round: u32) -> u64 {
        self.base_terms
            .saturating_mul(1u64 << round.min(40))
            .min(1 << 40)
    }

    pub fn bits_at(&self, round: u32) -> u32 {
        self.base_bits.saturating_add(192 * round)
    }
}

/// Enclosure of `1/(ζ(n) − 1)` at the given refinement round.
pub fn zeta_recip_enclosure(n: u32, schedule: &Schedule, round: u32) -> Result<Enclosure> {
    if n < 2 {
        return Err(Error::domain("zeta pipeline requires n >= 2"));
    }
    let req = SeriesRequest::new(Rational::from_int(i64::from(n)), schedule.terms_at(round))?
        .with_precision(schedule.bits_at(round));
    zeta_minus1(&req)?.recip()
}

/// Enclosure of `1/P(s)` at the given refinement round (the sieve limit
/// doubles with the round).
pub fn prime_recip_enclosure(s: u32, schedule: &Schedule, round: u32) -> Result<Enclosure> {
    if s < 2 {
        return Err(Error::domain("prime zeta pipeline requires s >= 2"));
    }
    let table = sieve(schedule.terms_at(round).max(8));
    let req =
        SeriesRequest::new(Rational::from_int(i64::from(s)), 2)?.with_precision(schedule.bits_at(round));
    prime_zeta(&req, &table)?.recip()
}

/// Certified `⌊1/(ζ(n) − 1)⌋` — the second term of the simple continued
/// fraction of ζ(n) (the first term is always 1 because 1 < ζ(n) < 2).
///
/// The cutoff doubles and the precision grows each refinement round until
/// the floor is certified; a persistent integer straddle is reported as
/// such (it would mean ζ(n) is suspiciously close to 1 + 1/m for some
/// integer m).
pub fn cf_second_term(n: u32, max_rounds: u32) -> Result<FloorCertificate> {
    cf_second_term_with(n, &Schedule::for_zeta(n), max_rounds)
}

/// [`cf_second_term`] with an explicit refinement schedule.
pub fn cf_second_term_with(
    n: u32,
    schedule: &Schedule,
    max_rounds: u32,
) -> Result<FloorCertificate> {
    let initial = zeta_recip_enclosure(n, schedule, 0)?;
    certified_floor(
        initial,
        |round| zeta_recip_enclosure(n, schedule, round + 1),
        max_rounds,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigratio::rat;
    use num_rational::BigRational;

    fn r(n: i64, d: i64) -> Rational {
        rat(n, d).unwrap()
    }

    /// Exact-rational oracle: S_M + integral tail pair, no dyadic rounding.
    fn exact_zeta_enclosure(s: u32, m: u64) -> (Rational, Rational) {
        let mut sum = BigRational::zero();
        for i in 2..=m {
            sum += BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(i), s as usize));
        }
        let t_lo = BigRational::new(
            BigInt::one(),
            num_traits::pow(BigInt::from(m + 1), (s - 1) as usize) * BigInt::from(s - 1),
        );
        let t_hi = BigRational::new(
            BigInt::one(),
            num_traits::pow(BigInt::from(m), (s - 1) as usize) * BigInt::from(s - 1),
        );
        let lo = &sum + &t_lo;
        let hi = &sum + &t_hi;
        (
            Rational::new(lo.numer().clone(), lo.denom().clone()).unwrap(),
            Rational::new(hi.numer().clone(), hi.denom().clone()).unwrap(),
        )
    }

    fn contains_value(e: &Enclosure, decimal: &str) -> bool {
        // decimal is a high-precision truncation of the true value; compare
        // against it with one ulp of slack on the last digit.
        let digits = decimal.replace("0.", "");
        let scale = num_traits::pow(BigInt::from(10), digits.len());
        let num: BigInt = digits.parse().unwrap();
        let lo = Rational::new(num.clone(), scale.clone()).unwrap();
        let hi = Rational::new(num + BigInt::one(), scale).unwrap();
        e.lo() <= &hi && &lo <= e.hi()
    }

    #[test]
    fn zeta_minus1_matches_reference_values() {
        // ζ(2)−1 = 0.6449340668482264364724151666…
        let req = SeriesRequest::new(r(2, 1), 100_000).unwrap();
        let e = zeta_minus1(&req).unwrap();
        assert!(contains_value(&e, "0.644934066848226436"));

        // ζ(7)−1 = 0.0083492773819228268397975498…
        let req = SeriesRequest::new(r(7, 1), 1000).unwrap();
        let e = zeta_minus1(&req).unwrap();
        assert!(contains_value(&e, "0.008349277381922826839797549"));
    }

    #[test]
    fn zeta_minus1_rational_exponent_is_certified() {
        // ζ(5/2)−1 = 0.341487257250917179756769693349…
        let req = SeriesRequest::new(r(5, 2), 200_000).unwrap();
        let e = zeta_minus1(&req).unwrap();
        assert!(contains_value(&e, "0.34148725725091"));
        assert!(e.width() < r(1, 1_000_000));
    }

    #[test]
    fn zeta_enclosure_contains_exact_oracle() {
        for &(s, m) in &[(2u32, 16u64), (3, 40), (5, 100), (11, 60)] {
            let req = SeriesRequest::new(Rational::from_int(i64::from(s)), m).unwrap();
            let e = zeta_minus1(&req).unwrap();
            // the 10M-term oracle is strictly tighter; it must sit inside
            let (olo, ohi) = exact_zeta_enclosure(s, 10 * m);
            assert!(e.lo() <= &olo && &ohi <= e.hi(), "oracle escaped at s={s} M={m}");
        }
    }

    #[test]
    fn zeta_width_is_bounded_by_tail_gap_plus_grid() {
        for &(s, m) in &[(3u32, 32u64), (4, 64), (7, 128)] {
            let req = SeriesRequest::new(Rational::from_int(i64::from(s)), m).unwrap();
            let bits = req.precision_bits();
            let e = zeta_minus1(&req).unwrap();
            let tail_gap = {
                let hi = Rational::new(
                    BigInt::one(),
                    num_traits::pow(BigInt::from(m), (s - 1) as usize) * BigInt::from(s - 1),
                )
                .unwrap();
                let lo = Rational::new(
                    BigInt::one(),
                    num_traits::pow(BigInt::from(m + 1), (s - 1) as usize) * BigInt::from(s - 1),
                )
                .unwrap();
                &hi - &lo
            };
            let grid_slack = Rational::new(BigInt::from(m + 2), BigInt::one() << bits).unwrap();
            assert!(e.width() <= &tail_gap + &grid_slack);
        }
    }

    #[test]
    fn zeta_enclosures_nest_under_refinement() {
        let mut prev: Option<Enclosure> = None;
        for round in 0..4 {
            let m = 16u64 << round;
            let req = SeriesRequest::new(r(3, 1), m).unwrap().with_precision(256);
            let e = zeta_minus1(&req).unwrap();
            if let Some(p) = &prev {
                assert!(e.subset_of(p), "round {round} escaped its predecessor");
            }
            prev = Some(e);
        }
    }

    #[test]
    fn sieve_matches_known_counts() {
        assert_eq!(sieve(10).primes(), &[2, 3, 5, 7]);
        let t = sieve(30);
        assert_eq!(t.len(), 10);
        assert_eq!(*t.primes().last().unwrap(), 29);
        assert_eq!(sieve(100).len(), 25);
        assert_eq!(sieve(1000).len(), 168);
    }

    #[test]
    fn prime_zeta_matches_reference_values() {
        // P(2) = 0.4522474200410654985065433648…
        let table = sieve(100_000);
        let req = SeriesRequest::new(r(2, 1), 2).unwrap();
        let e = prime_zeta(&req, &table).unwrap();
        assert!(contains_value(&e, "0.45224742004106"));

        // P(7) = 0.0082838328561335925351241387…
        let table = sieve(1000);
        let req = SeriesRequest::new(r(7, 1), 2).unwrap();
        let e = prime_zeta(&req, &table).unwrap();
        assert!(contains_value(&e, "0.008283832856133"));

        // P(5/2) = 0.2736807379932340003986808252… (rational exponent)
        let table = sieve(50_000);
        let req = SeriesRequest::new(r(5, 2), 2).unwrap();
        let e = prime_zeta(&req, &table).unwrap();
        assert!(contains_value(&e, "0.273680737993"));
    }

    #[test]
    fn prime_zeta_lower_endpoint_increases_with_limit() {
        let req = SeriesRequest::new(r(3, 1), 2).unwrap();
        let mut prev_lo = Rational::zero();
        for limit in [10u64, 100, 1000, 10_000] {
            let e = prime_zeta(&req, &sieve(limit)).unwrap();
            assert!(e.lo() > &prev_lo);
            prev_lo = e.lo().clone();
        }
    }

    #[test]
    fn prime_zeta_tail_width_bound() {
        let table = sieve(1000);
        let req = SeriesRequest::new(r(4, 1), 2).unwrap();
        let e = prime_zeta(&req, &table).unwrap();
        // width <= L^(1-s)/(s-1) + grid slack
        let bound = Rational::new(BigInt::one(), BigInt::from(1000u64 * 1000 * 1000 * 3)).unwrap();
        let slack = Rational::new(
            BigInt::from(table.len() + 2),
            BigInt::one() << req.precision_bits(),
        )
        .unwrap();
        assert!(e.width() <= &bound + &slack);
    }

    #[test]
    fn cf_second_term_reference_values() {
        // 1/(ζ(2)−1) = 1.5505460967…, 1/(ζ(3)−1) = 4.9491008936…,
        // 1/(ζ(4)−1) = 12.1472390590…
        for &(n, want) in &[(2u32, 1i64), (3, 4), (4, 12), (5, 27), (6, 57), (7, 119)] {
            let cert = cf_second_term(n, 64).unwrap();
            assert_eq!(cert.value(), &BigInt::from(want), "n={n}");
        }
    }

    #[test]
    fn series_request_validation() {
        assert!(SeriesRequest::new(r(1, 1), 10).is_err()); // s = 1
        assert!(SeriesRequest::new(r(1, 2), 10).is_err()); // s < 1
        assert!(SeriesRequest::new(r(3, 1), 1).is_err()); // terms < 2
        assert!(SeriesRequest::new(r(5, 2), 10).is_ok());
    }

    /// When the precision is far below the exponent the grid floors the sum
    /// to 0, but the leading term keeps the enclosure strictly positive —
    /// hence invertible — and it must still contain the true value.
    #[test]
    fn low_precision_enclosure_stays_positive_and_sound() {
        for s in [40u32, 100, 300] {
            let req = SeriesRequest::new(Rational::from_int(i64::from(s)), 64)
                .unwrap()
                .with_precision(32);
            let coarse = zeta_minus1(&req).unwrap();
            let bound = Rational::new(BigInt::one(), BigInt::one() << s).unwrap();
            assert_eq!(coarse.lo(), &bound, "s={s}: lo clamps to the i=2 term");
            assert!(coarse.recip().is_ok(), "s={s}: invertible");

            let sharp = zeta_minus1(
                &SeriesRequest::new(Rational::from_int(i64::from(s)), 64).unwrap(),
            )
            .unwrap();
            assert!(
                coarse.lo() <= sharp.lo() && sharp.hi() <= coarse.hi(),
                "s={s}: sharp enclosure nests inside the coarse one"
            );

            let table = sieve(64);
            let pcoarse = prime_zeta(&req, &table).unwrap();
            assert_eq!(pcoarse.lo(), &bound, "s={s}: prime side clamps too");
            assert!(pcoarse.recip().is_ok());
        }
    }

    /// A starved base precision merely costs refinement rounds; the
    /// certified floor comes out identical to the default schedule's.
    #[test]
    fn low_precision_recovers_through_refinement() {
        for n in [20u32, 40, 64] {
            let sched = Schedule::for_zeta(n).with_bits(Some(32));
            let starved = cf_second_term_with(n, &sched, 8).unwrap();
            let default = cf_second_term(n, 64).unwrap();
            assert_eq!(starved.value(), default.value(), "n={n}");
        }
    }
}
