//! Certified arithmetic for floor identities of the Riemann zeta function
//! and exact scanning of fractional parts of rational powers.
//!
//! The library verifies, with exact rational interval arithmetic, the family
//! of identities and inequalities around
//!
//! ```text
//! ⌊1/(ζ(n)−1)⌋ = 2^n − ⌊(4/3)^n⌋ − k,    k ∈ {1, 2}
//! ```
//!
//! (the second continued-fraction term of ζ(n), OEIS A013697), the sandwich
//! bounds that control `k`, the analogous bounds for the prime zeta function
//! `P(s)`, and the gap `1/P(s) − 1/(ζ(s)−1)`. It also provides a
//! high-throughput exact scanner over `{(p/q)^n}` used to verify that
//! `k = 1` occurs only at `n ∈ {4, 5, 13, 14, 17}` at desk scale.
//!
//! Everything said with certainty here is backed by an [`enclosure::Enclosure`]:
//! an interval with exact rational endpoints guaranteed to contain the real
//! value in question. Floors are only reported with a certificate that no
//! integer boundary lies inside the enclosure; strict inequalities are only
//! reported `TRUE` when the whole enclosure sits strictly inside the claimed
//! open interval. When bounded precision cannot separate a near-tie the
//! result is `INCONCLUSIVE` — never a guess.

pub mod bigratio;
pub mod checkpoint;
pub mod enclosure;
pub mod error;
pub mod parallel;
pub mod render;
pub mod scanner;
pub mod series;
pub mod theorems;

pub use bigratio::{pow_decompose, rat, Rational, RationalPower};
pub use enclosure::{certified_floor, enc_frac, Enclosure, FloorCertificate};
pub use error::{Error, Result};
pub use scanner::{
    scan, RecordKind, ScanConfig, ScanOutcome, ScanRecord, ScanSummary, ThresholdMode,
};
pub use series::{
    cf_second_term, prime_zeta, sieve, zeta_minus1, PrimeTable, Schedule, SeriesRequest,
};
pub use theorems::{CheckOptions, KRecord, MRecord, Verdict, VerdictRecord};
