//! Certified interval arithmetic over exact rational endpoints.
//!
//! An `Enclosure` is a closed interval `[lo, hi]` with exact `Rational`
//! endpoints that is guaranteed (by whoever produced it) to contain some
//! real value. Because the endpoints are exact there is no rounding-error
//! analysis anywhere: interval arithmetic here is literally exact endpoint
//! arithmetic, and any claim certified from an enclosure ("the floor is 4",
//! "the value lies strictly inside (a, b)") is a proof, not an estimate.
//!
//! The floor-with-certificate operation is the workhorse: if an interval
//! around an unknown value contains no integer boundary then the floor of
//! the value is known exactly. When an integer stubbornly remains inside
//! after all refinement rounds, that is a first-class outcome
//! ([`Error::StraddlesInteger`]) — it is exactly the "this value might be an
//! integer" signal — never a panic.

use num_bigint::BigInt;
use num_traits::One;

use crate::bigratio::Rational;
use crate::error::{Error, Result};

/// A closed interval with exact rational endpoints, certified to contain a
/// real value. Invariant: `lo <= hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    lo: Rational,
    hi: Rational,
}

impl Enclosure {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::domain(format!(
                "enclosure endpoints out of order: lo={lo} > hi={hi}"
            )));
        }
        Ok(Enclosure { lo, hi })
    }

    /// Degenerate point interval `[v, v]`.
    pub fn point(v: Rational) -> Self {
        Enclosure {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, v: &Rational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn subset_of(&self, other: &Enclosure) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// True iff the whole interval lies strictly inside the open interval
    /// `(a, b)`. This is the certification test for strict inequalities.
    pub fn strictly_inside(&self, a: &Rational, b: &Rational) -> bool {
        &self.lo > a && &self.hi < b
    }

    /// True iff the whole interval lies outside the open interval `(a, b)`.
    /// When this holds for the enclosure of a value claimed to lie in
    /// `(a, b)`, the claim is certifiably false.
    pub fn strictly_outside(&self, a: &Rational, b: &Rational) -> bool {
        &self.hi <= a || &self.lo >= b
    }

    pub fn add(&self, rhs: &Enclosure) -> Enclosure {
        Enclosure {
            lo: &self.lo + &rhs.lo,
            hi: &self.hi + &rhs.hi,
        }
    }

    pub fn sub(&self, rhs: &Enclosure) -> Enclosure {
        Enclosure {
            lo: &self.lo - &rhs.hi,
            hi: &self.hi - &rhs.lo,
        }
    }

    pub fn neg(&self) -> Enclosure {
        Enclosure {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    pub fn mul(&self, rhs: &Enclosure) -> Enclosure {
        let mut products = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        products.sort();
        let [min, _, _, max] = products;
        Enclosure { lo: min, hi: max }
    }

    /// Reciprocal of an interval that does not contain zero.
    pub fn recip(&self) -> Result<Enclosure> {
        let zero = Rational::zero();
        if self.lo <= zero && zero <= self.hi {
            return Err(Error::domain(format!(
                "reciprocal of an enclosure containing zero: [{}, {}]",
                self.lo, self.hi
            )));
        }
        Ok(Enclosure {
            lo: self.hi.recip()?,
            hi: self.lo.recip()?,
        })
    }

    /// Intersection; both inputs must contain the true value, so a disjoint
    /// intersection means one of the producers broke its contract.
    pub fn intersect(&self, other: &Enclosure) -> Result<Enclosure> {
        let lo = if self.lo >= other.lo {
            self.lo.clone()
        } else {
            other.lo.clone()
        };
        let hi = if self.hi <= other.hi {
            self.hi.clone()
        } else {
            other.hi.clone()
        };
        if lo > hi {
            return Err(Error::domain(format!(
                "refinement produced a disjoint enclosure: [{}, {}] vs [{}, {}]",
                self.lo, self.hi, other.lo, other.hi
            )));
        }
        Ok(Enclosure { lo, hi })
    }

    /// Rounds the endpoints outward onto the dyadic grid of step `2^-bits`,
    /// capping denominator growth while preserving containment. Returns
    /// `self` unchanged when the endpoints are already at least that simple.
    pub fn simplify_dyadic(&self, bits: u32) -> Enclosure {
        let threshold = u64::from(bits) + 1;
        if self.lo.den().bits() <= threshold && self.hi.den().bits() <= threshold {
            return self.clone();
        }
        let scale = Rational::from(BigInt::one() << bits);
        let lo = Rational::new((&self.lo * &scale).floor_int(), scale.num().clone())
            .expect("power-of-two denominator");
        let hi = Rational::new((&self.hi * &scale).ceil_int(), scale.num().clone())
            .expect("power-of-two denominator");
        debug_assert!(lo <= self.lo && self.hi <= hi);
        Enclosure { lo, hi }
    }
}

/// Proof that `⌊v⌋ = value` for the value contained in `witness`: the
/// witness interval lies strictly inside `(value, value + 1)`, so it
/// contains no integer at all. In particular a certificate is also a proof
/// that the enclosed value is not an integer.
#[derive(Clone, Debug)]
pub struct FloorCertificate {
    value: BigInt,
    witness: Enclosure,
}

impl FloorCertificate {
    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn witness(&self) -> &Enclosure {
        &self.witness
    }
}

/// Certifies the floor of the value contained in `initial`, calling
/// `refine(round)` for a fresh (tighter) enclosure of the same value up to
/// `max_rounds` times. Each refinement is intersected with the current
/// enclosure, so the sequence is monotonically narrowing by construction.
///
/// Certification requires the enclosure to exclude integers entirely — an
/// interval like `[1, 1 + 1e-9]` does *not* certify floor 1, because the
/// value could be exactly 1. Fails with [`Error::StraddlesInteger`] if an
/// integer survives inside the enclosure through every allowed round — the
/// caller decides whether that is fatal (the value may genuinely be an
/// integer, which no finite enclosure can refute).
pub fn certified_floor<F>(
    initial: Enclosure,
    mut refine: F,
    max_rounds: u32,
) -> Result<FloorCertificate>
where
    F: FnMut(u32) -> Result<Enclosure>,
{
    let mut current = initial;
    let mut round = 0;
    loop {
        let lo_floor = current.lo().floor_int();
        if lo_floor == current.hi().floor_int() && !current.lo().is_integer() {
            return Ok(FloorCertificate {
                value: lo_floor,
                witness: current,
            });
        }
        if round == max_rounds {
            return Err(Error::StraddlesInteger {
                rounds: max_rounds,
                enclosure: Box::new(current),
            });
        }
        let refined = refine(round)?;
        current = current.intersect(&refined)?;
        round += 1;
    }
}

/// Floor certificate plus the enclosure of the fractional part
/// `{v} = v - ⌊v⌋`, which is guaranteed to lie strictly inside `(0, 1)`
/// (certification excludes integer values, so the fractional part cannot
/// be zero).
pub fn enc_frac<F>(
    initial: Enclosure,
    refine: F,
    max_rounds: u32,
) -> Result<(FloorCertificate, Enclosure)>
where
    F: FnMut(u32) -> Result<Enclosure>,
{
    let cert = certified_floor(initial, refine, max_rounds)?;
    let value = Enclosure::point(Rational::from_int(cert.value.clone()));
    let frac = cert.witness.sub(&value);
    debug_assert!(frac.lo().is_positive() && frac.hi() < &Rational::one());
    Ok((cert, frac))
}
