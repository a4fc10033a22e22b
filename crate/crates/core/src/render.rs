//! Deterministic decimal rendering of exact rationals.
//!
//! All digit extraction is integer arithmetic on the exact values, so output
//! is reproducible byte-for-byte. Endpoint rendering is *directional*: a
//! lower endpoint is rounded toward minus infinity and an upper endpoint
//! toward plus infinity, so a printed interval still contains the value it
//! certifies.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::bigratio::Rational;
use crate::enclosure::Enclosure;

/// Rounding direction for the last rendered digit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    /// Toward minus infinity (safe for lower endpoints).
    Floor,
    /// Toward plus infinity (safe for upper endpoints).
    Ceil,
}

fn pow10(exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), exp as usize)
}

/// Decimal exponent e with `10^e <= |r| < 10^(e+1)` (r nonzero).
fn decimal_exponent(r: &Rational) -> i64 {
    let log2 = r.log2_approx().expect("nonzero");
    let mut e = (log2 * std::f64::consts::LOG10_2).floor() as i64;
    // The estimate can be off by one near powers of ten; fix exactly.
    let abs = r.abs();
    while pow10_cmp_le(&abs, e + 1) {
        e += 1;
    }
    while !pow10_cmp_le(&abs, e) {
        e -= 1;
    }
    e
}

/// Exact test `10^e <= v` for positive v.
fn pow10_cmp_le(v: &Rational, e: i64) -> bool {
    if e >= 0 {
        // 10^e <= num/den  <=>  den * 10^e <= num
        v.den() * pow10(e as u32) <= *v.num()
    } else {
        // 10^e <= num/den  <=>  den <= num * 10^-e
        *v.den() <= v.num() * pow10((-e) as u32)
    }
}

/// Renders `r` in scientific notation with `sig` significant digits, rounding
/// the final digit in the requested direction. Examples: `1.550546e0`,
/// `-4.2e-3`, `9.999e12`. Zero renders as `0`.
pub fn to_scientific(r: &Rational, sig: usize, round: Round) -> String {
    assert!(sig >= 1);
    if r.is_zero() {
        return "0".to_string();
    }
    let e10 = decimal_exponent(r);

    // scaled = r * 10^(sig-1-e10); its integer part holds the digits.
    let shift = sig as i64 - 1 - e10;
    let scaled = if shift >= 0 {
        r * &Rational::from(pow10(shift as u32))
    } else {
        r * &Rational::new(BigInt::one(), pow10((-shift) as u32)).expect("nonzero")
    };
    let digits_int = match round {
        Round::Floor => scaled.floor_int(),
        Round::Ceil => scaled.ceil_int(),
    };

    let negative = digits_int.is_negative();
    let magnitude = digits_int.magnitude().to_string();
    let (mantissa, e10) = if magnitude.len() == sig {
        (magnitude, e10)
    } else if magnitude.len() == sig + 1 {
        // Rounding rolled over (e.g. 999 -> 1000): renormalize.
        (magnitude[..sig].to_string(), e10 + 1)
    } else if magnitude.len() + 1 == sig + 1 && magnitude == "0" {
        // Floor of a tiny positive scaled value can only happen if the
        // exponent search misbehaved; keep a defensive zero.
        ("0".repeat(sig), e10)
    } else {
        // Rounding toward zero crossed below 10^(sig-1) (e.g. floor of
        // 1.0000...-epsilon): pad, shifting the exponent down.
        let padded = format!("{magnitude:0>width$}", width = sig);
        (padded, e10 - 1)
    };

    let sign = if negative { "-" } else { "" };
    if sig == 1 {
        format!("{sign}{mantissa}e{e10}")
    } else {
        format!("{sign}{}.{}e{e10}", &mantissa[..1], &mantissa[1..])
    }
}

/// Renders `r` with exactly `decimals` digits after the decimal point,
/// truncated toward zero. Intended for values of modest magnitude (the
/// integer part is rendered in full).
pub fn to_fixed(r: &Rational, decimals: usize) -> String {
    let scale = Rational::from(pow10(decimals as u32));
    let scaled = (r.abs() * scale).floor_int();
    let s = scaled.to_string();
    let sign = if r.is_negative() && !scaled.is_zero() {
        "-"
    } else {
        ""
    };
    if s.len() <= decimals {
        format!("{sign}0.{s:0>decimals$}")
    } else {
        let (int_part, frac_part) = s.split_at(s.len() - decimals);
        format!("{sign}{int_part}.{frac_part}")
    }
}

/// Directionally rendered endpoints of an enclosure: the printed interval
/// still contains the certified value.
pub fn enclosure_endpoints(e: &Enclosure, sig: usize) -> (String, String) {
    (
        to_scientific(e.lo(), sig, Round::Floor),
        to_scientific(e.hi(), sig, Round::Ceil),
    )
}
