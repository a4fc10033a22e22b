//! Exact arbitrary-precision rational arithmetic and the exact
//! integer/fractional decomposition of rational powers (p/q)^n.
//!
//! `Rational` is the currency of every certified computation in this crate:
//! it is always in canonical form (positive denominator, fully reduced), so
//! equality is structural and comparisons are exact. `RationalPower` captures
//! (p/q)^n together with its exact decomposition
//! `p^n = int_part * q^n + frac_num`, which is how fractional parts of
//! rational powers are computed without ever touching floating point.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An exact rational number in canonical form.
///
/// Invariants (maintained by every constructor and operation):
/// - the denominator is strictly positive;
/// - numerator and denominator are coprime;
/// - equality and ordering are therefore exact and structural.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Rational(BigRational);

/// Builds the canonical rational `num/den`.
///
/// The sign is carried on the numerator. A zero denominator is a domain
/// error.
pub fn rat(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Rational> {
    Rational::new(num.into(), den.into())
}

impl Rational {
    pub fn new(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(num, den)))
    }

    /// Canonical constructor for parts already known to be coprime with a
    /// positive denominator. Used on hot paths where the reduction is
    /// provably a no-op (e.g. `p^n mod q^n` against `q^n`).
    pub(crate) fn from_coprime(num: BigInt, den: BigInt) -> Self {
        debug_assert!(den.is_positive());
        // The gcd self-check is quadratic in operand size; run it only where
        // it is cheap. Call sites passing larger operands rely on structural
        // coprimality (e.g. gcd(p^n mod q^n, q^n) = 1 whenever gcd(p, q) = 1)
        // and assert cheaper residue-based invariants themselves.
        debug_assert!(
            num.magnitude().bits().max(den.magnitude().bits()) > 1 << 14
                || num.gcd(&den).is_one()
        );
        Rational(BigRational::new_raw(num, den))
    }

    pub fn from_int(v: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(v.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn num(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn den(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    /// Exact integer power with signed exponent (`self` must be nonzero for
    /// negative exponents).
    pub fn pow_i(&self, exp: i32) -> Rational {
        Rational(self.0.pow(exp))
    }

    /// `⌊self⌋` as a big integer.
    pub fn floor_int(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// `⌈self⌉` as a big integer.
    pub fn ceil_int(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    pub fn recip(&self) -> Result<Rational> {
        if self.is_zero() {
            return Err(Error::domain("reciprocal of zero"));
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn min(self, other: Rational) -> Rational {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Rational) -> Rational {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Approximate base-2 logarithm of `|self|` (None for zero).
    ///
    /// Derived from bit lengths plus the top bits of numerator and
    /// denominator; accurate to well under 1e-9 in absolute terms, which is
    /// enough for conservative pre-filters (never for certified decisions).
    pub fn log2_approx(&self) -> Option<f64> {
        if self.is_zero() {
            return None;
        }
        let num = self.num().magnitude();
        let den = self.den().magnitude();
        Some(log2_biguint(num) - log2_biguint(den))
    }
}

/// Approximate base-2 logarithm of a positive big integer.
pub(crate) fn log2_biguint(v: &BigUint) -> f64 {
    debug_assert!(!v.is_zero());
    let bits = v.bits();
    if bits <= 53 {
        return u64::try_from(v).map(|x| (x as f64).log2()).unwrap_or(0.0);
    }
    let top: BigUint = v >> (bits - 53);
    let mantissa = u64::try_from(&top).expect("53-bit mantissa fits u64");
    (mantissa as f64).log2() + (bits - 53) as f64
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.num())
        } else {
            write!(f, "{}/{}", self.num(), self.den())
        }
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_int(v)
    }
}

impl From<BigInt> for Rational {
    fn from(v: BigInt) -> Self {
        Rational::from_int(v)
    }
}

impl From<BigUint> for Rational {
    fn from(v: BigUint) -> Self {
        Rational::from_int(BigInt::from_biguint(Sign::Plus, v))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero rational");
        Rational(&self.0 / &rhs.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

/// The exact decomposition of (p/q)^n:
/// `p^n = int_part * q^n + frac_num` with `0 <= frac_num < q^n`, so the
/// fractional part {(p/q)^n} equals `frac_num / q^n` exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPower {
    p: u64,
    q: u64,
    n: u64,
    int_part: BigUint,
    frac_num: BigUint,
    q_pow_n: BigUint,
}

/// Decomposes (p/q)^n exactly. Requires coprime `p > q >= 1`.
///
/// The fractional numerator is obtained by square-and-multiply
/// exponentiation of `p` modulo `q^n`; the integer part is then recovered by
/// one exact division. No floating point is involved anywhere.
///
/// `n = 0` yields `int_part = 1, frac_num = 0` (x^0 = 1).
pub fn pow_decompose(p: u64, q: u64, n: u64) -> Result<RationalPower> {
    if q < 1 {
        return Err(Error::domain("pow_decompose requires q >= 1"));
    }
    if p <= q {
        return Err(Error::domain(format!(
            "pow_decompose requires p > q, got p={p}, q={q}"
        )));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::domain(format!(
            "pow_decompose requires gcd(p, q) = 1, got p={p}, q={q}"
        )));
    }
    let n_u32 = u32::try_from(n)
        .map_err(|_| Error::domain(format!("exponent {n} exceeds the supported range")))?;

    if n == 0 {
        return Ok(RationalPower {
            p,
            q,
            n,
            int_part: BigUint::one(),
            frac_num: BigUint::zero(),
            q_pow_n: BigUint::one(),
        });
    }

    let p_big = BigUint::from(p);
    if q == 1 {
        let int_part = num_traits::pow(p_big, n_u32 as usize);
        return Ok(RationalPower {
            p,
            q,
            n,
            int_part,
            frac_num: BigUint::zero(),
            q_pow_n: BigUint::one(),
        });
    }

    let q_pow_n = num_traits::pow(BigUint::from(q), n_u32 as usize);
    let frac_num = p_big.modpow(&BigUint::from(n), &q_pow_n);
    let p_pow_n = num_traits::pow(BigUint::from(p), n_u32 as usize);
    let int_part = (&p_pow_n - &frac_num) / &q_pow_n;
    debug_assert_eq!(&int_part * &q_pow_n + &frac_num, p_pow_n);

    Ok(RationalPower {
        p,
        q,
        n,
        int_part,
        frac_num,
        q_pow_n,
    })
}

impl RationalPower {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// `⌊(p/q)^n⌋`.
    pub fn int_part(&self) -> &BigUint {
        &self.int_part
    }

    /// Numerator of the fractional part over `q^n`.
    pub fn frac_num(&self) -> &BigUint {
        &self.frac_num
    }

    pub fn q_pow_n(&self) -> &BigUint {
        &self.q_pow_n
    }

    /// The exact fractional part {(p/q)^n} = frac_num / q^n.
    pub fn frac(&self) -> Rational {
        // gcd(p^n mod q^n, q^n) divides gcd(p^n, q^n) = 1, so the pair is
        // already canonical.
        Rational::from_coprime(
            BigInt::from_biguint(Sign::Plus, self.frac_num.clone()),
            BigInt::from_biguint(Sign::Plus, self.q_pow_n.clone()),
        )
    }

    /// The exact value (p/q)^n as a rational.
    pub fn value(&self) -> Rational {
        Rational::from_coprime(
            BigInt::from_biguint(
                Sign::Plus,
                &self.int_part * &self.q_pow_n + &self.frac_num,
            ),
            BigInt::from_biguint(Sign::Plus, self.q_pow_n.clone()),
        )
    }

    /// Exact test `{(p/q)^n} < bound` by cross-multiplication; no rounding
    /// anywhere. Negative bounds compare as expected (the fractional part is
    /// never negative).
    pub fn frac_lt(&self, bound: &Rational) -> bool {
        if !bound.is_positive() {
            return false;
        }
        let lhs = &self.frac_num * bound.den().magnitude();
        let rhs = bound.num().magnitude() * &self.q_pow_n;
        lhs < rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        rat(n, d).unwrap()
    }

    #[test]
    fn rat_reduces_to_canonical_form() {
        let v = r(4, 6);
        assert_eq!(v.num(), &BigInt::from(2));
        assert_eq!(v.den(), &BigInt::from(3));
    }

    #[test]
    fn rat_normalizes_signs_onto_numerator() {
        let v = r(-3, -6);
        assert_eq!(v, r(1, 2));
        let w = r(3, -6);
        assert_eq!(w, r(-1, 2));
        assert!(w.den().is_positive());
    }

    #[test]
    fn rat_embeds_integers() {
        let v = r(7, 1);
        assert!(v.is_integer());
        assert_eq!(v.num(), &BigInt::from(7));
        assert_eq!(v.den(), &BigInt::from(1));
    }

    #[test]
    fn rat_rejects_zero_denominator() {
        assert!(matches!(rat(1, 0), Err(Error::ZeroDenominator)));
    }

    #[test]
    fn pow_decompose_small_cases() {
        // (4/3)^2 = 16/9 = 1 + 7/9
        let rp = pow_decompose(4, 3, 2).unwrap();
        assert_eq!(rp.int_part(), &BigUint::from(1u32));
        assert_eq!(rp.frac(), r(7, 9));

        // (4/3)^5 = 1024/243 = 4 + 52/243
        let rp = pow_decompose(4, 3, 5).unwrap();
        assert_eq!(rp.int_part(), &BigUint::from(4u32));
        assert_eq!(rp.frac(), r(52, 243));

        // q = 1: pure integer power, zero fractional part
        let rp = pow_decompose(3, 1, 4).unwrap();
        assert_eq!(rp.int_part(), &BigUint::from(81u32));
        assert!(rp.frac().is_zero());

        // n = 0 convention
        let rp = pow_decompose(4, 3, 0).unwrap();
        assert_eq!(rp.int_part(), &BigUint::from(1u32));
        assert!(rp.frac().is_zero());
    }

    #[test]
    fn pow_decompose_rejects_bad_inputs() {
        assert!(pow_decompose(3, 4, 2).is_err()); // p <= q
        assert!(pow_decompose(4, 2, 2).is_err()); // not coprime
        assert!(pow_decompose(4, 0, 2).is_err()); // q < 1
    }

    #[test]
    fn frac_lt_uses_exact_comparison() {
        let rp2 = pow_decompose(4, 3, 2).unwrap();
        assert!(!rp2.frac_lt(&r(1, 2))); // 7/9 >= 1/2

        let rp5 = pow_decompose(4, 3, 5).unwrap();
        assert!(rp5.frac_lt(&r(1, 4))); // 52/243 < 1/4

        let rp = pow_decompose(3, 1, 4).unwrap();
        assert!(rp.frac_lt(&rat(1i64, 1_000_000_000i64).unwrap())); // 0 < 1e-9

        assert!(!rp.frac_lt(&Rational::zero()));
        assert!(!rp.frac_lt(&r(-1, 2)));
    }

    #[test]
    fn value_recombines_decomposition() {
        let rp = pow_decompose(5, 3, 7).unwrap();
        let direct = r(5, 3).pow_i(7);
        assert_eq!(rp.value(), direct);
        assert_eq!(
            Rational::from(rp.int_part().clone()) + rp.frac(),
            direct
        );
    }

    #[test]
    fn log2_approx_is_close() {
        let v = r(7, 9);
        let got = v.log2_approx().unwrap();
        let want = (7f64 / 9f64).log2();
        assert!((got - want).abs() < 1e-12);
        assert!(Rational::zero().log2_approx().is_none());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            /// Decomposition round-trip: p^n = int*q^n + frac_num, frac_num < q^n.
            #[test]
            fn decompose_roundtrip(n in 0u64..200) {
                for &(p, q) in &[(4u64, 3u64), (3, 2), (5, 3), (7, 5), (9, 2)] {
                    let rp = pow_decompose(p, q, n).unwrap();
                    let lhs = rp.int_part() * rp.q_pow_n() + rp.frac_num();
                    let rhs = num_traits::pow(BigUint::from(p), n as usize);
                    prop_assert_eq!(lhs, rhs);
                    if n > 0 {
                        prop_assert!(rp.frac_num() < rp.q_pow_n());
                    }
                }
            }

            /// Arithmetic agrees with a small-integer oracle and stays canonical.
            #[test]
            fn arithmetic_matches_i128_oracle(
                an in -9999i64..9999, ad in 1i64..9999,
                bn in -9999i64..9999, bd in 1i64..9999,
            ) {
                let a = rat(an, ad).unwrap();
                let b = rat(bn, bd).unwrap();

                let sum = &a + &b;
                // oracle in i128 (no overflow for |num|,den < 1e4)
                let (sn, sd) = (
                    an as i128 * bd as i128 + bn as i128 * ad as i128,
                    ad as i128 * bd as i128,
                );
                prop_assert_eq!(&sum * &Rational::from_int(sd), Rational::from_int(sn));
                prop_assert!(sum.den().is_positive());
                prop_assert!(sum.num().gcd(sum.den()).is_one());

                let prod = &a * &b;
                let (pn, pd) = (an as i128 * bn as i128, ad as i128 * bd as i128);
                prop_assert_eq!(&prod * &Rational::from_int(pd), Rational::from_int(pn));

                // comparison agrees with cross-multiplication
                let cmp_oracle = (an as i128 * bd as i128).cmp(&(bn as i128 * ad as i128));
                prop_assert_eq!(a.cmp(&b), cmp_oracle);
            }

            /// Associativity/commutativity on random triples.
            #[test]
            fn ring_laws(
                an in -999i64..999, ad in 1i64..999,
                bn in -999i64..999, bd in 1i64..999,
                cn in -999i64..999, cd in 1i64..999,
            ) {
                let a = rat(an, ad).unwrap();
                let b = rat(bn, bd).unwrap();
                let c = rat(cn, cd).unwrap();
                prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a + &b, &b + &a);
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            }
        }
    }
}
