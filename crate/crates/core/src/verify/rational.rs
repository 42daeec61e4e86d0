//! Exact rationals and reciprocal sums.
//!
//! [`Rational`] is `num_rational::BigRational`. Reciprocal sums over tens of
//! thousands of elements have denominators with millions of bits, and reducing
//! them costs a quadratic gcd. [`ReciprocalSum`] keeps the fraction unreduced
//! and compares by cross-multiplication instead.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `num / den` as an exact rational.
pub fn ratio(num: u64, den: u64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `Σ_{m=lo}^{hi} 1/m`, exact.
pub fn harmonic_range(lo: u64, hi: u64) -> Rational {
    if lo > hi {
        return Rational::zero();
    }
    let terms: Vec<u64> = (lo..=hi).collect();
    ReciprocalSum::of(&terms)
        .expect("harmonic range starts above zero")
        .to_rational()
}

/// `1/n!` for small `n`.
pub fn inverse_factorial(n: u64) -> Rational {
    let f: BigInt = (1..=n).map(BigInt::from).product();
    Rational::new(BigInt::one(), f.max(BigInt::one()))
}

/// Serializes as `{"num": "<decimal>", "den": "<decimal>"}`.
pub fn serialize_rational<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut st = s.serialize_struct("Rational", 2)?;
    st.serialize_field("num", &q.numer().to_string())?;
    st.serialize_field("den", &q.denom().to_string())?;
    st.end()
}

/// JSON-facing wrapper for a rational.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Exact(pub Rational);

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_rational(&self.0, s)
    }
}

impl From<Rational> for Exact {
    fn from(q: Rational) -> Self {
        Exact(q)
    }
}

/// An exact, unreduced sum of reciprocals of positive integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReciprocalSum {
    num: BigUint,
    den: BigUint,
}

impl ReciprocalSum {
    pub fn zero() -> Self {
        Self {
            num: BigUint::zero(),
            den: BigUint::one(),
        }
    }

    /// `Σ 1/x` over `elems`, by binary splitting.
    pub fn of(elems: &[u64]) -> Result<Self> {
        if elems.contains(&0) {
            return Err(Error::ZeroElement);
        }
        Ok(Self::split(elems))
    }

    fn split(elems: &[u64]) -> Self {
        match elems.len() {
            0 => Self::zero(),
            1 => Self {
                num: BigUint::one(),
                den: BigUint::from(elems[0]),
            },
            n if n <= 16 => {
                // small leaves: fold directly
                let mut acc = Self::zero();
                for &x in elems {
                    acc.add_term(x);
                }
                acc
            }
            n => {
                let (l, r) = elems.split_at(n / 2);
                let (a, b) = if n > 4096 {
                    rayon::join(|| Self::split(l), || Self::split(r))
                } else {
                    (Self::split(l), Self::split(r))
                };
                a.add(&b)
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            num: &self.num * &other.den + &other.num * &self.den,
            den: &self.den * &other.den,
        }
    }

    pub fn add_term(&mut self, x: u64) {
        assert!(x > 0, "reciprocal of zero");
        self.num = &self.num * x + &self.den;
        self.den *= x;
    }

    /// Removes a term previously added.
    pub fn sub_term(&mut self, x: u64) {
        assert!(x > 0, "reciprocal of zero");
        let t = &self.den;
        let shifted = &self.num * x;
        assert!(shifted >= *t, "subtracting a term that was never added");
        self.num = shifted - t;
        self.den *= x;
    }

    /// Scales the sum by `1/d`.
    pub fn divide_by(&mut self, d: u64) {
        self.den *= d;
    }

    pub fn cmp_rational(&self, q: &Rational) -> Ordering {
        if q.is_negative() {
            return Ordering::Greater;
        }
        let qn = q.numer().magnitude();
        let qd = q.denom().magnitude();
        (&self.num * qd).cmp(&(qn * &self.den))
    }

    pub fn ge(&self, q: &Rational) -> bool {
        self.cmp_rational(q) != Ordering::Less
    }

    pub fn lt(&self, q: &Rational) -> bool {
        self.cmp_rational(q) == Ordering::Less
    }

    pub fn le(&self, q: &Rational) -> bool {
        self.cmp_rational(q) != Ordering::Greater
    }

    /// Bits in the unreduced denominator.
    pub fn den_bits(&self) -> u64 {
        self.den.bits()
    }

    /// The reduced rational. Cost grows quadratically with [`Self::den_bits`].
    pub fn to_rational(&self) -> Rational {
        Rational::new(BigInt::from(self.num.clone()), BigInt::from(self.den.clone()))
    }

    /// `⌊sum · 2^bits⌋ / 2^bits`, a lower bound with a small denominator.
    pub fn dyadic_floor(&self, bits: u32) -> Rational {
        let scaled = (&self.num << bits as usize) / &self.den;
        Rational::new(BigInt::from(scaled), BigInt::one() << bits as usize)
    }

    /// `⌈sum · 2^bits⌉ / 2^bits`, an upper bound with a small denominator.
    pub fn dyadic_ceil(&self, bits: u32) -> Rational {
        let (q, r) = (&self.num << bits as usize).div_rem(&self.den);
        let q = if r.is_zero() { q } else { q + 1u32 };
        Rational::new(BigInt::from(q), BigInt::one() << bits as usize)
    }

    pub fn to_f64(&self) -> f64 {
        self.dyadic_floor(60).to_f64().unwrap_or(f64::NAN)
    }
}

/// Denominator size above which reports carry a rounded bound instead of the
/// reduced fraction.
pub const REPORT_EXACT_BITS: u64 = 8192;

/// Bits of precision for rounded report values.
pub const REPORT_ROUND_BITS: u32 = 96;

/// Reduced value when cheap, otherwise a dyadic bound rounded in the direction
/// that keeps a `>=`-style (`lower = true`) or `<=`-style comparison sound.
pub fn reportable(sum: &ReciprocalSum, lower: bool) -> (Rational, bool) {
    if sum.den_bits() <= REPORT_EXACT_BITS {
        (sum.to_rational(), false)
    } else if lower {
        (sum.dyadic_floor(REPORT_ROUND_BITS), true)
    } else {
        (sum.dyadic_ceil(REPORT_ROUND_BITS), true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sums() {
        let s = ReciprocalSum::of(&[2, 4, 8]).unwrap();
        assert_eq!(s.to_rational(), ratio(7, 8));
        assert_eq!(harmonic_range(2, 3), ratio(5, 6));
        assert_eq!(harmonic_range(5, 4), Rational::zero());
    }

    #[test]
    fn zero_is_rejected() {
        assert_eq!(ReciprocalSum::of(&[3, 0]), Err(Error::ZeroElement));
    }

    #[test]
    fn split_matches_sequential_fold() {
        let elems: Vec<u64> = (1..=5000).map(|i| 3 * i + 1).collect();
        let mut seq = Rational::zero();
        for &x in &elems {
            seq += ratio(1, x);
        }
        let s = ReciprocalSum::of(&elems).unwrap();
        assert_eq!(s.to_rational(), seq);
        assert_eq!(s.cmp_rational(&seq), Ordering::Equal);
    }

    #[test]
    fn add_and_sub_terms() {
        let mut s = ReciprocalSum::of(&[3, 5]).unwrap();
        s.add_term(7);
        assert_eq!(s.to_rational(), ratio(1, 3) + ratio(1, 5) + ratio(1, 7));
        s.sub_term(3);
        assert_eq!(s.to_rational(), ratio(1, 5) + ratio(1, 7));
        s.divide_by(4);
        assert_eq!(s.to_rational(), (ratio(1, 5) + ratio(1, 7)) / int(4));
    }

    #[test]
    fn dyadic_bounds_bracket() {
        let s = ReciprocalSum::of(&[3, 7, 11]).unwrap();
        let exact = s.to_rational();
        assert!(s.dyadic_floor(40) <= exact);
        assert!(s.dyadic_ceil(40) >= exact);
        assert!(s.dyadic_ceil(40) - s.dyadic_floor(40) <= ratio(1, 1 << 40));
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_string(&Exact(ratio(6, 4))).unwrap();
        assert_eq!(v, r#"{"num":"3","den":"2"}"#);
        assert_eq!(inverse_factorial(4), ratio(1, 24));
        assert_eq!(inverse_factorial(0), int(1));
    }
}
