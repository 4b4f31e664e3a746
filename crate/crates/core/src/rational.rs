//! Exact rational scalars and vectors.
//!
//! [`Rational`] is an arbitrary-precision fraction that is always kept in
//! lowest terms with a positive denominator. Vectors over `Q` are plain
//! `Vec<Rational>`; the helpers here cover the handful of operations the
//! geometric modules need (denominators, integrality, dot products) and the
//! `"p/q"` text form used in every JSON document.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// A vector in `Q^n`.
pub type QVec = Vec<Rational>;

/// An integer lattice point. Desk-scale enumeration never leaves `i64`.
pub type LatticePoint = Vec<i64>;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`. The result is reduced.
pub fn parse_rational(s: &str) -> Result<Rational> {
    Rational::from_str(s.trim()).map_err(|_| Error::ParseRational(s.to_string()))
}

/// Formats as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn format_qvec(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

pub fn parse_qvec(items: &[String]) -> Result<QVec> {
    items.iter().map(|s| parse_rational(s)).collect()
}

/// Parses a comma-separated list such as `"1/2,0"`.
pub fn parse_qvec_csv(s: &str) -> Result<QVec> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_rational).collect()
}

pub fn from_ints(v: &[i64]) -> QVec {
    v.iter().map(|&x| int(x)).collect()
}

pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

pub fn is_integral(v: &[Rational]) -> bool {
    v.iter().all(|q| q.is_integer())
}

/// Converts an integral rational vector to a lattice point.
pub fn to_lattice_point(v: &[Rational]) -> Option<LatticePoint> {
    v.iter()
        .map(|q| if q.is_integer() { q.numer().to_i64() } else { None })
        .collect()
}

pub fn floor_i64(q: &Rational) -> Result<i64> {
    q.floor().numer().to_i64().ok_or(Error::Overflow)
}

pub fn ceil_i64(q: &Rational) -> Result<i64> {
    q.ceil().numer().to_i64().ok_or(Error::Overflow)
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_int(a: &[BigInt], b: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += Rational::from_integer(x.clone()) * y;
        }
    }
    acc
}

pub fn sub(a: &[Rational], b: &[Rational]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[Rational], b: &[Rational]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[Rational], s: &Rational) -> QVec {
    a.iter().map(|x| x * s).collect()
}

/// Scales a rational vector to the primitive integer vector on the same ray.
/// The zero vector maps to the zero vector.
pub fn primitive_integer(v: &[Rational]) -> Vec<BigInt> {
    let l = lcm_of_denominators(v);
    let ints: Vec<BigInt> = v.iter().map(|q| (q * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

pub fn abs_max(v: &[Rational]) -> Rational {
    v.iter().map(|q| q.abs()).max().unwrap_or_else(Rational::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn formats_integers_without_denominator() {
        assert_eq!(format_rational(&rat(4, 2)), "2");
        assert_eq!(format_rational(&rat(-3, 6)), "-1/2");
        assert_eq!(format_rational(&rat(0, 5)), "0");
    }

    #[test]
    fn parse_rejects_garbage_and_zero_denominators() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
        assert_eq!(parse_rational("2/4").unwrap(), rat(1, 2));
    }

    #[test]
    fn primitive_integer_clears_denominators() {
        let v = vec![rat(2, 3), rat(-4, 3), int(0)];
        let p: Vec<i64> = primitive_integer(&v).iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(p, vec![1, -2, 0]);
    }

    proptest! {
        #[test]
        fn text_form_round_trips(n in -1000i64..1000, d in 1i64..1000) {
            let q = rat(n, d);
            let s = format_rational(&q);
            prop_assert_eq!(parse_rational(&s).unwrap(), q.clone());
            prop_assert!(q.denom() > &BigInt::zero());
            prop_assert!(q.numer().gcd(q.denom()).is_one());
        }
    }
}
