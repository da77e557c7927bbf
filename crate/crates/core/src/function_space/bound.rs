//! Two-branch lower bound on the support of a `λ_m` eigenfunction.
//!
//! When `m·q² > 4n(q−1)` the bound is the integer `2^m (q−2)^{n−m}`.
//! Otherwise it is
//! `q^n (1/(q−1))^{m/2} (m/(n−m))^{m/2} (1−m/n)^{n/2}`, which is the square
//! root of the exact rational
//! `R = q^{2n} · (m/((q−1)(n−m)))^m · ((n−m)/n)^n`.
//! `R` is kept exactly. Decimal output is a truncated integer square root,
//! so any number of digits can be produced.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Pow, ToPrimitive, Zero};
use serde::Serialize;

use super::{rational, Rational};
use crate::error::{Error, Result};

/// Fractional digits used by [`LowerBound::decimal_string`] when no
/// precision is requested.
pub const DEFAULT_DECIMAL_PLACES: u32 = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundBranch {
    /// `2^m (q−2)^{n−m}`
    Power,
    /// the square-root product formula
    Root,
}

impl fmt::Display for BoundBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundBranch::Power => "power",
            BoundBranch::Root => "root",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LowerBound {
    Integer(BigInt),
    /// `sqrt(radicand)`
    Sqrt(Rational),
}

impl LowerBound {
    pub fn branch(&self) -> BoundBranch {
        match self {
            LowerBound::Integer(_) => BoundBranch::Power,
            LowerBound::Sqrt(_) => BoundBranch::Root,
        }
    }

    /// Exact test `bound ≤ value`.
    pub fn at_most(&self, value: u64) -> bool {
        match self {
            LowerBound::Integer(b) => *b <= BigInt::from(value),
            LowerBound::Sqrt(r) => *r <= rational(value as i64) * rational(value as i64),
        }
    }

    /// Value truncated toward zero to `places` fractional digits.
    pub fn decimal(&self, places: u32) -> String {
        match self {
            LowerBound::Integer(b) => b.to_string(),
            LowerBound::Sqrt(r) => {
                let scale = BigInt::from(10u32).pow(2 * places);
                let scaled = (r.numer() * scale) / r.denom();
                let digits = scaled.sqrt().to_string();
                if places == 0 {
                    return digits;
                }
                let places = places as usize;
                let padded = format!("{digits:0>width$}", width = places + 1);
                let (int, frac) = padded.split_at(padded.len() - places);
                format!("{int}.{frac}")
            }
        }
    }

    pub fn decimal_string(&self) -> String {
        self.decimal(DEFAULT_DECIMAL_PLACES)
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            LowerBound::Integer(b) => b.to_f64().unwrap_or(f64::INFINITY),
            LowerBound::Sqrt(_) => self.decimal(20).parse().unwrap_or(f64::NAN),
        }
    }

    /// True when the value is an integer known exactly (either branch).
    pub fn exact_integer(&self) -> Option<BigInt> {
        match self {
            LowerBound::Integer(b) => Some(b.clone()),
            LowerBound::Sqrt(r) if r.is_integer() => {
                let n = r.to_integer();
                let s = n.sqrt();
                (&s * &s == n).then_some(s)
            }
            LowerBound::Sqrt(_) => None,
        }
    }
}

impl fmt::Display for LowerBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact_integer() {
            Some(b) => write!(f, "{b}"),
            None => write!(f, "{}", self.decimal(6)),
        }
    }
}

/// Lower bound on `|S(f)|` for a nonzero `λ_m` eigenfunction of H(n,q).
pub fn vorobev_lower_bound(n: usize, q: usize, m: usize) -> Result<LowerBound> {
    if n < 1 || q < 2 {
        return Err(Error::InvalidParams(format!("need n ≥ 1 and q ≥ 2, got n={n}, q={q}")));
    }
    if m > n {
        return Err(Error::EigenIndexOutOfRange { m, n });
    }
    let (nb, qb, mb) = (BigInt::from(n), BigInt::from(q), BigInt::from(m));
    if &mb * &qb * &qb > BigInt::from(4) * &nb * (&qb - 1) {
        let value = BigInt::from(2).pow(m as u32) * BigInt::from(q - 2).pow((n - m) as u32);
        return Ok(LowerBound::Integer(value));
    }
    if m == n {
        // Only reachable for q = 2.
        return Err(Error::Unsupported(format!(
            "m = n = {n} with q = {q}: the root branch is undefined and q = 2 is out of scope"
        )));
    }
    let ratio_m = Rational::new(mb.clone(), (&qb - 1) * (&nb - &mb));
    let ratio_n = Rational::new(&nb - &mb, nb.clone());
    let radicand = Rational::from_integer(qb.pow(2 * n as u32)) * ratio_m.pow(m as i32) * ratio_n.pow(n as i32);
    debug_assert!(!radicand.is_zero() || m > 0);
    Ok(LowerBound::Sqrt(radicand))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_branch_example() {
        let b = vorobev_lower_bound(4, 5, 3).unwrap();
        assert_eq!(b, LowerBound::Integer(BigInt::from(24)));
        assert_eq!(b.to_string(), "24");
    }

    #[test]
    fn root_branch_example() {
        let b = vorobev_lower_bound(2, 3, 1).unwrap();
        assert_eq!(b.branch(), BoundBranch::Root);
        assert_eq!(b, LowerBound::Sqrt(super::super::ratio(81, 8)));
        // sqrt(81/8) = 3.18198051533946385...
        assert!(b.decimal_string().starts_with("3.18198051533946385"));
        assert_eq!(b.to_string(), "3.181980");
        assert!(b.at_most(4));
        assert!(!b.at_most(3));
    }

    #[test]
    fn m_zero_gives_full_support() {
        let b = vorobev_lower_bound(3, 3, 0).unwrap();
        assert_eq!(b.branch(), BoundBranch::Root);
        assert_eq!(b.exact_integer(), Some(BigInt::from(27)));
        assert_eq!(b.to_string(), "27");
    }

    #[test]
    fn top_index_uses_power_branch_for_q_above_2() {
        for q in 3..8 {
            for n in 1..6 {
                assert_eq!(vorobev_lower_bound(n, q, n).unwrap().branch(), BoundBranch::Power);
            }
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(vorobev_lower_bound(3, 2, 3), Err(Error::Unsupported(_))));
        assert!(matches!(
            vorobev_lower_bound(2, 3, 3),
            Err(Error::EigenIndexOutOfRange { .. })
        ));
        assert!(vorobev_lower_bound(2, 1, 0).is_err());
    }

    #[test]
    fn decimal_padding() {
        // sqrt(1/100) = 0.1
        let b = LowerBound::Sqrt(super::super::ratio(1, 100));
        assert_eq!(b.decimal(3), "0.100");
        assert_eq!(b.decimal(0), "0");
    }
}
