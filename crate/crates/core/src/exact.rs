//! Exact rational helpers shared by every module.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number used for all weights, margins and invariants.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: impl Into<BigInt>) -> Q {
    Q::from_integer(n.into())
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`. Whitespace around the parts is ignored.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = |m: &str| Error::parse(s, m);
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad("numerator is not an integer"))?;
            let d: BigInt = d.trim().parse().map_err(|_| bad("denominator is not an integer"))?;
            if d.is_zero() {
                return Err(bad("zero denominator"));
            }
            Ok(Q::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad("not an integer or p/q rational"))?;
            Ok(Q::from_integer(n))
        }
    }
}

/// Canonical text form: `"p/q"` in lowest terms, or `"p"` for integers.
pub fn format_q(x: &Q) -> String {
    x.to_string()
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn pow_q(x: &Q, e: u32) -> Q {
    num_traits::pow(x.clone(), e as usize)
}

pub fn sum_q<'a>(it: impl IntoIterator<Item = &'a Q>) -> Q {
    it.into_iter().fold(Q::zero(), |acc, x| acc + x)
}

/// Natural log of a positive big unsigned integer, accurate to a few ulps.
fn ln_biguint(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 64 {
        return n.to_u64().map(|v| (v as f64).ln()).unwrap_or(f64::NAN);
    }
    let shift = bits - 64;
    let top: u64 = (n >> shift).to_u64().unwrap_or(u64::MAX);
    (top as f64).ln() + (shift as f64) * std::f64::consts::LN_2
}

/// Natural log of a positive rational, as an `f64` estimate.
pub fn ln_q(x: &Q) -> f64 {
    ln_biguint(x.numer().magnitude()) - ln_biguint(x.denom().magnitude())
}

/// Bit-size above which a product of powers is not materialized when the
/// floating-point filter is already conclusive.
const EXACT_POWER_BIT_BUDGET: f64 = 4.0e6;

/// Exact sign of `Π base_i^{exp_i} − 1` for positive rational bases and
/// integer exponents.
///
/// A floating-point estimate of `Σ exp_i · ln base_i` with a generous error
/// bound settles the clearly separated cases; anything near the boundary is
/// decided by computing the product exactly.
pub fn cmp_power_product_with_one(factors: &[(Q, BigInt)]) -> Ordering {
    let mut terms: Vec<(Q, BigInt)> = Vec::new();
    for (b, e) in factors {
        debug_assert!(b.is_positive());
        if b.is_one() || e.is_zero() {
            continue;
        }
        terms.push((b.clone(), e.clone()));
    }
    if terms.is_empty() {
        return Ordering::Equal;
    }
    // Collapse an exponent gcd so near-equal exact fallbacks stay small.
    let g = terms.iter().fold(BigInt::zero(), |g, (_, e)| g.gcd(e));
    if !g.is_one() {
        for t in terms.iter_mut() {
            t.1 = &t.1 / &g;
        }
    }

    let mut estimate = 0.0f64;
    let mut err = 0.0f64;
    let mut bits = 0.0f64;
    for (b, e) in &terms {
        let ef = e.to_f64().unwrap_or(f64::INFINITY);
        let l = ln_q(b);
        estimate += ef * l;
        err += ef.abs() * (l.abs() * 1e-12 + 1e-12);
        let size = (b.numer().bits() + b.denom().bits()) as f64;
        bits += ef.abs() * size;
    }
    if estimate.is_finite() && err.is_finite() && estimate.abs() > err {
        return if estimate > 0.0 {
            Ordering::Greater
        } else {
            Ordering::Less
        };
    }
    if bits > EXACT_POWER_BIT_BUDGET && estimate.is_finite() && estimate.abs() > 4.0 * err {
        return if estimate > 0.0 {
            Ordering::Greater
        } else {
            Ordering::Less
        };
    }

    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (b, e) in &terms {
        let (p, r) = if e.sign() == Sign::Minus {
            (b.denom().clone(), b.numer().clone())
        } else {
            (b.numer().clone(), b.denom().clone())
        };
        let k = e
            .magnitude()
            .to_usize()
            .expect("exponent too large for exact comparison");
        num *= num_traits::pow(p, k);
        den *= num_traits::pow(r, k);
    }
    num.cmp(&den)
}

/// Greatest common divisor of a slice of integers (0 for an all-zero slice).
pub fn gcd_all<'a>(it: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    it.into_iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Rank of a rational matrix given as rows.
pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &pivot;
                let pivot_row = m[r][c..ncols].to_vec();
                for (x, y) in m[i][c..ncols].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Serde adapter writing a [`Q`] as its `"p/q"` string.
pub mod serde_q {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::Q;

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format_q(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let raw = super::RawRational::deserialize(d)?;
        raw.to_q().map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<Q>`.
pub mod serde_q_vec {
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    use super::Q;

    pub fn serialize<S: Serializer>(xs: &[Q], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&super::format_q(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        let raw = Vec::<super::RawRational>::deserialize(d)?;
        raw.iter()
            .map(|r| r.to_q().map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Serde adapter for `Option<Q>`.
pub mod serde_q_opt {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::Q;

    pub fn serialize<S: Serializer>(x: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(x) => s.serialize_some(&super::format_q(x)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Q>, D::Error> {
        let raw = Option::<super::RawRational>::deserialize(d)?;
        raw.map(|r| r.to_q().map_err(serde::de::Error::custom))
            .transpose()
    }
}

/// A rational as it may appear in a config file: `"p/q"` or a bare integer.
#[derive(Clone, Debug, serde::Deserialize)]
#[serde(untagged)]
pub enum RawRational {
    Int(i64),
    Text(String),
}

impl RawRational {
    pub fn to_q(&self) -> Result<Q> {
        match self {
            RawRational::Int(n) => Ok(q(*n)),
            RawRational::Text(s) => parse_q(s),
        }
    }
}
