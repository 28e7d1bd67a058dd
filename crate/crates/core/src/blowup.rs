//! Contact lower bound for the `rH − jE` filtration on a blow-up, and its
//! specialization to the blown-up vertex of a projective cone.
//!
//! Intersection numbers `ν_i = H^{n−i}·(−E)^i` are inputs; nothing here
//! computes cohomology.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{self, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupData {
    n: usize,
    nu: Vec<Q>,
    r: u64,
    s: u64,
}

impl BlowupData {
    pub fn new(n: usize, nu: Vec<Q>, r: u64, s: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid(format!("blow-up dimension must be ≥ 2, got {n}")));
        }
        if nu.len() != n + 1 {
            return Err(Error::invalid(format!(
                "need n + 1 = {} intersection numbers, got {}",
                n + 1,
                nu.len()
            )));
        }
        if r == 0 {
            return Err(Error::invalid("r must be positive"));
        }
        if s > r {
            return Err(Error::invalid(format!("need s ≤ r, got s = {s}, r = {r}")));
        }
        Ok(BlowupData { n, nu, r, s })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nu(&self) -> &[Q] {
        &self.nu
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn s(&self) -> u64 {
        self.s
    }
}

fn pow_int(x: u64, e: usize) -> BigInt {
    num_traits::pow(BigInt::from(x), e)
}

/// The `i`-th term `ν_i · C(n+1, i+1) · ((i+1)(r−s) r^{n−i} s^i − r^{n+1} + r^{n−i} s^{i+1})`.
pub fn contact_summand(data: &BlowupData, i: usize) -> Q {
    let n = data.n;
    let (r, s) = (data.r, data.s);
    let r_minus_s = BigInt::from(r) - BigInt::from(s);
    let bracket = BigInt::from(i + 1) * r_minus_s * pow_int(r, n - i) * pow_int(s, i)
        - pow_int(r, n + 1)
        + pow_int(r, n - i) * pow_int(s, i + 1);
    &data.nu[i] * exact::int(exact::binomial(n + 1, i + 1) * bracket)
}

/// Lower bound for the degree of contact of the `W_{r,j}` filtration.
pub fn contact_lower_bound(data: &BlowupData) -> Q {
    (0..=data.n).map(|i| contact_summand(data, i)).sum()
}

/// `(rH − sE)^n = Σ_i C(n, i) r^{n−i} s^i ν_i`
pub fn polarization_degree(data: &BlowupData) -> Q {
    let n = data.n;
    (0..=n)
        .map(|i| {
            &data.nu[i] * exact::int(exact::binomial(n, i) * pow_int(data.r, n - i) * pow_int(data.s, i))
        })
        .sum()
}

/// Blow-up of the vertex of a cone: `H^n = h`, `(−E)^n = −h`, all mixed
/// products zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeData {
    n: usize,
    h: Q,
    r: u64,
    s: u64,
    sigma_count: u64,
}

impl ConeData {
    pub fn new(n: usize, h: Q, r: u64, s: u64, sigma_count: u64) -> Result<Self> {
        if sigma_count == 0 {
            return Err(Error::invalid("need at least one place"));
        }
        // Reuse the blow-up validation for n, r, s.
        BlowupData::new(n, vec![Q::zero(); n + 1], r, s)?;
        Ok(ConeData {
            n,
            h,
            r,
            s,
            sigma_count,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> &Q {
        &self.h
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn sigma_count(&self) -> u64 {
        self.sigma_count
    }

    /// `ν = (h, 0, …, 0, −h)`
    pub fn to_blowup(&self) -> BlowupData {
        let mut nu = vec![Q::zero(); self.n + 1];
        nu[0] = self.h.clone();
        nu[self.n] = -self.h.clone();
        BlowupData::new(self.n, nu, self.r, self.s).expect("validated on construction")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeVerdict {
    pub pass: bool,
    pub margin: Q,
}

/// `(n+1)s^n(s−r) + r^{n+1} − s^{n+1} − (n+1)(r^n − s^n)/#Σ`, passing when
/// strictly positive.
pub fn cone_condition(data: &ConeData) -> ConeVerdict {
    let n = data.n;
    let (r, s) = (data.r, data.s);
    let np1 = BigInt::from(n + 1);
    let lhs = &np1 * pow_int(s, n) * (BigInt::from(s) - BigInt::from(r)) + pow_int(r, n + 1)
        - pow_int(s, n + 1);
    let rhs = exact::int(&np1 * (pow_int(r, n) - pow_int(s, n)))
        / exact::int(BigInt::from(data.sigma_count));
    let margin = exact::int(lhs) - rhs;
    ConeVerdict {
        pass: margin > Q::zero(),
        margin,
    }
}

/// `c^{n+1}` helper for homogeneity checks.
pub fn homogeneity_factor(c: u64, n: usize) -> Q {
    exact::int(pow_int(c, n + 1) * BigInt::one())
}
