//! Weight distributions, degrees of contact and Chow semistability.
//!
//! `w_r(m)` grows like `e_r · m^{d+1}/(d+1)!` and `h^0(m)` like
//! `deg · m^d/d!`. Both are eventually polynomial for monomial data, so the
//! leading coefficients are read off exact forward differences, and the
//! reading is only trusted once two consecutive differences agree.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{self, Q};
use crate::monomial::{graded_pieces, GradedBasisElement, MonomialMap, WeightVector};
use crate::par::Execution;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileSample {
    pub m: usize,
    /// `w_r(m)`
    pub weight: Q,
    /// `h^0(m)`
    pub h0: u64,
}

/// Exact samples `m ↦ (w_r(m), h^0(m))` over consecutive `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationProfile {
    dimension: usize,
    samples: Vec<ProfileSample>,
}

impl FiltrationProfile {
    pub fn new(dimension: usize, samples: Vec<ProfileSample>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::invalid("profile needs at least one sample"));
        }
        for (i, s) in samples.iter().enumerate() {
            if s.m == 0 {
                return Err(Error::invalid("profile samples start at m = 1"));
            }
            if s.weight.is_negative() {
                return Err(Error::invalid(format!("negative weight sum at m = {}", s.m)));
            }
            if s.h0 == 0 {
                return Err(Error::invalid(format!("h0 must be positive at m = {}", s.m)));
            }
            if i > 0 {
                let p = &samples[i - 1];
                if s.m != p.m + 1 {
                    return Err(Error::invalid("sample degrees must be consecutive"));
                }
                if s.weight < p.weight {
                    return Err(Error::invalid(format!("w_r decreases at m = {}", s.m)));
                }
                if dimension >= 1 && s.h0 <= p.h0 {
                    return Err(Error::invalid(format!("h0 not increasing at m = {}", s.m)));
                }
            }
        }
        Ok(FiltrationProfile {
            dimension,
            samples,
        })
    }

    /// Brute-force profile of a monomial map for `m = 1..=m_max`.
    pub fn from_map(
        map: &MonomialMap,
        weights: &WeightVector,
        m_max: usize,
        exec: Execution,
    ) -> Result<Self> {
        let samples = graded_pieces(map, weights, m_max, exec)?
            .into_iter()
            .map(|p| ProfileSample {
                m: p.m,
                weight: p.weight_sum(),
                h0: p.dimension() as u64,
            })
            .collect();
        Self::new(map.dimension(), samples)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn samples(&self) -> &[ProfileSample] {
        &self.samples
    }

    pub fn sample(&self, m: usize) -> Result<&ProfileSample> {
        let first = self.samples[0].m;
        m.checked_sub(first)
            .and_then(|i| self.samples.get(i))
            .ok_or(Error::MissingSample(m))
    }
}

/// `E(ρ_m) = w_r(m) / (m · h^0(m))`
pub fn expected_value(profile: &FiltrationProfile, m: usize) -> Result<Q> {
    let s = profile.sample(m)?;
    Ok(&s.weight / (exact::int(m) * exact::int(s.h0)))
}

/// Cumulative distribution of normalized basis weights `x = w/m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensitySummary {
    pub m: usize,
    /// `(x, P(weight/m ≤ x))` at every jump, `x` increasing.
    pub jump_points: Vec<(Q, Q)>,
}

impl DensitySummary {
    pub fn mean(&self) -> Q {
        let mut prev = Q::zero();
        let mut mean = Q::zero();
        for (x, cum) in &self.jump_points {
            mean += x * (cum - &prev);
            prev = cum.clone();
        }
        mean
    }
}

pub fn density_summary(basis: &[GradedBasisElement], m: usize) -> Result<DensitySummary> {
    if basis.is_empty() {
        return Err(Error::invalid("density of an empty basis"));
    }
    if m == 0 {
        return Err(Error::invalid("graded degree m must be at least 1"));
    }
    let mut weights: Vec<&Q> = basis.iter().map(|e| &e.min_weight).collect();
    weights.sort();
    let total = exact::int(weights.len());
    let mm = exact::int(m);
    let mut jumps: Vec<(Q, Q)> = Vec::new();
    for (i, w) in weights.iter().enumerate() {
        let last_of_run = weights.get(i + 1).is_none_or(|next| next != w);
        if last_of_run {
            jumps.push((*w / &mm, exact::int(i + 1) / &total));
        }
    }
    Ok(DensitySummary { m, jump_points: jumps })
}

/// Last `order`-th forward difference of `values`, and whether the last two
/// such differences coincide.
///
/// On a sequence that is eventually a polynomial of degree `≤ order` this
/// is `order!` times its `m^order` coefficient.
pub fn leading_coefficient(values: &[Q], order: usize) -> Result<(Q, bool)> {
    let needed = order + 2;
    if values.len() < needed {
        return Err(Error::InsufficientSamples {
            needed,
            have: values.len(),
        });
    }
    let mut diffs: Vec<Q> = values.to_vec();
    for _ in 0..order {
        diffs = diffs.windows(2).map(|p| &p[1] - &p[0]).collect();
    }
    let n = diffs.len();
    let stabilized = diffs[n - 1] == diffs[n - 2];
    Ok((diffs[n - 1].clone(), stabilized))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsymptoticInvariants {
    /// Degree of contact `e_r(X)`.
    pub e_r: Q,
    pub degree: Q,
    pub dimension: usize,
    /// `e_r / ((d + 1) · deg)`
    pub e_infinity: Q,
    pub stabilized: bool,
}

pub fn asymptotic_invariants(profile: &FiltrationProfile) -> Result<AsymptoticInvariants> {
    let d = profile.dimension;
    let have = profile.samples.len();
    if have < d + 3 {
        return Err(Error::InsufficientSamples { needed: d + 3, have });
    }
    let w: Vec<Q> = profile.samples.iter().map(|s| s.weight.clone()).collect();
    let h: Vec<Q> = profile.samples.iter().map(|s| exact::int(s.h0)).collect();
    let (e_r, w_stable) = leading_coefficient(&w, d + 1)?;
    let (degree, h_stable) = leading_coefficient(&h, d)?;
    if !degree.is_positive() {
        return Err(Error::invalid("extracted degree is not positive"));
    }
    let e_infinity = &e_r / (exact::int(d + 1) * &degree);
    Ok(AsymptoticInvariants {
        e_r,
        degree,
        dimension: d,
        e_infinity,
        stabilized: w_stable && h_stable,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Semistability {
    pub semistable: bool,
    /// `(Σ_{i=0}^{N} r_i)/(N + 1) − E_∞`
    pub margin: Q,
}

pub fn chow_semistable(inv: &AsymptoticInvariants, weights: &WeightVector) -> Result<Semistability> {
    if !inv.stabilized {
        return Err(Error::NotStabilized(
            "asymptotic invariants have not stabilized".into(),
        ));
    }
    let margin = weights.average() - &inv.e_infinity;
    Ok(Semistability {
        semistable: !margin.is_negative(),
        margin,
    })
}

/// All non-increasing integer vectors of `len` entries in `0..=bound`,
/// lexicographically increasing, excluding the zero vector and non-primitive
/// vectors (those are rescalings of earlier candidates).
pub fn candidate_weight_vectors(len: usize, bound: u64) -> Vec<Vec<u64>> {
    fn rec(prefix: &mut Vec<u64>, len: usize, cap: u64, out: &mut Vec<Vec<u64>>) {
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        for v in 0..=cap {
            prefix.push(v);
            rec(prefix, len, v, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(len), len, bound, &mut out);
    out.sort();
    out.retain(|v| {
        let g = v
            .iter()
            .fold(0u64, |g, &x| num_integer::Integer::gcd(&g, &x));
        g == 1
    });
    out
}

/// First coordinate flag (in lexicographic order of weight vectors) whose
/// Chow margin is negative with stabilized invariants.
pub fn find_destabilizing_weights(
    map: &MonomialMap,
    weight_bound: u64,
    m_max: usize,
    exec: Execution,
) -> Result<Option<(WeightVector, Q)>> {
    let d = map.dimension();
    if m_max < d + 3 {
        return Err(Error::InsufficientSamples {
            needed: d + 3,
            have: m_max,
        });
    }
    let candidates = candidate_weight_vectors(map.len(), weight_bound);
    let verdicts: Vec<Result<Option<Q>>> = exec.map(&candidates, |v| {
        let w = WeightVector::new(v.iter().map(|&x| exact::int(BigInt::from(x))).collect())?;
        let profile = FiltrationProfile::from_map(map, &w, m_max, Execution::Sequential)?;
        let inv = asymptotic_invariants(&profile)?;
        if !inv.stabilized {
            return Ok(None);
        }
        let verdict = chow_semistable(&inv, &w)?;
        Ok((!verdict.semistable).then_some(verdict.margin))
    });
    for (v, verdict) in candidates.iter().zip(verdicts) {
        if let Some(margin) = verdict? {
            let w = WeightVector::new(v.iter().map(|&x| exact::int(BigInt::from(x))).collect())?;
            return Ok(Some((w, margin)));
        }
    }
    Ok(None)
}
