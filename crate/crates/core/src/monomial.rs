//! Monomial parametrizations, graded bases and minimal flag weights.
//!
//! A [`MonomialMap`] sends parameter space to projective space by `N + 1`
//! monomials of a common degree `e`. The degree-`m` piece of the generated
//! subalgebra has a basis of distinct monomials (products of exactly `m`
//! generators), and a basis monomial `u` carries the weight
//! `min Σ α_i r_i` over all ways of writing `u = Π l_i^{α_i}` with
//! `Σ α_i = m`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{self, Q};
use crate::par::Execution;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(Vec<u64>);

impl Monomial {
    pub fn new(exponents: Vec<u64>) -> Self {
        Monomial(exponents)
    }

    pub fn one(vars: usize) -> Self {
        Monomial(vec![0; vars])
    }

    /// The pure power `x_var^exp` in `vars` variables.
    pub fn pure_power(vars: usize, var: usize, exp: u64) -> Self {
        let mut e = vec![0; vars];
        e[var] = exp;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u64] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn pow(&self, k: u64) -> Monomial {
        Monomial(self.0.iter().map(|a| a * k).collect())
    }

    /// `self | other`
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self / divisor`, if the division is exact.
    pub fn div(&self, divisor: &Monomial) -> Option<Monomial> {
        if !divisor.divides(self) {
            return None;
        }
        Some(Monomial(self.0.iter().zip(&divisor.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// Value at an integer point, with `0^0 = 1`.
    pub fn evaluate(&self, point: &[BigInt]) -> BigInt {
        self.0
            .iter()
            .zip(point)
            .fold(BigInt::one(), |acc, (&e, x)| acc * num_traits::pow(x.clone(), e as usize))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            match e {
                1 => write!(f, "x{i}")?,
                _ => write!(f, "x{i}^{e}")?,
            }
        }
        Ok(())
    }
}

/// A projective variety given by a monomial parametrization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialMap {
    ambient_vars: usize,
    generators: Vec<Monomial>,
    degree: u64,
}

impl MonomialMap {
    pub fn new(ambient_vars: usize, generators: Vec<Monomial>) -> Result<Self> {
        if ambient_vars == 0 {
            return Err(Error::invalid("monomial map needs at least one parameter variable"));
        }
        let Some(first) = generators.first() else {
            return Err(Error::invalid("monomial map needs at least one generator"));
        };
        let degree = first.degree();
        if degree == 0 {
            return Err(Error::invalid("generators must have positive degree"));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.nvars() != ambient_vars {
                return Err(Error::invalid(format!(
                    "generator {i} has {} exponents, expected {ambient_vars}",
                    g.nvars()
                )));
            }
            if g.degree() != degree {
                return Err(Error::invalid(format!(
                    "generator {i} has degree {}, expected common degree {degree}",
                    g.degree()
                )));
            }
        }
        let distinct: BTreeSet<&Monomial> = generators.iter().collect();
        if distinct.len() != generators.len() {
            return Err(Error::invalid("generators must be distinct"));
        }
        Ok(MonomialMap {
            ambient_vars,
            generators,
            degree,
        })
    }

    pub fn from_rows(ambient_vars: usize, rows: &[Vec<u64>]) -> Result<Self> {
        Self::new(ambient_vars, rows.iter().cloned().map(Monomial::new).collect())
    }

    /// `(x, y, z) ↦ (xz, yz, x², xy, y²)`, the projection of the Veronese
    /// surface from a point of itself (a cubic scroll in `P^4`).
    pub fn steiner() -> Self {
        Self::from_rows(
            3,
            &[
                vec![1, 0, 1],
                vec![0, 1, 1],
                vec![2, 0, 0],
                vec![1, 1, 0],
                vec![0, 2, 0],
            ],
        )
        .expect("static generators are valid")
    }

    /// Identity embedding of `P^n`: generators `x_0, …, x_n`.
    pub fn projective_space(n: usize) -> Self {
        let gens = (0..=n).map(|i| Monomial::pure_power(n + 1, i, 1)).collect();
        Self::new(n + 1, gens).expect("coordinate generators are valid")
    }

    pub fn ambient_vars(&self) -> usize {
        self.ambient_vars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    /// Number of generators, `N + 1`.
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Common degree `e` of the generators.
    pub fn degree(&self) -> u64 {
        self.degree
    }

    /// Dimension of the image variety: rank of the exponent matrix minus one.
    pub fn dimension(&self) -> usize {
        let rows: Vec<Vec<Q>> = self
            .generators
            .iter()
            .map(|g| g.exponents().iter().map(|&e| exact::int(e)).collect())
            .collect();
        exact::rank(&rows) - 1
    }
}

/// Non-negative, non-increasing flag weights `r_0 ≥ … ≥ r_N ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightVector(Vec<Q>);

impl WeightVector {
    pub fn new(weights: Vec<Q>) -> Result<Self> {
        if let Some(w) = weights.iter().find(|w| w.is_negative()) {
            return Err(Error::invalid(format!("weight {w} is negative")));
        }
        if weights.windows(2).any(|p| p[0] < p[1]) {
            return Err(Error::invalid("weights must be non-increasing"));
        }
        Ok(WeightVector(weights))
    }

    pub fn from_integers(weights: &[i64]) -> Result<Self> {
        Self::new(weights.iter().map(|&w| exact::q(w)).collect())
    }

    pub fn zero(len: usize) -> Self {
        WeightVector(vec![Q::zero(); len])
    }

    /// Sorts arbitrary non-negative weights into non-increasing order.
    /// `perm[k]` is the original index of the `k`-th sorted weight.
    pub fn sorted(weights: Vec<Q>) -> Result<(Self, Vec<usize>)> {
        let mut idx: Vec<usize> = (0..weights.len()).collect();
        idx.sort_by(|&a, &b| weights[b].cmp(&weights[a]).then(a.cmp(&b)));
        let sorted = idx.iter().map(|&i| weights[i].clone()).collect();
        Ok((Self::new(sorted)?, idx))
    }

    pub fn as_slice(&self) -> &[Q] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> Q {
        exact::sum_q(&self.0)
    }

    /// `(Σ r_i) / (N + 1)`
    pub fn average(&self) -> Q {
        if self.0.is_empty() {
            return Q::zero();
        }
        self.total() / exact::int(self.0.len())
    }

    /// Multiplies every weight by a positive rational.
    pub fn scaled(&self, c: &Q) -> Result<Self> {
        if !c.is_positive() {
            return Err(Error::invalid("weight scaling must be positive"));
        }
        Ok(WeightVector(self.0.iter().map(|w| w * c).collect()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasisElement {
    pub image: Monomial,
    pub min_weight: Q,
}

/// The degree-`m` piece of the generated subalgebra with its minimal weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPiece {
    pub m: usize,
    /// Basis elements sorted by monomial.
    pub elements: Vec<GradedBasisElement>,
}

impl GradedPiece {
    pub fn dimension(&self) -> usize {
        self.elements.len()
    }

    /// `w_r(m)`
    pub fn weight_sum(&self) -> Q {
        exact::sum_q(self.elements.iter().map(|e| &e.min_weight))
    }

    /// Basis weights in increasing order, `w_1 ≤ … ≤ w_M`.
    pub fn sorted_weights(&self) -> Vec<Q> {
        let mut w: Vec<Q> = self.elements.iter().map(|e| e.min_weight.clone()).collect();
        w.sort();
        w
    }

    /// Number of basis monomials of weight strictly below `threshold`.
    pub fn filtration_dim_strict(&self, threshold: &Q) -> usize {
        self.elements.iter().filter(|e| &e.min_weight < threshold).count()
    }

    /// Number of basis monomials of weight at most `threshold`.
    pub fn filtration_dim(&self, threshold: &Q) -> usize {
        self.elements.iter().filter(|e| &e.min_weight <= threshold).count()
    }
}

fn check_m(m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::invalid("graded degree m must be at least 1"));
    }
    Ok(())
}

fn check_weights(map: &MonomialMap, w: &WeightVector) -> Result<()> {
    if w.len() != map.len() {
        return Err(Error::invalid(format!(
            "{} weights for {} generators",
            w.len(),
            map.len()
        )));
    }
    Ok(())
}

const CHUNK: usize = 256;

/// One step of the level recursion: every product `u · l_i` with the weight
/// `w(u) + r_i`, keeping the minimum per monomial.
fn next_level(
    map: &MonomialMap,
    weights: &[Q],
    prev: &[(Monomial, Q)],
    exec: Execution,
) -> Vec<(Monomial, Q)> {
    let chunks: Vec<&[(Monomial, Q)]> = prev.chunks(CHUNK).collect();
    let partial: Vec<HashMap<Monomial, Q>> = exec.map(&chunks, |chunk| {
        let mut local: HashMap<Monomial, Q> = HashMap::new();
        for (u, wu) in chunk.iter() {
            for (g, r) in map.generators.iter().zip(weights) {
                let v = u.mul(g);
                let wv = wu + r;
                match local.get_mut(&v) {
                    Some(cur) if *cur <= wv => {}
                    Some(cur) => *cur = wv,
                    None => {
                        local.insert(v, wv);
                    }
                }
            }
        }
        local
    });
    let mut merged: BTreeMap<Monomial, Q> = BTreeMap::new();
    for local in partial {
        for (v, wv) in local {
            match merged.get_mut(&v) {
                Some(cur) if *cur <= wv => {}
                Some(cur) => *cur = wv,
                None => {
                    merged.insert(v, wv);
                }
            }
        }
    }
    merged.into_iter().collect()
}

/// Graded pieces for `m = 1..=m_max`, built level by level.
pub fn graded_pieces(
    map: &MonomialMap,
    weights: &WeightVector,
    m_max: usize,
    exec: Execution,
) -> Result<Vec<GradedPiece>> {
    check_m(m_max)?;
    check_weights(map, weights)?;
    let r = weights.as_slice();
    let mut level: Vec<(Monomial, Q)> = vec![(Monomial::one(map.ambient_vars), Q::zero())];
    let mut out = Vec::with_capacity(m_max);
    for m in 1..=m_max {
        level = next_level(map, r, &level, exec);
        out.push(GradedPiece {
            m,
            elements: level
                .iter()
                .map(|(u, w)| GradedBasisElement {
                    image: u.clone(),
                    min_weight: w.clone(),
                })
                .collect(),
        });
    }
    Ok(out)
}

pub fn graded_piece(
    map: &MonomialMap,
    weights: &WeightVector,
    m: usize,
    exec: Execution,
) -> Result<GradedPiece> {
    check_m(m)?;
    Ok(graded_pieces(map, weights, m, exec)?.pop().expect("m ≥ 1 pieces"))
}

/// All degree-`m·e` monomials that are products of exactly `m` generators.
pub fn image_basis(map: &MonomialMap, m: usize, exec: Execution) -> Result<BTreeSet<Monomial>> {
    let piece = graded_piece(map, &WeightVector::zero(map.len()), m, exec)?;
    Ok(piece.elements.into_iter().map(|e| e.image).collect())
}

/// `h^0(m)` of the generated subalgebra: the size of the image basis.
pub fn hilbert_function(map: &MonomialMap, m: usize, exec: Execution) -> Result<usize> {
    Ok(image_basis(map, m, exec)?.len())
}

/// `w_r(m) = Σ_u w_r(u)` over the image basis in degree `m`.
pub fn weight_sum(
    map: &MonomialMap,
    weights: &WeightVector,
    m: usize,
    exec: Execution,
) -> Result<Q> {
    Ok(graded_piece(map, weights, m, exec)?.weight_sum())
}

/// Minimal weight of a single basis monomial, by memoized depth-first search
/// over factorizations into `m` generators.
pub fn min_weight(map: &MonomialMap, weights: &WeightVector, u: &Monomial, m: usize) -> Result<Q> {
    check_m(m)?;
    check_weights(map, weights)?;
    if u.nvars() != map.ambient_vars || u.degree() != m as u64 * map.degree {
        return Err(Error::NotInImage(u.to_string(), m));
    }
    let mut memo: HashMap<(Monomial, usize), Option<Q>> = HashMap::new();
    factor_search(map, weights.as_slice(), u, m, &mut memo)
        .ok_or_else(|| Error::NotInImage(u.to_string(), m))
}

fn factor_search(
    map: &MonomialMap,
    r: &[Q],
    residual: &Monomial,
    remaining: usize,
    memo: &mut HashMap<(Monomial, usize), Option<Q>>,
) -> Option<Q> {
    if remaining == 0 {
        return residual.is_one().then(Q::zero);
    }
    let key = (residual.clone(), remaining);
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let mut best: Option<Q> = None;
    for (g, ri) in map.generators.iter().zip(r) {
        let Some(rest) = residual.div(g) else { continue };
        if let Some(w) = factor_search(map, r, &rest, remaining - 1, memo) {
            let w = w + ri;
            if best.as_ref().is_none_or(|b| w < *b) {
                best = Some(w);
            }
        }
    }
    memo.insert(key, best.clone());
    best
}
