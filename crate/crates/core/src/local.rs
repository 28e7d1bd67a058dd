//! Colengths and Hilbert-Samuel multiplicities of monomial ideals in a
//! power-series ring, and the graded ideal `⊕ I_i t^i` of an ideal chain.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{self, Q};
use crate::monomial::{Monomial, WeightVector};
use crate::par::Execution;

/// Power cap for multiplicity extraction.
pub const MAX_POWER: usize = 12;

/// A monomial ideal with a minimal, sorted generating set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialIdeal {
    vars: usize,
    generators: Vec<Monomial>,
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|g| (g.degree(), g.clone()));
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept.sort();
    kept
}

impl MonomialIdeal {
    pub fn new(vars: usize, generators: Vec<Monomial>) -> Result<Self> {
        if vars == 0 {
            return Err(Error::invalid("ideal needs at least one variable"));
        }
        if let Some(g) = generators.iter().find(|g| g.nvars() != vars) {
            return Err(Error::invalid(format!(
                "generator {g} has {} exponents, expected {vars}",
                g.nvars()
            )));
        }
        Ok(MonomialIdeal {
            vars,
            generators: minimalize(generators),
        })
    }

    pub fn from_rows(vars: usize, rows: &[Vec<u64>]) -> Result<Self> {
        Self::new(vars, rows.iter().cloned().map(Monomial::new).collect())
    }

    pub fn unit(vars: usize) -> Self {
        MonomialIdeal {
            vars,
            generators: vec![Monomial::one(vars)],
        }
    }

    /// The maximal ideal `(x_0, …, x_{r-1})`.
    pub fn maximal(vars: usize) -> Self {
        let gens = (0..vars).map(|i| Monomial::pure_power(vars, i, 1)).collect();
        MonomialIdeal::new(vars, gens).expect("coordinate generators")
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(Monomial::is_one)
    }

    pub fn contains(&self, u: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(u))
    }

    /// `self ⊆ other`
    pub fn is_subideal_of(&self, other: &MonomialIdeal) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }

    /// Least `b_i` with `x_i^{b_i} ∈ I`, for every variable, if all exist.
    pub fn pure_power_bounds(&self) -> Option<Vec<u64>> {
        (0..self.vars)
            .map(|i| {
                self.generators
                    .iter()
                    .filter(|g| g.exponents().iter().enumerate().all(|(j, &e)| j == i || e == 0))
                    .map(|g| g.exponents()[i])
                    .min()
            })
            .collect()
    }

    pub fn has_finite_colength(&self) -> bool {
        self.pure_power_bounds().is_some()
    }

    pub fn mul(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let gens = self
            .generators
            .iter()
            .flat_map(|a| other.generators.iter().map(move |b| a.mul(b)))
            .collect();
        MonomialIdeal {
            vars: self.vars,
            generators: minimalize(gens),
        }
    }

    pub fn pow(&self, n: usize) -> MonomialIdeal {
        (1..n).fold(self.clone(), |acc, _| acc.mul(self))
    }

    fn require_finite(&self) -> Result<Vec<u64>> {
        self.pure_power_bounds()
            .ok_or_else(|| Error::InfiniteColength(self.to_string()))
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.generators.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `dim R/I`: the number of monomials outside `I`.
pub fn colength(ideal: &MonomialIdeal) -> Result<u64> {
    colength_with(ideal, Execution::Sequential)
}

/// [`colength`], splitting the staircase count over slices of the first
/// variable.
pub fn colength_with(ideal: &MonomialIdeal, exec: Execution) -> Result<u64> {
    let bounds = ideal.require_finite()?;
    if ideal.is_unit() {
        return Ok(0);
    }
    let counts = exec.map_range(bounds[0] as usize, |a| {
        let mut point = vec![0u64; ideal.vars];
        point[0] = a as u64;
        count_slice(ideal, &bounds, &mut point, 1)
    });
    Ok(counts.into_iter().sum())
}

fn count_slice(ideal: &MonomialIdeal, bounds: &[u64], point: &mut Vec<u64>, var: usize) -> u64 {
    if var == point.len() {
        let u = Monomial::new(point.clone());
        return u64::from(!ideal.contains(&u));
    }
    let mut total = 0;
    for e in 0..bounds[var] {
        point[var] = e;
        let c = count_slice(ideal, bounds, point, var + 1);
        if c == 0 {
            // Monomials further along this axis are multiples of the current
            // one, so the rest of the slice lies in the ideal too.
            break;
        }
        total += c;
    }
    point[var] = 0;
    total
}

/// `colength(I^n)` for `n = 1..=n_max`.
pub fn power_colengths(ideal: &MonomialIdeal, n_max: usize, exec: Execution) -> Result<Vec<u64>> {
    ideal.require_finite()?;
    let mut out = Vec::with_capacity(n_max);
    let mut power = ideal.clone();
    for n in 1..=n_max {
        if n > 1 {
            power = power.mul(ideal);
        }
        out.push(colength_with(&power, exec)?);
    }
    Ok(out)
}

/// Hilbert-Samuel multiplicity `e(I)`: the `r`-th forward difference of
/// `n ↦ colength(I^n)`, accepted once two consecutive differences agree.
pub fn multiplicity(ideal: &MonomialIdeal) -> Result<u64> {
    multiplicity_with(ideal, Execution::Sequential)
}

pub fn multiplicity_with(ideal: &MonomialIdeal, exec: Execution) -> Result<u64> {
    ideal.require_finite()?;
    if ideal.is_unit() {
        return Err(Error::invalid("the unit ideal has no multiplicity"));
    }
    let r = ideal.vars;
    let mut cols: Vec<i128> = Vec::new();
    let mut power = ideal.clone();
    for n in 1..=MAX_POWER {
        if n > 1 {
            power = power.mul(ideal);
        }
        cols.push(colength_with(&power, exec)? as i128);
        if cols.len() < r + 2 {
            continue;
        }
        let mut diffs = cols.clone();
        for _ in 0..r {
            diffs = diffs.windows(2).map(|p| p[1] - p[0]).collect();
        }
        let k = diffs.len();
        if diffs[k - 1] == diffs[k - 2] {
            return u64::try_from(diffs[k - 1])
                .map_err(|_| Error::NotStabilized(format!("negative difference for {ideal}")));
        }
    }
    Err(Error::NotStabilized(format!(
        "colength differences of {ideal} not stable by n = {MAX_POWER}"
    )))
}

/// `e(I) / (r! · col(I))`
pub fn flat_ratio(ideal: &MonomialIdeal) -> Result<Q> {
    let e = multiplicity(ideal)?;
    let col = colength(ideal)?;
    Ok(exact::int(e) / (exact::int(exact::factorial(ideal.vars)) * exact::int(col)))
}

/// Every distinct finite-colength monomial ideal in `vars` variables that is
/// generated by monomials of degree `1..=max_degree`.
pub fn finite_colength_ideals(vars: usize, max_degree: u64) -> Result<Vec<MonomialIdeal>> {
    let mut pool: Vec<Monomial> = Vec::new();
    for d in 1..=max_degree {
        pool.extend(monomials_of_degree(vars, d));
    }
    if pool.len() > 20 {
        return Err(Error::invalid(format!(
            "{} candidate generators is too many for exhaustive enumeration",
            pool.len()
        )));
    }
    let mut seen: BTreeSet<MonomialIdeal> = BTreeSet::new();
    for mask in 1u32..(1u32 << pool.len()) {
        let gens: Vec<Monomial> = pool
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, g)| g.clone())
            .collect();
        let ideal = MonomialIdeal::new(vars, gens)?;
        if ideal.has_finite_colength() {
            seen.insert(ideal);
        }
    }
    Ok(seen.into_iter().collect())
}

pub fn monomials_of_degree(vars: usize, degree: u64) -> Vec<Monomial> {
    fn rec(prefix: &mut Vec<u64>, vars: usize, left: u64, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == vars {
            prefix.push(left);
            out.push(Monomial::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            rec(prefix, vars, left - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if vars > 0 {
        rec(&mut Vec::new(), vars, degree, &mut out);
    }
    out
}

/// Lower bound for the flat multiplicity `e_m` of a regular local ring of
/// dimension `r`: the best `e(I)/(n!·col(I))` over monomial ideals in
/// `n = r + m + 1` variables generated in degree `≤ max_degree`.
///
/// This is a search over a finite family, not the supremum.
pub fn flat_multiplicity_lower_bound(
    r: usize,
    m: usize,
    max_degree: u64,
    exec: Execution,
) -> Result<(Q, MonomialIdeal)> {
    let ideals = finite_colength_ideals(r + m + 1, max_degree)?;
    let ratios: Vec<Result<Q>> = exec.map(&ideals, flat_ratio);
    let mut best: Option<(Q, MonomialIdeal)> = None;
    for (ideal, ratio) in ideals.into_iter().zip(ratios) {
        let ratio = ratio?;
        if best.as_ref().is_none_or(|(b, _)| ratio > *b) {
            best = Some((ratio, ideal));
        }
    }
    best.ok_or_else(|| Error::invalid("no finite-colength ideal in the search family"))
}

/// `I_0 ⊆ I_1 ⊆ … ⊆ I_N = R`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealChain {
    ideals: Vec<MonomialIdeal>,
}

impl IdealChain {
    pub fn new(ideals: Vec<MonomialIdeal>) -> Result<Self> {
        let Some(last) = ideals.last() else {
            return Err(Error::invalid("ideal chain is empty"));
        };
        if !last.is_unit() {
            return Err(Error::invalid("last ideal of a chain must be the unit ideal"));
        }
        let vars = last.vars();
        for (i, pair) in ideals.windows(2).enumerate() {
            if pair[0].vars() != vars {
                return Err(Error::invalid(format!("ideal {i} has the wrong variable count")));
            }
            if !pair[0].is_subideal_of(&pair[1]) {
                return Err(Error::invalid(format!(
                    "chain is not increasing: I_{i} = {} ⊄ I_{} = {}",
                    pair[0],
                    i + 1,
                    pair[1]
                )));
            }
        }
        Ok(IdealChain { ideals })
    }

    pub fn ideals(&self) -> &[MonomialIdeal] {
        &self.ideals
    }

    pub fn vars(&self) -> usize {
        self.ideals[0].vars()
    }

    /// Index `N` of the unit ideal.
    pub fn top(&self) -> usize {
        self.ideals.len() - 1
    }

    /// Least `j` with `u ∈ I_j`.
    pub fn least_index(&self, u: &Monomial) -> usize {
        self.ideals
            .iter()
            .position(|i| i.contains(u))
            .expect("the last ideal is the unit ideal")
    }

    /// Monomials outside `I_0`, i.e. a monomial basis of `R/I_0`.
    pub fn standard_monomials(&self) -> Result<Vec<Monomial>> {
        let base = &self.ideals[0];
        let bounds = base.require_finite()?;
        let mut out = Vec::new();
        let mut point = vec![0u64; base.vars()];
        collect_standard(base, &bounds, &mut point, 0, &mut out);
        Ok(out)
    }
}

fn collect_standard(
    ideal: &MonomialIdeal,
    bounds: &[u64],
    point: &mut Vec<u64>,
    var: usize,
    out: &mut Vec<Monomial>,
) {
    if var == point.len() {
        let u = Monomial::new(point.clone());
        if !ideal.contains(&u) {
            out.push(u);
        }
        return;
    }
    for e in 0..bounds[var] {
        point[var] = e;
        collect_standard(ideal, bounds, point, var + 1, out);
    }
    point[var] = 0;
}

/// The graded ideal `⊕_{i ≥ 0} I_i t^i` in `r + 1` variables, `t` last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReesIdeal {
    chain: IdealChain,
}

impl ReesIdeal {
    pub fn new(chain: IdealChain) -> Self {
        ReesIdeal { chain }
    }

    pub fn chain(&self) -> &IdealChain {
        &self.chain
    }

    /// Graded piece at `t^i`.
    pub fn piece(&self, i: usize) -> &MonomialIdeal {
        &self.chain.ideals[i.min(self.chain.top())]
    }

    /// Generators `t^i · g` for `g` a generator of `I_i`, `0 ≤ i ≤ N`.
    pub fn as_monomial_ideal(&self) -> MonomialIdeal {
        let r = self.chain.vars();
        let mut gens = Vec::new();
        for (i, ideal) in self.chain.ideals.iter().enumerate() {
            for g in ideal.generators() {
                let mut e = g.exponents().to_vec();
                e.push(i as u64);
                gens.push(Monomial::new(e));
            }
        }
        MonomialIdeal::new(r + 1, gens).expect("consistent variable count")
    }
}

/// `Σ_{i<N} colength(I_i)`
pub fn rees_colength(rees: &ReesIdeal) -> Result<u64> {
    let chain = rees.chain();
    chain.ideals[..chain.top()]
        .iter()
        .map(colength)
        .sum()
}

pub fn rees_multiplicity(rees: &ReesIdeal) -> Result<u64> {
    rees_multiplicity_with(rees, Execution::Sequential)
}

pub fn rees_multiplicity_with(rees: &ReesIdeal, exec: Execution) -> Result<u64> {
    if rees.chain().top() == 0 {
        return Err(Error::invalid(
            "chain starts at the unit ideal; the graded ideal is the whole ring",
        ));
    }
    for ideal in rees.chain().ideals() {
        ideal.require_finite()?;
    }
    multiplicity_with(&rees.as_monomial_ideal(), exec)
}

/// Weights `r_i = min{ j : element i ∈ F^j }` sorted non-increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedWeights {
    pub weights: WeightVector,
    /// `permutation[k]` is the element index carrying the `k`-th weight.
    pub permutation: Vec<usize>,
}

/// Builds the weight vector from `(element index, least chain index)` pairs.
pub fn induced_weights(levels: &[(usize, usize)]) -> Result<InducedWeights> {
    let n = levels.len();
    let mut raw: Vec<Option<Q>> = vec![None; n];
    for &(i, j) in levels {
        let slot = raw
            .get_mut(i)
            .ok_or_else(|| Error::invalid(format!("element index {i} out of range")))?;
        if slot.is_some() {
            return Err(Error::invalid(format!("element index {i} assigned twice")));
        }
        *slot = Some(exact::int(BigInt::from(j)));
    }
    let raw: Vec<Q> = raw.into_iter().map(|w| w.unwrap_or_else(Q::zero)).collect();
    let (weights, permutation) = WeightVector::sorted(raw)?;
    Ok(InducedWeights {
        weights,
        permutation,
    })
}

/// Induced weights of explicit monomial basis elements against a chain.
pub fn induced_weights_for(chain: &IdealChain, elements: &[Monomial]) -> Result<InducedWeights> {
    let levels: Vec<(usize, usize)> = elements
        .iter()
        .enumerate()
        .map(|(i, u)| (i, chain.least_index(u)))
        .collect();
    induced_weights(&levels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, q};

    fn ideal(vars: usize, rows: &[&[u64]]) -> MonomialIdeal {
        MonomialIdeal::from_rows(vars, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
            .unwrap()
    }

    fn m_sq() -> MonomialIdeal {
        MonomialIdeal::maximal(2).pow(2)
    }

    #[test]
    fn colengths() {
        assert_eq!(colength(&MonomialIdeal::maximal(2)).unwrap(), 1);
        assert_eq!(colength(&ideal(2, &[&[2, 0], &[0, 3]])).unwrap(), 6);
        assert_eq!(colength(&m_sq()).unwrap(), 3);
        assert_eq!(colength(&MonomialIdeal::unit(2)).unwrap(), 0);
        assert!(matches!(
            colength(&ideal(2, &[&[1, 0]])),
            Err(Error::InfiniteColength(_))
        ));
    }

    #[test]
    fn multiplicities() {
        assert_eq!(multiplicity(&MonomialIdeal::maximal(2)).unwrap(), 1);
        assert_eq!(multiplicity(&m_sq()).unwrap(), 4);
        assert_eq!(multiplicity(&MonomialIdeal::maximal(3).pow(2)).unwrap(), 8);
        assert!(multiplicity(&MonomialIdeal::unit(2)).is_err());
        assert!(matches!(
            multiplicity(&ideal(2, &[&[1, 1]])),
            Err(Error::InfiniteColength(_))
        ));
    }

    #[test]
    fn flat_ratios() {
        assert_eq!(flat_ratio(&MonomialIdeal::maximal(2)).unwrap(), frac(1, 2));
        assert_eq!(flat_ratio(&ideal(2, &[&[2, 0], &[0, 3]])).unwrap(), frac(1, 2));
        assert_eq!(flat_ratio(&m_sq()).unwrap(), frac(2, 3));
    }

    #[test]
    fn minimal_generators() {
        let i = ideal(2, &[&[2, 0], &[3, 0], &[1, 1], &[2, 1]]);
        assert_eq!(i.generators().len(), 2);
        assert_eq!(i.to_string(), "(x0*x1, x0^2)");
    }

    #[test]
    fn chains_and_rees() {
        let chain = IdealChain::new(vec![m_sq(), MonomialIdeal::maximal(2), MonomialIdeal::unit(2)])
            .unwrap();
        let rees = ReesIdeal::new(chain);
        assert_eq!(rees_colength(&rees).unwrap(), 4);
        // (x, y)^2 + t (x, y) + t^2 = (x, y, t)^2
        assert_eq!(rees.as_monomial_ideal(), MonomialIdeal::maximal(3).pow(2));
        assert_eq!(rees_multiplicity(&rees).unwrap(), 8);
        assert_eq!(rees.piece(7), &MonomialIdeal::unit(2));

        let short = ReesIdeal::new(
            IdealChain::new(vec![MonomialIdeal::maximal(2), MonomialIdeal::unit(2)]).unwrap(),
        );
        assert_eq!(rees_colength(&short).unwrap(), 1);
        assert_eq!(rees_multiplicity(&short).unwrap(), 1);

        let trivial = ReesIdeal::new(IdealChain::new(vec![MonomialIdeal::unit(2)]).unwrap());
        assert_eq!(rees_colength(&trivial).unwrap(), 0);
        assert!(rees_multiplicity(&trivial).is_err());
    }

    #[test]
    fn chain_validation() {
        assert!(IdealChain::new(vec![]).is_err());
        assert!(IdealChain::new(vec![m_sq()]).is_err());
        assert!(IdealChain::new(vec![MonomialIdeal::maximal(2), m_sq(), MonomialIdeal::unit(2)])
            .is_err());
    }

    #[test]
    fn induced_weight_levels() {
        let w = induced_weights(&[(0, 0)]).unwrap();
        assert_eq!(w.weights.as_slice(), &[q(0)]);
        let w = induced_weights(&[(0, 0), (1, 2), (2, 1)]).unwrap();
        assert_eq!(w.weights.as_slice(), &[q(2), q(1), q(0)]);
        assert_eq!(w.permutation, vec![1, 2, 0]);
        let w = induced_weights(&[(0, 1), (1, 1), (2, 0), (3, 0), (4, 0)]).unwrap();
        assert_eq!(w.weights, WeightVector::from_integers(&[1, 1, 0, 0, 0]).unwrap());
        assert!(induced_weights(&[(0, 0), (0, 1)]).is_err());
        assert!(induced_weights(&[(3, 0)]).is_err());
    }

    #[test]
    fn rees_colength_is_weight_total_on_standard_basis() {
        let chain = IdealChain::new(vec![
            ideal(2, &[&[3, 0], &[1, 1], &[0, 2]]),
            MonomialIdeal::maximal(2),
            MonomialIdeal::unit(2),
        ])
        .unwrap();
        let basis = chain.standard_monomials().unwrap();
        let w = induced_weights_for(&chain, &basis).unwrap();
        let rees = ReesIdeal::new(chain);
        assert_eq!(w.weights.total(), exact::int(rees_colength(&rees).unwrap()));
    }

    #[test]
    fn lech_bound_small_family() {
        // degree <= 2 in two variables: (x,y), (x^2,y), (x^2,y^2) give 1/2,
        // (x,y)^2 gives 2/3
        let (best, arg) = flat_multiplicity_lower_bound(1, 0, 2, Execution::Parallel).unwrap();
        assert_eq!(best, frac(2, 3));
        assert_eq!(arg, m_sq());
    }

    #[test]
    fn degree_enumeration() {
        assert_eq!(monomials_of_degree(2, 3).len(), 4);
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
    }
}
