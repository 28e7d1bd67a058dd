//! Places of `Q`, projective heights, and the approximation inequalities
//! `log(|l_{v,i}(x)|_v / |x|_v) ≤ −(r_{v,i}/d_v) h(x)`.
//!
//! Logarithms never get materialized for decisions. A quantity
//! `c · ln b` is kept as the exact pair `(b, c)` and comparisons reduce to
//! comparing products of integer powers of rationals.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{self, frac, Q};
use crate::monomial::{MonomialMap, WeightVector};
use crate::par::Execution;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Real,
    Finite(u64),
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Place {
    pub fn finite(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::invalid(format!("{p} is not prime")));
        }
        Ok(Place::Finite(p))
    }

    /// `"real"` (or `"inf"`) for the archimedean place, a prime otherwise.
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "real" | "inf" | "infinity" => Ok(Place::Real),
            other => {
                let p: u64 = other
                    .parse()
                    .map_err(|_| Error::parse("place", format!("`{other}` is neither `real` nor a prime")))?;
                Place::finite(p)
            }
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => write!(f, "real"),
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}

/// `ord_p(n)` for a nonzero integer.
fn ord_int(n: &BigInt, p: u64) -> i64 {
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return k;
        }
        n = q;
        k += 1;
    }
}

/// `ord_p(x)` for a nonzero rational.
pub fn ord(x: &Q, p: u64) -> i64 {
    ord_int(x.numer(), p) - ord_int(x.denom(), p)
}

fn p_power(p: u64, e: i64) -> Q {
    let base = exact::int(p);
    if e >= 0 {
        exact::pow_q(&base, e as u32)
    } else {
        exact::pow_q(&(Q::one() / base), (-e) as u32)
    }
}

/// `|x|_v`: the usual absolute value at the real place, `p^{−ord_p(x)}` at `p`.
pub fn abs_value(x: &Q, v: Place) -> Result<Q> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    Ok(match v {
        Place::Real => x.abs(),
        Place::Finite(p) => p_power(p, -ord(x, p)),
    })
}

/// Distinct prime factors, by trial division.
pub fn prime_factors(n: &BigUint) -> Vec<u64> {
    let mut out = Vec::new();
    if let Some(mut m) = n.to_u64() {
        let mut d = 2u64;
        while d.saturating_mul(d) <= m {
            if m % d == 0 {
                out.push(d);
                while m % d == 0 {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            out.push(m);
        }
        return out;
    }
    let mut m = n.clone();
    let mut d = 2u64;
    while BigUint::from(d) * BigUint::from(d) <= m {
        let bd = BigUint::from(d);
        if (&m % &bd).is_zero() {
            out.push(d);
            while (&m % &bd).is_zero() {
                m /= &bd;
            }
        }
        d += 1;
    }
    if m > BigUint::one() {
        out.push(m.to_u64().expect("remaining cofactor exceeds u64"));
    }
    out
}

/// Places where `|x|_v ≠ 1`: the real place and the primes of `x`.
pub fn support(x: &Q) -> Vec<Place> {
    let mut primes: BTreeSet<u64> = prime_factors(x.numer().magnitude()).into_iter().collect();
    primes.extend(prime_factors(x.denom().magnitude()));
    std::iter::once(Place::Real)
        .chain(primes.into_iter().map(Place::Finite))
        .collect()
}

/// `Π_v |x|_v` over the real place and every prime dividing `x`; always 1.
pub fn product_formula_check(x: &Q) -> Result<Q> {
    support(x)
        .into_iter()
        .try_fold(Q::one(), |acc, v| Ok(acc * abs_value(x, v)?))
}

/// A point of projective space with coprime integer coordinates whose first
/// nonzero coordinate is positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint(Vec<BigInt>);

impl ProjectivePoint {
    pub fn new(coords: Vec<BigInt>) -> Result<Self> {
        let g = exact::gcd_all(&coords);
        if g.is_zero() {
            return Err(Error::invalid("projective point cannot be the zero vector"));
        }
        let lead = coords.iter().find(|c| !c.is_zero()).expect("nonzero coordinate");
        let g = if lead.is_negative() { -g } else { g };
        Ok(ProjectivePoint(coords.into_iter().map(|c| c / &g).collect()))
    }

    pub fn from_i64(coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Normalizes rational coordinates by clearing denominators.
    pub fn from_rationals(coords: &[Q]) -> Result<Self> {
        let l = coords
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        Self::new(coords.iter().map(|c| (c * exact::int(l.clone())).to_integer()).collect())
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn norm_sq(&self) -> BigInt {
        self.0.iter().map(|c| c * c).sum()
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(":"))
    }
}

/// `c · ln(base)` with `base > 0`, or `−∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LogValue {
    NegInfinity,
    Log { base: Q, coefficient: Q },
}

impl LogValue {
    pub fn log(base: Q, coefficient: Q) -> Self {
        debug_assert!(base.is_positive());
        LogValue::Log { base, coefficient }
    }

    pub fn zero() -> Self {
        LogValue::log(Q::one(), Q::zero())
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            LogValue::NegInfinity => f64::NEG_INFINITY,
            LogValue::Log { base, coefficient } => {
                coefficient.to_f64().unwrap_or(f64::NAN) * exact::ln_q(base)
            }
        }
    }

    /// Exact comparison.
    pub fn compare(&self, other: &LogValue) -> Ordering {
        match (self, other) {
            (LogValue::NegInfinity, LogValue::NegInfinity) => Ordering::Equal,
            (LogValue::NegInfinity, _) => Ordering::Less,
            (_, LogValue::NegInfinity) => Ordering::Greater,
            (
                LogValue::Log {
                    base: b1,
                    coefficient: c1,
                },
                LogValue::Log {
                    base: b2,
                    coefficient: c2,
                },
            ) => {
                let den = c1.denom().lcm(c2.denom());
                let e1 = (c1 * exact::int(den.clone())).to_integer();
                let e2 = (c2 * exact::int(den)).to_integer();
                exact::cmp_power_product_with_one(&[(b1.clone(), e1), (b2.clone(), -e2)])
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Height {
    /// `Σ x_i²` of the primitive representative.
    pub norm_sq: BigInt,
}

impl Height {
    /// `h = ½ ln(norm_sq)`, exactly.
    pub fn as_log(&self) -> LogValue {
        LogValue::log(exact::int(self.norm_sq.clone()), frac(1, 2))
    }

    /// Floating-point value for display only.
    pub fn value(&self) -> f64 {
        self.as_log().to_f64()
    }

    pub fn is_zero(&self) -> bool {
        self.norm_sq.is_one()
    }
}

/// Finite places contribute nothing for a primitive point, so only the
/// Euclidean norm at the real place remains.
pub fn height(p: &ProjectivePoint) -> Height {
    Height {
        norm_sq: p.norm_sq(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm(Vec<Q>);

impl LinearForm {
    pub fn new(coeffs: Vec<Q>) -> Self {
        LinearForm(coeffs)
    }

    /// The `i`-th coordinate function in `n` variables.
    pub fn coordinate(n: usize, i: usize) -> Self {
        let mut c = vec![Q::zero(); n];
        c[i] = Q::one();
        LinearForm(c)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.0
    }

    pub fn evaluate(&self, p: &ProjectivePoint) -> Q {
        self.0
            .iter()
            .zip(p.coords())
            .map(|(c, x)| c * exact::int(x.clone()))
            .sum()
    }
}

/// `log(|l(P)|_v / |P|_v)`, with the Euclidean norm at the real place and
/// the max norm at primes.
pub fn approx_defect(p: &ProjectivePoint, v: Place, l: &LinearForm) -> LogValue {
    let value = l.evaluate(p);
    if value.is_zero() {
        return LogValue::NegInfinity;
    }
    match v {
        Place::Real => LogValue::log(&value * &value / exact::int(p.norm_sq()), frac(1, 2)),
        Place::Finite(_) => {
            let num = abs_value(&value, v).expect("nonzero");
            let den = p
                .coords()
                .iter()
                .filter(|c| !c.is_zero())
                .map(|c| abs_value(&exact::int(c.clone()), v).expect("nonzero"))
                .max()
                .expect("nonzero coordinate");
            LogValue::log(num / den, Q::one())
        }
    }
}

/// Forms, weights and scaling attached to one place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceCondition {
    pub place: Place,
    pub forms: Vec<LinearForm>,
    pub weights: WeightVector,
    /// `d_v > 0`
    pub scaling: Q,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproximationSystem {
    places: Vec<PlaceCondition>,
    ambient: usize,
}

impl ApproximationSystem {
    pub fn new(places: Vec<PlaceCondition>) -> Result<Self> {
        let Some(first) = places.first() else {
            return Err(Error::invalid("approximation system has no places"));
        };
        let ambient = first.forms.len();
        if ambient == 0 {
            return Err(Error::invalid("places need at least one linear form"));
        }
        if !places.iter().any(|p| p.place == Place::Real) {
            return Err(Error::invalid("the set of places must contain the real place"));
        }
        let distinct: BTreeSet<Place> = places.iter().map(|p| p.place).collect();
        if distinct.len() != places.len() {
            return Err(Error::invalid("places must be distinct"));
        }
        for pc in &places {
            if pc.forms.len() != ambient || pc.weights.len() != ambient {
                return Err(Error::invalid(format!(
                    "place {} needs {ambient} forms and weights",
                    pc.place
                )));
            }
            if let Some(l) = pc.forms.iter().find(|l| l.coeffs().len() != ambient) {
                return Err(Error::invalid(format!(
                    "form at place {} has {} coefficients, expected {ambient}",
                    pc.place,
                    l.coeffs().len()
                )));
            }
            if !pc.scaling.is_positive() {
                return Err(Error::invalid(format!("d_v at place {} must be positive", pc.place)));
            }
        }
        Ok(ApproximationSystem { places, ambient })
    }

    /// Coordinate forms with the given weights at the given places, `d_v = 1`.
    pub fn coordinate_system(ambient: usize, places: &[(Place, WeightVector)]) -> Result<Self> {
        Self::new(
            places
                .iter()
                .map(|(v, w)| PlaceCondition {
                    place: *v,
                    forms: (0..ambient).map(|i| LinearForm::coordinate(ambient, i)).collect(),
                    weights: w.clone(),
                    scaling: Q::one(),
                })
                .collect(),
        )
    }

    pub fn places(&self) -> &[PlaceCondition] {
        &self.places
    }

    /// `N + 1`
    pub fn ambient(&self) -> usize {
        self.ambient
    }
}

/// Whether `P` satisfies every inequality of the system (non-strict).
pub fn solves_system(p: &ProjectivePoint, system: &ApproximationSystem) -> Result<bool> {
    if p.len() != system.ambient {
        return Err(Error::invalid(format!(
            "point has {} coordinates, system expects {}",
            p.len(),
            system.ambient
        )));
    }
    let norm = exact::int(p.norm_sq());
    for pc in &system.places {
        for (l, r) in pc.forms.iter().zip(pc.weights.as_slice()) {
            let lhs = approx_defect(p, pc.place, l);
            let rhs = LogValue::log(norm.clone(), -(r / &pc.scaling) / exact::q(2));
            if lhs.compare(&rhs) == Ordering::Greater {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchHit {
    pub parameter: Vec<BigInt>,
    pub image: ProjectivePoint,
    pub zero_height: bool,
}

/// Primitive, sign-normalized integer tuples with entries in
/// `[−bound, bound]`, lexicographically increasing.
pub fn parameter_points(vars: usize, bound: u64, exec: Execution) -> Vec<Vec<BigInt>> {
    let b = bound as i64;
    let firsts: Vec<i64> = (-b..=b).collect();
    exec.map(&firsts, |&x0| {
        let mut out = Vec::new();
        let mut cur = vec![x0];
        rest_points(&mut cur, vars, b, &mut out);
        out
    })
    .into_iter()
    .flatten()
    .collect()
}

fn rest_points(cur: &mut Vec<i64>, vars: usize, b: i64, out: &mut Vec<Vec<BigInt>>) {
    if cur.len() == vars {
        let g = cur.iter().fold(0i64, |g, &x| g.gcd(&x));
        let lead_positive = cur.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0);
        if g == 1 && lead_positive {
            out.push(cur.iter().map(|&x| BigInt::from(x)).collect());
        }
        return;
    }
    for x in -b..=b {
        cur.push(x);
        rest_points(cur, vars, b, out);
        cur.pop();
    }
}

/// Image of a parameter point, or `None` at a base point of the map.
pub fn image_point(map: &MonomialMap, parameter: &[BigInt]) -> Option<ProjectivePoint> {
    let coords: Vec<BigInt> = map.generators().iter().map(|g| g.evaluate(parameter)).collect();
    ProjectivePoint::new(coords).ok()
}

/// Parameter points of bounded height whose images solve the system.
///
/// Images are deduplicated, keeping the lexicographically first parameter.
pub fn search_points(
    map: &MonomialMap,
    system: &ApproximationSystem,
    height_bound: u64,
    exec: Execution,
) -> Result<Vec<SearchHit>> {
    if system.ambient() != map.len() {
        return Err(Error::invalid(format!(
            "system has {} coordinates but the map has {} generators",
            system.ambient(),
            map.len()
        )));
    }
    let params = parameter_points(map.ambient_vars(), height_bound, exec);
    let checked: Vec<Result<Option<SearchHit>>> = exec.map(&params, |x| {
        let Some(image) = image_point(map, x) else {
            return Ok(None);
        };
        if !solves_system(&image, system)? {
            return Ok(None);
        }
        let zero_height = height(&image).is_zero();
        Ok(Some(SearchHit {
            parameter: x.clone(),
            image,
            zero_height,
        }))
    });
    let mut seen: BTreeSet<ProjectivePoint> = BTreeSet::new();
    let mut hits = Vec::new();
    for hit in checked {
        if let Some(hit) = hit? {
            if seen.insert(hit.image.clone()) {
                hits.push(hit);
            }
        }
    }
    Ok(hits)
}
