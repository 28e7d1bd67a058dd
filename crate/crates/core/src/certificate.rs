//! Threshold certificates for approximation systems.
//!
//! Every certificate is a strict inequality `lhs > rhs` evaluated exactly.
//! The margin is `lhs − rhs`; a zero margin fails. Hypotheses the crate
//! cannot check (cohomology vanishing, very ampleness, tabulated surface
//! invariants) travel with the certificate as assumption strings.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::blowup::{self, BlowupData, ConeData};
use crate::contact::{asymptotic_invariants, AsymptoticInvariants, FiltrationProfile};
use crate::error::{Error, Result};
use crate::exact::{self, frac, q, serde_q, serde_q_opt, Q};
use crate::local::{self, IdealChain, ReesIdeal};
use crate::monomial::{MonomialMap, WeightVector};
use crate::par::Execution;
use crate::surface::{self, EllipticIVStarData, RuledSurfaceData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TheoremId {
    #[serde(rename = "FW-general")]
    FwGeneral,
    #[serde(rename = "local-point")]
    LocalPoint,
    #[serde(rename = "local-chain")]
    LocalChain,
    #[serde(rename = "local-chain-normalized")]
    LocalChainNormalized,
    #[serde(rename = "steiner")]
    Steiner,
    #[serde(rename = "ruled")]
    Ruled,
    #[serde(rename = "bundle-unstable")]
    BundleUnstable,
    #[serde(rename = "blowup")]
    Blowup,
    #[serde(rename = "cone")]
    Cone,
    #[serde(rename = "elliptic")]
    Elliptic,
}

impl TheoremId {
    pub const ALL: [TheoremId; 10] = [
        TheoremId::FwGeneral,
        TheoremId::LocalPoint,
        TheoremId::LocalChain,
        TheoremId::LocalChainNormalized,
        TheoremId::Steiner,
        TheoremId::Ruled,
        TheoremId::BundleUnstable,
        TheoremId::Blowup,
        TheoremId::Cone,
        TheoremId::Elliptic,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::FwGeneral => "FW-general",
            TheoremId::LocalPoint => "local-point",
            TheoremId::LocalChain => "local-chain",
            TheoremId::LocalChainNormalized => "local-chain-normalized",
            TheoremId::Steiner => "steiner",
            TheoremId::Ruled => "ruled",
            TheoremId::BundleUnstable => "bundle-unstable",
            TheoremId::Blowup => "blowup",
            TheoremId::Cone => "cone",
            TheoremId::Elliptic => "elliptic",
        }
    }

    /// The inequality this certificate instantiates.
    pub fn formula(self) -> &'static str {
        match self {
            TheoremId::FwGeneral => "sum_v E_{v,inf}/d_v > 1, E_inf = e_r / ((d+1) deg)",
            TheoremId::LocalPoint => "mult_P(X) * sum_v k_v/d_v > (dim X + 1) deg X",
            TheoremId::LocalChain => "sum_v sum_i r_{v,i}/d_v > deg X / (dim X + 1)!",
            TheoremId::LocalChainNormalized => {
                "sum_v e(I_v) / ((dim X + 1) deg X d_v) > 1, e(I) = (1+eps)(dim X + 1)! col(I)"
            }
            TheoremId::Steiner => "sum_v k_v/d_v > (d+1) deg / e_r(unit flag)",
            TheoremId::Ruled => "(3a^2 D.S - a^3 S^2) sum_v 1/d_v > 3 D^2",
            TheoremId::BundleUnstable => {
                "b + (a/2)(deg E - 2 deg L) > 2g - 2 and sum_v 1/d_v > 3b / (a(b+g-1))"
            }
            TheoremId::Blowup => {
                "sum_i H^{n-i}(-E)^i C(n+1,i+1)((i+1)(r-s)r^{n-i}s^i - r^{n+1} + r^{n-i}s^{i+1}) sum_v 1/d_v > (n+1)(rH-sE)^n"
            }
            TheoremId::Cone => "(n+1)s^n(s-r) + r^{n+1} - s^{n+1} > (n+1)(r^n - s^n)/#places",
            TheoremId::Elliptic => "sum_v k/d_v > 3/25",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::parse("theorem_id", format!("unknown theorem `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// An additional strict inequality that must hold alongside the main one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideCondition {
    pub name: String,
    #[serde(with = "serde_q")]
    pub lhs: Q,
    #[serde(with = "serde_q")]
    pub rhs: Q,
    #[serde(with = "serde_q")]
    pub margin: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub theorem_id: TheoremId,
    pub inputs: BTreeMap<String, String>,
    #[serde(with = "serde_q")]
    pub lhs: Q,
    #[serde(with = "serde_q")]
    pub rhs: Q,
    #[serde(with = "serde_q")]
    pub margin: Q,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub side_conditions: Vec<SideCondition>,
    pub assumptions: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    #[serde(with = "serde_q_opt", default)]
    pub schmidt_baseline: Option<Q>,
}

impl Certificate {
    pub fn new(theorem_id: TheoremId, lhs: Q, rhs: Q) -> Self {
        let margin = &lhs - &rhs;
        let verdict = if margin.is_positive() {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        Certificate {
            theorem_id,
            inputs: BTreeMap::new(),
            lhs,
            rhs,
            margin,
            verdict,
            side_conditions: Vec::new(),
            assumptions: Vec::new(),
            warnings: Vec::new(),
            schmidt_baseline: None,
        }
    }

    pub fn with_input(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.inputs.insert(key.into(), value.to_string());
        self
    }

    pub fn with_assumption(mut self, a: impl Into<String>) -> Self {
        self.assumptions.push(a.into());
        self
    }

    pub fn with_baseline(mut self, baseline: Q) -> Self {
        self.schmidt_baseline = Some(baseline);
        self
    }

    pub fn with_side_condition(mut self, name: impl Into<String>, lhs: Q, rhs: Q) -> Self {
        let margin = &lhs - &rhs;
        if !margin.is_positive() {
            self.verdict = Verdict::Fail;
        }
        self.side_conditions.push(SideCondition {
            name: name.into(),
            lhs,
            rhs,
            margin,
        });
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// True when the verdict rests on hypotheses that were not verified.
    pub fn is_conditional(&self) -> bool {
        !self.assumptions.is_empty()
    }
}

fn check_scalings<'a>(ds: impl IntoIterator<Item = &'a Q>) -> Result<Q> {
    let mut inv_sum = Q::zero();
    let mut count = 0;
    for d in ds {
        if !d.is_positive() {
            return Err(Error::invalid(format!("scaling d_v = {d} must be positive")));
        }
        inv_sum += Q::one() / d;
        count += 1;
    }
    if count == 0 {
        return Err(Error::invalid("at least one place is required"));
    }
    Ok(inv_sum)
}

fn list(xs: &[Q]) -> String {
    let parts: Vec<String> = xs.iter().map(exact::format_q).collect();
    format!("[{}]", parts.join(", "))
}

/// `E_{v,∞}` and `d_v` for one place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FwPlace {
    pub e_infinity: Q,
    pub scaling: Q,
}

/// `Σ_v E_{v,∞}/d_v = 1 + δ` with `δ > 0`. A `δ ≥ 1` is reported as a
/// warning only.
pub fn certify_fw(places: &[FwPlace]) -> Result<Certificate> {
    check_scalings(places.iter().map(|p| &p.scaling))?;
    let lhs: Q = places.iter().map(|p| &p.e_infinity / &p.scaling).sum();
    let e: Vec<Q> = places.iter().map(|p| p.e_infinity.clone()).collect();
    let d: Vec<Q> = places.iter().map(|p| p.scaling.clone()).collect();
    let mut cert = Certificate::new(TheoremId::FwGeneral, lhs, Q::one())
        .with_input("e_infinity", list(&e))
        .with_input("d", list(&d));
    if cert.margin >= Q::one() {
        cert.warnings
            .push(format!("delta = {} is not below 1", exact::format_q(&cert.margin)));
    }
    Ok(cert)
}

/// [`certify_fw`] from computed invariants; unstabilized invariants are
/// refused.
pub fn certify_fw_from_invariants(places: &[(AsymptoticInvariants, Q)]) -> Result<Certificate> {
    if places.iter().any(|(inv, _)| !inv.stabilized) {
        return Err(Error::NotStabilized(
            "refusing to certify from unstabilized invariants".into(),
        ));
    }
    certify_fw(
        &places
            .iter()
            .map(|(inv, d)| FwPlace {
                e_infinity: inv.e_infinity.clone(),
                scaling: d.clone(),
            })
            .collect::<Vec<_>>(),
    )
}

/// `Σ_v Σ_i r_{v,i} / ((N+1) d_v)`: the `E_∞` sum of the ambient projective
/// space for the same flags.
pub fn schmidt_baseline(places: &[(WeightVector, Q)]) -> Result<Q> {
    check_scalings(places.iter().map(|(_, d)| d))?;
    Ok(places.iter().map(|(w, d)| w.average() / d).sum())
}

/// Places `(k_v, d_v)` with weights `(k_v, k_v, 0, 0, 0)` on the Steiner map.
///
/// The threshold is derived from brute-force invariants of the unit flag:
/// `Σ k_v/d_v > (d+1)·deg / e_r`. The baseline is the ambient threshold
/// `(N+1) / Σ r_i` in the same units.
pub fn certify_steiner(places: &[(Q, Q)], m_max: usize, exec: Execution) -> Result<Certificate> {
    check_scalings(places.iter().map(|(_, d)| d))?;
    if let Some((k, _)) = places.iter().find(|(k, _)| k.is_negative()) {
        return Err(Error::invalid(format!("k_v = {k} must be non-negative")));
    }
    let map = MonomialMap::steiner();
    let unit = WeightVector::from_integers(&[1, 1, 0, 0, 0])?;
    let profile = FiltrationProfile::from_map(&map, &unit, m_max, exec)?;
    let inv = asymptotic_invariants(&profile)?;
    if !inv.stabilized {
        return Err(Error::NotStabilized(format!(
            "Steiner invariants not stable at m_max = {m_max}"
        )));
    }
    let threshold = exact::int(inv.dimension + 1) * &inv.degree / &inv.e_r;
    let lhs: Q = places.iter().map(|(k, d)| k / d).sum();
    let ks: Vec<Q> = places.iter().map(|(k, _)| k.clone()).collect();
    let ds: Vec<Q> = places.iter().map(|(_, d)| d.clone()).collect();
    let ambient = exact::int(map.len()) / unit.total();
    Ok(Certificate::new(TheoremId::Steiner, lhs, threshold)
        .with_input("k", list(&ks))
        .with_input("d", list(&ds))
        .with_input("e_r_unit", exact::format_q(&inv.e_r))
        .with_input("degree", exact::format_q(&inv.degree))
        .with_input("m_max", m_max)
        .with_baseline(ambient))
}

/// `mult_P X · Σ k_v/d_v > (dim X + 1) deg X`
pub fn certify_local_point(mult: u64, dim: u64, deg: u64, places: &[(Q, Q)]) -> Result<Certificate> {
    check_scalings(places.iter().map(|(_, d)| d))?;
    if mult == 0 || dim == 0 || deg == 0 {
        return Err(Error::invalid("mult, dim and deg must be positive"));
    }
    let s: Q = places.iter().map(|(k, d)| k / d).sum();
    let lhs = exact::int(mult) * s;
    let rhs = exact::int((dim + 1) * deg);
    let ks: Vec<Q> = places.iter().map(|(k, _)| k.clone()).collect();
    let ds: Vec<Q> = places.iter().map(|(_, d)| d.clone()).collect();
    Ok(Certificate::new(TheoremId::LocalPoint, lhs, rhs)
        .with_input("mult", mult)
        .with_input("dim", dim)
        .with_input("deg", deg)
        .with_input("k", list(&ks))
        .with_input("d", list(&ds)))
}

/// Verbatim chain inequality `Σ_v Σ_i r_{v,i}/d_v > deg X / (dim X + 1)!`.
pub fn certify_local_chain(places: &[(Vec<Q>, Q)], deg: u64, dim: usize) -> Result<Certificate> {
    check_scalings(places.iter().map(|(_, d)| d))?;
    if deg == 0 {
        return Err(Error::invalid("deg must be positive"));
    }
    let lhs: Q = places
        .iter()
        .map(|(w, d)| exact::sum_q(w) / d)
        .sum();
    let rhs = exact::int(deg) / exact::int(exact::factorial(dim + 1));
    let sums: Vec<Q> = places.iter().map(|(w, _)| exact::sum_q(w)).collect();
    let ds: Vec<Q> = places.iter().map(|(_, d)| d.clone()).collect();
    Ok(Certificate::new(TheoremId::LocalChain, lhs, rhs)
        .with_input("weight_sums", list(&sums))
        .with_input("d", list(&ds))
        .with_input("deg", deg)
        .with_input("dim", dim)
        .with_assumption("weights are induced by an ideal chain at an unstable point"))
}

/// Per-place Rees data used by the chain certificates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainPlace {
    pub colength: u64,
    pub multiplicity: u64,
    /// `e(I) / ((dim + 1)! col(I)) − 1`
    pub epsilon: Q,
}

pub fn chain_place(chain: &IdealChain, exec: Execution) -> Result<ChainPlace> {
    let rees = ReesIdeal::new(chain.clone());
    let colength = local::rees_colength(&rees)?;
    let multiplicity = local::rees_multiplicity_with(&rees, exec)?;
    let dim = chain.vars();
    let epsilon = exact::int(multiplicity)
        / (exact::int(exact::factorial(dim + 1)) * exact::int(colength))
        - Q::one();
    Ok(ChainPlace {
        colength,
        multiplicity,
        epsilon,
    })
}

/// The verbatim chain certificate and the `E_∞`-normalized one, side by side.
///
/// The verbatim form uses the induced weights on the standard monomials of
/// `R/I_0`, whose total is the Rees colength. The normalized form treats the
/// Rees multiplicity as the degree of contact: `E_v = e(I_v) / ((dim+1)·deg)`.
pub fn certify_local_chain_pair(
    places: &[(IdealChain, Q)],
    deg: u64,
    exec: Execution,
) -> Result<(Certificate, Certificate)> {
    check_scalings(places.iter().map(|(_, d)| d))?;
    if deg == 0 {
        return Err(Error::invalid("deg must be positive"));
    }
    let dim = places[0].0.vars();
    if places.iter().any(|(c, _)| c.vars() != dim) {
        return Err(Error::invalid("all chains must live in the same ring"));
    }
    let data: Vec<ChainPlace> = places
        .iter()
        .map(|(c, _)| chain_place(c, exec))
        .collect::<Result<_>>()?;

    let mut weighted = Vec::with_capacity(places.len());
    for (chain, d) in places {
        let basis = chain.standard_monomials()?;
        let w = local::induced_weights_for(chain, &basis)?;
        weighted.push((w.weights.as_slice().to_vec(), d.clone()));
    }
    let verbatim = certify_local_chain(&weighted, deg, dim)?;

    let denom = exact::int(dim + 1) * exact::int(deg);
    let lhs: Q = data
        .iter()
        .zip(places)
        .map(|(p, (_, d))| exact::int(p.multiplicity) / (&denom * d))
        .sum();
    let eps: Vec<Q> = data.iter().map(|p| p.epsilon.clone()).collect();
    let cols: Vec<Q> = data.iter().map(|p| exact::int(p.colength)).collect();
    let mults: Vec<Q> = data.iter().map(|p| exact::int(p.multiplicity)).collect();
    let ds: Vec<Q> = places.iter().map(|(_, d)| d.clone()).collect();
    let normalized = Certificate::new(TheoremId::LocalChainNormalized, lhs, Q::one())
        .with_input("epsilon", list(&eps))
        .with_input("rees_colength", list(&cols))
        .with_input("rees_multiplicity", list(&mults))
        .with_input("d", list(&ds))
        .with_input("deg", deg)
        .with_input("dim", dim)
        .with_assumption("the Rees multiplicity stands in for the degree of contact of the induced flag");
    Ok((verbatim, normalized))
}

pub const RULED_VANISHING: &str = "H^i(R, D - jS) = 0 for i > 0 and 0 <= j <= a";

/// `(3a²D·S − a³S²) Σ 1/d_v > 3D²`
pub fn certify_ruled(data: &RuledSurfaceData, ds: &[Q]) -> Result<Certificate> {
    let inv_sum = check_scalings(ds)?;
    let contact = surface::contact_ruled(data)?;
    let degree = surface::ruled_degree(&data.d);
    Ok(Certificate::new(TheoremId::Ruled, &contact * &inv_sum, q(3) * &degree)
        .with_input("genus", data.genus)
        .with_input("a", data.a())
        .with_input("b", data.b())
        .with_input("S^2", data.l_r())
        .with_input("contact", &contact)
        .with_input("degree", &degree)
        .with_input("d", list(ds))
        .with_assumption(RULED_VANISHING)
        .with_assumption("D is very ample"))
}

/// Bundle-unstable ruled surface: `b + (a/2)(deg E − 2 deg L) > 2g − 2` as a
/// side condition and `Σ 1/d_v > 3b / (a(b + g − 1))` as the main inequality.
pub fn certify_bundle_unstable(
    genus: u64,
    a: &Q,
    b: &Q,
    deg_e: &Q,
    deg_l: &Q,
    ds: &[Q],
) -> Result<Certificate> {
    let inv_sum = check_scalings(ds)?;
    let l_r = deg_e - q(2) * deg_l;
    if !l_r.is_negative() {
        return Err(Error::NotBundleUnstable(exact::format_q(&l_r)));
    }
    let g = exact::int(genus);
    let denom = a * (b + &g - q(1));
    if denom.is_zero() {
        return Err(Error::invalid("a(b + g - 1) vanishes"));
    }
    let rhs = q(3) * b / denom;
    let part1_lhs = b + a / q(2) * &l_r;
    let part1_rhs = q(2) * &g - q(2);
    Ok(Certificate::new(TheoremId::BundleUnstable, inv_sum, rhs)
        .with_side_condition("b + (a/2)(deg E - 2 deg L) > 2g - 2", part1_lhs, part1_rhs)
        .with_input("genus", genus)
        .with_input("a", a)
        .with_input("b", b)
        .with_input("deg_E", deg_e)
        .with_input("deg_L", deg_l)
        .with_input("d", list(ds))
        .with_assumption("D is very ample"))
}

/// Blow-up contact bound against `(n + 1)(rH − sE)^n`.
pub fn certify_blowup(data: &BlowupData, ds: &[Q]) -> Result<Certificate> {
    let inv_sum = check_scalings(ds)?;
    let bound = blowup::contact_lower_bound(data);
    let degree = blowup::polarization_degree(data);
    Ok(
        Certificate::new(TheoremId::Blowup, &bound * &inv_sum, exact::int(data.n() + 1) * &degree)
            .with_input("n", data.n())
            .with_input("nu", list(data.nu()))
            .with_input("r", data.r())
            .with_input("s", data.s())
            .with_input("contact_lower_bound", &bound)
            .with_input("degree", &degree)
            .with_input("d", list(ds))
            .with_assumption("h^i(rH - jE) = O((r+j)^{n-2}) for i > 0 and s <= j <= r")
            .with_assumption("rH - sE is very ample"),
    )
}

/// Cone specialization with all `d_v = 1`.
pub fn certify_cone(data: &ConeData) -> Result<Certificate> {
    let n = data.n();
    let (r, s) = (exact::int(data.r()), exact::int(data.s()));
    let np1 = exact::int(n + 1);
    let lhs = &np1 * exact::pow_q(&s, n as u32) * (&s - &r) + exact::pow_q(&r, n as u32 + 1)
        - exact::pow_q(&s, n as u32 + 1);
    let rhs = &np1 * (exact::pow_q(&r, n as u32) - exact::pow_q(&s, n as u32))
        / exact::int(data.sigma_count());
    let cert = Certificate::new(TheoremId::Cone, lhs, rhs)
        .with_input("n", n)
        .with_input("H^n", data.h())
        .with_input("r", data.r())
        .with_input("s", data.s())
        .with_input("places", data.sigma_count())
        .with_assumption("H^i(V, mtL) = 0 for m > 0 and i > 0");
    debug_assert_eq!(cert.margin, blowup::cone_condition(data).margin);
    Ok(cert)
}

/// `Σ_v k/d_v > 3/25` for the `IV*` elliptic polarization.
///
/// The baseline is the ambient-space threshold `k·h^0 / Σ r_i` in the same
/// units.
pub fn certify_elliptic(k: u64, ds: &[Q]) -> Result<Certificate> {
    let inv_sum = check_scalings(ds)?;
    let data = EllipticIVStarData::new(k)?;
    let inv = surface::elliptic_invariants(&data);
    let kk = exact::int(k);
    let baseline = &kk * &inv.h0 / &inv.weight_sum;
    Ok(Certificate::new(TheoremId::Elliptic, &kk * inv_sum, frac(3, 25))
        .with_input("k", k)
        .with_input("d", list(ds))
        .with_input("contact_lower_bound", &inv.contact_lower_bound)
        .with_input("degree", &inv.degree)
        .with_input("e_infinity_lower_bound", &inv.e_infinity_lower_bound)
        .with_baseline(baseline)
        .with_assumption("degree of contact >= 675k^3 (tabulated, not recomputed)")
        .with_assumption("minimal rational elliptic surface with a IV* fibre and D = 3kS + 6kf very ample"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, q};

    fn places(ks: &[Q], ds: &[Q]) -> Vec<(Q, Q)> {
        ks.iter().cloned().zip(ds.iter().cloned()).collect()
    }

    #[test]
    fn fw_examples() {
        let c = certify_fw(&[
            FwPlace { e_infinity: frac(3, 5), scaling: q(1) },
            FwPlace { e_infinity: frac(3, 5), scaling: q(1) },
        ])
        .unwrap();
        assert_eq!(c.margin, frac(1, 5));
        assert!(c.passed());
        assert!(c.warnings.is_empty());
        let z = certify_fw(&[FwPlace { e_infinity: q(0), scaling: q(1) }]).unwrap();
        assert_eq!(z.margin, q(-1));
        assert!(!z.passed());
        let big = certify_fw(&[FwPlace { e_infinity: q(3), scaling: q(1) }]).unwrap();
        assert!(big.passed());
        assert_eq!(big.warnings.len(), 1);
        assert!(certify_fw(&[FwPlace { e_infinity: q(1), scaling: q(0) }]).is_err());
        assert!(certify_fw(&[]).is_err());
    }

    #[test]
    fn steiner_threshold() {
        let c = certify_steiner(&places(&[q(1)], &[q(2)]), 5, Execution::Sequential).unwrap();
        assert_eq!(c.rhs, frac(9, 4));
        assert_eq!(c.margin, frac(-7, 4));
        assert_eq!(c.schmidt_baseline, Some(frac(5, 2)));
        assert!(!c.passed());
        let at = certify_steiner(&places(&[q(9)], &[q(4)]), 5, Execution::Sequential).unwrap();
        assert!(!at.passed());
        let above = certify_steiner(&places(&[q(1)], &[frac(4, 10)]), 5, Execution::Sequential)
            .unwrap();
        assert!(above.passed());
    }

    #[test]
    fn local_point_examples() {
        let c = certify_local_point(3, 2, 3, &places(&[q(4)], &[q(1)])).unwrap();
        assert_eq!((c.lhs.clone(), c.rhs.clone()), (q(12), q(9)));
        assert!(c.passed());
        let c = certify_local_point(1, 2, 3, &places(&[q(9)], &[q(1)])).unwrap();
        assert_eq!(c.margin, q(0));
        assert!(!c.passed());
        let c = certify_local_point(1, 2, 3, &places(&[q(0)], &[q(1)])).unwrap();
        assert_eq!(c.lhs, q(0));
        assert!(!c.passed());
    }

    #[test]
    fn local_chain_examples() {
        let c = certify_local_chain(&[(vec![q(1), q(0)], q(1))], 3, 2).unwrap();
        assert_eq!(c.rhs, frac(1, 2));
        assert!(c.passed());
        let c = certify_local_chain(&[(vec![q(0), q(0)], q(1))], 3, 2).unwrap();
        assert!(!c.passed());
        let c = certify_local_chain(&[(vec![q(6)], q(1))], 6, 2).unwrap();
        assert_eq!(c.rhs, q(1));
    }

    #[test]
    fn chain_pair() {
        use crate::local::MonomialIdeal;
        let chain = IdealChain::new(vec![MonomialIdeal::maximal(2), MonomialIdeal::unit(2)]).unwrap();
        let p = chain_place(&chain, Execution::Sequential).unwrap();
        assert_eq!((p.colength, p.multiplicity), (1, 1));
        assert_eq!(p.epsilon, frac(-5, 6));
        let (verbatim, normalized) =
            certify_local_chain_pair(&[(chain, q(1))], 1, Execution::Sequential).unwrap();
        assert_eq!(verbatim.lhs, q(1));
        assert_eq!(verbatim.rhs, frac(1, 6));
        assert!(verbatim.passed());
        assert_eq!(normalized.lhs, frac(1, 3));
        assert!(!normalized.passed());
    }

    #[test]
    fn ruled_examples() {
        let d = RuledSurfaceData::with_self_intersection(0, q(2), q(3), q(0)).unwrap();
        let c = certify_ruled(&d, &[q(1)]).unwrap();
        assert_eq!((c.lhs.clone(), c.rhs.clone()), (q(36), q(36)));
        assert!(!c.passed());
        assert!(c.is_conditional());
        let c = certify_ruled(&d, &[frac(9, 10)]).unwrap();
        assert_eq!(c.lhs, q(40));
        assert!(c.passed());
        let z = RuledSurfaceData::new(
            0,
            crate::surface::RuledClass::base(),
            crate::surface::RuledClass::base(),
        )
        .unwrap();
        assert_eq!(certify_ruled(&z, &[q(1)]).unwrap().lhs, q(0));
    }

    #[test]
    fn bundle_unstable_examples() {
        let c = certify_bundle_unstable(0, &q(2), &q(3), &q(-1), &q(0), &[q(1)]).unwrap();
        assert_eq!(c.side_conditions[0].margin, q(4));
        assert_eq!(c.rhs, frac(9, 4));
        assert!(!c.passed());
        let c = certify_bundle_unstable(0, &q(2), &q(3), &q(-1), &q(0), &[frac(2, 5)]).unwrap();
        assert!(c.passed());
        assert!(matches!(
            certify_bundle_unstable(0, &q(2), &q(3), &q(2), &q(1), &[q(1)]),
            Err(Error::NotBundleUnstable(_))
        ));
        let c = certify_bundle_unstable(1, &q(4), &q(5), &q(-1), &q(0), &[q(1)]).unwrap();
        assert_eq!(c.rhs, frac(3, 4));
        // failing side condition fails the certificate even with a huge lhs
        let c = certify_bundle_unstable(5, &q(2), &q(1), &q(-1), &q(0), &[frac(1, 100)]).unwrap();
        assert!(c.margin.is_positive());
        assert!(!c.passed());
    }

    #[test]
    fn blowup_and_cone() {
        let d = BlowupData::new(2, vec![q(1), q(0), q(-1)], 2, 1).unwrap();
        let c = certify_blowup(&d, &[q(1)]).unwrap();
        assert_eq!((c.lhs.clone(), c.rhs.clone()), (q(4), q(9)));
        let cone = ConeData::new(2, q(1), 3, 2, 1).unwrap();
        let c = certify_cone(&cone).unwrap();
        assert_eq!(c.margin, q(-8));
        assert!(!c.passed());
    }

    #[test]
    fn elliptic_examples() {
        let c = certify_elliptic(1, &[q(8)]).unwrap();
        assert_eq!(c.margin, frac(1, 200));
        assert!(c.passed());
        assert!(!certify_elliptic(1, &[frac(25, 3)]).unwrap().passed());
        assert!(!certify_elliptic(2, &[frac(50, 3)]).unwrap().passed());
        assert_eq!(certify_elliptic(1, &[q(1)]).unwrap().schmidt_baseline, Some(frac(16, 133)));
        assert!(certify_elliptic(0, &[q(1)]).is_err());
    }

    #[test]
    fn baselines() {
        let w = WeightVector::from_integers(&[1, 1, 0, 0, 0]).unwrap();
        assert_eq!(schmidt_baseline(&[(w, q(1))]).unwrap(), frac(2, 5));
        let eq = WeightVector::from_integers(&[3, 3, 3]).unwrap();
        assert_eq!(schmidt_baseline(&[(eq, q(2))]).unwrap(), frac(3, 2));
    }

    #[test]
    fn theorem_ids_round_trip() {
        for t in TheoremId::ALL {
            assert_eq!(t.as_str().parse::<TheoremId>().unwrap(), t);
        }
        assert!("nope".parse::<TheoremId>().is_err());
    }

    #[test]
    fn certificate_json_round_trip() {
        let c = certify_bundle_unstable(0, &q(2), &q(3), &q(-1), &q(0), &[frac(7, 3)]).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        let back: Certificate = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
    }
}
