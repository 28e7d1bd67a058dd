//! Numerical intersection theory on ruled surfaces in the `(G, f)` basis,
//! and the invariants of the `IV*` rational elliptic surface polarization.
//!
//! `G² = f² = 0`, `G·f = 1`. For odd parity `G` only exists in `Num ⊗ Q`,
//! so classes carry rational coefficients.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{self, frac, q, Q};

/// The class `g·G + f·f`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RuledClass {
    pub g: Q,
    pub f: Q,
}

impl RuledClass {
    pub fn new(g: Q, f: Q) -> Self {
        RuledClass { g, f }
    }

    pub fn fibre() -> Self {
        RuledClass::new(Q::zero(), q(1))
    }

    pub fn base() -> Self {
        RuledClass::new(q(1), Q::zero())
    }

    /// `K = −2G + (2g − 2) f`, the class with `K·f = −2`, `K² = 8(1 − g)`.
    pub fn canonical(genus: u64) -> Self {
        RuledClass::new(q(-2), exact::int(2 * genus) - q(2))
    }

    pub fn add(&self, other: &RuledClass) -> RuledClass {
        RuledClass::new(&self.g + &other.g, &self.f + &other.f)
    }

    pub fn sub(&self, other: &RuledClass) -> RuledClass {
        RuledClass::new(&self.g - &other.g, &self.f - &other.f)
    }

    pub fn scale(&self, c: &Q) -> RuledClass {
        RuledClass::new(&self.g * c, &self.f * c)
    }
}

pub fn intersect(a: &RuledClass, b: &RuledClass) -> Q {
    &a.g * &b.f + &a.f * &b.g
}

/// Polarization `D = aG + bf`, a section `S` and the genus of the base curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuledSurfaceData {
    pub genus: u64,
    pub d: RuledClass,
    pub s: RuledClass,
}

impl RuledSurfaceData {
    pub fn new(genus: u64, d: RuledClass, s: RuledClass) -> Result<Self> {
        if s.g != q(1) {
            return Err(Error::invalid(format!(
                "a section meets every fibre once, but S·f = {}",
                s.g
            )));
        }
        Ok(RuledSurfaceData { genus, d, s })
    }

    /// Section with `S² = l_R = deg E − 2 deg L`, i.e. `S = G + (l_R/2) f`.
    pub fn with_self_intersection(genus: u64, a: Q, b: Q, s_squared: Q) -> Result<Self> {
        Self::new(
            genus,
            RuledClass::new(a, b),
            RuledClass::new(q(1), s_squared / q(2)),
        )
    }

    /// `D ∼ G + 3/2 f`, `S ∼ G − 1/2 f` on `F_1`.
    pub fn steiner() -> Self {
        Self::new(
            0,
            RuledClass::new(q(1), frac(3, 2)),
            RuledClass::new(q(1), frac(-1, 2)),
        )
        .expect("static data")
    }

    pub fn a(&self) -> &Q {
        &self.d.g
    }

    pub fn b(&self) -> &Q {
        &self.d.f
    }

    /// `l_R := S²`
    pub fn l_r(&self) -> Q {
        intersect(&self.s, &self.s)
    }
}

/// `3a²(D·S) − a³ S²`: degree of contact of the vanishing-order flag along `S`.
pub fn contact_ruled(data: &RuledSurfaceData) -> Result<Q> {
    let a = data.a();
    if *a < q(1) {
        return Err(Error::invalid(format!("D = aG + bf needs a ≥ 1, got a = {a}")));
    }
    let a2 = a * a;
    let a3 = &a2 * a;
    Ok(q(3) * a2 * intersect(&data.d, &data.s) - a3 * data.l_r())
}

/// `D²`
pub fn ruled_degree(d: &RuledClass) -> Q {
    intersect(d, d)
}

/// `χ(D) = (1 − g) + D·(D − K)/2`
pub fn euler_characteristic(genus: u64, d: &RuledClass) -> Q {
    let k = RuledClass::canonical(genus);
    q(1) - exact::int(genus) + intersect(d, &d.sub(&k)) / q(2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationDimensions {
    /// `(j, χ(D − jS))` for `j = 0..=a`.
    pub dims: Vec<(usize, Q)>,
    /// `Σ_{j=1}^{a} χ(D − jS)`
    pub vanishing_sum: Q,
    /// `Σ r_i` for `r_i = a − (order of vanishing along S)`:
    /// `a·χ(D) − Σ_{j=1}^{a} χ(D − jS)`.
    pub total_weight: Q,
}

/// Flag dimensions `dim F^j = χ(D − jS)`, valid when the higher cohomology
/// of every `D − jS` vanishes.
pub fn filtration_dimensions(data: &RuledSurfaceData) -> Result<FiltrationDimensions> {
    let a = data.a();
    if a.is_negative() || !a.is_integer() {
        return Err(Error::invalid(format!("a = {a} must be a non-negative integer")));
    }
    let a_len = a.to_integer().try_into().map_err(|_| Error::invalid("a too large"))?;
    let mut dims = Vec::with_capacity(a_len + 1);
    for j in 0..=a_len {
        let class = data.d.sub(&data.s.scale(&exact::int(j)));
        let chi = euler_characteristic(data.genus, &class);
        if chi.is_negative() {
            return Err(Error::NegativeDimension {
                j,
                value: exact::format_q(&chi),
            });
        }
        dims.push((j, chi));
    }
    let vanishing_sum = exact::sum_q(dims.iter().skip(1).map(|(_, c)| c));
    let total_weight = a * &dims[0].1 - &vanishing_sum;
    Ok(FiltrationDimensions {
        dims,
        vanishing_sum,
        total_weight,
    })
}

/// `D = 3kS + 6kf` on the minimal rational elliptic surface with an `IV*`
/// fibre.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EllipticIVStarData {
    k: u64,
}

impl EllipticIVStarData {
    pub fn new(k: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("elliptic polarization needs k ≥ 1"));
        }
        Ok(EllipticIVStarData { k })
    }

    pub fn k(&self) -> u64 {
        self.k
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllipticInvariants {
    pub degree: Q,
    pub h0: Q,
    /// Total flag weight `Σ r_i`.
    pub weight_sum: Q,
    pub contact_lower_bound: Q,
    pub e_infinity_lower_bound: Q,
}

impl EllipticInvariants {
    /// `Σ r_i / h^0`: the expected weight seen by the ambient projective space.
    pub fn ambient_average(&self) -> Q {
        &self.weight_sum / &self.h0
    }
}

/// Closed-form invariants of the vanishing-order flag along the
/// multiplicity-3 component of the `IV*` fibre. These are tabulated values,
/// not recomputed from the fibre geometry.
pub fn elliptic_invariants(data: &EllipticIVStarData) -> EllipticInvariants {
    let k = exact::int(data.k);
    let k2 = &k * &k;
    let k3 = &k2 * &k;
    let degree = q(27) * &k2;
    let h0 = (q(27) * &k2 + q(3) * &k + q(2)) / q(2);
    let weight_sum = frac(225, 2) * &k3 + q(9) * &k2 + frac(23, 2) * &k;
    let contact_lower_bound = q(675) * &k3;
    let e_infinity_lower_bound = &contact_lower_bound / (q(3) * &degree);
    EllipticInvariants {
        degree,
        h0,
        weight_sum,
        contact_lower_bound,
        e_infinity_lower_bound,
    }
}
