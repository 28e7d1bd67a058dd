//! TOML input format shared by every command.
//!
//! Rationals are written as `"p/q"` strings or bare integers. Floats are
//! rejected. Every section is optional; accessors report the missing or
//! malformed field by name.

use std::path::Path;

use serde::Deserialize;

use crate::blowup::{BlowupData, ConeData};
use crate::error::{Error, Result};
use crate::exact::{RawRational, Q};
use crate::heights::{ApproximationSystem, LinearForm, Place, PlaceCondition, ProjectivePoint};
use crate::local::{IdealChain, MonomialIdeal};
use crate::monomial::{MonomialMap, WeightVector};
use crate::surface::RuledSurfaceData;

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub variety: Option<VarietyConfig>,
    pub flag: Option<FlagConfig>,
    pub ideal: Option<IdealConfig>,
    pub chain: Option<ChainConfig>,
    pub point: Option<PointConfig>,
    pub local: Option<LocalConfig>,
    pub ruled: Option<RuledConfig>,
    pub bundle: Option<BundleConfig>,
    pub elliptic: Option<EllipticConfig>,
    pub blowup: Option<BlowupConfig>,
    pub cone: Option<ConeConfig>,
    #[serde(default)]
    pub places: Vec<PlaceConfig>,
}

/// Either `preset = "steiner"` / `preset = "projective-N"` or an explicit
/// exponent matrix with one row per generator.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VarietyConfig {
    pub preset: Option<String>,
    pub vars: Option<usize>,
    pub generators: Option<Vec<Vec<u64>>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlagConfig {
    pub weights: Vec<RawRational>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealConfig {
    pub vars: usize,
    pub generators: Vec<Vec<u64>>,
}

/// Ideals `I_0 ⊆ … ⊆ I_N`, each an exponent matrix. The last one must be
/// the unit ideal, written `[[0, 0]]`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainConfig {
    pub vars: usize,
    pub ideals: Vec<Vec<Vec<u64>>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointConfig {
    pub coords: Vec<RawRational>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalConfig {
    pub mult: Option<u64>,
    pub dim: Option<u64>,
    pub deg: u64,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuledConfig {
    #[serde(default)]
    pub genus: u64,
    pub a: RawRational,
    pub b: RawRational,
    pub s_squared: RawRational,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleConfig {
    #[serde(default)]
    pub genus: u64,
    pub a: RawRational,
    pub b: RawRational,
    pub deg_e: RawRational,
    pub deg_l: RawRational,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EllipticConfig {
    pub k: u64,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlowupConfig {
    pub n: usize,
    pub nu: Vec<RawRational>,
    pub r: u64,
    pub s: u64,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeConfig {
    pub n: usize,
    pub h: Option<RawRational>,
    pub r: u64,
    pub s: u64,
    pub places: u64,
}

/// One place `v`. Which fields matter depends on the command.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlaceConfig {
    pub place: Option<String>,
    pub d: Option<RawRational>,
    pub k: Option<RawRational>,
    pub e_infinity: Option<RawRational>,
    pub weights: Option<Vec<RawRational>>,
    pub forms: Option<Vec<Vec<RawRational>>>,
    pub chain: Option<Vec<Vec<Vec<u64>>>>,
}

fn rational(field: &str, raw: &RawRational) -> Result<Q> {
    raw.to_q().map_err(|e| Error::parse(field, e.to_string()))
}

fn rationals(field: &str, raw: &[RawRational]) -> Result<Vec<Q>> {
    raw.iter()
        .enumerate()
        .map(|(i, r)| rational(&format!("{field}[{i}]"), r))
        .collect()
}

fn missing(field: &str) -> Error {
    Error::parse(field, "required field is missing")
}

fn in_field<T>(field: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { .. } => e,
        other => Error::parse(field, other.to_string()),
    })
}

impl RunConfig {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        toml::from_str(s).map_err(|e| Error::parse("config", e.message().to_string()))
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::parse("input", format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn variety(&self) -> Result<MonomialMap> {
        let v = self.variety.as_ref().ok_or_else(|| missing("variety"))?;
        match (&v.preset, &v.generators) {
            (Some(_), Some(_)) => Err(Error::parse(
                "variety",
                "give either preset or generators, not both",
            )),
            (Some(p), None) => parse_preset(p),
            (None, Some(rows)) => {
                let vars = v
                    .vars
                    .or_else(|| rows.first().map(Vec::len))
                    .ok_or_else(|| missing("variety.vars"))?;
                in_field("variety.generators", MonomialMap::from_rows(vars, rows))
            }
            (None, None) => Err(missing("variety.generators")),
        }
    }

    pub fn flag(&self) -> Result<WeightVector> {
        let f = self.flag.as_ref().ok_or_else(|| missing("flag"))?;
        let w = rationals("flag.weights", &f.weights)?;
        in_field("flag.weights", WeightVector::new(w))
    }

    pub fn ideal(&self) -> Result<MonomialIdeal> {
        let i = self.ideal.as_ref().ok_or_else(|| missing("ideal"))?;
        in_field("ideal.generators", MonomialIdeal::from_rows(i.vars, &i.generators))
    }

    pub fn chain(&self) -> Result<IdealChain> {
        let c = self.chain.as_ref().ok_or_else(|| missing("chain"))?;
        build_chain("chain.ideals", c.vars, &c.ideals)
    }

    pub fn point(&self) -> Result<ProjectivePoint> {
        let p = self.point.as_ref().ok_or_else(|| missing("point"))?;
        let c = rationals("point.coords", &p.coords)?;
        in_field("point.coords", ProjectivePoint::from_rationals(&c))
    }

    pub fn local(&self) -> Result<&LocalConfig> {
        self.local.as_ref().ok_or_else(|| missing("local"))
    }

    pub fn ruled(&self) -> Result<RuledSurfaceData> {
        let r = self.ruled.as_ref().ok_or_else(|| missing("ruled"))?;
        in_field(
            "ruled",
            RuledSurfaceData::with_self_intersection(
                r.genus,
                rational("ruled.a", &r.a)?,
                rational("ruled.b", &r.b)?,
                rational("ruled.s_squared", &r.s_squared)?,
            ),
        )
    }

    /// `(genus, a, b, deg E, deg L)`
    pub fn bundle(&self) -> Result<(u64, Q, Q, Q, Q)> {
        let b = self.bundle.as_ref().ok_or_else(|| missing("bundle"))?;
        Ok((
            b.genus,
            rational("bundle.a", &b.a)?,
            rational("bundle.b", &b.b)?,
            rational("bundle.deg_e", &b.deg_e)?,
            rational("bundle.deg_l", &b.deg_l)?,
        ))
    }

    pub fn elliptic_k(&self) -> Result<u64> {
        Ok(self.elliptic.as_ref().ok_or_else(|| missing("elliptic"))?.k)
    }

    pub fn blowup(&self) -> Result<BlowupData> {
        let b = self.blowup.as_ref().ok_or_else(|| missing("blowup"))?;
        let nu = rationals("blowup.nu", &b.nu)?;
        in_field("blowup", BlowupData::new(b.n, nu, b.r, b.s))
    }

    pub fn cone(&self) -> Result<ConeData> {
        let c = self.cone.as_ref().ok_or_else(|| missing("cone"))?;
        let h = match &c.h {
            Some(h) => rational("cone.h", h)?,
            None => crate::exact::q(1),
        };
        in_field("cone", ConeData::new(c.n, h, c.r, c.s, c.places))
    }

    fn require_places(&self) -> Result<()> {
        if self.places.is_empty() {
            Err(missing("places"))
        } else {
            Ok(())
        }
    }

    /// `d_v` for every place, defaulting to 1.
    pub fn scalings(&self) -> Result<Vec<Q>> {
        self.require_places()?;
        self.places
            .iter()
            .enumerate()
            .map(|(i, p)| match &p.d {
                Some(d) => rational(&format!("places[{i}].d"), d),
                None => Ok(crate::exact::q(1)),
            })
            .collect()
    }

    fn per_place(
        &self,
        name: &str,
        get: impl Fn(&PlaceConfig) -> Option<&RawRational>,
    ) -> Result<Vec<Q>> {
        self.require_places()?;
        self.places
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let field = format!("places[{i}].{name}");
                let raw = get(p).ok_or_else(|| missing(&field))?;
                rational(&field, raw)
            })
            .collect()
    }

    /// `(k_v, d_v)` pairs.
    pub fn k_places(&self) -> Result<Vec<(Q, Q)>> {
        let ks = self.per_place("k", |p| p.k.as_ref())?;
        Ok(ks.into_iter().zip(self.scalings()?).collect())
    }

    /// `(E_{v,∞}, d_v)` pairs.
    pub fn e_infinity_places(&self) -> Result<Vec<(Q, Q)>> {
        let es = self.per_place("e_infinity", |p| p.e_infinity.as_ref())?;
        Ok(es.into_iter().zip(self.scalings()?).collect())
    }

    /// `(weights_v, d_v)` pairs.
    pub fn weighted_places(&self) -> Result<Vec<(WeightVector, Q)>> {
        let ds = self.scalings()?;
        self.places
            .iter()
            .zip(ds)
            .enumerate()
            .map(|(i, (p, d))| {
                let field = format!("places[{i}].weights");
                let raw = p.weights.as_ref().ok_or_else(|| missing(&field))?;
                let w = in_field(&field, WeightVector::new(rationals(&field, raw)?))?;
                Ok((w, d))
            })
            .collect()
    }

    /// `(chain_v, d_v)` pairs; chains live in `vars` variables.
    pub fn chain_places(&self, vars: usize) -> Result<Vec<(IdealChain, Q)>> {
        let ds = self.scalings()?;
        self.places
            .iter()
            .zip(ds)
            .enumerate()
            .map(|(i, (p, d))| {
                let field = format!("places[{i}].chain");
                let raw = p.chain.as_ref().ok_or_else(|| missing(&field))?;
                Ok((build_chain(&field, vars, raw)?, d))
            })
            .collect()
    }

    /// The approximation system on `ambient` coordinates. Places default to
    /// the real place and forms default to the coordinate forms.
    pub fn system(&self, ambient: usize) -> Result<ApproximationSystem> {
        let weighted = self.weighted_places()?;
        let mut conditions = Vec::with_capacity(weighted.len());
        for (i, (p, (weights, scaling))) in self.places.iter().zip(weighted).enumerate() {
            let place = match &p.place {
                Some(s) => in_field(&format!("places[{i}].place"), Place::parse(s))?,
                None => Place::Real,
            };
            let forms = match &p.forms {
                Some(rows) => rows
                    .iter()
                    .enumerate()
                    .map(|(j, row)| {
                        rationals(&format!("places[{i}].forms[{j}]"), row).map(LinearForm::new)
                    })
                    .collect::<Result<Vec<_>>>()?,
                None => (0..ambient).map(|j| LinearForm::coordinate(ambient, j)).collect(),
            };
            conditions.push(PlaceCondition {
                place,
                forms,
                weights,
                scaling,
            });
        }
        in_field("places", ApproximationSystem::new(conditions))
    }
}

fn parse_preset(p: &str) -> Result<MonomialMap> {
    if p == "steiner" {
        return Ok(MonomialMap::steiner());
    }
    if let Some(n) = p.strip_prefix("projective-") {
        let n: usize = n
            .parse()
            .map_err(|_| Error::parse("variety.preset", format!("bad dimension in `{p}`")))?;
        if n == 0 {
            return Err(Error::parse("variety.preset", "dimension must be positive"));
        }
        return Ok(MonomialMap::projective_space(n));
    }
    Err(Error::parse(
        "variety.preset",
        format!("unknown preset `{p}` (expected steiner or projective-N)"),
    ))
}

fn build_chain(field: &str, vars: usize, ideals: &[Vec<Vec<u64>>]) -> Result<IdealChain> {
    let ideals = ideals
        .iter()
        .enumerate()
        .map(|(i, rows)| in_field(&format!("{field}[{i}]"), MonomialIdeal::from_rows(vars, rows)))
        .collect::<Result<Vec<_>>>()?;
    in_field(field, IdealChain::new(ideals))
}
