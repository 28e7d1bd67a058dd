use contact_core::certificate::{self, Certificate, FwPlace, TheoremId};
use contact_core::config::RunConfig;
use contact_core::contact::{
    asymptotic_invariants, chow_semistable, find_destabilizing_weights, AsymptoticInvariants,
    FiltrationProfile,
};
use contact_core::heights;
use contact_core::local::{self, ReesIdeal};
use contact_core::{Error, Execution, Result};
use serde_json::{json, Value};

use crate::output::{document, ints, q, qs};
use crate::{Cli, Command, Outcome};

const POWER_TABLE: usize = 6;

pub fn run(cli: &Cli) -> Result<(Value, Outcome)> {
    let path = cli
        .input
        .as_deref()
        .ok_or_else(|| Error::Parse {
            field: "--input".into(),
            message: "an input file is required".into(),
        })?;
    let config = RunConfig::from_path(path)?;
    let exec = Execution::Parallel;
    match &cli.command {
        Command::Contact => contact(&config, cli.m_max, exec),
        Command::Semistable => semistable(&config, cli.m_max, exec),
        Command::Destabilize => destabilize(&config, cli.weight_bound, cli.m_max, exec),
        Command::Multiplicity => multiplicity(&config, exec),
        Command::Certify { theorem } => certify(&config, theorem.parse()?, cli.m_max, exec),
        Command::Heights => heights_cmd(&config),
        Command::Search => search(&config, cli.height_bound, exec),
    }
}

fn profile(config: &RunConfig, m_max: usize, exec: Execution) -> Result<FiltrationProfile> {
    let map = config.variety()?;
    let weights = config.flag()?;
    let needed = map.dimension() + 3;
    if m_max < needed {
        return Err(Error::InvalidInput(format!(
            "--m-max must be at least dim + 3 = {needed}"
        )));
    }
    FiltrationProfile::from_map(&map, &weights, m_max, exec)
}

fn invariants_json(inv: &AsymptoticInvariants) -> Value {
    json!({
        "e_r": q(&inv.e_r),
        "degree": q(&inv.degree),
        "dimension": inv.dimension,
        "e_infinity": q(&inv.e_infinity),
        "stabilized": inv.stabilized,
    })
}

fn invariants_provenance() -> Value {
    json!({
        "w_r(m)": "sum over a monomial basis of degree m of the minimal weight of a factorization into generators",
        "h0(m)": "number of distinct degree-m monomials in the image",
        "e_r": "(d+1)-th forward difference of w_r(m)",
        "degree": "d-th forward difference of h0(m)",
        "e_infinity": "e_r / ((d+1) * degree)",
        "stabilized": "the last two forward differences agree",
    })
}

fn contact(config: &RunConfig, m_max: usize, exec: Execution) -> Result<(Value, Outcome)> {
    let profile = profile(config, m_max, exec)?;
    let inv = asymptotic_invariants(&profile)?;
    let samples: Vec<Value> = profile
        .samples()
        .iter()
        .map(|s| json!({ "m": s.m, "weight": q(&s.weight), "h0": s.h0 }))
        .collect();
    let outcome = if inv.stabilized {
        Outcome::Ok
    } else {
        Outcome::NotStabilized
    };
    let result = json!({ "samples": samples, "invariants": invariants_json(&inv), "m_max": m_max });
    Ok((document("contact", result, invariants_provenance()), outcome))
}

fn semistable(config: &RunConfig, m_max: usize, exec: Execution) -> Result<(Value, Outcome)> {
    let profile = profile(config, m_max, exec)?;
    let inv = asymptotic_invariants(&profile)?;
    let weights = config.flag()?;
    let verdict = chow_semistable(&inv, &weights)?;
    let result = json!({
        "weights": qs(weights.as_slice()),
        "invariants": invariants_json(&inv),
        "semistable": verdict.semistable,
        "margin": q(&verdict.margin),
    });
    let mut prov = invariants_provenance();
    prov["margin"] = json!("(sum_i r_i)/(N+1) - e_infinity; semistable iff margin >= 0");
    Ok((document("semistable", result, prov), Outcome::Ok))
}

fn destabilize(
    config: &RunConfig,
    bound: u64,
    m_max: usize,
    exec: Execution,
) -> Result<(Value, Outcome)> {
    let map = config.variety()?;
    let found = find_destabilizing_weights(&map, bound, m_max, exec)?;
    let result = match found {
        Some((w, margin)) => json!({
            "found": true,
            "weights": qs(w.as_slice()),
            "margin": q(&margin),
        }),
        None => json!({ "found": false }),
    };
    let prov = json!({
        "search": "non-increasing primitive integer weight vectors with entries <= weight_bound, lexicographic order",
        "margin": "(sum_i r_i)/(N+1) - e_infinity",
        "weight_bound": bound,
    });
    Ok((document("destabilize", result, prov), Outcome::Ok))
}

fn multiplicity(config: &RunConfig, exec: Execution) -> Result<(Value, Outcome)> {
    let mut result = serde_json::Map::new();
    if config.ideal.is_some() {
        let ideal = config.ideal()?;
        let col = local::colength_with(&ideal, exec)?;
        let mult = local::multiplicity_with(&ideal, exec)?;
        let powers = local::power_colengths(&ideal, POWER_TABLE, exec)?;
        result.insert(
            "ideal".into(),
            json!({
                "generators": ideal.to_string(),
                "colength": col,
                "multiplicity": mult,
                "flat_ratio": q(&local::flat_ratio(&ideal)?),
                "power_colengths": powers,
            }),
        );
    }
    if config.chain.is_some() {
        let rees = ReesIdeal::new(config.chain()?);
        result.insert(
            "rees".into(),
            json!({
                "ideal": rees.as_monomial_ideal().to_string(),
                "colength": local::rees_colength(&rees)?,
                "multiplicity": local::rees_multiplicity_with(&rees, exec)?,
            }),
        );
    }
    if result.is_empty() {
        return Err(Error::Parse {
            field: "ideal".into(),
            message: "give an [ideal] or a [chain] section".into(),
        });
    }
    let prov = json!({
        "colength": "dim_k R/I counted as standard monomials",
        "multiplicity": "n-th forward difference of colength(I^k) in n variables",
        "flat_ratio": "multiplicity / (n! * colength)",
        "rees": "ideal generated by t^i * I_i in n+1 variables; colength = sum of colengths of the chain pieces",
    });
    Ok((document("multiplicity", Value::Object(result), prov), Outcome::Ok))
}

fn certify(
    config: &RunConfig,
    theorem: TheoremId,
    m_max: usize,
    exec: Execution,
) -> Result<(Value, Outcome)> {
    let mut extra = None;
    let cert: Certificate = match theorem {
        TheoremId::FwGeneral => fw(config, m_max, exec)?,
        TheoremId::LocalPoint => {
            let l = config.local()?;
            let mult = l.mult.ok_or_else(|| missing("local.mult"))?;
            let dim = l.dim.ok_or_else(|| missing("local.dim"))?;
            certificate::certify_local_point(mult, dim, l.deg, &config.k_places()?)?
        }
        TheoremId::LocalChain => {
            let l = config.local()?;
            let dim = l.dim.ok_or_else(|| missing("local.dim"))?;
            let places: Vec<_> = config
                .weighted_places()?
                .into_iter()
                .map(|(w, d)| (w.as_slice().to_vec(), d))
                .collect();
            certificate::certify_local_chain(&places, l.deg, dim as usize)?
        }
        TheoremId::LocalChainNormalized => {
            let l = config.local()?;
            let dim = l.dim.ok_or_else(|| missing("local.dim"))?;
            let places = config.chain_places(dim as usize)?;
            let (verbatim, normalized) = certificate::certify_local_chain_pair(&places, l.deg, exec)?;
            extra = Some(verbatim);
            normalized
        }
        TheoremId::Steiner => certificate::certify_steiner(&config.k_places()?, m_max, exec)?,
        TheoremId::Ruled => certificate::certify_ruled(&config.ruled()?, &config.scalings()?)?,
        TheoremId::BundleUnstable => {
            let (g, a, b, e, l) = config.bundle()?;
            certificate::certify_bundle_unstable(g, &a, &b, &e, &l, &config.scalings()?)?
        }
        TheoremId::Blowup => certificate::certify_blowup(&config.blowup()?, &config.scalings()?)?,
        TheoremId::Cone => certificate::certify_cone(&config.cone()?)?,
        TheoremId::Elliptic => {
            certificate::certify_elliptic(config.elliptic_k()?, &config.scalings()?)?
        }
    };
    let outcome = if cert.passed() {
        Outcome::Ok
    } else {
        Outcome::CertificateFailed
    };
    let mut result = json!({ "certificate": to_value(&cert) });
    if let Some(v) = extra {
        result["verbatim"] = to_value(&v);
    }
    let prov = json!({
        "theorem": theorem.as_str(),
        "inequality": theorem.formula(),
        "margin": "lhs - rhs; the certificate passes iff margin > 0",
    });
    Ok((document("certify", result, prov), outcome))
}

fn fw(config: &RunConfig, m_max: usize, exec: Execution) -> Result<Certificate> {
    if config.places.iter().all(|p| p.e_infinity.is_some()) {
        let places: Vec<FwPlace> = config
            .e_infinity_places()?
            .into_iter()
            .map(|(e_infinity, scaling)| FwPlace { e_infinity, scaling })
            .collect();
        return certificate::certify_fw(&places);
    }
    let map = config.variety()?;
    let mut places = Vec::new();
    for (w, d) in config.weighted_places()? {
        let profile = FiltrationProfile::from_map(&map, &w, m_max, exec)?;
        places.push((asymptotic_invariants(&profile)?, d));
    }
    certificate::certify_fw_from_invariants(&places)
}

fn heights_cmd(config: &RunConfig) -> Result<(Value, Outcome)> {
    let p = config.point()?;
    let h = heights::height(&p);
    let mut result = json!({
        "point": ints(p.coords()),
        "norm_sq": h.norm_sq.to_string(),
        "height": { "log_base": h.norm_sq.to_string(), "coefficient": "1/2" },
        "zero_height": h.is_zero(),
    });
    if !config.places.is_empty() {
        let sys = config.system(p.len())?;
        let places: Vec<Value> = sys
            .places()
            .iter()
            .map(|pc| json!(pc.place.to_string()))
            .collect();
        result["places"] = Value::Array(places);
        result["solves_system"] = json!(heights::solves_system(&p, &sys)?);
    }
    let prov = json!({
        "height": "(1/2) ln(sum x_i^2) on the primitive integer representative",
        "solves_system": "log(|L_i(x)|_v / ||x||_v) <= -(r_i / d_v) h(x) for every form i at every place",
    });
    Ok((document("heights", result, prov), Outcome::Ok))
}

fn search(config: &RunConfig, bound: u64, exec: Execution) -> Result<(Value, Outcome)> {
    let map = config.variety()?;
    let sys = config.system(map.len())?;
    let hits = heights::search_points(&map, &sys, bound, exec)?;
    let list: Vec<Value> = hits
        .iter()
        .map(|h| {
            json!({
                "parameter": ints(&h.parameter),
                "image": ints(h.image.coords()),
                "zero_height": h.zero_height,
            })
        })
        .collect();
    let places: Vec<String> = sys.places().iter().map(|p| p.place.to_string()).collect();
    let result = json!({
        "height_bound": bound,
        "places": places,
        "count": list.len(),
        "hits": list,
    });
    let prov = json!({
        "enumeration": "primitive integer parameters with max |x_i| <= height_bound, sign-normalized, lexicographic",
        "filter": "image point solves the approximation system at every place",
        "dedup": "repeated images keep the first parameter",
    });
    Ok((document("search", result, prov), Outcome::Ok))
}

fn to_value(cert: &Certificate) -> Value {
    serde_json::to_value(cert).expect("certificates always serialize")
}

fn missing(field: &str) -> Error {
    Error::Parse {
        field: field.into(),
        message: "required field is missing".into(),
    }
}
