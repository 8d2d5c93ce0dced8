//! Parsing of function specifications from the command line or a config
//! file: either a named family with parameters or a serialized prefix tree.
//!
//! Family forms:
//!
//! ```text
//! janowski:A,B            (1+Az)/(1+Bz)
//! gfromq:A,B              generator g with zg'/g = (1+Az)/(1+Bz)
//! schwarz:seed,deg,c      seeded Schwarz function
//! koebe                   z(1-z)^{-2}
//! halfplane               (1+z)/(1-z)
//! identity                z
//! ```
//!
//! Anything else is parsed as a prefix-notation tree (see the core crate's
//! grammar), e.g. `add 1 mul 1.9 z`.

use subord_core::families::{
    g_from_q, halfplane, janowski, koebe, random_schwarz, JanowskiParams, SchwarzSpec,
};
use subord_core::AnalyticMap;

pub fn parse_funcspec(spec: &str) -> Result<AnalyticMap, String> {
    let spec = spec.trim();
    match spec {
        "koebe" => return Ok(koebe()),
        "halfplane" => return Ok(halfplane()),
        "identity" | "z" => return Ok(AnalyticMap::identity()),
        _ => {}
    }
    if let Some(args) = spec.strip_prefix("janowski:") {
        let (a, b) = two_reals(args)?;
        let jp = JanowskiParams::new(a, b).map_err(|e| e.to_string())?;
        return Ok(janowski(jp));
    }
    if let Some(args) = spec.strip_prefix("gfromq:") {
        let (a, b) = two_reals(args)?;
        let jp = JanowskiParams::new(a, b).map_err(|e| e.to_string())?;
        return g_from_q(&janowski(jp), jp).map_err(|e| e.to_string());
    }
    if let Some(args) = spec.strip_prefix("schwarz:") {
        let parts: Vec<&str> = args.split(',').collect();
        if parts.len() != 3 {
            return Err(format!("schwarz spec `{spec}` needs seed,degree,contraction"));
        }
        let seed: u64 = parts[0].trim().parse().map_err(|_| format!("bad seed in `{spec}`"))?;
        let degree: usize =
            parts[1].trim().parse().map_err(|_| format!("bad degree in `{spec}`"))?;
        let contraction: f64 =
            parts[2].trim().parse().map_err(|_| format!("bad contraction in `{spec}`"))?;
        let sw = SchwarzSpec::new(seed, degree, contraction).map_err(|e| e.to_string())?;
        return Ok(random_schwarz(sw));
    }
    spec.parse::<AnalyticMap>()
        .map_err(|e| format!("cannot parse `{spec}` as a family or expression tree: {e}"))
}

/// Resolves a function from an explicit spec, or from `--family` + `--A/--B`.
pub fn resolve_function(
    spec: Option<&str>,
    family: Option<&str>,
    a: Option<f64>,
    b: Option<f64>,
    role: &str,
) -> Result<AnalyticMap, String> {
    if let Some(spec) = spec {
        return parse_funcspec(spec);
    }
    match family {
        Some("janowski") => {
            let (a, b) = match (a, b) {
                (Some(a), Some(b)) => (a, b),
                _ => return Err("family janowski needs --A and --B".into()),
            };
            let jp = JanowskiParams::new(a, b).map_err(|e| e.to_string())?;
            Ok(janowski(jp))
        }
        Some(other) => parse_funcspec(other),
        None => Err(format!("no function given for {role}: pass a spec or --family")),
    }
}

fn two_reals(args: &str) -> Result<(f64, f64), String> {
    let (a, b) = args
        .split_once(',')
        .ok_or_else(|| format!("expected two comma-separated numbers in `{args}`"))?;
    let a: f64 = a.trim().parse().map_err(|_| format!("bad number `{a}`"))?;
    let b: f64 = b.trim().parse().map_err(|_| format!("bad number `{b}`"))?;
    Ok((a, b))
}
