//! Randomized falsification campaign for the three theorem harnesses.
//!
//! Each instance draws a Janowski `q` whose hypothesis conditions pass, pairs
//! it with a `p` that is either conforming (a Schwarz composition or a nested
//! Janowski) or a deliberate perturbation whose image escapes, and runs one
//! of the harnesses. The campaign counts verdicts that contradict the
//! implication (`consistent = false`) and undecided instances. Instances are
//! seeded individually, so reports are reproducible and order-independent.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::expr::AnalyticMap;
use crate::families::{janowski, random_schwarz, JanowskiParams, SchwarzSpec};
use crate::geometry::SampleGrid;
use crate::report::{Outcome, TheoremVerdict};
use crate::theorem::{
    check_hypotheses, class_membership, verify_dominant, verify_sandwich, verify_subordinant,
    ParamSet,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HarnessKind {
    Dominant,
    Subordinant,
    Sandwich,
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceSummary {
    pub index: u32,
    pub harness: HarnessKind,
    pub premise: Outcome,
    pub conclusion: Outcome,
    pub consistent: bool,
    pub inconclusive: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CampaignReport {
    pub trials: u32,
    pub seed: u64,
    pub inconsistent_count: u32,
    pub inconclusive_count: u32,
    pub instances: Vec<InstanceSummary>,
}

#[derive(Debug, Clone)]
pub struct CampaignConfig {
    pub trials: u32,
    pub seed: u64,
    pub grid: SampleGrid,
}

impl CampaignConfig {
    pub fn new(trials: u32, seed: u64) -> Self {
        Self { trials, seed, grid: default_campaign_grid() }
    }
}

/// Two radii and a modest angular count keep a 500-instance campaign within
/// the desk-scale runtime budget; escapes in the perturbed instances are
/// gross, not marginal, so this resolution decides them cleanly.
pub fn default_campaign_grid() -> SampleGrid {
    SampleGrid::new(vec![0.5, 0.9], 256).expect("static grid is valid")
}

fn instance_rng(seed: u64, index: u32) -> ChaCha8Rng {
    let mixed = seed ^ 0x9E37_79B9_7F4A_7C15u64.wrapping_mul(index as u64 + 1);
    ChaCha8Rng::seed_from_u64(mixed)
}

/// True when the map passes class membership for these parameters; a
/// rejection predicate for the instance generator.
fn in_class(m: &AnalyticMap, ps: &ParamSet, grid: &SampleGrid) -> bool {
    matches!(class_membership(m, ps, grid), Ok(report) if report.passed())
}

/// Draws a Janowski `q` together with parameters until both class membership
/// and the hypothesis conditions pass. Fractional `μ` puts the bracket's
/// principal power in play and rejects many draws, so later attempts force
/// `μ = 1`; the unit parameters are the final fallback.
fn draw_passing_q(
    rng: &mut ChaCha8Rng,
    grid: &SampleGrid,
) -> (JanowskiParams, ParamSet, AnalyticMap) {
    const ALPHAS: [f64; 4] = [0.5, 1.0, 1.5, 2.0];
    const MUS: [f64; 2] = [0.5, 1.0];
    const DELTAS: [f64; 2] = [0.0, 0.3];
    for attempt in 0..24 {
        let a = rng.gen_range(0.15..0.9);
        let b = rng.gen_range(-0.9..-0.15);
        let alpha = ALPHAS[rng.gen_range(0..ALPHAS.len())];
        let mu = if attempt >= 12 { 1.0 } else { MUS[rng.gen_range(0..MUS.len())] };
        let delta = DELTAS[rng.gen_range(0..DELTAS.len())];
        let jp = match JanowskiParams::new(a, b) {
            Ok(jp) => jp,
            Err(_) => continue,
        };
        let ps = match ParamSet::real(alpha, mu, 1.0, 0.0, delta) {
            Ok(ps) => ps,
            Err(_) => continue,
        };
        let q = janowski(jp);
        if !in_class(&q, &ps, grid) {
            continue;
        }
        match check_hypotheses(&q, &ps, grid) {
            Ok(reports) if reports.iter().all(|r| r.passed()) => return (jp, ps, q),
            _ => continue,
        }
    }
    let jp = JanowskiParams::new(0.5, -0.5).expect("static params");
    let ps = ParamSet::real(1.0, 1.0, 1.0, 0.0, 0.0).expect("static params");
    let q = janowski(jp);
    (jp, ps, q)
}

/// Janowski parameters whose image disk strictly contains the one for `jp`.
fn expanded(jp: JanowskiParams, rng: &mut ChaCha8Rng) -> JanowskiParams {
    let ta = rng.gen_range(0.3..0.7);
    let tb = rng.gen_range(0.3..0.7);
    let a = (jp.a + (1.0 - jp.a) * ta).min(0.98);
    let b = (jp.b - (1.0 + jp.b) * tb).max(-0.98);
    JanowskiParams::new(a, b).unwrap_or(jp)
}

/// Janowski parameters scaled toward the constant 1, giving an image disk
/// strictly inside the one for `jp`.
fn shrunk(jp: JanowskiParams, t: f64) -> JanowskiParams {
    JanowskiParams::new(jp.a * t, jp.b * t).unwrap_or(jp)
}

fn schwarz_composition(
    q: &AnalyticMap,
    rng: &mut ChaCha8Rng,
) -> AnalyticMap {
    let spec = SchwarzSpec::new(
        rng.gen(),
        1 + rng.gen_range(0..4usize),
        rng.gen_range(0.3..0.85),
    )
    .expect("generated spec is valid");
    q.compose(&random_schwarz(spec))
}

fn summarize(
    index: u32,
    harness: HarnessKind,
    verdict: TheoremVerdict,
) -> InstanceSummary {
    let inconclusive = verdict.is_inconclusive();
    let detail = if !verdict.consistent {
        format!(
            "premise: {} | conclusion: {}",
            verdict.premise.detail, verdict.conclusion.detail
        )
    } else {
        String::new()
    };
    InstanceSummary {
        index,
        harness,
        premise: verdict.premise.outcome,
        conclusion: verdict.conclusion.outcome,
        consistent: verdict.consistent,
        inconclusive,
        detail,
    }
}

fn error_summary(index: u32, harness: HarnessKind, err: String) -> InstanceSummary {
    InstanceSummary {
        index,
        harness,
        premise: Outcome::Inconclusive,
        conclusion: Outcome::Inconclusive,
        consistent: true,
        inconclusive: true,
        detail: format!("harness error: {err}"),
    }
}

fn run_instance(index: u32, cfg: &CampaignConfig) -> InstanceSummary {
    let mut rng = instance_rng(cfg.seed, index);
    let (jp, ps, q) = draw_passing_q(&mut rng, &cfg.grid);
    let conforming = index % 2 == 0;
    match index % 3 {
        0 => {
            let p = if conforming {
                schwarz_composition(&q, &mut rng)
            } else {
                janowski(expanded(jp, &mut rng))
            };
            match verify_dominant(&p, &q, &ps, &cfg.grid) {
                Ok(v) => summarize(index, HarnessKind::Dominant, v),
                Err(e) => error_summary(index, HarnessKind::Dominant, e.to_string()),
            }
        }
        1 => {
            let p = if conforming {
                janowski(expanded(jp, &mut rng))
            } else {
                schwarz_composition(&q, &mut rng)
            };
            match verify_subordinant(&p, &q, &ps, &cfg.grid) {
                Ok(v) => summarize(index, HarnessKind::Subordinant, v),
                Err(e) => error_summary(index, HarnessKind::Subordinant, e.to_string()),
            }
        }
        _ => {
            let q1 = janowski(shrunk(jp, 0.45));
            let q2 = q.clone();
            let p = if conforming {
                janowski(shrunk(jp, 0.7))
            } else if index % 4 < 2 {
                janowski(shrunk(jp, 0.1))
            } else {
                janowski(expanded(jp, &mut rng))
            };
            match verify_sandwich(&p, &q1, &q2, &ps, &cfg.grid) {
                Ok(v) => summarize(index, HarnessKind::Sandwich, v),
                Err(e) => error_summary(index, HarnessKind::Sandwich, e.to_string()),
            }
        }
    }
}

/// Runs the campaign. Instances execute in a work pool with per-instance
/// seeded RNG; results merge deterministically by index.
pub fn run_campaign(cfg: &CampaignConfig) -> CampaignReport {
    let instances: Vec<InstanceSummary> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| run_instance(i, cfg))
        .collect();
    let inconsistent_count = instances.iter().filter(|s| !s.consistent).count() as u32;
    let inconclusive_count = instances.iter().filter(|s| s.inconclusive).count() as u32;
    CampaignReport {
        trials: cfg.trials,
        seed: cfg.seed,
        inconsistent_count,
        inconclusive_count,
        instances,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_campaign_is_clean_and_deterministic() {
        let cfg = CampaignConfig::new(12, 3);
        let r1 = run_campaign(&cfg);
        let r2 = run_campaign(&cfg);
        assert_eq!(r1.inconsistent_count, 0, "{:#?}", r1.instances);
        assert_eq!(
            serde_json::to_string(&r1.instances).unwrap(),
            serde_json::to_string(&r2.instances).unwrap()
        );
        // All three harnesses get exercised.
        for harness in [HarnessKind::Dominant, HarnessKind::Subordinant, HarnessKind::Sandwich] {
            assert!(r1.instances.iter().any(|s| s.harness == harness));
        }
    }
}
