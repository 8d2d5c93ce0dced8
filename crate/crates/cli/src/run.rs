//! Command execution: builds the parameter set and grid, runs the requested
//! harness, writes the JSON report (plus CSV/SVG side artifacts), and maps
//! outcomes to exit codes.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use subord_core::falsify::{run_campaign, CampaignConfig, CampaignReport};
use subord_core::families::{example21_membership, janowski, FamilyError, JanowskiParams};
use subord_core::geometry::boundary_curve;
use subord_core::report::TheoremReport;
use subord_core::theorem::{check_hypotheses, class_membership};
use subord_core::{
    svg_document, test_subordination, verify_sandwich, Complex, ConditionReport, Outcome,
    ParamSet, SampleGrid,
};

use crate::funcspec::{parse_funcspec, resolve_function};
use crate::{Command, CommonOpts};

/// Everything a job needs besides its functions.
struct Settings {
    ps: ParamSet,
    grid: SampleGrid,
    out: PathBuf,
    seed: u64,
}

fn build_params(common: &CommonOpts) -> Result<ParamSet, String> {
    let mut ps = ParamSet::new(common.alpha, common.mu, common.beta, common.gamma, common.delta)
        .map_err(|e| e.to_string())?;
    if let Some(lambda) = common.lambda {
        ps = ps.with_lambda(lambda);
    }
    if let (Some(a), Some(b)) = (common.a, common.b) {
        ps = ps.with_janowski(a, b).map_err(|e| e.to_string())?;
    }
    Ok(ps)
}

fn build_grid(common: &CommonOpts, fallback: SampleGrid) -> Result<SampleGrid, String> {
    match (&common.grid_radii, common.grid_n) {
        (None, None) => Ok(fallback),
        (radii, n) => {
            let radii = radii.clone().unwrap_or_else(|| fallback.radii().to_vec());
            let n = n.unwrap_or(fallback.angular_count());
            SampleGrid::new(radii, n).map_err(|e| e.to_string())
        }
    }
}

fn settings(common: &CommonOpts, fallback_grid: SampleGrid) -> Result<Settings, String> {
    Ok(Settings {
        ps: build_params(common)?,
        grid: build_grid(common, fallback_grid)?,
        out: common.out.clone(),
        seed: common.seed,
    })
}

#[derive(Serialize)]
struct Envelope<T: Serialize> {
    command: String,
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    grid: Option<SampleGrid>,
    #[serde(skip_serializing_if = "Option::is_none")]
    params: Option<ParamSet>,
    result: T,
    timestamp: u64,
}

fn write_report<T: Serialize>(
    out: &Path,
    command: &str,
    seed: u64,
    grid: Option<&SampleGrid>,
    params: Option<&ParamSet>,
    result: T,
) -> Result<PathBuf, String> {
    fs::create_dir_all(out).map_err(|e| format!("cannot create {}: {e}", out.display()))?;
    let envelope = Envelope {
        command: command.to_string(),
        seed,
        grid: grid.cloned(),
        params: params.cloned(),
        result,
        timestamp: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
    };
    let path = out.join("report.json");
    let body = serde_json::to_string_pretty(&envelope)
        .map_err(|e| format!("report serialization failed: {e}"))?;
    fs::write(&path, body + "\n").map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    Ok(path)
}

fn verdict_exit(outcome: Outcome) -> u8 {
    match outcome {
        Outcome::Holds => 0,
        Outcome::Fails => 1,
        Outcome::Inconclusive => 2,
    }
}

pub fn run_command(cmd: Command) -> Result<u8, String> {
    match cmd {
        Command::CheckClass { common, p } => {
            let st = settings(&common, SampleGrid::default())?;
            let target = resolve_function(
                p.as_deref(),
                common.family.as_deref(),
                common.a,
                common.b,
                "p",
            )?;
            let report = class_membership(&target, &st.ps, &st.grid).map_err(|e| e.to_string())?;
            let passed = report.passed();
            println!(
                "check-class: worst margin {:.6e} at {} ({})",
                report.min_value,
                report.argmin,
                if passed { "pass" } else { "fail" }
            );
            let path = write_report(
                &st.out,
                "check-class",
                st.seed,
                Some(&st.grid),
                Some(&st.ps),
                &report,
            )?;
            println!("report: {}", path.display());
            Ok(if passed { 0 } else { 1 })
        }
        Command::CheckHypotheses { common, q } => {
            let st = settings(&common, SampleGrid::default())?;
            let target = resolve_function(
                q.as_deref(),
                common.family.as_deref(),
                common.a,
                common.b,
                "q",
            )?;
            let reports = check_hypotheses(&target, &st.ps, &st.grid).map_err(|e| e.to_string())?;
            for r in &reports {
                println!(
                    "check-hypotheses: {} min {:.6} at {} ({})",
                    r.name,
                    r.min_value,
                    r.argmin,
                    if r.passed() { "pass" } else { "fail" }
                );
            }
            let all_pass = reports.iter().all(ConditionReport::passed);
            let path = write_report(
                &st.out,
                "check-hypotheses",
                st.seed,
                Some(&st.grid),
                Some(&st.ps),
                &reports,
            )?;
            println!("report: {}", path.display());
            Ok(if all_pass { 0 } else { 1 })
        }
        Command::TestSubordination { common, f, g } => {
            let st = settings(&common, SampleGrid::default())?;
            let fm = parse_funcspec(&f)?;
            let gm = parse_funcspec(&g)?;
            let verdict = test_subordination(&fm, &gm, &st.grid).map_err(|e| e.to_string())?;
            println!("test-subordination: {:?} ({})", verdict.outcome, verdict.detail);
            let path = write_report(
                &st.out,
                "test-subordination",
                st.seed,
                Some(&st.grid),
                Some(&st.ps),
                &verdict,
            )?;
            println!("report: {}", path.display());
            Ok(verdict_exit(verdict.outcome))
        }
        Command::VerifySandwich { common, p, q1, q2 } => {
            let st = settings(&common, SampleGrid::default())?;
            let pm = parse_funcspec(&p)?;
            let q1m = parse_funcspec(&q1)?;
            let q2m = parse_funcspec(&q2)?;
            let verdict =
                verify_sandwich(&pm, &q1m, &q2m, &st.ps, &st.grid).map_err(|e| e.to_string())?;
            let code = if !verdict.consistent {
                1
            } else if verdict.is_inconclusive() {
                2
            } else {
                0
            };
            println!(
                "verify-sandwich: premise {:?}, conclusion {:?}, consistent {}",
                verdict.premise.outcome, verdict.conclusion.outcome, verdict.consistent
            );
            let report = TheoremReport::new(verdict, st.grid.clone(), st.ps.clone());
            let path = write_report(&st.out, "verify-sandwich", st.seed, None, None, &report)?;
            println!("report: {}", path.display());
            Ok(code)
        }
        Command::Scan { common } => run_scan(&common),
        Command::Falsify { common, trials } => {
            let st = settings(&common, subord_core::falsify::default_campaign_grid())?;
            let cfg = CampaignConfig { trials, seed: st.seed, grid: st.grid.clone() };
            let report = run_campaign(&cfg);
            let code = falsify_exit(&report);
            println!(
                "falsify: {} trials, {} inconsistent, {} inconclusive",
                report.trials, report.inconsistent_count, report.inconclusive_count
            );
            let path = write_report(
                &st.out,
                "falsify",
                st.seed,
                Some(&st.grid),
                Some(&st.ps),
                &report,
            )?;
            println!("report: {}", path.display());
            Ok(code)
        }
        Command::Plot { common, maps, rho } => {
            let st = settings(&common, SampleGrid::default())?;
            let mut specs = maps;
            if specs.is_empty() {
                if let Some(family) = &common.family {
                    let label = match (common.a, common.b) {
                        (Some(a), Some(b)) => format!("{family}:{a},{b}"),
                        _ => family.clone(),
                    };
                    specs.push(label);
                }
            }
            if specs.is_empty() {
                return Err("plot needs at least one --f SPEC (or --family)".into());
            }
            if !(rho > 0.0 && rho < 1.0) {
                return Err(format!("--rho {rho} outside (0, 1)"));
            }
            let mut curves = Vec::new();
            for spec in &specs {
                let m = parse_funcspec(spec)?;
                let curve = boundary_curve(&m, rho, st.grid.angular_count())
                    .map_err(|e| format!("{spec}: {e}"))?;
                curves.push(curve);
            }
            let svg = svg_document(&curves, &specs);
            fs::create_dir_all(&st.out)
                .map_err(|e| format!("cannot create {}: {e}", st.out.display()))?;
            let svg_path = st.out.join("plot.svg");
            fs::write(&svg_path, svg)
                .map_err(|e| format!("cannot write {}: {e}", svg_path.display()))?;
            println!("svg: {}", svg_path.display());
            #[derive(Serialize)]
            struct PlotResult {
                svg: String,
                curves: Vec<String>,
                rho: f64,
            }
            let path = write_report(
                &st.out,
                "plot",
                st.seed,
                Some(&st.grid),
                Some(&st.ps),
                PlotResult { svg: "plot.svg".into(), curves: specs.clone(), rho },
            )?;
            println!("report: {}", path.display());
            Ok(0)
        }
    }
}

fn falsify_exit(report: &CampaignReport) -> u8 {
    if report.inconsistent_count > 0 {
        1
    } else if report.trials > 0
        && report.inconclusive_count as f64 / report.trials as f64 > 0.05
    {
        2
    } else {
        0
    }
}

#[derive(Serialize)]
struct ScanRow {
    a: f64,
    b: f64,
    cond22_min: f64,
    cond23_min: f64,
    qstar_min: f64,
    class_pass: bool,
    closed_form_1: Option<bool>,
    closed_form_2: Option<bool>,
}

#[derive(Serialize)]
struct ScanResult {
    rows: usize,
    implication_violations: Vec<(f64, f64)>,
    csv: String,
}

/// Sweeps A in {0.1..0.9} × B in {−0.9..−0.1} with the parameter set from
/// the flags, writing one CSV row per point. The closed-form conditions are
/// sufficient for membership, so a row where the first condition holds but
/// the numeric class check fails counts as an implication violation.
fn run_scan(common: &CommonOpts) -> Result<u8, String> {
    let st = settings(common, SampleGrid::default())?;
    fs::create_dir_all(&st.out)
        .map_err(|e| format!("cannot create {}: {e}", st.out.display()))?;
    let csv_path = st.out.join("scan.csv");
    let mut writer = csv::Writer::from_path(&csv_path)
        .map_err(|e| format!("cannot write {}: {e}", csv_path.display()))?;
    writer
        .write_record([
            "A",
            "B",
            "alpha",
            "beta_re",
            "beta_im",
            "gamma_re",
            "gamma_im",
            "delta_re",
            "delta_im",
            "mu",
            "cond22_min",
            "cond23_min",
            "qstar_min",
            "closed_form_1",
            "closed_form_2",
        ])
        .map_err(|e| e.to_string())?;

    let mut rows = Vec::new();
    let mut violations = Vec::new();
    for ai in 1..=9 {
        for bi in 1..=9 {
            let a = ai as f64 / 10.0;
            let b = -(bi as f64) / 10.0;
            let jp = JanowskiParams::new(a, b).map_err(|e| e.to_string())?;
            let q = janowski(jp);
            let reports = check_hypotheses(&q, &st.ps, &st.grid).map_err(|e| e.to_string())?;
            let class = class_membership(&q, &st.ps, &st.grid).map_err(|e| e.to_string())?;
            let closed = match example21_membership(jp, &st.ps) {
                Ok((first, second)) => (Some(first), Some(second)),
                Err(FamilyError::DegenerateDenominator) => (None, None),
                Err(e) => return Err(e.to_string()),
            };
            if closed.0 == Some(true) && !class.passed() {
                violations.push((a, b));
            }
            let fmt_bool = |v: Option<bool>| match v {
                Some(true) => "true".to_string(),
                Some(false) => "false".to_string(),
                None => "degenerate".to_string(),
            };
            writer
                .write_record([
                    format!("{a}"),
                    format!("{b}"),
                    format!("{}", st.ps.alpha),
                    format!("{}", st.ps.beta.re),
                    format!("{}", st.ps.beta.im),
                    format!("{}", st.ps.gamma.re),
                    format!("{}", st.ps.gamma.im),
                    format!("{}", st.ps.delta.re),
                    format!("{}", st.ps.delta.im),
                    format!("{}", st.ps.mu),
                    format!("{}", reports[0].min_value),
                    format!("{}", reports[1].min_value),
                    format!("{}", reports[2].min_value),
                    fmt_bool(closed.0),
                    fmt_bool(closed.1),
                ])
                .map_err(|e| e.to_string())?;
            rows.push(ScanRow {
                a,
                b,
                cond22_min: reports[0].min_value,
                cond23_min: reports[1].min_value,
                qstar_min: reports[2].min_value,
                class_pass: class.passed(),
                closed_form_1: closed.0,
                closed_form_2: closed.1,
            });
        }
    }
    writer.flush().map_err(|e| e.to_string())?;
    println!("scan: {} rows, {} implication violations", rows.len(), violations.len());
    println!("csv: {}", csv_path.display());
    let code = if violations.is_empty() { 0 } else { 1 };
    let result = ScanResult {
        rows: rows.len(),
        implication_violations: violations,
        csv: "scan.csv".into(),
    };
    let path = write_report(&st.out, "scan", st.seed, Some(&st.grid), Some(&st.ps), &result)?;
    println!("report: {}", path.display());
    Ok(code)
}

/// JSON mirror of the command line; any flag can appear as a field.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RunConfig {
    command: String,
    #[serde(default)]
    family: Option<String>,
    #[serde(default, rename = "A")]
    a: Option<f64>,
    #[serde(default, rename = "B")]
    b: Option<f64>,
    #[serde(default)]
    alpha: Option<f64>,
    #[serde(default)]
    mu: Option<f64>,
    #[serde(default)]
    beta: Option<[f64; 2]>,
    #[serde(default)]
    gamma: Option<[f64; 2]>,
    #[serde(default)]
    delta: Option<[f64; 2]>,
    #[serde(default)]
    lambda: Option<[f64; 2]>,
    #[serde(default)]
    f: Option<String>,
    #[serde(default)]
    g: Option<String>,
    #[serde(default)]
    p: Option<String>,
    #[serde(default)]
    q: Option<String>,
    #[serde(default)]
    q1: Option<String>,
    #[serde(default)]
    q2: Option<String>,
    #[serde(default)]
    maps: Option<Vec<String>>,
    #[serde(default)]
    grid_radii: Option<Vec<f64>>,
    #[serde(default)]
    grid_n: Option<usize>,
    #[serde(default)]
    out: Option<PathBuf>,
    #[serde(default)]
    seed: Option<u64>,
    #[serde(default)]
    trials: Option<u32>,
    #[serde(default)]
    rho: Option<f64>,
}

pub fn run_from_config(path: &Path) -> Result<u8, String> {
    let body =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let cfg: RunConfig =
        serde_json::from_str(&body).map_err(|e| format!("bad config {}: {e}", path.display()))?;
    let cx = |v: Option<[f64; 2]>, fallback: Complex| {
        v.map(|[re, im]| Complex::new(re, im)).unwrap_or(fallback)
    };
    let common = CommonOpts {
        family: cfg.family,
        a: cfg.a,
        b: cfg.b,
        alpha: cfg.alpha.unwrap_or(1.0),
        mu: cfg.mu.unwrap_or(1.0),
        beta: cx(cfg.beta, Complex::new(1.0, 0.0)),
        gamma: cx(cfg.gamma, Complex::new(0.0, 0.0)),
        delta: cx(cfg.delta, Complex::new(0.0, 0.0)),
        lambda: cfg.lambda.map(|[re, im]| Complex::new(re, im)),
        grid_radii: cfg.grid_radii,
        grid_n: cfg.grid_n,
        out: cfg.out.unwrap_or_else(|| PathBuf::from(".")),
        seed: cfg.seed.unwrap_or(0),
    };
    let command = match cfg.command.as_str() {
        "check-class" => Command::CheckClass { common, p: cfg.p },
        "check-hypotheses" => Command::CheckHypotheses { common, q: cfg.q },
        "test-subordination" => Command::TestSubordination {
            common,
            f: cfg.f.ok_or("test-subordination config needs `f`")?,
            g: cfg.g.ok_or("test-subordination config needs `g`")?,
        },
        "verify-sandwich" => Command::VerifySandwich {
            common,
            p: cfg.p.ok_or("verify-sandwich config needs `p`")?,
            q1: cfg.q1.ok_or("verify-sandwich config needs `q1`")?,
            q2: cfg.q2.ok_or("verify-sandwich config needs `q2`")?,
        },
        "scan" => Command::Scan { common },
        "falsify" => Command::Falsify { common, trials: cfg.trials.unwrap_or(500) },
        "plot" => Command::Plot {
            common,
            maps: cfg.maps.unwrap_or_default(),
            rho: cfg.rho.unwrap_or(0.9),
        },
        other => return Err(format!("unknown command `{other}` in config")),
    };
    run_command(command)
}
