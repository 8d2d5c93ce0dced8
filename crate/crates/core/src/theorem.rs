//! Class membership, the power transform and its flat rewrite, the auxiliary
//! functions, hypothesis conditions, and the dominant / subordinant /
//! sandwich verification harnesses.
//!
//! Throughout, `p` and `q` are analytic with `p(0) = q(0) = 1` and the
//! parameter bundle is `(α, β, γ, δ, μ)` with `0 < μ ≤ 1`, `α + μ ≥ 0`,
//! `β ≠ 0`. The central transform is
//!
//! ```text
//! P(z) = p(z)^α (p(z) + δ + z p'(z) / (β p(z) + γ))^μ
//! ```
//!
//! with principal powers, and its flat rewrite
//!
//! ```text
//! p^(α/μ+1) + δ p^(α/μ) + p^(α/μ) · z p' / (β p + γ)
//! ```
//!
//! The harnesses exercise the implication chains as falsification targets:
//! a run is *inconsistent* exactly when the sampled premise holds, every
//! hypothesis condition passes, and the sampled conclusion fails. The forward
//! implications cannot be proven numerically, only contradicted; `consistent
//! = true` means "not contradicted here".

use serde::Serialize;
use thiserror::Error;

use crate::expr::{branch_margin, AnalyticMap, Complex, EvalError};
use crate::geometry::{
    boundary_curve, has_self_intersection, min_real_part, test_subordination, GeometryError,
    SampleGrid, RHO_MAX,
};
use crate::report::{ConditionReport, SubordinationVerdict, TheoremVerdict};

/// Hard floor for the nonvanishing checks `|p| > 0` and `|βp + γ| > 0`.
pub const NONZERO_FLOOR: f64 = 1e-9;

/// Soft branch margin below which class membership raises a flag.
pub const SOFT_BRANCH_MARGIN: f64 = 1e-3;

/// Hypothesis minima below this add a borderline flag to the report.
pub const NEAR_ZERO_FLAG: f64 = 1e-4;

const INTEGER_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TheoremError {
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("center mismatch: value at 0 is {value}, expected 1")]
    CenterMismatch { value: Complex },
    #[error("evaluation failed at z = {z}: {source}")]
    Eval {
        z: Complex,
        #[source]
        source: EvalError,
    },
    #[error("{role} fails class membership (worst margin {min_value:e} at {argmin})")]
    NotInClass {
        role: String,
        min_value: f64,
        argmin: Complex,
    },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Parameter bundle `(α, β, γ, δ, μ)` with the optional `λ` of the
/// applications and optional Janowski `(A, B)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParamSet {
    pub alpha: f64,
    pub mu: f64,
    pub beta: Complex,
    pub gamma: Complex,
    pub delta: Complex,
    pub lambda: Option<Complex>,
    pub a: Option<f64>,
    pub b: Option<f64>,
}

impl ParamSet {
    pub fn new(
        alpha: f64,
        mu: f64,
        beta: Complex,
        gamma: Complex,
        delta: Complex,
    ) -> Result<Self, TheoremError> {
        if !(mu > 0.0 && mu <= 1.0) {
            return Err(TheoremError::BadParams(format!("mu = {mu} outside (0, 1]")));
        }
        if !(alpha + mu >= 0.0) {
            return Err(TheoremError::BadParams(format!(
                "alpha + mu = {} is negative",
                alpha + mu
            )));
        }
        if beta.norm_sqr() == 0.0 {
            return Err(TheoremError::BadParams("beta must be nonzero".into()));
        }
        Ok(Self { alpha, mu, beta, gamma, delta, lambda: None, a: None, b: None })
    }

    /// Convenience constructor for real parameters.
    pub fn real(alpha: f64, mu: f64, beta: f64, gamma: f64, delta: f64) -> Result<Self, TheoremError> {
        Self::new(
            alpha,
            mu,
            Complex::new(beta, 0.0),
            Complex::new(gamma, 0.0),
            Complex::new(delta, 0.0),
        )
    }

    pub fn with_lambda(mut self, lambda: Complex) -> Self {
        self.lambda = Some(lambda);
        self
    }

    pub fn with_janowski(mut self, a: f64, b: f64) -> Result<Self, TheoremError> {
        if !(-1.0 < b && b < a && a <= 1.0) {
            return Err(TheoremError::BadParams(format!(
                "(A, B) = ({a}, {b}) violates -1 < B < A <= 1"
            )));
        }
        self.a = Some(a);
        self.b = Some(b);
        Ok(self)
    }

    /// The exponent ratio `α/μ`.
    pub fn exponent_ratio(&self) -> f64 {
        self.alpha / self.mu
    }

    pub fn alpha_is_integer(&self) -> bool {
        (self.alpha - self.alpha.round()).abs() < INTEGER_TOL
    }

    pub fn mu_is_integer(&self) -> bool {
        (self.mu - self.mu.round()).abs() < INTEGER_TOL
    }
}

/// Auxiliary functions of the dominant machinery:
/// `R = zq'/(βq+γ)`, `Q = q^(α/μ) R`, `h = q^(α/μ+1) + δ q^(α/μ) + Q`.
#[derive(Debug, Clone)]
pub struct AuxiliaryTriple {
    pub r: AnalyticMap,
    pub q_star: AnalyticMap,
    pub h: AnalyticMap,
}

fn ident() -> AnalyticMap {
    AnalyticMap::identity()
}

/// `z m'(z)` as a tree.
fn z_times_derivative(m: &AnalyticMap) -> AnalyticMap {
    ident().mul(&m.differentiate())
}

/// `z m'(z) / m(z)` as a tree.
fn z_log_derivative(m: &AnalyticMap) -> AnalyticMap {
    z_times_derivative(m).div(m)
}

/// `β p + γ` as a tree.
fn beta_gamma_line(p: &AnalyticMap, ps: &ParamSet) -> AnalyticMap {
    p.scale(ps.beta).shift(ps.gamma)
}

/// `R(z) = z p'(z) / (β p(z) + γ)`.
pub fn resolvent(p: &AnalyticMap, ps: &ParamSet) -> AnalyticMap {
    z_times_derivative(p).div(&beta_gamma_line(p, ps))
}

/// The bracketed factor `p + δ + z p' / (β p + γ)`.
pub fn bracket(p: &AnalyticMap, ps: &ParamSet) -> AnalyticMap {
    p.add(&AnalyticMap::constant(ps.delta)).add(&resolvent(p, ps))
}

/// The power transform `P = p^α (p + δ + zp'/(βp+γ))^μ` with principal powers.
pub fn transform_p(p: &AnalyticMap, ps: &ParamSet) -> AnalyticMap {
    p.pow_re(ps.alpha).mul(&bracket(p, ps).pow_re(ps.mu))
}

/// The flat rewrite `p^(s+1) + δ p^s + p^s zp'/(βp+γ)` with `s = α/μ`.
pub fn transform_flat(p: &AnalyticMap, ps: &ParamSet) -> AnalyticMap {
    let s = ps.exponent_ratio();
    let p_s = p.pow_re(s);
    p.pow_re(s + 1.0)
        .add(&p_s.scale(ps.delta))
        .add(&p_s.mul(&resolvent(p, ps)))
}

/// Builds `R`, `Q`, and `h`. The tree for `h` is assembled exactly like
/// [`transform_flat`], so the two agree bit-for-bit.
pub fn build_auxiliaries(q: &AnalyticMap, ps: &ParamSet) -> AuxiliaryTriple {
    let s = ps.exponent_ratio();
    let r = resolvent(q, ps);
    let q_s = q.pow_re(s);
    let q_star = q_s.mul(&r);
    let h = q.pow_re(s + 1.0).add(&q_s.scale(ps.delta)).add(&q_star);
    AuxiliaryTriple { r, q_star, h }
}

/// The three hypothesis expressions whose real parts must stay positive:
/// `(βq+γ)(1 + α/μ + αδ/(μq))`, `(α/μ) zq'/q + zR'/R`, and `zQ'/Q`.
pub fn hypothesis_exprs(
    q: &AnalyticMap,
    ps: &ParamSet,
) -> (AnalyticMap, AnalyticMap, AnalyticMap) {
    let s = ps.exponent_ratio();
    let aux = build_auxiliaries(q, ps);
    let adm = ps.delta * Complex::new(ps.alpha / ps.mu, 0.0);
    let cond22 = beta_gamma_line(q, ps).mul(
        &AnalyticMap::constant(Complex::new(1.0 + s, 0.0))
            .add(&AnalyticMap::constant(adm).div(q)),
    );
    let cond23 = z_log_derivative(q)
        .scale(Complex::new(s, 0.0))
        .add(&z_log_derivative(&aux.r));
    let q_starlike = z_log_derivative(&aux.q_star);
    (cond22, cond23, q_starlike)
}

/// Numerical membership check for the transform class: `p(0) = 1`, `p` and
/// `βp + γ` nonvanishing on the grid, and (for non-integer exponents) both
/// power bases clear of the branch cut. `min_value` is the worst headroom
/// over all checks; raw branch margins below `1e-3` add soft flags.
pub fn class_membership(
    p: &AnalyticMap,
    ps: &ParamSet,
    grid: &SampleGrid,
) -> Result<ConditionReport, TheoremError> {
    let zero = Complex::new(0.0, 0.0);
    let p0 = p.eval(zero).map_err(|source| TheoremError::Eval { z: zero, source })?;
    if (p0 - Complex::new(1.0, 0.0)).norm() > NONZERO_FLOOR {
        return Err(TheoremError::CenterMismatch { value: p0 });
    }

    let check_p_cut = !ps.alpha_is_integer();
    let check_bracket_cut = !ps.mu_is_integer();
    let p_prime = p.differentiate();

    let mut min_value = f64::INFINITY;
    let mut argmin = zero;
    let mut worst_p_cut = f64::INFINITY;
    let mut worst_bracket_cut = f64::INFINITY;
    let track = |margin: f64, z: Complex, min_value: &mut f64, argmin: &mut Complex| {
        if margin < *min_value {
            *min_value = margin;
            *argmin = z;
        }
    };

    for z in grid.points() {
        let pv = p.eval(z).map_err(|source| TheoremError::Eval { z, source })?;
        track(pv.norm() - NONZERO_FLOOR, z, &mut min_value, &mut argmin);
        let line = ps.beta * pv + ps.gamma;
        track(line.norm() - NONZERO_FLOOR, z, &mut min_value, &mut argmin);
        if check_p_cut {
            let m = branch_margin(pv);
            worst_p_cut = worst_p_cut.min(m);
            track(m - crate::expr::BRANCH_CUT_MARGIN, z, &mut min_value, &mut argmin);
        }
        if check_bracket_cut && line.norm() > NONZERO_FLOOR {
            let dpv = p_prime.eval(z).map_err(|source| TheoremError::Eval { z, source })?;
            let bracket_v = pv + ps.delta + z * dpv / line;
            let m = branch_margin(bracket_v);
            worst_bracket_cut = worst_bracket_cut.min(m);
            track(m - crate::expr::BRANCH_CUT_MARGIN, z, &mut min_value, &mut argmin);
        }
    }

    let mut soft_flags = Vec::new();
    if check_p_cut && worst_p_cut < SOFT_BRANCH_MARGIN {
        soft_flags.push(format!(
            "branch margin of p dips to {worst_p_cut:.3e}, below soft margin {SOFT_BRANCH_MARGIN:e}"
        ));
    }
    if check_bracket_cut && worst_bracket_cut < SOFT_BRANCH_MARGIN {
        soft_flags.push(format!(
            "branch margin of the bracket dips to {worst_bracket_cut:.3e}, below soft margin {SOFT_BRANCH_MARGIN:e}"
        ));
    }
    Ok(ConditionReport::new("class-membership", min_value, argmin, soft_flags))
}

fn flag_near_zero(report: ConditionReport) -> ConditionReport {
    let mut report = report;
    if report.min_value > 0.0 && report.min_value < NEAR_ZERO_FLAG {
        report.soft_flags.push(format!(
            "minimum {:.3e} is within {NEAR_ZERO_FLAG:e} of zero",
            report.min_value
        ));
    }
    report
}

/// Evaluates the three hypothesis conditions of the dominant theorem.
///
/// `cond-2.2` is sampled on the grid as given. `cond-2.3` and `Q-starlike`
/// have a removable singularity at the origin (`R` and `Q` vanish there), so
/// they are sampled on the grid extended by the inner radius ladder
/// `r0/8, r0/4, r0/2`; the paper's quantifier runs over the open disk where
/// the minimum is approached at the boundary, not the center.
pub fn check_hypotheses(
    q: &AnalyticMap,
    ps: &ParamSet,
    grid: &SampleGrid,
) -> Result<Vec<ConditionReport>, TheoremError> {
    let (cond22, cond23, q_starlike) = hypothesis_exprs(q, ps);
    let inner = grid.with_inner_ladder();
    let r22 = min_real_part(&cond22, grid)?.renamed("cond-2.2");
    let r23 = min_real_part(&cond23, &inner)?.renamed("cond-2.3");
    let rqs = min_real_part(&q_starlike, &inner)?.renamed("Q-starlike");
    Ok(vec![flag_near_zero(r22), flag_near_zero(r23), flag_near_zero(rqs)])
}

fn require_in_class(
    m: &AnalyticMap,
    ps: &ParamSet,
    grid: &SampleGrid,
    role: &str,
) -> Result<(), TheoremError> {
    let report = class_membership(m, ps, grid)?;
    if !report.passed() {
        return Err(TheoremError::NotInClass {
            role: role.to_string(),
            min_value: report.min_value,
            argmin: report.argmin,
        });
    }
    Ok(())
}

/// Univalence proxy for the flat form: sample its outermost boundary curve
/// and scan for self-intersections. Returns a downgrade reason on failure.
fn flat_univalence_proxy(
    flat: &AnalyticMap,
    grid: &SampleGrid,
) -> Option<String> {
    match boundary_curve(flat, RHO_MAX, grid.angular_count()) {
        Ok(curve) => {
            if has_self_intersection(&curve) {
                Some("univalence proxy failed: flat form boundary self-intersects".into())
            } else {
                None
            }
        }
        Err(e) => Some(format!("univalence proxy could not sample the flat form: {e}")),
    }
}

/// Dominant harness: premise `P(p) ≺ P(q)`, hypotheses on `q`,
/// conclusion `p ≺ q`.
pub fn verify_dominant(
    p: &AnalyticMap,
    q: &AnalyticMap,
    ps: &ParamSet,
    grid: &SampleGrid,
) -> Result<TheoremVerdict, TheoremError> {
    require_in_class(p, ps, grid, "p")?;
    require_in_class(q, ps, grid, "q")?;
    let premise = test_subordination(&transform_p(p, ps), &transform_p(q, ps), grid)?;
    let hypotheses = check_hypotheses(q, ps, grid)?;
    let conclusion = test_subordination(p, q, grid)?;
    Ok(TheoremVerdict::new(premise, hypotheses, conclusion))
}

/// Subordinant harness: roles swap, `p` is the superordinate side. Premise
/// `P(q) ≺ P(p)`, hypotheses on `q`, conclusion `q ≺ p`. The flat form of
/// `p` must pass the univalence proxy or the premise is downgraded to
/// inconclusive.
pub fn verify_subordinant(
    p: &AnalyticMap,
    q: &AnalyticMap,
    ps: &ParamSet,
    grid: &SampleGrid,
) -> Result<TheoremVerdict, TheoremError> {
    require_in_class(p, ps, grid, "p")?;
    require_in_class(q, ps, grid, "q")?;
    let hypotheses = check_hypotheses(q, ps, grid)?;
    let premise = match flat_univalence_proxy(&transform_flat(p, ps), grid) {
        Some(reason) => SubordinationVerdict::inconclusive(reason),
        None => test_subordination(&transform_p(q, ps), &transform_p(p, ps), grid)?,
    };
    let conclusion = test_subordination(q, p, grid)?;
    Ok(TheoremVerdict::new(premise, hypotheses, conclusion))
}

fn combine_chains(
    first: SubordinationVerdict,
    second: SubordinationVerdict,
    first_name: &str,
    second_name: &str,
) -> SubordinationVerdict {
    for (v, name) in [(&first, first_name), (&second, second_name)] {
        if v.is_fails() {
            return SubordinationVerdict::fails(
                v.witness_z.unwrap(),
                v.witness_w.unwrap(),
                format!("{name}: {}", v.detail),
            );
        }
    }
    for (v, name) in [(&first, first_name), (&second, second_name)] {
        if v.is_inconclusive() {
            return SubordinationVerdict::inconclusive(format!("{name}: {}", v.detail));
        }
    }
    SubordinationVerdict::holds(format!("{first_name} and {second_name} both hold"))
}

/// Sandwich harness: premise `P(q1) ≺ P(p)` and `P(p) ≺ P(q2)`, hypotheses
/// on both `q1` and `q2`, conclusion `q1 ≺ p ≺ q2`.
pub fn verify_sandwich(
    p: &AnalyticMap,
    q1: &AnalyticMap,
    q2: &AnalyticMap,
    ps: &ParamSet,
    grid: &SampleGrid,
) -> Result<TheoremVerdict, TheoremError> {
    require_in_class(p, ps, grid, "p")?;
    require_in_class(q1, ps, grid, "q1")?;
    require_in_class(q2, ps, grid, "q2")?;
    let mut hypotheses = Vec::new();
    for r in check_hypotheses(q1, ps, grid)? {
        let name = format!("q1:{}", r.name);
        hypotheses.push(r.renamed(name));
    }
    for r in check_hypotheses(q2, ps, grid)? {
        let name = format!("q2:{}", r.name);
        hypotheses.push(r.renamed(name));
    }

    let p_transform = transform_p(p, ps);
    let premise = match flat_univalence_proxy(&transform_flat(p, ps), grid) {
        Some(reason) => SubordinationVerdict::inconclusive(reason),
        None => {
            let lower = test_subordination(&transform_p(q1, ps), &p_transform, grid)?;
            let upper = test_subordination(&p_transform, &transform_p(q2, ps), grid)?;
            combine_chains(lower, upper, "h1 chain", "h2 chain")
        }
    };
    let lower = test_subordination(q1, p, grid)?;
    let upper = test_subordination(p, q2, grid)?;
    let conclusion = combine_chains(lower, upper, "q1 chain", "q2 chain");
    Ok(TheoremVerdict::new(premise, hypotheses, conclusion))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn janowski(a: f64, b: f64) -> AnalyticMap {
        let z = ident();
        z.scale(c(a, 0.0)).shift(c(1.0, 0.0)).div(&z.scale(c(b, 0.0)).shift(c(1.0, 0.0)))
    }

    fn unit_params() -> ParamSet {
        ParamSet::real(1.0, 1.0, 1.0, 0.0, 0.0).unwrap()
    }

    #[test]
    fn param_invariants_enforced() {
        assert!(ParamSet::real(1.0, 0.0, 1.0, 0.0, 0.0).is_err());
        assert!(ParamSet::real(1.0, 1.5, 1.0, 0.0, 0.0).is_err());
        assert!(ParamSet::real(-2.0, 1.0, 1.0, 0.0, 0.0).is_err());
        assert!(ParamSet::real(1.0, 1.0, 0.0, 0.0, 0.0).is_err());
        assert!(ParamSet::real(-1.0, 1.0, 1.0, 0.0, 0.0).is_ok());
        assert!(unit_params().with_janowski(0.5, 0.6).is_err());
    }

    #[test]
    fn transform_p_on_janowski_fixture() {
        // p = (1+0.5z)/(1-0.5z), unit parameters, z = 0.5: P = p^2 + zp' = 11/3.
        let p = janowski(0.5, -0.5);
        let tp = transform_p(&p, &unit_params());
        let v = tp.eval(c(0.5, 0.0)).unwrap();
        assert!((v - c(11.0 / 3.0, 0.0)).norm() < 1e-12, "P(0.5) = {v}");
    }

    #[test]
    fn transform_p_at_center_is_one_for_zero_delta() {
        let p = janowski(0.3, -0.7);
        let ps = ParamSet::real(0.5, 0.5, 2.0, 0.5, 0.0).unwrap();
        let v = transform_p(&p, &ps).eval(c(0.0, 0.0)).unwrap();
        assert!((v - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn flat_fixture_values() {
        let p = janowski(0.5, -0.5);
        let flat = transform_flat(&p, &unit_params());
        let v = flat.eval(c(0.5, 0.0)).unwrap();
        assert!((v - c(11.0 / 3.0, 0.0)).norm() < 1e-12);
        // delta shifts the center value: 1 + delta at z = 0.
        let ps = ParamSet::real(1.0, 1.0, 1.0, 0.0, 2.0).unwrap();
        let v0 = transform_flat(&p, &ps).eval(c(0.0, 0.0)).unwrap();
        assert!((v0 - c(3.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn auxiliaries_fixture_values() {
        let q = janowski(0.5, -0.5);
        let aux = build_auxiliaries(&q, &unit_params());
        let z = c(0.5, 0.0);
        let rv = aux.r.eval(z).unwrap();
        let qv = aux.q_star.eval(z).unwrap();
        let hv = aux.h.eval(z).unwrap();
        assert!((rv - c(8.0 / 15.0, 0.0)).norm() < 1e-12, "R = {rv}");
        assert!((qv - c(8.0 / 9.0, 0.0)).norm() < 1e-12, "Q = {qv}");
        assert!((hv - c(11.0 / 3.0, 0.0)).norm() < 1e-12, "h = {hv}");
        let z0 = c(0.0, 0.0);
        assert_eq!(aux.r.eval(z0).unwrap(), c(0.0, 0.0));
        assert_eq!(aux.q_star.eval(z0).unwrap(), c(0.0, 0.0));
        assert_eq!(aux.h.eval(z0).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn hypotheses_on_janowski_fixture() {
        let q = janowski(0.5, -0.5);
        let reports = check_hypotheses(&q, &unit_params(), &SampleGrid::default()).unwrap();
        assert_eq!(reports.len(), 3);
        let by_name: Vec<(&str, f64)> =
            reports.iter().map(|r| (r.name.as_str(), r.min_value)).collect();
        assert_eq!(by_name[0].0, "cond-2.2");
        assert!((by_name[0].1 - 0.6668).abs() < 2e-3, "cond-2.2 min = {}", by_name[0].1);
        assert_eq!(by_name[1].0, "cond-2.3");
        assert!((by_name[1].1 - 0.3338).abs() < 2e-3, "cond-2.3 min = {}", by_name[1].1);
        assert_eq!(by_name[2].0, "Q-starlike");
        assert!((by_name[2].1 - 0.3338).abs() < 2e-3, "Q-starlike min = {}", by_name[2].1);
        assert!(reports.iter().all(ConditionReport::passed));
    }

    #[test]
    fn class_membership_fixtures() {
        let grid = SampleGrid::default();
        let ps = unit_params();
        let q = janowski(0.5, -0.5);
        assert!(class_membership(&q, &ps, &grid).unwrap().passed());

        let affine = ident().shift(c(1.0, 0.0));
        assert!(class_membership(&affine, &ps, &grid).unwrap().passed());

        // 1 - 2z vanishes at z = 0.5, which the default grid hits exactly.
        let bad = AnalyticMap::one().sub(&ident().scale(c(2.0, 0.0)));
        let report = class_membership(&bad, &ps, &grid).unwrap();
        assert!(!report.passed());
        assert!((report.argmin - c(0.5, 0.0)).norm() < 1e-9, "argmin = {}", report.argmin);
    }

    #[test]
    fn class_membership_rejects_center_mismatch() {
        let ps = unit_params();
        let m = ident().shift(c(2.0, 0.0));
        assert!(matches!(
            class_membership(&m, &ps, &SampleGrid::default()),
            Err(TheoremError::CenterMismatch { .. })
        ));
    }

    #[test]
    fn dominant_reflexive_is_consistent() {
        let q = janowski(0.5, -0.5);
        let grid = SampleGrid::new(vec![0.5, 0.9], 256).unwrap();
        let v = verify_dominant(&q, &q, &unit_params(), &grid).unwrap();
        assert!(v.premise.is_holds());
        assert!(v.conclusion.is_holds());
        assert!(v.consistent);
    }

    #[test]
    fn dominant_schwarz_composition_holds() {
        let q = janowski(0.5, -0.5);
        let p = q.compose(&ident().scale(c(0.5, 0.0)));
        let grid = SampleGrid::new(vec![0.5, 0.9], 256).unwrap();
        let v = verify_dominant(&p, &q, &unit_params(), &grid).unwrap();
        assert!(v.conclusion.is_holds(), "{:?}", v.conclusion);
        assert!(v.consistent);
    }

    #[test]
    fn dominant_oversized_p_fails_conclusion_consistently() {
        let p = janowski(0.9, -0.9);
        let q = janowski(0.5, -0.5);
        let grid = SampleGrid::new(vec![0.5, 0.9], 256).unwrap();
        let v = verify_dominant(&p, &q, &unit_params(), &grid).unwrap();
        assert!(v.conclusion.is_fails(), "{:?}", v.conclusion);
        assert!(!v.premise.is_holds(), "premise must not hold: {:?}", v.premise);
        assert!(v.consistent);
    }

    #[test]
    fn subordinant_roles_swapped() {
        let q = janowski(0.3, -0.3);
        let p = janowski(0.6, -0.6);
        let grid = SampleGrid::new(vec![0.5, 0.9], 256).unwrap();
        let v = verify_subordinant(&p, &q, &unit_params(), &grid).unwrap();
        assert!(v.conclusion.is_holds(), "q ≺ p expected: {:?}", v.conclusion);
        assert!(v.consistent);
    }

    #[test]
    fn sandwich_nested_janowski() {
        let q1 = janowski(0.2, -0.2);
        let p = janowski(0.5, -0.5);
        let q2 = janowski(0.8, -0.8);
        let ps = unit_params();
        let grid = SampleGrid::new(vec![0.5, 0.9], 256).unwrap();
        let v = verify_sandwich(&p, &q1, &q2, &ps, &grid).unwrap();
        assert!(v.conclusion.is_holds(), "{:?}", v.conclusion);
        assert!(v.consistent);

        // Swapping the bounds reverses the nesting and must fail with a witness.
        let v = verify_sandwich(&p, &q2, &q1, &ps, &grid).unwrap();
        assert!(v.conclusion.is_fails(), "{:?}", v.conclusion);
        assert!(v.conclusion.witness_z.is_some());
        assert!(v.consistent);
    }
}
