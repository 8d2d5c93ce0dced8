//! Expressions applying the sandwich machinery to normalized univalent
//! functions (`zf'/f` and its convexity combinations) and to Φ-like ratios
//! `zf'/Φ(f)`.
//!
//! Normalized inputs (`f(0) = 0`, `f'(0) = 1`) are best built as `z · u(z)`
//! trees: ratios like `zf'/f` then reduce to `(u + zu')/u` with the removable
//! singularity at the origin cleared structurally instead of numerically.

use serde::Serialize;
use thiserror::Error;

use crate::expr::{AnalyticMap, Complex, EvalError};
use crate::geometry::SampleGrid;
use crate::theorem::ParamSet;

const NORMALIZATION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AppError {
    #[error("f is not normalized: {what} = {value}, expected {expected}")]
    NotNormalized {
        what: &'static str,
        value: Complex,
        expected: Complex,
    },
    #[error("Φ is not normalized: {what} = {value}, expected {expected}")]
    PhiNotNormalized {
        what: &'static str,
        value: Complex,
        expected: Complex,
    },
    #[error("the parameter set carries no λ")]
    LambdaRequired,
    #[error("evaluation failed at z = {z}: {source}")]
    Eval {
        z: Complex,
        #[source]
        source: EvalError,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ApplicationKind {
    Theorem31,
    Cor31,
    Cor32,
    Cor33,
    Philike,
}

/// Selector for the three corollary expressions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorollaryKind {
    Cor31,
    Cor32,
    Cor33,
}

/// An application expression together with the tested ratio
/// (`zf'/f` or `zf'/Φ(f)`).
#[derive(Debug, Clone)]
pub struct ApplicationExpr {
    pub kind: ApplicationKind,
    pub expr: AnalyticMap,
    pub ratio: AnalyticMap,
}

fn check_normalized(f: &AnalyticMap) -> Result<(), AppError> {
    let zero = Complex::new(0.0, 0.0);
    let one = Complex::new(1.0, 0.0);
    let f0 = f.eval(zero).map_err(|source| AppError::Eval { z: zero, source })?;
    if f0.norm() > NORMALIZATION_TOL {
        return Err(AppError::NotNormalized { what: "f(0)", value: f0, expected: zero });
    }
    let d0 = f
        .differentiate()
        .eval(zero)
        .map_err(|source| AppError::Eval { z: zero, source })?;
    if (d0 - one).norm() > NORMALIZATION_TOL {
        return Err(AppError::NotNormalized { what: "f'(0)", value: d0, expected: one });
    }
    Ok(())
}

fn check_phi_normalized(phi: &AnalyticMap) -> Result<(), AppError> {
    let zero = Complex::new(0.0, 0.0);
    let one = Complex::new(1.0, 0.0);
    let p0 = phi.eval(zero).map_err(|source| AppError::Eval { z: zero, source })?;
    if p0.norm() > NORMALIZATION_TOL {
        return Err(AppError::PhiNotNormalized { what: "Φ(0)", value: p0, expected: zero });
    }
    let d0 = phi
        .differentiate()
        .eval(zero)
        .map_err(|source| AppError::Eval { z: zero, source })?;
    if (d0 - one).norm() > NORMALIZATION_TOL {
        return Err(AppError::PhiNotNormalized { what: "Φ'(0)", value: d0, expected: one });
    }
    Ok(())
}

/// `z f''(z) / f'(z)` as a tree; regular at the origin since `f'(0) = 1`.
fn z_second_log_derivative(f: &AnalyticMap) -> AnalyticMap {
    let fp = f.differentiate();
    AnalyticMap::identity().mul(&fp.differentiate()).div(&fp)
}

/// The starlikeness ratio `z f'(z) / f(z)`.
///
/// When `f` is structurally `z · u(z)` the ratio is built as
/// `(u + z u') / u`, eliminating the removable singularity at the origin;
/// otherwise the raw quotient is returned and must be sampled away from 0.
pub fn starlike_ratio(f: &AnalyticMap) -> Result<AnalyticMap, AppError> {
    check_normalized(f)?;
    let z = AnalyticMap::identity();
    if let Some(u) = f.strip_identity_factor() {
        Ok(u.add(&z.mul(&u.differentiate())).div(&u))
    } else {
        Ok(z.mul(&f.differentiate()).div(f))
    }
}

/// The tested expression of the univalent-function application:
/// `(zf'/f)^α ((1−λ) zf'/f + λ (1 + zf''/f'))^μ`.
pub fn theorem31_expr(f: &AnalyticMap, ps: &ParamSet) -> Result<ApplicationExpr, AppError> {
    let lambda = ps.lambda.ok_or(AppError::LambdaRequired)?;
    let ratio = starlike_ratio(f)?;
    let one = Complex::new(1.0, 0.0);
    let convexity = AnalyticMap::one().add(&z_second_log_derivative(f));
    let inner = ratio.scale(one - lambda).add(&convexity.scale(lambda));
    let expr = ratio.pow_re(ps.alpha).mul(&inner.pow_re(ps.mu));
    Ok(ApplicationExpr { kind: ApplicationKind::Theorem31, expr, ratio })
}

/// One of the three corollary expressions:
///
/// * `cor31`: `(1−α) zf'/f + α (1 + zf''/f')`
/// * `cor32`: `(1 + zf''/f') / (zf'/f)`
/// * `cor33`: `zf'/f · (1 + α zf''/f')`
pub fn corollary_expr(
    f: &AnalyticMap,
    selector: CorollaryKind,
    alpha: Complex,
) -> Result<ApplicationExpr, AppError> {
    let ratio = starlike_ratio(f)?;
    let one = Complex::new(1.0, 0.0);
    let zff = z_second_log_derivative(f);
    let (kind, expr) = match selector {
        CorollaryKind::Cor31 => (
            ApplicationKind::Cor31,
            ratio.scale(one - alpha).add(&AnalyticMap::one().add(&zff).scale(alpha)),
        ),
        CorollaryKind::Cor32 => (
            ApplicationKind::Cor32,
            AnalyticMap::one().add(&zff).div(&ratio),
        ),
        CorollaryKind::Cor33 => (
            ApplicationKind::Cor33,
            ratio.mul(&AnalyticMap::one().add(&zff.scale(alpha))),
        ),
    };
    Ok(ApplicationExpr { kind, expr, ratio })
}

/// The Φ-like test expression
/// `zf'/Φ(f) · (1 + α zf''/f' + α z (f' − (Φ(f))') / Φ(f))`
/// together with the ratio `p = zf'/Φ(f)`.
///
/// When both `f = z·u` and `Φ = w·v` are structurally deflatable, the two
/// `z/Φ(f)` occurrences are built as `1/(u · v(f))`, keeping the whole tree
/// regular at the origin.
pub fn philike_expr(
    f: &AnalyticMap,
    phi: &AnalyticMap,
    alpha: Complex,
) -> Result<ApplicationExpr, AppError> {
    check_normalized(f)?;
    check_phi_normalized(phi)?;

    let z = AnalyticMap::identity();
    let fp = f.differentiate();
    let phi_of_f = phi.compose(f);
    let d_phi_of_f = phi_of_f.differentiate();
    let escape = fp.sub(&d_phi_of_f);

    let deflated = match (f.strip_identity_factor(), phi.strip_identity_factor()) {
        (Some(u), Some(v)) => Some(u.mul(&v.compose(f))),
        _ => None,
    };
    let (ratio, drift) = match &deflated {
        Some(den) => (fp.div(den), escape.div(den)),
        None => (
            z.mul(&fp).div(&phi_of_f),
            z.mul(&escape).div(&phi_of_f),
        ),
    };
    let bracket = AnalyticMap::one()
        .add(&z_second_log_derivative(f).scale(alpha))
        .add(&drift.scale(alpha));
    let expr = ratio.mul(&bracket);
    Ok(ApplicationExpr { kind: ApplicationKind::Philike, expr, ratio })
}

/// Max over the grid of the defect between the Φ-like expression and its
/// first-order rewrite `α p² + (1−α) p + α z p'` with `p = zf'/Φ(f)`.
/// The identity is exact, so well-conditioned inputs stay below `1e-9`.
pub fn philike_identity_residual(
    f: &AnalyticMap,
    phi: &AnalyticMap,
    alpha: Complex,
    grid: &SampleGrid,
) -> Result<f64, AppError> {
    let app = philike_expr(f, phi, alpha)?;
    let p = &app.ratio;
    let one = Complex::new(1.0, 0.0);
    let rhs = p
        .mul(p)
        .scale(alpha)
        .add(&p.scale(one - alpha))
        .add(&AnalyticMap::identity().mul(&p.differentiate()).scale(alpha));
    let mut worst: f64 = 0.0;
    for z in grid.points() {
        let lhs_v = app.expr.eval(z).map_err(|source| AppError::Eval { z, source })?;
        let rhs_v = rhs.eval(z).map_err(|source| AppError::Eval { z, source })?;
        worst = worst.max((lhs_v - rhs_v).norm());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    /// f = z/(1-z), built as z · u with u = 1/(1-z).
    fn slit_map() -> AnalyticMap {
        let z = AnalyticMap::identity();
        z.mul(&AnalyticMap::one().div(&AnalyticMap::one().sub(&z)))
    }

    #[test]
    fn starlike_ratio_of_slit_map() {
        let ratio = starlike_ratio(&slit_map()).unwrap();
        // zf'/f = 1/(1-z): value 2 at z = 0.5, value 1 at 0.
        assert!((ratio.eval(c(0.5, 0.0)).unwrap() - c(2.0, 0.0)).norm() < 1e-12);
        assert!((ratio.eval(c(0.0, 0.0)).unwrap() - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn starlike_ratio_of_identity_is_one() {
        let ratio = starlike_ratio(&AnalyticMap::identity()).unwrap();
        for z in [c(0.0, 0.0), c(0.3, 0.4), c(-0.9, 0.0)] {
            assert!((ratio.eval(z).unwrap() - c(1.0, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn starlike_ratio_of_koebe_matches_janowski() {
        let ratio = starlike_ratio(&crate::families::koebe()).unwrap();
        // zf'/f for the Koebe function is (1+z)/(1-z).
        let expected = crate::families::halfplane();
        for z in [c(0.0, 0.0), c(0.5, 0.0), c(-0.3, 0.6)] {
            let got = ratio.eval(z).unwrap();
            let want = expected.eval(z).unwrap();
            assert!((got - want).norm() < 1e-12, "at {z}: {got} vs {want}");
        }
    }

    #[test]
    fn rejects_non_normalized_inputs() {
        let not_a = AnalyticMap::one();
        assert!(matches!(
            starlike_ratio(&not_a),
            Err(AppError::NotNormalized { .. })
        ));
        let wrong_slope = AnalyticMap::identity().scale(c(2.0, 0.0));
        assert!(matches!(
            starlike_ratio(&wrong_slope),
            Err(AppError::NotNormalized { .. })
        ));
    }

    #[test]
    fn theorem31_pure_convexity_case() {
        // alpha = 0, mu = 1, lambda = 1: expression reduces to 1 + zf''/f'.
        let ps = ParamSet::real(0.0, 1.0, 1.0, 0.0, 0.0)
            .unwrap()
            .with_lambda(c(1.0, 0.0));
        let app = theorem31_expr(&slit_map(), &ps).unwrap();
        let v = app.expr.eval(c(0.5, 0.0)).unwrap();
        assert!((v - c(3.0, 0.0)).norm() < 1e-12, "got {v}");
    }

    #[test]
    fn theorem31_requires_lambda() {
        let ps = ParamSet::real(0.0, 1.0, 1.0, 0.0, 0.0).unwrap();
        assert!(matches!(
            theorem31_expr(&slit_map(), &ps),
            Err(AppError::LambdaRequired)
        ));
    }

    #[test]
    fn theorem31_identity_input_is_constant_one() {
        let ps = ParamSet::real(0.7, 0.5, 1.0, 0.0, 0.0)
            .unwrap()
            .with_lambda(c(0.4, 0.2));
        let app = theorem31_expr(&AnalyticMap::identity(), &ps).unwrap();
        for z in [c(0.0, 0.0), c(0.5, 0.0), c(0.2, -0.7)] {
            assert!((app.expr.eval(z).unwrap() - c(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn corollary_fixture_values() {
        let f = slit_map();
        let z = c(0.5, 0.0);
        let v = corollary_expr(&f, CorollaryKind::Cor33, c(1.0, 0.0))
            .unwrap()
            .expr
            .eval(z)
            .unwrap();
        assert!((v - c(6.0, 0.0)).norm() < 1e-12, "cor33 = {v}");
        let v = corollary_expr(&f, CorollaryKind::Cor32, c(1.0, 0.0))
            .unwrap()
            .expr
            .eval(z)
            .unwrap();
        assert!((v - c(1.5, 0.0)).norm() < 1e-12, "cor32 = {v}");
        // cor31 with alpha = 0 degenerates to the starlike ratio.
        let v = corollary_expr(&f, CorollaryKind::Cor31, c(0.0, 0.0))
            .unwrap()
            .expr
            .eval(z)
            .unwrap();
        assert!((v - c(2.0, 0.0)).norm() < 1e-12, "cor31 = {v}");
    }

    #[test]
    fn philike_fixture_values() {
        let f = slit_map();
        let phi = AnalyticMap::identity();
        let z = c(0.5, 0.0);
        let app = philike_expr(&f, &phi, c(1.0, 0.0)).unwrap();
        assert!((app.expr.eval(z).unwrap() - c(6.0, 0.0)).norm() < 1e-12);
        let app = philike_expr(&f, &phi, c(0.5, 0.0)).unwrap();
        assert!((app.expr.eval(z).unwrap() - c(4.0, 0.0)).norm() < 1e-12);
        // Any normalized input: both ratio and bracket are 1 at the origin.
        let app = philike_expr(&f, &phi, c(0.77, -0.3)).unwrap();
        assert!((app.expr.eval(c(0.0, 0.0)).unwrap() - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn philike_rejects_unnormalized_phi() {
        let f = slit_map();
        let phi = AnalyticMap::identity().scale(c(2.0, 0.0));
        assert!(matches!(
            philike_expr(&f, &phi, c(1.0, 0.0)),
            Err(AppError::PhiNotNormalized { .. })
        ));
        let shifted = AnalyticMap::identity().shift(c(0.1, 0.0));
        assert!(matches!(
            philike_expr(&f, &shifted, c(1.0, 0.0)),
            Err(AppError::PhiNotNormalized { .. })
        ));
    }

    #[test]
    fn philike_residual_small_on_default_grid() {
        let grid = SampleGrid::default();
        // Bounded map: z · 1/(1 - 0.8z).
        let z = AnalyticMap::identity();
        let f = z.mul(&AnalyticMap::one().div(
            &AnalyticMap::one().sub(&z.scale(c(0.8, 0.0))),
        ));
        let phi = AnalyticMap::identity();
        let r = philike_identity_residual(&f, &phi, c(1.0, 0.0), &grid).unwrap();
        assert!(r <= 1e-10, "residual {r:e}");

        // Φ(w) = w + w²/2 built as w · (1 + w/2).
        let w = AnalyticMap::identity();
        let phi2 = w.mul(&AnalyticMap::one().add(&w.scale(c(0.5, 0.0))));
        let r = philike_identity_residual(&f, &phi2, c(0.7, 0.0), &grid).unwrap();
        assert!(r <= 1e-9, "residual {r:e}");

        // The slit map blows up like 1/(1-z) near the boundary; its residual
        // scales with the ~1e6 values on the outermost ring.
        let r = philike_identity_residual(&slit_map(), &phi, c(1.0, 0.0), &grid).unwrap();
        assert!(r <= 1e-7, "residual {r:e}");
        let inner = SampleGrid::new(vec![0.5, 0.9], 512).unwrap();
        let r = philike_identity_residual(&slit_map(), &phi, c(1.0, 0.0), &inner).unwrap();
        assert!(r <= 1e-11, "residual {r:e}");
    }
}
