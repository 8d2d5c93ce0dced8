//! Built-in analytic function families: the Janowski maps with their
//! closed-form parameter conditions, starlike generators `g` recovered from a
//! prescribed `zg'/g`, and seeded Schwarz-function generators for test
//! instances.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::expr::{AnalyticMap, Complex};
use crate::theorem::ParamSet;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FamilyError {
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("degenerate denominator: | |β+γ| − |βA+γB| | below 1e-12")]
    DegenerateDenominator,
    #[error("unsupported q: only Janowski trees have a closed-form generator")]
    UnsupportedQ,
}

/// Janowski parameters `(A, B)` with `−1 ≤ B < A ≤ 1`.
///
/// The classical class takes `B > −1`; the closed left endpoint is accepted
/// here so the limit maps at `B = −1` (half-plane, Koebe generator) are
/// addressable like any other family member.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JanowskiParams {
    pub a: f64,
    pub b: f64,
}

impl JanowskiParams {
    pub fn new(a: f64, b: f64) -> Result<Self, FamilyError> {
        if -1.0 <= b && b < a && a <= 1.0 {
            Ok(Self { a, b })
        } else {
            Err(FamilyError::BadParams(format!(
                "(A, B) = ({a}, {b}) violates -1 <= B < A <= 1"
            )))
        }
    }
}

/// The Janowski map `(1 + Az) / (1 + Bz)`.
pub fn janowski(jp: JanowskiParams) -> AnalyticMap {
    let z = AnalyticMap::identity();
    let one = Complex::new(1.0, 0.0);
    z.scale(Complex::new(jp.a, 0.0))
        .shift(one)
        .div(&z.scale(Complex::new(jp.b, 0.0)).shift(one))
}

/// The Koebe function `z (1 − z)^{−2}`.
pub fn koebe() -> AnalyticMap {
    let z = AnalyticMap::identity();
    z.mul(&AnalyticMap::one().sub(&z).pow_re(-2.0))
}

/// The half-plane map `(1 + z) / (1 − z)`, i.e. Janowski with `(A, B) = (1, −1)`.
pub fn halfplane() -> AnalyticMap {
    janowski(JanowskiParams::new(1.0, -1.0).expect("static params"))
}

/// The two closed-form sufficient conditions for a Janowski map, evaluated by
/// direct arithmetic:
///
/// ```text
/// δ + (1−A)/(1−B)  >  (A−B) / ((1−B) · | |β+γ| − |βA+γB| |)
/// (1−2A)/(1−A)     >  |βA+γB| / (|β+γ| − |βA+γB|)
/// ```
///
/// The real part of `δ` is used on the left of the first display; the
/// conditions are stated for real parameter choices. Both displays share the
/// core denominator `|β+γ| − |βA+γB|`, whose vanishing is an error.
pub fn example21_membership(
    jp: JanowskiParams,
    ps: &ParamSet,
) -> Result<(bool, bool), FamilyError> {
    let outer = (ps.beta + ps.gamma).norm();
    let inner = (ps.beta * Complex::new(jp.a, 0.0) + ps.gamma * Complex::new(jp.b, 0.0)).norm();
    let core = outer - inner;
    if core.abs() < 1e-12 {
        return Err(FamilyError::DegenerateDenominator);
    }
    let first = ps.delta.re + (1.0 - jp.a) / (1.0 - jp.b)
        > (jp.a - jp.b) / ((1.0 - jp.b) * core.abs());
    let second = (1.0 - 2.0 * jp.a) / (1.0 - jp.a) > inner / core;
    Ok((first, second))
}

/// Recovers the normalized starlike generator `g` with `zg'(z)/g(z) = q(z)`
/// for a Janowski `q`: `g(z) = z (1 + Bz)^{(A−B)/B}` for `B ≠ 0` and
/// `g(z) = z e^{Az}` for `B = 0`. Only trees structurally equal to
/// `janowski(jp)` are accepted.
pub fn g_from_q(q: &AnalyticMap, jp: JanowskiParams) -> Result<AnalyticMap, FamilyError> {
    if *q != janowski(jp) {
        return Err(FamilyError::UnsupportedQ);
    }
    let z = AnalyticMap::identity();
    if jp.b == 0.0 {
        Ok(z.mul(&z.scale(Complex::new(jp.a, 0.0)).exp()))
    } else {
        let base = z.scale(Complex::new(jp.b, 0.0)).shift(Complex::new(1.0, 0.0));
        Ok(z.mul(&base.pow_re((jp.a - jp.b) / jp.b)))
    }
}

/// Recipe for a seeded random Schwarz function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SchwarzSpec {
    pub seed: u64,
    pub degree: usize,
    pub contraction: f64,
}

impl SchwarzSpec {
    pub fn new(seed: u64, degree: usize, contraction: f64) -> Result<Self, FamilyError> {
        if degree < 1 {
            return Err(FamilyError::BadParams("degree must be at least 1".into()));
        }
        if !(contraction > 0.0 && contraction < 1.0) {
            return Err(FamilyError::BadParams(format!(
                "contraction {contraction} outside (0, 1)"
            )));
        }
        Ok(Self { seed, degree, contraction })
    }
}

const NORMALIZER_SAMPLES: usize = 4096;

/// Deterministic-by-seed Schwarz function `w(z) = k · z · poly(z)` with
/// `w(0) = 0`. The scale `k` normalizes the sampled sup of `|z · poly(z)|`
/// on the unit circle to the requested contraction, so by the maximum
/// principle `|w| ≤ contraction` holds throughout the closed disk up to
/// sampling error, which the interior radius margin absorbs.
pub fn random_schwarz(spec: SchwarzSpec) -> AnalyticMap {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut coeffs: Vec<Complex> = (0..spec.degree)
        .map(|_| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    if coeffs.iter().all(|c| c.norm() < 1e-9) {
        coeffs[0] = Complex::new(1.0, 0.0);
    }

    let z = AnalyticMap::identity();
    let mut poly = AnalyticMap::constant(coeffs[spec.degree - 1]);
    for k in (0..spec.degree - 1).rev() {
        poly = AnalyticMap::constant(coeffs[k]).add(&z.mul(&poly));
    }

    let mut sup: f64 = 0.0;
    for k in 0..NORMALIZER_SAMPLES {
        let theta = std::f64::consts::TAU * k as f64 / NORMALIZER_SAMPLES as f64;
        let zk = Complex::from_polar(1.0, theta);
        let value = zk * poly.eval(zk).expect("polynomials evaluate everywhere");
        sup = sup.max(value.norm());
    }
    let scale = Complex::new(spec.contraction / sup, 0.0);
    AnalyticMap::constant(scale).mul(&z.mul(&poly))
}
