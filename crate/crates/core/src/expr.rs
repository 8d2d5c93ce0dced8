//! Expression trees for holomorphic maps on the unit disk.
//!
//! An [`AnalyticMap`] is an immutable tree built from constants, the identity
//! `z`, field operations, principal powers/logarithms, `exp`, and composition.
//! Trees evaluate to [`Complex`] values and differentiate symbolically, so
//! derivatives such as `zp'(z)` are exact rather than finite-differenced.
//!
//! Powers and logarithms use the principal branch: `Arg w ∈ (−π, π]` with the
//! cut along `(−∞, 0]`. A base that is exactly a negative real is evaluated
//! with the `Arg = π` convention; a base within `1e-12` of the cut but not on
//! it is rejected as [`EvalError::BranchCutHit`], since a rounding error could
//! have flipped it across the cut. Integer exponents bypass the cut entirely
//! (the power is entire in the base).
//!
//! No simplification is performed on construction or differentiation; trees
//! are evaluated as written.

use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

/// Complex scalar used throughout the crate.
pub type Complex = Complex64;

/// Hard margin around the branch cut `(−∞, 0]`.
pub const BRANCH_CUT_MARGIN: f64 = 1e-12;

/// Tolerance below which a power exponent is treated as an integer.
pub const INTEGER_EXPONENT_TOL: f64 = 1e-12;

/// Quotient denominators with modulus below this are reported as division by zero.
pub const DIVISION_FLOOR: f64 = 1e-300;

/// Evaluation failure of an [`AnalyticMap`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("division by zero (denominator modulus below {DIVISION_FLOOR:e})")]
    DivisionByZero,
    #[error("principal branch cut hit at base {base}")]
    BranchCutHit { base: Complex },
    #[error("zero base for principal power/log with non-integer exponent")]
    ZeroBase,
}

#[derive(Debug, PartialEq)]
pub(crate) enum Node {
    Constant(Complex),
    Var,
    Sum(AnalyticMap, AnalyticMap),
    Difference(AnalyticMap, AnalyticMap),
    Product(AnalyticMap, AnalyticMap),
    Quotient(AnalyticMap, AnalyticMap),
    /// Principal power with a constant exponent.
    Power(AnalyticMap, Complex),
    Log(AnalyticMap),
    Exp(AnalyticMap),
    /// `Compose(outer, inner)` denotes `outer ∘ inner`.
    Compose(AnalyticMap, AnalyticMap),
}

/// Immutable expression tree denoting a holomorphic function.
///
/// Cloning is cheap (a reference-count bump) and maps are `Send + Sync`, so
/// trees can be shared freely across threads.
#[derive(Clone, Debug, PartialEq)]
pub struct AnalyticMap {
    pub(crate) node: Arc<Node>,
}

fn wrap(node: Node) -> AnalyticMap {
    AnalyticMap { node: Arc::new(node) }
}

impl AnalyticMap {
    pub fn constant(c: Complex) -> Self {
        wrap(Node::Constant(c))
    }

    pub fn constant_re(x: f64) -> Self {
        Self::constant(Complex::new(x, 0.0))
    }

    /// The identity map `z`.
    pub fn identity() -> Self {
        wrap(Node::Var)
    }

    pub fn zero() -> Self {
        Self::constant_re(0.0)
    }

    pub fn one() -> Self {
        Self::constant_re(1.0)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        wrap(Node::Sum(self.clone(), rhs.clone()))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        wrap(Node::Difference(self.clone(), rhs.clone()))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        wrap(Node::Product(self.clone(), rhs.clone()))
    }

    pub fn div(&self, rhs: &Self) -> Self {
        wrap(Node::Quotient(self.clone(), rhs.clone()))
    }

    /// Principal power with constant exponent.
    pub fn pow(&self, exponent: Complex) -> Self {
        wrap(Node::Power(self.clone(), exponent))
    }

    pub fn pow_re(&self, exponent: f64) -> Self {
        self.pow(Complex::new(exponent, 0.0))
    }

    /// Principal logarithm.
    pub fn log(&self) -> Self {
        wrap(Node::Log(self.clone()))
    }

    pub fn exp(&self) -> Self {
        wrap(Node::Exp(self.clone()))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Self) -> Self {
        wrap(Node::Compose(self.clone(), inner.clone()))
    }

    /// Multiply by a scalar constant.
    pub fn scale(&self, c: Complex) -> Self {
        Self::constant(c).mul(self)
    }

    /// Add a scalar constant.
    pub fn shift(&self, c: Complex) -> Self {
        Self::constant(c).add(self)
    }

    /// Evaluates the denoted function at `z`.
    ///
    /// Evaluation is pure and deterministic. Poles surface as
    /// [`EvalError::DivisionByZero`], near-cut principal powers as
    /// [`EvalError::BranchCutHit`].
    pub fn eval(&self, z: Complex) -> Result<Complex, EvalError> {
        match &*self.node {
            Node::Constant(c) => Ok(*c),
            Node::Var => Ok(z),
            Node::Sum(a, b) => Ok(a.eval(z)? + b.eval(z)?),
            Node::Difference(a, b) => Ok(a.eval(z)? - b.eval(z)?),
            Node::Product(a, b) => Ok(a.eval(z)? * b.eval(z)?),
            Node::Quotient(a, b) => {
                let den = b.eval(z)?;
                if den.norm() < DIVISION_FLOOR {
                    return Err(EvalError::DivisionByZero);
                }
                Ok(a.eval(z)? / den)
            }
            Node::Power(base, c) => pow_principal(base.eval(z)?, *c),
            Node::Log(a) => log_principal(a.eval(z)?),
            Node::Exp(a) => Ok(a.eval(z)?.exp()),
            Node::Compose(outer, inner) => outer.eval(inner.eval(z)?),
        }
    }

    /// Exact symbolic derivative of the tree.
    ///
    /// The principal-power rule is `d(b^c) = c · b^(c−1) · b'`; any branch
    /// trouble this introduces surfaces at evaluation time, not here.
    pub fn differentiate(&self) -> AnalyticMap {
        match &*self.node {
            Node::Constant(_) => Self::zero(),
            Node::Var => Self::one(),
            Node::Sum(a, b) => a.differentiate().add(&b.differentiate()),
            Node::Difference(a, b) => a.differentiate().sub(&b.differentiate()),
            Node::Product(a, b) => {
                a.differentiate().mul(b).add(&a.mul(&b.differentiate()))
            }
            Node::Quotient(n, d) => n
                .differentiate()
                .mul(d)
                .sub(&n.mul(&d.differentiate()))
                .div(&d.mul(d)),
            Node::Power(base, c) => Self::constant(*c)
                .mul(&base.pow(c - Complex::new(1.0, 0.0)))
                .mul(&base.differentiate()),
            Node::Log(a) => a.differentiate().div(a),
            Node::Exp(a) => self.clone().mul(&a.differentiate()),
            Node::Compose(outer, inner) => outer
                .differentiate()
                .compose(inner)
                .mul(&inner.differentiate()),
        }
    }

    /// Returns the cofactor `u` when the tree is structurally `z · u(z)`
    /// (or the constant `1` for the bare identity). Used to clear removable
    /// singularities in ratios like `z f'(z) / f(z)`.
    pub fn strip_identity_factor(&self) -> Option<AnalyticMap> {
        match &*self.node {
            Node::Var => Some(Self::one()),
            Node::Product(a, b) => match (&*a.node, &*b.node) {
                (Node::Var, _) => Some(b.clone()),
                (_, Node::Var) => Some(a.clone()),
                _ => None,
            },
            _ => None,
        }
    }

    /// True when the tree is exactly the identity map `z`.
    pub fn is_identity(&self) -> bool {
        matches!(&*self.node, Node::Var)
    }
}

/// Euclidean distance from `w` to the branch cut `(−∞, 0]`.
pub fn branch_margin(w: Complex) -> f64 {
    if w.re <= 0.0 {
        w.im.abs()
    } else {
        w.norm()
    }
}

fn is_integer_exponent(c: Complex) -> Option<i64> {
    if c.im.abs() < INTEGER_EXPONENT_TOL
        && c.re.abs() < 2_147_483_648.0
        && (c.re - c.re.round()).abs() < INTEGER_EXPONENT_TOL
    {
        Some(c.re.round() as i64)
    } else {
        None
    }
}

fn int_pow(w: Complex, n: i64) -> Result<Complex, EvalError> {
    if n < 0 {
        if w.norm() < DIVISION_FLOOR {
            return Err(EvalError::DivisionByZero);
        }
        return Ok(int_pow(w, -n)?.inv());
    }
    let mut acc = Complex::new(1.0, 0.0);
    let mut base = w;
    let mut k = n;
    while k > 0 {
        if k & 1 == 1 {
            acc *= base;
        }
        base *= base;
        k >>= 1;
    }
    Ok(acc)
}

/// Principal-branch power `w^c = exp(c (ln|w| + i Arg w))`, `Arg ∈ (−π, π]`.
///
/// Integer exponents are computed by repeated multiplication and never touch
/// the branch cut. An exactly negative real base uses `Arg = π`; a base
/// within [`BRANCH_CUT_MARGIN`] of the cut (but off it) is an error.
pub fn pow_principal(w: Complex, c: Complex) -> Result<Complex, EvalError> {
    if let Some(n) = is_integer_exponent(c) {
        return int_pow(w, n);
    }
    if w.re == 0.0 && w.im == 0.0 {
        return Err(EvalError::ZeroBase);
    }
    let w = canonical_cut(w)?;
    Ok((c * w.ln()).exp())
}

/// Principal logarithm with the same cut handling as [`pow_principal`].
pub fn log_principal(w: Complex) -> Result<Complex, EvalError> {
    if w.re == 0.0 && w.im == 0.0 {
        return Err(EvalError::ZeroBase);
    }
    let w = canonical_cut(w)?;
    Ok(w.ln())
}

/// Rejects bases ambiguously close to the cut and pins `Arg = π` (not `−π`)
/// for exactly negative reals by clearing a negative-zero imaginary part.
fn canonical_cut(w: Complex) -> Result<Complex, EvalError> {
    if w.re < 0.0 && w.im != 0.0 && w.im.abs() < BRANCH_CUT_MARGIN {
        return Err(EvalError::BranchCutHit { base: w });
    }
    if w.im == 0.0 {
        Ok(Complex::new(w.re, 0.0))
    } else {
        Ok(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn janowski(a: f64, b: f64) -> AnalyticMap {
        let z = AnalyticMap::identity();
        let num = z.scale(c(a, 0.0)).shift(c(1.0, 0.0));
        let den = z.scale(c(b, 0.0)).shift(c(1.0, 0.0));
        num.div(&den)
    }

    #[test]
    fn janowski_center_and_half() {
        let q = janowski(0.5, -0.5);
        assert_eq!(q.eval(c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
        let v = q.eval(c(0.5, 0.0)).unwrap();
        assert!((v - c(5.0 / 3.0, 0.0)).norm() < 1e-12, "got {v}");
    }

    #[test]
    fn quotient_pole_is_division_by_zero() {
        let z = AnalyticMap::identity();
        let m = AnalyticMap::one().div(&z.shift(c(-0.5, 0.0)));
        assert_eq!(m.eval(c(0.5, 0.0)), Err(EvalError::DivisionByZero));
    }

    #[test]
    fn derivative_of_constant_is_zero_tree() {
        let d = AnalyticMap::constant_re(5.0).differentiate();
        assert_eq!(d, AnalyticMap::zero());
        assert_eq!(d.eval(c(0.3, 0.1)).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn derivative_of_cayley_at_zero() {
        // (1+z)/(1-z) has derivative 2/(1-z)^2.
        let q = janowski(1.0, -1.0);
        let d = q.differentiate().eval(c(0.0, 0.0)).unwrap();
        assert!((d - c(2.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn chain_rule_matches_factor_product() {
        let g = janowski(1.0, -1.0);
        let w = AnalyticMap::identity().pow_re(2.0).scale(c(0.7, 0.2));
        let z0 = c(0.3, 0.0);
        let composed = g.compose(&w).differentiate().eval(z0).unwrap();
        let w0 = w.eval(z0).unwrap();
        let expected = g.differentiate().eval(w0).unwrap() * w.differentiate().eval(z0).unwrap();
        assert!((composed - expected).norm() < 1e-12 * (1.0 + expected.norm()));
    }

    #[test]
    fn pow_principal_values() {
        assert_eq!(pow_principal(c(4.0, 0.0), c(0.5, 0.0)).unwrap(), c(2.0, 0.0));
        let i_sq = pow_principal(c(0.0, 1.0), c(2.0, 0.0)).unwrap();
        assert!((i_sq - c(-1.0, 0.0)).norm() < 1e-15);
        // Negative real base: Arg = π convention.
        let r = pow_principal(c(-1.0, 0.0), c(0.5, 0.0)).unwrap();
        assert!((r - c(0.0, 1.0)).norm() < 1e-15, "got {r}");
    }

    #[test]
    fn pow_principal_identities() {
        for w in [c(0.3, -1.2), c(-2.0, 0.5), c(1e-8, 3.0)] {
            assert_eq!(pow_principal(w, c(1.0, 0.0)).unwrap(), w);
            assert_eq!(pow_principal(w, c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
        }
    }

    #[test]
    fn pow_principal_cut_and_zero_handling() {
        // Ambiguously close to the cut: error.
        let near = c(-1.0, 1e-13);
        assert!(matches!(
            pow_principal(near, c(0.5, 0.0)),
            Err(EvalError::BranchCutHit { .. })
        ));
        // Integer exponent bypasses the cut.
        assert_eq!(pow_principal(near, c(2.0, 0.0)).unwrap(), near * near);
        // Zero base with fractional exponent.
        assert_eq!(pow_principal(c(0.0, 0.0), c(0.5, 0.0)), Err(EvalError::ZeroBase));
        // Zero base with positive integer exponent is fine.
        assert_eq!(pow_principal(c(0.0, 0.0), c(3.0, 0.0)).unwrap(), c(0.0, 0.0));
        // Negative-zero imaginary part must still give Arg = π, not −π.
        let v = pow_principal(c(-4.0, -0.0), c(0.5, 0.0)).unwrap();
        assert!((v - c(0.0, 2.0)).norm() < 1e-15, "got {v}");
    }

    #[test]
    fn branch_margin_cases() {
        assert_eq!(branch_margin(c(1.0, 0.0)), 1.0);
        assert_eq!(branch_margin(c(-1.0, 0.5)), 0.5);
        assert_eq!(branch_margin(c(3.0, 4.0)), 5.0);
        assert_eq!(branch_margin(c(-7.0, 0.0)), 0.0);
    }

    #[test]
    fn strip_identity_factor_shapes() {
        let z = AnalyticMap::identity();
        let u = janowski(0.5, -0.5);
        assert_eq!(z.mul(&u).strip_identity_factor(), Some(u.clone()));
        assert_eq!(u.mul(&z).strip_identity_factor(), Some(u.clone()));
        assert_eq!(z.strip_identity_factor(), Some(AnalyticMap::one()));
        assert_eq!(u.strip_identity_factor(), None);
    }

    #[test]
    fn log_derivative() {
        let z = AnalyticMap::identity();
        let m = z.shift(c(1.0, 0.0)).log();
        let d = m.differentiate().eval(c(0.5, 0.0)).unwrap();
        assert!((d - c(2.0 / 3.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn exp_derivative_shares_subtree() {
        let z = AnalyticMap::identity();
        let m = z.scale(c(0.5, 0.0)).exp();
        let d = m.differentiate().eval(c(0.4, 0.0)).unwrap();
        let expected = 0.5 * (0.2f64).exp();
        assert!((d - c(expected, 0.0)).norm() < 1e-14);
    }
}
