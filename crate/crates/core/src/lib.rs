//! Numerical toolkit for first-order differential subordination on the unit
//! disk.
//!
//! The crate evaluates the power transform
//! `P(z) = p(z)^α (p(z) + δ + zp'(z)/(βp(z)+γ))^μ` and its flat rewrite,
//! checks the positivity hypotheses of the dominant/subordinant/sandwich
//! implications on sample grids, decides subordination between analytic maps
//! numerically by winding-number containment of image curves, and
//! stress-tests the implication chains with a seeded falsification campaign.
//!
//! Everything is sampled, never proven: subordination verdicts are
//! three-valued (`Holds` / `Fails` with witness / `Inconclusive`), hypothesis
//! checks report minima with witnesses, and harness runs carry a
//! `consistent` flag that records "not contradicted here".
//!
//! All values are `f64`-based; maps are immutable expression trees that are
//! cheap to clone and safe to share across threads.

pub mod applications;
pub mod expr;
pub mod falsify;
pub mod families;
pub mod geometry;
pub mod oracle;
pub mod parse;
pub mod report;
pub mod svg;
pub mod theorem;

pub use expr::{branch_margin, pow_principal, AnalyticMap, Complex, EvalError};
pub use geometry::{
    boundary_curve, has_self_intersection, min_real_part, test_subordination, winding_number,
    GeometryError, ImageCurve, SampleGrid,
};
pub use report::{ConditionReport, Outcome, SubordinationVerdict, TheoremReport, TheoremVerdict};
pub use svg::svg_document;
pub use theorem::{
    build_auxiliaries, check_hypotheses, class_membership, transform_flat, transform_p,
    verify_dominant, verify_sandwich, verify_subordinant, ParamSet, TheoremError,
};
