//! Disk sampling, image boundary curves, winding-number containment, and the
//! numerical subordination test.
//!
//! Subordination `f ≺ g` for univalent `g` is equivalent to `f(0) = g(0)`
//! together with `f(𝔻) ⊆ g(𝔻)`. The containment half is sampled: for each
//! grid radius `r` the values `f(r e^{iθ})` must wind once inside some
//! boundary curve `g(ρ e^{iθ})` with `ρ < 1`. Containment is decided by
//! winding number (summed signed angle increments) rather than polygon
//! convexity tricks, and any ambiguity surfaces as an explicit error or an
//! `Inconclusive` verdict rather than a guess.
//!
//! Möbius-type maps blow up near the boundary, so refined curves can carry
//! up to 2^20 samples. Winding queries therefore group consecutive segments
//! into chunks with bounding boxes: a chunk viewed from well outside its box
//! cannot wrap around the query point, so its angle contribution telescopes
//! to a single principal angle. That keeps a query near `O(√n)` without
//! changing the summed-angle semantics.

use std::collections::HashMap;
use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::expr::{AnalyticMap, Complex, EvalError};
use crate::report::{ConditionReport, SubordinationVerdict};

/// Distance below which a query point counts as sitting on a curve.
pub const CURVE_PROXIMITY: f64 = 1e-9;

/// Tolerance for the `f(0) = g(0)` center check.
pub const CENTER_TOL: f64 = 1e-9;

/// Maximum number of boundary-curve samples before refinement gives up.
pub const REFINEMENT_CAP: usize = 1 << 20;

/// Outermost exhausting radius probed by the subordination test.
pub const RHO_MAX: f64 = 1.0 - 1e-6;

/// Consecutive-gap criterion for boundary curves, relative to curve diameter.
const GAP_FRACTION: f64 = 1e-2;

/// Number of geometric steps in the exhausting-radius search.
const RHO_STEPS: usize = 8;

/// How many outside-candidates get an exact clearance scan before the
/// radius is declared undecided.
const ESCAPE_SCAN_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("evaluation failed at z = {z}: {source}")]
    Evaluation {
        z: Complex,
        #[source]
        source: EvalError,
    },
    #[error("non-finite value at z = {z}")]
    NonFinite { z: Complex },
    #[error("gap criterion unreachable at rho = {rho} with {samples} samples")]
    RefinementLimit { rho: f64, samples: usize },
    #[error("query point within {CURVE_PROXIMITY:e} of the curve")]
    TooCloseToCurve,
    #[error("winding residue {residue} leaves the integer ambiguous")]
    AmbiguousWinding { residue: f64 },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("curve radius {0} outside (0, 1)")]
    InvalidRadius(f64),
}

/// Radius ladder × angular resolution at which disk conditions are sampled.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleGrid {
    radii: Vec<f64>,
    angular_count: usize,
}

impl SampleGrid {
    pub fn new(radii: Vec<f64>, angular_count: usize) -> Result<Self, GeometryError> {
        if radii.is_empty() {
            return Err(GeometryError::InvalidGrid("no radii".into()));
        }
        for pair in radii.windows(2) {
            if pair[1] <= pair[0] {
                return Err(GeometryError::InvalidGrid(
                    "radii must be strictly increasing".into(),
                ));
            }
        }
        if !(radii[0] > 0.0 && *radii.last().unwrap() < 1.0) {
            return Err(GeometryError::InvalidGrid("radii must lie in (0, 1)".into()));
        }
        if angular_count < 64 {
            return Err(GeometryError::InvalidGrid(
                "angular_count must be at least 64".into(),
            ));
        }
        Ok(Self { radii, angular_count })
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn angular_count(&self) -> usize {
        self.angular_count
    }

    /// All grid points `r e^{2πik/n}`.
    pub fn points(&self) -> Vec<Complex> {
        let mut out = Vec::with_capacity(self.radii.len() * self.angular_count);
        for &r in &self.radii {
            for k in 0..self.angular_count {
                out.push(Complex::from_polar(r, TAU * k as f64 / self.angular_count as f64));
            }
        }
        out
    }

    /// Same angular resolution with extra inner radii `r0/8, r0/4, r0/2`
    /// prepended. Used for conditions with a removable singularity at the
    /// origin, which are sampled on `|z| ≥ r0/8` but never at `z = 0`.
    pub fn with_inner_ladder(&self) -> SampleGrid {
        let r0 = self.radii[0];
        let mut radii = vec![r0 / 8.0, r0 / 4.0, r0 / 2.0];
        radii.extend_from_slice(&self.radii);
        SampleGrid { radii, angular_count: self.angular_count }
    }
}

impl Default for SampleGrid {
    fn default() -> Self {
        Self { radii: vec![0.5, 0.9, 0.99, 0.999], angular_count: 4096 }
    }
}

/// Contiguous run of curve segments with its bounding box.
#[derive(Debug, Clone, PartialEq)]
struct Chunk {
    /// First segment index; covers segments `start..end`, i.e. samples
    /// `start..=end` (indices taken mod n).
    start: usize,
    end: usize,
    lo: Complex,
    hi: Complex,
    diag: f64,
}

/// Closed image curve `g(ρ e^{iθ})`, θ uniformly spaced in `[0, 2π)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ImageCurve {
    samples: Vec<Complex>,
    rho: f64,
    orientation: i8,
    max_gap: f64,
    diameter: f64,
    chunks: Vec<Chunk>,
}

impl ImageCurve {
    pub fn samples(&self) -> &[Complex] {
        &self.samples
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// +1 for counterclockwise, −1 for clockwise, 0 for degenerate.
    pub fn orientation(&self) -> i8 {
        self.orientation
    }

    /// Largest consecutive sample spacing, the curve's sampling resolution.
    pub fn max_gap(&self) -> f64 {
        self.max_gap
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    /// CSV export with columns `theta,re,im`.
    pub fn to_csv(&self) -> String {
        let n = self.samples.len();
        let mut out = String::from("theta,re,im\n");
        for (k, w) in self.samples.iter().enumerate() {
            let theta = TAU * k as f64 / n as f64;
            out.push_str(&format!("{theta},{},{}\n", w.re, w.im));
        }
        out
    }

    /// Standalone SVG with a single polyline, viewBox fitted with 1% padding.
    /// The vertical axis is flipped so the figure reads in mathematical
    /// orientation.
    pub fn to_svg(&self) -> String {
        crate::svg_document(std::slice::from_ref(self), &[])
    }

    fn sample(&self, k: usize) -> Complex {
        self.samples[k % self.samples.len()]
    }

    /// Escape clearance around a nearest segment of length `seg_len`: the
    /// local sampling error plus the local exhaustion-shell estimate
    /// `|g'| (1-ρ)`, with `|g'| ≈ seg_len · n / (2πρ)`.
    fn escape_clearance(&self, seg_len: f64) -> f64 {
        let n = self.samples.len() as f64;
        2.0 * seg_len * (1.0 + n * (1.0 - self.rho) / (TAU * self.rho))
    }
}

fn circle_points(rho: f64, n: usize) -> Vec<Complex> {
    (0..n)
        .map(|k| Complex::from_polar(rho, TAU * k as f64 / n as f64))
        .collect()
}

fn eval_checked(m: &AnalyticMap, z: Complex) -> Result<Complex, GeometryError> {
    let w = m.eval(z).map_err(|source| GeometryError::Evaluation { z, source })?;
    if !(w.re.is_finite() && w.im.is_finite()) {
        return Err(GeometryError::NonFinite { z });
    }
    Ok(w)
}

/// Max pairwise distance over a bounded subsample; good to a few percent,
/// which is all the gap criterion needs.
fn estimate_diameter(samples: &[Complex]) -> f64 {
    let stride = samples.len().div_ceil(512).max(1);
    let sub: Vec<Complex> = samples.iter().step_by(stride).copied().collect();
    let mut best = 0.0f64;
    for i in 0..sub.len() {
        for j in (i + 1)..sub.len() {
            best = best.max((sub[i] - sub[j]).norm());
        }
    }
    best
}

fn max_consecutive_gap(samples: &[Complex]) -> f64 {
    let n = samples.len();
    let mut best = 0.0f64;
    for k in 0..n {
        best = best.max((samples[(k + 1) % n] - samples[k]).norm());
    }
    best
}

fn shoelace_orientation(samples: &[Complex]) -> i8 {
    let n = samples.len();
    let mut area = 0.0;
    for k in 0..n {
        let a = samples[k];
        let b = samples[(k + 1) % n];
        area += a.re * b.im - b.re * a.im;
    }
    if area > 0.0 {
        1
    } else if area < 0.0 {
        -1
    } else {
        0
    }
}

fn build_chunks(samples: &[Complex]) -> Vec<Chunk> {
    let n = samples.len();
    let size = ((n as f64).sqrt().ceil() as usize).clamp(16, 8192);
    let mut chunks = Vec::with_capacity(n.div_ceil(size));
    let mut start = 0;
    while start < n {
        let end = (start + size).min(n);
        let mut lo = samples[start];
        let mut hi = samples[start];
        for k in start..=end {
            let s = samples[k % n];
            lo.re = lo.re.min(s.re);
            lo.im = lo.im.min(s.im);
            hi.re = hi.re.max(s.re);
            hi.im = hi.im.max(s.im);
        }
        let diag = (hi - lo).norm();
        chunks.push(Chunk { start, end, lo, hi, diag });
        start = end;
    }
    chunks
}

/// Samples `g(ρ e^{iθ})`, doubling the sample count until the largest
/// consecutive gap drops below 1% of the curve diameter.
pub fn boundary_curve(
    g: &AnalyticMap,
    rho: f64,
    n: usize,
) -> Result<ImageCurve, GeometryError> {
    if !(rho > 0.0 && rho < 1.0) {
        return Err(GeometryError::InvalidRadius(rho));
    }
    let mut n = n.max(64);
    loop {
        let mut samples = Vec::with_capacity(n);
        for z in circle_points(rho, n) {
            samples.push(eval_checked(g, z)?);
        }
        let diameter = estimate_diameter(&samples);
        let max_gap = max_consecutive_gap(&samples);
        if max_gap <= GAP_FRACTION * diameter || max_gap == 0.0 {
            let orientation = shoelace_orientation(&samples);
            let chunks = build_chunks(&samples);
            return Ok(ImageCurve { samples, rho, orientation, max_gap, diameter, chunks });
        }
        if n >= REFINEMENT_CAP {
            return Err(GeometryError::RefinementLimit { rho, samples: n });
        }
        n *= 2;
    }
}

/// Squared distance from the origin to the segment `[a, b]`.
fn segment_dist_sqr(a: Complex, b: Complex) -> f64 {
    let d = b - a;
    let len_sqr = d.norm_sqr();
    if len_sqr == 0.0 {
        return a.norm_sqr();
    }
    let t = (-(a.re * d.re + a.im * d.im) / len_sqr).clamp(0.0, 1.0);
    (a + d * t).norm_sqr()
}

fn bbox_dist_sqr(lo: Complex, hi: Complex, w: Complex) -> f64 {
    let dx = (lo.re - w.re).max(0.0).max(w.re - hi.re);
    let dy = (lo.im - w.im).max(0.0).max(w.im - hi.im);
    dx * dx + dy * dy
}

/// Winding number plus a lower bound on the distance from `w` to the curve.
/// Chunks viewed from beyond 1.25× their own diagonal contribute a single
/// telescoped principal angle; their box distance bounds the true distance.
pub(crate) fn winding_with_clearance(
    curve: &ImageCurve,
    w: Complex,
) -> Result<(i32, f64), GeometryError> {
    let mut angle = 0.0f64;
    let mut min_d2 = f64::INFINITY;
    let guard2 = (2.0 * CURVE_PROXIMITY) * (2.0 * CURVE_PROXIMITY);
    for chunk in &curve.chunks {
        let box_d2 = bbox_dist_sqr(chunk.lo, chunk.hi, w);
        let far_d2 = (1.25 * chunk.diag) * (1.25 * chunk.diag);
        if box_d2 > far_d2 && box_d2 > guard2 {
            let v1 = curve.sample(chunk.start) - w;
            let v2 = curve.sample(chunk.end) - w;
            let cross = v1.re * v2.im - v1.im * v2.re;
            let dot = v1.re * v2.re + v1.im * v2.im;
            angle += cross.atan2(dot);
            min_d2 = min_d2.min(box_d2);
        } else {
            for k in chunk.start..chunk.end {
                let v1 = curve.sample(k) - w;
                let v2 = curve.sample(k + 1) - w;
                min_d2 = min_d2.min(segment_dist_sqr(v1, v2));
                let cross = v1.re * v2.im - v1.im * v2.re;
                let dot = v1.re * v2.re + v1.im * v2.im;
                angle += cross.atan2(dot);
            }
        }
    }
    if min_d2 <= CURVE_PROXIMITY * CURVE_PROXIMITY {
        return Err(GeometryError::TooCloseToCurve);
    }
    let turns = angle / TAU;
    let rounded = turns.round();
    let residue = (turns - rounded).abs();
    if residue >= 0.25 {
        return Err(GeometryError::AmbiguousWinding { residue });
    }
    Ok((rounded as i32, min_d2.sqrt()))
}

/// Discrete winding number of the closed curve about `w`, via summed signed
/// angle increments rounded to the nearest integer.
pub fn winding_number(curve: &ImageCurve, w: Complex) -> Result<i32, GeometryError> {
    winding_with_clearance(curve, w).map(|(n, _)| n)
}

/// Exact nearest distance from `w` to the curve, with the length of the
/// segment attaining it.
fn exact_nearest(curve: &ImageCurve, w: Complex) -> (f64, f64) {
    let n = curve.samples.len();
    let mut best_d2 = f64::INFINITY;
    let mut best_len = 0.0;
    for k in 0..n {
        let a = curve.sample(k);
        let b = curve.sample(k + 1);
        let d2 = segment_dist_sqr(a - w, b - w);
        if d2 < best_d2 {
            best_d2 = d2;
            best_len = (b - a).norm();
        }
    }
    (best_d2.sqrt(), best_len)
}

/// Minimum of `ℜ m(z)` over the grid, with the argmin as witness.
/// Passes iff the minimum is strictly positive.
pub fn min_real_part(
    m: &AnalyticMap,
    grid: &SampleGrid,
) -> Result<ConditionReport, GeometryError> {
    let mut min_value = f64::INFINITY;
    let mut argmin = Complex::new(0.0, 0.0);
    for z in grid.points() {
        let w = eval_checked(m, z)?;
        if w.re < min_value {
            min_value = w.re;
            argmin = z;
        }
    }
    Ok(ConditionReport::new("min-re", min_value, argmin, Vec::new()))
}

/// Segment proper/improper intersection test (endpoint coincidences count).
fn segments_intersect(p1: Complex, p2: Complex, q1: Complex, q2: Complex) -> bool {
    fn orient(a: Complex, b: Complex, c: Complex) -> f64 {
        (b.re - a.re) * (c.im - a.im) - (b.im - a.im) * (c.re - a.re)
    }
    fn on_segment(a: Complex, b: Complex, c: Complex) -> bool {
        c.re >= a.re.min(b.re)
            && c.re <= a.re.max(b.re)
            && c.im >= a.im.min(b.im)
            && c.im <= a.im.max(b.im)
    }
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && on_segment(q1, q2, p1))
        || (d2 == 0.0 && on_segment(q1, q2, p2))
        || (d3 == 0.0 && on_segment(p1, p2, q1))
        || (d4 == 0.0 && on_segment(p1, p2, q2))
}

/// Boundary self-intersection scan: a sweep over x-sorted segments.
/// Adjacent segments (sharing an endpoint) are skipped. This is the
/// univalence proxy; it flags curves, it does not certify injectivity.
pub fn has_self_intersection(curve: &ImageCurve) -> bool {
    let samples = &curve.samples;
    let n = samples.len();
    if n < 4 {
        return false;
    }
    struct Seg {
        idx: usize,
        a: Complex,
        b: Complex,
        xmin: f64,
        xmax: f64,
    }
    let mut segs: Vec<Seg> = (0..n)
        .map(|k| {
            let a = samples[k];
            let b = samples[(k + 1) % n];
            Seg { idx: k, a, b, xmin: a.re.min(b.re), xmax: a.re.max(b.re) }
        })
        .collect();
    segs.sort_by(|s, t| s.xmin.total_cmp(&t.xmin));
    let mut active: Vec<usize> = Vec::new();
    for i in 0..segs.len() {
        let cur = &segs[i];
        active.retain(|&j| segs[j].xmax >= cur.xmin);
        for &j in &active {
            let other = &segs[j];
            let gap = (cur.idx + n - other.idx) % n;
            if gap <= 1 || gap >= n - 1 {
                continue;
            }
            if segments_intersect(cur.a, cur.b, other.a, other.b) {
                return true;
            }
        }
        active.push(i);
    }
    false
}

/// Geometric ladder of exhausting radii in `[max(r, 0.9), 1 − 1e-6]`,
/// ascending; the last rung is exactly [`RHO_MAX`] so curves are shared
/// across radii.
fn rho_ladder(r: f64) -> Vec<f64> {
    let start = r.max(0.9);
    let gap_start = 1.0 - start;
    let gap_end = 1.0 - RHO_MAX;
    if gap_start <= gap_end {
        return vec![RHO_MAX];
    }
    let ratio = (gap_end / gap_start).powf(1.0 / (RHO_STEPS as f64 - 1.0));
    let mut ladder: Vec<f64> = (0..RHO_STEPS - 1)
        .map(|j| 1.0 - gap_start * ratio.powi(j as i32))
        .collect();
    ladder.push(RHO_MAX);
    ladder
}

enum RadiusCheck {
    Contained,
    Escapes { index: usize, value: Complex },
    Undecided(String),
}

type CurveCache = HashMap<u64, (Result<ImageCurve, GeometryError>, bool)>;

/// Checks one radius of `f` against the ladder of `g`-curves. Curves are
/// probed outermost-first: the first cleanly sampled (non-self-intersecting)
/// curve decides, since anything outside it is also outside every smaller one.
fn check_radius(
    f_values: &[Complex],
    ladder: &[f64],
    g: &AnalyticMap,
    n_start: usize,
    cache: &mut CurveCache,
) -> RadiusCheck {
    for &rho in ladder.iter().rev() {
        let entry = cache.entry(rho.to_bits()).or_insert_with(|| {
            let curve = boundary_curve(g, rho, n_start);
            let selfx = curve.as_ref().map(has_self_intersection).unwrap_or(false);
            (curve, selfx)
        });
        let (curve, selfx) = match entry {
            (Ok(c), s) => (c.clone(), *s),
            (Err(_), _) => continue,
        };
        if selfx {
            continue;
        }
        let windings: Vec<Result<(i32, f64), GeometryError>> = f_values
            .par_iter()
            .map(|&w| winding_with_clearance(&curve, w))
            .collect();
        if windings.iter().all(|r| matches!(r, Ok((1, _)))) {
            return RadiusCheck::Contained;
        }
        // Candidates with winding 0 get an exact clearance scan; an escape
        // beyond the local sampling-plus-shell scale is a genuine witness.
        let mut best: Option<(usize, f64)> = None;
        let mut scanned = 0usize;
        for (k, res) in windings.iter().enumerate() {
            if !matches!(res, Ok((0, _))) {
                continue;
            }
            let (dist, seg_len) = exact_nearest(&curve, f_values[k]);
            if dist > curve.escape_clearance(seg_len)
                && best.map(|(_, d)| dist > d).unwrap_or(true)
            {
                best = Some((k, dist));
            }
            scanned += 1;
            if scanned >= ESCAPE_SCAN_CAP {
                break;
            }
        }
        if let Some((index, _)) = best {
            return RadiusCheck::Escapes { index, value: f_values[index] };
        }
        return RadiusCheck::Undecided(format!(
            "containment undecided against curve at rho = {rho}"
        ));
    }
    RadiusCheck::Undecided("no cleanly sampled boundary curve on the ladder".into())
}

/// Numerical subordination test `f ≺ g` for `g` sampled as univalent.
///
/// Holds when the centers agree and, for every grid radius, all samples of
/// `f` wind once inside some exhausting boundary curve of `g`. Fails with a
/// witness when a sample lies cleanly outside with local clearance. Anything
/// near the boundary, and any curve that fails the univalence proxy, yields
/// `Inconclusive`.
pub fn test_subordination(
    f: &AnalyticMap,
    g: &AnalyticMap,
    grid: &SampleGrid,
) -> Result<SubordinationVerdict, GeometryError> {
    let zero = Complex::new(0.0, 0.0);
    let f0 = eval_checked(f, zero)?;
    let g0 = eval_checked(g, zero)?;
    if (f0 - g0).norm() > CENTER_TOL {
        return Ok(SubordinationVerdict::fails(
            zero,
            f0,
            format!("center mismatch: f(0) = {f0}, g(0) = {g0}"),
        ));
    }

    let mut cache: CurveCache = HashMap::new();
    for &r in grid.radii() {
        let points = circle_points(r, grid.angular_count());
        let mut f_values = Vec::with_capacity(points.len());
        for &z in &points {
            f_values.push(eval_checked(f, z)?);
        }
        let ladder = rho_ladder(r);
        match check_radius(&f_values, &ladder, g, grid.angular_count(), &mut cache) {
            RadiusCheck::Contained => {}
            RadiusCheck::Escapes { index, value } => {
                return Ok(SubordinationVerdict::fails(
                    points[index],
                    value,
                    format!("image point escapes g-image at radius {r}"),
                ));
            }
            RadiusCheck::Undecided(detail) => {
                return Ok(SubordinationVerdict::inconclusive(format!(
                    "radius {r}: {detail}"
                )));
            }
        }
    }
    Ok(SubordinationVerdict::holds(
        "all sampled radii contained with winding number 1",
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn cayley() -> AnalyticMap {
        // (1+z)/(1-z)
        let z = AnalyticMap::identity();
        z.shift(c(1.0, 0.0)).div(&AnalyticMap::one().sub(&z))
    }

    fn janowski_half() -> AnalyticMap {
        // (1+0.5z)/(1-0.5z)
        let z = AnalyticMap::identity();
        z.scale(c(0.5, 0.0))
            .shift(c(1.0, 0.0))
            .div(&AnalyticMap::one().sub(&z.scale(c(0.5, 0.0))))
    }

    #[test]
    fn grid_invariants_enforced() {
        assert!(SampleGrid::new(vec![0.5, 0.4], 4096).is_err());
        assert!(SampleGrid::new(vec![0.5, 1.0], 4096).is_err());
        assert!(SampleGrid::new(vec![0.5], 32).is_err());
        assert!(SampleGrid::new(vec![0.5, 0.9], 64).is_ok());
    }

    #[test]
    fn identity_curve_is_near_unit_circle() {
        let curve = boundary_curve(&AnalyticMap::identity(), 1.0 - 1e-9, 4096).unwrap();
        assert!((curve.diameter() - 2.0).abs() < 1e-2);
        assert_eq!(curve.orientation(), 1);
        for w in curve.samples().iter().step_by(97) {
            assert!((w.norm() - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn cayley_curve_min_re_matches_moebius_arithmetic() {
        let curve = boundary_curve(&cayley(), 0.9, 4096).unwrap();
        let min_re = curve.samples().iter().map(|w| w.re).fold(f64::INFINITY, f64::min);
        // (1-0.9)/(1+0.9)
        assert!((min_re - 0.1 / 1.9).abs() < 1e-3, "min_re = {min_re}");
    }

    #[test]
    fn pole_on_circle_is_an_evaluation_error() {
        let z = AnalyticMap::identity();
        let g = AnalyticMap::one().div(&z.shift(c(-0.5, 0.0)));
        assert!(matches!(
            boundary_curve(&g, 0.5, 256),
            Err(GeometryError::Evaluation { .. })
        ));
    }

    #[test]
    fn refinement_limit_on_near_pole() {
        // Pole on the sample circle but never on a dyadic sample angle.
        let z = AnalyticMap::identity();
        let pole = Complex::from_polar(0.9, 1e-4);
        let g = AnalyticMap::one().div(&z.sub(&AnalyticMap::constant(pole)));
        assert!(matches!(
            boundary_curve(&g, 0.9, 256),
            Err(GeometryError::RefinementLimit { .. })
        ));
    }

    #[test]
    fn winding_numbers_on_unit_circle() {
        let curve = boundary_curve(&AnalyticMap::identity(), 1.0 - 1e-9, 4096).unwrap();
        assert_eq!(winding_number(&curve, c(0.0, 0.0)).unwrap(), 1);
        assert_eq!(winding_number(&curve, c(2.0, 0.0)).unwrap(), 0);
        assert_eq!(winding_number(&curve, c(0.99, 0.0)).unwrap(), 1);
        assert_eq!(winding_number(&curve, c(50.0, 40.0)).unwrap(), 0);
    }

    #[test]
    fn chunked_winding_matches_plain_sum_on_spiky_curve() {
        // A curve with wildly uneven sampling: Cayley near the boundary.
        let curve = boundary_curve(&cayley(), 0.99, 512).unwrap();
        for w in [c(1.0, 0.0), c(0.2, 0.5), c(-3.0, 0.0), c(60.0, 10.0), c(0.0, -2.0)] {
            let (fast, _) = winding_with_clearance(&curve, w).unwrap();
            // Plain angle sum over every segment.
            let n = curve.samples().len();
            let mut angle = 0.0;
            for k in 0..n {
                let v1 = curve.samples()[k] - w;
                let v2 = curve.samples()[(k + 1) % n] - w;
                angle += (v1.re * v2.im - v1.im * v2.re).atan2(v1.re * v2.re + v1.im * v2.im);
            }
            let plain = (angle / TAU).round() as i32;
            assert_eq!(fast, plain, "disagreement at {w}");
        }
    }

    #[test]
    fn winding_rejects_on_curve_points() {
        let curve = boundary_curve(&AnalyticMap::identity(), 0.9, 256).unwrap();
        let on_curve = curve.samples()[17];
        assert_eq!(
            winding_number(&curve, on_curve),
            Err(GeometryError::TooCloseToCurve)
        );
    }

    #[test]
    fn min_real_part_fixtures() {
        let grid = SampleGrid::default();
        let one = AnalyticMap::one();
        let r = min_real_part(&one, &grid).unwrap();
        assert!(r.passed());
        assert_eq!(r.min_value, 1.0);

        // (1+0.5z)/(1-0.5z): extremum at z = -0.999.
        let r = min_real_part(&janowski_half(), &grid).unwrap();
        assert!(r.passed());
        assert!((r.min_value - 0.3338).abs() < 2e-3, "min = {}", r.min_value);
        assert!((r.argmin - c(-0.999, 0.0)).norm() < 1e-2);

        let r = min_real_part(&AnalyticMap::identity(), &grid).unwrap();
        assert!(!r.passed());
        assert!((r.min_value + 0.999).abs() < 1e-6);
    }

    #[test]
    fn min_real_part_propagates_eval_errors() {
        let z = AnalyticMap::identity();
        let m = AnalyticMap::one().div(&z.shift(c(-0.5, 0.0)));
        let err = min_real_part(&m, &SampleGrid::default()).unwrap_err();
        match err {
            GeometryError::Evaluation { z, .. } => assert!((z - c(0.5, 0.0)).norm() < 1e-12),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn self_intersection_scan_flags_doubled_circle() {
        // z^2 traces the circle twice; the scan must notice.
        let sq = AnalyticMap::identity().pow_re(2.0);
        let curve = boundary_curve(&sq, 0.9, 256).unwrap();
        assert!(has_self_intersection(&curve));
        let clean = boundary_curve(&cayley(), 0.9, 256).unwrap();
        assert!(!has_self_intersection(&clean));
    }

    #[test]
    fn subordination_reflexive_on_bounded_map() {
        let g = janowski_half();
        let v = test_subordination(&g, &g, &SampleGrid::default()).unwrap();
        assert!(v.is_holds(), "{v:?}");
    }

    #[test]
    fn subordination_disk_in_half_plane() {
        // 1+z maps into |w-1|<1, inside the right half-plane image of Cayley.
        let f = AnalyticMap::identity().shift(c(1.0, 0.0));
        let v = test_subordination(&f, &cayley(), &SampleGrid::default()).unwrap();
        assert!(v.is_holds(), "{v:?}");
    }

    #[test]
    fn subordination_escape_has_witness_with_negative_real_part() {
        let f = AnalyticMap::identity().scale(c(1.9, 0.0)).shift(c(1.0, 0.0));
        let v = test_subordination(&f, &cayley(), &SampleGrid::default()).unwrap();
        assert!(v.is_fails(), "{v:?}");
        let wz = v.witness_z.unwrap();
        let ww = v.witness_w.unwrap();
        assert!(ww.re < 0.0, "witness image {ww} should have negative real part");
        assert!(wz.re < 0.0, "witness z = {wz} should sit on the left of the disk");
    }

    #[test]
    fn subordination_center_mismatch_fails_at_zero() {
        let f = AnalyticMap::identity().shift(c(2.0, 0.0));
        let v = test_subordination(&f, &cayley(), &SampleGrid::default()).unwrap();
        assert!(v.is_fails());
        assert_eq!(v.witness_z.unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn curve_csv_header_and_rows() {
        let curve = boundary_curve(&AnalyticMap::identity(), 0.9, 256).unwrap();
        let csv = curve.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("theta,re,im"));
        assert_eq!(csv.lines().count(), curve.samples().len() + 1);
    }
}
