//! Independent brute-force oracles for the test suite: dense-grid image
//! containment and central finite differences.
//!
//! These deliberately share no code with the main subordination tester or the
//! symbolic differentiator. Containment here uses a dense image point cloud
//! plus a horizontal-ray crossing test against the outermost image ring;
//! the main path uses summed-angle winding numbers against adaptively refined
//! curves. Disagreement between the two is a test failure, not a tie to break.

use std::f64::consts::TAU;

use crate::expr::{AnalyticMap, Complex};
use crate::geometry::GeometryError;

/// Resolution knobs for the oracles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub radial: usize,
    pub angular: usize,
    pub fd_step: f64,
}

impl OracleConfig {
    pub fn new(radial: usize, angular: usize, fd_step: f64) -> Result<Self, GeometryError> {
        if radial < 64 || angular < 64 {
            return Err(GeometryError::InvalidGrid(
                "oracle resolution must be at least 64".into(),
            ));
        }
        if !(fd_step > 0.0 && fd_step < 1e-3) {
            return Err(GeometryError::InvalidGrid(format!(
                "fd_step {fd_step} outside (0, 1e-3)"
            )));
        }
        Ok(Self { radial, angular, fd_step })
    }
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { radial: 512, angular: 2048, fd_step: 1e-6 }
    }
}

const OUTER_RADIUS: f64 = 0.999;
const CLOUD_SNAP: f64 = 1e-6;

fn eval_checked(m: &AnalyticMap, z: Complex) -> Result<Complex, GeometryError> {
    let w = m.eval(z).map_err(|source| GeometryError::Evaluation { z, source })?;
    if !(w.re.is_finite() && w.im.is_finite()) {
        return Err(GeometryError::NonFinite { z });
    }
    Ok(w)
}

/// Signed horizontal-ray crossing count: nonzero means `w` is inside the
/// polygon. Independent of the angle-summing winding used by the main path.
fn ray_crossing_winding(polygon: &[Complex], w: Complex) -> i32 {
    let n = polygon.len();
    let mut winding = 0i32;
    for k in 0..n {
        let a = polygon[k];
        let b = polygon[(k + 1) % n];
        if a.im <= w.im {
            if b.im > w.im {
                let cross = (a.re - w.re) * (b.im - w.im) - (a.im - w.im) * (b.re - w.re);
                if cross > 0.0 {
                    winding += 1;
                }
            }
        } else if b.im <= w.im {
            let cross = (a.re - w.re) * (b.im - w.im) - (a.im - w.im) * (b.re - w.re);
            if cross < 0.0 {
                winding -= 1;
            }
        }
    }
    winding
}

/// Brute-force containment `f(𝔻) ⊆ g(𝔻)`, sampled.
///
/// `g` is rastered into a dense point cloud on radii up to 0.999; every
/// `f`-sample must sit inside the outermost image ring (ray-crossing test)
/// or within `1e-6` of some cloud point.
pub fn grid_containment(
    f: &AnalyticMap,
    g: &AnalyticMap,
    cfg: &OracleConfig,
) -> Result<bool, GeometryError> {
    let mut cloud = Vec::with_capacity(cfg.radial * cfg.angular);
    let mut outer_ring = Vec::with_capacity(cfg.angular);
    for i in 1..=cfg.radial {
        let r = OUTER_RADIUS * i as f64 / cfg.radial as f64;
        for k in 0..cfg.angular {
            let z = Complex::from_polar(r, TAU * k as f64 / cfg.angular as f64);
            let w = eval_checked(g, z)?;
            cloud.push(w);
            if i == cfg.radial {
                outer_ring.push(w);
            }
        }
    }

    for &r in &[0.5, 0.9, 0.99, OUTER_RADIUS] {
        for k in 0..cfg.angular {
            let z = Complex::from_polar(r, TAU * k as f64 / cfg.angular as f64);
            let w = eval_checked(f, z)?;
            if ray_crossing_winding(&outer_ring, w) != 0 {
                continue;
            }
            let snapped = cloud
                .iter()
                .any(|&p| (p - w).norm_sqr() <= CLOUD_SNAP * CLOUD_SNAP);
            if !snapped {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Central finite difference `(m(z+h) − m(z−h)) / 2h` with real step `h`.
pub fn finite_difference(
    m: &AnalyticMap,
    z: Complex,
    cfg: &OracleConfig,
) -> Result<Complex, GeometryError> {
    let h = Complex::new(cfg.fd_step, 0.0);
    let plus = eval_checked(m, z + h)?;
    let minus = eval_checked(m, z - h)?;
    Ok((plus - minus) / (2.0 * h))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn cayley() -> AnalyticMap {
        let z = AnalyticMap::identity();
        z.shift(c(1.0, 0.0)).div(&AnalyticMap::one().sub(&z))
    }

    fn small_cfg() -> OracleConfig {
        OracleConfig::new(128, 512, 1e-6).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(OracleConfig::new(32, 512, 1e-6).is_err());
        assert!(OracleConfig::new(128, 512, 1e-2).is_err());
        assert!(OracleConfig::new(128, 512, 1e-6).is_ok());
    }

    #[test]
    fn containment_disk_in_half_plane() {
        let f = AnalyticMap::identity().shift(c(1.0, 0.0));
        assert!(grid_containment(&f, &cayley(), &small_cfg()).unwrap());
    }

    #[test]
    fn containment_rejects_escaping_disk() {
        let f = AnalyticMap::identity().scale(c(1.9, 0.0)).shift(c(1.0, 0.0));
        assert!(!grid_containment(&f, &cayley(), &small_cfg()).unwrap());
    }

    #[test]
    fn containment_reflexive() {
        let g = cayley();
        assert!(grid_containment(&g, &g, &small_cfg()).unwrap());
    }

    #[test]
    fn finite_difference_fixtures() {
        let cfg = OracleConfig::default();
        let sq = AnalyticMap::identity().pow_re(2.0);
        let d = finite_difference(&sq, c(1.0, 0.0), &cfg).unwrap();
        assert!((d - c(2.0, 0.0)).norm() < 1e-9);

        let d = finite_difference(&cayley(), c(0.0, 0.0), &cfg).unwrap();
        assert!((d - c(2.0, 0.0)).norm() < 1e-6);

        let d = finite_difference(&AnalyticMap::constant_re(4.2), c(0.3, 0.2), &cfg).unwrap();
        assert!(d.norm() < 1e-12);
    }
}
