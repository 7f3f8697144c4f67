//! The height function of a finite list of plane vectors, its breakpoints
//! and derivative jumps, and reconstruction of total length from heights.
//!
//! A list Z = (z_1, ..., z_k) has height h(Z) = sum |Im z_j|; rotating the
//! list sweeps H_Z(theta) = h(e^{i theta} Z), a pi-periodic piecewise smooth
//! function whose derivative jumps by 2|z_j| at theta_j = pi - Arg(z_j), so
//! half the jump total recovers sum |z_j|. Interpreting Z as the developed
//! saddle-connection vectors of a flat geodesic, that sum is the flat length;
//! whether the input chain really is a geodesic is a caller obligation that
//! cannot be validated from the raw vectors.
//!
//! Points are double-precision complex numbers. Collinearity merging
//! therefore needs a declared tolerance; it is exposed on
//! `canonicalize_with`.

use num::complex::Complex64;
use thiserror::Error;

pub type PlanePoint = Complex64;

pub const DEFAULT_COLLINEARITY_TOLERANCE: f64 = 1e-12;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum HeightsError {
    #[error("point list is empty or all zeros")]
    NoPoints,
    #[error("step size must be positive")]
    NonPositiveStep,
}

#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Breakpoint {
    /// Angle in (0, pi] where the derivative of the height sweep jumps.
    pub theta: f64,
    /// Jump size, 2|z| for the merged point responsible.
    pub jump: f64,
}

#[derive(Clone, PartialEq, Debug)]
pub struct BreakpointReport {
    /// Breakpoints with strictly increasing angles.
    pub breakpoints: Vec<Breakpoint>,
    /// Half the jump total; equals the total modulus of the input list.
    pub reconstructed_length: f64,
    pub canonical_points: Vec<PlanePoint>,
}

impl BreakpointReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "breakpoints": self.breakpoints.iter()
                .map(|b| serde_json::json!({"theta": b.theta, "jump": b.jump}))
                .collect::<Vec<_>>(),
            "length": self.reconstructed_length,
        })
    }
}

/// H_Z(theta) = sum |Im(e^{i theta} z_j)|.
pub fn height_at(points: &[PlanePoint], theta: f64) -> f64 {
    let rotation = Complex64::from_polar(1.0, theta);
    points.iter().map(|z| (rotation * z).im.abs()).sum()
}

/// Flips points into the closed upper half-plane (positive real axis on the
/// boundary), drops zeros, and merges points on a common line through the
/// origin. Preserves the height sweep and the total modulus.
pub fn canonicalize_with(points: &[PlanePoint], collinear_tol: f64) -> Vec<PlanePoint> {
    let mut flipped: Vec<PlanePoint> = points
        .iter()
        .filter(|z| z.re != 0.0 || z.im != 0.0)
        .map(|z| {
            if z.im > 0.0 || (z.im == 0.0 && z.re > 0.0) {
                *z
            } else {
                -z
            }
        })
        .collect();
    // after flipping, Arg lies in [0, pi); equal directions are adjacent once
    // sorted, and collinear points are positive multiples so moduli add
    flipped.sort_by(|p, q| p.arg().total_cmp(&q.arg()));
    let mut merged: Vec<PlanePoint> = Vec::new();
    let mut anchor: Option<PlanePoint> = None;
    for z in flipped {
        match (anchor, merged.last_mut()) {
            (Some(a), Some(last)) => {
                let cross = a.re * z.im - a.im * z.re;
                if cross.abs() <= collinear_tol * a.norm() * z.norm() {
                    *last += z;
                } else {
                    anchor = Some(z);
                    merged.push(z);
                }
            }
            _ => {
                anchor = Some(z);
                merged.push(z);
            }
        }
    }
    merged
}

pub fn canonicalize(points: &[PlanePoint]) -> Vec<PlanePoint> {
    canonicalize_with(points, DEFAULT_COLLINEARITY_TOLERANCE)
}

/// Breakpoints theta_j = pi - Arg(z'_j) in (0, pi] with jumps 2|z'_j| over
/// the canonicalized points, and the length they reconstruct.
pub fn breakpoints_and_jumps(points: &[PlanePoint]) -> Result<BreakpointReport, HeightsError> {
    let canonical = canonicalize(points);
    if canonical.is_empty() {
        return Err(HeightsError::NoPoints);
    }
    let mut breakpoints: Vec<Breakpoint> = canonical
        .iter()
        .map(|z| Breakpoint { theta: std::f64::consts::PI - z.arg(), jump: 2.0 * z.norm() })
        .collect();
    breakpoints.sort_by(|p, q| p.theta.total_cmp(&q.theta));
    let reconstructed_length = 0.5 * breakpoints.iter().map(|b| b.jump).sum::<f64>();
    Ok(BreakpointReport { breakpoints, reconstructed_length, canonical_points: canonical })
}

/// O(h)-accurate estimate of the derivative jump at theta:
/// forward minus backward difference quotient of the height sweep.
pub fn finite_difference_jump(
    points: &[PlanePoint],
    theta: f64,
    h: f64,
) -> Result<f64, HeightsError> {
    if h <= 0.0 {
        return Err(HeightsError::NonPositiveStep);
    }
    let plus = height_at(points, theta + h);
    let center = height_at(points, theta);
    let minus = height_at(points, theta - h);
    Ok((plus - center) / h - (center - minus) / h)
}

/// Parses `"re,im;re,im;..."` into a point list.
pub fn parse_points(text: &str) -> Result<Vec<PlanePoint>, String> {
    text.split(';')
        .filter(|chunk| !chunk.trim().is_empty())
        .map(|chunk| {
            let (re, im) = chunk
                .split_once(',')
                .ok_or_else(|| format!("expected 're,im' but got '{chunk}'"))?;
            let re: f64 =
                re.trim().parse().map_err(|_| format!("invalid real part '{}'", re.trim()))?;
            let im: f64 =
                im.trim().parse().map_err(|_| format!("invalid imaginary part '{}'", im.trim()))?;
            if !re.is_finite() || !im.is_finite() {
                return Err(format!("non-finite point '{chunk}'"));
            }
            Ok(Complex64::new(re, im))
        })
        .collect()
}

/// Total modulus of the developed edge vectors: the flat length of the
/// underlying geodesic chain. Equals `reconstructed_length` of the
/// breakpoint report.
pub fn developed_length(points: &[PlanePoint]) -> Result<f64, HeightsError> {
    if points.is_empty() {
        return Err(HeightsError::NoPoints);
    }
    Ok(points.iter().map(|z| z.norm()).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn z(re: f64, im: f64) -> PlanePoint {
        Complex64::new(re, im)
    }

    fn random_points(rng: &mut ChaCha8Rng, max_len: usize, scale: f64) -> Vec<PlanePoint> {
        let k = rng.gen_range(1..=max_len);
        (0..k)
            .map(|_| {
                Complex64::from_polar(
                    rng.gen_range(0.0..1.0f64) * scale,
                    rng.gen_range(0.0..2.0 * PI),
                )
            })
            .collect()
    }

    #[test]
    fn height_examples() {
        assert!((height_at(&[z(0.0, 1.0)], 0.0) - 1.0).abs() < 1e-15);
        assert!(height_at(&[z(0.0, 1.0)], FRAC_PI_2).abs() < 1e-15);
        let v = height_at(&[z(1.0, 0.0), z(0.0, 1.0)], FRAC_PI_4);
        assert!((v - 2.0_f64.sqrt()).abs() < 1e-15);
        assert!((height_at(&[z(1.0, 0.0), z(-2.0, 0.0)], FRAC_PI_2) - 3.0).abs() < 1e-15);
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(canonicalize(&[z(1.0, 0.0), z(-2.0, 0.0)]), vec![z(3.0, 0.0)]);
        assert_eq!(
            canonicalize(&[z(0.0, 1.0), z(0.0, 2.0), z(0.0, -3.0)]),
            vec![z(0.0, 6.0)]
        );
        assert_eq!(
            canonicalize(&[z(1.0, 0.0), z(0.0, 1.0)]),
            vec![z(1.0, 0.0), z(0.0, 1.0)]
        );
    }

    #[test]
    fn breakpoint_examples() {
        let r = breakpoints_and_jumps(&[z(0.0, 1.0)]).unwrap();
        assert_eq!(r.breakpoints.len(), 1);
        assert!((r.breakpoints[0].theta - FRAC_PI_2).abs() < 1e-15);
        assert!((r.breakpoints[0].jump - 2.0).abs() < 1e-15);
        assert!((r.reconstructed_length - 1.0).abs() < 1e-15);

        let r = breakpoints_and_jumps(&[z(1.0, 0.0), z(0.0, 1.0)]).unwrap();
        let thetas: Vec<f64> = r.breakpoints.iter().map(|b| b.theta).collect();
        assert!((thetas[0] - FRAC_PI_2).abs() < 1e-15 && (thetas[1] - PI).abs() < 1e-15);
        assert!(r.breakpoints.iter().all(|b| (b.jump - 2.0).abs() < 1e-15));
        assert!((r.reconstructed_length - 2.0).abs() < 1e-15);

        let r = breakpoints_and_jumps(&[z(1.0, 0.0), z(-2.0, 0.0)]).unwrap();
        assert_eq!(r.breakpoints.len(), 1);
        assert!((r.breakpoints[0].theta - PI).abs() < 1e-15);
        assert!((r.breakpoints[0].jump - 6.0).abs() < 1e-15);
        assert!((r.reconstructed_length - 3.0).abs() < 1e-15);

        assert_eq!(breakpoints_and_jumps(&[]), Err(HeightsError::NoPoints));
        assert_eq!(breakpoints_and_jumps(&[z(0.0, 0.0)]), Err(HeightsError::NoPoints));
    }

    #[test]
    fn finite_difference_examples() {
        let fd = finite_difference_jump(&[z(0.0, 1.0)], FRAC_PI_2, 1e-6).unwrap();
        assert!((fd - 2.0).abs() < 1e-5);
        let fd = finite_difference_jump(&[z(1.0, 0.0), z(0.0, 1.0)], PI, 1e-6).unwrap();
        assert!((fd - 2.0).abs() < 1e-5);
        // away from breakpoints the sweep is smooth
        let fd = finite_difference_jump(&[z(1.0, 0.0), z(0.0, 1.0)], 1.0, 1e-6).unwrap();
        assert!(fd.abs() < 1e-5);
        assert_eq!(
            finite_difference_jump(&[z(0.0, 1.0)], FRAC_PI_2, 0.0),
            Err(HeightsError::NonPositiveStep)
        );
    }

    #[test]
    fn developed_length_examples() {
        assert!((developed_length(&[z(3.0, 4.0)]).unwrap() - 5.0).abs() < 1e-15);
        let v = developed_length(&[z(1.0, 0.0), z(0.0, 1.0), z(-1.0, -1.0)]).unwrap();
        assert!((v - (2.0 + 2.0_f64.sqrt())).abs() < 1e-15);
        assert_eq!(developed_length(&[]), Err(HeightsError::NoPoints));
    }

    #[test]
    fn reconstruction_identity_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for _ in 0..100 {
            let points = random_points(&mut rng, 12, 1e3);
            let total = developed_length(&points).unwrap();
            let r = breakpoints_and_jumps(&points).unwrap();
            assert!(
                (r.reconstructed_length - total).abs() < 1e-9,
                "reconstruction mismatch: {} vs {}",
                r.reconstructed_length,
                total
            );
        }
    }

    #[test]
    fn periodicity_scaling_lipschitz() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for _ in 0..50 {
            let points = random_points(&mut rng, 8, 10.0);
            let bound = developed_length(&points).unwrap();
            let t1 = rng.gen_range(0.0..2.0 * PI);
            let t2 = rng.gen_range(0.0..2.0 * PI);
            assert!((height_at(&points, t1 + PI) - height_at(&points, t1)).abs() < 1e-12 * bound.max(1.0));
            let scale = rng.gen_range(0.1..5.0);
            let scaled: Vec<PlanePoint> = points.iter().map(|z| scale * z).collect();
            assert!(
                (height_at(&scaled, t1) - scale * height_at(&points, t1)).abs()
                    < 1e-12 * bound.max(1.0) * scale
            );
            let lip = (height_at(&points, t1) - height_at(&points, t2)).abs();
            assert!(lip <= bound * (t1 - t2).abs() + 1e-9);
        }
    }

    #[test]
    fn canonicalize_preserves_height_and_modulus() {
        let mut rng = ChaCha8Rng::seed_from_u64(59);
        for _ in 0..50 {
            let mut points = random_points(&mut rng, 8, 5.0);
            // inject exact collinear duplicates and zeros
            points.push(points[0] * 2.0);
            points.push(-points[0]);
            points.push(z(0.0, 0.0));
            let canonical = canonicalize(&points);
            let before: f64 = points.iter().map(|p| p.norm()).sum();
            let after: f64 = canonical.iter().map(|p| p.norm()).sum();
            assert!((before - after).abs() < 1e-12 * before.max(1.0));
            for _ in 0..64 {
                let t = rng.gen_range(0.0..PI);
                assert!(
                    (height_at(&points, t) - height_at(&canonical, t)).abs()
                        < 1e-12 * before.max(1.0)
                );
            }
        }
    }

    #[test]
    fn rotation_covariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        let points = random_points(&mut rng, 10, 3.0);
        let base = breakpoints_and_jumps(&points).unwrap();
        for _ in 0..16 {
            let alpha = rng.gen_range(0.0..PI);
            let spin = Complex64::from_polar(1.0, alpha);
            let rotated: Vec<PlanePoint> = points.iter().map(|p| spin * p).collect();
            let report = breakpoints_and_jumps(&rotated).unwrap();
            assert_eq!(report.breakpoints.len(), base.breakpoints.len());
            // breakpoints shift by -alpha mod pi with the same jump multiset
            let mut expected: Vec<Breakpoint> = base
                .breakpoints
                .iter()
                .map(|b| {
                    let mut t = (b.theta - alpha).rem_euclid(PI);
                    if t <= 1e-12 {
                        t = PI;
                    }
                    Breakpoint { theta: t, jump: b.jump }
                })
                .collect();
            expected.sort_by(|p, q| p.theta.total_cmp(&q.theta));
            for (got, want) in report.breakpoints.iter().zip(expected.iter()) {
                assert!((got.theta - want.theta).abs() < 1e-9 || (got.theta - want.theta).abs() > PI - 1e-9);
                assert!((got.jump - want.jump).abs() < 1e-9);
            }
        }
    }
}
