//! Round-trip optical paths between the slits, the mirror and the screen,
//! their differences (PLΔ), and the λ₂ probe bound on the mirror position.
//!
//! Sign convention: z is measured from the mirror's rest position, positive
//! away from the slit plane, so the vertical slit-to-mirror distance is
//! `z + L`. The path-difference table usually quoted for this apparatus
//! labels its rows with the opposite sign; the value set is the same.

use crate::constants::PLANCK_H;
use crate::error::{ensure_positive, Error, Result};
use crate::model::ExperimentGeometry;

/// Round-trip paths for the two slits at one screen position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathPair {
    pub path_from_a: f64,
    pub path_from_b: f64,
    pub pl_delta: f64,
}

/// Upper end of the bracket searched by [`solve_slit_separation`], in λ₁.
pub const SEPARATION_BRACKET_LAMBDAS: f64 = 10.0;

/// Unchecked round-trip path 2·√((z + L)² + lateral²/4).
#[inline]
pub(crate) fn phase_path(z: f64, lateral: f64, distance: f64) -> f64 {
    2.0 * (z + distance).hypot(0.5 * lateral)
}

fn check_mirror_position(z_m: f64, geom: &ExperimentGeometry) -> Result<()> {
    if z_m + geom.slit_mirror_distance > 0.0 {
        Ok(())
    } else {
        Err(Error::GeometryViolation(format!(
            "mirror at z = {z_m:e} cm is not beyond the slit plane (L = {:e} cm)",
            geom.slit_mirror_distance
        )))
    }
}

/// Slit → mirror → screen path for a screen point `lateral` away from the slit.
pub fn round_trip_path(z_m: f64, lateral: f64, geom: &ExperimentGeometry) -> Result<f64> {
    check_mirror_position(z_m, geom)?;
    Ok(phase_path(z_m, lateral, geom.slit_mirror_distance))
}

/// Paths from both slits to a screen point `d` from slit A (`0 ≤ d ≤ S`).
pub fn pl_delta(z_m: f64, d: f64, geom: &ExperimentGeometry) -> Result<PathPair> {
    check_mirror_position(z_m, geom)?;
    let s = geom.slit_separation;
    if !(0.0..=s).contains(&d) {
        return Err(Error::GeometryViolation(format!(
            "screen position {d:e} cm outside [0, S = {s:e}]"
        )));
    }
    let path_from_a = phase_path(z_m, d, geom.slit_mirror_distance);
    let path_from_b = phase_path(z_m, s - d, geom.slit_mirror_distance);
    Ok(PathPair {
        path_from_a,
        path_from_b,
        pl_delta: (path_from_a - path_from_b).abs(),
    })
}

/// Slit separation S for which the path difference at the screen edge
/// (D = S) equals `target`, found by bisection on `[0, 10 λ₁]`.
pub fn solve_slit_separation(target: f64, z_m: f64, geom: &ExperimentGeometry) -> Result<f64> {
    check_mirror_position(z_m, geom)?;
    let lambda1 = ensure_positive("lambda1", geom.lambda1)?;
    let u = z_m + geom.slit_mirror_distance;
    // PLΔ(D = S) = 2(√(u² + S²/4) − u), increasing in S
    let edge = |s: f64| phase_path(z_m, s, geom.slit_mirror_distance) - 2.0 * u;

    let (mut lo, mut hi) = (0.0, SEPARATION_BRACKET_LAMBDAS * lambda1);
    let tol = 1e-10 * lambda1;
    let no_root = Error::NoRootInBracket { target, lo, hi };
    if !(target >= 0.0) || edge(hi) < target {
        return Err(no_root);
    }
    if target == 0.0 {
        return Ok(0.0);
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let f = edge(mid) - target;
        if f.abs() < tol {
            return Ok(mid);
        }
        if f < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Half-width of the mirror positions compatible with a λ₂ detection,
/// |z_m| ≤ W_a / (4 cos θ).
pub fn probe_resolution(lambda2: f64, theta: f64, aperture: f64) -> Result<f64> {
    ensure_positive("lambda2", lambda2)?;
    let aperture = ensure_positive("probe_aperture", aperture)?;
    if !(theta >= 0.0 && theta < std::f64::consts::FRAC_PI_2) {
        return Err(Error::GeometryViolation(format!(
            "probe angle {theta} rad outside [0, π/2)"
        )));
    }
    Ok(aperture / (4.0 * theta.cos()))
}

/// Probe bound for a configured geometry.
pub fn geometry_probe_resolution(geom: &ExperimentGeometry) -> Result<f64> {
    probe_resolution(geom.lambda2, geom.probe_angle, geom.probe_aperture)
}

/// Worst-case mirror drift between the λ₂ impact and the λ₁ arrival, for a
/// recoil velocity h/(λ₂M) sustained over `dt`.
pub fn recoil_displacement(lambda2: f64, mass: f64, dt: f64) -> Result<f64> {
    let lambda2 = ensure_positive("lambda2", lambda2)?;
    let mass = ensure_positive("mass", mass)?;
    if !(dt >= 0.0 && dt.is_finite()) {
        return Err(Error::NonPositiveInput {
            name: "dt",
            value: dt,
        });
    }
    Ok(PLANCK_H / (lambda2 * mass) * dt)
}
