//! Special-relativistic kinematics for spin-1/2 particles.
//!
//! Natural units, c = 1: every speed is a dimensionless fraction strictly
//! below 1. The geometry is the perpendicular configuration throughout —
//! particle momenta in the yz-plane, observer boost along x — which is the
//! only case in which the closed form
//!
//! ```text
//!   Ω(u, v) = arctan( sinh ξ · sinh ζ / (cosh ξ + cosh ζ) )
//! ```
//!
//! for the Wigner angle holds (ξ, ζ the particle and observer rapidities).
//! Non-perpendicular direction pairs are rejected rather than silently
//! mishandled.

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{pauli_dot, ComplexMatrix};

/// `|u_dir · v_dir|` above this is treated as out-of-scope geometry.
pub const PERPENDICULARITY_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum RelativityError {
    #[error("speed {0} is not in [0, 1) (superluminal)")]
    Superluminal(f64),
    #[error("speed {0} must be nonnegative")]
    NegativeSpeed(f64),
    #[error("velocity ({0}, {1}, {2}) has norm >= 1")]
    SuperluminalVelocity(f64, f64, f64),
    #[error("direction has norm {0}, expected a unit vector")]
    NotUnit(f64),
    #[error("momentum and boost directions are not perpendicular (|cos| = {0:e})")]
    NotPerpendicular(f64),
}

fn check_speed(speed: f64) -> Result<(), RelativityError> {
    if speed < 0.0 {
        return Err(RelativityError::NegativeSpeed(speed));
    }
    if speed >= 1.0 || speed.is_nan() {
        return Err(RelativityError::Superluminal(speed));
    }
    Ok(())
}

/// A 3-velocity as a fraction of the speed of light, strictly subluminal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Velocity {
    components: [f64; 3],
}

impl Velocity {
    pub fn new(vx: f64, vy: f64, vz: f64) -> Result<Self, RelativityError> {
        let norm_sq = vx * vx + vy * vy + vz * vz;
        if norm_sq >= 1.0 || norm_sq.is_nan() {
            return Err(RelativityError::SuperluminalVelocity(vx, vy, vz));
        }
        Ok(Self {
            components: [vx, vy, vz],
        })
    }

    pub fn zero() -> Self {
        Self {
            components: [0.0; 3],
        }
    }

    pub fn components(&self) -> [f64; 3] {
        self.components
    }

    pub fn speed(&self) -> f64 {
        let [x, y, z] = self.components;
        (x * x + y * y + z * z).sqrt()
    }

    /// Lorentz factor γ = 1/√(1 − |v|²).
    pub fn gamma(&self) -> f64 {
        let [x, y, z] = self.components;
        1.0 / (1.0 - (x * x + y * y + z * z)).sqrt()
    }

    pub fn dot(&self, other: &Velocity) -> f64 {
        self.components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a * b)
            .sum()
    }
}

/// Rapidity ξ = artanh(speed), so that cosh ξ = 1/√(1 − speed²).
pub fn rapidity(speed: f64) -> Result<f64, RelativityError> {
    check_speed(speed)?;
    Ok(speed.atanh())
}

/// Wigner angle for a particle at speed `u_speed` whose momentum is
/// perpendicular to an observer boost at speed `v_speed`.
///
/// Zero when either speed vanishes; approaches π/2 as both approach the
/// speed of light; symmetric and monotone nondecreasing in each argument.
pub fn wigner_angle(u_speed: f64, v_speed: f64) -> Result<f64, RelativityError> {
    check_speed(u_speed)?;
    check_speed(v_speed)?;
    let gamma_u = 1.0 / (1.0 - u_speed * u_speed).sqrt();
    let gamma_v = 1.0 / (1.0 - v_speed * v_speed).sqrt();
    // sinh ξ = γ_u·u, sinh ζ = γ_v·v; grouped so the expression is
    // bit-for-bit symmetric under argument exchange.
    Ok((((gamma_u * u_speed) * (gamma_v * v_speed)) / (gamma_u + gamma_v)).atan())
}

/// A rotation of spin space: angle about a unit axis.
///
/// Kinematically produced Wigner rotations have angles in [0, π/2); the
/// representation itself is well defined for any finite angle, and
/// [`WignerRotation::new`] accepts one so the rotation algebra can be
/// tested at e.g. Ω = π.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WignerRotation {
    angle: f64,
    axis: [f64; 3],
}

impl WignerRotation {
    pub fn new(angle: f64, axis: [f64; 3]) -> Result<Self, RelativityError> {
        let norm = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
        if (norm - 1.0).abs() > 1e-9 {
            return Err(RelativityError::NotUnit(norm));
        }
        Ok(Self {
            angle,
            axis: [axis[0] / norm, axis[1] / norm, axis[2] / norm],
        })
    }

    pub fn identity() -> Self {
        Self {
            angle: 0.0,
            axis: [0.0, 0.0, 1.0],
        }
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn axis(&self) -> [f64; 3] {
        self.axis
    }
}

/// Wigner rotation for a particle moving along unit `u_dir` at `u_speed`,
/// seen from a frame boosted along unit `v_dir` at `v_speed`.
///
/// The axis is `v_dir × u_dir` normalized. Either speed being zero gives
/// the identity rotation with the conventional axis (0,0,1); collinear
/// directions likewise (the Wigner rotation of collinear boosts is
/// trivial). Anything between collinear and perpendicular is rejected.
pub fn wigner_rotation(
    u_dir: [f64; 3],
    v_dir: [f64; 3],
    u_speed: f64,
    v_speed: f64,
) -> Result<WignerRotation, RelativityError> {
    check_speed(u_speed)?;
    check_speed(v_speed)?;
    for d in [u_dir, v_dir] {
        let norm = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
        if (norm - 1.0).abs() > 1e-9 {
            return Err(RelativityError::NotUnit(norm));
        }
    }
    if u_speed == 0.0 || v_speed == 0.0 {
        return Ok(WignerRotation::identity());
    }
    let cross = [
        v_dir[1] * u_dir[2] - v_dir[2] * u_dir[1],
        v_dir[2] * u_dir[0] - v_dir[0] * u_dir[2],
        v_dir[0] * u_dir[1] - v_dir[1] * u_dir[0],
    ];
    let cross_norm = (cross[0] * cross[0] + cross[1] * cross[1] + cross[2] * cross[2]).sqrt();
    if cross_norm < 1e-12 {
        return Ok(WignerRotation::identity());
    }
    let cos = u_dir[0] * v_dir[0] + u_dir[1] * v_dir[1] + u_dir[2] * v_dir[2];
    if cos.abs() > PERPENDICULARITY_TOL {
        return Err(RelativityError::NotPerpendicular(cos.abs()));
    }
    let angle = wigner_angle(u_speed, v_speed)?;
    Ok(WignerRotation {
        angle,
        axis: [
            cross[0] / cross_norm,
            cross[1] / cross_norm,
            cross[2] / cross_norm,
        ],
    })
}

/// Spin-1/2 representation of a rotation:
/// `D = cos(Ω/2)·1 + i sin(Ω/2)·(n·σ)`, a special-unitary 2×2 matrix.
pub fn spin_half_rep(rotation: &WignerRotation) -> ComplexMatrix {
    let half = rotation.angle * 0.5;
    let (c, s) = (half.cos(), half.sin());
    let n = rotation.axis;
    ComplexMatrix::from_vec(
        2,
        vec![
            Complex64::new(c, s * n[2]),
            Complex64::new(s * n[1], s * n[0]),
            Complex64::new(-s * n[1], s * n[0]),
            Complex64::new(c, -s * n[2]),
        ],
    )
}

/// Relativistic composition of velocities: the result of boosting by `v`
/// and then moving at `u` as measured in the boosted frame.
///
/// Splitting `u` into components parallel and perpendicular to `v`,
/// `w_∥ = (v + u_∥)/(1 + v·u)` and `w_⊥ = u_⊥/(γ_v (1 + v·u))`. The result
/// is always subluminal.
pub fn einstein_add(v: &Velocity, u: &Velocity) -> Velocity {
    let v_speed = v.speed();
    if v_speed == 0.0 {
        return *u;
    }
    let vc = v.components();
    let uc = u.components();
    let v_hat = [vc[0] / v_speed, vc[1] / v_speed, vc[2] / v_speed];
    let u_par_len = uc[0] * v_hat[0] + uc[1] * v_hat[1] + uc[2] * v_hat[2];
    let dot = v.dot(u);
    let gamma_v = v.gamma();
    let denom = 1.0 + dot;
    let mut w = [0.0; 3];
    for k in 0..3 {
        let u_par = u_par_len * v_hat[k];
        let u_perp = uc[k] - u_par;
        w[k] = (vc[k] + u_par) / denom + u_perp / (gamma_v * denom);
    }
    // Exact arithmetic keeps |w| < 1; guard against rounding at the
    // light-speed limit.
    let norm_sq = w[0] * w[0] + w[1] * w[1] + w[2] * w[2];
    if norm_sq >= 1.0 {
        let scale = (1.0 - 1e-15) / norm_sq.sqrt();
        for wk in &mut w {
            *wk *= scale;
        }
    }
    Velocity {
        components: w,
    }
}

/// Spin observable along unit direction `a` for a particle with composite
/// velocity `w`, as derived from the relativistic center of mass:
///
/// ```text
///   â = ( √(1−|w|²)·a_⊥ + a_∥ )·σ / √(1 + (w·a)² − |w|²)
/// ```
///
/// with `a_∥`, `a_⊥` the components of `a` along and across `w`. Hermitian
/// with eigenvalues ±1; reduces to `a·σ` when `w = 0`.
pub fn relativistic_spin_operator(
    a: [f64; 3],
    w: &Velocity,
) -> Result<ComplexMatrix, RelativityError> {
    let a_norm = (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt();
    if (a_norm - 1.0).abs() > 1e-9 {
        return Err(RelativityError::NotUnit(a_norm));
    }
    let w_speed = w.speed();
    if w_speed == 0.0 {
        return Ok(pauli_dot(a));
    }
    let wc = w.components();
    let w_hat = [wc[0] / w_speed, wc[1] / w_speed, wc[2] / w_speed];
    let a_par_len = a[0] * w_hat[0] + a[1] * w_hat[1] + a[2] * w_hat[2];
    let w_dot_a = wc[0] * a[0] + wc[1] * a[1] + wc[2] * a[2];
    let shrink = (1.0 - w_speed * w_speed).sqrt();
    let denom_sq = 1.0 + w_dot_a * w_dot_a - w_speed * w_speed;
    assert!(denom_sq > 0.0, "degenerate denominator for subluminal w");
    let denom = denom_sq.sqrt();
    let mut direction = [0.0; 3];
    for k in 0..3 {
        let a_par = a_par_len * w_hat[k];
        let a_perp = a[k] - a_par;
        direction[k] = (shrink * a_perp + a_par) / denom;
    }
    Ok(pauli_dot(direction))
}
