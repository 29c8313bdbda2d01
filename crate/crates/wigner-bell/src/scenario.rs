//! Momentum⊗spin scenarios and their Lorentz-transformed reduced spin
//! states.
//!
//! A scenario holds a superposition of momentum branches — each branch a
//! tuple of per-particle unit directions in the yz-plane with a complex
//! amplitude — together with a spin state for N ∈ {2, 3} qubits. All
//! particles share one speed and the observer boost is along x, so every
//! particle picks up the same Wigner angle Ω while the rotation axis
//! `x̂ × direction` varies per particle and per branch.
//!
//! Because boosts map distinct momenta to distinct momenta, the momentum
//! kets of different branches stay orthogonal, cross terms vanish under
//! the momentum trace, and the reduced spin state observed in the moving
//! frame is the branch mixture
//!
//! ```text
//!   ρ'_spin = Σ_b |c_b|² · U_b ρ_spin U_b†,   U_b = ⊗_k D(Ω, x̂ × dir_{b,k})
//! ```
//!
//! which is what [`MomentumScenario::transform`] computes.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{kron_all, ComplexMatrix, StateVector, HERMITICITY_TOL};
use crate::relativity::{spin_half_rep, wigner_angle, RelativityError, WignerRotation};

/// Momentum directions must be unit vectors to within this tolerance.
pub const DIRECTION_NORM_TOL: f64 = 1e-12;
/// Momentum directions must lie in the yz-plane: |x component| below this.
pub const YZ_PLANE_TOL: f64 = 1e-9;
/// Branch amplitudes must satisfy Σ|c|² = 1 to within this tolerance.
pub const AMPLITUDE_NORM_TOL: f64 = 1e-12;
/// Eigenvalues of a reduced spin state may dip below zero by at most this.
pub const PSD_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("momentum direction has norm {0}, expected unit within 1e-12")]
    NonUnitDirection(f64),
    #[error("momentum direction is off the yz-plane (|x| = {0:e})")]
    OffPlane(f64),
    #[error("scenario must have at least one momentum branch")]
    NoBranches,
    #[error("branches disagree on particle count")]
    RaggedBranches,
    #[error("qubit count must be 2 or 3, got {0}")]
    UnsupportedQubitCount(usize),
    #[error("spin state dimension {dim} does not match {n} qubits")]
    SpinDimensionMismatch { dim: usize, n: usize },
    #[error("branch amplitudes are not normalized: Σ|c|² = {0}")]
    NotNormalized(f64),
    #[error("speed {0} is not in [0, 1)")]
    InvalidSpeed(f64),
    #[error("wigner angle {0} is outside [0, π/2)")]
    AngleOutOfRange(f64),
    #[error("density matrix invariant violated: {0}")]
    InvalidDensity(String),
    #[error(transparent)]
    Relativity(#[from] RelativityError),
}

/// One orthogonal component of a momentum superposition: an amplitude and
/// one unit direction per particle.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumBranch {
    amplitude: Complex64,
    directions: Vec<[f64; 3]>,
}

impl MomentumBranch {
    pub fn new(amplitude: Complex64, directions: Vec<[f64; 3]>) -> Result<Self, ScenarioError> {
        for d in &directions {
            let norm = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
            if (norm - 1.0).abs() > DIRECTION_NORM_TOL {
                return Err(ScenarioError::NonUnitDirection(norm));
            }
        }
        Ok(Self {
            amplitude,
            directions,
        })
    }

    pub fn amplitude(&self) -> Complex64 {
        self.amplitude
    }

    pub fn directions(&self) -> &[[f64; 3]] {
        &self.directions
    }
}

/// The momentum configurations used by the bundled figures: two branches,
/// the second the negation of the first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MomentumSetting {
    /// Two qubits moving apart along ±z.
    TwoOpposite,
    /// Two qubits moving together along z.
    TwoSame,
    /// Three qubits at 120° from each other in the yz-plane.
    ThreeSymmetric,
    /// Three qubits moving together along z.
    ThreeSame,
}

impl MomentumSetting {
    pub fn n_qubits(&self) -> usize {
        match self {
            Self::TwoOpposite | Self::TwoSame => 2,
            Self::ThreeSymmetric | Self::ThreeSame => 3,
        }
    }

    /// The first branch's direction tuple; the second branch negates it.
    pub fn primary_directions(&self) -> Vec<[f64; 3]> {
        let half_sqrt3 = 3.0f64.sqrt() / 2.0;
        match self {
            Self::TwoOpposite => vec![[0.0, 0.0, 1.0], [0.0, 0.0, -1.0]],
            Self::TwoSame => vec![[0.0, 0.0, 1.0], [0.0, 0.0, 1.0]],
            Self::ThreeSymmetric => vec![
                [0.0, 0.0, 1.0],
                [0.0, half_sqrt3, -0.5],
                [0.0, -half_sqrt3, -0.5],
            ],
            Self::ThreeSame => vec![[0.0, 0.0, 1.0], [0.0, 0.0, 1.0], [0.0, 0.0, 1.0]],
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::TwoOpposite => "two-opposite",
            Self::TwoSame => "two-same",
            Self::ThreeSymmetric => "three-symmetric",
            Self::ThreeSame => "three-same",
        }
    }
}

impl std::fmt::Display for MomentumSetting {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Spin state `cos θ_s|0…0⟩ + sin θ_s|1…1⟩` for `n` ∈ {2, 3} qubits.
pub fn make_generalized_ghz_spin(n: usize, theta_s: f64) -> Result<StateVector, ScenarioError> {
    if n != 2 && n != 3 {
        return Err(ScenarioError::UnsupportedQubitCount(n));
    }
    let dim = 1 << n;
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
    amplitudes[0] = Complex64::new(theta_s.cos(), 0.0);
    amplitudes[dim - 1] = Complex64::new(theta_s.sin(), 0.0);
    StateVector::new(amplitudes).map_err(|_| ScenarioError::UnsupportedQubitCount(n))
}

/// Three-qubit spin state
/// `sin θ_s cos φ_s|001⟩ + sin θ_s sin φ_s|010⟩ + cos θ_s|100⟩`.
pub fn make_generalized_w_spin(theta_s: f64, phi_s: f64) -> StateVector {
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); 8];
    amplitudes[0b001] = Complex64::new(theta_s.sin() * phi_s.cos(), 0.0);
    amplitudes[0b010] = Complex64::new(theta_s.sin() * phi_s.sin(), 0.0);
    amplitudes[0b100] = Complex64::new(theta_s.cos(), 0.0);
    StateVector::new(amplitudes).expect("W amplitudes always have unit norm")
}

/// The two momentum branches `cos θ_m|+dirs⟩ + sin θ_m|−dirs⟩` of a
/// bundled setting. A zero amplitude is kept (with weight zero) so the
/// branch structure is independent of θ_m.
pub fn make_momentum_branches(setting: MomentumSetting, theta_m: f64) -> Vec<MomentumBranch> {
    let dirs = setting.primary_directions();
    let negated: Vec<[f64; 3]> = dirs.iter().map(|d| [-d[0], -d[1], -d[2]]).collect();
    vec![
        MomentumBranch::new(Complex64::new(theta_m.cos(), 0.0), dirs).unwrap(),
        MomentumBranch::new(Complex64::new(theta_m.sin(), 0.0), negated).unwrap(),
    ]
}

/// A reduced spin density matrix: Hermitian, unit trace, positive
/// semidefinite (eigenvalues ≥ −1e-10), dimension 2^N.
#[derive(Debug, Clone)]
pub struct SpinDensity {
    matrix: ComplexMatrix,
    n_qubits: usize,
}

impl SpinDensity {
    pub fn new(matrix: ComplexMatrix) -> Result<Self, ScenarioError> {
        let dim = matrix.dim();
        let n_qubits = dim.trailing_zeros() as usize;
        if dim == 0 || dim != 1 << n_qubits {
            return Err(ScenarioError::InvalidDensity(format!(
                "dimension {dim} is not a power of two"
            )));
        }
        let dev = matrix.hermiticity_deviation();
        if dev > HERMITICITY_TOL {
            return Err(ScenarioError::InvalidDensity(format!(
                "not Hermitian (deviation {dev:e})"
            )));
        }
        let trace = matrix.trace();
        if (trace - Complex64::new(1.0, 0.0)).norm() > 1e-10 {
            return Err(ScenarioError::InvalidDensity(format!(
                "trace {trace} is not 1"
            )));
        }
        if !matrix.is_psd(PSD_TOL) {
            return Err(ScenarioError::InvalidDensity(
                "negative eigenvalue beyond tolerance".into(),
            ));
        }
        Ok(Self { matrix, n_qubits })
    }

    /// Wraps a pure state as a density matrix.
    pub fn from_pure(state: &StateVector) -> Result<Self, ScenarioError> {
        Self::new(state.projector())
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// tr(ρ²); 1 exactly on pure states.
    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }
}

/// N qubits in a two-or-more-branch momentum superposition with a common
/// speed, a spin state, and an optional observer speed.
#[derive(Debug, Clone)]
pub struct MomentumScenario {
    n_qubits: usize,
    branches: Vec<MomentumBranch>,
    particle_speed: f64,
    observer_speed: Option<f64>,
    spin_state: StateVector,
}

impl MomentumScenario {
    /// Validates invariants and merges duplicate branch direction tuples
    /// by amplitude addition (the momentum kets of equal tuples are the
    /// same ket, not orthogonal ones).
    pub fn new(
        branches: Vec<MomentumBranch>,
        spin_state: StateVector,
        particle_speed: f64,
        observer_speed: Option<f64>,
    ) -> Result<Self, ScenarioError> {
        if branches.is_empty() {
            return Err(ScenarioError::NoBranches);
        }
        let n_qubits = branches[0].directions.len();
        if n_qubits != 2 && n_qubits != 3 {
            return Err(ScenarioError::UnsupportedQubitCount(n_qubits));
        }
        if branches.iter().any(|b| b.directions.len() != n_qubits) {
            return Err(ScenarioError::RaggedBranches);
        }
        for branch in &branches {
            for d in &branch.directions {
                if d[0].abs() > YZ_PLANE_TOL {
                    return Err(ScenarioError::OffPlane(d[0].abs()));
                }
            }
        }
        if spin_state.dim() != 1 << n_qubits {
            return Err(ScenarioError::SpinDimensionMismatch {
                dim: spin_state.dim(),
                n: n_qubits,
            });
        }
        if !(0.0..1.0).contains(&particle_speed) {
            return Err(ScenarioError::InvalidSpeed(particle_speed));
        }
        if let Some(v) = observer_speed {
            if !(0.0..1.0).contains(&v) {
                return Err(ScenarioError::InvalidSpeed(v));
            }
        }

        // Merge branches with identical direction tuples.
        let mut merged: Vec<MomentumBranch> = Vec::with_capacity(branches.len());
        for branch in branches {
            match merged
                .iter_mut()
                .find(|m| m.directions == branch.directions)
            {
                Some(existing) => existing.amplitude += branch.amplitude,
                None => merged.push(branch),
            }
        }

        let weight: f64 = merged.iter().map(|b| b.amplitude.norm_sqr()).sum();
        if (weight - 1.0).abs() > AMPLITUDE_NORM_TOL {
            return Err(ScenarioError::NotNormalized(weight));
        }

        Ok(Self {
            n_qubits,
            branches: merged,
            particle_speed,
            observer_speed,
            spin_state,
        })
    }

    /// Convenience constructor for the bundled settings.
    pub fn from_setting(
        setting: MomentumSetting,
        theta_m: f64,
        spin_state: StateVector,
        particle_speed: f64,
        observer_speed: Option<f64>,
    ) -> Result<Self, ScenarioError> {
        Self::new(
            make_momentum_branches(setting, theta_m),
            spin_state,
            particle_speed,
            observer_speed,
        )
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn branches(&self) -> &[MomentumBranch] {
        &self.branches
    }

    pub fn spin_state(&self) -> &StateVector {
        &self.spin_state
    }

    pub fn particle_speed(&self) -> f64 {
        self.particle_speed
    }

    pub fn observer_speed(&self) -> Option<f64> {
        self.observer_speed
    }

    /// Wigner angle implied by the stored particle and observer speeds.
    pub fn omega_from_speeds(&self) -> Option<f64> {
        self.observer_speed
            .map(|v| wigner_angle(self.particle_speed, v).expect("speeds validated at construction"))
    }

    /// Per-branch local unitary `⊗_k D(Ω, x̂ × dir_k)`.
    fn branch_unitary(&self, branch: &MomentumBranch, omega: f64) -> ComplexMatrix {
        let factors: Vec<ComplexMatrix> = branch
            .directions
            .iter()
            .map(|d| {
                // x̂ × (0, y, z) = (0, -z, y); unit because d is a unit
                // vector in the yz-plane.
                let axis = [0.0, -d[2], d[1]];
                let norm = (axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
                let rotation =
                    WignerRotation::new(omega, [0.0, axis[1] / norm, axis[2] / norm])
                        .expect("normalized axis");
                spin_half_rep(&rotation)
            })
            .collect();
        kron_all(&factors)
    }

    /// Reduced spin state seen by the boosted observer at Wigner angle
    /// `omega`.
    pub fn transform(&self, omega: f64) -> Result<SpinDensity, ScenarioError> {
        if !(0.0..std::f64::consts::FRAC_PI_2).contains(&omega) {
            return Err(ScenarioError::AngleOutOfRange(omega));
        }
        let dim = self.spin_state.dim();
        let rho_spin = self.spin_state.projector();
        let mut out = ComplexMatrix::zeros(dim);
        for branch in &self.branches {
            let weight = branch.amplitude.norm_sqr();
            if weight == 0.0 {
                continue;
            }
            let u = self.branch_unitary(branch, omega);
            let rotated = &(&u * &rho_spin) * &u.adjoint();
            out = &out + &rotated.scale(Complex64::new(weight, 0.0));
        }
        SpinDensity::new(out)
    }
}
