//! Bell functionals in correlational form.
//!
//! A functional is a weighted sum `Σ T_{i₁…i_N} Q_{i₁…i_N}` over
//! setting-index tuples, where `Q` is the correlation function
//! `tr[ρ · a_{i₁}·σ ⊗ … ⊗ a_{i_N}·σ]` and index 0 means no measurement on
//! that qubit (the identity is substituted). Both bundled functionals are
//! normalized so that the classical bound is 1: a value above 1 rules out
//! local-hidden-variable models.
//!
//! - [`BellFunctional::chsh`]: two qubits, two settings,
//!   `(Q₁₁ + Q₁₂ + Q₂₁ − Q₂₂)/2`, quantum maximum √2.
//! - [`BellFunctional::i3`]: three qubits, two settings, 17 terms mixing
//!   one- and three-party correlators with weights ±1/3.
//!
//! Measurements are nonrelativistic Pauli projections `a·σ`. The
//! relativistic spin operator is unitarily equivalent to a Pauli
//! projection along a rotated direction, so once Bell functionals are
//! maximized over every measurement direction the distinction drops out;
//! see [`crate::relativity::relativistic_spin_operator`] for the operator
//! itself.

use std::collections::BTreeMap;

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{
    hermitian_eigenvalues, kron_all, pauli_dot, sigma_x, sigma_y, sigma_z, ComplexMatrix,
};
use crate::scenario::SpinDensity;

/// Largest imaginary residue tolerated when a correlation is read off a
/// trace; anything above this indicates a non-Hermitian input and panics.
pub const IMAGINARY_RESIDUE_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum BellError {
    #[error("expected {expected} parties, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("state dimension {dim} does not match {parties} parties")]
    DimensionMismatch { dim: usize, parties: usize },
}

/// Coefficient table of an N-party, 2-setting Bell functional with
/// classical bound 1.
#[derive(Debug, Clone)]
pub struct BellFunctional {
    n_parties: usize,
    n_settings: usize,
    coefficients: BTreeMap<Vec<u8>, f64>,
}

impl BellFunctional {
    /// CHSH in the normalized correlational form
    /// `(Q₁₁ + Q₁₂ + Q₂₁ − Q₂₂)/2 ≤ 1`.
    pub fn chsh() -> Self {
        let mut coefficients = BTreeMap::new();
        coefficients.insert(vec![1, 1], 0.5);
        coefficients.insert(vec![1, 2], 0.5);
        coefficients.insert(vec![2, 1], 0.5);
        coefficients.insert(vec![2, 2], -0.5);
        Self {
            n_parties: 2,
            n_settings: 2,
            coefficients,
        }
    }

    /// Seventeen-term three-qubit two-setting inequality with one- and
    /// three-party correlators, classical bound 1:
    ///
    /// ```text
    ///   ( −Q₁₁₁ + Q₂₂₁ + Q₂₁₂ + Q₁₂₂ − Q₂₂₂
    ///     − Q₁₁₀ − Q₁₂₀ − Q₂₁₀ − Q₁₀₁ − Q₁₀₂ − Q₂₀₁
    ///     − Q₀₁₁ − Q₀₁₂ − Q₀₂₁ + Q₂₀₀ + Q₀₂₀ + Q₀₀₂ ) / 3 ≤ 1
    /// ```
    pub fn i3() -> Self {
        let third = 1.0 / 3.0;
        let mut coefficients = BTreeMap::new();
        for tuple in [[2, 2, 1], [2, 1, 2], [1, 2, 2], [2, 0, 0], [0, 2, 0], [0, 0, 2]] {
            coefficients.insert(tuple.to_vec(), third);
        }
        for tuple in [
            [1, 1, 1],
            [2, 2, 2],
            [1, 1, 0],
            [1, 2, 0],
            [2, 1, 0],
            [1, 0, 1],
            [1, 0, 2],
            [2, 0, 1],
            [0, 1, 1],
            [0, 1, 2],
            [0, 2, 1],
        ] {
            coefficients.insert(tuple.to_vec(), -third);
        }
        Self {
            n_parties: 3,
            n_settings: 2,
            coefficients,
        }
    }

    pub fn n_parties(&self) -> usize {
        self.n_parties
    }

    pub fn n_settings(&self) -> usize {
        self.n_settings
    }

    /// Coefficient table, keyed by setting-index tuples.
    pub fn coefficients(&self) -> &BTreeMap<Vec<u8>, f64> {
        &self.coefficients
    }

    /// The common classical bound of the bundled functionals.
    pub fn classical_bound(&self) -> f64 {
        1.0
    }

    /// Sum of |T|, an a-priori bound on |evaluate| since every Q ∈ [−1,1].
    pub fn weight_norm(&self) -> f64 {
        self.coefficients.values().map(|c| c.abs()).sum()
    }
}

/// Measurement directions for every party and setting, stored as
/// spherical angles `(θ, φ)` per direction, four angles per party:
/// `[θ₁, φ₁, θ₂, φ₂]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementSettings {
    angles: Vec<f64>,
}

/// Unit vector from spherical angles.
pub fn spherical_direction(theta: f64, phi: f64) -> [f64; 3] {
    [
        theta.sin() * phi.cos(),
        theta.sin() * phi.sin(),
        theta.cos(),
    ]
}

impl MeasurementSettings {
    pub fn from_angles(angles: Vec<f64>) -> Result<Self, BellError> {
        if !angles.len().is_multiple_of(4) || angles.is_empty() {
            return Err(BellError::ArityMismatch {
                expected: 4,
                got: angles.len(),
            });
        }
        Ok(Self { angles })
    }

    pub fn n_parties(&self) -> usize {
        self.angles.len() / 4
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    /// Unit direction of `setting` ∈ {1, 2} for `party` (0-based).
    pub fn direction(&self, party: usize, setting: u8) -> [f64; 3] {
        assert!(setting == 1 || setting == 2, "setting index must be 1 or 2");
        let base = party * 4 + (setting as usize - 1) * 2;
        spherical_direction(self.angles[base], self.angles[base + 1])
    }
}

/// Correlation `Q = tr[ρ · O₁ ⊗ … ⊗ O_N]` with `O_k = a_k·σ` for a
/// measured party and the identity for `None` (setting index 0).
pub fn correlation(
    rho: &SpinDensity,
    directions: &[Option<[f64; 3]>],
) -> Result<f64, BellError> {
    if directions.len() != rho.n_qubits() {
        return Err(BellError::ArityMismatch {
            expected: rho.n_qubits(),
            got: directions.len(),
        });
    }
    let factors: Vec<ComplexMatrix> = directions
        .iter()
        .map(|d| match d {
            Some(a) => pauli_dot(*a),
            None => ComplexMatrix::identity(2),
        })
        .collect();
    let observable = kron_all(&factors);
    let value = (&observable * rho.matrix()).trace();
    assert!(
        value.im.abs() <= IMAGINARY_RESIDUE_TOL,
        "correlation has imaginary residue {:e}",
        value.im
    );
    Ok(value.re)
}

/// Value of the functional on `rho` at the given settings:
/// `Σ T_{i₁…i_N} Q_{i₁…i_N}`.
pub fn evaluate(
    functional: &BellFunctional,
    rho: &SpinDensity,
    settings: &MeasurementSettings,
) -> Result<f64, BellError> {
    if settings.n_parties() != functional.n_parties() {
        return Err(BellError::ArityMismatch {
            expected: functional.n_parties(),
            got: settings.n_parties(),
        });
    }
    if rho.n_qubits() != functional.n_parties() {
        return Err(BellError::DimensionMismatch {
            dim: rho.dim(),
            parties: functional.n_parties(),
        });
    }
    let mut total = 0.0;
    for (tuple, weight) in &functional.coefficients {
        let directions: Vec<Option<[f64; 3]>> = tuple
            .iter()
            .enumerate()
            .map(|(party, &i)| {
                if i == 0 {
                    None
                } else {
                    Some(settings.direction(party, i))
                }
            })
            .collect();
        total += weight * correlation(rho, &directions)?;
    }
    Ok(total)
}

/// Exact CHSH maximum of a two-qubit state in the classical-bound-1
/// normalization: with `T_{ij} = tr[ρ σ_i ⊗ σ_j]`, the maximum is
/// `√(λ₁ + λ₂)` for the two largest eigenvalues of `TᵀT`.
pub fn chsh_oracle(rho: &SpinDensity) -> Result<f64, BellError> {
    if rho.dim() != 4 {
        return Err(BellError::DimensionMismatch {
            dim: rho.dim(),
            parties: 2,
        });
    }
    let paulis = [sigma_x(), sigma_y(), sigma_z()];
    let mut t = [[0.0f64; 3]; 3];
    for (i, si) in paulis.iter().enumerate() {
        for (j, sj) in paulis.iter().enumerate() {
            let obs = crate::linalg::kron(si, sj);
            let val = (&obs * rho.matrix()).trace();
            assert!(val.im.abs() <= IMAGINARY_RESIDUE_TOL);
            t[i][j] = val.re;
        }
    }
    // M = TᵀT, real symmetric 3×3.
    let m = ComplexMatrix::from_fn(3, |i, j| {
        let acc: f64 = t.iter().map(|row| row[i] * row[j]).sum();
        Complex64::new(acc, 0.0)
    });
    let eigs = hermitian_eigenvalues(&m).expect("Gram matrix is Hermitian");
    Ok((eigs[0].max(0.0) + eigs[1].max(0.0)).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::StateVector;
    use crate::relativity::{spin_half_rep, WignerRotation};
    use crate::scenario::{make_generalized_ghz_spin, SpinDensity};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    const X: [f64; 3] = [1.0, 0.0, 0.0];
    const Z: [f64; 3] = [0.0, 0.0, 1.0];

    fn ghz3() -> SpinDensity {
        SpinDensity::from_pure(&make_generalized_ghz_spin(3, FRAC_PI_4).unwrap()).unwrap()
    }

    fn phi_plus() -> SpinDensity {
        SpinDensity::from_pure(&make_generalized_ghz_spin(2, FRAC_PI_4).unwrap()).unwrap()
    }

    #[test]
    fn chsh_table_matches_definition() {
        let f = BellFunctional::chsh();
        assert_eq!(f.n_parties(), 2);
        assert_eq!(f.coefficients().len(), 4);
        assert_eq!(f.coefficients()[&vec![1, 1]], 0.5);
        assert_eq!(f.coefficients()[&vec![2, 2]], -0.5);
        assert_eq!(f.classical_bound(), 1.0);
    }

    #[test]
    fn i3_table_has_seventeen_terms_with_unit_weight_thirds() {
        let f = BellFunctional::i3();
        assert_eq!(f.n_parties(), 3);
        assert_eq!(f.coefficients().len(), 17);
        let positives: Vec<_> = f
            .coefficients()
            .iter()
            .filter(|(_, &w)| w > 0.0)
            .map(|(t, _)| t.clone())
            .collect();
        assert_eq!(
            positives,
            vec![
                vec![0, 0, 2],
                vec![0, 2, 0],
                vec![1, 2, 2],
                vec![2, 0, 0],
                vec![2, 1, 2],
                vec![2, 2, 1],
            ]
        );
        for w in f.coefficients().values() {
            assert!((w.abs() - 1.0 / 3.0).abs() < 1e-15);
        }
        assert!((f.weight_norm() - 17.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn ghz_correlations() {
        let rho = ghz3();
        // ⟨Z⊗Z⊗Z⟩ = 0 for the balanced GHZ state
        let q = correlation(&rho, &[Some(Z), Some(Z), Some(Z)]).unwrap();
        assert!(q.abs() < 1e-14);
        // GHZ is a +1 eigenstate of X⊗X⊗X
        let q = correlation(&rho, &[Some(X), Some(X), Some(X)]).unwrap();
        assert!((q - 1.0).abs() < 1e-14);
    }

    #[test]
    fn correlation_with_no_measurements_is_the_trace() {
        let rho = phi_plus();
        let q = correlation(&rho, &[None, None]).unwrap();
        assert!((q - 1.0).abs() < 1e-14);
    }

    #[test]
    fn correlation_checks_arity() {
        let rho = phi_plus();
        assert!(matches!(
            correlation(&rho, &[Some(Z)]),
            Err(BellError::ArityMismatch { .. })
        ));
    }

    #[test]
    fn chsh_at_tsirelson_settings() {
        let rho = phi_plus();
        let r = 0.5f64.sqrt();
        // a₁ = ẑ, a₂ = x̂, b₁ = (ẑ+x̂)/√2, b₂ = (ẑ−x̂)/√2
        let q11 = correlation(&rho, &[Some(Z), Some([r, 0.0, r])]).unwrap();
        let q12 = correlation(&rho, &[Some(Z), Some([-r, 0.0, r])]).unwrap();
        let q21 = correlation(&rho, &[Some(X), Some([r, 0.0, r])]).unwrap();
        let q22 = correlation(&rho, &[Some(X), Some([-r, 0.0, r])]).unwrap();
        let value = 0.5 * (q11 + q12 + q21 - q22);
        assert!((value - 2.0f64.sqrt()).abs() < 1e-12);

        // The same via evaluate() with spherical angles.
        let settings = MeasurementSettings::from_angles(vec![
            0.0,
            0.0,
            FRAC_PI_2,
            0.0,
            FRAC_PI_4,
            0.0,
            -FRAC_PI_4,
            0.0,
        ])
        .unwrap();
        let value = evaluate(&BellFunctional::chsh(), &rho, &settings).unwrap();
        assert!((value - 2.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn separable_state_respects_classical_bound() {
        let rho = SpinDensity::from_pure(&StateVector::basis(4, 0)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..50 {
            let angles: Vec<f64> = (0..8).map(|_| rng.gen_range(-3.2..3.2)).collect();
            let settings = MeasurementSettings::from_angles(angles).unwrap();
            let value = evaluate(&BellFunctional::chsh(), &rho, &settings).unwrap();
            assert!(value <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn i3_vanishes_on_maximally_mixed_state() {
        let eighth = ComplexMatrix::identity(8).scale(c(0.125, 0.0));
        let rho = SpinDensity::new(eighth).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let angles: Vec<f64> = (0..12).map(|_| rng.gen_range(-3.2..3.2)).collect();
        let settings = MeasurementSettings::from_angles(angles).unwrap();
        let value = evaluate(&BellFunctional::i3(), &rho, &settings).unwrap();
        assert!(value.abs() < 1e-14);
    }

    #[test]
    fn evaluate_is_bounded_by_weight_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let rho = random_mixed(3, &mut rng);
        let f = BellFunctional::i3();
        for _ in 0..20 {
            let angles: Vec<f64> = (0..12).map(|_| rng.gen_range(-6.3..6.3)).collect();
            let settings = MeasurementSettings::from_angles(angles).unwrap();
            let value = evaluate(&f, &rho, &settings).unwrap();
            assert!(value.abs() <= f.weight_norm() + 1e-12);
        }
    }

    pub(crate) fn random_mixed(n_qubits: usize, rng: &mut impl Rng) -> SpinDensity {
        let dim = 1 << n_qubits;
        let g = ComplexMatrix::from_fn(dim, |_, _| {
            c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let gram = &g * &g.adjoint();
        let trace = gram.trace().re;
        SpinDensity::new(gram.scale(c(1.0 / trace, 0.0))).unwrap()
    }

    #[test]
    fn oracle_on_reference_states() {
        assert!((chsh_oracle(&phi_plus()).unwrap() - 2.0f64.sqrt()).abs() < 1e-12);

        let quarter = ComplexMatrix::identity(4).scale(c(0.25, 0.0));
        let mixed = SpinDensity::new(quarter).unwrap();
        assert!(chsh_oracle(&mixed).unwrap() < 1e-12);

        let product = SpinDensity::from_pure(&StateVector::basis(4, 0)).unwrap();
        assert!((chsh_oracle(&product).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn oracle_on_werner_state() {
        for p in [0.3, 0.7, 1.0] {
            let bell = phi_plus();
            let mixed = &bell.matrix().scale(c(p, 0.0))
                + &ComplexMatrix::identity(4).scale(c((1.0 - p) / 4.0, 0.0));
            let rho = SpinDensity::new(mixed).unwrap();
            let value = chsh_oracle(&rho).unwrap();
            assert!((value - p * 2.0f64.sqrt()).abs() < 1e-12, "p = {p}");
        }
    }

    #[test]
    fn oracle_is_local_unitary_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..100 {
            let rho = random_mixed(2, &mut rng);
            let base = chsh_oracle(&rho).unwrap();
            let u1 = random_su2(&mut rng);
            let u2 = random_su2(&mut rng);
            let local = crate::linalg::kron(&u1, &u2);
            let rotated = &(&local * rho.matrix()) * &local.adjoint();
            let rotated = SpinDensity::new(rotated).unwrap();
            assert!((chsh_oracle(&rotated).unwrap() - base).abs() <= 1e-10);
        }
    }

    pub(crate) fn random_su2(rng: &mut impl Rng) -> ComplexMatrix {
        let angle = rng.gen_range(0.0..2.0 * std::f64::consts::PI);
        let axis = loop {
            let v = [
                rng.gen_range(-1.0f64..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            ];
            let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            if n > 1e-3 {
                break [v[0] / n, v[1] / n, v[2] / n];
            }
        };
        spin_half_rep(&WignerRotation::new(angle, axis).unwrap())
    }

    #[test]
    fn sigma_y_helper_is_consistent() {
        // guard against the easy-to-typo σ_y sign convention
        let sy = sigma_y();
        assert_eq!(sy[(0, 1)], c(0.0, -1.0));
        assert_eq!(sy[(1, 0)], c(0.0, 1.0));
    }
}
