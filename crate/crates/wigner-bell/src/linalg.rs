//! Dense complex linear algebra for small Hilbert spaces.
//!
//! Everything here is sized for at most three qubits together with a
//! brute-force momentum⊗spin space, i.e. matrices up to 64×64. Storage is
//! dense and row-major throughout; there are no sparse paths.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use thiserror::Error;

/// Absolute tolerance on the max entry deviation `|m[i,j] - conj(m[j,i])|`
/// below which a matrix is considered Hermitian.
pub const HERMITICITY_TOL: f64 = 1e-10;

/// Maximum number of cyclic Jacobi sweeps before the eigensolver gives up.
const MAX_JACOBI_SWEEPS: usize = 100;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not Hermitian: max deviation {deviation:e} exceeds tolerance {tolerance:e}")]
    NotHermitian { deviation: f64, tolerance: f64 },
    #[error("cannot normalize a (near-)zero vector, norm {0:e}")]
    ZeroVector(f64),
    #[error("Jacobi eigensolver failed to converge in {0} sweeps")]
    NoConvergence(usize),
}

/// Dense square matrix of complex numbers, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        Self {
            dim,
            entries: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from row-major entries. Panics unless
    /// `entries.len() == dim * dim`.
    pub fn from_vec(dim: usize, entries: Vec<Complex64>) -> Self {
        assert_eq!(
            entries.len(),
            dim * dim,
            "entry count must equal dim * dim"
        );
        assert!(dim > 0, "matrix dimension must be positive");
        Self { dim, entries }
    }

    /// Builds a matrix entry by entry from a closure over `(row, col)`.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)])
    }

    pub fn conjugate(&self) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry magnitude, i.e. the max norm `‖·‖∞` over entries.
    pub fn max_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `‖self - other‖∞` over entries; panics on dimension mismatch.
    pub fn max_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim == other.dim && self.max_diff(other) <= tol
    }

    /// Largest deviation `|m[i,j] - conj(m[j,i])|` from Hermitian symmetry.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        let product = &self.adjoint() * self;
        product.max_diff(&Self::identity(self.dim)) <= tol
    }

    /// Positive semidefinite test: Hermitian and all eigenvalues ≥ `-tol`.
    pub fn is_psd(&self, tol: f64) -> bool {
        if !self.is_hermitian(HERMITICITY_TOL) {
            return false;
        }
        match hermitian_eigenvalues(self) {
            Ok(eigs) => eigs.iter().all(|&e| e >= -tol),
            Err(_) => false,
        }
    }

    /// Matrix-vector product `self · v`.
    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim, "dimension mismatch");
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.dim + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self[(i, k)];
                if aik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += aik * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl fmt::Display for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Normalized state vector over a small Hilbert space.
///
/// The constructor normalizes, so the Euclidean norm is 1 to within 1e-12
/// for any representable input.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self, LinalgError> {
        assert!(!amplitudes.is_empty(), "state vector must be nonempty");
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !norm.is_finite() || norm < 1e-150 {
            return Err(LinalgError::ZeroVector(norm));
        }
        Ok(Self {
            amplitudes: amplitudes.into_iter().map(|z| z / norm).collect(),
        })
    }

    /// Computational basis state `|index⟩` in a `dim`-dimensional space.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(index < dim, "basis index out of range");
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, i: usize) -> Complex64 {
        self.amplitudes[i]
    }

    /// Inner product `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Tensor product `|self⟩ ⊗ |other⟩`.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut amplitudes = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amplitudes.push(a * b);
            }
        }
        Self { amplitudes }
    }

    /// Rank-one projector `|self⟩⟨self|`.
    pub fn projector(&self) -> ComplexMatrix {
        let n = self.dim();
        ComplexMatrix::from_fn(n, |i, j| self.amplitudes[i] * self.amplitudes[j].conj())
    }
}

/// Kronecker product. Subsystem order follows the factor order: the entry
/// at `((i1,i2),(j1,j2))` is `a[i1,j1] * b[i2,j2]`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (da, db) = (a.dim(), b.dim());
    let mut out = ComplexMatrix::zeros(da * db);
    for i1 in 0..da {
        for j1 in 0..da {
            let aij = a[(i1, j1)];
            for i2 in 0..db {
                for j2 in 0..db {
                    out[(i1 * db + i2, j1 * db + j2)] = aij * b[(i2, j2)];
                }
            }
        }
    }
    out
}

/// Kronecker product of a sequence of factors, first factor most
/// significant.
pub fn kron_all(factors: &[ComplexMatrix]) -> ComplexMatrix {
    assert!(!factors.is_empty(), "kron_all needs at least one factor");
    let mut out = factors[0].clone();
    for f in &factors[1..] {
        out = kron(&out, f);
    }
    out
}

/// Partial trace of `rho` over the subsystems *not* listed in `keep`.
///
/// `dims` lists the subsystem dimensions in tensor order (first subsystem
/// most significant); `keep` holds 0-based subsystem indices. An empty
/// `keep` traces out everything and returns the 1×1 matrix holding the
/// scalar trace.
pub fn partial_trace(
    rho: &ComplexMatrix,
    dims: &[usize],
    keep: &[usize],
) -> Result<ComplexMatrix, LinalgError> {
    let total: usize = dims.iter().product();
    if total != rho.dim() {
        return Err(LinalgError::DimensionMismatch(format!(
            "product of subsystem dims {total} does not equal matrix dim {}",
            rho.dim()
        )));
    }
    let mut keep = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if keep.iter().any(|&k| k >= dims.len()) {
        return Err(LinalgError::DimensionMismatch(format!(
            "keep index out of range for {} subsystems",
            dims.len()
        )));
    }
    let traced: Vec<usize> = (0..dims.len()).filter(|k| !keep.contains(k)).collect();

    // Row-major strides: subsystem k contributes digit * stride[k].
    let mut strides = vec![1usize; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * dims[k + 1];
    }

    // Flat offsets contributed by every digit combination of a subsystem set.
    let offsets = |subs: &[usize]| -> Vec<usize> {
        let mut offs = vec![0usize];
        for &s in subs {
            let mut next = Vec::with_capacity(offs.len() * dims[s]);
            for &base in &offs {
                for digit in 0..dims[s] {
                    next.push(base + digit * strides[s]);
                }
            }
            offs = next;
        }
        offs
    };
    let keep_offsets = offsets(&keep);
    let traced_offsets = offsets(&traced);

    let mut out = ComplexMatrix::zeros(keep_offsets.len());
    for (ki, &koff_i) in keep_offsets.iter().enumerate() {
        for (kj, &koff_j) in keep_offsets.iter().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for &toff in &traced_offsets {
                acc += rho[(koff_i + toff, koff_j + toff)];
            }
            out[(ki, kj)] = acc;
        }
    }
    Ok(out)
}

/// Eigendecomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Real eigenvalues in descending order.
    pub eigenvalues: Vec<f64>,
    /// Unitary matrix whose columns are the matching eigenvectors.
    pub eigenvectors: ComplexMatrix,
}

/// Real eigenvalues of a Hermitian matrix, sorted descending.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>, LinalgError> {
    hermitian_eigen(m).map(|e| e.eigenvalues)
}

/// Full Hermitian eigendecomposition by cyclic Jacobi rotations.
///
/// Each rotation first removes the phase of the pivot entry and then
/// applies a real Givens rotation that zeroes it; off-diagonal mass decays
/// quadratically per sweep. Reconstruction `V Λ V†` matches the input to
/// within 1e-9 relative Frobenius error for the dimensions used here.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<HermitianEigen, LinalgError> {
    let deviation = m.hermiticity_deviation();
    if deviation > HERMITICITY_TOL {
        return Err(LinalgError::NotHermitian {
            deviation,
            tolerance: HERMITICITY_TOL,
        });
    }
    let n = m.dim();

    // Work on the exactly-Hermitian part (m + m†)/2.
    let mut a = ComplexMatrix::from_fn(n, |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5);
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);

    let off_norm = |a: &ComplexMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut converged = n < 2;
    for _ in 0..MAX_JACOBI_SWEEPS {
        if off_norm(&a) <= 1e-14 * scale {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let abs = apq.norm();
                if abs <= 1e-300 {
                    continue;
                }
                let phase = apq / abs;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                // Smaller root of t² - 2τt - 1 = 0 keeps the rotation angle
                // below π/4.
                let tau = (aqq - app) / (2.0 * abs);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // 2×2 block of G = diag(1, conj(phase)) · [[c, s], [-s, c]].
                let g_pp = Complex64::new(c, 0.0);
                let g_pq = Complex64::new(s, 0.0);
                let g_qp = -s * phase.conj();
                let g_qq = c * phase.conj();

                // A ← A·G on columns p, q.
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * g_pp + akq * g_qp;
                    a[(k, q)] = akp * g_pq + akq * g_qq;
                }
                // A ← G†·A on rows p, q.
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
                    a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
                }
                // V ← V·G.
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * g_pp + vkq * g_qp;
                    v[(k, q)] = vkp * g_pq + vkq * g_qq;
                }
            }
        }
    }
    if !converged && off_norm(&a) > 1e-10 * scale {
        return Err(LinalgError::NoConvergence(MAX_JACOBI_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.partial_cmp(&a[(i, i)].re).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, |i, j| v[(i, order[j])]);
    Ok(HermitianEigen {
        eigenvalues,
        eigenvectors,
    })
}

/// Pauli matrix σ_x.
pub fn sigma_x() -> ComplexMatrix {
    ComplexMatrix::from_vec(
        2,
        vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
        ],
    )
}

/// Pauli matrix σ_y.
pub fn sigma_y() -> ComplexMatrix {
    ComplexMatrix::from_vec(
        2,
        vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, 0.0),
        ],
    )
}

/// Pauli matrix σ_z.
pub fn sigma_z() -> ComplexMatrix {
    ComplexMatrix::from_vec(
        2,
        vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(-1.0, 0.0),
        ],
    )
}

/// `v·σ = v_x σ_x + v_y σ_y + v_z σ_z` for an arbitrary real 3-vector.
pub fn pauli_dot(v: [f64; 3]) -> ComplexMatrix {
    ComplexMatrix::from_vec(
        2,
        vec![
            Complex64::new(v[2], 0.0),
            Complex64::new(v[0], -v[1]),
            Complex64::new(v[0], v[1]),
            Complex64::new(-v[2], 0.0),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::{prop_assert, proptest};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_hermitian(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
        let g = ComplexMatrix::from_fn(dim, |_, _| {
            c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let adj = g.adjoint();
        (&g + &adj).scale(c(0.5, 0.0))
    }

    #[test]
    fn kron_identity_case() {
        let i2 = ComplexMatrix::identity(2);
        assert!(kron(&i2, &i2).approx_eq(&ComplexMatrix::identity(4), 0.0));
    }

    #[test]
    fn kron_sigma_z_pair_is_diagonal_signs() {
        let k = kron(&sigma_z(), &sigma_z());
        let expected = ComplexMatrix::from_fn(4, |i, j| {
            if i != j {
                c(0.0, 0.0)
            } else {
                c([1.0, -1.0, -1.0, 1.0][i], 0.0)
            }
        });
        assert!(k.approx_eq(&expected, 0.0));
    }

    #[test]
    fn kron_xy_squares_to_identity() {
        let k = kron(&sigma_x(), &sigma_y());
        let sq = &k * &k;
        assert!(sq.approx_eq(&ComplexMatrix::identity(4), 1e-15));
    }

    #[test]
    fn kron_is_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let a = random_hermitian(2, &mut rng);
            let b = random_hermitian(3, &mut rng);
            let d = random_hermitian(2, &mut rng);
            let left = kron(&kron(&a, &b), &d);
            let right = kron(&a, &kron(&b, &d));
            assert!(left.approx_eq(&right, 1e-12));
        }
    }

    #[test]
    fn partial_trace_product_state() {
        let zero = StateVector::basis(2, 0);
        let rho = zero.tensor(&zero).projector();
        let reduced = partial_trace(&rho, &[2, 2], &[1]).unwrap();
        assert!(reduced.approx_eq(&zero.projector(), 1e-15));
    }

    #[test]
    fn partial_trace_bell_state_marginal_is_maximally_mixed() {
        let phi_plus = StateVector::new(vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)])
            .unwrap();
        let rho = phi_plus.projector();
        let reduced = partial_trace(&rho, &[2, 2], &[1]).unwrap();

        // Independent oracle: direct index sum over the traced subsystem.
        let mut oracle = ComplexMatrix::zeros(2);
        for i2 in 0..2 {
            for j2 in 0..2 {
                let mut acc = c(0.0, 0.0);
                for i1 in 0..2 {
                    acc += rho[(i1 * 2 + i2, i1 * 2 + j2)];
                }
                oracle[(i2, j2)] = acc;
            }
        }
        assert!(reduced.approx_eq(&oracle, 0.0));
        assert!(reduced.approx_eq(&ComplexMatrix::identity(2).scale(c(0.5, 0.0)), 1e-15));
    }

    #[test]
    fn partial_trace_preserves_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let rho = random_hermitian(8, &mut rng);
            let reduced = partial_trace(&rho, &[2, 2, 2], &[0, 2]).unwrap();
            assert!((reduced.trace() - rho.trace()).norm() < 1e-12);
        }
    }

    #[test]
    fn partial_trace_over_everything_is_scalar_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let rho = random_hermitian(6, &mut rng);
        let scalar = partial_trace(&rho, &[2, 3], &[]).unwrap();
        assert_eq!(scalar.dim(), 1);
        assert!((scalar[(0, 0)] - rho.trace()).norm() < 1e-13);
    }

    #[test]
    fn partial_trace_keeping_everything_is_identity_operation() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let rho = random_hermitian(4, &mut rng);
        let same = partial_trace(&rho, &[2, 2], &[0, 1]).unwrap();
        assert!(same.approx_eq(&rho, 0.0));
    }

    #[test]
    fn partial_trace_rejects_bad_dims() {
        let rho = ComplexMatrix::identity(4);
        assert!(partial_trace(&rho, &[2, 3], &[0]).is_err());
        assert!(partial_trace(&rho, &[2, 2], &[2]).is_err());
    }

    #[test]
    fn eigenvalues_of_diagonal_matrix() {
        let m = ComplexMatrix::from_fn(3, |i, j| {
            if i == j {
                c([3.0, 1.0, 2.0][i], 0.0)
            } else {
                c(0.0, 0.0)
            }
        });
        let eigs = hermitian_eigenvalues(&m).unwrap();
        assert_eq!(eigs.len(), 3);
        assert!((eigs[0] - 3.0).abs() < 1e-14);
        assert!((eigs[1] - 2.0).abs() < 1e-14);
        assert!((eigs[2] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn eigenvalues_of_sigma_x() {
        let eigs = hermitian_eigenvalues(&sigma_x()).unwrap();
        assert!((eigs[0] - 1.0).abs() < 1e-14);
        assert!((eigs[1] + 1.0).abs() < 1e-14);
    }

    #[test]
    fn eigenvalues_of_orthogonal_gram_matrix() {
        // T = diag(1,-1,1): TᵀT = I, so the spectrum is (1,1,1). Cross-check
        // via the characteristic polynomial det(M - λI) at each eigenvalue.
        let t = [1.0, -1.0, 1.0];
        let m = ComplexMatrix::from_fn(3, |i, j| {
            if i == j {
                c(t[i] * t[i], 0.0)
            } else {
                c(0.0, 0.0)
            }
        });
        let eigs = hermitian_eigenvalues(&m).unwrap();
        for &e in &eigs {
            assert!((e - 1.0).abs() < 1e-14);
            // char poly of diag(1,1,1): (1-λ)³
            let p = (1.0 - e) * (1.0 - e) * (1.0 - e);
            assert!(p.abs() < 1e-30);
        }
    }

    #[test]
    fn eigensolver_rejects_non_hermitian() {
        let m = ComplexMatrix::from_vec(2, vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert!(matches!(
            hermitian_eigenvalues(&m),
            Err(LinalgError::NotHermitian { .. })
        ));
    }

    #[test]
    fn eigendecomposition_reconstructs_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for &dim in &[2, 3, 4, 8, 16, 64] {
            let m = random_hermitian(dim, &mut rng);
            let eig = hermitian_eigen(&m).unwrap();
            assert!(eig.eigenvectors.is_unitary(1e-12));
            // reconstruct V Λ V†
            let lambda = ComplexMatrix::from_fn(dim, |i, j| {
                if i == j {
                    c(eig.eigenvalues[i], 0.0)
                } else {
                    c(0.0, 0.0)
                }
            });
            let rec = &(&eig.eigenvectors * &lambda) * &eig.eigenvectors.adjoint();
            let rel = (&rec - &m).frobenius_norm() / m.frobenius_norm();
            assert!(rel <= 1e-9, "dim {dim}: relative error {rel:e}");
            // descending order
            for w in eig.eigenvalues.windows(2) {
                assert!(w[0] >= w[1]);
            }
        }
    }

    #[test]
    fn state_vector_normalizes_and_rejects_zero() {
        let v = StateVector::new(vec![c(3.0, 0.0), c(4.0, 0.0)]).unwrap();
        let norm: f64 = v.amplitudes().iter().map(|z| z.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-12);
        assert!(StateVector::new(vec![c(0.0, 0.0); 4]).is_err());
    }

    #[test]
    fn projector_of_basis_state() {
        let e1 = StateVector::basis(3, 1);
        let p = e1.projector();
        assert!((p[(1, 1)] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((p.trace() - c(1.0, 0.0)).norm() < 1e-15);
    }

    proptest! {
        #[test]
        fn prop_kron_associativity(seed in 0u64..1000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_hermitian(2, &mut rng);
            let b = random_hermitian(2, &mut rng);
            let d = random_hermitian(2, &mut rng);
            let left = kron(&kron(&a, &b), &d);
            let right = kron(&a, &kron(&b, &d));
            prop_assert!(left.approx_eq(&right, 1e-12));
        }

        #[test]
        fn prop_eigen_reconstruction(seed in 0u64..200) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let dim = rng.gen_range(2usize..10);
            let m = random_hermitian(dim, &mut rng);
            let eig = hermitian_eigen(&m).unwrap();
            let lambda = ComplexMatrix::from_fn(dim, |i, j| {
                if i == j { c(eig.eigenvalues[i], 0.0) } else { c(0.0, 0.0) }
            });
            let rec = &(&eig.eigenvectors * &lambda) * &eig.eigenvectors.adjoint();
            prop_assert!((&rec - &m).frobenius_norm() <= 1e-9 * m.frobenius_norm().max(1e-12));
        }
    }
}
