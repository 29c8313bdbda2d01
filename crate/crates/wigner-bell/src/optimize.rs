//! Maximization of Bell functionals over measurement directions.
//!
//! The objective is smooth and low-dimensional (8 spherical angles for two
//! qubits, 12 for three), so a derivative-free simplex search with seeded
//! multistarts is enough. Reproducibility contract: given (seed, grid,
//! options) the result is identical regardless of how the independent
//! starts are scheduled — every start draws from its own RNG stream and
//! the reduction picks the best value with ties broken toward the lower
//! start index.

use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::sync::OnceLock;
use thiserror::Error;

use crate::bell::{spherical_direction, BellError, BellFunctional, MeasurementSettings};
use crate::scenario::{MomentumScenario, ScenarioError, SpinDensity};

#[derive(Debug, Error)]
pub enum OptimizeError {
    #[error(transparent)]
    Bell(#[from] BellError),
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error("omega grid must be monotone nondecreasing within [0, π/2)")]
    InvalidGrid,
}

/// Initial simplex edge length in radians. The angle landscape has
/// basins on the scale of a radian; a simplex of this size lets a start
/// cross into the global basin during its early reflections, which
/// matters most for the first sweep point where no warm start exists.
const INITIAL_SIMPLEX_STEP: f64 = 1.0;

/// Options for the multistart simplex search.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OptimizerOptions {
    /// Number of random starting points per maximization.
    pub multistarts: usize,
    /// Iteration cap per start.
    pub max_iters: usize,
    /// Convergence threshold on the simplex diameter (max coordinate
    /// range over vertices).
    pub tol: f64,
    /// Seed for the start sampler.
    pub seed: u64,
}

impl Default for OptimizerOptions {
    fn default() -> Self {
        Self {
            multistarts: 24,
            max_iters: 2000,
            tol: 1e-9,
            seed: 7,
        }
    }
}

/// Outcome of one maximization.
#[derive(Debug, Clone)]
pub struct MaximizeResult {
    /// Best functional value found.
    pub value: f64,
    /// Settings achieving it.
    pub settings: MeasurementSettings,
    /// False if the winning simplex hit the iteration cap before its
    /// diameter shrank below tolerance; the best-found value is still
    /// returned.
    pub converged: bool,
}

/// One entry of a sweep over the Wigner angle.
#[derive(Debug, Clone, Serialize)]
pub struct SweepPoint {
    pub omega: f64,
    pub value: f64,
    pub converged: bool,
    #[serde(skip)]
    pub argmax_angles: Vec<f64>,
}

// ---------------------------------------------------------------------------
// Correlation tensor: every Pauli expectation of the state, so that the
// optimizer's objective is a small real contraction instead of repeated
// 2^N × 2^N traces.
// ---------------------------------------------------------------------------

/// Sparse row table of a single-qubit Pauli: row r has one nonzero, at
/// column `col[r]` with value `val[r]`.
struct PauliRows {
    col: [usize; 2],
    val: [Complex64; 2],
}

fn pauli_rows() -> [PauliRows; 4] {
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    [
        // identity
        PauliRows { col: [0, 1], val: [one, one] },
        // σ_x
        PauliRows { col: [1, 0], val: [one, one] },
        // σ_y
        PauliRows { col: [1, 0], val: [-i, i] },
        // σ_z
        PauliRows { col: [0, 1], val: [one, -one] },
    ]
}

/// Per-multi-index sparse representation of `σ_{μ₁} ⊗ … ⊗ σ_{μ_N}`:
/// row k has one nonzero at `col[k]` with value `val[k]`.
struct SparseKronPauli {
    col: Vec<usize>,
    val: Vec<Complex64>,
}

fn kron_pauli_table(n: usize) -> &'static Vec<SparseKronPauli> {
    static TABLE2: OnceLock<Vec<SparseKronPauli>> = OnceLock::new();
    static TABLE3: OnceLock<Vec<SparseKronPauli>> = OnceLock::new();
    let build = move || {
        let singles = pauli_rows();
        let dim = 1usize << n;
        let count = 4usize.pow(n as u32);
        let mut table = Vec::with_capacity(count);
        for mu in 0..count {
            // digits of mu in base 4, first particle most significant
            let mut digits = vec![0usize; n];
            let mut rest = mu;
            for k in (0..n).rev() {
                digits[k] = rest % 4;
                rest /= 4;
            }
            let mut col = vec![0usize; dim];
            let mut val = vec![Complex64::new(1.0, 0.0); dim];
            for row in 0..dim {
                let mut c = 0usize;
                let mut v = Complex64::new(1.0, 0.0);
                for (k, &d) in digits.iter().enumerate() {
                    let bit = (row >> (n - 1 - k)) & 1;
                    let p = &singles[d];
                    c = c * 2 + p.col[bit];
                    v *= p.val[bit];
                }
                col[row] = c;
                val[row] = v;
            }
            table.push(SparseKronPauli { col, val });
        }
        table
    };
    match n {
        2 => TABLE2.get_or_init(build),
        3 => TABLE3.get_or_init(build),
        _ => panic!("Pauli table only built for 2 or 3 qubits"),
    }
}

/// All real Pauli expectations `R_μ = tr[ρ · σ_{μ₁} ⊗ … ⊗ σ_{μ_N}]`,
/// flat-indexed in base 4 with the first particle most significant.
pub(crate) struct CorrelationTensor {
    n: usize,
    r: Vec<f64>,
}

impl CorrelationTensor {
    pub(crate) fn new(rho: &SpinDensity) -> Self {
        let n = rho.n_qubits();
        let table = kron_pauli_table(n);
        let m = rho.matrix();
        let r = table
            .iter()
            .map(|p| {
                // tr(ρP) = Σ_k ρ[col(k), k] · P[k, col(k)]
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, (&c, &v)) in p.col.iter().zip(&p.val).enumerate() {
                    acc += m[(c, k)] * v;
                }
                acc.re
            })
            .collect();
        Self { n, r }
    }
}

/// One summand of a compiled contraction: a flat Pauli multi-index and
/// the direction components multiplying it, as (slot, component) pairs
/// with slot = party·2 + setting−1.
type ContractionEntry = (usize, Vec<(usize, usize)>);

/// A functional compiled against the flat tensor layout: per coefficient,
/// the list of contributing Pauli multi-indices.
struct CompiledFunctional {
    n: usize,
    terms: Vec<(f64, Vec<ContractionEntry>)>,
}

impl CompiledFunctional {
    fn new(functional: &BellFunctional) -> Self {
        let n = functional.n_parties();
        let mut terms = Vec::new();
        for (tuple, &weight) in functional.coefficients() {
            // expand the tuple into all contributing Pauli multi-indices
            let mut entries: Vec<ContractionEntry> = vec![(0, Vec::new())];
            for (party, &setting) in tuple.iter().enumerate() {
                let mut next = Vec::with_capacity(entries.len() * 3);
                for (flat, factors) in &entries {
                    if setting == 0 {
                        next.push((flat * 4, factors.clone()));
                    } else {
                        let slot = party * 2 + (setting as usize - 1);
                        for component in 0..3 {
                            let mut f = factors.clone();
                            f.push((slot, component));
                            next.push((flat * 4 + component + 1, f));
                        }
                    }
                }
                entries = next;
            }
            terms.push((weight, entries));
        }
        Self { n, terms }
    }

    /// Objective value at the given angles (4 per party).
    fn value(&self, tensor: &CorrelationTensor, angles: &[f64]) -> f64 {
        debug_assert_eq!(self.n, tensor.n);
        let slots = angles.len() / 2;
        let mut dirs = vec![[0.0f64; 3]; slots];
        for (s, d) in dirs.iter_mut().enumerate() {
            *d = spherical_direction(angles[2 * s], angles[2 * s + 1]);
        }
        let mut total = 0.0;
        for (weight, entries) in &self.terms {
            let mut q = 0.0;
            for (flat, factors) in entries {
                let mut prod = tensor.r[*flat];
                for &(slot, component) in factors {
                    prod *= dirs[slot][component];
                }
                q += prod;
            }
            total += weight * q;
        }
        total
    }
}

// ---------------------------------------------------------------------------
// Nelder–Mead simplex minimization.
// ---------------------------------------------------------------------------

struct SimplexOutcome {
    x: Vec<f64>,
    f: f64,
    converged: bool,
}

/// Standard Nelder–Mead with reflection 1, expansion 2, contraction 1/2,
/// shrink 1/2. Stops when the simplex diameter (max coordinate range over
/// vertices) drops below `tol` or after `max_iters` iterations.
fn nelder_mead(
    objective: impl Fn(&[f64]) -> f64,
    x0: &[f64],
    step: f64,
    tol: f64,
    max_iters: usize,
) -> SimplexOutcome {
    let dim = x0.len();
    let mut vertices: Vec<Vec<f64>> = Vec::with_capacity(dim + 1);
    vertices.push(x0.to_vec());
    for k in 0..dim {
        let mut v = x0.to_vec();
        v[k] += step;
        vertices.push(v);
    }
    let mut values: Vec<f64> = vertices.iter().map(|v| objective(v)).collect();

    let diameter = |vertices: &[Vec<f64>]| -> f64 {
        let mut d: f64 = 0.0;
        for k in 0..dim {
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for v in vertices {
                lo = lo.min(v[k]);
                hi = hi.max(v[k]);
            }
            d = d.max(hi - lo);
        }
        d
    };

    let mut converged = false;
    for _ in 0..max_iters {
        // order ascending by value
        let mut order: Vec<usize> = (0..=dim).collect();
        order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap());
        let best = order[0];
        let worst = order[dim];
        let second_worst = order[dim - 1];

        if diameter(&vertices) < tol {
            converged = true;
            break;
        }

        // centroid of all but the worst vertex
        let mut centroid = vec![0.0; dim];
        for (i, v) in vertices.iter().enumerate() {
            if i != worst {
                for k in 0..dim {
                    centroid[k] += v[k];
                }
            }
        }
        for c in &mut centroid {
            *c /= dim as f64;
        }

        let blend = |a: f64, b: f64| -> Vec<f64> {
            (0..dim)
                .map(|k| a * centroid[k] + b * vertices[worst][k])
                .collect()
        };

        let reflected = blend(2.0, -1.0);
        let f_reflected = objective(&reflected);

        if f_reflected < values[best] {
            let expanded = blend(3.0, -2.0);
            let f_expanded = objective(&expanded);
            if f_expanded < f_reflected {
                vertices[worst] = expanded;
                values[worst] = f_expanded;
            } else {
                vertices[worst] = reflected;
                values[worst] = f_reflected;
            }
        } else if f_reflected < values[second_worst] {
            vertices[worst] = reflected;
            values[worst] = f_reflected;
        } else {
            let contracted = if f_reflected < values[worst] {
                blend(1.5, -0.5) // outside contraction
            } else {
                blend(0.5, 0.5) // inside contraction
            };
            let f_contracted = objective(&contracted);
            if f_contracted < values[worst].min(f_reflected) {
                vertices[worst] = contracted;
                values[worst] = f_contracted;
            } else {
                // shrink toward the best vertex
                let anchor = vertices[best].clone();
                for (i, v) in vertices.iter_mut().enumerate() {
                    if i != best {
                        for k in 0..dim {
                            v[k] = 0.5 * (v[k] + anchor[k]);
                        }
                        values[i] = objective(v);
                    }
                }
            }
        }
    }

    let mut best = 0;
    for i in 1..=dim {
        if values[i] < values[best] {
            best = i;
        }
    }
    SimplexOutcome {
        x: vertices[best].clone(),
        f: values[best],
        converged,
    }
}

// ---------------------------------------------------------------------------
// Multistart maximization and sweeps.
// ---------------------------------------------------------------------------

/// Angles of one random start: θ from a uniform sphere point, φ uniform.
fn random_start(n_parties: usize, seed: u64, stream: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut angles = Vec::with_capacity(n_parties * 4);
    for _ in 0..n_parties * 2 {
        let u: f64 = rng.gen();
        let v: f64 = rng.gen();
        angles.push((1.0 - 2.0 * u).acos());
        angles.push(2.0 * std::f64::consts::PI * v);
    }
    angles
}

fn maximize_impl(
    functional: &BellFunctional,
    rho: &SpinDensity,
    options: &OptimizerOptions,
    warm_start: Option<&[f64]>,
) -> Result<MaximizeResult, BellError> {
    if rho.n_qubits() != functional.n_parties() {
        return Err(BellError::DimensionMismatch {
            dim: rho.dim(),
            parties: functional.n_parties(),
        });
    }
    let tensor = CorrelationTensor::new(rho);
    let compiled = CompiledFunctional::new(functional);
    let n_parties = functional.n_parties();

    let mut starts: Vec<Vec<f64>> = Vec::with_capacity(options.multistarts + 1);
    if let Some(warm) = warm_start {
        assert_eq!(warm.len(), n_parties * 4, "warm start has wrong arity");
        starts.push(warm.to_vec());
    }
    for stream in 0..options.multistarts as u64 {
        starts.push(random_start(n_parties, options.seed, stream));
    }

    let outcomes: Vec<SimplexOutcome> = starts
        .par_iter()
        .map(|x0| {
            nelder_mead(
                |angles| -compiled.value(&tensor, angles),
                x0,
                INITIAL_SIMPLEX_STEP,
                options.tol,
                options.max_iters,
            )
        })
        .collect();

    // Deterministic reduction: best value, ties toward the lower index.
    let mut best = 0;
    for i in 1..outcomes.len() {
        if outcomes[i].f < outcomes[best].f {
            best = i;
        }
    }
    let winner = &outcomes[best];
    Ok(MaximizeResult {
        value: -winner.f,
        settings: MeasurementSettings::from_angles(winner.x.clone())?,
        converged: winner.converged,
    })
}

/// Maximum of the functional over all measurement directions, from
/// `options.multistarts` seeded random starts.
pub fn maximize(
    functional: &BellFunctional,
    rho: &SpinDensity,
    options: &OptimizerOptions,
) -> Result<MaximizeResult, BellError> {
    maximize_impl(functional, rho, options, None)
}

/// Like [`maximize`], with an extra starting point (used to warm-start
/// each sweep point from the previous argmax).
pub fn maximize_with_warm_start(
    functional: &BellFunctional,
    rho: &SpinDensity,
    options: &OptimizerOptions,
    warm_start: Option<&[f64]>,
) -> Result<MaximizeResult, BellError> {
    maximize_impl(functional, rho, options, warm_start)
}

/// Optimized functional value of the transformed scenario at every grid
/// point. The grid must be monotone nondecreasing within [0, π/2); each
/// point is warm-started from the previous argmax on top of the fresh
/// multistarts.
pub fn sweep(
    functional: &BellFunctional,
    scenario: &MomentumScenario,
    omega_grid: &[f64],
    options: &OptimizerOptions,
) -> Result<Vec<SweepPoint>, OptimizeError> {
    let valid = !omega_grid.is_empty()
        && omega_grid
            .iter()
            .all(|o| (0.0..std::f64::consts::FRAC_PI_2).contains(o))
        && omega_grid.windows(2).all(|w| w[0] <= w[1]);
    if !valid {
        return Err(OptimizeError::InvalidGrid);
    }
    let mut points: Vec<SweepPoint> = Vec::with_capacity(omega_grid.len());
    let mut warm: Option<Vec<f64>> = None;
    for &omega in omega_grid {
        // repeated grid points describe the same state
        if let Some(prev) = points.last() {
            if prev.omega == omega {
                points.push(prev.clone());
                continue;
            }
        }
        let rho = scenario.transform(omega)?;
        let result = maximize_impl(functional, &rho, options, warm.as_deref())?;
        warm = Some(result.settings.angles().to_vec());
        points.push(SweepPoint {
            omega,
            value: result.value,
            converged: result.converged,
            argmax_angles: result.settings.angles().to_vec(),
        });
    }
    Ok(points)
}
