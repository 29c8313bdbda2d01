//! Quantum nonlocality of massive qubits in a uniformly moving frame.
//!
//! A boost that is not collinear with a particle's momentum rotates the
//! particle's spin (the Wigner rotation). When the momentum part of a
//! multi-qubit state is entangled, the rotation axis differs between
//! momentum branches, momentum and spin get mixed, and the spin state seen
//! by the moving observer becomes mixed after the momenta are traced out.
//! This crate builds those reduced spin states and quantifies the surviving
//! nonlocality by maximizing Bell functionals (CHSH for two qubits, a
//! 17-term two-setting inequality for three) over all measurement
//! directions.
//!
//! Modules:
//! - [`linalg`]: dense complex matrices sized for at most three qubits plus
//!   a brute-force momentum⊗spin space (dimension ≤ 64).
//! - [`relativity`]: rapidity, the Wigner angle for perpendicular boosts,
//!   the spin-1/2 little-group representation, Einstein velocity addition
//!   and the relativistic spin operator.
//! - [`scenario`]: momentum-branch superpositions, GHZ/W spin states, and
//!   the Lorentz-transformed reduced spin density matrix.
//! - [`bell`]: Bell functionals in correlational form, correlation
//!   evaluation and the Horodecki CHSH oracle.
//! - [`optimize`]: seeded multistart Nelder–Mead maximization over
//!   measurement directions and sweeps over the Wigner angle.
//! - [`run`]: run configuration, figure presets, CSV/JSON/SVG output.

pub mod bell;
pub mod linalg;
pub mod optimize;
pub mod relativity;
pub mod run;
pub mod scenario;

pub use bell::{BellFunctional, MeasurementSettings};
pub use linalg::{ComplexMatrix, StateVector};
pub use optimize::{maximize, sweep, OptimizerOptions};
pub use relativity::{Velocity, WignerRotation};
pub use scenario::{MomentumBranch, MomentumScenario, MomentumSetting, SpinDensity};
