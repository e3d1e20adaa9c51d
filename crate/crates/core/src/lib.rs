//! Quantum speed limits for unitary evolution of finite-dimensional states.
//!
//! The toolkit computes how fast a mixed state ρ can become distinguishable
//! from itself under `ρ(t) = e^{−iHt} ρ e^{iHt}` (ħ = 1 throughout):
//!
//! - four survival probabilities: the pure-state overlap P, the squared
//!   fidelity T, the range-projector expectation E, and the trace-distance
//!   functional D;
//! - quantum Fisher information `𝓕(ρ, H)` and the binary classical Fisher
//!   information of a projective measurement;
//! - lower bound curves of the `cos²` family: the variance-based bound on
//!   `ΔH·|t| ≤ π/2`, its Fisher-information sharpening on `√𝓕·|t| ≤ π`, and
//!   the phase-shifted generalization for projectors with `⟨Π⟩ < 1`;
//! - orthogonalization-time bounds and an entanglement witness grading
//!   multiqubit states by producibility through `𝓕`.
//!
//! Basis convention: `|0⟩ = (1, 0)ᵀ` and qubit 1 is the most significant
//! tensor factor, so `|01⟩` is component 1 of a two-qubit vector.
//!
//! The numeric kernels are generic over the scalar through [`real::Real`];
//! concrete `f64` aliases live at the crate root. Default tolerances are
//! `f64`-calibrated.

#![forbid(unsafe_code)]

pub mod bounds;
pub mod dynamics;
pub mod error;
pub mod fisher;
pub mod linalg;
pub mod real;
pub mod scenarios;
pub mod states;
pub mod tol;

pub use bounds::{
    dichotomy_check, empirical_theta_perp, entanglement_witness, fisher_bound, generalized_bounds,
    mt_bound, producibility_bound, theta_perp_bounds, BoundCurve, BoundKind, Dichotomy,
    SurvivalKind, ThetaPerpBounds, WitnessReport,
};
pub use dynamics::{survival_p, trace_evolution, EvolutionSpec, EvolutionTrace};
pub use error::{Error, Result};
pub use fisher::{
    classical_fisher_binary, classical_fisher_binary_with, qfi_bures_oracle, quantum_fisher,
    quantum_fisher_with, FisherResult,
};
pub use linalg::{
    hermitian_eig, hermitian_eig_with, kron, psd_sqrt, trace_norm, unitary_exp, ComplexMatrix,
    ComplexVector, HermitianOperator, SpectralDecomposition, DIM_CAP,
};
pub use real::Real;
pub use scenarios::{
    build_collective_spin, build_named_state, build_one_qubit_example, build_two_qubit_example,
    load_scenario, save_scenario, scenario_from_json, scenario_to_json, with_rank_threshold, Axis,
    LocalHamiltonian, LocalRecipe, NamedState, Scenario, ScenarioHamiltonian, MAX_QUBITS,
};
pub use states::{
    expectation, fidelity, mix, pure_state, range_projector, std_dev, trace_distance,
    DensityMatrix, Projector,
};
pub use tol::Tolerances;

/// Complex scalar over `f64`.
pub type Complex64 = num_complex::Complex<f64>;
/// Complex scalar over `f32`.
pub type Complex32 = num_complex::Complex<f32>;

/// `f64` matrix.
pub type Matrix64 = ComplexMatrix<f64>;
/// `f32` matrix.
pub type Matrix32 = ComplexMatrix<f32>;
/// `f64` vector.
pub type Vector64 = ComplexVector<f64>;
/// `f32` vector.
pub type Vector32 = ComplexVector<f32>;
/// `f64` Hermitian operator.
pub type HermitianOperator64 = HermitianOperator<f64>;
/// `f64` density matrix.
pub type DensityMatrix64 = DensityMatrix<f64>;
/// `f64` projector.
pub type Projector64 = Projector<f64>;
/// `f64` evolution specification.
pub type EvolutionSpec64 = EvolutionSpec<f64>;
/// Double-precision scenario.
pub type Scenario64 = Scenario<f64>;
