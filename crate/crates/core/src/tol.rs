//! Numerical tolerances used by validation and classification.
//!
//! All constants are calibrated for `f64` arithmetic on matrices whose
//! entries are O(1), which holds for density matrices and the Hamiltonians
//! treated here. Validation thresholds that scale with the input are applied
//! relative to `max(1, ‖m‖_max)`.

use crate::real::Real;

/// Hermiticity validation: `‖m − m†‖_max ≤ HERMITICITY · max(1, ‖m‖_max)`.
pub const HERMITICITY: f64 = 1e-10;

/// Eigenvalues of a nominally PSD matrix may dip this far below zero before
/// the matrix is rejected; anything in `[−PSD_CLAMP, 0)` is clamped to 0.
pub const PSD_CLAMP: f64 = 1e-10;

/// Eigenvalues strictly above this count toward the rank of a state.
/// Exposed as configuration so near-degenerate spectra can be studied.
pub const RANK_THRESHOLD: f64 = 1e-10;

/// A density matrix trace must satisfy `|Tr ρ − 1| ≤ TRACE_ONE`.
pub const TRACE_ONE: f64 = 1e-10;

/// Mixture weights must sum to 1 within this bound.
pub const WEIGHT_SUM: f64 = 1e-10;

/// Projector validation: `‖Π² − Π‖_max ≤ IDEMPOTENCY` and the trace must be
/// an integer within the same bound.
pub const IDEMPOTENCY: f64 = 1e-9;

/// Quantum Fisher information skips eigenvalue pairs with
/// `π_i + π_j ≤ QFI_PAIR`; both eigenvalues vanish there and the pair
/// carries no information.
pub const QFI_PAIR: f64 = 1e-12;

/// The binary classical Fisher information is undefined where
/// `p(1 − p) < DEGENERACY_GUARD`.
pub const DEGENERACY_GUARD: f64 = 1e-12;

/// Validation and classification thresholds, in the scalar type of the data
/// they are applied to.
///
/// `Default` carries the `f64`-calibrated constants of this module; override
/// fields to study near-degenerate spectra or to run in `f32`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances<T> {
    /// See [`HERMITICITY`].
    pub hermiticity: T,
    /// See [`PSD_CLAMP`].
    pub psd_clamp: T,
    /// See [`RANK_THRESHOLD`].
    pub rank_threshold: T,
    /// See [`TRACE_ONE`].
    pub trace_one: T,
    /// See [`WEIGHT_SUM`].
    pub weight_sum: T,
    /// See [`IDEMPOTENCY`].
    pub idempotency: T,
    /// See [`QFI_PAIR`].
    pub qfi_pair: T,
    /// See [`DEGENERACY_GUARD`].
    pub degeneracy_guard: T,
}

impl<T: Real> Default for Tolerances<T> {
    fn default() -> Self {
        Self {
            hermiticity: T::from_f64_lossy(HERMITICITY),
            psd_clamp: T::from_f64_lossy(PSD_CLAMP),
            rank_threshold: T::from_f64_lossy(RANK_THRESHOLD),
            trace_one: T::from_f64_lossy(TRACE_ONE),
            weight_sum: T::from_f64_lossy(WEIGHT_SUM),
            idempotency: T::from_f64_lossy(IDEMPOTENCY),
            qfi_pair: T::from_f64_lossy(QFI_PAIR),
            degeneracy_guard: T::from_f64_lossy(DEGENERACY_GUARD),
        }
    }
}

impl<T: Real> Tolerances<T> {
    /// Default tolerances with a custom rank threshold.
    pub fn with_rank_threshold(rank_threshold: T) -> Self {
        Self {
            rank_threshold,
            ..Self::default()
        }
    }
}
