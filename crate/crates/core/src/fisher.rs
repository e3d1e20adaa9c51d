//! Quantum and classical Fisher information for unitary families.
//!
//! For `ρ(t) = e^{−iHt} ρ e^{iHt}` the quantum Fisher information is
//!
//! ```text
//! 𝓕(ρ, H) = 2 Σ_{i,j} (π_i − π_j)² / (π_i + π_j) · |⟨i|H|j⟩|²
//! ```
//!
//! over eigenpairs of ρ with `π_i + π_j > 0`. It never exceeds `4·(ΔH)²`
//! and reaches it exactly for pure states. The classical Fisher information
//! of the binary measurement `{Π, 1 − Π}` along the same family is
//! `Ė² / (E(1 − E))` and never exceeds 𝓕.

use crate::dynamics::{rotate_state, EvolutionSpec};
use crate::error::{Error, Result};
use crate::linalg::HermitianOperator;
use crate::real::Real;
use crate::states::{fidelity, variance, DensityMatrix};
use crate::tol::Tolerances;

/// Slack for declaring the variance bound saturated, relative to
/// `max(1, 4ΔH²)`. Rounding keeps pure-state equality from being exact.
pub const SATURATION_TOL: f64 = 1e-9;

/// Admissible finite-difference steps for [`qfi_bures_oracle`]: below the
/// minimum the `1 − F` cancellation dominates, above the maximum the cubic
/// term of the fidelity expansion does.
pub const ORACLE_DT_MIN: f64 = 1e-5;
/// See [`ORACLE_DT_MIN`].
pub const ORACLE_DT_MAX: f64 = 1e-2;

/// Quantum Fisher information together with its variance ceiling.
#[derive(Debug, Clone, Copy)]
pub struct FisherResult<T> {
    /// `𝓕(ρ, H)`.
    pub qfi: T,
    /// `4·(ΔH)²`, the universal upper bound on 𝓕.
    pub variance_bound: T,
    /// True when 𝓕 reaches the variance bound within [`SATURATION_TOL`].
    pub saturated: bool,
}

/// Quantum Fisher information with default tolerances.
pub fn quantum_fisher<T: Real>(
    rho: &DensityMatrix<T>,
    h: &HermitianOperator<T>,
) -> Result<FisherResult<T>> {
    quantum_fisher_with(rho, h, &Tolerances::default())
}

/// Quantum Fisher information of the unitary family generated by `h`.
///
/// Eigenpairs with `π_i + π_j ≤ tol.qfi_pair` lie in the kernel of ρ and
/// are skipped; their true contribution is zero.
pub fn quantum_fisher_with<T: Real>(
    rho: &DensityMatrix<T>,
    h: &HermitianOperator<T>,
    tol: &Tolerances<T>,
) -> Result<FisherResult<T>> {
    if rho.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: h.dim(),
        });
    }
    let v = rho.spectrum().eigenvectors();
    let w = v.adjoint().mul(&h.matrix().mul(v));
    let pis = rho.eigenvalues();
    let four = T::from_f64_lossy(4.0);
    let mut qfi = T::zero();
    for i in 0..rho.dim() {
        for j in i + 1..rho.dim() {
            let sum = pis[i] + pis[j];
            if sum > tol.qfi_pair {
                let diff = pis[i] - pis[j];
                qfi += four * diff * diff / sum * w.get(i, j).norm_sqr();
            }
        }
    }
    let variance_bound = four * variance(h, rho)?;
    let sat = T::from_f64_lossy(SATURATION_TOL) * T::one().max(variance_bound);
    Ok(FisherResult {
        qfi,
        variance_bound,
        saturated: variance_bound - qfi <= sat,
    })
}

/// Classical Fisher information of the binary measurement `{Π, 1 − Π}`.
pub fn classical_fisher_binary<T: Real>(spec: &EvolutionSpec<T>, t: T) -> Result<T> {
    classical_fisher_binary_with(spec, t, &Tolerances::default())
}

/// Classical Fisher information `Ė²/(E(1 − E))` at time `t`.
///
/// Undefined where the outcome distribution degenerates: `E(1 − E)` below
/// `tol.degeneracy_guard` is rejected rather than divided by.
pub fn classical_fisher_binary_with<T: Real>(
    spec: &EvolutionSpec<T>,
    t: T,
    tol: &Tolerances<T>,
) -> Result<T> {
    let p = spec.survival_e(t);
    let complement = p * (T::one() - p);
    if complement < tol.degeneracy_guard {
        return Err(Error::DegenerateProbability {
            t: t.to_f64_lossy(),
            p_complement: complement.to_f64_lossy(),
        });
    }
    let pdot = spec.e_dot(t);
    Ok(pdot * pdot / complement)
}

/// Finite-difference check of the quantum Fisher information through the
/// Bures metric: `8·(1 − F(ρ, ρ(dt)))/dt² = 𝓕 + O(dt)`.
///
/// An independent path to 𝓕: no spectral formula, only fidelity and one
/// short evolution. Steps outside `[ORACLE_DT_MIN, ORACLE_DT_MAX]` are
/// rejected.
pub fn qfi_bures_oracle<T: Real>(
    rho: &DensityMatrix<T>,
    h: &HermitianOperator<T>,
    dt: T,
) -> Result<T> {
    if rho.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: h.dim(),
        });
    }
    let min = T::from_f64_lossy(ORACLE_DT_MIN);
    let max = T::from_f64_lossy(ORACLE_DT_MAX);
    if !(dt >= min && dt <= max) {
        return Err(Error::OracleStep {
            dt: dt.to_f64_lossy(),
            min: ORACLE_DT_MIN,
            max: ORACLE_DT_MAX,
        });
    }
    let moved = rotate_state(rho, h, dt);
    let f = fidelity(rho, &moved)?;
    Ok(T::from_f64_lossy(8.0) * (T::one() - f) / (dt * dt))
}
