//! Density matrices, projectors, and state functionals.
//!
//! A [`DensityMatrix`] is validated at construction (hermitian, positive
//! semidefinite up to the clamp, unit trace) and carries its spectrum and
//! rank from then on. Eigenvalues in `[−PSD_CLAMP, 0)` are clamped to zero;
//! the rank counts eigenvalues strictly above the configurable threshold.

use crate::error::{Error, Result};
use crate::linalg::{
    eig_unchecked, hermitian_eig_with, trace_product, ComplexMatrix, ComplexVector,
    HermitianOperator, SpectralDecomposition,
};
use crate::real::Real;
use crate::tol::Tolerances;

/// Mixed quantum state with cached spectrum and rank.
#[derive(Debug, Clone)]
pub struct DensityMatrix<T: Real> {
    matrix: ComplexMatrix<T>,
    spectrum: SpectralDecomposition<T>,
    rank: usize,
}

impl<T: Real> DensityMatrix<T> {
    /// Validates a density matrix with default tolerances.
    pub fn from_matrix(matrix: ComplexMatrix<T>) -> Result<Self> {
        Self::from_matrix_with(matrix, &Tolerances::default())
    }

    /// Validates a density matrix: hermiticity, positive semidefiniteness up
    /// to `tol.psd_clamp`, and unit trace within `tol.trace_one`.
    pub fn from_matrix_with(matrix: ComplexMatrix<T>, tol: &Tolerances<T>) -> Result<Self> {
        let mut spectrum = hermitian_eig_with(&matrix, tol)?;

        let clamp = tol.psd_clamp * T::one().max(matrix.max_abs());
        if let Some(&lowest) = spectrum.eigenvalues().first() {
            if lowest < -clamp {
                return Err(Error::NotPositiveSemidefinite {
                    eigenvalue: lowest.to_f64_lossy(),
                });
            }
        }
        for lambda in spectrum.eigenvalues_mut() {
            if *lambda < T::zero() {
                *lambda = T::zero();
            }
        }

        let trace = matrix.trace().re;
        if (trace - T::one()).abs() > tol.trace_one {
            return Err(Error::TraceNotOne {
                trace: trace.to_f64_lossy(),
            });
        }

        let rank = spectrum
            .eigenvalues()
            .iter()
            .filter(|&&l| l > tol.rank_threshold)
            .count();
        Ok(Self {
            matrix,
            spectrum,
            rank,
        })
    }

    /// Assembles a state whose spectrum is already known, e.g. after a
    /// unitary rotation. Callers guarantee consistency.
    pub(crate) fn from_parts(
        matrix: ComplexMatrix<T>,
        spectrum: SpectralDecomposition<T>,
        rank: usize,
    ) -> Self {
        Self {
            matrix,
            spectrum,
            rank,
        }
    }

    /// The density matrix itself.
    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    /// Hilbert space dimension.
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Cached eigendecomposition; eigenvalues ascending and clamped at 0.
    pub fn spectrum(&self) -> &SpectralDecomposition<T> {
        &self.spectrum
    }

    /// Ascending, clamped eigenvalues.
    pub fn eigenvalues(&self) -> &[T] {
        self.spectrum.eigenvalues()
    }

    /// Number of eigenvalues above the rank threshold in effect at
    /// construction.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// True when the rank is 1.
    pub fn is_pure(&self) -> bool {
        self.rank == 1
    }
}

/// Pure state `|ψ⟩⟨ψ|` from a (not necessarily normalized) vector.
pub fn pure_state<T: Real>(psi: &ComplexVector<T>) -> Result<DensityMatrix<T>> {
    let unit = psi.normalized()?;
    DensityMatrix::from_matrix(unit.outer(&unit))
}

/// Convex mixture `Σ w_k ρ_k`.
///
/// Weights must be nonnegative and sum to 1 within `WEIGHT_SUM`; components
/// must share one dimension.
pub fn mix<T: Real>(components: &[(T, DensityMatrix<T>)]) -> Result<DensityMatrix<T>> {
    let (_, first) = components.first().ok_or(Error::ZeroDimension)?;
    let dim = first.dim();
    let mut sum = T::zero();
    for (w, rho) in components {
        if *w < T::zero() {
            return Err(Error::NegativeWeight {
                weight: w.to_f64_lossy(),
            });
        }
        if rho.dim() != dim {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: rho.dim(),
            });
        }
        sum += *w;
    }
    let tol = Tolerances::<T>::default();
    if (sum - T::one()).abs() > tol.weight_sum {
        return Err(Error::WeightSumNotOne {
            sum: sum.to_f64_lossy(),
        });
    }
    let mut acc = ComplexMatrix::zeros(dim)?;
    for (w, rho) in components {
        acc = acc.add(&rho.matrix().scale(*w));
    }
    DensityMatrix::from_matrix_with(acc, &tol)
}

/// Uhlmann fidelity `F(ρ, σ) = Tr √(√ρ σ √ρ)`.
///
/// The inner matrix is assembled in the eigenbasis of ρ restricted to its
/// range: `√ρ σ √ρ` has no support on the kernel of ρ, and diagonalizing
/// the full-space matrix would turn kernel rounding noise `~ε` into `~√ε`
/// errors through the square root. Eigenvalues of ρ at or below the rank
/// threshold are treated as exact zeros, consistent with the range
/// projector. Rounding-level negative eigenvalues of the inner matrix are
/// clamped to zero. Symmetric in its arguments up to numerical noise.
pub fn fidelity<T: Real>(rho: &DensityMatrix<T>, sigma: &DensityMatrix<T>) -> Result<T> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: sigma.dim(),
        });
    }
    let dim = rho.dim();
    let rank = rho.rank();
    let offset = dim - rank;
    let v = rho.spectrum().eigenvectors();
    let b = v.adjoint().mul(sigma.matrix()).mul(v);
    let pis = rho.eigenvalues();
    let inner = ComplexMatrix::from_fn(rank, |i, j| {
        let si = pis[offset + i].max(T::zero()).sqrt();
        let sj = pis[offset + j].max(T::zero()).sqrt();
        b.get(offset + i, offset + j).scale(si * sj)
    })
    .expect("rank is between 1 and the validated dimension");
    let d = eig_unchecked(&inner);
    Ok(d.eigenvalues()
        .iter()
        .map(|&l| l.max(T::zero()).sqrt())
        .sum())
}

/// Trace distance `‖ρ − σ‖₁ / 2`, a metric with values in [0, 1].
pub fn trace_distance<T: Real>(rho: &DensityMatrix<T>, sigma: &DensityMatrix<T>) -> Result<T> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: sigma.dim(),
        });
    }
    let diff = rho.matrix().sub(sigma.matrix());
    let d = eig_unchecked(&diff);
    let half = T::from_f64_lossy(0.5);
    Ok(d.eigenvalues().iter().map(|&l| l.abs()).sum::<T>() * half)
}

/// Orthogonal projector with validated idempotency.
#[derive(Debug, Clone)]
pub struct Projector<T: Real> {
    matrix: ComplexMatrix<T>,
    subspace_dim: usize,
}

impl<T: Real> Projector<T> {
    /// Validates a projector with default tolerances.
    pub fn from_matrix(matrix: ComplexMatrix<T>) -> Result<Self> {
        Self::from_matrix_with(matrix, &Tolerances::default())
    }

    /// Validates hermiticity, idempotency `‖P² − P‖_max ≤ tol.idempotency`,
    /// and an integer trace, which becomes the subspace dimension.
    pub fn from_matrix_with(matrix: ComplexMatrix<T>, tol: &Tolerances<T>) -> Result<Self> {
        if !matrix.is_hermitian_within(tol.hermiticity) {
            return Err(Error::NotHermitian {
                deviation: matrix.hermiticity_deviation().to_f64_lossy(),
            });
        }
        let dev = matrix.mul(&matrix).sub(&matrix).max_abs();
        if dev > tol.idempotency {
            return Err(Error::NotIdempotent {
                deviation: dev.to_f64_lossy(),
            });
        }
        let trace = matrix.trace().re;
        let rounded = trace.round();
        if (trace - rounded).abs() > tol.idempotency
            || rounded < T::zero()
            || rounded > T::from_f64_lossy(matrix.dim() as f64)
        {
            return Err(Error::ProjectorTrace {
                trace: trace.to_f64_lossy(),
            });
        }
        let subspace_dim = rounded.to_f64_lossy() as usize;
        Ok(Self {
            matrix,
            subspace_dim,
        })
    }

    /// Projector onto the whole space.
    pub fn identity(dim: usize) -> Result<Self> {
        Ok(Self {
            matrix: ComplexMatrix::identity(dim)?,
            subspace_dim: dim,
        })
    }

    /// Rank-one projector `|k⟩⟨k|` onto a computational basis state.
    pub fn basis_state(dim: usize, index: usize) -> Result<Self> {
        let e = ComplexVector::basis(dim, index)?;
        Ok(Self {
            matrix: e.outer(&e),
            subspace_dim: 1,
        })
    }

    pub(crate) fn from_parts(matrix: ComplexMatrix<T>, subspace_dim: usize) -> Self {
        Self {
            matrix,
            subspace_dim,
        }
    }

    /// The projector matrix.
    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    /// Hilbert space dimension.
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Dimension of the projected subspace.
    pub fn subspace_dim(&self) -> usize {
        self.subspace_dim
    }

    /// The projector viewed as a Hermitian observable.
    pub fn to_operator(&self) -> HermitianOperator<T> {
        HermitianOperator::new_unchecked(self.matrix.clone())
    }
}

/// Projector onto the range of ρ: eigenvectors with eigenvalue above the
/// rank threshold. Full-rank states yield the exact identity.
pub fn range_projector<T: Real>(rho: &DensityMatrix<T>) -> Projector<T> {
    let dim = rho.dim();
    let rank = rho.rank();
    if rank == dim {
        return Projector::from_parts(
            ComplexMatrix::identity(dim).expect("dimension already validated"),
            dim,
        );
    }
    let mut acc = ComplexMatrix::zeros(dim).expect("dimension already validated");
    for k in dim - rank..dim {
        let v = rho.spectrum().eigenvector(k);
        acc = acc.add(&v.outer(&v));
    }
    Projector::from_parts(acc, rank)
}

/// Expectation value `⟨H⟩_ρ = Tr(H ρ)`.
///
/// The trace of a Hermitian observable against a state is real; the
/// imaginary residue is rounding noise below 1e−10 and is dropped.
pub fn expectation<T: Real>(obs: &HermitianOperator<T>, rho: &DensityMatrix<T>) -> Result<T> {
    if obs.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            left: obs.dim(),
            right: rho.dim(),
        });
    }
    Ok(trace_product(obs.matrix(), rho.matrix()).re)
}

/// Variance `⟨H²⟩ − ⟨H⟩²`, clamped at zero against rounding.
pub(crate) fn variance<T: Real>(obs: &HermitianOperator<T>, rho: &DensityMatrix<T>) -> Result<T> {
    if obs.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            left: obs.dim(),
            right: rho.dim(),
        });
    }
    let h_rho = obs.matrix().mul(rho.matrix());
    let m2 = trace_product(obs.matrix(), &h_rho).re;
    let m1 = trace_product(obs.matrix(), rho.matrix()).re;
    Ok((m2 - m1 * m1).max(T::zero()))
}

/// Standard deviation `ΔH = √(⟨H²⟩ − ⟨H⟩²)`.
pub fn std_dev<T: Real>(obs: &HermitianOperator<T>, rho: &DensityMatrix<T>) -> Result<T> {
    Ok(variance(obs, rho)?.sqrt())
}
