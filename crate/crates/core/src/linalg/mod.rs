//! Dense complex linear algebra: matrices, Hermitian eigendecomposition,
//! and the spectral-calculus operations built on it.

mod eig;
mod matrix;

pub use eig::{hermitian_eig, hermitian_eig_with, SpectralDecomposition};
pub use matrix::{kron, trace_product, ComplexMatrix, ComplexVector, DIM_CAP};

pub(crate) use eig::eig_unchecked;

use std::sync::OnceLock;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::real::Real;
use crate::tol::Tolerances;

/// Hermitian operator with a lazily cached eigendecomposition.
///
/// Construction validates hermiticity once; evolution operators and matrix
/// functions then reuse a single spectral decomposition.
#[derive(Debug, Clone)]
pub struct HermitianOperator<T: Real> {
    matrix: ComplexMatrix<T>,
    spectrum: OnceLock<SpectralDecomposition<T>>,
}

impl<T: Real> HermitianOperator<T> {
    /// Validates hermiticity with default tolerances.
    pub fn new(matrix: ComplexMatrix<T>) -> Result<Self> {
        Self::with_tolerances(matrix, &Tolerances::default())
    }

    /// Validates hermiticity with `tol.hermiticity`.
    pub fn with_tolerances(matrix: ComplexMatrix<T>, tol: &Tolerances<T>) -> Result<Self> {
        if !matrix.is_hermitian_within(tol.hermiticity) {
            return Err(Error::NotHermitian {
                deviation: matrix.hermiticity_deviation().to_f64_lossy(),
            });
        }
        Ok(Self {
            matrix,
            spectrum: OnceLock::new(),
        })
    }

    /// Wraps a matrix that passed hermiticity validation elsewhere, e.g. a
    /// projector reused as an observable.
    pub(crate) fn new_unchecked(matrix: ComplexMatrix<T>) -> Self {
        Self {
            matrix,
            spectrum: OnceLock::new(),
        }
    }

    /// The underlying matrix.
    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    /// Operator dimension.
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Eigendecomposition, computed on first use.
    pub fn spectrum(&self) -> &SpectralDecomposition<T> {
        self.spectrum.get_or_init(|| eig_unchecked(&self.matrix))
    }

    /// `factor · H`; hermiticity survives real scaling, so no revalidation.
    pub fn scaled(&self, factor: T) -> Self {
        Self {
            matrix: self.matrix.scale(factor),
            spectrum: OnceLock::new(),
        }
    }
}

/// Unitary `exp(−i H t)` via the spectral calculus of `h` (ħ = 1).
pub fn unitary_exp<T: Real>(h: &HermitianOperator<T>, t: T) -> ComplexMatrix<T> {
    h.spectrum()
        .map(|lambda| Complex::from_polar(T::one(), -lambda * t))
}

/// Hermitian square root of a positive semidefinite matrix.
///
/// Eigenvalues in `[−tol, 0)` with `tol = PSD_CLAMP · max(1, ‖m‖_max)` are
/// clamped to zero; anything lower rejects the input as not PSD.
pub fn psd_sqrt<T: Real>(m: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    let tol = Tolerances::default();
    let d = hermitian_eig_with(m, &tol)?;
    let clamp = tol.psd_clamp * T::one().max(m.max_abs());
    if let Some(&lowest) = d.eigenvalues().first() {
        if lowest < -clamp {
            return Err(Error::NotPositiveSemidefinite {
                eigenvalue: lowest.to_f64_lossy(),
            });
        }
    }
    Ok(d.map(|lambda| Complex::new(lambda.max(T::zero()).sqrt(), T::zero())))
}

/// Trace norm `‖m‖₁ = Σ |λ_k|` of a Hermitian matrix.
pub fn trace_norm<T: Real>(m: &ComplexMatrix<T>) -> Result<T> {
    let d = hermitian_eig(m)?;
    Ok(d.eigenvalues().iter().map(|&l| l.abs()).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type M = ComplexMatrix<f64>;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn random_hermitian(dim: usize, seed: u64) -> M {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        M::from_fn(dim, |_, _| {
            c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        })
        .unwrap()
        .hermitian_part()
    }

    #[test]
    fn unitary_exp_of_pauli_z_is_diagonal_phase() {
        let sz = M::new(2, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]).unwrap();
        let h = HermitianOperator::new(sz).unwrap();
        let t = 0.7;
        let u = unitary_exp(&h, t);
        // exp(−i σ_z t) = diag(e^{−it}, e^{+it}).
        assert!((u.get(0, 0) - Complex::from_polar(1.0, -t)).norm() < 1e-14);
        assert!((u.get(1, 1) - Complex::from_polar(1.0, t)).norm() < 1e-14);
        assert!(u.get(0, 1).norm() < 1e-14);
        assert!(u.get(1, 0).norm() < 1e-14);
    }

    #[test]
    fn psd_sqrt_of_diagonal() {
        let m = M::new(2, vec![c(4.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(9.0, 0.0)]).unwrap();
        let s = psd_sqrt(&m).unwrap();
        assert!((s.get(0, 0).re - 2.0).abs() < 1e-13);
        assert!((s.get(1, 1).re - 3.0).abs() < 1e-13);
        assert!(s.get(0, 1).norm() < 1e-13);
    }

    #[test]
    fn psd_sqrt_rejects_indefinite() {
        let m = M::new(2, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]).unwrap();
        assert!(matches!(
            psd_sqrt(&m),
            Err(Error::NotPositiveSemidefinite { .. })
        ));
    }

    #[test]
    fn trace_norm_of_indefinite_diagonal() {
        let m = M::new(2, vec![c(3.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-4.0, 0.0)]).unwrap();
        assert!((trace_norm(&m).unwrap() - 7.0).abs() < 1e-13);
    }

    #[test]
    fn scaled_operator_keeps_matrix_consistent() {
        let h = HermitianOperator::new(random_hermitian(4, 7)).unwrap();
        let g = h.scaled(-2.5);
        assert!(g.matrix().sub(&h.matrix().scale(-2.5)).max_abs() == 0.0);
        // Spectrum of the scaled operator matches scaled eigenvalues
        // (reversed order for a negative factor).
        let mut expected: Vec<f64> = h
            .spectrum()
            .eigenvalues()
            .iter()
            .map(|l| l * -2.5)
            .collect();
        expected.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (a, b) in g.spectrum().eigenvalues().iter().zip(&expected) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn unitary_exp_is_unitary_and_a_group(seed in any::<u64>(), dim in 1usize..=6) {
            let h = HermitianOperator::new(random_hermitian(dim, seed)).unwrap();
            let (t, s) = (0.8, -0.3);
            let ut = unitary_exp(&h, t);
            let us = unitary_exp(&h, s);
            let id = M::identity(dim).unwrap();
            prop_assert!(ut.mul(&ut.adjoint()).sub(&id).max_abs() < 1e-12);
            // Group property U(t+s) = U(t)·U(s).
            let uts = unitary_exp(&h, t + s);
            prop_assert!(uts.sub(&ut.mul(&us)).max_abs() < 1e-10);
        }

        #[test]
        fn psd_sqrt_squares_back(seed in any::<u64>(), dim in 1usize..=6) {
            // G G† is PSD for any G.
            let g = {
                use rand::{Rng, SeedableRng};
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                M::from_fn(dim, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).unwrap()
            };
            let m = g.mul(&g.adjoint());
            let s = psd_sqrt(&m).unwrap();
            let err = s.mul(&s).sub(&m).max_abs();
            prop_assert!(err <= 1e-9 * m.max_abs().max(1.0), "err = {err:.3e}");
        }

        #[test]
        fn trace_norm_matches_singular_values(seed in any::<u64>(), dim in 1usize..=6) {
            // For hermitian m the singular values are √eig(m²); compare the
            // two routes.
            let m = random_hermitian(dim, seed);
            let tn = trace_norm(&m).unwrap();
            let squared = m.mul(&m);
            let d = hermitian_eig(&squared).unwrap();
            let sv_sum: f64 = d.eigenvalues().iter().map(|&l| l.max(0.0).sqrt()).sum();
            prop_assert!((tn - sv_sum).abs() < 1e-10 * (1.0 + tn));
        }
    }
}
