//! Seeded random fixtures shared by the integration suites.

use num_complex::Complex;
use qsl_core::linalg::{ComplexMatrix, ComplexVector, HermitianOperator};
use qsl_core::states::{mix, pure_state, DensityMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_vector(rng: &mut ChaCha8Rng, dim: usize) -> ComplexVector<f64> {
    ComplexVector::new(
        (0..dim)
            .map(|_| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect(),
    )
    .expect("random entries are finite")
}

/// Mixture of `rank` random pure states with random weights; the sampled
/// rank can fall below `rank` if vectors overlap, which the tests tolerate.
pub fn random_mixed(rng: &mut ChaCha8Rng, dim: usize, rank: usize) -> DensityMatrix<f64> {
    let weights: Vec<f64> = (0..rank).map(|_| rng.gen_range(0.1..1.0)).collect();
    let total: f64 = weights.iter().sum();
    let terms: Vec<_> = weights
        .into_iter()
        .map(|w| {
            let v = random_vector(rng, dim);
            (
                w / total,
                pure_state(&v).expect("random vector has nonzero norm"),
            )
        })
        .collect();
    mix(&terms).expect("weights normalized above")
}

pub fn random_hermitian(rng: &mut ChaCha8Rng, dim: usize) -> HermitianOperator<f64> {
    let m = ComplexMatrix::from_fn(dim, |_, _| {
        Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
    .expect("dimension is small")
    .hermitian_part();
    HermitianOperator::new(m).expect("hermitian part is hermitian")
}
