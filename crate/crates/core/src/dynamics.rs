//! Unitary evolution and survival probabilities.
//!
//! An [`EvolutionSpec`] pairs an initial state with a Hamiltonian (ħ = 1)
//! and tracks how distinguishable `ρ(t) = e^{−iHt} ρ e^{iHt}` is from ρ:
//!
//! - `P(t) = |⟨ψ|ψ(t)⟩|²` for pure states;
//! - `T(t) = F(ρ, ρ(t))²`, the squared Uhlmann fidelity;
//! - `E(t) = Tr[Π ρ(t)]` for a projector Π, by default the projector onto
//!   the range of ρ;
//! - `D(t) = 1 − (‖ρ(t) − ρ‖₁ / 2)²`.
//!
//! All four equal 1 at t = 0 and reach 0 exactly when the evolved state
//! becomes perfectly distinguishable. T, D, and P are even in t for any
//! Hermitian H. E is even whenever ρ, H, and Π are real matrices (as in the
//! collective-spin families built by [`crate::scenarios`]); with complex
//! matrix elements it can pick up an O(t³) asymmetry, so no evenness is
//! assumed for it here.

use crate::bounds::{fisher_bound, mt_bound};
use crate::error::{Error, Result};
use crate::fisher::quantum_fisher;
use crate::linalg::{trace_product, unitary_exp, HermitianOperator, SpectralDecomposition};
use crate::real::Real;
use crate::states::{fidelity, range_projector, std_dev, trace_distance, DensityMatrix, Projector};

/// Rotates ρ to `U ρ U†` without re-diagonalizing: the spectrum is carried
/// over and only the eigenbasis is rotated.
pub(crate) fn rotate_state<T: Real>(
    rho: &DensityMatrix<T>,
    h: &HermitianOperator<T>,
    t: T,
) -> DensityMatrix<T> {
    let u = unitary_exp(h, t);
    let rotated = u.mul(rho.spectrum().eigenvectors());
    let spectrum = SpectralDecomposition::from_parts(rho.eigenvalues().to_vec(), rotated);
    let matrix = spectrum.reconstruct();
    DensityMatrix::from_parts(matrix, spectrum, rho.rank())
}

/// Survival probability `P(t) = |⟨ψ|e^{−iHt}|ψ⟩|²` of a pure state.
///
/// Defined for pure states only; mixed input is rejected rather than
/// silently reinterpreted.
pub fn survival_p<T: Real>(rho: &DensityMatrix<T>, h: &HermitianOperator<T>, t: T) -> Result<T> {
    if rho.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: h.dim(),
        });
    }
    if !rho.is_pure() {
        return Err(Error::MixedState { rank: rho.rank() });
    }
    let psi = rho.spectrum().eigenvector(rho.dim() - 1);
    let amp = psi.inner(&unitary_exp(h, t).mul_vec(&psi));
    Ok(amp.norm_sqr())
}

/// Per-sample survival values, computed from a single evolution.
#[derive(Debug, Clone, Copy)]
pub(crate) struct SurvivalSample<T> {
    pub p: Option<T>,
    pub t: T,
    pub e: T,
    pub d: T,
}

/// Initial state, Hamiltonian, and the projector defining `E(t)`.
#[derive(Debug, Clone)]
pub struct EvolutionSpec<T: Real> {
    rho0: DensityMatrix<T>,
    hamiltonian: HermitianOperator<T>,
    custom_projector: Option<Projector<T>>,
    range: Projector<T>,
}

impl<T: Real> EvolutionSpec<T> {
    /// Evolution with the default projector onto the range of ρ.
    pub fn new(rho0: DensityMatrix<T>, hamiltonian: HermitianOperator<T>) -> Result<Self> {
        if rho0.dim() != hamiltonian.dim() {
            return Err(Error::DimensionMismatch {
                left: rho0.dim(),
                right: hamiltonian.dim(),
            });
        }
        let range = range_projector(&rho0);
        Ok(Self {
            rho0,
            hamiltonian,
            custom_projector: None,
            range,
        })
    }

    /// Evolution with an explicit projector for `E(t)`.
    pub fn with_projector(
        rho0: DensityMatrix<T>,
        hamiltonian: HermitianOperator<T>,
        projector: Projector<T>,
    ) -> Result<Self> {
        if projector.dim() != rho0.dim() {
            return Err(Error::DimensionMismatch {
                left: projector.dim(),
                right: rho0.dim(),
            });
        }
        let mut spec = Self::new(rho0, hamiltonian)?;
        spec.custom_projector = Some(projector);
        Ok(spec)
    }

    /// Initial state.
    pub fn rho0(&self) -> &DensityMatrix<T> {
        &self.rho0
    }

    /// Generator of the evolution.
    pub fn hamiltonian(&self) -> &HermitianOperator<T> {
        &self.hamiltonian
    }

    /// Hilbert space dimension.
    pub fn dim(&self) -> usize {
        self.rho0.dim()
    }

    /// The projector used by `E(t)`: the custom one if set, otherwise the
    /// projector onto the range of ρ.
    pub fn effective_projector(&self) -> &Projector<T> {
        self.custom_projector.as_ref().unwrap_or(&self.range)
    }

    /// True when `E(t)` uses the range projector of the initial state.
    pub fn is_default_projector(&self) -> bool {
        self.custom_projector.is_none()
    }

    /// The evolved state `ρ(t)`.
    pub fn evolve(&self, t: T) -> DensityMatrix<T> {
        rotate_state(&self.rho0, &self.hamiltonian, t)
    }

    /// Squared fidelity `T(t) = F(ρ, ρ(t))²`.
    pub fn survival_t(&self, t: T) -> T {
        let f =
            fidelity(&self.rho0, &self.evolve(t)).expect("dimensions validated at construction");
        f * f
    }

    /// Projector expectation `E(t) = Tr[Π ρ(t)]`.
    pub fn survival_e(&self, t: T) -> T {
        trace_product(self.effective_projector().matrix(), self.evolve(t).matrix()).re
    }

    /// Trace-distance functional `D(t) = 1 − (‖ρ(t) − ρ‖₁/2)²`.
    pub fn survival_d(&self, t: T) -> T {
        let dist = trace_distance(&self.rho0, &self.evolve(t))
            .expect("dimensions validated at construction");
        T::one() - dist * dist
    }

    /// All survivals from one evolution; `p` only for pure initial states.
    pub(crate) fn survivals_at(&self, t: T) -> SurvivalSample<T> {
        let rho_t = self.evolve(t);
        let f = fidelity(&self.rho0, &rho_t).expect("dimensions validated at construction");
        let dist =
            trace_distance(&self.rho0, &rho_t).expect("dimensions validated at construction");
        let e = trace_product(self.effective_projector().matrix(), rho_t.matrix()).re;
        let p = if self.rho0.is_pure() {
            let psi = self.rho0.spectrum().eigenvector(self.dim() - 1);
            Some(psi.inner(&rho_t.matrix().mul_vec(&psi)).re)
        } else {
            None
        };
        SurvivalSample {
            p,
            t: f * f,
            e,
            d: T::one() - dist * dist,
        }
    }

    /// Time derivative `dE/dt = −i Tr([Π, H] ρ(t))`.
    ///
    /// The commutator trace against a Hermitian state is purely imaginary,
    /// so the derivative is its imaginary part.
    pub fn e_dot(&self, t: T) -> T {
        let p = self.effective_projector().matrix();
        let h = self.hamiltonian.matrix();
        let comm = p.mul(h).sub(&h.mul(p));
        trace_product(&comm, self.evolve(t).matrix()).im
    }

    /// Splits `E(t)` into the coherent part `Σ_i π_i |⟨i|U|i⟩|²` and the
    /// off-diagonal leakage `Σ_{i≠j} π_i |⟨j|U|i⟩|²` over eigenvectors in
    /// the range of ρ.
    ///
    /// Only meaningful for the default range projector.
    pub fn e_decomposition(&self, t: T) -> Result<(T, T)> {
        if self.custom_projector.is_some() {
            return Err(Error::NonDefaultProjector);
        }
        let v = self.rho0.spectrum().eigenvectors();
        let u = unitary_exp(&self.hamiltonian, t);
        let w = v.adjoint().mul(&u.mul(v));
        let dim = self.dim();
        let rank = self.rho0.rank();
        let pis = self.rho0.eigenvalues();
        let mut coherent = T::zero();
        let mut leakage = T::zero();
        for (i, &pi) in pis.iter().enumerate().skip(dim - rank) {
            coherent += pi * w.get(i, i).norm_sqr();
            for j in dim - rank..dim {
                if j != i {
                    leakage += pi * w.get(j, i).norm_sqr();
                }
            }
        }
        Ok((coherent, leakage))
    }
}

/// Sampled survival and bound curves of one evolution on a uniform grid,
/// ready for plotting or CSV serialization.
///
/// The bound arrays hold the raw trigonometric formulas at every sample;
/// the window flags say where the corresponding inequality actually
/// applies. Samples are mutually independent, so a parallel implementation
/// may fill them in any order as long as the grid order is preserved.
#[derive(Debug, Clone)]
pub struct EvolutionTrace<T> {
    /// Ascending sample times from 0 to `t_max` inclusive.
    pub times: Vec<T>,
    /// `P(t)` per sample, present when the initial state is pure.
    pub survival_p: Option<Vec<T>>,
    /// Squared-fidelity survival `T(t)` per sample.
    pub survival_t: Vec<T>,
    /// Projection survival `E(t)` per sample.
    pub survival_e: Vec<T>,
    /// Trace-distance survival `D(t)` per sample.
    pub survival_d: Vec<T>,
    /// `cos²(ΔH t)` per sample.
    pub bound_mt: Vec<T>,
    /// `cos²(√𝓕 t/2)` per sample.
    pub bound_fisher: Vec<T>,
    /// Whether each sample lies inside the MT validity window.
    pub in_mt_window: Vec<bool>,
    /// Whether each sample lies inside the Fisher validity window.
    pub in_fisher_window: Vec<bool>,
}

/// Samples all survival probabilities and both bound curves on `steps`
/// uniform times covering `[0, t_max]`.
pub fn trace_evolution<T: Real>(
    spec: &EvolutionSpec<T>,
    t_max: T,
    steps: usize,
) -> Result<EvolutionTrace<T>> {
    if !(t_max.is_finite() && t_max > T::zero()) {
        return Err(Error::NonPositiveTMax {
            t_max: t_max.to_f64_lossy(),
        });
    }
    if steps < 2 {
        return Err(Error::TooFewSteps { steps });
    }
    let dh = std_dev(spec.hamiltonian(), spec.rho0())?;
    let qfi = quantum_fisher(spec.rho0(), spec.hamiltonian())?.qfi;
    let mt = mt_bound(dh)?;
    let fisher = fisher_bound(qfi)?;

    let denom = T::from_f64_lossy((steps - 1) as f64);
    let mut trace = EvolutionTrace {
        times: Vec::with_capacity(steps),
        survival_p: spec.rho0().is_pure().then(|| Vec::with_capacity(steps)),
        survival_t: Vec::with_capacity(steps),
        survival_e: Vec::with_capacity(steps),
        survival_d: Vec::with_capacity(steps),
        bound_mt: Vec::with_capacity(steps),
        bound_fisher: Vec::with_capacity(steps),
        in_mt_window: Vec::with_capacity(steps),
        in_fisher_window: Vec::with_capacity(steps),
    };
    for i in 0..steps {
        // Pinning the endpoint keeps the last sample exactly at t_max;
        // t_max·(steps−1)/(steps−1) can land one ulp off it.
        let t = if i + 1 == steps {
            t_max
        } else {
            t_max * T::from_f64_lossy(i as f64) / denom
        };
        let s = spec.survivals_at(t);
        trace.times.push(t);
        if let Some(column) = trace.survival_p.as_mut() {
            column.push(s.p.expect("purity checked before the loop"));
        }
        trace.survival_t.push(s.t);
        trace.survival_e.push(s.e);
        trace.survival_d.push(s.d);
        trace.bound_mt.push(mt.raw_value(t));
        trace.bound_fisher.push(fisher.raw_value(t));
        trace.in_mt_window.push(mt.in_window(t));
        trace.in_fisher_window.push(fisher.in_window(t));
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ComplexMatrix, ComplexVector};
    use crate::states::{mix, pure_state};
    use num_complex::Complex;
    use proptest::prelude::*;

    type M = ComplexMatrix<f64>;
    type V = ComplexVector<f64>;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn pauli_x() -> HermitianOperator<f64> {
        HermitianOperator::new(
            M::new(2, vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]).unwrap(),
        )
        .unwrap()
    }

    fn pauli_z() -> HermitianOperator<f64> {
        HermitianOperator::new(
            M::new(2, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]).unwrap(),
        )
        .unwrap()
    }

    /// diag(1−x, x) rotated by H = Ω σ_x / 2, measured by Π = |0⟩⟨0|.
    fn one_qubit_spec(x: f64, omega: f64) -> EvolutionSpec<f64> {
        let rho = DensityMatrix::from_matrix(
            M::new(
                2,
                vec![c(1.0 - x, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(x, 0.0)],
            )
            .unwrap(),
        )
        .unwrap();
        let h = HermitianOperator::new(pauli_x().matrix().scale(omega / 2.0)).unwrap();
        EvolutionSpec::with_projector(rho, h, Projector::basis_state(2, 0).unwrap()).unwrap()
    }

    fn random_mixed(dim: usize, rank: usize, seed: u64) -> DensityMatrix<f64> {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut terms = Vec::new();
        let mut weights = vec![0.0; rank];
        let mut total = 0.0;
        for w in &mut weights {
            *w = rng.gen_range(0.1..1.0);
            total += *w;
        }
        for w in &mut weights {
            let v = V::new(
                (0..dim)
                    .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect(),
            )
            .unwrap();
            terms.push((*w / total, pure_state(&v).unwrap()));
        }
        mix(&terms).unwrap()
    }

    fn random_hermitian(dim: usize, seed: u64) -> HermitianOperator<f64> {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let m = M::from_fn(dim, |_, _| {
            c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        })
        .unwrap()
        .hermitian_part();
        HermitianOperator::new(m).unwrap()
    }

    #[test]
    fn pure_state_survivals_all_equal_cos_squared() {
        let rho = pure_state(&V::from_real(&[1.0, 0.0]).unwrap()).unwrap();
        let spec = EvolutionSpec::new(rho, pauli_x()).unwrap();
        for &t in &[0.3f64, 0.7, 1.2] {
            let expected = t.cos().powi(2);
            let s = spec.survivals_at(t);
            assert!((s.p.unwrap() - expected).abs() < 1e-12);
            assert!((s.t - expected).abs() < 1e-9);
            assert!((s.e - expected).abs() < 1e-12);
            assert!((s.d - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn survivals_start_at_one() {
        let spec = EvolutionSpec::new(random_mixed(4, 3, 7), random_hermitian(4, 8)).unwrap();
        let s = spec.survivals_at(0.0);
        assert!(s.p.is_none());
        assert!((s.t - 1.0).abs() < 1e-10);
        assert!((s.e - 1.0).abs() < 1e-10);
        assert!((s.d - 1.0).abs() < 1e-10);
    }

    #[test]
    fn evolve_matches_direct_conjugation() {
        let spec = EvolutionSpec::new(random_mixed(4, 4, 3), random_hermitian(4, 4)).unwrap();
        let t = 0.8;
        let rho_t = spec.evolve(t);
        let u = unitary_exp(spec.hamiltonian(), t);
        let direct = u.mul(spec.rho0().matrix()).mul(&u.adjoint());
        assert!(rho_t.matrix().sub(&direct).max_abs() < 1e-12);
        assert_eq!(rho_t.eigenvalues(), spec.rho0().eigenvalues());
        assert!((rho_t.matrix().trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn one_qubit_projection_follows_the_closed_form() {
        // E(t) = 1/4 + sin²(Ωt/2)/2 for x = 3/4; T and D coincide at
        // 7/8 + cos(Ωt)/8 for this family.
        let spec = one_qubit_spec(0.75, 1.0);
        for &t in &[0.0f64, 0.4, 1.1, 2.0, 3.0] {
            let e_expected = 0.25 + 0.5 * (t / 2.0).sin().powi(2);
            assert!((spec.survival_e(t) - e_expected).abs() < 1e-12);
            let td_expected = 7.0 / 8.0 + t.cos() / 8.0;
            assert!((spec.survival_t(t) - td_expected).abs() < 1e-10);
            assert!((spec.survival_d(t) - td_expected).abs() < 1e-12);
        }
    }

    #[test]
    fn e_dot_matches_the_closed_form_derivative() {
        // dE/dt = (Ω/4) sin(Ωt) for the x = 3/4 qubit family.
        let omega = 1.3;
        let spec = one_qubit_spec(0.75, omega);
        for &t in &[0.0, 0.5, 1.57, 2.9] {
            let expected = omega / 4.0 * (omega * t).sin();
            assert!((spec.e_dot(t) - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn e_dot_matches_central_finite_differences() {
        let spec = EvolutionSpec::new(random_mixed(3, 2, 21), random_hermitian(3, 22)).unwrap();
        let h = 1e-5;
        for &t in &[0.0, 0.7, 1.9] {
            let fd = (spec.survival_e(t + h) - spec.survival_e(t - h)) / (2.0 * h);
            let v = spec.e_dot(t);
            assert!(
                (v - fd).abs() < (1e-6f64).max(1e-6 * v.abs()),
                "t={t}: {v} vs {fd}"
            );
        }
    }

    #[test]
    fn e_decomposition_sums_to_e_and_needs_default_projector() {
        let spec = EvolutionSpec::new(random_mixed(4, 2, 31), random_hermitian(4, 32)).unwrap();
        for &t in &[0.3, 1.1] {
            let (coherent, leakage) = spec.e_decomposition(t).unwrap();
            assert!(coherent >= 0.0 && leakage >= 0.0);
            assert!((coherent + leakage - spec.survival_e(t)).abs() < 1e-9);
        }

        let custom = EvolutionSpec::with_projector(
            random_mixed(4, 2, 31),
            random_hermitian(4, 32),
            Projector::basis_state(4, 0).unwrap(),
        )
        .unwrap();
        assert!(matches!(
            custom.e_decomposition(0.5),
            Err(Error::NonDefaultProjector)
        ));
    }

    #[test]
    fn survival_p_requires_purity() {
        let mixed = random_mixed(3, 2, 41);
        let h = random_hermitian(3, 42);
        assert!(matches!(
            survival_p(&mixed, &h, 0.5),
            Err(Error::MixedState { rank: 2 })
        ));

        let plus = pure_state(&V::from_real(&[1.0, 1.0]).unwrap()).unwrap();
        for &t in &[0.2, 0.9, 1.5] {
            let p = survival_p(&plus, &pauli_z(), t).unwrap();
            assert!((p - t.cos().powi(2)).abs() < 1e-12);
        }
    }

    #[test]
    fn trace_covers_the_grid_and_matches_pointwise_calls() {
        let spec = EvolutionSpec::new(random_mixed(4, 2, 51), random_hermitian(4, 52)).unwrap();
        let trace = trace_evolution(&spec, 2.0, 9).unwrap();
        assert_eq!(trace.times.len(), 9);
        assert_eq!(trace.times[0], 0.0);
        assert_eq!(trace.times[8], 2.0);
        assert!(trace.survival_p.is_none());
        for (k, &t) in trace.times.iter().enumerate() {
            assert!((trace.survival_t[k] - spec.survival_t(t)).abs() < 1e-12);
            assert!((trace.survival_e[k] - spec.survival_e(t)).abs() < 1e-12);
            assert!((trace.survival_d[k] - spec.survival_d(t)).abs() < 1e-12);
            assert!(trace.bound_mt[k] >= 0.0 && trace.bound_mt[k] <= 1.0);
            assert!(trace.bound_fisher[k] >= 0.0 && trace.bound_fisher[k] <= 1.0);
            // Soundness inside the Fisher window.
            if trace.in_fisher_window[k] {
                assert!(trace.survival_t[k] >= trace.bound_fisher[k] - 1e-9);
                assert!(trace.survival_d[k] >= trace.bound_fisher[k] - 1e-9);
                assert!(trace.survival_e[k] >= trace.bound_fisher[k] - 1e-9);
            }
        }
    }

    #[test]
    fn trace_of_a_stationary_eigenstate_is_constant_one() {
        // H-eigenstate: ΔH = 0 and 𝓕 = 0, so every curve and both bounds
        // are the constant 1 with unbounded windows.
        let rho = pure_state(&V::from_real(&[1.0, 0.0]).unwrap()).unwrap();
        let spec = EvolutionSpec::new(rho, pauli_z()).unwrap();
        let trace = trace_evolution(&spec, 5.0, 6).unwrap();
        let p = trace.survival_p.as_ref().unwrap();
        for (k, &pk) in p.iter().enumerate() {
            assert!((pk - 1.0).abs() < 1e-12);
            assert!((trace.survival_t[k] - 1.0).abs() < 1e-9);
            assert!((trace.survival_e[k] - 1.0).abs() < 1e-12);
            assert!((trace.survival_d[k] - 1.0).abs() < 1e-12);
            assert_eq!(trace.bound_mt[k], 1.0);
            assert_eq!(trace.bound_fisher[k], 1.0);
            assert!(trace.in_mt_window[k]);
            assert!(trace.in_fisher_window[k]);
        }
    }

    #[test]
    fn trace_window_flags_flip_at_the_window_ends() {
        // |+⟩ under σ_z: ΔH = 1, 𝓕 = 4, MT window π/2, Fisher window π/2.
        let plus = pure_state(&V::from_real(&[1.0, 1.0]).unwrap()).unwrap();
        let spec = EvolutionSpec::new(plus, pauli_z()).unwrap();
        let trace = trace_evolution(&spec, 2.0, 101).unwrap();
        for (k, &t) in trace.times.iter().enumerate() {
            let inside = t <= std::f64::consts::FRAC_PI_2;
            assert_eq!(trace.in_mt_window[k], inside, "t = {t}");
            assert_eq!(trace.in_fisher_window[k], inside, "t = {t}");
        }
        // P equals T for the pure state.
        let p = trace.survival_p.as_ref().unwrap();
        for (pk, tk) in p.iter().zip(&trace.survival_t) {
            assert!((pk - tk).abs() < 1e-9);
        }
    }

    #[test]
    fn trace_validates_the_grid() {
        let spec = one_qubit_spec(0.75, 1.0);
        assert!(matches!(
            trace_evolution(&spec, 0.0, 10),
            Err(Error::NonPositiveTMax { .. })
        ));
        assert!(matches!(
            trace_evolution(&spec, -1.0, 10),
            Err(Error::NonPositiveTMax { .. })
        ));
        assert!(matches!(
            trace_evolution(&spec, 1.0, 1),
            Err(Error::TooFewSteps { steps: 1 })
        ));
    }

    #[test]
    fn projection_can_be_asymmetric_in_time_with_complex_couplings() {
        // Rank-deficient state plus one imaginary coupling: E picks up an
        // O(t³) asymmetry, while T and D stay even regardless.
        let rho = DensityMatrix::from_matrix(
            M::from_fn(3, |i, j| {
                if i == j {
                    c([0.7, 0.3, 0.0][i], 0.0)
                } else {
                    c(0.0, 0.0)
                }
            })
            .unwrap(),
        )
        .unwrap();
        let h = HermitianOperator::new(
            M::new(
                3,
                vec![
                    c(0.0, 0.0),
                    c(1.0, 0.0),
                    c(1.0, 0.0),
                    c(1.0, 0.0),
                    c(0.0, 0.0),
                    c(0.0, 1.0),
                    c(1.0, 0.0),
                    c(0.0, -1.0),
                    c(0.0, 0.0),
                ],
            )
            .unwrap(),
        )
        .unwrap();
        let spec = EvolutionSpec::new(rho, h).unwrap();
        let t = 0.5;
        assert!((spec.survival_e(t) - spec.survival_e(-t)).abs() > 1e-6);
        assert!((spec.survival_t(t) - spec.survival_t(-t)).abs() < 1e-10);
        assert!((spec.survival_d(t) - spec.survival_d(-t)).abs() < 1e-10);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn fidelity_never_exceeds_the_distance_functional(
            seed in any::<u64>(),
            t in -3.0f64..3.0,
        ) {
            let spec = EvolutionSpec::new(
                random_mixed(4, 3, seed),
                random_hermitian(4, seed.wrapping_add(1)),
            )
            .unwrap();
            let s = spec.survivals_at(t);
            prop_assert!(s.t <= s.d + 1e-9, "T = {} > D = {}", s.t, s.d);
            prop_assert!(s.t >= -1e-12 && s.t <= 1.0 + 1e-9);
            prop_assert!(s.d >= -1e-12 && s.d <= 1.0 + 1e-9);
            prop_assert!(s.e >= -1e-12 && s.e <= 1.0 + 1e-9);
        }

        #[test]
        fn fidelity_distance_and_pure_survivals_are_even_in_time(
            seed in any::<u64>(),
            t in 0.01f64..3.0,
        ) {
            let mixed = EvolutionSpec::new(
                random_mixed(3, 2, seed),
                random_hermitian(3, seed.wrapping_add(1)),
            )
            .unwrap();
            prop_assert!((mixed.survival_t(t) - mixed.survival_t(-t)).abs() < 1e-9);
            prop_assert!((mixed.survival_d(t) - mixed.survival_d(-t)).abs() < 1e-10);

            let psi = {
                use rand::{Rng, SeedableRng};
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed.wrapping_add(2));
                V::new(
                    (0..3)
                        .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                        .collect(),
                )
                .unwrap()
            };
            let pure = pure_state(&psi).unwrap();
            let h = random_hermitian(3, seed.wrapping_add(3));
            let p_fwd = survival_p(&pure, &h, t).unwrap();
            let p_bwd = survival_p(&pure, &h, -t).unwrap();
            prop_assert!((p_fwd - p_bwd).abs() < 1e-12);
        }

        #[test]
        fn projection_is_even_for_real_matrices(
            x in 0.0f64..=1.0,
            t in 0.01f64..3.0,
        ) {
            // The collective-spin families have real ρ, H, and Π.
            let spec = one_qubit_spec(x, 1.0);
            prop_assert!((spec.survival_e(t) - spec.survival_e(-t)).abs() < 1e-12);
        }
    }
}
