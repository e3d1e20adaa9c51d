//! Speed-limit curves with validity windows, orthogonalization-time bounds,
//! and Fisher-information entanglement witnesses.
//!
//! Every bound here is a trigonometric curve valid on a stated interval
//! only. Curves refuse to extrapolate: [`BoundCurve::value`] returns `None`
//! outside the window, and [`BoundCurve::raw_value`] exists for callers that
//! want the formula anyway (plot continuation, CSV columns) and track
//! validity separately through [`BoundCurve::in_window`].

use crate::dynamics::EvolutionSpec;
use crate::error::{Error, Result};
use crate::fisher::quantum_fisher;
use crate::real::Real;
use crate::scenarios::LocalHamiltonian;
use crate::states::DensityMatrix;

/// Absolute probability tolerance separating "equal to the bound" from
/// "strictly above" in [`dichotomy_check`]. Sits above eigensolver noise and
/// well below the curve separations of any non-degenerate scenario.
pub const DICHOTOMY_TOL: f64 = 1e-8;

/// Survival value below which a grid sample counts as an orthogonalization
/// root. Grazing minima above this are not roots.
pub const ROOT_THRESHOLD: f64 = 1e-7;

/// Time resolution to which [`empirical_theta_perp`] refines a root.
pub const ROOT_RESOLUTION: f64 = 1e-9;

/// Relative slack (per qubit) applied to the witness threshold and the
/// producibility ladder so that exact boundary cases, e.g. product states
/// sitting exactly at the separable maximum, are never flagged by rounding.
pub const WITNESS_SLACK: f64 = 1e-9;

/// Which bound family a curve belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    /// `cos²(ΔH·t)` on `ΔH|t| ∈ [0, π/2]`; bounds the pure-state survival.
    Mt,
    /// `cos²(√𝓕 t/2)` on `√𝓕|t| ∈ [0, π]`; bounds T, D, and (with the
    /// default projector) E.
    Fisher,
    /// `cos²(√𝓕 t/2 + δ)` on `t ∈ [0, (π−2δ)/√𝓕]`; lower bound on ⟨Π⟩ for
    /// an arbitrary projector with initial overlap `c = cos²δ`.
    GenLower,
    /// `sin²(√𝓕 t/2 + δ′)` on `t ∈ [0, (π−2δ′)/√𝓕]`; matching upper bound
    /// with `c = sin²δ′`.
    GenUpper,
}

/// A squared-trigonometric bound curve `cos²(rate·t + offset)` (or `sin²`
/// for [`BoundKind::GenUpper`]) together with its validity window.
#[derive(Debug, Clone, Copy)]
pub struct BoundCurve<T> {
    kind: BoundKind,
    rate: T,
    offset: T,
    window_end: Option<T>,
}

impl<T: Real> BoundCurve<T> {
    /// Bound family.
    pub fn kind(&self) -> BoundKind {
        self.kind
    }

    /// Slope of the trigonometric argument: ΔH for MT, √𝓕/2 otherwise.
    pub fn rate(&self) -> T {
        self.rate
    }

    /// Phase offset in radians (0 for MT and Fisher).
    pub fn offset(&self) -> T {
        self.offset
    }

    /// End of the validity window; `None` when the rate is zero and the
    /// constant bound holds for all times.
    pub fn window_end(&self) -> Option<T> {
        self.window_end
    }

    /// Whether the bound's claim applies at `t`. MT and Fisher windows are
    /// symmetric in time; the generalized windows start at `t = 0`.
    pub fn in_window(&self, t: T) -> bool {
        match self.kind {
            BoundKind::Mt | BoundKind::Fisher => match self.window_end {
                Some(end) => t.abs() <= end,
                None => true,
            },
            BoundKind::GenLower | BoundKind::GenUpper => {
                t >= T::zero()
                    && match self.window_end {
                        Some(end) => t <= end,
                        None => true,
                    }
            }
        }
    }

    /// The trigonometric formula at `t`, with no validity claim attached.
    pub fn raw_value(&self, t: T) -> T {
        let arg = self.rate * t + self.offset;
        match self.kind {
            BoundKind::Mt | BoundKind::Fisher | BoundKind::GenLower => {
                let c = arg.cos();
                c * c
            }
            BoundKind::GenUpper => {
                let s = arg.sin();
                s * s
            }
        }
    }

    /// The bound at `t`, or `None` outside the validity window.
    pub fn value(&self, t: T) -> Option<T> {
        self.in_window(t).then(|| self.raw_value(t))
    }
}

fn check_nonnegative<T: Real>(name: &'static str, value: T) -> Result<()> {
    if !(value.is_finite() && value >= T::zero()) {
        return Err(Error::ParameterRange {
            name,
            value: value.to_f64_lossy(),
            requirement: "finite and nonnegative",
        });
    }
    Ok(())
}

/// `cos²(ΔH·t)` on `ΔH|t| ≤ π/2`: the survival bound set by the energy
/// spread alone. `dh = 0` gives the constant curve 1 with no window end.
pub fn mt_bound<T: Real>(dh: T) -> Result<BoundCurve<T>> {
    check_nonnegative("dh", dh)?;
    let window_end = (dh > T::zero()).then(|| T::FRAC_PI_2() / dh);
    Ok(BoundCurve {
        kind: BoundKind::Mt,
        rate: dh,
        offset: T::zero(),
        window_end,
    })
}

/// `cos²(√𝓕 t/2)` on `√𝓕|t| ≤ π`: the survival bound set by the Fisher
/// information, tighter than [`mt_bound`] whenever `𝓕 < 4ΔH²`.
pub fn fisher_bound<T: Real>(qfi: T) -> Result<BoundCurve<T>> {
    check_nonnegative("qfi", qfi)?;
    let root = qfi.sqrt();
    let window_end = (qfi > T::zero()).then(|| T::PI() / root);
    Ok(BoundCurve {
        kind: BoundKind::Fisher,
        rate: root / T::from_f64_lossy(2.0),
        offset: T::zero(),
        window_end,
    })
}

/// Lower and upper bounds on `⟨Π⟩_{ρ(t)}` for a projector with initial
/// overlap `c = Tr[Π ρ(0)] ∈ [0, 1]`.
///
/// The lower curve is `cos²(√𝓕 t/2 + δ)` with `δ = arccos √c`; the upper is
/// `sin²(√𝓕 t/2 + δ′)` with `δ′ = arcsin √c`. Both start at `c` and their
/// windows end where the argument reaches π/2 past its starting phase. At
/// `c = 1` the lower curve reduces to [`fisher_bound`] and the upper window
/// collapses to the single point `t = 0`.
pub fn generalized_bounds<T: Real>(qfi: T, c: T) -> Result<(BoundCurve<T>, BoundCurve<T>)> {
    check_nonnegative("qfi", qfi)?;
    let slack = T::from_f64_lossy(1e-9);
    if !(c.is_finite() && c >= -slack && c <= T::one() + slack) {
        return Err(Error::ParameterRange {
            name: "c",
            value: c.to_f64_lossy(),
            requirement: "within [0, 1]",
        });
    }
    let c = c.max(T::zero()).min(T::one());
    let root_c = c.sqrt();
    let delta = root_c.acos();
    let delta_prime = root_c.asin();
    let root = qfi.sqrt();
    let two = T::from_f64_lossy(2.0);
    let rate = root / two;
    let window = |offset: T| (qfi > T::zero()).then(|| (T::PI() - two * offset) / root);
    Ok((
        BoundCurve {
            kind: BoundKind::GenLower,
            rate,
            offset: delta,
            window_end: window(delta),
        },
        BoundCurve {
            kind: BoundKind::GenUpper,
            rate,
            offset: delta_prime,
            window_end: window(delta_prime),
        },
    ))
}

/// Sampled relationship between the projection survival and its Fisher
/// bound under the default range projector: either the curve sits strictly
/// above the bound on the open window, or the two coincide identically.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dichotomy {
    /// Above the bound somewhere, never below it.
    StrictAbove,
    /// Equal to the bound at every sampled window point.
    ExactEquality,
    /// Below the bound beyond tolerance; indicates a numerical defect,
    /// never a valid scenario.
    Violation,
}

/// Classifies `E(t)` against the Fisher bound on the sampled `grid`.
///
/// Only grid points inside the bound's window participate; if none are
/// (empty grid, or all samples beyond the window), the vacuous answer is
/// [`Dichotomy::ExactEquality`]. Requires the default range projector, the
/// only case in which the bound applies to E.
pub fn dichotomy_check<T: Real>(spec: &EvolutionSpec<T>, grid: &[T]) -> Result<Dichotomy> {
    if !spec.is_default_projector() {
        return Err(Error::NonDefaultProjector);
    }
    let qfi = quantum_fisher(spec.rho0(), spec.hamiltonian())?.qfi;
    let curve = fisher_bound(qfi)?;
    let tol = T::from_f64_lossy(DICHOTOMY_TOL);
    let mut any_above = false;
    for &t in grid {
        let Some(bound) = curve.value(t) else {
            continue;
        };
        let diff = spec.survival_e(t) - bound;
        if diff < -tol {
            return Ok(Dichotomy::Violation);
        }
        if diff > tol {
            any_above = true;
        }
    }
    Ok(if any_above {
        Dichotomy::StrictAbove
    } else {
        Dichotomy::ExactEquality
    })
}

/// Lower bounds on the orthogonalization time θ⊥; `None` marks a direction
/// with zero rate, where no finite passage time exists.
#[derive(Debug, Clone, Copy)]
pub struct ThetaPerpBounds<T> {
    /// `π/(2ΔH)`, absent when `dh = 0`.
    pub mt: Option<T>,
    /// `π/√𝓕`, absent when `qfi = 0`. Never below the MT bound, since
    /// `𝓕 ≤ 4ΔH²`.
    pub fisher: Option<T>,
}

/// The two lower bounds on the first orthogonalization time.
pub fn theta_perp_bounds<T: Real>(dh: T, qfi: T) -> Result<ThetaPerpBounds<T>> {
    check_nonnegative("dh", dh)?;
    check_nonnegative("qfi", qfi)?;
    Ok(ThetaPerpBounds {
        mt: (dh > T::zero()).then(|| T::FRAC_PI_2() / dh),
        fisher: (qfi > T::zero()).then(|| T::PI() / qfi.sqrt()),
    })
}

/// Which survival probability a root search runs on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurvivalKind {
    /// T: squared fidelity with the initial state.
    Fidelity,
    /// E: weight remaining under the effective projector.
    Projection,
    /// D: trace-distance survival.
    Distance,
}

fn sample_survival<T: Real>(spec: &EvolutionSpec<T>, which: SurvivalKind, t: T) -> T {
    match which {
        SurvivalKind::Fidelity => spec.survival_t(t),
        SurvivalKind::Projection => spec.survival_e(t),
        SurvivalKind::Distance => spec.survival_d(t),
    }
}

/// First time in `(0, t_max]` at which the chosen survival probability
/// reaches (numerical) zero, or `None` if it never does.
///
/// Candidate times are the local minima of `steps` uniform grid samples;
/// dips narrower than one grid cell can be missed, so the grid has to
/// resolve the curve's oscillation. Each candidate is refined to
/// [`ROOT_RESOLUTION`] by bisecting on the sign of a symmetric slope
/// estimate (signal and sampling noise both scale linearly with the
/// distance from a quadratic minimum, so the sign stays reliable down to
/// the resolution limit). The first refined minimum whose value falls
/// below [`ROOT_THRESHOLD`] is the root; grazing minima above it are not.
pub fn empirical_theta_perp<T: Real>(
    spec: &EvolutionSpec<T>,
    which: SurvivalKind,
    t_max: T,
    steps: usize,
) -> Result<Option<T>> {
    if !(t_max.is_finite() && t_max > T::zero()) {
        return Err(Error::NonPositiveTMax {
            t_max: t_max.to_f64_lossy(),
        });
    }
    if steps < 2 {
        return Err(Error::TooFewSteps { steps });
    }
    let threshold = T::from_f64_lossy(ROOT_THRESHOLD);
    let grid_t =
        |i: usize| t_max * T::from_f64_lossy(i as f64) / T::from_f64_lossy((steps - 1) as f64);
    let samples: Vec<T> = (0..steps)
        .map(|i| sample_survival(spec, which, grid_t(i)))
        .collect();

    for i in 1..steps {
        let descending = samples[i - 1] > samples[i];
        let interior_min = descending && i + 1 < steps && samples[i] <= samples[i + 1];
        let boundary_min = descending && i + 1 == steps;
        if !(interior_min || boundary_min) {
            continue;
        }
        let lo = grid_t(i - 1);
        let hi = grid_t((i + 1).min(steps - 1));
        let refined = refine_minimum(spec, which, lo, hi);
        if sample_survival(spec, which, refined) < threshold {
            return Ok(Some(refined));
        }
    }
    Ok(None)
}

/// Argmin of the survival inside `[lo, hi]` to [`ROOT_RESOLUTION`], by
/// bisection on the sign of the symmetric difference.
fn refine_minimum<T: Real>(
    spec: &EvolutionSpec<T>,
    which: SurvivalKind,
    mut lo: T,
    mut hi: T,
) -> T {
    let eps = T::from_f64_lossy(ROOT_RESOLUTION);
    let two = T::from_f64_lossy(2.0);
    while hi - lo > eps {
        let mid = (lo + hi) / two;
        let slope =
            sample_survival(spec, which, mid + eps) - sample_survival(spec, which, mid - eps);
        if slope > T::zero() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo + hi) / two
}

/// Largest Fisher information any k-producible N-qubit state can reach
/// under a local Hamiltonian normalized to per-term norm ½: with
/// `s = ⌊N/k⌋` whole blocks, the value is `s·k² + (N − s·k)²`.
pub fn producibility_bound(n: usize, k: usize) -> Result<u64> {
    if n == 0 {
        return Err(Error::ParameterRange {
            name: "n",
            value: 0.0,
            requirement: "at least 1 qubit",
        });
    }
    if k == 0 || k > n {
        return Err(Error::ParameterRange {
            name: "k",
            value: k as f64,
            requirement: "within [1, n]",
        });
    }
    let (n, k) = (n as u64, k as u64);
    let s = n / k;
    let rest = n - s * k;
    Ok(s * k * k + rest * rest)
}

/// Outcome of the Fisher-information entanglement witness.
#[derive(Debug, Clone)]
pub struct WitnessReport<T> {
    /// Number of qubits N.
    pub n_qubits: usize,
    /// Operator norm of each single-qubit term of the Hamiltonian.
    pub epsilon: T,
    /// Fisher information for the normalized generator `H/(2ε)`.
    pub qfi_normalized: T,
    /// Whether the state is certified entangled: `qfi_normalized > N`.
    pub entangled: bool,
    /// Smallest producibility class k consistent with the ladder
    /// `qfi_normalized ≤ s·k² + (N−s·k)²`; states of fewer-than-`min_k`
    /// qubit blocks cannot reach the observed value.
    pub min_k: usize,
    /// Orthogonalization-time lower bound `π/(2ε·√bound(min_k))` implied by
    /// the ladder value at `min_k`.
    pub theta_bound: T,
}

/// Runs the Fisher witness of `rho` against a local Hamiltonian.
///
/// The certificate is one-sided: a flagged state is entangled with
/// certainty, while an unflagged one may still be entangled. `min_k = 1`
/// means the value is consistent with a fully product state.
pub fn entanglement_witness<T: Real>(
    rho: &DensityMatrix<T>,
    h: &LocalHamiltonian<T>,
) -> Result<WitnessReport<T>> {
    if rho.dim() != h.operator().dim() {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: h.operator().dim(),
        });
    }
    let n = h.n_qubits();
    let epsilon = h.epsilon();
    let two = T::from_f64_lossy(2.0);
    let normalized = h.operator().scaled(T::one() / (two * epsilon));
    let qfi_normalized = quantum_fisher(rho, &normalized)?.qfi;

    let slack = T::from_f64_lossy(WITNESS_SLACK * (n as f64).max(1.0));
    let entangled = qfi_normalized > T::from_f64_lossy(n as f64) + slack;
    let min_k = (1..=n)
        .find(|&k| {
            let bound = producibility_bound(n, k).expect("k ranges over [1, n]");
            qfi_normalized <= T::from_f64_lossy(bound as f64) + slack
        })
        .expect("k = n gives the bound n^2, which no state exceeds");
    let bound_at_min = producibility_bound(n, min_k).expect("min_k is within [1, n]");
    let theta_bound = T::PI() / (two * epsilon * T::from_f64_lossy(bound_at_min as f64).sqrt());
    Ok(WitnessReport {
        n_qubits: n,
        epsilon,
        qfi_normalized,
        entangled,
        min_k,
        theta_bound,
    })
}

/// Expectation of the commutator magnitude `|⟨[H, Π]⟩|` at time `t`, used
/// to exercise the chained uncertainty inequalities in tests.
#[cfg(test)]
fn commutator_magnitude<T: Real>(spec: &EvolutionSpec<T>, t: T) -> T {
    spec.e_dot(t).abs()
}
