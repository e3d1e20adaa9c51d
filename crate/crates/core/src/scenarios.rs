//! Builders for standard example families and scenario (de)serialization.
//!
//! Scenario files are JSON with a `format: 1` tag:
//!
//! ```text
//! {
//!   "format": 1,
//!   "name": "...",
//!   "dim": 4,
//!   "rho": { "dense": [[[re,im], ...], ...] } or { "mixture": [{"weight": w, "vector": [[re,im], ...]}, ...] },
//!   "hamiltonian": { "dense": ... } or { "builder": {"name": "collective_spin", "n": 2, "axis": "x", "coeff": 0.5} },
//!   "projector": optional dense matrix,
//!   "params": { "x": 0.75, ... }
//! }
//! ```
//!
//! Dense complex entries are `[re, im]` pairs, row-major. `dim` is checked
//! against every matrix and vector in the file. Numbers are written with
//! enough digits to round-trip `f64` exactly.

use std::collections::BTreeMap;
use std::path::Path;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::dynamics::EvolutionSpec;
use crate::error::{Error, Result};
use crate::linalg::{kron, ComplexMatrix, ComplexVector, HermitianOperator};
use crate::real::Real;
use crate::states::{mix, pure_state, DensityMatrix, Projector};
use crate::tol::Tolerances;

/// Single-qubit Pauli axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    /// Lowercase name used in scenario files.
    pub fn as_name(self) -> &'static str {
        match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        }
    }

    /// Inverse of [`Axis::as_name`].
    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "x" => Ok(Axis::X),
            "y" => Ok(Axis::Y),
            "z" => Ok(Axis::Z),
            other => Err(Error::UnknownName {
                kind: "axis",
                name: other.to_string(),
            }),
        }
    }
}

/// Standard multiqubit fixtures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedState {
    /// `(|0…0⟩ + |1…1⟩)/√2`.
    Ghz,
    /// `|+⟩^⊗n`, uniform amplitudes in the σ_z basis.
    ProductPlus,
    /// `|0…0⟩`.
    Computational,
}

/// The 2×2 Pauli matrix along `axis`.
pub fn pauli<T: Real>(axis: Axis) -> ComplexMatrix<T> {
    let zero = Complex::new(T::zero(), T::zero());
    let one = Complex::new(T::one(), T::zero());
    let i = Complex::new(T::zero(), T::one());
    let entries = match axis {
        Axis::X => vec![zero, one, one, zero],
        Axis::Y => vec![zero, -i, i, zero],
        Axis::Z => vec![one, zero, zero, -one],
    };
    ComplexMatrix::new(2, entries).expect("fixed 2x2 shape")
}

/// How a local Hamiltonian was assembled; kept so files round-trip through
/// the builder form instead of a dense matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LocalRecipe<T> {
    /// `coeff · Σ_k σ_axis^(k)`.
    CollectiveSpin {
        /// Pauli axis of every term.
        axis: Axis,
        /// Common coefficient; `epsilon = |coeff|`.
        coeff: T,
    },
}

/// Sum of single-qubit terms with uniform operator norm ε per term.
///
/// ε is the spectral radius of each local term, the scale against which
/// the entanglement witness normalizes the Fisher information.
#[derive(Debug, Clone)]
pub struct LocalHamiltonian<T: Real> {
    operator: HermitianOperator<T>,
    n_qubits: usize,
    epsilon: T,
    recipe: LocalRecipe<T>,
}

impl<T: Real> LocalHamiltonian<T> {
    /// The assembled operator on `(C²)^⊗N`.
    pub fn operator(&self) -> &HermitianOperator<T> {
        &self.operator
    }

    /// Number of qubits N.
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Operator norm of each single-qubit term.
    pub fn epsilon(&self) -> T {
        self.epsilon
    }

    /// The construction this Hamiltonian came from.
    pub fn recipe(&self) -> &LocalRecipe<T> {
        &self.recipe
    }
}

/// A Hamiltonian with or without local structure.
#[derive(Debug, Clone)]
pub enum ScenarioHamiltonian<T: Real> {
    /// Arbitrary Hermitian generator.
    Plain(HermitianOperator<T>),
    /// Sum of single-qubit terms; enables the entanglement witness.
    Local(LocalHamiltonian<T>),
}

impl<T: Real> ScenarioHamiltonian<T> {
    /// The generator, regardless of structure.
    pub fn operator(&self) -> &HermitianOperator<T> {
        match self {
            ScenarioHamiltonian::Plain(h) => h,
            ScenarioHamiltonian::Local(l) => l.operator(),
        }
    }

    /// Local structure, when present.
    pub fn local(&self) -> Option<&LocalHamiltonian<T>> {
        match self {
            ScenarioHamiltonian::Plain(_) => None,
            ScenarioHamiltonian::Local(l) => Some(l),
        }
    }
}

/// A named initial state, generator, optional projector, and the real
/// parameters the combination was built from.
#[derive(Debug, Clone)]
pub struct Scenario<T: Real> {
    /// Human-readable identifier, echoed in outputs.
    pub name: String,
    /// Initial state.
    pub rho0: DensityMatrix<T>,
    /// Generator of the evolution.
    pub hamiltonian: ScenarioHamiltonian<T>,
    /// Explicit projector for `E(t)`; the range projector when absent.
    pub projector: Option<Projector<T>>,
    /// Provenance parameters (x, omega, ...), recorded in outputs.
    pub params: BTreeMap<String, T>,
    /// Mixture decomposition the state was built from, if any; lets files
    /// carry weights and vectors instead of a dense matrix.
    rho_recipe: Option<Vec<(T, ComplexVector<T>)>>,
}

impl<T: Real> Scenario<T> {
    /// Scenario from parts; serialized with a dense state matrix.
    pub fn new(
        name: impl Into<String>,
        rho0: DensityMatrix<T>,
        hamiltonian: ScenarioHamiltonian<T>,
        projector: Option<Projector<T>>,
        params: BTreeMap<String, T>,
    ) -> Self {
        Self {
            name: name.into(),
            rho0,
            hamiltonian,
            projector,
            params,
            rho_recipe: None,
        }
    }

    /// Hilbert space dimension.
    pub fn dim(&self) -> usize {
        self.rho0.dim()
    }

    /// Pairs the state with the generator (and projector, if set).
    pub fn to_evolution_spec(&self) -> Result<EvolutionSpec<T>> {
        let h = self.hamiltonian.operator().clone();
        match &self.projector {
            Some(p) => EvolutionSpec::with_projector(self.rho0.clone(), h, p.clone()),
            None => EvolutionSpec::new(self.rho0.clone(), h),
        }
    }
}

/// Largest supported qubit count; `2^10` is the matrix dimension cap.
pub const MAX_QUBITS: usize = 10;

/// `coeff · Σ_k σ_axis^(k)` on N qubits, with `ε = |coeff|`.
///
/// Qubit 1 is the most significant tensor factor.
pub fn build_collective_spin<T: Real>(
    n: usize,
    axis: Axis,
    coeff: T,
) -> Result<LocalHamiltonian<T>> {
    if n == 0 {
        return Err(Error::ParameterRange {
            name: "n",
            value: 0.0,
            requirement: "at least 1 qubit",
        });
    }
    if n > MAX_QUBITS {
        return Err(Error::DimensionCap {
            dim: 1usize.checked_shl(n as u32).unwrap_or(usize::MAX),
            cap: 1 << MAX_QUBITS,
        });
    }
    if !(coeff.is_finite() && coeff.abs() > T::zero()) {
        return Err(Error::ParameterRange {
            name: "coeff",
            value: coeff.to_f64_lossy(),
            requirement: "finite and nonzero (epsilon must be positive)",
        });
    }
    let dim = 1 << n;
    let single = pauli::<T>(axis);
    let eye = ComplexMatrix::identity(2)?;
    let mut sum = ComplexMatrix::zeros(dim)?;
    for site in 0..n {
        let mut term = ComplexMatrix::identity(1)?;
        for k in 0..n {
            term = kron(&term, if k == site { &single } else { &eye })?;
        }
        sum = sum.add(&term);
    }
    let operator = HermitianOperator::new(sum.scale(coeff))?;
    Ok(LocalHamiltonian {
        operator,
        n_qubits: n,
        epsilon: coeff.abs(),
        recipe: LocalRecipe::CollectiveSpin { axis, coeff },
    })
}

/// One of the standard multiqubit fixtures on N qubits.
pub fn build_named_state<T: Real>(name: NamedState, n: usize) -> Result<DensityMatrix<T>> {
    if n == 0 {
        return Err(Error::ParameterRange {
            name: "n",
            value: 0.0,
            requirement: "at least 1 qubit",
        });
    }
    if n > MAX_QUBITS {
        return Err(Error::DimensionCap {
            dim: 1usize.checked_shl(n as u32).unwrap_or(usize::MAX),
            cap: 1 << MAX_QUBITS,
        });
    }
    let dim = 1 << n;
    let zero = Complex::new(T::zero(), T::zero());
    let one = Complex::new(T::one(), T::zero());
    let amplitudes = match name {
        NamedState::Ghz => {
            let mut v = vec![zero; dim];
            v[0] = one;
            v[dim - 1] = one;
            v
        }
        NamedState::ProductPlus => vec![one; dim],
        NamedState::Computational => {
            let mut v = vec![zero; dim];
            v[0] = one;
            v
        }
    };
    pure_state(&ComplexVector::new(amplitudes)?)
}

fn check_unit_interval<T: Real>(name: &'static str, value: T) -> Result<()> {
    if !(value.is_finite() && value >= T::zero() && value <= T::one()) {
        return Err(Error::ParameterRange {
            name,
            value: value.to_f64_lossy(),
            requirement: "within [0, 1]",
        });
    }
    Ok(())
}

fn check_positive<T: Real>(name: &'static str, value: T) -> Result<()> {
    if !(value.is_finite() && value > T::zero()) {
        return Err(Error::ParameterRange {
            name,
            value: value.to_f64_lossy(),
            requirement: "positive reals",
        });
    }
    Ok(())
}

/// Two qubits: `ρ = (1−x)|00⟩⟨00| + x|ψ⁺⟩⟨ψ⁺|` under
/// `H = (Ω/2)(σ_x^(1) + σ_x^(2))`, with the default range projector.
///
/// Along this family `ΔH = Ω√((1+x)/2)` and `𝓕 = 2Ω²(1 − 3x + 4x²)`; the
/// two meet exactly at the pure endpoints x = 0, 1, and the ratio
/// `4ΔH²/𝓕` peaks at `x = √2 − 1`.
pub fn build_two_qubit_example<T: Real>(x: T, omega: T) -> Result<Scenario<T>> {
    check_unit_interval("x", x)?;
    check_positive("omega", omega)?;
    let zeros = ComplexVector::<T>::basis(4, 0)?;
    let bell =
        ComplexVector::from_real(&[T::zero(), T::one(), T::one(), T::zero()])?.normalized()?;
    let rho = mix(&[(T::one() - x, pure_state(&zeros)?), (x, pure_state(&bell)?)])?;
    let two = T::from_f64_lossy(2.0);
    let h = build_collective_spin(2, Axis::X, omega / two)?;
    let mut params = BTreeMap::new();
    params.insert("x".to_string(), x);
    params.insert("omega".to_string(), omega);
    Ok(Scenario {
        name: "two-qubit-bell-mixture".to_string(),
        rho0: rho,
        hamiltonian: ScenarioHamiltonian::Local(h),
        projector: None,
        params,
        rho_recipe: Some(vec![(T::one() - x, zeros), (x, bell)]),
    })
}

/// One qubit: `ρ = (1−x)|0⟩⟨0| + x|1⟩⟨1|` under `H = Ω σ_x / 2`, measured
/// by the explicit projector `Π = |0⟩⟨0|` so that `E(0) = 1 − x`.
pub fn build_one_qubit_example<T: Real>(x: T, omega: T) -> Result<Scenario<T>> {
    check_unit_interval("x", x)?;
    check_positive("omega", omega)?;
    let e0 = ComplexVector::<T>::basis(2, 0)?;
    let e1 = ComplexVector::<T>::basis(2, 1)?;
    let rho = mix(&[(T::one() - x, pure_state(&e0)?), (x, pure_state(&e1)?)])?;
    let two = T::from_f64_lossy(2.0);
    let h = build_collective_spin(1, Axis::X, omega / two)?;
    let mut params = BTreeMap::new();
    params.insert("x".to_string(), x);
    params.insert("omega".to_string(), omega);
    Ok(Scenario {
        name: "one-qubit-basis-mixture".to_string(),
        rho0: rho,
        hamiltonian: ScenarioHamiltonian::Local(h),
        projector: Some(Projector::basis_state(2, 0)?),
        params,
        rho_recipe: Some(vec![(T::one() - x, e0), (x, e1)]),
    })
}

// --- file format ---

type FileMatrix = Vec<Vec<[f64; 2]>>;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileScenario {
    format: u32,
    name: String,
    dim: usize,
    rho: FileRho,
    hamiltonian: FileHamiltonian,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    projector: Option<FileMatrix>,
    #[serde(default)]
    params: BTreeMap<String, f64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileRho {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dense: Option<FileMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mixture: Option<Vec<FileMixtureTerm>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileMixtureTerm {
    weight: f64,
    vector: Vec<[f64; 2]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileHamiltonian {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dense: Option<FileMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    builder: Option<FileBuilder>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileBuilder {
    name: String,
    n: usize,
    axis: String,
    coeff: f64,
}

fn matrix_rows<T: Real>(m: &ComplexMatrix<T>) -> FileMatrix {
    (0..m.dim())
        .map(|i| {
            (0..m.dim())
                .map(|j| {
                    let z = m.get(i, j);
                    [z.re.to_f64_lossy(), z.im.to_f64_lossy()]
                })
                .collect()
        })
        .collect()
}

fn rows_matrix<T: Real>(
    rows: &[Vec<[f64; 2]>],
    dim: usize,
    field: &'static str,
) -> Result<ComplexMatrix<T>> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(Error::ScenarioShape {
            field,
            detail: format!("dense matrix must be {dim}x{dim} to match the declared dim"),
        });
    }
    let data = rows
        .iter()
        .flatten()
        .map(|&[re, im]| Complex::new(T::from_f64_lossy(re), T::from_f64_lossy(im)))
        .collect();
    ComplexMatrix::new(dim, data).map_err(|e| e.in_field(field))
}

fn vector_entries<T: Real>(v: &ComplexVector<T>) -> Vec<[f64; 2]> {
    v.data()
        .iter()
        .map(|z| [z.re.to_f64_lossy(), z.im.to_f64_lossy()])
        .collect()
}

fn entries_vector<T: Real>(
    entries: &[[f64; 2]],
    dim: usize,
    field: &'static str,
) -> Result<ComplexVector<T>> {
    if entries.len() != dim {
        return Err(Error::ScenarioShape {
            field,
            detail: format!("vector must have {dim} entries to match the declared dim"),
        });
    }
    ComplexVector::new(
        entries
            .iter()
            .map(|&[re, im]| Complex::new(T::from_f64_lossy(re), T::from_f64_lossy(im)))
            .collect(),
    )
    .map_err(|e| e.in_field(field))
}

fn to_file<T: Real>(s: &Scenario<T>) -> FileScenario {
    let rho = match &s.rho_recipe {
        Some(terms) => FileRho {
            dense: None,
            mixture: Some(
                terms
                    .iter()
                    .map(|(w, v)| FileMixtureTerm {
                        weight: w.to_f64_lossy(),
                        vector: vector_entries(v),
                    })
                    .collect(),
            ),
        },
        None => FileRho {
            dense: Some(matrix_rows(s.rho0.matrix())),
            mixture: None,
        },
    };
    let hamiltonian = match &s.hamiltonian {
        ScenarioHamiltonian::Local(l) => {
            let LocalRecipe::CollectiveSpin { axis, coeff } = l.recipe();
            FileHamiltonian {
                dense: None,
                builder: Some(FileBuilder {
                    name: "collective_spin".to_string(),
                    n: l.n_qubits(),
                    axis: axis.as_name().to_string(),
                    coeff: coeff.to_f64_lossy(),
                }),
            }
        }
        ScenarioHamiltonian::Plain(h) => FileHamiltonian {
            dense: Some(matrix_rows(h.matrix())),
            builder: None,
        },
    };
    FileScenario {
        format: 1,
        name: s.name.clone(),
        dim: s.dim(),
        rho,
        hamiltonian,
        projector: s.projector.as_ref().map(|p| matrix_rows(p.matrix())),
        params: s
            .params
            .iter()
            .map(|(k, v)| (k.clone(), v.to_f64_lossy()))
            .collect(),
    }
}

fn from_file<T: Real>(f: FileScenario) -> Result<Scenario<T>> {
    if f.format != 1 {
        return Err(Error::UnsupportedFormat { format: f.format });
    }
    let dim = f.dim;

    let (rho0, rho_recipe) = match (&f.rho.dense, &f.rho.mixture) {
        (Some(rows), None) => {
            let m = rows_matrix(rows, dim, "rho")?;
            (
                DensityMatrix::from_matrix(m).map_err(|e| e.in_field("rho"))?,
                None,
            )
        }
        (None, Some(terms)) => {
            if terms.is_empty() {
                return Err(Error::ScenarioShape {
                    field: "rho",
                    detail: "mixture must have at least one term".to_string(),
                });
            }
            let mut recipe = Vec::with_capacity(terms.len());
            let mut components = Vec::with_capacity(terms.len());
            for term in terms {
                let w = T::from_f64_lossy(term.weight);
                let v = entries_vector::<T>(&term.vector, dim, "rho")?;
                components.push((w, pure_state(&v).map_err(|e| e.in_field("rho"))?));
                recipe.push((w, v));
            }
            (
                mix(&components).map_err(|e| e.in_field("rho"))?,
                Some(recipe),
            )
        }
        _ => {
            return Err(Error::ScenarioShape {
                field: "rho",
                detail: "exactly one of 'dense' or 'mixture' is required".to_string(),
            })
        }
    };

    let hamiltonian = match (&f.hamiltonian.dense, &f.hamiltonian.builder) {
        (Some(rows), None) => {
            let m = rows_matrix(rows, dim, "hamiltonian")?;
            ScenarioHamiltonian::Plain(
                HermitianOperator::new(m).map_err(|e| e.in_field("hamiltonian"))?,
            )
        }
        (None, Some(b)) => {
            if b.name != "collective_spin" {
                return Err(Error::UnknownName {
                    kind: "builder",
                    name: b.name.clone(),
                });
            }
            let axis = Axis::from_name(&b.axis)?;
            let local = build_collective_spin(b.n, axis, T::from_f64_lossy(b.coeff))
                .map_err(|e| e.in_field("hamiltonian"))?;
            if local.operator().dim() != dim {
                return Err(Error::ScenarioShape {
                    field: "hamiltonian",
                    detail: format!(
                        "builder on {} qubits gives dim {}, declared dim is {dim}",
                        b.n,
                        local.operator().dim()
                    ),
                });
            }
            ScenarioHamiltonian::Local(local)
        }
        _ => {
            return Err(Error::ScenarioShape {
                field: "hamiltonian",
                detail: "exactly one of 'dense' or 'builder' is required".to_string(),
            })
        }
    };

    let projector = match &f.projector {
        Some(rows) => {
            let m = rows_matrix(rows, dim, "projector")?;
            Some(Projector::from_matrix(m).map_err(|e| e.in_field("projector"))?)
        }
        None => None,
    };

    Ok(Scenario {
        name: f.name,
        rho0,
        hamiltonian,
        projector,
        params: f
            .params
            .into_iter()
            .map(|(k, v)| (k, T::from_f64_lossy(v)))
            .collect(),
        rho_recipe,
    })
}

/// Serializes a scenario to pretty-printed JSON.
pub fn scenario_to_json<T: Real>(s: &Scenario<T>) -> String {
    serde_json::to_string_pretty(&to_file(s)).expect("scenario serialization cannot fail")
}

/// Parses and validates a scenario from JSON text.
pub fn scenario_from_json<T: Real>(text: &str) -> Result<Scenario<T>> {
    let f: FileScenario = serde_json::from_str(text)?;
    from_file(f)
}

/// Writes a scenario file.
pub fn save_scenario<T: Real>(s: &Scenario<T>, path: impl AsRef<Path>) -> Result<()> {
    let mut text = scenario_to_json(s);
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

/// Reads and validates a scenario file.
pub fn load_scenario<T: Real>(path: impl AsRef<Path>) -> Result<Scenario<T>> {
    scenario_from_json(&std::fs::read_to_string(path)?)
}

/// Rebuilds the state with a different rank threshold, keeping everything
/// else; lets callers decide which tail eigenvalues count as kernel.
pub fn with_rank_threshold<T: Real>(s: &Scenario<T>, threshold: T) -> Result<Scenario<T>> {
    let rho0 = DensityMatrix::from_matrix_with(
        s.rho0.matrix().clone(),
        &Tolerances::with_rank_threshold(threshold),
    )?;
    Ok(Scenario {
        name: s.name.clone(),
        rho0,
        hamiltonian: s.hamiltonian.clone(),
        projector: s.projector.clone(),
        params: s.params.clone(),
        rho_recipe: s.rho_recipe.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fisher::quantum_fisher;
    use crate::states::{expectation, std_dev};

    type S = Scenario<f64>;

    #[test]
    fn collective_spin_matches_hand_built_matrices() {
        // n=1, z, coeff ½ is ½σ_z.
        let h = build_collective_spin::<f64>(1, Axis::Z, 0.5).unwrap();
        assert_eq!(h.epsilon(), 0.5);
        assert_eq!(h.n_qubits(), 1);
        assert!((h.operator().matrix().get(0, 0).re - 0.5).abs() < 1e-15);
        assert!((h.operator().matrix().get(1, 1).re + 0.5).abs() < 1e-15);

        // n=2, x, coeff ½: rows (0,½,½,0) / (½,0,0,½) / (½,0,0,½) / (0,½,½,0).
        let h2 = build_collective_spin::<f64>(2, Axis::X, 0.5).unwrap();
        let m = h2.operator().matrix();
        let expected = [
            [0.0, 0.5, 0.5, 0.0],
            [0.5, 0.0, 0.0, 0.5],
            [0.5, 0.0, 0.0, 0.5],
            [0.0, 0.5, 0.5, 0.0],
        ];
        for (i, row) in expected.iter().enumerate() {
            for (j, want) in row.iter().enumerate() {
                assert!((m.get(i, j).re - want).abs() < 1e-15);
                assert_eq!(m.get(i, j).im, 0.0);
            }
        }

        // It sends |00⟩ to (|01⟩ + |10⟩)/2, i.e. |ψ⁺⟩/√2.
        let image = m.mul_vec(&ComplexVector::basis(4, 0).unwrap());
        assert!((image.get(1).re - 0.5).abs() < 1e-15);
        assert!((image.get(2).re - 0.5).abs() < 1e-15);
        assert_eq!(image.get(0).re, 0.0);
        assert_eq!(image.get(3).re, 0.0);

        // n=4 on the y axis: 16-dimensional, Hermitian, traceless.
        let h4 = build_collective_spin::<f64>(4, Axis::Y, 0.3).unwrap();
        assert_eq!(h4.operator().dim(), 16);
        assert_eq!(h4.epsilon(), 0.3);
        assert!(h4.operator().matrix().trace().norm() < 1e-15);
    }

    #[test]
    fn collective_spin_rejects_bad_parameters() {
        assert!(matches!(
            build_collective_spin::<f64>(0, Axis::X, 1.0),
            Err(Error::ParameterRange { name: "n", .. })
        ));
        assert!(matches!(
            build_collective_spin::<f64>(11, Axis::X, 1.0),
            Err(Error::DimensionCap { .. })
        ));
        assert!(matches!(
            build_collective_spin::<f64>(2, Axis::X, 0.0),
            Err(Error::ParameterRange { name: "coeff", .. })
        ));
    }

    #[test]
    fn named_states_have_their_defining_shapes() {
        // One-qubit GHZ degenerates to |+⟩.
        let plus = build_named_state::<f64>(NamedState::Ghz, 1).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!((plus.matrix().get(i, j).re - 0.5).abs() < 1e-15);
            }
        }

        let uniform = build_named_state::<f64>(NamedState::ProductPlus, 3).unwrap();
        assert_eq!(uniform.rank(), 1);
        for i in 0..8 {
            for j in 0..8 {
                assert!((uniform.matrix().get(i, j).re - 0.125).abs() < 1e-15);
            }
        }

        let ground = build_named_state::<f64>(NamedState::Computational, 2).unwrap();
        assert!((ground.matrix().get(0, 0).re - 1.0).abs() < 1e-15);
        assert_eq!(ground.rank(), 1);
    }

    #[test]
    fn ghz_fisher_information_is_n_squared_under_normalized_spin() {
        // 𝓕(GHZ_3, ½ Σ σ_z) = 9: the collective phase accumulates N times
        // faster than any separable state allows.
        let ghz = build_named_state::<f64>(NamedState::Ghz, 3).unwrap();
        let h = build_collective_spin::<f64>(3, Axis::Z, 0.5).unwrap();
        let r = quantum_fisher(&ghz, h.operator()).unwrap();
        assert!((r.qfi - 9.0).abs() < 1e-10);
    }

    #[test]
    fn two_qubit_family_matches_both_closed_forms() {
        let omega = 1.0;
        for k in 0..=10 {
            let x = k as f64 / 10.0;
            let s = build_two_qubit_example(x, omega).unwrap();
            let dh = std_dev(s.hamiltonian.operator(), &s.rho0).unwrap();
            let dh_expected = omega * ((1.0 + x) / 2.0).sqrt();
            assert!(
                (dh - dh_expected).abs() <= 1e-9 * dh_expected.max(1e-12),
                "x={x}: dh {dh} vs {dh_expected}"
            );
            let qfi = quantum_fisher(&s.rho0, s.hamiltonian.operator())
                .unwrap()
                .qfi;
            let qfi_expected = 2.0 * omega * omega * (1.0 - 3.0 * x + 4.0 * x * x);
            assert!(
                (qfi - qfi_expected).abs() <= 1e-9 * qfi_expected.max(1e-12),
                "x={x}: qfi {qfi} vs {qfi_expected}"
            );
        }
    }

    #[test]
    fn variance_to_fisher_ratio_peaks_at_sqrt_two_minus_one() {
        let ratio = |x: f64| {
            let s = build_two_qubit_example(x, 1.0).unwrap();
            let r = quantum_fisher(&s.rho0, s.hamiltonian.operator()).unwrap();
            r.variance_bound / r.qfi
        };
        let star = 2.0f64.sqrt() - 1.0;
        let peak = ratio(star);
        for k in 1..=19 {
            let x = k as f64 / 20.0;
            assert!(
                ratio(x) <= peak + 1e-12,
                "ratio({x}) exceeds ratio(sqrt2-1)"
            );
        }
    }

    #[test]
    fn one_qubit_example_carries_its_projector_and_overlap() {
        let s = build_one_qubit_example(0.75f64, 1.0).unwrap();
        let p = s.projector.as_ref().unwrap();
        assert_eq!(p.subspace_dim(), 1);
        // E(0) = Tr[Π ρ] = 1 − x.
        let c = expectation(&p.to_operator(), &s.rho0).unwrap();
        assert!((c - 0.25).abs() < 1e-14);
        assert_eq!(s.rho0.eigenvalues(), &[0.25, 0.75]);

        let pure = build_one_qubit_example(0.0f64, 1.0).unwrap();
        let c0 = expectation(&pure.projector.as_ref().unwrap().to_operator(), &pure.rho0).unwrap();
        assert!((c0 - 1.0).abs() < 1e-14);

        // Maximally mixed commutes with everything.
        let mm = build_one_qubit_example(0.5f64, 1.0).unwrap();
        let qfi = quantum_fisher(&mm.rho0, mm.hamiltonian.operator())
            .unwrap()
            .qfi;
        assert!(qfi.abs() < 1e-14);
    }

    #[test]
    fn builders_reject_out_of_range_parameters() {
        assert!(matches!(
            build_two_qubit_example::<f64>(-0.1, 1.0),
            Err(Error::ParameterRange { name: "x", .. })
        ));
        assert!(matches!(
            build_two_qubit_example::<f64>(1.1, 1.0),
            Err(Error::ParameterRange { name: "x", .. })
        ));
        assert!(matches!(
            build_one_qubit_example::<f64>(0.5, 0.0),
            Err(Error::ParameterRange { name: "omega", .. })
        ));
        assert!(matches!(
            build_one_qubit_example::<f64>(0.5, -2.0),
            Err(Error::ParameterRange { name: "omega", .. })
        ));
    }

    fn assert_scenarios_match(a: &S, b: &S) {
        assert_eq!(a.name, b.name);
        assert_eq!(a.dim(), b.dim());
        assert!(a.rho0.matrix().sub(b.rho0.matrix()).max_abs() < 1e-12);
        assert!(
            a.hamiltonian
                .operator()
                .matrix()
                .sub(b.hamiltonian.operator().matrix())
                .max_abs()
                < 1e-12
        );
        match (&a.projector, &b.projector) {
            (None, None) => {}
            (Some(pa), Some(pb)) => {
                assert!(pa.matrix().sub(pb.matrix()).max_abs() < 1e-12);
            }
            _ => panic!("projector presence differs"),
        }
        assert_eq!(a.params.len(), b.params.len());
        for (k, v) in &a.params {
            assert!((v - b.params[k]).abs() < 1e-12, "param {k}");
        }
    }

    #[test]
    fn scenario_files_round_trip() {
        let dir = tempfile::tempdir().unwrap();

        let two = build_two_qubit_example(0.4142, 1.0).unwrap();
        let path = dir.path().join("two.json");
        save_scenario(&two, &path).unwrap();
        let loaded: S = load_scenario(&path).unwrap();
        assert_scenarios_match(&two, &loaded);
        assert!(matches!(loaded.hamiltonian, ScenarioHamiltonian::Local(_)));
        assert!(loaded.rho_recipe.is_some());

        let one = build_one_qubit_example(0.75, 2.0).unwrap();
        let path1 = dir.path().join("one.json");
        save_scenario(&one, &path1).unwrap();
        let loaded1: S = load_scenario(&path1).unwrap();
        assert_scenarios_match(&one, &loaded1);

        // A second save of the loaded scenario is byte-identical.
        assert_eq!(scenario_to_json(&two), scenario_to_json(&loaded));
    }

    #[test]
    fn dense_scenarios_round_trip_without_recipes() {
        let built = build_two_qubit_example(0.3, 1.0).unwrap();
        let dense = S::new(
            "dense-variant",
            built.rho0.clone(),
            ScenarioHamiltonian::Plain(built.hamiltonian.operator().clone()),
            None,
            built.params.clone(),
        );
        let text = scenario_to_json(&dense);
        assert!(text.contains("\"dense\""));
        assert!(!text.contains("\"mixture\""));
        let loaded: S = scenario_from_json(&text).unwrap();
        assert_scenarios_match(&dense, &loaded);
    }

    #[test]
    fn loading_rejects_malformed_files() {
        assert!(matches!(
            scenario_from_json::<f64>("not json at all"),
            Err(Error::Parse(_))
        ));

        let wrong_format = r#"{"format": 2, "name": "s", "dim": 2,
            "rho": {"dense": [[[1,0],[0,0]],[[0,0],[0,0]]]},
            "hamiltonian": {"dense": [[[0,0],[1,0]],[[1,0],[0,0]]]}}"#;
        assert!(matches!(
            scenario_from_json::<f64>(wrong_format),
            Err(Error::UnsupportedFormat { format: 2 })
        ));

        // Trace 0.9: the error names the trace invariant through the field.
        let bad_trace = r#"{"format": 1, "name": "s", "dim": 2,
            "rho": {"dense": [[[0.9,0],[0,0]],[[0,0],[0,0]]]},
            "hamiltonian": {"dense": [[[0,0],[1,0]],[[1,0],[0,0]]]}}"#;
        match scenario_from_json::<f64>(bad_trace) {
            Err(Error::ScenarioField {
                field: "rho",
                source,
            }) => {
                assert!(matches!(*source, Error::TraceNotOne { .. }));
            }
            other => panic!("expected a rho field error, got {other:?}"),
        }

        let bad_h = r#"{"format": 1, "name": "s", "dim": 2,
            "rho": {"dense": [[[1,0],[0,0]],[[0,0],[0,0]]]},
            "hamiltonian": {"dense": [[[0,0],[1,0]],[[0,0],[0,0]]]}}"#;
        match scenario_from_json::<f64>(bad_h) {
            Err(Error::ScenarioField {
                field: "hamiltonian",
                source,
            }) => {
                assert!(matches!(*source, Error::NotHermitian { .. }));
            }
            other => panic!("expected a hamiltonian field error, got {other:?}"),
        }

        let both = r#"{"format": 1, "name": "s", "dim": 2,
            "rho": {"dense": [[[1,0],[0,0]],[[0,0],[0,0]]],
                    "mixture": [{"weight": 1.0, "vector": [[1,0],[0,0]]}]},
            "hamiltonian": {"dense": [[[0,0],[1,0]],[[1,0],[0,0]]]}}"#;
        assert!(matches!(
            scenario_from_json::<f64>(both),
            Err(Error::ScenarioShape { field: "rho", .. })
        ));

        let neither = r#"{"format": 1, "name": "s", "dim": 2,
            "rho": {},
            "hamiltonian": {"dense": [[[0,0],[1,0]],[[1,0],[0,0]]]}}"#;
        assert!(matches!(
            scenario_from_json::<f64>(neither),
            Err(Error::ScenarioShape { field: "rho", .. })
        ));

        let bad_axis = r#"{"format": 1, "name": "s", "dim": 2,
            "rho": {"dense": [[[1,0],[0,0]],[[0,0],[0,0]]]},
            "hamiltonian": {"builder": {"name": "collective_spin", "n": 1, "axis": "w", "coeff": 0.5}}}"#;
        assert!(matches!(
            scenario_from_json::<f64>(bad_axis),
            Err(Error::UnknownName { kind: "axis", .. })
        ));

        let bad_builder = r#"{"format": 1, "name": "s", "dim": 2,
            "rho": {"dense": [[[1,0],[0,0]],[[0,0],[0,0]]]},
            "hamiltonian": {"builder": {"name": "transverse_field", "n": 1, "axis": "x", "coeff": 0.5}}}"#;
        assert!(matches!(
            scenario_from_json::<f64>(bad_builder),
            Err(Error::UnknownName {
                kind: "builder",
                ..
            })
        ));

        let dim_clash = r#"{"format": 1, "name": "s", "dim": 2,
            "rho": {"dense": [[[1,0],[0,0]],[[0,0],[0,0]]]},
            "hamiltonian": {"builder": {"name": "collective_spin", "n": 2, "axis": "x", "coeff": 0.5}}}"#;
        assert!(matches!(
            scenario_from_json::<f64>(dim_clash),
            Err(Error::ScenarioShape {
                field: "hamiltonian",
                ..
            })
        ));

        let negative_weight = r#"{"format": 1, "name": "s", "dim": 2,
            "rho": {"mixture": [
                {"weight": -0.2, "vector": [[1,0],[0,0]]},
                {"weight": 1.2, "vector": [[0,0],[1,0]]}]},
            "hamiltonian": {"dense": [[[0,0],[1,0]],[[1,0],[0,0]]]}}"#;
        match scenario_from_json::<f64>(negative_weight) {
            Err(Error::ScenarioField {
                field: "rho",
                source,
            }) => {
                assert!(matches!(*source, Error::NegativeWeight { .. }));
            }
            other => panic!("expected a rho field error, got {other:?}"),
        }
    }

    #[test]
    fn rank_threshold_override_rebuilds_the_state() {
        // A mixture with a 1e-7 tail: rank 2 by default, rank 1 with a
        // coarser threshold.
        let tail = 1e-7;
        let s = build_one_qubit_example(tail, 1.0).unwrap();
        assert_eq!(s.rho0.rank(), 2);
        let coarse = with_rank_threshold(&s, 1e-5).unwrap();
        assert_eq!(coarse.rho0.rank(), 1);
        assert_eq!(coarse.name, s.name);
    }

    #[test]
    fn evolution_spec_respects_the_scenario_projector() {
        let one = build_one_qubit_example(0.75, 1.0).unwrap();
        let spec = one.to_evolution_spec().unwrap();
        assert!(!spec.is_default_projector());
        assert_eq!(spec.effective_projector().subspace_dim(), 1);

        let two = build_two_qubit_example(0.5, 1.0).unwrap();
        let spec2 = two.to_evolution_spec().unwrap();
        assert!(spec2.is_default_projector());
        assert_eq!(spec2.effective_projector().subspace_dim(), 2);
    }
}
