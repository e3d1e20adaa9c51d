//! Dense complex matrices and vectors.
//!
//! Storage is row-major `Vec<Complex<T>>`. Matrices are square; that is all
//! the quantum-state algebra here needs. Constructors validate finiteness
//! and the dimension cap; arithmetic on mismatched dimensions panics, since
//! every public entry point validates dimensions up front.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::real::Real;

/// Largest supported matrix dimension.
///
/// Dense eigendecompositions are O(d³); this cap keeps worst-case runs at
/// desk scale and catches runaway tensor products early.
pub const DIM_CAP: usize = 1024;

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 {
        return Err(Error::ZeroDimension);
    }
    if dim > DIM_CAP {
        return Err(Error::DimensionCap { dim, cap: DIM_CAP });
    }
    Ok(())
}

fn check_finite<T: Real>(data: &[Complex<T>]) -> Result<()> {
    for (index, z) in data.iter().enumerate() {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::NonFinite { index });
        }
    }
    Ok(())
}

/// Square complex matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix<T> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> ComplexMatrix<T> {
    /// Builds a matrix from `dim * dim` row-major entries.
    pub fn new(dim: usize, data: Vec<Complex<T>>) -> Result<Self> {
        check_dim(dim)?;
        if data.len() != dim * dim {
            return Err(Error::EntryCount {
                dim,
                expected: dim * dim,
                got: data.len(),
            });
        }
        check_finite(&data)?;
        Ok(Self { dim, data })
    }

    /// Builds a matrix entry by entry from `f(row, col)`.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Result<Self> {
        check_dim(dim)?;
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        check_finite(&data)?;
        Ok(Self { dim, data })
    }

    /// Zero matrix.
    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            dim,
            data: vec![Complex::zero(); dim * dim],
        })
    }

    /// Identity matrix.
    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m.data[i * dim + i] = Complex::new(T::one(), T::zero());
        }
        Ok(m)
    }

    /// Matrix dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row-major entries.
    pub fn data(&self) -> &[Complex<T>] {
        &self.data
    }

    /// Entry at `(row, col)`.
    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.data[row * self.dim + col]
    }

    /// Overwrites the entry at `(row, col)`.
    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex<T>) {
        self.data[row * self.dim + col] = value;
    }

    /// Column `col` as a vector.
    pub fn column(&self, col: usize) -> ComplexVector<T> {
        let data = (0..self.dim).map(|i| self.get(i, col)).collect();
        ComplexVector { data }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let dim = self.dim;
        let mut data = vec![Complex::zero(); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                data[j * dim + i] = self.data[i * dim + j].conj();
            }
        }
        Self { dim, data }
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matrix product dimension mismatch");
        let dim = self.dim;
        let mut data = vec![Complex::zero(); dim * dim];
        for i in 0..dim {
            for k in 0..dim {
                let aik = self.data[i * dim + k];
                if aik.re.is_zero() && aik.im.is_zero() {
                    continue;
                }
                let row = &rhs.data[k * dim..(k + 1) * dim];
                let out = &mut data[i * dim..(i + 1) * dim];
                for (o, &b) in out.iter_mut().zip(row) {
                    *o += aik * b;
                }
            }
        }
        Self { dim, data }
    }

    /// Matrix-vector product `self · v`.
    pub fn mul_vec(&self, v: &ComplexVector<T>) -> ComplexVector<T> {
        assert_eq!(self.dim, v.dim(), "matrix-vector dimension mismatch");
        let dim = self.dim;
        let mut out = vec![Complex::zero(); dim];
        for (i, o) in out.iter_mut().enumerate() {
            let mut acc = Complex::zero();
            for j in 0..dim {
                acc += self.data[i * dim + j] * v.data[j];
            }
            *o = acc;
        }
        ComplexVector { data: out }
    }

    /// Entry-wise sum.
    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matrix sum dimension mismatch");
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| a + b)
            .collect();
        Self {
            dim: self.dim,
            data,
        }
    }

    /// Entry-wise difference.
    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matrix difference dimension mismatch");
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| a - b)
            .collect();
        Self {
            dim: self.dim,
            data,
        }
    }

    /// Scalar multiple.
    pub fn scale(&self, factor: T) -> Self {
        let data = self.data.iter().map(|z| z.scale(factor)).collect();
        Self {
            dim: self.dim,
            data,
        }
    }

    /// Trace.
    pub fn trace(&self) -> Complex<T> {
        let mut acc = Complex::zero();
        for i in 0..self.dim {
            acc += self.data[i * self.dim + i];
        }
        acc
    }

    /// Largest entry magnitude, `‖m‖_max`.
    pub fn max_abs(&self) -> T {
        self.data.iter().map(|z| z.norm()).fold(T::zero(), T::max)
    }

    /// Frobenius norm.
    pub fn frobenius(&self) -> T {
        self.data
            .iter()
            .map(|z| z.norm_sqr())
            .fold(T::zero(), |a, b| a + b)
            .sqrt()
    }

    /// Largest entry-wise deviation from the adjoint, `‖m − m†‖_max`.
    pub fn hermiticity_deviation(&self) -> T {
        let dim = self.dim;
        let mut dev = T::zero();
        for i in 0..dim {
            for j in i..dim {
                let d = (self.data[i * dim + j] - self.data[j * dim + i].conj()).norm();
                dev = dev.max(d);
            }
        }
        dev
    }

    /// Hermiticity test relative to the matrix scale:
    /// `‖m − m†‖_max ≤ tol · max(1, ‖m‖_max)`.
    pub fn is_hermitian_within(&self, tol: T) -> bool {
        self.hermiticity_deviation() <= tol * T::one().max(self.max_abs())
    }

    /// Hermitian part `(m + m†) / 2`; kills rounding-level asymmetry.
    pub fn hermitian_part(&self) -> Self {
        let dim = self.dim;
        let mut data = self.data.clone();
        let half = T::from_f64_lossy(0.5);
        for i in 0..dim {
            for j in 0..dim {
                let s = (self.data[i * dim + j] + self.data[j * dim + i].conj()).scale(half);
                data[i * dim + j] = s;
            }
        }
        Self { dim, data }
    }
}

/// `Tr(a · b)` without forming the product.
pub fn trace_product<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> Complex<T> {
    assert_eq!(a.dim, b.dim, "trace product dimension mismatch");
    let dim = a.dim;
    let mut acc = Complex::zero();
    for i in 0..dim {
        for j in 0..dim {
            acc += a.data[i * dim + j] * b.data[j * dim + i];
        }
    }
    acc
}

/// Tensor (Kronecker) product; the first factor is the most significant one.
pub fn kron<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    let (da, db) = (a.dim, b.dim);
    let dim = da.checked_mul(db).ok_or(Error::DimensionCap {
        dim: usize::MAX,
        cap: DIM_CAP,
    })?;
    check_dim(dim)?;
    let mut data = vec![Complex::zero(); dim * dim];
    for i1 in 0..da {
        for j1 in 0..da {
            let aij = a.data[i1 * da + j1];
            for i2 in 0..db {
                for j2 in 0..db {
                    data[(i1 * db + i2) * dim + (j1 * db + j2)] = aij * b.data[i2 * db + j2];
                }
            }
        }
    }
    Ok(ComplexMatrix { dim, data })
}

/// Complex column vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVector<T> {
    data: Vec<Complex<T>>,
}

impl<T: Real> ComplexVector<T> {
    /// Builds a vector, validating finiteness and the dimension cap.
    pub fn new(data: Vec<Complex<T>>) -> Result<Self> {
        check_dim(data.len())?;
        check_finite(&data)?;
        Ok(Self { data })
    }

    /// Real-valued vector.
    pub fn from_real(values: &[T]) -> Result<Self> {
        Self::new(values.iter().map(|&x| Complex::new(x, T::zero())).collect())
    }

    /// Computational basis vector `|index⟩`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        check_dim(dim)?;
        assert!(index < dim, "basis index out of range");
        let mut data = vec![Complex::zero(); dim];
        data[index] = Complex::new(T::one(), T::zero());
        Ok(Self { data })
    }

    /// Vector dimension.
    pub fn dim(&self) -> usize {
        self.data.len()
    }

    /// Entries.
    pub fn data(&self) -> &[Complex<T>] {
        &self.data
    }

    /// Entry at `index`.
    #[inline]
    pub fn get(&self, index: usize) -> Complex<T> {
        self.data[index]
    }

    /// Euclidean norm.
    pub fn norm(&self) -> T {
        self.data
            .iter()
            .map(|z| z.norm_sqr())
            .fold(T::zero(), |a, b| a + b)
            .sqrt()
    }

    /// Inner product `⟨self|rhs⟩`, conjugate-linear in `self`.
    pub fn inner(&self, rhs: &Self) -> Complex<T> {
        assert_eq!(self.dim(), rhs.dim(), "inner product dimension mismatch");
        let mut acc = Complex::zero();
        for (a, b) in self.data.iter().zip(&rhs.data) {
            acc += a.conj() * b;
        }
        acc
    }

    /// Unit vector in the same direction.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n < T::min_positive_value().sqrt() {
            return Err(Error::ZeroVector);
        }
        Ok(Self {
            data: self.data.iter().map(|z| z.unscale(n)).collect(),
        })
    }

    /// Outer product `|self⟩⟨rhs|`.
    pub fn outer(&self, rhs: &Self) -> ComplexMatrix<T> {
        assert_eq!(self.dim(), rhs.dim(), "outer product dimension mismatch");
        let dim = self.dim();
        let mut data = vec![Complex::zero(); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                data[i * dim + j] = self.data[i] * rhs.data[j].conj();
            }
        }
        ComplexMatrix { dim, data }
    }

    /// Tensor product `self ⊗ rhs`; `self` is the most significant factor.
    pub fn tensor(&self, rhs: &Self) -> Result<Self> {
        let dim = self
            .dim()
            .checked_mul(rhs.dim())
            .ok_or(Error::DimensionCap {
                dim: usize::MAX,
                cap: DIM_CAP,
            })?;
        check_dim(dim)?;
        let mut data = Vec::with_capacity(dim);
        for a in &self.data {
            for b in &rhs.data {
                data.push(a * b);
            }
        }
        Ok(Self { data })
    }
}
