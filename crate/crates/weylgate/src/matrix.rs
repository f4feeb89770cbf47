//! Dense complex linear algebra primitives used by every other module.
//!
//! Matrices are square, stored row-major in double precision, and immutable
//! after construction; every operation here is a pure function, so values can
//! be shared and moved freely between threads. No NaN or infinity is ever
//! admitted into a [`ComplexMatrix`] or [`ComplexVector`].

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64 as C64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub const C_ZERO: C64 = C64 { re: 0.0, im: 0.0 };
pub const C_ONE: C64 = C64 { re: 1.0, im: 0.0 };
pub const C_I: C64 = C64 { re: 0.0, im: 1.0 };

/// Largest matrix dimension the toolkit will construct (tensor products
/// growing past this return [`MatrixError::DimTooLarge`]).
pub const MAX_DIM: usize = 4096;

/// Default absolute entrywise tolerance for identity checks
/// (unitarity, hermiticity, tracelessness).
pub const IDENTITY_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum MatrixError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },
    #[error("dimension {dim} exceeds the configured maximum {max}")]
    DimTooLarge { dim: usize, max: usize },
    #[error("dimension must be at least 1")]
    EmptyDim,
    #[error("entry count {got} does not match dim^2 = {want}")]
    BadEntryCount { got: usize, want: usize },
    #[error("non-finite entry at index {index}")]
    NonFinite { index: usize },
    #[error("matrix is not unitary within tolerance {tol}")]
    NotUnitary { tol: f64 },
}

/// Dense square matrix of complex scalars, row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<C64>,
}

impl ComplexMatrix {
    /// Build from row-major entries, validating the count and finiteness.
    pub fn new(dim: usize, entries: Vec<C64>) -> Result<Self, MatrixError> {
        if dim == 0 {
            return Err(MatrixError::EmptyDim);
        }
        if dim > MAX_DIM {
            return Err(MatrixError::DimTooLarge { dim, max: MAX_DIM });
        }
        if entries.len() != dim * dim {
            return Err(MatrixError::BadEntryCount {
                got: entries.len(),
                want: dim * dim,
            });
        }
        if let Some(index) = entries
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(MatrixError::NonFinite { index });
        }
        Ok(Self { dim, entries })
    }

    fn from_vec_unchecked(dim: usize, entries: Vec<C64>) -> Self {
        debug_assert_eq!(entries.len(), dim * dim);
        Self { dim, entries }
    }

    /// Build entrywise from a closure over (row, col).
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        assert!(dim >= 1, "matrix dimension must be at least 1");
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let z = f(i, j);
                assert!(
                    z.re.is_finite() && z.im.is_finite(),
                    "non-finite entry at ({i}, {j})"
                );
                entries.push(z);
            }
        }
        Self { dim, entries }
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be at least 1");
        Self {
            dim,
            entries: vec![C_ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { C_ONE } else { C_ZERO })
    }

    /// Diagonal matrix from the given entries.
    pub fn diagonal(diag: &[C64]) -> Self {
        assert!(!diag.is_empty());
        Self::from_fn(diag.len(), |i, j| if i == j { diag[i] } else { C_ZERO })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        Self::from_vec_unchecked(
            n,
            (0..n * n)
                .map(|k| self.entries[(k % n) * n + k / n].conj())
                .collect(),
        )
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn scaled(&self, factor: C64) -> Self {
        Self::from_vec_unchecked(self.dim, self.entries.iter().map(|z| z * factor).collect())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim == other.dim && self.max_abs_diff(other) <= tol
    }

    /// k-th matrix power by repeated multiplication (k = 0 gives identity).
    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::identity(self.dim);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        let prod = self * &self.adjoint();
        prod.max_abs_diff(&Self::identity(self.dim)) <= tol
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.adjoint()) <= tol
    }

    pub fn is_anti_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.adjoint().scaled(-C_ONE)) <= tol
    }

    pub fn is_traceless(&self, tol: f64) -> bool {
        self.trace().norm() <= tol
    }

    /// Apply to a vector: returns `self * v`.
    pub fn apply(&self, v: &ComplexVector) -> ComplexVector {
        assert_eq!(self.dim, v.dim(), "dimension mismatch");
        let n = self.dim;
        let mut out = vec![C_ZERO; n];
        for i in 0..n {
            let row = &self.entries[i * n..(i + 1) * n];
            out[i] = row.iter().zip(v.entries()).map(|(a, x)| a * x).sum();
        }
        ComplexVector { entries: out }
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self.get(i, j);
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: Self) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix::from_vec_unchecked(
            self.dim,
            self.entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: Self) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix::from_vec_unchecked(
            self.dim,
            self.entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: Self) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = vec![C_ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == C_ZERO {
                    continue;
                }
                let row = &rhs.entries[k * n..(k + 1) * n];
                let dst = &mut out[i * n..(i + 1) * n];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        ComplexMatrix::from_vec_unchecked(n, out)
    }
}

/// Kronecker product `a ⊗ b`; the output dimension is `a.dim * b.dim`.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix, MatrixError> {
    let dim = a.dim * b.dim;
    if dim > MAX_DIM {
        return Err(MatrixError::DimTooLarge { dim, max: MAX_DIM });
    }
    let (na, nb) = (a.dim, b.dim);
    let mut entries = vec![C_ZERO; dim * dim];
    for ia in 0..na {
        for ja in 0..na {
            let scale = a.get(ia, ja);
            if scale == C_ZERO {
                continue;
            }
            for ib in 0..nb {
                for jb in 0..nb {
                    entries[(ia * nb + ib) * dim + (ja * nb + jb)] = scale * b.get(ib, jb);
                }
            }
        }
    }
    Ok(ComplexMatrix::from_vec_unchecked(dim, entries))
}

/// Kronecker product of a whole list, left to right.
pub fn tensor_all(factors: &[ComplexMatrix]) -> Result<ComplexMatrix, MatrixError> {
    assert!(!factors.is_empty());
    let mut out = factors[0].clone();
    for f in &factors[1..] {
        out = tensor_product(&out, f)?;
    }
    Ok(out)
}

/// `[a, b] = ab - ba`.
pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix, MatrixError> {
    if a.dim != b.dim {
        return Err(MatrixError::DimMismatch {
            left: a.dim,
            right: b.dim,
        });
    }
    Ok(&(a * b) - &(b * a))
}

/// `{a, b} = ab + ba`.
pub fn anticommutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix, MatrixError> {
    if a.dim != b.dim {
        return Err(MatrixError::DimMismatch {
            left: a.dim,
            right: b.dim,
        });
    }
    Ok(&(a * b) + &(b * a))
}

/// `trace(a† b)`.
pub fn frobenius_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<C64, MatrixError> {
    if a.dim != b.dim {
        return Err(MatrixError::DimMismatch {
            left: a.dim,
            right: b.dim,
        });
    }
    Ok(a.entries
        .iter()
        .zip(&b.entries)
        .map(|(x, y)| x.conj() * y)
        .sum())
}

/// Real Frobenius inner product `Re trace(a† b)`; an inner product on the
/// real vector space of anti-Hermitian matrices.
pub fn frobenius_inner_re(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    assert_eq!(a.dim, b.dim, "dimension mismatch");
    a.entries
        .iter()
        .zip(&b.entries)
        .map(|(x, y)| (x.conj() * y).re)
        .sum()
}

/// Matrix exponential by scaling and squaring with a truncated Taylor series.
///
/// The argument is halved until its Frobenius norm is at most 0.5, the series
/// is summed until terms fall below 1e-17, then the result is squared back up.
/// Accurate to about 1e-12 entrywise for norms up to 50; the exponential of an
/// anti-Hermitian matrix is unitary to 1e-10.
pub fn matrix_exponential(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.dim;
    let norm = a.frobenius_norm();
    let squarings = if norm <= 0.5 {
        0
    } else {
        ((norm / 0.5).log2().ceil() as u32).min(64)
    };
    let scaled = a.scaled(C64::new(1.0 / 2f64.powi(squarings as i32), 0.0));

    let mut sum = ComplexMatrix::identity(n);
    let mut term = ComplexMatrix::identity(n);
    for k in 1..=40u64 {
        term = &term * &scaled;
        term = term.scaled(C64::new(1.0 / k as f64, 0.0));
        sum = &sum + &term;
        if term.frobenius_norm() < 1e-17 {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// Frobenius distance between unitaries minimized over a global phase:
/// `min_phi ||a - e^{i phi} b||_F = sqrt(2N - 2|trace(a† b)|)`.
pub fn distance_up_to_phase(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64, MatrixError> {
    if a.dim != b.dim {
        return Err(MatrixError::DimMismatch {
            left: a.dim,
            right: b.dim,
        });
    }
    if !a.is_unitary(IDENTITY_TOL) || !b.is_unitary(IDENTITY_TOL) {
        return Err(MatrixError::NotUnitary { tol: IDENTITY_TOL });
    }
    let overlap = frobenius_inner(a, b)?.norm();
    Ok((2.0 * a.dim as f64 - 2.0 * overlap).max(0.0).sqrt())
}

// ---------------------------------------------------------------------------
// Vectors
// ---------------------------------------------------------------------------

/// Dense complex column vector (state vector of the processor simulator).
#[derive(Clone, PartialEq)]
pub struct ComplexVector {
    entries: Vec<C64>,
}

impl ComplexVector {
    pub fn new(entries: Vec<C64>) -> Result<Self, MatrixError> {
        if entries.is_empty() {
            return Err(MatrixError::EmptyDim);
        }
        if let Some(index) = entries
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(MatrixError::NonFinite { index });
        }
        Ok(Self { entries })
    }

    /// Basis state |k⟩ in the given dimension.
    pub fn basis_state(dim: usize, k: usize) -> Self {
        assert!(k < dim);
        let mut entries = vec![C_ZERO; dim];
        entries[k] = C_ONE;
        Self { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> C64 {
        self.entries[i]
    }

    pub fn norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn scaled(&self, factor: C64) -> Self {
        Self {
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    /// Kronecker product `self ⊗ other`.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len() * other.entries.len());
        for a in &self.entries {
            for b in &other.entries {
                entries.push(a * b);
            }
        }
        Self { entries }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl fmt::Debug for ComplexVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexVector[")?;
        for z in &self.entries {
            write!(f, " {:+.4}{:+.4}i", z.re, z.im)?;
        }
        write!(f, " ]")
    }
}

// ---------------------------------------------------------------------------
// Randomized inputs for seeded checks
// ---------------------------------------------------------------------------

/// Standard normal sample (Box-Muller).
fn gaussian(rng: &mut impl rand::Rng) -> f64 {
    let u1: f64 = rng.gen::<f64>().max(1e-300);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Haar-distributed random unitary: QR of a complex Ginibre matrix with the
/// phases of the diagonal of R fixed.
pub fn random_unitary(dim: usize, rng: &mut impl rand::Rng) -> ComplexMatrix {
    assert!(dim >= 1);
    // Columns of a Ginibre sample.
    let mut cols: Vec<Vec<C64>> = (0..dim)
        .map(|_| {
            (0..dim)
                .map(|_| C64::new(gaussian(rng), gaussian(rng)))
                .collect()
        })
        .collect();
    // Gram-Schmidt with phase correction from the diagonal coefficient.
    for j in 0..dim {
        for i in 0..j {
            let proj: C64 = cols[i]
                .iter()
                .zip(&cols[j])
                .map(|(a, b)| a.conj() * b)
                .sum();
            for k in 0..dim {
                let delta = proj * cols[i][k];
                cols[j][k] -= delta;
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let raw: C64 = cols[j][j];
        let phase = if raw.norm() > 1e-14 {
            raw / raw.norm()
        } else {
            C_ONE
        };
        let scale = phase.conj() / norm;
        for z in cols[j].iter_mut() {
            *z *= scale;
        }
    }
    ComplexMatrix::from_fn(dim, |i, j| cols[j][i])
}

/// Random anti-Hermitian matrix with entries of order one.
pub fn random_anti_hermitian(dim: usize, rng: &mut impl rand::Rng) -> ComplexMatrix {
    let g = ComplexMatrix::from_fn(dim, |_, _| C64::new(gaussian(rng), gaussian(rng)));
    (&g - &g.adjoint()).scaled(C64::new(0.5, 0.0))
}

/// Random complex scalar in the unit disc.
pub fn random_unit_disc(rng: &mut impl rand::Rng) -> C64 {
    loop {
        let z = C64::new(rng.gen::<f64>() * 2.0 - 1.0, rng.gen::<f64>() * 2.0 - 1.0);
        if z.norm() <= 1.0 {
            return z;
        }
    }
}

// ---------------------------------------------------------------------------
// JSON form: {"dim": N, "re": [...], "im": [...]}, row-major
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct ArrayJson {
    dim: usize,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ArrayJson {
            dim: self.dim,
            re: self.entries.iter().map(|z| z.re).collect(),
            im: self.entries.iter().map(|z| z.im).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = ArrayJson::deserialize(deserializer)?;
        if raw.re.len() != raw.dim * raw.dim || raw.im.len() != raw.dim * raw.dim {
            return Err(serde::de::Error::custom(format!(
                "matrix JSON needs dim^2 = {} entries in re and im, got {} and {}",
                raw.dim * raw.dim,
                raw.re.len(),
                raw.im.len()
            )));
        }
        let entries = raw
            .re
            .iter()
            .zip(&raw.im)
            .map(|(&re, &im)| C64::new(re, im))
            .collect();
        ComplexMatrix::new(raw.dim, entries).map_err(serde::de::Error::custom)
    }
}

impl Serialize for ComplexVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ArrayJson {
            dim: self.entries.len(),
            re: self.entries.iter().map(|z| z.re).collect(),
            im: self.entries.iter().map(|z| z.im).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = ArrayJson::deserialize(deserializer)?;
        if raw.re.len() != raw.dim || raw.im.len() != raw.dim {
            return Err(serde::de::Error::custom(format!(
                "vector JSON needs dim = {} entries in re and im, got {} and {}",
                raw.dim,
                raw.re.len(),
                raw.im.len()
            )));
        }
        let entries = raw
            .re
            .iter()
            .zip(&raw.im)
            .map(|(&re, &im)| C64::new(re, im))
            .collect();
        ComplexVector::new(entries).map_err(serde::de::Error::custom)
    }
}
