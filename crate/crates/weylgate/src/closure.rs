//! Lie-algebra closure under commutators.
//!
//! A set of anti-Hermitian generators is universal (up to global phase) when
//! the real Lie algebra it generates under commutators is all of su(N); this
//! module computes that algebra by a breadth-first sweep over commutators and
//! reports its dimension, an orthonormal basis, and for every basis element
//! the nested-commutator word that produced it.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::matrix::{commutator, frobenius_inner_re, ComplexMatrix, MatrixError, C_ONE};

/// Default relative residual below which a commutator counts as dependent.
pub const CLOSURE_RESIDUAL_TOL: f64 = 1e-9;

/// Largest matrix dimension the closure sweep accepts.
pub const MAX_CLOSURE_DIM: usize = 256;

/// Tolerance for validating that generators are anti-Hermitian.
pub const ANTI_HERMITIAN_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum ClosureError {
    #[error("generator set is empty")]
    Empty,
    #[error("generator `{label}` is not anti-Hermitian within {tol}")]
    NotAntiHermitian { label: String, tol: f64 },
    #[error("generator `{label}` has dimension {got}, expected {want}")]
    MixedDims {
        label: String,
        got: usize,
        want: usize,
    },
    #[error("duplicate generator label `{0}`")]
    DuplicateLabel(String),
    #[error("matrix dimension {dim} exceeds the closure cap {max}")]
    DimTooLarge { dim: usize, max: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

// ---------------------------------------------------------------------------
// Generator sets
// ---------------------------------------------------------------------------

/// Ordered list of labelled anti-Hermitian matrices, optionally annotated
/// with the tensor factors each element acts on.
#[derive(Clone)]
pub struct GeneratorSet {
    dim: usize,
    labels: Vec<String>,
    elements: Vec<ComplexMatrix>,
    locality: Vec<Option<BTreeSet<usize>>>,
}

impl GeneratorSet {
    pub fn new(labels: Vec<String>, elements: Vec<ComplexMatrix>) -> Result<Self, ClosureError> {
        if elements.is_empty() {
            return Err(ClosureError::Empty);
        }
        assert_eq!(labels.len(), elements.len(), "one label per element");
        let dim = elements[0].dim();
        let mut seen = BTreeSet::new();
        for (label, m) in labels.iter().zip(&elements) {
            if m.dim() != dim {
                return Err(ClosureError::MixedDims {
                    label: label.clone(),
                    got: m.dim(),
                    want: dim,
                });
            }
            if !m.is_anti_hermitian(ANTI_HERMITIAN_TOL) {
                return Err(ClosureError::NotAntiHermitian {
                    label: label.clone(),
                    tol: ANTI_HERMITIAN_TOL,
                });
            }
            if !seen.insert(label.clone()) {
                return Err(ClosureError::DuplicateLabel(label.clone()));
            }
        }
        let locality = vec![None; elements.len()];
        Ok(Self {
            dim,
            labels,
            elements,
            locality,
        })
    }

    /// Attach per-element locality metadata (tensor factor index sets).
    pub fn with_locality(mut self, locality: Vec<BTreeSet<usize>>) -> Self {
        assert_eq!(locality.len(), self.elements.len());
        self.locality = locality.into_iter().map(Some).collect();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    pub fn locality(&self, index: usize) -> Option<&BTreeSet<usize>> {
        self.locality[index].as_ref()
    }

    pub fn element_by_label(&self, label: &str) -> Option<&ComplexMatrix> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| &self.elements[i])
    }

    /// New set with one extra element appended (no locality recorded for it).
    pub fn appended(&self, label: &str, element: ComplexMatrix) -> Result<Self, ClosureError> {
        let mut labels = self.labels.clone();
        let mut elements = self.elements.clone();
        labels.push(label.to_string());
        elements.push(element);
        let mut set = Self::new(labels, elements)?;
        set.locality = self.locality.clone();
        set.locality.push(None);
        Ok(set)
    }
}

// ---------------------------------------------------------------------------
// Bracket words
// ---------------------------------------------------------------------------

/// Nested-commutator word over generator labels; the generation certificate
/// of a closure basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BracketWord {
    Generator(String),
    Bracket(Box<BracketWord>, Box<BracketWord>),
}

impl BracketWord {
    pub fn depth(&self) -> usize {
        match self {
            BracketWord::Generator(_) => 0,
            BracketWord::Bracket(a, b) => a.depth().max(b.depth()) + 1,
        }
    }
}

impl fmt::Display for BracketWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketWord::Generator(label) => write!(f, "{label}"),
            BracketWord::Bracket(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

// ---------------------------------------------------------------------------
// Closure computation
// ---------------------------------------------------------------------------

/// Output of [`lie_closure`]: an orthonormal basis of the generated algebra
/// plus the bracket word that produced each basis element.
pub struct ClosureResult {
    dim: usize,
    basis: Vec<ComplexMatrix>,
    words: Vec<BracketWord>,
    word_matrices: Vec<ComplexMatrix>,
    depth: usize,
    residual_tol: f64,
}

/// Coefficients of an anti-Hermitian matrix over a closure basis, with the
/// norm of whatever is left outside the span.
pub struct Expansion {
    pub coefficients: Vec<f64>,
    pub residual: f64,
}

impl ClosureResult {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Matrix dimension N of the underlying space.
    pub fn matrix_dim(&self) -> usize {
        self.dim
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn residual_tol(&self) -> f64 {
        self.residual_tol
    }

    pub fn basis(&self) -> &[ComplexMatrix] {
        &self.basis
    }

    pub fn words(&self) -> &[BracketWord] {
        &self.words
    }

    /// Raw (unnormalized) bracket-word matrices aligned with the basis: the
    /// j-th word matrix lies in the span of basis elements 0..=j with a
    /// nonzero component on the j-th.
    pub fn word_matrices(&self) -> &[ComplexMatrix] {
        &self.word_matrices
    }

    pub fn certificates(&self) -> Vec<String> {
        self.words.iter().map(BracketWord::to_string).collect()
    }

    /// Expand `h` over the orthonormal basis.
    pub fn express(&self, h: &ComplexMatrix) -> Result<Expansion, ClosureError> {
        if h.dim() != self.dim {
            return Err(ClosureError::DimMismatch {
                left: h.dim(),
                right: self.dim,
            });
        }
        let coefficients: Vec<f64> = self
            .basis
            .iter()
            .map(|b| frobenius_inner_re(b, h))
            .collect();
        let mut rest = h.clone();
        for (b, &c) in self.basis.iter().zip(&coefficients) {
            rest = &rest - &b.scaled(C_ONE * c);
        }
        Ok(Expansion {
            coefficients,
            residual: rest.frobenius_norm(),
        })
    }

    /// Largest pairwise deviation of the basis from orthonormality.
    pub fn orthonormality_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in self.basis.iter().enumerate() {
            for (j, b) in self.basis.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((frobenius_inner_re(a, b) - want).abs());
            }
        }
        worst
    }

    /// Largest residual of `[b_i, b_j]` outside the span; a closed algebra
    /// keeps this near the closure tolerance.
    pub fn closure_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.basis.len() {
            for j in (i + 1)..self.basis.len() {
                let c = commutator(&self.basis[i], &self.basis[j]).expect("equal dims");
                if c.frobenius_norm() < 1e-14 {
                    continue;
                }
                let exp = self.express(&c).expect("equal dims");
                worst = worst.max(exp.residual);
            }
        }
        worst
    }
}

/// Compute the smallest real Lie algebra containing `gens` by breadth-first
/// accumulation of commutators.
///
/// Seeds are the generators themselves; every accepted element is bracketed
/// against all elements accepted before it, in FIFO order, and a candidate
/// joins the basis when the part of it orthogonal to the current span exceeds
/// `residual_tol` times its own norm. Deterministic given the input order.
pub fn lie_closure(
    gens: &GeneratorSet,
    residual_tol: f64,
    max_dim: Option<usize>,
) -> Result<ClosureResult, ClosureError> {
    let n = gens.dim();
    if n > MAX_CLOSURE_DIM {
        return Err(ClosureError::DimTooLarge {
            dim: n,
            max: MAX_CLOSURE_DIM,
        });
    }
    for (label, g) in gens.labels().iter().zip(gens.elements()) {
        if !g.is_anti_hermitian(ANTI_HERMITIAN_TOL) {
            return Err(ClosureError::NotAntiHermitian {
                label: label.clone(),
                tol: ANTI_HERMITIAN_TOL,
            });
        }
    }
    let full = n * n;
    let cap = max_dim.unwrap_or(full).min(full);

    let mut basis: Vec<ComplexMatrix> = Vec::new();
    let mut words: Vec<BracketWord> = Vec::new();
    let mut word_matrices: Vec<ComplexMatrix> = Vec::new();

    // Orthogonalize twice; a single Gram-Schmidt pass loses orthogonality
    // near the acceptance threshold.
    let try_accept = |basis: &mut Vec<ComplexMatrix>,
                      words: &mut Vec<BracketWord>,
                      word_matrices: &mut Vec<ComplexMatrix>,
                      candidate: ComplexMatrix,
                      word: BracketWord|
     -> bool {
        let pre = candidate.frobenius_norm();
        if pre <= 0.0 {
            return false;
        }
        let mut rest = candidate.clone();
        for _ in 0..2 {
            for b in basis.iter() {
                let c = frobenius_inner_re(b, &rest);
                rest = &rest - &b.scaled(C_ONE * c);
            }
        }
        let post = rest.frobenius_norm();
        if post <= residual_tol * pre {
            return false;
        }
        basis.push(rest.scaled(C_ONE * (1.0 / post)));
        words.push(word);
        word_matrices.push(candidate);
        true
    };

    for (label, g) in gens.labels().iter().zip(gens.elements()) {
        try_accept(
            &mut basis,
            &mut words,
            &mut word_matrices,
            g.clone(),
            BracketWord::Generator(label.clone()),
        );
    }

    let mut queue: VecDeque<usize> = (0..basis.len()).collect();
    'sweep: while let Some(u) = queue.pop_front() {
        let snapshot = basis.len();
        for v in 0..snapshot {
            if v == u {
                continue;
            }
            let cand = commutator(&word_matrices[u], &word_matrices[v])?;
            let word = BracketWord::Bracket(Box::new(words[u].clone()), Box::new(words[v].clone()));
            if try_accept(&mut basis, &mut words, &mut word_matrices, cand, word) {
                queue.push_back(basis.len() - 1);
                if basis.len() >= cap {
                    break 'sweep;
                }
            }
        }
    }

    let depth = words.iter().map(BracketWord::depth).max().unwrap_or(0);
    Ok(ClosureResult {
        dim: n,
        basis,
        words,
        word_matrices,
        depth,
        residual_tol,
    })
}

/// Universality notion: `Full` demands all of u(N); `Projective` is satisfied
/// by the traceless part su(N), since a global phase is unobservable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UniversalityMode {
    Full,
    Projective,
}

impl UniversalityMode {
    pub fn target(self, matrix_dim: usize) -> usize {
        match self {
            UniversalityMode::Full => matrix_dim * matrix_dim,
            UniversalityMode::Projective => matrix_dim * matrix_dim - 1,
        }
    }
}

/// Decide universality of a generator set by closure dimension.
pub fn is_universal(
    gens: &GeneratorSet,
    mode: UniversalityMode,
) -> Result<(bool, ClosureResult), ClosureError> {
    let result = lie_closure(gens, CLOSURE_RESIDUAL_TOL, None)?;
    let universal = result.dimension() >= mode.target(gens.dim());
    Ok((universal, result))
}

/// Coefficients of `h` over the closure basis; thin wrapper so callers do not
/// need the result type in scope.
pub fn express_in_closure(
    h: &ComplexMatrix,
    closure: &ClosureResult,
) -> Result<Expansion, ClosureError> {
    closure.express(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{random_anti_hermitian, random_unitary, C_I, C_ZERO};
    use num_complex::Complex64 as C64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pauli_set(which: &[&str]) -> GeneratorSet {
        let sx = ComplexMatrix::new(2, vec![C_ZERO, C_ONE, C_ONE, C_ZERO]).unwrap();
        let sy = ComplexMatrix::new(2, vec![C_ZERO, -C_I, C_I, C_ZERO]).unwrap();
        let sz = ComplexMatrix::new(2, vec![C_ONE, C_ZERO, C_ZERO, -C_ONE]).unwrap();
        let all = [("ix", sx), ("iy", sy), ("iz", sz)];
        let mut labels = Vec::new();
        let mut elements = Vec::new();
        for (name, m) in all {
            if which.contains(&name) {
                labels.push(name.to_string());
                elements.push(m.scaled(C_I));
            }
        }
        GeneratorSet::new(labels, elements).unwrap()
    }

    #[test]
    fn rejects_non_anti_hermitian() {
        let sx = ComplexMatrix::new(2, vec![C_ZERO, C_ONE, C_ONE, C_ZERO]).unwrap();
        let err = GeneratorSet::new(vec!["sx".into()], vec![sx]);
        assert!(matches!(err, Err(ClosureError::NotAntiHermitian { .. })));
    }

    #[test]
    fn single_generator_closes_to_itself() {
        let set = pauli_set(&["iz"]);
        let result = lie_closure(&set, CLOSURE_RESIDUAL_TOL, None).unwrap();
        assert_eq!(result.dimension(), 1);
        assert_eq!(result.depth(), 0);
        assert_eq!(result.certificates(), vec!["iz"]);
    }

    #[test]
    fn two_paulis_close_to_su2() {
        let set = pauli_set(&["ix", "iy"]);
        let result = lie_closure(&set, CLOSURE_RESIDUAL_TOL, None).unwrap();
        assert_eq!(result.dimension(), 3);
        assert_eq!(result.depth(), 1);
        assert_eq!(result.certificates()[2], "[ix,iy]");
        assert!(result.orthonormality_defect() < 1e-9);
        assert!(result.closure_defect() < 1e-7);
    }

    #[test]
    fn universality_modes() {
        let (full, _) = is_universal(&pauli_set(&["ix", "iy"]), UniversalityMode::Full).unwrap();
        assert!(!full, "su(2) misses the trace direction");
        let (proj, result) =
            is_universal(&pauli_set(&["ix", "iy"]), UniversalityMode::Projective).unwrap();
        assert!(proj);
        assert_eq!(result.dimension(), 3);
    }

    #[test]
    fn express_recovers_basis_vectors() {
        let set = pauli_set(&["ix", "iy"]);
        let result = lie_closure(&set, CLOSURE_RESIDUAL_TOL, None).unwrap();
        let third = result.basis()[2].clone();
        let exp = result.express(&third).unwrap();
        assert!((exp.coefficients[2] - 1.0).abs() < 1e-12);
        assert!(exp.coefficients[0].abs() < 1e-12);
        assert!(exp.residual < 1e-12);

        let zero = ComplexMatrix::zeros(2);
        let exp = result.express(&zero).unwrap();
        assert!(exp.coefficients.iter().all(|c| c.abs() < 1e-15));
        assert!(exp.residual < 1e-15);
    }

    #[test]
    fn express_sigma_z_against_xy_closure() {
        // [i sx, i sy] = -2 i sz, so i sz lies on the third basis direction
        // with magnitude ||i sz||_F = sqrt(2).
        let set = pauli_set(&["ix", "iy"]);
        let result = lie_closure(&set, CLOSURE_RESIDUAL_TOL, None).unwrap();
        let sz = ComplexMatrix::new(2, vec![C_ONE, C_ZERO, C_ZERO, -C_ONE]).unwrap();
        let exp = result.express(&sz.scaled(C_I)).unwrap();
        assert!(exp.residual < 1e-8);
        assert!(exp.coefficients[0].abs() < 1e-12);
        assert!(exp.coefficients[1].abs() < 1e-12);
        assert!((exp.coefficients[2].abs() - std::f64::consts::SQRT_2).abs() < 1e-10);
    }

    #[test]
    fn word_matrices_are_triangular_over_basis() {
        let set = pauli_set(&["ix", "iy"]);
        let result = lie_closure(&set, CLOSURE_RESIDUAL_TOL, None).unwrap();
        for (j, w) in result.word_matrices().iter().enumerate() {
            let exp = result.express(w).unwrap();
            assert!(exp.residual < 1e-10);
            for (i, c) in exp.coefficients.iter().enumerate() {
                if i > j {
                    assert!(
                        c.abs() < 1e-10,
                        "word {j} leaks onto later basis element {i}"
                    );
                }
            }
            assert!(
                exp.coefficients[j].abs() > 1e-12,
                "diagonal coefficient must be nonzero"
            );
        }
    }

    #[test]
    fn dimension_invariant_under_conjugation_and_recombination() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let a = random_anti_hermitian(3, &mut rng);
        let b = random_anti_hermitian(3, &mut rng);
        let set =
            GeneratorSet::new(vec!["a".into(), "b".into()], vec![a.clone(), b.clone()]).unwrap();
        let base = lie_closure(&set, CLOSURE_RESIDUAL_TOL, None)
            .unwrap()
            .dimension();

        let w = random_unitary(3, &mut rng);
        let conj = |m: &ComplexMatrix| &(&w * m) * &w.adjoint();
        let conjugated =
            GeneratorSet::new(vec!["a".into(), "b".into()], vec![conj(&a), conj(&b)]).unwrap();
        assert_eq!(
            lie_closure(&conjugated, CLOSURE_RESIDUAL_TOL, None)
                .unwrap()
                .dimension(),
            base
        );

        // Invertible real recombination of the generator list.
        let m1 = &a.scaled(C64::new(2.0, 0.0)) + &b.scaled(C64::new(1.0, 0.0));
        let m2 = &a.scaled(C64::new(1.0, 0.0)) + &b.scaled(C64::new(1.0, 0.0));
        let recombined = GeneratorSet::new(vec!["a".into(), "b".into()], vec![m1, m2]).unwrap();
        assert_eq!(
            lie_closure(&recombined, CLOSURE_RESIDUAL_TOL, None)
                .unwrap()
                .dimension(),
            base
        );

        // Monotonicity under adding a generator.
        let c = random_anti_hermitian(3, &mut rng);
        let bigger = set.appended("c", c).unwrap();
        assert!(
            lie_closure(&bigger, CLOSURE_RESIDUAL_TOL, None)
                .unwrap()
                .dimension()
                >= base
        );
    }

    #[test]
    fn conjugation_invariance_at_dim_nine() {
        // Same property at the largest dimension the caps exercise.
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let a = random_anti_hermitian(9, &mut rng);
        let b = random_anti_hermitian(9, &mut rng);
        let set =
            GeneratorSet::new(vec!["a".into(), "b".into()], vec![a.clone(), b.clone()]).unwrap();
        let base = lie_closure(&set, CLOSURE_RESIDUAL_TOL, None)
            .unwrap()
            .dimension();
        let w = random_unitary(9, &mut rng);
        let conj = |m: &ComplexMatrix| &(&w * m) * &w.adjoint();
        let conjugated =
            GeneratorSet::new(vec!["a".into(), "b".into()], vec![conj(&a), conj(&b)]).unwrap();
        assert_eq!(
            lie_closure(&conjugated, CLOSURE_RESIDUAL_TOL, None)
                .unwrap()
                .dimension(),
            base
        );
    }

    #[test]
    fn determinism() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        let a = random_anti_hermitian(4, &mut rng);
        let b = random_anti_hermitian(4, &mut rng);
        let set = GeneratorSet::new(vec!["a".into(), "b".into()], vec![a, b]).unwrap();
        let r1 = lie_closure(&set, CLOSURE_RESIDUAL_TOL, None).unwrap();
        let r2 = lie_closure(&set, CLOSURE_RESIDUAL_TOL, None).unwrap();
        assert_eq!(r1.dimension(), r2.dimension());
        assert_eq!(r1.certificates(), r2.certificates());
        for (x, y) in r1.basis().iter().zip(r2.basis()) {
            assert!(x.approx_eq(y, 0.0), "identical runs must agree bitwise");
        }
    }

    #[test]
    fn max_dim_caps_the_sweep() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let a = random_anti_hermitian(4, &mut rng);
        let b = random_anti_hermitian(4, &mut rng);
        let set = GeneratorSet::new(vec!["a".into(), "b".into()], vec![a, b]).unwrap();
        let r = lie_closure(&set, CLOSURE_RESIDUAL_TOL, Some(5)).unwrap();
        assert_eq!(r.dimension(), 5);
    }
}
