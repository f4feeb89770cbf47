//! Clifford-algebra generator families for qubit registers.
//!
//! For n qubits the 2n generators are built from Pauli matrices as
//!
//!   e_{2k}   = i · 1 ⊗ … ⊗ 1 ⊗ sx ⊗ sz ⊗ … ⊗ sz
//!   e_{2k+1} = i · 1 ⊗ … ⊗ 1 ⊗ sy ⊗ sz ⊗ … ⊗ sz
//!
//! with k = 0..n-1 identities on the left and k copies of sz trailing on the
//! right. The leading i makes every e_k anti-Hermitian and unitary, at the
//! cost of flipping the Clifford relation to e_j e_k + e_k e_j = -2 δ_jk.
//! The i-free Hermitian generators ê_k = -i e_k, which satisfy the +2 δ_jk
//! convention and the square-root identity (Σ c_k ê_k)² = Σ c_k², are exposed
//! separately; the Jordan-Wigner fermionic operators are built from the ê_k
//! so that {a_j†, a_k} = +δ_jk comes out with the standard sign.

use std::collections::BTreeSet;

use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::closure::{ClosureError, GeneratorSet};
use crate::matrix::{anticommutator, tensor_all, ComplexMatrix, MatrixError, C_I, C_ONE, C_ZERO};

/// Largest qubit count for generator construction (64x64 matrices).
pub const MAX_QUBITS: usize = 6;

/// Tolerance for the partial-trace comparison deciding locality.
pub const LOCALITY_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum CliffordError {
    #[error("qubit count {n} out of range 1..={max}")]
    QubitCountOutOfRange { n: usize, max: usize },
    #[error("need at least {min} qubits, got {n}")]
    TooFewQubits { n: usize, min: usize },
    #[error("coefficient count {got} does not match generator count {want}")]
    CoeffCountMismatch { got: usize, want: usize },
    #[error("factor dimensions multiply to {product}, matrix dimension is {dim}")]
    FactorMismatch { product: usize, dim: usize },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Closure(#[from] ClosureError),
}

/// Pauli axis selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PauliAxis {
    X,
    Y,
    Z,
}

/// The 2x2 Pauli matrix on the given axis.
pub fn pauli(axis: PauliAxis) -> ComplexMatrix {
    let entries = match axis {
        PauliAxis::X => vec![C_ZERO, C_ONE, C_ONE, C_ZERO],
        PauliAxis::Y => vec![C_ZERO, -C_I, C_I, C_ZERO],
        PauliAxis::Z => vec![C_ONE, C_ZERO, C_ZERO, -C_ONE],
    };
    ComplexMatrix::new(2, entries).expect("valid 2x2")
}

/// The four Dirac matrices in block form: γ0 has identity off-diagonal
/// blocks, γ_{1..3} carry ∓σ blocks. Pairwise anticommutators are diagonal
/// (γ0² = I, γ_i² = -I).
pub fn dirac_gammas() -> [ComplexMatrix; 4] {
    let block = |upper: &ComplexMatrix, lower: &ComplexMatrix| {
        ComplexMatrix::from_fn(4, |i, j| match (i / 2, j / 2) {
            (0, 1) => upper.get(i % 2, j % 2),
            (1, 0) => lower.get(i % 2, j % 2),
            _ => C_ZERO,
        })
    };
    let id = ComplexMatrix::identity(2);
    let gamma0 = block(&id, &id);
    let gammas = [PauliAxis::X, PauliAxis::Y, PauliAxis::Z].map(|axis| {
        let sigma = pauli(axis);
        block(&sigma.scaled(-C_ONE), &sigma)
    });
    [
        gamma0,
        gammas[0].clone(),
        gammas[1].clone(),
        gammas[2].clone(),
    ]
}

/// The 2n anti-Hermitian Clifford generators on n qubits.
pub struct CliffordGenerators {
    n: usize,
    gens: Vec<ComplexMatrix>,
    labels: Vec<String>,
}

impl CliffordGenerators {
    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Matrix dimension 2^n.
    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// e_k including the leading i (anti-Hermitian, unitary).
    pub fn generator(&self, k: usize) -> &ComplexMatrix {
        &self.gens[k]
    }

    pub fn generators(&self) -> &[ComplexMatrix] {
        &self.gens
    }

    /// ê_k = -i e_k, the Hermitian generator satisfying the +2δ convention.
    pub fn hermitian_generator(&self, k: usize) -> ComplexMatrix {
        self.gens[k].scaled(-C_I)
    }

    /// Largest Frobenius deviation from e_j e_k + e_k e_j = -2 δ_jk.
    pub fn anticommutation_residual(&self) -> f64 {
        let dim = self.dim();
        let mut worst: f64 = 0.0;
        for j in 0..self.gens.len() {
            for k in j..self.gens.len() {
                let ac = anticommutator(&self.gens[j], &self.gens[k]).expect("equal dims");
                let want = if j == k {
                    ComplexMatrix::identity(dim).scaled(C64::new(-2.0, 0.0))
                } else {
                    ComplexMatrix::zeros(dim)
                };
                worst = worst.max((&ac - &want).frobenius_norm());
            }
        }
        worst
    }

    /// The generators as a [`GeneratorSet`] with locality metadata.
    pub fn generator_set(&self) -> Result<GeneratorSet, CliffordError> {
        let dims = vec![2usize; self.n];
        let locality = self
            .gens
            .iter()
            .map(|g| locality(g, &dims))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GeneratorSet::new(self.labels.clone(), self.gens.clone())?.with_locality(locality))
    }
}

/// Build the Clifford generators for 1 ≤ n ≤ [`MAX_QUBITS`] qubits.
pub fn clifford_generators(n: usize) -> Result<CliffordGenerators, CliffordError> {
    if !(1..=MAX_QUBITS).contains(&n) {
        return Err(CliffordError::QubitCountOutOfRange { n, max: MAX_QUBITS });
    }
    let id = ComplexMatrix::identity(2);
    let sz = pauli(PauliAxis::Z);
    let mut gens = Vec::with_capacity(2 * n);
    let mut labels = Vec::with_capacity(2 * n);
    for k in 0..n {
        for axis in [PauliAxis::X, PauliAxis::Y] {
            let mut factors = Vec::with_capacity(n);
            factors.extend(std::iter::repeat_with(|| id.clone()).take(n - k - 1));
            factors.push(pauli(axis));
            factors.extend(std::iter::repeat_with(|| sz.clone()).take(k));
            gens.push(tensor_all(&factors)?.scaled(C_I));
            labels.push(format!("e{}", gens.len() - 1));
        }
    }
    Ok(CliffordGenerators { n, gens, labels })
}

/// Fermionic creation/annihilation operators on n modes.
pub struct FermionicOperators {
    n: usize,
    a: Vec<ComplexMatrix>,
    a_dag: Vec<ComplexMatrix>,
}

impl FermionicOperators {
    pub fn modes(&self) -> usize {
        self.n
    }

    pub fn annihilation(&self) -> &[ComplexMatrix] {
        &self.a
    }

    pub fn creation(&self) -> &[ComplexMatrix] {
        &self.a_dag
    }

    /// Largest Frobenius deviation from the canonical anticommutation
    /// relations {a_j, a_k} = {a_j†, a_k†} = 0 and {a_j†, a_k} = δ_jk.
    pub fn relations_residual(&self) -> f64 {
        let dim = self.a[0].dim();
        let zero = ComplexMatrix::zeros(dim);
        let id = ComplexMatrix::identity(dim);
        let mut worst: f64 = 0.0;
        for j in 0..self.n {
            for k in 0..self.n {
                let aa = anticommutator(&self.a[j], &self.a[k]).expect("equal dims");
                worst = worst.max((&aa - &zero).frobenius_norm());
                let cc = anticommutator(&self.a_dag[j], &self.a_dag[k]).expect("equal dims");
                worst = worst.max((&cc - &zero).frobenius_norm());
                let ca = anticommutator(&self.a_dag[j], &self.a[k]).expect("equal dims");
                let want = if j == k { &id } else { &zero };
                worst = worst.max((&ca - want).frobenius_norm());
            }
        }
        worst
    }
}

/// Jordan-Wigner construction: a_k† = (ê_{2k} + i ê_{2k+1})/2 and
/// a_k = (ê_{2k} - i ê_{2k+1})/2 over the Hermitian generators ê.
pub fn jordan_wigner(n: usize) -> Result<FermionicOperators, CliffordError> {
    let gens = clifford_generators(n)?;
    let half = C64::new(0.5, 0.0);
    let mut a = Vec::with_capacity(n);
    let mut a_dag = Vec::with_capacity(n);
    for k in 0..n {
        let even = gens.hermitian_generator(2 * k);
        let odd = gens.hermitian_generator(2 * k + 1);
        a.push((&even - &odd.scaled(C_I)).scaled(half));
        a_dag.push((&even + &odd.scaled(C_I)).scaled(half));
    }
    Ok(FermionicOperators { n, a, a_dag })
}

/// The universal two-gate set on n ≥ 2 qubits: e_0, the 2n-1 consecutive
/// products e_k e_{k+1}, and the third-order element i e_0 e_1 e_2, all as
/// anti-Hermitian Lie-algebra elements, 2n+1 in total. Every member acts on
/// at most two tensor factors.
pub fn two_gate_universal_set(n: usize) -> Result<GeneratorSet, CliffordError> {
    if n < 2 {
        return Err(CliffordError::TooFewQubits { n, min: 2 });
    }
    let gens = clifford_generators(n)?;
    let mut labels = vec!["e0".to_string()];
    let mut elements = vec![gens.generator(0).clone()];
    for k in 0..(2 * n - 1) {
        // e_k e_{k+1} is already anti-Hermitian for distinct anticommuting
        // factors; the Hamiltonian form i e_k e_{k+1} is Hermitian.
        elements.push(gens.generator(k) * gens.generator(k + 1));
        labels.push(format!("e{}{}", k, k + 1));
    }
    let triple = &(gens.generator(0) * gens.generator(1)) * gens.generator(2);
    elements.push(triple.scaled(C_I));
    labels.push("e012".to_string());

    let dims = vec![2usize; n];
    let locality_sets = elements
        .iter()
        .map(|m| locality(m, &dims))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GeneratorSet::new(labels, elements)?.with_locality(locality_sets))
}

/// The minimal set of tensor positions on which `m` acts nontrivially,
/// decided by comparing `m` against its identity-projection at each factor.
pub fn locality(
    m: &ComplexMatrix,
    factor_dims: &[usize],
) -> Result<BTreeSet<usize>, CliffordError> {
    let product: usize = factor_dims.iter().product();
    if product != m.dim() || factor_dims.is_empty() {
        return Err(CliffordError::FactorMismatch {
            product,
            dim: m.dim(),
        });
    }
    let mut support = BTreeSet::new();
    for p in 0..factor_dims.len() {
        if !acts_trivially_at(m, factor_dims, p) {
            support.insert(p);
        }
    }
    Ok(support)
}

/// True when `m` equals (partial trace over factor p)/d_p ⊗ identity at p,
/// i.e. when `m` is the identity on that tensor position.
fn acts_trivially_at(m: &ComplexMatrix, factor_dims: &[usize], p: usize) -> bool {
    let d_p = factor_dims[p];
    let post: usize = factor_dims[p + 1..].iter().product();
    let stride = d_p * post;
    let dim = m.dim();
    // Projection onto operators of the form X ⊗ I_p: average the d_p
    // diagonal blocks in the p-th index and replicate across them.
    let split = |i: usize| (i / stride, (i / post) % d_p, i % post);
    let fuse = |pre: usize, a: usize, post_ix: usize| pre * stride + a * post + post_ix;
    let projected = ComplexMatrix::from_fn(dim, |i, j| {
        let (ip, ia, ir) = split(i);
        let (jp, ja, jr) = split(j);
        if ia != ja {
            return C_ZERO;
        }
        let mut sum = C_ZERO;
        for k in 0..d_p {
            sum += m.get(fuse(ip, k, ir), fuse(jp, k, jr));
        }
        sum / d_p as f64
    });
    projected.max_abs_diff(m) <= LOCALITY_TOL
}

/// Frobenius norm of (Σ c_k ê_k)² - (Σ c_k²) I over the Hermitian
/// generators; the square-root identity makes this vanish for any
/// coefficients.
pub fn square_root_identity_check(
    coeffs: &[C64],
    gens: &CliffordGenerators,
) -> Result<f64, CliffordError> {
    if coeffs.len() != gens.len() {
        return Err(CliffordError::CoeffCountMismatch {
            got: coeffs.len(),
            want: gens.len(),
        });
    }
    let dim = gens.dim();
    let mut sum = ComplexMatrix::zeros(dim);
    for (k, &c) in coeffs.iter().enumerate() {
        sum = &sum + &gens.hermitian_generator(k).scaled(c);
    }
    let square = &sum * &sum;
    let scalar: C64 = coeffs.iter().map(|c| c * c).sum();
    let want = ComplexMatrix::identity(dim).scaled(scalar);
    Ok((&square - &want).frobenius_norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{commutator, frobenius_inner, tensor_product};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn pauli_matrices_verbatim() {
        let sx = pauli(PauliAxis::X);
        assert_eq!(sx.get(0, 1), C_ONE);
        assert_eq!(sx.get(1, 0), C_ONE);
        assert_eq!(sx.get(0, 0), C_ZERO);
        let sy = pauli(PauliAxis::Y);
        assert_eq!(sy.get(0, 1), -C_I);
        assert_eq!(sy.get(1, 0), C_I);
        let sz = pauli(PauliAxis::Z);
        assert_eq!(sz.get(0, 0), C_ONE);
        assert_eq!(sz.get(1, 1), -C_ONE);
    }

    #[test]
    fn dirac_gamma0_layout() {
        let g = dirac_gammas();
        let want = ComplexMatrix::new(
            4,
            vec![
                C_ZERO, C_ZERO, C_ONE, C_ZERO, C_ZERO, C_ZERO, C_ZERO, C_ONE, C_ONE, C_ZERO,
                C_ZERO, C_ZERO, C_ZERO, C_ONE, C_ZERO, C_ZERO,
            ],
        )
        .unwrap();
        assert!(g[0].approx_eq(&want, 0.0));
    }

    #[test]
    fn dirac_anticommutators_diagonal() {
        let g = dirac_gammas();
        // gamma0^2 = I, gamma_i^2 = -I by block multiplication.
        assert!(g[0].pow(2).approx_eq(&ComplexMatrix::identity(4), 0.0));
        for i in 1..4 {
            assert!(g[i]
                .pow(2)
                .approx_eq(&ComplexMatrix::identity(4).scaled(-C_ONE), 0.0));
        }
        for i in 0..4 {
            for j in (i + 1)..4 {
                let ac = anticommutator(&g[i], &g[j]).unwrap();
                assert!(ac.max_abs() < 1e-15, "gamma_{i} gamma_{j} must anticommute");
            }
        }
    }

    #[test]
    fn one_qubit_generators_are_i_paulis() {
        let gens = clifford_generators(1).unwrap();
        assert_eq!(gens.len(), 2);
        assert!(gens
            .generator(0)
            .approx_eq(&pauli(PauliAxis::X).scaled(C_I), 0.0));
        assert!(gens
            .generator(1)
            .approx_eq(&pauli(PauliAxis::Y).scaled(C_I), 0.0));
    }

    #[test]
    fn two_qubit_generator_layout() {
        let gens = clifford_generators(2).unwrap();
        // k = 0 puts the Pauli on the rightmost factor with no sz tail.
        let e0 = tensor_product(&ComplexMatrix::identity(2), &pauli(PauliAxis::X))
            .unwrap()
            .scaled(C_I);
        assert!(gens.generator(0).approx_eq(&e0, 0.0));
        // k = 1: sx then one sz trailing.
        let e2 = tensor_product(&pauli(PauliAxis::X), &pauli(PauliAxis::Z))
            .unwrap()
            .scaled(C_I);
        assert!(gens.generator(2).approx_eq(&e2, 0.0));
    }

    #[test]
    fn generators_anti_hermitian_unitary_and_anticommuting() {
        for n in 1..=4 {
            let gens = clifford_generators(n).unwrap();
            assert_eq!(gens.len(), 2 * n);
            for k in 0..gens.len() {
                assert!(gens.generator(k).is_anti_hermitian(1e-12));
                assert!(gens.generator(k).is_unitary(1e-12));
                assert!(gens.generator(k).is_traceless(1e-12));
            }
            assert!(gens.anticommutation_residual() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn qubit_count_bounds() {
        assert!(matches!(
            clifford_generators(0),
            Err(CliffordError::QubitCountOutOfRange { .. })
        ));
        assert!(matches!(
            clifford_generators(7),
            Err(CliffordError::QubitCountOutOfRange { .. })
        ));
    }

    #[test]
    fn products_of_distinct_generators_linearly_independent() {
        // All 2^{2n} subset products are pairwise Frobenius-orthogonal and
        // nonzero, hence independent; verify via the Gram matrix rank.
        for n in 1..=3usize {
            let gens = clifford_generators(n).unwrap();
            let dim = gens.dim();
            let count = 1usize << (2 * n);
            let mut products = Vec::with_capacity(count);
            for mask in 0..count {
                let mut prod = ComplexMatrix::identity(dim);
                for k in 0..(2 * n) {
                    if mask >> k & 1 == 1 {
                        prod = &prod * gens.generator(k);
                    }
                }
                products.push(prod);
            }
            let mut gram: Vec<Vec<C64>> = (0..count)
                .map(|i| {
                    (0..count)
                        .map(|j| frobenius_inner(&products[i], &products[j]).unwrap())
                        .collect()
                })
                .collect();
            // Gaussian elimination rank with partial pivoting.
            let mut rank = 0usize;
            for col in 0..count {
                let pivot = (rank..count)
                    .max_by(|&a, &b| gram[a][col].norm().total_cmp(&gram[b][col].norm()))
                    .unwrap();
                if gram[pivot][col].norm() < 1e-8 {
                    continue;
                }
                gram.swap(rank, pivot);
                let lead = gram[rank][col];
                for row in (rank + 1)..count {
                    let factor = gram[row][col] / lead;
                    for c in col..count {
                        let delta = factor * gram[rank][c];
                        gram[row][c] -= delta;
                    }
                }
                rank += 1;
            }
            assert_eq!(rank, count, "n = {n}: subset products must be independent");
        }
    }

    #[test]
    fn jordan_wigner_single_mode_matrices() {
        let ops = jordan_wigner(1).unwrap();
        // a_0 = (sx - i sy)/2 = |1><0|, a_0† = |0><1|.
        let want_a = ComplexMatrix::new(2, vec![C_ZERO, C_ZERO, C_ONE, C_ZERO]).unwrap();
        let want_adag = ComplexMatrix::new(2, vec![C_ZERO, C_ONE, C_ZERO, C_ZERO]).unwrap();
        assert!(ops.annihilation()[0].approx_eq(&want_a, 1e-15));
        assert!(ops.creation()[0].approx_eq(&want_adag, 1e-15));
        // Creation and annihilation are mutual adjoints.
        assert!(ops.creation()[0].approx_eq(&ops.annihilation()[0].adjoint(), 1e-15));
    }

    #[test]
    fn jordan_wigner_relations() {
        for n in 1..=4 {
            let ops = jordan_wigner(n).unwrap();
            assert!(ops.relations_residual() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn square_root_identity() {
        let gens = clifford_generators(2).unwrap();
        // All-zero coefficients.
        assert!(square_root_identity_check(&[C_ZERO; 4], &gens).unwrap() < 1e-15);
        // Single unit coefficient: ê_0² = I.
        assert!(
            square_root_identity_check(&[C_ONE, C_ZERO, C_ZERO, C_ZERO], &gens).unwrap() < 1e-15
        );
        // Random complex coefficients.
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for _ in 0..20 {
            let coeffs: Vec<C64> = (0..4)
                .map(|_| crate::matrix::random_unit_disc(&mut rng))
                .collect();
            assert!(square_root_identity_check(&coeffs, &gens).unwrap() < 1e-10);
        }
        // Count mismatch is rejected.
        assert!(matches!(
            square_root_identity_check(&[C_ONE], &gens),
            Err(CliffordError::CoeffCountMismatch { .. })
        ));
    }

    #[test]
    fn locality_examples() {
        let sx = pauli(PauliAxis::X);
        let id = ComplexMatrix::identity(2);
        let m = tensor_product(&id, &sx).unwrap();
        assert_eq!(locality(&m, &[2, 2]).unwrap(), BTreeSet::from([1]));
        let m = tensor_product(&sx, &pauli(PauliAxis::Z)).unwrap();
        assert_eq!(locality(&m, &[2, 2]).unwrap(), BTreeSet::from([0, 1]));
        assert_eq!(
            locality(&ComplexMatrix::identity(4), &[2, 2]).unwrap(),
            BTreeSet::new()
        );
        assert!(matches!(
            locality(&ComplexMatrix::identity(4), &[2, 3]),
            Err(CliffordError::FactorMismatch { .. })
        ));
    }

    #[test]
    fn two_gate_set_shape() {
        // 1 + (2n-1) + 1 = 2n+1 elements, each acting on at most two factors.
        for n in 2..=3 {
            let set = two_gate_universal_set(n).unwrap();
            assert_eq!(set.len(), 2 * n + 1);
            for (i, m) in set.elements().iter().enumerate() {
                assert!(m.is_anti_hermitian(1e-12), "element {i}");
                let support = set.locality(i).expect("locality recorded");
                assert!(support.len() <= 2, "element {i} acts on {support:?}");
            }
        }
        assert!(matches!(
            two_gate_universal_set(1),
            Err(CliffordError::TooFewQubits { .. })
        ));
    }

    #[test]
    fn third_order_element_is_one_gate() {
        // i e_0 e_1 e_2 reduces to i sx on a single factor.
        let set = two_gate_universal_set(3).unwrap();
        let index = set.labels().iter().position(|l| l == "e012").unwrap();
        let support = set.locality(index).unwrap();
        assert_eq!(support.len(), 1);
    }

    #[test]
    fn generator_pairs_anticommute_exactly() {
        for n in 1..=4 {
            let gens = clifford_generators(n).unwrap();
            for j in 0..gens.len() {
                for k in 0..gens.len() {
                    if j == k {
                        continue;
                    }
                    let jk = gens.generator(j) * gens.generator(k);
                    let kj = gens.generator(k) * gens.generator(j);
                    assert!(jk.approx_eq(&kj.scaled(-C_ONE), 1e-12));
                }
            }
        }
    }

    #[test]
    fn commutator_structure_sees_su2_per_pair() {
        // Cross-check against the hand commutator [i sx, i sy] = -2 i sz.
        let gens = clifford_generators(1).unwrap();
        let c = commutator(gens.generator(0), gens.generator(1)).unwrap();
        let want = pauli(PauliAxis::Z).scaled(C_I).scaled(C64::new(-2.0, 0.0));
        assert!(c.approx_eq(&want, 1e-14));
    }
}
