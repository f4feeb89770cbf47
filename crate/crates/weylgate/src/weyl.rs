//! Weyl-pair generator families for qudit registers.
//!
//! The d-dimensional shift matrix U and clock matrix V satisfy
//! U V = ζ V U with ζ = exp(2πi/d); they replace the Pauli pair when the
//! elementary system has d > 2 levels. From
//!
//!   τx = U,  τy = ζ^{(d-1)/2} U V,  τz = V
//!
//! the 2n qudit generators on n factors follow the same tensor layout as the
//! qubit family:
//!
//!   t_{2k}   = 1 ⊗ … ⊗ 1 ⊗ τx ⊗ τz ⊗ … ⊗ τz
//!   t_{2k+1} = 1 ⊗ … ⊗ 1 ⊗ τy ⊗ τz ⊗ … ⊗ τz
//!
//! For even d the half-integer power ζ^{(d-1)/2} is ambiguous; it is fixed
//! here as exp(iπ(d-1)/d), the unique choice that keeps τy^d = 1 (the phase
//! to the d-th power cancels (UV)^d = ζ^{d(d-1)/2}) and reproduces σy at
//! d = 2. The t_k are unitary but not anti-Hermitian, so Lie-algebra work
//! uses the combinations t+ = i(t + t†) and t- = t - t†.

use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::clifford::{locality, CliffordError};
use crate::closure::{ClosureError, GeneratorSet};
use crate::matrix::{tensor_all, ComplexMatrix, MatrixError, C_I, C_ONE, C_ZERO};

/// Caps keeping closure runs on qudit families interactive.
pub const MAX_WEYL_DIM: usize = 16;
pub const MAX_QUDIT_D: usize = 9;
pub const MAX_QUDIT_N: usize = 4;
pub const MAX_QUDIT_SPACE: usize = 256;

#[derive(Debug, Error)]
pub enum WeylError {
    #[error("dimension d = {d} out of range 2..={max}")]
    DimOutOfRange { d: usize, max: usize },
    #[error("qudit count n = {n} out of range 1..={max}")]
    CountOutOfRange { n: usize, max: usize },
    #[error("space dimension d^n = {space} exceeds cap {max}")]
    SpaceTooLarge { space: usize, max: usize },
    #[error("need at least {min} qudits, got {n}")]
    TooFewQudits { n: usize, min: usize },
    #[error("coefficient count {got} does not match generator count {want}")]
    CoeffCountMismatch { got: usize, want: usize },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Closure(#[from] ClosureError),
    #[error(transparent)]
    Clifford(#[from] CliffordError),
}

/// ζ = exp(2πi/d).
pub fn zeta(d: usize) -> C64 {
    C64::from_polar(1.0, std::f64::consts::TAU / d as f64)
}

/// The shift/clock pair on a d-level system.
pub struct WeylPair {
    d: usize,
    u: ComplexMatrix,
    v: ComplexMatrix,
    zeta: C64,
}

impl WeylPair {
    pub fn dim(&self) -> usize {
        self.d
    }

    /// Cyclic shift: ones on the superdiagonal and in the lower-left corner.
    pub fn shift(&self) -> &ComplexMatrix {
        &self.u
    }

    /// Clock: diag(1, ζ, ζ², …, ζ^{d-1}).
    pub fn clock(&self) -> &ComplexMatrix {
        &self.v
    }

    pub fn zeta(&self) -> C64 {
        self.zeta
    }

    /// Largest deviation from the defining relations: UV = ζVU, unitarity,
    /// and U^d = V^d = 1.
    pub fn relations_residual(&self) -> f64 {
        let id = ComplexMatrix::identity(self.d);
        let uv = &self.u * &self.v;
        let vu_scaled = (&self.v * &self.u).scaled(self.zeta);
        let mut worst = (&uv - &vu_scaled).frobenius_norm();
        worst = worst.max((&(&self.u * &self.u.adjoint()) - &id).frobenius_norm());
        worst = worst.max((&(&self.v * &self.v.adjoint()) - &id).frobenius_norm());
        worst = worst.max((&self.u.pow(self.d) - &id).frobenius_norm());
        worst = worst.max((&self.v.pow(self.d) - &id).frobenius_norm());
        worst
    }
}

/// Build the Weyl pair for 2 ≤ d ≤ [`MAX_WEYL_DIM`].
pub fn weyl_pair(d: usize) -> Result<WeylPair, WeylError> {
    if !(2..=MAX_WEYL_DIM).contains(&d) {
        return Err(WeylError::DimOutOfRange {
            d,
            max: MAX_WEYL_DIM,
        });
    }
    let z = zeta(d);
    let u = ComplexMatrix::from_fn(d, |i, j| if j == (i + 1) % d { C_ONE } else { C_ZERO });
    let v = ComplexMatrix::from_fn(d, |i, j| {
        if i == j {
            C64::from_polar(1.0, std::f64::consts::TAU * i as f64 / d as f64)
        } else {
            C_ZERO
        }
    });
    Ok(WeylPair { d, u, v, zeta: z })
}

/// The 2n unitary qudit generators on n d-level factors, plus the τ triple
/// they are built from.
pub struct QuditGenerators {
    d: usize,
    n: usize,
    tau_x: ComplexMatrix,
    tau_y: ComplexMatrix,
    tau_z: ComplexMatrix,
    t: Vec<ComplexMatrix>,
    labels: Vec<String>,
}

impl QuditGenerators {
    pub fn level_dim(&self) -> usize {
        self.d
    }

    pub fn qudits(&self) -> usize {
        self.n
    }

    /// Matrix dimension d^n.
    pub fn dim(&self) -> usize {
        self.d.pow(self.n as u32)
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn taus(&self) -> (&ComplexMatrix, &ComplexMatrix, &ComplexMatrix) {
        (&self.tau_x, &self.tau_y, &self.tau_z)
    }

    pub fn generator(&self, k: usize) -> &ComplexMatrix {
        &self.t[k]
    }

    pub fn generators(&self) -> &[ComplexMatrix] {
        &self.t
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn zeta(&self) -> C64 {
        zeta(self.d)
    }

    /// Largest deviation from the τ relations: τx τy = ζ τy τx,
    /// τy τz = ζ τz τy, τx τz = ζ τz τx, and τμ^d = 1 for all three.
    pub fn tau_relations_residual(&self) -> f64 {
        let z = self.zeta();
        let id = ComplexMatrix::identity(self.d);
        let pairs = [
            (&self.tau_x, &self.tau_y),
            (&self.tau_y, &self.tau_z),
            (&self.tau_x, &self.tau_z),
        ];
        let mut worst: f64 = 0.0;
        for (a, b) in pairs {
            worst = worst.max((&(a * b) - &(b * a).scaled(z)).frobenius_norm());
        }
        for tau in [&self.tau_x, &self.tau_y, &self.tau_z] {
            worst = worst.max((&tau.pow(self.d) - &id).frobenius_norm());
        }
        worst
    }

    /// Empirically determine the exponent s with t_j t_k = ζ^s t_k t_j for
    /// all j < k. Returns (s, worst residual under that s); pair-uniformity
    /// holds when the residual is small. Ties (d = 2, where ζ = ζ̄) resolve
    /// to s = +1.
    pub fn commutation_exponent(&self) -> (i32, f64) {
        let z = self.zeta();
        let mut best = (1, f64::INFINITY);
        for s in [1i32, -1] {
            let factor = if s == 1 { z } else { z.conj() };
            let mut worst: f64 = 0.0;
            for j in 0..self.t.len() {
                for k in (j + 1)..self.t.len() {
                    let lhs = &self.t[j] * &self.t[k];
                    let rhs = (&self.t[k] * &self.t[j]).scaled(factor);
                    worst = worst.max((&lhs - &rhs).frobenius_norm());
                }
            }
            if worst < best.1 {
                best = (s, worst);
            }
        }
        best
    }

    /// Largest deviation of (t_k)^d from the identity.
    pub fn order_residual(&self) -> f64 {
        let id = ComplexMatrix::identity(self.dim());
        self.t
            .iter()
            .map(|t| (&t.pow(self.d) - &id).frobenius_norm())
            .fold(0.0, f64::max)
    }
}

/// Build the qudit generators for 2 ≤ d ≤ 9, 1 ≤ n ≤ 4, d^n ≤ 256.
pub fn qudit_generators(d: usize, n: usize) -> Result<QuditGenerators, WeylError> {
    if !(2..=MAX_QUDIT_D).contains(&d) {
        return Err(WeylError::DimOutOfRange {
            d,
            max: MAX_QUDIT_D,
        });
    }
    if !(1..=MAX_QUDIT_N).contains(&n) {
        return Err(WeylError::CountOutOfRange {
            n,
            max: MAX_QUDIT_N,
        });
    }
    let space = d.pow(n as u32);
    if space > MAX_QUDIT_SPACE {
        return Err(WeylError::SpaceTooLarge {
            space,
            max: MAX_QUDIT_SPACE,
        });
    }
    let pair = weyl_pair(d)?;
    let tau_x = pair.shift().clone();
    // ζ^{(d-1)/2} fixed as exp(iπ(d-1)/d); see the module docs.
    let half_phase = C64::from_polar(1.0, std::f64::consts::PI * (d as f64 - 1.0) / d as f64);
    let tau_y = (pair.shift() * pair.clock()).scaled(half_phase);
    let tau_z = pair.clock().clone();

    let id = ComplexMatrix::identity(d);
    let mut t = Vec::with_capacity(2 * n);
    let mut labels = Vec::with_capacity(2 * n);
    for k in 0..n {
        for tau in [&tau_x, &tau_y] {
            let mut factors = Vec::with_capacity(n);
            factors.extend(std::iter::repeat_with(|| id.clone()).take(n - k - 1));
            factors.push(tau.clone());
            factors.extend(std::iter::repeat_with(|| tau_z.clone()).take(k));
            t.push(tensor_all(&factors)?);
            labels.push(format!("t{}", t.len() - 1));
        }
    }
    Ok(QuditGenerators {
        d,
        n,
        tau_x,
        tau_y,
        tau_z,
        t,
        labels,
    })
}

/// Frobenius norm of (Σ c_k t_k)^d - (Σ c_k^d) I; the d-th-root identity
/// makes this vanish for any coefficients.
pub fn dth_root_identity_check(coeffs: &[C64], gens: &QuditGenerators) -> Result<f64, WeylError> {
    if coeffs.len() != gens.len() {
        return Err(WeylError::CoeffCountMismatch {
            got: coeffs.len(),
            want: gens.len(),
        });
    }
    let dim = gens.dim();
    let mut sum = ComplexMatrix::zeros(dim);
    for (t, &c) in gens.generators().iter().zip(coeffs) {
        sum = &sum + &t.scaled(c);
    }
    let power = sum.pow(gens.level_dim());
    let scalar: C64 = coeffs.iter().map(|c| c.powu(gens.level_dim() as u32)).sum();
    let want = ComplexMatrix::identity(dim).scaled(scalar);
    Ok((&power - &want).frobenius_norm())
}

/// Anti-Hermitian pair built from one unitary generator:
/// plus = i(t + t†) and minus = t - t†.
pub struct HermitianCombination {
    pub source_label: String,
    pub plus: ComplexMatrix,
    pub minus: ComplexMatrix,
}

impl HermitianCombination {
    pub fn from_unitary(label: &str, t: &ComplexMatrix) -> Self {
        let dag = t.adjoint();
        Self {
            source_label: label.to_string(),
            plus: (t + &dag).scaled(C_I),
            minus: t - &dag,
        }
    }
}

/// The 2 combinations per generator (4n total), each anti-Hermitian.
pub fn hermitian_combinations(gens: &QuditGenerators) -> Vec<HermitianCombination> {
    gens.labels()
        .iter()
        .zip(gens.generators())
        .map(|(label, t)| HermitianCombination::from_unitary(label, t))
        .collect()
}

/// Assemble combinations into a labelled generator set ("t0+", "t0-", …),
/// recording locality over the given tensor factor dimensions.
pub fn combinations_generator_set(
    combos: &[HermitianCombination],
    factor_dims: &[usize],
) -> Result<GeneratorSet, WeylError> {
    let mut labels = Vec::with_capacity(2 * combos.len());
    let mut elements = Vec::with_capacity(2 * combos.len());
    for combo in combos {
        labels.push(format!("{}+", combo.source_label));
        elements.push(combo.plus.clone());
        labels.push(format!("{}-", combo.source_label));
        elements.push(combo.minus.clone());
    }
    let locality_sets = elements
        .iter()
        .map(|m| locality(m, factor_dims))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GeneratorSet::new(labels, elements)?.with_locality(locality_sets))
}

/// Generator set of the t± combinations of all 2n raw generators.
pub fn hermitian_generator_set(gens: &QuditGenerators) -> Result<GeneratorSet, WeylError> {
    let dims = vec![gens.level_dim(); gens.qudits()];
    combinations_generator_set(&hermitian_combinations(gens), &dims)
}

/// The universal two-gate family for n ≥ 2 qudits: t_0 together with the
/// 2n-1 consecutive products t_k t_{k+1}, expanded through the ± combinations
/// into 4n anti-Hermitian generators. Every member acts on at most two
/// tensor factors.
pub fn pairwise_products(gens: &QuditGenerators) -> Result<GeneratorSet, WeylError> {
    if gens.qudits() < 2 {
        return Err(WeylError::TooFewQudits {
            n: gens.qudits(),
            min: 2,
        });
    }
    let combos = pairwise_product_combinations(gens);
    let dims = vec![gens.level_dim(); gens.qudits()];
    combinations_generator_set(&combos, &dims)
}

/// The base elements of [`pairwise_products`] before the ± expansion:
/// t_0 and the consecutive products t_{k,k+1}.
pub fn pairwise_product_combinations(gens: &QuditGenerators) -> Vec<HermitianCombination> {
    let mut combos = vec![HermitianCombination::from_unitary("t0", gens.generator(0))];
    for k in 0..(gens.len() - 1) {
        let prod = gens.generator(k) * gens.generator(k + 1);
        combos.push(HermitianCombination::from_unitary(
            &format!("t{}{}", k, k + 1),
            &prod,
        ));
    }
    combos
}
