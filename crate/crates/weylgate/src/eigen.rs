//! Eigendecomposition support: a cyclic Jacobi solver for complex Hermitian
//! matrices and, built on it, the principal logarithm of a unitary matrix.
//!
//! The unitary log works through the Hermitian parts `A = (U + U†)/2` and
//! `B = (U - U†)/2i`, which commute for normal `U`. A real mix
//! `cos(w) A + sin(w) B` is diagonalized instead of `U` itself; its
//! eigenvectors are simultaneously eigenvectors of `A` and `B` whenever the
//! mix separates the eigenspaces, which fails only on a measure-zero set of
//! mix angles, so a fixed retry schedule over `w` suffices.

use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::matrix::{ComplexMatrix, C_ZERO};

#[derive(Debug, Error)]
pub enum EigenError {
    #[error("matrix is not unitary within tolerance {tol}")]
    NotUnitary { tol: f64 },
    #[error("eigendecomposition did not converge (residual {residual:.3e})")]
    NoConvergence { residual: f64 },
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Returns eigenvalues in ascending order and a unitary matrix
/// whose columns are the matching eigenvectors.
pub fn hermitian_eigen(a: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    let n = a.dim();
    // Work on the exactly Hermitian average to tame drift.
    let mut m: Vec<C64> = (a + &a.adjoint())
        .scaled(C64::new(0.5, 0.0))
        .entries()
        .to_vec();
    let mut v: Vec<C64> = ComplexMatrix::identity(n).entries().to_vec();
    let scale = m.iter().map(|z| z.norm()).fold(1e-300, f64::max);

    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
            .map(|(p, q)| m[p * n + q].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-14 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let gamma = m[p * n + q];
                let g = gamma.norm();
                if g <= 1e-300 {
                    continue;
                }
                let phase = gamma / g;
                let alpha = m[p * n + p].re;
                let beta = m[q * n + q].re;
                // cot(2 theta) = (beta - alpha) / (2 |gamma|)
                let tau = (beta - alpha) / (2.0 * g);
                let t =
                    if tau >= 0.0 { 1.0 } else { -1.0 } / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let se_pos = phase * s; // s e^{i phi}
                let se_neg = phase.conj() * s; // s e^{-i phi}

                // Columns p and q of M and V (right-multiply by J).
                for k in 0..n {
                    let mkp = m[k * n + p];
                    let mkq = m[k * n + q];
                    m[k * n + p] = mkp * c - mkq * se_neg;
                    m[k * n + q] = mkp * se_pos + mkq * c;
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = vkp * c - vkq * se_neg;
                    v[k * n + q] = vkp * se_pos + vkq * c;
                }
                // Rows p and q of M (left-multiply by J†).
                for k in 0..n {
                    let mpk = m[p * n + k];
                    let mqk = m[q * n + k];
                    m[p * n + k] = mpk * c - mqk * se_pos;
                    m[q * n + k] = mpk * se_neg + mqk * c;
                }
                // Pin the rotated pair to its exact post-rotation form.
                m[p * n + q] = C_ZERO;
                m[q * n + p] = C_ZERO;
                m[p * n + p] = C64::new(alpha - t * g, 0.0);
                m[q * n + q] = C64::new(beta + t * g, 0.0);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[i * n + i].re.total_cmp(&m[j * n + j].re));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| m[i * n + i].re).collect();
    let vectors = ComplexMatrix::from_fn(n, |i, j| v[i * n + order[j]]);
    (eigenvalues, vectors)
}

/// Spectral decomposition of a unitary matrix: eigenphases in `(-pi, pi]`
/// and a unitary of eigenvectors `V` with `u = V diag(exp(i theta)) V†`.
pub fn unitary_eigen(u: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix), EigenError> {
    if !u.is_unitary(1e-8) {
        return Err(EigenError::NotUnitary { tol: 1e-8 });
    }
    let n = u.dim();
    let udag = u.adjoint();
    let herm = (u + &udag).scaled(C64::new(0.5, 0.0));
    let skew = (u - &udag).scaled(C64::new(0.0, -0.5));

    let mut best_residual = f64::INFINITY;
    for attempt in 0..8u32 {
        // Deterministic mix angles, golden-angle spaced to dodge degeneracies.
        let w = 0.5 + 2.399_963_229_728_653 * f64::from(attempt);
        let mix = &herm.scaled(C64::new(w.cos(), 0.0)) + &skew.scaled(C64::new(w.sin(), 0.0));
        let (_, vectors) = hermitian_eigen(&mix);

        let mut phases = Vec::with_capacity(n);
        for j in 0..n {
            let mut a_exp = 0.0;
            let mut b_exp = 0.0;
            for r in 0..n {
                let vr = vectors.get(r, j);
                let mut ha = C_ZERO;
                let mut hb = C_ZERO;
                for k in 0..n {
                    ha += herm.get(r, k) * vectors.get(k, j);
                    hb += skew.get(r, k) * vectors.get(k, j);
                }
                a_exp += (vr.conj() * ha).re;
                b_exp += (vr.conj() * hb).re;
            }
            phases.push(b_exp.atan2(a_exp));
        }

        let rebuilt = &(&vectors
            * &ComplexMatrix::diagonal(
                &phases
                    .iter()
                    .map(|&t| C64::from_polar(1.0, t))
                    .collect::<Vec<_>>(),
            ))
            * &vectors.adjoint();
        let residual = rebuilt.max_abs_diff(u);
        if residual <= 1e-9 {
            return Ok((phases, vectors));
        }
        best_residual = best_residual.min(residual);
    }
    Err(EigenError::NoConvergence {
        residual: best_residual,
    })
}

/// Principal matrix logarithm of a unitary: the anti-Hermitian `K` with
/// `exp(K) = u` and all eigenphases in `(-pi, pi]`.
pub fn unitary_log(u: &ComplexMatrix) -> Result<ComplexMatrix, EigenError> {
    let (phases, vectors) = unitary_eigen(u)?;
    let diag =
        ComplexMatrix::diagonal(&phases.iter().map(|&t| C64::new(0.0, t)).collect::<Vec<_>>());
    let log = &(&vectors * &diag) * &vectors.adjoint();
    // Symmetrize away rounding so downstream anti-Hermitian checks are exact.
    Ok((&log - &log.adjoint()).scaled(C64::new(0.5, 0.0)))
}

/// Base-2 entanglement entropy of a bipartite pure state given as a
/// `rows x cols` coefficient table (row index = first subsystem).
pub fn entanglement_entropy(coeffs: &[C64], rows: usize, cols: usize) -> f64 {
    assert_eq!(coeffs.len(), rows * cols);
    // Reduced density matrix on the smaller side.
    let swap = rows > cols;
    let m = if swap { cols } else { rows };
    let span = if swap { rows } else { cols };
    let at = |a: usize, k: usize| {
        if swap {
            coeffs[k * cols + a]
        } else {
            coeffs[a * cols + k]
        }
    };
    let rho = ComplexMatrix::from_fn(m, |a, b| {
        (0..span).map(|k| at(a, k) * at(b, k).conj()).sum()
    });
    let (lambdas, _) = hermitian_eigen(&rho);
    lambdas
        .iter()
        .filter(|&&l| l > 1e-14)
        .map(|&l| -l * l.log2())
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{matrix_exponential, random_unitary, C_I, C_ONE};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
        let g = ComplexMatrix::from_fn(dim, |_, _| {
            C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
        });
        (&g + &g.adjoint()).scaled(C64::new(0.5, 0.0))
    }

    #[test]
    fn eigen_of_diagonal() {
        let a = ComplexMatrix::diagonal(&[C64::new(3.0, 0.0), C64::new(-1.0, 0.0), C_ZERO]);
        let (vals, v) = hermitian_eigen(&a);
        assert!((vals[0] + 1.0).abs() < 1e-12);
        assert!(vals[1].abs() < 1e-12);
        assert!((vals[2] - 3.0).abs() < 1e-12);
        assert!(v.is_unitary(1e-10));
    }

    #[test]
    fn eigen_reconstructs_random_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for dim in [2, 3, 5, 8] {
            let a = random_hermitian(dim, &mut rng);
            let (vals, v) = hermitian_eigen(&a);
            assert!(v.is_unitary(1e-10));
            let rebuilt =
                &(&v * &ComplexMatrix::diagonal(
                    &vals.iter().map(|&l| C64::new(l, 0.0)).collect::<Vec<_>>(),
                )) * &v.adjoint();
            assert!(rebuilt.approx_eq(&a, 1e-11), "dim {dim}");
        }
    }

    #[test]
    fn unitary_log_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for dim in [2, 3, 4, 9] {
            let u = random_unitary(dim, &mut rng);
            let k = unitary_log(&u).unwrap();
            assert!(k.is_anti_hermitian(1e-12));
            assert!(matrix_exponential(&k).approx_eq(&u, 1e-9), "dim {dim}");
        }
    }

    #[test]
    fn unitary_log_degenerate_spectra() {
        // Fully degenerate: log(I) = 0.
        let id = ComplexMatrix::identity(4);
        assert!(unitary_log(&id).unwrap().max_abs() < 1e-12);
        // Here (U+U†)/2 vanishes; only the skew part separates anything.
        let u = ComplexMatrix::diagonal(&[C_I, -C_I]);
        let k = unitary_log(&u).unwrap();
        let want = ComplexMatrix::diagonal(&[
            C64::new(0.0, std::f64::consts::FRAC_PI_2),
            C64::new(0.0, -std::f64::consts::FRAC_PI_2),
        ]);
        assert!(k.approx_eq(&want, 1e-10));
    }

    #[test]
    fn unitary_eigen_rejects_non_unitary() {
        let bad = ComplexMatrix::identity(2).scaled(C64::new(2.0, 0.0));
        assert!(matches!(
            unitary_eigen(&bad),
            Err(EigenError::NotUnitary { .. })
        ));
    }

    #[test]
    fn phases_cover_principal_branch() {
        // sigma_x has eigenphases {0, pi}; pi must land in the branch, not -pi.
        let sx = ComplexMatrix::new(2, vec![C_ZERO, C_ONE, C_ONE, C_ZERO]).unwrap();
        let (phases, _) = unitary_eigen(&sx).unwrap();
        let mut sorted = phases.clone();
        sorted.sort_by(f64::total_cmp);
        assert!(sorted[0].abs() < 1e-9);
        assert!((sorted[1].abs() - std::f64::consts::PI).abs() < 1e-9);
        let k = unitary_log(&sx).unwrap();
        assert!(matrix_exponential(&k).approx_eq(&sx, 1e-9));
    }

    #[test]
    fn entropy_of_product_and_bell_states() {
        // |0>|0> -> 0 bits; (|00> + |11>)/sqrt(2) -> 1 bit.
        let product = [C_ONE, C_ZERO, C_ZERO, C_ZERO];
        assert!(entanglement_entropy(&product, 2, 2).abs() < 1e-12);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let bell = [C64::new(r, 0.0), C_ZERO, C_ZERO, C64::new(r, 0.0)];
        assert!((entanglement_entropy(&bell, 2, 2) - 1.0).abs() < 1e-12);
    }
}
