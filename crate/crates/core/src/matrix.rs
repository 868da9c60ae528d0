//! Dense complex linear algebra for the 4x4 (two-qubit) problem.
//!
//! Provides a deterministic Hermitian eigendecomposition, the matrix
//! logarithm restricted to the support, partial transposition with respect
//! to the second qubit, and the Pauli / collective-spin constants.
//!
//! All logarithms in this crate are natural logs; downstream entropies are
//! in nats.

use nalgebra::linalg::SymmetricEigen;
use nalgebra::{Matrix2, Matrix4, Vector4};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMatrix2 = Matrix2<C64>;
pub type CMatrix4 = Matrix4<C64>;
pub type CVector4 = Vector4<C64>;

/// Entrywise tolerance below which a matrix counts as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Eigenvalues below this cutoff are treated as zero when logging on the support.
pub const SUPPORT_CUTOFF: f64 = 1e-12;
/// Most negative eigenvalue tolerated in a nominally PSD matrix.
pub const PSD_TOL: f64 = 1e-10;

/// Eigendecomposition of a 4x4 Hermitian matrix.
///
/// Eigenvalues are real and sorted ascending; column `k` of `eigenvectors`
/// is the unit eigenvector paired with `eigenvalues[k]`. Each eigenvector
/// carries a fixed phase: its largest-magnitude component is real positive,
/// so repeated runs and degenerate spectra stay reproducible.
#[derive(Debug, Clone)]
pub struct Spectrum4 {
    eigenvalues: [f64; 4],
    eigenvectors: CMatrix4,
}

impl Spectrum4 {
    pub fn eigenvalues(&self) -> &[f64; 4] {
        &self.eigenvalues
    }

    /// Eigenvectors as matrix columns, aligned with `eigenvalues`.
    pub fn eigenvectors(&self) -> &CMatrix4 {
        &self.eigenvectors
    }

    pub fn eigenvector(&self, k: usize) -> CVector4 {
        self.eigenvectors.column(k).into_owned()
    }

    /// Rebuild sum_k lambda_k |v_k><v_k|.
    pub fn reconstruct(&self) -> CMatrix4 {
        self.apply_to_eigenvalues(|x| x)
    }

    /// Rebuild with eigenvalues mapped through `f`.
    pub fn apply_to_eigenvalues(&self, f: impl Fn(f64) -> f64) -> CMatrix4 {
        let mut out = CMatrix4::zeros();
        for k in 0..4 {
            let v = self.eigenvectors.column(k);
            let lk = C64::new(f(self.eigenvalues[k]), 0.0);
            for i in 0..4 {
                for j in 0..4 {
                    out[(i, j)] += lk * v[i] * v[j].conj();
                }
            }
        }
        out
    }
}

/// Largest entrywise deviation from Hermiticity, max_ij |M_ij - conj(M_ji)|.
pub fn max_asymmetry(m: &CMatrix4) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Eigendecomposition of a Hermitian matrix with ascending eigenvalues.
///
/// Rejects inputs whose asymmetry exceeds [`HERMITIAN_TOL`]; the symmetric
/// part (M + M†)/2 is decomposed so roundoff in the input does not leak
/// into complex eigenvalues.
pub fn eig_hermitian(m: &CMatrix4) -> Result<Spectrum4> {
    let asymmetry = max_asymmetry(m);
    if asymmetry > HERMITIAN_TOL {
        return Err(Error::NonHermitian { asymmetry });
    }
    let h = (m + m.adjoint()).scale(0.5);
    let eig = SymmetricEigen::new(h);

    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));

    let mut eigenvalues = [0.0f64; 4];
    let mut eigenvectors = CMatrix4::zeros();
    for (k, &src) in order.iter().enumerate() {
        eigenvalues[k] = eig.eigenvalues[src];
        let col = eig.eigenvectors.column(src);
        // Phase convention: rotate so the largest-magnitude component is
        // real positive.
        let mut pivot = 0usize;
        for i in 1..4 {
            if col[i].norm_sqr() > col[pivot].norm_sqr() {
                pivot = i;
            }
        }
        let phase = col[pivot];
        let rot = if phase.norm() > 0.0 {
            phase.conj() / phase.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        for i in 0..4 {
            eigenvectors[(i, k)] = col[i] * rot;
        }
    }
    Ok(Spectrum4 {
        eigenvalues,
        eigenvectors,
    })
}

/// Matrix logarithm on the support of a PSD Hermitian matrix.
///
/// Eigenvalues below `cutoff` contribute log-value 0 to the reconstruction
/// (the 0 log 0 = 0 convention is completed by the caller pairing the result
/// with the original matrix); eigenvalues at or above `cutoff` map to their
/// natural log. Eigenvalues below -[`PSD_TOL`] are rejected.
pub fn mat_log_support(m: &CMatrix4, cutoff: f64) -> Result<CMatrix4> {
    let spectrum = eig_hermitian(m)?;
    let min_eigenvalue = spectrum.eigenvalues[0];
    if min_eigenvalue < -PSD_TOL {
        return Err(Error::NotPositiveSemidefinite { min_eigenvalue });
    }
    Ok(spectrum.apply_to_eigenvalues(|x| if x < cutoff { 0.0 } else { x.ln() }))
}

/// Partial transpose with respect to the second qubit, in the standard
/// basis |00>,|01>,|10>,|11>: each 2x2 block of the 2x2 block structure is
/// transposed in place.
pub fn partial_transpose_second(m: &CMatrix4) -> CMatrix4 {
    let mut out = CMatrix4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[(2 * i + k, 2 * j + l)] = m[(2 * i + l, 2 * j + k)];
                }
            }
        }
    }
    out
}

/// Pauli matrices and the collective two-qubit operators built from them.
///
/// `sigma[i]` is the single-qubit Pauli sigma_{i+1}; `total[i]` is the
/// collective Sigma_{i+1} = sigma_{i+1} (x) I + I (x) sigma_{i+1}; `raising`
/// and `lowering` are Sigma_+- = (Sigma_1 +- i Sigma_2)/2.
#[derive(Debug, Clone)]
pub struct CollectiveOps {
    pub sigma: [CMatrix2; 3],
    pub total: [CMatrix4; 3],
    pub raising: CMatrix4,
    pub lowering: CMatrix4,
}

impl CollectiveOps {
    pub fn new() -> Self {
        let o = C64::new(0.0, 0.0);
        let l = C64::new(1.0, 0.0);
        let i = C64::new(0.0, 1.0);
        let sigma = [
            CMatrix2::new(o, l, l, o),
            CMatrix2::new(o, -i, i, o),
            CMatrix2::new(l, o, o, -l),
        ];
        let eye = CMatrix2::identity();
        let total: [CMatrix4; 3] = std::array::from_fn(|k| {
            let s = &sigma[k];
            CMatrix4::from(s.kronecker(&eye)) + CMatrix4::from(eye.kronecker(s))
        });
        let half = C64::new(0.5, 0.0);
        let raising = (total[0] + total[1].map(|z| i * z)).map(|z| half * z);
        let lowering = (total[0] - total[1].map(|z| i * z)).map(|z| half * z);
        Self {
            sigma,
            total,
            raising,
            lowering,
        }
    }
}

impl Default for CollectiveOps {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::bell_like_basis;
    use approx::assert_relative_eq;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(rng: &mut impl Rng) -> CMatrix4 {
        let mut m = CMatrix4::zeros();
        for i in 0..4 {
            m[(i, i)] = C64::new(rng.gen_range(-1.0..1.0), 0.0);
            for j in (i + 1)..4 {
                let z = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
        m
    }

    fn max_entry_diff(a: &CMatrix4, b: &CMatrix4) -> f64 {
        (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn eig_scalar_matrix() {
        let m = CMatrix4::identity().scale(0.25);
        let s = eig_hermitian(&m).unwrap();
        for &l in s.eigenvalues() {
            assert_relative_eq!(l, 0.25, epsilon = 1e-14);
        }
    }

    #[test]
    fn eig_singlet_projector() {
        // |4><4| in the standard basis: a=b=d=0, c=1 family state.
        let v = bell_like_basis()[3];
        let mut m = CMatrix4::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m[(i, j)] = v[i] * v[j].conj();
            }
        }
        let s = eig_hermitian(&m).unwrap();
        let expected = [0.0, 0.0, 0.0, 1.0];
        for (l, e) in s.eigenvalues().iter().zip(expected) {
            assert_relative_eq!(*l, e, epsilon = 1e-12);
        }
    }

    #[test]
    fn eig_sorts_diagonal() {
        let m = CMatrix4::from_diagonal(&CVector4::new(
            C64::new(0.1, 0.0),
            C64::new(0.4, 0.0),
            C64::new(0.3, 0.0),
            C64::new(0.2, 0.0),
        ));
        let s = eig_hermitian(&m).unwrap();
        let expected = [0.1, 0.2, 0.3, 0.4];
        for (l, e) in s.eigenvalues().iter().zip(expected) {
            assert_relative_eq!(*l, e, epsilon = 1e-14);
        }
        // Phase convention makes each eigenvector a positive unit basis vector.
        for k in 0..4 {
            let v = s.eigenvector(k);
            let mut pivot = 0;
            for i in 1..4 {
                if v[i].norm() > v[pivot].norm() {
                    pivot = i;
                }
            }
            assert!(v[pivot].re > 0.0);
            assert_relative_eq!(v[pivot].im, 0.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let mut m = CMatrix4::identity();
        m[(0, 1)] = C64::new(1e-3, 0.0);
        match eig_hermitian(&m) {
            Err(Error::NonHermitian { asymmetry }) => {
                assert_relative_eq!(asymmetry, 1e-3, epsilon = 1e-12);
            }
            other => panic!("expected NonHermitian, got {other:?}"),
        }
    }

    #[test]
    fn eig_reconstruction_and_orthonormality() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..50 {
            let m = random_hermitian(&mut rng);
            let s = eig_hermitian(&m).unwrap();
            assert!(max_entry_diff(&s.reconstruct(), &m) < 1e-10);
            let gram = s.eigenvectors().adjoint() * s.eigenvectors();
            assert!(max_entry_diff(&gram, &CMatrix4::identity()) < 1e-10);
        }
    }

    #[test]
    fn eig_invariant_under_unitary_conjugation() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let m = random_hermitian(&mut rng);
            // Unitary built from the eigenvectors of another random Hermitian.
            let u = eig_hermitian(&random_hermitian(&mut rng))
                .unwrap()
                .eigenvectors()
                .clone();
            let conjugated = &u * m * u.adjoint();
            let s1 = eig_hermitian(&m).unwrap();
            let s2 = eig_hermitian(&conjugated).unwrap();
            for k in 0..4 {
                assert_relative_eq!(
                    s1.eigenvalues()[k],
                    s2.eigenvalues()[k],
                    epsilon = 1e-10
                );
            }
        }
    }

    #[test]
    fn log_identity_is_zero() {
        let m = mat_log_support(&CMatrix4::identity(), SUPPORT_CUTOFF).unwrap();
        assert!(max_entry_diff(&m, &CMatrix4::zeros()) < 1e-14);
    }

    #[test]
    fn log_on_support_of_rank_two_diagonal() {
        let m = CMatrix4::from_diagonal(&CVector4::new(
            C64::new(0.5, 0.0),
            C64::new(0.5, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
        ));
        let log = mat_log_support(&m, SUPPORT_CUTOFF).unwrap();
        let expected = CMatrix4::from_diagonal(&CVector4::new(
            C64::new(0.5f64.ln(), 0.0),
            C64::new(0.5f64.ln(), 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
        ));
        assert!(max_entry_diff(&log, &expected) < 1e-12);
    }

    #[test]
    fn log_maximally_mixed() {
        let m = CMatrix4::identity().scale(0.25);
        let log = mat_log_support(&m, SUPPORT_CUTOFF).unwrap();
        let expected = CMatrix4::identity().scale(0.25f64.ln());
        assert!(max_entry_diff(&log, &expected) < 1e-12);
    }

    #[test]
    fn log_rejects_negative_eigenvalue() {
        let m = CMatrix4::from_diagonal(&CVector4::new(
            C64::new(-0.1, 0.0),
            C64::new(0.4, 0.0),
            C64::new(0.3, 0.0),
            C64::new(0.4, 0.0),
        ));
        assert!(matches!(
            mat_log_support(&m, SUPPORT_CUTOFF),
            Err(Error::NotPositiveSemidefinite { .. })
        ));
    }

    #[test]
    fn exp_log_roundtrip_on_positive_matrix() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let h = random_hermitian(&mut rng);
            // Strictly positive: H^2 + I, scaled.
            let p = (h * h + CMatrix4::identity()).scale(0.1);
            let log = mat_log_support(&p, SUPPORT_CUTOFF).unwrap();
            let back = eig_hermitian(&log)
                .unwrap()
                .apply_to_eigenvalues(f64::exp);
            assert!(max_entry_diff(&back, &p) < 1e-9);
        }
    }

    #[test]
    fn partial_transpose_fixes_identity_and_diagonals() {
        let id = CMatrix4::identity();
        assert_eq!(partial_transpose_second(&id), id);
        let d = CMatrix4::from_diagonal(&CVector4::new(
            C64::new(0.1, 0.0),
            C64::new(0.2, 0.0),
            C64::new(0.3, 0.0),
            C64::new(0.4, 0.0),
        ));
        assert_eq!(partial_transpose_second(&d), d);
    }

    #[test]
    fn partial_transpose_singlet_min_eigenvalue() {
        let v = bell_like_basis()[3];
        let mut m = CMatrix4::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m[(i, j)] = v[i] * v[j].conj();
            }
        }
        let pt = partial_transpose_second(&m);
        let s = eig_hermitian(&pt).unwrap();
        assert_relative_eq!(s.eigenvalues()[0], -0.5, epsilon = 1e-12);
    }

    #[test]
    fn partial_transpose_is_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let m = random_hermitian(&mut rng);
            let twice = partial_transpose_second(&partial_transpose_second(&m));
            assert_eq!(twice, m);
        }
    }

    #[test]
    fn collective_ops_ladder_actions() {
        let ops = CollectiveOps::new();
        let basis = bell_like_basis();
        // Sigma_+ |2> = sqrt(2) |3>
        let lhs = ops.raising * basis[1];
        let rhs = basis[2].map(|z| z * C64::new(2.0f64.sqrt(), 0.0));
        assert!((lhs - rhs).iter().all(|z| z.norm() < 1e-14));
        // Sigma_3 |3> = 0
        let z3 = ops.total[2] * basis[2];
        assert!(z3.iter().all(|z| z.norm() < 1e-14));
        // Sigma_- |4> = 0
        let z4 = ops.lowering * basis[3];
        assert!(z4.iter().all(|z| z.norm() < 1e-14));
    }
}
