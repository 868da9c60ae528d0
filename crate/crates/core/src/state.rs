//! Two-qubit state representations.
//!
//! The dynamics studied here closes on the family of states diagonal in the
//! Bell-like basis |1> = |00|, |2> = |11>, |3> = (|01>+|10>)/sqrt(2),
//! |4> = (|01>-|10>)/sqrt(2); `FamilyState` carries the four weights.
//! `DensityMatrix` is the general validated 4x4 state in the standard basis.

use crate::error::{Error, Result};
use crate::matrix::{
    eig_hermitian, max_asymmetry, partial_transpose_second, C64, CMatrix4, CVector4,
    HERMITIAN_TOL,
};

/// Weights more negative than this are rejected; anything in
/// `[-WEIGHT_CLAMP, 0)` is clamped to zero (propagator roundoff).
pub const WEIGHT_CLAMP: f64 = 1e-12;
/// |sum of weights - 1| tolerance.
pub const WEIGHT_SUM_TOL: f64 = 1e-10;
/// Most negative eigenvalue tolerated in a density matrix, and the PPT
/// separability threshold.
pub const DM_PSD_TOL: f64 = 1e-9;
/// Largest off-family matrix element tolerated by `matrix_to_family`.
pub const FAMILY_DIAG_TOL: f64 = 1e-9;

/// A state diagonal in the Bell-like basis: weights (a, b, c, d) of
/// |1>, |3>, |4>, |2> respectively.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyState {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl FamilyState {
    /// Validates and clamps the weights: each must be >= -1e-12 (clamped to
    /// zero when slightly negative) and they must sum to 1 within 1e-10.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let clamp = |name: &'static str, w: f64| -> Result<f64> {
            if w < -WEIGHT_CLAMP {
                Err(Error::NegativeWeight { name, value: w })
            } else {
                Ok(w.max(0.0))
            }
        };
        let a = clamp("a", a)?;
        let b = clamp("b", b)?;
        let c = clamp("c", c)?;
        let d = clamp("d", d)?;
        let sum = a + b + c + d;
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::WeightSum { sum });
        }
        Ok(Self { a, b, c, d })
    }

    /// Weight of |1> = |00>.
    pub fn a(&self) -> f64 {
        self.a
    }

    /// Weight of |3> = (|01>+|10>)/sqrt(2).
    pub fn b(&self) -> f64 {
        self.b
    }

    /// Weight of |4> = (|01>-|10>)/sqrt(2).
    pub fn c(&self) -> f64 {
        self.c
    }

    /// Weight of |2> = |11>.
    pub fn d(&self) -> f64 {
        self.d
    }

    /// Weights in (a, b, c, d) order.
    pub fn weights(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }
}

/// A validated two-qubit density matrix in the standard basis
/// |00>, |01>, |10>, |11>.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    m: CMatrix4,
}

impl DensityMatrix {
    /// Validates Hermiticity (1e-10 entrywise), unit trace (1e-10) and
    /// positivity (min eigenvalue >= -1e-9).
    pub fn new(m: CMatrix4) -> Result<Self> {
        let asymmetry = max_asymmetry(&m);
        if asymmetry > HERMITIAN_TOL {
            return Err(Error::NonHermitian { asymmetry });
        }
        let trace = m.trace();
        if (trace.re - 1.0).abs() > 1e-10 || trace.im.abs() > 1e-10 {
            return Err(Error::NonUnitTrace { trace: trace.re });
        }
        let spectrum = eig_hermitian(&m)?;
        let min_eigenvalue = spectrum.eigenvalues()[0];
        if min_eigenvalue < -DM_PSD_TOL {
            return Err(Error::NotPositiveSemidefinite { min_eigenvalue });
        }
        Ok(Self { m })
    }

    pub fn matrix(&self) -> &CMatrix4 {
        &self.m
    }
}

/// The four orthonormal Bell-like basis vectors |1>, |2>, |3>, |4> as
/// standard-basis column vectors, indexed 0..=3.
pub fn bell_like_basis() -> [CVector4; 4] {
    let z = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let r = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    [
        CVector4::new(one, z, z, z),
        CVector4::new(z, z, z, one),
        CVector4::new(z, r, r, z),
        CVector4::new(z, r, -r, z),
    ]
}

/// Change-of-basis matrix whose columns are the Bell-like basis vectors;
/// for a standard-basis matrix M, the Bell-like components are B† M B.
pub(crate) fn basis_matrix() -> CMatrix4 {
    let basis = bell_like_basis();
    CMatrix4::from_columns(&basis)
}

/// Standard-basis density matrix of a family state: diagonal
/// (a, (b+c)/2, (b+c)/2, d) with (b-c)/2 on the middle off-diagonal.
pub fn family_to_matrix(s: &FamilyState) -> DensityMatrix {
    let mut m = CMatrix4::zeros();
    let mid_diag = (s.b + s.c) / 2.0;
    let mid_off = (s.b - s.c) / 2.0;
    m[(0, 0)] = C64::new(s.a, 0.0);
    m[(1, 1)] = C64::new(mid_diag, 0.0);
    m[(2, 2)] = C64::new(mid_diag, 0.0);
    m[(3, 3)] = C64::new(s.d, 0.0);
    m[(1, 2)] = C64::new(mid_off, 0.0);
    m[(2, 1)] = C64::new(mid_off, 0.0);
    DensityMatrix { m }
}

/// Inverse of [`family_to_matrix`]: extracts (a, b, c, d) from a density
/// matrix that is diagonal in the Bell-like basis, rejecting inputs with
/// any off-family element above 1e-9.
pub fn matrix_to_family(rho: &DensityMatrix) -> Result<FamilyState> {
    let b = basis_matrix();
    let f = b.adjoint() * rho.m * b;
    let mut max_off_family = 0.0f64;
    for i in 0..4 {
        max_off_family = max_off_family.max(f[(i, i)].im.abs());
        for j in 0..4 {
            if i != j {
                max_off_family = max_off_family.max(f[(i, j)].norm());
            }
        }
    }
    if max_off_family > FAMILY_DIAG_TOL {
        return Err(Error::NotFamilyDiagonal { max_off_family });
    }
    FamilyState::new(f[(0, 0)].re, f[(2, 2)].re, f[(3, 3)].re, f[(1, 1)].re)
}

/// Spin-flipped state sigma_2 (x) sigma_2 rho* sigma_2 (x) sigma_2.
fn spin_flip(m: &CMatrix4) -> CMatrix4 {
    // sigma_2 (x) sigma_2 is the anti-diagonal (-1, 1, 1, -1).
    let sign = [-1.0, 1.0, 1.0, -1.0];
    let mut out = CMatrix4::zeros();
    for i in 0..4 {
        for j in 0..4 {
            out[(i, j)] =
                m[(3 - i, 3 - j)].conj() * C64::new(sign[i] * sign[j], 0.0);
        }
    }
    out
}

/// Wootters concurrence of an arbitrary two-qubit state.
///
/// Computed through the Hermitian route: the lambda_k are the square roots
/// of the eigenvalues of sqrt(rho) rho~ sqrt(rho), identical in spectrum to
/// rho rho~ but avoiding a non-Hermitian eigensolver.
pub fn concurrence(rho: &DensityMatrix) -> f64 {
    let spectrum = eig_hermitian(&rho.m).expect("density matrix is Hermitian");
    let sqrt_rho = spectrum.apply_to_eigenvalues(|x| x.max(0.0).sqrt());
    let flipped = spin_flip(&rho.m);
    let m = sqrt_rho * flipped * sqrt_rho;
    let m = (m + m.adjoint()).scale(0.5);
    let s = eig_hermitian(&m).expect("symmetrized product is Hermitian");
    let mut lambdas: Vec<f64> = s
        .eigenvalues()
        .iter()
        .map(|&x| x.max(0.0).sqrt())
        .collect();
    lambdas.sort_by(|x, y| y.total_cmp(x));
    (lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0)
}

/// Concurrence of a family state, max(0, |b - c| - 2 sqrt(ad)), from the
/// analytic spectrum {ad, ad, b^2, c^2} of rho rho~.
pub fn concurrence_family(s: &FamilyState) -> f64 {
    concurrence_gap(s).max(0.0)
}

/// The signed quantity |b - c| - 2 sqrt(ad) whose zero crossing marks
/// entanglement sudden death; negative values mean the state is separable.
pub fn concurrence_gap(s: &FamilyState) -> f64 {
    (s.b - s.c).abs() - 2.0 * (s.a * s.d).max(0.0).sqrt()
}

/// Peres-Horodecki test, necessary and sufficient for two qubits: true iff
/// the partial transpose stays positive (min eigenvalue >= -1e-9).
pub fn is_separable_ppt(rho: &DensityMatrix) -> bool {
    let pt = partial_transpose_second(&rho.m);
    let s = eig_hermitian(&pt).expect("partial transpose of Hermitian is Hermitian");
    s.eigenvalues()[0] >= -DM_PSD_TOL
}
