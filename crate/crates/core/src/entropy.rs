//! Von Neumann entropy, quantum relative entropy, and the entropy rate
//! along family trajectories. All values are in nats.

use crate::error::Result;
use crate::matrix::{eig_hermitian, SUPPORT_CUTOFF};
use crate::propagator::{asymptotic_state, evolve_family, family_rate};
use crate::state::{DensityMatrix, FamilyState};

/// Overlap of rho1 with the kernel of rho2 above which the relative entropy
/// is declared infinite.
const SUPPORT_OVERLAP_TOL: f64 = 1e-9;

/// A relative-entropy value: finite (in nats) or the "infinite" flag raised
/// when the support condition supp(rho1) <= supp(rho2) fails. Infinity is a
/// value, not an error, so trajectory scans never abort on it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RelEntropyValue {
    Finite(f64),
    Infinite,
}

impl RelEntropyValue {
    pub fn is_finite(&self) -> bool {
        matches!(self, RelEntropyValue::Finite(_))
    }

    pub fn value(&self) -> Option<f64> {
        match self {
            RelEntropyValue::Finite(v) => Some(*v),
            RelEntropyValue::Infinite => None,
        }
    }

    /// Finite value, or `f64::INFINITY` for the infinite flag.
    pub fn as_f64(&self) -> f64 {
        match self {
            RelEntropyValue::Finite(v) => *v,
            RelEntropyValue::Infinite => f64::INFINITY,
        }
    }
}

/// Shannon entropy -sum w ln w of a weight vector, with 0 ln 0 = 0.
pub fn shannon_entropy(weights: &[f64]) -> f64 {
    -weights
        .iter()
        .filter(|&&w| w > 0.0)
        .map(|&w| w * w.ln())
        .sum::<f64>()
}

/// Von Neumann entropy S(rho) = -Tr rho ln rho, in [0, ln 4].
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    let spectrum = eig_hermitian(rho.matrix()).expect("density matrix is Hermitian");
    shannon_entropy(spectrum.eigenvalues())
}

/// Quantum relative entropy S(rho1 || rho2) = Tr rho1 (ln rho1 - ln rho2).
///
/// Finite exactly when the support of rho1 lies inside the support of rho2;
/// for co-diagonal inputs it reduces to the classical Kullback-Leibler
/// divergence of the spectra paired by the common eigenbasis.
pub fn relative_entropy(rho1: &DensityMatrix, rho2: &DensityMatrix) -> RelEntropyValue {
    let s1 = eig_hermitian(rho1.matrix()).expect("density matrix is Hermitian");
    let s2 = eig_hermitian(rho2.matrix()).expect("density matrix is Hermitian");

    let mut total = 0.0;
    for (i, &r) in s1.eigenvalues().iter().enumerate() {
        if r > SUPPORT_CUTOFF {
            total += r * r.ln();
        }
        let v = s1.eigenvectors().column(i);
        for (j, &s) in s2.eigenvalues().iter().enumerate() {
            let w = s2.eigenvectors().column(j);
            let overlap = v.dotc(&w).norm_sqr();
            let weight = r.max(0.0) * overlap;
            if s <= SUPPORT_CUTOFF {
                if weight > SUPPORT_OVERLAP_TOL {
                    return RelEntropyValue::Infinite;
                }
            } else {
                total -= weight * s.ln();
            }
        }
    }
    RelEntropyValue::Finite(total)
}

/// Classical KL divergence sum p ln(p/q) of two weight vectors, with
/// 0 ln 0 = 0 and the infinite flag when some p > 0 sits on q = 0.
pub fn kl_divergence(p: &[f64; 4], q: &[f64; 4]) -> RelEntropyValue {
    let mut total = 0.0;
    for (&pi, &qi) in p.iter().zip(q.iter()) {
        if pi <= SUPPORT_CUTOFF {
            continue;
        }
        if qi <= SUPPORT_CUTOFF {
            return RelEntropyValue::Infinite;
        }
        total += pi * (pi / qi).ln();
    }
    RelEntropyValue::Finite(total)
}

/// Entropy rate sigma(t) = -d/dt S(rho_t || rho_inf) along the family
/// trajectory started at `s0`, from the analytic weight derivatives:
///
/// ```text
/// sigma = da/dt ln(a_inf/a_t) + db/dt ln(b_inf/b_t) + dd/dt ln(d_inf/d_t)
/// ```
///
/// For `c = 1` the state is the stationary singlet and the rate is 0 by
/// convention. At `t = 0` with any of a, b, d zero the log terms may
/// diverge; the right-limit flag `f64::INFINITY` is returned and callers
/// should start their scans at t > 0.
pub fn entropy_rate(s0: &FamilyState, alpha: f64, t: f64) -> Result<f64> {
    if s0.c() >= 1.0 - 1e-12 {
        return Ok(0.0);
    }
    let s_t = evolve_family(s0, alpha, t)?;
    if t == 0.0 && (s_t.a() < 1e-15 || s_t.b() < 1e-15 || s_t.d() < 1e-15) {
        return Ok(f64::INFINITY);
    }
    let (da, db, dd) = family_rate(s0, alpha, t)?;
    let inf = asymptotic_state(s0.c(), alpha)?;
    Ok(da * (inf.a() / s_t.a()).ln()
        + db * (inf.b() / s_t.b()).ln()
        + dd * (inf.d() / s_t.d()).ln())
}
