//! Time evolution under the dissipative two-qubit semigroup.
//!
//! The generator is
//!
//! ```text
//! L[rho] = -i (omega/2) [Sigma_3, rho]
//!          + sum_{ij} A_ij (Sigma_i rho Sigma_j - {Sigma_j Sigma_i, rho}/2)
//! ```
//!
//! with Kossakowski matrix A = [[1, i a, 0], [-i a, 1, 0], [0, 0, 1]],
//! `a = alpha`, `alpha^2 <= 1`. Three routes through the same dynamics live
//! here: the closed-form solution in the Bell-like basis (fast path for the
//! diagonal family, full 4x4 version with coherences), the raw generator,
//! and a fixed-step RK4 integrator kept as an independent oracle.

use crate::error::{Error, Result};
use crate::matrix::{C64, CMatrix4, CollectiveOps};
use crate::state::{basis_matrix, DensityMatrix, FamilyState};

/// Model parameters: Kossakowski asymmetry `alpha` and system frequency
/// `omega`, in the crate's normalized time units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    alpha: f64,
    omega: f64,
}

impl ModelParams {
    /// Requires `alpha^2 <= 1`, otherwise the Kossakowski matrix loses
    /// positive semi-definiteness and the semigroup is not completely
    /// positive.
    pub fn new(alpha: f64, omega: f64) -> Result<Self> {
        if !(alpha * alpha <= 1.0) {
            return Err(Error::AlphaOutOfRange { alpha });
        }
        Ok(Self { alpha, omega })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }
}

/// The four decay kernels of the closed-form solution, evaluated at one t:
/// E+- = exp(-8t) {cosh, sinh}(4 t sqrt(1 - alpha^2)) drive the diagonal
/// sector, F+- = exp(-8t) {cosh, sinh}(2 t sqrt(4 - 3 alpha^2)) the coupled
/// (1,3)/(3,2) coherences.
#[derive(Debug, Clone, Copy)]
pub struct Kernels {
    pub e_plus: f64,
    pub e_minus: f64,
    pub f_plus: f64,
    pub f_minus: f64,
}

/// exp(-8t) cosh(kt) and exp(-8t) sinh(kt) without overflow: cosh/sinh
/// blow up near kt ~ 710, so large arguments switch to the
/// exp((k-8)t)/exp(-(k+8)t) combination (k <= 4 keeps both exponents
/// nonpositive).
fn damped_cosh_sinh(k: f64, t: f64) -> (f64, f64) {
    let kt = k * t;
    if kt <= 30.0 {
        let damp = (-8.0 * t).exp();
        (damp * kt.cosh(), damp * kt.sinh())
    } else {
        let grow = ((k - 8.0) * t).exp();
        let decay = (-(k + 8.0) * t).exp();
        (0.5 * (grow + decay), 0.5 * (grow - decay))
    }
}

/// Kernel values at time `t >= 0` for `|alpha| <= 1`.
pub fn kernels(alpha: f64, t: f64) -> Result<Kernels> {
    if !(alpha * alpha <= 1.0) {
        return Err(Error::AlphaOutOfRange { alpha });
    }
    if t < 0.0 {
        return Err(Error::NegativeTime { t });
    }
    let (e_plus, e_minus) = damped_cosh_sinh(4.0 * (1.0 - alpha * alpha).sqrt(), t);
    let (f_plus, f_minus) = damped_cosh_sinh(2.0 * (4.0 - 3.0 * alpha * alpha).sqrt(), t);
    Ok(Kernels {
        e_plus,
        e_minus,
        f_plus,
        f_minus,
    })
}

/// Closed-form coefficients of the coupled diagonal sector: each of the
/// three evolving weights is `stationary * R + p * E_-(t) + q * E_+(t)`.
struct DiagonalCoefficients {
    /// (stationary fraction of R, E- coefficient, E+ coefficient) for the
    /// weights of |1>, |2>, |3> in that order.
    rows: [(f64, f64, f64); 3],
    r: f64,
}

impl DiagonalCoefficients {
    /// `w1`, `w2`, `w3` are the initial weights of |1>, |2>, |3>
    /// (for a family state: a, d, b). Requires |alpha| < 1 strictly; the
    /// coefficients carry 1/(1 +- alpha) and 1/(1 - alpha^2) factors.
    fn new(w1: f64, w2: f64, w3: f64, alpha: f64) -> Result<Self> {
        if alpha * alpha >= 1.0 {
            return Err(if alpha * alpha == 1.0 {
                Error::AlphaAtClosedFormBoundary
            } else {
                Error::AlphaOutOfRange { alpha }
            });
        }
        let den = 3.0 + alpha * alpha;
        let s = (1.0 - alpha * alpha).sqrt();
        let up = 1.0 + alpha;
        let um = 1.0 - alpha;
        let r = w1 + w2 + w3;

        // Shared numerators of the E+ coefficients.
        let n1 = 2.0 * up * w1 - um * um * (w3 + w2);
        let n2 = up * up * w1 - 2.0 * um * w2 + up * up * w3;

        let p1 = s * n2 / (up * den);
        let q1 = n1 / den;
        let p2 = -s * n1 / (um * den);
        let q2 = -n2 / den;
        let p3 = s * (up.powi(3) * w1 + um.powi(3) * w2 - 2.0 * (1.0 - alpha * alpha) * w3)
            / (den * (1.0 - alpha * alpha));
        let q3 = (2.0 * (1.0 + alpha * alpha) * w3 - (1.0 - alpha * alpha) * (w1 + w2)) / den;

        Ok(Self {
            rows: [
                (um * um / den, p1, q1),
                (up * up / den, p2, q2),
                ((1.0 - alpha * alpha) / den, p3, q3),
            ],
            r,
        })
    }

    fn values(&self, k: &Kernels) -> [f64; 3] {
        self.rows
            .map(|(stat, p, q)| stat * self.r + p * k.e_minus + q * k.e_plus)
    }

    /// Time derivatives, using dE+-/dt = -8 E+- + 4 sqrt(1-alpha^2) E-+.
    fn rates(&self, k: &Kernels, alpha: f64) -> [f64; 3] {
        let s4 = 4.0 * (1.0 - alpha * alpha).sqrt();
        self.rows.map(|(_, p, q)| {
            (-8.0 * p + s4 * q) * k.e_minus + (s4 * p - 8.0 * q) * k.e_plus
        })
    }
}

/// Evolve a family state for time `t >= 0` with `|alpha| < 1`; the weight
/// of |4> is a constant of the motion, as is a + b + d = 1 - c.
pub fn evolve_family(s0: &FamilyState, alpha: f64, t: f64) -> Result<FamilyState> {
    let coeff = DiagonalCoefficients::new(s0.a(), s0.d(), s0.b(), alpha)?;
    let k = kernels(alpha, t)?;
    let [a_t, d_t, b_t] = coeff.values(&k);
    FamilyState::new(a_t, b_t, s0.c(), d_t)
}

/// Analytic time derivatives (da/dt, db/dt, dd/dt) of the evolving family
/// weights at time `t`.
pub fn family_rate(s0: &FamilyState, alpha: f64, t: f64) -> Result<(f64, f64, f64)> {
    let coeff = DiagonalCoefficients::new(s0.a(), s0.d(), s0.b(), alpha)?;
    let k = kernels(alpha, t)?;
    let [da, dd, db] = coeff.rates(&k, alpha);
    Ok((da, db, dd))
}

/// The stationary family state with singlet weight `c`: every initial
/// family state with that same `c` relaxes onto it.
pub fn asymptotic_state(c: f64, alpha: f64) -> Result<FamilyState> {
    if !(0.0..=1.0).contains(&c) {
        return Err(Error::ParamOutOfRange {
            name: "c",
            value: c,
            min: 0.0,
            max: 1.0,
        });
    }
    if !(alpha * alpha <= 1.0) {
        return Err(Error::AlphaOutOfRange { alpha });
    }
    let den = 3.0 + alpha * alpha;
    let rest = 1.0 - c;
    let a = (1.0 - alpha) * (1.0 - alpha) * rest / den;
    let b = (1.0 - alpha * alpha) * rest / den;
    // Close the sum exactly rather than dividing a fourth time.
    let d = rest - a - b;
    FamilyState::new(a, b, c, d)
}

/// The Lindblad generator with its operator content precomputed; `apply`
/// evaluates L[m] for an arbitrary (not necessarily Hermitian) matrix.
pub struct Generator {
    half_omega_sigma3: CMatrix4,
    sigma_total: [CMatrix4; 3],
    /// Nonzero Kossakowski entries (i, j, A_ij).
    kossakowski: Vec<(usize, usize, C64)>,
    /// K/2 with K = sum_ij A_ij Sigma_j Sigma_i.
    half_anticommutant: CMatrix4,
}

impl Generator {
    pub fn new(params: &ModelParams) -> Self {
        let ops = CollectiveOps::new();
        let alpha = params.alpha;
        let kossakowski = vec![
            (0, 0, C64::new(1.0, 0.0)),
            (1, 1, C64::new(1.0, 0.0)),
            (2, 2, C64::new(1.0, 0.0)),
            (0, 1, C64::new(0.0, alpha)),
            (1, 0, C64::new(0.0, -alpha)),
        ];
        let mut k = CMatrix4::zeros();
        for &(i, j, a_ij) in &kossakowski {
            k += (ops.total[j] * ops.total[i]).map(|z| a_ij * z);
        }
        Self {
            half_omega_sigma3: ops.total[2].map(|z| z * C64::new(params.omega / 2.0, 0.0)),
            sigma_total: ops.total,
            kossakowski,
            half_anticommutant: k.scale(0.5),
        }
    }

    /// L[m], trace-free and Hermiticity-preserving on Hermitian input.
    pub fn apply(&self, m: &CMatrix4) -> CMatrix4 {
        let i = C64::new(0.0, 1.0);
        let h = &self.half_omega_sigma3;
        let mut out = (h * m - m * h).map(|z| -i * z);
        for &(si, sj, a_ij) in &self.kossakowski {
            out += (self.sigma_total[si] * m * self.sigma_total[sj]).map(|z| a_ij * z);
        }
        out -= self.half_anticommutant * m + m * self.half_anticommutant;
        out
    }
}

/// One application of the generator to a state.
pub fn lindblad_rhs(rho: &DensityMatrix, params: &ModelParams) -> CMatrix4 {
    Generator::new(params).apply(rho.matrix())
}

/// Hard cap on RK4 step counts.
const MAX_RK4_STEPS: u64 = 1_000_000_000;

/// The generator as a real-represented superoperator on vec(rho),
/// precomputed column by column from `Generator::apply`.
struct SuperOp {
    re: [[f64; 16]; 16],
    im: [[f64; 16]; 16],
}

impl SuperOp {
    fn new(gen: &Generator) -> Self {
        let mut re = [[0.0f64; 16]; 16];
        let mut im = [[0.0f64; 16]; 16];
        for k in 0..4 {
            for l in 0..4 {
                let mut basis = CMatrix4::zeros();
                basis[(k, l)] = C64::new(1.0, 0.0);
                let col = gen.apply(&basis);
                for i in 0..4 {
                    for j in 0..4 {
                        re[4 * i + j][4 * k + l] = col[(i, j)].re;
                        im[4 * i + j][4 * k + l] = col[(i, j)].im;
                    }
                }
            }
        }
        Self { re, im }
    }

    #[inline]
    fn apply(&self, xre: &[f64; 16], xim: &[f64; 16], yre: &mut [f64; 16], yim: &mut [f64; 16]) {
        for i in 0..16 {
            let (ar, ai) = (&self.re[i], &self.im[i]);
            let mut sr = 0.0;
            let mut si = 0.0;
            for j in 0..16 {
                sr += ar[j] * xre[j] - ai[j] * xim[j];
                si += ar[j] * xim[j] + ai[j] * xre[j];
            }
            yre[i] = sr;
            yim[i] = si;
        }
    }
}

#[inline]
fn hermitize16(re: &mut [f64; 16], im: &mut [f64; 16]) {
    for i in 0..4 {
        im[4 * i + i] = 0.0;
        for j in (i + 1)..4 {
            let (ij, ji) = (4 * i + j, 4 * j + i);
            let r = 0.5 * (re[ij] + re[ji]);
            let m = 0.5 * (im[ij] - im[ji]);
            re[ij] = r;
            re[ji] = r;
            im[ij] = m;
            im[ji] = -m;
        }
    }
}

/// Classical fixed-step RK4 integration of the Lindblad equation,
/// re-Hermitizing ((M + M†)/2) after every step. Kept deliberately free of
/// the closed-form solution so it can serve as an independent oracle.
pub fn integrate_rk4(
    rho0: &DensityMatrix,
    params: &ModelParams,
    t: f64,
    dt: f64,
) -> Result<DensityMatrix> {
    if t < 0.0 {
        return Err(Error::NegativeTime { t });
    }
    if dt <= 0.0 {
        return Err(Error::NonPositiveStep { dt });
    }
    if t == 0.0 {
        return Ok(rho0.clone());
    }
    let steps = (t / dt).ceil() as u64;
    if steps > MAX_RK4_STEPS {
        return Err(Error::StepCountOverflow {
            steps,
            limit: MAX_RK4_STEPS,
        });
    }
    let h = t / steps as f64;
    let sup = SuperOp::new(&Generator::new(params));

    let mut vre = [0.0f64; 16];
    let mut vim = [0.0f64; 16];
    for i in 0..4 {
        for j in 0..4 {
            let z = rho0.matrix()[(i, j)];
            vre[4 * i + j] = z.re;
            vim[4 * i + j] = z.im;
        }
    }

    let mut k1re = [0.0; 16];
    let mut k1im = [0.0; 16];
    let mut k2re = [0.0; 16];
    let mut k2im = [0.0; 16];
    let mut k3re = [0.0; 16];
    let mut k3im = [0.0; 16];
    let mut k4re = [0.0; 16];
    let mut k4im = [0.0; 16];
    let mut tmpre = [0.0; 16];
    let mut tmpim = [0.0; 16];

    for _ in 0..steps {
        sup.apply(&vre, &vim, &mut k1re, &mut k1im);
        for i in 0..16 {
            tmpre[i] = vre[i] + 0.5 * h * k1re[i];
            tmpim[i] = vim[i] + 0.5 * h * k1im[i];
        }
        sup.apply(&tmpre, &tmpim, &mut k2re, &mut k2im);
        for i in 0..16 {
            tmpre[i] = vre[i] + 0.5 * h * k2re[i];
            tmpim[i] = vim[i] + 0.5 * h * k2im[i];
        }
        sup.apply(&tmpre, &tmpim, &mut k3re, &mut k3im);
        for i in 0..16 {
            tmpre[i] = vre[i] + h * k3re[i];
            tmpim[i] = vim[i] + h * k3im[i];
        }
        sup.apply(&tmpre, &tmpim, &mut k4re, &mut k4im);
        let w = h / 6.0;
        for i in 0..16 {
            vre[i] += w * (k1re[i] + 2.0 * k2re[i] + 2.0 * k3re[i] + k4re[i]);
            vim[i] += w * (k1im[i] + 2.0 * k2im[i] + 2.0 * k3im[i] + k4im[i]);
        }
        hermitize16(&mut vre, &mut vim);
    }

    let mut m = CMatrix4::zeros();
    for i in 0..4 {
        for j in 0..4 {
            m[(i, j)] = C64::new(vre[4 * i + j], vim[4 * i + j]);
        }
    }
    DensityMatrix::new(m)
}

/// Full closed-form evolution of an arbitrary two-qubit state for
/// `|alpha| < 1`: decoupled coherence decays, the coupled (1,3)/(3,2) pair,
/// the coupled diagonal sector, then the free phases of the Bell-like basis
/// energies (omega, -omega, 0, 0).
pub fn evolve_full(rho0: &DensityMatrix, params: &ModelParams, t: f64) -> Result<DensityMatrix> {
    let alpha = params.alpha;
    if alpha * alpha >= 1.0 {
        return Err(Error::AlphaAtClosedFormBoundary);
    }
    if t < 0.0 {
        return Err(Error::NegativeTime { t });
    }
    let basis = basis_matrix();
    let g0 = basis.adjoint() * rho0.matrix() * basis;

    let k = kernels(alpha, t)?;
    let coeff = DiagonalCoefficients::new(g0[(0, 0)].re, g0[(1, 1)].re, g0[(2, 2)].re, alpha)?;
    let [g11, g22, g33] = coeff.values(&k);

    let mut g = CMatrix4::zeros();
    g[(0, 0)] = C64::new(g11, 0.0);
    g[(1, 1)] = C64::new(g22, 0.0);
    g[(2, 2)] = C64::new(g33, 0.0);
    g[(3, 3)] = g0[(3, 3)];

    // Decoupled coherences.
    let scale = |z: C64, r: f64| z * C64::new(r, 0.0);
    g[(0, 1)] = scale(g0[(0, 1)], (-12.0 * t).exp());
    g[(0, 3)] = scale(g0[(0, 3)], (-2.0 * (2.0 + alpha) * t).exp());
    g[(1, 3)] = scale(g0[(1, 3)], (-2.0 * (2.0 - alpha) * t).exp());
    g[(2, 3)] = scale(g0[(2, 3)], (-4.0 * t).exp());

    // Coupled pair rho_13 / rho_32.
    let root = (4.0 - 3.0 * alpha * alpha).sqrt();
    let (p13, p32) = (g0[(0, 2)], g0[(2, 1)]);
    let fm = C64::new(k.f_minus / root, 0.0);
    let fp = C64::new(k.f_plus, 0.0);
    g[(0, 2)] = p13 * fp
        + (p32 * C64::new(2.0 * (1.0 - alpha), 0.0) - p13 * C64::new(alpha, 0.0)) * fm;
    g[(2, 1)] = p32 * fp
        + (p13 * C64::new(2.0 * (1.0 + alpha), 0.0) + p32 * C64::new(alpha, 0.0)) * fm;

    // Hermitian completion.
    for (i, j) in [(0, 1), (0, 2), (0, 3), (1, 3), (2, 3), (2, 1)] {
        g[(j, i)] = g[(i, j)].conj();
    }

    // Schroedinger-picture phases from H = (omega/2) Sigma_3, whose
    // Bell-like eigenvalues are (omega, -omega, 0, 0).
    let energies = [params.omega, -params.omega, 0.0, 0.0];
    for i in 0..4 {
        for j in 0..4 {
            let phase = -(energies[i] - energies[j]) * t;
            g[(i, j)] *= C64::new(0.0, phase).exp();
        }
    }

    let m = basis * g * basis.adjoint();
    // Kill Hermiticity roundoff from the basis rotations.
    let m = (m + m.adjoint()).scale(0.5);
    DensityMatrix::new(m)
}
