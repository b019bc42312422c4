//! Classical (α = 1) Floquet theory in harmonic space.
//!
//! A T-periodic Hamiltonian H(t) = Σ_m h(m) e^{imωt} couples the harmonics
//! C_n of u(t) = Σ_n C_n e^{iωnt}. Truncating to |n| ≤ N gives the Hermitian
//! operator F with blocks F_{n,n'} = h(n−n') + ħωn δ_{nn'} and eigenvalue ħε.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use crate::error::{domain, Error, Result};

/// H(t) = Σ_m h(m) e^{imωt} on a d-dimensional basis.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierHamiltonian {
    pub omega: f64,
    pub dim: usize,
    pub modes: BTreeMap<i64, DMatrix<C64>>,
}

impl FourierHamiltonian {
    pub const HERMITICITY_TOL: f64 = 1e-12;

    pub fn new(omega: f64, modes: BTreeMap<i64, DMatrix<C64>>) -> Result<Self> {
        if !(omega > 0.0 && omega.is_finite()) {
            return domain(format!("omega = {omega} must be positive"));
        }
        let dim = match modes.values().next() {
            Some(h) => h.nrows(),
            None => return domain("Hamiltonian needs at least one Fourier mode"),
        };
        if dim == 0 {
            return domain("basis dimension must be positive");
        }
        for (m, h) in &modes {
            if h.nrows() != dim || h.ncols() != dim {
                return Err(Error::Dimension(format!(
                    "mode {m} is {}x{}, expected {dim}x{dim}",
                    h.nrows(),
                    h.ncols()
                )));
            }
        }
        for (m, h) in &modes {
            let zero = DMatrix::zeros(dim, dim);
            let partner = modes.get(&-m).unwrap_or(&zero);
            let scale = 1.0 + h.norm();
            if (h - partner.adjoint()).norm() > Self::HERMITICITY_TOL * scale {
                return domain(format!("h({}) is not the adjoint of h({m})", -m));
            }
        }
        Ok(Self { omega, dim, modes })
    }

    /// Scalar (d = 1) Hamiltonian from mode amplitudes.
    pub fn scalar(omega: f64, modes: &[(i64, C64)]) -> Result<Self> {
        Self::new(omega, modes.iter().map(|&(m, c)| (m, DMatrix::from_element(1, 1, c))).collect())
    }

    /// h(0) = H0 alone.
    pub fn time_independent(omega: f64, h0: DMatrix<C64>) -> Result<Self> {
        Self::new(omega, BTreeMap::from([(0, h0)]))
    }

    pub fn period(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.omega
    }

    /// Largest |m| with a nonzero mode.
    pub fn m_max(&self) -> usize {
        self.modes
            .iter()
            .filter(|(_, h)| h.iter().any(|c| c.norm() > 0.0))
            .map(|(m, _)| m.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Σ_m ‖h(m)‖_F, an upper bound for ‖H(t)‖.
    pub fn norm_bound(&self) -> f64 {
        self.modes.values().map(|h| h.norm()).sum()
    }

    pub fn mode(&self, m: i64) -> Option<&DMatrix<C64>> {
        self.modes.get(&m)
    }

    /// H(t).
    pub fn eval(&self, t: f64) -> DMatrix<C64> {
        let mut out = DMatrix::zeros(self.dim, self.dim);
        for (&m, h) in &self.modes {
            out += h * C64::new(0.0, m as f64 * self.omega * t).exp();
        }
        out
    }
}

/// Default truncation max(32, 4⌈Σ‖h‖/ħω⌉ + M_max).
pub fn default_truncation(ham: &FourierHamiltonian, hbar: f64) -> usize {
    let ratio = (ham.norm_bound() / (hbar * ham.omega)).ceil() as usize;
    (4 * ratio + ham.m_max()).max(32)
}

/// Fold ε into the zone [−ω/2, ω/2).
pub fn fold_quasienergy(eps: f64, omega: f64) -> f64 {
    let x = eps - omega * (eps / omega + 0.5).floor();
    if x >= 0.5 * omega {
        x - omega
    } else {
        x
    }
}

/// Quasienergy ε with harmonics C_n, n = −N..=N.
#[derive(Clone, Debug, PartialEq)]
pub struct FloquetSolution {
    pub epsilon: f64,
    pub coeffs: Vec<DVector<C64>>,
    pub truncation: usize,
    pub hbar: f64,
    pub omega: f64,
    /// Interior lattice residual, when computed.
    pub residual: Option<f64>,
}

impl FloquetSolution {
    /// Validates the harmonic count 2N+1 and dimensions. Coefficients are
    /// taken as given (no normalisation).
    pub fn new(epsilon: f64, coeffs: Vec<DVector<C64>>, hbar: f64, omega: f64) -> Result<Self> {
        if coeffs.len() % 2 == 0 {
            return Err(Error::Dimension(format!("{} harmonics; expected 2N+1", coeffs.len())));
        }
        let d = coeffs[0].len();
        if coeffs.iter().any(|c| c.len() != d) {
            return Err(Error::Dimension("harmonics of differing dimension".into()));
        }
        if !(hbar > 0.0 && omega > 0.0) {
            return domain("hbar and omega must be positive");
        }
        let truncation = coeffs.len() / 2;
        Ok(Self { epsilon, coeffs, truncation, hbar, omega, residual: None })
    }

    pub fn dim(&self) -> usize {
        self.coeffs[0].len()
    }

    /// C_n, or None outside the window.
    pub fn coeff(&self, n: i64) -> Option<&DVector<C64>> {
        let idx = n + self.truncation as i64;
        if idx < 0 {
            return None;
        }
        self.coeffs.get(idx as usize)
    }

    /// (n, C_n) pairs in increasing n.
    pub fn harmonics(&self) -> impl Iterator<Item = (i64, &DVector<C64>)> {
        let n0 = self.truncation as i64;
        self.coeffs.iter().enumerate().map(move |(i, c)| (i as i64 - n0, c))
    }

    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_squared()).sum()
    }

    pub fn normalize(&mut self) {
        let n = self.norm_sq().sqrt();
        if n > 0.0 {
            for c in self.coeffs.iter_mut() {
                *c /= C64::new(n, 0.0);
            }
        }
    }

    /// Ψ_0 = u(0) = Σ_n C_n.
    pub fn psi0(&self) -> DVector<C64> {
        self.coeffs.iter().fold(DVector::zeros(self.dim()), |acc, c| acc + c)
    }

    /// u(t) = Σ_n C_n e^{iωnt}.
    pub fn u(&self, t: f64) -> DVector<C64> {
        let mut out = DVector::zeros(self.dim());
        for (n, c) in self.harmonics() {
            out += c * C64::new(0.0, self.omega * n as f64 * t).exp();
        }
        out
    }

    /// e^{−iεt} u(t).
    pub fn classical_state(&self, t: f64) -> DVector<C64> {
        self.u(t) * C64::new(0.0, -self.epsilon * t).exp()
    }

    /// a·self + b·other for two solutions on the same window and ε.
    pub fn combine(&self, a: C64, other: &Self, b: C64) -> Result<Self> {
        if other.coeffs.len() != self.coeffs.len() || other.dim() != self.dim() {
            return Err(Error::Dimension("solutions on different windows".into()));
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| x * a + y * b).collect();
        Ok(Self { coeffs, residual: None, ..self.clone() })
    }
}

/// Band representation C_n = Σ_q U_q e^{iqn}.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeAmplitudes {
    pub q: Vec<f64>,
    pub amplitudes: Vec<DVector<C64>>,
}

impl LatticeAmplitudes {
    pub fn coefficient(&self, n: i64) -> DVector<C64> {
        let d = self.amplitudes.first().map_or(0, |u| u.len());
        self.q
            .iter()
            .zip(&self.amplitudes)
            .fold(DVector::zeros(d), |acc, (&q, u)| acc + u * C64::new(0.0, q * n as f64).exp())
    }
}

/// Truncated Floquet operator with its construction data.
#[derive(Clone, Debug)]
pub struct FloquetMatrix {
    pub matrix: DMatrix<C64>,
    pub truncation: usize,
    pub dim: usize,
    pub hbar: f64,
    pub omega: f64,
}

pub fn build_floquet_matrix(ham: &FourierHamiltonian, n: usize, hbar: f64) -> Result<FloquetMatrix> {
    if !(hbar > 0.0 && hbar.is_finite()) {
        return domain(format!("hbar = {hbar} must be positive"));
    }
    let mm = ham.m_max();
    if n < mm {
        return Err(Error::TruncationTooSmall { n, min: mm });
    }
    let d = ham.dim;
    let size = (2 * n + 1) * d;
    let mut f = DMatrix::zeros(size, size);
    for bi in 0..=2 * n {
        for bj in 0..=2 * n {
            let m = bi as i64 - bj as i64;
            if let Some(h) = ham.mode(m) {
                f.view_mut((bi * d, bj * d), (d, d)).copy_from(h);
            }
        }
        let shift = hbar * ham.omega * (bi as f64 - n as f64);
        for k in 0..d {
            f[(bi * d + k, bi * d + k)] += shift;
        }
    }
    Ok(FloquetMatrix { matrix: f, truncation: n, dim: d, hbar, omega: ham.omega })
}

/// Index of the largest-magnitude entry; ties within a relative 1e-12 go to
/// the lowest index (lowest harmonic, then lowest basis index).
fn gauge_index(v: &DVector<C64>) -> usize {
    let max = v.iter().map(|c| c.norm()).fold(0.0, f64::max);
    v.iter().position(|c| c.norm() >= max * (1.0 - 1e-12)).unwrap_or(0)
}

/// Normalise to unit norm and rotate the gauge component onto the positive
/// real axis.
pub fn fix_gauge(v: &mut DVector<C64>) {
    let n = v.norm();
    if n == 0.0 {
        return;
    }
    let c = v[gauge_index(v)];
    let phase = c.conj() / c.norm();
    *v *= phase / n;
}

/// Eigenpairs of F whose eigenvalue λ satisfies λ/ħ ∈ [−ω/2, ω/2), one per
/// physical solution, sorted by ε.
pub fn solve_quasienergies(fm: &FloquetMatrix) -> Result<Vec<FloquetSolution>> {
    let eig = fm.matrix.clone().symmetric_eigen();
    let half = 0.5 * fm.omega;
    let mut out = Vec::new();
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        if !lambda.is_finite() {
            return Err(Error::Eigensolve(format!("non-finite eigenvalue {lambda}")));
        }
        let eps = lambda / fm.hbar;
        if eps < -half || eps >= half {
            continue;
        }
        let mut v: DVector<C64> = eig.eigenvectors.column(k).into_owned();
        fix_gauge(&mut v);
        let coeffs = (0..=2 * fm.truncation).map(|b| v.rows(b * fm.dim, fm.dim).into_owned()).collect();
        out.push(FloquetSolution {
            epsilon: eps,
            coeffs,
            truncation: fm.truncation,
            hbar: fm.hbar,
            omega: fm.omega,
            residual: None,
        });
    }
    out.sort_by(|a, b| a.epsilon.total_cmp(&b.epsilon));
    Ok(out)
}

/// Build, solve and attach the interior residual to every solution.
pub fn solve(ham: &FourierHamiltonian, n: usize, hbar: f64) -> Result<Vec<FloquetSolution>> {
    let fm = build_floquet_matrix(ham, n, hbar)?;
    let mut sols = solve_quasienergies(&fm)?;
    for s in sols.iter_mut() {
        s.residual = Some(lattice_eigen_residual(ham, s));
    }
    Ok(sols)
}

/// max_n ‖Σ_m h(m) C_{n−m} − ħ(ε − ωn) C_n‖ over |n| ≤ N − M_max.
pub fn lattice_eigen_residual(ham: &FourierHamiltonian, sol: &FloquetSolution) -> f64 {
    let big_n = sol.truncation as i64;
    let inner = big_n - ham.m_max() as i64;
    let mut worst: f64 = 0.0;
    for n in -inner..=inner {
        let cn = sol.coeff(n).expect("interior harmonic");
        let mut acc = -cn * C64::new(sol.hbar * (sol.epsilon - ham.omega * n as f64), 0.0);
        for (&m, h) in &ham.modes {
            if let Some(c) = sol.coeff(n - m) {
                acc += h * c;
            }
        }
        worst = worst.max(acc.norm());
    }
    worst
}
