//! H(t) = H0 cos ωt acting on an eigenstate H0 ψ0 = e0 ψ0.
//!
//! The dynamics reduce to a scalar amplitude. The classical solution is
//! ψ(t) = exp[−i (e0/ħω) sin ωt] ψ0 with ε = 0 and C_n = (−1)^n J_n(e0/ħω).

use nalgebra::DVector;
use num_complex::Complex64 as C64;

use crate::error::{domain, Error, Result};
use crate::ffloquet::{synthesize, FftParams};
use crate::floquet::{lattice_eigen_residual, FloquetSolution, FourierHamiltonian};
use crate::specfun::{bessel_j_sequence, DEFAULT_MAX_BESSEL_ORDER};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ToyModel {
    pub e0: f64,
    pub hbar: f64,
    pub omega: f64,
}

impl ToyModel {
    pub fn new(e0: f64, hbar: f64, omega: f64) -> Result<Self> {
        if !e0.is_finite() {
            return domain("e0 must be finite");
        }
        if !(hbar > 0.0 && omega > 0.0) {
            return domain("hbar and omega must be positive");
        }
        Ok(Self { e0, hbar, omega })
    }

    /// e0 / ħω.
    pub fn ratio(&self) -> f64 {
        self.e0 / (self.hbar * self.omega)
    }

    pub fn period(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.omega
    }

    /// h(±1) = e0/2.
    pub fn hamiltonian(&self) -> Result<FourierHamiltonian> {
        let half = C64::new(self.e0 / 2.0, 0.0);
        FourierHamiltonian::scalar(self.omega, &[(-1, half), (1, half)])
    }
}

/// Σ_{|n|>N} J_n(z)².
pub fn toy_tail_mass(z: f64, n: usize) -> Result<f64> {
    let top = (n + 64).min(DEFAULT_MAX_BESSEL_ORDER as usize);
    let j = bessel_j_sequence(top as u32, C64::new(z, 0.0))?;
    Ok(2.0 * j[n + 1..].iter().map(|v| v.norm_sqr()).sum::<f64>())
}

/// ε = 0 and C_n = (−1)^n J_n(e0/ħω), |n| ≤ N, normalised to Σ|C_n|² = 1.
pub fn toy_coefficients(tm: &ToyModel, n: usize) -> Result<FloquetSolution> {
    let z = tm.ratio();
    let min = (2.0 * z.abs()).ceil() as usize;
    if n < min {
        return Err(Error::TruncationTooSmall { n, min });
    }
    let tail = toy_tail_mass(z, n)?;
    if tail > 1e-12 {
        log::warn!("toy truncation N = {n} leaves tail mass {tail:e}");
    }
    let j = bessel_j_sequence(n as u32, C64::new(z, 0.0))?;
    let coeffs = (-(n as i64)..=n as i64)
        .map(|k| {
            let m = k.unsigned_abs() as usize;
            // C_k = J_{-k}; J_{-m} = (-1)^m J_m
            let v = if k > 0 && m % 2 == 1 { -j[m] } else { j[m] };
            DVector::from_element(1, v)
        })
        .collect();
    let mut sol = FloquetSolution::new(0.0, coeffs, tm.hbar, tm.omega)?;
    sol.normalize();
    sol.residual = Some(lattice_eigen_residual(&tm.hamiltonian()?, &sol));
    Ok(sol)
}

/// Ψ(t) = Σ_n E_α(i ħ^{1−α} ωn t^α) (−1)^n J_n(e0/ħω), with ψ0 = 1.
pub fn toy_fft_state(tm: &ToyModel, alpha: f64, n: usize, t: f64) -> Result<C64> {
    let p = FftParams::new(alpha, toy_coefficients(tm, n)?)?;
    Ok(synthesize(&p, t)?[0])
}

/// exp[−i (e0/ħω) sin ωt].
pub fn toy_classical_state(tm: &ToyModel, t: f64) -> C64 {
    C64::new(0.0, -tm.ratio() * (tm.omega * t).sin()).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::floquet::solve;

    #[test]
    fn zero_drive() {
        let tm = ToyModel::new(0.0, 1.0, 1.0).unwrap();
        let s = toy_coefficients(&tm, 4).unwrap();
        assert_eq!(s.epsilon, 0.0);
        for (n, c) in s.harmonics() {
            assert_eq!(c[0], C64::new(if n == 0 { 1.0 } else { 0.0 }, 0.0));
        }
    }

    #[test]
    fn c0_is_j0() {
        let s = toy_coefficients(&ToyModel::new(1.0, 1.0, 1.0).unwrap(), 16).unwrap();
        assert!((s.coeff(0).unwrap()[0].re - 0.765_197_686_6).abs() < 1e-10);
        assert!(s.residual.unwrap() < 1e-10);
    }

    #[test]
    fn bessel_recurrence_form() {
        let tm = ToyModel::new(1.7, 1.0, 0.9).unwrap();
        let s = toy_coefficients(&tm, 64).unwrap();
        let z = tm.ratio();
        for n in -20..=20i64 {
            let c = |k: i64| s.coeff(k).unwrap()[0];
            let r = z * (c(n + 1) + c(n - 1)) + 2.0 * n as f64 * c(n);
            assert!(r.norm() < 1e-10, "n={n}");
        }
    }

    #[test]
    fn agrees_with_floquet_solver() {
        let tm = ToyModel::new(1.2, 1.0, 1.0).unwrap();
        let direct = toy_coefficients(&tm, 40).unwrap();
        let solved = solve(&tm.hamiltonian().unwrap(), 40, 1.0).unwrap().remove(0);
        for n in -20..=20 {
            assert!((direct.coeff(n).unwrap()[0] - solved.coeff(n).unwrap()[0]).norm() < 1e-12);
        }
    }

    #[test]
    fn truncation_precondition() {
        let tm = ToyModel::new(5.0, 1.0, 1.0).unwrap();
        assert!(matches!(toy_coefficients(&tm, 8), Err(Error::TruncationTooSmall { .. })));
        assert!(toy_tail_mass(5.0, 10).unwrap() > 1e-12);
        assert!(toy_tail_mass(1.0, 32).unwrap() < 1e-30);
    }

    #[test]
    fn classical_periodic_return_and_jacobi_anger() {
        let tm = ToyModel::new(1.0, 1.0, 1.0).unwrap();
        assert!((toy_fft_state(&tm, 1.0, 32, 0.0).unwrap() - 1.0).norm() < 1e-10);
        for k in 1..=3 {
            let t = k as f64 * tm.period();
            assert!((toy_fft_state(&tm, 1.0, 32, t).unwrap() - 1.0).norm() < 1e-9);
        }
        for &t in &[0.3, 2.0, 5.5] {
            let d = toy_fft_state(&tm, 1.0, 32, t).unwrap() - toy_classical_state(&tm, t);
            assert!(d.norm() < 1e-9);
        }
    }
}
