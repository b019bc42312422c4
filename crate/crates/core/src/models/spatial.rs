//! Particle of mass m in a driven potential V(x) cos ωt on [x_min, x_max]
//! with Dirichlet walls.
//!
//! The harmonics C_n(x) of u(x, t) = Σ_n C_n(x) e^{iωnt} satisfy
//!
//! −(ħ²/2m) C_n'' + (V/2)(C_{n+1} + C_{n−1}) + ħωn C_n = ħε C_n,
//!
//! a real symmetric block-tridiagonal eigenproblem once x is discretised by
//! central differences on the interior points x_j = x_min + (j+1)Δx.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::floquet::{fix_gauge, fold_quasienergy, FloquetSolution, FourierHamiltonian};
use crate::linalg::{shift_invert_lanczos, BlockTridiagonal};

/// Built-in potential shapes, or explicit samples on the interior grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Potential {
    Zero,
    /// V0 cos(k x).
    Cosine { v0: f64, k: f64 },
    /// a x⁴.
    Quartic { a: f64 },
    Samples { values: Vec<f64> },
}

impl Potential {
    pub fn sample(&self, xs: &[f64]) -> Result<Vec<f64>> {
        let v: Vec<f64> = match self {
            Potential::Zero => vec![0.0; xs.len()],
            Potential::Cosine { v0, k } => xs.iter().map(|x| v0 * (k * x).cos()).collect(),
            Potential::Quartic { a } => xs.iter().map(|x| a * x.powi(4)).collect(),
            Potential::Samples { values } => {
                if values.len() != xs.len() {
                    return Err(Error::Dimension(format!(
                        "{} potential samples for {} grid points",
                        values.len(),
                        xs.len()
                    )));
                }
                values.clone()
            }
        };
        if v.iter().any(|x| !x.is_finite()) {
            return domain("potential samples must be finite");
        }
        Ok(v)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpatialModel {
    pub mass: f64,
    pub x_min: f64,
    pub x_max: f64,
    /// V at the interior points.
    pub potential: Vec<f64>,
    pub hbar: f64,
    pub omega: f64,
}

impl SpatialModel {
    pub const MIN_POINTS: usize = 16;

    pub fn new(
        mass: f64,
        (x_min, x_max): (f64, f64),
        points: usize,
        potential: &Potential,
        hbar: f64,
        omega: f64,
    ) -> Result<Self> {
        if !(mass > 0.0 && hbar > 0.0 && omega > 0.0) {
            return domain("mass, hbar and omega must be positive");
        }
        if !(x_max > x_min) {
            return domain(format!("empty domain [{x_min}, {x_max}]"));
        }
        if points < Self::MIN_POINTS {
            return Err(Error::GridTooSmall { needed: Self::MIN_POINTS, got: points });
        }
        let dx = (x_max - x_min) / (points + 1) as f64;
        let xs: Vec<f64> = (0..points).map(|j| x_min + (j + 1) as f64 * dx).collect();
        let potential = potential.sample(&xs)?;
        Ok(Self { mass, x_min, x_max, potential, hbar, omega })
    }

    pub fn points(&self) -> usize {
        self.potential.len()
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / (self.points() + 1) as f64
    }

    pub fn xs(&self) -> Vec<f64> {
        (0..self.points()).map(|j| self.x_min + (j + 1) as f64 * self.dx()).collect()
    }

    pub fn period(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.omega
    }

    /// −(ħ²/2m) d²/dx² by central differences.
    pub fn kinetic(&self) -> DMatrix<f64> {
        let n = self.points();
        let c = self.hbar * self.hbar / (2.0 * self.mass * self.dx() * self.dx());
        DMatrix::from_fn(n, n, |i, j| match i.abs_diff(j) {
            0 => 2.0 * c,
            1 => -c,
            _ => 0.0,
        })
    }

    /// Discrete box energies and orthonormal modes of the kinetic matrix.
    pub fn box_modes(&self) -> (Vec<f64>, DMatrix<f64>) {
        let n = self.points();
        let c = self.hbar * self.hbar / (2.0 * self.mass * self.dx() * self.dx());
        let theta = |j: usize| std::f64::consts::PI * (j + 1) as f64 / (n + 1) as f64;
        let energies = (0..n).map(|j| 2.0 * c * (1.0 - theta(j).cos())).collect();
        let norm = (2.0 / (n + 1) as f64).sqrt();
        let modes = DMatrix::from_fn(n, n, |i, j| norm * (theta(j) * (i + 1) as f64).sin());
        (energies, modes)
    }

    /// H(t) = T + V cos ωt as Fourier modes h(0) = T, h(±1) = diag(V/2).
    pub fn hamiltonian(&self) -> Result<FourierHamiltonian> {
        let t = self.kinetic().map(|x| C64::new(x, 0.0));
        let half = DMatrix::from_diagonal(&DVector::from_iterator(
            self.points(),
            self.potential.iter().map(|v| C64::new(v / 2.0, 0.0)),
        ));
        FourierHamiltonian::new(self.omega, BTreeMap::from([(-1, half.clone()), (0, t), (1, half)]))
    }
}

/// Block-tridiagonal operator over harmonics n = −N..=N: diagonal blocks
/// T + ħωn, couplings diag(V/2).
pub fn spatial_assemble(sm: &SpatialModel, n: usize) -> Result<BlockTridiagonal> {
    if n < 1 {
        return Err(Error::TruncationTooSmall { n, min: 1 });
    }
    let t = sm.kinetic();
    let m = sm.points();
    let diag = (-(n as i64)..=n as i64)
        .map(|k| &t + DMatrix::identity(m, m) * (sm.hbar * sm.omega * k as f64))
        .collect();
    let coupling = DMatrix::from_diagonal(&DVector::from_iterator(m, sm.potential.iter().map(|v| v / 2.0)));
    BlockTridiagonal::new(diag, vec![coupling; 2 * n])
}

/// C_n(x) on the grid for n = −N..=N.
#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicField {
    pub coefficients: Vec<DVector<C64>>,
    pub truncation: usize,
}

impl HarmonicField {
    pub fn coeff(&self, n: i64) -> Option<&DVector<C64>> {
        let idx = n + self.truncation as i64;
        if idx < 0 {
            return None;
        }
        self.coefficients.get(idx as usize)
    }

    /// ‖C_n‖² / Σ_m ‖C_m‖².
    pub fn weight(&self, n: i64) -> f64 {
        let total: f64 = self.coefficients.iter().map(|c| c.norm_squared()).sum();
        self.coeff(n).map_or(0.0, |c| c.norm_squared() / total)
    }

    /// Largest imaginary part after removing the phase of the largest entry.
    pub fn phase_free_imaginary(&self) -> f64 {
        let all = || self.coefficients.iter().flat_map(|c| c.iter());
        let big = all().copied().max_by(|a, b| a.norm().total_cmp(&b.norm())).unwrap_or(C64::new(1.0, 0.0));
        let phase = big.conj() / big.norm();
        all().map(|c| (c * phase).im.abs()).fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug)]
pub struct SpatialSolution {
    /// Unfolded eigenvalue ε = λ/ħ with the matching harmonics.
    pub solution: FloquetSolution,
    pub field: HarmonicField,
    pub folded_epsilon: f64,
    /// ‖K̂C‖ / ‖C‖.
    pub residual: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpatialSolveOptions {
    /// Spectral target for shift-invert; default is the lowest box energy.
    pub shift: Option<f64>,
    pub tol: f64,
}

impl Default for SpatialSolveOptions {
    fn default() -> Self {
        Self { shift: None, tol: 1e-10 }
    }
}

pub fn spatial_solve(sm: &SpatialModel, n: usize, k_eigs: usize) -> Result<Vec<SpatialSolution>> {
    spatial_solve_with(sm, n, k_eigs, SpatialSolveOptions::default())
}

/// The `k_eigs` eigenpairs of the assembled operator nearest the shift.
pub fn spatial_solve_with(
    sm: &SpatialModel,
    n: usize,
    k_eigs: usize,
    opts: SpatialSolveOptions,
) -> Result<Vec<SpatialSolution>> {
    let op = spatial_assemble(sm, n)?;
    let sigma = match opts.shift {
        Some(s) => s,
        None => sm.box_modes().0[0] - 1e-3 * sm.hbar * sm.omega,
    };
    let m = sm.points();
    let pairs = shift_invert_lanczos(&op, sigma, k_eigs, opts.tol)?;
    pairs
        .into_iter()
        .map(|p| {
            let mut v = p.vector.map(|x| C64::new(x, 0.0));
            fix_gauge(&mut v);
            let coeffs: Vec<DVector<C64>> = (0..=2 * n).map(|b| v.rows(b * m, m).into_owned()).collect();
            let eps = p.value / sm.hbar;
            let mut solution = FloquetSolution::new(eps, coeffs.clone(), sm.hbar, sm.omega)?;
            solution.residual = Some(p.residual);
            Ok(SpatialSolution {
                solution,
                field: HarmonicField { coefficients: coeffs, truncation: n },
                folded_epsilon: fold_quasienergy(eps, sm.omega),
                residual: p.residual,
            })
        })
        .collect()
}
