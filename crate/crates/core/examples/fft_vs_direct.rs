//! Compare the Mittag-Leffler synthesis of the toy model with a direct
//! fractional Adams integration of the same equation.

use std::f64::consts::PI;

use fracfloquet::fde::{solve_ftse_direct, FdeProblem};
use fracfloquet::ffloquet::{ftse_residual, synthesize, synthesize_trajectory, FftParams};
use fracfloquet::floquet::FourierHamiltonian;
use fracfloquet::grid::TimeGrid;
use fracfloquet::models::toy::{toy_coefficients, ToyModel};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

fn main() -> fracfloquet::Result<()> {
    let alpha: f64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(0.8);
    let tm = ToyModel::new(1.0, 1.0, 1.0)?;
    let period = 2.0 * PI / tm.omega;
    let grid = TimeGrid::from_horizon(2.0 * period, 8192)?;
    let (e0, w) = (tm.e0, tm.omega);
    let direct = solve_ftse_direct(&FdeProblem::schrodinger(
        move |t| DMatrix::from_element(1, 1, C64::new(e0 * (w * t).cos(), 0.0)),
        alpha,
        tm.hbar,
        DVector::from_element(1, C64::new(1.0, 0.0)),
        grid,
    )?)?;
    let ham: FourierHamiltonian = tm.hamiltonian()?;
    for n in [16, 32, 64] {
        let p = FftParams::new(alpha, toy_coefficients(&tm, n)?)?;
        let mut dev: f64 = 0.0;
        for k in (0..grid.len).step_by(64) {
            dev = dev.max((synthesize(&p, grid.t(k))? - &direct.states[k]).norm());
        }
        println!("N = {n:3}  max |fFT - direct| on [0, 2T] = {dev:.3e}");
    }
    println!("FTSE residual of the direct solution (h = T/4096): {:.3e}", ftse_residual(&direct, &ham, alpha, tm.hbar)?);
    let p = FftParams::new(alpha, toy_coefficients(&tm, 64)?)?;
    let traj = synthesize_trajectory(&p, TimeGrid::from_horizon(2.0 * period, 4096)?)?;
    println!("FTSE residual of the synthesis (h = T/2048): {:.3e}", ftse_residual(&traj, &ham, alpha, tm.hbar)?);
    Ok(())
}
