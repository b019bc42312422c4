//! Fractional Adams predictor-corrector: observed order, memory window and
//! the step-halving check.

use fracfloquet::fde::{convergence_study, solve_checked, solve_ftse_direct, solve_with, FdeOptions, FdeProblem, History};
use fracfloquet::grid::TimeGrid;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

fn scalar(e: f64, alpha: f64, grid: TimeGrid) -> fracfloquet::Result<FdeProblem> {
    FdeProblem::schrodinger(
        move |_| DMatrix::from_element(1, 1, C64::new(e, 0.0)),
        alpha,
        1.0,
        DVector::from_element(1, C64::new(1.0, 0.0)),
        grid,
    )
}

fn main() -> fracfloquet::Result<()> {
    for alpha in [0.3, 0.5, 0.8, 1.0] {
        let study = convergence_study(|g| scalar(1.0, alpha, g), 1.0, 64, 4)?;
        let orders: Vec<String> = study.observed_orders().iter().map(|q| format!("{q:.3}")).collect();
        println!("alpha {alpha}: orders {} (expected {:.1})", orders.join(" "), (1.0 + alpha).min(2.0));
    }

    let grid = TimeGrid::from_horizon(2.0 * std::f64::consts::PI, 1024)?;
    let p = FdeProblem::schrodinger(
        |t| DMatrix::from_element(1, 1, C64::new(t.cos(), 0.0)),
        0.6,
        1.0,
        DVector::from_element(1, C64::new(1.0, 0.0)),
        grid,
    )?;
    let full = solve_ftse_direct(&p)?;
    for w in [64, 256, 1024] {
        let cut = solve_with(&p, FdeOptions { history: History::Window(w), ..Default::default() })?;
        println!("memory window {w:4}: endpoint change {:.3e}", (cut.last().unwrap() - full.last().unwrap()).norm());
    }
    let checked = solve_checked(&p, 1e-4)?;
    println!("step-halving endpoint change {:.3e}", checked.endpoint_change);
    Ok(())
}
