//! Driven particle in a cosine potential: block-tridiagonal Floquet
//! operator, shift-invert Lanczos, and the fractional synthesis.

use std::f64::consts::PI;

use fracfloquet::ffloquet::{ftse_residual, synthesize_trajectory, FftParams};
use fracfloquet::grid::TimeGrid;
use fracfloquet::models::{spatial_solve, Potential, SpatialModel};

fn main() -> fracfloquet::Result<()> {
    let v0: f64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(1.0);
    let sm = SpatialModel::new(1.0, (0.0, 2.0 * PI), 128, &Potential::Cosine { v0, k: 1.0 }, 1.0, 1.0)?;
    let sols = spatial_solve(&sm, 16, 6)?;
    let box_e = sm.box_modes().0;
    println!("lowest box energies {:.6?}", &box_e[..3]);
    for s in &sols {
        let weights: Vec<String> = (-2..=2).map(|n| format!("{:.3}", s.field.coeff(n).unwrap().norm())).collect();
        println!(
            "eps {:+.8} folded {:+.8} residual {:.1e} |C_-2..C_2| {}",
            s.solution.epsilon,
            s.folded_epsilon,
            s.residual,
            weights.join(" ")
        );
    }
    let ham = sm.hamiltonian()?;
    let grid = TimeGrid::from_horizon(sm.period(), 2048)?;
    for alpha in [1.0, 0.8] {
        let traj = synthesize_trajectory(&FftParams::new(alpha, sols[0].solution.clone())?, grid)?;
        println!("alpha {alpha}: FTSE residual of the synthesis {:.3e}", ftse_residual(&traj, &ham, alpha, sm.hbar)?);
    }
    Ok(())
}
