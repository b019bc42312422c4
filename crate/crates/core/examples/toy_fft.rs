//! Fractional synthesis of the toy model for several orders; writes a
//! trajectory CSV when given a path.

use fracfloquet::cli::csv::trajectory_csv;
use fracfloquet::ffloquet::{synthesize_trajectory, FftParams};
use fracfloquet::grid::TimeGrid;
use fracfloquet::models::{toy_classical_state, toy_coefficients, toy_fft_state, ToyModel};

fn main() -> fracfloquet::Result<()> {
    let tm = ToyModel::new(1.0, 1.0, 1.0)?;
    let period = tm.period();
    println!("{:>6} {:>28} {:>28} {:>28}", "t/T", "alpha=1", "alpha=0.9", "alpha=0.6");
    for k in 0..=8 {
        let t = 0.5 * k as f64 * period;
        let v: Vec<String> = [1.0, 0.9, 0.6]
            .iter()
            .map(|&a| toy_fft_state(&tm, a, 32, t).map(|z| format!("{:+.6}{:+.6}i", z.re, z.im)))
            .collect::<fracfloquet::Result<_>>()?;
        println!("{:6.1} {:>28} {:>28} {:>28}", 0.5 * k as f64, v[0], v[1], v[2]);
    }
    let gap = (toy_fft_state(&tm, 1.0, 32, 3.0 * period)? - toy_classical_state(&tm, 3.0 * period)).norm();
    println!("alpha = 1 return after 3T: |Psi - psi0| = {gap:.2e}");

    if let Some(path) = std::env::args().nth(1) {
        let p = FftParams::new(0.8, toy_coefficients(&tm, 32)?)?;
        let traj = synthesize_trajectory(&p, TimeGrid::from_horizon(2.0 * period, 512)?)?;
        std::fs::write(&path, trajectory_csv(&traj)).expect("write trajectory");
        println!("wrote {path}");
    }
    Ok(())
}
