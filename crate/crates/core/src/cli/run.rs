//! Scenario pipelines: solve, synthesize, check, write.

use crate::fde::{solve_ftse_direct, FdeProblem};
use crate::ffloquet::{ftse_residual, synthesize_trajectory, FftParams};
use crate::floquet::{self, lattice_eigen_residual, FloquetSolution, FourierHamiltonian};
use crate::grid::{TimeGrid, Trajectory};
use crate::models::{spatial_solve_with, toy_coefficients, SpatialSolveOptions};
use crate::Result;

use super::config::{Plan, PlannedModel};
use super::csv::{residual_csv, trajectory_csv, write_atomic};
use super::report::{Check, RunReport};
use super::ScenarioError;

/// Residuals below this are treated as converged when judging monotonicity.
const RESIDUAL_FLOOR: f64 = 1e-12;

/// Classical ingredients for one truncation.
#[derive(Clone, Debug)]
pub struct Classical {
    pub ham: FourierHamiltonian,
    pub solution: FloquetSolution,
    pub residual: f64,
}

pub fn classical(model: &PlannedModel, n: usize) -> Result<Classical> {
    match model {
        PlannedModel::Toy(tm) => {
            let ham = tm.hamiltonian()?;
            let solution = toy_coefficients(tm, n)?;
            let residual = lattice_eigen_residual(&ham, &solution);
            Ok(Classical { ham, solution, residual })
        }
        PlannedModel::Spatial { model, pair, shift } => {
            let opts = SpatialSolveOptions { shift: *shift, ..Default::default() };
            let mut sols = spatial_solve_with(model, n, pair + 1, opts)?;
            let chosen = sols.swap_remove(*pair);
            Ok(Classical { ham: model.hamiltonian()?, residual: chosen.residual, solution: chosen.solution })
        }
        PlannedModel::Custom { ham, hbar, state } => {
            let mut sols = floquet::solve(ham, n, *hbar)?;
            let solution = sols.swap_remove(*state);
            let residual = solution.residual.unwrap_or_else(|| lattice_eigen_residual(ham, &solution));
            Ok(Classical { ham: ham.clone(), solution, residual })
        }
    }
}

fn grid(plan: &Plan) -> Result<TimeGrid> {
    let s = &plan.scenario.solve;
    let steps = (s.periods * s.steps_per_period as f64).round().max(1.0) as usize;
    TimeGrid::from_horizon(steps as f64 * plan.model.period() / s.steps_per_period as f64, steps)
}

fn direct(c: &Classical, alpha: f64, hbar: f64, grid: TimeGrid) -> Result<Trajectory> {
    let ham = c.ham.clone();
    let p = FdeProblem::schrodinger(move |t| ham.eval(t), alpha, hbar, c.solution.psi0(), grid)?;
    solve_ftse_direct(&p)
}

fn max_classical_gap(traj: &Trajectory, sol: &FloquetSolution) -> f64 {
    traj.grid
        .times()
        .zip(&traj.states)
        .map(|(t, s)| (s - sol.classical_state(t)).norm())
        .fold(0.0, f64::max)
}

/// Solve, synthesize and check one scenario; writes `trajectory.csv`,
/// `residual.csv` and `report.json` under the plan's output directory.
pub fn run_scenario(plan: &Plan) -> RunReport {
    let mut report = RunReport::new("run", Some(plan.scenario.clone()));
    if let Err(e) = run_into(plan, &mut report) {
        report.fail_with(e);
    }
    if let Err(e) = report.write(&plan.out_dir.join("report.json")) {
        log::error!("{e}");
        report.fail_with(e);
    }
    report
}

fn run_into(plan: &Plan, report: &mut RunReport) -> std::result::Result<(), ScenarioError> {
    let s = &plan.scenario.solve;
    let tol = plan.scenario.tolerances;
    let hbar = plan.model.hbar();
    let c = report.timed("solve", || classical(&plan.model, s.truncation))?;
    report.push(Check::at_most("floquet_residual", c.residual, tol.floquet_residual));

    let grid = grid(plan)?;
    let params = FftParams::new(s.alpha, c.solution.clone())?;
    let traj = report.timed("synthesize", || synthesize_trajectory(&params, grid))?;
    let r = report.timed("residual", || ftse_residual(&traj, &c.ham, s.alpha, hbar))?;
    report.push(Check::at_most("ftse_residual", r, tol.ftse_residual));
    if s.alpha == 1.0 {
        report.push(Check::at_most("classical_reduction", max_classical_gap(&traj, &c.solution), tol.classical_reduction));
    }
    if s.oracle {
        let reference = report.timed("oracle", || direct(&c, s.alpha, hbar, grid))?;
        report.push(Check::at_most("oracle_deviation", traj.max_distance(&reference), tol.oracle_deviation));
    }

    report.timed("write", || -> std::result::Result<(), ScenarioError> {
        if plan.scenario.output.trajectory {
            write_atomic(&plan.out_dir.join("trajectory.csv"), trajectory_csv(&traj).as_bytes())?;
        }
        write_atomic(&plan.out_dir.join("residual.csv"), residual_csv(&[(s.truncation as f64, r)]).as_bytes())
    })?;
    Ok(())
}

/// Truncation sweep. Writes `residual.csv` with one (N, residual) row per
/// truncation, `oracle.csv` with (N, deviation) rows when the oracle is on,
/// and `report.json`.
pub fn run_sweep(plan: &Plan) -> RunReport {
    let mut report = RunReport::new("sweep", Some(plan.scenario.clone()));
    if let Err(e) = sweep_into(plan, &mut report) {
        report.fail_with(e);
    }
    if let Err(e) = report.write(&plan.out_dir.join("report.json")) {
        log::error!("{e}");
        report.fail_with(e);
    }
    report
}

fn sweep_into(plan: &Plan, report: &mut RunReport) -> std::result::Result<(), ScenarioError> {
    let s = &plan.scenario.solve;
    let tol = plan.scenario.tolerances;
    let hbar = plan.model.hbar();
    let truncations = s.sweep.clone().unwrap_or_else(|| vec![16, 32, 64]);
    let grid = grid(plan)?;
    let mut residuals = Vec::new();
    let mut deviations = Vec::new();
    let mut reference: Option<Trajectory> = None;
    for &n in &truncations {
        let c = report.timed("solve", || classical(&plan.model, n))?;
        let params = FftParams::new(s.alpha, c.solution.clone())?;
        let traj = report.timed("synthesize", || synthesize_trajectory(&params, grid))?;
        let r = report.timed("residual", || ftse_residual(&traj, &c.ham, s.alpha, hbar))?;
        report.push(Check::at_most(format!("ftse_residual_n{n}"), r, tol.ftse_residual));
        residuals.push((n as f64, r));
        if s.oracle {
            if reference.is_none() {
                reference = Some(report.timed("oracle", || direct(&c, s.alpha, hbar, grid))?);
            }
            let d = traj.max_distance(reference.as_ref().unwrap());
            report.push(Check::at_most(format!("oracle_deviation_n{n}"), d, tol.oracle_deviation));
            deviations.push((n as f64, d));
        }
    }
    report.push(decreasing("ftse_residual_decreasing", &residuals));
    report.tables.insert("ftse_residual".into(), residuals.iter().map(|&(a, b)| [a, b]).collect());
    write_atomic(&plan.out_dir.join("residual.csv"), residual_csv(&residuals).as_bytes())?;
    if s.oracle {
        report.push(decreasing("oracle_deviation_decreasing", &deviations));
        report.tables.insert("oracle_deviation".into(), deviations.iter().map(|&(a, b)| [a, b]).collect());
        write_atomic(&plan.out_dir.join("oracle.csv"), residual_csv(&deviations).as_bytes())?;
    }
    Ok(())
}

/// Strict decrease along the sweep, except between values already at the floor.
fn decreasing(name: &str, rows: &[(f64, f64)]) -> Check {
    let ratio = rows.windows(2).map(|w| w[1].1 / w[0].1).fold(0.0, f64::max);
    let ok = rows.windows(2).all(|w| w[1].1 < w[0].1 || (w[0].1 <= RESIDUAL_FLOOR && w[1].1 <= RESIDUAL_FLOOR));
    let mut c = Check::at_most(name, ratio, 1.0).with_detail(format!("{rows:?}"));
    c.passed = ok;
    c
}
