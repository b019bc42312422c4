//! Fractional Adams–Bashforth–Moulton integrator for Caputo systems
//!
//! D^α y(t) = f(t, y), y(0) = y0, 0 < α ≤ 1,
//!
//! in the predictor-corrector form of Diethelm, Ford and Freed. Every step
//! convolves the full history of f with product-integration weights, so the
//! cost is quadratic in the number of steps. At α = 1 the weights are
//! constant and the history sums are carried as running totals.
//!
//! The module knows nothing about Floquet theory; it only needs the
//! right-hand side.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use crate::error::{domain, Error, Result};
use crate::fraccalc::ProductWeights;
use crate::grid::{TimeGrid, Trajectory};
use crate::specfun::gamma;

pub type Rhs = Arc<dyn Fn(f64, &DVector<C64>) -> DVector<C64> + Send + Sync>;

pub struct FdeProblem {
    pub rhs: Rhs,
    pub alpha: f64,
    pub psi0: DVector<C64>,
    pub grid: TimeGrid,
}

impl std::fmt::Debug for FdeProblem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FdeProblem")
            .field("alpha", &self.alpha)
            .field("psi0", &self.psi0)
            .field("grid", &self.grid)
            .finish_non_exhaustive()
    }
}

impl FdeProblem {
    pub fn new(rhs: Rhs, alpha: f64, psi0: DVector<C64>, grid: TimeGrid) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return domain(format!("alpha = {alpha} must lie in (0, 1]"));
        }
        if grid.len < 2 {
            return Err(Error::GridTooSmall { needed: 2, got: grid.len });
        }
        if grid.t0 != 0.0 {
            return domain("the Caputo lower terminal is t = 0; grid must start there");
        }
        Ok(Self { rhs, alpha, psi0, grid })
    }

    /// i ħ^α D^α Ψ = H(t) Ψ, i.e. f(t, Ψ) = −i ħ^{−α} H(t) Ψ.
    pub fn schrodinger(
        ham: impl Fn(f64) -> DMatrix<C64> + Send + Sync + 'static,
        alpha: f64,
        hbar: f64,
        psi0: DVector<C64>,
        grid: TimeGrid,
    ) -> Result<Self> {
        if !(hbar > 0.0) {
            return domain(format!("hbar = {hbar} must be positive"));
        }
        let factor = C64::new(0.0, -hbar.powf(-alpha));
        let d = psi0.len();
        let rhs: Rhs = Arc::new(move |t, y| {
            let h = ham(t);
            assert_eq!(h.nrows(), d, "Hamiltonian dimension");
            h * y * factor
        });
        Self::new(rhs, alpha, psi0, grid)
    }

    /// Same problem on a grid with `factor` times as many steps.
    fn refined(&self, factor: usize) -> Result<Self> {
        let steps = (self.grid.len - 1) * factor;
        let grid = TimeGrid::new(0.0, self.grid.h / factor as f64, steps + 1)?;
        Self::new(self.rhs.clone(), self.alpha, self.psi0.clone(), grid)
    }
}

/// How much of the memory the convolution sums see.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum History {
    Full,
    /// Only the most recent `n` samples of f enter the sums.
    Window(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FdeOptions {
    pub corrector_iterations: usize,
    pub history: History,
}

impl Default for FdeOptions {
    fn default() -> Self {
        Self { corrector_iterations: 1, history: History::Full }
    }
}

pub fn solve_ftse_direct(p: &FdeProblem) -> Result<Trajectory> {
    solve_with(p, FdeOptions::default())
}

pub fn solve_with(p: &FdeProblem, opts: FdeOptions) -> Result<Trajectory> {
    let (alpha, d, n) = (p.alpha, p.psi0.len(), p.grid.len);
    let h = p.grid.h;
    let w = ProductWeights::new(n, alpha);
    let cp = h.powf(alpha) / gamma(alpha + 1.0);
    let cc = h.powf(alpha) / gamma(alpha + 2.0);
    let unit = alpha == 1.0 && opts.history == History::Full;

    let mut f_hist: Vec<C64> = Vec::with_capacity(n * d);
    let mut states = Vec::with_capacity(n);
    states.push(p.psi0.clone());
    let f0 = (p.rhs)(p.grid.t(0), &p.psi0);
    check_dim(&f0, d)?;
    f_hist.extend(f0.iter());

    // running Σ_{j≤k} f_j for the α = 1 shortcut
    let mut running: Vec<C64> = f0.iter().copied().collect();

    let mut pred = vec![C64::new(0.0, 0.0); d];
    let mut corr = vec![C64::new(0.0, 0.0); d];
    for k in 0..n - 1 {
        let first = match opts.history {
            History::Full => 0,
            History::Window(m) => (k + 1).saturating_sub(m),
        };
        pred.iter_mut().for_each(|x| *x = C64::new(0.0, 0.0));
        corr.iter_mut().for_each(|x| *x = C64::new(0.0, 0.0));
        if unit {
            // rectangle weights are 1; trapezoid weights are 1 at t0 and 2 inside
            for i in 0..d {
                pred[i] = running[i];
                corr[i] = 2.0 * running[i] - f_hist[i];
            }
        } else {
            for j in first..=k {
                let wp = w.rect(k - j);
                let wc = if j == 0 { w.trap_start(k + 1) } else { w.trap(k + 1 - j) };
                let fj = &f_hist[j * d..(j + 1) * d];
                for i in 0..d {
                    pred[i] += wp * fj[i];
                    corr[i] += wc * fj[i];
                }
            }
        }
        let t1 = p.grid.t(k + 1);
        let y_pred = DVector::from_iterator(d, (0..d).map(|i| p.psi0[i] + cp * pred[i]));
        let mut y = y_pred;
        for _ in 0..opts.corrector_iterations.max(1) {
            let fp = (p.rhs)(t1, &y);
            check_dim(&fp, d)?;
            y = DVector::from_iterator(d, (0..d).map(|i| p.psi0[i] + cc * (corr[i] + fp[i])));
        }
        let f1 = (p.rhs)(t1, &y);
        check_dim(&f1, d)?;
        if !y.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
            return Err(Error::Unstable { change: f64::INFINITY, limit: 0.0 });
        }
        for i in 0..d {
            running[i] += f1[i];
        }
        f_hist.extend(f1.iter());
        states.push(y);
    }
    Trajectory::new(p.grid, states)
}

fn check_dim(v: &DVector<C64>, d: usize) -> Result<()> {
    if v.len() != d {
        return Err(Error::Dimension(format!("rhs returned {} components, state has {d}", v.len())));
    }
    Ok(())
}

/// Outcome of a solve paired with its step-halved companion.
#[derive(Clone, Debug)]
pub struct CheckedSolution {
    pub trajectory: Trajectory,
    /// ‖Ψ_h(T) − Ψ_{h/2}(T)‖.
    pub endpoint_change: f64,
}

/// Solve at h and h/2; fail with [`Error::Unstable`] if the endpoints differ
/// by more than 10·tol. Returns the finer trajectory.
pub fn solve_checked(p: &FdeProblem, tol: f64) -> Result<CheckedSolution> {
    let coarse = solve_ftse_direct(p)?;
    let fine_p = p.refined(2)?;
    let fine = solve_ftse_direct(&fine_p)?;
    let change = (coarse.last().unwrap() - fine.last().unwrap()).norm();
    if change > 10.0 * tol {
        return Err(Error::Unstable { change, limit: 10.0 * tol });
    }
    Ok(CheckedSolution { trajectory: fine, endpoint_change: change })
}

/// Endpoint errors against the finest level of a halving sequence.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceStudy {
    /// (h, ‖Ψ_h(T) − Ψ_ref(T)‖), coarsest first.
    pub rows: Vec<(f64, f64)>,
    pub reference_h: f64,
}

impl ConvergenceStudy {
    /// log2 of successive error ratios.
    pub fn observed_orders(&self) -> Vec<f64> {
        self.rows.windows(2).map(|w| (w[0].1 / w[1].1).log2()).collect()
    }
}

/// Solve on `levels` successively halved grids plus a reference level two
/// halvings finer than the last, built with `make(grid)`.
pub fn convergence_study(
    make: impl Fn(TimeGrid) -> Result<FdeProblem>,
    horizon: f64,
    coarse_steps: usize,
    levels: usize,
) -> Result<ConvergenceStudy> {
    let ends = (0..levels + 2)
        .map(|l| {
            let grid = TimeGrid::from_horizon(horizon, coarse_steps << l)?;
            let traj = solve_ftse_direct(&make(grid)?)?;
            Ok((grid.h, traj.last().unwrap().clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    let (href, reference) = ends.last().unwrap().clone();
    let rows = ends[..levels].iter().map(|(h, y)| (*h, (y - &reference).norm())).collect();
    Ok(ConvergenceStudy { rows, reference_h: href })
}
