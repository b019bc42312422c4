//! Uniform time grids and sampled states.

use nalgebra::DVector;
use num_complex::Complex64 as C64;

use crate::error::{domain, Error, Result};

/// Uniform grid t_k = t0 + k h, k = 0..len.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimeGrid {
    pub t0: f64,
    pub h: f64,
    pub len: usize,
}

impl TimeGrid {
    pub fn new(t0: f64, h: f64, len: usize) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return domain(format!("grid step h = {h} must be positive"));
        }
        Ok(Self { t0, h, len })
    }

    /// Grid on [0, horizon] with `steps` intervals.
    pub fn from_horizon(horizon: f64, steps: usize) -> Result<Self> {
        if steps == 0 {
            return Err(Error::GridTooSmall { needed: 2, got: 1 });
        }
        Self::new(0.0, horizon / steps as f64, steps + 1)
    }

    pub fn t(&self, k: usize) -> f64 {
        self.t0 + k as f64 * self.h
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len).map(move |k| self.t(k))
    }

    pub fn end(&self) -> f64 {
        self.t(self.len.saturating_sub(1))
    }
}

/// Complex samples f(t0 + k h) of a scalar function.
#[derive(Clone, Debug, PartialEq)]
pub struct UniformGridFn {
    pub t0: f64,
    pub h: f64,
    pub values: Vec<C64>,
}

impl UniformGridFn {
    pub const MIN_SAMPLES: usize = 3;

    pub fn new(t0: f64, h: f64, values: Vec<C64>) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return domain(format!("grid step h = {h} must be positive"));
        }
        if values.len() < Self::MIN_SAMPLES {
            return Err(Error::GridTooSmall { needed: Self::MIN_SAMPLES, got: values.len() });
        }
        Ok(Self { t0, h, values })
    }

    pub fn sample(grid: TimeGrid, f: impl Fn(f64) -> C64) -> Result<Self> {
        Self::new(grid.t0, grid.h, grid.times().map(f).collect())
    }

    pub fn grid(&self) -> TimeGrid {
        TimeGrid { t0: self.t0, h: self.h, len: self.values.len() }
    }

    pub fn t(&self, k: usize) -> f64 {
        self.t0 + k as f64 * self.h
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Grid function whose values may be undefined at some points (e.g. a
/// fractional derivative at the lower terminal).
#[derive(Clone, Debug, PartialEq)]
pub struct PartialGridFn {
    pub t0: f64,
    pub h: f64,
    pub values: Vec<Option<C64>>,
}

impl PartialGridFn {
    pub fn t(&self, k: usize) -> f64 {
        self.t0 + k as f64 * self.h
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Defined points as (t, value) pairs.
    pub fn defined(&self) -> impl Iterator<Item = (f64, C64)> + '_ {
        self.values.iter().enumerate().filter_map(|(k, v)| v.map(|v| (self.t(k), v)))
    }
}

/// State vectors Ψ(t_k) on a uniform grid.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub grid: TimeGrid,
    pub states: Vec<DVector<C64>>,
}

impl Trajectory {
    pub fn new(grid: TimeGrid, states: Vec<DVector<C64>>) -> Result<Self> {
        if states.len() != grid.len {
            return Err(Error::Dimension(format!(
                "{} states for a grid of {} points",
                states.len(),
                grid.len
            )));
        }
        if let Some(first) = states.first() {
            let d = first.len();
            if states.iter().any(|s| s.len() != d) {
                return Err(Error::Dimension("states of differing dimension".into()));
            }
        }
        Ok(Self { grid, states })
    }

    pub fn dim(&self) -> usize {
        self.states.first().map_or(0, |s| s.len())
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// One component as a scalar grid function.
    pub fn component(&self, idx: usize) -> Result<UniformGridFn> {
        UniformGridFn::new(self.grid.t0, self.grid.h, self.states.iter().map(|s| s[idx]).collect())
    }

    pub fn last(&self) -> Option<&DVector<C64>> {
        self.states.last()
    }

    /// Largest pointwise distance to another trajectory on the same grid.
    pub fn max_distance(&self, other: &Trajectory) -> f64 {
        self.states
            .iter()
            .zip(&other.states)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}
