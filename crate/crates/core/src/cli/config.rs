//! Scenario files.
//!
//! A scenario is a TOML document with four sections:
//!
//! ```toml
//! [model]
//! kind = "toy"          # toy | spatial | custom-modes
//! e0 = 1.0
//! omega = 1.0
//!
//! [solve]
//! alpha = 0.8
//! truncation = 32
//! steps_per_period = 1024
//! periods = 2.0
//!
//! [output]
//! dir = "out"
//!
//! [tolerances]
//! ftse_residual = 1e-2
//! ```
//!
//! Everything is validated into a [`Plan`] before any numerics run.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::floquet::FourierHamiltonian;
use crate::models::{Potential, SpatialModel, ToyModel};

use super::ScenarioError;

fn one() -> f64 {
    1.0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default)]
    pub name: Option<String>,
    pub model: ModelConfig,
    pub solve: SolveConfig,
    #[serde(default)]
    pub output: OutputConfig,
    #[serde(default)]
    pub tolerances: Tolerances,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ModelConfig {
    /// Scalar H(t) = e0 cos ωt.
    Toy {
        e0: f64,
        #[serde(default = "one")]
        hbar: f64,
        omega: f64,
    },
    Spatial {
        mass: f64,
        x_min: f64,
        x_max: f64,
        points: usize,
        potential: Potential,
        #[serde(default = "one")]
        hbar: f64,
        omega: f64,
        /// Index of the synthesized eigenpair, counted upward from the shift.
        #[serde(default)]
        pair: usize,
        #[serde(default)]
        shift: Option<f64>,
    },
    /// Explicit Fourier modes h(m) as real and imaginary row-major matrices.
    CustomModes {
        omega: f64,
        #[serde(default = "one")]
        hbar: f64,
        dim: usize,
        modes: Vec<ModeEntry>,
        /// Index of the synthesized zone eigenpair.
        #[serde(default)]
        state: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModeEntry {
    pub m: i64,
    pub re: Vec<Vec<f64>>,
    #[serde(default)]
    pub im: Option<Vec<Vec<f64>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveConfig {
    pub alpha: f64,
    pub truncation: usize,
    #[serde(default = "default_steps")]
    pub steps_per_period: usize,
    /// Horizon in periods.
    #[serde(default = "default_periods")]
    pub periods: f64,
    /// Compare with the direct fractional integrator on the same grid.
    #[serde(default)]
    pub oracle: bool,
    /// Truncations visited by `sweep`.
    #[serde(default)]
    pub sweep: Option<Vec<usize>>,
}

fn default_steps() -> usize {
    1024
}

fn default_periods() -> f64 {
    2.0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default = "default_dir")]
    pub dir: PathBuf,
    #[serde(default = "yes")]
    pub trajectory: bool,
}

fn default_dir() -> PathBuf {
    PathBuf::from("out")
}

fn yes() -> bool {
    true
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self { dir: default_dir(), trajectory: true }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    /// Lattice eigen-equation residual of the classical solution.
    pub floquet_residual: f64,
    /// Relative residual of the fractional equation.
    pub ftse_residual: f64,
    /// |Ψ − e^{−iεt} u(t)| at α = 1.
    pub classical_reduction: f64,
    /// Max deviation from the direct integrator.
    pub oracle_deviation: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { floquet_residual: 1e-8, ftse_residual: 1e-2, classical_reduction: 1e-9, oracle_deviation: 1e-3 }
    }
}

/// A validated scenario, ready to run.
#[derive(Clone, Debug)]
pub struct Plan {
    pub scenario: Scenario,
    pub model: PlannedModel,
    pub out_dir: PathBuf,
}

#[derive(Clone, Debug)]
pub enum PlannedModel {
    Toy(ToyModel),
    Spatial { model: SpatialModel, pair: usize, shift: Option<f64> },
    Custom { ham: FourierHamiltonian, hbar: f64, state: usize },
}

impl PlannedModel {
    pub fn hbar(&self) -> f64 {
        match self {
            PlannedModel::Toy(tm) => tm.hbar,
            PlannedModel::Spatial { model, .. } => model.hbar,
            PlannedModel::Custom { hbar, .. } => *hbar,
        }
    }

    pub fn omega(&self) -> f64 {
        match self {
            PlannedModel::Toy(tm) => tm.omega,
            PlannedModel::Spatial { model, .. } => model.omega,
            PlannedModel::Custom { ham, .. } => ham.omega,
        }
    }

    pub fn period(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.omega()
    }
}

impl Scenario {
    pub fn from_toml(text: &str) -> Result<Self, ScenarioError> {
        toml::from_str(text).map_err(|e| {
            let at = e.span().map(|s| line_col(text, s.start)).map(|(l, c)| format!(" at line {l}, column {c}"));
            ScenarioError::Parse(format!("{}{}", e.message(), at.unwrap_or_default()))
        })
    }

    pub fn load(path: &Path) -> Result<Self, ScenarioError> {
        let text = std::fs::read_to_string(path).map_err(|e| ScenarioError::Io(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    /// Checks every field and builds the model objects; `out` overrides
    /// `output.dir`.
    pub fn validate(self, out: Option<&Path>) -> Result<Plan, ScenarioError> {
        let s = &self.solve;
        if !(s.alpha > 0.0 && s.alpha <= 1.0) {
            return invalid("solve.alpha", format!("{} is outside (0, 1]", s.alpha));
        }
        if s.truncation == 0 {
            return invalid("solve.truncation", "must be at least 1");
        }
        if s.steps_per_period < 16 {
            return invalid("solve.steps_per_period", format!("{} is below 16", s.steps_per_period));
        }
        if !(s.periods > 0.0 && s.periods.is_finite()) {
            return invalid("solve.periods", format!("{} must be positive", s.periods));
        }
        if let Some(list) = &s.sweep {
            if list.is_empty() || list.contains(&0) {
                return invalid("solve.sweep", "needs at least one positive truncation");
            }
        }
        let t = &self.tolerances;
        for (field, v) in [
            ("tolerances.floquet_residual", t.floquet_residual),
            ("tolerances.ftse_residual", t.ftse_residual),
            ("tolerances.classical_reduction", t.classical_reduction),
            ("tolerances.oracle_deviation", t.oracle_deviation),
        ] {
            if !(v > 0.0) {
                return invalid(field, format!("{v} must be positive"));
            }
        }

        let model = match &self.model {
            ModelConfig::Toy { e0, hbar, omega } => {
                positive("model.hbar", *hbar)?;
                positive("model.omega", *omega)?;
                if !e0.is_finite() {
                    return invalid("model.e0", "must be finite");
                }
                let tm = ToyModel::new(*e0, *hbar, *omega).map_err(|e| field_err("model", e))?;
                let need = (2.0 * tm.ratio().abs()).ceil() as usize;
                for n in std::iter::once(s.truncation).chain(s.sweep.iter().flatten().copied()) {
                    if n < need {
                        return invalid("solve.truncation", format!("N = {n} is below 2 e0/(ħω) = {need}"));
                    }
                }
                PlannedModel::Toy(tm)
            }
            ModelConfig::Spatial { mass, x_min, x_max, points, potential, hbar, omega, pair, shift } => {
                positive("model.mass", *mass)?;
                positive("model.hbar", *hbar)?;
                positive("model.omega", *omega)?;
                if *points < SpatialModel::MIN_POINTS {
                    return invalid("model.points", format!("{points} is below {}", SpatialModel::MIN_POINTS));
                }
                if s.truncation < 2 {
                    return invalid("solve.truncation", "spatial model needs N >= 2");
                }
                let model = SpatialModel::new(*mass, (*x_min, *x_max), *points, potential, *hbar, *omega)
                    .map_err(|e| field_err("model", e))?;
                PlannedModel::Spatial { model, pair: *pair, shift: *shift }
            }
            ModelConfig::CustomModes { omega, hbar, dim, modes, state } => {
                positive("model.hbar", *hbar)?;
                positive("model.omega", *omega)?;
                if *dim == 0 {
                    return invalid("model.dim", "must be at least 1");
                }
                if *state >= *dim {
                    return invalid("model.state", format!("{state} is out of range for dimension {dim}"));
                }
                let mut map = BTreeMap::new();
                for (i, m) in modes.iter().enumerate() {
                    let field = format!("model.modes[{i}]");
                    let re = matrix(&format!("{field}.re"), &m.re, *dim)?;
                    let im = match &m.im {
                        Some(im) => matrix(&format!("{field}.im"), im, *dim)?,
                        None => DMatrix::zeros(*dim, *dim),
                    };
                    let h = DMatrix::from_fn(*dim, *dim, |r, c| C64::new(re[(r, c)], im[(r, c)]));
                    if map.insert(m.m, h).is_some() {
                        return invalid(&field, format!("duplicate mode m = {}", m.m));
                    }
                }
                let ham = FourierHamiltonian::new(*omega, map).map_err(|e| field_err("model.modes", e))?;
                PlannedModel::Custom { ham, hbar: *hbar, state: *state }
            }
        };
        let out_dir = out.map(Path::to_path_buf).unwrap_or_else(|| self.output.dir.clone());
        Ok(Plan { scenario: self, model, out_dir })
    }
}

fn matrix(field: &str, rows: &[Vec<f64>], dim: usize) -> Result<DMatrix<f64>, ScenarioError> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return invalid(field, format!("expected a {dim}x{dim} matrix"));
    }
    if rows.iter().flatten().any(|v| !v.is_finite()) {
        return invalid(field, "entries must be finite");
    }
    Ok(DMatrix::from_fn(dim, dim, |r, c| rows[r][c]))
}

fn positive(field: &str, v: f64) -> Result<(), ScenarioError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        invalid(field, format!("{v} must be positive"))
    }
}

fn invalid<T>(field: &str, msg: impl Into<String>) -> Result<T, ScenarioError> {
    Err(ScenarioError::Validation { field: field.to_string(), message: msg.into() })
}

fn field_err(field: &str, e: crate::Error) -> ScenarioError {
    ScenarioError::Validation { field: field.to_string(), message: e.to_string() }
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rfind('\n').map_or(before.len(), |p| before.len() - p - 1) + 1;
    (line, col)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOY: &str = r#"
[model]
kind = "toy"
e0 = 1.0
omega = 1.0

[solve]
alpha = 0.8
truncation = 16
"#;

    #[test]
    fn parses_minimal_toy() {
        let s = Scenario::from_toml(TOY).unwrap();
        assert_eq!(s.solve.steps_per_period, 1024);
        assert_eq!(s.tolerances, Tolerances::default());
        let plan = s.validate(None).unwrap();
        assert!(matches!(plan.model, PlannedModel::Toy(_)));
        assert_eq!(plan.out_dir, PathBuf::from("out"));
    }

    #[test]
    fn missing_alpha_is_a_parse_error_with_location() {
        let text = TOY.replace("alpha = 0.8\n", "");
        match Scenario::from_toml(&text) {
            Err(ScenarioError::Parse(msg)) => {
                assert!(msg.contains("alpha"), "{msg}");
                assert!(msg.contains("line"), "{msg}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = TOY.replace("truncation = 16", "truncation = 16\nalpah = 1");
        assert!(matches!(Scenario::from_toml(&text), Err(ScenarioError::Parse(_))));
    }

    #[test]
    fn validation_names_the_field() {
        let bad = Scenario::from_toml(&TOY.replace("alpha = 0.8", "alpha = 1.5")).unwrap();
        match bad.validate(None) {
            Err(ScenarioError::Validation { field, .. }) => assert_eq!(field, "solve.alpha"),
            other => panic!("{other:?}"),
        }
        let short = Scenario::from_toml(&TOY.replace("e0 = 1.0", "e0 = 20.0")).unwrap();
        match short.validate(None) {
            Err(ScenarioError::Validation { field, .. }) => assert_eq!(field, "solve.truncation"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn custom_modes_must_be_hermitian() {
        let text = r#"
[model]
kind = "custom-modes"
omega = 1.0
dim = 2
modes = [
  { m = 0, re = [[0.5, 0.1], [0.1, -0.5]] },
  { m = 1, re = [[0.0, 0.2], [0.0, 0.0]] },
]

[solve]
alpha = 1.0
truncation = 8
"#;
        let s = Scenario::from_toml(text).unwrap();
        assert!(matches!(s.validate(None), Err(ScenarioError::Validation { .. })));
    }

    #[test]
    fn spatial_potential_catalog() {
        let text = r#"
[model]
kind = "spatial"
mass = 1.0
x_min = 0.0
x_max = 6.283185307179586
points = 32
omega = 2.0
potential = { kind = "cosine", v0 = 0.5, k = 1.0 }

[solve]
alpha = 0.8
truncation = 4
"#;
        let plan = Scenario::from_toml(text).unwrap().validate(Some(Path::new("elsewhere"))).unwrap();
        assert_eq!(plan.out_dir, PathBuf::from("elsewhere"));
        match plan.model {
            PlannedModel::Spatial { model, .. } => assert_eq!(model.points(), 32),
            other => panic!("{other:?}"),
        }
    }
}
