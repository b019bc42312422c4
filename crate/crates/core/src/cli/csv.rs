//! Plot-ready CSV files. Numbers use the shortest representation that
//! round-trips to the same f64.

use std::fmt::Write as _;
use std::path::Path;

use crate::ffloquet::SubordinationKernel;
use crate::fraccalc::IdentityReport;
use crate::grid::Trajectory;

use super::ScenarioError;

/// Shortest round-trip decimal.
pub fn num(x: f64) -> String {
    format!("{x:?}")
}

/// `t,idx,re,im`, one row per time and component.
pub fn trajectory_csv(traj: &Trajectory) -> String {
    let mut s = String::from("t,idx,re,im\n");
    for (k, state) in traj.states.iter().enumerate() {
        let t = num(traj.grid.t(k));
        for (i, v) in state.iter().enumerate() {
            let _ = writeln!(s, "{t},{i},{},{}", num(v.re), num(v.im));
        }
    }
    s
}

/// `param,value`.
pub fn residual_csv(rows: &[(f64, f64)]) -> String {
    let mut s = String::from("param,value\n");
    for (p, v) in rows {
        let _ = writeln!(s, "{},{}", num(*p), num(*v));
    }
    s
}

/// `xi,re,im`.
pub fn kernel_csv(k: &SubordinationKernel) -> String {
    let mut s = String::from("xi,re,im\n");
    for (xi, v) in k.xi_grid.iter().zip(&k.values) {
        let _ = writeln!(s, "{},{},{}", num(*xi), num(v.re), num(v.im));
    }
    s
}

/// `t,lhs_re,lhs_im,rhs_re,rhs_im,abs_err`.
pub fn identity_csv(r: &IdentityReport) -> String {
    let mut s = String::from("t,lhs_re,lhs_im,rhs_re,rhs_im,abs_err\n");
    for row in &r.rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{}",
            num(row.t),
            num(row.lhs.re),
            num(row.lhs.im),
            num(row.rhs.re),
            num(row.rhs.im),
            num(row.abs_err)
        );
    }
    s
}

/// Writes through a sibling temporary file so readers never see a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), ScenarioError> {
    let io = |e: std::io::Error| ScenarioError::Io(format!("{}: {e}", path.display()));
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(io)?;
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".partial");
    std::fs::write(&tmp, bytes).map_err(io)?;
    std::fs::rename(&tmp, path).map_err(io)
}
