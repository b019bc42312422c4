//! Point evaluations for debugging. Output uses 15 significant digits.

use num_complex::Complex64 as C64;

use crate::ffloquet::{subordination_kernel, KernelOptions};
use crate::specfun::{bessel_j, ml, BesselOrder};
use crate::Result;

/// `%.15g`-style formatting.
pub fn sig15(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..15).contains(&exp) {
        let decimals = (14 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        let s = format!("{x:.14e}");
        let (mant, e) = s.split_once('e').unwrap();
        let mant = if mant.contains('.') { mant.trim_end_matches('0').trim_end_matches('.') } else { mant };
        format!("{mant}e{e}")
    }
}

pub fn complex(z: C64) -> String {
    if z.im == 0.0 {
        sig15(z.re)
    } else {
        let sign = if z.im < 0.0 { "-" } else { "+" };
        format!("{}{sign}{}i", sig15(z.re), sig15(z.im.abs()))
    }
}

pub fn eval_mlf(alpha: f64, beta: f64, z: C64) -> Result<String> {
    ml(alpha, beta, z).map(complex)
}

pub fn eval_bessel(n: i32, z: C64) -> Result<String> {
    bessel_j(BesselOrder::new(n, z)).map(complex)
}

/// `xi value` lines of K(ξ, t) on `n_xi` midpoints of [0, xi_max].
pub fn eval_kernel(t: f64, alpha: f64, xi_max: f64, n_xi: usize) -> Result<String> {
    let k = subordination_kernel(t, alpha, xi_max, n_xi, KernelOptions::default())?;
    Ok(k.xi_grid
        .iter()
        .zip(&k.values)
        .map(|(xi, v)| format!("{} {}\n", sig15(*xi), sig15(v.re)))
        .collect())
}
