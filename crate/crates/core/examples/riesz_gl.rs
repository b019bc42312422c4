//! Symmetric Grunwald-Letnikov quadrature on periodic modes, compared with
//! the Riesz multiplier -|l|^mu.

use std::collections::BTreeMap;

use fracfloquet::fraccalc::{grunwald_letnikov_symmetric, riesz_feller_periodic, PeriodicModes};
use num_complex::Complex64 as C64;

fn main() -> fracfloquet::Result<()> {
    let period = 2.0 * std::f64::consts::PI;
    let g = PeriodicModes::new(period, BTreeMap::from([(1, C64::new(1.0, 0.0)), (3, C64::new(0.0, 0.5))]))?;
    for &(mu, cutoff) in &[(0.5, 50_000.0), (1.5, 2_000.0)] {
        let d = riesz_feller_periodic(&g, mu)?;
        let x = 0.7;
        let gl = grunwald_letnikov_symmetric(|y| g.eval(y), mu, x, cutoff, 1e-3)?;
        println!("mu = {mu}: multiplier {:.10} quadrature {:.10} |diff| {:.2e}", d.eval(x), gl, (d.eval(x) - gl).norm());
    }
    Ok(())
}
