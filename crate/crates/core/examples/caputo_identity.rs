//! L1 Caputo derivative: the Mittag-Leffler eigenfunction, its convergence
//! order, and the derivative of a complex exponential in both Caputo and
//! Riemann-Liouville form.

use fracfloquet::cli::verify::caputo_error_table;
use fracfloquet::fraccalc::{exponential_identity, rl_fractional_integral, ExpDerivative};
use fracfloquet::grid::{TimeGrid, UniformGridFn};
use num_complex::Complex64 as C64;

fn main() -> fracfloquet::Result<()> {
    println!("D^0.7 E_0.7(i t^0.7) vs i E_0.7(i t^0.7), t >= 0.1");
    let rows = caputo_error_table(&[8e-3, 4e-3, 2e-3, 1e-3])?;
    for (i, r) in rows.iter().enumerate() {
        let order = if i > 0 { format!("{:.3}", (rows[i - 1][1] / r[1]).log2()) } else { "-".into() };
        println!("  h = {:.0e}  err = {:.3e}  order {order}", r[0], r[1]);
    }

    let grid = TimeGrid::from_horizon(2.0, 2000)?;
    for kind in [ExpDerivative::Caputo, ExpDerivative::RiemannLiouville] {
        let rep = exponential_identity(kind, 2.0 * std::f64::consts::PI, 0.5, grid, 0.1)?;
        println!("{kind:?} derivative of e^(i 2 pi t) vs t^-1/2 E_(1,1/2)(i 2 pi t): max dev {:.3e}", rep.max_deviation);
    }

    let f = UniformGridFn::sample(TimeGrid::from_horizon(1.0, 100)?, |t| C64::new(t, 0.0))?;
    let i = rl_fractional_integral(&f, 0.5)?;
    println!("I^0.5 t at t=1: {:.12} (exact {:.12})", i.values[100].re, 1.0 / fracfloquet::specfun::gamma(2.5));
    Ok(())
}
