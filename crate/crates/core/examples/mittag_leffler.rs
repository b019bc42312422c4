//! Mittag-Leffler values across the complex plane, the series/contour
//! overlap, and the elementary reductions.

use fracfloquet::specfun::{ml, mittag_leffler_laplace, mittag_leffler_series, MlfArgs};
use num_complex::Complex64 as C64;

fn main() -> fracfloquet::Result<()> {
    println!("{:>5} {:>5} {:>18} {:>42}", "alpha", "beta", "z", "E(z)");
    for &(a, b, z) in &[
        (0.5, 1.0, C64::new(-5.0, 0.0)),
        (0.8, 1.0, C64::new(0.0, 30.0)),
        (0.6, 1.6, C64::new(-40.0, 0.0)),
        (1.5, 2.5, C64::new(0.0, 7.0)),
        (1.9, 1.0, C64::new(-45.0, 0.0)),
    ] {
        let v = ml(a, b, z)?;
        println!("{a:5} {b:5} {:>18} {:>20.12e} {:+.12e}i", format!("{z}"), v.re, v.im);
    }

    // both algorithms are valid near |z| = 1
    let z = C64::from_polar(1.0, 2.0);
    let s = mittag_leffler_series(MlfArgs::new(0.7, 1.3, z))?;
    let l = mittag_leffler_laplace(MlfArgs::new(0.7, 1.3, z))?;
    println!("\nseries vs contour at {z:.3}: |diff| = {:.2e}", (s - l).norm());

    let x: f64 = 3.0;
    println!("E_1(2+i) - exp(2+i) = {:.2e}", (ml(1.0, 1.0, C64::new(2.0, 1.0))? - C64::new(2.0, 1.0).exp()).norm());
    println!("E_2(-x^2) - cos x   = {:.2e}", (ml(2.0, 1.0, C64::new(-x * x, 0.0))? - x.cos()).norm());
    println!("E_22(-x^2) - sinc x = {:.2e}", (ml(2.0, 2.0, C64::new(-x * x, 0.0))? - x.sin() / x).norm());
    Ok(())
}
