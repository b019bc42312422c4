//! Bessel functions by Miller recurrence and the toy-model Floquet
//! coefficients built from them.

use fracfloquet::floquet::lattice_eigen_residual;
use fracfloquet::models::{toy_coefficients, toy_tail_mass, ToyModel};
use fracfloquet::specfun::{bessel_j, bessel_j_sequence, BesselOrder};
use num_complex::Complex64 as C64;

fn main() -> fracfloquet::Result<()> {
    let z: f64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(1.0);
    let seq = bessel_j_sequence(12, C64::new(z, 0.0))?;
    for (n, j) in seq.iter().enumerate() {
        println!("J_{n:<2}({z}) = {:+.15e}", j.re);
    }
    let sum: f64 = seq[0].re.powi(2) + 2.0 * seq[1..].iter().map(|j| j.re.powi(2)).sum::<f64>();
    println!("J_0^2 + 2 sum J_n^2 = {sum:.15}");
    println!("J_-3 = {:+.15e}", bessel_j(BesselOrder::new(-3, C64::new(z, 0.0)))?.re);

    let tm = ToyModel::new(z, 1.0, 1.0)?;
    let sol = toy_coefficients(&tm, 24)?;
    println!("\ntoy model e0/(hbar omega) = {}: tail mass beyond N=24 {:.1e}", tm.ratio(), toy_tail_mass(tm.ratio(), 24)?);
    for n in -3..=3 {
        println!("C_{n:+} = {:+.12e}", sol.coeff(n).unwrap()[0].re);
    }
    println!("lattice eigen-equation residual {:.2e}", lattice_eigen_residual(&tm.hamiltonian()?, &sol));
    Ok(())
}
