//! Quasienergies of a driven two-level system from the truncated Floquet
//! matrix, with the fractional synthesis of each state.

use std::collections::BTreeMap;

use fracfloquet::ffloquet::{synthesize, FftParams};
use fracfloquet::floquet::{solve, FourierHamiltonian};
use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

fn main() -> fracfloquet::Result<()> {
    let c = |x: f64| C64::new(x, 0.0);
    let sz = DMatrix::from_row_slice(2, 2, &[c(0.5), c(0.0), c(0.0), c(-0.5)]);
    let sx = DMatrix::from_row_slice(2, 2, &[c(0.0), c(0.4), c(0.4), c(0.0)]);
    let ham = FourierHamiltonian::new(1.7, BTreeMap::from([(-1, sx.clone()), (0, sz), (1, sx)]))?;
    for n in [4, 8, 16, 32] {
        let sols = solve(&ham, n, 1.0)?;
        let eps: Vec<String> = sols.iter().map(|s| format!("{:+.12}", s.epsilon)).collect();
        let res = sols.iter().filter_map(|s| s.residual).fold(0.0, f64::max);
        println!("N = {n:2}: quasienergies {}  residual {res:.1e}", eps.join(" "));
    }
    let sols = solve(&ham, 32, 1.0)?;
    let t = 2.0 * ham.period();
    for s in &sols {
        for alpha in [1.0, 0.9, 0.7] {
            let psi = synthesize(&FftParams::new(alpha, s.clone())?, t)?;
            println!("eps {:+.6} alpha {alpha}: |Psi(2T)| = {:.6}", s.epsilon, psi.norm());
        }
    }
    Ok(())
}
