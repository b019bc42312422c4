//! Subordination kernel K(xi, t): normalisation, mean operational time and
//! reconstruction of E_alpha(i a t^alpha) from unitary phases.

use fracfloquet::ffloquet::{default_xi_max, subordination_kernel, KernelOptions};
use fracfloquet::specfun::{ml, rgamma};
use num_complex::Complex64 as C64;

fn main() -> fracfloquet::Result<()> {
    let t = 1.0;
    for alpha in [0.4, 0.6, 0.8] {
        let k = subordination_kernel(t, alpha, default_xi_max(t, alpha), 3000, KernelOptions::default())?;
        println!(
            "alpha {alpha}: mass {:.6} mean {:.4} (t^a/Gamma(1+a) = {:.4}) z-window {}",
            k.mass(),
            k.mean(),
            t.powf(alpha) * rgamma(1.0 + alpha),
            k.z_window
        );
        for a in [-4.0, -1.0, 2.0, 5.0] {
            let want = ml(alpha, 1.0, C64::new(0.0, a * t.powf(alpha)))?;
            println!("    a = {a:+}: rel err {:.2e}", (k.transform(a) - want).norm() / want.norm());
        }
    }
    Ok(())
}
