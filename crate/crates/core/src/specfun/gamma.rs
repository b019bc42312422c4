use std::f64::consts::PI;

pub use statrs::function::gamma::{gamma, ln_gamma};

/// Reciprocal gamma function 1/Γ(x), finite for every real `x`.
///
/// Zero at the poles of Γ; falls back to log-space and the reflection formula
/// where Γ itself over- or underflows.
pub fn rgamma(x: f64) -> f64 {
    if x == x.floor() {
        if x <= 0.0 {
            return 0.0;
        }
        if x <= 21.0 {
            // exact reciprocal factorial keeps E_{α,β}(0) = 1/Γ(β) exact at β = 1
            let mut f = 1.0;
            for k in 2..x as u32 {
                f *= k as f64;
            }
            return 1.0 / f;
        }
    }
    if x > 170.0 {
        return (-ln_gamma(x)).exp();
    }
    if x < -170.0 {
        // 1/Γ(x) = Γ(1 - x) sin(πx) / π
        let s = (PI * x).sin();
        return s.signum() * (ln_gamma(1.0 - x) + s.abs().ln() - PI.ln()).exp();
    }
    1.0 / gamma(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reciprocal_gamma_values() {
        assert!((rgamma(1.5) - 2.0 / PI.sqrt()).abs() < 1e-14);
        assert_eq!(rgamma(0.0), 0.0);
        assert_eq!(rgamma(-3.0), 0.0);
        // Γ(-0.5) = -2√π
        assert!((rgamma(-0.5) + 1.0 / (2.0 * PI.sqrt())).abs() < 1e-14);
        assert!((rgamma(170.5) * 5.562_092_414_56e305 - 1.0).abs() < 1e-10);
        assert!(rgamma(171.5) > 0.0);
    }
}
