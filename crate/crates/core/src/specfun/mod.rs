//! Special functions: the two-parameter Mittag-Leffler family and Bessel
//! functions of the first kind, both for complex arguments.

mod bessel;
mod gamma;
mod mittag_leffler;

pub use bessel::{bessel_j, bessel_j_sequence, bessel_j_with_limit, BesselOrder, DEFAULT_MAX_BESSEL_ORDER};
pub use gamma::{gamma, ln_gamma, rgamma};
pub use mittag_leffler::{
    ml, ml1, mittag_leffler, mittag_leffler_laplace, mittag_leffler_series, mittag_leffler_with,
    MlfArgs, MlfConfig,
};
