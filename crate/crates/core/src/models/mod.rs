//! Concrete driven systems: the scalar toy model H0 cos ωt and a particle in
//! a driven potential V(x) cos ωt on a Dirichlet box.

pub mod spatial;
pub mod toy;

pub use spatial::{
    spatial_assemble, spatial_solve, spatial_solve_with, HarmonicField, Potential, SpatialModel, SpatialSolution, SpatialSolveOptions,
};
pub use toy::{toy_classical_state, toy_coefficients, toy_fft_state, toy_tail_mass, ToyModel};
