//! Shared fixtures for the criterion benchmarks.

use clext_core::{AlgebraParams, FockRep};

/// A representative λ = 3 algebra with a nondegenerate H_0 spectrum.
pub fn lambda3_params() -> AlgebraParams {
    AlgebraParams::new(3, &[1.0, 0.0]).expect("valid parameters")
}

pub fn lambda3_rep(dim: usize) -> FockRep {
    FockRep::build(&lambda3_params(), dim).expect("Fock conditions hold")
}
