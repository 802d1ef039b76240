//! Random algebra parameters for sweeps and property tests.

use rand::Rng;

use crate::algebra::AlgebraParams;

/// Unconstrained parameters: free α entries uniform in (-3, 3).
pub fn generic_params(lambda: usize, rng: &mut impl Rng) -> AlgebraParams {
    let free: Vec<f64> = (0..lambda - 1).map(|_| rng.gen_range(-3.0..3.0)).collect();
    AlgebraParams::new(lambda, &free).expect("finite free alphas are valid")
}

/// Parameters admitting the bosonic Fock-space representation, built by
/// sampling the structure-function values F(1), ..., F(λ−1) strictly
/// positive and reading α off their differences.
pub fn fock_params(lambda: usize, rng: &mut impl Rng) -> AlgebraParams {
    let mut beta = vec![0.0f64];
    for n in 1..lambda {
        let f_n = rng.gen_range(0.05..(n as f64 + 3.0));
        beta.push(f_n - n as f64);
    }
    let free: Vec<f64> = (0..lambda - 1).map(|mu| beta[mu + 1] - beta[mu]).collect();
    let p = AlgebraParams::new(lambda, &free).expect("finite free alphas are valid");
    debug_assert!(crate::rep::fock_exists(&p));
    p
}
