//! Bosonized supersymmetric-quantum-mechanics variants built on the
//! Fock-space representation: parasupersymmetric QM of order p = λ−1,
//! pseudosupersymmetric QM and order-two orthosupersymmetric QM (both at
//! λ = 3).

mod charges;
mod ortho;
mod pseudo;
mod pssqm;

pub use charges::{build_charge_set, find_mixed_relations, ChargeSet, MixedRelation};
pub use ortho::{ortho_spectrum, OrthoRealization};
pub use pseudo::{equally_spaced_r_mu, pseudo_spectrum, PseudoFamily, PseudoRealization};
pub use pssqm::{
    pssqm_ground_bound, pssqm_ground_energy, pssqm_ground_energy_parity_form, pssqm_r_coeffs,
    pssqm_special_case, pssqm_spectrum, PssqmRealization, PssqmSpecialCase, PssqmSpectrum,
};

use crate::fock::CMat;
use num_complex::Complex64;

/// Multiply a slice of matrices left to right; `dim` sizes the identity
/// for an empty product.
pub(crate) fn product(dim: usize, factors: &[&CMat]) -> CMat {
    let mut acc = CMat::identity(dim, dim);
    for f in factors {
        acc *= *f;
    }
    acc
}

pub(crate) fn matrix_power(m: &CMat, k: usize) -> CMat {
    let mut acc = CMat::identity(m.nrows(), m.ncols());
    for _ in 0..k {
        acc *= m;
    }
    acc
}

pub(crate) fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}
