//! C_λ-extended oscillator algebras and their quantum-mechanical
//! applications, verified numerically on truncated Fock-space matrices.
//!
//! The crate covers:
//!
//! - [`algebra`]: the parameter space (α, β, γ, β̄ tables) and the scalar
//!   structure/commutator functions of the number-operator realization;
//! - [`rep`] and [`tables`]: closed-form classification of the unitary
//!   irreducible representations (infinite-dimensional bounded-from-below
//!   vs finite-dimensional), normalization coefficients, and the
//!   machine-checkable classification tables for λ = 2, 3, 4;
//! - [`fock`]: dense matrix representations of all generators with
//!   residual checks of the defining relations, Casimir identities and the
//!   oscillator Hamiltonian spectrum;
//! - [`susy`]: bosonized parasupersymmetric quantum mechanics of order
//!   p = λ−1, pseudosupersymmetric QM and order-two orthosupersymmetric QM
//!   (λ = 3), with their conserved charges and spectra;
//! - [`deform`]: the three q-deformed families admitting Casimir operators
//!   analogous to the undeformed ones, including the deformed
//!   Calogero-Vasiliev algebra.

pub mod algebra;
pub mod deform;
pub mod error;
pub mod fock;
pub mod rep;
pub mod report;
pub mod sampling;
pub mod spectrum;
pub mod susy;
pub mod tables;

pub use algebra::{alphas_from_kappas, kappas_from_alphas, AlgebraParams, KappaVector, TOL_EXACT};
pub use error::{ClextError, Result};
pub use fock::{h0_spectrum, CMat, CasimirSet, FockRep};
pub use rep::{
    classify_gdoa, classify_oracle, fock_exists, lambda_seq, map_general_unirrep, normalization,
    normalization_gamma_form, GeneralUnirrepDescriptor, UnirrepDescriptor, UnirrepKind,
};
pub use report::{CheckRow, RelationReport};
pub use spectrum::{EnergyClass, Spectrum, SpectrumLevel, DEGENERACY_TOL};
pub use tables::{table_report, Constraint, ConstraintOp, TableRow};
