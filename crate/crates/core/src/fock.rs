//! Truncated bosonic Fock-space matrix representation.
//!
//! The representation acts on span{|0>, ..., |D-1>} with
//! a†|n> = sqrt(F(n+1)) |n+1>, N|n> = n|n>, T|n> = exp(i2πn/λ)|n>, and
//! P_μ projecting on grades n ≡ μ (mod λ). All generator matrices are
//! exact; the only truncation artifact is that a† maps the top level out
//! of the space, so operator identities are verified on the interior block
//! spanned by |0>, ..., |D−λ−1>, where any word of length ≤ λ in the
//! generators is evaluated exactly.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::algebra::AlgebraParams;
use crate::error::{ClextError, Result};
use crate::rep::fock_exists;
use crate::report::RelationReport;
use crate::spectrum::{group_spectrum, Spectrum};

pub type CMat = DMatrix<Complex64>;

pub(crate) fn commutator(a: &CMat, b: &CMat) -> CMat {
    a * b - b * a
}

/// Largest |entry| over the leading `block` × `block` submatrix.
pub(crate) fn max_abs_block(m: &CMat, block: usize) -> f64 {
    let mut max = 0.0f64;
    for j in 0..block.min(m.ncols()) {
        for i in 0..block.min(m.nrows()) {
            max = max.max(m[(i, j)].norm());
        }
    }
    max
}

pub(crate) fn diag_from(d: usize, f: impl Fn(usize) -> Complex64) -> CMat {
    CMat::from_fn(d, d, |i, j| {
        if i == j {
            f(i)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Ladder matrices for an arbitrary structure-function diagonal.
/// Returns (a†, a); a†a = diag(f(n)) requires f(n) ≥ 0 for n = 1..dim.
pub(crate) fn ladder_pair(dim: usize, f: impl Fn(usize) -> f64) -> (CMat, CMat) {
    let mut a_dag = CMat::zeros(dim, dim);
    for n in 0..dim - 1 {
        a_dag[(n + 1, n)] = Complex64::new(f(n + 1).max(0.0).sqrt(), 0.0);
    }
    let a = a_dag.adjoint();
    (a_dag, a)
}

/// Truncated matrix representation of the algebra generators in the
/// bosonic Fock space.
#[derive(Debug, Clone)]
pub struct FockRep {
    params: AlgebraParams,
    dim: usize,
    a_dag: CMat,
    a: CMat,
    n_op: CMat,
    t_op: CMat,
    projectors: Vec<CMat>,
}

impl FockRep {
    /// Build the representation; `dim` must be a positive multiple of λ and
    /// the Fock-space existence conditions must hold strictly.
    pub fn build(params: &AlgebraParams, dim: usize) -> Result<Self> {
        let lambda = params.lambda();
        if dim == 0 || !dim.is_multiple_of(lambda) {
            return Err(ClextError::InvalidParameters(format!(
                "dim {dim} is not a positive multiple of lambda {lambda}"
            )));
        }
        if !fock_exists(params) {
            return Err(ClextError::InvalidParameters(
                "Fock-space existence conditions fail (some F(n) <= 0)".into(),
            ));
        }
        let (a_dag, a) = ladder_pair(dim, |n| params.structure_function(n as i64));
        let n_op = diag_from(dim, |n| Complex64::new(n as f64, 0.0));
        let t_op = diag_from(dim, |n| {
            Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * n as f64 / lambda as f64)
        });
        let projectors: Vec<CMat> = (0..lambda)
            .map(|mu| {
                diag_from(dim, |n| {
                    if n % lambda == mu {
                        Complex64::new(1.0, 0.0)
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
            })
            .collect();
        Ok(Self {
            params: params.clone(),
            dim,
            a_dag,
            a,
            n_op,
            t_op,
            projectors,
        })
    }

    pub fn params(&self) -> &AlgebraParams {
        &self.params
    }

    pub fn lambda(&self) -> usize {
        self.params.lambda()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Size of the truncation-safe interior block.
    pub fn interior(&self) -> usize {
        self.dim - self.params.lambda()
    }

    pub fn a_dag(&self) -> &CMat {
        &self.a_dag
    }

    pub fn a(&self) -> &CMat {
        &self.a
    }

    pub fn n_op(&self) -> &CMat {
        &self.n_op
    }

    pub fn t_op(&self) -> &CMat {
        &self.t_op
    }

    pub fn projectors(&self) -> &[CMat] {
        &self.projectors
    }

    /// Projector with a cyclic index.
    pub fn projector(&self, mu: i64) -> &CMat {
        &self.projectors[self.params.residue(mu)]
    }

    fn identity(&self) -> CMat {
        CMat::identity(self.dim, self.dim)
    }

    /// Residuals of the defining relations on the interior block.
    pub fn verify_defining_relations(&self, tol: f64) -> Result<RelationReport> {
        let lambda = self.lambda();
        if self.dim < 3 * lambda {
            return Err(ClextError::TruncationTooSmall(format!(
                "need dim >= 3*lambda = {}, got {}",
                3 * lambda,
                self.dim
            )));
        }
        let block = self.interior();
        let mut report = RelationReport::new();
        let id = self.identity();

        let r = commutator(&self.n_op, &self.a_dag) - &self.a_dag;
        report.push("comm_n_adag", max_abs_block(&r, block), tol);

        let r = (0..lambda)
            .map(|mu| max_abs_block(&commutator(&self.n_op, &self.projectors[mu]), block))
            .fold(0.0, f64::max);
        report.push("comm_n_projector", r, tol);

        let r = (0..lambda)
            .map(|mu| {
                let shifted = &self.a_dag * &self.projectors[mu]
                    - self.projector(mu as i64 + 1) * &self.a_dag;
                max_abs_block(&shifted, block)
            })
            .fold(0.0, f64::max);
        report.push("adag_projector_shift", r, tol);

        let sum = self
            .projectors
            .iter()
            .fold(CMat::zeros(self.dim, self.dim), |acc, p| acc + p);
        report.push(
            "projector_resolution",
            max_abs_block(&(sum - &id), block),
            tol,
        );

        let mut ortho = 0.0f64;
        for mu in 0..lambda {
            for nu in 0..lambda {
                let prod = &self.projectors[mu] * &self.projectors[nu];
                let expect = if mu == nu {
                    self.projectors[mu].clone()
                } else {
                    CMat::zeros(self.dim, self.dim)
                };
                ortho = ortho.max(max_abs_block(&(prod - expect), block));
            }
        }
        report.push("projector_orthogonality", ortho, tol);

        let mut t_pow = self.identity();
        for _ in 0..lambda {
            t_pow = &t_pow * &self.t_op;
        }
        report.push("t_power_lambda", max_abs_block(&(t_pow - &id), block), tol);

        let g = self.g_matrix();
        let r = commutator(&self.a, &self.a_dag) - g;
        report.push("comm_a_adag", max_abs_block(&r, block), tol);

        Ok(report)
    }

    /// G(N) = I + Σ α_μ P_μ as a matrix.
    pub fn g_matrix(&self) -> CMat {
        let params = &self.params;
        diag_from(self.dim, |n| {
            Complex64::new(params.g_function(n as i64), 0.0)
        })
    }

    /// The three Casimir matrices with their identity checks: in the Fock
    /// representation C_1 = C_2 = I and C_3 = 0, and C_1 C_2^λ = I.
    pub fn casimir_matrices(&self, tol: f64) -> CasimirSet {
        let lambda = self.lambda();
        let block = self.interior();
        let id = self.identity();
        let c1 = diag_from(self.dim, |n| {
            Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * n as f64)
        });
        let c2 = diag_from(self.dim, |n| {
            Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * n as f64 / lambda as f64)
        }) * &self.t_op;
        let beta_diag = diag_from(self.dim, |n| {
            Complex64::new(self.params.beta_at(n as i64), 0.0)
        });
        let c3 = &self.n_op + beta_diag - &self.a_dag * &self.a;

        let mut report = RelationReport::new();
        report.push("c1_identity", max_abs_block(&(&c1 - &id), block), tol);
        report.push("c2_identity", max_abs_block(&(&c2 - &id), block), tol);
        report.push("c3_zero", max_abs_block(&c3, block), tol);
        let mut c2_pow = self.identity();
        for _ in 0..lambda {
            c2_pow = &c2_pow * &c2;
        }
        report.push(
            "c1_c2_pow_lambda_identity",
            max_abs_block(&(&c1 * c2_pow - &id), block),
            tol,
        );
        report.push(
            "comm_c3_a",
            max_abs_block(&commutator(&c3, &self.a), block),
            tol,
        );
        report.push(
            "comm_c3_adag",
            max_abs_block(&commutator(&c3, &self.a_dag), block),
            tol,
        );
        CasimirSet { c1, c2, c3, report }
    }

    /// Oscillator Hamiltonian H_0 = ½{a, a†} in its closed diagonal form
    /// n + γ_{n mod λ} + ½, exact at every level of the truncation.
    pub fn h0_matrix(&self) -> CMat {
        let params = &self.params;
        diag_from(self.dim, |n| {
            Complex64::new(n as f64 + params.gamma_at(n as i64) + 0.5, 0.0)
        })
    }

    /// H_0 evaluated literally as ½(aa† + a†a); corrupted by truncation on
    /// the top level, exact on the interior.
    pub fn h0_anticommutator(&self) -> CMat {
        (&self.a * &self.a_dag + &self.a_dag * &self.a) * Complex64::new(0.5, 0.0)
    }
}

/// Casimir matrices plus their identity checks.
#[derive(Debug, Clone)]
pub struct CasimirSet {
    pub c1: CMat,
    pub c2: CMat,
    pub c3: CMat,
    pub report: RelationReport,
}

/// Closed-form H_0 spectrum E_{kλ+μ} = kλ + μ + γ_μ + ½ for k = 0..=k_max,
/// with degeneracy classes grouped to 1e−9.
pub fn h0_spectrum(params: &AlgebraParams, k_max: usize) -> Result<Spectrum> {
    if !fock_exists(params) {
        return Err(ClextError::InvalidParameters(
            "Fock-space existence conditions fail".into(),
        ));
    }
    let lambda = params.lambda();
    let window = (k_max + 1) * lambda;
    let gamma_spread = params.gamma().iter().fold(0.0f64, |m, g| m.max(g.abs()));
    let margin = lambda * (2.0 * gamma_spread / lambda as f64 + 2.0).ceil() as usize;
    let energies: Vec<f64> = (0..window + margin)
        .map(|n| n as f64 + params.gamma_at(n as i64) + 0.5)
        .collect();
    Ok(group_spectrum(lambda, &energies, window))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::TOL_EXACT;
    use approx::assert_abs_diff_eq;

    fn params(lambda: usize, free: &[f64]) -> AlgebraParams {
        AlgebraParams::new(lambda, free).unwrap()
    }

    #[test]
    fn standard_boson_ladder() {
        let p = params(2, &[0.0]);
        let rep = FockRep::build(&p, 8).unwrap();
        for n in 0..7 {
            assert_abs_diff_eq!(
                rep.a_dag()[(n + 1, n)].re,
                ((n + 1) as f64).sqrt(),
                epsilon = TOL_EXACT
            );
        }
    }

    #[test]
    fn subdiagonal_matches_structure_function() {
        let p = params(3, &[1.0, 0.0]);
        let rep = FockRep::build(&p, 9).unwrap();
        let expect: Vec<f64> = [2.0, 3.0, 3.0, 5.0, 6.0, 6.0, 8.0, 9.0]
            .iter()
            .map(|f: &f64| f.sqrt())
            .collect();
        for (n, e) in expect.iter().enumerate() {
            assert_abs_diff_eq!(rep.a_dag()[(n + 1, n)].re, *e, epsilon = TOL_EXACT);
        }
        // a†a diagonal is F(n)
        let num = rep.a_dag() * rep.a();
        for n in 0..9 {
            assert_abs_diff_eq!(
                num[(n, n)].re,
                p.structure_function(n as i64),
                epsilon = TOL_EXACT
            );
        }
    }

    #[test]
    fn boundary_params_refused() {
        let p = params(2, &[-1.0]);
        assert!(matches!(
            FockRep::build(&p, 8),
            Err(ClextError::InvalidParameters(_))
        ));
        // dim not a multiple of lambda
        let p = params(3, &[0.0, 0.0]);
        assert!(FockRep::build(&p, 10).is_err());
    }

    #[test]
    fn defining_relations_pass() {
        for (lambda, free) in [(2usize, vec![0.0]), (3, vec![1.0, 0.0])] {
            let p = params(lambda, &free);
            let rep = FockRep::build(&p, 10 * lambda).unwrap();
            let report = rep.verify_defining_relations(1e-10).unwrap();
            assert!(report.overall_pass(), "{report:?}");
        }
        // the undeformed ladder is exact at machine precision
        let p = params(2, &[0.0]);
        let rep = FockRep::build(&p, 12).unwrap();
        let report = rep.verify_defining_relations(1e-12).unwrap();
        assert!(report.overall_pass(), "{report:?}");
    }

    #[test]
    fn perturbed_ladder_detected() {
        let p = params(3, &[1.0, 0.0]);
        let mut rep = FockRep::build(&p, 30).unwrap();
        rep.a_dag[(1, 0)] += Complex64::new(1e-3, 0.0);
        rep.a = rep.a_dag.adjoint();
        let report = rep.verify_defining_relations(1e-10).unwrap();
        assert!(!report.overall_pass());
        let r = report.residual_of("comm_a_adag").unwrap();
        assert!(r > 1e-4 && r < 1e-1, "residual {r}");
    }

    #[test]
    fn truncation_too_small() {
        let p = params(3, &[0.0, 0.0]);
        let rep = FockRep::build(&p, 6).unwrap();
        assert!(matches!(
            rep.verify_defining_relations(1e-10),
            Err(ClextError::TruncationTooSmall(_))
        ));
    }

    #[test]
    fn casimirs_vanish() {
        let p = params(3, &[1.0, 0.0]);
        let rep = FockRep::build(&p, 30).unwrap();
        let set = rep.casimir_matrices(1e-10);
        assert!(set.report.overall_pass(), "{:?}", set.report);
        assert!(max_abs_block(&set.c3, rep.interior()) <= 1e-12);
    }

    #[test]
    fn h0_diagonal_values() {
        let p = params(3, &[1.0, 0.0]);
        let rep = FockRep::build(&p, 9).unwrap();
        let h0 = rep.h0_matrix();
        let expect = [1.0, 2.5, 3.0, 4.0, 5.5, 6.0, 7.0, 8.5, 9.0];
        for (n, e) in expect.iter().enumerate() {
            assert_abs_diff_eq!(h0[(n, n)].re, *e, epsilon = TOL_EXACT);
        }
        // anticommutator form agrees on the interior and equals F + G/2
        let rep = FockRep::build(&p, 30).unwrap();
        let h0 = rep.h0_matrix();
        let anti = rep.h0_anticommutator();
        assert!(max_abs_block(&(&h0 - &anti), rep.interior()) <= TOL_EXACT);
        for n in 0..rep.interior() {
            let fg = p.structure_function(n as i64) + 0.5 * p.g_function(n as i64);
            assert_abs_diff_eq!(anti[(n, n)].re, fg, epsilon = TOL_EXACT);
        }
    }

    #[test]
    fn h0_spectrum_closed_form() {
        let p = params(3, &[1.0, 0.0]);
        let s = h0_spectrum(&p, 4).unwrap();
        let first: Vec<f64> = s.levels.iter().take(6).map(|l| l.energy).collect();
        assert_eq!(first, vec![1.0, 2.5, 3.0, 4.0, 5.5, 6.0]);
        assert!(s.classes.iter().all(|c| c.degeneracy == 1));
    }

    #[test]
    fn h0_spectrum_degeneracy_matches_matrix_eigenvalues() {
        // alpha = (2, -1, -1): gamma = (1, 1.5, 0.5), energies
        // 1.5, 3, 3, 4.5, 6, 6, ... with degenerate pairs
        let p = params(3, &[2.0, -1.0]);
        let s = h0_spectrum(&p, 3).unwrap();
        let closed: Vec<f64> = s.sorted_energies();
        let rep = FockRep::build(&p, 30).unwrap();
        let h0 = rep.h0_matrix();
        let mut matrix_eigs: Vec<f64> = (0..closed.len()).map(|n| h0[(n, n)].re).collect();
        matrix_eigs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (a, b) in closed.iter().zip(&matrix_eigs) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-10);
        }
        assert_eq!(s.classes[0].degeneracy, 1); // E = 1.5
        assert_eq!(s.classes[1].degeneracy, 2); // E = 3
        let pair_like = s.classes.iter().filter(|c| c.degeneracy == 2).count();
        assert!(pair_like >= 2);
    }

    #[test]
    fn casimir_product_identity_random_params() {
        use crate::sampling::fock_params;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for lambda in 2..=5usize {
            for _ in 0..10 {
                let p = fock_params(lambda, &mut rng);
                let rep = FockRep::build(&p, 6 * lambda).unwrap();
                let set = rep.casimir_matrices(1e-12);
                let row = set.report.residual_of("c1_c2_pow_lambda_identity").unwrap();
                assert!(row <= 1e-12, "lambda={lambda}: {row:e}");
            }
        }
    }

    #[test]
    fn interior_commutator_grades() {
        // [a, a†] restricted to grade-mu interior diagonal is 1 + alpha_mu
        let p = params(4, &[0.5, -0.25, 0.5]);
        let rep = FockRep::build(&p, 24).unwrap();
        let comm = commutator(rep.a(), rep.a_dag());
        for n in 0..rep.interior() {
            let mu = n % 4;
            assert_abs_diff_eq!(comm[(n, n)].re, 1.0 + p.alpha()[mu], epsilon = TOL_EXACT);
        }
        // a annihilates the vacuum
        assert!(rep.a().column(0).iter().all(|z| z.norm() <= TOL_EXACT));
    }
}
