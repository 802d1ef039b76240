//! Orthosupersymmetric quantum mechanics of order two on the λ = 3 algebra.
//!
//! Two orthosupercharges satisfy Q_r Q_s = 0, [H, Q_r] = 0 and
//! Q_r Q_s† + δ_{rs} Σ_t Q_t† Q_t = 2 δ_{rs} H. Solutions exist only when
//! α_{μ+1} = −1 with μ ∈ {0, 1}; they form a two-parameter family
//! (ξ ∈ (0, √2], φ ∈ [0, 2π)) whose Hamiltonian
//! H = N + ½(2γ_{μ+1} − 1) I + 2 P_μ + P_{μ+1} does not depend on (ξ, φ).
//! μ = 0 is the broken phase (threefold ground level at energy α_0 + 1);
//! μ = 1 is unbroken (nondegenerate ground level at −(α_{μ+2}+1)/2 = 0).

use num_complex::Complex64;

use super::real;
use crate::algebra::TOL_EXACT;
use crate::error::{ClextError, Result};
use crate::fock::{commutator, diag_from, max_abs_block, CMat, FockRep};
use crate::report::RelationReport;
use crate::spectrum::{group_spectrum, Spectrum};

/// A constructed order-two orthosupersymmetric realization.
#[derive(Debug, Clone)]
pub struct OrthoRealization {
    pub mu: usize,
    pub xi: f64,
    pub phi: f64,
    pub q1: CMat,
    pub q2: CMat,
    pub h_mat: CMat,
}

impl OrthoRealization {
    pub fn build(rep: &FockRep, mu: usize, xi: f64, phi: f64) -> Result<Self> {
        if rep.lambda() != 3 {
            return Err(ClextError::InvalidParameters(format!(
                "orthosupersymmetry of order two requires lambda = 3, got {}",
                rep.lambda()
            )));
        }
        if mu > 1 {
            return Err(ClextError::InvalidParameters(format!(
                "mu must be 0 or 1, got {mu}"
            )));
        }
        let sqrt2 = 2f64.sqrt();
        if !(xi > 0.0 && xi <= sqrt2 + TOL_EXACT) {
            return Err(ClextError::InvalidParameters(format!(
                "xi must lie in (0, sqrt(2)], got {xi}"
            )));
        }
        let params = rep.params();
        let m = mu as i64;
        let a1 = params.alpha_at(m + 1);
        if (a1 + 1.0).abs() > TOL_EXACT {
            return Err(ClextError::NotApplicable(format!(
                "requires alpha_(mu+1) = -1, got {a1}"
            )));
        }
        let comp = (2.0 - xi * xi).max(0.0).sqrt();
        let q1 = rep.a() * rep.projector(m + 2) * real(xi)
            + rep.a_dag() * rep.projector(m) * Complex64::from_polar(comp, phi);
        let q2 = rep.a() * rep.projector(m + 2) * Complex64::from_polar(-comp, -phi)
            + rep.a_dag() * rep.projector(m) * real(xi);
        let h_mat = diag_from(rep.dim(), |n| {
            let shift = 0.5 * (2.0 * params.gamma_at(m + 1) - 1.0);
            let nu = (n as i64 - m).rem_euclid(3) as usize;
            let step = match nu {
                0 => 2.0,
                1 => 1.0,
                _ => 0.0,
            };
            real(n as f64 + shift + step)
        });
        Ok(Self {
            mu,
            xi,
            phi,
            q1,
            q2,
            h_mat,
        })
    }

    /// H built from the level-shift ansatz r_μ = 1+α_μ, r_{μ+1} = 0,
    /// r_{μ+2} = −2+α_μ; agrees with the closed form used in `build`.
    pub fn ansatz_h(&self, rep: &FockRep) -> CMat {
        let params = rep.params();
        let m = self.mu as i64;
        let mut r = [0.0; 3];
        r[params.residue(m)] = 1.0 + params.alpha_at(m);
        r[params.residue(m + 1)] = 0.0;
        r[params.residue(m + 2)] = -2.0 + params.alpha_at(m);
        rep.h0_matrix() + diag_from(rep.dim(), |n| real(0.5 * r[n % 3]))
    }

    /// Residuals of the order-two algebra on the interior block, all four
    /// (r, s) combinations per relation.
    pub fn verify(&self, rep: &FockRep, tol: f64) -> Result<RelationReport> {
        if rep.dim() < 9 {
            return Err(ClextError::TruncationTooSmall(format!(
                "need dim >= 9, got {}",
                rep.dim()
            )));
        }
        let block = rep.interior();
        let charges = [&self.q1, &self.q2];
        let mut report = RelationReport::new();

        let mut worst = 0.0f64;
        for qr in charges {
            for qs in charges {
                worst = worst.max(max_abs_block(&(qr * qs), block));
            }
        }
        report.push("qr_qs_zero", worst, tol);

        let mut worst = 0.0f64;
        for qr in charges {
            worst = worst.max(max_abs_block(&commutator(&self.h_mat, qr), block));
        }
        report.push("comm_h_qr", worst, tol);

        let dim = rep.dim();
        let mut sum_qdq = CMat::zeros(dim, dim);
        for qt in charges {
            sum_qdq += qt.adjoint() * qt;
        }
        let mut worst = 0.0f64;
        for (ri, qr) in charges.iter().enumerate() {
            for (si, qs) in charges.iter().enumerate() {
                let mut lhs = *qr * qs.adjoint();
                let mut rhs = CMat::zeros(dim, dim);
                if ri == si {
                    lhs += &sum_qdq;
                    rhs = &self.h_mat * real(2.0);
                }
                worst = worst.max(max_abs_block(&(lhs - rhs), block));
            }
        }
        report.push("qr_qsdag_anticommutator", worst, tol);

        report.push(
            "h_ansatz_agreement",
            max_abs_block(&(&self.h_mat - self.ansatz_h(rep)), block),
            tol.max(TOL_EXACT),
        );
        Ok(report)
    }
}

/// Spectrum read off the exact diagonal of H. The window shrinks when the
/// truncation cannot guarantee complete classes out to k_max.
pub fn ortho_spectrum(real: &OrthoRealization, rep: &FockRep, k_max: usize) -> Spectrum {
    let shifts: Vec<f64> = (0..3)
        .map(|nu| real.h_mat[(nu, nu)].re - nu as f64)
        .collect();
    // two shifts can differ by at most twice the largest magnitude
    let spread = shifts.iter().fold(0.0f64, |m, s| m.max(s.abs()));
    let margin = 3 * ((2.0 * spread / 3.0).ceil() as usize + 2);
    let window = (3 * (k_max + 1)).min(rep.dim().saturating_sub(margin));
    let total = (window + margin).min(rep.dim());
    let energies: Vec<f64> = (0..total).map(|n| real.h_mat[(n, n)].re).collect();
    group_spectrum(3, &energies, window)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraParams;
    use approx::assert_abs_diff_eq;

    fn rep(free: &[f64], dim: usize) -> FockRep {
        let p = AlgebraParams::new(3, free).unwrap();
        FockRep::build(&p, dim).unwrap()
    }

    #[test]
    fn broken_case_mu0() {
        let rep = rep(&[0.0, -1.0], 30);
        let real = OrthoRealization::build(&rep, 0, 1.0, 0.0).unwrap();
        let expect = [1.0, 1.0, 1.0, 4.0, 4.0, 4.0];
        for (n, e) in expect.iter().enumerate() {
            assert_abs_diff_eq!(real.h_mat[(n, n)].re, *e, epsilon = TOL_EXACT);
        }
        let spec = ortho_spectrum(&real, &rep, 4);
        assert_eq!(spec.ground_degeneracy(), 3);
        assert_abs_diff_eq!(spec.ground_energy(), 1.0, epsilon = 1e-9);
        let report = real.verify(&rep, 1e-10).unwrap();
        assert!(report.overall_pass(), "{report:?}");
    }

    #[test]
    fn unbroken_case_mu1() {
        let rep = rep(&[1.0, 0.0], 30);
        let real = OrthoRealization::build(&rep, 1, 1.0, 0.0).unwrap();
        let spec = ortho_spectrum(&real, &rep, 4);
        assert_eq!(spec.ground_degeneracy(), 1);
        assert_abs_diff_eq!(spec.ground_energy(), 0.0, epsilon = 1e-9);
        assert_eq!(spec.classes[1].degeneracy, 3);
        let report = real.verify(&rep, 1e-10).unwrap();
        assert!(report.overall_pass(), "{report:?}");
    }

    #[test]
    fn sweep_xi_phi_and_h_invariance() {
        let rep = rep(&[0.0, -1.0], 30);
        let mut h_ref: Option<CMat> = None;
        for xi in [0.3, 1.0, 2f64.sqrt()] {
            for phi in [0.0, std::f64::consts::FRAC_PI_2] {
                let real = OrthoRealization::build(&rep, 0, xi, phi).unwrap();
                let report = real.verify(&rep, 1e-10).unwrap();
                assert!(report.overall_pass(), "xi={xi} phi={phi}: {report:?}");
                // Q1 Q2† = 0 in particular
                let off = &real.q1 * real.q2.adjoint();
                assert!(max_abs_block(&off, rep.interior()) <= 1e-10);
                match &h_ref {
                    None => h_ref = Some(real.h_mat.clone()),
                    Some(h) => {
                        assert!(max_abs_block(&(h - &real.h_mat), rep.dim()) <= 1e-12)
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let r = rep(&[0.0, -1.0], 12);
        assert!(matches!(
            OrthoRealization::build(&r, 2, 1.0, 0.0),
            Err(ClextError::InvalidParameters(_))
        ));
        assert!(OrthoRealization::build(&r, 0, 0.0, 0.0).is_err());
        assert!(OrthoRealization::build(&r, 0, 1.5, 0.0).is_err());
        // alpha_{mu+1} != -1
        let r = rep(&[0.5, 0.2], 12);
        assert!(matches!(
            OrthoRealization::build(&r, 0, 1.0, 0.0),
            Err(ClextError::NotApplicable(_))
        ));
    }
}
