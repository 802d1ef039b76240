//! Pseudosupersymmetric quantum mechanics on the λ = 3 algebra.
//!
//! The pseudosupercharge satisfies Q² = 0, [H, Q] = 0 and the trilinear
//! relation Q Q† Q = 4c² Q H. Two solution families exist (up to the
//! Q ↔ Q† mirror, which is exposed through [`PseudoRealization::mirrored`]
//! rather than constructed separately):
//!
//! - family One: Q = (η a† + e^{iφ} √(4c²−η²) a) P_{μ+2} with 0 < η < 2|c|,
//!   level shifts fixed up to the common constant;
//! - family Two: Q = 2|c| a P_{μ+2}, with r_μ a genuinely free parameter
//!   that reshapes the spectrum.

use num_complex::Complex64;

use super::real;
use crate::algebra::{AlgebraParams, TOL_EXACT};
use crate::error::{ClextError, Result};
use crate::fock::{commutator, diag_from, max_abs_block, CMat, FockRep};
use crate::report::RelationReport;
use crate::spectrum::{group_spectrum, Spectrum};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PseudoFamily {
    One,
    Two,
}

/// A constructed pseudosupersymmetric realization.
#[derive(Debug, Clone)]
pub struct PseudoRealization {
    pub family: PseudoFamily,
    pub mu: usize,
    pub c_const: f64,
    /// η_{μ+2} for family One.
    pub eta: Option<f64>,
    /// Phase of the lowering part for family One.
    pub phi: Option<f64>,
    /// The free level shift r_μ for family Two.
    pub r_mu: Option<f64>,
    /// Level shifts r_0..r_2 by absolute residue.
    pub r: Vec<f64>,
    pub q_mat: CMat,
    pub h_mat: CMat,
}

fn require_lambda3(rep: &FockRep) -> Result<()> {
    if rep.lambda() != 3 {
        return Err(ClextError::InvalidParameters(format!(
            "pseudosupersymmetry requires lambda = 3, got {}",
            rep.lambda()
        )));
    }
    Ok(())
}

impl PseudoRealization {
    /// Family One: two parameters (η, φ) with 0 < η < 2|c| strictly.
    pub fn build_one(rep: &FockRep, mu: usize, c_const: f64, eta: f64, phi: f64) -> Result<Self> {
        require_lambda3(rep)?;
        if mu > 2 {
            return Err(ClextError::InvalidParameters(format!(
                "mu must lie in 0..=2, got {mu}"
            )));
        }
        if c_const == 0.0 || !c_const.is_finite() {
            return Err(ClextError::InvalidParameters(
                "c constant must be nonzero and finite".into(),
            ));
        }
        let cap = 2.0 * c_const.abs();
        if !(eta > 0.0 && eta < cap) {
            return Err(ClextError::InvalidParameters(format!(
                "eta must lie in the open interval (0, {cap}), got {eta}"
            )));
        }
        let params = rep.params();
        let m = mu as i64;
        let c2 = c_const * c_const;
        let r_mu2 = (1.0 + params.alpha_at(m + 2)) * (eta * eta - 2.0 * c2) / (2.0 * c2);
        let mut r = vec![0.0; 3];
        r[params.residue(m + 2)] = r_mu2;
        r[params.residue(m + 1)] = 2.0 - params.alpha_at(m) + r_mu2;
        r[params.residue(m)] = -2.0 + params.alpha_at(m + 1) + r_mu2;

        let xi = (4.0 * c2 - eta * eta).sqrt();
        let q_mat = (rep.a_dag() * real(eta) + rep.a() * Complex64::from_polar(xi, phi))
            * rep.projector(m + 2);
        let h_mat = hamiltonian(rep, &r);
        Ok(Self {
            family: PseudoFamily::One,
            mu,
            c_const,
            eta: Some(eta),
            phi: Some(phi),
            r_mu: None,
            r,
            q_mat,
            h_mat,
        })
    }

    /// Family Two: one free parameter r_μ.
    pub fn build_two(rep: &FockRep, mu: usize, c_const: f64, r_mu: f64) -> Result<Self> {
        require_lambda3(rep)?;
        if mu > 2 {
            return Err(ClextError::InvalidParameters(format!(
                "mu must lie in 0..=2, got {mu}"
            )));
        }
        if c_const == 0.0 || !c_const.is_finite() || !r_mu.is_finite() {
            return Err(ClextError::InvalidParameters(
                "c constant must be nonzero and r_mu finite".into(),
            ));
        }
        let params = rep.params();
        let m = mu as i64;
        let r_mu2 = -1.0 - params.alpha_at(m + 2);
        let mut r = vec![0.0; 3];
        r[params.residue(m + 2)] = r_mu2;
        r[params.residue(m + 1)] = 2.0 - params.alpha_at(m) + r_mu2;
        r[params.residue(m)] = r_mu;

        let q_mat = rep.a() * rep.projector(m + 2) * real(2.0 * c_const.abs());
        let h_mat = hamiltonian(rep, &r);
        Ok(Self {
            family: PseudoFamily::Two,
            mu,
            c_const,
            eta: None,
            phi: None,
            r_mu: Some(r_mu),
            r,
            q_mat,
            h_mat,
        })
    }

    /// The mirror solution with Q and Q† swapped; it satisfies the same
    /// algebra because Q and Q† enter symmetrically.
    pub fn mirrored(&self) -> Self {
        let mut out = self.clone();
        out.q_mat = self.q_mat.adjoint();
        out
    }

    /// Closed diagonal form of H, per family.
    pub fn closed_form_h(&self, rep: &FockRep) -> CMat {
        let params = rep.params();
        let m = self.mu as i64;
        match self.family {
            PseudoFamily::One => {
                let r_mu2 = self.r[params.residue(m + 2)];
                let shift = 0.5 * (2.0 * params.gamma_at(m + 2) + r_mu2 - 1.0);
                diag_from(rep.dim(), |n| {
                    let nu = (n as i64 - m).rem_euclid(3) as usize;
                    let step = match nu {
                        1 => 2.0,
                        2 => 1.0,
                        _ => 0.0,
                    };
                    real(n as f64 + shift + step)
                })
            }
            PseudoFamily::Two => {
                let shift = 0.5 * (2.0 * params.gamma_at(m + 2) - params.alpha_at(m + 2));
                let p_mu = 0.5
                    * (1.0 - params.alpha_at(m + 1) + params.alpha_at(m + 2) + self.r_mu.unwrap());
                diag_from(rep.dim(), |n| {
                    let nu = (n as i64 - m).rem_euclid(3) as usize;
                    let step = match nu {
                        0 => p_mu,
                        1 => 1.0,
                        _ => 0.0,
                    };
                    real(n as f64 + shift + step)
                })
            }
        }
    }

    /// Residuals of Q² = 0, [H, Q] = 0, QQ†Q = 4c²QH, and the closed-form
    /// Hamiltonian agreement, on the interior block.
    pub fn verify(&self, rep: &FockRep, tol: f64) -> Result<RelationReport> {
        if rep.dim() < 9 {
            return Err(ClextError::TruncationTooSmall(format!(
                "need dim >= 9, got {}",
                rep.dim()
            )));
        }
        let block = rep.interior();
        let q = &self.q_mat;
        let q_dag = q.adjoint();
        let mut report = RelationReport::new();
        report.push("q_square_zero", max_abs_block(&(q * q), block), tol);
        report.push(
            "comm_h_q",
            max_abs_block(&commutator(&self.h_mat, q), block),
            tol,
        );
        let lhs = q * &q_dag * q;
        let rhs = q * &self.h_mat * real(4.0 * self.c_const * self.c_const);
        report.push("q_qdag_q_4c2_qh", max_abs_block(&(lhs - rhs), block), tol);
        report.push(
            "h_closed_form_agreement",
            max_abs_block(&(&self.h_mat - self.closed_form_h(rep)), block),
            tol.max(TOL_EXACT),
        );
        Ok(report)
    }
}

fn hamiltonian(rep: &FockRep, r: &[f64]) -> CMat {
    rep.h0_matrix() + diag_from(rep.dim(), |n| real(0.5 * r[n % 3]))
}

/// The r_μ value that makes the family-Two spectrum equally spaced:
/// (α_{μ+1} − α_{μ+2} + 3) mod 6.
pub fn equally_spaced_r_mu(params: &AlgebraParams, mu: usize) -> f64 {
    let m = mu as i64;
    (params.alpha_at(m + 1) - params.alpha_at(m + 2) + 3.0).rem_euclid(6.0)
}

/// Spectrum of a pseudosupersymmetric Hamiltonian, read off its exact
/// diagonal and grouped into degeneracy classes. The window shrinks when
/// the truncation cannot guarantee complete classes out to k_max.
pub fn pseudo_spectrum(real: &PseudoRealization, rep: &FockRep, k_max: usize) -> Spectrum {
    let margin = {
        let shifts: Vec<f64> = (0..3)
            .map(|nu| real.h_mat[(nu, nu)].re - nu as f64)
            .collect();
        // degenerate levels differ in n by at most the spread between two
        // residue shifts, bounded by twice the largest shift magnitude
        let spread = shifts.iter().fold(0.0f64, |m, s| m.max(s.abs()));
        3 * ((2.0 * spread / 3.0).ceil() as usize + 2)
    };
    let window = (3 * (k_max + 1)).min(rep.dim().saturating_sub(margin));
    let total = (window + margin).min(rep.dim());
    let energies: Vec<f64> = (0..total).map(|n| real.h_mat[(n, n)].re).collect();
    group_spectrum(3, &energies, window)
}
