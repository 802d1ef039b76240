//! Parameter space of the C_λ-extended oscillator algebra.
//!
//! The algebra is generated by `I`, `a`, `a†`, `N` and the cyclic-group
//! generator `T` (with `T^λ = I`), and is parametrized by λ real numbers
//! α_0, ..., α_{λ-1} constrained by Σ_μ α_μ = 0, so that λ−1 of them are
//! independent. All derived coefficient tables used elsewhere (β, γ, β̄)
//! are materialized here, together with the scalar structure function
//! `F(n)` and commutator function `G(n)` of the number-operator
//! realization `T = exp(i2πN/λ)`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{ClextError, Result};

/// Tolerance for identities that hold exactly up to double-precision
/// roundoff (quantities of order λ·max|α|).
pub const TOL_EXACT: f64 = 1e-12;

/// Parameters of a C_λ-extended oscillator algebra together with the
/// derived coefficient tables:
///
/// - β_0 = 0, β_μ = Σ_{ν<μ} α_ν,
/// - γ_μ = (β_μ + β_{μ+1})/2 with β_λ ≡ 0,
/// - β̄_μ = (β_μ + μ)/λ.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlgebraParams {
    lambda: usize,
    alpha: Vec<f64>,
    beta: Vec<f64>,
    gamma: Vec<f64>,
    beta_bar: Vec<f64>,
}

impl AlgebraParams {
    /// Build an algebra from the λ−1 free parameters α_0 ... α_{λ-2}.
    /// The dependent α_{λ-1} = −Σ α_ν is materialized.
    pub fn new(lambda: usize, alpha_free: &[f64]) -> Result<Self> {
        if lambda < 2 {
            return Err(ClextError::InvalidParameters(format!(
                "lambda must be >= 2, got {lambda}"
            )));
        }
        if alpha_free.len() != lambda - 1 {
            return Err(ClextError::InvalidParameters(format!(
                "expected {} free alpha values, got {}",
                lambda - 1,
                alpha_free.len()
            )));
        }
        if alpha_free.iter().any(|a| !a.is_finite()) {
            return Err(ClextError::InvalidParameters(
                "alpha entries must be finite".into(),
            ));
        }
        let mut alpha = alpha_free.to_vec();
        alpha.push(-alpha_free.iter().sum::<f64>());
        Ok(Self::from_parts(lambda, alpha))
    }

    /// Build from a full length-λ α vector; Σ α_μ must already vanish.
    pub fn from_full_alpha(lambda: usize, alpha: &[f64]) -> Result<Self> {
        if lambda < 2 || alpha.len() != lambda {
            return Err(ClextError::InvalidParameters(format!(
                "need lambda >= 2 and {lambda} alpha entries, got {}",
                alpha.len()
            )));
        }
        if alpha.iter().any(|a| !a.is_finite()) {
            return Err(ClextError::InvalidParameters(
                "alpha entries must be finite".into(),
            ));
        }
        let sum: f64 = alpha.iter().sum();
        if sum.abs() > TOL_EXACT * (1.0 + alpha.iter().map(|a| a.abs()).sum::<f64>()) {
            return Err(ClextError::InvalidParameters(format!(
                "alpha must sum to zero, got {sum:e}"
            )));
        }
        Ok(Self::from_parts(lambda, alpha.to_vec()))
    }

    fn from_parts(lambda: usize, alpha: Vec<f64>) -> Self {
        let mut beta = vec![0.0; lambda];
        for mu in 1..lambda {
            beta[mu] = beta[mu - 1] + alpha[mu - 1];
        }
        // beta_lambda == 0 by the zero-sum constraint
        let gamma: Vec<f64> = (0..lambda)
            .map(|mu| {
                let next = if mu + 1 == lambda { 0.0 } else { beta[mu + 1] };
                0.5 * (beta[mu] + next)
            })
            .collect();
        let beta_bar: Vec<f64> = (0..lambda)
            .map(|mu| (beta[mu] + mu as f64) / lambda as f64)
            .collect();
        Self {
            lambda,
            alpha,
            beta,
            gamma,
            beta_bar,
        }
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    pub fn beta(&self) -> &[f64] {
        &self.beta
    }

    pub fn gamma(&self) -> &[f64] {
        &self.gamma
    }

    pub fn beta_bar(&self) -> &[f64] {
        &self.beta_bar
    }

    /// Reduce an arbitrary integer index to its residue mod λ.
    ///
    /// All index arithmetic on grade labels goes through here, following
    /// the convention P_{μ'} = P_μ whenever μ' − μ = 0 mod λ.
    pub fn residue(&self, i: i64) -> usize {
        i.rem_euclid(self.lambda as i64) as usize
    }

    pub fn alpha_at(&self, i: i64) -> f64 {
        self.alpha[self.residue(i)]
    }

    pub fn beta_at(&self, i: i64) -> f64 {
        self.beta[self.residue(i)]
    }

    pub fn gamma_at(&self, i: i64) -> f64 {
        self.gamma[self.residue(i)]
    }

    pub fn beta_bar_at(&self, i: i64) -> f64 {
        self.beta_bar[self.residue(i)]
    }

    /// Structure function F(n) = n + β_{n mod λ}, the diagonal of a†a in
    /// the Fock basis. F(0) = 0. Negative arguments use the same formula
    /// with the index reduced mod λ (needed when a lowest weight n_0 < 0).
    pub fn structure_function(&self, n: i64) -> f64 {
        n as f64 + self.beta_at(n)
    }

    /// Commutator function G(n) = 1 + α_{n mod λ}; satisfies
    /// F(n+1) − F(n) = G(n).
    pub fn g_function(&self, n: i64) -> f64 {
        1.0 + self.alpha_at(n)
    }

    /// Cyclic shift of the parameter vector: α'_μ = α_{μ+shift}.
    /// The zero-sum constraint is preserved.
    pub fn shifted(&self, shift: i64) -> Self {
        let alpha: Vec<f64> = (0..self.lambda)
            .map(|mu| self.alpha_at(mu as i64 + shift))
            .collect();
        Self::from_parts(self.lambda, alpha)
    }
}

/// The κ_1 ... κ_{λ-1} parameters of the T-basis presentation, subject to
/// κ_μ* = κ_{λ-μ}.
#[derive(Debug, Clone, PartialEq)]
pub struct KappaVector {
    kappa: Vec<Complex64>,
}

impl KappaVector {
    pub fn new(kappa: Vec<Complex64>) -> Result<Self> {
        if kappa.is_empty() {
            return Err(ClextError::InvalidParameters(
                "kappa vector must have length lambda - 1 >= 1".into(),
            ));
        }
        let v = Self { kappa };
        let lambda = v.lambda();
        for mu in 1..lambda {
            let residual = (v.kappa[mu - 1].conj() - v.kappa[lambda - mu - 1]).norm();
            if residual > TOL_EXACT {
                return Err(ClextError::InvalidParameters(format!(
                    "kappa_{mu}* != kappa_{} (residual {residual:e})",
                    lambda - mu
                )));
            }
        }
        Ok(v)
    }

    pub fn lambda(&self) -> usize {
        self.kappa.len() + 1
    }

    pub fn kappa(&self) -> &[Complex64] {
        &self.kappa
    }
}

/// α_μ = Σ_{ν=1}^{λ-1} exp(i2πμν/λ) κ_ν. The conjugation constraint on κ
/// makes the result real; any imaginary residue above tolerance is an error.
pub fn alphas_from_kappas(kappa: &KappaVector) -> Result<Vec<f64>> {
    let lambda = kappa.lambda();
    let mut alpha = Vec::with_capacity(lambda);
    for mu in 0..lambda {
        let mut acc = Complex64::new(0.0, 0.0);
        for (nu, k) in kappa.kappa().iter().enumerate() {
            let phase = 2.0 * std::f64::consts::PI * (mu * (nu + 1)) as f64 / lambda as f64;
            acc += Complex64::from_polar(1.0, phase) * k;
        }
        let scale = 1.0 + kappa.kappa().iter().map(|k| k.norm()).sum::<f64>();
        if acc.im.abs() > TOL_EXACT * scale {
            return Err(ClextError::InvalidParameters(format!(
                "alpha_{mu} has imaginary residue {:e}",
                acc.im
            )));
        }
        alpha.push(acc.re);
    }
    Ok(alpha)
}

/// Inverse discrete Fourier transform of `alphas_from_kappas`:
/// κ_ν = (1/λ) Σ_μ exp(−i2πμν/λ) α_μ. Round-tripping reproduces α.
pub fn kappas_from_alphas(params: &AlgebraParams) -> KappaVector {
    let lambda = params.lambda();
    let kappa: Vec<Complex64> = (1..lambda)
        .map(|nu| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (mu, a) in params.alpha().iter().enumerate() {
                let phase = -2.0 * std::f64::consts::PI * (mu * nu) as f64 / lambda as f64;
                acc += Complex64::from_polar(1.0, phase) * a;
            }
            acc / lambda as f64
        })
        .collect();
    KappaVector { kappa }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn derived_tables_lambda2() {
        let p = AlgebraParams::new(2, &[1.0]).unwrap();
        assert_eq!(p.alpha(), &[1.0, -1.0]);
        assert_eq!(p.beta(), &[0.0, 1.0]);
        assert_eq!(p.gamma(), &[0.5, 0.5]);
    }

    #[test]
    fn derived_tables_lambda3() {
        let p = AlgebraParams::new(3, &[1.0, 0.0]).unwrap();
        assert_eq!(p.alpha(), &[1.0, 0.0, -1.0]);
        assert_eq!(p.beta(), &[0.0, 1.0, 1.0]);
        assert_eq!(p.gamma(), &[0.5, 1.0, 0.5]);
        // alternating gamma sum vanishes: 0.5 - 1.0 + 0.5
        let alt: f64 = p
            .gamma()
            .iter()
            .enumerate()
            .map(|(mu, g)| if mu % 2 == 0 { *g } else { -*g })
            .sum();
        assert_abs_diff_eq!(alt, 0.0, epsilon = TOL_EXACT);
    }

    #[test]
    fn undeformed_oscillator_is_trivial() {
        let p = AlgebraParams::new(3, &[0.0, 0.0]).unwrap();
        assert_eq!(p.alpha(), &[0.0, 0.0, 0.0]);
        assert_eq!(p.beta(), &[0.0, 0.0, 0.0]);
        for n in 0..10 {
            assert_eq!(p.structure_function(n), n as f64);
            assert_eq!(p.g_function(n), 1.0);
        }
    }

    #[test]
    fn structure_function_tables() {
        let p = AlgebraParams::new(3, &[1.0, 0.0]).unwrap();
        let f: Vec<f64> = (0..7).map(|n| p.structure_function(n)).collect();
        assert_eq!(f, vec![0.0, 2.0, 3.0, 3.0, 5.0, 6.0, 6.0]);

        let p2 = AlgebraParams::new(2, &[1.0]).unwrap();
        let f2: Vec<f64> = (0..4).map(|n| p2.structure_function(n)).collect();
        assert_eq!(f2, vec![0.0, 2.0, 2.0, 4.0]);
    }

    #[test]
    fn g_function_values() {
        let p = AlgebraParams::new(3, &[1.0, 0.0]).unwrap();
        assert_eq!(p.g_function(0), 2.0);
        assert_eq!(p.g_function(1), 1.0);
        assert_eq!(p.g_function(2), 0.0);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            AlgebraParams::new(1, &[]),
            Err(ClextError::InvalidParameters(_))
        ));
        assert!(AlgebraParams::new(3, &[f64::NAN, 0.0]).is_err());
        assert!(AlgebraParams::new(3, &[1.0]).is_err());
        assert!(AlgebraParams::from_full_alpha(3, &[1.0, 1.0, 1.0]).is_err());
    }

    #[test]
    fn kappa_alpha_lambda2() {
        let k = KappaVector::new(vec![Complex64::new(1.0, 0.0)]).unwrap();
        let alpha = alphas_from_kappas(&k).unwrap();
        assert_abs_diff_eq!(alpha[0], 1.0, epsilon = TOL_EXACT);
        assert_abs_diff_eq!(alpha[1], -1.0, epsilon = TOL_EXACT);

        let p = AlgebraParams::new(2, &[1.0]).unwrap();
        let back = kappas_from_alphas(&p);
        assert_abs_diff_eq!(back.kappa()[0].re, 1.0, epsilon = TOL_EXACT);
        assert_abs_diff_eq!(back.kappa()[0].im, 0.0, epsilon = TOL_EXACT);
    }

    #[test]
    fn kappa_zero_maps_to_zero() {
        let k = KappaVector::new(vec![Complex64::new(0.0, 0.0); 2]).unwrap();
        let alpha = alphas_from_kappas(&k).unwrap();
        assert!(alpha.iter().all(|a| a.abs() < TOL_EXACT));
    }

    #[test]
    fn kappa_conjugation_violation_rejected() {
        // lambda = 3 requires kappa_1* = kappa_2
        let bad = KappaVector::new(vec![Complex64::new(0.0, 1.0), Complex64::new(0.0, 1.0)]);
        assert!(bad.is_err());
    }

    #[test]
    fn admissible_complex_kappa_gives_zero_sum_alpha() {
        let k1 = Complex64::new(-0.5, 3f64.sqrt() / 2.0);
        let k = KappaVector::new(vec![k1, k1.conj()]).unwrap();
        let alpha = alphas_from_kappas(&k).unwrap();
        let sum: f64 = alpha.iter().sum();
        assert_abs_diff_eq!(sum, 0.0, epsilon = 10.0 * TOL_EXACT);
    }

    proptest! {
        #[test]
        fn difference_identity(lambda in 2usize..6, seed in proptest::collection::vec(-3.0f64..3.0, 5)) {
            let free: Vec<f64> = seed.iter().take(lambda - 1).cloned().collect();
            let free = if free.len() < lambda - 1 {
                vec![0.5; lambda - 1]
            } else {
                free
            };
            let p = AlgebraParams::new(lambda, &free).unwrap();
            for n in 0..50i64 {
                let lhs = p.structure_function(n + 1) - p.structure_function(n);
                prop_assert!((lhs - p.g_function(n)).abs() <= TOL_EXACT);
            }
        }

        #[test]
        fn alpha_kappa_round_trip(lambda in 2usize..6, seed in proptest::collection::vec(-3.0f64..3.0, 5)) {
            let free: Vec<f64> = seed.iter().take(lambda - 1).cloned().collect();
            let free = if free.len() < lambda - 1 {
                vec![0.25; lambda - 1]
            } else {
                free
            };
            let p = AlgebraParams::new(lambda, &free).unwrap();
            let kappa = kappas_from_alphas(&p);
            let alpha = alphas_from_kappas(&kappa).unwrap();
            for (a, b) in alpha.iter().zip(p.alpha()) {
                prop_assert!((a - b).abs() <= 100.0 * TOL_EXACT);
            }
        }

        #[test]
        fn beta_bar_difference_identity(seed in proptest::collection::vec(-3.0f64..3.0, 4)) {
            let p = AlgebraParams::new(5, &seed).unwrap();
            for mu in 0..5i64 {
                for nu in 0..5i64 {
                    let lhs = p.beta_bar_at(mu) - p.beta_bar_at(nu);
                    let rhs = (p.beta_at(mu) - p.beta_at(nu) + (mu - nu) as f64) / 5.0;
                    prop_assert!((lhs - rhs).abs() <= TOL_EXACT);
                }
            }
        }
    }
}
