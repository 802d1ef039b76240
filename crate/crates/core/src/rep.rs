//! Classification of the unitary irreducible representations.
//!
//! In the number-operator realization the eigenvalues of N are integers and
//! every unirrep is fixed by a lowest weight n_0 and the Casimir eigenvalue
//! c of C_3 = N + Σ β_μ P_μ − a†a. The ladder of squared norms
//! λ_n = F(n_0+n) − c must satisfy λ_0 = 0 and stay positive until it either
//! never vanishes (infinite-dimensional, bounded from below — BFB) or hits
//! an exact zero at some d ≤ λ−1 (finite-dimensional of dimension d — FD).
//! Both outcomes are decided in closed form from the β̄ coefficient table;
//! a brute-force scan of λ_n serves as an independent oracle.

use serde::Serialize;
use statrs::function::gamma::gamma;

use crate::algebra::{AlgebraParams, TOL_EXACT};
use crate::error::{ClextError, Result};

/// Kind of unirrep: infinite-dimensional bounded from below, or
/// finite-dimensional with dimension `d` in 1..=λ−1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum UnirrepKind {
    Bfb,
    Fd { d: usize },
}

/// A classified unirrep of the number-operator realization.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnirrepDescriptor {
    pub kind: UnirrepKind,
    /// Lowest N eigenvalue.
    pub n0: i64,
    /// Grade of the lowest weight, n0 mod λ.
    pub mu0: usize,
    /// C_3 eigenvalue.
    pub c: f64,
    /// Smallest |λ_n| among the values that were treated as strictly
    /// positive during classification. A margin close to the tolerance
    /// means the parameters sit near a classification boundary.
    pub boundary_margin: f64,
}

/// λ_n = F(n0 + n) − c, the squared norm ladder of the candidate unirrep.
pub fn lambda_seq(params: &AlgebraParams, c: f64, n0: i64, n: i64) -> f64 {
    params.structure_function(n0 + n) - c
}

/// Closed-form classification at lowest weight `n0`.
///
/// Works entirely on β̄ differences: for an offset n = 1..λ−1 the ladder
/// value is λ_n = λ·(β̄_{μ0+n} − β̄_{μ0}) without wraparound and
/// λ_n = λ·(β̄_{μ0+n−λ} − β̄_{μ0} + 1) with it. BFB needs all of them
/// strictly positive; the first exact zero at offset d gives FD(d); a
/// negative value before any zero means no unirrep starts at n0.
pub fn classify_gdoa(params: &AlgebraParams, n0: i64) -> Option<UnirrepDescriptor> {
    let lam = params.lambda();
    let mu0 = params.residue(n0);
    let mut margin = f64::INFINITY;
    for n in 1..lam {
        let wrapped = mu0 + n >= lam;
        let diff = params.beta_bar_at((mu0 + n) as i64) - params.beta_bar()[mu0]
            + if wrapped { 1.0 } else { 0.0 };
        let ladder = lam as f64 * diff;
        if ladder.abs() <= TOL_EXACT {
            return Some(descriptor(
                params,
                n0,
                mu0,
                UnirrepKind::Fd { d: n },
                margin,
            ));
        }
        if ladder < 0.0 {
            return None;
        }
        margin = margin.min(ladder.abs());
    }
    Some(descriptor(params, n0, mu0, UnirrepKind::Bfb, margin))
}

fn descriptor(
    params: &AlgebraParams,
    n0: i64,
    mu0: usize,
    kind: UnirrepKind,
    margin: f64,
) -> UnirrepDescriptor {
    let lam = params.lambda();
    let c = match kind {
        UnirrepKind::Fd { d } if mu0 + d >= lam => {
            // wrapped branch: c = n0 + d + β_{μ0 − λ + d}
            n0 as f64 + d as f64 + params.beta_at((mu0 + d) as i64 - lam as i64)
        }
        _ => n0 as f64 + params.beta()[mu0],
    };
    UnirrepDescriptor {
        kind,
        n0,
        mu0,
        c,
        boundary_margin: margin,
    }
}

/// Brute-force classification oracle: scan λ_n = F(n0+n) − F(n0) for
/// n = 1..=horizon and report the first zero (FD), a preceding negative
/// value (no unirrep) or, failing both, BFB. `horizon` must be ≥ λ so that
/// every admissible FD dimension is in range.
pub fn classify_oracle(
    params: &AlgebraParams,
    n0: i64,
    horizon: usize,
) -> Result<Option<UnirrepDescriptor>> {
    let lam = params.lambda();
    if horizon < lam {
        return Err(ClextError::InvalidParameters(format!(
            "horizon {horizon} < lambda {lam}"
        )));
    }
    let c = params.structure_function(n0);
    let mu0 = params.residue(n0);
    let mut margin = f64::INFINITY;
    for n in 1..=horizon {
        let l = lambda_seq(params, c, n0, n as i64);
        if l.abs() <= TOL_EXACT {
            if n > lam - 1 {
                // a first zero beyond λ−1 cannot happen for exact input;
                // treat as no unirrep rather than an oversized FD
                return Ok(None);
            }
            return Ok(Some(descriptor(
                params,
                n0,
                mu0,
                UnirrepKind::Fd { d: n },
                margin,
            )));
        }
        if l < 0.0 {
            return Ok(None);
        }
        margin = margin.min(l.abs());
    }
    Ok(Some(descriptor(params, n0, mu0, UnirrepKind::Bfb, margin)))
}

/// Normalization coefficient N_n(c, n0) = Π_{i=1}^n λ_i (empty product = 1).
///
/// Fails with `UnitarityViolation` if any factor up to level n is negative
/// beyond tolerance.
pub fn normalization(params: &AlgebraParams, c: f64, n0: i64, n: usize) -> Result<f64> {
    let mut prod = 1.0;
    for i in 1..=n {
        let l = lambda_seq(params, c, n0, i as i64);
        if l < -TOL_EXACT {
            return Err(ClextError::UnitarityViolation(format!(
                "lambda_{i} = {l:e} < 0 at n0 = {n0}"
            )));
        }
        prod *= l.max(0.0);
    }
    Ok(prod)
}

/// Gamma-function closed form of the BFB normalization coefficient,
/// valid when every gamma argument is strictly positive (the BFB region);
/// returns `None` outside it. Assumes the BFB Casimir value c = F(n0).
///
/// Writing n = kλ + μ with μ in 0..λ, the coefficient is λ^n times a ratio
/// of Γ(β̄_ν − β̄_{μ0} + shift) products, where the shift pattern depends on
/// whether ν wraps past the grade λ−1.
pub fn normalization_gamma_form(params: &AlgebraParams, n0: i64, n: usize) -> Option<f64> {
    let lam = params.lambda();
    let mu0 = params.residue(n0);
    let k = n / lam;
    let mu = n % lam;
    let base = params.beta_bar()[mu0];
    let d = |nu: usize| params.beta_bar()[nu] - base;

    let mut args_num: Vec<f64> = Vec::with_capacity(lam);
    if mu + mu0 < lam {
        for nu in 0..=(mu0 + mu) {
            args_num.push(d(nu) + k as f64 + 1.0);
        }
        for nu in (mu0 + mu + 1)..lam {
            args_num.push(d(nu) + k as f64);
        }
    } else {
        for nu in 0..=(mu0 + mu - lam) {
            args_num.push(d(nu) + k as f64 + 2.0);
        }
        for nu in (mu0 + mu - lam + 1)..lam {
            args_num.push(d(nu) + k as f64 + 1.0);
        }
    }
    let mut args_den: Vec<f64> = Vec::with_capacity(lam);
    for nu in 0..=mu0 {
        args_den.push(d(nu) + 1.0);
    }
    for nu in (mu0 + 1)..lam {
        args_den.push(d(nu));
    }
    if args_num
        .iter()
        .chain(args_den.iter())
        .any(|&a| a <= TOL_EXACT)
    {
        return None;
    }
    let num: f64 = args_num.iter().map(|&a| gamma(a)).product();
    let den: f64 = args_den.iter().map(|&a| gamma(a)).product();
    Some((lam as f64).powi(n as i32) * num / den)
}

/// Existence of the bosonic Fock-space unirrep (c = n0 = 0): the λ−1
/// strict inequalities Σ_{ρ≤ν} α_ρ > −ν−1, i.e. F(ν+1) > 0 for each grade.
pub fn fock_exists(params: &AlgebraParams) -> bool {
    (1..params.lambda()).all(|n| params.structure_function(n as i64) > TOL_EXACT)
}

/// A general-algebra unirrep, obtained from a unirrep of the shifted
/// number-operator realization by the relabeling N → N + r_0 and a cyclic
/// grade shift γ.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneralUnirrepDescriptor {
    /// Classification of the primed realization (parameters α'_μ = α_{μ+γ}).
    pub base: UnirrepDescriptor,
    /// Fractional part of the lowest N eigenvalue, in [0, 1).
    pub r0: f64,
    /// C_2 grading label in 0..λ.
    pub grade_gamma: usize,
    /// C_3 eigenvalue of the unprimed algebra: base.c + r0 + β_γ.
    pub c_general: f64,
}

/// Map a general-algebra unirrep label (r0, γ, n0) onto the classification
/// of the primed realization with α'_μ = α_{μ+γ}. Propagates `NoUnirrep`
/// when the primed classification fails at n0.
pub fn map_general_unirrep(
    params: &AlgebraParams,
    r0: f64,
    grade_gamma: usize,
    n0: i64,
) -> Result<GeneralUnirrepDescriptor> {
    if !(0.0..1.0).contains(&r0) {
        return Err(ClextError::InvalidParameters(format!(
            "r0 must lie in [0, 1), got {r0}"
        )));
    }
    if grade_gamma >= params.lambda() {
        return Err(ClextError::InvalidParameters(format!(
            "grade label {grade_gamma} out of range for lambda {}",
            params.lambda()
        )));
    }
    let primed = params.shifted(grade_gamma as i64);
    let base = classify_gdoa(&primed, n0).ok_or(ClextError::NoUnirrep)?;
    let c_general = base.c + r0 + params.beta()[grade_gamma];
    Ok(GeneralUnirrepDescriptor {
        base,
        r0,
        grade_gamma,
        c_general,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn params(lambda: usize, free: &[f64]) -> AlgebraParams {
        AlgebraParams::new(lambda, free).unwrap()
    }

    #[test]
    fn lambda_seq_from_structure_table() {
        let p = params(3, &[1.0, 0.0]);
        let vals: Vec<f64> = (0..4).map(|n| lambda_seq(&p, 0.0, 0, n)).collect();
        assert_eq!(vals, vec![0.0, 2.0, 3.0, 3.0]);
        // c = F(n0) always gives lambda_0 = 0
        for n0 in -4..4 {
            let c = p.structure_function(n0);
            assert_abs_diff_eq!(lambda_seq(&p, c, n0, 0), 0.0, epsilon = TOL_EXACT);
        }
    }

    #[test]
    fn fd_boundary_ladder() {
        // alpha = (0, -2, 2): F(2) = 2 + beta_2 = 0 -> FD(2) at n0 = 0
        let p = params(3, &[0.0, -2.0]);
        assert_abs_diff_eq!(lambda_seq(&p, 0.0, 0, 2), 0.0, epsilon = TOL_EXACT);
        let d = classify_gdoa(&p, 0).unwrap();
        assert_eq!(d.kind, UnirrepKind::Fd { d: 2 });
        assert_eq!(d.c, 0.0);
    }

    #[test]
    fn table1_rows_classify() {
        // alpha_0 > -1, even n0 -> BFB with c = n0
        let p = params(2, &[1.0]);
        for k0 in -3..3i64 {
            let d = classify_gdoa(&p, 2 * k0).unwrap();
            assert_eq!(d.kind, UnirrepKind::Bfb);
            assert_abs_diff_eq!(d.c, 2.0 * k0 as f64, epsilon = TOL_EXACT);
        }
        // alpha_0 = -1, even n0 -> FD(1) with c = n0
        let p = params(2, &[-1.0]);
        let d = classify_gdoa(&p, 4).unwrap();
        assert_eq!(d.kind, UnirrepKind::Fd { d: 1 });
        assert_abs_diff_eq!(d.c, 4.0, epsilon = TOL_EXACT);
    }

    #[test]
    fn table2_rows_classify() {
        // alpha = (0, -2, 2) at n0 = 3k0 -> FD(2), c = n0
        let p = params(3, &[0.0, -2.0]);
        let d = classify_gdoa(&p, -3).unwrap();
        assert_eq!(d.kind, UnirrepKind::Fd { d: 2 });
        assert_abs_diff_eq!(d.c, -3.0, epsilon = TOL_EXACT);

        // alpha = (1, 0, -1) at n0 = 3k0 + 1 -> BFB, c = n0 + 1
        let p = params(3, &[1.0, 0.0]);
        let d = classify_gdoa(&p, 7).unwrap();
        assert_eq!(d.kind, UnirrepKind::Bfb);
        assert_abs_diff_eq!(d.c, 8.0, epsilon = TOL_EXACT);
    }

    #[test]
    fn table3_fd3_row() {
        // lambda = 4, alpha_0 = 3, alpha_1 > -1, alpha_2 > -2 - alpha_1:
        // n0 = 4k0 + 1 -> FD(3) with c = n0 + 3
        let p = params(4, &[3.0, 0.5, -1.0]);
        let d = classify_gdoa(&p, 5).unwrap();
        assert_eq!(d.kind, UnirrepKind::Fd { d: 3 });
        assert_abs_diff_eq!(d.c, 8.0, epsilon = TOL_EXACT);
        let o = classify_oracle(&p, 5, 16).unwrap().unwrap();
        assert_eq!(o.kind, d.kind);
        assert_abs_diff_eq!(o.c, d.c, epsilon = TOL_EXACT);
    }

    #[test]
    fn oracle_requires_horizon() {
        let p = params(3, &[0.0, 0.0]);
        assert!(classify_oracle(&p, 0, 2).is_err());
    }

    #[test]
    fn no_unirrep_between_boundaries() {
        // alpha_0 < -1 at even n0 makes lambda_1 < 0 for lambda = 2
        let p = params(2, &[-1.5]);
        assert!(classify_gdoa(&p, 0).is_none());
        assert!(classify_oracle(&p, 0, 8).unwrap().is_none());
    }

    #[test]
    fn normalization_products() {
        let p = params(3, &[1.0, 0.0]);
        assert_eq!(normalization(&p, 0.0, 0, 0).unwrap(), 1.0);
        // lambda_1..3 = 2, 3, 3
        assert_abs_diff_eq!(
            normalization(&p, 0.0, 0, 3).unwrap(),
            18.0,
            epsilon = TOL_EXACT
        );
        // negative factor -> unitarity violation
        let bad = params(2, &[-1.5]);
        assert!(matches!(
            normalization(&bad, 0.0, 0, 2),
            Err(ClextError::UnitarityViolation(_))
        ));
    }

    #[test]
    fn gamma_form_matches_product_undeformed() {
        // alpha = 0: N_n = n! for n0 = 0 and N_n = prod (F(n0+i)-F(n0)) elsewhere
        let p = params(2, &[0.0]);
        for n0 in 0..2i64 {
            let c = p.structure_function(n0);
            for n in 0..10usize {
                let prod = normalization(&p, c, n0, n).unwrap();
                let gf = normalization_gamma_form(&p, n0, n).unwrap();
                assert_abs_diff_eq!(gf / prod, 1.0, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn fock_existence() {
        assert!(fock_exists(&params(3, &[0.0, 0.0])));
        assert!(fock_exists(&params(3, &[1.0, 0.0])));
        // boundary excluded
        assert!(!fock_exists(&params(2, &[-1.0])));
    }

    #[test]
    fn general_unirrep_identity_mapping() {
        let p = params(3, &[1.0, 0.0]);
        let g = map_general_unirrep(&p, 0.0, 0, 0).unwrap();
        let base = classify_gdoa(&p, 0).unwrap();
        assert_eq!(g.base, base);
        assert_abs_diff_eq!(g.c_general, base.c, epsilon = TOL_EXACT);
    }

    #[test]
    fn general_unirrep_shifted_params() {
        let p = params(3, &[1.0, 0.0]);
        // primed parameters are (0, -1, 1)
        let shifted = p.shifted(1);
        assert_eq!(shifted.alpha(), &[0.0, -1.0, 1.0]);
        let g = map_general_unirrep(&p, 0.25, 1, 0).unwrap();
        let base = classify_gdoa(&shifted, 0).unwrap();
        assert_eq!(g.base, base);
        assert_abs_diff_eq!(
            g.c_general,
            base.c + 0.25 + p.beta()[1],
            epsilon = TOL_EXACT
        );
    }

    #[test]
    fn general_unirrep_rejects_bad_labels() {
        let p = params(3, &[1.0, 0.0]);
        assert!(map_general_unirrep(&p, 1.0, 0, 0).is_err());
        assert!(map_general_unirrep(&p, 0.0, 3, 0).is_err());
        // lambda_1 < 0 for the shifted params -> NoUnirrep
        let bad = params(2, &[-1.5]);
        assert!(matches!(
            map_general_unirrep(&bad, 0.1, 0, 0),
            Err(ClextError::NoUnirrep)
        ));
    }

    proptest! {
        #[test]
        fn oracle_agrees_with_closed_form(
            lambda in 2usize..6,
            seed in proptest::collection::vec(-3.0f64..3.0, 5),
            n0 in -6i64..6,
        ) {
            let free: Vec<f64> = seed.iter().take(lambda - 1).cloned().collect();
            prop_assume!(free.len() == lambda - 1);
            let p = AlgebraParams::new(lambda, &free).unwrap();
            let a = classify_gdoa(&p, n0);
            let b = classify_oracle(&p, n0, 4 * lambda).unwrap();
            match (a, b) {
                (None, None) => {}
                (Some(x), Some(y)) => {
                    prop_assert_eq!(x.kind, y.kind);
                    prop_assert!((x.c - y.c).abs() <= 1e-9);
                }
                (x, y) => prop_assert!(false, "mismatch: {:?} vs {:?}", x, y),
            }
        }

        #[test]
        fn bfb_ladder_positive_and_periodic(
            lambda in 2usize..6,
            seed in proptest::collection::vec(-0.8f64..3.0, 5),
        ) {
            // betas sampled so that F(n) > 0 for n = 1..lambda: BFB at n0 = 0
            let mut beta = vec![0.0];
            for (i, s) in seed.iter().take(lambda - 1).enumerate() {
                beta.push(*s - i as f64 * 0.1);
            }
            prop_assume!(beta.len() == lambda);
            prop_assume!((1..lambda).all(|n| n as f64 + beta[n] > 0.1));
            let mut alpha_free = Vec::new();
            for mu in 0..lambda - 1 {
                alpha_free.push(beta[mu + 1] - beta[mu]);
            }
            let p = AlgebraParams::new(lambda, &alpha_free).unwrap();
            let d = classify_gdoa(&p, 0).unwrap();
            prop_assert_eq!(d.kind, UnirrepKind::Bfb);
            for n in 1..lambda as i64 {
                prop_assert!(lambda_seq(&p, d.c, 0, n) > 0.0);
            }
            // F(n0 + lambda) - F(n0) = lambda exactly
            let full = lambda_seq(&p, d.c, 0, lambda as i64);
            prop_assert!((full - lambda as f64).abs() <= TOL_EXACT);
        }

        #[test]
        fn gamma_form_matches_product_random_bfb(
            seed in proptest::collection::vec(0.05f64..2.5, 3),
            n0 in 0i64..6,
        ) {
            // construct lambda = 4 params with all ladder values positive at
            // every grade: beta_mu + mu > 0 ensures BFB everywhere
            let lambda = 4usize;
            let mut beta = vec![0.0];
            for (i, s) in seed.iter().enumerate() {
                beta.push(*s - 0.5 * i as f64);
            }
            let mut alpha_free = Vec::new();
            for mu in 0..lambda - 1 {
                alpha_free.push(beta[mu + 1] - beta[mu]);
            }
            let p = AlgebraParams::new(lambda, &alpha_free).unwrap();
            prop_assume!((1..2 * lambda).all(|n| {
                let c = p.structure_function(n0);
                lambda_seq(&p, c, n0, n as i64) > 1e-6
            }));
            let c = p.structure_function(n0);
            for n in 0..=12usize {
                let prod = normalization(&p, c, n0, n).unwrap();
                if let Some(gf) = normalization_gamma_form(&p, n0, n) {
                    prop_assert!(
                        (gf - prod).abs() <= 1e-9 * prod.abs().max(1.0),
                        "n = {}: gamma {} vs product {}", n, gf, prod
                    );
                }
            }
        }

        #[test]
        fn c_general_offset_relation(
            seed in proptest::collection::vec(-2.0f64..2.0, 2),
            r0 in 0.0f64..0.999,
            gamma in 0usize..3,
            n0 in -4i64..4,
        ) {
            let p = AlgebraParams::new(3, &seed).unwrap();
            if let Ok(g) = map_general_unirrep(&p, r0, gamma, n0) {
                prop_assert!((g.c_general - g.base.c - r0 - p.beta()[gamma]).abs() <= TOL_EXACT);
            }
        }
    }
}
