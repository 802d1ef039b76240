//! Machine-checkable classification tables for λ = 2, 3, 4.
//!
//! Each table row pins one (lowest-weight residue, unirrep kind) pair and
//! carries its region of validity as linear constraints on the full α
//! vector, plus the Casimir eigenvalue as a linear form in α. The rows of a
//! table partition the parameter space per residue class, up to the
//! measure-zero boundaries occupied by the finite-dimensional rows.

use rand::Rng;
use serde::Serialize;

use crate::algebra::{AlgebraParams, TOL_EXACT};
use crate::error::{ClextError, Result};
use crate::rep::UnirrepKind;

/// Comparison operator of a linear constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ConstraintOp {
    /// strictly greater than zero
    Gt,
    /// equal to zero (within tolerance)
    Eq,
}

/// A constraint of the form  `constant + Σ coeffs[μ]·α_μ  (op)  0`.
#[derive(Debug, Clone, Serialize)]
pub struct Constraint {
    pub coeffs: Vec<f64>,
    pub constant: f64,
    pub op: ConstraintOp,
    /// Human-readable rendering, e.g. "1 + a0 > 0".
    pub text: String,
}

impl Constraint {
    pub fn value(&self, alpha: &[f64]) -> f64 {
        self.constant
            + self
                .coeffs
                .iter()
                .zip(alpha)
                .map(|(c, a)| c * a)
                .sum::<f64>()
    }

    pub fn holds(&self, alpha: &[f64]) -> bool {
        let v = self.value(alpha);
        match self.op {
            ConstraintOp::Gt => v > TOL_EXACT,
            ConstraintOp::Eq => v.abs() <= TOL_EXACT,
        }
    }
}

/// One classification-table row.
#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub kind: UnirrepKind,
    /// Residue class of the lowest weight: n0 = λ·k0 + residue.
    pub residue: usize,
    /// n0 pattern, e.g. "3k0 + 1".
    pub n0_pattern: String,
    /// Casimir eigenvalue `c = n0 + c_constant + Σ c_coeffs[μ]·α_μ`.
    pub c_coeffs: Vec<f64>,
    pub c_constant: f64,
    /// Rendering of the c formula.
    pub c_text: String,
    pub conditions: Vec<Constraint>,
}

impl TableRow {
    /// Whether the row's condition region contains this α vector.
    pub fn matches(&self, alpha: &[f64]) -> bool {
        self.conditions.iter().all(|c| c.holds(alpha))
    }

    /// Casimir eigenvalue predicted by the row at lowest weight n0.
    pub fn c_value(&self, n0: i64, alpha: &[f64]) -> f64 {
        n0 as f64
            + self.c_constant
            + self
                .c_coeffs
                .iter()
                .zip(alpha)
                .map(|(c, a)| c * a)
                .sum::<f64>()
    }

    /// Draw algebra parameters uniformly from the row's region.
    ///
    /// The ladder values λ_n at offsets n = 1..λ−1 determine β (hence α)
    /// once β_0 = 0 is imposed, so the row region is sampled exactly by
    /// drawing each constrained ladder value positive, pinning the zero at
    /// the FD dimension and leaving the rest unconstrained.
    pub fn sample_params(&self, lambda: usize, rng: &mut impl Rng) -> AlgebraParams {
        let mu0 = self.residue;
        let d = match self.kind {
            UnirrepKind::Bfb => lambda, // no zero in range
            UnirrepKind::Fd { d } => d,
        };
        let mut ladder = vec![0.0f64; lambda];
        for (n, slot) in ladder.iter_mut().enumerate().skip(1) {
            *slot = if n == d {
                0.0
            } else if n < d {
                rng.gen_range(0.05..3.0)
            } else {
                rng.gen_range(-2.0..3.0)
            };
        }
        // beta at residue (mu0 + n) % lambda relative to beta_mu0
        let mut beta = vec![0.0f64; lambda];
        let beta_mu0 = if mu0 == 0 {
            0.0
        } else {
            let n_star = lambda - mu0;
            n_star as f64 - ladder[n_star]
        };
        beta[mu0] = beta_mu0;
        for n in 1..lambda {
            beta[(mu0 + n) % lambda] = beta_mu0 + ladder[n] - n as f64;
        }
        debug_assert!(beta[0].abs() <= 1e-12);
        let alpha_free: Vec<f64> = (0..lambda - 1).map(|mu| beta[mu + 1] - beta[mu]).collect();
        AlgebraParams::new(lambda, &alpha_free).expect("sampled parameters are valid")
    }
}

fn format_linear(constant: f64, coeffs: &[f64]) -> String {
    let mut out = String::new();
    if constant != 0.0 || coeffs.iter().all(|&c| c == 0.0) {
        out.push_str(&format!("{constant}"));
    }
    for (mu, &c) in coeffs.iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        if out.is_empty() {
            out.push_str(&if c == 1.0 {
                format!("a{mu}")
            } else if c == -1.0 {
                format!("-a{mu}")
            } else {
                format!("{c}*a{mu}")
            });
        } else if c == 1.0 {
            out.push_str(&format!(" + a{mu}"));
        } else if c == -1.0 {
            out.push_str(&format!(" - a{mu}"));
        } else if c > 0.0 {
            out.push_str(&format!(" + {c}*a{mu}"));
        } else {
            out.push_str(&format!(" - {}*a{mu}", -c));
        }
    }
    out
}

/// Coefficients of β_m = Σ_{ν<m} α_ν as a vector over the full α.
fn beta_coeffs(lambda: usize, m: usize) -> Vec<f64> {
    let mut v = vec![0.0; lambda];
    for entry in v.iter_mut().take(m) {
        *entry = 1.0;
    }
    v
}

/// Ladder value λ_n at residue μ0 as a linear form in α:
/// λ_n = n + β_{(μ0+n) mod λ} − β_{μ0}.
fn ladder_form(lambda: usize, mu0: usize, n: usize) -> (f64, Vec<f64>) {
    let m2 = (mu0 + n) % lambda;
    let plus = beta_coeffs(lambda, m2);
    let minus = beta_coeffs(lambda, mu0);
    let coeffs: Vec<f64> = plus.iter().zip(&minus).map(|(p, m)| p - m).collect();
    (n as f64, coeffs)
}

fn row(lambda: usize, mu0: usize, kind: UnirrepKind) -> TableRow {
    let d = match kind {
        UnirrepKind::Bfb => lambda,
        UnirrepKind::Fd { d } => d,
    };
    let mut conditions = Vec::new();
    for n in 1..lambda {
        let (constant, coeffs) = ladder_form(lambda, mu0, n);
        if n < d {
            let text = format!("{} > 0", format_linear(constant, &coeffs));
            conditions.push(Constraint {
                coeffs,
                constant,
                op: ConstraintOp::Gt,
                text,
            });
        } else if n == d {
            let text = format!("{} = 0", format_linear(constant, &coeffs));
            conditions.push(Constraint {
                coeffs,
                constant,
                op: ConstraintOp::Eq,
                text,
            });
        }
        // offsets beyond the FD dimension are unconstrained
    }
    let c_coeffs = beta_coeffs(lambda, mu0);
    let c_text = if mu0 == 0 {
        "n0".to_string()
    } else {
        format!("n0 + {}", format_linear(0.0, &c_coeffs))
    };
    TableRow {
        kind,
        residue: mu0,
        n0_pattern: if mu0 == 0 {
            format!("{lambda}k0")
        } else {
            format!("{lambda}k0 + {mu0}")
        },
        c_coeffs,
        c_constant: 0.0,
        c_text,
        conditions,
    }
}

/// The classification table for λ in {2, 3, 4}: λ² rows, one per
/// (kind, residue) pair, ordered BFB first and then by FD dimension.
pub fn table_report(lambda: usize) -> Result<Vec<TableRow>> {
    if !(2..=4).contains(&lambda) {
        return Err(ClextError::InvalidParameters(format!(
            "classification tables cover lambda in 2..=4, got {lambda}"
        )));
    }
    let mut rows = Vec::with_capacity(lambda * lambda);
    for mu0 in 0..lambda {
        rows.push(row(lambda, mu0, UnirrepKind::Bfb));
    }
    for d in 1..lambda {
        for mu0 in 0..lambda {
            rows.push(row(lambda, mu0, UnirrepKind::Fd { d }));
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{classify_gdoa, classify_oracle};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn row_counts_match_tables() {
        assert_eq!(table_report(2).unwrap().len(), 4);
        assert_eq!(table_report(3).unwrap().len(), 9);
        assert_eq!(table_report(4).unwrap().len(), 16);
        assert!(table_report(5).is_err());
    }

    #[test]
    fn known_row_conditions() {
        // lambda = 2, BFB at even n0: alpha_0 > -1
        let rows = table_report(2).unwrap();
        let bfb0 = &rows[0];
        assert_eq!(bfb0.kind, UnirrepKind::Bfb);
        assert!(bfb0.matches(&[1.0, -1.0]));
        assert!(!bfb0.matches(&[-1.0, 1.0]));
        assert!(!bfb0.matches(&[-1.5, 1.5]));

        // FD(1) at even n0: alpha_0 = -1
        let fd0 = rows
            .iter()
            .find(|r| r.kind == UnirrepKind::Fd { d: 1 } && r.residue == 0)
            .unwrap();
        assert!(fd0.matches(&[-1.0, 1.0]));
        assert!(!fd0.matches(&[0.0, 0.0]));
    }

    #[test]
    fn sampled_rows_classify_as_labeled() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for lambda in 2..=4usize {
            for row in table_report(lambda).unwrap() {
                for _ in 0..25 {
                    let p = row.sample_params(lambda, &mut rng);
                    assert!(row.matches(p.alpha()), "row region must contain sample");
                    let n0 = row.residue as i64 - 2 * lambda as i64; // negative k0 branch
                    let d = classify_gdoa(&p, n0)
                        .unwrap_or_else(|| panic!("classification failed for {row:?}"));
                    assert_eq!(d.kind, row.kind);
                    let expect_c = row.c_value(n0, p.alpha());
                    assert!(
                        (d.c - expect_c).abs() <= 1e-9,
                        "c mismatch: {} vs {}",
                        d.c,
                        expect_c
                    );
                    let o = classify_oracle(&p, n0, 4 * lambda).unwrap().unwrap();
                    assert_eq!(o.kind, row.kind);
                }
            }
        }
    }

    #[test]
    fn generic_alpha_matches_exactly_one_row_per_residue() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for lambda in 2..=4usize {
            let rows = table_report(lambda).unwrap();
            for _ in 0..50 {
                let free: Vec<f64> = (0..lambda - 1).map(|_| rng.gen_range(-2.5..2.5)).collect();
                let p = AlgebraParams::new(lambda, &free).unwrap();
                for mu0 in 0..lambda {
                    let hits = rows
                        .iter()
                        .filter(|r| r.residue == mu0 && r.matches(p.alpha()))
                        .count();
                    let classified = classify_gdoa(&p, mu0 as i64).is_some();
                    assert!(
                        hits <= 1,
                        "alpha {:?} matched {hits} rows at residue {mu0}",
                        p.alpha()
                    );
                    assert_eq!(
                        hits == 1,
                        classified,
                        "row match and classification disagree for {:?}",
                        p.alpha()
                    );
                }
            }
        }
    }
}
