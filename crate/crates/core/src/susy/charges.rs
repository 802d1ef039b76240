//! The p conserved parasupercharges Q_r and bosonic constants I_t.
//!
//! Besides the distinguished charge Q there are p independent charges
//! Q_r = √2 Σ_ν b_r^ν a† P_{μ+ν} and p+1 diagonal constants
//! I_t = Σ_ν b_t^ν P_{μ+ν} with sign table b_t^ν = 1 − 2δ_{t,ν}(1 − δ_{t,1});
//! I_1 is the identity. Every Q_r satisfies the full order-p algebra with
//! the same Hamiltonian, any p+1 charges multiply to zero, and
//! [I_t, Q_r] = Σ_s d_tr^s Q_s with structure constants d_tr^s = Σ_ν
//! c_tr^ν b_ν^s. The charges also obey mixed multilinear relations
//!
//! ```text
//! I_{t_1} Q_{r_1}...Q_{r_p} Q_s† + I_{t_2} Q_{r_2}...Q_{r_p} Q_s† Q_{r_1}
//!   + ... + I_{t_{p+1}} Q_s† Q_{r_1}...Q_{r_p} = 2p Q_r^{p-1} H,
//! ```
//!
//! valid exactly for the index tuples selected by the sign conditions
//! D_k^ν = B_k([r]^{p−1}), k = 1, 2.

use super::{matrix_power, product, real};
use crate::error::{ClextError, Result};
use crate::fock::{commutator, max_abs_block, CMat, FockRep};
use crate::report::RelationReport;

/// Sign table b_t^ν = 1 − 2δ_{t,ν}(1 − δ_{t,1}) for 1-based t, ν.
fn b(t: usize, nu: usize) -> f64 {
    if t != 1 && t == nu {
        -1.0
    } else {
        1.0
    }
}

/// B_base(list) = Π_l b_{list[l]}^{base + (len−1) − l}; empty product = 1.
fn b_product(base: usize, list: &[usize]) -> f64 {
    let n = list.len();
    list.iter()
        .enumerate()
        .map(|(l, &r)| b(r, base + n - 1 - l))
        .product()
}

/// Charges, constants, and their coefficient tables. All index vectors are
/// 1-based in the algebraic conventions; storage is 0-based.
#[derive(Debug, Clone)]
pub struct ChargeSet {
    pub p: usize,
    pub mu: usize,
    /// Q_1, ..., Q_p.
    pub q_r: Vec<CMat>,
    /// I_1, ..., I_{p+1}.
    pub i_t: Vec<CMat>,
    /// d_tr^s for t = 1..=p+1, r, s = 1..=p; indexed `[t-1][r-1][s-1]`.
    pub d_tr_s: Vec<Vec<Vec<f64>>>,
}

impl ChargeSet {
    pub fn q(&self, r: usize) -> &CMat {
        &self.q_r[r - 1]
    }

    pub fn i(&self, t: usize) -> &CMat {
        &self.i_t[t - 1]
    }

    pub fn d(&self, t: usize, r: usize, s: usize) -> f64 {
        self.d_tr_s[t - 1][r - 1][s - 1]
    }
}

/// Inverse expansion coefficients: √2 a† P_{μ+ν} = Σ_r b_ν^r Q_r.
fn b_inverse(p: usize, nu: usize, r: usize) -> f64 {
    let d = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
    0.5 * (d(nu, 1) * (1.0 + (2.0 - p as f64) * d(r, 1)) + (1.0 - d(nu, 1)) * (d(r, 1) - d(nu, r)))
}

/// Build the p charges and p+1 constants at grade shift μ.
pub fn build_charge_set(rep: &FockRep, mu: usize) -> Result<ChargeSet> {
    let lambda = rep.lambda();
    let p = lambda - 1;
    if mu >= lambda {
        return Err(ClextError::InvalidParameters(format!(
            "mu must lie in 0..={p}, got {mu}"
        )));
    }
    let dim = rep.dim();
    let sqrt2 = real(2f64.sqrt());
    let q_r: Vec<CMat> = (1..=p)
        .map(|r| {
            let mut q = CMat::zeros(dim, dim);
            for nu in 1..=p {
                q += rep.a_dag() * rep.projector((mu + nu) as i64) * (sqrt2 * real(b(r, nu)));
            }
            q
        })
        .collect();
    let i_t: Vec<CMat> = (1..=p + 1)
        .map(|t| {
            let mut m = CMat::zeros(dim, dim);
            for nu in 1..=p + 1 {
                m += rep.projector((mu + nu) as i64) * real(b(t, nu));
            }
            m
        })
        .collect();

    // d_tr^s = Σ_ν c_tr^ν b_ν^s with c_tr^ν = (b_t^{ν+1} − b_t^ν) b_r^ν
    let mut d_tr_s = vec![vec![vec![0.0; p]; p]; p + 1];
    for t in 1..=p + 1 {
        for r in 1..=p {
            for s in 1..=p {
                let mut acc = 0.0;
                for nu in 1..=p {
                    let c = (b(t, nu + 1) - b(t, nu)) * b(r, nu);
                    acc += c * b_inverse(p, nu, s);
                }
                d_tr_s[t - 1][r - 1][s - 1] = acc;
            }
        }
    }
    Ok(ChargeSet {
        p,
        mu,
        q_r,
        i_t,
        d_tr_s,
    })
}

impl ChargeSet {
    /// Verify the charge-set identities on `rep` with Hamiltonian `h`:
    /// each Q_r satisfies the order-p algebra, the I_t commute with H and
    /// among themselves (I_1 = identity), [I_t, Q_r] = Σ_s d_tr^s Q_s, and
    /// products of p+1 charges vanish. For p ≥ 4 the (p+1)-fold products
    /// are checked on a deterministic subsample of index tuples.
    pub fn verify(&self, rep: &FockRep, h: &CMat, tol: f64) -> Result<RelationReport> {
        let lambda = rep.lambda();
        if rep.dim() < 3 * lambda {
            return Err(ClextError::TruncationTooSmall(format!(
                "need dim >= 3*lambda = {}, got {}",
                3 * lambda,
                rep.dim()
            )));
        }
        let p = self.p;
        let block = rep.interior();
        let dim = rep.dim();
        let mut report = RelationReport::new();

        let id = CMat::identity(dim, dim);
        report.push(
            "i1_is_identity",
            max_abs_block(&(self.i(1) - id), block),
            tol,
        );

        let mut worst = 0.0f64;
        for q in &self.q_r {
            worst = worst.max(max_abs_block(&matrix_power(q, p + 1), block));
        }
        report.push("qr_power_p_plus_1_zero", worst, tol);

        let mut worst = 0.0f64;
        let mut nonzero = true;
        for q in &self.q_r {
            worst = worst.max(max_abs_block(&commutator(h, q), block));
            nonzero &= max_abs_block(&matrix_power(q, p), block) > tol;
        }
        report.push("comm_h_qr", worst, tol);
        report.push_flag("qr_power_p_nonzero", nonzero);

        // residual relative to the operand scale, which grows with F^{(p+1)/2}
        let mut worst = 0.0f64;
        for q in &self.q_r {
            let q_dag = q.adjoint();
            let mut multi = CMat::zeros(dim, dim);
            for k in 0..=p {
                multi += matrix_power(q, p - k) * &q_dag * matrix_power(q, k);
            }
            let rhs = matrix_power(q, p - 1) * h * real(2.0 * p as f64);
            let scale = max_abs_block(&rhs, block).max(1.0);
            worst = worst.max(max_abs_block(&(multi - rhs), block) / scale);
        }
        report.push("qr_multilinear", worst, tol);

        let mut worst = 0.0f64;
        for it in &self.i_t {
            worst = worst.max(max_abs_block(&commutator(h, it), block));
            for jt in &self.i_t {
                worst = worst.max(max_abs_block(&commutator(it, jt), block));
            }
        }
        report.push("it_commute", worst, tol);

        let mut worst = 0.0f64;
        for t in 1..=p + 1 {
            for r in 1..=p {
                let mut rhs = CMat::zeros(dim, dim);
                for s in 1..=p {
                    rhs += self.q(s) * real(self.d(t, r, s));
                }
                let lhs = commutator(self.i(t), self.q(r));
                worst = worst.max(max_abs_block(&(lhs - rhs), block));
            }
        }
        report.push("it_qr_structure_constants", worst, tol);

        // Q_{r_1} ... Q_{r_{p+1}} = 0 for all charge words of length p+1
        let tuples = p.pow(p as u32 + 1);
        let stride = (tuples / 200).max(1);
        let mut worst = 0.0f64;
        let mut index = 0usize;
        while index < tuples {
            let mut word = Vec::with_capacity(p + 1);
            let mut rem = index;
            for _ in 0..=p {
                word.push(&self.q_r[rem % p]);
                rem /= p;
            }
            worst = worst.max(max_abs_block(&product(dim, &word), block));
            index += if p <= 3 { 1 } else { stride };
        }
        report.push("qr_word_p_plus_1_zero", worst, tol);

        Ok(report)
    }
}

/// One verified mixed multilinear relation, identified by the right-hand
/// charge index, the charge word r_1..r_p, the daggered index s, and the
/// constants t_1..t_{p+1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedRelation {
    pub rhs_r: usize,
    pub rs: Vec<usize>,
    pub s: usize,
    pub ts: Vec<usize>,
}

fn d_k_nu(p: usize, k: usize, nu: usize, rs: &[usize], s: usize, ts: &[usize]) -> f64 {
    // rs and ts are 1-based sequences r_1..r_p, t_1..t_{p+1}
    let t_idx = nu + 2 - k; // in 1..=p+1
    let first = b(ts[t_idx - 1], p + k - 1);
    let tail = if t_idx <= p { &rs[t_idx - 1..] } else { &[] };
    let head = if nu + 1 > k { &rs[..nu + 1 - k] } else { &[] };
    first * b_product(nu, tail) * b(s, nu) * b_product(k, head)
}

fn b_repeated(p: usize, k: usize, r: usize) -> f64 {
    b_product(k, &vec![r; p - 1])
}

/// A tuple in canonical form: redundant constants absorbed by position.
/// I_t acts as the identity on the first term for t ≤ p, on the middle
/// terms for t ≤ p−1, and on the last term for t ≤ p−1 or t = p+1.
fn absorb_ts(p: usize, rel: &mut MixedRelation) {
    for (j, t) in rel.ts.iter_mut().enumerate() {
        let absorbable = if j == 0 {
            *t <= p
        } else if j < p {
            *t <= p1_middle_cap(p)
        } else {
            *t <= p1_middle_cap(p) || *t == p + 1
        };
        if absorbable {
            *t = 1;
        }
    }
}

fn p1_middle_cap(p: usize) -> usize {
    p.saturating_sub(1)
}

fn is_valid(p: usize, rel: &MixedRelation) -> bool {
    let targets = [b_repeated(p, 1, rel.rhs_r), b_repeated(p, 2, rel.rhs_r)];
    (1..=2).all(|k| (1..=p).all(|nu| d_k_nu(p, k, nu, &rel.rs, rel.s, &rel.ts) == targets[k - 1]))
}

/// Neighbour tuples reachable through one I·Q pair rewrite at a charge
/// position: I_{r+1} Q_r = Q_1 (r ≥ 2) and I_t Q_1 = Q_{t−1} (t ≥ 3),
/// applied jointly to (t_j, r_j) and re-canonicalized.
fn pair_rewrites(p: usize, rel: &MixedRelation) -> Vec<MixedRelation> {
    let mut out = Vec::new();
    for j in 0..p {
        let (t, r) = (rel.ts[j], rel.rs[j]);
        let step = if t == r + 1 && r >= 2 {
            Some((1, 1))
        } else if r == 1 && t >= 3 {
            Some((1, t - 1))
        } else {
            None
        };
        if let Some((nt, nr)) = step {
            let mut next = rel.clone();
            next.ts[j] = nt;
            next.rs[j] = nr;
            absorb_ts(p, &mut next);
            out.push(next);
        }
    }
    out
}

fn is_plain(rel: &MixedRelation) -> bool {
    rel.rs.iter().all(|&r| r == rel.s) && rel.ts.iter().all(|&t| t == 1)
}

/// Enumerate all index tuples satisfying the selection conditions,
/// identify tuples connected by the listed charge identities (positional
/// absorption of the I_t and the I·Q pair rewrites), and verify one
/// representative per class as a matrix identity on the interior.
///
/// For p ≥ 2 the classes containing a plain single-charge tuple are the
/// base order-p relations already covered by [`ChargeSet::verify`] and are
/// excluded; for p = 1 the base relation is the only one and is returned.
/// Enumeration is exhaustive and supported for p ≤ 4.
pub fn find_mixed_relations(
    set: &ChargeSet,
    rep: &FockRep,
    h: &CMat,
    tol: f64,
) -> Result<(Vec<MixedRelation>, RelationReport)> {
    let p = set.p;
    if p > 4 {
        return Err(ClextError::InvalidParameters(format!(
            "mixed-relation enumeration is exhaustive and supported for p <= 4, got {p}"
        )));
    }
    let dim = rep.dim();
    let block = rep.interior();

    // canonical candidate tuples passing the scalar conditions
    let mut candidates: Vec<MixedRelation> = Vec::new();
    let r_words = p.pow(p as u32);
    let t_words = (p + 1).pow(p as u32 + 1);
    for rhs_r in 1..=p {
        for s in 1..=p {
            for rw in 0..r_words {
                let mut rs = Vec::with_capacity(p);
                let mut rem = rw;
                for _ in 0..p {
                    rs.push(rem % p + 1);
                    rem /= p;
                }
                for tw in 0..t_words {
                    let mut ts = Vec::with_capacity(p + 1);
                    let mut rem = tw;
                    for _ in 0..=p {
                        ts.push(rem % (p + 1) + 1);
                        rem /= p + 1;
                    }
                    let rel = MixedRelation {
                        rhs_r,
                        rs: rs.clone(),
                        s,
                        ts,
                    };
                    if is_valid(p, &rel) {
                        let mut canon = rel.clone();
                        absorb_ts(p, &mut canon);
                        if !candidates.contains(&canon) {
                            candidates.push(canon);
                        }
                    }
                }
            }
        }
    }

    // union-find over candidates connected by pair rewrites that land on
    // another valid candidate
    let n = candidates.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let root = find(parent, parent[i]);
            parent[i] = root;
        }
        parent[i]
    }
    for i in 0..n {
        for next in pair_rewrites(p, &candidates[i]) {
            if let Some(j) = candidates.iter().position(|c| *c == next) {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }

    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of_root: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let root = find(&mut parent, i);
        match class_of_root[root] {
            Some(c) => classes[c].push(i),
            None => {
                class_of_root[root] = Some(classes.len());
                classes.push(vec![i]);
            }
        }
    }

    // representative: fewest non-identity constants, then lexicographic
    let mut relations: Vec<MixedRelation> = Vec::new();
    for class in classes {
        let plain = class.iter().any(|&i| is_plain(&candidates[i]));
        if plain && p >= 2 {
            continue;
        }
        let rep_idx = class
            .into_iter()
            .min_by_key(|&i| {
                let c = &candidates[i];
                let nonunit = c.ts.iter().filter(|&&t| t != 1).count();
                (nonunit, c.rs.clone(), c.s, c.ts.clone())
            })
            .expect("classes are nonempty");
        relations.push(candidates[rep_idx].clone());
    }
    relations.sort_by_key(|r| (r.rhs_r, r.rs.clone(), r.s, r.ts.clone()));

    // verify each representative as a matrix identity:
    // the j-th term is I_{t_j} Q_{r_j}...Q_{r_p} Q_s† Q_{r_1}...Q_{r_{j-1}}
    let mut report = RelationReport::new();
    for (i, rel) in relations.iter().enumerate() {
        let q_s_dag = set.q(rel.s).adjoint();
        let mut lhs = CMat::zeros(dim, dim);
        for j in 1..=p + 1 {
            let mut factors: Vec<&CMat> = vec![set.i(rel.ts[j - 1])];
            for &r in &rel.rs[j - 1..] {
                factors.push(set.q(r));
            }
            factors.push(&q_s_dag);
            for &r in &rel.rs[..j - 1] {
                factors.push(set.q(r));
            }
            lhs += product(dim, &factors);
        }
        let rhs = matrix_power(set.q(rel.rhs_r), p - 1) * h * real(2.0 * p as f64);
        let residual = max_abs_block(&(lhs - rhs), block);
        report.push(
            format!(
                "mixed_relation_{:02}_r{}_s{}_rs{:?}_ts{:?}",
                i, rel.rhs_r, rel.s, rel.rs, rel.ts
            ),
            residual,
            tol,
        );
    }
    Ok((relations, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraParams;
    use crate::susy::PssqmRealization;
    use approx::assert_abs_diff_eq;

    fn setup(lambda: usize, free: &[f64], mu: usize, dim: usize) -> (FockRep, CMat, ChargeSet) {
        let p = AlgebraParams::new(lambda, free).unwrap();
        let rep = FockRep::build(&p, dim).unwrap();
        let real = PssqmRealization::build(&rep, mu, None).unwrap();
        let set = build_charge_set(&rep, mu).unwrap();
        (rep, real.h_mat, set)
    }

    #[test]
    fn p2_structure_constants_known_values() {
        let (_, _, set) = setup(3, &[1.0, 0.0], 0, 9);
        assert_eq!(set.d(2, 1, 1), 0.0);
        assert_eq!(set.d(2, 2, 2), 0.0);
        assert_eq!(set.d(2, 1, 2), -2.0);
        assert_eq!(set.d(2, 2, 1), -2.0);
        assert_eq!(set.d(3, 1, 1), -1.0);
        assert_eq!(set.d(3, 1, 2), 1.0);
        assert_eq!(set.d(3, 2, 1), 1.0);
        assert_eq!(set.d(3, 2, 2), -1.0);
        // I_1 never moves a charge
        for r in 1..=2 {
            for s in 1..=2 {
                assert_eq!(set.d(1, r, s), 0.0);
            }
        }
    }

    #[test]
    fn charge_set_verifies_p2() {
        let (rep, h, set) = setup(3, &[1.0, 0.0], 0, 30);
        let report = set.verify(&rep, &h, 1e-10).unwrap();
        assert!(report.overall_pass(), "{report:?}");
    }

    #[test]
    fn charge_set_verifies_p3() {
        let (rep, h, set) = setup(4, &[0.5, 0.3, -0.2], 2, 24);
        let report = set.verify(&rep, &h, 1e-10).unwrap();
        assert!(report.overall_pass(), "{report:?}");
    }

    #[test]
    fn q1_matches_default_charge() {
        let p = AlgebraParams::new(3, &[1.0, 0.0]).unwrap();
        let rep = FockRep::build(&p, 12).unwrap();
        let real = PssqmRealization::build(&rep, 1, None).unwrap();
        let set = build_charge_set(&rep, 1).unwrap();
        assert!(max_abs_block(&(set.q(1) - &real.q_mat), 12) <= 1e-12);
    }

    #[test]
    fn p2_has_exactly_six_mixed_relations() {
        let (rep, h, set) = setup(3, &[1.0, 0.0], 0, 18);
        let (relations, report) = find_mixed_relations(&set, &rep, &h, 1e-9).unwrap();
        assert_eq!(relations.len(), 6, "{relations:?}");
        assert!(report.overall_pass(), "{report:?}");
        // three relations per right-hand charge
        for r in 1..=2usize {
            assert_eq!(relations.iter().filter(|rel| rel.rhs_r == r).count(), 3);
        }
    }

    #[test]
    fn p1_single_ssqm_relation() {
        let (rep, h, set) = setup(2, &[0.4], 0, 12);
        let (relations, report) = find_mixed_relations(&set, &rep, &h, 1e-9).unwrap();
        assert_eq!(relations.len(), 1);
        assert!(report.overall_pass(), "{report:?}");
        // I_{t1} Q_1 Q_1† + I_{t2} Q_1† Q_1 = 2H with t = (1, 1) after dedup
        let rel = &relations[0];
        let lhs = set.q(1) * set.q(1).adjoint() + set.q(1).adjoint() * set.q(1);
        let rhs = &h * real(2.0);
        assert!(max_abs_block(&(lhs - rhs), rep.interior()) <= 1e-10);
        assert_eq!(rel.rhs_r, 1);
    }

    #[test]
    fn p3_relations_verify() {
        let (rep, h, set) = setup(4, &[0.5, 0.3, -0.2], 1, 16);
        let (relations, report) = find_mixed_relations(&set, &rep, &h, 1e-9).unwrap();
        assert!(!relations.is_empty());
        assert!(report.overall_pass(), "{report:?}");
    }

    #[test]
    fn b_inverse_reconstructs_projected_ladder() {
        // √2 a† P_{μ+ν} = Σ_r b_ν^r Q_r as matrices, p = 3
        let (rep, _, set) = setup(4, &[0.5, 0.3, -0.2], 0, 16);
        let p = 3;
        for nu in 1..=p {
            let mut rhs = CMat::zeros(rep.dim(), rep.dim());
            for r in 1..=p {
                rhs += set.q(r) * real(b_inverse(p, nu, r));
            }
            let lhs = rep.a_dag() * rep.projector(nu as i64) * real(2f64.sqrt());
            assert!(max_abs_block(&(lhs - rhs), rep.dim()) <= 1e-12);
        }
    }

    #[test]
    fn b_repeated_closed_forms() {
        // B_1([r]^{p-1}) = 2(δ_{r,1} + δ_{r,p}) − 1, B_2([r]^{p-1}) = 2δ_{r,1} − 1
        for p in 2..=5usize {
            for r in 1..=p {
                let expect1 = if r == 1 || r == p { 1.0 } else { -1.0 };
                let expect2 = if r == 1 { 1.0 } else { -1.0 };
                assert_abs_diff_eq!(b_repeated(p, 1, r), expect1);
                assert_abs_diff_eq!(b_repeated(p, 2, r), expect2);
            }
        }
    }
}
