//! Alternating-symbol combinatorics: the Levi-Civita symbol, the generalized
//! Kronecker delta, and antisymmetrization of dense index arrays.
//!
//! Everything in this module is exact integer arithmetic. Indices are
//! 0-based internally; report text renders them 1-based.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AltError {
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("upper tuple has length {upper} but lower tuple has length {lower}")]
    LengthMismatch { upper: usize, lower: usize },
    #[error("array of rank {rank} over dimension {dim} should have {expected} entries, got {got}")]
    ShapeMismatch {
        rank: usize,
        dim: usize,
        expected: usize,
        got: usize,
    },
    #[error("dimension {dim} exceeds the brute-force guard ({max})")]
    DimensionGuard { dim: usize, max: usize },
}

/// Levi-Civita symbol on `seq`, entries in `[0, k)` where `k = seq.len()`.
///
/// +1 for even permutations of `(0, …, k-1)`, -1 for odd, 0 on repeats.
pub fn levi_civita(seq: &[usize]) -> Result<i64, AltError> {
    let k = seq.len();
    for &i in seq {
        if i >= k {
            return Err(AltError::IndexOutOfRange { index: i, dim: k });
        }
    }
    Ok(perm_sign(seq))
}

/// Sign of an arbitrary index sequence: 0 on repeats, otherwise the parity
/// of the permutation sorting it. No range validation; entries may live in
/// any index set.
pub fn perm_sign(seq: &[usize]) -> i64 {
    let mut sign = 1i64;
    for i in 0..seq.len() {
        for j in (i + 1)..seq.len() {
            if seq[i] == seq[j] {
                return 0;
            }
            if seq[i] > seq[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Generalized Kronecker delta `δ^{upper}_{lower}`.
///
/// Equals the sign of the permutation carrying `lower` onto `upper` when
/// both are repeat-free arrangements of the same index set, 0 otherwise.
/// The k×k determinant of ordinary deltas is kept as a test oracle.
pub fn gkdelta(upper: &[usize], lower: &[usize]) -> Result<i64, AltError> {
    if upper.len() != lower.len() {
        return Err(AltError::LengthMismatch {
            upper: upper.len(),
            lower: lower.len(),
        });
    }
    let su = perm_sign(upper);
    let sl = perm_sign(lower);
    if su == 0 || sl == 0 {
        return Ok(0);
    }
    let mut us: Vec<usize> = upper.to_vec();
    let mut ls: Vec<usize> = lower.to_vec();
    us.sort_unstable();
    ls.sort_unstable();
    if us != ls {
        return Ok(0);
    }
    Ok(su * sl)
}

/// All permutations of `0, …, n-1` together with their signs.
pub fn permutations_with_sign(n: usize) -> Vec<(Vec<usize>, i64)> {
    // Heap's algorithm; each swap flips the sign.
    let mut items: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity((1..=n).product::<usize>().max(1));
    let mut c = vec![0usize; n];
    let mut sign = 1i64;
    out.push((items.clone(), sign));
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            sign = -sign;
            out.push((items.clone(), sign));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

fn check_shape(len: usize, rank: usize, dim: usize) -> Result<(), AltError> {
    let expected = dim.pow(rank as u32);
    if len != expected {
        return Err(AltError::ShapeMismatch {
            rank,
            dim,
            expected,
            got: len,
        });
    }
    Ok(())
}

fn flat_index(idx: &[usize], dim: usize) -> usize {
    idx.iter().fold(0, |acc, &i| acc * dim + i)
}

/// Iterate all rank-`rank` index tuples over `[0, dim)` in row-major order.
pub fn index_tuples(dim: usize, rank: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..rank {
        let mut next = Vec::with_capacity(out.len() * dim);
        for t in &out {
            for i in 0..dim {
                let mut t2 = t.clone();
                t2.push(i);
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

/// Antisymmetrization `a ↦ a^{[ν_1 … ν_p]}` of a dense rank-`rank` array
/// with every axis of extent `dim`, stored row-major.
///
/// Returns `(1/p!) Σ_σ sgn(σ) a∘σ`; idempotent.
pub fn antisymmetrize(components: &[f64], rank: usize, dim: usize) -> Result<Vec<f64>, AltError> {
    check_shape(components.len(), rank, dim)?;
    let perms = permutations_with_sign(rank);
    let factorial: f64 = (1..=rank).product::<usize>().max(1) as f64;
    let mut out = vec![0.0; components.len()];
    for idx in index_tuples(dim, rank) {
        let mut acc = 0.0;
        for (perm, sign) in &perms {
            let permuted: Vec<usize> = perm.iter().map(|&p| idx[p]).collect();
            acc += (*sign as f64) * components[flat_index(&permuted, dim)];
        }
        out[flat_index(&idx, dim)] = acc / factorial;
    }
    Ok(out)
}

/// Integer antisymmetrization without the `1/p!` factor:
/// `Σ_σ sgn(σ) a∘σ`, exact. Oracle for [`antisymmetrize`].
pub fn antisymmetrize_scaled_int(
    components: &[i64],
    rank: usize,
    dim: usize,
) -> Result<Vec<i64>, AltError> {
    check_shape(components.len(), rank, dim)?;
    let perms = permutations_with_sign(rank);
    let mut out = vec![0i64; components.len()];
    for idx in index_tuples(dim, rank) {
        let mut acc = 0i64;
        for (perm, sign) in &perms {
            let permuted: Vec<usize> = perm.iter().map(|&p| idx[p]).collect();
            acc += sign * components[flat_index(&permuted, dim)];
        }
        out[flat_index(&idx, dim)] = acc;
    }
    Ok(out)
}

/// Precomputed table of `ε` over all `m^m` index tuples of length `m`.
pub struct EpsTable {
    dim: usize,
    values: Vec<i64>,
}

impl EpsTable {
    pub fn new(dim: usize) -> Self {
        let mut values = vec![0i64; dim.pow(dim as u32).max(1)];
        for idx in index_tuples(dim, dim) {
            values[flat_index(&idx, dim)] = perm_sign(&idx);
        }
        EpsTable { dim, values }
    }

    #[inline]
    pub fn get(&self, idx: &[usize]) -> i64 {
        debug_assert_eq!(idx.len(), self.dim);
        self.values[flat_index(idx, self.dim)]
    }
}

/// Outcome of one brute-force identity sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactCheck {
    pub pass: bool,
    /// Maximum absolute integer deviation observed over the sweep.
    pub max_abs_deviation: i64,
    /// Number of free-index assignments compared.
    pub cases: usize,
}

/// Brute-force verification of the epsilon/delta contraction identity:
/// contracting the first `k` of `m` indices of two Levi-Civita symbols
/// equals `k!` times the generalized Kronecker delta on the remaining ones.
///
/// Exact integer comparison over every free-index assignment. `m` is capped
/// at 6: the sweep touches `m^(2(m-k))` assignments of `m^k` terms each.
pub fn verify_eps_delta(m: usize, k: usize) -> Result<ExactCheck, AltError> {
    const MAX_M: usize = 6;
    if m > MAX_M {
        return Err(AltError::DimensionGuard { dim: m, max: MAX_M });
    }
    if k > m {
        return Err(AltError::IndexOutOfRange { index: k, dim: m + 1 });
    }
    let eps = EpsTable::new(m);
    let k_fact: i64 = (1..=k as i64).product::<i64>().max(1);
    let free = m - k;
    let contracted = index_tuples(m, k);
    let mut cases = 0usize;
    let mut max_dev = 0i64;
    for lower_free in index_tuples(m, free) {
        for upper_free in index_tuples(m, free) {
            let mut lhs = 0i64;
            let mut left = vec![0usize; m];
            let mut right = vec![0usize; m];
            left[k..].copy_from_slice(&lower_free);
            right[k..].copy_from_slice(&upper_free);
            for c in &contracted {
                left[..k].copy_from_slice(c);
                right[..k].copy_from_slice(c);
                lhs += eps.get(&left) * eps.get(&right);
            }
            let rhs = k_fact * gkdelta(&upper_free, &lower_free)?;
            let dev = (lhs - rhs).abs();
            max_dev = max_dev.max(dev);
            cases += 1;
        }
    }
    Ok(ExactCheck {
        pass: max_dev == 0,
        max_abs_deviation: max_dev,
        cases,
    })
}

/// Determinant of an integer matrix by permutation expansion. Oracle-grade:
/// exact for the small dimensions used in the identity sweeps.
pub fn det_int(a: &[Vec<i64>]) -> i64 {
    let n = a.len();
    let mut det = 0i64;
    for (perm, sign) in permutations_with_sign(n) {
        let mut prod = 1i64;
        for (row, &col) in perm.iter().enumerate() {
            prod *= a[row][col];
        }
        det += sign * prod;
    }
    det
}

/// Brute-force verification of the determinant transformation property of
/// the Levi-Civita symbol: contracting `ε` with `m` copies of a matrix
/// reproduces `det(A)·ε`. Exact integers.
pub fn verify_eps_det(a: &[Vec<i64>]) -> Result<ExactCheck, AltError> {
    let m = a.len();
    const MAX_M: usize = 6;
    if m > MAX_M {
        return Err(AltError::DimensionGuard { dim: m, max: MAX_M });
    }
    let eps = EpsTable::new(m);
    let det = det_int(a);
    let mut cases = 0usize;
    let mut max_dev = 0i64;
    for j in index_tuples(m, m) {
        let mut lhs = 0i64;
        for i in index_tuples(m, m) {
            let e = eps.get(&i);
            if e == 0 {
                continue;
            }
            let mut prod = e;
            for (slot, &ii) in i.iter().enumerate() {
                prod *= a[ii][j[slot]];
            }
            lhs += prod;
        }
        let rhs = det * eps.get(&j);
        max_dev = max_dev.max((lhs - rhs).abs());
        cases += 1;
    }
    Ok(ExactCheck {
        pass: max_dev == 0,
        max_abs_deviation: max_dev,
        cases,
    })
}

/// Generalized Kronecker delta through its determinant form; test oracle for
/// the permutation-matching implementation.
pub fn gkdelta_det_oracle(upper: &[usize], lower: &[usize]) -> Result<i64, AltError> {
    if upper.len() != lower.len() {
        return Err(AltError::LengthMismatch {
            upper: upper.len(),
            lower: lower.len(),
        });
    }
    let k = upper.len();
    let mut mat = vec![vec![0i64; k]; k];
    for (row, &j) in lower.iter().enumerate() {
        for (col, &i) in upper.iter().enumerate() {
            mat[row][col] = i64::from(i == j);
        }
    }
    Ok(det_int(&mat))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn levi_civita_base_cases() {
        assert_eq!(levi_civita(&[0, 1, 2]).unwrap(), 1);
        assert_eq!(levi_civita(&[1, 0, 2]).unwrap(), -1);
        assert_eq!(levi_civita(&[0, 0, 2]).unwrap(), 0);
        assert_eq!(levi_civita(&[]).unwrap(), 1);
    }

    #[test]
    fn levi_civita_rejects_out_of_range() {
        assert_eq!(
            levi_civita(&[0, 3]),
            Err(AltError::IndexOutOfRange { index: 3, dim: 2 })
        );
    }

    #[test]
    fn levi_civita_is_multiplicative_under_composition() {
        // ε(σ∘τ) = ε(σ)·ε(τ) over all pairs in S_4.
        let perms = permutations_with_sign(4);
        for (sigma, s_sign) in &perms {
            for (tau, t_sign) in &perms {
                let composed: Vec<usize> = tau.iter().map(|&t| sigma[t]).collect();
                assert_eq!(perm_sign(&composed), s_sign * t_sign);
            }
        }
    }

    #[test]
    fn gkdelta_base_cases() {
        assert_eq!(gkdelta(&[0, 1], &[0, 1]).unwrap(), 1);
        assert_eq!(gkdelta(&[0, 1], &[1, 0]).unwrap(), -1);
        assert_eq!(gkdelta(&[0, 0], &[0, 1]).unwrap(), 0);
        assert_eq!(gkdelta(&[2, 4], &[2, 3]).unwrap(), 0);
        assert_eq!(
            gkdelta(&[0], &[0, 1]),
            Err(AltError::LengthMismatch { upper: 1, lower: 2 })
        );
    }

    #[test]
    fn gkdelta_matches_determinant_oracle() {
        for m in 1..=4 {
            for upper in index_tuples(m, 3.min(m)) {
                for lower in index_tuples(m, 3.min(m)) {
                    assert_eq!(
                        gkdelta(&upper, &lower).unwrap(),
                        gkdelta_det_oracle(&upper, &lower).unwrap(),
                        "upper={upper:?} lower={lower:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn gkdelta_total_antisymmetry() {
        // Swapping any two upper entries flips the sign; same for lower.
        let upper = [0usize, 2, 3];
        let lower = [3usize, 0, 2];
        let base = gkdelta(&upper, &lower).unwrap();
        assert_ne!(base, 0);
        for i in 0..3 {
            for j in (i + 1)..3 {
                let mut u = upper;
                u.swap(i, j);
                assert_eq!(gkdelta(&u, &lower).unwrap(), -base);
                let mut l = lower;
                l.swap(i, j);
                assert_eq!(gkdelta(&upper, &l).unwrap(), -base);
            }
        }
    }

    #[test]
    fn antisymmetrize_fixes_antisymmetric_input() {
        // n=2 rank-2: a^{01} = 1, a^{10} = -1 is already antisymmetric.
        let a = [0.0, 1.0, -1.0, 0.0];
        let out = antisymmetrize(&a, 2, 2).unwrap();
        assert_eq!(out, a.to_vec());
    }

    #[test]
    fn antisymmetrize_kills_symmetric_input() {
        let a = [2.0, 1.0, 1.0, -3.0];
        let out = antisymmetrize(&a, 2, 2).unwrap();
        assert!(out.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn antisymmetrize_half_splits_single_entry() {
        // a^{01}=1, a^{10}=0 → entries ±1/2 (two permutations enumerated by hand).
        let a = [0.0, 1.0, 0.0, 0.0];
        let out = antisymmetrize(&a, 2, 2).unwrap();
        assert_eq!(out, vec![0.0, 0.5, -0.5, 0.0]);
    }

    #[test]
    fn antisymmetrize_is_idempotent() {
        let a: Vec<f64> = (0..27).map(|i| (i as f64) * 0.37 - 3.0).collect();
        let once = antisymmetrize(&a, 3, 3).unwrap();
        let twice = antisymmetrize(&once, 3, 3).unwrap();
        for (x, y) in once.iter().zip(&twice) {
            assert!((x - y).abs() < 1e-15);
        }
    }

    #[test]
    fn eps_delta_small_cases() {
        // (m=2, k=1): brute force over all 2^4 assignments.
        assert!(verify_eps_delta(2, 1).unwrap().pass);
        // (m=3, k=0): ε·ε = 0!·δ on 3 indices.
        assert!(verify_eps_delta(3, 0).unwrap().pass);
        // (m=4, k=4): full contraction = 4!.
        let full = verify_eps_delta(4, 4).unwrap();
        assert!(full.pass);
        assert_eq!(full.cases, 1);
    }

    #[test]
    fn eps_delta_guard() {
        assert_eq!(
            verify_eps_delta(7, 0),
            Err(AltError::DimensionGuard { dim: 7, max: 6 })
        );
    }

    #[test]
    fn eps_det_identity_on_fixed_matrices() {
        let a = vec![vec![2, -1, 0], vec![1, 3, 1], vec![0, 4, -2]];
        assert!(verify_eps_det(&a).unwrap().pass);
        let id = vec![vec![1, 0], vec![0, 1]];
        assert!(verify_eps_det(&id).unwrap().pass);
    }
}
