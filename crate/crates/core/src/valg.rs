//! Value-space machinery: the diagonal bilinear form η and its extension to
//! multivectors, the Hodge star, the Cartan decomposition of 𝔤𝔩(m), and the
//! invariant Lovelock construction Ξ_r with its curvature pairing.

use nalgebra::DMatrix;
use thiserror::Error;

use crate::alt::{index_tuples, perm_sign, permutations_with_sign};
use crate::jetforms::{
    lovelock_lagrangian_form, sparling_from_thetas, CanonicalForms, JetError,
};
use crate::xalg::{
    binomial, lambda_basis, lambda_index, wedge, FormError, SparseAltForm, ValueSpace,
    VectorValuedForm,
};

#[derive(Debug, Error)]
pub enum ValgError {
    #[error("signature entries must be ±1")]
    BadSignature,
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("matrix is {rows}×{cols}, expected {dim}×{dim}")]
    MatrixShape {
        rows: usize,
        cols: usize,
        dim: usize,
    },
    #[error("need 2r <= m, got r = {r} with m = {m}")]
    TwoRTooLarge { r: usize, m: usize },
    #[error("Lagrangian vanishes identically at the sample point; resample")]
    DegenerateSample,
    #[error("form algebra failure: {0}")]
    Form(#[from] FormError),
    #[error("jet failure: {0}")]
    Jet(#[from] Box<JetError>),
}

impl From<JetError> for ValgError {
    fn from(e: JetError) -> Self {
        ValgError::Jet(Box::new(e))
    }
}

/// Diagonal ±1 bilinear form on ℝ^m with the preferred unit m-vector
/// e_1 ∧ … ∧ e_m fixing the orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    entries: Vec<i8>,
}

impl Signature {
    pub fn new(entries: Vec<i8>) -> Result<Self, ValgError> {
        if entries.iter().any(|&e| e != 1 && e != -1) {
            return Err(ValgError::BadSignature);
        }
        Ok(Signature { entries })
    }

    /// diag(−1, 1, …, 1).
    pub fn lorentzian(m: usize) -> Self {
        let mut entries = vec![1i8; m];
        if m > 0 {
            entries[0] = -1;
        }
        Signature { entries }
    }

    /// diag(1, …, 1).
    pub fn euclidean(m: usize) -> Self {
        Signature {
            entries: vec![1i8; m],
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    /// η_{ij} (diagonal).
    pub fn eta(&self, i: usize, j: usize) -> f64 {
        if i == j {
            f64::from(self.entries[i])
        } else {
            0.0
        }
    }

    /// η^{ij}; equals η_{ij} for a ±1 diagonal.
    pub fn eta_inv(&self, i: usize, j: usize) -> f64 {
        self.eta(i, j)
    }

    /// Computed, not assumed, so Euclidean test signatures work.
    pub fn det(&self) -> f64 {
        self.entries.iter().map(|&e| f64::from(e)).product()
    }

    /// Product of η entries over an index set.
    pub fn eta_product(&self, indices: &[usize]) -> f64 {
        indices.iter().map(|&i| f64::from(self.entries[i])).product()
    }
}

/// Extension η̂ of η to k-vectors: on elementary k-vectors the determinant
/// of the Gram matrix `[η(α_i, β_j)]`, extended bilinearly over the sparse
/// terms. k-vectors share the [`SparseAltForm`] storage.
pub fn eta_hat(
    alpha: &SparseAltForm,
    beta: &SparseAltForm,
    sig: &Signature,
) -> Result<f64, ValgError> {
    if alpha.degree() != beta.degree() {
        return Err(ValgError::DegreeMismatch {
            left: alpha.degree(),
            right: beta.degree(),
        });
    }
    let k = alpha.degree();
    let perms = permutations_with_sign(k);
    let mut total = 0.0;
    for (ka, va) in alpha.terms() {
        for (kb, vb) in beta.terms() {
            // det[η(e_{ka_i}, e_{kb_j})] by permutation expansion.
            let mut det = 0.0;
            for (perm, sign) in &perms {
                let mut prod = *sign as f64;
                for (row, &col) in perm.iter().enumerate() {
                    prod *= sig.eta(ka[row] as usize, kb[col] as usize);
                    if prod == 0.0 {
                        break;
                    }
                }
                det += prod;
            }
            total += va * vb * det;
        }
    }
    Ok(total)
}

/// Hodge star of a k-vector for the diagonal signature: on a canonical
/// basis k-vector `e_I`,
/// `⋆e_I = (Π_{i∈I} η_i) · ε(I, I^c) · e_{I^c}`,
/// which is the ε-contraction lemma collapsed onto canonical tuples. The
/// defining property `α ∧ (⋆β) = η̂(α, β)·ω` is enforced by the test
/// suites, not assumed.
pub fn hodge_star(beta: &SparseAltForm, sig: &Signature) -> Result<SparseAltForm, ValgError> {
    let m = sig.dim();
    if beta.space_dim() != m {
        return Err(ValgError::MatrixShape {
            rows: beta.space_dim(),
            cols: beta.space_dim(),
            dim: m,
        });
    }
    let k = beta.degree();
    let mut out = SparseAltForm::zero(m, m - k);
    for (key, c) in beta.terms() {
        let set: Vec<usize> = key.iter().map(|&i| i as usize).collect();
        let complement: Vec<usize> = (0..m).filter(|i| !set.contains(i)).collect();
        let mut concat = set.clone();
        concat.extend_from_slice(&complement);
        let sign = perm_sign(&concat) as f64;
        let coeff = sig.eta_product(&set) * sign * c;
        if coeff != 0.0 {
            out.add_term(&complement, coeff);
        }
    }
    Ok(out)
}

/// Which Cartan eigenspace to project onto.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CartanPart {
    /// η-antisymmetric part 𝔨: ½(A − ηA^Tη).
    K,
    /// η-symmetric part 𝔭: ½(A + ηA^Tη).
    P,
}

/// Cartan projection of a numeric matrix.
pub fn cartan_project_matrix(
    a: &DMatrix<f64>,
    part: CartanPart,
    sig: &Signature,
) -> Result<DMatrix<f64>, ValgError> {
    let m = sig.dim();
    if a.nrows() != m || a.ncols() != m {
        return Err(ValgError::MatrixShape {
            rows: a.nrows(),
            cols: a.ncols(),
            dim: m,
        });
    }
    let sign = match part {
        CartanPart::K => -1.0,
        CartanPart::P => 1.0,
    };
    let mut out = DMatrix::<f64>::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            // η A^T η is η_i η_j A^j_i for the diagonal signature.
            let conj = sig.eta(i, i) * sig.eta(j, j) * a[(j, i)];
            out[(i, j)] = 0.5 * (a[(i, j)] + sign * conj);
        }
    }
    Ok(out)
}

/// Componentwise Cartan projection of a flat `[i·m + j]` family of forms:
/// `(γ_𝔭)^i_j = ½(γ^i_j + η_{jp} γ^p_q η^{qi})` and the 𝔨 analogue.
pub fn cartan_project_forms(
    gamma: &[SparseAltForm],
    part: CartanPart,
    sig: &Signature,
) -> Result<Vec<SparseAltForm>, ValgError> {
    let m = sig.dim();
    if gamma.len() != m * m {
        return Err(ValgError::MatrixShape {
            rows: gamma.len(),
            cols: 1,
            dim: m * m,
        });
    }
    let sign = match part {
        CartanPart::K => -1.0,
        CartanPart::P => 1.0,
    };
    let mut out = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            let conj_coeff = sig.eta(j, j) * sig.eta(i, i);
            let combined = crate::xalg::linear_combine(
                &[0.5, 0.5 * sign * conj_coeff],
                &[gamma[i * m + j].clone(), gamma[j * m + i].clone()],
            )?;
            out.push(combined);
        }
    }
    Ok(out)
}

/// 𝔤𝔩-valued wrapper of [`cartan_project_forms`].
pub fn cartan_project_vvf(
    gamma: &VectorValuedForm,
    part: CartanPart,
    sig: &Signature,
) -> Result<VectorValuedForm, ValgError> {
    let m = match gamma.tag() {
        ValueSpace::Gl(m) => m,
        _ => {
            return Err(ValgError::MatrixShape {
                rows: gamma.tag().dim(),
                cols: 1,
                dim: sig.dim() * sig.dim(),
            })
        }
    };
    if m != sig.dim() {
        return Err(ValgError::MatrixShape {
            rows: m,
            cols: m,
            dim: sig.dim(),
        });
    }
    let comps = cartan_project_forms(gamma.components(), part, sig)?;
    Ok(VectorValuedForm::new(ValueSpace::Gl(m), comps)?)
}

/// Matrix of the alternating multiplication map `A_r : Λ^{2r} →
/// Λ^r ⊗ (Λ^r)^*` in the canonical bases: on an elementary 2r-vector the
/// `(2r)!`-fold signed symmetrization splitting the legs into an η-lowered
/// dual half and a wedge half.
pub fn a_r_matrix(m: usize, r: usize, sig: &Signature) -> DMatrix<f64> {
    let c = binomial(m, r);
    let rows = c * c;
    let basis_2r = lambda_basis(m, 2 * r);
    let cols = basis_2r.len();
    let mut out = DMatrix::<f64>::zeros(rows, cols);
    let perms = permutations_with_sign(2 * r);
    let fact = (1..=2 * r).product::<usize>().max(1) as f64;
    for (col, tuple) in basis_2r.iter().enumerate() {
        for (perm, sign) in &perms {
            let permuted: Vec<usize> = perm.iter().map(|&p| tuple[p]).collect();
            // η-lower the first r legs into the dual slot.
            let dual_half = &permuted[..r];
            let wedge_half = &permuted[r..];
            let eta_factor = sig.eta_product(dual_half);
            let s_dual = perm_sign(dual_half);
            let s_wedge = perm_sign(wedge_half);
            if s_dual == 0 || s_wedge == 0 {
                continue;
            }
            let mut dual_sorted = dual_half.to_vec();
            dual_sorted.sort_unstable();
            let mut wedge_sorted = wedge_half.to_vec();
            wedge_sorted.sort_unstable();
            let b = lambda_index(m, &dual_sorted).expect("canonical");
            let a = lambda_index(m, &wedge_sorted).expect("canonical");
            out[(a * c + b, col)] +=
                (*sign as f64) * eta_factor * (s_dual * s_wedge) as f64 / fact;
        }
    }
    out
}

/// The `Λ^{2r}`-valued form of the star-coframe display: components
/// `det(η) η^{i_1 j_1} … η^{i_{2r} j_{2r}} θ_{i_1…i_{2r}}` attached to
/// `e_{j_1} ∧ … ∧ e_{j_{2r}}`, with the defining sums taken over every
/// index tuple.
pub fn star_theta_power(
    thetas: &[SparseAltForm],
    r: usize,
    sig: &Signature,
) -> Result<VectorValuedForm, ValgError> {
    let m = thetas.len();
    if 2 * r > m {
        return Err(ValgError::TwoRTooLarge { r, m });
    }
    let n = thetas[0].space_dim();
    let det = sig.det();
    let tag = ValueSpace::LambdaR { dim: m, r: 2 * r };
    let mut out = VectorValuedForm::zero(tag, n, m - 2 * r);
    for j_tuple in index_tuples(m, 2 * r) {
        let s_j = perm_sign(&j_tuple);
        if s_j == 0 {
            continue;
        }
        // Diagonal η pins i = j termwise; the reference loop keeps the
        // full contraction structure with zero skips.
        let mut sorted = j_tuple.clone();
        sorted.sort_unstable();
        let slot = lambda_index(m, &sorted).expect("canonical");
        for i_tuple in index_tuples(m, 2 * r) {
            let mut eta_factor = 1.0;
            for (a, (&i, &j)) in i_tuple.iter().zip(&j_tuple).enumerate() {
                let _ = a;
                eta_factor *= sig.eta_inv(i, j);
                if eta_factor == 0.0 {
                    break;
                }
            }
            if eta_factor == 0.0 {
                continue;
            }
            let th = sparling_from_thetas(thetas, &i_tuple)?;
            if th.is_zero() {
                continue;
            }
            let scaled = th.scale(det * eta_factor * s_j as f64);
            *out.component_mut(slot) = out.component(slot).add(&scaled)?;
        }
    }
    Ok(out)
}

/// Ξ_r through the collapsed coordinate display:
/// `det(η) η^{i_{r+1} j_{r+1}} … η^{i_{2r} j_{2r}} θ_{i_1…i_{2r}} ⊗
///  e_{j_{r+1}} ∧ … ∧ e_{j_{2r}} ⊗ e^{i_1} ∧ … ∧ e^{i_r}`.
pub fn xi_r_coordinate(
    thetas: &[SparseAltForm],
    r: usize,
    sig: &Signature,
) -> Result<VectorValuedForm, ValgError> {
    let m = thetas.len();
    if 2 * r > m {
        return Err(ValgError::TwoRTooLarge { r, m });
    }
    let n = thetas[0].space_dim();
    let c = binomial(m, r);
    let det = sig.det();
    let tag = ValueSpace::LambdaTensor { dim: m, r };
    let mut out = VectorValuedForm::zero(tag, n, m - 2 * r);
    for i_tuple in index_tuples(m, 2 * r) {
        let th = sparling_from_thetas(thetas, &i_tuple)?;
        if th.is_zero() {
            continue;
        }
        let dual_half = &i_tuple[..r];
        let s_dual = perm_sign(dual_half);
        if s_dual == 0 {
            continue;
        }
        let mut dual_sorted = dual_half.to_vec();
        dual_sorted.sort_unstable();
        let b = lambda_index(m, &dual_sorted).expect("canonical");
        for j_tail in index_tuples(m, r) {
            let s_j = perm_sign(&j_tail);
            if s_j == 0 {
                continue;
            }
            let mut eta_factor = 1.0;
            for (&i, &j) in i_tuple[r..].iter().zip(&j_tail) {
                eta_factor *= sig.eta_inv(i, j);
                if eta_factor == 0.0 {
                    break;
                }
            }
            if eta_factor == 0.0 {
                continue;
            }
            let mut j_sorted = j_tail.clone();
            j_sorted.sort_unstable();
            let a = lambda_index(m, &j_sorted).expect("canonical");
            let slot = a * c + b;
            let scaled = th.scale(det * eta_factor * (s_dual * s_j) as f64);
            *out.component_mut(slot) = out.component(slot).add(&scaled)?;
        }
    }
    Ok(out)
}

/// Ξ_r as `A_r` applied to the star-coframe form; the symmetrization route,
/// kept independent of [`xi_r_coordinate`] as a cross-check.
pub fn xi_r_via_a_r(
    thetas: &[SparseAltForm],
    r: usize,
    sig: &Signature,
) -> Result<VectorValuedForm, ValgError> {
    let m = thetas.len();
    let star = star_theta_power(thetas, r, sig)?;
    let matrix = a_r_matrix(m, r, sig);
    let mapped = crate::xalg::vv_constant_map(&matrix, &star)?;
    Ok(VectorValuedForm::new(
        ValueSpace::LambdaTensor { dim: m, r },
        mapped.components().to_vec(),
    )?)
}

/// Matrix of `Γ(E^{b_1}_{a_1} ∧ … ∧ E^{b_r}_{a_r})` on `Λ^r ℝ^m` in the
/// canonical basis. `ab` lists the `(a_i, b_i)` pairs; `E^b_a e_b = e_a`.
/// The signed symmetrization over the legs makes the map well defined on
/// wedges.
fn gamma_inclusion_matrix(m: usize, ab: &[(usize, usize)]) -> DMatrix<f64> {
    let r = ab.len();
    let c = binomial(m, r);
    let basis = lambda_basis(m, r);
    let mut out = DMatrix::<f64>::zeros(c, c);
    let perms = permutations_with_sign(r);
    let fact = (1..=r).product::<usize>().max(1) as f64;
    for (col, tuple) in basis.iter().enumerate() {
        for (perm, sign) in &perms {
            // E^{b_i}_{a_i} acts on leg tuple[perm[i]]: nonzero iff b_i
            // matches, output leg a_i.
            let mut ok = true;
            for (i, &p) in perm.iter().enumerate() {
                if ab[i].1 != tuple[p] {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            let a_legs: Vec<usize> = ab.iter().map(|&(a, _)| a).collect();
            let s_a = perm_sign(&a_legs);
            if s_a == 0 {
                continue;
            }
            let mut a_sorted = a_legs.clone();
            a_sorted.sort_unstable();
            let row = lambda_index(m, &a_sorted).expect("canonical");
            out[(row, col)] += (*sign * s_a) as f64 / fact;
        }
    }
    out
}

/// Result of the invariant-vs-coordinate Lagrangian comparison.
#[derive(Debug, Clone)]
pub struct XiPairingReport {
    /// Deviation between the two Ξ_r construction routes (normalized).
    pub route_deviation: f64,
    /// Fitted constant with pairing ≈ c · λ_L.
    pub constant: f64,
    /// Normalized residual of the fit.
    pub fit_residual: f64,
}

/// Pairs Ξ_r against the r-fold curvature power through the inclusion of
/// Λ^r𝔤 into End(Λ^r ℝ^m) and fits the single constant relating the result
/// to the coordinate Lagrangian λ_L^{(r)}. Zero-curvature samples are
/// rejected so the caller can resample.
pub fn xi_pairing_check(
    cf: &CanonicalForms,
    r: usize,
    sig: &Signature,
) -> Result<XiPairingReport, ValgError> {
    let m = cf.dim();
    if 2 * r > m {
        return Err(ValgError::TwoRTooLarge { r, m });
    }
    let n = cf.jet_dim();
    let c = binomial(m, r);

    let xi_a = xi_r_coordinate(&cf.theta, r, sig)?;
    let xi_b = xi_r_via_a_r(&cf.theta, r, sig)?;
    let mut route_deviation = 0.0f64;
    let scale = 1.0f64.max(xi_a.max_norm()).max(xi_b.max_norm());
    for (x, y) in xi_a.components().iter().zip(xi_b.components()) {
        route_deviation = route_deviation.max(crate::xalg::deviation(x, y));
    }
    route_deviation /= scale;

    // ⟨Ξ_r ∧, Ω^r⟩: for each curvature leg tuple, the Γ-matrix element
    // selects which Ξ components couple.
    let mut pairing = SparseAltForm::zero(n, m);
    for ab_flat in index_tuples(m * m, r) {
        let ab: Vec<(usize, usize)> = ab_flat.iter().map(|&x| (x / m, x % m)).collect();
        let gamma = gamma_inclusion_matrix(m, &ab);
        if gamma.amax() == 0.0 {
            continue;
        }
        let mut curv = SparseAltForm::scalar(n, 1.0);
        for &(a, b) in &ab {
            curv = wedge(&curv, cf.curvature_ij(a, b))?;
        }
        if curv.is_zero() {
            continue;
        }
        for slot_a in 0..c {
            for slot_b in 0..c {
                // ⟨e_B ⊗ e^A, T⟩ = T^A_B.
                let g = gamma[(slot_a, slot_b)];
                if g == 0.0 {
                    continue;
                }
                let xi_comp = xi_a.component(slot_b * c + slot_a);
                if xi_comp.is_zero() {
                    continue;
                }
                let w = wedge(xi_comp, &curv)?.scale(g);
                pairing = pairing.add(&w)?;
            }
        }
    }

    let (lambda, _) = lovelock_lagrangian_form(cf, r, sig)?;
    if lambda.max_norm() <= 1e-14 {
        return Err(ValgError::DegenerateSample);
    }
    // Least-squares fit pairing ≈ c·λ over the λ support.
    let mut num = 0.0;
    let mut den = 0.0;
    for (key, lv) in lambda.terms() {
        let idx: Vec<usize> = key.iter().map(|&i| i as usize).collect();
        num += pairing.coeff(&idx) * lv;
        den += lv * lv;
    }
    let constant = num / den;
    let diff = crate::xalg::linear_combine(&[1.0, -constant], &[pairing.clone(), lambda.clone()])?;
    let fit_residual =
        diff.max_norm() / 1.0f64.max(pairing.max_norm()).max(lambda.max_norm().abs());
    Ok(XiPairingReport {
        route_deviation,
        constant,
        fit_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jetforms::{canonical_forms, random_jet_point};
    use crate::xalg::rel_deviation;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn basis_kvector(m: usize, indices: &[usize]) -> SparseAltForm {
        let mut f = SparseAltForm::zero(m, indices.len());
        f.add_term(indices, 1.0);
        f
    }

    #[test]
    fn eta_hat_base_cases() {
        let e4 = Signature::euclidean(4);
        let l4 = Signature::lorentzian(4);
        // Euclidean: η̂(e_1∧e_2, e_1∧e_2) = 1 (0-based here).
        let b12 = basis_kvector(4, &[1, 2]);
        assert_eq!(eta_hat(&b12, &b12, &e4).unwrap(), 1.0);
        // Lorentzian: η̂(e_0∧e_1, e_0∧e_1) = η_00·η_11 = −1.
        let b01 = basis_kvector(4, &[0, 1]);
        assert_eq!(eta_hat(&b01, &b01, &l4).unwrap(), -1.0);
        // Off-diagonal Gram column: 0.
        let b13 = basis_kvector(4, &[1, 3]);
        assert_eq!(eta_hat(&b12, &b13, &e4).unwrap(), 0.0);
        assert!(eta_hat(&b12, &basis_kvector(4, &[0]), &e4).is_err());
    }

    #[test]
    fn hodge_star_base_cases() {
        // Euclidean m=4 (1-based e_1∧e_2 ↦ e_3∧e_4): 0-based ⋆(e_0∧e_1) = e_2∧e_3.
        let e4 = Signature::euclidean(4);
        let s = hodge_star(&basis_kvector(4, &[0, 1]), &e4).unwrap();
        assert_eq!(s.coeff(&[2, 3]), 1.0);
        assert_eq!(s.num_terms(), 1);
        // Lorentzian: ⋆(e_0∧e_1) = η_0 η_1 ε(0,1,2,3) e_2∧e_3 = −e_2∧e_3.
        let l4 = Signature::lorentzian(4);
        let s = hodge_star(&basis_kvector(4, &[0, 1]), &l4).unwrap();
        assert_eq!(s.coeff(&[2, 3]), -1.0);
        // Top vector: scalar det(η).
        let top = basis_kvector(4, &[0, 1, 2, 3]);
        assert_eq!(hodge_star(&top, &l4).unwrap().coeff(&[]), -1.0);
        assert_eq!(hodge_star(&top, &e4).unwrap().coeff(&[]), 1.0);
    }

    #[test]
    fn hodge_star_defining_property_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for sig in [Signature::lorentzian(4), Signature::euclidean(4)] {
            let m = sig.dim();
            let omega = basis_kvector(m, &(0..m).collect::<Vec<_>>());
            for k in 0..=m {
                for _ in 0..20 {
                    let mut alpha = SparseAltForm::zero(m, k);
                    let mut beta = SparseAltForm::zero(m, k);
                    for t in lambda_basis(m, k) {
                        alpha.add_term(&t, rng.gen_range(-1.0..1.0));
                        beta.add_term(&t, rng.gen_range(-1.0..1.0));
                    }
                    let lhs = wedge(&alpha, &hodge_star(&beta, &sig).unwrap()).unwrap();
                    let rhs = omega.scale(eta_hat(&alpha, &beta, &sig).unwrap());
                    let dev = rel_deviation(&lhs, &rhs);
                    assert!(dev < 1e-12, "k={k} dev={dev}");
                }
            }
        }
    }

    #[test]
    fn hodge_star_double_sign_law() {
        // ⋆⋆β = (−1)^{k(m−k)} det(η) β on every basis k-vector, m ≤ 5.
        for m in 1..=5usize {
            for sig in [Signature::lorentzian(m), Signature::euclidean(m)] {
                for k in 0..=m {
                    for t in lambda_basis(m, k) {
                        let b = basis_kvector(m, &t);
                        let ss = hodge_star(&hodge_star(&b, &sig).unwrap(), &sig).unwrap();
                        let sign = if (k * (m - k)) % 2 == 0 { 1.0 } else { -1.0 };
                        let expect = b.scale(sign * sig.det());
                        assert_eq!(rel_deviation(&ss, &expect), 0.0, "m={m} k={k} t={t:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn cartan_projector_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(67);
        let sig = Signature::lorentzian(4);
        let a = DMatrix::<f64>::from_fn(4, 4, |_, _| rng.gen_range(-1.0..1.0));
        let k = cartan_project_matrix(&a, CartanPart::K, &sig).unwrap();
        let p = cartan_project_matrix(&a, CartanPart::P, &sig).unwrap();
        assert!((&k + &p - &a).abs().max() < 1e-14, "completeness");
        let kp = cartan_project_matrix(&p, CartanPart::K, &sig).unwrap();
        assert!(kp.abs().max() < 1e-14, "orthogonality");
        // ηπ_𝔭(A) symmetric, ηπ_𝔨(A) antisymmetric.
        let eta = DMatrix::<f64>::from_fn(4, 4, |i, j| sig.eta(i, j));
        let ep = &eta * &p;
        assert!((ep.transpose() - &ep).abs().max() < 1e-14);
        let ek = &eta * &k;
        assert!((ek.transpose() + &ek).abs().max() < 1e-14);
        // Euclidean η: π_𝔭 is the symmetric part.
        let es = Signature::euclidean(4);
        let pe = cartan_project_matrix(&a, CartanPart::P, &es).unwrap();
        let sym = (&a + a.transpose()) * 0.5;
        assert!((pe - sym).abs().max() < 1e-14);
    }

    #[test]
    fn xi_routes_agree_and_flat_point_components() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        for (m, r) in [(3usize, 1usize), (4, 1), (4, 2)] {
            let sig = Signature::lorentzian(m);
            let jp = random_jet_point(&mut rng, m);
            let cf = canonical_forms(&jp).unwrap();
            let a = xi_r_coordinate(&cf.theta, r, &sig).unwrap();
            let b = xi_r_via_a_r(&cf.theta, r, &sig).unwrap();
            let scale = 1.0f64.max(a.max_norm()).max(b.max_norm());
            for (x, y) in a.components().iter().zip(b.components()) {
                let dev = crate::xalg::deviation(x, y) / scale;
                assert!(dev < 1e-10, "m={m} r={r} dev={dev}");
            }
        }
    }

    #[test]
    fn xi_pairing_constant_reproducible() {
        let mut rng = ChaCha8Rng::seed_from_u64(73);
        let sig = Signature::lorentzian(3);
        let mut constants = Vec::new();
        for _ in 0..4 {
            let jp = random_jet_point(&mut rng, 3);
            let cf = canonical_forms(&jp).unwrap();
            let rep = xi_pairing_check(&cf, 1, &sig).unwrap();
            assert!(rep.route_deviation < 1e-10);
            assert!(rep.fit_residual < 1e-9, "residual {}", rep.fit_residual);
            constants.push(rep.constant);
        }
        let first = constants[0];
        for c in &constants {
            assert!(((c - first) / first).abs() < 1e-9, "constants {constants:?}");
        }
        // With this component layout the pairing collapses to det(η)·λ.
        assert!(
            (first - sig.det()).abs() < 1e-9,
            "fitted constant {first} vs det(η) {}",
            sig.det()
        );
    }
}
