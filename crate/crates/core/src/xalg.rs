//! Sparse alternating-form algebra over an abstract n-dimensional coordinate
//! space, plus vector-valued forms and the bilinear combinators acting on
//! them.
//!
//! Storage is canonical: every term is keyed by a strictly increasing index
//! tuple, with permutation signs absorbed into the coefficient. The wedge
//! merges tuples by a sorted merge that counts crossings; duplicates kill
//! the term.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use thiserror::Error;

/// Coefficients with magnitude at or below this are dropped on storage.
/// Only true zeros are meant to be pruned; comparison tolerances are a
/// separate, caller-supplied concern.
pub const PRUNE_THRESHOLD: f64 = 1e-300;

#[derive(Debug, Error, PartialEq)]
pub enum FormError {
    #[error("space dimensions differ: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("degrees differ: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("interior product needs degree >= 1, got a degree-0 form")]
    InteriorOfScalar,
    #[error("pullback matrix has {rows} rows but the form lives on {dim} dimensions")]
    PullbackShape { rows: usize, dim: usize },
    #[error("no forms supplied to linear_combine")]
    EmptyCombination,
    #[error("coefficient list has {coeffs} entries for {forms} forms")]
    CombinationLength { coeffs: usize, forms: usize },
    #[error("value spaces incompatible with {kind}: {left:?} vs {right:?}")]
    IncompatibleValues {
        kind: &'static str,
        left: ValueSpace,
        right: ValueSpace,
    },
    #[error("vector-valued form tagged {tag:?} (dim {expected}) holds {got} components")]
    ValueDimension {
        tag: ValueSpace,
        expected: usize,
        got: usize,
    },
}

/// Merge two strictly increasing tuples, counting crossings for the sign.
/// Returns `None` when the tuples share an index.
fn merge_tuples(a: &[u16], b: &[u16]) -> Option<(Vec<u16>, i64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut crossings = 0usize;
    let (mut i, mut j) = (0usize, 0usize);
    while i < a.len() && j < b.len() {
        if a[i] == b[j] {
            return None;
        }
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            // b[j] jumps over the remaining entries of a.
            crossings += a.len() - i;
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    let sign = if crossings % 2 == 0 { 1 } else { -1 };
    Some((out, sign))
}

/// Degree-k alternating tensor on an n-dimensional coordinate space, stored
/// as a sparse map from strictly increasing index tuples to coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseAltForm {
    space_dim: usize,
    degree: usize,
    terms: BTreeMap<Vec<u16>, f64>,
}

impl SparseAltForm {
    pub fn zero(space_dim: usize, degree: usize) -> Self {
        SparseAltForm {
            space_dim,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Degree-0 form holding a single scalar.
    pub fn scalar(space_dim: usize, value: f64) -> Self {
        let mut f = SparseAltForm::zero(space_dim, 0);
        f.add_term(&[], value);
        f
    }

    /// `dx^i` on an n-dimensional space.
    pub fn basis_covector(space_dim: usize, index: usize) -> Result<Self, FormError> {
        if index >= space_dim {
            return Err(FormError::IndexOutOfRange {
                index,
                dim: space_dim,
            });
        }
        let mut f = SparseAltForm::zero(space_dim, 1);
        f.add_term(&[index], 1.0);
        Ok(f)
    }

    pub fn space_dim(&self) -> usize {
        self.space_dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u16], f64)> {
        self.terms.iter().map(|(k, &v)| (k.as_slice(), v))
    }

    /// Coefficient on an index tuple given in any order; the sign of the
    /// sorting permutation is applied. Repeated indices give 0.
    pub fn coeff(&self, indices: &[usize]) -> f64 {
        let sign = crate::alt::perm_sign(indices);
        if sign == 0 {
            return 0.0;
        }
        let mut key: Vec<u16> = indices.iter().map(|&i| i as u16).collect();
        key.sort_unstable();
        sign as f64 * self.terms.get(&key).copied().unwrap_or(0.0)
    }

    /// Add `value` on a strictly increasing tuple. Callers with unsorted
    /// indices go through [`SparseAltForm::add_term_signed`].
    pub fn add_term(&mut self, indices: &[usize], value: f64) {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        debug_assert_eq!(indices.len(), self.degree);
        debug_assert!(indices.iter().all(|&i| i < self.space_dim));
        let key: Vec<u16> = indices.iter().map(|&i| i as u16).collect();
        let entry = self.terms.entry(key).or_insert(0.0);
        *entry += value;
        if entry.abs() <= PRUNE_THRESHOLD {
            let key: Vec<u16> = indices.iter().map(|&i| i as u16).collect();
            self.terms.remove(&key);
        }
    }

    /// Add `value` on an arbitrary tuple, canonicalizing with the sorting
    /// permutation sign. Repeated indices contribute nothing.
    pub fn add_term_signed(&mut self, indices: &[usize], value: f64) {
        let sign = crate::alt::perm_sign(indices);
        if sign == 0 {
            return;
        }
        let mut sorted: Vec<usize> = indices.to_vec();
        sorted.sort_unstable();
        self.add_term(&sorted, sign as f64 * value);
    }

    pub fn scale(&self, factor: f64) -> Self {
        let mut out = SparseAltForm::zero(self.space_dim, self.degree);
        for (k, v) in &self.terms {
            let c = v * factor;
            if c.abs() > PRUNE_THRESHOLD {
                out.terms.insert(k.clone(), c);
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self, FormError> {
        linear_combine(&[1.0, 1.0], &[self.clone(), other.clone()])
    }

    pub fn sub(&self, other: &Self) -> Result<Self, FormError> {
        linear_combine(&[1.0, -1.0], &[self.clone(), other.clone()])
    }

    /// Max-abs coefficient.
    pub fn max_norm(&self) -> f64 {
        self.terms.values().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Wedge product. Degree overflow beyond the space dimension yields the
/// zero form of the clamped degree rather than an error.
pub fn wedge(a: &SparseAltForm, b: &SparseAltForm) -> Result<SparseAltForm, FormError> {
    if a.space_dim != b.space_dim {
        return Err(FormError::DimensionMismatch {
            left: a.space_dim,
            right: b.space_dim,
        });
    }
    let degree = a.degree + b.degree;
    if degree > a.space_dim {
        return Ok(SparseAltForm::zero(a.space_dim, degree.min(a.space_dim)));
    }
    let mut out = SparseAltForm::zero(a.space_dim, degree);
    for (ka, va) in &a.terms {
        for (kb, vb) in &b.terms {
            if let Some((merged, sign)) = merge_tuples(ka, kb) {
                let entry = out.terms.entry(merged).or_insert(0.0);
                *entry += sign as f64 * va * vb;
            }
        }
    }
    out.terms.retain(|_, v| v.abs() > PRUNE_THRESHOLD);
    Ok(out)
}

/// Wedge of a list of forms, left to right. An empty list is the scalar 1.
pub fn wedge_all(space_dim: usize, forms: &[&SparseAltForm]) -> Result<SparseAltForm, FormError> {
    let mut acc = SparseAltForm::scalar(space_dim, 1.0);
    for f in forms {
        acc = wedge(&acc, f)?;
    }
    Ok(acc)
}

/// Termwise linear combination with pruning.
pub fn linear_combine(coeffs: &[f64], forms: &[SparseAltForm]) -> Result<SparseAltForm, FormError> {
    if forms.is_empty() {
        return Err(FormError::EmptyCombination);
    }
    if coeffs.len() != forms.len() {
        return Err(FormError::CombinationLength {
            coeffs: coeffs.len(),
            forms: forms.len(),
        });
    }
    let (dim, degree) = (forms[0].space_dim, forms[0].degree);
    for f in forms {
        if f.space_dim != dim {
            return Err(FormError::DimensionMismatch {
                left: dim,
                right: f.space_dim,
            });
        }
        if f.degree != degree {
            return Err(FormError::DegreeMismatch {
                left: degree,
                right: f.degree,
            });
        }
    }
    let mut out = SparseAltForm::zero(dim, degree);
    for (c, f) in coeffs.iter().zip(forms) {
        if *c == 0.0 {
            continue;
        }
        for (k, v) in &f.terms {
            let entry = out.terms.entry(k.clone()).or_insert(0.0);
            *entry += c * v;
        }
    }
    out.terms.retain(|_, v| v.abs() > PRUNE_THRESHOLD);
    Ok(out)
}

/// Tangent vector with sparse components; feeds the interior product.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentVector {
    space_dim: usize,
    components: BTreeMap<u16, f64>,
}

impl TangentVector {
    pub fn zero(space_dim: usize) -> Self {
        TangentVector {
            space_dim,
            components: BTreeMap::new(),
        }
    }

    pub fn from_components(space_dim: usize, comps: &[(usize, f64)]) -> Result<Self, FormError> {
        let mut v = TangentVector::zero(space_dim);
        for &(i, c) in comps {
            v.set(i, c)?;
        }
        Ok(v)
    }

    pub fn basis(space_dim: usize, index: usize) -> Result<Self, FormError> {
        TangentVector::from_components(space_dim, &[(index, 1.0)])
    }

    pub fn set(&mut self, index: usize, value: f64) -> Result<(), FormError> {
        if index >= self.space_dim {
            return Err(FormError::IndexOutOfRange {
                index,
                dim: self.space_dim,
            });
        }
        if value.abs() > PRUNE_THRESHOLD {
            self.components.insert(index as u16, value);
        } else {
            self.components.remove(&(index as u16));
        }
        Ok(())
    }

    pub fn get(&self, index: usize) -> f64 {
        self.components.get(&(index as u16)).copied().unwrap_or(0.0)
    }

    pub fn space_dim(&self) -> usize {
        self.space_dim
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.components.iter().map(|(&k, &v)| (k as usize, v))
    }
}

/// Interior product `v ⌟ a`; degree drops by one, with the alternating
/// position sign `(-1)^p` for the index removed at position p.
pub fn interior(v: &TangentVector, a: &SparseAltForm) -> Result<SparseAltForm, FormError> {
    if v.space_dim != a.space_dim {
        return Err(FormError::DimensionMismatch {
            left: v.space_dim,
            right: a.space_dim,
        });
    }
    if a.degree == 0 {
        return Err(FormError::InteriorOfScalar);
    }
    let mut out = SparseAltForm::zero(a.space_dim, a.degree - 1);
    for (key, &c) in &a.terms {
        for (pos, &idx) in key.iter().enumerate() {
            let comp = v.components.get(&idx).copied().unwrap_or(0.0);
            if comp == 0.0 {
                continue;
            }
            let sign = if pos % 2 == 0 { 1.0 } else { -1.0 };
            let mut reduced = key.clone();
            reduced.remove(pos);
            let entry = out.terms.entry(reduced).or_insert(0.0);
            *entry += sign * comp * c;
        }
    }
    out.terms.retain(|_, v| v.abs() > PRUNE_THRESHOLD);
    Ok(out)
}

/// Pullback through a linear map `L : ℝ^p → ℝ^n` given as an n×p matrix:
/// `(L^*a)(v_1,…,v_k) = a(Lv_1,…,Lv_k)`. Each basis covector on the target
/// is substituted by its pulled-back 1-form and the wedges expanded.
pub fn pullback(l: &DMatrix<f64>, a: &SparseAltForm) -> Result<SparseAltForm, FormError> {
    if l.nrows() != a.space_dim {
        return Err(FormError::PullbackShape {
            rows: l.nrows(),
            dim: a.space_dim,
        });
    }
    let p = l.ncols();
    if a.degree == 0 {
        let mut out = SparseAltForm::zero(p, 0);
        if let Some(&c) = a.terms.get(&Vec::new()) {
            out.add_term(&[], c);
        }
        return Ok(out);
    }
    // Pulled-back basis covectors, computed once per used row.
    let mut pulled: BTreeMap<u16, SparseAltForm> = BTreeMap::new();
    for key in a.terms.keys() {
        for &i in key {
            pulled.entry(i).or_insert_with(|| {
                let mut f = SparseAltForm::zero(p, 1);
                for alpha in 0..p {
                    let c = l[(i as usize, alpha)];
                    if c.abs() > PRUNE_THRESHOLD {
                        f.add_term(&[alpha], c);
                    }
                }
                f
            });
        }
    }
    let mut out = SparseAltForm::zero(p, a.degree.min(p));
    for (key, &c) in &a.terms {
        if a.degree > p {
            break;
        }
        let factors: Vec<&SparseAltForm> = key.iter().map(|i| &pulled[i]).collect();
        let product = wedge_all(p, &factors)?;
        out = linear_combine(&[1.0, c], &[out, product])?;
    }
    Ok(out)
}

/// Approximate equality: max-norm of the difference measured against
/// `tol · max(1, ‖a‖, ‖b‖)`. Returns the verdict and the raw max deviation.
pub fn approx_eq(a: &SparseAltForm, b: &SparseAltForm, tol: f64) -> Result<(bool, f64), FormError> {
    if a.space_dim != b.space_dim {
        return Err(FormError::DimensionMismatch {
            left: a.space_dim,
            right: b.space_dim,
        });
    }
    if a.degree != b.degree {
        return Err(FormError::DegreeMismatch {
            left: a.degree,
            right: b.degree,
        });
    }
    let dev = deviation(a, b);
    let scale = 1.0f64.max(a.max_norm()).max(b.max_norm());
    Ok((dev <= tol * scale, dev))
}

/// Raw max-abs coefficient difference over the union of stored tuples.
pub fn deviation(a: &SparseAltForm, b: &SparseAltForm) -> f64 {
    let mut dev = 0.0f64;
    for (k, v) in &a.terms {
        dev = dev.max((v - b.terms.get(k).copied().unwrap_or(0.0)).abs());
    }
    for (k, v) in &b.terms {
        if !a.terms.contains_key(k) {
            dev = dev.max(v.abs());
        }
    }
    dev
}

/// Deviation normalized by `max(1, ‖a‖, ‖b‖)`; what the check suites report.
pub fn rel_deviation(a: &SparseAltForm, b: &SparseAltForm) -> f64 {
    deviation(a, b) / 1.0f64.max(a.max_norm()).max(b.max_norm())
}

// ---------------------------------------------------------------------------
// Vector-valued forms
// ---------------------------------------------------------------------------

/// Value space of a [`VectorValuedForm`]. Component layout:
/// - `Rm`: index k ↔ basis vector e_k;
/// - `RmDual`: index k ↔ dual basis covector e^k;
/// - `Gl`: index i·m + j ↔ the form γ^i_j attached to the basis matrix E^j_i;
/// - `LambdaR`: canonical r-tuples of `[0, m)` ordered lexicographically;
/// - `LambdaTensor`: Λ^r ⊗ (Λ^r)^* with index a·C(m,r) + b, a the Λ^r slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueSpace {
    Rm(usize),
    RmDual(usize),
    Gl(usize),
    LambdaR { dim: usize, r: usize },
    LambdaTensor { dim: usize, r: usize },
}

/// Number of canonical r-subsets of an m-set.
pub fn binomial(m: usize, r: usize) -> usize {
    if r > m {
        return 0;
    }
    let mut num = 1usize;
    for i in 0..r {
        num = num * (m - i) / (i + 1);
    }
    num
}

/// Canonical (strictly increasing) r-tuples over `[0, dim)` in lexicographic
/// order; the basis ordering for `Λ^r ℝ^m`.
pub fn lambda_basis(dim: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(dim, r));
    let mut current: Vec<usize> = (0..r).collect();
    if r > dim {
        return out;
    }
    loop {
        out.push(current.clone());
        // Advance to the next increasing tuple.
        let mut i = r;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] < dim - (r - i) {
                current[i] += 1;
                for j in (i + 1)..r {
                    current[j] = current[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Position of a canonical tuple in [`lambda_basis`] order.
pub fn lambda_index(dim: usize, tuple: &[usize]) -> Option<usize> {
    let r = tuple.len();
    if !tuple.windows(2).all(|w| w[0] < w[1]) || tuple.iter().any(|&i| i >= dim) {
        return None;
    }
    // Count canonical tuples lexicographically smaller.
    let mut rank = 0usize;
    let mut prev: isize = -1;
    for (slot, &t) in tuple.iter().enumerate() {
        for v in (prev + 1) as usize..t {
            rank += binomial(dim - v - 1, r - slot - 1);
        }
        prev = t as isize;
    }
    Some(rank)
}

impl ValueSpace {
    pub fn dim(&self) -> usize {
        match *self {
            ValueSpace::Rm(m) | ValueSpace::RmDual(m) => m,
            ValueSpace::Gl(m) => m * m,
            ValueSpace::LambdaR { dim, r } => binomial(dim, r),
            ValueSpace::LambdaTensor { dim, r } => {
                let c = binomial(dim, r);
                c * c
            }
        }
    }
}

/// A differential form with values in a finite-dimensional vector space:
/// one scalar [`SparseAltForm`] per value-space basis element, all sharing
/// space dimension and degree.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorValuedForm {
    tag: ValueSpace,
    components: Vec<SparseAltForm>,
}

impl VectorValuedForm {
    pub fn new(tag: ValueSpace, components: Vec<SparseAltForm>) -> Result<Self, FormError> {
        if components.len() != tag.dim() {
            return Err(FormError::ValueDimension {
                tag,
                expected: tag.dim(),
                got: components.len(),
            });
        }
        let dim = components[0].space_dim();
        let degree = components[0].degree();
        for c in &components {
            if c.space_dim() != dim {
                return Err(FormError::DimensionMismatch {
                    left: dim,
                    right: c.space_dim(),
                });
            }
            if c.degree() != degree {
                return Err(FormError::DegreeMismatch {
                    left: degree,
                    right: c.degree(),
                });
            }
        }
        Ok(VectorValuedForm { tag, components })
    }

    pub fn zero(tag: ValueSpace, space_dim: usize, degree: usize) -> Self {
        let components = (0..tag.dim())
            .map(|_| SparseAltForm::zero(space_dim, degree))
            .collect();
        VectorValuedForm { tag, components }
    }

    pub fn tag(&self) -> ValueSpace {
        self.tag
    }

    pub fn space_dim(&self) -> usize {
        self.components[0].space_dim()
    }

    pub fn degree(&self) -> usize {
        self.components[0].degree()
    }

    pub fn component(&self, i: usize) -> &SparseAltForm {
        &self.components[i]
    }

    pub fn component_mut(&mut self, i: usize) -> &mut SparseAltForm {
        &mut self.components[i]
    }

    pub fn components(&self) -> &[SparseAltForm] {
        &self.components
    }

    pub fn max_norm(&self) -> f64 {
        self.components
            .iter()
            .fold(0.0, |m, c| m.max(c.max_norm()))
    }
}

/// The five bilinear combinators on vector-valued forms. `ConstantMap`
/// carries the matrix of a fixed linear map applied to the value slot.
#[derive(Debug, Clone)]
pub enum BilinearKind {
    Pairing,
    Action,
    Bracket,
    Wedge,
    ConstantMap(DMatrix<f64>),
}

/// Result of [`bilinear_combine`]: the pairing lands in scalars, everything
/// else stays vector-valued.
#[derive(Debug, Clone)]
pub enum BilinearOutput {
    Scalar(SparseAltForm),
    Vector(VectorValuedForm),
}

impl BilinearOutput {
    pub fn into_scalar(self) -> Option<SparseAltForm> {
        match self {
            BilinearOutput::Scalar(f) => Some(f),
            BilinearOutput::Vector(_) => None,
        }
    }

    pub fn into_vector(self) -> Option<VectorValuedForm> {
        match self {
            BilinearOutput::Vector(v) => Some(v),
            BilinearOutput::Scalar(_) => None,
        }
    }
}

/// `B(α ∧, β)` for the natural pairing, linear action, Lie bracket, wedge,
/// and constant-linear-map instances. Component forms are wedged and the
/// value-space bilinear map is applied to the basis slots.
pub fn bilinear_combine(
    kind: &BilinearKind,
    alpha: &VectorValuedForm,
    beta: &VectorValuedForm,
) -> Result<BilinearOutput, FormError> {
    match kind {
        BilinearKind::Pairing => Ok(BilinearOutput::Scalar(vv_pairing(alpha, beta)?)),
        BilinearKind::Action => Ok(BilinearOutput::Vector(vv_action(alpha, beta)?)),
        BilinearKind::Bracket => Ok(BilinearOutput::Vector(vv_bracket(alpha, beta)?)),
        BilinearKind::Wedge => Ok(BilinearOutput::Vector(vv_wedge(alpha, beta)?)),
        BilinearKind::ConstantMap(m) => Ok(BilinearOutput::Vector(vv_constant_map(m, beta)?)),
    }
}

/// Natural pairing `⟨α ∧, β⟩` of a dual-valued with a vector-valued form.
pub fn vv_pairing(
    alpha: &VectorValuedForm,
    beta: &VectorValuedForm,
) -> Result<SparseAltForm, FormError> {
    let compatible = matches!(
        (alpha.tag, beta.tag),
        (ValueSpace::RmDual(a), ValueSpace::Rm(b)) if a == b
    );
    if !compatible {
        return Err(FormError::IncompatibleValues {
            kind: "pairing",
            left: alpha.tag,
            right: beta.tag,
        });
    }
    let mut acc = SparseAltForm::zero(alpha.space_dim(), alpha.degree() + beta.degree());
    for k in 0..alpha.tag.dim() {
        let w = wedge(alpha.component(k), beta.component(k))?;
        acc = acc.add(&w)?;
    }
    Ok(acc)
}

/// Action `α ∧· β` of a 𝔤𝔩(m)-valued form on an ℝ^m-valued form:
/// `(α·β)^i = α^i_k ∧ β^k`.
pub fn vv_action(
    alpha: &VectorValuedForm,
    beta: &VectorValuedForm,
) -> Result<VectorValuedForm, FormError> {
    let m = match (alpha.tag, beta.tag) {
        (ValueSpace::Gl(a), ValueSpace::Rm(b)) if a == b => a,
        _ => {
            return Err(FormError::IncompatibleValues {
                kind: "action",
                left: alpha.tag,
                right: beta.tag,
            })
        }
    };
    let mut out = VectorValuedForm::zero(
        ValueSpace::Rm(m),
        alpha.space_dim(),
        alpha.degree() + beta.degree(),
    );
    for i in 0..m {
        for k in 0..m {
            let w = wedge(alpha.component(i * m + k), beta.component(k))?;
            *out.component_mut(i) = out.component(i).add(&w)?;
        }
    }
    Ok(out)
}

/// Graded bracket `[α ∧, β]` of 𝔤𝔩(m)-valued forms:
/// `[α ∧, β]^i_j = α^i_k ∧ β^k_j − (−1)^{|α||β|} β^i_k ∧ α^k_j`.
pub fn vv_bracket(
    alpha: &VectorValuedForm,
    beta: &VectorValuedForm,
) -> Result<VectorValuedForm, FormError> {
    let m = match (alpha.tag, beta.tag) {
        (ValueSpace::Gl(a), ValueSpace::Gl(b)) if a == b => a,
        _ => {
            return Err(FormError::IncompatibleValues {
                kind: "bracket",
                left: alpha.tag,
                right: beta.tag,
            })
        }
    };
    let sign = if (alpha.degree() * beta.degree()) % 2 == 0 {
        1.0
    } else {
        -1.0
    };
    let mut out = VectorValuedForm::zero(
        ValueSpace::Gl(m),
        alpha.space_dim(),
        alpha.degree() + beta.degree(),
    );
    for i in 0..m {
        for j in 0..m {
            let mut acc = SparseAltForm::zero(alpha.space_dim(), alpha.degree() + beta.degree());
            for k in 0..m {
                let ab = wedge(alpha.component(i * m + k), beta.component(k * m + j))?;
                let ba = wedge(beta.component(i * m + k), alpha.component(k * m + j))?;
                acc = linear_combine(&[1.0, 1.0, -sign], &[acc, ab, ba])?;
            }
            *out.component_mut(i * m + j) = acc;
        }
    }
    Ok(out)
}

/// Wedge on the value slot: `Λ^a ℝ^m × ℝ^m → Λ^{a+1} ℝ^m` (with `ℝ^m`
/// read as `Λ^1`).
pub fn vv_wedge(
    alpha: &VectorValuedForm,
    beta: &VectorValuedForm,
) -> Result<VectorValuedForm, FormError> {
    let (m, a) = match (alpha.tag, beta.tag) {
        (ValueSpace::Rm(a), ValueSpace::Rm(b)) if a == b => (a, 1),
        (ValueSpace::LambdaR { dim, r }, ValueSpace::Rm(b)) if dim == b => (dim, r),
        _ => {
            return Err(FormError::IncompatibleValues {
                kind: "wedge",
                left: alpha.tag,
                right: beta.tag,
            })
        }
    };
    let out_tag = ValueSpace::LambdaR { dim: m, r: a + 1 };
    let mut out =
        VectorValuedForm::zero(out_tag, alpha.space_dim(), alpha.degree() + beta.degree());
    let in_basis = if a == 1 && matches!(alpha.tag, ValueSpace::Rm(_)) {
        (0..m).map(|i| vec![i]).collect::<Vec<_>>()
    } else {
        lambda_basis(m, a)
    };
    for (ai, tuple) in in_basis.iter().enumerate() {
        for v in 0..m {
            if tuple.contains(&v) {
                continue;
            }
            let mut joined = tuple.clone();
            joined.push(v);
            let sign = crate::alt::perm_sign(&joined) as f64
                * crate::alt::perm_sign(tuple) as f64;
            let mut sorted = joined.clone();
            sorted.sort_unstable();
            let oi = lambda_index(m, &sorted).expect("canonical tuple");
            let w = wedge(alpha.component(ai), beta.component(v))?;
            *out.component_mut(oi) =
                linear_combine(&[1.0, sign], &[out.component(oi).clone(), w])?;
        }
    }
    Ok(out)
}

/// Fixed linear map applied to the value slot of `β`; the matrix is
/// (output dim) × (input dim) against the component layout of the tags.
pub fn vv_constant_map(
    map: &DMatrix<f64>,
    beta: &VectorValuedForm,
) -> Result<VectorValuedForm, FormError> {
    if map.ncols() != beta.tag.dim() {
        return Err(FormError::ValueDimension {
            tag: beta.tag,
            expected: map.ncols(),
            got: beta.tag.dim(),
        });
    }
    // The output tag cannot be inferred from a bare matrix; default to an
    // abstract ℝ^d. Callers wanting a structured tag rebuild via `new`.
    let out_tag = ValueSpace::Rm(map.nrows());
    let mut out = VectorValuedForm::zero(out_tag, beta.space_dim(), beta.degree());
    for w in 0..map.nrows() {
        let mut coeffs = Vec::new();
        let mut forms = Vec::new();
        for v in 0..map.ncols() {
            let c = map[(w, v)];
            if c != 0.0 {
                coeffs.push(c);
                forms.push(beta.component(v).clone());
            }
        }
        if !forms.is_empty() {
            *out.component_mut(w) = linear_combine(&coeffs, &forms)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dx(n: usize, i: usize) -> SparseAltForm {
        SparseAltForm::basis_covector(n, i).unwrap()
    }

    #[test]
    fn basis_covector_and_self_wedge() {
        let a = dx(4, 0);
        assert_eq!(a.num_terms(), 1);
        assert_eq!(a.coeff(&[0]), 1.0);
        let sq = wedge(&a, &a).unwrap();
        assert!(sq.is_zero());
        assert!(SparseAltForm::basis_covector(4, 4).is_err());
    }

    #[test]
    fn wedge_base_cases() {
        let d0 = dx(4, 0);
        let d1 = dx(4, 1);
        let w = wedge(&d0, &d1).unwrap();
        assert_eq!(w.coeff(&[0, 1]), 1.0);

        let sum = d0.add(&d1).unwrap();
        let w2 = wedge(&sum, &d1).unwrap();
        assert_eq!(w2.coeff(&[0, 1]), 1.0);
        assert_eq!(w2.num_terms(), 1);

        let w3 = wedge(&d1, &d0).unwrap();
        assert_eq!(w3.coeff(&[0, 1]), -1.0);
    }

    #[test]
    fn wedge_dimension_mismatch_errors() {
        let a = dx(3, 0);
        let b = dx(4, 0);
        assert!(matches!(
            wedge(&a, &b),
            Err(FormError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn wedge_degree_overflow_is_zero_form() {
        let n = 2;
        let w = wedge(&wedge(&dx(n, 0), &dx(n, 1)).unwrap(), &dx(n, 0)).unwrap();
        assert!(w.is_zero());
    }

    #[test]
    fn linear_combine_cases() {
        let a = wedge(&dx(3, 0), &dx(3, 2)).unwrap();
        let cancel = linear_combine(&[1.0, -1.0], &[a.clone(), a.clone()]).unwrap();
        assert!(cancel.is_zero());
        let b = SparseAltForm::zero(3, 2);
        let scaled = linear_combine(&[2.0, 0.0], &[a.clone(), b]).unwrap();
        assert_eq!(scaled.coeff(&[0, 2]), 2.0);
        let halved = linear_combine(&[0.5], &[a.add(&a).unwrap()]).unwrap();
        let (eq, _) = approx_eq(&halved, &a, 1e-15).unwrap();
        assert!(eq);
    }

    #[test]
    fn interior_position_signs() {
        let w = wedge(&dx(2, 0), &dx(2, 1)).unwrap();
        let e0 = TangentVector::basis(2, 0).unwrap();
        let e1 = TangentVector::basis(2, 1).unwrap();
        let i0 = interior(&e0, &w).unwrap();
        assert_eq!(i0.coeff(&[1]), 1.0);
        let i1 = interior(&e1, &w).unwrap();
        assert_eq!(i1.coeff(&[0]), -1.0);
        assert!(matches!(
            interior(&e0, &SparseAltForm::scalar(2, 1.0)),
            Err(FormError::InteriorOfScalar)
        ));
    }

    #[test]
    fn interior_of_basis_covector_is_kronecker() {
        let d0 = dx(4, 0);
        let e0 = TangentVector::basis(4, 0).unwrap();
        let s = interior(&e0, &d0).unwrap();
        assert_eq!(s.coeff(&[]), 1.0);
    }

    #[test]
    fn interior_is_nilpotent() {
        let mut v = TangentVector::zero(5);
        v.set(1, 2.0).unwrap();
        v.set(3, -0.7).unwrap();
        let mut a = SparseAltForm::zero(5, 3);
        a.add_term(&[0, 1, 3], 1.2);
        a.add_term(&[1, 2, 3], -0.4);
        a.add_term(&[0, 2, 4], 0.9);
        let once = interior(&v, &a).unwrap();
        let twice = interior(&v, &once).unwrap();
        assert_eq!(deviation(&twice, &SparseAltForm::zero(5, 1)), 0.0);
    }

    #[test]
    fn pullback_identity_and_zero() {
        let mut a = SparseAltForm::zero(3, 2);
        a.add_term(&[0, 2], 1.5);
        a.add_term(&[1, 2], -0.5);
        let id = DMatrix::<f64>::identity(3, 3);
        let b = pullback(&id, &a).unwrap();
        assert_eq!(deviation(&a, &b), 0.0);
        let z = DMatrix::<f64>::zeros(3, 3);
        let c = pullback(&z, &a).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn approx_eq_contract() {
        let a = dx(4, 0);
        assert!(approx_eq(&a, &a, 0.0).unwrap().0);
        let double = a.scale(2.0);
        assert!(!approx_eq(&a, &double, 1e-9).unwrap().0);
        let perturbed = a.add(&dx(4, 0).scale(1e-15)).unwrap();
        assert!(approx_eq(&a, &perturbed, 1e-12).unwrap().0);
    }

    #[test]
    fn lambda_basis_ordering_and_rank() {
        let basis = lambda_basis(4, 2);
        assert_eq!(basis.len(), 6);
        assert_eq!(basis[0], vec![0, 1]);
        assert_eq!(basis[5], vec![2, 3]);
        for (i, t) in basis.iter().enumerate() {
            assert_eq!(lambda_index(4, t), Some(i));
        }
        assert_eq!(lambda_index(4, &[1, 1]), None);
    }

    #[test]
    fn pairing_of_zero_forms_sums_products() {
        let m = 3;
        let alpha = VectorValuedForm::new(
            ValueSpace::RmDual(m),
            (0..m)
                .map(|k| SparseAltForm::scalar(2, (k + 1) as f64))
                .collect(),
        )
        .unwrap();
        let beta = VectorValuedForm::new(
            ValueSpace::Rm(m),
            (0..m)
                .map(|k| SparseAltForm::scalar(2, (k + 2) as f64))
                .collect(),
        )
        .unwrap();
        let p = vv_pairing(&alpha, &beta).unwrap();
        assert_eq!(p.coeff(&[]), (1.0 * 2.0) + (2.0 * 3.0) + (3.0 * 4.0));
    }

    #[test]
    fn bracket_of_one_form_with_itself_doubles_wedge() {
        // [ω ∧, ω]^i_j = 2 ω^i_k ∧ ω^k_j for a 𝔤-valued 1-form.
        let m = 2;
        let n = 4;
        let mut comps = Vec::new();
        for i in 0..m {
            for j in 0..m {
                let mut f = SparseAltForm::zero(n, 1);
                f.add_term(&[i], 1.0 + (i * m + j) as f64);
                f.add_term(&[j + 1], -0.5 * (j as f64 + 1.0));
                comps.push(f);
            }
        }
        let omega = VectorValuedForm::new(ValueSpace::Gl(m), comps).unwrap();
        let br = vv_bracket(&omega, &omega).unwrap();
        for i in 0..m {
            for j in 0..m {
                let mut expect = SparseAltForm::zero(n, 2);
                for k in 0..m {
                    let w = wedge(omega.component(i * m + k), omega.component(k * m + j)).unwrap();
                    expect = expect.add(&w.scale(2.0)).unwrap();
                }
                assert!(approx_eq(br.component(i * m + j), &expect, 1e-14).unwrap().0);
            }
        }
    }

    #[test]
    fn constant_map_zero_is_zero() {
        let beta = VectorValuedForm::new(
            ValueSpace::Rm(3),
            (0..3).map(|i| dx(5, i)).collect(),
        )
        .unwrap();
        let z = DMatrix::<f64>::zeros(2, 3);
        let out = vv_constant_map(&z, &beta).unwrap();
        assert!(out.components().iter().all(|c| c.is_zero()));
    }

    #[test]
    fn vv_wedge_antisymmetry_on_rm_pair() {
        let n = 3;
        let alpha = VectorValuedForm::new(ValueSpace::Rm(2), vec![dx(n, 0), dx(n, 1)]).unwrap();
        let beta = alpha.clone();
        let w = vv_wedge(&alpha, &beta).unwrap();
        // Component on e_0 ∧ e_1: α^0∧β^1 − α^1∧β^0 = 2 dx^0∧dx^1.
        let c = w.component(0);
        assert_eq!(c.coeff(&[0, 1]), 2.0);
    }
}
