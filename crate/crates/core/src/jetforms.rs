//! Frame-bundle canonical forms evaluated at a numeric first-jet point.
//!
//! The covector space has dimension m + m² + m³ with the layout
//! `0..m ↔ dx^μ`, `m + μ·m + k ↔ de^μ_k`, and
//! `m + m² + μ·m² + k·m + σ ↔ de^μ_{kσ}` (row-major packing).
//!
//! Differentials are closed-form expansions at the point; the inverse-frame
//! rule `de^k_μ = -e^k_ν e^l_μ de^ν_l` supplies every derivative of the
//! inverse, so all identity checks run at machine precision.

use nalgebra::DMatrix;
use rand::Rng;
use thiserror::Error;

use crate::alt::{index_tuples, perm_sign};
use crate::valg::Signature;
use crate::xalg::{interior, linear_combine, wedge, wedge_all, SparseAltForm, TangentVector};

#[derive(Debug, Error)]
pub enum JetError {
    #[error("frame matrix is numerically singular (condition estimate {cond:.3e})")]
    SingularFrame { cond: f64 },
    #[error("frame inversion residual {residual:.3e} exceeds 1e-12")]
    InversionResidual { residual: f64 },
    #[error("input arrays do not match dimension {m}")]
    BadShape { m: usize },
    #[error("torsion sanity check failed: structure-equation and closed-form torsion differ by {deviation:.3e}")]
    TorsionSanity { deviation: f64 },
    #[error("jet point is off the torsion-zero locus (residual {residual:.3e})")]
    OffTorsionZero { residual: f64 },
    #[error("sparling needs p <= m, got p = {p} with m = {m}")]
    TooManyIndices { p: usize, m: usize },
    #[error("index {index} out of range for dimension {m}")]
    IndexOutOfRange { index: usize, m: usize },
    #[error("form algebra failure: {0}")]
    Form(#[from] crate::xalg::FormError),
}

/// Maximum frame condition number accepted by [`random_jet_point`].
pub const RANDOM_JET_COND_LIMIT: f64 = 100.0;

/// Numeric first-jet coordinates `(x^μ, e^μ_k, e^μ_{kσ})` of a frame-bundle
/// section, with the inverse frame recomputed and validated on construction.
#[derive(Debug, Clone)]
pub struct JetPoint {
    m: usize,
    x: Vec<f64>,
    /// `e[(μ, k)] = e^μ_k`.
    e: DMatrix<f64>,
    /// `e_inv[(k, μ)] = e^k_μ`.
    e_inv: DMatrix<f64>,
    /// Flat `[μ][k][σ]` packing of `e^μ_{kσ}`.
    ejet: Vec<f64>,
    cond: f64,
}

impl JetPoint {
    /// Validates and assembles a jet point. The inverse frame is recomputed,
    /// never trusted, and the condition number is reported in the error on
    /// singular input.
    pub fn new(x: Vec<f64>, e: DMatrix<f64>, ejet: Vec<f64>) -> Result<Self, JetError> {
        let m = x.len();
        if e.nrows() != m || e.ncols() != m || ejet.len() != m * m * m {
            return Err(JetError::BadShape { m });
        }
        let svd = e.clone().svd(false, false);
        let smax = svd.singular_values.max();
        let smin = svd.singular_values.min();
        let cond = if smin > 0.0 { smax / smin } else { f64::INFINITY };
        let e_inv = e
            .clone()
            .try_inverse()
            .ok_or(JetError::SingularFrame { cond })?;
        let residual = (&e_inv * &e - DMatrix::<f64>::identity(m, m)).abs().max();
        if !residual.is_finite() || residual > 1e-12 * cond.max(1.0) {
            return Err(JetError::InversionResidual { residual });
        }
        Ok(JetPoint {
            m,
            x,
            e,
            e_inv,
            ejet,
            cond,
        })
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn frame(&self) -> &DMatrix<f64> {
        &self.e
    }

    pub fn frame_inv(&self) -> &DMatrix<f64> {
        &self.e_inv
    }

    pub fn condition(&self) -> f64 {
        self.cond
    }

    /// `e^μ_{kσ}`.
    pub fn ejet(&self, mu: usize, k: usize, sigma: usize) -> f64 {
        self.ejet[(mu * self.m + k) * self.m + sigma]
    }

    /// Dimension of the jet covector space, `m + m² + m³`.
    pub fn jet_dim(&self) -> usize {
        self.m + self.m * self.m + self.m * self.m * self.m
    }

    /// Covector slot of `dx^μ`.
    pub fn cov_x(&self, mu: usize) -> usize {
        mu
    }

    /// Covector slot of `de^μ_k`.
    pub fn cov_de(&self, mu: usize, k: usize) -> usize {
        self.m + mu * self.m + k
    }

    /// Covector slot of `de^μ_{kσ}`.
    pub fn cov_dejet(&self, mu: usize, k: usize, sigma: usize) -> usize {
        self.m + self.m * self.m + (mu * self.m + k) * self.m + sigma
    }
}

/// Jet point with `e = id + 0.3·U(-1,1)` (redrawn while the condition
/// number exceeds [`RANDOM_JET_COND_LIMIT`]) and `e^μ_{kσ} ~ U(-1,1)`.
pub fn random_jet_point<R: Rng>(rng: &mut R, m: usize) -> JetPoint {
    loop {
        let mut e = DMatrix::<f64>::identity(m, m);
        for mu in 0..m {
            for k in 0..m {
                e[(mu, k)] += 0.3 * rng.gen_range(-1.0..1.0);
            }
        }
        let x: Vec<f64> = (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let ejet: Vec<f64> = (0..m * m * m).map(|_| rng.gen_range(-1.0..1.0)).collect();
        match JetPoint::new(x, e, ejet) {
            Ok(jp) if jp.condition() <= RANDOM_JET_COND_LIMIT => return jp,
            _ => continue,
        }
    }
}

/// The canonical forms of the jet space at a point: coframe, connection,
/// curvature, torsion, and the analytic differentials of the first two.
#[derive(Debug, Clone)]
pub struct CanonicalForms {
    m: usize,
    jet_dim: usize,
    /// θ^k = e^k_μ dx^μ.
    pub theta: Vec<SparseAltForm>,
    /// dθ^k with the inverse-frame differential expanded analytically.
    pub dtheta: Vec<SparseAltForm>,
    /// ω^i_j = e^i_μ de^μ_j − e^i_μ e^μ_{jσ} dx^σ, flat `[i·m + j]`.
    pub omega: Vec<SparseAltForm>,
    /// dω^i_j, flat `[i·m + j]`.
    pub domega: Vec<SparseAltForm>,
    /// Ω^i_j = dω^i_j + ω^i_k ∧ ω^k_j, flat `[i·m + j]`.
    pub curvature: Vec<SparseAltForm>,
    /// T^k = dθ^k + ω^k_i ∧ θ^i.
    pub torsion: Vec<SparseAltForm>,
}

impl CanonicalForms {
    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn jet_dim(&self) -> usize {
        self.jet_dim
    }

    pub fn omega_ij(&self, i: usize, j: usize) -> &SparseAltForm {
        &self.omega[i * self.m + j]
    }

    pub fn domega_ij(&self, i: usize, j: usize) -> &SparseAltForm {
        &self.domega[i * self.m + j]
    }

    pub fn curvature_ij(&self, i: usize, j: usize) -> &SparseAltForm {
        &self.curvature[i * self.m + j]
    }

    /// σ₀: the wedge of all coframe legs in label order.
    pub fn sigma0(&self) -> Result<SparseAltForm, JetError> {
        let refs: Vec<&SparseAltForm> = self.theta.iter().collect();
        Ok(wedge_all(self.jet_dim, &refs)?)
    }
}

/// Evaluates every canonical form at the jet point. The torsion from the
/// structure equation is cross-checked against its closed coordinate
/// expression; disagreement beyond 1e-10 rejects the input.
pub fn canonical_forms(jp: &JetPoint) -> Result<CanonicalForms, JetError> {
    let m = jp.dim();
    let n = jp.jet_dim();
    let einv = jp.frame_inv();

    let dx: Vec<SparseAltForm> = (0..m)
        .map(|mu| SparseAltForm::basis_covector(n, jp.cov_x(mu)).expect("in range"))
        .collect();

    // de^k_μ = -e^k_ν e^l_μ de^ν_l (differential of the inverse frame).
    let mut dinv = vec![SparseAltForm::zero(n, 1); m * m];
    for k in 0..m {
        for mu in 0..m {
            let f = &mut dinv[k * m + mu];
            for nu in 0..m {
                for l in 0..m {
                    let c = -einv[(k, nu)] * einv[(l, mu)];
                    if c != 0.0 {
                        f.add_term(&[jp.cov_de(nu, l)], c);
                    }
                }
            }
        }
    }

    // θ^k = e^k_μ dx^μ.
    let mut theta = vec![SparseAltForm::zero(n, 1); m];
    for k in 0..m {
        for mu in 0..m {
            let c = einv[(k, mu)];
            if c != 0.0 {
                theta[k].add_term(&[jp.cov_x(mu)], c);
            }
        }
    }

    // dθ^k = de^k_μ ∧ dx^μ.
    let mut dtheta = vec![SparseAltForm::zero(n, 2); m];
    for k in 0..m {
        for mu in 0..m {
            let w = wedge(&dinv[k * m + mu], &dx[mu])?;
            dtheta[k] = dtheta[k].add(&w)?;
        }
    }

    // ω^i_j = e^i_μ de^μ_j − e^i_μ e^μ_{jσ} dx^σ.
    let mut omega = vec![SparseAltForm::zero(n, 1); m * m];
    for i in 0..m {
        for j in 0..m {
            let f = &mut omega[i * m + j];
            for mu in 0..m {
                let c = einv[(i, mu)];
                if c != 0.0 {
                    f.add_term(&[jp.cov_de(mu, j)], c);
                }
            }
            for sigma in 0..m {
                let mut c = 0.0;
                for mu in 0..m {
                    c -= einv[(i, mu)] * jp.ejet(mu, j, sigma);
                }
                if c != 0.0 {
                    f.add_term(&[jp.cov_x(sigma)], c);
                }
            }
        }
    }

    // dω^i_j = de^i_μ∧de^μ_j − de^i_μ e^μ_{jσ}∧dx^σ − e^i_μ de^μ_{jσ}∧dx^σ.
    let mut domega = vec![SparseAltForm::zero(n, 2); m * m];
    for i in 0..m {
        for j in 0..m {
            let mut acc = SparseAltForm::zero(n, 2);
            for mu in 0..m {
                let de_mu_j = SparseAltForm::basis_covector(n, jp.cov_de(mu, j)).expect("range");
                acc = acc.add(&wedge(&dinv[i * m + mu], &de_mu_j)?)?;
                for sigma in 0..m {
                    let c = jp.ejet(mu, j, sigma);
                    if c != 0.0 {
                        let w = wedge(&dinv[i * m + mu], &dx[sigma])?;
                        acc = acc.add(&w.scale(-c))?;
                    }
                    let cinv = einv[(i, mu)];
                    if cinv != 0.0 {
                        let de_jet = SparseAltForm::basis_covector(n, jp.cov_dejet(mu, j, sigma))
                            .expect("range");
                        let w = wedge(&de_jet, &dx[sigma])?;
                        acc = acc.add(&w.scale(-cinv))?;
                    }
                }
            }
            domega[i * m + j] = acc;
        }
    }

    // Ω^i_j = dω^i_j + ω^i_k ∧ ω^k_j.
    let mut curvature = vec![SparseAltForm::zero(n, 2); m * m];
    for i in 0..m {
        for j in 0..m {
            let mut acc = domega[i * m + j].clone();
            for k in 0..m {
                acc = acc.add(&wedge(&omega[i * m + k], &omega[k * m + j])?)?;
            }
            curvature[i * m + j] = acc;
        }
    }

    // T^k = dθ^k + ω^k_i ∧ θ^i.
    let mut torsion = vec![SparseAltForm::zero(n, 2); m];
    for k in 0..m {
        let mut acc = dtheta[k].clone();
        for i in 0..m {
            acc = acc.add(&wedge(&omega[k * m + i], &theta[i])?)?;
        }
        torsion[k] = acc;
    }

    let cf = CanonicalForms {
        m,
        jet_dim: n,
        theta,
        dtheta,
        omega,
        domega,
        curvature,
        torsion,
    };

    // Sanity: the structure-equation torsion must match the closed form
    // T^k = ½ e^k_μ (e^μ_{iν} e^i_σ − e^μ_{iσ} e^i_ν) dx^σ ∧ dx^ν.
    let closed = torsion_closed_form(jp);
    let mut dev = 0.0f64;
    for k in 0..m {
        dev = dev.max(crate::xalg::rel_deviation(&cf.torsion[k], &closed[k]));
    }
    if dev > 1e-10 {
        return Err(JetError::TorsionSanity { deviation: dev });
    }
    Ok(cf)
}

/// The closed coordinate expression of the torsion,
/// `T^k = ½ e^k_μ (e^μ_{iν} e^i_σ − e^μ_{iσ} e^i_ν) dx^σ ∧ dx^ν`,
/// assembled independently of the structure equation.
pub fn torsion_closed_form(jp: &JetPoint) -> Vec<SparseAltForm> {
    let m = jp.dim();
    let n = jp.jet_dim();
    let einv = jp.frame_inv();
    let mut out = vec![SparseAltForm::zero(n, 2); m];
    for k in 0..m {
        for sigma in 0..m {
            for nu in (sigma + 1)..m {
                // Canonical coefficient on dx^σ∧dx^ν for σ < ν; the ½ and
                // the antisymmetric double count cancel.
                let mut c = 0.0;
                for mu in 0..m {
                    for i in 0..m {
                        c += einv[(k, mu)]
                            * (jp.ejet(mu, i, nu) * einv[(i, sigma)]
                                - jp.ejet(mu, i, sigma) * einv[(i, nu)]);
                    }
                }
                if c != 0.0 {
                    out[k].add_term(&[jp.cov_x(sigma), jp.cov_x(nu)], c);
                }
            }
        }
    }
    out
}

/// `e^μ_{iν} e^i_σ − e^μ_{iσ} e^i_ν`, indexed `[μ][ν][σ]` row-major; zero
/// exactly on the torsion-free locus.
pub fn torsion_zero_residual(jp: &JetPoint) -> Vec<f64> {
    let m = jp.dim();
    let einv = jp.frame_inv();
    let mut out = vec![0.0; m * m * m];
    for mu in 0..m {
        for nu in 0..m {
            for sigma in 0..m {
                let mut c = 0.0;
                for i in 0..m {
                    c += jp.ejet(mu, i, nu) * einv[(i, sigma)]
                        - jp.ejet(mu, i, sigma) * einv[(i, nu)];
                }
                out[(mu * m + nu) * m + sigma] = c;
            }
        }
    }
    out
}

pub fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |a, &b| a.max(b.abs()))
}

/// Connection coordinates `Γ^μ_{νσ} = -e^k_ν e^μ_{kσ}`, flat `[μ][ν][σ]`.
pub fn connection_coordinates(jp: &JetPoint) -> Vec<f64> {
    let m = jp.dim();
    let einv = jp.frame_inv();
    let mut gamma = vec![0.0; m * m * m];
    for mu in 0..m {
        for nu in 0..m {
            for sigma in 0..m {
                let mut c = 0.0;
                for k in 0..m {
                    c -= einv[(k, nu)] * jp.ejet(mu, k, sigma);
                }
                gamma[(mu * m + nu) * m + sigma] = c;
            }
        }
    }
    gamma
}

/// Projects the jet coordinates onto the torsion-free locus: the connection
/// coordinates `Γ^μ_{νσ} = -e^k_ν e^μ_{kσ}` are symmetrized in (ν, σ) and
/// mapped back through `e^μ_{kσ} = -e^ν_k Γ^μ_{νσ}`. Idempotent.
pub fn project_to_t0(jp: &JetPoint) -> Result<JetPoint, JetError> {
    let m = jp.dim();
    let e = jp.frame();
    let gamma = connection_coordinates(jp);
    let mut ejet = vec![0.0; m * m * m];
    for mu in 0..m {
        for k in 0..m {
            for sigma in 0..m {
                let mut c = 0.0;
                for nu in 0..m {
                    let sym = 0.5
                        * (gamma[(mu * m + nu) * m + sigma] + gamma[(mu * m + sigma) * m + nu]);
                    c -= e[(nu, k)] * sym;
                }
                ejet[(mu * m + k) * m + sigma] = c;
            }
        }
    }
    JetPoint::new(jp.x().to_vec(), e.clone(), ejet)
}

/// Jet point realizing a prescribed torsion-free connection in a given
/// frame: `e^μ_{kσ} = -e^ν_k Γ^μ_{νσ}` with `gamma` flat `[μ][ν][σ]`.
pub fn jet_point_from_connection(
    x: Vec<f64>,
    e: DMatrix<f64>,
    gamma: &[f64],
) -> Result<JetPoint, JetError> {
    let m = e.nrows();
    if gamma.len() != m * m * m {
        return Err(JetError::BadShape { m });
    }
    let mut ejet = vec![0.0; m * m * m];
    for mu in 0..m {
        for k in 0..m {
            for sigma in 0..m {
                let mut c = 0.0;
                for nu in 0..m {
                    c -= e[(nu, k)] * gamma[(mu * m + nu) * m + sigma];
                }
                ejet[(mu * m + k) * m + sigma] = c;
            }
        }
    }
    JetPoint::new(x, e, ejet)
}

/// Sparling form `θ_{i_1…i_p}` built from an arbitrary coframe: the
/// ε-contraction of the complementary wedge powers,
/// `(1/(m-p)!) ε_{i_1…i_p i_{p+1}…i_m} θ^{i_{p+1}} ∧ … ∧ θ^{i_m}`,
/// with the defining sum taken over every complementary index tuple.
pub fn sparling_from_thetas(
    thetas: &[SparseAltForm],
    indices: &[usize],
) -> Result<SparseAltForm, JetError> {
    let m = thetas.len();
    let p = indices.len();
    if p > m {
        return Err(JetError::TooManyIndices { p, m });
    }
    for &i in indices {
        if i >= m {
            return Err(JetError::IndexOutOfRange { index: i, m });
        }
    }
    let n = thetas[0].space_dim();
    let comp = m - p;
    let fact: f64 = (1..=comp).product::<usize>().max(1) as f64;
    let mut acc = SparseAltForm::zero(n, comp);
    let mut full = Vec::with_capacity(m);
    for tail in index_tuples(m, comp) {
        full.clear();
        full.extend_from_slice(indices);
        full.extend_from_slice(&tail);
        let sign = perm_sign(&full);
        if sign == 0 {
            continue;
        }
        let refs: Vec<&SparseAltForm> = tail.iter().map(|&c| &thetas[c]).collect();
        let w = wedge_all(n, &refs)?;
        acc = acc.add(&w.scale(sign as f64 / fact))?;
    }
    Ok(acc)
}

/// Sparling form at a jet point.
pub fn sparling(cf: &CanonicalForms, indices: &[usize]) -> Result<SparseAltForm, JetError> {
    sparling_from_thetas(&cf.theta, indices)
}

/// Vectors `X_i` with `θ^j(X_i) = δ^j_i`, solved from the coframe matrix:
/// `X_i = e^μ_i ∂/∂x^μ`. Fiber components may be added by the caller;
/// contraction against σ₀ does not see them.
pub fn frame_contraction_vectors(jp: &JetPoint) -> Vec<TangentVector> {
    let m = jp.dim();
    let n = jp.jet_dim();
    let e = jp.frame();
    (0..m)
        .map(|i| {
            let mut v = TangentVector::zero(n);
            for mu in 0..m {
                v.set(jp.cov_x(mu), e[(mu, i)]).expect("in range");
            }
            v
        })
        .collect()
}

/// `X_{i_p} ⌟ … ⌟ X_{i_1} ⌟ σ₀`; the contraction route to the Sparling
/// forms, kept independent of [`sparling`] as a runtime cross-check.
pub fn sparling_via_contraction(
    cf: &CanonicalForms,
    indices: &[usize],
    vectors: &[TangentVector],
) -> Result<SparseAltForm, JetError> {
    let m = cf.dim();
    if indices.len() > m {
        return Err(JetError::TooManyIndices {
            p: indices.len(),
            m,
        });
    }
    for &i in indices {
        if i >= m {
            return Err(JetError::IndexOutOfRange { index: i, m });
        }
    }
    let mut acc = cf.sigma0()?;
    for &i in indices {
        acc = interior(&vectors[i], &acc)?;
    }
    Ok(acc)
}

/// The infinitesimal-generator vector `(E^k_l)` of the fiber action at the
/// jet point, `e^μ_l ∂/∂e^μ_k + e^μ_{lσ} ∂/∂e^μ_{kσ}`.
pub fn generator_vector(jp: &JetPoint, k: usize, l: usize) -> TangentVector {
    let m = jp.dim();
    let mut v = TangentVector::zero(jp.jet_dim());
    for mu in 0..m {
        v.set(jp.cov_de(mu, k), jp.frame()[(mu, l)]).expect("range");
        for sigma in 0..m {
            v.set(jp.cov_dejet(mu, k, sigma), jp.ejet(mu, l, sigma))
                .expect("range");
        }
    }
    v
}

/// The vertical-lift vector `(θ^r, (E^s_t))^V`, supported on the
/// `de^μ_{sσ}` directions with components `-e^r_σ e^μ_t`.
///
/// The overall sign is fixed by the contraction identities
/// `v ⌟ Ω^k_l = δ^k_t δ^s_l θ^r`, `v ⌟ ω = 0`, `v ⌟ θ = 0`.
pub fn vertical_lift_vector(jp: &JetPoint, r: usize, s: usize, t: usize) -> TangentVector {
    let m = jp.dim();
    let mut v = TangentVector::zero(jp.jet_dim());
    for mu in 0..m {
        for sigma in 0..m {
            let c = -jp.frame_inv()[(r, sigma)] * jp.frame()[(mu, t)];
            v.set(jp.cov_dejet(mu, s, sigma), c).expect("range");
        }
    }
    v
}

/// dθ_{i_1…i_p} assembled by Leibniz over the defining ε-sum, using the
/// analytic dθ^k.
pub fn sparling_differential_leibniz(
    cf: &CanonicalForms,
    indices: &[usize],
) -> Result<SparseAltForm, JetError> {
    let m = cf.dim();
    let p = indices.len();
    if p > m {
        return Err(JetError::TooManyIndices { p, m });
    }
    let n = cf.jet_dim();
    let comp = m - p;
    let fact: f64 = (1..=comp).product::<usize>().max(1) as f64;
    let mut acc = SparseAltForm::zero(n, comp + 1);
    let mut full = Vec::with_capacity(m);
    for tail in index_tuples(m, comp) {
        full.clear();
        full.extend_from_slice(indices);
        full.extend_from_slice(&tail);
        let sign = perm_sign(&full);
        if sign == 0 {
            continue;
        }
        for a in 0..comp {
            // θ^{c_1} ∧ … ∧ dθ^{c_a} ∧ … with the graded sign (-1)^a.
            let mut refs: Vec<&SparseAltForm> = Vec::with_capacity(comp);
            for (pos, &c) in tail.iter().enumerate() {
                refs.push(if pos == a {
                    &cf.dtheta[c]
                } else {
                    &cf.theta[c]
                });
            }
            let w = wedge_all(n, &refs)?;
            let leibniz_sign = if a % 2 == 0 { 1.0 } else { -1.0 };
            acc = acc.add(&w.scale(sign as f64 * leibniz_sign / fact))?;
        }
    }
    Ok(acc)
}

/// dθ_{i_1…i_p} through the structural identity
/// `T^l ∧ θ_{i_1…i_p l} + Σ_r (-1)^{p+r} ω^l_{i_r} ∧ θ_{i_1…î_r…i_p l}
///  − ω^l_l ∧ θ_{i_1…i_p}`.
pub fn sparling_differential_structural(
    cf: &CanonicalForms,
    indices: &[usize],
) -> Result<SparseAltForm, JetError> {
    let m = cf.dim();
    let p = indices.len();
    if p > m {
        return Err(JetError::TooManyIndices { p, m });
    }
    let n = cf.jet_dim();
    let mut acc = SparseAltForm::zero(n, m - p + 1);
    let mut appended = Vec::with_capacity(p + 1);
    for l in 0..m {
        // Appending an index to a full tuple forces a repeat; those
        // Sparling forms vanish identically.
        if p < m {
            appended.clear();
            appended.extend_from_slice(indices);
            appended.push(l);
            let th = sparling_from_thetas(&cf.theta, &appended)?;
            acc = acc.add(&wedge(&cf.torsion[l], &th)?)?;
        }
        for r in 0..p {
            appended.clear();
            appended.extend(
                indices
                    .iter()
                    .enumerate()
                    .filter(|&(q, _)| q != r)
                    .map(|(_, &v)| v),
            );
            appended.push(l);
            let th = sparling_from_thetas(&cf.theta, &appended)?;
            let w = wedge(cf.omega_ij(l, indices[r]), &th)?;
            // 1-based position r+1 in the paper's (-1)^{p+r}.
            let sign = if (p + r + 1) % 2 == 0 { 1.0 } else { -1.0 };
            acc = acc.add(&w.scale(sign))?;
        }
    }
    let base = sparling_from_thetas(&cf.theta, indices)?;
    let mut trace = SparseAltForm::zero(n, 1);
    for l in 0..m {
        trace = trace.add(cf.omega_ij(l, l))?;
    }
    acc = acc.add(&wedge(&trace, &base)?.scale(-1.0))?;
    Ok(acc)
}

/// The homogeneous Lovelock Lagrangian form
/// `λ^{(r)} = θ_{IJ} ∧ Ω^{i_1 j_1} ∧ … ∧ Ω^{i_r j_r}` with
/// `Ω^{ij} = η^{jq} Ω^i_q`, summed over all multi-index tuples. Returns the
/// zero form flagged `true` when `2r > m`.
pub fn lovelock_lagrangian_form(
    cf: &CanonicalForms,
    r: usize,
    sig: &Signature,
) -> Result<(SparseAltForm, bool), JetError> {
    let m = cf.dim();
    let n = cf.jet_dim();
    if 2 * r > m {
        return Ok((SparseAltForm::zero(n, m), true));
    }
    let raised = raised_curvature(cf, sig);
    let mut acc = SparseAltForm::zero(n, m);
    for ij in index_tuples(m, 2 * r) {
        let (i_part, j_part) = ij.split_at(r);
        let th = sparling_from_thetas(&cf.theta, &ij)?;
        if th.is_zero() {
            continue;
        }
        let mut w = th;
        for a in 0..r {
            w = wedge(&w, &raised[i_part[a] * m + j_part[a]])?;
        }
        acc = acc.add(&w)?;
    }
    Ok((acc, false))
}

/// `Ω^{ij} = η^{jq} Ω^i_q`, flat `[i·m + j]`.
pub fn raised_curvature(cf: &CanonicalForms, sig: &Signature) -> Vec<SparseAltForm> {
    let m = cf.dim();
    let mut out = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            let mut acc = SparseAltForm::zero(cf.jet_dim(), 2);
            for q in 0..m {
                let c = sig.eta_inv(j, q);
                if c != 0.0 {
                    acc = acc
                        .add(&cf.curvature_ij(i, q).scale(c))
                        .expect("same shape");
                }
            }
            out.push(acc);
        }
    }
    out
}

/// Report of the torsion-free differential identity for λ_L.
#[derive(Debug, Clone)]
pub struct DlambdaReport {
    /// Normalized max deviation between the two sides.
    pub deviation: f64,
    /// Least-squares constant fitting lhs ≈ c·rhs; 1 when the identity
    /// holds on the nose. Reported so a constant-factor mismatch is
    /// flagged rather than silently absorbed.
    pub fitted_constant: f64,
    pub lhs_norm: f64,
    pub rhs_norm: f64,
}

/// Checks the torsion-free differential identity for the Lovelock form:
/// `dλ_L`, assembled by Leibniz from the structural dθ_{IJ} and the second
/// Bianchi expansion `dΩ = Ω∧ω − ω∧Ω`, against
/// `2[r η^{j_1 p}(ω_𝔭)^q_p ∧ θ_{IJ} − ½ η^{j_1 q}(ω_𝔭)^l_l ∧ θ_{IJ}]
///   ∧ Ω^{i_1}_q ∧ Ω^{I'J'}`.
/// Both sides are full jet-space forms; at a torsion-free point the torsion
/// form vanishes pointwise, so no submanifold pullback is needed.
pub fn dlambda_check(
    jp: &JetPoint,
    cf: &CanonicalForms,
    r: usize,
    sig: &Signature,
) -> Result<DlambdaReport, JetError> {
    let residual = max_abs(&torsion_zero_residual(jp));
    if residual > 1e-10 {
        return Err(JetError::OffTorsionZero { residual });
    }
    let m = cf.dim();
    if sig.dim() != m {
        return Err(JetError::BadShape { m });
    }
    let n = cf.jet_dim();
    let raised = raised_curvature(cf, sig);

    // dΩ^{ij} = η^{jq} (Ω^i_k ∧ ω^k_q − ω^i_k ∧ Ω^k_q).
    let mut draised = vec![SparseAltForm::zero(n, 3); m * m];
    for i in 0..m {
        for j in 0..m {
            let mut acc = SparseAltForm::zero(n, 3);
            for q in 0..m {
                let c = sig.eta_inv(j, q);
                if c == 0.0 {
                    continue;
                }
                for k in 0..m {
                    let a = wedge(cf.curvature_ij(i, k), cf.omega_ij(k, q))?;
                    let b = wedge(cf.omega_ij(i, k), cf.curvature_ij(k, q))?;
                    acc = linear_combine(&[1.0, c, -c], &[acc, a, b])?;
                }
            }
            draised[i * m + j] = acc;
        }
    }

    let leibniz_sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let mut lhs = SparseAltForm::zero(n, m + 1);
    for ij in index_tuples(m, 2 * r) {
        let (i_part, j_part) = ij.split_at(r);
        let th = sparling_from_thetas(&cf.theta, &ij)?;
        let dth = sparling_differential_structural(cf, &ij)?;
        let mut w = dth;
        for a in 0..r {
            w = wedge(&w, &raised[i_part[a] * m + j_part[a]])?;
        }
        lhs = lhs.add(&w)?;
        if th.is_zero() {
            continue;
        }
        for a in 0..r {
            let mut w = th.clone();
            for b in 0..r {
                let factor = if b == a {
                    &draised[i_part[b] * m + j_part[b]]
                } else {
                    &raised[i_part[b] * m + j_part[b]]
                };
                w = wedge(&w, factor)?;
            }
            lhs = lhs.add(&w.scale(leibniz_sign))?;
        }
    }

    let omega_p = crate::valg::cartan_project_forms(&cf.omega, crate::valg::CartanPart::P, sig)
        .expect("dimensions validated above");
    let mut omega_p_trace = SparseAltForm::zero(n, 1);
    for l in 0..m {
        omega_p_trace = omega_p_trace.add(&omega_p[l * m + l])?;
    }

    let mut rhs = SparseAltForm::zero(n, m + 1);
    for ij in index_tuples(m, 2 * r) {
        let (i_part, j_part) = ij.split_at(r);
        let th = sparling_from_thetas(&cf.theta, &ij)?;
        if th.is_zero() {
            continue;
        }
        let mut tail = SparseAltForm::scalar(n, 1.0);
        for b in 1..r {
            tail = wedge(&tail, &raised[i_part[b] * m + j_part[b]])?;
        }
        let j1 = j_part[0];
        let i1 = i_part[0];
        for q in 0..m {
            // r η^{j_1 p} (ω_𝔭)^q_p − ½ η^{j_1 q} (ω_𝔭)^l_l, wedged onto
            // θ_{IJ} ∧ Ω^{i_1}_q ∧ Ω^{I'J'}.
            let mut head = SparseAltForm::zero(n, 1);
            for p in 0..m {
                let c = sig.eta_inv(j1, p);
                if c != 0.0 {
                    head = head.add(&omega_p[q * m + p].scale(r as f64 * c))?;
                }
            }
            let c_tr = sig.eta_inv(j1, q);
            if c_tr != 0.0 {
                head = head.add(&omega_p_trace.scale(-0.5 * c_tr))?;
            }
            if head.is_zero() {
                continue;
            }
            let w = wedge(&wedge(&wedge(&head, &th)?, cf.curvature_ij(i1, q))?, &tail)?;
            rhs = rhs.add(&w.scale(2.0))?;
        }
    }

    let deviation = crate::xalg::rel_deviation(&lhs, &rhs);
    // Fit lhs ≈ c·rhs over the rhs support to expose constant mismatches.
    let mut num = 0.0;
    let mut den = 0.0;
    for (key, c_r) in rhs.terms() {
        let idx: Vec<usize> = key.iter().map(|&i| i as usize).collect();
        num += lhs.coeff(&idx) * c_r;
        den += c_r * c_r;
    }
    let fitted_constant = if den > 0.0 { num / den } else { f64::NAN };
    Ok(DlambdaReport {
        deviation,
        fitted_constant,
        lhs_norm: lhs.max_norm(),
        rhs_norm: rhs.max_norm(),
    })
}

/// Basis of the tangent space of the torsion-free locus at `jp`, as the
/// differential of the graph parametrization `(x, e, Γ_sym) ↦ (x, e, ejet)`.
/// Columns are tangent vectors; rows follow the jet covector layout.
pub fn t0_tangent_basis(jp: &JetPoint) -> Result<DMatrix<f64>, JetError> {
    let residual = max_abs(&torsion_zero_residual(jp));
    if residual > 1e-10 {
        return Err(JetError::OffTorsionZero { residual });
    }
    let m = jp.dim();
    let n = jp.jet_dim();
    let e = jp.frame();
    let gamma = connection_coordinates(jp);
    let sym_count = m * (m + 1) / 2;
    let d = m + m * m + m * sym_count;
    let mut l = DMatrix::<f64>::zeros(n, d);
    let mut col = 0;
    for mu in 0..m {
        l[(jp.cov_x(mu), col)] = 1.0;
        col += 1;
    }
    // ∂/∂e^μ_k at fixed Γ: ejet^α_{iσ} = -e^ν_i Γ^α_{νσ} moves along
    // -δ^k_i Γ^α_{μσ}.
    for mu in 0..m {
        for k in 0..m {
            l[(jp.cov_de(mu, k), col)] = 1.0;
            for alpha in 0..m {
                for sigma in 0..m {
                    l[(jp.cov_dejet(alpha, k, sigma), col)] -= gamma[(alpha * m + mu) * m + sigma];
                }
            }
            col += 1;
        }
    }
    // ∂/∂Γ^α_{(βρ)}, β ≤ ρ.
    for alpha in 0..m {
        for beta in 0..m {
            for rho in beta..m {
                for k in 0..m {
                    if beta == rho {
                        l[(jp.cov_dejet(alpha, k, beta), col)] -= e[(beta, k)];
                    } else {
                        l[(jp.cov_dejet(alpha, k, rho), col)] -= e[(beta, k)];
                        l[(jp.cov_dejet(alpha, k, beta), col)] -= e[(rho, k)];
                    }
                }
                col += 1;
            }
        }
    }
    debug_assert_eq!(col, d);
    Ok(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::xalg::{approx_eq, pullback, rel_deviation};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn identity_jet(m: usize) -> JetPoint {
        JetPoint::new(
            vec![0.0; m],
            DMatrix::<f64>::identity(m, m),
            vec![0.0; m * m * m],
        )
        .unwrap()
    }

    #[test]
    fn jet_point_identity_frame() {
        let jp = identity_jet(3);
        assert!(
            (jp.frame_inv() - DMatrix::<f64>::identity(3, 3))
                .abs()
                .max()
                < 1e-15
        );
    }

    #[test]
    fn jet_point_rejects_singular_frame() {
        let mut e = DMatrix::<f64>::zeros(2, 2);
        e[(0, 0)] = 1.0;
        assert!(JetPoint::new(vec![0.0; 2], e, vec![0.0; 8]).is_err());
    }

    #[test]
    fn jet_point_random_inverse_residual() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let jp = random_jet_point(&mut rng, 3);
        let residual = (jp.frame_inv() * jp.frame() - DMatrix::<f64>::identity(3, 3))
            .abs()
            .max();
        assert!(residual < 1e-12, "residual {residual}");
    }

    #[test]
    fn canonical_forms_flat_point() {
        let jp = identity_jet(3);
        let cf = canonical_forms(&jp).unwrap();
        // θ^k = dx^k, ω^i_j = de^i_j, T = 0, Ω = 0 at the flat point.
        for k in 0..3 {
            assert_eq!(cf.theta[k].coeff(&[k]), 1.0);
            assert_eq!(cf.theta[k].num_terms(), 1);
            assert!(cf.torsion[k].is_zero());
        }
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(cf.omega_ij(i, j).coeff(&[jp.cov_de(i, j)]), 1.0);
                assert_eq!(cf.omega_ij(i, j).num_terms(), 1);
                // The universal curvature keeps its jet legs even at the
                // flat point: Ω^i_j = −de^i_{jσ} ∧ dx^σ.
                let omega_ij = cf.curvature_ij(i, j);
                assert_eq!(omega_ij.num_terms(), 3);
                for sigma in 0..3 {
                    assert_eq!(
                        omega_ij.coeff(&[jp.cov_x(sigma), jp.cov_dejet(i, j, sigma)]),
                        1.0
                    );
                }
            }
        }
    }

    #[test]
    fn torsion_vanishes_for_symmetric_jet_at_identity_frame() {
        let m = 3;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut ejet = vec![0.0; m * m * m];
        for mu in 0..m {
            for k in 0..m {
                for s in k..m {
                    let v = rng.gen_range(-1.0..1.0);
                    ejet[(mu * m + k) * m + s] = v;
                    ejet[(mu * m + s) * m + k] = v;
                }
            }
        }
        let jp = JetPoint::new(vec![0.0; m], DMatrix::<f64>::identity(m, m), ejet).unwrap();
        let cf = canonical_forms(&jp).unwrap();
        for k in 0..m {
            assert!(cf.torsion[k].max_norm() < 1e-14);
        }
        assert!(max_abs(&torsion_zero_residual(&jp)) < 1e-14);
    }

    #[test]
    fn torsion_two_routes_agree_on_random_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let jp = random_jet_point(&mut rng, 3);
            let cf = canonical_forms(&jp).unwrap();
            let closed = torsion_closed_form(&jp);
            for k in 0..3 {
                let dev = rel_deviation(&cf.torsion[k], &closed[k]);
                assert!(dev < 1e-12, "k={k} dev={dev}");
            }
        }
    }

    #[test]
    fn project_to_t0_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let jp = random_jet_point(&mut rng, 3);
        assert!(max_abs(&torsion_zero_residual(&jp)) > 1e-6);
        let p = project_to_t0(&jp).unwrap();
        assert!(max_abs(&torsion_zero_residual(&p)) < 1e-12);
        let pp = project_to_t0(&p).unwrap();
        for mu in 0..3 {
            for k in 0..3 {
                for s in 0..3 {
                    assert!((pp.ejet(mu, k, s) - p.ejet(mu, k, s)).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn project_to_t0_kills_antisymmetric_jet_at_identity() {
        let m = 3;
        let mut ejet = vec![0.0; 27];
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for mu in 0..m {
            for k in 0..m {
                for s in (k + 1)..m {
                    let v = rng.gen_range(-1.0..1.0);
                    ejet[(mu * m + k) * m + s] = v;
                    ejet[(mu * m + s) * m + k] = -v;
                }
            }
        }
        let jp = JetPoint::new(vec![0.0; m], DMatrix::<f64>::identity(m, m), ejet).unwrap();
        let p = project_to_t0(&jp).unwrap();
        for mu in 0..m {
            for k in 0..m {
                for s in 0..m {
                    assert!(p.ejet(mu, k, s).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn sparling_base_cases() {
        let jp = identity_jet(3);
        let cf = canonical_forms(&jp).unwrap();
        let s0 = sparling(&cf, &[]).unwrap();
        assert!((s0.coeff(&[0, 1, 2]) - 1.0).abs() < 1e-15);
        assert_eq!(s0.num_terms(), 1);
        let top = sparling(&cf, &[0, 1, 2]).unwrap();
        assert!((top.coeff(&[]) - 1.0).abs() < 1e-15);
        let z = sparling(&cf, &[1, 1]).unwrap();
        assert!(z.is_zero());
        let a = sparling(&cf, &[0, 2]).unwrap();
        let b = sparling(&cf, &[2, 0]).unwrap();
        assert_eq!(rel_deviation(&a, &b.scale(-1.0)), 0.0);
    }

    #[test]
    fn sparling_single_index_identity_frame() {
        // m=3, indices (0,): θ_0 = ½ ε_{0jk} dx^j ∧ dx^k = dx^1 ∧ dx^2.
        let jp = identity_jet(3);
        let cf = canonical_forms(&jp).unwrap();
        let s = sparling(&cf, &[0]).unwrap();
        assert_eq!(s.coeff(&[1, 2]), 1.0);
        assert_eq!(s.num_terms(), 1);
    }

    #[test]
    fn sparling_contraction_route_agrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for m in [3usize, 4] {
            for _ in 0..3 {
                let jp = random_jet_point(&mut rng, m);
                let cf = canonical_forms(&jp).unwrap();
                let mut vectors = frame_contraction_vectors(&jp);
                // Fiber components are invisible to σ₀; add some to make the
                // cross-check stronger.
                for v in &mut vectors {
                    v.set(jp.cov_de(0, m - 1), rng.gen_range(-1.0..1.0)).unwrap();
                    v.set(jp.cov_dejet(0, 1, 0), rng.gen_range(-1.0..1.0))
                        .unwrap();
                }
                for p in 0..=m.min(3) {
                    for indices in index_tuples(m, p) {
                        let direct = sparling(&cf, &indices).unwrap();
                        let contracted =
                            sparling_via_contraction(&cf, &indices, &vectors).unwrap();
                        let dev = rel_deviation(&direct, &contracted);
                        assert!(dev < 1e-12, "m={m} I={indices:?} dev={dev}");
                    }
                }
            }
        }
    }

    #[test]
    fn generator_vector_contractions() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let jp = random_jet_point(&mut rng, 3);
        let cf = canonical_forms(&jp).unwrap();
        for k in 0..3 {
            for l in 0..3 {
                let v = generator_vector(&jp, k, l);
                for i in 0..3 {
                    let t = interior(&v, &cf.theta[i]).unwrap();
                    assert!(t.max_norm() < 1e-12);
                    for j in 0..3 {
                        // ω^i_j(E^k_l) = δ^i_l δ^k_j.
                        let w = interior(&v, cf.omega_ij(i, j)).unwrap();
                        let expect = if i == l && k == j { 1.0 } else { 0.0 };
                        assert!(
                            (w.coeff(&[]) - expect).abs() < 1e-12,
                            "i={i} j={j} k={k} l={l} got {}",
                            w.coeff(&[])
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn vertical_lift_contractions() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let jp = random_jet_point(&mut rng, 3);
        let cf = canonical_forms(&jp).unwrap();
        let m = 3;
        for r in 0..m {
            for s in 0..m {
                for t in 0..m {
                    let v = vertical_lift_vector(&jp, r, s, t);
                    for k in 0..m {
                        let th = interior(&v, &cf.theta[k]).unwrap();
                        assert!(th.is_zero(), "theta contraction is structural zero");
                        for l in 0..m {
                            let w = interior(&v, cf.omega_ij(k, l)).unwrap();
                            assert!(w.max_norm() < 1e-12, "omega contraction");
                            let c = interior(&v, cf.curvature_ij(k, l)).unwrap();
                            let expect = if k == t && s == l {
                                cf.theta[r].clone()
                            } else {
                                SparseAltForm::zero(jp.jet_dim(), 1)
                            };
                            let dev = rel_deviation(&c, &expect);
                            assert!(dev < 1e-12, "r={r} s={s} t={t} k={k} l={l} dev={dev}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn first_structure_equation_residual() {
        // dT^k + ω^k_l ∧ T^l − Ω^k_l ∧ θ^l = 0 with dT by Leibniz.
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for _ in 0..3 {
            let jp = random_jet_point(&mut rng, 3);
            let cf = canonical_forms(&jp).unwrap();
            for k in 0..3 {
                let mut dt = SparseAltForm::zero(jp.jet_dim(), 3);
                for i in 0..3 {
                    dt = dt
                        .add(&wedge(cf.domega_ij(k, i), &cf.theta[i]).unwrap())
                        .unwrap();
                    dt = dt
                        .add(&wedge(cf.omega_ij(k, i), &cf.dtheta[i]).unwrap().scale(-1.0))
                        .unwrap();
                }
                let mut lhs = dt;
                for l in 0..3 {
                    lhs = lhs
                        .add(&wedge(cf.omega_ij(k, l), &cf.torsion[l]).unwrap())
                        .unwrap();
                    lhs = lhs
                        .add(
                            &wedge(cf.curvature_ij(k, l), &cf.theta[l])
                                .unwrap()
                                .scale(-1.0),
                        )
                        .unwrap();
                }
                let scale = 1.0f64.max(lhs.max_norm());
                assert!(lhs.max_norm() / scale < 1e-10, "k={k}");
            }
        }
    }

    #[test]
    fn sparling_differential_routes_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let jp = random_jet_point(&mut rng, 3);
        let cf = canonical_forms(&jp).unwrap();
        for p in 0..=3usize {
            for indices in index_tuples(3, p) {
                let a = sparling_differential_leibniz(&cf, &indices).unwrap();
                let b = sparling_differential_structural(&cf, &indices).unwrap();
                let dev = rel_deviation(&a, &b);
                assert!(dev < 1e-10, "I={indices:?} dev={dev}");
            }
        }
    }

    #[test]
    fn lovelock_form_base_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let jp = random_jet_point(&mut rng, 3);
        let cf = canonical_forms(&jp).unwrap();
        let sig = Signature::lorentzian(3);
        let (l0, warn) = lovelock_lagrangian_form(&cf, 0, &sig).unwrap();
        assert!(!warn);
        let (eq, _) = approx_eq(&l0, &cf.sigma0().unwrap(), 1e-13).unwrap();
        assert!(eq);
        // The flat holonomic section x ↦ (x, id, 0) pulls λ^{(r≥1)} back to
        // zero; on the jet space itself the universal curvature keeps its
        // fiber legs even at the flat point.
        let flat = identity_jet(4);
        let cff = canonical_forms(&flat).unwrap();
        let sig4 = Signature::lorentzian(4);
        let (l1, _) = lovelock_lagrangian_form(&cff, 1, &sig4).unwrap();
        assert!(!l1.is_zero());
        let mut section = DMatrix::<f64>::zeros(flat.jet_dim(), 4);
        for mu in 0..4 {
            section[(flat.cov_x(mu), mu)] = 1.0;
        }
        let pulled = pullback(&section, &l1).unwrap();
        assert!(pulled.is_zero());
        let (lz, warn) = lovelock_lagrangian_form(&cf, 2, &sig).unwrap();
        assert!(warn && lz.is_zero());
    }

    #[test]
    fn dlambda_identity_m3_r1() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        let sig = Signature::lorentzian(3);
        for _ in 0..3 {
            let jp = project_to_t0(&random_jet_point(&mut rng, 3)).unwrap();
            let cf = canonical_forms(&jp).unwrap();
            let report = dlambda_check(&jp, &cf, 1, &sig).unwrap();
            assert!(
                report.deviation < 1e-10,
                "deviation {} fitted {}",
                report.deviation,
                report.fitted_constant
            );
            assert!((report.fitted_constant - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn dlambda_requires_t0() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        let jp = random_jet_point(&mut rng, 3);
        let cf = canonical_forms(&jp).unwrap();
        let sig = Signature::lorentzian(3);
        assert!(matches!(
            dlambda_check(&jp, &cf, 1, &sig),
            Err(JetError::OffTorsionZero { .. })
        ));
    }

    #[test]
    fn t0_tangent_basis_annihilates_bianchi_combination() {
        // ι₀*T ≡ 0 on the locus forces ι₀*(dT) = ι₀*(Ω^k_l ∧ θ^l) = 0, even
        // though Ω^k_l ∧ θ^l is a nonzero full-space form at the point.
        let mut rng = ChaCha8Rng::seed_from_u64(59);
        let jp = project_to_t0(&random_jet_point(&mut rng, 3)).unwrap();
        let cf = canonical_forms(&jp).unwrap();
        let l = t0_tangent_basis(&jp).unwrap();
        for k in 0..3 {
            let mut full = SparseAltForm::zero(jp.jet_dim(), 3);
            for j in 0..3 {
                full = full
                    .add(&wedge(cf.curvature_ij(k, j), &cf.theta[j]).unwrap())
                    .unwrap();
            }
            assert!(full.max_norm() > 1e-3, "premise form should be nonzero off T0 tangents");
            let pulled = pullback(&l, &full).unwrap();
            let dev = pulled.max_norm() / 1.0f64.max(full.max_norm());
            assert!(dev < 1e-12, "k={k} dev={dev}");
        }
    }
}
