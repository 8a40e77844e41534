//! The named verification suites behind `check {symbols|forms|jet|hodge|
//! lovelock|all}`: every identity the library claims, run against brute
//! force oracles and independent second routes at desk scale.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::alt::{
    antisymmetrize_scaled_int, gkdelta, gkdelta_det_oracle, index_tuples, perm_sign,
    permutations_with_sign, verify_eps_delta, verify_eps_det,
};
use crate::jetforms::{
    canonical_forms, dlambda_check, frame_contraction_vectors, generator_vector, max_abs,
    project_to_t0, random_jet_point, raised_curvature, sparling_differential_leibniz,
    sparling_differential_structural, sparling_from_thetas, sparling_via_contraction,
    t0_tangent_basis, torsion_closed_form, torsion_zero_residual, vertical_lift_vector,
    JetPoint,
};
use crate::lovelock::{
    base_curvature_mixed, base_curvature_raised, base_theta, curvature_data, divergence_lovelock,
    eds_residuals, einstein_tensor, eta_preserving_rotation, lovelock_density,
    lovelock_density_eps_oracle, lovelock_tensor, psi_contraction, psi_form_alternative,
    psi_form_base, scalar_curvature, vielbein_from_metric, Metric, Vielbein,
};
use crate::report::{
    run_checks, CheckDef, CheckOutcome, Environment, FittedConstant, Report,
};
use crate::valg::{
    cartan_project_matrix, eta_hat, hodge_star, xi_pairing_check, xi_r_coordinate, xi_r_via_a_r,
    CartanPart, Signature,
};
use crate::xalg::{
    interior, lambda_basis, linear_combine, pullback, rel_deviation, wedge, SparseAltForm,
    TangentVector,
};

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown suite '{0}' (expected symbols|forms|jet|hodge|lovelock|all)")]
    UnknownSuite(String),
    #[error("dimension {dim} out of range for suite '{suite}' (max {max})")]
    DimOutOfRange {
        suite: &'static str,
        dim: usize,
        max: usize,
    },
}

/// Suite configuration; unset fields take per-suite defaults.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub dim: Option<usize>,
    pub r: Option<usize>,
    pub seed: u64,
    pub samples: Option<usize>,
    pub tol: Option<f64>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            dim: None,
            r: None,
            seed: 42,
            samples: None,
            tol: None,
        }
    }
}

fn check_seed(base: u64, slot: u64) -> u64 {
    base ^ slot.wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn report(suite: &str, cfg: &SuiteConfig, dims: Vec<usize>, rs: Vec<usize>, defs: Vec<CheckDef>) -> Report {
    let tol = cfg.tol;
    let defs = match tol {
        Some(t) => defs
            .into_iter()
            .map(|mut d| {
                d.tolerance = t;
                d
            })
            .collect(),
        None => defs,
    };
    let samples = cfg.samples.unwrap_or(0);
    let (checks, fitted_constants) = run_checks(defs);
    Report {
        suite: suite.to_string(),
        checks,
        environment: Environment {
            seed: cfg.seed,
            dims,
            r_values: rs,
            samples,
        },
        fitted_constants,
    }
}

/// Entry point used by the CLI and the acceptance tests.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<Report, SuiteError> {
    match name {
        "symbols" => symbols_suite(cfg),
        "forms" => forms_suite(cfg),
        "hodge" => hodge_suite(cfg),
        "jet" => jet_suite(cfg),
        "lovelock" => lovelock_suite(cfg),
        "all" => {
            let mut acc = symbols_suite(cfg)?;
            for s in ["forms", "hodge", "jet", "lovelock"] {
                acc = acc.merge(run_suite(s, cfg)?);
            }
            acc.suite = "all".into();
            Ok(acc)
        }
        other => Err(SuiteError::UnknownSuite(other.to_string())),
    }
}

// ---------------------------------------------------------------------------
// symbols
// ---------------------------------------------------------------------------

fn symbols_suite(cfg: &SuiteConfig) -> Result<Report, SuiteError> {
    let m = cfg.dim.unwrap_or(5);
    if m > 6 {
        return Err(SuiteError::DimOutOfRange {
            suite: "symbols",
            dim: m,
            max: 6,
        });
    }
    let seed = cfg.seed;
    let mut defs = Vec::new();

    defs.push(CheckDef::new("eps_delta_contraction", 0.0, move || {
        let mut dev = 0i64;
        let mut cases = 0usize;
        for mm in 1..=m {
            for k in 0..=mm {
                let res = verify_eps_delta(mm, k).map_err(|e| e.to_string())?;
                dev = dev.max(res.max_abs_deviation);
                cases += res.cases;
            }
        }
        Ok(CheckOutcome::deviation(dev as f64, cases))
    }));

    defs.push(CheckDef::new("antisymmetrize_delta_form", 0.0, move || {
        // Property 2 without the 1/p! factor, exact integers:
        // Σ_σ sgn(σ) a∘σ  vs  δ^{M}_{N} a^{N}.
        let mut rng = ChaCha8Rng::seed_from_u64(check_seed(seed, 1));
        let mut dev = 0i64;
        let mut cases = 0usize;
        for mm in 1..=m.min(4) {
            for p in 1..=mm.min(3) {
                let a: Vec<i64> = (0..mm.pow(p as u32)).map(|_| rng.gen_range(-9..=9)).collect();
                let anti = antisymmetrize_scaled_int(&a, p, mm).map_err(|e| e.to_string())?;
                for upper in index_tuples(mm, p) {
                    let mut rhs = 0i64;
                    for lower in index_tuples(mm, p) {
                        let d = gkdelta(&upper, &lower).map_err(|e| e.to_string())?;
                        if d != 0 {
                            let flat = lower.iter().fold(0, |acc, &i| acc * mm + i);
                            rhs += d * a[flat];
                        }
                    }
                    let flat = upper.iter().fold(0, |acc, &i| acc * mm + i);
                    dev = dev.max((anti[flat] - rhs).abs());
                    cases += 1;
                }
            }
        }
        Ok(CheckOutcome::deviation(dev as f64, cases))
    }));

    defs.push(CheckDef::new("eps_det_transformation", 0.0, move || {
        let mut rng = ChaCha8Rng::seed_from_u64(check_seed(seed, 2));
        let mut dev = 0i64;
        let mut cases = 0usize;
        for mm in 1..=m.min(5) {
            for _ in 0..4 {
                let a: Vec<Vec<i64>> = (0..mm)
                    .map(|_| (0..mm).map(|_| rng.gen_range(-5..=5)).collect())
                    .collect();
                let res = verify_eps_det(&a).map_err(|e| e.to_string())?;
                dev = dev.max(res.max_abs_deviation);
                cases += res.cases;
            }
        }
        Ok(CheckOutcome::deviation(dev as f64, cases))
    }));

    defs.push(CheckDef::new("gkdelta_antisymmetry", 0.0, move || {
        let mut rng = ChaCha8Rng::seed_from_u64(check_seed(seed, 3));
        let mut dev = 0i64;
        let mut cases = 0usize;
        for _ in 0..200 {
            let k = rng.gen_range(2..=m.min(4));
            let upper: Vec<usize> = (0..k).map(|_| rng.gen_range(0..m)).collect();
            let lower: Vec<usize> = (0..k).map(|_| rng.gen_range(0..m)).collect();
            let base = gkdelta(&upper, &lower).map_err(|e| e.to_string())?;
            let i = rng.gen_range(0..k);
            let mut j = rng.gen_range(0..k);
            if i == j {
                j = (j + 1) % k;
            }
            let mut u2 = upper.clone();
            u2.swap(i, j);
            let expected = if upper[i] == upper[j] { base } else { -base };
            dev = dev.max((gkdelta(&u2, &lower).map_err(|e| e.to_string())? - expected).abs());
            let mut l2 = lower.clone();
            l2.swap(i, j);
            let expected = if lower[i] == lower[j] { base } else { -base };
            dev = dev.max((gkdelta(&upper, &l2).map_err(|e| e.to_string())? - expected).abs());
            cases += 1;
        }
        Ok(CheckOutcome::deviation(dev as f64, cases))
    }));

    defs.push(CheckDef::new("levi_multiplicativity", 0.0, move || {
        let perms = permutations_with_sign(m.min(4));
        let mut dev = 0i64;
        let mut cases = 0usize;
        for (sigma, s_sign) in &perms {
            for (tau, t_sign) in &perms {
                let composed: Vec<usize> = tau.iter().map(|&t| sigma[t]).collect();
                dev = dev.max((perm_sign(&composed) - s_sign * t_sign).abs());
                cases += 1;
            }
        }
        Ok(CheckOutcome::deviation(dev as f64, cases))
    }));

    defs.push(CheckDef::new("gkdelta_determinant_oracle", 0.0, move || {
        let mut dev = 0i64;
        let mut cases = 0usize;
        for k in 1..=m.min(3) {
            for upper in index_tuples(m, k) {
                for lower in index_tuples(m, k) {
                    let a = gkdelta(&upper, &lower).map_err(|e| e.to_string())?;
                    let b = gkdelta_det_oracle(&upper, &lower).map_err(|e| e.to_string())?;
                    dev = dev.max((a - b).abs());
                    cases += 1;
                }
            }
        }
        Ok(CheckOutcome::deviation(dev as f64, cases))
    }));

    Ok(report("symbols", cfg, vec![m], vec![], defs))
}

// ---------------------------------------------------------------------------
// forms (with the dense fully-indexed oracle)
// ---------------------------------------------------------------------------

/// Dense fully-indexed alternating tensor; the independent oracle for the
/// sparse wedge and interior product. Values are stored for every index
/// tuple, and the operations use the alternation sums directly.
#[derive(Clone)]
struct DenseForm {
    n: usize,
    k: usize,
    vals: Vec<f64>,
}

impl DenseForm {
    fn from_sparse(f: &SparseAltForm) -> DenseForm {
        let n = f.space_dim();
        let k = f.degree();
        let mut vals = vec![0.0; n.pow(k as u32).max(1)];
        for idx in index_tuples(n, k) {
            let flat = idx.iter().fold(0, |acc, &i| acc * n + i);
            vals[flat] = f.coeff(&idx);
        }
        DenseForm { n, k, vals }
    }

    fn value(&self, idx: &[usize]) -> f64 {
        let flat = idx.iter().fold(0, |acc, &i| acc * self.n + i);
        self.vals[flat]
    }

    /// `(a∧b)(X_1,…,X_{k+l}) = (1/(k!l!)) Σ_σ sgn(σ) a(Xσ…) b(Xσ…)`.
    fn wedge(&self, other: &DenseForm) -> DenseForm {
        let n = self.n;
        let k = self.k;
        let l = other.k;
        let perms = permutations_with_sign(k + l);
        let norm = ((1..=k).product::<usize>().max(1) * (1..=l).product::<usize>().max(1)) as f64;
        let mut out = DenseForm {
            n,
            k: k + l,
            vals: vec![0.0; n.pow((k + l) as u32).max(1)],
        };
        for idx in index_tuples(n, k + l) {
            let mut acc = 0.0;
            for (perm, sign) in &perms {
                let left: Vec<usize> = perm[..k].iter().map(|&p| idx[p]).collect();
                let right: Vec<usize> = perm[k..].iter().map(|&p| idx[p]).collect();
                acc += (*sign as f64) * self.value(&left) * other.value(&right);
            }
            let flat = idx.iter().fold(0, |acc2, &i| acc2 * n + i);
            out.vals[flat] = acc / norm;
        }
        out
    }

    /// `(v⌟a)(X_2,…,X_k) = a(v, X_2,…,X_k)`.
    fn interior(&self, v: &TangentVector) -> DenseForm {
        let n = self.n;
        let k = self.k - 1;
        let mut out = DenseForm {
            n,
            k,
            vals: vec![0.0; n.pow(k as u32).max(1)],
        };
        for idx in index_tuples(n, k) {
            let mut acc = 0.0;
            for i in 0..n {
                let c = v.get(i);
                if c == 0.0 {
                    continue;
                }
                let mut full = Vec::with_capacity(k + 1);
                full.push(i);
                full.extend_from_slice(&idx);
                acc += c * self.value(&full);
            }
            let flat = idx.iter().fold(0, |acc2, &i| acc2 * n + i);
            out.vals[flat] = acc;
        }
        out
    }

    fn deviation_from_sparse(&self, f: &SparseAltForm) -> f64 {
        let other = DenseForm::from_sparse(f);
        let mut dev = 0.0f64;
        let mut scale = 1.0f64;
        for (a, b) in self.vals.iter().zip(&other.vals) {
            dev = dev.max((a - b).abs());
            scale = scale.max(a.abs()).max(b.abs());
        }
        dev / scale
    }
}

fn random_form<R: Rng>(rng: &mut R, n: usize, k: usize) -> SparseAltForm {
    let mut f = SparseAltForm::zero(n, k);
    for t in lambda_basis(n, k) {
        f.add_term(&t, rng.gen_range(-1.0..1.0));
    }
    f
}

fn random_vector<R: Rng>(rng: &mut R, n: usize) -> TangentVector {
    let mut v = TangentVector::zero(n);
    for i in 0..n {
        v.set(i, rng.gen_range(-1.0..1.0)).expect("in range");
    }
    v
}

fn forms_suite(cfg: &SuiteConfig) -> Result<Report, SuiteError> {
    let n = cfg.dim.unwrap_or(6);
    if n > 6 {
        return Err(SuiteError::DimOutOfRange {
            suite: "forms",
            dim: n,
            max: 6,
        });
    }
    let seed = cfg.seed;
    let samples = cfg.samples.unwrap_or(30);
    let mut defs = Vec::new();

    defs.push(CheckDef::new("wedge_associativity", 1e-12, move || {
        let mut rng = ChaCha8Rng::seed_from_u64(check_seed(seed, 10));
        let mut dev = 0.0f64;
        for _ in 0..samples {
            let (ka, kb, kc) = (
                rng.gen_range(1..=2usize),
                rng.gen_range(1..=2usize),
                rng.gen_range(1..=2usize),
            );
            let a = random_form(&mut rng, n, ka);
            let b = random_form(&mut rng, n, kb);
            let c = random_form(&mut rng, n, kc);
            let left = wedge(&wedge(&a, &b).map_err(|e| e.to_string())?, &c)
                .map_err(|e| e.to_string())?;
            let right = wedge(&a, &wedge(&b, &c).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            dev = dev.max(rel_deviation(&left, &right));
        }
        Ok(CheckOutcome::deviation(dev, samples))
    }));

    defs.push(CheckDef::new("graded_commutativity", 1e-15, move || {
        // The merge sign is exact; only the accumulation order differs
        // between the two products, so the bound is float associativity.
        let mut rng = ChaCha8Rng::seed_from_u64(check_seed(seed, 11));
        let mut dev = 0.0f64;
        let mut cases = 0usize;
        for ka in 0..=3usize.min(n) {
            for kb in 0..=3usize.min(n) {
                let a = random_form(&mut rng, n, ka);
                let b = random_form(&mut rng, n, kb);
                let ab = wedge(&a, &b).map_err(|e| e.to_string())?;
                let ba = wedge(&b, &a).map_err(|e| e.to_string())?;
                let sign = if (ka * kb) % 2 == 0 { 1.0 } else { -1.0 };
                dev = dev.max(rel_deviation(&ab, &ba.scale(sign)));
                cases += 1;
            }
        }
        Ok(CheckOutcome::deviation(dev, cases))
    }));

    defs.push(CheckDef::new("interior_nilpotency", 1e-15, move || {
        // Paired index removals cancel; the residue is the associativity of
        // v_p·(v_q·c) against v_q·(v_p·c).
        let mut rng = ChaCha8Rng::seed_from_u64(check_seed(seed, 12));
        let mut dev = 0.0f64;
        for _ in 0..samples {
            let k = rng.gen_range(2..=3usize.min(n));
            let a = random_form(&mut rng, n, k);
            let v = random_vector(&mut rng, n);
            let once = interior(&v, &a).map_err(|e| e.to_string())?;
            let twice = interior(&v, &once).map_err(|e| e.to_string())?;
            dev = dev.max(twice.max_norm() / 1.0f64.max(a.max_norm()));
        }
        Ok(CheckOutcome::deviation(dev, samples))
    }));

    defs.push(CheckDef::new("interior_antiderivation", 1e-12, move || {
        // v⌟(a∧b) = (v⌟a)∧b + (−1)^{|a|} a∧(v⌟b) with degrees (2, 3).
        let mut rng = ChaCha8Rng::seed_from_u64(check_seed(seed, 13));
        let mut dev = 0.0f64;
        for _ in 0..samples {
            let a = random_form(&mut rng, n, 2.min(n));
            let b = random_form(&mut rng, n, 3.min(n));
            let v = random_vector(&mut rng, n);
            let lhs = interior(&v, &wedge(&a, &b).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let ia = wedge(&interior(&v, &a).map_err(|e| e.to_string())?, &b)
                .map_err(|e| e.to_string())?;
            let ib = wedge(&a, &interior(&v, &b).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let sign = if a.degree() % 2 == 0 { 1.0 } else { -1.0 };
            let rhs = linear_combine(&[1.0, sign], &[ia, ib]).map_err(|e| e.to_string())?;
            dev = dev.max(rel_deviation(&lhs, &rhs));
        }
        Ok(CheckOutcome::deviation(dev, samples))
    }));

    defs.push(CheckDef::new("pullback_functoriality", 1e-12, move || {
        // (L1∘L2)^* = L2^* ∘ L1^* on random maps and forms.
        let mut rng = ChaCha8Rng::seed_from_u64(check_seed(seed, 14));
        let mut dev = 0.0f64;
        for _ in 0..samples {
            let p = rng.gen_range(2..=n);
            let q = rng.gen_range(2..=n);
            let k = rng.gen_range(1..=2usize);
            let a = random_form(&mut rng, n, k);
            let l1 = DMatrix::<f64>::from_fn(n, q, |_, _| rng.gen_range(-1.0..1.0));
            let l2 = DMatrix::<f64>::from_fn(q, p, |_, _| rng.gen_range(-1.0..1.0));
            let composed = pullback(&(&l1 * &l2), &a).map_err(|e| e.to_string())?;
            let staged = pullback(&l2, &pullback(&l1, &a).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            dev = dev.max(rel_deviation(&composed, &staged));
        }
        Ok(CheckOutcome::deviation(dev, samples))
    }));

    defs.push(CheckDef::new("dense_oracle_equivalence", 1e-12, move || {
        // Sparse wedge and interior against the fully-indexed alternation
        // sums, n ≤ 4, degrees ≤ 3.
        let mut rng = ChaCha8Rng::seed_from_u64(check_seed(seed, 15));
        let mut dev = 0.0f64;
        let mut cases = 0usize;
        for nn in 2..=4usize.min(n) {
            for ka in 1..=3usize.min(nn) {
                for kb in 1..=(nn - ka).min(3) {
                    for _ in 0..4 {
                        let a = random_form(&mut rng, nn, ka);
                        let b = random_form(&mut rng, nn, kb);
                        let sparse = wedge(&a, &b).map_err(|e| e.to_string())?;
                        let dense = DenseForm::from_sparse(&a).wedge(&DenseForm::from_sparse(&b));
                        dev = dev.max(dense.deviation_from_sparse(&sparse));
                        let v = random_vector(&mut rng, nn);
                        let si = interior(&v, &a).map_err(|e| e.to_string())?;
                        let di = DenseForm::from_sparse(&a).interior(&v);
                        dev = dev.max(di.deviation_from_sparse(&si));
                        cases += 1;
                    }
                }
            }
        }
        Ok(CheckOutcome::deviation(dev, cases))
    }));

    defs.push(CheckDef::new("bracket_combinator_square", 1e-12, move || {
        // [ω ∧, ω] = 2 ω∧ω componentwise for 𝔤𝔩-valued 1-forms.
        let mut rng = ChaCha8Rng::seed_from_u64(check_seed(seed, 16));
        let m = 3usize;
        let mut dev = 0.0f64;
        for _ in 0..samples {
            let comps: Vec<SparseAltForm> = (0..m * m).map(|_| random_form(&mut rng, n, 1)).collect();
            let omega =
                crate::xalg::VectorValuedForm::new(crate::xalg::ValueSpace::Gl(m), comps.clone())
                    .map_err(|e| e.to_string())?;
            let br = crate::xalg::vv_bracket(&omega, &omega).map_err(|e| e.to_string())?;
            for i in 0..m {
                for j in 0..m {
                    let mut expect = SparseAltForm::zero(n, 2);
                    for k in 0..m {
                        let w = wedge(&comps[i * m + k], &comps[k * m + j])
                            .map_err(|e| e.to_string())?;
                        expect = expect.add(&w.scale(2.0)).map_err(|e| e.to_string())?;
                    }
                    dev = dev.max(rel_deviation(br.component(i * m + j), &expect));
                }
            }
        }
        Ok(CheckOutcome::deviation(dev, samples))
    }));

    Ok(report("forms", cfg, vec![n], vec![], defs))
}

// ---------------------------------------------------------------------------
// hodge
// ---------------------------------------------------------------------------

fn hodge_suite(cfg: &SuiteConfig) -> Result<Report, SuiteError> {
    let m_max = cfg.dim.unwrap_or(5);
    if m_max > 6 {
        return Err(SuiteError::DimOutOfRange {
            suite: "hodge",
            dim: m_max,
            max: 6,
        });
    }
    let seed = cfg.seed;
    let samples = cfg.samples.unwrap_or(100);
    let mut defs = Vec::new();

    defs.push(CheckDef::new("star_defining_property", 1e-12, move || {
        // α ∧ (⋆β) = η̂(α, β)·ω for random pairs, both signatures, all
        // degrees, every dimension up to the cap.
        let mut rng = ChaCha8Rng::seed_from_u64(check_seed(seed, 20));
        let mut dev = 0.0f64;
        let mut cases = 0usize;
        for m in 1..=m_max {
            for sig in [Signature::lorentzian(m), Signature::euclidean(m)] {
                let top: Vec<usize> = (0..m).collect();
                let mut omega = SparseAltForm::zero(m, m);
                omega.add_term(&top, 1.0);
                for k in 0..=m {
                    for _ in 0..samples {
                        let alpha = random_form(&mut rng, m, k);
                        let beta = random_form(&mut rng, m, k);
                        let star = hodge_star(&beta, &sig).map_err(|e| e.to_string())?;
                        let lhs = wedge(&alpha, &star).map_err(|e| e.to_string())?;
                        let scalar = eta_hat(&alpha, &beta, &sig).map_err(|e| e.to_string())?;
                        let rhs = omega.scale(scalar);
                        dev = dev.max(rel_deviation(&lhs, &rhs));
                        cases += 1;
                    }
                }
            }
        }
        Ok(CheckOutcome::deviation(dev, cases))
    }));

    defs.push(CheckDef::new("star_double_sign_law", 0.0, move || {
        // ⋆⋆β = (−1)^{k(m−k)} det(η) β exhaustively on basis k-vectors.
        let mut dev = 0.0f64;
        let mut cases = 0usize;
        for m in 1..=m_max {
            for sig in [Signature::lorentzian(m), Signature::euclidean(m)] {
                for k in 0..=m {
                    for t in lambda_basis(m, k) {
                        let mut b = SparseAltForm::zero(m, k);
                        b.add_term(&t, 1.0);
                        let ss = hodge_star(&hodge_star(&b, &sig).map_err(|e| e.to_string())?, &sig)
                            .map_err(|e| e.to_string())?;
                        let sign = if (k * (m - k)) % 2 == 0 { 1.0 } else { -1.0 };
                        dev = dev.max(crate::xalg::deviation(&ss, &b.scale(sign * sig.det())));
                        cases += 1;
                    }
                }
            }
        }
        Ok(CheckOutcome::deviation(dev, cases))
    }));

    defs.push(CheckDef::new("eta_hat_diagonal_oracle", 1e-12, move || {
        // The Gram-determinant extension against the closed diagonal form
        // η̂(α, β) = Σ_I (Π_{i∈I} η_i) α_I β_I.
        let mut rng = ChaCha8Rng::seed_from_u64(check_seed(seed, 21));
        let mut dev = 0.0f64;
        let mut cases = 0usize;
        for m in 2..=m_max {
            for sig in [Signature::lorentzian(m), Signature::euclidean(m)] {
                for k in 1..=m {
                    for _ in 0..10 {
                        let alpha = random_form(&mut rng, m, k);
                        let beta = random_form(&mut rng, m, k);
                        let gram = eta_hat(&alpha, &beta, &sig).map_err(|e| e.to_string())?;
                        let mut closed = 0.0;
                        for t in lambda_basis(m, k) {
                            closed += sig.eta_product(&t) * alpha.coeff(&t) * beta.coeff(&t);
                        }
                        dev = dev.max((gram - closed).abs() / 1.0f64.max(closed.abs()));
                        cases += 1;
                    }
                }
            }
        }
        Ok(CheckOutcome::deviation(dev, cases))
    }));

    defs.push(CheckDef::new("cartan_projectors", 1e-12, move || {
        let mut rng = ChaCha8Rng::seed_from_u64(check_seed(seed, 22));
        let mut dev = 0.0f64;
        let mut cases = 0usize;
        for m in 2..=m_max {
            for sig in [Signature::lorentzian(m), Signature::euclidean(m)] {
                for _ in 0..10 {
                    let a = DMatrix::<f64>::from_fn(m, m, |_, _| rng.gen_range(-1.0..1.0));
                    let k = cartan_project_matrix(&a, CartanPart::K, &sig)
                        .map_err(|e| e.to_string())?;
                    let p = cartan_project_matrix(&a, CartanPart::P, &sig)
                        .map_err(|e| e.to_string())?;
                    dev = dev.max((&k + &p - &a).abs().max());
                    let kp = cartan_project_matrix(&p, CartanPart::K, &sig)
                        .map_err(|e| e.to_string())?;
                    dev = dev.max(kp.abs().max());
                    let eta = DMatrix::<f64>::from_fn(m, m, |i, j| sig.eta(i, j));
                    let ep = &eta * &p;
                    dev = dev.max((ep.transpose() - &ep).abs().max());
                    let ek = &eta * &k;
                    dev = dev.max((ek.transpose() + &ek).abs().max());
                    cases += 1;
                }
            }
        }
        Ok(CheckOutcome::deviation(dev, cases))
    }));

    Ok(report("hodge", cfg, (1..=m_max).collect(), vec![], defs))
}

// ---------------------------------------------------------------------------
// jet
// ---------------------------------------------------------------------------

fn jet_points(seed: u64, m: usize, count: usize) -> Vec<JetPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_jet_point(&mut rng, m)).collect()
}

/// The four aggregates of the curvature/coframe swap identity at a point:
/// `premise_wedge = Σ Ω^q_l ∧ θ^l ∧ θ_{qIJ} ∧ Ω^{IJ}`,
/// `side1 = Σ Ω^q_{i_1} ∧ θ_{q i_2…i_r J} ∧ Ω^{IJ}`,
/// `side2 = Σ Ω^q_{j_1} ∧ θ_{I q j_2…j_r} ∧ Ω^{IJ}`,
/// `trace_term = Σ Ω^l_l ∧ θ_{IJ} ∧ Ω^{IJ}`;
/// the hypothesis-free expansion reads
/// `premise_wedge = trace_term − r·(side1 + side2)`.
pub struct SwapIdentityForms {
    pub premise_wedge: SparseAltForm,
    pub side1: SparseAltForm,
    pub side2: SparseAltForm,
    pub trace_term: SparseAltForm,
}

pub fn swap_identity_forms(
    thetas: &[SparseAltForm],
    curvature_mixed: &[SparseAltForm],
    raised: &[SparseAltForm],
    r: usize,
) -> Result<SwapIdentityForms, String> {
    let m = thetas.len();
    let n = thetas[0].space_dim();
    let deg = if m + 2 <= n { m + 2 } else { n };
    let mut premise_wedge = SparseAltForm::zero(n, deg);
    let mut side1 = SparseAltForm::zero(n, deg);
    let mut side2 = SparseAltForm::zero(n, deg);
    let mut trace_term = SparseAltForm::zero(n, deg);
    let mut trace = SparseAltForm::zero(n, 2);
    for l in 0..m {
        trace = trace.add(&curvature_mixed[l * m + l]).map_err(|e| e.to_string())?;
    }
    for ij in index_tuples(m, 2 * r) {
        let (i_part, j_part) = ij.split_at(r);
        let mut omega_prod = SparseAltForm::scalar(n, 1.0);
        for a in 0..r {
            omega_prod =
                wedge(&omega_prod, &raised[i_part[a] * m + j_part[a]]).map_err(|e| e.to_string())?;
        }
        if omega_prod.is_zero() {
            continue;
        }
        let th_ij = sparling_from_thetas(thetas, &ij).map_err(|e| e.to_string())?;
        if !th_ij.is_zero() {
            let w = wedge(&wedge(&trace, &th_ij).map_err(|e| e.to_string())?, &omega_prod)
                .map_err(|e| e.to_string())?;
            trace_term = trace_term.add(&w).map_err(|e| e.to_string())?;
        }
        for q in 0..m {
            let mut idx1 = vec![q];
            idx1.extend_from_slice(&i_part[1..]);
            idx1.extend_from_slice(j_part);
            let th1 = sparling_from_thetas(thetas, &idx1).map_err(|e| e.to_string())?;
            if !th1.is_zero() {
                let w = wedge(
                    &wedge(&curvature_mixed[q * m + i_part[0]], &th1).map_err(|e| e.to_string())?,
                    &omega_prod,
                )
                .map_err(|e| e.to_string())?;
                side1 = side1.add(&w).map_err(|e| e.to_string())?;
            }
            let mut idx2 = i_part.to_vec();
            idx2.push(q);
            idx2.extend_from_slice(&j_part[1..]);
            let th2 = sparling_from_thetas(thetas, &idx2).map_err(|e| e.to_string())?;
            if !th2.is_zero() {
                let w = wedge(
                    &wedge(&curvature_mixed[q * m + j_part[0]], &th2).map_err(|e| e.to_string())?,
                    &omega_prod,
                )
                .map_err(|e| e.to_string())?;
                side2 = side2.add(&w).map_err(|e| e.to_string())?;
            }
            let mut idxp = vec![q];
            idxp.extend_from_slice(&ij);
            let thp = sparling_from_thetas(thetas, &idxp).map_err(|e| e.to_string())?;
            if !thp.is_zero() {
                for l in 0..m {
                    let w = wedge(
                        &wedge(
                            &wedge(&curvature_mixed[q * m + l], &thetas[l])
                                .map_err(|e| e.to_string())?,
                            &thp,
                        )
                        .map_err(|e| e.to_string())?,
                        &omega_prod,
                    )
                    .map_err(|e| e.to_string())?;
                    premise_wedge = premise_wedge.add(&w).map_err(|e| e.to_string())?;
                }
            }
        }
    }
    Ok(SwapIdentityForms {
        premise_wedge,
        side1,
        side2,
        trace_term,
    })
}

fn jet_suite(cfg: &SuiteConfig) -> Result<Report, SuiteError> {
    let m = cfg.dim.unwrap_or(3);
    if m >= 5 {
        return Err(SuiteError::DimOutOfRange {
            suite: "jet",
            dim: m,
            max: 4,
        });
    }
    let m = m.max(2);
    let r = cfg.r.unwrap_or(1);
    let samples = cfg.samples.unwrap_or(if m >= 4 { 3 } else { 20 });
    let seed = cfg.seed;
    let sig = Signature::lorentzian(m);
    let mut defs = Vec::new();

    defs.push(CheckDef::new("torsion_two_routes", 1e-12, move || {
        let mut dev = 0.0f64;
        for jp in jet_points(check_seed(seed, 30), m, samples) {
            let cf = canonical_forms(&jp).map_err(|e| e.to_string())?;
            let closed = torsion_closed_form(&jp);
            for k in 0..m {
                dev = dev.max(rel_deviation(&cf.torsion[k], &closed[k]));
            }
        }
        Ok(CheckOutcome::deviation(dev, samples))
    }));

    defs.push(CheckDef::new("first_structure_equation", 1e-10, move || {
        // dT^k + ω^k_l ∧ T^l − Ω^k_l ∧ θ^l with dT assembled by Leibniz.
        let mut dev = 0.0f64;
        for jp in jet_points(check_seed(seed, 31), m, samples) {
            let cf = canonical_forms(&jp).map_err(|e| e.to_string())?;
            for k in 0..m {
                let mut lhs = SparseAltForm::zero(jp.jet_dim(), 3);
                for i in 0..m {
                    let a = wedge(cf.domega_ij(k, i), &cf.theta[i]).map_err(|e| e.to_string())?;
                    let b = wedge(cf.omega_ij(k, i), &cf.dtheta[i]).map_err(|e| e.to_string())?;
                    let c = wedge(cf.omega_ij(k, i), &cf.torsion[i]).map_err(|e| e.to_string())?;
                    let d = wedge(cf.curvature_ij(k, i), &cf.theta[i]).map_err(|e| e.to_string())?;
                    lhs = linear_combine(&[1.0, 1.0, -1.0, 1.0, -1.0], &[lhs, a, b, c, d])
                        .map_err(|e| e.to_string())?;
                }
                dev = dev.max(lhs.max_norm() / 1.0f64.max(lhs.max_norm()).max(10.0));
            }
        }
        Ok(CheckOutcome::deviation(dev, samples))
    }));

    defs.push(CheckDef::new("coframe_connection_rank", 0.0, move || {
        // θ^k and ω^i_j are linearly independent covectors at the point.
        let mut worst = 0usize;
        for jp in jet_points(check_seed(seed, 32), m, samples) {
            let cf = canonical_forms(&jp).map_err(|e| e.to_string())?;
            let n = jp.jet_dim();
            let rows = m + m * m;
            let mut mat = DMatrix::<f64>::zeros(rows, n);
            for k in 0..m {
                for (key, v) in cf.theta[k].terms() {
                    mat[(k, key[0] as usize)] = v;
                }
            }
            for ij in 0..m * m {
                for (key, v) in cf.omega[ij].terms() {
                    mat[(m + ij, key[0] as usize)] = v;
                }
            }
            let rank = mat.rank(1e-10);
            worst = worst.max(rows - rank);
        }
        Ok(CheckOutcome::deviation(worst as f64, samples))
    }));

    defs.push(CheckDef::new("sparling_antisymmetry", 1e-12, move || {
        let mut dev = 0.0f64;
        let mut cases = 0usize;
        for jp in jet_points(check_seed(seed, 33), m, samples.min(5)) {
            let cf = canonical_forms(&jp).map_err(|e| e.to_string())?;
            for p in 2..=m {
                for idx in index_tuples(m, p) {
                    let base = sparling_from_thetas(&cf.theta, &idx).map_err(|e| e.to_string())?;
                    let mut swapped = idx.clone();
                    swapped.swap(0, p - 1);
                    let other =
                        sparling_from_thetas(&cf.theta, &swapped).map_err(|e| e.to_string())?;
                    dev = dev.max(rel_deviation(&base, &other.scale(-1.0)));
                    cases += 1;
                }
            }
        }
        Ok(CheckOutcome::deviation(dev, cases))
    }));

    defs.push(CheckDef::new("sparling_prop_item1", 1e-10, move || {
        // θ^{i_1}∧…∧θ^{i_r}∧θ_{J} = ((−1)^{r(s−r)}/(s−r)!) δ^{(i,tail)}_J θ_{tail}.
        let mut dev = 0.0f64;
        let mut cases = 0usize;
        for jp in jet_points(check_seed(seed, 34), m, samples.min(5)) {
            let cf = canonical_forms(&jp).map_err(|e| e.to_string())?;
            let n = jp.jet_dim();
            for ss in 1..=m {
                // Cache the Sparling forms entering either side.
                let mut cache_s = std::collections::BTreeMap::new();
                for idx in index_tuples(m, ss) {
                    cache_s.insert(
                        idx.clone(),
                        sparling_from_thetas(&cf.theta, &idx).map_err(|e| e.to_string())?,
                    );
                }
                for rr in 0..=ss {
                    let tail_len = ss - rr;
                    let mut cache_t = std::collections::BTreeMap::new();
                    for idx in index_tuples(m, tail_len) {
                        cache_t.insert(
                            idx.clone(),
                            sparling_from_thetas(&cf.theta, &idx).map_err(|e| e.to_string())?,
                        );
                    }
                    let fact: f64 = (1..=tail_len).product::<usize>().max(1) as f64;
                    let sign = if (rr * tail_len) % 2 == 0 { 1.0 } else { -1.0 };
                    for i_free in index_tuples(m, rr) {
                        let mut lhs_wedge = SparseAltForm::scalar(n, 1.0);
                        for &i in &i_free {
                            lhs_wedge =
                                wedge(&lhs_wedge, &cf.theta[i]).map_err(|e| e.to_string())?;
                        }
                        for j_free in index_tuples(m, ss) {
                            let lhs = wedge(&lhs_wedge, &cache_s[&j_free])
                                .map_err(|e| e.to_string())?;
                            let mut rhs =
                                SparseAltForm::zero(n, lhs.degree().min(n));
                            let mut upper = i_free.clone();
                            upper.extend(std::iter::repeat(0).take(tail_len));
                            for tail in index_tuples(m, tail_len) {
                                upper[rr..].copy_from_slice(&tail);
                                let d = gkdelta(&upper, &j_free).map_err(|e| e.to_string())?;
                                if d != 0 {
                                    rhs = rhs
                                        .add(&cache_t[&tail].scale(sign * d as f64 / fact))
                                        .map_err(|e| e.to_string())?;
                                }
                            }
                            dev = dev.max(rel_deviation(&lhs, &rhs));
                            cases += 1;
                        }
                    }
                }
            }
        }
        Ok(CheckOutcome::deviation(dev, cases))
    }));

    defs.push(CheckDef::new("sparling_prop_item2", 1e-10, move || {
        // θ^k ∧ θ_{i_1…i_p} = Σ_r (−1)^{p+r} δ^k_{i_r} θ_{i_1…î_r…i_p}.
        let mut dev = 0.0f64;
        let mut cases = 0usize;
        for jp in jet_points(check_seed(seed, 35), m, samples.min(5)) {
            let cf = canonical_forms(&jp).map_err(|e| e.to_string())?;
            let n = jp.jet_dim();
            for p in 1..=m {
                for idx in index_tuples(m, p) {
                    let th = sparling_from_thetas(&cf.theta, &idx).map_err(|e| e.to_string())?;
                    for k in 0..m {
                        let lhs = wedge(&cf.theta[k], &th).map_err(|e| e.to_string())?;
                        let mut rhs = SparseAltForm::zero(n, lhs.degree());
                        for pos in 0..p {
                            if idx[pos] != k {
                                continue;
                            }
                            let reduced: Vec<usize> = idx
                                .iter()
                                .enumerate()
                                .filter(|&(q, _)| q != pos)
                                .map(|(_, &v)| v)
                                .collect();
                            let t = sparling_from_thetas(&cf.theta, &reduced)
                                .map_err(|e| e.to_string())?;
                            let sign = if (p + pos + 1) % 2 == 0 { 1.0 } else { -1.0 };
                            rhs = rhs.add(&t.scale(sign)).map_err(|e| e.to_string())?;
                        }
                        dev = dev.max(rel_deviation(&lhs, &rhs));
                        cases += 1;
                    }
                }
            }
        }
        Ok(CheckOutcome::deviation(dev, cases))
    }));

    defs.push(CheckDef::new("sparling_prop_item3", 1e-10, move || {
        // dθ_I by Leibniz over the defining sum against the structural
        // torsion/connection expansion.
        let mut dev = 0.0f64;
        let mut cases = 0usize;
        for jp in jet_points(check_seed(seed, 36), m, samples.min(5)) {
            let cf = canonical_forms(&jp).map_err(|e| e.to_string())?;
            for p in 1..=m {
                for idx in index_tuples(m, p) {
                    let a = sparling_differential_leibniz(&cf, &idx).map_err(|e| e.to_string())?;
                    let b =
                        sparling_differential_structural(&cf, &idx).map_err(|e| e.to_string())?;
                    dev = dev.max(rel_deviation(&a, &b));
                    cases += 1;
                }
            }
        }
        Ok(CheckOutcome::deviation(dev, cases))
    }));

    defs.push(CheckDef::new("sigma0_contraction_lemma", 1e-12, move || {
        let mut rng = ChaCha8Rng::seed_from_u64(check_seed(seed, 37));
        let mut dev = 0.0f64;
        let mut cases = 0usize;
        for jp in jet_points(check_seed(seed, 38), m, samples) {
            let cf = canonical_forms(&jp).map_err(|e| e.to_string())?;
            let mut vectors = frame_contraction_vectors(&jp);
            for v in &mut vectors {
                // Fiber components are allowed by the lemma's hypothesis.
                v.set(jp.cov_de(0, m - 1), rng.gen_range(-1.0..1.0))
                    .map_err(|e| e.to_string())?;
                v.set(jp.cov_dejet(0, 1, 0), rng.gen_range(-1.0..1.0))
                    .map_err(|e| e.to_string())?;
            }
            for p in 0..=m {
                for idx in index_tuples(m, p) {
                    let direct =
                        sparling_from_thetas(&cf.theta, &idx).map_err(|e| e.to_string())?;
                    let contracted = sparling_via_contraction(&cf, &idx, &vectors)
                        .map_err(|e| e.to_string())?;
                    dev = dev.max(rel_deviation(&direct, &contracted));
                    cases += 1;
                }
            }
        }
        Ok(CheckOutcome::deviation(dev, cases))
    }));

    defs.push(CheckDef::new("vertical_lift_contractions", 1e-12, move || {
        // v ⌟ Ω^k_l = δ^k_t δ^s_l θ^r, v ⌟ ω = 0, v ⌟ θ = 0 across all
        // index choices.
        let mut dev = 0.0f64;
        let mut cases = 0usize;
        for jp in jet_points(check_seed(seed, 39), m, samples.min(10)) {
            let cf = canonical_forms(&jp).map_err(|e| e.to_string())?;
            for rr in 0..m {
                for s in 0..m {
                    for t in 0..m {
                        let v = vertical_lift_vector(&jp, rr, s, t);
                        for k in 0..m {
                            let th = interior(&v, &cf.theta[k]).map_err(|e| e.to_string())?;
                            dev = dev.max(th.max_norm());
                            for l in 0..m {
                                let w =
                                    interior(&v, cf.omega_ij(k, l)).map_err(|e| e.to_string())?;
                                dev = dev.max(w.max_norm());
                                let c = interior(&v, cf.curvature_ij(k, l))
                                    .map_err(|e| e.to_string())?;
                                let expect = if k == t && s == l {
                                    cf.theta[rr].clone()
                                } else {
                                    SparseAltForm::zero(jp.jet_dim(), 1)
                                };
                                dev = dev.max(rel_deviation(&c, &expect));
                                cases += 1;
                            }
                        }
                    }
                }
            }
        }
        Ok(CheckOutcome::deviation(dev, cases))
    }));

    defs.push(CheckDef::new("generator_contractions", 1e-12, move || {
        // ω^i_j((E^k_l)) = δ^i_l δ^k_j and θ((E^k_l)) = 0.
        let mut dev = 0.0f64;
        let mut cases = 0usize;
        for jp in jet_points(check_seed(seed, 40), m, samples.min(5)) {
            let cf = canonical_forms(&jp).map_err(|e| e.to_string())?;
            for k in 0..m {
                for l in 0..m {
                    let v = generator_vector(&jp, k, l);
                    for i in 0..m {
                        let t = interior(&v, &cf.theta[i]).map_err(|e| e.to_string())?;
                        dev = dev.max(t.max_norm());
                        for j in 0..m {
                            let w = interior(&v, cf.omega_ij(i, j)).map_err(|e| e.to_string())?;
                            let expect = if i == l && k == j { 1.0 } else { 0.0 };
                            dev = dev.max((w.coeff(&[]) - expect).abs());
                            cases += 1;
                        }
                    }
                }
            }
        }
        Ok(CheckOutcome::deviation(dev, cases))
    }));

    {
        let sig = sig.clone();
        defs.push(CheckDef::new("dlambda_t0_identity", 1e-10, move || {
            let mut dev = 0.0f64;
            let mut worst_constant: f64 = 1.0;
            for jp in jet_points(check_seed(seed, 41), m, samples) {
                let jp = project_to_t0(&jp).map_err(|e| e.to_string())?;
                let cf = canonical_forms(&jp).map_err(|e| e.to_string())?;
                let rep = dlambda_check(&jp, &cf, r, &sig).map_err(|e| e.to_string())?;
                dev = dev.max(rep.deviation);
                if (rep.fitted_constant - 1.0).abs() > (worst_constant - 1.0).abs() {
                    worst_constant = rep.fitted_constant;
                }
            }
            Ok(CheckOutcome::deviation(dev, samples).with_note(format!(
                "lhs ≈ c·rhs fitted constant farthest from 1: {worst_constant:.12}"
            )))
        }));
    }

    {
        let sig = sig.clone();
        defs.push(CheckDef::new("swap_identity_expansion", 1e-10, move || {
            // The hypothesis-free aggregate of the curvature/coframe swap:
            // Σ Ω^q_l∧θ^l∧θ_{qIJ}∧Ω^{IJ} = trace − r·(side1 + side2)
            // on full jet-space forms at arbitrary points.
            let mut dev = 0.0f64;
            for jp in jet_points(check_seed(seed, 42), m, samples.min(5)) {
                let cf = canonical_forms(&jp).map_err(|e| e.to_string())?;
                let raised = raised_curvature(&cf, &sig);
                let forms = swap_identity_forms(&cf.theta, &cf.curvature, &raised, r)?;
                let rhs = linear_combine(
                    &[1.0, -(r as f64), -(r as f64)],
                    &[forms.trace_term, forms.side1, forms.side2],
                )
                .map_err(|e| e.to_string())?;
                dev = dev.max(rel_deviation(&forms.premise_wedge, &rhs));
            }
            Ok(CheckOutcome::deviation(dev, samples.min(5)))
        }));
    }

    defs.push(CheckDef::new("t0_premise_pullback", 1e-10, move || {
        // On torsion-free points the Bianchi combination Ω^k_l ∧ θ^l pulls
        // back to zero along the locus tangents.
        let mut dev = 0.0f64;
        for jp in jet_points(check_seed(seed, 43), m, samples.min(5)) {
            let jp = project_to_t0(&jp).map_err(|e| e.to_string())?;
            let cf = canonical_forms(&jp).map_err(|e| e.to_string())?;
            let l = t0_tangent_basis(&jp).map_err(|e| e.to_string())?;
            for k in 0..m {
                let mut acc = SparseAltForm::zero(jp.jet_dim(), 3);
                for j in 0..m {
                    acc = acc
                        .add(&wedge(cf.curvature_ij(k, j), &cf.theta[j]).map_err(|e| e.to_string())?)
                        .map_err(|e| e.to_string())?;
                }
                let pulled = pullback(&l, &acc).map_err(|e| e.to_string())?;
                dev = dev.max(pulled.max_norm() / 1.0f64.max(acc.max_norm()));
            }
        }
        Ok(CheckOutcome::deviation(dev, samples.min(5)))
    }));

    defs.push(CheckDef::new("swap_identity_levi_civita", 1e-9, move || {
        // The η-antisymmetric-curvature form of the swap identity, on base
        // pullbacks of genuine Levi-Civita data: the premise holds by the
        // first Bianchi identity, and both sides are degree-(m+2) forms on
        // an m-space. Gated on the premise residual.
        let mut dev = 0.0f64;
        let mut premise_max = 0.0f64;
        let mut cases = 0usize;
        for k in 0..samples.min(5) {
            let metric = Metric::RandomPoly {
                dim: m,
                eps: 0.1,
                seed: check_seed(seed, 44).wrapping_add(k as u64),
            };
            let s = metric.eval(&vec![0.1; m]).map_err(|e| e.to_string())?;
            let cd = curvature_data(&s).map_err(|e| e.to_string())?;
            let vb = vielbein_from_metric(s.g(), &metric.signature()).map_err(|e| e.to_string())?;
            let thetas = base_theta(&vb);
            let mixed = base_curvature_mixed(&vb, &cd);
            let raised = base_curvature_raised(&vb, &cd);
            // Premise: Ω^k_l ∧ θ^l = 0 (first Bianchi), normalized.
            let scale = mixed.iter().fold(1.0f64, |a, f| a.max(f.max_norm()));
            for kk in 0..m {
                let mut acc = SparseAltForm::zero(m, 3.min(m));
                for l in 0..m {
                    if m >= 3 {
                        acc = acc
                            .add(&wedge(&mixed[kk * m + l], &thetas[l]).map_err(|e| e.to_string())?)
                            .map_err(|e| e.to_string())?;
                    }
                }
                premise_max = premise_max.max(acc.max_norm() / scale);
            }
            if premise_max > 1e-10 {
                return Ok(CheckOutcome::deviation(premise_max, cases)
                    .with_note("premise residual above gate; identity not evaluated"));
            }
            let forms = swap_identity_forms(&thetas, &mixed, &raised, r)?;
            dev = dev.max(rel_deviation(&forms.side1, &forms.side2.scale(-1.0)));
            cases += 1;
        }
        Ok(CheckOutcome::deviation(dev, cases).with_note(format!(
            "premise residual {premise_max:.3e}; both sides are (m+2)-forms on an m-space"
        )))
    }));

    {
        let sig = sig.clone();
        defs.push(CheckDef::new("xi_construction_routes", 1e-10, move || {
            let mut dev = 0.0f64;
            for jp in jet_points(check_seed(seed, 45), m, samples.min(5)) {
                let cf = canonical_forms(&jp).map_err(|e| e.to_string())?;
                let a = xi_r_coordinate(&cf.theta, r, &sig).map_err(|e| e.to_string())?;
                let b = xi_r_via_a_r(&cf.theta, r, &sig).map_err(|e| e.to_string())?;
                let scale = 1.0f64.max(a.max_norm()).max(b.max_norm());
                for (x, y) in a.components().iter().zip(b.components()) {
                    dev = dev.max(crate::xalg::deviation(x, y) / scale);
                }
            }
            Ok(CheckOutcome::deviation(dev, samples.min(5)))
        }));
    }

    {
        let sig = sig.clone();
        defs.push(CheckDef::new("xi_pairing_constant", 1e-9, move || {
            let mut constants = Vec::new();
            let mut dev = 0.0f64;
            let mut rng = ChaCha8Rng::seed_from_u64(check_seed(seed, 46));
            let mut attempts = 0;
            while constants.len() < samples.min(10) && attempts < 4 * samples {
                attempts += 1;
                let jp = random_jet_point(&mut rng, m);
                let cf = canonical_forms(&jp).map_err(|e| e.to_string())?;
                match xi_pairing_check(&cf, r, &sig) {
                    Ok(rep) => {
                        dev = dev.max(rep.fit_residual).max(rep.route_deviation);
                        constants.push(rep.constant);
                    }
                    Err(crate::valg::ValgError::DegenerateSample) => continue,
                    Err(e) => return Err(e.to_string()),
                }
            }
            if constants.is_empty() {
                return Err("no nondegenerate sample points".into());
            }
            let mean = constants.iter().sum::<f64>() / constants.len() as f64;
            let var = constants
                .iter()
                .map(|c| (c - mean) * (c - mean))
                .sum::<f64>()
                / constants.len() as f64;
            for c in &constants {
                dev = dev.max(((c - mean) / mean).abs());
            }
            Ok(CheckOutcome::deviation(dev, constants.len())
                .with_note(format!("fitted c = {mean:.12}"))
                .with_fit(FittedConstant {
                    dim: m,
                    r,
                    value: mean,
                    sample_variance: var,
                }))
        }));
    }

    defs.push(CheckDef::new("flat_section_lagrangian", 1e-12, move || {
        // λ^{(r≥1)} pulls back to zero along the flat holonomic section.
        let sig = Signature::lorentzian(m);
        let jp = JetPoint::new(
            vec![0.0; m],
            DMatrix::<f64>::identity(m, m),
            vec![0.0; m * m * m],
        )
        .map_err(|e| e.to_string())?;
        let cf = canonical_forms(&jp).map_err(|e| e.to_string())?;
        let mut dev = 0.0f64;
        let mut section = DMatrix::<f64>::zeros(jp.jet_dim(), m);
        for mu in 0..m {
            section[(jp.cov_x(mu), mu)] = 1.0;
        }
        for rr in 1..=(m / 2) {
            let (lam, _) =
                crate::jetforms::lovelock_lagrangian_form(&cf, rr, &sig).map_err(|e| e.to_string())?;
            let pulled = pullback(&section, &lam).map_err(|e| e.to_string())?;
            dev = dev.max(pulled.max_norm());
        }
        Ok(CheckOutcome::deviation(dev, m / 2))
    }));

    defs.push(CheckDef::new("project_to_t0_residual", 1e-12, move || {
        let mut dev = 0.0f64;
        for jp in jet_points(check_seed(seed, 47), m, samples) {
            let p = project_to_t0(&jp).map_err(|e| e.to_string())?;
            dev = dev.max(max_abs(&torsion_zero_residual(&p)));
            // Idempotence.
            let pp = project_to_t0(&p).map_err(|e| e.to_string())?;
            for mu in 0..m {
                for k in 0..m {
                    for s in 0..m {
                        dev = dev.max((pp.ejet(mu, k, s) - p.ejet(mu, k, s)).abs());
                    }
                }
            }
        }
        Ok(CheckOutcome::deviation(dev, samples))
    }));

    Ok(report("jet", cfg, vec![m], vec![r], defs))
}

// ---------------------------------------------------------------------------
// lovelock
// ---------------------------------------------------------------------------

fn random_metric_points(seed: u64, m: usize, count: usize) -> Vec<(Metric, Vec<f64>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let metric = Metric::RandomPoly {
                dim: m,
                eps: 0.1,
                seed: seed.wrapping_add(1000 + k as u64),
            };
            let x: Vec<f64> = (0..m).map(|_| rng.gen_range(-0.4..0.4)).collect();
            (metric, x)
        })
        .collect()
}

fn lovelock_suite(cfg: &SuiteConfig) -> Result<Report, SuiteError> {
    let m = cfg.dim.unwrap_or(4);
    if !(2..=6).contains(&m) {
        return Err(SuiteError::DimOutOfRange {
            suite: "lovelock",
            dim: m,
            max: 6,
        });
    }
    let r = cfg.r.unwrap_or(1);
    let samples = cfg.samples.unwrap_or(10);
    let seed = cfg.seed;
    let mut defs: Vec<CheckDef> = Vec::new();

    defs.push(CheckDef::new("christoffel_metricity", 1e-12, move || {
        let mut dev = 0.0f64;
        for (metric, x) in random_metric_points(check_seed(seed, 60), m, samples) {
            let s = metric.eval(&x).map_err(|e| e.to_string())?;
            let cd = curvature_data(&s).map_err(|e| e.to_string())?;
            for rho in 0..m {
                for mu in 0..m {
                    for nu in 0..m {
                        let mut c = s.dg(rho, mu, nu);
                        for lam in 0..m {
                            c -= cd.gamma_at(lam, rho, mu) * s.g()[(lam, nu)]
                                + cd.gamma_at(lam, rho, nu) * s.g()[(mu, lam)];
                        }
                        dev = dev.max(c.abs());
                    }
                }
            }
        }
        Ok(CheckOutcome::deviation(dev, samples))
    }));

    defs.push(CheckDef::new("riemann_first_bianchi", 1e-10, move || {
        let mut dev = 0.0f64;
        for (metric, x) in random_metric_points(check_seed(seed, 61), m, samples) {
            let s = metric.eval(&x).map_err(|e| e.to_string())?;
            let cd = curvature_data(&s).map_err(|e| e.to_string())?;
            let scale = cd
                .riemann
                .iter()
                .fold(1.0f64, |a, &b| a.max(b.abs()));
            for sg in 0..m {
                for rho in 0..m {
                    for mu in 0..m {
                        for nu in 0..m {
                            let b = cd.riemann_at(sg, rho, mu, nu)
                                + cd.riemann_at(sg, mu, nu, rho)
                                + cd.riemann_at(sg, nu, rho, mu);
                            dev = dev.max(b.abs() / scale);
                        }
                    }
                }
            }
        }
        Ok(CheckOutcome::deviation(dev, samples))
    }));

    defs.push(CheckDef::new("sphere_scalar_curvature", 1e-12, move || {
        let metric = Metric::Sphere2 { radius: 1.0 };
        let s = metric.eval(&[1.1, 0.4]).map_err(|e| e.to_string())?;
        let cd = curvature_data(&s).map_err(|e| e.to_string())?;
        Ok(CheckOutcome::deviation(
            (scalar_curvature(&cd, &s) - 2.0).abs(),
            1,
        ))
    }));

    defs.push(CheckDef::new("schwarzschild_ricci_flat", 1e-8, move || {
        let metric = Metric::Schwarzschild { mass: 1.0 };
        let s = metric.eval(&[0.0, 10.0, 1.0, 0.5]).map_err(|e| e.to_string())?;
        let cd = curvature_data(&s).map_err(|e| e.to_string())?;
        let ric = crate::lovelock::ricci_tensor(&cd);
        Ok(CheckOutcome::deviation(ric.abs().max(), 1))
    }));

    defs.push(CheckDef::new("vielbein_reconstruction", 1e-12, move || {
        let mut dev = 0.0f64;
        let sig = Signature::lorentzian(m);
        for (metric, x) in random_metric_points(check_seed(seed, 62), m, samples) {
            let s = metric.eval(&x).map_err(|e| e.to_string())?;
            let vb = vielbein_from_metric(s.g(), &sig).map_err(|e| e.to_string())?;
            let mut recon = DMatrix::<f64>::zeros(m, m);
            for mu in 0..m {
                for nu in 0..m {
                    for a in 0..m {
                        recon[(mu, nu)] += vb.e[(a, mu)] * sig.eta(a, a) * vb.e[(a, nu)];
                    }
                }
            }
            dev = dev.max((recon - s.g()).abs().max());
            dev = dev.max((vb.det * vb.det - s.g().determinant().abs()).abs());
        }
        Ok(CheckOutcome::deviation(dev, samples))
    }));

    defs.push(CheckDef::new("density_r1_scalar_fit", 1e-9, move || {
        // δ^{μν}_{αβ} R^{αβ}_{μν} doubles the scalar curvature, so the
        // density over √|g|·R fits one constant across metrics.
        let mut ratios = Vec::new();
        for (metric, x) in random_metric_points(check_seed(seed, 63), m, samples.max(4)) {
            let s = metric.eval(&x).map_err(|e| e.to_string())?;
            let cd = curvature_data(&s).map_err(|e| e.to_string())?;
            let oracle = s.g().determinant().abs().sqrt() * scalar_curvature(&cd, &s);
            if oracle.abs() < 1e-9 {
                continue;
            }
            ratios.push(lovelock_density(1, &s, &cd) / oracle);
        }
        if ratios.is_empty() {
            return Err("all sample points had negligible scalar curvature".into());
        }
        let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
        let mut dev = 0.0f64;
        for c in &ratios {
            dev = dev.max(((c - mean) / mean).abs());
        }
        let var = ratios.iter().map(|c| (c - mean) * (c - mean)).sum::<f64>()
            / ratios.len() as f64;
        Ok(CheckOutcome::deviation(dev, ratios.len())
            .with_note(format!("fitted density/(√|g|·R) = {mean:.12}"))
            .with_fit(FittedConstant {
                dim: m,
                r: 1,
                value: mean,
                sample_variance: var,
            }))
    }));

    defs.push(CheckDef::new("density_eps_contraction_oracle", 1e-12, move || {
        // Gauss–Bonnet on a product of spheres plus random metrics, against
        // the ε·ε route to the same contraction.
        let mut dev = 0.0f64;
        let mut cases = 0usize;
        let mut targets: Vec<(Metric, Vec<f64>, usize)> = vec![(
            Metric::Sphere2x2 {
                radius_a: 1.0,
                radius_b: 1.4,
            },
            vec![1.2, 0.3, 0.9, -0.4],
            2,
        )];
        for (metric, x) in random_metric_points(check_seed(seed, 64), m, 3) {
            targets.push((metric, x, r.min(m / 2).max(1)));
        }
        for (metric, x, rr) in targets {
            let s = metric.eval(&x).map_err(|e| e.to_string())?;
            let cd = curvature_data(&s).map_err(|e| e.to_string())?;
            let d = lovelock_density(rr, &s, &cd);
            let oracle = lovelock_density_eps_oracle(rr, &s, &cd);
            dev = dev.max((d - oracle).abs() / 1.0f64.max(oracle.abs()));
            cases += 1;
        }
        Ok(CheckOutcome::deviation(dev, cases))
    }));

    defs.push(CheckDef::new("density_flat_zero", 0.0, move || {
        let s = Metric::Minkowski { dim: m }
            .eval(&vec![0.0; m])
            .map_err(|e| e.to_string())?;
        let cd = curvature_data(&s).map_err(|e| e.to_string())?;
        let mut dev = 0.0f64;
        for rr in 1..=(m / 2) {
            dev = dev.max(lovelock_density(rr, &s, &cd).abs());
        }
        Ok(CheckOutcome::deviation(dev, m / 2))
    }));

    defs.push(CheckDef::new("density_coordinate_scaling", 1e-12, move || {
        // Under x → s·x the metric arrays scale by (1/s², 1/s³, 1/s⁴) and
        // the density picks up s^{-m}; verified through the tabulated path
        // for s = 2.
        let scale = 2.0f64;
        let metric = Metric::Sphere2x2 {
            radius_a: 1.0,
            radius_b: 1.3,
        };
        let x = vec![1.2, 0.3, 0.9, -0.4];
        let mm = 4usize;
        let s0 = metric.eval(&x).map_err(|e| e.to_string())?;
        let cd0 = curvature_data(&s0).map_err(|e| e.to_string())?;
        let xprime: Vec<f64> = x.iter().map(|v| v * scale).collect();
        let point = crate::lovelock::TabulatedPoint {
            x: xprime.clone(),
            g: (0..mm)
                .map(|i| (0..mm).map(|j| s0.g()[(i, j)] / scale.powi(2)).collect())
                .collect(),
            dg: (0..mm)
                .map(|rh| {
                    (0..mm)
                        .map(|i| {
                            (0..mm)
                                .map(|j| s0.dg(rh, i, j) / scale.powi(3))
                                .collect()
                        })
                        .collect()
                })
                .collect(),
            ddg: (0..mm)
                .map(|rh| {
                    (0..mm)
                        .map(|sg| {
                            (0..mm)
                                .map(|i| {
                                    (0..mm)
                                        .map(|j| s0.ddg(rh, sg, i, j) / scale.powi(4))
                                        .collect()
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect(),
        };
        let tab = Metric::Tabulated(crate::lovelock::TabulatedMetric {
            dim: mm,
            signature: vec![1, 1, 1, 1],
            points: vec![point],
        });
        let s1 = tab.eval(&xprime).map_err(|e| e.to_string())?;
        let cd1 = curvature_data(&s1).map_err(|e| e.to_string())?;
        let mut dev = 0.0f64;
        for rr in [1usize, 2] {
            let d0 = lovelock_density(rr, &s0, &cd0);
            let d1 = lovelock_density(rr, &s1, &cd1);
            dev = dev.max((d1 - d0 / scale.powi(mm as i32)).abs() / 1.0f64.max(d0.abs()));
        }
        Ok(CheckOutcome::deviation(dev, 2))
    }));

    defs.push(CheckDef::new("tensor_symmetry_and_overflow", 0.0, move || {
        let mut dev = 0.0f64;
        for (metric, x) in random_metric_points(check_seed(seed, 65), m, 3) {
            let s = metric.eval(&x).map_err(|e| e.to_string())?;
            let cd = curvature_data(&s).map_err(|e| e.to_string())?;
            let a = lovelock_tensor(r, &s, &cd);
            dev = dev.max((a.transpose() - &a).abs().max());
            // 2r + 1 > m kills every generalized delta termwise.
            if 2 * m >= 2 {
                let overflow_r = m / 2 + if m % 2 == 0 { 0 } else { 1 };
                if 2 * overflow_r + 1 > m {
                    let z = lovelock_tensor(overflow_r, &s, &cd);
                    dev = dev.max(z.abs().max());
                }
            }
        }
        Ok(CheckOutcome::deviation(dev, 3))
    }));

    defs.push(CheckDef::new("tensor_einstein_fit", 1e-9, move || {
        // r = 1: one constant against the independently contracted Einstein
        // tensor across the sample metrics.
        let mut constants = Vec::new();
        let mut dev = 0.0f64;
        for (metric, x) in random_metric_points(check_seed(seed, 66), m, samples.max(10)) {
            let s = metric.eval(&x).map_err(|e| e.to_string())?;
            let cd = curvature_data(&s).map_err(|e| e.to_string())?;
            let a = lovelock_tensor(1, &s, &cd);
            let g_oracle = einstein_tensor(&cd, &s);
            let mut num = 0.0;
            let mut den = 0.0;
            for mu in 0..m {
                for nu in 0..m {
                    num += a[(mu, nu)] * g_oracle[(mu, nu)];
                    den += g_oracle[(mu, nu)] * g_oracle[(mu, nu)];
                }
            }
            if den < 1e-18 {
                continue;
            }
            let c = num / den;
            dev = dev.max((&a - g_oracle.scale(c)).abs().max() / a.abs().max());
            constants.push(c);
        }
        if constants.len() < 2 {
            return Err("not enough curved sample metrics".into());
        }
        let mean = constants.iter().sum::<f64>() / constants.len() as f64;
        for c in &constants {
            dev = dev.max(((c - mean) / mean).abs());
        }
        let var = constants
            .iter()
            .map(|c| (c - mean) * (c - mean))
            .sum::<f64>()
            / constants.len() as f64;
        Ok(CheckOutcome::deviation(dev, constants.len())
            .with_note(format!("fitted A/G constant = {mean:.12}"))
            .with_fit(FittedConstant {
                dim: m,
                r: 1,
                value: mean,
                sample_variance: var,
            }))
    }));

    defs.push(CheckDef::new("tensor_schwarzschild_vacuum", 1e-8, move || {
        let metric = Metric::Schwarzschild { mass: 1.0 };
        let s = metric.eval(&[0.0, 10.0, 1.0, 0.5]).map_err(|e| e.to_string())?;
        let cd = curvature_data(&s).map_err(|e| e.to_string())?;
        Ok(CheckOutcome::deviation(
            lovelock_tensor(1, &s, &cd).abs().max(),
            1,
        ))
    }));

    defs.push(CheckDef::new("divergence_finite_difference", 1e-5, move || {
        // ∇_μ A^{μν} by central differences at h and h/2; the residual must
        // sit at the discretization floor and shrink ~4× when h halves.
        let metric = Metric::RandomPoly {
            dim: m,
            eps: 0.1,
            seed: check_seed(seed, 67),
        };
        let x = vec![0.05; m];
        let rep =
            divergence_lovelock(r.min(m / 2).max(1), &metric, &x, 1e-3).map_err(|e| e.to_string())?;
        let res = max_abs(&rep.residual);
        let in_window = rep.convergence_ratio >= 3.5 && rep.convergence_ratio <= 4.5;
        let dev = if in_window { res } else { res.max(1.0) };
        Ok(CheckOutcome::deviation(dev, 2).with_note(format!(
            "convergence ratio {:.3} (window [3.5, 4.5]); residual(h)={:.3e} residual(h/2)={:.3e}",
            rep.convergence_ratio,
            res,
            max_abs(&rep.residual_half)
        )))
    }));

    defs.push(CheckDef::new("psi_lemma_contraction", 1e-9, move || {
        // e_a Ψ^{ab} e_b against −det(e)/(2r)·A^{μν} at random metrics.
        let rr = r.min(m / 2).max(1);
        let mut dev = 0.0f64;
        let sig = Signature::lorentzian(m);
        for (metric, x) in random_metric_points(check_seed(seed, 68), m, samples) {
            let s = metric.eval(&x).map_err(|e| e.to_string())?;
            let cd = curvature_data(&s).map_err(|e| e.to_string())?;
            let vb = vielbein_from_metric(s.g(), &sig).map_err(|e| e.to_string())?;
            let psi = psi_form_base(rr, &vb, &cd).map_err(|e| e.to_string())?;
            let contracted = psi_contraction(&vb, &psi);
            let a = lovelock_tensor(rr, &s, &cd);
            let expect = a.scale(-vb.det / (2.0 * rr as f64));
            let scale = expect.abs().max().max(contracted.abs().max()).max(1e-30);
            if a.abs().max() == 0.0 {
                // Degenerate delta regime: both sides must vanish.
                dev = dev.max(contracted.abs().max() / 1.0f64.max(vb.det.abs()));
            } else {
                dev = dev.max((contracted - expect).abs().max() / scale);
            }
        }
        Ok(CheckOutcome::deviation(dev, samples))
    }));

    defs.push(CheckDef::new("psi_alternative_route", 1e-10, move || {
        let rr = r.min(m / 2).max(1);
        let sig = Signature::lorentzian(m);
        let mut dev = 0.0f64;
        for (metric, x) in random_metric_points(check_seed(seed, 69), m, samples.min(5)) {
            let s = metric.eval(&x).map_err(|e| e.to_string())?;
            let cd = curvature_data(&s).map_err(|e| e.to_string())?;
            let vb = vielbein_from_metric(s.g(), &sig).map_err(|e| e.to_string())?;
            let direct = psi_form_base(rr, &vb, &cd).map_err(|e| e.to_string())?;
            let alt = psi_form_alternative(rr, &vb, &cd).map_err(|e| e.to_string())?;
            for idx in 0..m * m {
                dev = dev.max(rel_deviation(&direct[idx], &alt[idx]));
            }
        }
        Ok(CheckOutcome::deviation(dev, samples.min(5)))
    }));

    defs.push(CheckDef::new("psi_frame_covariance", 1e-9, move || {
        // e → Λ·e with Λ = exp(𝔨) leaves the contracted tensor unchanged.
        let rr = r.min(m / 2).max(1);
        let sig = Signature::lorentzian(m);
        let mut rng = ChaCha8Rng::seed_from_u64(check_seed(seed, 70));
        let mut dev = 0.0f64;
        for (metric, x) in random_metric_points(check_seed(seed, 71), m, samples.min(5)) {
            let s = metric.eval(&x).map_err(|e| e.to_string())?;
            let cd = curvature_data(&s).map_err(|e| e.to_string())?;
            let vb = vielbein_from_metric(s.g(), &sig).map_err(|e| e.to_string())?;
            let base = psi_contraction(&vb, &psi_form_base(rr, &vb, &cd).map_err(|e| e.to_string())?);
            let lam = eta_preserving_rotation(&mut rng, &sig);
            let rotated = Vielbein::from_frame(&lam * &vb.e, &sig).map_err(|e| e.to_string())?;
            let turned =
                psi_contraction(&rotated, &psi_form_base(rr, &rotated, &cd).map_err(|e| e.to_string())?);
            let scale = base.abs().max().max(1.0);
            dev = dev.max((turned - base).abs().max() / scale);
        }
        Ok(CheckOutcome::deviation(dev, samples.min(5)))
    }));

    defs.push(CheckDef::new("eds_levi_civita", 1e-10, move || {
        // Torsion and metricity sit at machine zero, Bianchi at 1e-10.
        let rr = r.min(m / 2).max(1);
        let sig = Signature::lorentzian(m);
        let mut dev = 0.0f64;
        for (metric, x) in random_metric_points(check_seed(seed, 72), m, samples.min(5)) {
            let s = metric.eval(&x).map_err(|e| e.to_string())?;
            let cd = curvature_data(&s).map_err(|e| e.to_string())?;
            let vb = vielbein_from_metric(s.g(), &sig).map_err(|e| e.to_string())?;
            let rep = eds_residuals(rr, &vb, &cd, &s).map_err(|e| e.to_string())?;
            dev = dev
                .max(rep.torsion / 1e-2)
                .max(rep.metricity / 1e-2)
                .max(rep.bianchi)
                .max(rep.curvature_p);
        }
        Ok(CheckOutcome::deviation(dev, samples.min(5))
            .with_note("torsion/metricity reported at 1e-12 weight; Bianchi and 𝔭-part direct"))
    }));

    defs.push(CheckDef::new("eds_schwarzschild_vacuum", 1e-8, move || {
        let metric = Metric::Schwarzschild { mass: 1.0 };
        let s = metric.eval(&[0.0, 10.0, 1.0, 0.5]).map_err(|e| e.to_string())?;
        let cd = curvature_data(&s).map_err(|e| e.to_string())?;
        let vb = vielbein_from_metric(s.g(), &metric.signature()).map_err(|e| e.to_string())?;
        let rep = eds_residuals(1, &vb, &cd, &s).map_err(|e| e.to_string())?;
        let dev = rep
            .torsion
            .max(rep.metricity)
            .max(rep.bianchi)
            .max(rep.curvature_p)
            .max(rep.psi);
        Ok(CheckOutcome::deviation(dev, 1).with_note(format!(
            "torsion={:.2e} metricity={:.2e} bianchi={:.2e} curvature_p={:.2e} psi={:.2e}; momentum generators {}",
            rep.torsion, rep.metricity, rep.bianchi, rep.curvature_p, rep.psi, rep.theta_momenta
        )))
    }));

    Ok(report("lovelock", cfg, vec![m], vec![r], defs))
}
