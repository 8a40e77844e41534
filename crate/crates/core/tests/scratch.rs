use lovelock_forms::jetforms::*;
use lovelock_forms::valg::Signature;
use lovelock_forms::xalg::{pullback, wedge, SparseAltForm};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

// Temporary experiment: status of the curvature/coframe swap identity under
// T0-tangent pullback, with and without the trace term.
#[test]
fn omegacom_experiment() {
    let m = 3usize;
    let r = 1usize;
    let sig = Signature::lorentzian(m);
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for trial in 0..3 {
        let jp = project_to_t0(&random_jet_point(&mut rng, m)).unwrap();
        let cf = canonical_forms(&jp).unwrap();
        let n = jp.jet_dim();
        let raised = raised_curvature(&cf, &sig);

        // side1 = Σ Ω^q_{i1} ∧ θ_{q i2..ir J} ∧ Ω^{IJ}
        // side2 = Σ Ω^q_{j1} ∧ θ_{I q j2..jr} ∧ Ω^{IJ}
        // trace = Σ Ω^l_l ∧ θ_{IJ} ∧ Ω^{IJ}
        // premise_wedge = Σ Ω^q_l ∧ θ^l ∧ θ_{qIJ} ∧ Ω^{IJ}
        let mut side1 = SparseAltForm::zero(n, m + 2);
        let mut side2 = SparseAltForm::zero(n, m + 2);
        let mut trace_term = SparseAltForm::zero(n, m + 2);
        let mut premise_wedge = SparseAltForm::zero(n, m + 2);

        let mut trace = SparseAltForm::zero(n, 2);
        for l in 0..m {
            trace = trace.add(cf.curvature_ij(l, l)).unwrap();
        }

        for ij in lovelock_forms::alt::index_tuples(m, 2 * r) {
            let (i_part, j_part) = ij.split_at(r);
            let mut omega_ij_prod = SparseAltForm::scalar(n, 1.0);
            for a in 0..r {
                omega_ij_prod = wedge(&omega_ij_prod, &raised[i_part[a] * m + j_part[a]]).unwrap();
            }
            if omega_ij_prod.is_zero() {
                continue;
            }
            let th_ij = sparling_from_thetas(&cf.theta, &ij).unwrap();
            if !th_ij.is_zero() {
                trace_term = trace_term
                    .add(&wedge(&wedge(&trace, &th_ij).unwrap(), &omega_ij_prod).unwrap())
                    .unwrap();
            }
            for q in 0..m {
                // side1: θ_{q i2…ir J}
                let mut idx1 = vec![q];
                idx1.extend_from_slice(&i_part[1..]);
                idx1.extend_from_slice(j_part);
                let th1 = sparling_from_thetas(&cf.theta, &idx1).unwrap();
                if !th1.is_zero() {
                    let w = wedge(
                        &wedge(cf.curvature_ij(q, i_part[0]), &th1).unwrap(),
                        &omega_ij_prod,
                    )
                    .unwrap();
                    side1 = side1.add(&w).unwrap();
                }
                // side2: θ_{I q j2…jr}
                let mut idx2 = i_part.to_vec();
                idx2.push(q);
                idx2.extend_from_slice(&j_part[1..]);
                let th2 = sparling_from_thetas(&cf.theta, &idx2).unwrap();
                if !th2.is_zero() {
                    let w = wedge(
                        &wedge(cf.curvature_ij(q, j_part[0]), &th2).unwrap(),
                        &omega_ij_prod,
                    )
                    .unwrap();
                    side2 = side2.add(&w).unwrap();
                }
                // premise wedge: Ω^q_l ∧ θ^l ∧ θ_{q I J}
                let mut idxp = vec![q];
                idxp.extend_from_slice(&ij);
                let thp = sparling_from_thetas(&cf.theta, &idxp).unwrap();
                if !thp.is_zero() {
                    for l in 0..m {
                        let w = wedge(
                            &wedge(
                                &wedge(cf.curvature_ij(q, l), &cf.theta[l]).unwrap(),
                                &thp,
                            )
                            .unwrap(),
                            &omega_ij_prod,
                        )
                        .unwrap();
                        premise_wedge = premise_wedge.add(&w).unwrap();
                    }
                }
            }
        }

        // Full combinatorial identity on the jet space (no hypotheses):
        // premise_wedge = trace_term − r·side1 − r·side2.
        let rf = r as f64;
        let rhs_full = lovelock_forms::xalg::linear_combine(
            &[1.0, -rf, -rf],
            &[trace_term.clone(), side1.clone(), side2.clone()],
        )
        .unwrap();
        let full_dev = lovelock_forms::xalg::rel_deviation(&premise_wedge, &rhs_full);

        // T0-tangent pullbacks.
        let l = t0_tangent_basis(&jp).unwrap();
        let p_premise: Vec<f64> = (0..m)
            .map(|k| {
                let mut acc = SparseAltForm::zero(n, 3);
                for j in 0..m {
                    acc = acc
                        .add(&wedge(cf.curvature_ij(k, j), &cf.theta[j]).unwrap())
                        .unwrap();
                }
                pullback(&l, &acc).unwrap().max_norm()
            })
            .collect();
        let pw = pullback(&l, &premise_wedge).unwrap();
        let p1 = pullback(&l, &side1).unwrap();
        let p2 = pullback(&l, &side2).unwrap();
        let ptr = pullback(&l, &trace_term).unwrap();
        let printed_dev = lovelock_forms::xalg::rel_deviation(&p1, &p2.scale(-1.0));
        println!("trial {trial}:");
        println!("  full combinatorial identity dev = {full_dev:.3e}");
        println!("  premise (pulled Bianchi 3-forms) max = {:?}", p_premise);
        println!("  pulled premise_wedge norm   = {:.3e}", pw.max_norm());
        println!("  pulled side1 norm           = {:.3e}", p1.max_norm());
        println!("  pulled side2 norm           = {:.3e}", p2.max_norm());
        println!("  pulled trace term norm      = {:.3e}", ptr.max_norm());
        println!("  printed identity (s1 = -s2) dev = {printed_dev:.3e}");
    }
}
