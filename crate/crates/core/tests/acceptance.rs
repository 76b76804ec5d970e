//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Run with `cargo test -p qshape-core --test acceptance -- --nocapture`.
//!
//! The algebra batch (criterion 4) needs a basis of 8 states, so its Scarf
//! entry uses a deep well (`V0 = 50`) whose bound window holds 11 states;
//! the shallow `V0 = 4` well from the rest of the suite only binds 3.

use std::time::Instant;

use qshape_core::algebra::{self, DEFAULT_TOLERANCE, RELATION_IDS};
use qshape_core::oracle::{self, GridSpec};
use qshape_core::qnum::{self, QParam};
use qshape_core::spectra::{self, DeformationScheme, Variant};
use qshape_core::PotentialModel;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn criterion<F: FnOnce() + std::panic::UnwindSafe>(name: &str, f: F) {
    match std::panic::catch_unwind(f) {
        Ok(()) => println!("[PASS] {name}"),
        Err(cause) => {
            println!("[FAIL] {name}");
            std::panic::resume_unwind(cause);
        }
    }
}

fn catalog() -> Vec<PotentialModel> {
    vec![
        PotentialModel::harmonic_oscillator(1.0).unwrap(),
        PotentialModel::morse(50.0, 1.0, 1.0).unwrap(),
        PotentialModel::scarf(4.0, 1.0).unwrap(),
        PotentialModel::coulomb(1.0, 0).unwrap(),
    ]
}

fn qp(q: f64) -> QParam {
    QParam::new(q).unwrap()
}

#[test]
fn criterion_1_q_identity_suite() {
    criterion(
        "criterion 1: 10^4 random draws pass the q-identity suite",
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5157_4944);
            let near_one = [1.0, 1.0 + 1e-7, 1.0 - 1e-7, 1.0 + 1e-9];
            for i in 0..10_000usize {
                let x: f64 = rng.random_range(-10.0..10.0);
                let y: f64 = rng.random_range(-10.0..10.0);
                let q: f64 = if i % 500 == 0 {
                    near_one[(i / 500) % near_one.len()]
                } else {
                    rng.random_range(0.2..5.0)
                };
                let p = qp(q);

                // oddness
                let plus = qnum::q_bracket(x, p).unwrap();
                let minus = qnum::q_bracket(-x, p).unwrap();
                assert!(
                    (plus + minus).abs() <= 1e-13 * (1.0 + plus.abs()),
                    "oddness x={x} q={q}"
                );

                // q <-> 1/q symmetry
                let inv = qnum::q_bracket(x, qp(1.0 / q)).unwrap();
                assert!(
                    (plus - inv).abs() <= 1e-12 * (1.0 + plus.abs().max(inv.abs())),
                    "inversion x={x} q={q}"
                );

                // addition identity, error relative to the largest term
                let lhs = qnum::q_bracket(x + y, p).unwrap();
                let t1 = p.pow(y).unwrap() * plus;
                let t2 = p.pow(-x).unwrap() * qnum::q_bracket(y, p).unwrap();
                let scale = 1.0 + lhs.abs().max(t1.abs()).max(t2.abs());
                assert!(
                    (lhs - (t1 + t2)).abs() <= 1e-11 * scale,
                    "addition x={x} y={y} q={q}"
                );

                // Q-telescope at Q = q^2
                let big_q = q * q;
                let t0 = qnum::big_q_bracket(x + y, big_q).unwrap();
                let t1 = big_q.powf(y) * qnum::big_q_bracket(x, big_q).unwrap();
                let rhs = qnum::big_q_bracket(y, big_q).unwrap();
                let scale = 1.0 + t0.abs().max(t1.abs()).max(rhs.abs());
                assert!(
                    (t0 - t1 - rhs).abs() <= 1e-11 * scale,
                    "telescope x={x} y={y} Q={big_q}"
                );
            }
        },
    );
}

#[test]
fn criterion_2_ansatz_validation() {
    criterion(
        "criterion 2: remainder ansatz residual <= 1e-12 on every catalog model",
        || {
            for m in catalog() {
                let j_max = m.bound_state_count();
                let residual = m.validate_ansatz(j_max).unwrap();
                assert!(residual <= 1e-12, "{m}: residual {residual}");
            }
        },
    );
}

#[test]
fn criterion_3_telescoping_spectrum_identity() {
    criterion(
        "criterion 3: S-model increment sum equals the closed form",
        || {
            for m in catalog() {
                for q in [0.8, 0.95, 1.05, 1.3] {
                    let q = qp(q);
                    for n in 0..=m.bound_state_count().min(10) {
                        let sum = spectra::s_model_energy_sum(&m, q, n).unwrap();
                        let closed = spectra::s_model_energy_closed(&m, q, n).unwrap();
                        assert!(
                            (sum - closed).abs() <= 1e-11 * (1.0 + closed.abs()),
                            "{m} q={} n={n}: {sum} vs {closed}",
                            q.value()
                        );
                    }
                }
            }
            // hand-checked point: both paths give 4.21632 for the unit
            // oscillator at q = 1.2, n = 2
            let ho = PotentialModel::harmonic_oscillator(1.0).unwrap();
            let q = qp(1.2);
            let exact = 1.2f64.powi(3) * (1.2f64.powi(4) - 1.0) / (1.2f64.powi(2) - 1.0);
            for v in [
                spectra::s_model_energy_sum(&ho, q, 2).unwrap(),
                spectra::s_model_energy_closed(&ho, q, 2).unwrap(),
            ] {
                assert!((v - 4.21632).abs() <= 5e-6);
                assert!((v - exact).abs() <= 1e-12 * exact);
            }
        },
    );
}

#[test]
fn criterion_4_algebra_verification_batch() {
    // The absolute 1e-10 gate at N = 8 is well-posed for the oscillator,
    // Morse and Coulomb ladders (dimensionless energies stay below ~8). It
    // is unreachable for any Scarf well: a window of 8 states forces
    // e_7 >= 42, so interior entries grow like q^{2 e_7} ~ 1e8..1e15 and a
    // machine-precision identity still leaves absolute residuals far above
    // 1e-10. The shallow catalog Scarf (V0 = 4, 3 bound states) cannot even
    // form the minimum 4-state basis. This test therefore (a) runs the
    // stated gate where it is attainable, (b) pins down the Scarf
    // contradiction, and (c) verifies every relation on a deep Scarf well
    // at machine-relative precision instead.
    criterion(
        "criterion 4: all 14 relations pass at N = 8 (Scarf leg at relative precision)",
        || {
            let start = Instant::now();
            let models = vec![
                PotentialModel::harmonic_oscillator(1.0).unwrap(),
                PotentialModel::morse(50.0, 1.0, 1.0).unwrap(),
                PotentialModel::coulomb(1.0, 0).unwrap(),
            ];
            let qs = [0.8, 1.1, 1.5];
            for m in &models {
                let reports = algebra::verify_all(m, &qs, 8, DEFAULT_TOLERANCE).unwrap();
                assert_eq!(reports.len(), RELATION_IDS.len() * qs.len());
                for r in &reports {
                    assert!(
                        r.pass && r.max_residual <= 1e-10,
                        "{m} {} q={}: residual {}",
                        r.relation,
                        r.q,
                        r.max_residual
                    );
                }
            }

            // shallow catalog Scarf: both admissible basis sizes are
            // excluded by the preconditions
            let scarf = PotentialModel::scarf(4.0, 1.0).unwrap();
            assert_eq!(scarf.bound_state_count(), 2);
            assert!(matches!(
                algebra::verify_relation("cb1", &scarf, qp(1.1), 8, DEFAULT_TOLERANCE),
                Err(qshape_core::Error::BasisTooLarge(_))
            ));
            assert!(matches!(
                algebra::verify_relation("cb1", &scarf, qp(1.1), 3, DEFAULT_TOLERANCE),
                Err(qshape_core::Error::BasisTooSmall(_))
            ));

            // deep Scarf well: all 14 relations at N = 8, residuals at
            // machine precision relative to the interior entry scale
            let deep = PotentialModel::scarf(50.0, 1.0).unwrap();
            for id in RELATION_IDS {
                for q in qs {
                    let r = algebra::verify_relation(id, &deep, qp(q), 8, f64::INFINITY).unwrap();
                    assert!(
                        r.max_residual <= 1e-12 * (1.0 + r.scale),
                        "{deep} {id} q={q}: residual {} at scale {}",
                        r.max_residual,
                        r.scale
                    );
                }
            }

            let elapsed = start.elapsed();
            assert!(elapsed.as_secs_f64() < 5.0, "batch took {elapsed:?}");
        },
    );
}

#[test]
fn criterion_5_harmonic_oscillator_reductions() {
    criterion("criterion 5: oscillator reductions hold to 1e-12", || {
        // any model argument works: the ho_* relations evaluate on the
        // canonical unit-remainder ladder
        let m = PotentialModel::harmonic_oscillator(1.0).unwrap();
        for q in [0.8, 1.1, 1.5] {
            for id in ["ho_std", "ho_Q", "ho_d"] {
                let r = algebra::verify_relation(id, &m, qp(q), 8, 1e-12).unwrap();
                assert!(
                    r.pass && r.max_residual <= 1e-12,
                    "{id} q={q}: residual {}",
                    r.max_residual
                );
            }
        }
    });
}

#[test]
fn criterion_6_classical_limit() {
    criterion(
        "criterion 6: every deformed spectrum collapses to e_n as q -> 1",
        || {
            for m in catalog() {
                let n_max = m.bound_state_count().min(10);
                let e = m.energy_ladder(n_max).unwrap();
                for variant in Variant::ALL {
                    for q in [1.0 - 1e-6, 1.0 + 1e-6] {
                        let scheme = DeformationScheme::new(variant, q).unwrap();
                        for (n, en) in e.iter().enumerate() {
                            let v = spectra::deformed_energy(&m, &scheme, n).unwrap();
                            if n == 0 {
                                assert_eq!(v, 0.0, "{m} {variant:?} q={q}");
                            } else {
                                let rel = (v - en).abs() / en;
                                assert!(rel <= 1e-4, "{m} {variant:?} q={q} n={n}: rel {rel}");
                            }
                        }
                    }
                }
            }
        },
    );
}

#[test]
fn criterion_7_oracle_equivalence() {
    criterion(
        "criterion 7: finite-difference eigenvalues match hbar_omega * e_n",
        || {
            let start = Instant::now();
            // (model, compared levels): lowest 4 where the window allows,
            // lowest 3 for the shallow Scarf well and for the two hydrogen
            // gaps 0.375 and 0.4444...
            let cases = vec![
                (PotentialModel::harmonic_oscillator(1.0).unwrap(), 4usize),
                (PotentialModel::morse(50.0, 1.0, 1.0).unwrap(), 4),
                (PotentialModel::scarf(4.0, 1.0).unwrap(), 3),
                (PotentialModel::coulomb(1.0, 0).unwrap(), 3),
            ];
            for (m, levels) in &cases {
                let res = oracle::compare(m, &GridSpec::default_for(m), *levels).unwrap();
                assert_eq!(res.rows.len(), *levels);
                let top = (*levels).min(m.bound_state_count());
                let scale = m.hbar_omega() * m.energy_ladder(top).unwrap()[top];
                assert!(
                    res.rows[0].e_numeric.abs() <= 1e-5 * scale,
                    "{m}: ground at {}",
                    res.rows[0].e_numeric
                );
                for row in &res.rows {
                    assert!(
                        row.rel_diff <= 1e-5,
                        "{m} n={}: rel_diff {}",
                        row.n,
                        row.rel_diff
                    );
                }
            }
            // hydrogen gaps in natural units at Z = 1, L = 0
            let coulomb = &cases[3].0;
            let res = oracle::compare(coulomb, &GridSpec::default_for(coulomb), 3).unwrap();
            assert!((res.rows[1].e_algebraic - 0.375).abs() < 1e-14);
            assert!((res.rows[2].e_algebraic - 4.0 / 9.0).abs() < 1e-14);

            // second-order convergence: halving h cuts each error by >= 3.5
            for (m, coarse_points) in [
                (PotentialModel::harmonic_oscillator(1.0).unwrap(), 800usize),
                (PotentialModel::morse(50.0, 1.0, 1.0).unwrap(), 2000),
            ] {
                let base = GridSpec::default_for(&m);
                let coarse = GridSpec {
                    points: coarse_points,
                    ..base
                };
                let fine = GridSpec {
                    points: 2 * coarse_points + 1,
                    ..base
                };
                let ec = oracle::solve_on_grid(&m, &coarse, 4).unwrap();
                let ef = oracle::solve_on_grid(&m, &fine, 4).unwrap();
                let hw = m.hbar_omega();
                let exact = m.energy_ladder(3).unwrap();
                for n in 1..4 {
                    let factor = (ec[n] - hw * exact[n]).abs() / (ef[n] - hw * exact[n]).abs();
                    assert!(factor >= 3.5, "{m} n={n}: factor {factor}");
                }
            }
            let elapsed = start.elapsed();
            assert!(elapsed.as_secs_f64() < 30.0, "oracle took {elapsed:?}");
        },
    );
}
