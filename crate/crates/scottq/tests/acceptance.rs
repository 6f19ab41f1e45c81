//! Acceptance gate. Each test prints one pass/fail line (visible with
//! --nocapture, or on failure) and enforces a wall-clock budget.
//! Tolerances are pinned here on purpose; do not loosen them.

use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use scottq::measures::q_m_exact;
use scottq::subset::{all_subsets, subsets_of_size};
use scottq::{
    complement_ratio, cut_rank, enumerate_graphs, find_ame_graphs, graph_state, gstar_state, q_m,
    q_profile, random_local_unitary, random_state, validate_m, Engine, Error, Graph, ProfileSource,
    QmRequest, Ratio,
};

const EXACT_TOL: f64 = 1e-12;
const ENGINE_TOL: f64 = 1e-10;
const RATIO_TOL: f64 = 1e-9;

fn criterion(no: u32, what: &str, budget: Duration, f: impl FnOnce()) {
    let started = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f));
    let elapsed = started.elapsed();
    let ok = outcome.is_ok() && elapsed <= budget;
    println!(
        "criterion {no} ({what}): {} [{elapsed:.2?}]",
        if ok { "PASS" } else { "FAIL" }
    );
    if let Err(cause) = outcome {
        resume_unwind(cause);
    }
    assert!(
        elapsed <= budget,
        "criterion {no} took {elapsed:?}, budget is {budget:?}"
    );
}

fn both_engines(g: &Graph, ms: Vec<usize>) -> scottq::QmReport {
    q_profile(
        ProfileSource::Graph(g),
        &QmRequest::new(ms, false, Engine::Both),
    )
    .unwrap()
}

#[test]
fn criterion_1_reference_state_exact_values() {
    criterion(
        1,
        "six-qubit reference state",
        Duration::from_secs(1),
        || {
            let st = gstar_state();
            assert!((st.norm_sqr() - 1.0).abs() <= EXACT_TOL);
            for (m, want) in [(1, 0.5), (2, 0.25), (3, 0.125)] {
                for s in subsets_of_size(6, m) {
                    let p = st.purity(s);
                    assert!(
                        (p - want).abs() <= EXACT_TOL,
                        "size-{m} marginal {s} has purity {p}, want {want}"
                    );
                }
            }
            for m in 1..=3 {
                let purities: Vec<f64> = subsets_of_size(6, m).map(|s| st.purity(s)).collect();
                let q = q_m(&purities, 6, m).unwrap();
                assert!((q - 1.0).abs() <= EXACT_TOL, "Q_{m} = {q}, want 1");
            }
        },
    );
}

#[test]
fn criterion_2_connected_four_vertex_graphs_saturate_q1() {
    criterion(
        2,
        "four-vertex Q_1 saturation",
        Duration::from_secs(5),
        || {
            let labeled = enumerate_graphs(4, true, false).unwrap();
            let classes = enumerate_graphs(4, true, true).unwrap();
            assert_eq!(labeled.len(), 38);
            assert_eq!(classes.len(), 6);
            for g in labeled.iter().chain(classes.iter()) {
                let rep = both_engines(g, vec![1]);
                let q1 = &rep.values[0];
                assert!(
                    q1.exact.as_ref().unwrap().is_one(),
                    "exact Q_1 != 1 for {g:?}"
                );
                assert!(
                    (q1.value - 1.0).abs() <= ENGINE_TOL,
                    "dense Q_1 = {} for {g:?}",
                    q1.value
                );
            }
        },
    );
}

#[test]
fn criterion_3_subset_size_window_is_enforced() {
    criterion(
        3,
        "subset-size validity window",
        Duration::from_secs(1),
        || {
            let err = validate_m(4, 3, false).unwrap_err();
            assert!(matches!(err, Error::MOutOfRange { n: 4, m: 3 }));
            assert_eq!(err.exit_code(), 2);
            // The same rejection must surface through the profile entry point.
            let g = Graph::parse_edge_list("4: 1-2, 2-3, 3-4").unwrap();
            let req = QmRequest::new(vec![3], false, Engine::Both);
            assert!(matches!(
                q_profile(ProfileSource::Graph(&g), &req),
                Err(Error::MOutOfRange { n: 4, m: 3 })
            ));
            for m in 1..=3 {
                validate_m(6, m, false).unwrap();
            }
        },
    );
}

#[test]
fn criterion_4_complement_proportionality_on_random_states() {
    criterion(
        4,
        "Q_3 = (4/7) Q_1 on random states",
        Duration::from_secs(5),
        || {
            // Q_3 = (4/7) Q_1 at four qubits: factor from size 1 to size 4-1.
            assert_eq!(complement_ratio(4, 1).unwrap(), Ratio::new(4, 7));
            for seed in 0..50u64 {
                let st = random_state(4, seed).unwrap();
                let p1: Vec<f64> = subsets_of_size(4, 1).map(|s| st.purity(s)).collect();
                let p3: Vec<f64> = subsets_of_size(4, 3).map(|s| st.purity(s)).collect();
                let q1 = q_m(&p1, 4, 1).unwrap();
                let q3 = q_m(&p3, 4, 3).unwrap();
                assert!(
                    (q3 - 4.0 / 7.0 * q1).abs() <= RATIO_TOL,
                    "seed {seed}: q3 = {q3}, (4/7) q1 = {}",
                    4.0 / 7.0 * q1
                );
            }
        },
    );
}

#[test]
fn criterion_5_dense_purities_match_cut_ranks_exhaustively() {
    criterion(
        5,
        "dense vs exact purity, all classes to n=7",
        Duration::from_secs(60),
        || {
            for n in 2..=7 {
                for g in enumerate_graphs(n, false, true).unwrap() {
                    let st = graph_state(&g).unwrap();
                    for s in all_subsets(n) {
                        let exact = f64::powi(0.5, cut_rank(&g, s) as i32);
                        let dense = st.purity(s);
                        assert!(
                            (dense - exact).abs() <= ENGINE_TOL,
                            "n={n} {g:?} subset {s}: dense {dense} vs exact {exact}"
                        );
                        // The dense value must round to that power of two and
                        // to no other.
                        let k = (-dense.log2()).round();
                        assert!((f64::powf(2.0, -k) - exact).abs() <= ENGINE_TOL);
                    }
                }
            }
        },
    );
}

#[test]
fn criterion_6_measures_are_local_unitary_invariant() {
    criterion(
        6,
        "local-unitary invariance",
        Duration::from_secs(30),
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(0xA11CE);
            for trial in 0..20u64 {
                let n = 4 + (trial as usize) % 3;
                let mut edges = Vec::new();
                for a in 0..n {
                    for b in (a + 1)..n {
                        if rng.random_bool(0.5) {
                            edges.push((a, b));
                        }
                    }
                }
                let g = Graph::new(n, &edges).unwrap();
                let st = graph_state(&g).unwrap();
                let q = rng.random_range(0..n);
                let u = random_local_unitary(0xBEEF + trial);
                let rotated = st.apply_local_unitary(q, &u).unwrap();
                let req = QmRequest::new(vec![], false, Engine::Dense);
                let before = q_profile(ProfileSource::State(&st), &req).unwrap();
                let after = q_profile(ProfileSource::State(&rotated), &req).unwrap();
                assert_eq!(before.values.len(), after.values.len());
                for (b, a) in before.values.iter().zip(after.values.iter()) {
                    assert_eq!(b.m, a.m);
                    assert!(
                        (b.value - a.value).abs() < RATIO_TOL,
                        "trial {trial} qubit {q}: Q_{} moved from {} to {}",
                        b.m,
                        b.value,
                        a.value
                    );
                }
            }
        },
    );
}

#[test]
fn criterion_7_six_vertex_search_finds_maximally_mixed_marginals() {
    criterion(
        7,
        "maximally mixed marginal search",
        Duration::from_secs(60),
        || {
            let hits = find_ame_graphs(6).unwrap();
            assert!(!hits.is_empty());
            for g in &hits {
                let rep = q_profile(
                    ProfileSource::Graph(g),
                    &QmRequest::new(vec![2, 3], false, Engine::Stabilizer),
                )
                .unwrap();
                for v in &rep.values {
                    assert!(
                        v.exact.as_ref().unwrap().is_one(),
                        "Q_{} != 1 for {g:?}",
                        v.m
                    );
                }
            }
            assert!(find_ame_graphs(4).unwrap().is_empty());
            // Exactness sanity on the arithmetic backing those ones.
            let ones = vec![2u32; 15];
            assert!(q_m_exact(&ones, 6, 2).unwrap().is_one());
        },
    );
}

#[test]
fn criterion_8_claim_suite_passes_end_to_end() {
    criterion(
        8,
        "claim suite via the binary",
        Duration::from_secs(120),
        || {
            let out = Command::new(env!("CARGO_BIN_EXE_scottq"))
                .args(["verify-paper", "--seed", "7"])
                .output()
                .expect("binary should run");
            assert!(
                out.status.success(),
                "stderr: {}",
                String::from_utf8_lossy(&out.stderr)
            );
            let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
            assert_eq!(doc["passed"], serde_json::Value::Bool(true));
            let claims = doc["claims"].as_array().unwrap();
            assert_eq!(claims.len(), 8);
            for c in claims {
                let id = c["id"].as_str().unwrap();
                let status = c["status"].as_str().unwrap();
                if id == "R1" {
                    assert!(
                        status == "pass" || status == "inconclusive",
                        "{id} must never fail, got {status}"
                    );
                } else {
                    assert_eq!(status, "pass", "claim {id}");
                }
            }
        },
    );
}
