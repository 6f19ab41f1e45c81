//! Built-in claim suite: every headline property of the measure and of the
//! six-qubit reference state, evaluated end to end and reported as
//! pass/fail/inconclusive records with embedded evidence.

use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::graph::enumerate_graphs;
use crate::measures::{
    complement_ratio, q_m, q_m_exact, validate_m, Engine, ProfileSource, QmRequest,
};
use crate::stab::{find_ame_graphs, match_gstar, purity_exact};
use crate::state::{gstar_state, random_state};
use crate::subset::subsets_of_size;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimStatus {
    Pass,
    Fail,
    Inconclusive,
}

impl std::fmt::Display for ClaimStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ClaimStatus::Pass => "pass",
            ClaimStatus::Fail => "fail",
            ClaimStatus::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClaimRecord {
    pub id: String,
    pub description: String,
    pub status: ClaimStatus,
    pub evidence: serde_json::Value,
}

impl ClaimRecord {
    fn new(id: &str, description: &str, pass: bool, evidence: serde_json::Value) -> ClaimRecord {
        ClaimRecord {
            id: id.into(),
            description: description.into(),
            status: if pass {
                ClaimStatus::Pass
            } else {
                ClaimStatus::Fail
            },
            evidence,
        }
    }
}

pub fn all_passed(claims: &[ClaimRecord]) -> bool {
    claims.iter().all(|c| c.status != ClaimStatus::Fail)
}

fn sig(x: f64) -> f64 {
    crate::report::sig12(x)
}

/// Run the full suite. `seed` controls the random-state claims.
pub fn run_claims(seed: u64) -> Result<Vec<ClaimRecord>> {
    Ok(vec![
        claim_c1()?,
        claim_c2(),
        claim_c3()?,
        claim_c4(),
        claim_c5(seed)?,
        claim_c6()?,
        claim_c7()?,
        claim_r1()?,
    ])
}

/// Q_1 = 1 exactly for every connected four-qubit graph, on the exact path,
/// with the dense path in agreement.
fn claim_c1() -> Result<ClaimRecord> {
    let mut max_gap: f64 = 0.0;
    let mut all_exactly_one = true;
    let labeled = enumerate_graphs(4, true, false)?;
    let classes = enumerate_graphs(4, true, true)?;
    for g in labeled.iter().chain(&classes) {
        let req = QmRequest::new(vec![1], false, Engine::Both);
        let rep = crate::measures::q_profile(ProfileSource::Graph(g), &req)?;
        let v = &rep.values[0];
        all_exactly_one &= v.exact.as_ref().is_some_and(|r| r.is_one());
        max_gap = max_gap.max((v.value - 1.0).abs());
    }
    let pass = labeled.len() == 38 && classes.len() == 6 && all_exactly_one && max_gap <= 1e-10;
    Ok(ClaimRecord::new(
        "C1",
        "every connected four-qubit graph state has Q_1 = 1",
        pass,
        json!({
            "labeled_connected_graphs": labeled.len(),
            "isomorphism_classes": classes.len(),
            "exact_path_all_one": all_exactly_one,
            "max_dense_gap": sig(max_gap),
        }),
    ))
}

/// The reference state's marginals: singles 1/2, pairs 1/4, triples 1/8.
fn claim_c2() -> ClaimRecord {
    let st = gstar_state();
    let mut gaps = [0.0f64; 3];
    for (i, gap) in gaps.iter_mut().enumerate() {
        let m = i + 1;
        let want = f64::powi(0.5, m as i32);
        for s in subsets_of_size(6, m) {
            *gap = gap.max((st.purity(s) - want).abs());
        }
    }
    let pass = gaps.iter().all(|&g| g <= 1e-12);
    ClaimRecord::new(
        "C2",
        "the six-qubit reference state has marginal purities 1/2, 1/4, 1/8",
        pass,
        json!({
            "max_gap_singles": sig(gaps[0]),
            "max_gap_pairs": sig(gaps[1]),
            "max_gap_triples": sig(gaps[2]),
            "subsets_checked": 6 + 15 + 20,
        }),
    )
}

/// The reference state's measures: Q_1 = Q_2 = Q_3 = 1.
fn claim_c3() -> Result<ClaimRecord> {
    let st = gstar_state();
    let mut qs = Vec::new();
    for m in 1..=3usize {
        let purities: Vec<f64> = subsets_of_size(6, m).map(|s| st.purity(s)).collect();
        qs.push(q_m(&purities, 6, m)?);
    }
    let pass = qs.iter().all(|q| (q - 1.0).abs() <= 1e-12);
    Ok(ClaimRecord::new(
        "C3",
        "the six-qubit reference state has Q_1 = Q_2 = Q_3 = 1",
        pass,
        json!({ "q1": sig(qs[0]), "q2": sig(qs[1]), "q3": sig(qs[2]) }),
    ))
}

/// The validity window: size 3 of 4 qubits is rejected without the
/// complement flag; sizes 1..=3 of 6 qubits are accepted.
fn claim_c4() -> ClaimRecord {
    let rejected = matches!(
        validate_m(4, 3, false),
        Err(Error::MOutOfRange { n: 4, m: 3 })
    );
    let rejection_message = validate_m(4, 3, false).err().map(|e| e.to_string());
    let accepted: Vec<usize> = (1..=3)
        .filter(|&m| validate_m(6, m, false).is_ok())
        .collect();
    let pass = rejected && accepted == [1, 2, 3];
    ClaimRecord::new(
        "C4",
        "sizes above floor(N/2) are rejected unless the complement flag is set",
        pass,
        json!({
            "rejected_case": "N=4, m=3",
            "rejection_message": rejection_message,
            "accepted_sizes_n6": accepted,
        }),
    )
}

/// Q_3 = (4/7) Q_1 on random four-qubit pure states, with Q_3 summed
/// directly over triple purities.
fn claim_c5(seed: u64) -> Result<ClaimRecord> {
    let ratio = complement_ratio(4, 1)?;
    let mut max_dev: f64 = 0.0;
    let count = 50;
    for i in 0..count {
        let st = random_state(4, seed.wrapping_add(i))?;
        let singles: Vec<f64> = subsets_of_size(4, 1).map(|s| st.purity(s)).collect();
        let triples: Vec<f64> = subsets_of_size(4, 3).map(|s| st.purity(s)).collect();
        let q1 = q_m(&singles, 4, 1)?;
        let q3 = q_m(&triples, 4, 3)?;
        max_dev = max_dev.max((q3 - ratio.to_f64() * q1).abs());
    }
    let pass = max_dev <= 1e-9;
    Ok(ClaimRecord::new(
        "C5",
        "Q_3 equals (4/7) Q_1 on random four-qubit pure states",
        pass,
        json!({
            "states": count,
            "base_seed": seed,
            "ratio": ratio.to_string(),
            "max_deviation": sig(max_dev),
        }),
    ))
}

/// A six-qubit state with Q_2 = Q_3: the pair measure is not always
/// strictly larger than the triple measure.
fn claim_c6() -> Result<ClaimRecord> {
    let st = gstar_state();
    let pairs: Vec<f64> = subsets_of_size(6, 2).map(|s| st.purity(s)).collect();
    let triples: Vec<f64> = subsets_of_size(6, 3).map(|s| st.purity(s)).collect();
    let q2 = q_m(&pairs, 6, 2)?;
    let q3 = q_m(&triples, 6, 3)?;
    let pass = (q2 - q3).abs() <= 1e-12 && (q2 - 1.0).abs() <= 1e-12;
    Ok(ClaimRecord::new(
        "C6",
        "the six-qubit reference state attains Q_2 = Q_3 exactly",
        pass,
        json!({ "q2": sig(q2), "q3": sig(q3), "gap": sig((q2 - q3).abs()) }),
    ))
}

/// Q_1 >= Q_2 with Q_1 = 1 exactly, for every connected four-qubit graph.
fn claim_c7() -> Result<ClaimRecord> {
    let graphs = enumerate_graphs(4, true, false)?;
    let mut all_q1_one = true;
    let mut all_q2_at_most_one = true;
    let mut any_q2_one = false;
    let mut max_q2 = crate::measures::Ratio::ZERO;
    for g in &graphs {
        let q1_exponents: Vec<u32> = subsets_of_size(4, 1)
            .map(|s| purity_exact(g, s).exponent())
            .collect();
        let q2_exponents: Vec<u32> = subsets_of_size(4, 2)
            .map(|s| purity_exact(g, s).exponent())
            .collect();
        let q1 = q_m_exact(&q1_exponents, 4, 1)?;
        let q2 = q_m_exact(&q2_exponents, 4, 2)?;
        all_q1_one &= q1.is_one();
        all_q2_at_most_one &= q2.at_most_one();
        any_q2_one |= q2.is_one();
        if q2.to_f64() > max_q2.to_f64() {
            max_q2 = q2;
        }
    }
    let pass = graphs.len() == 38 && all_q1_one && all_q2_at_most_one;
    Ok(ClaimRecord::new(
        "C7",
        "Q_1 = 1 >= Q_2 for every connected four-qubit graph state",
        pass,
        json!({
            "graphs": graphs.len(),
            "all_q1_exactly_one": all_q1_one,
            "max_q2": max_q2.to_string(),
            "any_q2_equal_one": any_q2_one,
        }),
    ))
}

/// Reconstruction: some six-vertex graph with all small marginals maximally
/// mixed reproduces the reference state up to local Z signs. Reported as
/// pass or inconclusive, never fail.
fn claim_r1() -> Result<ClaimRecord> {
    let candidates = find_ame_graphs(6)?;
    let candidate_g6: Vec<String> = candidates
        .iter()
        .map(|g| g.to_graph6())
        .collect::<Result<_>>()?;
    match match_gstar(&candidates) {
        Some(m) => {
            let exact_amplitudes = m.state()? == gstar_state();
            Ok(ClaimRecord {
                id: "R1".into(),
                description: "a six-vertex graph reproduces the reference state".into(),
                status: if exact_amplitudes {
                    ClaimStatus::Pass
                } else {
                    ClaimStatus::Inconclusive
                },
                evidence: json!({
                    "candidates": candidate_g6,
                    "matched_graph": m.graph.to_graph6()?,
                    "matched_edges": m.graph.to_edge_list(),
                    "z_flips": m.z_flips.labels(),
                    "negated": m.negated,
                    "amplitudes_reproduced_exactly": exact_amplitudes,
                }),
            })
        }
        None => Ok(ClaimRecord {
            id: "R1".into(),
            description: "a six-vertex graph reproduces the reference state".into(),
            status: ClaimStatus::Inconclusive,
            evidence: json!({
                "candidates": candidate_g6,
                "note": "no candidate matches the reference amplitudes up to local Z signs",
            }),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_suite_passes() {
        let claims = run_claims(1).unwrap();
        assert_eq!(claims.len(), 8);
        let ids: Vec<&str> = claims.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids, ["C1", "C2", "C3", "C4", "C5", "C6", "C7", "R1"]);
        for c in &claims {
            assert_eq!(c.status, ClaimStatus::Pass, "{}: {}", c.id, c.evidence);
        }
        assert!(all_passed(&claims));
    }

    #[test]
    fn reconstruction_reports_the_prism() {
        let r1 = claim_r1().unwrap();
        assert_eq!(r1.status, ClaimStatus::Pass);
        assert_eq!(r1.evidence["z_flips"], serde_json::json!([]));
        assert_eq!(r1.evidence["negated"], serde_json::json!(false));
        assert_eq!(
            r1.evidence["matched_edges"],
            serde_json::json!("6: 1-2, 1-3, 1-6, 2-3, 2-5, 3-4, 4-5, 4-6, 5-6")
        );
    }

    #[test]
    fn suite_is_seed_stable_where_it_should_be() {
        let a = run_claims(7).unwrap();
        let b = run_claims(7).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.evidence, y.evidence);
        }
        // A different seed still passes C5.
        let c = run_claims(123).unwrap();
        assert!(all_passed(&c));
    }
}
