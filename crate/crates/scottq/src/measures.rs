//! The averaged bipartite entanglement measure over all size-m marginals:
//!
//!   Q_m = C(N,m)^(-1) * sum over |S|=m of (2^m/(2^m-1)) * (1 - Tr[rho_S^2])
//!
//! valid for m up to floor(N/2). Larger m is redundant for pure states:
//! Q_{N-m} is proportional to Q_m with an exact rational factor, so those
//! sizes are computable only behind an explicit opt-in flag and are always
//! annotated with the proportionality.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::stab::{purity_exact, DyadicPurity};
use crate::state::{graph_state, PureState};
use crate::subset::{binomial, subsets_of_size, SubsetMask};

/// Purities may stray this far outside [0, 1] before being rejected.
pub const PURITY_CLAMP_TOL: f64 = 1e-9;
/// Maximum allowed dense-vs-exact purity discrepancy before the run aborts.
pub const ENGINE_AGREEMENT_TOL: f64 = 1e-10;
/// Cap on the total number of subsets a single profile may sweep.
pub const MAX_SWEEP_SUBSETS: u64 = 1_000_000;

/// Non-negative exact rational, always stored reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    num: u128,
    den: u128,
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Ratio {
    pub const ONE: Ratio = Ratio { num: 1, den: 1 };
    pub const ZERO: Ratio = Ratio { num: 0, den: 1 };

    pub fn new(num: u128, den: u128) -> Ratio {
        assert!(den != 0, "zero denominator");
        if num == 0 {
            return Ratio::ZERO;
        }
        let g = gcd(num, den);
        Ratio {
            num: num / g,
            den: den / g,
        }
    }

    pub fn num(&self) -> u128 {
        self.num
    }

    pub fn den(&self) -> u128 {
        self.den
    }

    pub fn checked_mul(&self, other: &Ratio) -> Option<Ratio> {
        // Cross-reduce first so intermediate products stay small.
        let g1 = gcd(self.num.max(1), other.den);
        let g2 = gcd(other.num.max(1), self.den);
        let num = (self.num / g1).checked_mul(other.num / g2)?;
        let den = (self.den / g2).checked_mul(other.den / g1)?;
        Some(Ratio::new(num, den))
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn at_most_one(&self) -> bool {
        self.num <= self.den
    }
}

impl std::fmt::Display for Ratio {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Which computation path evaluates purities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    Dense,
    Stabilizer,
    Both,
}

impl std::fmt::Display for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Engine::Dense => "dense",
            Engine::Stabilizer => "stabilizer",
            Engine::Both => "both",
        })
    }
}

impl std::str::FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Engine> {
        match s {
            "dense" => Ok(Engine::Dense),
            "stabilizer" => Ok(Engine::Stabilizer),
            "both" => Ok(Engine::Both),
            other => Err(Error::Syntax(format!(
                "unknown engine {other:?}; expected dense, stabilizer, or both"
            ))),
        }
    }
}

/// Outcome of the subset-size validity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MAuthorization {
    /// m is within the window 1..=floor(n/2).
    Direct,
    /// m exceeds the window but was allowed; Q_m = ratio * Q_partner holds
    /// for every pure state.
    ViaComplement { partner: usize, ratio: Ratio },
}

/// Enforce the validity window m <= floor(n/2). Sizes above the window are
/// authorized only with `allow_complement`, and come tagged with the exact
/// proportionality to the complementary size.
pub fn validate_m(n: usize, m: usize, allow_complement: bool) -> Result<MAuthorization> {
    if n < 2 {
        return Err(Error::EmptyMRange(n));
    }
    if m < 1 || m >= n {
        return Err(Error::MOutOfRange { n, m });
    }
    if m <= n / 2 {
        return Ok(MAuthorization::Direct);
    }
    if allow_complement {
        Ok(MAuthorization::ViaComplement {
            partner: n - m,
            ratio: complement_ratio(n, n - m)?,
        })
    } else {
        Err(Error::MOutOfRange { n, m })
    }
}

/// Exact factor Q_{n-m} / Q_m, valid for every n-qubit pure state:
/// the size-m and size-(n-m) marginal purities coincide pairwise, so the
/// measures differ only by their normalization prefactors 2^k/(2^k - 1).
pub fn complement_ratio(n: usize, m: usize) -> Result<Ratio> {
    if n < 2 {
        return Err(Error::EmptyMRange(n));
    }
    if m < 1 || m >= n {
        return Err(Error::MOutOfRange { n, m });
    }
    let k = n - m;
    let num = (1u128 << k) * ((1u128 << m) - 1);
    let den = ((1u128 << k) - 1) * (1u128 << m);
    Ok(Ratio::new(num, den))
}

/// Q_m from the purities of all C(n,m) size-m subsets.
/// Purities within 1e-9 of [0,1] are clamped; larger violations are errors.
pub fn q_m(purities: &[f64], n: usize, m: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::EmptyMRange(n));
    }
    if m < 1 || m >= n {
        return Err(Error::MOutOfRange { n, m });
    }
    let want = binomial(n, m);
    if purities.len() as u64 != want {
        return Err(Error::LengthMismatch {
            n,
            m,
            want,
            got: purities.len(),
        });
    }
    let mut deficit_sum = 0.0;
    for &p in purities {
        if !(-PURITY_CLAMP_TOL..=1.0 + PURITY_CLAMP_TOL).contains(&p) {
            return Err(Error::PurityOutOfRange(p));
        }
        deficit_sum += 1.0 - p.clamp(0.0, 1.0);
    }
    let prefactor = f64::powi(2.0, m as i32) / (f64::powi(2.0, m as i32) - 1.0);
    Ok(prefactor * deficit_sum / want as f64)
}

/// Q_m as an exact rational, from per-subset purity exponents
/// (purity of subset S = 2^(-exponents[S])).
pub fn q_m_exact(exponents: &[u32], n: usize, m: usize) -> Result<Ratio> {
    if n < 2 {
        return Err(Error::EmptyMRange(n));
    }
    if m < 1 || m >= n {
        return Err(Error::MOutOfRange { n, m });
    }
    let count = binomial(n, m);
    if exponents.len() as u64 != count {
        return Err(Error::LengthMismatch {
            n,
            m,
            want: count,
            got: exponents.len(),
        });
    }
    let overflow = || Error::Overflow("exact measure arithmetic exceeded 128 bits".into());
    let k_max = exponents.iter().copied().max().unwrap_or(0);
    let mut purity_sum: u128 = 0; // in units of 2^(-k_max)
    for &k in exponents {
        purity_sum = purity_sum
            .checked_add(1u128 << (k_max - k))
            .ok_or_else(overflow)?;
    }
    let scale = (count as u128)
        .checked_mul(1u128 << k_max)
        .ok_or_else(overflow)?;
    let deficit = Ratio::new(scale - purity_sum, scale);
    let prefactor = Ratio::new(1u128 << m, (1u128 << m) - 1);
    prefactor.checked_mul(&deficit).ok_or_else(overflow)
}

/// One evaluated subset size.
#[derive(Debug, Clone)]
pub struct QmValue {
    pub m: usize,
    pub value: f64,
    pub exact: Option<Ratio>,
    /// Set when m exceeds floor(n/2): the complementary size this value is
    /// proportional to.
    pub complement_partner: Option<usize>,
}

/// One evaluated subset.
#[derive(Debug, Clone)]
pub struct PurityRecord {
    pub subset: SubsetMask,
    pub value: f64,
    pub exact: Option<DyadicPurity>,
}

/// What to evaluate and how.
#[derive(Debug, Clone)]
pub struct QmRequest {
    /// Subset sizes; empty means every size in 1..=floor(n/2).
    pub ms: Vec<usize>,
    pub allow_complement: bool,
    pub engine: Engine,
}

impl QmRequest {
    pub fn new(ms: Vec<usize>, allow_complement: bool, engine: Engine) -> QmRequest {
        QmRequest {
            ms,
            allow_complement,
            engine,
        }
    }
}

/// Full evaluation result for one input.
#[derive(Debug, Clone)]
pub struct QmReport {
    pub n: usize,
    pub engine: Engine,
    pub graph6: Option<String>,
    pub values: Vec<QmValue>,
    pub purities: Vec<PurityRecord>,
    pub complement_note: Option<String>,
    /// Largest dense-vs-exact purity gap seen (engine=both only).
    pub max_engine_gap: Option<f64>,
}

/// Input to a profile evaluation: a graph (all engines) or a raw state
/// (dense only).
#[derive(Debug, Clone, Copy)]
pub enum ProfileSource<'a> {
    Graph(&'a Graph),
    State(&'a PureState),
}

/// Evaluate Q_m for every requested size, with per-subset purities.
/// With engine=both every subset is computed on both paths and any
/// disagreement beyond 1e-10 aborts the run.
pub fn q_profile(src: ProfileSource<'_>, req: &QmRequest) -> Result<QmReport> {
    let (graph, dense_state, n) = match src {
        ProfileSource::Graph(g) => (Some(g), None, g.vertex_count()),
        ProfileSource::State(st) => (None, Some(st.clone()), st.qubit_count()),
    };
    if graph.is_none() && req.engine != Engine::Dense {
        return Err(Error::EngineMismatch);
    }
    if n < 2 {
        return Err(Error::EmptyMRange(n));
    }

    let mut ms: Vec<usize> = if req.ms.is_empty() {
        (1..=n / 2).collect()
    } else {
        req.ms.clone()
    };
    ms.sort_unstable();
    ms.dedup();

    let mut auths = Vec::with_capacity(ms.len());
    let mut total_subsets = 0u64;
    for &m in &ms {
        auths.push(validate_m(n, m, req.allow_complement)?);
        total_subsets = total_subsets.saturating_add(binomial(n, m));
    }
    if total_subsets > MAX_SWEEP_SUBSETS {
        return Err(Error::Overflow(format!(
            "sweep would visit {total_subsets} subsets (limit {MAX_SWEEP_SUBSETS}); request fewer sizes"
        )));
    }

    let dense_state = match (req.engine, graph) {
        (Engine::Dense | Engine::Both, Some(g)) => Some(graph_state(g)?),
        _ => dense_state,
    };

    let mut purities = Vec::with_capacity(total_subsets as usize);
    let mut values = Vec::with_capacity(ms.len());
    let mut max_gap: f64 = 0.0;
    for (&m, auth) in ms.iter().zip(&auths) {
        let mut floats = Vec::with_capacity(binomial(n, m) as usize);
        let mut exponents = Vec::new();
        for s in subsets_of_size(n, m) {
            let exact = match (req.engine, graph) {
                (Engine::Stabilizer | Engine::Both, Some(g)) => Some(purity_exact(g, s)),
                _ => None,
            };
            let value = match req.engine {
                Engine::Dense | Engine::Both => {
                    let p = dense_state
                        .as_ref()
                        .expect("dense path has a state")
                        .purity(s);
                    if let Some(e) = exact {
                        let gap = (p - e.value()).abs();
                        if gap > ENGINE_AGREEMENT_TOL {
                            return Err(Error::EngineDisagreement(format!(
                                "subset {s}: dense purity {p} vs exact {e} (gap {gap:e})"
                            )));
                        }
                        max_gap = max_gap.max(gap);
                    }
                    p
                }
                Engine::Stabilizer => exact.expect("stabilizer path has a graph").value(),
            };
            if let Some(e) = exact {
                exponents.push(e.exponent());
            }
            floats.push(value);
            purities.push(PurityRecord {
                subset: s,
                value,
                exact,
            });
        }
        let value = q_m(&floats, n, m)?;
        let exact = if exponents.is_empty() {
            None
        } else {
            Some(q_m_exact(&exponents, n, m)?)
        };
        let complement_partner = match auth {
            MAuthorization::Direct => None,
            MAuthorization::ViaComplement { partner, .. } => Some(*partner),
        };
        values.push(QmValue {
            m,
            value,
            exact,
            complement_partner,
        });
    }

    let complement_note = build_complement_note(n, &ms, &auths);
    Ok(QmReport {
        n,
        engine: req.engine,
        graph6: graph.and_then(|g| g.to_graph6().ok()),
        values,
        purities,
        complement_note,
        max_engine_gap: if req.engine == Engine::Both {
            Some(max_gap)
        } else {
            None
        },
    })
}

fn build_complement_note(n: usize, ms: &[usize], auths: &[MAuthorization]) -> Option<String> {
    let relations: Vec<String> = ms
        .iter()
        .zip(auths)
        .filter_map(|(&m, auth)| match auth {
            MAuthorization::Direct => None,
            MAuthorization::ViaComplement { partner, ratio } => {
                Some(format!("Q_{m} = {ratio} * Q_{partner}"))
            }
        })
        .collect();
    if relations.is_empty() {
        None
    } else {
        Some(format!(
            "sizes above floor({n}/2) are redundant for pure states: {}",
            relations.join("; ")
        ))
    }
}

/// Average single-qubit mixedness: Q_1, the m=1 case of the measure.
pub fn meyer_wallach(st: &PureState) -> Result<f64> {
    let n = st.qubit_count();
    if n < 2 {
        return Err(Error::EmptyMRange(n));
    }
    let purities: Vec<f64> = subsets_of_size(n, 1).map(|s| st.purity(s)).collect();
    q_m(&purities, n, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{gstar_state, plus_state};
    use approx::assert_abs_diff_eq;

    #[test]
    fn ratio_basics() {
        assert_eq!(Ratio::new(8, 14), Ratio::new(4, 7));
        assert_eq!(format!("{}", Ratio::new(4, 7)), "4/7");
        assert_eq!(format!("{}", Ratio::new(3, 3)), "1");
        assert_eq!(format!("{}", Ratio::ZERO), "0");
        assert!(Ratio::new(2, 2).is_one());
        assert!(Ratio::new(2, 3).at_most_one());
        assert!(!Ratio::new(3, 2).at_most_one());
        assert_abs_diff_eq!(Ratio::new(4, 7).to_f64(), 4.0 / 7.0, epsilon = 1e-15);
        let p = Ratio::new(2, 3).checked_mul(&Ratio::new(3, 4)).unwrap();
        assert_eq!(p, Ratio::new(1, 2));
        assert!(Ratio::new(u128::MAX, 1)
            .checked_mul(&Ratio::new(u128::MAX, 1))
            .is_none());
    }

    #[test]
    fn engine_parsing() {
        assert_eq!("dense".parse::<Engine>().unwrap(), Engine::Dense);
        assert_eq!("stabilizer".parse::<Engine>().unwrap(), Engine::Stabilizer);
        assert_eq!("both".parse::<Engine>().unwrap(), Engine::Both);
        assert!("fast".parse::<Engine>().is_err());
        assert_eq!(Engine::Both.to_string(), "both");
    }

    #[test]
    fn m_window_enforcement() {
        assert_eq!(validate_m(4, 2, false).unwrap(), MAuthorization::Direct);
        assert_eq!(validate_m(6, 3, false).unwrap(), MAuthorization::Direct);
        assert!(matches!(
            validate_m(4, 3, false),
            Err(Error::MOutOfRange { n: 4, m: 3 })
        ));
        assert_eq!(
            validate_m(4, 3, true).unwrap(),
            MAuthorization::ViaComplement {
                partner: 1,
                ratio: Ratio::new(4, 7)
            }
        );
        assert!(matches!(
            validate_m(1, 1, false),
            Err(Error::EmptyMRange(1))
        ));
        assert!(validate_m(4, 0, true).is_err());
        assert!(validate_m(4, 4, true).is_err());
        assert_eq!(Error::MOutOfRange { n: 4, m: 3 }.exit_code(), 2);
    }

    #[test]
    fn complement_ratio_values() {
        assert_eq!(complement_ratio(4, 1).unwrap(), Ratio::new(4, 7));
        assert_eq!(complement_ratio(6, 1).unwrap(), Ratio::new(16, 31));
        assert_eq!(complement_ratio(6, 5).unwrap(), Ratio::new(31, 16));
        assert_eq!(complement_ratio(4, 2).unwrap(), Ratio::ONE);
        assert_eq!(complement_ratio(8, 4).unwrap(), Ratio::ONE);
        assert!(complement_ratio(4, 0).is_err());
    }

    #[test]
    fn q_m_known_values() {
        // Six maximally mixed singles out of six qubits.
        assert_abs_diff_eq!(q_m(&[0.5; 6], 6, 1).unwrap(), 1.0, epsilon = 1e-15);
        // Product state.
        assert_abs_diff_eq!(q_m(&[1.0; 4], 4, 1).unwrap(), 0.0, epsilon = 1e-15);
        // GHZ-class four-qubit state: all pair purities 1/2.
        assert_abs_diff_eq!(q_m(&[0.5; 6], 4, 2).unwrap(), 2.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn q_m_input_validation() {
        assert!(matches!(
            q_m(&[0.5; 5], 6, 1),
            Err(Error::LengthMismatch {
                n: 6,
                m: 1,
                want: 6,
                got: 5
            })
        ));
        assert!(matches!(
            q_m(&[1.5, 0.5, 0.5, 0.5], 4, 1),
            Err(Error::PurityOutOfRange(_))
        ));
        // Slight float noise is clamped.
        let q = q_m(&[1.0 + 5e-10; 4], 4, 1).unwrap();
        assert_abs_diff_eq!(q, 0.0, epsilon = 1e-12);
        assert!(q_m(&[0.5], 4, 0).is_err());
        assert!(q_m(&[0.5; 4], 4, 4).is_err());
    }

    #[test]
    fn q_m_exact_known_values() {
        assert!(q_m_exact(&[1; 6], 6, 1).unwrap().is_one());
        assert_eq!(q_m_exact(&[1; 6], 4, 2).unwrap(), Ratio::new(2, 3));
        assert_eq!(q_m_exact(&[0; 4], 4, 1).unwrap(), Ratio::ZERO);
        assert!(q_m_exact(&[3; 20], 6, 3).unwrap().is_one());
        assert!(q_m_exact(&[1; 5], 6, 1).is_err());
    }

    #[test]
    fn profile_reference_graph_all_engines() {
        let prism =
            Graph::parse_edge_list("6: 1-2, 1-3, 1-6, 2-3, 2-5, 3-4, 4-5, 4-6, 5-6").unwrap();
        for engine in [Engine::Dense, Engine::Stabilizer, Engine::Both] {
            let req = QmRequest::new(vec![1, 2, 3], false, engine);
            let rep = q_profile(ProfileSource::Graph(&prism), &req).unwrap();
            assert_eq!(rep.n, 6);
            assert_eq!(rep.values.len(), 3);
            for v in &rep.values {
                assert_abs_diff_eq!(v.value, 1.0, epsilon = 1e-12);
                if engine != Engine::Dense {
                    assert!(v.exact.as_ref().unwrap().is_one());
                }
            }
            assert_eq!(rep.purities.len(), 6 + 15 + 20);
            if engine == Engine::Both {
                assert!(rep.max_engine_gap.unwrap() < 1e-12);
            }
        }
    }

    #[test]
    fn profile_raw_state_dense_only() {
        let st = gstar_state();
        let req = QmRequest::new(vec![], false, Engine::Dense);
        let rep = q_profile(ProfileSource::State(&st), &req).unwrap();
        assert_eq!(rep.values.len(), 3);
        assert!(rep.graph6.is_none());
        for v in &rep.values {
            assert_abs_diff_eq!(v.value, 1.0, epsilon = 1e-12);
            assert!(v.exact.is_none());
        }

        let req = QmRequest::new(vec![1], false, Engine::Both);
        assert!(matches!(
            q_profile(ProfileSource::State(&st), &req),
            Err(Error::EngineMismatch)
        ));
    }

    #[test]
    fn profile_window_and_complement() {
        let star = Graph::parse_edge_list("4: 1-2, 1-3, 1-4").unwrap();
        let req = QmRequest::new(vec![3], false, Engine::Both);
        let err = q_profile(ProfileSource::Graph(&star), &req).unwrap_err();
        assert_eq!(err.exit_code(), 2);

        let req = QmRequest::new(vec![1, 3], true, Engine::Both);
        let rep = q_profile(ProfileSource::Graph(&star), &req).unwrap();
        let q1 = rep.values[0].value;
        let q3 = rep.values[1].value;
        assert_abs_diff_eq!(q3, q1 * 4.0 / 7.0, epsilon = 1e-12);
        assert_eq!(rep.values[1].complement_partner, Some(1));
        let note = rep.complement_note.unwrap();
        assert!(note.contains("Q_3 = 4/7 * Q_1"), "{note}");
        assert_eq!(rep.values[1].exact.unwrap(), Ratio::new(4, 7));
    }

    #[test]
    fn profile_product_state_is_zero() {
        let empty = Graph::parse_edge_list("4:").unwrap();
        let req = QmRequest::new(vec![1], false, Engine::Both);
        let rep = q_profile(ProfileSource::Graph(&empty), &req).unwrap();
        assert_eq!(rep.values[0].value, 0.0);
        assert!(rep.values[0].exact.as_ref().unwrap() == &Ratio::ZERO);
    }

    #[test]
    fn profile_rejects_oversized_sweeps() {
        let g = Graph::empty(63).unwrap();
        let req = QmRequest::new(vec![31], false, Engine::Stabilizer);
        assert!(matches!(
            q_profile(ProfileSource::Graph(&g), &req),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn meyer_wallach_examples() {
        assert_abs_diff_eq!(meyer_wallach(&gstar_state()).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(
            meyer_wallach(&plus_state(4).unwrap()).unwrap(),
            0.0,
            epsilon = 1e-15
        );
        let edge = Graph::parse_edge_list("2: 1-2").unwrap();
        let st = graph_state(&edge).unwrap();
        assert_abs_diff_eq!(meyer_wallach(&st).unwrap(), 1.0, epsilon = 1e-12);
        assert!(meyer_wallach(&plus_state(1).unwrap()).is_err());
    }
}
