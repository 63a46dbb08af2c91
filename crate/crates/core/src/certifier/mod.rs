//! Signaling-dimension certification.
//!
//! Closed-form membership tests are tried first; the exact LP over the
//! vertices of `C_d` is the fallback. Every bound comes with evidence: a
//! violated Bell inequality below `kappa` and a simulation protocol at it.

pub mod eight_class;
pub mod replacer;

use num_traits::{One, Zero};
use serde_json::json;

use crate::channel::{
    enumerate_vertices, vertex_count, ClassicalChannel, PolytopeSpec, ProtocolTerm, SimulationProtocol,
};
use crate::error::{Error, Result};
use crate::facets::{general_ambiguous_game, normal_form, AmbiguousGameSpec, BellInequality};
use crate::matrix::RatMatrix;
use crate::polyhedral::hull_membership_with;
use crate::rational::{self, Rational};

pub use replacer::{
    erasure_ambiguous_root, erasure_dimension, erasure_lower_bound, replacer_bounds, ReplacerKind, ReplacerSpec,
    RootValue,
};

/// `sum_y max_x P(y|x)`.
pub fn ml_sum(p: &ClassicalChannel) -> Rational {
    (0..p.n_prime()).map(|y| (0..p.n()).map(|x| p.get(y, x)).max().unwrap().clone()).sum()
}

fn row_scores(p: &ClassicalChannel, d: usize) -> Vec<(Rational, Rational)> {
    let share = Rational::new(1.into(), (p.n() - d + 1).into());
    (0..p.n_prime())
        .map(|y| {
            let row = p.entries().row(y);
            let a = row.iter().max().unwrap().clone();
            let b = row.iter().sum::<Rational>() * &share;
            (a, b)
        })
        .collect()
}

/// Rows sorted by `a - b` descending, ties by row index.
fn ambiguous_order(scores: &[(Rational, Rational)]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&i, &j| {
        let di = &scores[i].0 - &scores[i].1;
        let dj = &scores[j].0 - &scores[j].1;
        dj.cmp(&di)
    });
    order
}

fn check_ambiguous_args(p: &ClassicalChannel, k: usize, d: usize) -> Result<()> {
    if k > p.n_prime() || d == 0 || d > p.n().min(p.n_prime()) {
        return Err(Error::ParameterOutOfRange(format!(
            "need 0 <= k <= n' and 1 <= d <= min(n, n') (got k={k}, d={d}, n={}, n'={})",
            p.n(),
            p.n_prime()
        )));
    }
    Ok(())
}

/// Largest score of any ambiguous guessing game with `k` guessing rows,
/// found by sorting rows on the gain from guessing over declaring ambiguity.
pub fn ambiguous_score_max(p: &ClassicalChannel, k: usize, d: usize) -> Result<Rational> {
    check_ambiguous_args(p, k, d)?;
    let scores = row_scores(p, d);
    let order = ambiguous_order(&scores);
    Ok(order
        .iter()
        .enumerate()
        .map(|(rank, &y)| if rank < k { scores[y].0.clone() } else { scores[y].1.clone() })
        .sum())
}

/// The game achieving [`ambiguous_score_max`].
pub fn best_ambiguous_game(p: &ClassicalChannel, k: usize, d: usize) -> Result<BellInequality> {
    check_ambiguous_args(p, k, d)?;
    let order = ambiguous_order(&row_scores(p, d));
    let mut guesses = vec![None; p.n_prime()];
    for &y in &order[..k] {
        let row = p.entries().row(y);
        let max = row.iter().max().unwrap();
        guesses[y] = row.iter().position(|v| v == max);
    }
    general_ambiguous_game(&AmbiguousGameSpec { n: p.n(), n_prime: p.n_prime(), d, guesses })
}

/// Maximum over all row orders, with the first `k` rows guessing. Exhaustive.
pub fn ambiguous_score_brute_force(p: &ClassicalChannel, k: usize, d: usize) -> Result<Rational> {
    use itertools::Itertools;
    check_ambiguous_args(p, k, d)?;
    let scores = row_scores(p, d);
    Ok((0..p.n_prime())
        .permutations(p.n_prime())
        .map(|perm| {
            perm.iter()
                .enumerate()
                .map(|(i, &y)| if i < k { scores[y].0.clone() } else { scores[y].1.clone() })
                .sum::<Rational>()
        })
        .max()
        .unwrap())
}

fn columns_equal(p: &ClassicalChannel) -> bool {
    (1..p.n()).all(|x| (0..p.n_prime()).all(|y| p.get(y, x) == p.get(y, 0)))
}

/// Exact membership of `p` in `C_d` where a closed form is known: `d >= min(n, n')`,
/// `d = 1`, `d = n' - 1`, `d = n - 1 <= n' - 1`, and `(n', d) = (4, 2)`.
pub fn membership_complete(p: &ClassicalChannel, d: usize) -> Result<bool> {
    let (n, np) = (p.n(), p.n_prime());
    if d == 0 {
        return Err(Error::ParameterOutOfRange("d must be positive".into()));
    }
    if d >= n.min(np) {
        return Ok(true);
    }
    if d == 1 {
        return Ok(columns_equal(p));
    }
    if d + 1 == np {
        return Ok(ml_sum(p) <= rational::int(d as i64));
    }
    if d + 1 == n && np >= n {
        let bound = rational::int(d as i64);
        for k in n..=np {
            if ambiguous_score_max(p, k, d)? > bound {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    if np == 4 && d == 2 {
        return Ok(eight_class::violation(p).is_none());
    }
    Err(Error::RegimeNotCovered { n, n_prime: np, d })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Member,
    NonMember,
    Unknown,
}

#[derive(Clone, Debug)]
pub struct TraceEntry {
    pub d: usize,
    pub verdict: Verdict,
    pub method: String,
}

#[derive(Clone, Debug)]
pub struct CertificationResult {
    pub channel: ClassicalChannel,
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
    pub violated: Option<BellInequality>,
    pub protocol: Option<SimulationProtocol>,
    pub method_trace: Vec<TraceEntry>,
}

impl CertificationResult {
    pub fn to_json(&self) -> serde_json::Value {
        let trace: Vec<serde_json::Value> = self
            .method_trace
            .iter()
            .map(|t| {
                json!({
                    "d": t.d,
                    "verdict": match t.verdict {
                        Verdict::Member => "member",
                        Verdict::NonMember => "non-member",
                        Verdict::Unknown => "unknown",
                    },
                    "method": t.method,
                })
            })
            .collect();
        let mut out = json!({
            "channel": self.channel.to_json(),
            "kappa_lower": self.lower,
            "kappa_upper": self.upper,
            "exact": self.exact,
            "method_trace": trace,
        });
        if let Some(v) = &self.violated {
            out["violated_inequality"] = v.to_json();
        }
        if let Some(p) = &self.protocol {
            out["protocol_witness"] = p.to_json();
        }
        out
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CertifyOptions {
    /// Largest vertex count for which the LP is attempted.
    pub vertex_cap: u64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self { vertex_cap: 100_000 }
    }
}

struct Step {
    verdict: Verdict,
    method: &'static str,
    certificate: Option<BellInequality>,
    protocol: Option<SimulationProtocol>,
}

fn single_term(d: usize, encoder: ClassicalChannel, decoder: ClassicalChannel) -> SimulationProtocol {
    SimulationProtocol { d, terms: vec![ProtocolTerm { weight: Rational::one(), encoder, decoder }] }
}

fn ml_certificate(p: &ClassicalChannel, d: usize) -> BellInequality {
    let mut g = RatMatrix::zeros(p.n_prime(), p.n());
    for y in 0..p.n_prime() {
        let row = p.entries().row(y);
        let max = row.iter().max().unwrap();
        let x = row.iter().position(|v| v == max).unwrap();
        g[(y, x)] = Rational::one();
    }
    BellInequality::new(g, rational::int(d as i64)).with_family("ml-argmax")
}

/// `P(y|x1) - P(y|x2) <= 0`, valid for constant channels.
fn column_difference(p: &ClassicalChannel) -> Option<BellInequality> {
    for x in 1..p.n() {
        for y in 0..p.n_prime() {
            if p.get(y, x) != p.get(y, 0) {
                let (hi, lo) = if p.get(y, x) > p.get(y, 0) { (x, 0) } else { (0, x) };
                let mut g = RatMatrix::zeros(p.n_prime(), p.n());
                g[(y, hi)] = Rational::one();
                g[(y, lo)] = -Rational::one();
                return Some(normal_form(&BellInequality::new(g, Rational::zero())).with_family("column-difference"));
            }
        }
    }
    None
}

fn decide(p: &ClassicalChannel, d: usize, options: &CertifyOptions) -> Result<Step> {
    let (n, np) = (p.n(), p.n_prime());
    let bound = rational::int(d as i64);
    if d >= n.min(np) {
        let protocol = if n <= np {
            single_term(d, ClassicalChannel::identity(n), p.clone())
        } else {
            single_term(d, p.clone(), ClassicalChannel::identity(np))
        };
        return Ok(Step {
            verdict: Verdict::Member,
            method: "trivial-bound",
            certificate: None,
            protocol: Some(protocol),
        });
    }
    if d == 1 {
        if columns_equal(p) {
            let encoder = ClassicalChannel::new(RatMatrix::from_vec(1, n, vec![Rational::one(); n]))?;
            let decoder = ClassicalChannel::new(RatMatrix::from_vec(np, 1, p.entries().column(0)))?;
            return Ok(Step {
                verdict: Verdict::Member,
                method: "constant-columns",
                certificate: None,
                protocol: Some(single_term(1, encoder, decoder)),
            });
        }
        return Ok(Step {
            verdict: Verdict::NonMember,
            method: "constant-columns",
            certificate: column_difference(p),
            protocol: None,
        });
    }
    if ml_sum(p) > bound {
        return Ok(Step {
            verdict: Verdict::NonMember,
            method: "ml-sum",
            certificate: Some(ml_certificate(p, d)),
            protocol: None,
        });
    }
    for k in 0..=np {
        if ambiguous_score_max(p, k, d)? > bound {
            return Ok(Step {
                verdict: Verdict::NonMember,
                method: "ambiguous-game",
                certificate: Some(best_ambiguous_game(p, k, d)?),
                protocol: None,
            });
        }
    }
    let spec = PolytopeSpec::new(n, np, d)?;
    let within_cap = vertex_count(&spec) <= options.vertex_cap.into();
    let closed = if np == 4 && d == 2 {
        Some(match eight_class::violation(p) {
            Some(v) => {
                return Ok(Step {
                    verdict: Verdict::NonMember,
                    method: "generator-facets",
                    certificate: Some(v),
                    protocol: None,
                })
            }
            None => "generator-facets",
        })
    } else if d + 1 == np || (d + 1 == n && np >= n) {
        // the ml-sum and ambiguous tests above are complete here
        Some("complete-characterization")
    } else {
        None
    };
    if !within_cap {
        return Ok(match closed {
            Some(method) => Step { verdict: Verdict::Member, method, certificate: None, protocol: None },
            None => Step { verdict: Verdict::Unknown, method: "vertex-cap", certificate: None, protocol: None },
        });
    }
    let result = hull_membership_with(p, &spec, &enumerate_vertices(&spec))?;
    let method = closed.unwrap_or("lp");
    if closed.is_some() && !result.member {
        return Err(Error::ParameterOutOfRange(format!("closed form and LP disagree at d={d}; this indicates a bug")));
    }
    Ok(Step {
        verdict: if result.member { Verdict::Member } else { Verdict::NonMember },
        method,
        certificate: result.certificate,
        protocol: result.witness,
    })
}

/// `kappa^{n -> n'}(P)`: the smallest `d` with `P` in `C_d`.
pub fn certify_signaling_dimension(p: &ClassicalChannel) -> Result<CertificationResult> {
    certify_with(p, &CertifyOptions::default())
}

pub fn certify_with(p: &ClassicalChannel, options: &CertifyOptions) -> Result<CertificationResult> {
    let top = p.n().min(p.n_prime());
    let mut trace = Vec::new();
    let mut lower = 1;
    let mut violated = None;
    let mut upper = top;
    let mut protocol = None;
    for d in 1..=top {
        let step = decide(p, d, options)?;
        trace.push(TraceEntry { d, verdict: step.verdict, method: step.method.to_string() });
        match step.verdict {
            Verdict::NonMember => {
                lower = d + 1;
                violated = step.certificate;
            }
            Verdict::Member => {
                upper = d;
                protocol = step.protocol;
                break;
            }
            Verdict::Unknown => {}
        }
    }
    Ok(CertificationResult {
        channel: p.clone(),
        lower,
        upper,
        exact: lower == upper,
        violated,
        protocol,
        method_trace: trace,
    })
}
