//! Classical channels, deterministic vertices and simulation protocols.
//!
//! A channel from `n` inputs to `n'` outputs is an `n' x n` column-stochastic
//! matrix with `entries[(y, x)] = P(y|x)`. The signaling polytope `C_d` is the
//! convex hull of the 0/1 channels that use at most `d` distinct outputs.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::rational::{self, Rational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ClassicalChannel {
    entries: RatMatrix,
}

#[derive(Serialize, Deserialize)]
struct ChannelWire {
    n: usize,
    n_prime: usize,
    entries: Vec<Vec<String>>,
}

impl ClassicalChannel {
    /// Validates that every entry is non-negative and every column sums to one.
    pub fn new(entries: RatMatrix) -> Result<Self> {
        for x in 0..entries.cols() {
            let mut sum = Rational::zero();
            for y in 0..entries.rows() {
                let v = &entries[(y, x)];
                if v.is_negative() {
                    return Err(Error::NegativeEntry { row: y, column: x, value: v.to_string() });
                }
                sum += v;
            }
            if !sum.is_one() {
                return Err(Error::NonStochastic { column: x, sum: sum.to_string() });
            }
        }
        Ok(Self { entries })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        Self::new(RatMatrix::from_rows(rows)?)
    }

    pub fn identity(n: usize) -> Self {
        Self { entries: RatMatrix::identity(n) }
    }

    /// Every input maps to the uniform distribution on `n_prime` outputs.
    pub fn uniform(n: usize, n_prime: usize) -> Self {
        let p = Rational::new(1.into(), n_prime.into());
        Self { entries: RatMatrix::from_vec(n_prime, n, vec![p; n * n_prime]) }
    }

    /// Number of inputs.
    pub fn n(&self) -> usize {
        self.entries.cols()
    }

    /// Number of outputs.
    pub fn n_prime(&self) -> usize {
        self.entries.rows()
    }

    pub fn entries(&self) -> &RatMatrix {
        &self.entries
    }

    pub fn get(&self, y: usize, x: usize) -> &Rational {
        &self.entries[(y, x)]
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ChannelWire { n: self.n(), n_prime: self.n_prime(), entries: self.entries.to_strings() })
            .expect("channel serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let wire: ChannelWire = serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let entries = RatMatrix::from_strings(&wire.entries)?;
        if entries.rows() != wire.n_prime || entries.cols() != wire.n {
            return Err(Error::DimensionMismatch(format!(
                "declared {}x{} but entries are {}x{}",
                wire.n_prime,
                wire.n,
                entries.rows(),
                entries.cols()
            )));
        }
        Self::new(entries)
    }
}

impl std::fmt::Debug for ClassicalChannel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ClassicalChannel{:?}", self.entries)
    }
}

pub fn new_channel(entries: RatMatrix) -> Result<ClassicalChannel> {
    ClassicalChannel::new(entries)
}

/// Triple `(n, n', d)` naming the polytope `C_d^{n -> n'}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PolytopeSpec {
    pub n: usize,
    pub n_prime: usize,
    pub d: usize,
}

impl PolytopeSpec {
    pub fn new(n: usize, n_prime: usize, d: usize) -> Result<Self> {
        if n == 0 || n_prime == 0 {
            return Err(Error::ParameterOutOfRange(format!("n={n} and n'={n_prime} must be positive")));
        }
        if d == 0 || d > n.min(n_prime) {
            return Err(Error::ParameterOutOfRange(format!("d={d} must lie in 1..={}", n.min(n_prime))));
        }
        Ok(Self { n, n_prime, d })
    }

    /// Dimension of the ambient space of channels (`n * n'` coordinates).
    pub fn coordinates(&self) -> usize {
        self.n * self.n_prime
    }

    /// Affine dimension of the polytope.
    pub fn dimension(&self) -> usize {
        if self.d == 1 {
            self.n_prime - 1
        } else {
            self.n * (self.n_prime - 1)
        }
    }
}

/// A 0/1 channel stored as its input-to-output assignment.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeterministicVertex {
    assignment: Vec<usize>,
    n_prime: usize,
}

impl DeterministicVertex {
    pub fn new(assignment: Vec<usize>, n_prime: usize) -> Result<Self> {
        if assignment.is_empty() {
            return Err(Error::DimensionMismatch("vertex has no inputs".into()));
        }
        if let Some(&y) = assignment.iter().find(|&&y| y >= n_prime) {
            return Err(Error::DimensionMismatch(format!("output {y} out of range for n'={n_prime}")));
        }
        Ok(Self { assignment, n_prime })
    }

    /// Reads a 0/1 column-stochastic matrix back into an assignment.
    pub fn from_channel(p: &ClassicalChannel) -> Option<Self> {
        let mut assignment = Vec::with_capacity(p.n());
        for x in 0..p.n() {
            let y = (0..p.n_prime()).find(|&y| p.get(y, x).is_one())?;
            assignment.push(y);
        }
        Some(Self { assignment, n_prime: p.n_prime() })
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn n(&self) -> usize {
        self.assignment.len()
    }

    pub fn n_prime(&self) -> usize {
        self.n_prime
    }

    /// Sorted list of the outputs actually used.
    pub fn used_outputs(&self) -> Vec<usize> {
        let mut used = self.assignment.clone();
        used.sort_unstable();
        used.dedup();
        used
    }

    pub fn rank(&self) -> usize {
        self.used_outputs().len()
    }

    pub fn to_channel(&self) -> ClassicalChannel {
        let mut m = RatMatrix::zeros(self.n_prime, self.n());
        for (x, &y) in self.assignment.iter().enumerate() {
            m[(y, x)] = Rational::one();
        }
        ClassicalChannel { entries: m }
    }

    /// Row-major 0/1 flattening, the coordinate order used by the polyhedral code.
    pub fn flat_support(&self) -> Vec<usize> {
        let n = self.n();
        self.assignment.iter().enumerate().map(|(x, &y)| y * n + x).collect()
    }
}

/// All vertices of `C_d`, in lexicographic order of their assignments.
pub fn enumerate_vertices(spec: &PolytopeSpec) -> Vec<DeterministicVertex> {
    let mut out = Vec::new();
    let mut assignment = vec![0usize; spec.n];
    let mut seen = vec![0usize; spec.n_prime];
    seen[0] = spec.n;
    loop {
        if seen.iter().filter(|&&c| c > 0).count() <= spec.d {
            out.push(DeterministicVertex { assignment: assignment.clone(), n_prime: spec.n_prime });
        }
        // odometer increment with the last input as the fastest digit
        let mut pos = spec.n;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            seen[assignment[pos]] -= 1;
            if assignment[pos] + 1 < spec.n_prime {
                assignment[pos] += 1;
                seen[assignment[pos]] += 1;
                break;
            }
            assignment[pos] = 0;
            seen[0] += 1;
        }
    }
}

/// `sum_{c=1}^{d} S(n,c) * C(n',c) * c!`.
pub fn vertex_count(spec: &PolytopeSpec) -> BigUint {
    let stirling = stirling_second_kind_row(spec.n);
    let mut total = BigUint::zero();
    let mut falling = BigUint::one();
    for (c, s) in stirling.iter().enumerate().take(spec.d + 1).skip(1) {
        // C(n',c) * c! is the falling factorial n'(n'-1)...(n'-c+1)
        falling *= BigUint::from(spec.n_prime + 1 - c);
        total += s * &falling;
    }
    total
}

fn stirling_second_kind_row(n: usize) -> Vec<BigUint> {
    let mut row = vec![BigUint::one()];
    for i in 1..=n {
        let mut next = vec![BigUint::zero(); i + 1];
        for k in 1..=i {
            let stay = if k < row.len() { &row[k] * BigUint::from(k) } else { BigUint::zero() };
            next[k] = stay + &row[k - 1];
        }
        row = next;
    }
    row
}

/// `post * mid * pre` for channels `pre: X' -> X`, `mid: X -> Y`, `post: Y -> Y'`.
pub fn compose_processing(
    post: &ClassicalChannel,
    mid: &ClassicalChannel,
    pre: &ClassicalChannel,
) -> Result<ClassicalChannel> {
    let m = post.entries.mul(&mid.entries)?.mul(&pre.entries)?;
    ClassicalChannel::new(m)
}

/// Splits a vertex into a deterministic encoder `n -> d` and decoder `d -> n'`.
pub fn vertex_factorize(v: &DeterministicVertex, d: usize) -> Result<(ClassicalChannel, ClassicalChannel)> {
    let used = v.used_outputs();
    if used.len() > d {
        return Err(Error::TooManyOutputsUsed { used: used.len(), allowed: d });
    }
    let mut encoder = RatMatrix::zeros(d, v.n());
    for (x, y) in v.assignment.iter().enumerate() {
        let m = used.binary_search(y).expect("output is used");
        encoder[(m, x)] = Rational::one();
    }
    let mut decoder = RatMatrix::zeros(v.n_prime, d);
    for m in 0..d {
        // surplus messages decode to the first used output
        let y = used.get(m).copied().unwrap_or(used[0]);
        decoder[(y, m)] = Rational::one();
    }
    Ok((ClassicalChannel { entries: encoder }, ClassicalChannel { entries: decoder }))
}

/// Space-separated row-major 0/1 dump, one vertex per line.
pub fn vertex_dump(vertices: &[DeterministicVertex]) -> String {
    let mut out = String::new();
    for v in vertices {
        let mut flat = vec![0u8; v.n() * v.n_prime()];
        for i in v.flat_support() {
            flat[i] = 1;
        }
        let line: Vec<String> = flat.iter().map(|b| b.to_string()).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProtocolTerm {
    pub weight: Rational,
    pub encoder: ClassicalChannel,
    pub decoder: ClassicalChannel,
}

/// Shared-randomness mixture of encoder/decoder pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct SimulationProtocol {
    pub d: usize,
    pub terms: Vec<ProtocolTerm>,
}

impl SimulationProtocol {
    pub fn from_vertices(weighted: &[(Rational, DeterministicVertex)], d: usize) -> Result<Self> {
        let terms = weighted
            .iter()
            .map(|(w, v)| {
                let (encoder, decoder) = vertex_factorize(v, d)?;
                Ok(ProtocolTerm { weight: w.clone(), encoder, decoder })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { d, terms })
    }

    /// `sum_l q_l R_l T_l`, validated as a channel.
    pub fn reconstruct(&self) -> Result<ClassicalChannel> {
        let first = self.terms.first().ok_or_else(|| Error::DimensionMismatch("protocol has no terms".into()))?;
        let mut acc = RatMatrix::zeros(first.decoder.n_prime(), first.encoder.n());
        let mut total = Rational::zero();
        for term in &self.terms {
            if term.weight.is_negative() {
                return Err(Error::NegativeEntry { row: 0, column: 0, value: term.weight.to_string() });
            }
            total += &term.weight;
            let prod = term.decoder.entries.mul(&term.encoder.entries)?;
            if prod.rows() != acc.rows() || prod.cols() != acc.cols() {
                return Err(Error::DimensionMismatch("protocol terms disagree in shape".into()));
            }
            for y in 0..acc.rows() {
                for x in 0..acc.cols() {
                    if !prod[(y, x)].is_zero() {
                        acc[(y, x)] += &term.weight * &prod[(y, x)];
                    }
                }
            }
        }
        if !total.is_one() {
            return Err(Error::NonStochastic { column: 0, sum: total.to_string() });
        }
        ClassicalChannel::new(acc)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|t| {
                serde_json::json!({
                    "weight": rational::to_string(&t.weight),
                    "encoder": t.encoder.entries.to_strings(),
                    "decoder": t.decoder.entries.to_strings(),
                })
            })
            .collect();
        serde_json::json!({ "d": self.d, "terms": terms })
    }
}
