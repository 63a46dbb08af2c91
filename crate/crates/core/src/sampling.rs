//! Seeded random channels and quantum setups.

use nalgebra::DVector;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::channel::{enumerate_vertices, ClassicalChannel, DeterministicVertex, PolytopeSpec};
use crate::matrix::RatMatrix;
use crate::quantum::{CMatrix, DensityMatrix, Povm, QuantumChannel, QuantumSetup, C64};
use crate::rational::{self, Rational};

pub use rand_chacha::ChaCha8Rng;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Columns of random weights in `0..=max_weight`, normalized exactly.
pub fn random_channel<R: Rng>(rng: &mut R, n: usize, n_prime: usize, max_weight: u32) -> ClassicalChannel {
    let mut m = RatMatrix::zeros(n_prime, n);
    for x in 0..n {
        let mut w: Vec<u32> = (0..n_prime).map(|_| rng.gen_range(0..=max_weight)).collect();
        if w.iter().all(|&v| v == 0) {
            w[rng.gen_range(0..n_prime)] = 1;
        }
        let total: u32 = w.iter().sum();
        for (y, &v) in w.iter().enumerate() {
            m[(y, x)] = rational::frac(v as i64, total as i64);
        }
    }
    ClassicalChannel::new(m).expect("normalized columns")
}

/// A random convex combination of `terms` vertices of `C_d`.
pub fn vertex_mixture<R: Rng>(rng: &mut R, vertices: &[DeterministicVertex], terms: usize) -> ClassicalChannel {
    let weights: Vec<i64> = (0..terms).map(|_| rng.gen_range(1..=6)).collect();
    let total: i64 = weights.iter().sum();
    let first = &vertices[0];
    let mut m = RatMatrix::zeros(first.n_prime(), first.n());
    for &w in &weights {
        let v = vertices.choose(rng).unwrap();
        for (x, &y) in v.assignment().iter().enumerate() {
            m[(y, x)] += rational::frac(w, total);
        }
    }
    ClassicalChannel::new(m).expect("convex combination of vertices")
}

/// `t a + (1 - t) b`.
pub fn mix(a: &ClassicalChannel, b: &ClassicalChannel, t: &Rational) -> ClassicalChannel {
    let s = Rational::from_integer(1.into()) - t;
    let mut m = RatMatrix::zeros(a.n_prime(), a.n());
    for y in 0..a.n_prime() {
        for x in 0..a.n() {
            m[(y, x)] = t * a.get(y, x) + &s * b.get(y, x);
        }
    }
    ClassicalChannel::new(m).expect("convex combination of channels")
}

/// Test channels for `spec`, cycling through members of `C_d`, mixtures of a
/// member with a vertex of higher rank, and unconstrained random channels.
pub fn channel_suite<R: Rng>(rng: &mut R, spec: &PolytopeSpec, count: usize) -> Vec<ClassicalChannel> {
    let vertices = enumerate_vertices(spec);
    let wide = PolytopeSpec::new(spec.n, spec.n_prime, spec.n.min(spec.n_prime)).unwrap();
    let mut outside: Vec<DeterministicVertex> =
        enumerate_vertices(&wide).into_iter().filter(|v| v.rank() > spec.d).collect();
    if outside.is_empty() {
        outside = vertices.clone();
    }
    (0..count)
        .map(|i| match i % 4 {
            0 => {
                let terms = rng.gen_range(1..=4);
                vertex_mixture(rng, &vertices, terms)
            }
            1 => {
                let inner = vertex_mixture(rng, &vertices, 3);
                let outer = vertex_mixture(rng, &outside, 1);
                let t = rational::frac(rng.gen_range(1..=8), 8);
                mix(&outer, &inner, &t)
            }
            2 => random_channel(rng, spec.n, spec.n_prime, 4),
            _ => random_channel(rng, spec.n, spec.n_prime, 1),
        })
        .collect()
}

fn gaussian_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
}

pub fn random_pure_state<R: Rng>(rng: &mut R, dim: usize) -> DensityMatrix {
    let v = gaussian_matrix(rng, dim, 1);
    DensityMatrix::pure(&DVector::from_column_slice(v.as_slice())).expect("nonzero Gaussian vector")
}

/// Rank-one POVM from a random isometry into `outcomes >= dim` dimensions.
/// With `outcomes = dim` it is a projective measurement in a random basis.
pub fn random_rank_one_povm<R: Rng>(rng: &mut R, dim: usize, outcomes: usize) -> Povm {
    assert!(outcomes >= dim);
    let q = gaussian_matrix(rng, outcomes, dim).qr().q();
    let elements = (0..outcomes)
        .map(|y| {
            let row = q.row(y).adjoint();
            &row * row.adjoint()
        })
        .collect();
    Povm::new(elements).expect("isometry rows form a POVM")
}

/// Random pure states through the identity channel, measured by a random
/// rank-one POVM with between `d` and `d^2` outcomes.
pub fn random_identity_setup<R: Rng>(rng: &mut R, d: usize) -> QuantumSetup {
    let n = rng.gen_range(2..=d + 2);
    let outcomes = rng.gen_range(d..=d * d);
    let states = (0..n).map(|_| random_pure_state(rng, d)).collect();
    QuantumSetup::new(states, random_rank_one_povm(rng, d, outcomes), QuantumChannel::identity(d))
        .expect("consistent dimensions")
}
