//! Exact polyhedral computations on signaling polytopes.
//!
//! Vertices are flattened row-major (`index = y * n + x`), the same order as
//! the coefficients of a [`BellInequality`]. Affine ranks, facet checks and
//! the double description all run over arbitrary-precision integers; the
//! hull-membership LP runs over rationals.

pub mod dd;
pub mod linalg;
pub mod lp;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::channel::{enumerate_vertices, ClassicalChannel, DeterministicVertex, PolytopeSpec, SimulationProtocol};
use crate::error::{Error, Result};
use crate::facets::{normal_form, BellInequality};
use crate::matrix::RatMatrix;
use crate::rational::{self, Rational};

pub use linalg::affine_rank;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetVerdict {
    pub is_valid: bool,
    pub is_tight: bool,
    pub tight_vertex_count: usize,
    pub affine_rank_of_tight_set: usize,
}

#[derive(Clone, Debug)]
pub struct MembershipResult {
    pub member: bool,
    pub witness: Option<SimulationProtocol>,
    pub certificate: Option<BellInequality>,
}

/// A face of codimension one inside a facet, and the vertices it contains.
#[derive(Clone, Debug)]
pub struct Ridge {
    pub inequality: BellInequality,
    pub tight_vertices: Vec<usize>,
}

/// An inequality scaled to integers, evaluated on 0/1 vertices.
pub(crate) struct IntInequality {
    g: Vec<BigInt>,
    gamma: BigInt,
    small: Option<(Vec<i64>, i64)>,
}

impl IntInequality {
    pub(crate) fn new(ineq: &BellInequality) -> Self {
        let mut values: Vec<&Rational> = ineq.g.as_slice().iter().collect();
        values.push(&ineq.gamma);
        let den = rational::common_denominator(values.iter().copied());
        let g: Vec<BigInt> = ineq.g.as_slice().iter().map(|v| (v * &den).to_integer()).collect();
        let gamma = (&ineq.gamma * &den).to_integer();
        let limit = 1i64 << 40;
        let small = g
            .iter()
            .chain(std::iter::once(&gamma))
            .map(|v| v.to_i64().filter(|x| x.abs() < limit))
            .collect::<Option<Vec<i64>>>()
            .map(|mut v| {
                let gm = v.pop().unwrap();
                (v, gm)
            });
        Self { g, gamma, small }
    }

    /// `gamma - <G, V>` in the scaled units.
    pub(crate) fn slack(&self, v: &DeterministicVertex) -> BigInt {
        let n = v.n();
        match &self.small {
            Some((g, gamma)) => {
                let s: i64 = v.assignment().iter().enumerate().map(|(x, &y)| g[y * n + x]).sum();
                BigInt::from(gamma - s)
            }
            None => {
                let s: BigInt = v.assignment().iter().enumerate().map(|(x, &y)| &self.g[y * n + x]).sum();
                &self.gamma - s
            }
        }
    }

    fn negate(&mut self) {
        for v in self.g.iter_mut() {
            *v = -&*v;
        }
        self.gamma = -&self.gamma;
        if let Some((g, gamma)) = &mut self.small {
            for v in g.iter_mut() {
                *v = -*v;
            }
            *gamma = -*gamma;
        }
    }
}

fn check_dims(ineq: &BellInequality, spec: &PolytopeSpec) -> Result<()> {
    if ineq.n() != spec.n || ineq.n_prime() != spec.n_prime {
        return Err(Error::DimensionMismatch(format!(
            "inequality is {}x{}, polytope expects {}x{}",
            ineq.n_prime(),
            ineq.n(),
            spec.n_prime,
            spec.n
        )));
    }
    Ok(())
}

fn vertex_point(v: &DeterministicVertex) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); v.n() * v.n_prime()];
    for i in v.flat_support() {
        p[i] = BigInt::from(1);
    }
    p
}

const PRIME: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn inv_mod(a: u64) -> u64 {
    let (mut base, mut exp, mut acc) = (a, PRIME - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        exp >>= 1;
    }
    acc
}

/// Affine rank of 0/1 vertices modulo a prime. Never exceeds the rational rank.
fn modular_affine_rank(points: &[&DeterministicVertex], cap: usize) -> usize {
    let Some(first) = points.first() else { return 0 };
    let width = first.n() * first.n_prime();
    let origin = first.flat_support();
    let mut rows: Vec<(usize, Vec<u64>)> = Vec::new();
    for v in &points[1..] {
        if rows.len() >= cap {
            break;
        }
        let mut diff = vec![0u64; width];
        for i in v.flat_support() {
            diff[i] = 1;
        }
        for &i in &origin {
            diff[i] = (diff[i] + PRIME - 1) % PRIME;
        }
        for (p, row) in &rows {
            let f = diff[*p];
            if f == 0 {
                continue;
            }
            for (d, r) in diff.iter_mut().zip(row) {
                if *r != 0 {
                    *d = (*d + PRIME - mul_mod(f, *r)) % PRIME;
                }
            }
        }
        if let Some(p) = diff.iter().position(|&e| e != 0) {
            let inv = inv_mod(diff[p]);
            for d in diff.iter_mut() {
                *d = mul_mod(*d, inv);
            }
            rows.push((p, diff));
        }
    }
    rows.len()
}

/// Exact affine rank of a vertex subset, given that it cannot exceed `cap`.
fn vertex_affine_rank(points: &[&DeterministicVertex], cap: usize) -> usize {
    let fast = modular_affine_rank(points, cap);
    if fast >= cap {
        return fast;
    }
    let ints: Vec<Vec<BigInt>> = points.iter().map(|v| vertex_point(v)).collect();
    linalg::affine_rank_int_capped(&ints, cap)
}

pub fn verify_facet(ineq: &BellInequality, spec: &PolytopeSpec) -> Result<FacetVerdict> {
    verify_facet_with(ineq, spec, &enumerate_vertices(spec))
}

/// Facet check against a precomputed vertex list of `spec`.
pub fn verify_facet_with(
    ineq: &BellInequality,
    spec: &PolytopeSpec,
    vertices: &[DeterministicVertex],
) -> Result<FacetVerdict> {
    check_dims(ineq, spec)?;
    let scorer = IntInequality::new(ineq);
    let mut tight = Vec::new();
    let mut is_valid = true;
    let mut any_slack = false;
    for v in vertices {
        let s = scorer.slack(v);
        if s.is_negative() {
            is_valid = false;
        } else if s.is_zero() {
            tight.push(v);
        } else {
            any_slack = true;
        }
    }
    let dim = spec.dimension();
    let cap = if any_slack { dim.saturating_sub(1) } else { dim };
    let rank = vertex_affine_rank(&tight, cap);
    Ok(FacetVerdict {
        is_valid,
        is_tight: is_valid && any_slack && !tight.is_empty() && rank + 1 == dim,
        tight_vertex_count: tight.len(),
        affine_rank_of_tight_set: rank,
    })
}

pub fn hull_membership(p: &ClassicalChannel, spec: &PolytopeSpec) -> Result<MembershipResult> {
    hull_membership_with(p, spec, &enumerate_vertices(spec))
}

pub fn hull_membership_with(
    p: &ClassicalChannel,
    spec: &PolytopeSpec,
    vertices: &[DeterministicVertex],
) -> Result<MembershipResult> {
    if p.n() != spec.n || p.n_prime() != spec.n_prime {
        return Err(Error::DimensionMismatch(format!(
            "channel is {}x{}, polytope expects {}x{}",
            p.n_prime(),
            p.n(),
            spec.n_prime,
            spec.n
        )));
    }
    match lp::hull_lp(vertices, p) {
        lp::LpOutcome::Feasible(weights) => {
            let weighted: Vec<(Rational, DeterministicVertex)> =
                weights.into_iter().map(|(j, w)| (w, vertices[j].clone())).collect();
            let witness = SimulationProtocol::from_vertices(&weighted, spec.d)?;
            Ok(MembershipResult { member: true, witness: Some(witness), certificate: None })
        }
        lp::LpOutcome::Infeasible(y) => {
            let coords = spec.coordinates();
            let g = RatMatrix::from_vec(spec.n_prime, spec.n, y[..coords].to_vec());
            let certificate = normal_form(&BellInequality::new(g, -y[coords].clone())).with_family("separating");
            Ok(MembershipResult { member: false, witness: None, certificate: Some(certificate) })
        }
    }
}

pub fn enumerate_subfacets(ineq: &BellInequality, spec: &PolytopeSpec) -> Result<Vec<Ridge>> {
    enumerate_subfacets_with(ineq, spec, &enumerate_vertices(spec))
}

pub fn enumerate_subfacets_with(
    ineq: &BellInequality,
    spec: &PolytopeSpec,
    vertices: &[DeterministicVertex],
) -> Result<Vec<Ridge>> {
    let verdict = verify_facet_with(ineq, spec, vertices)?;
    if !verdict.is_tight {
        return Err(Error::NotAFacet);
    }
    let scorer = IntInequality::new(ineq);
    let tight: Vec<usize> = (0..vertices.len()).filter(|&i| scorer.slack(&vertices[i]).is_zero()).collect();
    let points: Vec<Vec<BigInt>> = tight.iter().map(|&i| vertex_point(&vertices[i])).collect();
    Ok(dd::hull_facets(&points)
        .into_iter()
        .map(|f| {
            let data = f.normal.into_iter().map(Rational::from_integer).collect();
            Ridge {
                inequality: BellInequality::new(
                    RatMatrix::from_vec(spec.n_prime, spec.n, data),
                    Rational::from_integer(f.offset),
                ),
                tight_vertices: f.tight.ones().map(|i| tight[i]).collect(),
            }
        })
        .collect())
}

pub fn rotate_facet(facet: &BellInequality, ridge: &BellInequality, spec: &PolytopeSpec) -> Result<BellInequality> {
    rotate_facet_with(facet, ridge, spec, &enumerate_vertices(spec))
}

/// Pivots `ridge` about its intersection with `facet` until it meets another
/// vertex, producing the neighbouring facet across that ridge.
pub fn rotate_facet_with(
    facet: &BellInequality,
    ridge: &BellInequality,
    spec: &PolytopeSpec,
    vertices: &[DeterministicVertex],
) -> Result<BellInequality> {
    check_dims(facet, spec)?;
    check_dims(ridge, spec)?;
    let g = IntInequality::new(facet);
    let mut h = IntInequality::new(ridge);
    let sg: Vec<BigInt> = vertices.iter().map(|v| g.slack(v)).collect();
    if sg.iter().any(|s| s.is_negative()) {
        return Err(Error::NotARidge("facet inequality is violated by a vertex".into()));
    }
    let on_facet: Vec<usize> = (0..vertices.len()).filter(|&i| sg[i].is_zero()).collect();
    let mut sh: Vec<BigInt> = vertices.iter().map(|v| h.slack(v)).collect();
    let has_pos = on_facet.iter().any(|&i| sh[i].is_positive());
    let has_neg = on_facet.iter().any(|&i| sh[i].is_negative());
    if has_pos && has_neg {
        return Err(Error::NotARidge("ridge inequality cuts through the facet".into()));
    }
    if !has_pos && !has_neg {
        return Err(Error::NotARidge("ridge inequality contains the whole facet".into()));
    }
    if has_neg {
        h.negate();
        for s in sh.iter_mut() {
            *s = -&*s;
        }
    }
    let ridge_points: Vec<&DeterministicVertex> =
        on_facet.iter().filter(|&&i| sh[i].is_zero()).map(|&i| &vertices[i]).collect();
    let dim = spec.dimension();
    let want = dim.saturating_sub(2);
    if ridge_points.is_empty() || vertex_affine_rank(&ridge_points, want) != want {
        return Err(Error::NotARidge(format!("face has affine rank below {want}")));
    }

    let mut best: Option<Rational> = None;
    for i in 0..vertices.len() {
        if sg[i].is_zero() {
            continue;
        }
        let t = Rational::new(-sh[i].clone(), sg[i].clone());
        if best.as_ref().is_none_or(|b| t > *b) {
            best = Some(t);
        }
    }
    let t = best.ok_or_else(|| Error::NotARidge("every vertex lies on the facet".into()))?;

    let data: Vec<Rational> =
        h.g.iter().zip(&g.g).map(|(hv, gv)| Rational::from_integer(hv.clone()) + &t * gv).collect();
    let gamma = Rational::from_integer(h.gamma.clone()) + &t * &g.gamma;
    Ok(normal_form(&BellInequality::new(RatMatrix::from_vec(spec.n_prime, spec.n, data), gamma)))
}

/// True when some coordinate vanishes on every tight vertex, i.e. the face is
/// contained in a non-negativity facet.
pub fn is_trivial_facet(ineq: &BellInequality, vertices: &[DeterministicVertex]) -> bool {
    let scorer = IntInequality::new(ineq);
    let width = ineq.n() * ineq.n_prime();
    let mut covered = vec![false; width];
    for v in vertices {
        if scorer.slack(v).is_zero() {
            for i in v.flat_support() {
                covered[i] = true;
            }
        }
    }
    covered.iter().any(|c| !c)
}

/// `-P(0|0) <= 0` in normal form, the representative used for every
/// non-negativity class.
pub fn trivial_facet(spec: &PolytopeSpec) -> BellInequality {
    let mut g = RatMatrix::zeros(spec.n_prime, spec.n);
    for y in 1..spec.n_prime {
        g[(y, 0)] = rational::int(1);
    }
    BellInequality::new(g, rational::int(1)).with_family("non-negativity")
}

/// Every facet of the polytope, from a double description over all vertices.
pub fn enumerate_facets(spec: &PolytopeSpec) -> Vec<BellInequality> {
    let vertices = enumerate_vertices(spec);
    let points: Vec<Vec<BigInt>> = vertices.iter().map(vertex_point).collect();
    dd::hull_facets(&points)
        .into_iter()
        .map(|f| {
            let data = f.normal.into_iter().map(Rational::from_integer).collect();
            normal_form(&BellInequality::new(
                RatMatrix::from_vec(spec.n_prime, spec.n, data),
                Rational::from_integer(f.offset),
            ))
        })
        .collect()
}
