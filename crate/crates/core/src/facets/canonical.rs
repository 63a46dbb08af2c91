use std::collections::{HashMap, HashSet};

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_traits::One;

use super::{normal_form, BellInequality};
use crate::matrix::RatMatrix;
use crate::rational::Rational;

/// Canonical representative of a row/column permutation class of inequalities.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorFacet {
    pub canonical: BellInequality,
}

impl GeneratorFacet {
    /// Number of distinct inequalities in the orbit.
    pub fn class_size(&self) -> BigUint {
        let g = to_int_rows(&self.canonical.g);
        let (rows, cols) = (g.len(), g[0].len());
        let column_multiset = |order: &[usize]| {
            let mut c: Vec<Vec<&BigInt>> = (0..cols).map(|x| order.iter().map(|&y| &g[y][x]).collect()).collect();
            c.sort();
            c
        };
        let identity: Vec<usize> = (0..rows).collect();
        let reference = column_multiset(&identity);
        let mut multiplicities: HashMap<&Vec<&BigInt>, usize> = HashMap::new();
        for c in &reference {
            *multiplicities.entry(c).or_default() += 1;
        }
        let column_automorphisms: BigUint = multiplicities.values().map(|&m| factorial(m)).product();
        let row_matches =
            identity.iter().copied().permutations(rows).filter(|p| column_multiset(p) == reference).count();
        let stabilizer = column_automorphisms * BigUint::from(row_matches);
        factorial(rows) * factorial(cols) / stabilizer
    }

    pub fn to_json(&self) -> serde_json::Value {
        self.canonical.to_json()
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

fn to_int_rows(m: &RatMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|y| m.row(y).iter().map(|v| v.to_integer()).collect()).collect()
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct SearchState {
    remaining: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

/// Normal form followed by the row-major lexicographic minimum over all row
/// and column permutations.
pub fn canonical_class_rep(ineq: &BellInequality) -> GeneratorFacet {
    let nf = normal_form(ineq);
    let g = to_int_rows(&nf.g);
    let (rows, cols) = (g.len(), g[0].len());

    let mut states = vec![SearchState { remaining: (0..rows).collect(), blocks: vec![(0..cols).collect()] }];
    let mut result: Vec<Vec<BigInt>> = Vec::with_capacity(rows);
    for _ in 0..rows {
        let mut best: Option<Vec<BigInt>> = None;
        let mut next: Vec<SearchState> = Vec::new();
        let mut seen: HashSet<SearchState> = HashSet::new();
        for state in &states {
            for (i, &r) in state.remaining.iter().enumerate() {
                if state.remaining[..i].iter().any(|&q| g[q] == g[r]) {
                    continue;
                }
                let mut vector = Vec::with_capacity(cols);
                let mut blocks = Vec::with_capacity(state.blocks.len());
                for block in &state.blocks {
                    let mut sorted = block.clone();
                    sorted.sort_by(|&a, &b| g[r][a].cmp(&g[r][b]).then(a.cmp(&b)));
                    for (_, group) in &sorted.iter().chunk_by(|&&c| &g[r][c]) {
                        blocks.push(group.copied().collect::<Vec<_>>());
                    }
                    vector.extend(sorted.iter().map(|&c| g[r][c].clone()));
                }
                let ordering = best.as_ref().map(|b| vector.cmp(b));
                match ordering {
                    Some(std::cmp::Ordering::Greater) => continue,
                    Some(std::cmp::Ordering::Less) | None => {
                        best = Some(vector);
                        next.clear();
                        seen.clear();
                    }
                    Some(std::cmp::Ordering::Equal) => {}
                }
                let mut remaining = state.remaining.clone();
                remaining.remove(i);
                let candidate = SearchState { remaining, blocks };
                if seen.insert(candidate.clone()) {
                    next.push(candidate);
                }
            }
        }
        result.push(best.expect("at least one row remains"));
        states = next;
    }

    let data = result.into_iter().flatten().map(Rational::from_integer).collect();
    GeneratorFacet {
        canonical: BellInequality { g: RatMatrix::from_vec(rows, cols, data), gamma: nf.gamma, family: None },
    }
}
