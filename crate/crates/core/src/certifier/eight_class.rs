//! Membership in `C_2^{n -> 4}` from its eight generator facet classes.

use std::collections::HashSet;

use itertools::Itertools;
use num_traits::Zero;

use crate::channel::ClassicalChannel;
use crate::facets::BellInequality;
use crate::matrix::RatMatrix;
use crate::rational::Rational;

/// Representatives of the eight nontrivial facet classes of `C_2^{6 -> 4}`,
/// in the order (a) through (h).
pub fn generator_facets() -> Vec<BellInequality> {
    let raw: [(&str, i64, [[i64; 6]; 4]); 8] = [
        ("ml", 2, [[1, 0, 0, 0, 0, 0], [1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0]]),
        ("ml", 2, [[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0], [0, 0, 0, 1, 0, 0]]),
        ("anti-guessing", 3, [[1, 1, 0, 0, 0, 0], [1, 0, 1, 0, 0, 0], [0, 1, 1, 0, 0, 0], [0, 0, 0, 1, 0, 0]]),
        ("k-guessing", 5, [[1, 1, 1, 0, 0, 0], [1, 0, 0, 1, 1, 0], [0, 1, 0, 1, 0, 1], [0, 0, 1, 0, 1, 1]]),
        ("ambiguous", 4, [[2, 0, 0, 0, 0, 0], [0, 2, 0, 0, 0, 0], [0, 0, 2, 0, 0, 0], [1, 1, 1, 0, 0, 0]]),
        ("ambiguous-rescaled", 4, [[2, 0, 0, 0, 0, 0], [0, 2, 0, 0, 0, 0], [0, 0, 1, 1, 0, 0], [1, 1, 1, 0, 0, 0]]),
        ("ambiguous-rescaled", 4, [[2, 0, 0, 0, 0, 0], [0, 1, 0, 1, 0, 0], [0, 0, 1, 0, 1, 0], [1, 1, 1, 0, 0, 0]]),
        ("ambiguous-rescaled", 4, [[1, 0, 0, 1, 0, 0], [0, 1, 0, 0, 1, 0], [0, 0, 1, 0, 0, 1], [1, 1, 1, 0, 0, 0]]),
    ];
    raw.iter()
        .zip('a'..)
        .map(|((family, gamma, rows), tag)| {
            let rows: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            BellInequality::from_i64(&rows, *gamma).with_family(format!("class ({tag}) {family}"))
        })
        .collect()
}

/// Best placement of the columns of `g` into the inputs of `p`: the maximum
/// over injections `f` of `sum_c <g[:,c], p[:,f(c)]>`, with the placement.
fn best_injection(g: &RatMatrix, p: &ClassicalChannel) -> Option<(Rational, Vec<usize>)> {
    let c = g.cols();
    let n = p.n();
    if c > n {
        return None;
    }
    let weight: Vec<Vec<Rational>> = (0..c)
        .map(|col| (0..n).map(|x| (0..g.rows()).map(|y| &g[(y, col)] * p.get(y, x)).sum::<Rational>()).collect())
        .collect();
    // layers[x][mask]: best value with the columns in `mask` placed on inputs 0..x
    let full = (1usize << c) - 1;
    let mut layers: Vec<Vec<Option<Rational>>> = Vec::with_capacity(n + 1);
    let mut first = vec![None; full + 1];
    first[0] = Some(Rational::zero());
    layers.push(first);
    for x in 0..n {
        let prev = &layers[x];
        let mut next = prev.clone();
        for (mask, slot) in prev.iter().enumerate() {
            let Some(base) = slot else { continue };
            for (j, w) in weight.iter().enumerate() {
                if mask & (1 << j) != 0 {
                    continue;
                }
                let cand = base + &w[x];
                let target = mask | (1 << j);
                if next[target].as_ref().is_none_or(|cur| cand > *cur) {
                    next[target] = Some(cand);
                }
            }
        }
        layers.push(next);
    }
    let best = layers[n][full].clone()?;
    let mut placement = vec![0; c];
    let mut mask = full;
    for x in (0..n).rev() {
        let here = layers[x + 1][mask].clone().expect("reachable state");
        if layers[x][mask].as_ref() == Some(&here) {
            continue;
        }
        let j = (0..c)
            .find(|&j| {
                mask & (1 << j) != 0 && layers[x][mask & !(1 << j)].as_ref().is_some_and(|v| v + &weight[j][x] == here)
            })
            .expect("some column accounts for the value");
        placement[j] = x;
        mask &= !(1 << j);
    }
    Some((best, placement))
}

/// A lifted and permuted generator facet violated by `p`, if any. `p` must
/// have four outputs.
pub fn violation(p: &ClassicalChannel) -> Option<BellInequality> {
    assert_eq!(p.n_prime(), 4, "the eight-class test applies to four outputs");
    for facet in generator_facets() {
        let cols: Vec<usize> = (0..facet.n()).filter(|&x| (0..4).any(|y| !facet.g[(y, x)].is_zero())).collect();
        let mut seen = HashSet::new();
        for perm in (0..4).permutations(4) {
            let permuted = facet.g.permuted(&perm, &cols);
            if !seen.insert(permuted.clone()) {
                continue;
            }
            let Some((score, placement)) = best_injection(&permuted, p) else { continue };
            if score > facet.gamma {
                let mut g = RatMatrix::zeros(4, p.n());
                for (j, &x) in placement.iter().enumerate() {
                    for y in 0..4 {
                        g[(y, x)] = permuted[(y, j)].clone();
                    }
                }
                return Some(BellInequality { g, gamma: facet.gamma.clone(), family: facet.family.clone() });
            }
        }
    }
    None
}
