//! Exact phase-one revised simplex for convex-hull membership.
//!
//! Columns are the vertices `(V_j, 1)`, the right-hand side is `(P, 1)`, and
//! artificial variables form the starting basis. Entering and leaving choices
//! follow Bland's rule, so the method terminates.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::channel::{ClassicalChannel, DeterministicVertex};
use crate::rational::{self, Rational};

pub enum LpOutcome {
    /// Vertex indices with positive weights summing to one.
    Feasible(Vec<(usize, Rational)>),
    /// Farkas vector `y` with `y.(V_j,1) <= 0` for all j and `y.(P,1) > 0`.
    Infeasible(Vec<Rational>),
}

enum Prices {
    Small(Vec<i64>),
    Big(Vec<BigInt>),
}

impl Prices {
    fn new(y: &[Rational]) -> Self {
        let den = rational::common_denominator(y);
        let ints: Vec<BigInt> = y.iter().map(|v| (v * &den).to_integer()).collect();
        let bound = i64::MAX / (ints.len() as i64 + 1);
        match ints.iter().map(|v| v.to_i64().filter(|x| x.abs() < bound)).collect::<Option<Vec<_>>>() {
            Some(small) => Prices::Small(small),
            None => Prices::Big(ints),
        }
    }

    /// Sign of `y.(V, 1)`.
    fn positive(&self, support: impl Iterator<Item = usize>, last: usize) -> bool {
        match self {
            Prices::Small(y) => support.map(|i| y[i]).sum::<i64>() + y[last] > 0,
            Prices::Big(y) => (support.map(|i| &y[i]).sum::<BigInt>() + &y[last]).is_positive(),
        }
    }
}

pub fn hull_lp(vertices: &[DeterministicVertex], p: &ClassicalChannel) -> LpOutcome {
    let n = p.n();
    let coords = n * p.n_prime();
    let m = coords + 1;
    let total = vertices.len();
    let supports: Vec<Vec<usize>> = vertices.iter().map(|v| v.flat_support()).collect();

    let mut binv: Vec<Vec<Rational>> =
        (0..m).map(|i| (0..m).map(|j| rational::int((i == j) as i64)).collect()).collect();
    let mut basis: Vec<usize> = (0..m).map(|i| total + i).collect();
    let mut xb: Vec<Rational> = p.entries().as_slice().to_vec();
    xb.push(Rational::one());
    let mut in_basis = vec![false; total];

    loop {
        let mut y = vec![Rational::zero(); m];
        let mut w = Rational::zero();
        for i in 0..m {
            if basis[i] >= total {
                w += &xb[i];
                for (yj, bij) in y.iter_mut().zip(&binv[i]) {
                    if !bij.is_zero() {
                        *yj += bij;
                    }
                }
            }
        }
        if w.is_zero() {
            let weights = (0..m)
                .filter(|&i| basis[i] < total && xb[i].is_positive())
                .map(|i| (basis[i], xb[i].clone()))
                .collect();
            return LpOutcome::Feasible(weights);
        }

        let prices = Prices::new(&y);
        let entering = (0..total).find(|&j| !in_basis[j] && prices.positive(supports[j].iter().copied(), coords));
        let Some(q) = entering else {
            return LpOutcome::Infeasible(y);
        };

        let u: Vec<Rational> =
            binv.iter().map(|row| supports[q].iter().map(|&r| &row[r]).sum::<Rational>() + &row[coords]).collect();
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if !u[i].is_positive() {
                continue;
            }
            let ratio = &xb[i] / &u[i];
            let better = match &leave {
                None => true,
                Some((l, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*l]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let (r, _) = leave.expect("phase one is bounded");

        let pivot = u[r].clone();
        for v in binv[r].iter_mut() {
            *v /= &pivot;
        }
        xb[r] /= &pivot;
        let pivot_row = binv[r].clone();
        let pivot_x = xb[r].clone();
        for i in 0..m {
            if i == r || u[i].is_zero() {
                continue;
            }
            for (v, pr) in binv[i].iter_mut().zip(&pivot_row) {
                if !pr.is_zero() {
                    *v -= &u[i] * pr;
                }
            }
            xb[i] -= &u[i] * &pivot_x;
        }
        if basis[r] < total {
            in_basis[basis[r]] = false;
        }
        basis[r] = q;
        in_basis[q] = true;
    }
}
