use num_bigint::BigInt;
use num_traits::Zero;

use crate::rational::{self, Rational};

/// Integer row echelon basis grown one vector at a time, fraction free.
///
/// Row `i` is zero at the pivots of rows `0..i`, so reducing a new vector
/// against the rows in insertion order clears every pivot.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    /// Reduces `v` against the basis, returning the residual.
    pub fn reduce(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        for (p, b) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            let s = &b[*p];
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi = &*vi * s - &f * bi;
            }
            v = rational::divide_by_content(v);
        }
        v
    }

    /// Adds `v` if it is independent of the basis. Returns whether it was added.
    pub fn insert(&mut self, v: Vec<BigInt>) -> bool {
        let v = self.reduce(v);
        match v.iter().position(|e| !e.is_zero()) {
            Some(p) => {
                self.rows.push((p, v));
                true
            }
            None => false,
        }
    }
}

/// Affine rank of a point set, stopping early once `cap` is reached.
pub fn affine_rank_int_capped(points: &[Vec<BigInt>], cap: usize) -> usize {
    let Some(first) = points.first() else { return 0 };
    let mut basis = EchelonBasis::new();
    for p in &points[1..] {
        if basis.rank() >= cap {
            break;
        }
        let diff: Vec<BigInt> = p.iter().zip(first).map(|(a, b)| a - b).collect();
        basis.insert(diff);
    }
    basis.rank()
}

/// Rank of `{p_i - p_0}`: one less than the largest affinely independent subset.
pub fn affine_rank(points: &[Vec<Rational>]) -> usize {
    let ints: Vec<Vec<BigInt>> = {
        let den = rational::common_denominator(points.iter().flatten());
        points.iter().map(|p| p.iter().map(|v| (v * &den).to_integer()).collect()).collect()
    };
    affine_rank_int_capped(&ints, usize::MAX)
}

/// Solves `m z = rhs` for a square invertible rational matrix.
pub fn solve(m: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> =
        m.iter().zip(rhs).map(|(row, r)| row.iter().cloned().chain([r.clone()]).collect()).collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = Rational::from_integer(1.into()) / &a[col][col];
        for v in a[col].iter_mut() {
            *v *= &inv;
        }
        let pivot = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (v, p) in row.iter_mut().zip(&pivot).skip(col) {
                    *v -= &f * p;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn pts(v: &[&[i64]]) -> Vec<Vec<Rational>> {
        v.iter().map(|p| p.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn ranks() {
        assert_eq!(affine_rank(&pts(&[&[0, 0], &[1, 0], &[0, 1]])), 2);
        assert_eq!(affine_rank(&pts(&[&[1, 2], &[1, 2]])), 0);
        assert_eq!(affine_rank(&pts(&[&[0, 0, 0], &[1, 1, 1], &[2, 2, 2]])), 1);
    }

    #[test]
    fn solves_systems() {
        let m = pts(&[&[2, 1], &[1, 3]]);
        let z = solve(&m, &[int(3), int(4)]).unwrap();
        assert_eq!(z, vec![int(1), int(1)]);
        assert!(solve(&pts(&[&[1, 1], &[2, 2]]), &[int(0), int(0)]).is_none());
    }
}
