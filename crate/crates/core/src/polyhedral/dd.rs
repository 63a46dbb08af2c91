use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::linalg::{self, EchelonBasis};
use crate::rational::{self, Rational};

/// Facet `<normal, x> <= offset` of a point hull, with the indices of the
/// points it is tight on.
#[derive(Clone, Debug)]
pub struct HullFacet {
    pub normal: Vec<BigInt>,
    pub offset: BigInt,
    pub tight: FixedBitSet,
}

struct Ray {
    coords: Vec<BigInt>,
    zeros: FixedBitSet,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).filter(|(x, _)| !x.is_zero()).map(|(x, y)| x * y).sum()
}

/// Facets of `conv(points)` inside its affine hull, by double description.
///
/// Points are projected onto pivot coordinates of their affine hull; the
/// returned normals are zero outside those coordinates.
pub fn hull_facets(points: &[Vec<BigInt>]) -> Vec<HullFacet> {
    let Some(first) = points.first() else { return Vec::new() };
    let width = first.len();

    let mut hull = EchelonBasis::new();
    for p in &points[1..] {
        hull.insert(p.iter().zip(first).map(|(a, b)| a - b).collect());
    }
    let pivots = hull.pivots();
    let k = pivots.len();
    if k == 0 {
        return Vec::new();
    }

    // homogenized projected rows (1, p_J)
    let rows: Vec<Vec<BigInt>> = points
        .iter()
        .map(|p| std::iter::once(BigInt::from(1)).chain(pivots.iter().map(|&j| p[j].clone())).collect())
        .collect();

    let mut basis = EchelonBasis::new();
    let mut initial = Vec::with_capacity(k + 1);
    for (i, row) in rows.iter().enumerate() {
        if basis.insert(row.clone()) {
            initial.push(i);
            if initial.len() == k + 1 {
                break;
            }
        }
    }
    debug_assert_eq!(initial.len(), k + 1);

    let square: Vec<Vec<Rational>> =
        initial.iter().map(|&i| rows[i].iter().map(|v| Rational::from_integer(v.clone())).collect()).collect();
    let n_points = points.len();
    let mut rays: Vec<Ray> = Vec::with_capacity(k + 1);
    for j in 0..=k {
        let rhs: Vec<Rational> = (0..=k).map(|i| rational::int((i == j) as i64)).collect();
        let sol = linalg::solve(&square, &rhs).expect("initial rows are independent");
        let coords = rational::primitive_integer_vector(&sol);
        let mut zeros = FixedBitSet::with_capacity(n_points);
        for (i, &row) in initial.iter().enumerate() {
            if i != j {
                zeros.insert(row);
            }
        }
        rays.push(Ray { coords, zeros });
    }

    let mut inserted = vec![false; n_points];
    for &i in &initial {
        inserted[i] = true;
    }
    for (idx, row) in rows.iter().enumerate() {
        if inserted[idx] {
            continue;
        }
        let values: Vec<BigInt> = rays.iter().map(|r| dot(row, &r.coords)).collect();
        if values.iter().all(|v| !v.is_negative()) {
            for (r, v) in rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    r.zeros.insert(idx);
                }
            }
            continue;
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        let mut created = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let mut common = rays[p].zeros.clone();
                common.intersect_with(&rays[q].zeros);
                if common.count_ones(..) + 1 < k {
                    continue;
                }
                let blocked = rays.iter().enumerate().any(|(i, r)| i != p && i != q && common.is_subset(&r.zeros));
                if blocked {
                    continue;
                }
                let coords: Vec<BigInt> =
                    rays[q].coords.iter().zip(&rays[p].coords).map(|(a, b)| &values[p] * a - &values[q] * b).collect();
                let coords = rational::divide_by_content(coords);
                common.insert(idx);
                created.push(Ray { coords, zeros: common });
            }
        }
        let mut kept: Vec<Ray> = Vec::with_capacity(pos.len() + created.len());
        for (i, mut r) in rays.into_iter().enumerate() {
            if values[i].is_negative() {
                continue;
            }
            if values[i].is_zero() {
                r.zeros.insert(idx);
            }
            kept.push(r);
        }
        kept.extend(created);
        rays = kept;
        inserted[idx] = true;
    }

    rays.into_iter()
        .map(|r| {
            let mut normal = vec![BigInt::zero(); width];
            for (slot, &j) in pivots.iter().enumerate() {
                normal[j] = -r.coords[slot + 1].clone();
            }
            HullFacet { normal, offset: r.coords[0].clone(), tight: r.zeros }
        })
        .collect()
}
