//! Linear Bell inequalities `<G, P> <= gamma` over channels.
//!
//! The families in [`families`] build the standard games, [`lift`] embeds an
//! inequality into a larger polytope, and [`canonical`] picks one
//! representative per row/column permutation class.

pub mod canonical;
pub mod families;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::channel::{ClassicalChannel, DeterministicVertex};
use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::rational::{self, Rational};

pub use canonical::{canonical_class_rep, GeneratorFacet};
pub use families::{
    ambiguous_game, anti_guessing, general_ambiguous_game, k_guessing, ml_game, rescale_ambiguous, AmbiguousGameSpec,
};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BellInequality {
    pub g: RatMatrix,
    pub gamma: Rational,
    pub family: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct InequalityWire {
    gamma: String,
    #[serde(rename = "G")]
    g: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    family: Option<String>,
}

/// How [`lift`] embeds an inequality.
#[derive(Clone, Debug)]
pub enum Lift {
    /// Append this many all-zero input columns.
    Input(usize),
    /// Row `y` of the lifted matrix copies row `f[y]` of the original.
    Output(Vec<usize>),
}

impl BellInequality {
    pub fn new(g: RatMatrix, gamma: Rational) -> Self {
        Self { g, gamma, family: None }
    }

    pub fn from_i64(rows: &[&[i64]], gamma: i64) -> Self {
        Self::new(RatMatrix::from_i64_rows(rows), rational::int(gamma))
    }

    pub fn with_family(mut self, family: impl Into<String>) -> Self {
        self.family = Some(family.into());
        self
    }

    pub fn n(&self) -> usize {
        self.g.cols()
    }

    pub fn n_prime(&self) -> usize {
        self.g.rows()
    }

    /// Left-hand side evaluated on a deterministic vertex.
    pub fn score_vertex(&self, v: &DeterministicVertex) -> Rational {
        v.assignment().iter().enumerate().map(|(x, &y)| &self.g[(y, x)]).sum()
    }

    pub fn is_satisfied_by(&self, p: &ClassicalChannel) -> Result<bool> {
        Ok(score(self, p)? <= self.gamma)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(InequalityWire {
            gamma: rational::to_string(&self.gamma),
            g: self.g.to_strings(),
            family: self.family.clone(),
        })
        .expect("inequality serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let wire: InequalityWire = serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(Self { g: RatMatrix::from_strings(&wire.g)?, gamma: rational::parse(&wire.gamma)?, family: wire.family })
    }

    /// Entries of `G` and `gamma` as integers, when they all are.
    pub fn integer_parts(&self) -> Option<(Vec<BigInt>, BigInt)> {
        if !self.gamma.is_integer() || self.g.as_slice().iter().any(|v| !v.is_integer()) {
            return None;
        }
        Some((self.g.as_slice().iter().map(|v| v.to_integer()).collect(), self.gamma.to_integer()))
    }
}

impl std::fmt::Debug for BellInequality {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} >= {:?}", self.gamma, self.g)
    }
}

/// `sum_{x,y} G[y][x] P(y|x)`.
pub fn score(ineq: &BellInequality, p: &ClassicalChannel) -> Result<Rational> {
    if ineq.n() != p.n() || ineq.n_prime() != p.n_prime() {
        return Err(Error::DimensionMismatch(format!(
            "inequality is {}x{}, channel is {}x{}",
            ineq.n_prime(),
            ineq.n(),
            p.n_prime(),
            p.n()
        )));
    }
    let mut total = Rational::zero();
    for (g, v) in ineq.g.as_slice().iter().zip(p.entries().as_slice()) {
        if !g.is_zero() && !v.is_zero() {
            total += g * v;
        }
    }
    Ok(total)
}

pub fn lift(ineq: &BellInequality, mode: &Lift) -> Result<BellInequality> {
    let g = match mode {
        Lift::Input(pad) => {
            let mut g = RatMatrix::zeros(ineq.n_prime(), ineq.n() + pad);
            for y in 0..ineq.n_prime() {
                for x in 0..ineq.n() {
                    g[(y, x)] = ineq.g[(y, x)].clone();
                }
            }
            g
        }
        Lift::Output(f) => {
            let mut hit = vec![false; ineq.n_prime()];
            for &t in f {
                if t >= ineq.n_prime() {
                    return Err(Error::NotSurjective(ineq.n_prime()));
                }
                hit[t] = true;
            }
            if hit.iter().any(|h| !h) {
                return Err(Error::NotSurjective(ineq.n_prime()));
            }
            let cols: Vec<usize> = (0..ineq.n()).collect();
            ineq.g.permuted(f, &cols)
        }
    };
    Ok(BellInequality { g, gamma: ineq.gamma.clone(), family: ineq.family.clone() })
}

/// Shifts each column so its minimum is zero, then scales to coprime integers.
pub fn normal_form(ineq: &BellInequality) -> BellInequality {
    let mut g = ineq.g.clone();
    let mut gamma = ineq.gamma.clone();
    for x in 0..g.cols() {
        let min = (0..g.rows()).map(|y| g[(y, x)].clone()).min().expect("non-empty column");
        if !min.is_zero() {
            for y in 0..g.rows() {
                g[(y, x)] -= &min;
            }
            gamma -= &min;
        }
    }
    let mut values: Vec<Rational> = g.as_slice().to_vec();
    values.push(gamma.clone());
    if values.iter().all(|v| v.is_zero()) {
        return BellInequality { g, gamma, family: ineq.family.clone() };
    }
    let ints = rational::primitive_integer_vector(&values);
    let gamma = Rational::from_integer(ints[ints.len() - 1].clone());
    let data = ints[..ints.len() - 1].iter().map(|v| Rational::from_integer(v.clone())).collect();
    BellInequality { g: RatMatrix::from_vec(g.rows(), g.cols(), data), gamma, family: ineq.family.clone() }
}

/// True when `G` is zero except for a single column that is `[0, 1, ..., 1]`
/// up to row order and `gamma = 1`, i.e. the form `-P(y|x) <= 0` takes after
/// normalization.
pub fn is_nonnegativity_form(ineq: &BellInequality) -> bool {
    if !ineq.gamma.is_one() {
        return false;
    }
    let nonzero: Vec<usize> =
        (0..ineq.n()).filter(|&x| (0..ineq.n_prime()).any(|y| !ineq.g[(y, x)].is_zero())).collect();
    if nonzero.len() != 1 {
        return false;
    }
    let col = ineq.g.column(nonzero[0]);
    col.iter().filter(|v| v.is_zero()).count() == 1 && col.iter().filter(|v| v.is_one()).count() == col.len() - 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn normal_form_shifts_and_scales() {
        let ineq =
            BellInequality::new(RatMatrix::from_rows(vec![vec![int(-1)], vec![int(0)], vec![int(1)]]).unwrap(), int(1));
        let nf = normal_form(&ineq);
        assert_eq!(nf.g, RatMatrix::from_i64_rows(&[&[0], &[1], &[2]]));
        assert_eq!(nf.gamma, int(2));

        let half = BellInequality::new(
            RatMatrix::from_rows(vec![vec![int(1), int(0)], vec![frac(1, 2), frac(1, 2)]]).unwrap(),
            int(2),
        );
        let nf = normal_form(&half);
        assert_eq!(nf.g, RatMatrix::from_i64_rows(&[&[1, 0], &[0, 1]]));
        assert_eq!(nf.gamma, int(3));
        assert_eq!(normal_form(&nf), nf);
    }

    #[test]
    fn lifts() {
        let ml = BellInequality::new(RatMatrix::identity(3), int(2));
        let wide = lift(&ml, &Lift::Input(1)).unwrap();
        assert_eq!(wide.g, RatMatrix::from_i64_rows(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]]));
        let tall = lift(&ml, &Lift::Output(vec![0, 0, 1, 2])).unwrap();
        assert_eq!(tall.g, RatMatrix::from_i64_rows(&[&[1, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
        assert_eq!(lift(&ml, &Lift::Input(0)).unwrap(), ml);
        assert!(matches!(lift(&ml, &Lift::Output(vec![0, 0, 1])), Err(Error::NotSurjective(3))));
    }

    #[test]
    fn scores_channels() {
        let ml = BellInequality::new(RatMatrix::identity(3), int(2));
        assert_eq!(score(&ml, &ClassicalChannel::uniform(3, 3)).unwrap(), int(1));
        assert!(score(&ml, &ClassicalChannel::uniform(2, 3)).is_err());
        let v = DeterministicVertex::new(vec![0, 1, 1], 3).unwrap();
        assert_eq!(ml.score_vertex(&v), int(2));
    }

    #[test]
    fn json_round_trip() {
        let ineq = BellInequality::new(
            RatMatrix::from_rows(vec![vec![frac(1, 3), int(0)], vec![int(2), int(-1)]]).unwrap(),
            frac(7, 2),
        )
        .with_family("test");
        let json = ineq.to_json();
        assert_eq!(json["G"][0][0], "1/3");
        assert_eq!(BellInequality::from_json(&json).unwrap(), ineq);
    }

    #[test]
    fn recognizes_nonnegativity() {
        let t = BellInequality::from_i64(&[&[0, 0], &[1, 0], &[1, 0]], 1);
        assert!(is_nonnegativity_form(&t));
        let ml = BellInequality::from_i64(&[&[1, 0], &[0, 1]], 1);
        assert!(!is_nonnegativity_form(&ml));
    }
}
