use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use super::BellInequality;
use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::rational::{self, Rational};

fn out_of_range(msg: String) -> Error {
    Error::ParameterOutOfRange(msg)
}

fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// `n' x C(n',k)` game whose columns are the k-subsets of outputs, ordered as
/// combinations: `{1,2}, {1,3}, ..., {n'-1,n'}`.
pub fn k_guessing(n_prime: usize, k: usize, d: usize) -> Result<BellInequality> {
    if n_prime < 2 || k == 0 || k >= n_prime || d == 0 || d > n_prime {
        return Err(out_of_range(format!(
            "k-guessing needs n' >= 2, 1 <= k <= n'-1, 1 <= d <= n' (got n'={n_prime}, k={k}, d={d})"
        )));
    }
    let combos: Vec<Vec<usize>> = (0..n_prime).combinations(k).collect();
    let mut g = RatMatrix::zeros(n_prime, combos.len());
    for (x, combo) in combos.iter().enumerate() {
        for &y in combo {
            g[(y, x)] = Rational::one();
        }
    }
    let gamma = binomial(n_prime, k) - binomial(n_prime - d, k);
    Ok(BellInequality::new(g, rational::int(gamma)).with_family(format!("k-guessing({n_prime},{k},{d})")))
}

/// `(I_{n'}, d)`.
pub fn ml_game(n_prime: usize, d: usize) -> Result<BellInequality> {
    if n_prime < 2 || d == 0 || d > n_prime {
        return Err(out_of_range(format!("ML game needs n' >= 2, 1 <= d <= n' (got n'={n_prime}, d={d})")));
    }
    Ok(BellInequality::new(RatMatrix::identity(n_prime), rational::int(d as i64))
        .with_family(format!("ml({n_prime},{d})")))
}

/// `(n'-d) I_{n'-1}` stacked over a row of ones, bound `d(n'-d)`.
pub fn ambiguous_game(n_prime: usize, d: usize) -> Result<BellInequality> {
    if n_prime < 4 || d < 2 || d + 2 > n_prime {
        return Err(out_of_range(format!("ambiguous game needs n' >= 4 and 2 <= d <= n'-2 (got n'={n_prime}, d={d})")));
    }
    let n = n_prime - 1;
    let weight = rational::int((n_prime - d) as i64);
    let mut g = RatMatrix::zeros(n_prime, n);
    for x in 0..n {
        g[(x, x)] = weight.clone();
        g[(n, x)] = Rational::one();
    }
    let gamma = rational::int((d * (n_prime - d)) as i64);
    Ok(BellInequality::new(g, gamma).with_family(format!("ambiguous({n_prime},{d})")))
}

/// A guessing game where Bob may answer "ambiguous" for partial credit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbiguousGameSpec {
    pub n: usize,
    pub n_prime: usize,
    pub d: usize,
    /// `guesses[y] = Some(x)` makes row `y` a guessing row for input `x`;
    /// `None` makes it an ambiguous row.
    pub guesses: Vec<Option<usize>>,
}

impl AmbiguousGameSpec {
    /// The first `guesses.len()` rows guess, the rest are ambiguous.
    pub fn leading(n: usize, n_prime: usize, d: usize, guesses: &[usize]) -> Self {
        let mut g: Vec<Option<usize>> = guesses.iter().map(|&x| Some(x)).collect();
        g.resize(n_prime, None);
        Self { n, n_prime, d, guesses: g }
    }

    pub fn k(&self) -> usize {
        self.guesses.iter().filter(|g| g.is_some()).count()
    }
}

pub fn general_ambiguous_game(spec: &AmbiguousGameSpec) -> Result<BellInequality> {
    let AmbiguousGameSpec { n, n_prime, d, .. } = *spec;
    if n == 0 || d == 0 || d > n.min(n_prime) || spec.guesses.len() != n_prime {
        return Err(out_of_range(format!(
            "ambiguous game needs 1 <= d <= min(n, n') and one entry per row (n={n}, n'={n_prime}, d={d}, rows={})",
            spec.guesses.len()
        )));
    }
    let ambiguous = Rational::new(1.into(), (n - d + 1).into());
    let mut g = RatMatrix::zeros(n_prime, n);
    for (y, guess) in spec.guesses.iter().enumerate() {
        match guess {
            Some(x) if *x < n => g[(y, *x)] = Rational::one(),
            Some(x) => return Err(out_of_range(format!("row {y} guesses input {x} but n={n}"))),
            None => {
                for x in 0..n {
                    g[(y, x)] = ambiguous.clone();
                }
            }
        }
    }
    Ok(BellInequality::new(g, rational::int(d as i64))
        .with_family(format!("general-ambiguous({n},{n_prime},k={},{d})", spec.k())))
}

/// Block diagonal of the `eps`-output anti-guessing block and `I_{m'}`.
pub fn anti_guessing(eps: usize, m_prime: usize, d: usize) -> Result<BellInequality> {
    let n_prime = eps + m_prime;
    if d < 2 || d + 2 > n_prime || eps < 3 || eps + d > n_prime + 1 {
        return Err(out_of_range(format!(
            "anti-guessing needs 2 <= d <= n'-2 and 3 <= eps <= n'-d+1 (got eps={eps}, m'={m_prime}, d={d})"
        )));
    }
    let block = k_guessing(eps, eps - 1, 1)?;
    let mut g = RatMatrix::zeros(n_prime, n_prime);
    for y in 0..eps {
        for x in 0..eps {
            g[(y, x)] = block.g[(y, x)].clone();
        }
    }
    for i in eps..n_prime {
        g[(i, i)] = Rational::one();
    }
    let gamma = rational::int((eps + d - 2) as i64);
    Ok(BellInequality::new(g, gamma).with_family(format!("anti-guessing({eps},{m_prime},{d})")))
}

/// Splits the single nonzero entry of guessing row `row` (0-based) between its
/// column and a new last column. The new column is zero in every other row.
pub fn rescale_ambiguous(ineq: &BellInequality, row: usize, split: (Rational, Rational)) -> Result<BellInequality> {
    if row >= ineq.n_prime() {
        return Err(Error::BadSplit(format!("row {row} out of range")));
    }
    let support: Vec<usize> = (0..ineq.n()).filter(|&x| !ineq.g[(row, x)].is_zero()).collect();
    if support.len() != 1 {
        return Err(Error::BadSplit(format!("row {row} has {} nonzero entries, expected 1", support.len())));
    }
    let x = support[0];
    let (keep, moved) = split;
    if !keep.is_positive() || !moved.is_positive() || &keep + &moved != ineq.g[(row, x)] {
        return Err(Error::BadSplit(format!(
            "parts {keep} and {moved} must be positive and sum to {}",
            ineq.g[(row, x)]
        )));
    }
    let mut g = RatMatrix::zeros(ineq.n_prime(), ineq.n() + 1);
    for y in 0..ineq.n_prime() {
        for c in 0..ineq.n() {
            g[(y, c)] = ineq.g[(y, c)].clone();
        }
    }
    g[(row, x)] = keep;
    g[(row, ineq.n())] = moved;
    Ok(BellInequality { g, gamma: ineq.gamma.clone(), family: ineq.family.as_ref().map(|f| format!("{f}+rescaled")) })
}
