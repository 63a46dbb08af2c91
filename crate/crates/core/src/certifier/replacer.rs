//! Bounds on the signaling dimension of partial replacer channels
//! `R(X) = mu X + (1 - mu) Tr[X] sigma`.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReplacerKind {
    /// `sigma` is a flag state orthogonal to the input space.
    Erasure,
    /// `sigma = I / d`.
    Depolarizing,
    /// Any other replacement state, described for reporting only.
    General(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplacerSpec {
    pub mu: Rational,
    pub d: usize,
    pub kind: ReplacerKind,
}

impl ReplacerSpec {
    pub fn new(mu: Rational, d: usize, kind: ReplacerKind) -> Result<Self> {
        check(&mu, d)?;
        Ok(Self { mu, d, kind })
    }
}

fn check(mu: &Rational, d: usize) -> Result<()> {
    if mu.is_negative() || *mu > Rational::one() {
        return Err(Error::ParameterOutOfRange(format!("mu must lie in [0, 1], got {mu}")));
    }
    if d < 2 {
        return Err(Error::ParameterOutOfRange(format!("d must be at least 2, got {d}")));
    }
    Ok(())
}

/// `(ceil(mu d + 1 - mu), min(d, ceil(mu d + 1)))`. For erasure channels both
/// entries are the exact value.
pub fn replacer_bounds(spec: &ReplacerSpec) -> Result<(usize, usize)> {
    check(&spec.mu, spec.d)?;
    let md = &spec.mu * rational::int(spec.d as i64);
    let upper = spec.d.min(rational::ceil_usize(&(&md + Rational::one())));
    if spec.kind == ReplacerKind::Erasure {
        return Ok((upper, upper));
    }
    let lower = rational::ceil_usize(&(&md + Rational::one() - &spec.mu));
    Ok((lower.max(1), upper))
}

/// `min(d, ceil(mu d + 1))`.
pub fn erasure_dimension(mu: &Rational, d: usize) -> Result<usize> {
    check(mu, d)?;
    let v = mu * rational::int(d as i64) + Rational::one();
    Ok(d.min(rational::ceil_usize(&v)))
}

/// An exact value or a certified bracket `lo <= r <= hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootValue {
    Exact(Rational),
    Bracket(Rational, Rational),
}

impl RootValue {
    /// The ceiling, when it is decided by the value or bracket.
    pub fn ceil(&self) -> Option<usize> {
        match self {
            RootValue::Exact(r) => Some(rational::ceil_usize(r)),
            RootValue::Bracket(lo, hi) => {
                let (a, b) = (rational::ceil_usize(lo), rational::ceil_usize(hi));
                (a == b).then_some(a)
            }
        }
    }

    pub fn approx(&self) -> f64 {
        match self {
            RootValue::Exact(r) => rational::to_f64(r),
            RootValue::Bracket(lo, hi) => (rational::to_f64(lo) + rational::to_f64(hi)) / 2.0,
        }
    }
}

/// The smaller root `r-` of the ambiguous-game threshold for the erasure
/// channel with `n'` outputs:
/// `(mu d + n')/2 - sqrt((n' - mu d)^2 - 4 (1 - mu)(n' - 1))/2`.
///
/// Irrational roots are bracketed tightly enough to decide the ceiling
/// whenever the root is not an integer.
pub fn erasure_ambiguous_root(mu: &Rational, d: usize, n_prime: usize) -> Result<RootValue> {
    check(mu, d)?;
    if n_prime < d + 1 {
        return Err(Error::ParameterOutOfRange(format!("need n' >= d + 1, got n'={n_prime}, d={d}")));
    }
    let md = mu * rational::int(d as i64);
    let np = rational::int(n_prime as i64);
    let disc = (&np - &md) * (&np - &md) - rational::int(4) * (Rational::one() - mu) * (&np - Rational::one());
    if disc.is_negative() {
        return Err(Error::NegativeDiscriminant(rational::to_string(&disc)));
    }
    let half = rational::frac(1, 2);
    let mid = (&md + &np) * &half;
    if let Some(root) = rational::exact_sqrt(&disc) {
        return Ok(RootValue::Exact(mid - root * &half));
    }
    // an irrational root is never an integer, so refinement terminates
    let mut digits = 10;
    loop {
        let (lo, hi) = rational::sqrt_bracket(&disc, digits);
        let bracket = RootValue::Bracket(&mid - hi * &half, &mid - lo * &half);
        if bracket.ceil().is_some() {
            return Ok(bracket);
        }
        digits *= 2;
    }
}

/// Lower bound on the signaling dimension of the erasure channel from the
/// ambiguous games with `n'` outputs. When the root reaches `d`, the bound
/// `d` needs `3 - n' + mu (n' - 1) > 0`; otherwise `d - 1` is reported.
pub fn erasure_lower_bound(mu: &Rational, d: usize, n_prime: usize) -> Result<usize> {
    if mu.is_zero() {
        check(mu, d)?;
        return Ok(1);
    }
    let root = erasure_ambiguous_root(mu, d, n_prime)?;
    let r = root.ceil().expect("bracket decides the ceiling").min(d);
    if r < d {
        return Ok(r.max(1));
    }
    let np = rational::int(n_prime as i64);
    let edge = rational::int(3) - &np + mu * (&np - Rational::one());
    Ok(if edge.is_positive() { d } else { d - 1 })
}
