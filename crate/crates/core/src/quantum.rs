//! Quantum states, measurements and channels, and the classical channels
//! they induce: `P(y|x) = Tr[Pi_y N(rho_x)]`.
//!
//! Everything here is double precision. [`induced_channel`] is the single
//! crossing into exact arithmetic.

use nalgebra::{Complex, DMatrix, DVector};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::json;

use crate::certifier::{ReplacerKind, ReplacerSpec};
use crate::channel::ClassicalChannel;
use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::rational::{self, Rational};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;

pub const HERMITIAN_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
pub const PSD_TOL: f64 = -1e-10;
pub const DEFAULT_RATIONALIZE_TOL: f64 = 1e-9;
pub const MAX_DENOMINATOR: i64 = 1_000_000;

fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn check_square(m: &CMatrix, what: &str) -> Result<usize> {
    if m.nrows() != m.ncols() || m.nrows() == 0 {
        return Err(Error::InvalidQuantum(format!("{what} must be a nonempty square matrix")));
    }
    Ok(m.nrows())
}

fn check_hermitian_psd(m: &CMatrix, what: &str) -> Result<()> {
    if max_abs(&(m - m.adjoint())) > HERMITIAN_TOL {
        return Err(Error::InvalidQuantum(format!("{what} is not Hermitian")));
    }
    let min = m.clone().symmetric_eigenvalues().iter().cloned().fold(f64::INFINITY, f64::min);
    if min < PSD_TOL {
        return Err(Error::InvalidQuantum(format!("{what} has eigenvalue {min:e}")));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    entries: CMatrix,
}

impl DensityMatrix {
    pub fn new(entries: CMatrix) -> Result<Self> {
        check_square(&entries, "density matrix")?;
        check_hermitian_psd(&entries, "density matrix")?;
        let trace = entries.trace();
        if (trace - C64::new(1.0, 0.0)).norm() > TRACE_TOL {
            return Err(Error::InvalidQuantum(format!("density matrix has trace {trace}")));
        }
        Ok(Self { entries })
    }

    /// `|psi><psi|` for a normalized copy of `psi`.
    pub fn pure(psi: &DVector<C64>) -> Result<Self> {
        let norm = psi.norm();
        if norm == 0.0 {
            return Err(Error::InvalidQuantum("zero state vector".into()));
        }
        let v = psi / C64::new(norm, 0.0);
        Self::new(&v * v.adjoint())
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut m = CMatrix::zeros(dim, dim);
        m[(i, i)] = C64::new(1.0, 0.0);
        Self { entries: m }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self { entries: CMatrix::identity(dim, dim) / C64::new(dim as f64, 0.0) }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Povm {
    elements: Vec<CMatrix>,
}

impl Povm {
    pub fn new(elements: Vec<CMatrix>) -> Result<Self> {
        let first = elements.first().ok_or_else(|| Error::InvalidQuantum("empty POVM".into()))?;
        let dim = check_square(first, "POVM element")?;
        let mut total = CMatrix::zeros(dim, dim);
        for e in &elements {
            if check_square(e, "POVM element")? != dim {
                return Err(Error::DimensionMismatch("POVM elements differ in dimension".into()));
            }
            check_hermitian_psd(e, "POVM element")?;
            total += e;
        }
        if max_abs(&(total - CMatrix::identity(dim, dim))) > HERMITIAN_TOL {
            return Err(Error::InvalidQuantum("POVM elements do not sum to the identity".into()));
        }
        Ok(Self { elements })
    }

    /// Projectors onto the computational basis.
    pub fn basis(dim: usize) -> Self {
        Self { elements: (0..dim).map(|i| DensityMatrix::basis(dim, i).entries).collect() }
    }

    pub fn dim(&self) -> usize {
        self.elements[0].nrows()
    }

    pub fn elements(&self) -> &[CMatrix] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// A channel in Kraus form, `N(X) = sum_k K X K^dagger`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumChannel {
    in_dim: usize,
    out_dim: usize,
    kraus: Vec<CMatrix>,
}

impl QuantumChannel {
    pub fn new(kraus: Vec<CMatrix>) -> Result<Self> {
        let first = kraus.first().ok_or_else(|| Error::InvalidQuantum("no Kraus operators".into()))?;
        let (out_dim, in_dim) = first.shape();
        let mut total = CMatrix::zeros(in_dim, in_dim);
        for k in &kraus {
            if k.shape() != (out_dim, in_dim) {
                return Err(Error::DimensionMismatch("Kraus operators differ in shape".into()));
            }
            total += k.adjoint() * k;
        }
        if max_abs(&(total - CMatrix::identity(in_dim, in_dim))) > HERMITIAN_TOL {
            return Err(Error::InvalidQuantum("Kraus operators are not trace preserving".into()));
        }
        Ok(Self { in_dim, out_dim, kraus })
    }

    pub fn identity(dim: usize) -> Self {
        Self { in_dim: dim, out_dim: dim, kraus: vec![CMatrix::identity(dim, dim)] }
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn kraus(&self) -> &[CMatrix] {
        &self.kraus
    }

    pub fn apply(&self, rho: &CMatrix) -> Result<CMatrix> {
        if rho.nrows() != self.in_dim || rho.ncols() != self.in_dim {
            return Err(Error::DimensionMismatch(format!(
                "state has dimension {}, channel expects {}",
                rho.nrows(),
                self.in_dim
            )));
        }
        let mut out = CMatrix::zeros(self.out_dim, self.out_dim);
        for k in &self.kraus {
            out += k * rho * k.adjoint();
        }
        Ok(out)
    }

    /// The adjoint map `X -> sum_k K^dagger X K`.
    pub fn apply_adjoint(&self, x: &CMatrix) -> Result<CMatrix> {
        if x.nrows() != self.out_dim || x.ncols() != self.out_dim {
            return Err(Error::DimensionMismatch("operator does not match the output space".into()));
        }
        let mut out = CMatrix::zeros(self.in_dim, self.in_dim);
        for k in &self.kraus {
            out += k.adjoint() * x * k;
        }
        Ok(out)
    }
}

/// `mu X + (1 - mu) Tr[X] sigma` on a `d`-dimensional input embedded into
/// the first `d` levels of `sigma`'s space.
pub fn replacer_channel(mu: f64, d: usize, sigma: &CMatrix) -> Result<QuantumChannel> {
    if !(0.0..=1.0).contains(&mu) {
        return Err(Error::ParameterOutOfRange(format!("mu must lie in [0, 1], got {mu}")));
    }
    let sigma = DensityMatrix::new(sigma.clone()).map_err(|e| Error::BadSigma(e.to_string()))?;
    let out = sigma.dim();
    if out < d {
        return Err(Error::BadSigma(format!("replacement state has dimension {out} < {d}")));
    }
    let mut kraus = Vec::new();
    if mu > 0.0 {
        let mut embed = CMatrix::zeros(out, d);
        for i in 0..d {
            embed[(i, i)] = C64::new(mu.sqrt(), 0.0);
        }
        kraus.push(embed);
    }
    if mu < 1.0 {
        let eig = sigma.entries.clone().symmetric_eigen();
        for (j, &lambda) in eig.eigenvalues.iter().enumerate() {
            if lambda <= 0.0 {
                continue;
            }
            let scale = C64::new(((1.0 - mu) * lambda).sqrt(), 0.0);
            let v = eig.eigenvectors.column(j);
            for i in 0..d {
                let mut k = CMatrix::zeros(out, d);
                k.column_mut(i).copy_from(&(v * scale));
                kraus.push(k);
            }
        }
    }
    QuantumChannel::new(kraus)
}

/// Kraus realization of the replacer family. Erasure outputs live in
/// dimension `d + 1` with the flag as the last basis state.
pub fn make_replacer(spec: &ReplacerSpec) -> Result<QuantumChannel> {
    let mu = rational::to_f64(&spec.mu);
    match &spec.kind {
        ReplacerKind::Erasure => replacer_channel(mu, spec.d, DensityMatrix::basis(spec.d + 1, spec.d).entries()),
        ReplacerKind::Depolarizing => replacer_channel(mu, spec.d, DensityMatrix::maximally_mixed(spec.d).entries()),
        ReplacerKind::General(desc) => {
            Err(Error::BadSigma(format!("no replacement state given for '{desc}'; use replacer_channel")))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetupKind {
    Erasure,
    Depolarizing,
    Identity,
}

impl SetupKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "erasure" => Ok(Self::Erasure),
            "depolarizing" => Ok(Self::Depolarizing),
            "identity" => Ok(Self::Identity),
            other => Err(Error::Parse(format!("unknown channel kind '{other}'"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Erasure => "erasure",
            Self::Depolarizing => "depolarizing",
            Self::Identity => "identity",
        }
    }
}

#[derive(Clone, Debug)]
pub struct QuantumSetup {
    pub states: Vec<DensityMatrix>,
    pub povm: Povm,
    pub channel: QuantumChannel,
}

impl QuantumSetup {
    pub fn new(states: Vec<DensityMatrix>, povm: Povm, channel: QuantumChannel) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::InvalidQuantum("no input states".into()));
        }
        if states.iter().any(|s| s.dim() != channel.in_dim()) {
            return Err(Error::DimensionMismatch("state dimension differs from the channel input".into()));
        }
        if povm.dim() != channel.out_dim() {
            return Err(Error::DimensionMismatch("POVM dimension differs from the channel output".into()));
        }
        Ok(Self { states, povm, channel })
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "d_in": self.channel.in_dim(),
            "d_out": self.channel.out_dim(),
            "states": self.states.iter().map(|s| matrix_to_json(s.entries())).collect::<Vec<_>>(),
            "povm": self.povm.elements().iter().map(matrix_to_json).collect::<Vec<_>>(),
            "kraus": self.channel.kraus().iter().map(matrix_to_json).collect::<Vec<_>>(),
        })
    }

    /// Accepts `{kind, mu, d}` for a built-in setup, explicit `states`,
    /// `povm` and `kraus` arrays of `[re, im]` pairs, or a mix where explicit
    /// entries override the built-in ones.
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let base = match value.get("kind").and_then(|k| k.as_str()) {
            Some(kind) => {
                let d = value
                    .get("d")
                    .and_then(|d| d.as_u64())
                    .ok_or_else(|| Error::Parse("setup needs integer 'd'".into()))? as usize;
                let mu = match value.get("mu") {
                    Some(serde_json::Value::String(s)) => rational::parse(s)?,
                    Some(_) => return Err(Error::Parse("'mu' must be a rational string".into())),
                    None => Rational::from_integer(1.into()),
                };
                Some(standard_setup(SetupKind::parse(kind)?, &mu, d)?)
            }
            None => None,
        };
        let list = |key: &str| -> Result<Option<Vec<CMatrix>>> {
            match value.get(key) {
                None => Ok(None),
                Some(serde_json::Value::Array(items)) => {
                    items.iter().map(matrix_from_json).collect::<Result<_>>().map(Some)
                }
                Some(_) => Err(Error::Parse(format!("'{key}' must be an array of matrices"))),
            }
        };
        let states = match list("states")? {
            Some(ms) => ms.into_iter().map(DensityMatrix::new).collect::<Result<Vec<_>>>()?,
            None => base
                .as_ref()
                .map(|b| b.states.clone())
                .ok_or_else(|| Error::Parse("setup needs 'states' or 'kind'".into()))?,
        };
        let povm = match list("povm")? {
            Some(ms) => Povm::new(ms)?,
            None => base
                .as_ref()
                .map(|b| b.povm.clone())
                .ok_or_else(|| Error::Parse("setup needs 'povm' or 'kind'".into()))?,
        };
        let channel = match list("kraus")? {
            Some(ms) => QuantumChannel::new(ms)?,
            None => base.map(|b| b.channel).unwrap_or_else(|| QuantumChannel::identity(states[0].dim())),
        };
        Self::new(states, povm, channel)
    }
}

pub fn matrix_to_json(m: &CMatrix) -> serde_json::Value {
    json!((0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| json!([m[(i, j)].re, m[(i, j)].im])).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

pub fn matrix_from_json(value: &serde_json::Value) -> Result<CMatrix> {
    let bad = || Error::Parse("matrix must be rows of [re, im] pairs".into());
    let rows = value.as_array().ok_or_else(bad)?;
    let cols = rows.first().and_then(|r| r.as_array()).map_or(0, |r| r.len());
    let mut data = Vec::with_capacity(rows.len() * cols);
    for row in rows {
        let row = row.as_array().filter(|r| r.len() == cols).ok_or_else(bad)?;
        for z in row {
            let pair = z.as_array().filter(|p| p.len() == 2).ok_or_else(bad)?;
            let re = pair[0].as_f64().ok_or_else(bad)?;
            let im = pair[1].as_f64().ok_or_else(bad)?;
            data.push(C64::new(re, im));
        }
    }
    Ok(CMatrix::from_row_slice(rows.len(), cols, &data))
}

/// Basis states in, basis measurement out (plus the flag outcome for
/// erasure).
pub fn standard_setup(kind: SetupKind, mu: &Rational, d: usize) -> Result<QuantumSetup> {
    if d < 2 {
        return Err(Error::ParameterOutOfRange(format!("d must be at least 2, got {d}")));
    }
    let states = (0..d).map(|x| DensityMatrix::basis(d, x)).collect();
    let (channel, out) = match kind {
        SetupKind::Identity => (QuantumChannel::identity(d), d),
        SetupKind::Erasure => (make_replacer(&ReplacerSpec::new(mu.clone(), d, ReplacerKind::Erasure)?)?, d + 1),
        SetupKind::Depolarizing => (make_replacer(&ReplacerSpec::new(mu.clone(), d, ReplacerKind::Depolarizing)?)?, d),
    };
    QuantumSetup::new(states, Povm::basis(out), channel)
}

/// Snaps `v` to a rational with denominator at most `10^6` when one lies
/// within `tol`; otherwise keeps the exact binary value.
fn snap(v: f64, tol: f64) -> Result<Rational> {
    if v.abs() <= tol {
        return Ok(Rational::zero());
    }
    let exact = rational::from_f64_exact(v)
        .ok_or_else(|| Error::RationalizationFailed(format!("non-finite probability {v}")))?;
    let near = rational::limit_denominator(&exact, &BigInt::from(MAX_DENOMINATOR));
    Ok(if (rational::to_f64(&near) - v).abs() <= tol { near } else { exact })
}

/// `P(y|x) = Re Tr[Pi_y N(rho_x)]`, rationalized and made exactly column
/// stochastic; the largest entry in each column absorbs the residual.
pub fn induced_channel(setup: &QuantumSetup, tol: f64) -> Result<ClassicalChannel> {
    let n = setup.states.len();
    let np = setup.povm.len();
    let mut m = RatMatrix::zeros(np, n);
    for (x, state) in setup.states.iter().enumerate() {
        let out = setup.channel.apply(state.entries())?;
        let mut column = Vec::with_capacity(np);
        for pi in setup.povm.elements() {
            let p = (pi * &out).trace();
            if p.im.abs() > tol || p.re < -tol {
                return Err(Error::RationalizationFailed(format!("probability {p} at input {x}")));
            }
            column.push(snap(p.re, tol)?);
        }
        let residual = Rational::from_integer(1.into()) - column.iter().sum::<Rational>();
        if rational::to_f64(&residual).abs() > tol * np as f64 {
            return Err(Error::RationalizationFailed(format!(
                "column {x} misses normalization by {}",
                rational::to_f64(&residual)
            )));
        }
        let top = (0..np).max_by(|&a, &b| column[a].cmp(&column[b]).then(b.cmp(&a))).unwrap();
        column[top] += residual;
        for (y, v) in column.into_iter().enumerate() {
            if v.is_negative() {
                return Err(Error::RationalizationFailed(format!("negative probability at ({y}, {x})")));
            }
            m[(y, x)] = v;
        }
    }
    ClassicalChannel::new(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn close(a: &CMatrix, b: &CMatrix) -> bool {
        max_abs(&(a - b)) < 1e-12
    }

    #[test]
    fn validation() {
        let mut m = CMatrix::identity(2, 2);
        assert!(DensityMatrix::new(m.clone()).is_err());
        m[(1, 1)] = C64::new(0.0, 0.0);
        assert!(DensityMatrix::new(m.clone()).is_ok());
        m[(0, 1)] = C64::new(0.0, 0.5);
        assert!(DensityMatrix::new(m).is_err());
        assert!(Povm::new(vec![CMatrix::identity(2, 2) * C64::new(0.5, 0.0)]).is_err());
        assert!(QuantumChannel::new(vec![CMatrix::identity(2, 2) * C64::new(0.5, 0.0)]).is_err());
    }

    #[test]
    fn replacers() {
        let plus = DensityMatrix::pure(&DVector::from_vec(vec![C64::new(1.0, 0.0), C64::new(0.0, 1.0)])).unwrap();
        let id = make_replacer(&ReplacerSpec::new(int(1), 2, ReplacerKind::Depolarizing).unwrap()).unwrap();
        assert!(close(&id.apply(plus.entries()).unwrap(), plus.entries()));

        let erase = make_replacer(&ReplacerSpec::new(int(0), 2, ReplacerKind::Erasure).unwrap()).unwrap();
        let flag = DensityMatrix::basis(3, 2);
        assert!(close(&erase.apply(plus.entries()).unwrap(), flag.entries()));

        let dep = make_replacer(&ReplacerSpec::new(frac(1, 2), 2, ReplacerKind::Depolarizing).unwrap()).unwrap();
        let out = dep.apply(DensityMatrix::basis(2, 0).entries()).unwrap();
        let want = CMatrix::from_diagonal(&DVector::from_vec(vec![C64::new(0.75, 0.0), C64::new(0.25, 0.0)]));
        assert!(close(&out, &want));

        let general = ReplacerSpec::new(frac(1, 2), 2, ReplacerKind::General("custom".into())).unwrap();
        assert!(matches!(make_replacer(&general), Err(Error::BadSigma(_))));
        assert!(matches!(replacer_channel(0.5, 2, &CMatrix::identity(2, 2)), Err(Error::BadSigma(_))));
    }

    #[test]
    fn induced() {
        let p = induced_channel(&standard_setup(SetupKind::Erasure, &frac(1, 2), 3).unwrap(), DEFAULT_RATIONALIZE_TOL)
            .unwrap();
        let (h, z) = (frac(1, 2), int(0));
        let want = ClassicalChannel::from_rows(vec![
            vec![h.clone(), z.clone(), z.clone()],
            vec![z.clone(), h.clone(), z.clone()],
            vec![z.clone(), z, h.clone()],
            vec![h.clone(), h.clone(), h],
        ])
        .unwrap();
        assert_eq!(p, want);

        let id = standard_setup(SetupKind::Identity, &int(1), 3).unwrap();
        assert_eq!(induced_channel(&id, DEFAULT_RATIONALIZE_TOL).unwrap(), ClassicalChannel::identity(3));
        let dep1 = standard_setup(SetupKind::Depolarizing, &int(1), 2).unwrap();
        assert_eq!(induced_channel(&dep1, DEFAULT_RATIONALIZE_TOL).unwrap(), ClassicalChannel::identity(2));
        let dep0 = standard_setup(SetupKind::Depolarizing, &int(0), 3).unwrap();
        assert_eq!(induced_channel(&dep0, DEFAULT_RATIONALIZE_TOL).unwrap(), ClassicalChannel::uniform(3, 3));
        let dep = standard_setup(SetupKind::Depolarizing, &frac(1, 3), 3).unwrap();
        let p = induced_channel(&dep, DEFAULT_RATIONALIZE_TOL).unwrap();
        assert_eq!(p.get(0, 0), &frac(5, 9));
        assert_eq!(p.get(1, 0), &frac(2, 9));
    }

    #[test]
    fn json_round_trip() {
        let setup = standard_setup(SetupKind::Erasure, &frac(1, 3), 2).unwrap();
        let back = QuantumSetup::from_json(&setup.to_json()).unwrap();
        assert_eq!(back.states, setup.states);
        assert_eq!(back.povm, setup.povm);
        let built = QuantumSetup::from_json(&json!({"kind": "erasure", "mu": "1/3", "d": 2})).unwrap();
        assert_eq!(
            induced_channel(&built, DEFAULT_RATIONALIZE_TOL).unwrap(),
            induced_channel(&setup, DEFAULT_RATIONALIZE_TOL).unwrap()
        );
    }
}
