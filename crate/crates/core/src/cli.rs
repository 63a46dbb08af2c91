//! Command-line interface. Every run writes one JSON document to stdout.
//!
//! Exit status: 0 on success, 1 on usage errors, 2 on validation errors and
//! 3 when a budget ran out (the partial result is still written).

use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::adjacency::{adjacency_decomposition_with, seed_facet, Budget, Options};
use crate::certifier::{
    certify_with, membership_complete, replacer_bounds, CertifyOptions, ReplacerKind, ReplacerSpec,
};
use crate::channel::{enumerate_vertices, vertex_count, ClassicalChannel, PolytopeSpec};
use crate::error::{Error, Result};
use crate::facets::{score, BellInequality};
use crate::polyhedral::{hull_membership, verify_facet};
use crate::quantum::{induced_channel, standard_setup, SetupKind, DEFAULT_RATIONALIZE_TOL};
use crate::rational;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "signaling", version, about = "Signaling polytopes and signaling-dimension certification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(clap::Args, Debug)]
pub struct SpecArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long = "n-prime")]
    pub n_prime: usize,
    #[arg(long)]
    pub d: usize,
}

impl SpecArgs {
    fn spec(&self) -> Result<PolytopeSpec> {
        PolytopeSpec::new(self.n, self.n_prime, self.d)
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum BoundKind {
    Erasure,
    Depolarizing,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum GenerateKind {
    Erasure,
    Depolarizing,
    Identity,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Enumerate or count the vertices of C_d.
    Vertices {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        count_only: bool,
    },
    /// Generator facet classes by adjacency decomposition.
    Facets {
        #[command(flatten)]
        spec: SpecArgs,
        /// Seed inequality (JSON); defaults to a lifted ML facet.
        #[arg(long)]
        seed: Option<PathBuf>,
        #[arg(long, env = "SIGNALING_MAX_CLASSES")]
        max_classes: Option<usize>,
        #[arg(long, env = "SIGNALING_MAX_SECONDS")]
        max_seconds: Option<f64>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Also expand non-negativity classes.
        #[arg(long)]
        expand_trivial: bool,
    },
    /// Signaling dimension of a channel, or membership in C_d with --d.
    Certify {
        /// Channel JSON file, or - for stdin.
        #[arg(long)]
        channel: String,
        #[arg(long)]
        d: Option<usize>,
        /// Largest vertex count for which the LP is attempted.
        #[arg(long, env = "SIGNALING_VERTEX_CAP", default_value_t = 100_000)]
        vertex_cap: u64,
    },
    /// Score of a channel on a Bell inequality.
    Score {
        #[arg(long)]
        inequality: String,
        #[arg(long)]
        channel: String,
    },
    /// Check whether an inequality is a facet of C_d.
    VerifyFacet {
        #[arg(long)]
        inequality: String,
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Bounds on the signaling dimension of a replacer channel.
    ReplacerBounds {
        #[arg(long)]
        mu: String,
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value = "depolarizing")]
        kind: BoundKind,
    },
    /// Classical channel induced by a built-in quantum setup.
    Generate {
        #[arg(long, value_enum)]
        kind: GenerateKind,
        #[arg(long, default_value = "1")]
        mu: String,
        #[arg(long)]
        d: usize,
    },
}

fn read_json(source: &str) -> Result<Value> {
    let text = if source == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Parse(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(source).map_err(|e| Error::Parse(format!("{source}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{source}: {e}")))
}

pub fn error_json(code: &str, message: &str) -> Value {
    json!({ "error": { "code": code, "message": message } })
}

fn count_json(count: &num_bigint::BigUint) -> Value {
    match u64::try_from(count) {
        Ok(c) => json!(c),
        Err(_) => json!(count.to_string()),
    }
}

/// Runs a parsed command, returning the exit status and the JSON document.
pub fn execute(command: Command) -> Result<(i32, Value)> {
    match command {
        Command::Vertices { spec, count_only } => {
            let spec = spec.spec()?;
            let count = vertex_count(&spec);
            if count_only {
                return Ok((EXIT_OK, json!({ "count": count_json(&count) })));
            }
            let vertices: Vec<Value> = enumerate_vertices(&spec)
                .iter()
                .map(|v| json!({ "assignment": v.assignment(), "rank": v.rank() }))
                .collect();
            Ok((EXIT_OK, json!({ "count": count_json(&count), "vertices": vertices })))
        }
        Command::Facets { spec, seed, max_classes, max_seconds, threads, expand_trivial } => {
            let spec = spec.spec()?;
            let seed = match seed {
                Some(path) => BellInequality::from_json(&read_json(&path.to_string_lossy())?)?,
                None => seed_facet(&spec)?,
            };
            let options = Options { budget: Budget { max_classes, max_seconds }, threads, expand_trivial };
            let state = adjacency_decomposition_with(&spec, &seed, &options)?;
            let code = if state.budget_exhausted { EXIT_BUDGET } else { EXIT_OK };
            Ok((code, state.to_json()))
        }
        Command::Certify { channel, d, vertex_cap } => {
            let p = ClassicalChannel::from_json(&read_json(&channel)?)?;
            let Some(d) = d else {
                return Ok((EXIT_OK, certify_with(&p, &CertifyOptions { vertex_cap })?.to_json()));
            };
            let spec = PolytopeSpec::new(p.n(), p.n_prime(), d)?;
            match membership_complete(&p, d) {
                Ok(member) => Ok((EXIT_OK, json!({ "d": d, "member": member, "method": "closed-form" }))),
                Err(Error::RegimeNotCovered { .. }) => {
                    if vertex_count(&spec) > vertex_cap.into() {
                        return Err(Error::ResourceBudget(format!("more than {vertex_cap} vertices")));
                    }
                    let result = hull_membership(&p, &spec)?;
                    let mut out = json!({ "d": d, "member": result.member, "method": "lp" });
                    if let Some(w) = result.witness {
                        out["protocol_witness"] = w.to_json();
                    }
                    if let Some(c) = result.certificate {
                        out["violated_inequality"] = c.to_json();
                    }
                    Ok((EXIT_OK, out))
                }
                Err(e) => Err(e),
            }
        }
        Command::Score { inequality, channel } => {
            let ineq = BellInequality::from_json(&read_json(&inequality)?)?;
            let p = ClassicalChannel::from_json(&read_json(&channel)?)?;
            let s = score(&ineq, &p)?;
            Ok((
                EXIT_OK,
                json!({
                    "score": rational::to_string(&s),
                    "gamma": rational::to_string(&ineq.gamma),
                    "violated": s > ineq.gamma,
                }),
            ))
        }
        Command::VerifyFacet { inequality, spec } => {
            let ineq = BellInequality::from_json(&read_json(&inequality)?)?;
            let spec = spec.spec()?;
            let v = verify_facet(&ineq, &spec)?;
            Ok((
                EXIT_OK,
                json!({
                    "is_valid": v.is_valid,
                    "is_tight": v.is_tight,
                    "tight_vertex_count": v.tight_vertex_count,
                    "affine_rank_of_tight_set": v.affine_rank_of_tight_set,
                    "dimension": spec.dimension(),
                }),
            ))
        }
        Command::ReplacerBounds { mu, d, kind } => {
            let kind = match kind {
                BoundKind::Erasure => ReplacerKind::Erasure,
                BoundKind::Depolarizing => ReplacerKind::Depolarizing,
            };
            let spec = ReplacerSpec::new(rational::parse(&mu)?, d, kind)?;
            let (lower, upper) = replacer_bounds(&spec)?;
            Ok((EXIT_OK, json!({ "lower": lower, "upper": upper })))
        }
        Command::Generate { kind, mu, d } => {
            let kind = match kind {
                GenerateKind::Erasure => SetupKind::Erasure,
                GenerateKind::Depolarizing => SetupKind::Depolarizing,
                GenerateKind::Identity => SetupKind::Identity,
            };
            let mu_value = rational::parse(&mu)?;
            let setup = standard_setup(kind, &mu_value, d)?;
            let out_dim = setup.channel.out_dim();
            let p = induced_channel(&setup, DEFAULT_RATIONALIZE_TOL)?;
            let mut out = p.to_json();
            out["setup"] = json!({ "kind": kind.name(), "mu": rational::to_string(&mu_value), "d": d });
            // a POVM on d_B dimensions needs at most d_B^2 outcomes
            out["advisory_max_outcomes"] = json!(out_dim * out_dim);
            Ok((EXIT_OK, out))
        }
    }
}

/// Parses `args`, runs the command and returns the exit status with the
/// text to print on stdout.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return (EXIT_OK, e.to_string());
            }
            let msg = e.to_string();
            return (EXIT_USAGE, error_json("Usage", msg.trim()).to_string());
        }
    };
    match execute(cli.command) {
        Ok((code, value)) => (code, serde_json::to_string_pretty(&value).expect("json")),
        Err(e) => (EXIT_INVALID, error_json(e.code(), &e.to_string()).to_string()),
    }
}
