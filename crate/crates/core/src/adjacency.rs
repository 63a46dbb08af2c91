//! Adjacency decomposition: walk the facet graph of a signaling polytope one
//! symmetry class at a time.
//!
//! Starting from a seed facet, each unconsidered class is expanded by listing
//! the ridges of its representative, rotating about each ridge to the
//! neighbouring facet, and canonicalizing the result. New classes join a FIFO
//! queue. When the queue drains, every facet class reachable from the seed has
//! been found.

use std::collections::VecDeque;
use std::sync::{Condvar, Mutex};
use std::time::{Duration, Instant};

use indexmap::IndexMap;
use serde_json::json;

use crate::channel::{enumerate_vertices, DeterministicVertex, PolytopeSpec};
use crate::error::{Error, Result};
use crate::facets::{canonical_class_rep, lift, ml_game, BellInequality, GeneratorFacet, Lift};
use crate::polyhedral::{
    enumerate_subfacets_with, is_trivial_facet, rotate_facet_with, trivial_facet, verify_facet_with,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassStatus {
    Unconsidered,
    Considered,
}

#[derive(Clone, Debug)]
pub struct ClassInfo {
    pub status: ClassStatus,
    pub trivial: bool,
}

/// Stop conditions. `max_classes` caps how many classes get expanded.
#[derive(Clone, Copy, Debug, Default)]
pub struct Budget {
    pub max_classes: Option<usize>,
    pub max_seconds: Option<f64>,
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub budget: Budget,
    pub threads: usize,
    /// Also expand non-negativity classes other than the seed. Their ridge
    /// sets are large, so this is off by default.
    pub expand_trivial: bool,
}

impl Default for Options {
    fn default() -> Self {
        Self { budget: Budget::default(), threads: 1, expand_trivial: false }
    }
}

#[derive(Clone, Debug)]
pub struct DecompositionState {
    pub spec: PolytopeSpec,
    pub seed: BellInequality,
    pub classes: IndexMap<GeneratorFacet, ClassInfo>,
    pub budget: Budget,
    pub budget_exhausted: bool,
    pub elapsed: Duration,
}

impl DecompositionState {
    pub fn nontrivial_classes(&self) -> Vec<&GeneratorFacet> {
        self.classes.iter().filter(|(_, i)| !i.trivial).map(|(g, _)| g).collect()
    }

    pub fn trivial_classes(&self) -> Vec<&GeneratorFacet> {
        self.classes.iter().filter(|(_, i)| i.trivial).map(|(g, _)| g).collect()
    }

    /// True when the queue drained without hitting the budget.
    pub fn is_complete(&self) -> bool {
        !self.budget_exhausted && self.classes.values().all(|i| i.trivial || i.status == ClassStatus::Considered)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let classes: Vec<serde_json::Value> = self
            .classes
            .iter()
            .map(|(g, info)| {
                json!({
                    "canonical": g.to_json(),
                    "status": match info.status {
                        ClassStatus::Unconsidered => "unconsidered",
                        ClassStatus::Considered => "considered",
                    },
                    "trivial": info.trivial,
                    "expanded": info.status == ClassStatus::Considered,
                    "class_size": g.class_size().to_string(),
                })
            })
            .collect();
        let considered = self.classes.values().filter(|i| i.status == ClassStatus::Considered).count();
        json!({
            "spec": { "n": self.spec.n, "n_prime": self.spec.n_prime, "d": self.spec.d },
            "seed": self.seed.to_json(),
            "classes": classes,
            "counts": {
                "total": self.classes.len(),
                "nontrivial": self.nontrivial_classes().len(),
                "trivial": self.trivial_classes().len(),
                "considered": considered,
            },
            "budget": {
                "exhausted": self.budget_exhausted,
                "max_classes": self.budget.max_classes,
                "max_seconds": self.budget.max_seconds,
                "elapsed_seconds": self.elapsed.as_secs_f64(),
            },
        })
    }
}

/// A known facet: the ML game on `d+1` outputs lifted to the polytope's shape,
/// or a non-negativity facet when `d = 1`.
pub fn seed_facet(spec: &PolytopeSpec) -> Result<BellInequality> {
    if spec.d >= spec.n.min(spec.n_prime) {
        return Err(Error::ParameterOutOfRange(format!(
            "a seed needs d < min(n, n') (got n={}, n'={}, d={})",
            spec.n, spec.n_prime, spec.d
        )));
    }
    if spec.d == 1 {
        return Ok(trivial_facet(spec));
    }
    let m = spec.d + 1;
    let ml = ml_game(m, spec.d)?;
    let wide = lift(&ml, &Lift::Input(spec.n - m))?;
    let mut rows = vec![0; spec.n_prime - spec.d];
    rows.extend(1..m);
    lift(&wide, &Lift::Output(rows))
}

struct Shared {
    classes: IndexMap<GeneratorFacet, ClassInfo>,
    queue: VecDeque<GeneratorFacet>,
    active: usize,
    expanded: usize,
    stopped: bool,
}

fn classify(facet: &BellInequality, spec: &PolytopeSpec, vertices: &[DeterministicVertex]) -> (GeneratorFacet, bool) {
    let trivial = is_trivial_facet(facet, vertices);
    let rep = if trivial && spec.d == 1 { trivial_facet(spec) } else { facet.clone() };
    (canonical_class_rep(&rep), trivial)
}

fn neighbours(
    class: &GeneratorFacet,
    spec: &PolytopeSpec,
    vertices: &[DeterministicVertex],
) -> Result<Vec<(GeneratorFacet, bool)>> {
    let facet = &class.canonical;
    let ridges = enumerate_subfacets_with(facet, spec, vertices)?;
    let mut out = Vec::with_capacity(ridges.len());
    for ridge in ridges {
        let rotated = rotate_facet_with(facet, &ridge.inequality, spec, vertices)?;
        out.push(classify(&rotated, spec, vertices));
    }
    Ok(out)
}

pub fn adjacency_decomposition(
    spec: &PolytopeSpec,
    seed: &BellInequality,
    budget: Budget,
) -> Result<DecompositionState> {
    adjacency_decomposition_with(spec, seed, &Options { budget, ..Options::default() })
}

/// Runs the decomposition with `options.threads` workers sharing one queue.
/// With a single worker the class order is reproducible.
pub fn adjacency_decomposition_with(
    spec: &PolytopeSpec,
    seed: &BellInequality,
    options: &Options,
) -> Result<DecompositionState> {
    let budget = options.budget;
    let start = Instant::now();
    let vertices = enumerate_vertices(spec);
    if !verify_facet_with(seed, spec, &vertices)?.is_tight {
        return Err(Error::SeedNotFacet);
    }
    let (seed_class, trivial) = classify(seed, spec, &vertices);
    let mut classes = IndexMap::new();
    classes.insert(seed_class.clone(), ClassInfo { status: ClassStatus::Unconsidered, trivial });
    let shared =
        Mutex::new(Shared { classes, queue: VecDeque::from([seed_class]), active: 0, expanded: 0, stopped: false });
    let wake = Condvar::new();
    let failure: Mutex<Option<Error>> = Mutex::new(None);

    let out_of_budget = |s: &Shared| {
        budget.max_classes.is_some_and(|m| s.expanded >= m)
            || budget.max_seconds.is_some_and(|m| start.elapsed().as_secs_f64() >= m)
    };

    let worker = || loop {
        let class = {
            let mut s = shared.lock().unwrap();
            loop {
                if s.stopped {
                    return;
                }
                if !s.queue.is_empty() {
                    if out_of_budget(&s) {
                        s.stopped = true;
                        wake.notify_all();
                        return;
                    }
                    break;
                }
                if s.active == 0 {
                    wake.notify_all();
                    return;
                }
                s = wake.wait(s).unwrap();
            }
            s.active += 1;
            s.expanded += 1;
            s.queue.pop_front().unwrap()
        };
        log::debug!("expanding class {:?}", class.canonical);
        let found = neighbours(&class, spec, &vertices);
        let mut s = shared.lock().unwrap();
        s.active -= 1;
        match found {
            Ok(found) => {
                for (g, trivial) in found {
                    if !s.classes.contains_key(&g) {
                        s.classes.insert(g.clone(), ClassInfo { status: ClassStatus::Unconsidered, trivial });
                        if !trivial || options.expand_trivial {
                            s.queue.push_back(g);
                        }
                    }
                }
                s.classes.get_mut(&class).unwrap().status = ClassStatus::Considered;
            }
            Err(e) => {
                failure.lock().unwrap().get_or_insert(e);
                s.stopped = true;
            }
        }
        wake.notify_all();
    };

    std::thread::scope(|scope| {
        for _ in 0..options.threads.max(1) {
            scope.spawn(worker);
        }
    });

    if let Some(e) = failure.into_inner().unwrap() {
        return Err(e);
    }
    let s = shared.into_inner().unwrap();
    Ok(DecompositionState {
        spec: *spec,
        seed: seed.clone(),
        budget_exhausted: s.stopped,
        classes: s.classes,
        budget,
        elapsed: start.elapsed(),
    })
}

/// Re-expands every considered class and checks that all neighbours are
/// already present.
pub fn check_closure(state: &DecompositionState) -> Result<bool> {
    let vertices = enumerate_vertices(&state.spec);
    for (class, info) in &state.classes {
        if info.status != ClassStatus::Considered {
            continue;
        }
        for (g, _) in neighbours(class, &state.spec, &vertices)? {
            if !state.classes.contains_key(&g) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
