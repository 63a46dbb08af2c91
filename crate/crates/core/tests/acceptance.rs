//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::collections::BTreeMap;
use std::io::Write;
use std::process::{Command, Stdio};
use std::time::Instant;

use num_bigint::BigUint;
use signaling::adjacency::{adjacency_decomposition, seed_facet, Budget};
use signaling::certifier::eight_class::{generator_facets, violation};
use signaling::certifier::{
    ambiguous_score_brute_force, ambiguous_score_max, certify_signaling_dimension, erasure_ambiguous_root,
    erasure_dimension, erasure_lower_bound, membership_complete, ml_sum,
};
use signaling::channel::{enumerate_vertices, vertex_count, DeterministicVertex};
use signaling::facets::{ambiguous_game, anti_guessing, canonical_class_rep, k_guessing, ml_game, score};
use signaling::polyhedral::{hull_membership_with, verify_facet};
use signaling::quantum::{induced_channel, standard_setup, SetupKind, DEFAULT_RATIONALIZE_TOL};
use signaling::rational::{self, frac, int};
use signaling::sampling::{channel_suite, random_channel, random_identity_setup, seeded};
use signaling::{BellInequality, ClassicalChannel, PolytopeSpec};

type Outcome = Result<String, String>;

#[derive(Default)]
struct WitnessTally {
    members: usize,
    non_members: usize,
    failures: Vec<String>,
}

impl WitnessTally {
    fn check(
        &mut self,
        p: &ClassicalChannel,
        spec: &PolytopeSpec,
        vertices: &[DeterministicVertex],
        member: bool,
        r: &signaling::polyhedral::MembershipResult,
    ) {
        if member {
            self.members += 1;
            match r.witness.as_ref().map(|w| w.reconstruct()) {
                Some(Ok(q)) if &q == p => {}
                other => self.failures.push(format!("{spec:?}: bad witness {other:?}")),
            }
        } else {
            self.non_members += 1;
            let ok = r.certificate.as_ref().is_some_and(|c| {
                score(c, p).is_ok_and(|s| s > c.gamma) && vertices.iter().all(|v| c.score_vertex(v) <= c.gamma)
            });
            if !ok {
                self.failures.push(format!("{spec:?}: bad certificate for {p:?}"));
            }
        }
    }
}

fn vertex_counts() -> Outcome {
    let mut checked = 0;
    for n in 1..=5 {
        for np in 1..=5 {
            for d in 1..=n.min(np) {
                let spec = PolytopeSpec::new(n, np, d).map_err(|e| e.to_string())?;
                let listed = enumerate_vertices(&spec).len();
                if BigUint::from(listed) != vertex_count(&spec) {
                    return Err(format!("({n},{np},{d}): {listed} listed, formula {}", vertex_count(&spec)));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} specs"))
}

fn generator_classes() -> Outcome {
    let spec = PolytopeSpec::new(6, 4, 2).unwrap();
    let seed = seed_facet(&spec).map_err(|e| e.to_string())?;
    let state = adjacency_decomposition(&spec, &seed, Budget::default()).map_err(|e| e.to_string())?;
    if !state.is_complete() {
        return Err("decomposition did not complete".into());
    }
    let found: BTreeMap<String, String> = state
        .nontrivial_classes()
        .iter()
        .map(|g| (format!("{:?}", g.canonical.g), rational::to_string(&g.canonical.gamma)))
        .collect();
    let expected: BTreeMap<String, String> = generator_facets()
        .iter()
        .map(|f| {
            let c = canonical_class_rep(f);
            (format!("{:?}", c.canonical.g), rational::to_string(&c.canonical.gamma))
        })
        .collect();
    let mut bounds: Vec<String> = found.values().cloned().collect();
    bounds.sort();
    if found.len() != 8 || found != expected {
        return Err(format!("{} classes, expected set matches: {}", found.len(), found == expected));
    }
    if bounds != ["2", "2", "3", "4", "4", "4", "4", "5"] {
        return Err(format!("bounds {bounds:?}"));
    }
    Ok(format!("8 classes, bounds {{{}}}, {:.2?}", bounds.join(","), state.elapsed))
}

fn tight(ineq: &BellInequality, n: usize, np: usize, d: usize) -> Result<bool, String> {
    let spec = PolytopeSpec::new(n, np, d).map_err(|e| e.to_string())?;
    verify_facet(ineq, &spec).map(|v| v.is_tight).map_err(|e| e.to_string())
}

fn facet_families() -> Outcome {
    let mut instances = Vec::new();
    for np in 2..=6usize {
        for k in 1..=np.saturating_sub(2) {
            let n = (0..k).fold(1, |a, i| a * (np - i) / (i + 1));
            if n <= 6 {
                instances.push((k_guessing(np, k, np - k), n, np, np - k));
            }
        }
        for d in 2..np {
            instances.push((ml_game(np, d), np, np, d));
        }
        for d in 2..=np.saturating_sub(2) {
            instances.push((ambiguous_game(np, d), np - 1, np, d));
            for eps in 3..=np - d + 1 {
                instances.push((anti_guessing(eps, np - eps, d), np, np, d));
            }
        }
    }
    let total = instances.len();
    for (ineq, n, np, d) in instances {
        let ineq = ineq.map_err(|e| e.to_string())?;
        if !tight(&ineq, n, np, d)? {
            return Err(format!("{:?} not tight on ({n},{np},{d})", ineq.family));
        }
    }
    let ambiguous_full = BellInequality::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]], 3);
    let ag = anti_guessing(3, 1, 2).unwrap();
    let outside = [
        ("ML with d = n'", ml_game(4, 4).unwrap(), 4, 4, 4),
        ("k-guessing with d != n'-k", k_guessing(4, 2, 3).unwrap(), 6, 4, 3),
        ("ambiguous with d = n'-1", ambiguous_full, 3, 4, 3),
        ("anti-guessing with d = n'-1", BellInequality::new(ag.g, int(4)), 4, 4, 3),
    ];
    for (name, ineq, n, np, d) in outside {
        if tight(&ineq, n, np, d)? {
            return Err(format!("{name} reported tight"));
        }
    }
    Ok(format!("{total} in-range instances tight, 4 out-of-range not"))
}

fn closed_form_vs_lp(specs: &[(usize, usize, usize)], tally: &mut WitnessTally, eight: bool) -> Outcome {
    let mut agree = 0;
    for &(n, np, d) in specs {
        let spec = PolytopeSpec::new(n, np, d).unwrap();
        let vertices = enumerate_vertices(&spec);
        let mut rng = seeded((n * 100 + np * 10 + d) as u64);
        for p in channel_suite(&mut rng, &spec, 200) {
            let closed =
                if eight { violation(&p).is_none() } else { membership_complete(&p, d).map_err(|e| e.to_string())? };
            let r = hull_membership_with(&p, &spec, &vertices).map_err(|e| e.to_string())?;
            tally.check(&p, &spec, &vertices, r.member, &r);
            if closed != r.member {
                return Err(format!("({n},{np},{d}) disagree on {p:?}: closed form {closed}, LP {}", r.member));
            }
            agree += 1;
        }
    }
    Ok(format!("{agree}/{agree} agree over {} specs", specs.len()))
}

/// Largest n' + 1 with n' - 1 <= min(n, n') and n' <= 5.
fn np_limit(n: usize) -> usize {
    6.min(n + 2)
}

fn complete_regimes(tally: &mut WitnessTally) -> Outcome {
    let mut specs = Vec::new();
    for n in 2..=5 {
        for np in 2..np_limit(n) {
            specs.push((n, np, np - 1));
        }
    }
    for n in 2..=5 {
        for np in n..=5 {
            if !specs.contains(&(n, np, n - 1)) {
                specs.push((n, np, n - 1));
            }
        }
    }
    closed_form_vs_lp(&specs, tally, false)
}

fn eight_classes(tally: &mut WitnessTally) -> Outcome {
    closed_form_vs_lp(&[(3, 4, 2), (4, 4, 2), (5, 4, 2), (6, 4, 2)], tally, true)
}

fn sorting_vs_brute_force() -> Outcome {
    let mut rng = seeded(6);
    let mut comparisons = 0;
    for i in 0..200 {
        let np = 2 + i % 5;
        let n = 2 + (i / 5) % 5;
        let p = random_channel(&mut rng, n, np, 5);
        for d in 1..=n.min(np) {
            for k in 0..=np {
                let fast = ambiguous_score_max(&p, k, d).map_err(|e| e.to_string())?;
                let slow = ambiguous_score_brute_force(&p, k, d).map_err(|e| e.to_string())?;
                if fast != slow {
                    return Err(format!("k={k}, d={d}: sorted {fast}, brute force {slow} on {p:?}"));
                }
                comparisons += 1;
            }
        }
    }
    Ok(format!("{comparisons} comparisons"))
}

fn erasure_formula() -> Outcome {
    for d in 2..=4 {
        for t in 0..=10 {
            let mu = frac(t, 10);
            let expected = d.min(rational::ceil_usize(&(&mu * int(d as i64) + int(1))));
            let formula = erasure_dimension(&mu, d).map_err(|e| e.to_string())?;
            let root = erasure_ambiguous_root(&mu, d, d + 1).map_err(|e| e.to_string())?;
            let bound = erasure_lower_bound(&mu, d, d + 1).map_err(|e| e.to_string())?;
            if formula != expected || bound != expected || root.ceil().map(|r| r.min(d)) != Some(expected) {
                return Err(format!(
                    "mu={mu}, d={d}: formula {formula}, root {root:?}, bound {bound}, expected {expected}"
                ));
            }
        }
    }
    for t in 0..=10 {
        let mu = frac(t, 10);
        let p = induced_channel(&standard_setup(SetupKind::Erasure, &mu, 3).unwrap(), DEFAULT_RATIONALIZE_TOL)
            .map_err(|e| e.to_string())?;
        let r = certify_signaling_dimension(&p).map_err(|e| e.to_string())?;
        let expected = erasure_dimension(&mu, 3).unwrap();
        if !(r.exact && r.lower == expected) {
            return Err(format!("certify at mu={mu}: [{}, {}], expected {expected}", r.lower, r.upper));
        }
    }
    let bin = env!("CARGO_BIN_EXE_signaling");
    let generated = Command::new(bin)
        .args(["generate", "--kind", "erasure", "--mu", "1/2", "--d", "3"])
        .output()
        .map_err(|e| e.to_string())?;
    let mut certify = Command::new(bin)
        .args(["certify", "--channel", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .map_err(|e| e.to_string())?;
    certify.stdin.take().unwrap().write_all(&generated.stdout).map_err(|e| e.to_string())?;
    let out = certify.wait_with_output().map_err(|e| e.to_string())?;
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    if json["kappa_lower"] != 3 || json["kappa_upper"] != 3 || json["exact"] != true {
        return Err(format!("pipeline returned {json}"));
    }
    Ok("33 grid points, certified grid and CLI pipeline give kappa = 3 at mu = 1/2".into())
}

fn identity_setups() -> Outcome {
    let mut rng = seeded(9);
    for i in 0..100 {
        let d = 2 + i % 2;
        let setup = random_identity_setup(&mut rng, d);
        let p = induced_channel(&setup, DEFAULT_RATIONALIZE_TOL).map_err(|e| e.to_string())?;
        let s = ml_sum(&p);
        if s > int(d as i64) {
            return Err(format!("d={d}: ML sum {s}"));
        }
    }
    Ok("100 setups".into())
}

fn report(id: usize, name: &str, outcome: Outcome, started: Instant) -> bool {
    let elapsed = started.elapsed();
    match outcome {
        Ok(detail) => {
            println!("criterion {id} PASS {name}: {detail} ({elapsed:.2?})");
            true
        }
        Err(detail) => {
            println!("criterion {id} FAIL {name}: {detail} ({elapsed:.2?})");
            false
        }
    }
}

fn main() {
    let mut ok = true;
    let t = Instant::now();
    ok &= report(1, "vertex count agreement", vertex_counts(), t);
    let t = Instant::now();
    ok &= report(2, "generator classes of C_2^(6->4)", generator_classes(), t);
    let t = Instant::now();
    ok &= report(3, "facet family tightness", facet_families(), t);
    let mut tally = WitnessTally::default();
    let t = Instant::now();
    ok &= report(4, "complete characterizations vs LP", complete_regimes(&mut tally), t);
    let t = Instant::now();
    ok &= report(5, "eight-class test vs LP", eight_classes(&mut tally), t);
    let t = Instant::now();
    ok &= report(6, "sorted ambiguous score vs brute force", sorting_vs_brute_force(), t);
    let t = Instant::now();
    ok &= report(7, "erasure channel formula", erasure_formula(), t);
    let t = Instant::now();
    let witnesses = if tally.failures.is_empty() {
        Ok(format!("{} protocols and {} certificates checked", tally.members, tally.non_members))
    } else {
        Err(tally.failures.join("; "))
    };
    ok &= report(8, "witness soundness", witnesses, t);
    let t = Instant::now();
    ok &= report(9, "identity channel ML sum", identity_setups(), t);
    if !ok {
        std::process::exit(1);
    }
}
