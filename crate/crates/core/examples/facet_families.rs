//! Bell inequality families, checked as facets of the signaling polytopes
//! they belong to.

use signaling::facets::{ambiguous_game, anti_guessing, k_guessing, lift, ml_game, rescale_ambiguous, Lift};
use signaling::polyhedral::verify_facet;
use signaling::rational::int;
use signaling::{BellInequality, PolytopeSpec};

fn report(name: &str, ineq: &BellInequality, n: usize, np: usize, d: usize) -> signaling::Result<()> {
    let verdict = verify_facet(ineq, &PolytopeSpec::new(n, np, d)?)?;
    println!(
        "{name:<34} C_{d}^({n}->{np})  valid={} facet={} tight vertices={}",
        verdict.is_valid, verdict.is_tight, verdict.tight_vertex_count
    );
    Ok(())
}

fn main() -> signaling::Result<()> {
    let kg = k_guessing(4, 2, 2)?;
    println!("{:?} <= {}\n", kg.g, kg.gamma);
    report("2-guessing, 4 outputs", &kg, 6, 4, 2)?;
    report("ML, 4 outputs", &ml_game(4, 2)?, 4, 4, 2)?;
    report("ML with d = n'", &ml_game(3, 3)?, 3, 3, 3)?;
    report("ambiguous, 4 outputs", &ambiguous_game(4, 2)?, 3, 4, 2)?;
    report("anti-guessing", &anti_guessing(3, 1, 2)?, 4, 4, 2)?;

    let rescaled = rescale_ambiguous(&ambiguous_game(4, 2)?, 0, (int(1), int(1)))?;
    report("rescaled ambiguous", &rescaled, 4, 4, 2)?;

    let wide = lift(&ml_game(3, 2)?, &Lift::Input(2))?;
    let tall = lift(&wide, &Lift::Output(vec![0, 0, 1, 2]))?;
    report("ML lifted to 5 inputs, 4 outputs", &tall, 5, 4, 2)?;
    Ok(())
}
