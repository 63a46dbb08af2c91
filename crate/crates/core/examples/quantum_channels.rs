//! Classical channels induced by quantum setups, and their signaling
//! dimension.

use signaling::certifier::{certify_signaling_dimension, ml_sum};
use signaling::quantum::{induced_channel, standard_setup, SetupKind, DEFAULT_RATIONALIZE_TOL};
use signaling::rational::frac;
use signaling::sampling::{random_identity_setup, seeded};

fn main() -> signaling::Result<()> {
    for (kind, mu) in [(SetupKind::Erasure, frac(1, 2)), (SetupKind::Depolarizing, frac(1, 3))] {
        let setup = standard_setup(kind, &mu, 3)?;
        let p = induced_channel(&setup, DEFAULT_RATIONALIZE_TOL)?;
        let r = certify_signaling_dimension(&p)?;
        println!("{} mu = {mu}: {:?}", kind.name(), p.entries());
        println!("  kappa in [{}, {}]", r.lower, r.upper);
    }

    let mut rng = seeded(1);
    for _ in 0..3 {
        let setup = random_identity_setup(&mut rng, 2);
        let p = induced_channel(&setup, DEFAULT_RATIONALIZE_TOL)?;
        println!(
            "random qubit setup, {} states, {} outcomes: ML sum {:.6}",
            p.n(),
            p.n_prime(),
            signaling::rational::to_f64(&ml_sum(&p))
        );
    }
    Ok(())
}
