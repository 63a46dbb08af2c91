//! Signaling dimension bounds for partial replacer channels and the exact
//! value for erasure channels.

use signaling::certifier::{
    erasure_ambiguous_root, erasure_dimension, erasure_lower_bound, replacer_bounds, ReplacerKind, ReplacerSpec,
};
use signaling::rational::frac;

fn main() -> signaling::Result<()> {
    println!("depolarizing, d = 4");
    for t in 0..=4 {
        let mu = frac(t, 4);
        let (lo, hi) = replacer_bounds(&ReplacerSpec::new(mu.clone(), 4, ReplacerKind::Depolarizing)?)?;
        println!("  mu = {mu:<4} {lo} <= kappa <= {hi}");
    }

    println!("erasure, d = 3");
    for t in 0..=10 {
        let mu = frac(t, 10);
        let root = erasure_ambiguous_root(&mu, 3, 4)?;
        println!(
            "  mu = {mu:<5} kappa = {}  root {:.4}  lower bound {}",
            erasure_dimension(&mu, 3)?,
            root.approx(),
            erasure_lower_bound(&mu, 3, 4)?
        );
    }
    Ok(())
}
