//! Facet classes of C_2^(6->4) by adjacency decomposition from a lifted ML
//! facet.

use signaling::adjacency::{adjacency_decomposition_with, seed_facet, Options};
use signaling::PolytopeSpec;

fn main() -> signaling::Result<()> {
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    let spec = PolytopeSpec::new(6, 4, 2)?;
    let seed = seed_facet(&spec)?;
    let state = adjacency_decomposition_with(&spec, &seed, &Options { threads, ..Options::default() })?;
    println!("finished in {:.2?}, complete = {}", state.elapsed, state.is_complete());
    for g in state.nontrivial_classes() {
        println!("bound {}, {} facets in class", g.canonical.gamma, g.class_size());
        println!("{:?}\n", g.canonical.g);
    }
    println!("{} trivial class(es)", state.trivial_classes().len());
    Ok(())
}
