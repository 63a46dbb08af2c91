//! Ridges of a facet and the neighbouring facets reached by rotating about
//! them.

use std::collections::BTreeSet;

use signaling::facets::{canonical_class_rep, ml_game};
use signaling::polyhedral::{enumerate_subfacets, rotate_facet, verify_facet};
use signaling::PolytopeSpec;

fn main() -> signaling::Result<()> {
    let spec = PolytopeSpec::new(3, 3, 2)?;
    let facet = ml_game(3, 2)?;
    let ridges = enumerate_subfacets(&facet, &spec)?;
    println!("the ML facet of C_2^(3->3) has {} ridges", ridges.len());

    let mut classes = BTreeSet::new();
    for ridge in &ridges {
        let next = rotate_facet(&facet, &ridge.inequality, &spec)?;
        assert!(verify_facet(&next, &spec)?.is_tight);
        classes.insert(format!("{:?} <= {}", canonical_class_rep(&next).canonical.g, next.gamma));
    }
    println!("neighbouring classes:");
    for c in classes {
        println!("  {c}");
    }
    Ok(())
}
