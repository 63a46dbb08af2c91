use proptest::prelude::*;
use signaling::channel::enumerate_vertices;
use signaling::facets::{ambiguous_game, canonical_class_rep, k_guessing, lift, ml_game, score, Lift};
use signaling::polyhedral::{
    enumerate_facets, enumerate_subfacets, hull_membership, hull_membership_with, rotate_facet, verify_facet,
};
use signaling::sampling::{channel_suite, seeded, vertex_mixture};
use signaling::{ClassicalChannel, Error, PolytopeSpec};

// facet counts from an independent double-description run
#[test]
fn frozen_facet_counts() {
    for ((n, np, d), count) in [((2, 3, 1), 3), ((3, 3, 2), 15), ((3, 4, 2), 72), ((4, 3, 2), 36), ((4, 4, 2), 664)] {
        let spec = PolytopeSpec::new(n, np, d).unwrap();
        let facets = enumerate_facets(&spec);
        assert_eq!(facets.len(), count, "({n},{np},{d})");
        assert!(facets.iter().all(|f| verify_facet(f, &spec).unwrap().is_tight));
    }
}

#[test]
fn ridge_counts_of_class_d() {
    let spec = PolytopeSpec::new(6, 4, 2).unwrap();
    let facet = lift(&k_guessing(4, 2, 2).unwrap(), &Lift::Input(0)).unwrap();
    let verdict = verify_facet(&facet, &spec).unwrap();
    assert!(verdict.is_tight);
    assert_eq!(verdict.affine_rank_of_tight_set, 17);
    let ridges = enumerate_subfacets(&facet, &spec).unwrap();
    assert!(ridges.iter().all(|r| r.tight_vertices.len() >= 17));
}

#[test]
fn errors() {
    let spec = PolytopeSpec::new(3, 3, 2).unwrap();
    let wrong = ClassicalChannel::identity(4);
    assert!(matches!(hull_membership(&wrong, &spec), Err(Error::DimensionMismatch(_))));
    let loose = ml_game(3, 3).unwrap();
    assert!(matches!(enumerate_subfacets(&loose, &spec), Err(Error::NotAFacet)));
    let ml = ml_game(3, 2).unwrap();
    assert!(matches!(rotate_facet(&ml, &ml, &spec), Err(Error::NotARidge(_))));
}

#[test]
fn identity_is_outside_lower_polytopes() {
    for d in 1..4 {
        let spec = PolytopeSpec::new(4, 4, d).unwrap();
        let r = hull_membership(&ClassicalChannel::identity(4), &spec).unwrap();
        assert!(!r.member);
        let cert = r.certificate.unwrap();
        assert!(score(&cert, &ClassicalChannel::identity(4)).unwrap() > cert.gamma);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn vertex_mixtures_are_members(seed in any::<u64>(), n in 2usize..5, np in 2usize..5, terms in 1usize..5) {
        let spec = PolytopeSpec::new(n, np, 2.min(n).min(np)).unwrap();
        let vertices = enumerate_vertices(&spec);
        let p = vertex_mixture(&mut seeded(seed), &vertices, terms);
        let r = hull_membership_with(&p, &spec, &vertices).unwrap();
        prop_assert!(r.member);
        prop_assert_eq!(r.witness.unwrap().reconstruct().unwrap(), p);
    }

    #[test]
    fn certificates_separate(seed in any::<u64>()) {
        let spec = PolytopeSpec::new(3, 4, 2).unwrap();
        let vertices = enumerate_vertices(&spec);
        for p in channel_suite(&mut seeded(seed), &spec, 8) {
            let r = hull_membership_with(&p, &spec, &vertices).unwrap();
            if let Some(c) = r.certificate {
                prop_assert!(score(&c, &p).unwrap() > c.gamma);
                prop_assert!(vertices.iter().all(|v| c.score_vertex(v) <= c.gamma));
            }
        }
    }

    #[test]
    fn rotation_lands_on_facets(pick in any::<prop::sample::Index>()) {
        let spec = PolytopeSpec::new(3, 4, 2).unwrap();
        let facet = ambiguous_game(4, 2).unwrap();
        let ridges = enumerate_subfacets(&facet, &spec).unwrap();
        let ridge = pick.get(&ridges);
        let next = rotate_facet(&facet, &ridge.inequality, &spec).unwrap();
        prop_assert!(verify_facet(&next, &spec).unwrap().is_tight);
        prop_assert_ne!(canonical_class_rep(&next).canonical.g, facet.g.clone());
    }
}
