use proptest::prelude::*;
use signaling::channel::enumerate_vertices;
use signaling::facets::{
    ambiguous_game, canonical_class_rep, general_ambiguous_game, k_guessing, lift, ml_game, normal_form, score,
    AmbiguousGameSpec, Lift,
};
use signaling::polyhedral::verify_facet;
use signaling::rational::{frac, int};
use signaling::sampling::{random_channel, seeded};
use signaling::{BellInequality, Error, PolytopeSpec, RatMatrix};

#[test]
fn k_guessing_bounds() {
    let g = k_guessing(4, 2, 2).unwrap();
    assert_eq!(g.gamma, int(5));
    assert_eq!((g.n_prime(), g.n()), (4, 6));
    assert_eq!(k_guessing(5, 2, 3).unwrap().gamma, int(9));
    assert!(matches!(k_guessing(4, 4, 2), Err(Error::ParameterOutOfRange(_))));
}

fn binomial(a: usize, b: usize) -> i64 {
    if b > a {
        return 0;
    }
    (0..b).fold(1i64, |acc, i| acc * (a - i) as i64 / (i + 1) as i64)
}

#[test]
fn k_guessing_lower_bound_on_vertices() {
    // every vertex also scores at least C(n'-d, n'-k)
    for (np, k) in [(4, 1), (4, 2), (5, 1), (3, 1)] {
        let d = np - k;
        let g = k_guessing(np, k, d).unwrap();
        let n = g.n();
        let floor = int(binomial(np - d, np - k));
        for v in enumerate_vertices(&PolytopeSpec::new(n, np, d).unwrap()) {
            assert!(g.score_vertex(&v) >= floor);
        }
    }
}

#[test]
fn ambiguous_game_shape() {
    let a = ambiguous_game(4, 2).unwrap();
    assert_eq!(a.g, RatMatrix::from_i64_rows(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2], &[1, 1, 1]]));
    assert_eq!(a.gamma, int(4));
    let spec = AmbiguousGameSpec::leading(3, 4, 2, &[0, 1, 2]);
    assert_eq!(spec.k(), 3);
    let general = general_ambiguous_game(&spec).unwrap();
    assert_eq!(general.gamma, int(2));
    assert_eq!(general.g[(3, 0)], frac(1, 2));
}

#[test]
fn lifting_errors() {
    let ml = ml_game(3, 2).unwrap();
    assert!(matches!(lift(&ml, &Lift::Output(vec![0, 0, 1])), Err(Error::NotSurjective(3))));
    assert!(lift(&ml, &Lift::Output(vec![0, 5, 1, 2])).is_err());
}

#[test]
fn inequality_json_round_trip() {
    let ineq = k_guessing(4, 2, 2).unwrap();
    let back = BellInequality::from_json(&ineq.to_json()).unwrap();
    assert_eq!(back, ineq);
}

fn small_inequality() -> impl Strategy<Value = BellInequality> {
    (2usize..5, 2usize..5).prop_flat_map(|(np, n)| {
        (prop::collection::vec(-4i64..5, np * n), -3i64..9).prop_map(move |(vals, gamma)| {
            let rows: Vec<Vec<i64>> = vals.chunks(n).map(|c| c.to_vec()).collect();
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            BellInequality::from_i64(&refs, gamma)
        })
    })
}

proptest! {
    #[test]
    fn normal_form_is_idempotent(ineq in small_inequality()) {
        let once = normal_form(&ineq);
        prop_assert_eq!(normal_form(&once), once);
    }

    #[test]
    fn normal_form_preserves_scores_up_to_scale(ineq in small_inequality(), seed in any::<u64>()) {
        // gamma - score is rescaled by the same positive factor on every channel
        let nf = normal_form(&ineq);
        let mut rng = seeded(seed);
        let p = random_channel(&mut rng, ineq.n(), ineq.n_prime(), 4);
        let q = random_channel(&mut rng, ineq.n(), ineq.n_prime(), 4);
        let slack = |i: &BellInequality, c| &i.gamma - score(i, c).unwrap();
        let (a, b) = (slack(&ineq, &p), slack(&ineq, &q));
        let (c, d) = (slack(&nf, &p), slack(&nf, &q));
        prop_assert_eq!(a * &d, b * &c);
    }

    #[test]
    fn canonical_form_ignores_relabelling(ineq in small_inequality(), rows in any::<u64>(), cols in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut rp: Vec<usize> = (0..ineq.n_prime()).collect();
        let mut cp: Vec<usize> = (0..ineq.n()).collect();
        rp.shuffle(&mut seeded(rows));
        cp.shuffle(&mut seeded(cols));
        let shuffled = BellInequality::new(ineq.g.permuted(&rp, &cp), ineq.gamma.clone());
        prop_assert_eq!(canonical_class_rep(&ineq), canonical_class_rep(&shuffled));
    }

    #[test]
    fn lifts_of_facets_stay_facets(np in 3usize..5, d in 2usize..4, pad in 0usize..2) {
        prop_assume!(d < np);
        let ml = ml_game(np, d).unwrap();
        let wide = lift(&ml, &Lift::Input(pad)).unwrap();
        let mut map: Vec<usize> = (0..np).collect();
        map.push(0);
        let tall = lift(&wide, &Lift::Output(map)).unwrap();
        let spec = PolytopeSpec::new(np + pad, np + 1, d).unwrap();
        prop_assert!(verify_facet(&tall, &spec).unwrap().is_tight);
    }
}
