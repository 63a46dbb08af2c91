//! Normal forms and symmetry classes of Bell inequalities.

use signaling::facets::{ambiguous_game, canonical_class_rep, k_guessing, normal_form};
use signaling::BellInequality;

fn main() {
    // the ML game with every entry raised by one in the first column
    let shifted = BellInequality::from_i64(&[&[2, 0, 0], &[2, 1, 0], &[1, 0, 1]], 3);
    let normal = normal_form(&shifted);
    println!("{:?} <= {}  ->  {:?} <= {}", shifted.g, shifted.gamma, normal.g, normal.gamma);

    let ambiguous = canonical_class_rep(&ambiguous_game(4, 2).unwrap());
    println!("ambiguous game class: {:?}, {} members", ambiguous.canonical.g, ambiguous.class_size());

    // permuting rows and columns leaves the class unchanged
    let kg = k_guessing(4, 2, 2).unwrap();
    let shuffled = BellInequality::new(kg.g.permuted(&[3, 1, 0, 2], &[5, 0, 4, 1, 3, 2]), kg.gamma.clone());
    let (a, b) = (canonical_class_rep(&kg), canonical_class_rep(&shuffled));
    println!("2-guessing class size {}, shuffled copy in the same class: {}", a.class_size(), a == b);
}
