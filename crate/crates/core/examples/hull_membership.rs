//! Exact membership in a signaling polytope, with a simulation protocol for
//! members and a separating inequality otherwise.

use signaling::facets::score;
use signaling::polyhedral::hull_membership;
use signaling::rational::frac;
use signaling::{ClassicalChannel, PolytopeSpec};

fn main() -> signaling::Result<()> {
    let noisy = ClassicalChannel::from_rows(vec![
        vec![frac(2, 3), frac(1, 6), frac(1, 6)],
        vec![frac(1, 6), frac(2, 3), frac(1, 6)],
        vec![frac(1, 6), frac(1, 6), frac(2, 3)],
    ])?;
    let spec = PolytopeSpec::new(3, 3, 2)?;

    let result = hull_membership(&noisy, &spec)?;
    if let Some(protocol) = &result.witness {
        println!("member of C_2 with {} deterministic strategies:", protocol.terms.len());
        for term in &protocol.terms {
            println!("  weight {}  encoder {:?}", term.weight, term.encoder.entries());
        }
        assert_eq!(&protocol.reconstruct()?, &noisy);
    }

    let result = hull_membership(&ClassicalChannel::identity(3), &spec)?;
    if let Some(cert) = &result.certificate {
        let s = score(cert, &ClassicalChannel::identity(3))?;
        println!("identity is outside C_2: {:?} <= {}, but scores {s}", cert.g, cert.gamma);
    }
    Ok(())
}
