//! Vertices of a signaling polytope and their factorization into an encoder
//! and decoder.

use signaling::channel::{enumerate_vertices, vertex_count, vertex_factorize};
use signaling::PolytopeSpec;

fn main() -> signaling::Result<()> {
    for (n, np, d) in [(3, 3, 2), (4, 3, 2), (6, 4, 2)] {
        let spec = PolytopeSpec::new(n, np, d)?;
        println!("C_{d}^({n}->{np}): {} vertices, dimension {}", vertex_count(&spec), spec.dimension());
    }

    let spec = PolytopeSpec::new(4, 3, 2)?;
    let vertices = enumerate_vertices(&spec);
    for v in vertices.iter().take(5) {
        println!("  outputs per input {:?} (rank {})", v.assignment(), v.rank());
    }

    let v = &vertices[vertices.len() - 1];
    let (encoder, decoder) = vertex_factorize(v, 2)?;
    println!("last vertex {:?} = decoder {:?} * encoder {:?}", v.assignment(), decoder.entries(), encoder.entries());
    Ok(())
}
