//! Signaling dimension of classical channels, with the evidence for each
//! bound.

use signaling::certifier::{ambiguous_score_max, certify_signaling_dimension, ml_sum};
use signaling::rational::frac;
use signaling::ClassicalChannel;

fn main() -> signaling::Result<()> {
    let (h, z) = (frac(1, 2), frac(0, 1));
    let erasure = ClassicalChannel::from_rows(vec![
        vec![h.clone(), z.clone(), z.clone()],
        vec![z.clone(), h.clone(), z.clone()],
        vec![z.clone(), z, h.clone()],
        vec![h.clone(), h.clone(), h],
    ])?;
    println!("ML sum {}", ml_sum(&erasure));
    for k in 0..=4 {
        println!("ambiguous score, {k} guessing rows: {}", ambiguous_score_max(&erasure, k, 2)?);
    }

    let result = certify_signaling_dimension(&erasure)?;
    println!("kappa in [{}, {}]", result.lower, result.upper);
    for t in &result.method_trace {
        println!("  d = {}: {:?} by {}", t.d, t.verdict, t.method);
    }
    if let Some(v) = &result.violated {
        println!("violated: {:?} <= {}", v.g, v.gamma);
    }
    println!("{}", serde_json::to_string_pretty(&result.to_json()).unwrap());
    Ok(())
}
