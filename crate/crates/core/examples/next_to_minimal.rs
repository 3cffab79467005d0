//! Next-to-minimal weights: closed form against explicit codewords.

use hyperweight::code::{evaluate_on_torus, CodeParams};
use hyperweight::extremal::{build_next_to_min, experimental_next_to_min, min_distance, next_to_min};
use hyperweight::limits::Limits;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let limits = Limits::default();
    for (q, s, d) in [(4, 8, 3), (5, 8, 3), (4, 4, 3), (5, 4, 3)] {
        let params = CodeParams::from_order(q, s, d)?;
        let f = build_next_to_min(&params)?;
        let weight = evaluate_on_torus(&f, &params, &limits)?.weight().weight;
        println!(
            "(q, s, d) = ({q}, {s}, {d}) [{}]: delta {}, next {}, word weight {weight}",
            params.regime(),
            min_distance(params.shape())?,
            next_to_min(params.shape())?
        );
    }
    let boundary = CodeParams::from_order(5, 7, 3)?.shape();
    if let Err(e) = next_to_min(boundary) {
        println!("(5, 7, 3): {e}");
    }
    if let Some(x) = experimental_next_to_min(boundary)? {
        println!("(5, 7, 3) experimental: {} [{}]", x.value, x.marker);
    }
    Ok(())
}
