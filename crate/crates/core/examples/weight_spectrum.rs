//! Weight distributions: exhaustive for a small code, sampled for a
//! larger one.

use hyperweight::code::{exhaustive_spectrum, sample_weights, CodeParams, Spectrum};
use hyperweight::limits::Limits;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let limits = Limits::default();
    let small = CodeParams::from_order(5, 4, 3)?;
    let spectrum = exhaustive_spectrum(&small, &limits)?;
    println!("(5, 4, 3) exhaustive, {} words:", spectrum.total());
    for (w, n) in &spectrum.distribution {
        println!("  weight {w:>3}: {n}");
    }
    let large = CodeParams::from_order(4, 8, 3)?;
    let sampled = Spectrum::from_weights(sample_weights(&large, 42, 2000, &limits)?);
    println!(
        "(4, 8, 3) sampled, {} words: smallest nonzero weight {:?}, distinct weights {}",
        sampled.total(),
        sampled.min_nonzero(),
        sampled.distribution.len()
    );
    Ok(())
}
