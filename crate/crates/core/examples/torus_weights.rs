//! Encoding a message into the toric code of the hypersimplex and
//! reading off its Hamming weight.

use hyperweight::code::{hypersimplex_monomials, CodeParams, Encoder};
use hyperweight::limits::Limits;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = CodeParams::from_order(4, 6, 3)?;
    let limits = Limits::default();
    println!(
        "q = {}, s = {}, d = {}: length {}, dimension {}, regime {}",
        params.q(),
        params.s(),
        params.d(),
        params.checked_length(&limits)?,
        params.dimension(),
        params.regime()
    );
    let basis = hypersimplex_monomials(&params);
    let field = params.field();
    let message: Vec<_> = (0..basis.len()).map(|i| if i % 3 == 0 { field.gen_pow(i as i64) } else { field.zero() }).collect();
    let mut encoder = Encoder::new(&params, &limits)?;
    let word = encoder.encode(&message)?;
    println!("f = {}", encoder.polynomial(&message)?);
    let w = word.weight();
    println!("weight {} (zeros {}, length {})", w.weight, w.zeros, w.length);
    Ok(())
}
