//! Parsing, printing, multiplying and evaluating polynomials over GF(4).

use std::sync::Arc;

use hyperweight::gf::FieldSpec;
use hyperweight::poly::parse_poly;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let field = Arc::new(FieldSpec::with_order(4)?);
    let f = parse_poly("(t1 + g*t4)*(t2 + t5) + t3^2", &field, 5)?;
    let h = parse_poly("t1 + 1", &field, 5)?;
    println!("f       = {f}");
    println!("lm(f)   = {}", f.leading_monomial().expect("nonzero"));
    println!("f * h   = {}", &f * &h);
    println!("monic f = {}", f.monic());
    let point: Vec<_> = (0..5).map(|i| field.gen_pow(i)).collect();
    println!("f(1, g, g^2, 1, g) = {}", field.format(f.evaluate(&point)?));
    Ok(())
}
