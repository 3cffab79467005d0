//! Building minimum-weight codewords as products of binomials and
//! recognizing them again.

use hyperweight::code::{evaluate_on_torus, CodeParams};
use hyperweight::extremal::{build_min_weight, is_min_weight_form, min_distance, BinomialPair};
use hyperweight::limits::Limits;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = CodeParams::from_order(5, 8, 3)?;
    let field = params.field();
    let pairs = [
        BinomialPair { i: 1, c: 7, a: field.gen_pow(1) },
        BinomialPair { i: 2, c: 4, a: field.one() },
        BinomialPair { i: 3, c: 5, a: field.gen_pow(3) },
    ];
    let f = build_min_weight(&params, &pairs)?;
    let weight = evaluate_on_torus(&f, &params, &Limits::default())?.weight().weight;
    println!("f = {f}");
    println!("weight {weight}, minimum distance {}", min_distance(params.shape())?);
    match is_min_weight_form(&f, &params)? {
        Some(found) => {
            for p in found {
                println!("  factor t{} + {}*t{}", p.i, field.format(p.a), p.c);
            }
        }
        None => println!("  not recognized"),
    }
    Ok(())
}
