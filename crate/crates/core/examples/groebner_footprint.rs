//! Counting the zeros of a polynomial on the torus from the footprint of
//! a Groebner basis, compared with direct evaluation.

use hyperweight::code::{evaluate_on_torus, zeros_via_footprint, CodeParams};
use hyperweight::groebner::{buchberger, DivisorList};
use hyperweight::limits::Limits;
use hyperweight::poly::parse_poly;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = CodeParams::from_order(5, 3, 2)?;
    let limits = Limits::default();
    let f = parse_poly("t1*t2 + 2*t2*t3 + t1*t3", params.field(), 3)?;
    let gb = buchberger(&DivisorList::torus_with(&f)?, limits.buchberger_steps)?;
    println!("reduced basis of (f, t_i^4 - 1):");
    for g in gb.iter() {
        println!("  {g}");
    }
    let zeros = zeros_via_footprint(&f, &params, &limits)?;
    let direct = evaluate_on_torus(&f, &params, &limits)?.weight();
    println!("zeros via footprint: {zeros}");
    println!("zeros by evaluation: {} of {}", direct.zeros, direct.length);
    Ok(())
}
