//! Remainder classification and the resulting weight lower bound for a
//! few square-free forms of degree 3 in 8 variables over GF(4).

use hyperweight::code::{evaluate_on_torus, CodeParams};
use hyperweight::extremal::analyze;
use hyperweight::limits::Limits;
use hyperweight::poly::parse_poly;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = CodeParams::from_order(4, 8, 3)?;
    let limits = Limits::default();
    for text in [
        "(t1+t4)*(t2+t5)*(t3+t6)",
        "(t1-t3)*(t2-t4)*(t5-t6+t7-t8)",
        "t1*t2*t3 + t4*t5*t6",
        "t1*t2*t3 + t1*t2*t4 + t2*t3*t4",
    ] {
        let f = parse_poly(text, params.field(), params.s())?.monic();
        let analysis = analyze(&f, &params)?;
        let weight = evaluate_on_torus(&f, &params, &limits)?.weight().weight;
        println!("f = {f}");
        for pivot in &analysis.pivots {
            let c = &pivot.classification;
            println!("  j = {}: {} (adds {})", c.j, c.class, pivot.contribution);
        }
        let bound = analysis.lower_bound.map_or("n/a".to_string(), |b| b.to_string());
        println!("  lower bound {bound}, actual weight {weight}");
    }
    Ok(())
}
