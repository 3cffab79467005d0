//! Arithmetic in GF(9) through log/antilog tables.

use hyperweight::gf::FieldSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let field = FieldSpec::with_order(9)?;
    println!("GF({}) = GF({}^{}), modulus coefficients {:?}", field.q(), field.p(), field.k(), field.modulus());
    let g = field.generator();
    for e in 0..field.q() as i64 {
        let a = field.gen_pow(e);
        println!("g^{e} = {} (rep {})", field.format(a), a.rep());
    }
    let a = field.parse("g^3")?;
    let b = field.parse("g^6")?;
    println!("g^3 + g^6 = {}", field.format(field.add(a, b)));
    println!("g^3 * g^6 = {}", field.format(field.mul(a, b)));
    println!("1 / g^3   = {}", field.format(field.inv(a)?));
    println!("g^(q-1)   = {}", field.format(field.pow(g, field.q() as i64 - 1)?));
    Ok(())
}
