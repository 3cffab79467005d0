use super::ExtremalError;
use crate::code::{CodeParams, Regime};
use crate::gf::FieldElement;
use crate::poly::{Monomial, Polynomial};

/// One factor `t_i + a*t_c` of a minimum-weight codeword, with `i <= d < c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BinomialPair {
    pub i: usize,
    pub c: usize,
    pub a: FieldElement,
}

fn binomial(params: &CodeParams, x: usize, y: usize, a: FieldElement) -> Polynomial {
    let (field, s) = (params.field(), params.s());
    Polynomial::from_terms(field, s, [(Monomial::var(s, x, 1), field.one()), (Monomial::var(s, y, 1), a)])
        .expect("well-formed")
}

/// `prod (t_i + a_i t_{c_i})` over the given pairs. Needs `2d <= s`, one
/// pair per `i in 1..=d`, every `c` in `d+1..=s` and unit `a`. Repeated
/// `c` indices are rejected because they square a variable.
pub fn build_min_weight(params: &CodeParams, pairs: &[BinomialPair]) -> Result<Polynomial, ExtremalError> {
    let (s, d) = (params.s(), params.d());
    if 2 * d > s {
        return Err(ExtremalError::RegimeViolation { s: s as u32, d: d as u32, required: "2d <= s" });
    }
    if pairs.len() != d {
        return Err(ExtremalError::MalformedPairs(format!("expected {d} pairs, got {}", pairs.len())));
    }
    let mut seen_i = vec![false; d + 1];
    for p in pairs {
        if p.i == 0 || p.i > d || std::mem::replace(&mut seen_i[p.i], true) {
            return Err(ExtremalError::MalformedPairs(format!("i = {} is out of range or repeated", p.i)));
        }
        if p.c <= d || p.c > s {
            return Err(ExtremalError::MalformedPairs(format!("c = {} must lie in {}..={s}", p.c, d + 1)));
        }
        if p.a.is_zero() || !params.field().contains(p.a) {
            return Err(ExtremalError::MalformedPairs(format!("a = {} is not a unit", p.a.rep())));
        }
    }
    let field = params.field();
    let product = pairs
        .iter()
        .fold(Polynomial::constant(field, s, field.one()), |acc, p| &acc * &binomial(params, p.i, p.c, p.a));
    if !product.is_squarefree() {
        return Err(ExtremalError::MalformedPairs("repeated c index makes the product non-square-free".into()));
    }
    Ok(product)
}

/// A codeword of next-to-minimal weight.
///
/// For `2d + 2 <= s`:
/// `prod_{i<d} (t_i - t_{d-1+i}) * (t_{2d-1} - t_{2d} + t_{2d+1} - t_{2d+2})`.
///
/// For `2d - 2 >= s`, with `m = s - d` and `a = 2m - 1`:
/// `prod_{i<m} (t_i - t_{m-1+i}) * (e3(t_a..t_{a+3}) signed) * t_{a+4}...t_s`,
/// where the cubic block is `t_b t_c t_e - t_a t_c t_e + t_a t_b t_e - t_a t_b t_c`.
pub fn build_next_to_min(params: &CodeParams) -> Result<Polynomial, ExtremalError> {
    let (s, d) = (params.s(), params.d());
    if d < 3 {
        return Err(ExtremalError::DegreeOutOfRange { s: s as u32, d: d as u32 });
    }
    let field = params.field();
    let one = field.one();
    let minus = field.neg(one);
    let var = |i: usize| Polynomial::var(field, s, i);
    let diff = |x: usize, y: usize| binomial(params, x, y, minus);
    match params.regime() {
        Regime::SmallD => {
            let mut f = Polynomial::constant(field, s, one);
            for i in 1..d {
                f = &f * &diff(i, d - 1 + i);
            }
            let k = 2 * d - 1;
            let tail = &(&(&var(k) - &var(k + 1)) + &var(k + 2)) - &var(k + 3);
            Ok(&f * &tail)
        }
        Regime::LargeD => {
            let m = s - d;
            let mut g = Polynomial::constant(field, s, one);
            for i in 1..m {
                g = &g * &diff(i, m - 1 + i);
            }
            let a = 2 * m - 1;
            let (b, c, e) = (a + 1, a + 2, a + 3);
            let cube = |x: usize, y: usize, z: usize| Monomial::product_of(s, [x, y, z]);
            let block = Polynomial::from_terms(
                field,
                s,
                [(cube(b, c, e), one), (cube(a, c, e), minus), (cube(a, b, e), one), (cube(a, b, c), minus)],
            )
            .expect("well-formed");
            let trailing = Monomial::product_of(s, e + 1..=s);
            Ok((&g * &block).mul_term(&trailing, one))
        }
        Regime::Boundary => Err(ExtremalError::UnsupportedRegime {
            s: s as u32,
            d: d as u32,
            note: if s == 2 * d { "unresolved (s = 2d)".into() } else { "unresolved (s = 2d +- 1)".into() },
        }),
    }
}
