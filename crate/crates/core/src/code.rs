//! The toric code `C(d)`: evaluations on the torus `(F_q^*)^s` of the span
//! of square-free degree-`d` monomials.
//!
//! Torus points are ordered mixed-radix: point index `i` written in base
//! `q - 1` with coordinate 1 most significant, digit `x` selecting the unit
//! `g^x`. Codewords are dense vectors in that order.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{self, Write};
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::gf::{FieldElement, FieldSpec, GfError};
use crate::groebner::{buchberger, footprint_size, DivisorList, FootprintSpec, GroebnerError};
use crate::limits::Limits;
use crate::poly::{Monomial, PolyError, Polynomial};
use crate::rng::SplitMix64;

#[derive(Debug, Error)]
pub enum CodeError {
    #[error("invalid code parameters: {0}")]
    InvalidParams(String),
    #[error("{what} of size {size} exceeds the cap {cap}")]
    SizeCap { what: &'static str, size: u128, cap: u64 },
    #[error("expected {expected} coefficients, got {got}")]
    Arity { expected: usize, got: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Where `(s, d)` sits relative to the two proven next-to-minimal regimes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `2d + 2 <= s`
    SmallD,
    /// `2d - 2 >= s`
    LargeD,
    /// `s` in `{2d - 1, 2d, 2d + 1}`
    Boundary,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::SmallD => "small_d",
            Regime::LargeD => "large_d",
            Regime::Boundary => "boundary",
        })
    }
}

/// The bare numbers `(q, s, d)`; enough for every closed-form formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CodeShape {
    pub q: u64,
    pub s: u32,
    pub d: u32,
}

impl CodeShape {
    pub fn new(q: u64, s: u32, d: u32) -> CodeShape {
        CodeShape { q, s, d }
    }

    pub fn regime(&self) -> Regime {
        let (s, d) = (self.s as i64, self.d as i64);
        if 2 * d + 2 <= s {
            Regime::SmallD
        } else if 2 * d - 2 >= s {
            Regime::LargeD
        } else {
            Regime::Boundary
        }
    }

    /// Code length `(q-1)^s`, `None` on overflow.
    pub fn length(&self) -> Option<u64> {
        (self.q - 1).checked_pow(self.s)
    }

    pub fn dimension(&self) -> u64 {
        binomial(self.s as u64, self.d as u64)
    }
}

/// Field plus `(s, d)`; validated so that `s >= 2` and `1 <= d < s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeParams {
    field: Arc<FieldSpec>,
    s: usize,
    d: usize,
}

impl CodeParams {
    pub fn new(field: Arc<FieldSpec>, s: usize, d: usize) -> Result<CodeParams, CodeError> {
        if s < 2 {
            return Err(CodeError::InvalidParams(format!("s = {s} must be at least 2")));
        }
        if d == 0 || d >= s {
            return Err(CodeError::InvalidParams(format!("d = {d} must satisfy 1 <= d < s = {s}")));
        }
        if s > 64 {
            return Err(CodeError::InvalidParams(format!("s = {s} exceeds 64 variables")));
        }
        Ok(CodeParams { field, s, d })
    }

    /// Parameters over the field of order `q`.
    pub fn from_order(q: u64, s: usize, d: usize) -> Result<CodeParams, CodeError> {
        CodeParams::new(Arc::new(FieldSpec::with_order(q)?), s, d)
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.field.q() as u64
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn shape(&self) -> CodeShape {
        CodeShape::new(self.q(), self.s as u32, self.d as u32)
    }

    pub fn regime(&self) -> Regime {
        self.shape().regime()
    }

    pub fn footprint_spec(&self) -> FootprintSpec {
        FootprintSpec::new(self.q(), self.s)
    }

    /// Code length, checked against `limits.max_points`.
    pub fn checked_length(&self, limits: &Limits) -> Result<usize, CodeError> {
        let n = (self.q() as u128 - 1).checked_pow(self.s as u32).unwrap_or(u128::MAX);
        if n > limits.max_points as u128 {
            return Err(CodeError::SizeCap { what: "torus", size: n, cap: limits.max_points });
        }
        Ok(n as usize)
    }

    pub fn dimension(&self) -> usize {
        binomial(self.s as u64, self.d as u64) as usize
    }
}

/// Streaming enumeration of the torus in canonical order.
#[derive(Debug, Clone)]
pub struct TorusPoints {
    units: Vec<FieldElement>,
    digits: Vec<usize>,
    remaining: u128,
}

impl Iterator for TorusPoints {
    type Item = Vec<FieldElement>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let point = self.digits.iter().map(|&x| self.units[x]).collect();
        for i in (0..self.digits.len()).rev() {
            self.digits[i] += 1;
            if self.digits[i] < self.units.len() {
                break;
            }
            self.digits[i] = 0;
        }
        Some(point)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (n, usize::try_from(self.remaining).ok())
    }
}

impl ExactSizeIterator for TorusPoints {}

pub fn torus_points(params: &CodeParams) -> TorusPoints {
    let units = params.field.units();
    let remaining = (units.len() as u128).checked_pow(params.s as u32).unwrap_or(u128::MAX);
    TorusPoints { units, digits: vec![0; params.s], remaining }
}

/// The point with canonical index `index`.
pub fn torus_point(params: &CodeParams, index: u64) -> Vec<FieldElement> {
    let n = params.q() - 1;
    let mut x = index;
    let mut out = vec![FieldElement::ZERO; params.s];
    for slot in out.iter_mut().rev() {
        *slot = params.field.gen_pow((x % n) as i64);
        x /= n;
    }
    out
}

/// Materialized torus, gated by `limits.max_points`.
pub fn materialize_torus(params: &CodeParams, limits: &Limits) -> Result<Vec<Vec<FieldElement>>, CodeError> {
    params.checked_length(limits)?;
    Ok(torus_points(params).collect())
}

/// All `C(s, d)` square-free degree-`d` monomials, descending in grlex.
pub fn hypersimplex_monomials(params: &CodeParams) -> Vec<Monomial> {
    let (s, d) = (params.s, params.d);
    let mut out = Vec::with_capacity(params.dimension());
    let mut pick: Vec<usize> = (1..=d).collect();
    // lexicographic order on index tuples is descending grlex for a fixed degree
    loop {
        out.push(Monomial::product_of(s, pick.iter().copied()));
        let Some(i) = (0..d).rev().find(|&i| pick[i] < s - (d - 1 - i)) else {
            return out;
        };
        pick[i] += 1;
        for k in i + 1..d {
            pick[k] = pick[k - 1] + 1;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codeword {
    pub entries: Vec<FieldElement>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WeightReport {
    pub weight: u64,
    pub zeros: u64,
    pub length: u64,
}

impl Codeword {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn weight(&self) -> WeightReport {
        let weight = self.entries.iter().filter(|e| !e.is_zero()).count() as u64;
        let length = self.entries.len() as u64;
        WeightReport { weight, zeros: length - weight, length }
    }
}

pub fn weight(w: &Codeword) -> WeightReport {
    w.weight()
}

/// Evaluates coefficient tensors on the whole torus, one axis at a time.
///
/// A tensor holds, for each variable, coefficients indexed by the exponent
/// of that variable (mixed radix, variable 1 most significant). Replacing an
/// axis of exponents `0..m` by the `q - 1` unit values costs one
/// multiply-add per output entry and exponent, so a full evaluation is
/// roughly `m * (q-1)^s` field operations rather than `(q-1)^s * terms * s`.
pub struct TorusEvaluator {
    field: Arc<FieldSpec>,
    s: usize,
    units: usize,
    buf_a: Vec<FieldElement>,
    buf_b: Vec<FieldElement>,
}

impl TorusEvaluator {
    pub fn new(field: &Arc<FieldSpec>, s: usize) -> TorusEvaluator {
        TorusEvaluator { field: Arc::clone(field), s, units: field.q() as usize - 1, buf_a: Vec::new(), buf_b: Vec::new() }
    }

    /// Evaluates a tensor with per-axis exponent ranges `dims`; the result
    /// is left in `buf_a`.
    fn run(&mut self, mut dims: Vec<usize>) {
        let f = Arc::clone(&self.field);
        let n = self.units;
        for axis in (0..self.s).rev() {
            let m = dims[axis];
            let outer: usize = dims[..axis].iter().product();
            let inner: usize = dims[axis + 1..].iter().product();
            self.buf_b.clear();
            self.buf_b.resize(outer * n * inner, FieldElement::ZERO);
            for o in 0..outer {
                let src = &self.buf_a[o * m * inner..(o + 1) * m * inner];
                let dst = &mut self.buf_b[o * n * inner..(o + 1) * n * inner];
                for x in 0..n {
                    let out = &mut dst[x * inner..(x + 1) * inner];
                    out.copy_from_slice(&src[..inner]);
                    for e in 1..m {
                        let scale = f.gen_pow((x * e % n) as i64);
                        let row = &src[e * inner..(e + 1) * inner];
                        for (dst, &c) in out.iter_mut().zip(row) {
                            if !c.is_zero() {
                                *dst = f.add(*dst, f.mul(c, scale));
                            }
                        }
                    }
                }
            }
            std::mem::swap(&mut self.buf_a, &mut self.buf_b);
            dims[axis] = n;
        }
    }

    /// Evaluation of an arbitrary polynomial (exponents reduced mod `q - 1`).
    pub fn evaluate(&mut self, f: &Polynomial) -> Vec<FieldElement> {
        let n = self.units as u32;
        let mut dims = vec![1usize; self.s];
        for (m, _) in f.terms() {
            for (d, &e) in dims.iter_mut().zip(m.exps()) {
                *d = (*d).max((e % n) as usize + 1);
            }
        }
        let size: usize = dims.iter().product();
        self.buf_a.clear();
        self.buf_a.resize(size, FieldElement::ZERO);
        for (m, c) in f.terms() {
            let idx = m.exps().iter().zip(&dims).fold(0usize, |acc, (&e, &d)| acc * d + (e % n) as usize);
            self.buf_a[idx] = self.field.add(self.buf_a[idx], *c);
        }
        self.run(dims);
        std::mem::take(&mut self.buf_a)
    }

    /// Evaluation of a square-free polynomial given as `2^s` coefficients
    /// indexed by variable bitmask (variable 1 is the most significant bit).
    /// The result stays borrowed from internal scratch space.
    pub fn evaluate_multilinear(&mut self, coeffs: &[FieldElement]) -> &[FieldElement] {
        debug_assert_eq!(coeffs.len(), 1 << self.s);
        self.buf_a.clear();
        self.buf_a.extend_from_slice(coeffs);
        self.run(vec![2; self.s]);
        &self.buf_a
    }
}

/// `phi(f)`: the values of `f` at every torus point in canonical order.
pub fn evaluate_on_torus(f: &Polynomial, params: &CodeParams, limits: &Limits) -> Result<Codeword, CodeError> {
    if f.arity() != params.s || *f.field().as_ref() != *params.field {
        return Err(PolyError::AmbientMismatch.into());
    }
    params.checked_length(limits)?;
    let mut ev = TorusEvaluator::new(&params.field, params.s);
    Ok(Codeword { entries: ev.evaluate(f) })
}

/// Linear encoder `F_q^{C(s,d)} -> C(d)` over the hypersimplex basis.
pub struct Encoder {
    params: CodeParams,
    masks: Vec<usize>,
    evaluator: TorusEvaluator,
    scratch: Vec<FieldElement>,
}

impl Encoder {
    pub fn new(params: &CodeParams, limits: &Limits) -> Result<Encoder, CodeError> {
        params.checked_length(limits)?;
        let s = params.s;
        let masks = hypersimplex_monomials(params)
            .iter()
            .map(|m| m.exps().iter().fold(0usize, |acc, &e| acc << 1 | e as usize))
            .collect();
        debug_assert!(s <= 30);
        Ok(Encoder {
            params: params.clone(),
            masks,
            evaluator: TorusEvaluator::new(&params.field, s),
            scratch: vec![FieldElement::ZERO; 1 << s],
        })
    }

    fn load(&mut self, coeffs: &[FieldElement]) -> Result<(), CodeError> {
        if coeffs.len() != self.masks.len() {
            return Err(CodeError::Arity { expected: self.masks.len(), got: coeffs.len() });
        }
        self.scratch.fill(FieldElement::ZERO);
        for (&m, &c) in self.masks.iter().zip(coeffs) {
            self.scratch[m] = self.params.field.validate(c)?;
        }
        Ok(())
    }

    pub fn encode(&mut self, coeffs: &[FieldElement]) -> Result<Codeword, CodeError> {
        self.load(coeffs)?;
        let entries = self.evaluator.evaluate_multilinear(&self.scratch).to_vec();
        Ok(Codeword { entries })
    }

    /// Hamming weight of the encoding without keeping the word.
    pub fn weight_of(&mut self, coeffs: &[FieldElement]) -> Result<u64, CodeError> {
        self.load(coeffs)?;
        let w = self.evaluator.evaluate_multilinear(&self.scratch);
        Ok(w.iter().filter(|e| !e.is_zero()).count() as u64)
    }

    /// The polynomial `sum c_i M_i` for coefficients in basis order.
    pub fn polynomial(&self, coeffs: &[FieldElement]) -> Result<Polynomial, CodeError> {
        let basis = hypersimplex_monomials(&self.params);
        if coeffs.len() != basis.len() {
            return Err(CodeError::Arity { expected: basis.len(), got: coeffs.len() });
        }
        Ok(Polynomial::from_terms(&self.params.field, self.params.s, basis.into_iter().zip(coeffs.iter().copied()))?)
    }
}

/// Encodes one coefficient tuple (basis order of [`hypersimplex_monomials`]).
pub fn encode(coeffs: &[FieldElement], params: &CodeParams, limits: &Limits) -> Result<Codeword, CodeError> {
    Encoder::new(params, limits)?.encode(coeffs)
}

/// A weight distribution: weight to number of codewords.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Spectrum {
    pub distribution: BTreeMap<u64, u64>,
}

impl Spectrum {
    pub fn from_weights(weights: impl IntoIterator<Item = u64>) -> Spectrum {
        let mut distribution = BTreeMap::new();
        for w in weights {
            *distribution.entry(w).or_insert(0) += 1;
        }
        Spectrum { distribution }
    }

    pub fn total(&self) -> u64 {
        self.distribution.values().sum()
    }

    /// Distinct nonzero weights in increasing order.
    pub fn nonzero_weights(&self) -> impl Iterator<Item = u64> + '_ {
        self.distribution.keys().copied().filter(|&w| w > 0)
    }

    pub fn min_nonzero(&self) -> Option<u64> {
        self.nonzero_weights().next()
    }

    pub fn second_nonzero(&self) -> Option<u64> {
        self.nonzero_weights().nth(1)
    }
}

/// Full weight distribution of `C(d)` by encoding every coefficient tuple.
/// Gated by `q^{C(s,d)} <= max_codewords` and `codewords * n <= max_work`.
pub fn exhaustive_spectrum(params: &CodeParams, limits: &Limits) -> Result<Spectrum, CodeError> {
    let q = params.q() as u128;
    let dim = params.dimension() as u32;
    let words = q.checked_pow(dim).unwrap_or(u128::MAX);
    if words > limits.max_codewords as u128 {
        return Err(CodeError::SizeCap { what: "codeword count", size: words, cap: limits.max_codewords });
    }
    let n = params.checked_length(limits)? as u128;
    let work = words.saturating_mul(n);
    if work > limits.max_work as u128 {
        return Err(CodeError::SizeCap { what: "exhaustive work", size: work, cap: limits.max_work });
    }
    let mut enc = Encoder::new(params, limits)?;
    let mut coeffs = vec![FieldElement::ZERO; dim as usize];
    let mut spectrum = Spectrum::default();
    for mut idx in 0..words as u64 {
        for c in coeffs.iter_mut().rev() {
            *c = params.field.element((idx % q as u64) as u32)?;
            idx /= q as u64;
        }
        let w = enc.weight_of(&coeffs)?;
        *spectrum.distribution.entry(w).or_insert(0) += 1;
    }
    Ok(spectrum)
}

/// Weights of `count` seeded pseudorandom codewords.
///
/// Coefficient tuples are drawn in order from [`SplitMix64`] seeded with
/// `seed`, one `next_u64() % q` per basis monomial.
pub fn sample_weights(params: &CodeParams, seed: u64, count: u64, limits: &Limits) -> Result<Vec<u64>, CodeError> {
    let mut enc = Encoder::new(params, limits)?;
    let mut rng = SplitMix64::new(seed);
    let q = params.q();
    let mut coeffs = vec![FieldElement::ZERO; params.dimension()];
    let mut out = Vec::with_capacity(count as usize);
    for _ in 0..count {
        for c in coeffs.iter_mut() {
            *c = params.field.element(rng.below(q) as u32)?;
        }
        out.push(enc.weight_of(&coeffs)?);
    }
    Ok(out)
}

/// Number of torus zeros of `f`, computed as the footprint of a Groebner
/// basis of `I_X + (f)`. The ideal contains the field equations, hence is
/// radical, so the footprint size equals the number of zeros.
pub fn zeros_via_footprint(f: &Polynomial, params: &CodeParams, limits: &Limits) -> Result<u64, CodeError> {
    if params.s > limits.max_groebner_vars {
        return Err(CodeError::SizeCap {
            what: "Groebner basis variable count",
            size: params.s as u128,
            cap: limits.max_groebner_vars as u64,
        });
    }
    if f.arity() != params.s || *f.field().as_ref() != *params.field {
        return Err(PolyError::AmbientMismatch.into());
    }
    if f.is_zero() {
        return Ok(params.shape().length().expect("s <= max_groebner_vars"));
    }
    let gens = DivisorList::torus_with(f)?;
    let gb = buchberger(&gens, limits.buchberger_steps)?;
    Ok(footprint_size(&gb, params.footprint_spec(), limits)?)
}

/// One entry per line in canonical element text.
pub fn write_codeword_csv<W: Write>(word: &Codeword, field: &FieldSpec, mut out: W) -> Result<(), CodeError> {
    for e in &word.entries {
        writeln!(out, "{}", field.format(*e))?;
    }
    Ok(())
}

/// Generator matrix: one row per hypersimplex monomial (basis order), one
/// column per torus point, comma separated.
pub fn write_generator_matrix_csv<W: Write>(params: &CodeParams, limits: &Limits, mut out: W) -> Result<(), CodeError> {
    let mut enc = Encoder::new(params, limits)?;
    let dim = params.dimension();
    let mut unit = vec![FieldElement::ZERO; dim];
    for row in 0..dim {
        unit.fill(FieldElement::ZERO);
        unit[row] = FieldElement::ONE;
        let word = enc.encode(&unit)?;
        let line: Vec<String> = word.entries.iter().map(|e| params.field.format(*e)).collect();
        writeln!(out, "{}", line.join(","))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn params(q: u64, s: usize, d: usize) -> CodeParams {
        CodeParams::from_order(q, s, d).unwrap()
    }

    /// Point-by-point evaluation through `Polynomial::evaluate`.
    fn naive_codeword(f: &Polynomial, p: &CodeParams) -> Vec<FieldElement> {
        torus_points(p).map(|pt| f.evaluate(&pt).unwrap()).collect()
    }

    #[test]
    fn torus_enumeration() {
        let p = params(4, 2, 1);
        let pts: Vec<_> = torus_points(&p).collect();
        assert_eq!(pts.len(), 9);
        assert_eq!(pts[0], vec![FieldElement::ONE; 2]);
        let g = p.field().generator();
        assert_eq!(pts[1], vec![FieldElement::ONE, g]);
        assert_eq!(pts[3], vec![g, FieldElement::ONE]);
        for (i, pt) in pts.iter().enumerate() {
            assert_eq!(&torus_point(&p, i as u64), pt);
        }
        assert_eq!(torus_points(&params(4, 8, 3)).len(), 6561);
        assert_eq!(torus_points(&params(5, 8, 3)).len(), 65536);
        assert!(materialize_torus(&params(4, 8, 3), &Limits::with_max_cells(100)).is_err());
    }

    #[test]
    fn hypersimplex_basis() {
        let b = hypersimplex_monomials(&params(4, 4, 3));
        let want: Vec<Monomial> =
            [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]].iter().map(|v| Monomial::product_of(4, v.iter().copied())).collect();
        assert_eq!(b, want);
        let b = hypersimplex_monomials(&params(4, 8, 3));
        assert_eq!(b.len(), 56);
        assert!(b.windows(2).all(|w| w[0] > w[1]));
        assert_eq!(hypersimplex_monomials(&params(4, 5, 4)).len(), 5);
    }

    #[test]
    fn params_validation_and_regimes() {
        assert!(CodeParams::from_order(4, 4, 4).is_err());
        assert!(CodeParams::from_order(4, 1, 0).is_err());
        assert!(CodeParams::from_order(6, 4, 2).is_err());
        assert_eq!(params(4, 8, 3).regime(), Regime::SmallD);
        assert_eq!(params(4, 4, 3).regime(), Regime::LargeD);
        assert_eq!(params(4, 6, 3).regime(), Regime::Boundary);
        assert_eq!(params(4, 7, 3).regime(), Regime::Boundary);
        assert_eq!(params(4, 5, 3).regime(), Regime::Boundary);
    }

    #[test]
    fn fast_evaluation_matches_pointwise() {
        let p = params(4, 4, 2);
        let f = parse_poly("t1^5*t2 + g*t3^2*t4 + t1*t2*t3*t4 + g^2 + t4^3", p.field(), 4).unwrap();
        let fast = evaluate_on_torus(&f, &p, &Limits::default()).unwrap();
        assert_eq!(fast.entries, naive_codeword(&f, &p));

        let p = params(9, 3, 2);
        let f = parse_poly("t1*t2 + g^3*t2*t3 + 2*t1^7", p.field(), 3).unwrap();
        assert_eq!(evaluate_on_torus(&f, &p, &Limits::default()).unwrap().entries, naive_codeword(&f, &p));
    }

    #[test]
    fn evaluation_weights() {
        let p = params(4, 3, 2);
        let zero = Polynomial::zero(p.field(), 3);
        assert_eq!(evaluate_on_torus(&zero, &p, &Limits::default()).unwrap().weight().weight, 0);
        let f = parse_poly("t1*t2*t3", p.field(), 3).unwrap();
        assert_eq!(evaluate_on_torus(&f, &p, &Limits::default()).unwrap().weight().weight, 27);

        let p = params(4, 8, 3);
        let f = parse_poly("(t1 + t4)*(t2 + t5)*(t3 + t6)", p.field(), 8).unwrap();
        let w = evaluate_on_torus(&f, &p, &Limits::default()).unwrap();
        assert_eq!(w.weight(), WeightReport { weight: 1944, zeros: 4617, length: 6561 });
        let naive = naive_codeword(&f, &p).iter().filter(|e| !e.is_zero()).count();
        assert_eq!(naive, 1944);
    }

    #[test]
    fn weight_of_plain_words() {
        let z = Codeword { entries: vec![FieldElement::ZERO; 9] };
        assert_eq!(weight(&z).weight, 0);
        let o = Codeword { entries: vec![FieldElement::ONE; 9] };
        assert_eq!(weight(&o), WeightReport { weight: 9, zeros: 0, length: 9 });
    }

    #[test]
    fn encode_examples() {
        let p = params(4, 8, 3);
        let l = Limits::default();
        let mut unit = vec![FieldElement::ZERO; 56];
        unit[17] = FieldElement::ONE;
        assert_eq!(encode(&unit, &p, &l).unwrap().weight().weight, 6561);
        assert_eq!(encode(&[FieldElement::ZERO; 56], &p, &l).unwrap().weight().weight, 0);
        assert!(matches!(encode(&[FieldElement::ZERO; 5], &p, &l), Err(CodeError::Arity { .. })));

        let f = parse_poly("(t1 + t4)*(t2 + t5)*(t3 + t6)", p.field(), 8).unwrap();
        let coeffs: Vec<FieldElement> = hypersimplex_monomials(&p).iter().map(|m| f.coeff(m)).collect();
        let w = encode(&coeffs, &p, &l).unwrap();
        assert_eq!(w, evaluate_on_torus(&f, &p, &l).unwrap());
        assert_eq!(w.weight().weight, 1944);
    }

    #[test]
    fn encode_is_injective_at_4_4_3() {
        let p = params(4, 4, 3);
        let mut enc = Encoder::new(&p, &Limits::default()).unwrap();
        let mut seen = std::collections::HashSet::new();
        for idx in 0..256u32 {
            let coeffs: Vec<FieldElement> = (0..4).map(|k| p.field().element(idx >> (2 * (3 - k)) & 3).unwrap()).collect();
            let w = enc.encode(&coeffs).unwrap();
            assert!(seen.insert(w.entries));
        }
    }

    #[test]
    fn exhaustive_spectra() {
        let l = Limits::default();
        for (q, s, d, min, second) in [(4, 4, 3, 54, 60), (5, 4, 3, 192, 204), (4, 5, 4, 162, 180)] {
            let sp = exhaustive_spectrum(&params(q, s, d), &l).unwrap();
            assert_eq!(sp.total(), q.pow(binomial(s as u64, d as u64) as u32));
            assert_eq!(sp.distribution[&0], 1);
            assert_eq!(sp.min_nonzero(), Some(min));
            assert_eq!(sp.second_nonzero(), Some(second));
        }
        assert!(matches!(exhaustive_spectrum(&params(4, 8, 3), &l), Err(CodeError::SizeCap { .. })));
    }

    #[test]
    fn sampling_is_seeded() {
        let p = params(4, 6, 3);
        let l = Limits::default();
        assert!(sample_weights(&p, 1, 0, &l).unwrap().is_empty());
        let a = sample_weights(&p, 9, 50, &l).unwrap();
        assert_eq!(a, sample_weights(&p, 9, 50, &l).unwrap());
        assert_ne!(a, sample_weights(&p, 10, 50, &l).unwrap());
    }

    #[test]
    fn zeros_from_footprint() {
        let l = Limits::default();
        let p = params(4, 2, 1);
        let f = parse_poly("t1 - t2", p.field(), 2).unwrap();
        assert_eq!(zeros_via_footprint(&f, &p, &l).unwrap(), 3);
        let f = parse_poly("t1*t2", p.field(), 2).unwrap();
        assert_eq!(zeros_via_footprint(&f, &p, &l).unwrap(), 0);
        let p = params(4, 4, 2);
        let f = parse_poly("(t1 + t3)*(t2 + t4)", p.field(), 4).unwrap();
        let weight = evaluate_on_torus(&f, &p, &l).unwrap().weight().weight;
        assert_eq!(weight, 36);
        assert_eq!(zeros_via_footprint(&f, &p, &l).unwrap(), 45);
        let big = params(4, 5, 2);
        let f = parse_poly("t1*t2", big.field(), 5).unwrap();
        assert!(matches!(zeros_via_footprint(&f, &big, &l), Err(CodeError::SizeCap { .. })));
    }

    #[test]
    fn csv_exports() {
        let p = params(4, 3, 2);
        let l = Limits::default();
        let f = parse_poly("t1*t2 + g*t2*t3", p.field(), 3).unwrap();
        let w = evaluate_on_torus(&f, &p, &l).unwrap();
        let mut buf = Vec::new();
        write_codeword_csv(&w, p.field(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 27);
        let parsed: Vec<FieldElement> = text.lines().map(|t| p.field().parse(t).unwrap()).collect();
        assert_eq!(parsed, w.entries);

        let mut buf = Vec::new();
        write_generator_matrix_csv(&p, &l, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let rows: Vec<&str> = text.lines().collect();
        assert_eq!(rows.len(), 3);
        assert!(rows.iter().all(|r| r.split(',').count() == 27));
        // row 0 is t1*t2 evaluated at point 0 = (1, 1, 1)
        assert!(rows[0].starts_with("1,1,1,g^1"));
    }
}
