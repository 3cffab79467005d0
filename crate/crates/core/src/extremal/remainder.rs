use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::builders::BinomialPair;
use super::formulas::{min_distance, n_formula, MonomialType};
use super::ExtremalError;
use crate::code::{CodeParams, CodeShape};
use crate::gf::FieldElement;
use crate::groebner::{count_multiples_excluding, reduce, s_polynomial, DivisorList};
use crate::poly::{Monomial, Polynomial};

/// Relabeling that sends the support of `lm(f)` to `1..=d` and the other
/// variables to `d+1..=s`, both in increasing index order.
///
/// `t1*...*td` is the largest square-free degree-`d` monomial in grlex, so
/// the relabeled polynomial has leading monomial exactly `t1*...*td`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalization {
    to_normal: Vec<usize>,
    to_original: Vec<usize>,
}

impl Normalization {
    pub fn for_leading(lm: &Monomial) -> Normalization {
        let s = lm.arity();
        let (inside, outside): (Vec<usize>, Vec<usize>) = (1..=s).partition(|&v| lm.exp(v) > 0);
        let mut to_normal = vec![0; s];
        let mut to_original = vec![0; s];
        for (k, v) in inside.into_iter().chain(outside).enumerate() {
            to_normal[v - 1] = k + 1;
            to_original[k] = v;
        }
        Normalization { to_normal, to_original }
    }

    pub fn is_identity(&self) -> bool {
        self.to_original.iter().enumerate().all(|(k, &v)| v == k + 1)
    }

    /// Normalized index of original variable `v`.
    pub fn normal_var(&self, v: usize) -> usize {
        self.to_normal[v - 1]
    }

    /// Original index of normalized variable `v`.
    pub fn original_var(&self, v: usize) -> usize {
        self.to_original[v - 1]
    }

    pub fn normalize(&self, f: &Polynomial) -> Polynomial {
        f.relabel(&self.to_normal)
    }

    pub fn restore(&self, f: &Polynomial) -> Polynomial {
        f.relabel(&self.to_original)
    }

    pub fn restore_monomial(&self, m: &Monomial) -> Monomial {
        m.relabel(&self.to_original)
    }
}

fn check_form(f: &Polynomial, d: usize) -> Result<(), ExtremalError> {
    if !f.is_squarefree_homog(d as u32) {
        return Err(ExtremalError::NotSquarefreeHomogeneous { d });
    }
    let lc = f.leading_coeff().expect("nonzero");
    if lc != f.field().one() {
        return Err(ExtremalError::NotMonic(f.field().format(lc)));
    }
    Ok(())
}

fn check_pivot(j: usize, d: usize) -> Result<(), ExtremalError> {
    if j == 0 || j > d {
        return Err(ExtremalError::PivotOutOfRange { j, d });
    }
    Ok(())
}

fn check_ring(f: &Polynomial, params: &CodeParams) -> Result<(), ExtremalError> {
    if f.arity() != params.s() || f.field().as_ref() != params.field().as_ref() {
        return Err(crate::poly::PolyError::AmbientMismatch.into());
    }
    Ok(())
}

/// `f` in the normalized chart, split around pivot `j` as
/// `t1*...*td + tj*hd1 + (t1*...*td / tj)*h1 + hd`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub j: usize,
    pub h1: Polynomial,
    pub hd1: Polynomial,
    pub hd: Polynomial,
    pub perm: Normalization,
    pub normalized: Polynomial,
}

/// Splits a monic square-free homogeneous degree-`d` polynomial around
/// pivot `j` (normalized chart).
pub fn decompose(f: &Polynomial, j: usize, d: usize) -> Result<Decomposition, ExtremalError> {
    check_form(f, d)?;
    check_pivot(j, d)?;
    let perm = Normalization::for_leading(f.leading_monomial().expect("nonzero"));
    let normalized = perm.normalize(f);
    Ok(split(normalized, perm, j, d))
}

fn split(normalized: Polynomial, perm: Normalization, j: usize, d: usize) -> Decomposition {
    let s = normalized.arity();
    let field = normalized.field().clone();
    let tj = Monomial::var(s, j, 1);
    let cofactor = Monomial::product_of(s, (1..=d).filter(|&i| i != j));
    let (mut h1, mut hd1, mut hd) = (Vec::new(), Vec::new(), Vec::new());
    for (m, c) in normalized.terms().iter().skip(1) {
        if let Some(rest) = m.div(&tj) {
            hd1.push((rest, *c));
        } else if let Some(rest) = m.div(&cofactor) {
            h1.push((rest, *c));
        } else {
            hd.push((m.clone(), *c));
        }
    }
    let build = |terms| Polynomial::from_terms(&field, s, terms).expect("terms come from a valid polynomial");
    Decomposition { j, h1: build(h1), hd1: build(hd1), hd: build(hd), perm, normalized }
}

/// Remainder of `S(tj^(q-1) - 1, f)` on division by
/// `[t1^(q-1) - 1, ..., ts^(q-1) - 1, f]`, everything in the normalized
/// chart (`j` is a normalized index).
pub fn remainder_for_j(f: &Polynomial, j: usize, params: &CodeParams) -> Result<Polynomial, ExtremalError> {
    check_ring(f, params)?;
    check_form(f, params.d())?;
    check_pivot(j, params.d())?;
    let perm = Normalization::for_leading(f.leading_monomial().expect("nonzero"));
    normalized_remainder(&perm.normalize(f), j, &DivisorList::torus_with(&perm.normalize(f))?)
}

fn normalized_remainder(g: &Polynomial, j: usize, divisors: &DivisorList) -> Result<Polynomial, ExtremalError> {
    let field_eq = &divisors[j - 1];
    let sp = s_polynomial(field_eq, g)?;
    Ok(reduce(&sp, divisors)?.remainder)
}

/// Shape of a remainder's leading monomial, normalized chart.
///
/// `u` counts variables of `t1..td` other than `tj`, `v` counts variables
/// among `t(d+1)..ts` with exponent one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "tag")]
pub enum RemainderClass {
    Zero,
    M1,
    M2 { u: u32, v: u32 },
    M3 { u: u32, v: u32, e: usize },
    M4 { e1: usize, e2: usize },
    Other,
}

impl RemainderClass {
    pub fn tag(&self) -> &'static str {
        match self {
            RemainderClass::Zero => "Zero",
            RemainderClass::M1 => "M1",
            RemainderClass::M2 { .. } => "M2",
            RemainderClass::M3 { .. } => "M3",
            RemainderClass::M4 { .. } => "M4",
            RemainderClass::Other => "Other",
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, RemainderClass::Zero)
    }
}

impl fmt::Display for RemainderClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RemainderClass::M2 { u, v } => write!(f, "M2(u={u}, v={v})"),
            RemainderClass::M3 { u, v, e } => write!(f, "M3(u={u}, v={v}, e={e})"),
            RemainderClass::M4 { e1, e2 } => write!(f, "M4(e1={e1}, e2={e2})"),
            other => f.write_str(other.tag()),
        }
    }
}

/// Matches a nonzero remainder's leading monomial (normalized chart)
/// against the four patterns; anything else is `Other`.
pub fn classify_pattern(m: &Monomial, j: usize, d: usize, q: u64) -> RemainderClass {
    let top = (q - 2) as u32;
    let exps = m.exps();
    let (inner, outer) = exps.split_at(d);
    let others = || inner.iter().enumerate().filter(move |&(i, _)| i + 1 != j).map(|(_, &e)| e);
    let ej = inner[j - 1];
    if others().all(|e| e <= 1) && ej == top {
        let u = others().filter(|&e| e == 1).count() as u32;
        let ones = outer.iter().filter(|&&e| e == 1).count() as u32;
        let twos: Vec<usize> = (0..outer.len()).filter(|&i| outer[i] == 2).collect();
        let rest_ok = outer.iter().all(|&e| e <= 2);
        if twos.is_empty() && rest_ok && u + ones == d as u32 && u + 2 <= d as u32 && ones >= 2 {
            return RemainderClass::M2 { u, v: ones };
        }
        if twos.len() == 1 && rest_ok && u + ones + 2 == d as u32 {
            return RemainderClass::M3 { u, v: ones, e: d + 1 + twos[0] };
        }
        return RemainderClass::Other;
    }
    if others().all(|e| e == 1) && ej == 0 {
        if outer.iter().all(|&e| e == 0) {
            return RemainderClass::M1;
        }
        let e1: Vec<usize> = (0..outer.len()).filter(|&i| outer[i] == top).collect();
        let e2: Vec<usize> = (0..outer.len()).filter(|&i| outer[i] == 1).collect();
        let support = outer.iter().filter(|&&e| e > 0).count();
        if e1.len() == 1 && e2.len() == 1 && support == 2 {
            return RemainderClass::M4 { e1: d + 1 + e1[0], e2: d + 1 + e2[0] };
        }
    }
    RemainderClass::Other
}

/// A representative monomial of the given type for pivot `j` (normalized
/// chart): the first admissible inner and outer variables are used.
pub fn pattern_monomial(class: MonomialType, v: Option<u32>, j: usize, shape: CodeShape) -> Result<Monomial, ExtremalError> {
    n_formula(class, v, shape)?;
    let (s, d) = (shape.s as usize, shape.d as usize);
    check_pivot(j, d)?;
    let top = (shape.q - 2) as u32;
    let others: Vec<usize> = (1..=d).filter(|&i| i != j).collect();
    let mut exps = vec![0u32; s];
    match (class, v.map(|v| v as usize)) {
        (MonomialType::M1, _) => others.iter().for_each(|&i| exps[i - 1] = 1),
        (MonomialType::M2, Some(v)) => {
            exps[j - 1] = top;
            others[..d - v].iter().for_each(|&i| exps[i - 1] = 1);
            (d + 1..=d + v).for_each(|b| exps[b - 1] = 1);
        }
        (MonomialType::M3, Some(v)) => {
            exps[j - 1] = top;
            others[..d - 2 - v].iter().for_each(|&i| exps[i - 1] = 1);
            exps[d] = 2;
            (d + 2..=d + 1 + v).for_each(|b| exps[b - 1] = 1);
        }
        (MonomialType::M4, _) => {
            others.iter().for_each(|&i| exps[i - 1] = 1);
            exps[d] = top;
            exps[d + 1] = 1;
        }
        _ => unreachable!("validated by n_formula"),
    }
    Ok(Monomial::new(exps))
}

/// Classification of one pivot, with the witness (the remainder's leading
/// monomial) in both charts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub j: usize,
    pub class: RemainderClass,
    pub remainder: Polynomial,
    pub witness: Option<Monomial>,
    pub witness_original: Option<Monomial>,
}

/// Classifies the remainder for normalized pivot `j`.
pub fn classify_remainder(f: &Polynomial, j: usize, params: &CodeParams) -> Result<Classification, ExtremalError> {
    let remainder = remainder_for_j(f, j, params)?;
    let perm = Normalization::for_leading(f.leading_monomial().expect("checked by remainder_for_j"));
    Ok(classification(remainder, j, &perm, params))
}

fn classification(remainder: Polynomial, j: usize, perm: &Normalization, params: &CodeParams) -> Classification {
    let witness = remainder.leading_monomial().cloned();
    let class = match &witness {
        None => RemainderClass::Zero,
        Some(m) => classify_pattern(m, j, params.d(), params.q()),
    };
    let witness_original = witness.as_ref().map(|m| perm.restore_monomial(m));
    Classification { j, class, remainder, witness, witness_original }
}

/// Whether the substitution `tj -> -a*te` annihilates `f`, i.e. whether
/// `tj + a*te` divides `f`.
pub fn substitution_vanishes(f: &Polynomial, j: usize, e: usize, a: FieldElement) -> bool {
    let field = f.field();
    let s = f.arity();
    let image = field.neg(a);
    let mut acc: BTreeMap<Monomial, FieldElement> = BTreeMap::new();
    for (m, c) in f.terms() {
        let k = m.exp(j);
        let mut exps = m.exps().to_vec();
        exps[j - 1] = 0;
        exps[e - 1] += k;
        let coeff = field.mul(*c, field.pow(image, k as i64).expect("unit"));
        let slot = acc.entry(Monomial::new(exps)).or_insert(FieldElement::ZERO);
        *slot = field.add(*slot, coeff);
    }
    debug_assert_eq!(s, f.arity());
    acc.values().all(|c| c.is_zero())
}

/// First `(e, a)` with `e > d` and unit `a` such that `tj + a*te` divides
/// `f`, searching `e` then `a` in canonical order. `f` and `j` are taken
/// as given, so callers pass the normalized polynomial.
pub fn binomial_divisor(f: &Polynomial, j: usize, d: usize) -> Option<(usize, FieldElement)> {
    let units = f.field().units();
    (d + 1..=f.arity())
        .flat_map(|e| units.iter().map(move |&a| (e, a)))
        .find(|&(e, a)| substitution_vanishes(f, j, e, a))
}

/// Everything the pivot analysis yields for one `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PivotReport {
    pub classification: Classification,
    /// Box monomials that are multiples of the witness and not of
    /// `t1*...*td`; zero for a zero remainder.
    pub contribution: u64,
}

/// Pivot-by-pivot analysis of a monic square-free homogeneous `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Analysis {
    pub perm: Normalization,
    pub normalized: Polynomial,
    pub pivots: Vec<PivotReport>,
    /// Footprint lower bound on the weight; present when `3 <= d <= s/2`.
    pub lower_bound: Option<u64>,
    /// Product factorization; present when `2d <= s` and `f` has the form.
    pub min_weight_form: Option<Vec<BinomialPair>>,
}

impl Analysis {
    pub fn classes(&self) -> Vec<RemainderClass> {
        self.pivots.iter().map(|p| p.classification.class).collect()
    }

    pub fn first_nonzero(&self) -> Option<&PivotReport> {
        self.pivots.iter().find(|p| !p.classification.class.is_zero())
    }
}

/// Classifies every pivot, then derives the lower bound and the product
/// form where the regime allows.
pub fn analyze(f: &Polynomial, params: &CodeParams) -> Result<Analysis, ExtremalError> {
    check_ring(f, params)?;
    let d = params.d();
    check_form(f, d)?;
    let perm = Normalization::for_leading(f.leading_monomial().expect("nonzero"));
    let normalized = perm.normalize(f);
    let divisors = DivisorList::torus_with(&normalized)?;
    let spec = params.footprint_spec();
    let lead = Monomial::product_of(params.s(), 1..=d);
    let mut pivots = Vec::with_capacity(d);
    for j in 1..=d {
        let remainder = normalized_remainder(&normalized, j, &divisors)?;
        let classification = classification(remainder, j, &perm, params);
        let contribution = match &classification.witness {
            Some(w) => count_multiples_excluding(w, std::slice::from_ref(&lead), spec)?,
            None => 0,
        };
        pivots.push(PivotReport { classification, contribution });
    }
    let s = params.s();
    let lower_bound = if d >= 3 && 2 * d <= s {
        let delta = min_distance(params.shape())?;
        let extra = pivots.iter().find(|p| !p.classification.class.is_zero()).map_or(0, |p| p.contribution);
        Some(delta + extra)
    } else {
        None
    };
    let min_weight_form = if 2 * d <= s && pivots.iter().all(|p| p.classification.class.is_zero()) {
        recover_pairs(&normalized, d)
    } else {
        None
    };
    Ok(Analysis { perm, normalized, pivots, lower_bound, min_weight_form })
}

/// Reads `(e, a)` off `h1 = a*te` for each pivot and confirms that the
/// product of the binomials reproduces `g` exactly.
fn recover_pairs(g: &Polynomial, d: usize) -> Option<Vec<BinomialPair>> {
    let s = g.arity();
    let field = g.field();
    let mut pairs = Vec::with_capacity(d);
    let mut product = Polynomial::constant(field, s, field.one());
    for j in 1..=d {
        let parts = split(g.clone(), Normalization::for_leading(&Monomial::product_of(s, 1..=d)), j, d);
        let [(m, a)] = parts.h1.terms() else { return None };
        let support = m.support();
        let [e] = support.as_slice() else { return None };
        if m.degree() != 1 || *e <= d {
            return None;
        }
        let expected_hd = parts.hd1.mul_term(m, *a);
        if parts.hd != expected_hd {
            return None;
        }
        let binomial = Polynomial::from_terms(field, s, [(Monomial::var(s, j, 1), field.one()), (m.clone(), *a)])
            .expect("well-formed");
        product = &product * &binomial;
        pairs.push(BinomialPair { i: j, c: *e, a: *a });
    }
    (product == *g).then_some(pairs)
}

/// The product form `prod (ti + ai*tci)` of a minimum-weight word, if `f`
/// has it; pairs are in the normalized chart. Requires `2d <= s`.
pub fn is_min_weight_form(f: &Polynomial, params: &CodeParams) -> Result<Option<Vec<BinomialPair>>, ExtremalError> {
    let (s, d) = (params.s(), params.d());
    if 2 * d > s {
        return Err(ExtremalError::RegimeViolation { s: s as u32, d: d as u32, required: "2d <= s" });
    }
    Ok(analyze(f, params)?.min_weight_form)
}

/// Footprint lower bound on the weight of `phi(f)`: the minimum distance
/// plus the count contributed by the first nonzero remainder's leading
/// monomial. Requires `3 <= d <= s/2`.
pub fn weight_lower_bound(f: &Polynomial, params: &CodeParams) -> Result<u64, ExtremalError> {
    let (s, d) = (params.s(), params.d());
    if d < 3 || 2 * d > s {
        return Err(ExtremalError::RegimeViolation { s: s as u32, d: d as u32, required: "3 <= d <= s/2" });
    }
    Ok(analyze(f, params)?.lower_bound.expect("regime checked"))
}

/// Evidence for the `M3` with `v = 0` case: another pivot's witness
/// contributes more than `(q-2)^(d-2) (q-1)^(s-d-2)` beyond the `M3`
/// witness and `t1*...*td`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct M3Followup {
    pub j: usize,
    pub other_j: Option<usize>,
    pub extra: u64,
    pub threshold: u64,
}

impl M3Followup {
    pub fn holds(&self) -> bool {
        self.other_j.is_some() && self.extra > self.threshold
    }
}

/// For every pivot classified `M3` with `v = 0`, the best other pivot's
/// extra count. Empty when no such pivot exists.
pub fn m3_followup(analysis: &Analysis, params: &CodeParams) -> Result<Vec<M3Followup>, ExtremalError> {
    let (q, s, d) = (params.q(), params.s() as u32, params.d() as u32);
    let threshold = (q - 2).pow(d - 2) * (q - 1).pow(s - d - 2);
    let lead = Monomial::product_of(params.s(), 1..=params.d());
    let spec = params.footprint_spec();
    let mut out = Vec::new();
    for p in &analysis.pivots {
        let c = &p.classification;
        let (RemainderClass::M3 { v: 0, .. }, Some(w)) = (c.class, &c.witness) else { continue };
        let mut best: Option<(usize, u64)> = None;
        for other in &analysis.pivots {
            let oc = &other.classification;
            let Some(ow) = &oc.witness else { continue };
            if oc.j == c.j {
                continue;
            }
            let extra = count_multiples_excluding(ow, &[w.clone(), lead.clone()], spec)?;
            if best.is_none_or(|(_, b)| extra > b) {
                best = Some((oc.j, extra));
            }
        }
        out.push(M3Followup { j: c.j, other_j: best.map(|b| b.0), extra: best.map_or(0, |b| b.1), threshold });
    }
    Ok(out)
}
