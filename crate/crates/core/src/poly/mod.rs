//! Multivariate polynomials over GF(q) in `t1..ts`, ordered by graded
//! lexicographic order with `t1` heaviest.
//!
//! Variable indices are 1-based in every public API and in text form; the
//! exponent vector itself is stored 0-based.

mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use thiserror::Error;

use crate::gf::{FieldElement, FieldSpec, GfError};

pub use parse::parse_poly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("arity mismatch: expected {expected} variables, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("polynomials live in different rings")]
    AmbientMismatch,
    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("variable t{index} outside t1..t{s}")]
    VariableOutOfRange { index: usize, s: usize },
    #[error(transparent)]
    Field(#[from] GfError),
}

/// Exponent vector of a monomial, with its total degree cached.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Monomial {
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn one(s: usize) -> Monomial {
        Monomial { exps: vec![0; s], degree: 0 }
    }

    /// `t_var^power`, with `var` 1-based.
    pub fn var(s: usize, var: usize, power: u32) -> Monomial {
        let mut exps = vec![0; s];
        exps[var - 1] = power;
        Monomial { exps, degree: power }
    }

    /// Square-free product of the given 1-based variables.
    pub fn product_of(s: usize, vars: impl IntoIterator<Item = usize>) -> Monomial {
        let mut exps = vec![0; s];
        for v in vars {
            exps[v - 1] += 1;
        }
        Monomial::new(exps)
    }

    pub fn arity(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    /// Exponent of the 1-based variable `var`.
    pub fn exp(&self, var: usize) -> u32 {
        self.exps[var - 1]
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    /// 1-based indices of the variables present.
    pub fn support(&self) -> Vec<usize> {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i + 1).collect()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Monomial { exps, degree: self.degree + other.degree }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect();
        Some(Monomial { exps, degree: self.degree - other.degree })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(&a, &b)| a.max(b)).collect())
    }

    /// Relabels variables: the exponent of 1-based variable `i` moves to
    /// position `map[i - 1]` (also 1-based).
    pub fn relabel(&self, map: &[usize]) -> Monomial {
        let mut exps = vec![0; self.exps.len()];
        for (i, &e) in self.exps.iter().enumerate() {
            exps[map[i] - 1] = e;
        }
        Monomial { exps, degree: self.degree }
    }
}

/// Graded lexicographic order: higher total degree wins, ties broken by the
/// first differing exponent scanning `t1, t2, ...`, larger exponent wins.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        self.degree.cmp(&other.degree).then_with(|| {
            for (a, b) in self.exps.iter().zip(&other.exps) {
                match a.cmp(b) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Grlex comparison with an arity check.
pub fn compare_monomials(a: &Monomial, b: &Monomial) -> Result<Ordering, PolyError> {
    if a.arity() != b.arity() {
        return Err(PolyError::Arity { expected: a.arity(), got: b.arity() });
    }
    Ok(a.cmp(b))
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "t{}", i + 1)?;
            } else {
                write!(f, "t{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

/// A polynomial in `s` variables over a shared field. Terms are kept sorted
/// strictly descending in grlex and never carry a zero coefficient.
#[derive(Clone)]
pub struct Polynomial {
    field: Arc<FieldSpec>,
    s: usize,
    terms: Vec<(Monomial, FieldElement)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[GF({}), s={}]({})", self.field.q(), self.s, self)
    }
}

impl Polynomial {
    pub fn zero(field: &Arc<FieldSpec>, s: usize) -> Polynomial {
        Polynomial { field: Arc::clone(field), s, terms: Vec::new() }
    }

    pub fn constant(field: &Arc<FieldSpec>, s: usize, c: FieldElement) -> Polynomial {
        Polynomial::monomial(field, s, Monomial::one(s), c)
    }

    pub fn monomial(field: &Arc<FieldSpec>, s: usize, m: Monomial, c: FieldElement) -> Polynomial {
        assert_eq!(m.arity(), s, "monomial arity");
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial { field: Arc::clone(field), s, terms }
    }

    /// `t_var` with unit coefficient.
    pub fn var(field: &Arc<FieldSpec>, s: usize, var: usize) -> Polynomial {
        Polynomial::monomial(field, s, Monomial::var(s, var, 1), FieldElement::ONE)
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates and
    /// purging zeros.
    pub fn from_terms(
        field: &Arc<FieldSpec>,
        s: usize,
        terms: impl IntoIterator<Item = (Monomial, FieldElement)>,
    ) -> Result<Polynomial, PolyError> {
        let mut acc: BTreeMap<Monomial, FieldElement> = BTreeMap::new();
        for (m, c) in terms {
            if m.arity() != s {
                return Err(PolyError::Arity { expected: s, got: m.arity() });
            }
            field.validate(c)?;
            let e = acc.entry(m).or_insert(FieldElement::ZERO);
            *e = field.add(*e, c);
        }
        Ok(Self::from_sorted_map(field, s, acc))
    }

    pub(crate) fn from_sorted_map(field: &Arc<FieldSpec>, s: usize, map: BTreeMap<Monomial, FieldElement>) -> Polynomial {
        let terms = map.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        Polynomial { field: Arc::clone(field), s, terms }
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn arity(&self) -> usize {
        self.s
    }

    pub fn terms(&self) -> &[(Monomial, FieldElement)] {
        &self.terms
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn same_ring(&self, other: &Polynomial) -> bool {
        self.s == other.s && (Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field)
    }

    fn check_ring(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(PolyError::AmbientMismatch)
        }
    }

    /// Leading monomial and its coefficient.
    pub fn leading_term(&self) -> Result<(&Monomial, FieldElement), PolyError> {
        self.terms.first().map(|(m, c)| (m, *c)).ok_or(PolyError::ZeroPolynomial)
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<FieldElement> {
        self.terms.first().map(|(_, c)| *c)
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElement {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .map(|i| self.terms[i].1)
            .unwrap_or(FieldElement::ZERO)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        let f = &self.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let map_b = |c: FieldElement| if negate_other { f.neg(c) } else { c };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), map_b(b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = f.add(a[i].1, map_b(b[j].1));
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), map_b(*c))));
        Polynomial { field: Arc::clone(f), s: self.s, terms: out }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        let f = &self.field;
        let mut acc: BTreeMap<Monomial, FieldElement> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let e = acc.entry(ma.mul(mb)).or_insert(FieldElement::ZERO);
                *e = f.add(*e, f.mul(*ca, *cb));
            }
        }
        Ok(Self::from_sorted_map(f, self.s, acc))
    }

    pub fn scale(&self, c: FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.field, self.s);
        }
        let f = &self.field;
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), f.mul(*a, c))).collect();
        Polynomial { field: Arc::clone(f), s: self.s, terms }
    }

    /// `c * m * self`; multiplication by a monomial preserves term order.
    pub fn mul_term(&self, m: &Monomial, c: FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.field, self.s);
        }
        let f = &self.field;
        let terms = self.terms.iter().map(|(t, a)| (t.mul(m), f.mul(*a, c))).collect();
        Polynomial { field: Arc::clone(f), s: self.s, terms }
    }

    /// Scales so that the leading coefficient is one.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            Some(c) => self.scale(self.field.inv(c).expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::constant(&self.field, self.s, FieldElement::ONE);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitution `t_i -> point[i-1]`.
    pub fn evaluate(&self, point: &[FieldElement]) -> Result<FieldElement, PolyError> {
        if point.len() != self.s {
            return Err(PolyError::Arity { expected: self.s, got: point.len() });
        }
        let f = &self.field;
        for &x in point {
            f.validate(x)?;
        }
        let mut acc = FieldElement::ZERO;
        for (m, c) in &self.terms {
            let mut v = *c;
            for (&x, &e) in point.iter().zip(m.exps()) {
                if e > 0 {
                    v = f.mul(v, f.pow(x, e as i64)?);
                }
            }
            acc = f.add(acc, v);
        }
        Ok(acc)
    }

    /// True iff every monomial is square-free of total degree exactly `d`.
    pub fn is_squarefree_homog(&self, d: u32) -> bool {
        !self.is_zero() && self.terms.iter().all(|(m, _)| m.is_squarefree() && m.degree() == d)
    }

    pub fn is_squarefree(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_squarefree())
    }

    /// Relabels variables; see [`Monomial::relabel`].
    pub fn relabel(&self, map: &[usize]) -> Polynomial {
        let acc: BTreeMap<Monomial, FieldElement> =
            self.terms.iter().map(|(m, c)| (m.relabel(map), *c)).collect();
        Self::from_sorted_map(&self.field, self.s, acc)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    /// Panics if the operands live in different rings; see [`Polynomial::checked_add`].
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial ring mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial ring mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial ring mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        let f = &self.field;
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), f.neg(*c))).collect();
        Polynomial { field: Arc::clone(f), s: self.s, terms }
    }
}

/// Canonical text: expanded, descending order, `coeff*monomial` joined by
/// ` + `, unit coefficients omitted.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let cs = self.field.format(*c);
            match (m.is_one(), *c == FieldElement::ONE) {
                (true, _) => write!(f, "{cs}")?,
                (false, true) => write!(f, "{m}")?,
                (false, false) => write!(f, "{cs}*{m}")?,
            }
        }
        Ok(())
    }
}
