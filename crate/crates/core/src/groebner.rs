//! S-polynomials, deterministic multivariate division, Buchberger
//! completion and footprint counting inside the exponent box
//! `0 <= a_i <= q - 2`.

use std::collections::{BTreeMap, VecDeque};
use std::ops::Deref;
use std::sync::Arc;

use thiserror::Error;

use crate::gf::{FieldElement, FieldSpec};
use crate::limits::Limits;
use crate::poly::{Monomial, PolyError, Polynomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroebnerError {
    #[error("zero polynomial where a nonzero one is required")]
    ZeroInput,
    #[error("divisor list is empty")]
    EmptyDivisors,
    #[error("Buchberger step cap of {0} S-pair reductions exceeded")]
    StepLimit(usize),
    #[error("exponent box of {cells} cells with {leading} relevant leading monomials is beyond the counting cap")]
    BoxTooLarge { cells: u128, leading: usize },
    #[error("at most 8 exclusions are supported, got {0}")]
    TooManyExclusions(usize),
    #[error("64-bit count overflow")]
    Overflow,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Ordered list of nonzero divisors sharing one ring. Order matters: division
/// always uses the first divisor whose leading monomial divides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorList(Vec<Polynomial>);

impl DivisorList {
    pub fn new(entries: Vec<Polynomial>) -> Result<DivisorList, GroebnerError> {
        let first = entries.first().ok_or(GroebnerError::EmptyDivisors)?;
        for g in &entries {
            if g.is_zero() {
                return Err(GroebnerError::ZeroInput);
            }
            if !g.same_ring(first) {
                return Err(PolyError::AmbientMismatch.into());
            }
        }
        Ok(DivisorList(entries))
    }

    /// `[t1^(q-1) - 1, ..., ts^(q-1) - 1]`, a Groebner basis of the vanishing
    /// ideal of the torus.
    pub fn torus(field: &Arc<FieldSpec>, s: usize) -> DivisorList {
        DivisorList(field_equations(field, s))
    }

    /// `[t1^(q-1) - 1, ..., ts^(q-1) - 1, f]`.
    pub fn torus_with(f: &Polynomial) -> Result<DivisorList, GroebnerError> {
        if f.is_zero() {
            return Err(GroebnerError::ZeroInput);
        }
        let mut v = field_equations(f.field(), f.arity());
        v.push(f.clone());
        Ok(DivisorList(v))
    }

    pub fn into_vec(self) -> Vec<Polynomial> {
        self.0
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.0.iter().map(|g| g.leading_monomial().expect("nonzero").clone()).collect()
    }
}

impl Deref for DivisorList {
    type Target = [Polynomial];

    fn deref(&self) -> &[Polynomial] {
        &self.0
    }
}

/// `t_i^(q-1) - 1` for `i = 1..=s`.
pub fn field_equations(field: &Arc<FieldSpec>, s: usize) -> Vec<Polynomial> {
    let q = field.q();
    (1..=s)
        .map(|i| {
            Polynomial::from_terms(
                field,
                s,
                [(Monomial::var(s, i, q - 1), field.one()), (Monomial::one(s), field.neg(field.one()))],
            )
            .expect("well-formed")
        })
        .collect()
}

/// `(L / lt(f)) f - (L / lt(g)) g` with `L = lcm(lm f, lm g)`.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Result<Polynomial, GroebnerError> {
    let (mf, cf) = f.leading_term().map_err(|_| GroebnerError::ZeroInput)?;
    let (mg, cg) = g.leading_term().map_err(|_| GroebnerError::ZeroInput)?;
    if !f.same_ring(g) {
        return Err(PolyError::AmbientMismatch.into());
    }
    let field = f.field();
    let l = mf.lcm(mg);
    let a = f.mul_term(&l.div(mf).unwrap(), field.inv(cf).unwrap());
    let b = g.mul_term(&l.div(mg).unwrap(), field.inv(cg).unwrap());
    Ok(&a - &b)
}

/// Outcome of dividing `p` by a divisor list: `p = sum q_i d_i + r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Division {
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

/// Multivariate division. At each step the leading term of the running
/// dividend is cancelled by the first divisor (in list order) whose leading
/// monomial divides it; otherwise it moves to the remainder.
pub fn reduce(p: &Polynomial, divisors: &[Polynomial]) -> Result<Division, GroebnerError> {
    let first = divisors.first().ok_or(GroebnerError::EmptyDivisors)?;
    if !p.same_ring(first) {
        return Err(PolyError::AmbientMismatch.into());
    }
    let field = p.field();
    let s = p.arity();
    let lead: Vec<(&Monomial, FieldElement)> = divisors
        .iter()
        .map(|d| d.leading_term().map_err(|_| GroebnerError::ZeroInput))
        .collect::<Result<_, _>>()?;
    let lead_inv: Vec<FieldElement> = lead.iter().map(|(_, c)| field.inv(*c).unwrap()).collect();

    let mut work: BTreeMap<Monomial, FieldElement> = p.terms().iter().cloned().collect();
    let mut quotients: Vec<BTreeMap<Monomial, FieldElement>> = vec![BTreeMap::new(); divisors.len()];
    let mut remainder: BTreeMap<Monomial, FieldElement> = BTreeMap::new();

    while let Some((m, c)) = work.pop_last() {
        let hit = lead.iter().position(|(lm, _)| lm.divides(&m));
        let Some(i) = hit else {
            remainder.insert(m, c);
            continue;
        };
        let shift = m.div(lead[i].0).unwrap();
        let factor = field.mul(c, lead_inv[i]);
        let qe = quotients[i].entry(shift.clone()).or_insert(FieldElement::ZERO);
        *qe = field.add(*qe, factor);
        // the leading term cancels by construction; subtract the tail
        for (t, a) in &divisors[i].terms()[1..] {
            let key = t.mul(&shift);
            let delta = field.neg(field.mul(factor, *a));
            match work.get_mut(&key) {
                Some(v) => {
                    *v = field.add(*v, delta);
                    if v.is_zero() {
                        work.remove(&key);
                    }
                }
                None => {
                    work.insert(key, delta);
                }
            }
        }
    }

    Ok(Division {
        quotients: quotients.into_iter().map(|q| Polynomial::from_sorted_map(field, s, q)).collect(),
        remainder: Polynomial::from_sorted_map(field, s, remainder),
    })
}

/// Reduced Groebner basis of the ideal generated by `gens`.
///
/// Pairs are processed FIFO in index order, pairs with coprime leading
/// monomials are skipped, and the result is inter-reduced and monic. The
/// output order follows insertion order, so it is deterministic.
pub fn buchberger(gens: &DivisorList, max_steps: usize) -> Result<DivisorList, GroebnerError> {
    let field = Arc::clone(gens[0].field());
    let s = gens[0].arity();
    let unit = || DivisorList(vec![Polynomial::constant(&field, s, field.one())]);

    let mut basis: Vec<Polynomial> = gens.iter().map(Polynomial::monic).collect();
    if basis.iter().any(|g| g.leading_monomial().unwrap().is_one()) {
        return Ok(unit());
    }
    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
    for j in 1..basis.len() {
        for i in 0..j {
            queue.push_back((i, j));
        }
    }

    let mut steps = 0;
    while let Some((i, j)) = queue.pop_front() {
        let (li, lj) = (basis[i].leading_monomial().unwrap(), basis[j].leading_monomial().unwrap());
        if li.is_coprime(lj) {
            continue;
        }
        steps += 1;
        if steps > max_steps {
            return Err(GroebnerError::StepLimit(max_steps));
        }
        let sp = s_polynomial(&basis[i], &basis[j])?;
        let r = reduce(&sp, &basis)?.remainder;
        if r.is_zero() {
            continue;
        }
        let r = r.monic();
        if r.leading_monomial().unwrap().is_one() {
            return Ok(unit());
        }
        let k = basis.len();
        basis.push(r);
        for i in 0..k {
            queue.push_back((i, k));
        }
    }

    // minimalize: drop elements whose lm is a multiple of another kept lm
    let lms: Vec<Monomial> = basis.iter().map(|g| g.leading_monomial().unwrap().clone()).collect();
    let keep: Vec<usize> = (0..basis.len())
        .filter(|&a| {
            !(0..basis.len()).any(|b| b != a && lms[b].divides(&lms[a]) && (lms[b] != lms[a] || b < a))
        })
        .collect();
    let minimal: Vec<Polynomial> = keep.iter().map(|&a| basis[a].clone()).collect();

    let mut reduced = Vec::with_capacity(minimal.len());
    for (a, g) in minimal.iter().enumerate() {
        let others: Vec<Polynomial> =
            minimal.iter().enumerate().filter(|&(b, _)| b != a).map(|(_, h)| h.clone()).collect();
        let r = if others.is_empty() { g.clone() } else { reduce(g, &others)?.remainder };
        reduced.push(r.monic());
    }
    Ok(DivisorList(reduced))
}

/// The exponent box `0 <= a_i <= q - 2` in `s` variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FootprintSpec {
    pub q: u64,
    pub s: usize,
}

impl FootprintSpec {
    pub fn new(q: u64, s: usize) -> FootprintSpec {
        FootprintSpec { q, s }
    }

    pub fn cells(&self) -> u128 {
        (self.q as u128 - 1).checked_pow(self.s as u32).unwrap_or(u128::MAX)
    }

    pub fn in_box(&self, m: &Monomial) -> bool {
        m.exps().iter().all(|&e| (e as u64) <= self.q - 2)
    }
}

/// Number of box monomials that are multiples of `m`: `prod (q - 1 - a_i)`,
/// or zero when some exponent leaves the box.
pub fn count_multiples(m: &Monomial, spec: FootprintSpec) -> Result<u64, GroebnerError> {
    if !spec.in_box(m) {
        return Ok(0);
    }
    m.exps()
        .iter()
        .try_fold(1u64, |acc, &e| acc.checked_mul(spec.q - 1 - e as u64))
        .ok_or(GroebnerError::Overflow)
}

/// Box monomials that are multiples of `m` and of none of `exclusions`, by
/// inclusion-exclusion over subsets of the exclusions.
pub fn count_multiples_excluding(
    m: &Monomial,
    exclusions: &[Monomial],
    spec: FootprintSpec,
) -> Result<u64, GroebnerError> {
    if exclusions.len() > 8 {
        return Err(GroebnerError::TooManyExclusions(exclusions.len()));
    }
    let mut total: i128 = 0;
    for mask in 0u32..(1 << exclusions.len()) {
        let l = exclusions
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .fold(m.clone(), |acc, (_, e)| acc.lcm(e));
        let c = count_multiples(&l, spec)? as i128;
        if mask.count_ones() % 2 == 0 {
            total += c;
        } else {
            total -= c;
        }
    }
    u64::try_from(total).map_err(|_| GroebnerError::Overflow)
}

/// Relevant inclusion-exclusion width for the fallback counter.
const MAX_INCLUSION_EXCLUSION_TERMS: usize = 24;

/// Number of box monomials divisible by no leading monomial of `gb`.
///
/// Enumerates the box when it has at most `limits.max_box_cells` cells,
/// otherwise runs inclusion-exclusion over the leading monomials that lie
/// inside the box (the others have no multiples there).
pub fn footprint_size(gb: &DivisorList, spec: FootprintSpec, limits: &Limits) -> Result<u64, GroebnerError> {
    let lms: Vec<Monomial> = gb.leading_monomials().into_iter().filter(|m| spec.in_box(m)).collect();
    if lms.iter().any(Monomial::is_one) {
        return Ok(0);
    }
    let cells = spec.cells();
    if cells <= limits.max_box_cells as u128 {
        return Ok(enumerate_box(&lms, spec));
    }
    if lms.len() > MAX_INCLUSION_EXCLUSION_TERMS {
        return Err(GroebnerError::BoxTooLarge { cells, leading: lms.len() });
    }
    let mut total: i128 = 0;
    inclusion_exclusion(&lms, 0, Monomial::one(spec.s), 0, spec, &mut total)?;
    u64::try_from(total).map_err(|_| GroebnerError::Overflow)
}

fn inclusion_exclusion(
    lms: &[Monomial],
    start: usize,
    acc: Monomial,
    depth: usize,
    spec: FootprintSpec,
    total: &mut i128,
) -> Result<(), GroebnerError> {
    let c = count_multiples(&acc, spec)? as i128;
    if c == 0 {
        // every superset lcm is out of the box as well
        return Ok(());
    }
    *total += if depth.is_multiple_of(2) { c } else { -c };
    for i in start..lms.len() {
        inclusion_exclusion(lms, i + 1, acc.lcm(&lms[i]), depth + 1, spec, total)?;
    }
    Ok(())
}

fn enumerate_box(lms: &[Monomial], spec: FootprintSpec) -> u64 {
    let top = spec.q as u32 - 2;
    let mut cell = vec![0u32; spec.s];
    let mut count = 0u64;
    loop {
        let divisible = lms.iter().any(|lm| lm.exps().iter().zip(&cell).all(|(a, b)| a <= b));
        if !divisible {
            count += 1;
        }
        // odometer, last coordinate fastest
        let mut i = spec.s;
        loop {
            if i == 0 {
                return count;
            }
            i -= 1;
            if cell[i] < top {
                cell[i] += 1;
                break;
            }
            cell[i] = 0;
        }
    }
}
