//! Exact arithmetic in small finite fields GF(p^k).
//!
//! Elements are stored as a canonical index `rep` in `0..q`. For prime fields
//! the index is the residue itself; for extension fields it packs the
//! coefficients of the polynomial representative in base `p`, constant term
//! first. Multiplication and inversion go through log/antilog tables built
//! once per field, so a [`FieldSpec`] should be constructed once and shared
//! (it is immutable and `Send + Sync`).

use std::fmt;

use thiserror::Error;

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field order {p}^{k} is outside the supported range 4..=65536")]
    OrderOutOfRange { p: u64, k: u32 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("element index {rep} does not belong to GF({q})")]
    ForeignElement { rep: u32, q: u32 },
    #[error("cannot parse field element `{text}`: {reason}")]
    BadElement { text: String, reason: String },
}

/// An element of some [`FieldSpec`], identified by its canonical index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn rep(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// The field GF(p^k) with a fixed modulus and generator.
#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    k: u32,
    q: u32,
    /// Monic irreducible modulus, coefficients constant term first (length k + 1).
    modulus: Vec<u32>,
    generator: FieldElement,
    /// `exp[i] = g^i` for `i in 0..q-1`.
    exp: Vec<u32>,
    /// `log[rep] = i` with `g^i = rep`; entry 0 is unused.
    log: Vec<u32>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus && self.generator == other.generator
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator.0)
            .finish()
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= n {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

/// Splits `q` as `p^k` with `p` prime.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

// Dense polynomials over GF(p), coefficients constant term first.

fn poly_trim(a: &mut Vec<u32>) {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
}

fn poly_mod(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    // m is monic
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm && r.len() > 1 {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                let t = (lead as u64 * c as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - t) % p;
            }
        }
        r.pop();
    }
    poly_trim(&mut r);
    r
}

fn unpack(mut rep: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(rep % p);
        rep /= p;
    }
    out
}

fn pack(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Monic irreducibility over GF(p) by trial division with every monic
/// polynomial of degree `1..=deg/2`.
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    for fd in 1..=deg / 2 {
        let count = (p as u64).pow(fd as u32);
        for low in 0..count {
            let mut cand = unpack(low as u32, p, fd);
            cand.push(1);
            let r = poly_mod(m, &cand, p);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FieldSpec {
    /// Builds GF(p^k). The modulus is the first monic irreducible of degree
    /// `k` when scanning lower coefficients as a base-`p` integer upward; the
    /// generator is the first element (by canonical index) of order `q - 1`.
    pub fn new(p: u64, k: u32) -> Result<FieldSpec, GfError> {
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        let q = p.checked_pow(k).filter(|&q| k >= 1 && (4..=MAX_ORDER).contains(&q));
        let Some(q) = q else {
            return Err(GfError::OrderOutOfRange { p, k });
        };
        let (p, q) = (p as u32, q as u32);

        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            (0..q)
                .map(|low| {
                    let mut m = unpack(low, p, k as usize);
                    m.push(1);
                    m
                })
                .find(|m| is_irreducible(m, p))
                .expect("an irreducible polynomial of every degree exists")
        };

        let mul_raw = |a: u32, b: u32| -> u32 {
            if k == 1 {
                return (a as u64 * b as u64 % p as u64) as u32;
            }
            let (x, y) = (unpack(a, p, k as usize), unpack(b, p, k as usize));
            let mut prod = vec![0u32; 2 * k as usize - 1];
            for (i, &xi) in x.iter().enumerate() {
                for (j, &yj) in y.iter().enumerate() {
                    prod[i + j] = ((prod[i + j] as u64 + xi as u64 * yj as u64) % p as u64) as u32;
                }
            }
            let mut r = poly_mod(&prod, &modulus, p);
            r.resize(k as usize, 0);
            pack(&r, p)
        };

        let order = |g: u32| -> u32 {
            let mut x = g;
            let mut n = 1;
            while x != 1 {
                x = mul_raw(x, g);
                n += 1;
            }
            n
        };
        let generator = (1..q).find(|&g| order(g) == q - 1).expect("the unit group is cyclic");

        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..q - 1 {
            exp.push(x);
            log[x as usize] = i;
            x = mul_raw(x, generator);
        }

        Ok(FieldSpec { p, k, q, modulus, generator: FieldElement(generator), exp, log })
    }

    /// Builds the field of order `q`, which must be a prime power.
    pub fn with_order(q: u64) -> Result<FieldSpec, GfError> {
        let (p, k) = prime_power(q).ok_or(GfError::NotPrimePower(q))?;
        FieldSpec::new(p, k)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// Element with canonical index `rep`.
    pub fn element(&self, rep: u32) -> Result<FieldElement, GfError> {
        if rep < self.q {
            Ok(FieldElement(rep))
        } else {
            Err(GfError::ForeignElement { rep, q: self.q })
        }
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a.0 < self.q
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.p as i64) as u32)
    }

    /// `g^e` for the fixed generator `g`.
    pub fn gen_pow(&self, e: i64) -> FieldElement {
        FieldElement(self.exp[e.rem_euclid(self.q as i64 - 1) as usize])
    }

    /// Discrete log base the generator; `None` for zero.
    pub fn log(&self, a: FieldElement) -> Option<u32> {
        (a.0 != 0).then(|| self.log[a.0 as usize])
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.k == 1 {
            let s = a.0 + b.0;
            return FieldElement(if s >= self.p { s - self.p } else { s });
        }
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        let (mut x, mut y, p) = (a.0, b.0, self.p);
        let (mut out, mut place) = (0, 1);
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.p == 2 {
            return a;
        }
        if self.k == 1 {
            return FieldElement(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        let (mut x, p) = (a.0, self.p);
        let (mut out, mut place) = (0, 1);
        while x > 0 {
            out += ((p - x % p) % p) * place;
            x /= p;
            place *= p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let n = self.q - 1;
        let e = self.log[a.0 as usize] + self.log[b.0 as usize];
        FieldElement(self.exp[(if e >= n { e - n } else { e }) as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, GfError> {
        if a.0 == 0 {
            return Err(GfError::ZeroInverse);
        }
        let n = self.q - 1;
        let l = self.log[a.0 as usize];
        Ok(FieldElement(self.exp[((n - l) % n) as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`. Exponents of units are reduced mod `q - 1`; negative powers of
    /// zero are an error and `0^0 = 1`.
    pub fn pow(&self, a: FieldElement, e: i64) -> Result<FieldElement, GfError> {
        if a.0 == 0 {
            return match e {
                0 => Ok(FieldElement::ONE),
                e if e > 0 => Ok(FieldElement::ZERO),
                _ => Err(GfError::ZeroInverse),
            };
        }
        let n = self.q as i64 - 1;
        let l = self.log[a.0 as usize] as i64;
        Ok(FieldElement(self.exp[((l * e.rem_euclid(n)) % n) as usize]))
    }

    /// Rejects elements whose index does not fit this field.
    pub fn validate(&self, a: FieldElement) -> Result<FieldElement, GfError> {
        self.element(a.0)
    }

    /// The `q - 1` units in generator order `g^0, g^1, ..., g^(q-2)`.
    pub fn units(&self) -> Vec<FieldElement> {
        self.exp.iter().map(|&r| FieldElement(r)).collect()
    }

    /// Canonical text: residues for prime fields, `0`, `1`, `g^k` otherwise.
    pub fn format(&self, a: FieldElement) -> String {
        if self.k == 1 || a.0 <= 1 {
            a.0.to_string()
        } else {
            format!("g^{}", self.log[a.0 as usize])
        }
    }

    /// Parses `0 | 1 | <int> | g^<int> | g`. Integers must be residues below `p`.
    pub fn parse(&self, text: &str) -> Result<FieldElement, GfError> {
        let t = text.trim();
        let bad = |reason: &str| GfError::BadElement { text: text.to_string(), reason: reason.to_string() };
        if let Some(rest) = t.strip_prefix('g') {
            let rest = rest.trim_start();
            if rest.is_empty() {
                return Ok(self.generator);
            }
            let e = rest.strip_prefix('^').ok_or_else(|| bad("expected `^` after `g`"))?;
            let e: i64 = e.trim().parse().map_err(|_| bad("exponent is not an integer"))?;
            return Ok(self.gen_pow(e));
        }
        let n: u64 = t.parse().map_err(|_| bad("not an integer or power of g"))?;
        if n >= self.p as u64 {
            return Err(bad(&format!("integer coefficient must be a residue below {}", self.p)));
        }
        Ok(FieldElement(n as u32))
    }
}
