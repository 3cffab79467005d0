//! Recursive-descent parser for polynomial text.
//!
//! ```text
//! poly   := ['+'|'-'] factor (('+'|'-') factor)*
//! factor := atom ('*' atom)*
//! atom   := coeff | var | '(' poly ')'
//! var    := 't' INT ('^' INT)?
//! coeff  := INT | 'g' | 'g^' INT
//! ```
//!
//! Whitespace is ignored. The result is expanded into canonical form.

use std::sync::Arc;

use super::{Monomial, PolyError, Polynomial};
use crate::gf::FieldSpec;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: &'a Arc<FieldSpec>,
    s: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn int(&mut self) -> Result<u64, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse().or_else(|_| {
            self.pos = start;
            self.err("integer too large")
        })
    }

    fn poly(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = Polynomial::zero(self.field, self.s);
        let mut negate = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let term = self.factor()?;
            acc = if negate { &acc - &term } else { &acc + &term };
            match self.peek() {
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn factor(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.atom()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let rhs = self.atom()?;
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Polynomial, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.poly()?;
                if self.peek() != Some(b')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b't') => {
                self.pos += 1;
                let start = self.pos;
                let index = self.int()? as usize;
                if index == 0 || index > self.s {
                    self.pos = start;
                    return Err(PolyError::VariableOutOfRange { index, s: self.s });
                }
                let mut power = 1;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    power = u32::try_from(self.int()?).or_else(|_| self.err("exponent too large"))?;
                }
                let m = Monomial::var(self.s, index, power);
                Ok(Polynomial::monomial(self.field, self.s, m, self.field.one()))
            }
            Some(b'g') => {
                self.pos += 1;
                let mut e = 1i64;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    e = self.int()? as i64;
                }
                Ok(Polynomial::constant(self.field, self.s, self.field.gen_pow(e)))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let n = self.int()?;
                let c = self.field.parse(&n.to_string()).map_err(|e| {
                    PolyError::Syntax { pos: start, msg: e.to_string() }
                })?;
                Ok(Polynomial::constant(self.field, self.s, c))
            }
            Some(c) => self.err(format!("unexpected `{}`", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `text` into a polynomial in `t1..ts` over `field`.
pub fn parse_poly(text: &str, field: &Arc<FieldSpec>, s: usize) -> Result<Polynomial, PolyError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, field, s };
    let out = p.poly()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> Arc<FieldSpec> {
        Arc::new(FieldSpec::with_order(q).unwrap())
    }

    #[test]
    fn expands_thm_main_cubic() {
        let f = gf(4);
        let p = parse_poly("(t1 - t3)*(t2 - t4)*(t5 - t6 + t7 - t8)", &f, 8).unwrap();
        assert_eq!(p.len(), 16);
        assert!(p.is_squarefree_homog(3));
        // characteristic 2: every coefficient is 1
        assert!(p.terms().iter().all(|(_, c)| *c == f.one()));
    }

    #[test]
    fn simple_forms() {
        let f = gf(4);
        let p = parse_poly("t1*t2*t3", &f, 3).unwrap();
        assert_eq!(p.len(), 1);
        let p = parse_poly("t1^3 - 1", &f, 1).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.leading_monomial().unwrap(), &Monomial::var(1, 1, 3));
        let p = parse_poly("-t1 + g^2*t2", &f, 2).unwrap();
        assert_eq!(p.to_string(), "t1 + g^2*t2");
    }

    #[test]
    fn errors_carry_positions() {
        let f = gf(5);
        assert_eq!(
            parse_poly("t1 + t9", &f, 3),
            Err(PolyError::VariableOutOfRange { index: 9, s: 3 })
        );
        assert!(matches!(parse_poly("t1 + ", &f, 3), Err(PolyError::Syntax { pos: 5, .. })));
        assert!(matches!(parse_poly("(t1 + t2", &f, 3), Err(PolyError::Syntax { .. })));
        assert!(matches!(parse_poly("7*t1", &f, 3), Err(PolyError::Syntax { pos: 0, .. })));
        assert!(matches!(parse_poly("t1 t2", &f, 3), Err(PolyError::Syntax { pos: 3, .. })));
    }

    #[test]
    fn canonical_round_trip() {
        for q in [4u64, 5, 9] {
            let f = gf(q);
            let p = parse_poly("(t1 + g*t2)*(t3 + 1)*(t1 - g^3*t4) + t2^2", &f, 4).unwrap();
            let text = p.to_string();
            assert_eq!(parse_poly(&text, &f, 4).unwrap(), p);
        }
    }
}
