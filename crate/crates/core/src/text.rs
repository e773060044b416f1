//! Polynomial text format.
//!
//! Terms are printed in descending monomial order, e.g. `x0^2*x1 - 1/2*x2 + (1+2*i)`.
//! The parser accepts the printed form plus ordinary arithmetic: `+ - * ^`,
//! parentheses, rational literals `a/b` and the imaginary unit `i`.

use crate::error::{MfError, Result};
use crate::poly::{Monomial, Poly};
use crate::ring::RingCtx;
use crate::scalar::{Field, GaussRat};
use num_traits::{Signed, Zero};

fn is_negative(c: &GaussRat) -> bool {
    if c.re.is_zero() {
        c.im.is_negative()
    } else {
        c.im.is_zero() && c.re.is_negative()
    }
}

fn monomial_text(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].clone()),
            e => parts.push(format!("{}^{}", names[i], e)),
        }
    }
    parts.join("*")
}

/// Print `p` with the variable names and term order of `ctx`.
pub fn poly_to_string(p: &Poly, ctx: &RingCtx) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in ctx.sorted_terms(p).into_iter().enumerate() {
        let neg = is_negative(c);
        let c = if neg { -c.clone() } else { c.clone() };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = monomial_text(m, ctx.var_names());
        if mono.is_empty() {
            out.push_str(&c.to_string());
        } else if c.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{c}*{mono}"));
        }
    }
    out
}

/// Parse a polynomial over the variables of `ctx`.
pub fn parse_poly(s: &str, ctx: &RingCtx) -> Result<Poly> {
    parse_poly_with(s, ctx.var_names())
}

pub fn parse_poly_with(s: &str, names: &[String]) -> Result<Poly> {
    let mut p = Parser { src: s.as_bytes(), pos: 0, names };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    names: &'a [String],
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> MfError {
        MfError::Parse(format!("{msg} at byte {} in `{}`", self.pos, String::from_utf8_lossy(self.src)))
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn n(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = if self.eat(b'-') {
            -self.term()?
        } else {
            self.eat(b'+');
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                acc = acc + self.term()?;
            } else if self.eat(b'-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let rhs = self.factor()?;
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let neg = self.eat(b'-');
        let e = self.integer()?;
        let e: u32 = e.to_string().parse().map_err(|_| self.err("exponent too large"))?;
        if !neg {
            return Ok(base.pow(e));
        }
        let (c, m) = base.as_term().ok_or_else(|| self.err("negative power of a non-monomial"))?;
        let cinv = c.inv().ok_or_else(|| self.err("negative power of zero"))?;
        Ok(Poly::term(cinv, m.inverse()).pow(e))
    }

    fn integer(&mut self) -> Result<num_bigint::BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let den = if self.eat(b'/') { self.integer()? } else { 1.into() };
                if den.is_zero() {
                    return Err(self.err("zero denominator"));
                }
                let q = num_rational::BigRational::new(num, den);
                Ok(Poly::constant(GaussRat::real(q), self.n()))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let ident = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                if ident == "i" {
                    return Ok(Poly::constant(GaussRat::i(), self.n()));
                }
                match self.names.iter().position(|v| v == ident) {
                    Some(k) => Ok(Poly::var(k, self.n())),
                    None => {
                        self.pos = start;
                        Err(self.err(&format!("unknown variable `{ident}`")))
                    }
                }
            }
            _ => Err(self.err("expected a term")),
        }
    }
}
