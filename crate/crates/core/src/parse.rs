//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   = ["+" / "-"] term *(("+" / "-") term)
//! term   = factor *(["*"] factor)     ; "*" optional only between a number and a name
//! factor = base ["^" uint]
//! base   = rational / name / "(" expr ")" / "-" factor
//! ```

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::IntPoint;

/// Expanded polynomial: exponent vector to nonzero coefficient.
pub(crate) type Terms = BTreeMap<IntPoint, BigRational>;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|x| x.1).collect();
            out.push((pos, Tok::Num(s.parse().expect("digits"))));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            out.push((pos, Tok::Name(chars[start..i].iter().map(|x| x.1).collect())));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => return Err(Error::parse(pos, format!("unexpected character '{c}'"))),
        };
        out.push((pos, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    vars: &'a [String],
}

fn constant(n: usize, c: BigRational) -> Terms {
    let mut t = Terms::new();
    if !c.is_zero() {
        t.insert(IntPoint::origin(n), c);
    }
    t
}

fn add_into(acc: &mut Terms, other: Terms, negate: bool) {
    for (k, v) in other {
        let v = if negate { -v } else { v };
        let e = acc.entry(k.clone()).or_insert_with(BigRational::zero);
        *e += v;
        if e.is_zero() {
            acc.remove(&k);
        }
    }
}

pub(crate) fn mul(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (ka, va) in a {
        for (kb, vb) in b {
            let k = ka.add(kb);
            let e = out.entry(k.clone()).or_insert_with(BigRational::zero);
            *e += va * vb;
            if e.is_zero() {
                out.remove(&k);
            }
        }
    }
    out
}

fn pow(base: &Terms, mut e: u64, n: usize) -> Terms {
    let mut result = constant(n, BigRational::one());
    let mut b = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            result = mul(&result, &b);
        }
        e >>= 1;
        if e > 0 {
            b = mul(&b, &b);
        }
    }
    result
}

impl Parser<'_> {
    fn n(&self) -> usize {
        self.vars.len()
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn expr(&mut self) -> Result<Terms> {
        let mut acc = Terms::new();
        let mut negate = false;
        match self.peek() {
            Some(Tok::Minus) => {
                negate = true;
                self.pos += 1;
            }
            Some(Tok::Plus) => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.term()?;
            add_into(&mut acc, t, negate);
            match self.peek() {
                Some(Tok::Plus) => negate = false,
                Some(Tok::Minus) => negate = true,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Terms> {
        let (mut acc, mut last_was_number) = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let (f, num) = self.factor()?;
                    acc = mul(&acc, &f);
                    last_was_number = num;
                }
                Some(Tok::Name(_)) if last_was_number => {
                    let (f, _) = self.factor()?;
                    acc = mul(&acc, &f);
                    last_was_number = false;
                }
                Some(Tok::Name(_) | Tok::Num(_) | Tok::LParen) => {
                    return Err(Error::parse(
                        self.here(),
                        "implicit multiplication is only allowed between a number and a variable",
                    ))
                }
                _ => return Ok(acc),
            }
        }
    }

    /// Returns the factor and whether it was a bare numeric literal.
    fn factor(&mut self) -> Result<(Terms, bool)> {
        let (base, is_num) = self.base()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok((base, is_num));
        }
        self.pos += 1;
        let at = self.here();
        match self.toks.get(self.pos).map(|t| t.1.clone()) {
            Some(Tok::Num(e)) => {
                self.pos += 1;
                let e = u64::try_from(&e)
                    .map_err(|_| Error::parse(at, "exponent too large"))?;
                Ok((pow(&base, e, self.n()), false))
            }
            Some(Tok::Minus) => Err(Error::parse(at, "negative exponent")),
            _ => Err(Error::parse(at, "expected a nonnegative integer exponent")),
        }
    }

    fn base(&mut self) -> Result<(Terms, bool)> {
        let at = self.here();
        let Some((_, tok)) = self.toks.get(self.pos).cloned() else {
            return Err(Error::parse(at, "unexpected end of input"));
        };
        self.pos += 1;
        match tok {
            Tok::Num(p) => {
                let mut value = BigRational::from_integer(p);
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    let qat = self.here();
                    match self.toks.get(self.pos).map(|t| t.1.clone()) {
                        Some(Tok::Num(q)) if !q.is_zero() => {
                            self.pos += 1;
                            value /= BigRational::from_integer(q);
                        }
                        Some(Tok::Num(_)) => return Err(Error::parse(qat, "division by zero")),
                        _ => return Err(Error::parse(qat, "expected an integer denominator")),
                    }
                }
                Ok((constant(self.n(), value), true))
            }
            Tok::Name(name) => {
                let i = self
                    .vars
                    .iter()
                    .position(|v| *v == name)
                    .ok_or_else(|| Error::parse(at, format!("unknown variable '{name}'")))?;
                let mut t = Terms::new();
                t.insert(IntPoint::unit(self.n(), i), BigRational::one());
                Ok((t, false))
            }
            Tok::Minus => {
                let (f, _) = self.factor()?;
                Ok((f.into_iter().map(|(k, v)| (k, -v)).collect(), false))
            }
            Tok::LParen => {
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(Error::parse(self.here(), "expected ')'"));
                }
                self.pos += 1;
                Ok((inner, false))
            }
            _ => Err(Error::parse(at, "expected a number, variable or '('")),
        }
    }
}

/// Parses and fully expands `text` over the given variables. The result may
/// be the zero polynomial (an empty map).
pub(crate) fn parse_terms(text: &str, vars: &[String]) -> Result<Terms> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        vars,
    };
    let terms = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::parse(p.here(), "unexpected trailing input"));
    }
    Ok(terms)
}
