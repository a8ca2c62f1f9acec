//! Canonical text forms: rendering of polynomials, group-algebra
//! elements and group elements for reports and the `apply` command, and
//! the polynomial parser.  Parsing a canonical rendering reproduces the
//! value exactly.
//!
//! Grammar of polynomial text (whitespace insensitive):
//!
//! ```text
//! expr    := [+|-] product { (+|-) product }
//! product := atom { * atom }
//! atom    := base [^ uint]
//! base    := rational | param | x<i> | e<i> | ( expr )
//! ```
//!
//! with 1-based variable and generator indices, rationals like `3/2`,
//! and parameter names from the active realization (`a`, `b` or
//! `mu1..mu3`).

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use bannai_ito::clifford::{CliffordElement, CliffordPoly};
use bannai_ito::exactring::{Monomial, ParamPoly, Rational, XPoly};
use bannai_ito::hyperoct::SignedPerm;

pub fn render_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn monomial_factors(m: &Monomial, name: impl Fn(usize) -> String) -> Vec<String> {
    let mut out = Vec::new();
    for (k, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => out.push(name(k)),
            _ => out.push(format!("{}^{}", name(k), e)),
        }
    }
    out
}

/// One inline term: magnitude rendering plus its sign.
fn term_text(c: &Rational, factors: &[String]) -> (bool, String) {
    let negative = c.is_negative();
    let mag = c.abs();
    let body = if factors.is_empty() {
        render_rational(&mag)
    } else if mag.is_one() {
        factors.join("*")
    } else {
        format!("{}*{}", render_rational(&mag), factors.join("*"))
    };
    (negative, body)
}

fn join_signed(terms: Vec<(bool, String)>) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (neg, body)) in terms.into_iter().enumerate() {
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

pub fn render_param_poly(p: &ParamPoly, names: &[String]) -> String {
    let mut terms = Vec::new();
    for (m, c) in p.terms().collect::<Vec<_>>().into_iter().rev() {
        let factors = monomial_factors(m, |k| names[k].clone());
        terms.push(term_text(c, &factors));
    }
    join_signed(terms)
}

pub fn render_clifford_poly(v: &CliffordPoly, names: &[String]) -> String {
    let mut comps: Vec<(&u8, &XPoly)> = v.components().collect();
    comps.sort_by_key(|(m, _)| (m.count_ones(), **m));
    let mut terms = Vec::new();
    for (mask, poly) in comps {
        let mut blade = Vec::new();
        for i in 0..8 {
            if mask >> i & 1 == 1 {
                blade.push(format!("e{}", i + 1));
            }
        }
        for (m, coeff) in poly.terms().collect::<Vec<_>>().into_iter().rev() {
            let mut factors = monomial_factors(m, |k| format!("x{}", k + 1));
            factors.extend(blade.iter().cloned());
            let coeff_terms: Vec<_> = coeff.terms().collect();
            if coeff_terms.len() == 1 {
                let (pm, c) = coeff_terms[0];
                let mut all = monomial_factors(pm, |k| names[k].clone());
                all.extend(factors.iter().cloned());
                terms.push(term_text(c, &all));
            } else {
                let inner = format!("({})", render_param_poly(coeff, names));
                let body = if factors.is_empty() {
                    inner
                } else {
                    format!("{}*{}", inner, factors.join("*"))
                };
                terms.push((false, body));
            }
        }
    }
    join_signed(terms)
}

/// Signed permutation in generator notation, reflections first:
/// `R1*R2*pi12`, identity rendered as `1`.
pub fn render_perm(g: &SignedPerm) -> String {
    let n = g.n();
    let mut parts = Vec::new();
    let mut reflected: Vec<usize> = Vec::new();
    for j in 0..n {
        if g.sign(j) < 0 {
            reflected.push(g.image(j));
        }
    }
    reflected.sort_unstable();
    for k in &reflected {
        parts.push(format!("R{}", k + 1));
    }
    parts.extend(transposition_word(g));
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Shortest product of transpositions equal to the permutation part,
/// found by breadth-first search (n is tiny).
fn transposition_word(g: &SignedPerm) -> Vec<String> {
    let n = g.n();
    let target: Vec<usize> = (0..n).map(|j| g.image(j)).collect();
    let id: Vec<usize> = (0..n).collect();
    if target == id {
        return Vec::new();
    }
    let mut gens = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            gens.push((i, j));
        }
    }
    let mut seen = std::collections::BTreeMap::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone(), Vec::new());
    queue.push_back(id);
    while let Some(p) = queue.pop_front() {
        let word = seen[&p].clone();
        for &(i, j) in &gens {
            // append the generator on the right: it acts first
            let mut q = p.clone();
            let mut swapped: Vec<usize> = (0..n).collect();
            swapped.swap(i, j);
            for (slot, s) in q.iter_mut().zip(swapped.iter()) {
                *slot = p[*s];
            }
            if q == target {
                let mut w = word.clone();
                w.push(format!("pi{}{}", i + 1, j + 1));
                return w;
            }
            if !seen.contains_key(&q) {
                let mut w = word.clone();
                w.push(format!("pi{}{}", i + 1, j + 1));
                seen.insert(q.clone(), w);
                queue.push_back(q);
            }
        }
    }
    unreachable!("transpositions generate the symmetric group")
}

// ---- parsing ---------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "parse error at byte {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(input: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                out.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                out.push((i, Tok::Star));
                i += 1;
            }
            '/' => {
                out.push((i, Tok::Slash));
                i += 1;
            }
            '^' => {
                out.push((i, Tok::Caret));
                i += 1;
            }
            '(' => {
                out.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((i, Tok::RParen));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Num(input[start..i].to_string())));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(input[start..i].to_string())));
            }
            other => {
                return Err(ParseError {
                    offset: i,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(out)
}

pub struct PolyParser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    nvars: usize,
    names: &'a [String],
}

impl<'a> PolyParser<'a> {
    pub fn parse(
        input: &str,
        nvars: usize,
        names: &'a [String],
    ) -> Result<CliffordPoly, ParseError> {
        let toks = lex(input)?;
        let end = input.len();
        let mut p = PolyParser {
            toks,
            pos: 0,
            end,
            nvars,
            names,
        };
        let v = p.expr()?;
        if p.pos < p.toks.len() {
            return Err(p.err_here("trailing input"));
        }
        Ok(v)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn err_here(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            offset: self.offset(),
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn one(&self) -> CliffordPoly {
        CliffordPoly::scalar(XPoly::one(self.nvars, self.names.len()))
    }

    fn expr(&mut self) -> Result<CliffordPoly, ParseError> {
        let mut negate = false;
        if matches!(self.peek(), Some(Tok::Plus) | Some(Tok::Minus)) {
            negate = matches!(self.bump(), Some(Tok::Minus));
        }
        let mut acc = self.product()?;
        if negate {
            acc = acc.scale(&-Rational::one());
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let rhs = self.product()?;
                    acc = &acc + &rhs;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let rhs = self.product()?;
                    acc = &acc - &rhs;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<CliffordPoly, ParseError> {
        let mut acc = self.power()?;
        while matches!(self.peek(), Some(Tok::Star)) {
            self.bump();
            let rhs = self.power()?;
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<CliffordPoly, ParseError> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let Some(Tok::Num(d)) = self.peek().cloned() else {
                return Err(self.err_here("expected an integer exponent after `^`"));
            };
            self.bump();
            let e: u32 = d
                .parse()
                .map_err(|_| self.err_here("exponent out of range"))?;
            if e > 64 {
                return Err(self.err_here("exponent larger than 64"));
            }
            let mut acc = self.one();
            for _ in 0..e {
                acc = &acc * &base;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<CliffordPoly, ParseError> {
        let offset = self.offset();
        match self.bump() {
            Some(Tok::Num(d)) => {
                let numer = BigInt::parse_bytes(d.as_bytes(), 10).unwrap();
                if matches!(self.peek(), Some(Tok::Slash)) {
                    self.bump();
                    let Some(Tok::Num(den)) = self.peek().cloned() else {
                        return Err(self.err_here("expected a denominator after `/`"));
                    };
                    self.bump();
                    let denom = BigInt::parse_bytes(den.as_bytes(), 10).unwrap();
                    if denom.is_zero() {
                        return Err(ParseError {
                            offset,
                            message: "zero denominator".into(),
                        });
                    }
                    return Ok(self.one().scale(&Rational::new(numer, denom)));
                }
                Ok(self.one().scale(&Rational::from_integer(numer)))
            }
            Some(Tok::Ident(name)) => self.resolve_ident(offset, &name),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(ParseError {
                        offset,
                        message: "unclosed parenthesis".into(),
                    }),
                }
            }
            _ => Err(ParseError {
                offset,
                message: "expected a term".into(),
            }),
        }
    }

    fn resolve_ident(&self, offset: usize, name: &str) -> Result<CliffordPoly, ParseError> {
        let np = self.names.len();
        if let Some(rest) = name.strip_prefix('x') {
            if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
                let idx: usize = rest.parse().map_err(|_| ParseError {
                    offset,
                    message: "variable index out of range".into(),
                })?;
                if idx == 0 || idx > self.nvars {
                    return Err(ParseError {
                        offset,
                        message: format!(
                            "variable index {idx} out of range (indices are 1..={})",
                            self.nvars
                        ),
                    });
                }
                return Ok(CliffordPoly::scalar(XPoly::var(self.nvars, np, idx - 1)));
            }
        }
        if let Some(rest) = name.strip_prefix('e') {
            if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
                let idx: usize = rest.parse().map_err(|_| ParseError {
                    offset,
                    message: "generator index out of range".into(),
                })?;
                if idx == 0 || idx > self.nvars {
                    return Err(ParseError {
                        offset,
                        message: format!(
                            "generator index {idx} out of range (indices are 1..={})",
                            self.nvars
                        ),
                    });
                }
                let unit = CliffordElement::unit(self.nvars, np, idx - 1);
                return Ok(CliffordPoly::scalar(XPoly::one(self.nvars, np)).mul_element_left(&unit));
            }
        }
        if let Some(k) = self.names.iter().position(|n| n == name) {
            return Ok(CliffordPoly::scalar(XPoly::from_coeff(
                self.nvars,
                ParamPoly::param(np, k),
            )));
        }
        Err(ParseError {
            offset,
            message: format!("unknown symbol `{name}`"),
        })
    }
}
