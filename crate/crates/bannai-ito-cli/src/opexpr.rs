//! Operator expressions for the `apply` command: named operators of the
//! active realization combined with `+ - *`, scalars, commutators
//! `[x, y]` and anticommutators `{x, y}`.
//!
//! Products follow the operator convention: in `X*Y` the right factor
//! acts first.  Names accept an optional braced index, so `C_{12}` and
//! `C_12` are the same operator.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use bannai_ito::bannaiito::closed::{self, QTable};
use bannai_ito::bannaiito::{Realization, RealizationKind};
use bannai_ito::clifford::{w_ij, z_i, CliffordElement};
use bannai_ito::dunkl::{d_op, m_ij, s_ij, x_op};
use bannai_ito::exactring::{ParamPoly, Rational};
use bannai_ito::hyperoct::SignedPerm;
use bannai_ito::opcalc::Operator;

use crate::text::ParseError;

/// Named operators available to `apply` for one realization.
pub fn registry(r: &Realization) -> BTreeMap<String, Operator> {
    let mut map = BTreeMap::new();
    let n = r.n;
    let np = r.nparams;
    map.insert("Id".into(), Operator::identity());
    map.insert("A_plus".into(), r.a_plus.clone());
    map.insert("A_minus".into(), r.a_minus.clone());
    map.insert("A_0".into(), r.a_zero.clone());
    map.insert("P".into(), r.p.clone());
    map.insert("Gamma".into(), r.gamma());
    for i in 0..n {
        map.insert(format!("P_{}", i + 1), r.p_i[i].clone());
        map.insert(format!("R_{}", i + 1), r.p_i[i].clone());
        map.insert(format!("D_{}", i + 1), d_op(&r.dunkl, i));
        map.insert(format!("x_{}", i + 1), x_op(n, np, i));
        map.insert(format!("del_{}", i + 1), Operator::partial(i));
        map.insert(format!("C_{}", i + 1), r.centralizer_element(&[i]));
    }
    for i in 0..n {
        for j in i + 1..n {
            let tag = format!("{}{}", i + 1, j + 1);
            map.insert(
                format!("pi_{tag}"),
                Operator::perm(SignedPerm::transposition(n, i, j)),
            );
            map.insert(format!("M_{tag}"), m_ij(&r.dunkl, n, i, j));
            map.insert(format!("C_{tag}"), r.centralizer_element(&[i, j]));
        }
    }
    for i in 0..n {
        for j in 0..n {
            map.insert(
                format!("S_{}{}", i + 1, j + 1),
                Operator::group_algebra(s_ij(&r.dunkl, n, i, j)),
            );
        }
    }
    map.insert("C_123".into(), r.centralizer_element(&[0, 1, 2]));
    if r.kind == RealizationKind::B3Scalar {
        let q = QTable::standard(np);
        map.insert("Q_12".into(), Operator::group_algebra(q.q12.clone()));
        map.insert("Q_13".into(), Operator::group_algebra(q.q13.clone()));
        map.insert("Q_23".into(), Operator::group_algebra(q.q23.clone()));
    }
    if r.kind == RealizationKind::B3Clifford {
        for i in 0..n {
            map.insert(
                format!("e_{}", i + 1),
                Operator::mul_element(CliffordElement::unit(n, np, i)),
            );
            map.insert(format!("Z_{}", i + 1), z_i(n, np, i));
            map.insert(format!("O_{}", i + 1), closed::o_defining(r, &[i]));
        }
        for i in 0..n {
            for j in i + 1..n {
                let tag = format!("{}{}", i + 1, j + 1);
                map.insert(format!("W_{tag}"), w_ij(n, np, i, j));
                map.insert(format!("O_{tag}"), closed::o_defining(r, &[i, j]));
            }
        }
        map.insert("O_123".into(), closed::o_defining(r, &[0, 1, 2]));
    }
    map
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Name(String),
    Num(String),
    Plus,
    Minus,
    Star,
    Slash,
    Comma,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
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
            ',' => {
                out.push((i, Tok::Comma));
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
            '[' => {
                out.push((i, Tok::LBracket));
                i += 1;
            }
            ']' => {
                out.push((i, Tok::RBracket));
                i += 1;
            }
            '{' => {
                out.push((i, Tok::LBrace));
                i += 1;
            }
            '}' => {
                out.push((i, Tok::RBrace));
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
                // a name may carry one braced index group, e.g. C_{12}
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let mut name = input[start..i].to_string();
                if i < bytes.len() && bytes[i] == b'{' {
                    let close = input[i..].find('}').map(|k| i + k).ok_or(ParseError {
                        offset: i,
                        message: "unclosed `{` in name".into(),
                    })?;
                    let index = &input[i + 1..close];
                    if !index.is_empty() && index.bytes().all(|b| b.is_ascii_digit()) {
                        name.push_str(index);
                        i = close + 1;
                    }
                }
                out.push((start, Tok::Name(name)));
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

pub struct OpParser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    registry: &'a BTreeMap<String, Operator>,
    params: &'a [String],
}

impl<'a> OpParser<'a> {
    pub fn parse(
        input: &str,
        registry: &'a BTreeMap<String, Operator>,
        params: &'a [String],
    ) -> Result<Operator, ParseError> {
        let toks = lex(input)?;
        let mut p = OpParser {
            toks,
            pos: 0,
            end: input.len(),
            registry,
            params,
        };
        let op = p.expr()?;
        if p.pos < p.toks.len() {
            return Err(p.err_here("trailing input"));
        }
        Ok(op)
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

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.bump();
            Ok(())
        } else {
            Err(self.err_here(format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<Operator, ParseError> {
        let mut negate = false;
        if matches!(self.peek(), Some(Tok::Plus) | Some(Tok::Minus)) {
            negate = matches!(self.bump(), Some(Tok::Minus));
        }
        let mut acc = self.term()?;
        if negate {
            acc = Operator::negate(acc);
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = Operator::sum(vec![acc, rhs]);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = Operator::sum(vec![acc, Operator::negate(rhs)]);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Operator, ParseError> {
        let mut factors = vec![self.factor()?];
        while matches!(self.peek(), Some(Tok::Star)) {
            self.bump();
            factors.push(self.factor()?);
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            Operator::compose(factors)
        })
    }

    fn factor(&mut self) -> Result<Operator, ParseError> {
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
                    return Ok(Operator::scale_rat(
                        Rational::new(numer, denom),
                        Operator::identity(),
                    ));
                }
                Ok(Operator::scale_rat(
                    Rational::from_integer(numer),
                    Operator::identity(),
                ))
            }
            Some(Tok::Name(name)) => {
                if let Some(op) = self.registry.get(&name) {
                    return Ok(op.clone());
                }
                if let Some(k) = self.params.iter().position(|p| *p == name) {
                    return Ok(Operator::scale(
                        ParamPoly::param(self.params.len(), k),
                        Operator::identity(),
                    ));
                }
                Err(ParseError {
                    offset,
                    message: format!("unknown operator name `{name}`"),
                })
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Some(Tok::LBracket) => {
                let lhs = self.expr()?;
                self.expect(Tok::Comma, "`,` in a commutator")?;
                let rhs = self.expr()?;
                self.expect(Tok::RBracket, "`]`")?;
                Ok(Operator::commutator(&lhs, &rhs))
            }
            Some(Tok::LBrace) => {
                let lhs = self.expr()?;
                self.expect(Tok::Comma, "`,` in an anticommutator")?;
                let rhs = self.expr()?;
                self.expect(Tok::RBrace, "`}`")?;
                Ok(Operator::anticommutator(&lhs, &rhs))
            }
            _ => Err(ParseError {
                offset,
                message: "expected an operator".into(),
            }),
        }
    }
}
