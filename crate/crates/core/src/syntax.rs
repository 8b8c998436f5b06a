//! Canonical textual syntax for formulas.
//!
//! Operators: `! X F G` (prefix), `U W R` (infix, right-associative),
//! `&`, `|`, `->` (right-associative), constants `true`/`false`.
//! Precedence from tightest: prefix, `U W R`, `&`, `|`, `->`.
//! Constraint atoms are written `(v < 5.0)` / `(v = 5.0)`.
//!
//! The printer always parenthesizes binary temporal operators, so
//! `Until(true, p)` prints as `(true U p)`.

use std::fmt;

use rust_decimal::Decimal;

use crate::error::SyntaxError;
use crate::formula::{format_decimal, Atom, Formula, Ident, Relation};

const PREC_IMPLIES: u8 = 1;
const PREC_OR: u8 = 2;
const PREC_AND: u8 = 3;
const PREC_UNARY: u8 = 5;
const PREC_ATOM: u8 = 6;

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Implies(..) => PREC_IMPLIES,
        Formula::Or(..) => PREC_OR,
        Formula::And(..) => PREC_AND,
        Formula::Not(_) | Formula::Next(_) | Formula::Eventually(_) | Formula::Always(_) => {
            PREC_UNARY
        }
        // binary temporal operators carry their own parentheses
        _ => PREC_ATOM,
    }
}

struct Canonical<'a>(&'a Formula);

impl fmt::Display for Canonical<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(f, self.0, 0)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", Canonical(self))
    }
}

/// Renders `f` in canonical syntax; `parse_formula` inverts it exactly.
pub fn to_canonical(f: &Formula) -> String {
    Canonical(f).to_string()
}

fn write_formula(out: &mut fmt::Formatter<'_>, f: &Formula, min_prec: u8) -> fmt::Result {
    let prec = precedence(f);
    let paren = prec < min_prec;
    if paren {
        out.write_str("(")?;
    }
    match f {
        Formula::True => out.write_str("true")?,
        Formula::False => out.write_str("false")?,
        Formula::Atom(Atom::Prop(p)) => write!(out, "{p}")?,
        Formula::Atom(Atom::Constraint(c)) => write!(
            out,
            "({} {} {})",
            c.variable,
            c.relation.symbol(),
            format_decimal(c.threshold())
        )?,
        Formula::Not(a) => {
            out.write_str("!")?;
            write_formula(out, a, PREC_UNARY)?;
        }
        Formula::Next(a) => unary(out, "X", a)?,
        Formula::Eventually(a) => unary(out, "F", a)?,
        Formula::Always(a) => unary(out, "G", a)?,
        Formula::And(a, b) => binary(out, a, "&", b, PREC_AND)?,
        Formula::Or(a, b) => binary(out, a, "|", b, PREC_OR)?,
        Formula::Implies(a, b) => binary(out, a, "->", b, PREC_IMPLIES)?,
        Formula::Until(a, b) => temporal(out, a, "U", b)?,
        Formula::WeakUntil(a, b) => temporal(out, a, "W", b)?,
        Formula::Release(a, b) => temporal(out, a, "R", b)?,
    }
    if paren {
        out.write_str(")")?;
    }
    Ok(())
}

fn unary(out: &mut fmt::Formatter<'_>, op: &str, a: &Formula) -> fmt::Result {
    write!(out, "{op} ")?;
    write_formula(out, a, PREC_UNARY)
}

fn binary(out: &mut fmt::Formatter<'_>, a: &Formula, op: &str, b: &Formula, prec: u8) -> fmt::Result {
    write_formula(out, a, prec + 1)?;
    write!(out, " {op} ")?;
    write_formula(out, b, prec)
}

fn temporal(out: &mut fmt::Formatter<'_>, a: &Formula, op: &str, b: &Formula) -> fmt::Result {
    // inside the parentheses the operands only need to bind tighter than `->`
    out.write_str("(")?;
    write_formula(out, a, PREC_UNARY)?;
    write!(out, " {op} ")?;
    write_formula(out, b, PREC_UNARY)?;
    out.write_str(")")
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Number(Decimal),
    Not,
    And,
    Or,
    Arrow,
    Lt,
    Eq,
    LParen,
    RParen,
}

fn lex(input: &str) -> Result<Vec<(Tok, usize)>, SyntaxError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |i: usize, m: &str| SyntaxError { column: i + 1, message: m.to_string() };
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '!' => {
                i += 1;
                Tok::Not
            }
            '&' => {
                i += 1;
                Tok::And
            }
            '|' => {
                i += 1;
                Tok::Or
            }
            '(' => {
                i += 1;
                Tok::LParen
            }
            ')' => {
                i += 1;
                Tok::RParen
            }
            '<' => {
                i += 1;
                Tok::Lt
            }
            '=' => {
                i += 1;
                Tok::Eq
            }
            '-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 2;
                Tok::Arrow
            }
            '-' | '0'..='9' => {
                i += 1;
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                let text = &input[start..i];
                let d: Decimal = text.parse().map_err(|_| err(start, "malformed number"))?;
                Tok::Number(d)
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                Tok::Ident(input[start..i].to_string())
            }
            _ => return Err(err(start, &format!("unexpected character `{c}`"))),
        };
        out.push((tok, start));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn peek_word(&self) -> Option<&str> {
        match self.peek() {
            Some(Tok::Ident(s)) => Some(s.as_str()),
            _ => None,
        }
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map(|(_, c)| c + 1).unwrap_or(self.len + 1)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, SyntaxError> {
        Err(SyntaxError { column: self.column(), message: message.into() })
    }

    fn expect(&mut self, tok: Tok) -> Result<(), SyntaxError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected {tok:?}"))
        }
    }

    fn implies(&mut self) -> Result<Formula, SyntaxError> {
        let lhs = self.or()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.pos += 1;
            let rhs = self.implies()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, SyntaxError> {
        let lhs = self.and()?;
        if self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            let rhs = self.or()?;
            return Ok(Formula::or(lhs, rhs));
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, SyntaxError> {
        let lhs = self.temporal()?;
        if self.peek() == Some(&Tok::And) {
            self.pos += 1;
            let rhs = self.and()?;
            return Ok(Formula::and(lhs, rhs));
        }
        Ok(lhs)
    }

    fn temporal(&mut self) -> Result<Formula, SyntaxError> {
        let lhs = self.unary()?;
        let build: fn(Formula, Formula) -> Formula = match self.peek_word() {
            Some("U") => Formula::until,
            Some("W") => Formula::weak_until,
            Some("R") => Formula::release,
            _ => return Ok(lhs),
        };
        self.pos += 1;
        let rhs = self.temporal()?;
        Ok(build(lhs, rhs))
    }

    fn unary(&mut self) -> Result<Formula, SyntaxError> {
        if self.peek() == Some(&Tok::Not) {
            self.pos += 1;
            return Ok(Formula::not(self.unary()?));
        }
        let build: fn(Formula) -> Formula = match self.peek_word() {
            Some("X") => Formula::next,
            Some("F") => Formula::eventually,
            Some("G") => Formula::always,
            _ => return self.primary(),
        };
        self.pos += 1;
        Ok(build(self.unary()?))
    }

    fn primary(&mut self) -> Result<Formula, SyntaxError> {
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let f = self.implies()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Some(Tok::Ident(word)) => {
                self.pos += 1;
                match word.as_str() {
                    "true" => Ok(Formula::True),
                    "false" => Ok(Formula::False),
                    _ => {
                        if matches!(self.peek(), Some(Tok::Lt | Tok::Eq)) {
                            self.pos -= 1;
                            return self.constraint();
                        }
                        let id = Ident::any(&word).map_err(|e| SyntaxError {
                            column: self.toks[self.pos - 1].1 + 1,
                            message: e.to_string(),
                        })?;
                        Ok(Formula::prop(id))
                    }
                }
            }
            Some(t) => self.error(format!("unexpected token {t:?}")),
            None => self.error("unexpected end of input"),
        }
    }

    fn constraint(&mut self) -> Result<Formula, SyntaxError> {
        let Some(Tok::Ident(name)) = self.peek().cloned() else {
            return self.error("expected variable");
        };
        let var = Ident::any(&name).map_err(|e| SyntaxError { column: self.column(), message: e.to_string() })?;
        self.pos += 1;
        let rel = match self.peek() {
            Some(Tok::Lt) => Relation::Lt,
            Some(Tok::Eq) => Relation::Eq,
            _ => return self.error("expected `<` or `=`"),
        };
        self.pos += 1;
        let Some(Tok::Number(d)) = self.peek().cloned() else {
            return self.error("expected threshold");
        };
        self.pos += 1;
        Ok(Formula::constraint(var, rel, d))
    }
}

/// Parses the canonical syntax.
pub fn parse_formula(input: &str) -> Result<Formula, SyntaxError> {
    let toks = lex(input)?;
    let mut p = Parser { toks, pos: 0, len: input.len() };
    let f = p.implies()?;
    if p.pos != p.toks.len() {
        return p.error("trailing input");
    }
    Ok(f)
}
