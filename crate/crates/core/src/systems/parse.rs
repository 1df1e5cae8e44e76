//! Plain-text system files.
//!
//! ```text
//! # comment
//! field 2
//! vars x y z
//! x*y + x + 1
//! x^2*z - 3*y
//! ```
//!
//! Variables are listed from greatest to least. Bodies are sums of
//! products of integer literals and variables, with `^` for positive
//! exponents. Coefficients are reduced mod the field size.

use std::fmt::Write as _;
use std::iter::Peekable;
use std::str::CharIndices;

use thiserror::Error;

use crate::gf::{Field, FieldError};
use crate::mpoly::{Monomial, MonomialOrder, PolyRing, Polynomial, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}: field size {q} is not prime")]
    NonPrimeField { line: usize, q: u64 },
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, column, message: message.into() }
}

/// Significant lines: `(1-based line number, text)` with comments removed.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let body = l.split('#').next().unwrap_or("");
        (!body.trim().is_empty()).then_some((i + 1, body))
    })
}

/// Column (1-based, in characters) of byte offset `at` within `line`.
fn column(line: &str, at: usize) -> usize {
    line[..at].chars().count() + 1
}

fn is_name_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Parse a system file; the monomial order is chosen by the caller.
pub fn parse_system(text: &str, order: MonomialOrder) -> Result<(PolyRing, Vec<Polynomial>), ParseError> {
    let mut it = lines(text);
    let (fl, fline) = it.next().ok_or_else(|| syntax(1, 1, "empty system file; expected `field <prime>`"))?;
    let field = parse_field(fl, fline)?;
    let (vl, vline) = it.next().ok_or_else(|| syntax(fl + 1, 1, "expected `vars <name>...`"))?;
    let names = parse_vars(vl, vline)?;
    let ring = PolyRing::new(field, names, order).map_err(|e| syntax(vl, 1, e.to_string()))?;
    let polys = it
        .map(|(ln, l)| PolyParser::new(&ring, ln, l).parse())
        .collect::<Result<Vec<_>, _>>()?;
    Ok((ring, polys))
}

fn parse_field(ln: usize, line: &str) -> Result<Field, ParseError> {
    let mut words = line.split_whitespace();
    if words.next() != Some("field") {
        return Err(syntax(ln, column(line, line.len() - line.trim_start().len()), "expected `field <prime>`"));
    }
    let Some(num) = words.next() else {
        return Err(syntax(ln, column(line, line.len()), "missing field size"));
    };
    let at = line.find(num).expect("word comes from line");
    let q: u64 = num.parse().map_err(|_| syntax(ln, column(line, at), format!("invalid field size `{num}`")))?;
    if let Some(extra) = words.next() {
        let at = line[at + num.len()..].find(extra).expect("word comes from line") + at + num.len();
        return Err(syntax(ln, column(line, at), format!("unexpected `{extra}` after field size")));
    }
    Field::new(q).map_err(|e| match e {
        FieldError::NonPrime(q) => ParseError::NonPrimeField { line: ln, q },
        other => syntax(ln, column(line, at), other.to_string()),
    })
}

fn parse_vars(ln: usize, line: &str) -> Result<Vec<String>, ParseError> {
    let trimmed = line.trim_start();
    let start = line.len() - trimmed.len();
    let Some(rest) = trimmed.strip_prefix("vars") else {
        return Err(syntax(ln, column(line, start), "expected `vars <name>...`"));
    };
    let base = start + 4;
    if !rest.is_empty() && !rest.starts_with(char::is_whitespace) {
        return Err(syntax(ln, column(line, start), "expected `vars <name>...`"));
    }
    let mut names: Vec<String> = Vec::new();
    let mut at = base;
    for word in rest.split(|c: char| c.is_whitespace() || c == ',') {
        let here = at;
        at += word.len() + 1;
        if word.is_empty() {
            continue;
        }
        let col = column(line, here);
        let mut chars = word.chars();
        if !chars.next().is_some_and(is_name_start) || !chars.all(is_name_char) {
            return Err(syntax(ln, col, format!("invalid variable name `{word}`")));
        }
        if names.iter().any(|n| n == word) {
            return Err(syntax(ln, col, format!("duplicate variable `{word}`")));
        }
        names.push(word.to_string());
    }
    if names.is_empty() {
        return Err(syntax(ln, column(line, line.len()), "no variables declared"));
    }
    Ok(names)
}

struct PolyParser<'a> {
    ring: &'a PolyRing,
    ln: usize,
    line: &'a str,
    chars: Peekable<CharIndices<'a>>,
}

impl<'a> PolyParser<'a> {
    fn new(ring: &'a PolyRing, ln: usize, line: &'a str) -> Self {
        PolyParser { ring, ln, line, chars: line.char_indices().peekable() }
    }

    fn err(&self, at: usize, msg: impl Into<String>) -> ParseError {
        syntax(self.ln, column(self.line, at), msg)
    }

    fn skip_ws(&mut self) {
        while self.chars.next_if(|(_, c)| c.is_whitespace()).is_some() {}
    }

    fn peek(&mut self) -> Option<(usize, char)> {
        self.skip_ws();
        self.chars.peek().copied()
    }

    fn parse(mut self) -> Result<Polynomial, ParseError> {
        let field = self.ring.field();
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let negative = match self.peek() {
                None if first => return Err(self.err(self.line.len(), "expected a term")),
                None => break,
                Some((_, '+')) => {
                    self.chars.next();
                    false
                }
                Some((_, '-')) => {
                    self.chars.next();
                    true
                }
                Some((at, c)) if !first => return Err(self.err(at, format!("expected `+` or `-`, found `{c}`"))),
                Some(_) => false,
            };
            first = false;
            let mut t = self.term()?;
            if negative {
                t.coeff = field.neg(t.coeff);
            }
            terms.push(t);
        }
        Ok(self.ring.normalize(terms))
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let field = self.ring.field();
        let mut coeff = 1;
        let mut exps = vec![0u32; self.ring.nvars()];
        loop {
            match self.peek() {
                Some((_, c)) if c.is_ascii_digit() => coeff = field.mul(coeff, self.integer()?),
                Some((at, c)) if is_name_start(c) => {
                    let name = self.name();
                    let var = self
                        .ring
                        .var_index(name)
                        .ok_or_else(|| self.err(at, format!("unknown variable `{name}`")))?;
                    let e = self.exponent()?;
                    exps[var] = exps[var].checked_add(e).ok_or_else(|| self.err(at, "exponent overflow"))?;
                }
                Some((at, c)) => return Err(self.err(at, format!("expected a number or variable, found `{c}`"))),
                None => return Err(self.err(self.line.len(), "expected a number or variable")),
            }
            match self.peek() {
                Some((_, '*')) => {
                    self.chars.next();
                }
                _ => return Ok(Term::new(coeff, Monomial::from_exps(exps))),
            }
        }
    }

    /// Integer literal reduced mod q.
    fn integer(&mut self) -> Result<u32, ParseError> {
        let q = self.ring.field().q() as u64;
        let mut v = 0u64;
        while let Some((_, c)) = self.chars.next_if(|(_, c)| c.is_ascii_digit()) {
            v = (v * 10 + c.to_digit(10).expect("digit") as u64) % q;
        }
        if let Some(&(at, c)) = self.chars.peek() {
            if is_name_char(c) {
                return Err(self.err(at, "expected `*` between a number and a variable"));
            }
        }
        Ok(v as u32)
    }

    fn name(&mut self) -> &'a str {
        let (start, _) = self.chars.next().expect("peeked");
        let mut end = start + 1;
        while let Some((i, c)) = self.chars.next_if(|(_, c)| is_name_char(*c)) {
            end = i + c.len_utf8();
        }
        &self.line[start..end]
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        match self.peek() {
            Some((_, '^')) => {
                self.chars.next();
            }
            _ => return Ok(1),
        }
        let Some((at, c)) = self.peek() else {
            return Err(self.err(self.line.len(), "missing exponent after `^`"));
        };
        if !c.is_ascii_digit() {
            return Err(self.err(at, format!("malformed exponent `{c}`")));
        }
        let mut end = at;
        while let Some((i, _)) = self.chars.next_if(|(_, c)| c.is_ascii_digit()) {
            end = i + 1;
        }
        let text = &self.line[at..end];
        match text.parse::<u32>() {
            Ok(0) => Err(self.err(at, "exponent must be positive")),
            Ok(e) => Ok(e),
            Err(_) => Err(self.err(at, format!("exponent `{text}` out of range"))),
        }
    }
}

/// Render a system in the format [`parse_system`] reads.
pub fn print_system(ring: &PolyRing, polys: &[Polynomial]) -> String {
    let mut out = String::new();
    writeln!(out, "field {}", ring.field().q()).unwrap();
    writeln!(out, "vars {}", ring.var_names().join(" ")).unwrap();
    for p in polys {
        writeln!(out, "{}", ring.display(p)).unwrap();
    }
    out
}
