//! Text formats for formulas and proof scripts.
//!
//! Formulas (ASCII):
//!
//! ```text
//! term    ::= 0 | var | s(term) | d(term) | term+1 | eps var. unary | (term)
//! atom    ::= term = term | term != term | A | A(term, ...) | (formula)
//! unary   ::= ~unary | all var. formula | ex var. formula | atom
//! formula ::= unary (& unary)* (| ...)* (-> formula)?
//! ```
//!
//! `~` binds tightest, then `&`, `|`, and `->` (right associative). The body
//! of `eps` is a single unary formula, so `eps x. x = 0 = 0` reads as
//! `(eps x. x = 0) = 0`.
//!
//! A proof script has one line per step:
//!
//! ```text
//! 1. a = d(a+1) ; ax-pred
//! 2. 0 = d(0+1) ; subst 1 {a := 0}
//! ```
//!
//! Justifications are `taut`, `id1`, `id2`, `ax-succ`, `ax-pred`, `crit`,
//! `subst m {a := t, A(p) := F}`, `mp m k` (minor `m`, major `k`) and
//! `rep m`. Blank lines and lines starting with `#` are ignored.

mod lexer;
mod parser;
mod printer;

use std::fmt;

use thiserror::Error;

use crate::proof::{Axiom, Justification, ProofLine, ProofScript, ScriptError};
use crate::subst::Substitution;
use crate::syntax::{Formula, Term};
use lexer::tokenize;
use parser::Parser;

/// 1-based position of a token in the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
    pub length: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{span}: {}", self.describe())]
pub struct ParseError {
    pub span: SourceSpan,
    pub expected: Vec<String>,
    pub found: String,
}

impl ParseError {
    fn describe(&self) -> String {
        if self.expected.is_empty() {
            format!("unexpected {}", self.found)
        } else {
            format!(
                "expected {}, found {}",
                self.expected.join(" or "),
                self.found
            )
        }
    }

    fn at(span: SourceSpan, expected: &[&str], found: impl Into<String>) -> Self {
        ParseError {
            span,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: found.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReadError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Script(#[from] ScriptError),
}

fn parse_with<T>(
    text: &str,
    line: usize,
    column: usize,
    run: impl FnOnce(&mut Parser<'_>) -> Result<T, parser::Failure>,
) -> Result<T, ParseError> {
    let toks = tokenize(text, line, column)?;
    let mut p = Parser::new(&toks);
    let out = run(&mut p).and_then(|v| p.expect_eof().map(|_| v));
    out.map_err(|failure| p.to_error(failure))
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    parse_with(text, 1, 1, |p| p.formula())
}

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    parse_with(text, 1, 1, |p| p.term())
}

pub fn parse_substitution(text: &str) -> Result<Substitution, ParseError> {
    parse_with(text, 1, 1, |p| p.substitution())
}

pub fn print_formula(f: &Formula) -> String {
    f.to_string()
}

pub fn print_proof(p: &ProofScript) -> String {
    p.to_string()
}

pub fn parse_proof(text: &str) -> Result<ProofScript, ReadError> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let trimmed = raw.trim_start();
        if trimmed.trim_end().is_empty() || trimmed.starts_with('#') {
            continue;
        }
        lines.push(parse_line(raw, line_no)?);
    }
    if lines.is_empty() {
        return Err(ScriptError::Empty.into());
    }
    Ok(ProofScript::new(lines)?)
}

/// Column (1-based) of byte offset `at` in `raw`.
fn column_of(raw: &str, at: usize) -> usize {
    raw[..at].chars().count() + 1
}

fn parse_line(raw: &str, line_no: usize) -> Result<ProofLine, ParseError> {
    let span = |at: usize, len: usize| SourceSpan {
        line: line_no,
        column: column_of(raw, at),
        length: len,
    };
    let start = raw.len() - raw.trim_start().len();
    let digits_end = raw[start..]
        .find(|c: char| !c.is_ascii_digit())
        .map_or(raw.len(), |k| start + k);
    let number: usize = raw[start..digits_end]
        .parse()
        .map_err(|_| ParseError::at(span(start, 1), &["line number"], found_at(raw, start)))?;
    if !raw[digits_end..].starts_with('.') {
        return Err(ParseError::at(
            span(digits_end, 1),
            &["`.`"],
            found_at(raw, digits_end),
        ));
    }
    let body_start = digits_end + 1;
    let semi = raw[body_start..]
        .find(';')
        .map(|k| body_start + k)
        .ok_or_else(|| ParseError::at(span(raw.len(), 0), &["`;`"], "end of line"))?;

    let formula = parse_with(
        &raw[body_start..semi],
        line_no,
        column_of(raw, body_start),
        |p| p.formula(),
    )?;

    let just_start = semi + 1;
    let just_text = &raw[just_start..];
    let tag_start = just_start + (just_text.len() - just_text.trim_start().len());
    let tag_end = raw[tag_start..]
        .find(char::is_whitespace)
        .map_or(raw.len(), |k| tag_start + k);
    let tag = &raw[tag_start..tag_end];
    let rest = &raw[tag_end..];
    let rest_col = column_of(raw, tag_end);

    let justification = if let Some(axiom) = Axiom::from_tag(tag) {
        parse_with(rest, line_no, rest_col, |_| Ok(()))?;
        Justification::Axiom(axiom)
    } else {
        match tag {
            "subst" => parse_with(rest, line_no, rest_col, |p| {
                let m = p.number()?;
                Ok(Justification::Subst(m, p.substitution()?))
            })?,
            "mp" => parse_with(rest, line_no, rest_col, |p| {
                let minor = p.number()?;
                let major = p.number()?;
                Ok(Justification::Mp { minor, major })
            })?,
            "rep" => parse_with(rest, line_no, rest_col, |p| {
                Ok(Justification::Rep(p.number()?))
            })?,
            _ => {
                let mut expected: Vec<&str> = Axiom::ALL.iter().map(|a| a.tag()).collect();
                expected.extend(["subst", "mp", "rep"]);
                let found = if tag.is_empty() {
                    "end of line".to_string()
                } else {
                    format!("`{tag}`")
                };
                return Err(ParseError::at(
                    span(tag_start, tag.chars().count()),
                    &expected,
                    found,
                ));
            }
        }
    };
    Ok(ProofLine {
        number,
        formula,
        justification,
    })
}

fn found_at(raw: &str, at: usize) -> String {
    raw[at..]
        .chars()
        .next()
        .map_or_else(|| "end of line".to_string(), |c| format!("`{c}`"))
}
