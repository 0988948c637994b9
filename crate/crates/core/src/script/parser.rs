use std::collections::BTreeSet;
use std::sync::Arc;

use super::lexer::{Tok, Token};
use super::ParseError;
use crate::subst::{Schema, Substitution};
use crate::syntax::{Formula, Hint, Term};

pub(crate) const KEYWORDS: [&str; 3] = ["eps", "all", "ex"];

/// Furthest point reached by a failed alternative.
#[derive(Debug)]
pub(crate) struct Failure {
    pos: usize,
    expected: BTreeSet<String>,
}

impl Failure {
    fn merge(self, other: Failure) -> Failure {
        match self.pos.cmp(&other.pos) {
            std::cmp::Ordering::Greater => self,
            std::cmp::Ordering::Less => other,
            std::cmp::Ordering::Equal => {
                let mut expected = self.expected;
                expected.extend(other.expected);
                Failure {
                    pos: self.pos,
                    expected,
                }
            }
        }
    }
}

type PResult<T> = Result<T, Failure>;

pub(crate) struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    binders: Vec<String>,
}

impl<'a> Parser<'a> {
    pub fn new(toks: &'a [Token]) -> Self {
        Parser {
            toks,
            pos: 0,
            binders: Vec::new(),
        }
    }

    pub fn to_error(&self, failure: Failure) -> ParseError {
        let tok = &self.toks[failure.pos.min(self.toks.len() - 1)];
        ParseError {
            span: tok.span,
            expected: failure.expected.into_iter().collect(),
            found: tok.tok.to_string(),
        }
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.pos + offset).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn bump(&mut self) {
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
    }

    fn fail<T>(&self, expected: &[&str]) -> PResult<T> {
        Err(Failure {
            pos: self.pos,
            expected: expected.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn expect(&mut self, tok: Tok) -> PResult<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            let what = tok.to_string();
            self.fail(&[what.as_str()])
        }
    }

    pub fn expect_eof(&mut self) -> PResult<()> {
        self.expect(Tok::Eof)
    }

    fn variable_name(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Tok::Lower(name) if !KEYWORDS.contains(&name.as_str()) => {
                self.bump();
                Ok(name)
            }
            _ => self.fail(&["variable"]),
        }
    }

    fn with_binder<T>(
        &mut self,
        name: String,
        body: impl FnOnce(&mut Self) -> PResult<T>,
    ) -> PResult<T> {
        self.binders.push(name);
        let out = body(self);
        self.binders.pop();
        out
    }

    pub fn formula(&mut self) -> PResult<Formula> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.formula()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> PResult<Formula> {
        let mut lhs = self.conjunction()?;
        while *self.peek() == Tok::Bar {
            self.bump();
            lhs = Formula::or(lhs, self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> PResult<Formula> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<Formula> {
        match self.peek().clone() {
            Tok::Tilde => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Lower(kw) if kw == "all" || kw == "ex" => {
                self.bump();
                let name = self.variable_name()?;
                self.expect(Tok::Dot)?;
                let hint = Hint::new(name.clone());
                let body = Arc::new(self.with_binder(name, |p| p.formula())?);
                Ok(if kw == "all" {
                    Formula::Forall(hint, body)
                } else {
                    Formula::Exists(hint, body)
                })
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> PResult<Formula> {
        match self.peek().clone() {
            Tok::Upper(name) => {
                self.bump();
                let args = if *self.peek() == Tok::LParen {
                    self.bump();
                    let args = self.separated(Tok::RParen, |p| p.term())?;
                    self.expect(Tok::RParen)?;
                    args
                } else {
                    Vec::new()
                };
                Ok(Formula::Var(name, args))
            }
            Tok::LParen => {
                // Either an equation whose left side is parenthesized or a
                // parenthesized formula; at most one of them fits.
                let start = self.pos;
                let as_equation = match self.equation() {
                    Ok(f) => return Ok(f),
                    Err(e) => e,
                };
                self.pos = start;
                self.bump();
                let inner = self
                    .formula()
                    .and_then(|f| self.expect(Tok::RParen).map(|_| f));
                inner.map_err(|e| e.merge(as_equation))
            }
            Tok::Lower(_) | Tok::Zero => self.equation(),
            _ => self.fail(&["formula"]),
        }
    }

    fn equation(&mut self) -> PResult<Formula> {
        let lhs = self.term()?;
        let negated = match self.peek() {
            Tok::Eq => false,
            Tok::Neq => true,
            _ => return self.fail(&["`=`", "`!=`"]),
        };
        self.bump();
        let rhs = self.term()?;
        Ok(if negated {
            Formula::neq(lhs, rhs)
        } else {
            Formula::eq(lhs, rhs)
        })
    }

    pub fn term(&mut self) -> PResult<Term> {
        let mut t = self.primary()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            self.expect(Tok::One)?;
            t = Term::succ(t);
        }
        Ok(t)
    }

    fn primary(&mut self) -> PResult<Term> {
        match self.peek().clone() {
            Tok::Zero => {
                self.bump();
                Ok(Term::Zero)
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::Lower(word) if word == "eps" => {
                self.bump();
                let name = self.variable_name()?;
                self.expect(Tok::Dot)?;
                let hint = Hint::new(name.clone());
                let body = self.with_binder(name, |p| p.unary())?;
                Ok(Term::Epsilon(hint, Arc::new(body)))
            }
            Tok::Lower(word) if (word == "s" || word == "d") && *self.peek_at(1) == Tok::LParen => {
                self.bump();
                self.bump();
                let inner = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(if word == "s" {
                    Term::succ(inner)
                } else {
                    Term::pred(inner)
                })
            }
            Tok::Lower(word) if !KEYWORDS.contains(&word.as_str()) => {
                self.bump();
                Ok(match self.binders.iter().rev().position(|b| *b == word) {
                    Some(i) => Term::Bound(i),
                    None => Term::Free(word),
                })
            }
            _ => self.fail(&["term"]),
        }
    }

    fn separated<T>(
        &mut self,
        close: Tok,
        mut item: impl FnMut(&mut Self) -> PResult<T>,
    ) -> PResult<Vec<T>> {
        let mut out = Vec::new();
        if *self.peek() == close {
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if *self.peek() == Tok::Comma {
                self.bump();
            } else {
                return Ok(out);
            }
        }
    }

    pub fn number(&mut self) -> PResult<usize> {
        let n = match self.peek() {
            Tok::Zero => Some(0),
            Tok::One => Some(1),
            Tok::Number(digits) => digits.parse().ok(),
            _ => None,
        };
        match n {
            Some(n) => {
                self.bump();
                Ok(n)
            }
            None => self.fail(&["line number"]),
        }
    }

    /// `{a := t, A(p, q) := F, ...}`
    pub fn substitution(&mut self) -> PResult<Substitution> {
        self.expect(Tok::LBrace)?;
        let entries = self.separated(Tok::RBrace, |p| p.subst_entry())?;
        self.expect(Tok::RBrace)?;
        let mut s = Substitution::new();
        for entry in entries {
            s = match entry {
                Entry::Term(a, t) => s.with_term(a, t),
                Entry::Formula(name, schema) => s.with_formula(name, schema),
            };
        }
        Ok(s)
    }

    fn subst_entry(&mut self) -> PResult<Entry> {
        match self.peek().clone() {
            Tok::Upper(name) => {
                self.bump();
                let params = if *self.peek() == Tok::LParen {
                    self.bump();
                    let params = self.separated(Tok::RParen, |p| p.variable_name())?;
                    self.expect(Tok::RParen)?;
                    params
                } else {
                    Vec::new()
                };
                self.expect(Tok::Assign)?;
                Ok(Entry::Formula(name, Schema::new(params, self.formula()?)))
            }
            Tok::Lower(_) => {
                let name = self.variable_name()?;
                self.expect(Tok::Assign)?;
                Ok(Entry::Term(name, self.term()?))
            }
            _ => self.fail(&["variable", "formula variable"]),
        }
    }
}

enum Entry {
    Term(String, Term),
    Formula(String, Schema),
}
