//! Canonical text for terms, formulas, substitutions and proof scripts.
//!
//! Binder names come from the hints, renamed only when the hint would clash
//! with a free variable of the body or with a name already bound around it.

use std::collections::BTreeSet;
use std::fmt::{self, Write};

use super::parser::KEYWORDS;
use crate::proof::{Justification, ProofScript};
use crate::subst::{fresh_name, Substitution};
use crate::syntax::{Formula, Hint, Term};

// Binding strength; a subformula printed where a stronger one is required
// gets parentheses.
const QUANT: u8 = 0;
const IMPLIES: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const UNARY: u8 = 4;

struct Printer<'o, W: Write> {
    out: &'o mut W,
    names: Vec<String>,
}

impl<W: Write> Printer<'_, W> {
    fn binder_name(&self, hint: &Hint, body_free: BTreeSet<String>) -> String {
        let base = hint.as_str();
        let valid = base.starts_with(|c: char| c.is_ascii_lowercase())
            && base.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
            && !KEYWORDS.contains(&base);
        let base = if valid { base } else { "x" };
        let mut taken = body_free;
        taken.extend(self.names.iter().cloned());
        taken.extend(KEYWORDS.iter().map(|k| k.to_string()));
        fresh_name(base, &taken)
    }

    fn term(&mut self, t: &Term) -> fmt::Result {
        match t {
            Term::Zero => self.out.write_char('0'),
            Term::Free(a) => self.out.write_str(a),
            Term::Bound(i) => {
                let name = self
                    .names
                    .len()
                    .checked_sub(i + 1)
                    .and_then(|k| self.names.get(k));
                match name {
                    Some(n) => self.out.write_str(n),
                    None => write!(self.out, "?{i}"),
                }
            }
            Term::Succ(inner) => {
                if inner.is_epsilon() {
                    self.out.write_char('(')?;
                    self.term(inner)?;
                    self.out.write_char(')')?;
                } else {
                    self.term(inner)?;
                }
                self.out.write_str("+1")
            }
            Term::Pred(inner) => {
                self.out.write_str("d(")?;
                self.term(inner)?;
                self.out.write_char(')')
            }
            Term::Epsilon(hint, body) => {
                let name = self.binder_name(hint, body.free_vars());
                write!(self.out, "eps {name}. ")?;
                self.names.push(name);
                let r = self.formula(body, UNARY, false);
                self.names.pop();
                r
            }
        }
    }

    /// `tail`: nothing follows this formula before the end of the enclosing
    /// group, so a quantifier may extend to the right unparenthesized.
    fn formula(&mut self, f: &Formula, min: u8, tail: bool) -> fmt::Result {
        let own = match f {
            Formula::Implies(..) => IMPLIES,
            Formula::Or(..) => OR,
            Formula::And(..) => AND,
            Formula::Forall(..) | Formula::Exists(..) => QUANT,
            _ => UNARY,
        };
        let paren = if own == QUANT { !tail } else { own < min };
        if paren {
            self.out.write_char('(')?;
        }
        let tail = tail || paren;
        match f {
            Formula::Eq(a, b) => {
                self.term(a)?;
                self.out.write_str(" = ")?;
                self.term(b)?;
            }
            Formula::Not(inner) => match inner.as_ref() {
                Formula::Eq(a, b) => {
                    self.term(a)?;
                    self.out.write_str(" != ")?;
                    self.term(b)?;
                }
                _ => {
                    self.out.write_char('~')?;
                    self.formula(inner, UNARY, tail)?;
                }
            },
            Formula::Var(name, args) => {
                self.out.write_str(name)?;
                if !args.is_empty() {
                    self.out.write_char('(')?;
                    for (i, t) in args.iter().enumerate() {
                        if i > 0 {
                            self.out.write_str(", ")?;
                        }
                        self.term(t)?;
                    }
                    self.out.write_char(')')?;
                }
            }
            Formula::Implies(a, b) => {
                self.formula(a, OR, false)?;
                self.out.write_str(" -> ")?;
                self.formula(b, IMPLIES, tail)?;
            }
            Formula::Or(a, b) => {
                self.formula(a, OR, false)?;
                self.out.write_str(" | ")?;
                self.formula(b, AND, tail)?;
            }
            Formula::And(a, b) => {
                self.formula(a, AND, false)?;
                self.out.write_str(" & ")?;
                self.formula(b, UNARY, tail)?;
            }
            Formula::Forall(hint, body) | Formula::Exists(hint, body) => {
                let kw = if matches!(f, Formula::Forall(..)) {
                    "all"
                } else {
                    "ex"
                };
                let name = self.binder_name(hint, body.free_vars());
                write!(self.out, "{kw} {name}. ")?;
                self.names.push(name);
                let r = self.formula(body, QUANT, true);
                self.names.pop();
                r?;
            }
        }
        if paren {
            self.out.write_char(')')?;
        }
        Ok(())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Printer {
            out: f,
            names: Vec::new(),
        }
        .term(self)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Printer {
            out: f,
            names: Vec::new(),
        }
        .formula(self, QUANT, true)
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_char('{')?;
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| {
            if !std::mem::take(&mut first) {
                f.write_str(", ")?;
            }
            Ok::<_, fmt::Error>(())
        };
        for (a, t) in &self.terms {
            sep(f)?;
            write!(f, "{a} := {t}")?;
        }
        for (name, schema) in &self.formulas {
            sep(f)?;
            f.write_str(name)?;
            if !schema.params.is_empty() {
                write!(f, "({})", schema.params.join(", "))?;
            }
            write!(f, " := {}", schema.body)?;
        }
        f.write_char('}')
    }
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Axiom(a) => f.write_str(a.tag()),
            Justification::Subst(m, s) => write!(f, "subst {m} {s}"),
            Justification::Mp { minor, major } => write!(f, "mp {minor} {major}"),
            Justification::Rep(m) => write!(f, "rep {m}"),
        }
    }
}

/// One `n. formula ; justification` line per proof line, LF-terminated.
impl fmt::Display for ProofScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in self.lines() {
            writeln!(
                f,
                "{}. {} ; {}",
                line.number, line.formula, line.justification
            )?;
        }
        Ok(())
    }
}
