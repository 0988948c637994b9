//! Simultaneous substitution for individual and formula variables.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use thiserror::Error;

use crate::syntax::{Formula, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubstError {
    #[error("formula variable {name} is applied to {found} argument(s) but its replacement takes {expected}")]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
}

/// Replacement for a formula variable: `A(p1, ..., pk) := body`.
///
/// Parameters are written as free individual variables of `body`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Schema {
    pub params: Vec<String>,
    pub body: Formula,
}

impl Schema {
    pub fn new(params: Vec<String>, body: Formula) -> Self {
        Schema { params, body }
    }

    /// Zero-arity schema.
    pub fn constant(body: Formula) -> Self {
        Schema::new(Vec::new(), body)
    }

    pub fn arity(&self) -> usize {
        self.params.len()
    }

    /// Instantiates the parameters with `args`, which may carry bound indices
    /// of the context the occurrence sits in.
    fn instantiate(&self, args: &[Term]) -> Formula {
        if self.params.is_empty() {
            return self.body.clone();
        }
        self.body.map_terms(&mut |t, depth| match t {
            Term::Free(p) => self
                .params
                .iter()
                .position(|q| q == p)
                .map(|i| args[i].shifted(depth)),
            _ => None,
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Substitution {
    pub terms: BTreeMap<String, Term>,
    pub formulas: BTreeMap<String, Schema>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(var: impl Into<String>, t: Term) -> Self {
        Self::new().with_term(var, t)
    }

    pub fn with_term(mut self, var: impl Into<String>, t: Term) -> Self {
        debug_assert!(!t.has_loose_bound());
        self.terms.insert(var.into(), t);
        self
    }

    pub fn with_formula(mut self, var: impl Into<String>, schema: Schema) -> Self {
        self.formulas.insert(var.into(), schema);
        self
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty() && self.formulas.is_empty()
    }

    pub fn apply(&self, f: &Formula) -> Result<Formula, SubstError> {
        if self.is_empty() {
            return Ok(f.clone());
        }
        self.formula(f)
    }

    pub fn apply_term(&self, t: &Term) -> Result<Term, SubstError> {
        if self.is_empty() {
            return Ok(t.clone());
        }
        self.term(t)
    }

    fn term(&self, t: &Term) -> Result<Term, SubstError> {
        Ok(match t {
            Term::Free(a) => self.terms.get(a).cloned().unwrap_or_else(|| t.clone()),
            Term::Zero | Term::Bound(_) => t.clone(),
            Term::Succ(s) => Term::succ(self.term(s)?),
            Term::Pred(s) => Term::pred(self.term(s)?),
            Term::Epsilon(h, body) => Term::Epsilon(h.clone(), Arc::new(self.formula(body)?)),
        })
    }

    fn formula(&self, f: &Formula) -> Result<Formula, SubstError> {
        Ok(match f {
            Formula::Eq(a, b) => Formula::Eq(self.term(a)?, self.term(b)?),
            Formula::Var(name, args) => {
                let args = args
                    .iter()
                    .map(|t| self.term(t))
                    .collect::<Result<Vec<_>, _>>()?;
                match self.formulas.get(name) {
                    Some(schema) if schema.arity() != args.len() => {
                        return Err(SubstError::ArityMismatch {
                            name: name.clone(),
                            expected: schema.arity(),
                            found: args.len(),
                        })
                    }
                    Some(schema) => schema.instantiate(&args),
                    None => Formula::Var(name.clone(), args),
                }
            }
            Formula::Not(a) => Formula::not(self.formula(a)?),
            Formula::Implies(a, b) => Formula::implies(self.formula(a)?, self.formula(b)?),
            Formula::And(a, b) => Formula::and(self.formula(a)?, self.formula(b)?),
            Formula::Or(a, b) => Formula::or(self.formula(a)?, self.formula(b)?),
            Formula::Forall(h, body) => Formula::Forall(h.clone(), Arc::new(self.formula(body)?)),
            Formula::Exists(h, body) => Formula::Exists(h.clone(), Arc::new(self.formula(body)?)),
        })
    }

    /// `self` followed by `later`: applying the result equals applying
    /// `self` and then `later`.
    pub fn then(&self, later: &Substitution) -> Result<Substitution, SubstError> {
        if later.is_empty() {
            return Ok(self.clone());
        }
        let mut out = Substitution::new();
        for (a, t) in &self.terms {
            out.terms.insert(a.clone(), later.term(t)?);
        }
        for (a, t) in &later.terms {
            out.terms.entry(a.clone()).or_insert_with(|| t.clone());
        }

        let avoid = later.names();
        for (name, schema) in &self.formulas {
            // Parameters are renamed away from everything `later` touches so
            // they are neither substituted nor captured.
            let mut taken = avoid.clone();
            taken.extend(
                schema
                    .body
                    .free_vars()
                    .into_iter()
                    .filter(|v| !schema.params.contains(v)),
            );
            let mut params = Vec::with_capacity(schema.params.len());
            for p in &schema.params {
                let fresh = fresh_name(p, &taken);
                taken.insert(fresh.clone());
                params.push(fresh);
            }
            let renamed = if params == schema.params {
                schema.body.clone()
            } else {
                schema.body.map_terms(&mut |t, _| match t {
                    Term::Free(q) => schema
                        .params
                        .iter()
                        .position(|p| p == q)
                        .map(|i| Term::Free(params[i].clone())),
                    _ => None,
                })
            };
            out.formulas
                .insert(name.clone(), Schema::new(params, later.formula(&renamed)?));
        }
        for (name, schema) in &later.formulas {
            out.formulas
                .entry(name.clone())
                .or_insert_with(|| schema.clone());
        }
        Ok(out)
    }

    /// Every individual-variable name mentioned by the substitution.
    fn names(&self) -> BTreeSet<String> {
        let mut out: BTreeSet<String> = self.terms.keys().cloned().collect();
        for t in self.terms.values() {
            out.extend(Formula::Eq(t.clone(), Term::Zero).free_vars());
        }
        for schema in self.formulas.values() {
            out.extend(schema.params.iter().cloned());
            out.extend(schema.body.free_vars());
        }
        out
    }
}

/// Capture-avoiding simultaneous substitution.
pub fn apply_subst(f: &Formula, s: &Substitution) -> Result<Formula, SubstError> {
    s.apply(f)
}

/// `base`, or `base` with the smallest numeric suffix not in `taken`.
pub(crate) fn fresh_name(base: &str, taken: &BTreeSet<String>) -> String {
    if !taken.contains(base) {
        return base.to_string();
    }
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
    (1..)
        .map(|i| format!("{stem}{i}"))
        .find(|n| !taken.contains(n))
        .expect("unbounded suffix search")
}
