//! Terms and formulas of the epsilon calculus.
//!
//! Binders (`eps`, `all`, `ex`) are nameless: an occurrence of a bound
//! variable is a de Bruijn index counting the binders between it and the one
//! that introduces it, so `Bound(0)` refers to the innermost enclosing binder.
//! Each binder keeps the name it was written with as a [`Hint`] for printing.
//! Hints never take part in equality or hashing, which makes `==` on
//! [`Term`] and [`Formula`] coincide with alpha-equivalence.

use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

/// Printing name of a bound variable. Ignored by `==` and `Hash`.
#[derive(Clone)]
pub struct Hint(pub String);

impl Hint {
    pub fn new(name: impl Into<String>) -> Self {
        Hint(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl PartialEq for Hint {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for Hint {}

impl Hash for Hint {
    fn hash<H: Hasher>(&self, _: &mut H) {}
}

impl fmt::Debug for Hint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A term over `0`, successor, predecessor (`δ`), variables and epsilon terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Zero,
    Succ(Arc<Term>),
    Pred(Arc<Term>),
    Free(String),
    Bound(usize),
    /// `ε_x F`; inside the body `Bound(0)` is `x`.
    Epsilon(Hint, Arc<Formula>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Eq(Term, Term),
    /// A formula variable applied to its argument list (possibly empty).
    Var(String, Vec<Term>),
    Not(Arc<Formula>),
    Implies(Arc<Formula>, Arc<Formula>),
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    Forall(Hint, Arc<Formula>),
    Exists(Hint, Arc<Formula>),
}

impl Term {
    pub fn free(name: impl Into<String>) -> Term {
        Term::Free(name.into())
    }

    pub fn succ(t: Term) -> Term {
        Term::Succ(Arc::new(t))
    }

    pub fn pred(t: Term) -> Term {
        Term::Pred(Arc::new(t))
    }

    pub fn numeral(n: u64) -> Term {
        (0..n).fold(Term::Zero, |t, _| Term::succ(t))
    }

    /// `ε_name body`, binding every free occurrence of `name` in `body`.
    pub fn epsilon(name: &str, body: Formula) -> Term {
        Term::Epsilon(Hint::new(name), Arc::new(body.abstract_free(name)))
    }

    /// Returns `n` if the term is `0` followed by `n` successors.
    pub fn numeral_value(&self) -> Option<u64> {
        let mut n = 0;
        let mut t = self;
        loop {
            match t {
                Term::Zero => return Some(n),
                Term::Succ(inner) => {
                    n += 1;
                    t = inner;
                }
                _ => return None,
            }
        }
    }

    pub fn is_numeral(&self) -> bool {
        self.numeral_value().is_some()
    }

    pub fn is_epsilon(&self) -> bool {
        matches!(self, Term::Epsilon(..))
    }

    /// Top-down rewrite. `f` receives each subterm with the number of binders
    /// crossed to reach it; returning `Some` replaces the subterm without
    /// descending into it.
    pub fn map_terms<F>(&self, f: &mut F) -> Term
    where
        F: FnMut(&Term, usize) -> Option<Term>,
    {
        self.map_terms_at(0, f)
    }

    pub(crate) fn map_terms_at<F>(&self, depth: usize, f: &mut F) -> Term
    where
        F: FnMut(&Term, usize) -> Option<Term>,
    {
        if let Some(t) = f(self, depth) {
            return t;
        }
        match self {
            Term::Zero | Term::Free(_) | Term::Bound(_) => self.clone(),
            Term::Succ(t) => Term::succ(t.map_terms_at(depth, f)),
            Term::Pred(t) => Term::pred(t.map_terms_at(depth, f)),
            Term::Epsilon(h, body) => {
                Term::Epsilon(h.clone(), Arc::new(body.map_terms_at(depth + 1, f)))
            }
        }
    }

    /// Adds `amount` to every bound index that points outside the term.
    pub fn shifted(&self, amount: usize) -> Term {
        if amount == 0 {
            return self.clone();
        }
        self.map_terms(&mut |t, depth| match t {
            Term::Bound(i) if *i >= depth => Some(Term::Bound(i + amount)),
            _ => None,
        })
    }

    /// True if some bound index points outside the term.
    pub fn has_loose_bound(&self) -> bool {
        self.loose_bound_at(0)
    }

    fn loose_bound_at(&self, depth: usize) -> bool {
        match self {
            Term::Bound(i) => *i >= depth,
            Term::Zero | Term::Free(_) => false,
            Term::Succ(t) | Term::Pred(t) => t.loose_bound_at(depth),
            Term::Epsilon(_, body) => body.loose_bound_at(depth + 1),
        }
    }

    /// True if `Bound(depth)` (the variable of the binder just outside) occurs.
    pub(crate) fn mentions_bound(&self, depth: usize) -> bool {
        match self {
            Term::Bound(i) => *i == depth,
            Term::Zero | Term::Free(_) => false,
            Term::Succ(t) | Term::Pred(t) => t.mentions_bound(depth),
            Term::Epsilon(_, body) => body.mentions_bound(depth + 1),
        }
    }

    pub fn contains_term(&self, needle: &Term) -> bool {
        self == needle
            || match self {
                Term::Zero | Term::Free(_) | Term::Bound(_) => false,
                Term::Succ(t) | Term::Pred(t) => t.contains_term(needle),
                Term::Epsilon(_, body) => body.contains_term(needle),
            }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Zero | Term::Free(_) | Term::Bound(_) => 1,
            Term::Succ(t) | Term::Pred(t) => 1 + t.size(),
            Term::Epsilon(_, body) => 1 + body.size(),
        }
    }

    fn collect_free(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Free(a) => {
                out.insert(a.clone());
            }
            Term::Zero | Term::Bound(_) => {}
            Term::Succ(t) | Term::Pred(t) => t.collect_free(out),
            Term::Epsilon(_, body) => body.collect_free(out),
        }
    }

    fn collect_formula_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Zero | Term::Free(_) | Term::Bound(_) => {}
            Term::Succ(t) | Term::Pred(t) => t.collect_formula_vars(out),
            Term::Epsilon(_, body) => body.collect_formula_vars(out),
        }
    }

    fn collect_epsilons(&self, out: &mut Vec<Term>) {
        match self {
            Term::Zero | Term::Free(_) | Term::Bound(_) => {}
            Term::Succ(t) | Term::Pred(t) => t.collect_epsilons(out),
            Term::Epsilon(_, body) => {
                if !out.contains(self) {
                    out.push(self.clone());
                }
                body.collect_epsilons(out);
            }
        }
    }
}

impl Formula {
    pub fn eq(lhs: Term, rhs: Term) -> Formula {
        Formula::Eq(lhs, rhs)
    }

    pub fn neq(lhs: Term, rhs: Term) -> Formula {
        Formula::not(Formula::Eq(lhs, rhs))
    }

    pub fn var(name: impl Into<String>, args: Vec<Term>) -> Formula {
        Formula::Var(name.into(), args)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Arc::new(f))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Arc::new(a), Arc::new(b))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Arc::new(a), Arc::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Arc::new(a), Arc::new(b))
    }

    pub fn forall(name: &str, body: Formula) -> Formula {
        Formula::Forall(Hint::new(name), Arc::new(body.abstract_free(name)))
    }

    pub fn exists(name: &str, body: Formula) -> Formula {
        Formula::Exists(Hint::new(name), Arc::new(body.abstract_free(name)))
    }

    /// See [`Term::map_terms`].
    pub fn map_terms<F>(&self, f: &mut F) -> Formula
    where
        F: FnMut(&Term, usize) -> Option<Term>,
    {
        self.map_terms_at(0, f)
    }

    pub(crate) fn map_terms_at<F>(&self, depth: usize, f: &mut F) -> Formula
    where
        F: FnMut(&Term, usize) -> Option<Term>,
    {
        match self {
            Formula::Eq(a, b) => Formula::Eq(a.map_terms_at(depth, f), b.map_terms_at(depth, f)),
            Formula::Var(name, args) => Formula::Var(
                name.clone(),
                args.iter().map(|t| t.map_terms_at(depth, f)).collect(),
            ),
            Formula::Not(a) => Formula::not(a.map_terms_at(depth, f)),
            Formula::Implies(a, b) => {
                Formula::implies(a.map_terms_at(depth, f), b.map_terms_at(depth, f))
            }
            Formula::And(a, b) => Formula::and(a.map_terms_at(depth, f), b.map_terms_at(depth, f)),
            Formula::Or(a, b) => Formula::or(a.map_terms_at(depth, f), b.map_terms_at(depth, f)),
            Formula::Forall(h, body) => {
                Formula::Forall(h.clone(), Arc::new(body.map_terms_at(depth + 1, f)))
            }
            Formula::Exists(h, body) => {
                Formula::Exists(h.clone(), Arc::new(body.map_terms_at(depth + 1, f)))
            }
        }
    }

    /// Replaces `Bound(0)` of a binder body by `t` and lowers the other
    /// indices that pointed outside the body.
    pub fn open(&self, t: &Term) -> Formula {
        self.map_terms(&mut |s, depth| match s {
            Term::Bound(i) if *i == depth => Some(t.shifted(depth)),
            Term::Bound(i) if *i > depth => Some(Term::Bound(i - 1)),
            _ => None,
        })
    }

    /// Turns free occurrences of `name` into the variable of a new binder
    /// placed around the formula.
    pub fn abstract_free(&self, name: &str) -> Formula {
        self.map_terms(&mut |s, depth| match s {
            Term::Free(a) if a == name => Some(Term::Bound(depth)),
            Term::Bound(i) if *i >= depth => Some(Term::Bound(i + 1)),
            _ => None,
        })
    }

    pub fn has_loose_bound(&self) -> bool {
        self.loose_bound_at(0)
    }

    fn loose_bound_at(&self, depth: usize) -> bool {
        match self {
            Formula::Eq(a, b) => a.loose_bound_at(depth) || b.loose_bound_at(depth),
            Formula::Var(_, args) => args.iter().any(|t| t.loose_bound_at(depth)),
            Formula::Not(a) => a.loose_bound_at(depth),
            Formula::Implies(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                a.loose_bound_at(depth) || b.loose_bound_at(depth)
            }
            Formula::Forall(_, body) | Formula::Exists(_, body) => body.loose_bound_at(depth + 1),
        }
    }

    /// True if the variable of the binder whose body this is occurs (at `depth` 0).
    pub fn mentions_bound(&self, depth: usize) -> bool {
        match self {
            Formula::Eq(a, b) => a.mentions_bound(depth) || b.mentions_bound(depth),
            Formula::Var(_, args) => args.iter().any(|t| t.mentions_bound(depth)),
            Formula::Not(a) => a.mentions_bound(depth),
            Formula::Implies(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                a.mentions_bound(depth) || b.mentions_bound(depth)
            }
            Formula::Forall(_, body) | Formula::Exists(_, body) => body.mentions_bound(depth + 1),
        }
    }

    /// Replaces every occurrence of the closed term `target` by the closed term `with`.
    pub fn replace_term(&self, target: &Term, with: &Term) -> Formula {
        debug_assert!(!target.has_loose_bound() && !with.has_loose_bound());
        self.map_terms(&mut |s, _| (s == target).then(|| with.clone()))
    }

    pub fn contains_term(&self, needle: &Term) -> bool {
        match self {
            Formula::Eq(a, b) => a.contains_term(needle) || b.contains_term(needle),
            Formula::Var(_, args) => args.iter().any(|t| t.contains_term(needle)),
            Formula::Not(a) => a.contains_term(needle),
            Formula::Implies(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                a.contains_term(needle) || b.contains_term(needle)
            }
            Formula::Forall(_, body) | Formula::Exists(_, body) => body.contains_term(needle),
        }
    }

    /// All epsilon subterms in first-occurrence (pre-)order, deduplicated up to
    /// alpha-equivalence. Subterms found under a binder may contain indices
    /// that refer to that binder.
    pub fn epsilon_subterms(&self) -> Vec<Term> {
        let mut out = Vec::new();
        self.collect_epsilons(&mut out);
        out
    }

    fn collect_epsilons(&self, out: &mut Vec<Term>) {
        match self {
            Formula::Eq(a, b) => {
                a.collect_epsilons(out);
                b.collect_epsilons(out);
            }
            Formula::Var(_, args) => args.iter().for_each(|t| t.collect_epsilons(out)),
            Formula::Not(a) => a.collect_epsilons(out),
            Formula::Implies(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_epsilons(out);
                b.collect_epsilons(out);
            }
            Formula::Forall(_, body) | Formula::Exists(_, body) => body.collect_epsilons(out),
        }
    }

    pub fn is_epsilon_free(&self) -> bool {
        self.epsilon_subterms().is_empty()
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Eq(..) | Formula::Var(..) => true,
            Formula::Not(a) => a.is_quantifier_free(),
            Formula::Implies(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                a.is_quantifier_free() && b.is_quantifier_free()
            }
            Formula::Forall(..) | Formula::Exists(..) => false,
        }
    }

    /// No free individual variable, formula variable, quantifier or epsilon.
    pub fn is_variable_free(&self) -> bool {
        self.free_vars().is_empty()
            && self.formula_vars().is_empty()
            && self.is_quantifier_free()
            && self.is_epsilon_free()
    }

    /// Free individual variables, including those inside epsilon bodies.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out
    }

    pub(crate) fn collect_free(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Eq(a, b) => {
                a.collect_free(out);
                b.collect_free(out);
            }
            Formula::Var(_, args) => args.iter().for_each(|t| t.collect_free(out)),
            Formula::Not(a) => a.collect_free(out),
            Formula::Implies(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_free(out);
                b.collect_free(out);
            }
            Formula::Forall(_, body) | Formula::Exists(_, body) => body.collect_free(out),
        }
    }

    pub fn formula_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_formula_vars(&mut out);
        out
    }

    pub(crate) fn collect_formula_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Eq(a, b) => {
                a.collect_formula_vars(out);
                b.collect_formula_vars(out);
            }
            Formula::Var(name, args) => {
                out.insert(name.clone());
                args.iter().for_each(|t| t.collect_formula_vars(out));
            }
            Formula::Not(a) => a.collect_formula_vars(out),
            Formula::Implies(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_formula_vars(out);
                b.collect_formula_vars(out);
            }
            Formula::Forall(_, body) | Formula::Exists(_, body) => body.collect_formula_vars(out),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Eq(a, b) => 1 + a.size() + b.size(),
            Formula::Var(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
            Formula::Not(a) => 1 + a.size(),
            Formula::Implies(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                1 + a.size() + b.size()
            }
            Formula::Forall(_, body) | Formula::Exists(_, body) => 1 + body.size(),
        }
    }

    pub fn quantifier_count(&self) -> usize {
        match self {
            Formula::Eq(..) | Formula::Var(..) => 0,
            Formula::Not(a) => a.quantifier_count(),
            Formula::Implies(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                a.quantifier_count() + b.quantifier_count()
            }
            Formula::Forall(_, body) | Formula::Exists(_, body) => 1 + body.quantifier_count(),
        }
    }
}

/// Identity up to renaming of bound variables.
pub fn alpha_eq(f: &Formula, g: &Formula) -> bool {
    f == g
}
