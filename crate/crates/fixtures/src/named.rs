//! A named-binder syntax with its own semantics, used as an oracle.
//!
//! Nothing here shares code with the kernel: variables are plain strings,
//! substitution renames binders the textbook way, and evaluation interprets
//! `0`, `+1` and `d` directly over natural numbers or over a finite domain.
//! Text is printed fully parenthesized in the proof-script syntax.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rand::Rng;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NTerm {
    Zero,
    Succ(Box<NTerm>),
    Pred(Box<NTerm>),
    Var(String),
    Eps(String, Box<NFormula>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NFormula {
    Eq(NTerm, NTerm),
    /// A formula variable applied to terms.
    Atom(String, Vec<NTerm>),
    Not(Box<NFormula>),
    Implies(Box<NFormula>, Box<NFormula>),
    And(Box<NFormula>, Box<NFormula>),
    Or(Box<NFormula>, Box<NFormula>),
    All(String, Box<NFormula>),
    Ex(String, Box<NFormula>),
}

impl NTerm {
    pub fn succ(t: NTerm) -> NTerm {
        NTerm::Succ(Box::new(t))
    }

    pub fn pred(t: NTerm) -> NTerm {
        NTerm::Pred(Box::new(t))
    }

    pub fn var(name: &str) -> NTerm {
        NTerm::Var(name.to_string())
    }

    pub fn numeral(n: u64) -> NTerm {
        (0..n).fold(NTerm::Zero, |t, _| NTerm::succ(t))
    }

    /// Number of nodes, counting an epsilon term's body.
    pub fn size(&self) -> usize {
        match self {
            NTerm::Zero | NTerm::Var(_) => 1,
            NTerm::Succ(t) | NTerm::Pred(t) => 1 + t.size(),
            NTerm::Eps(_, f) => 1 + f.size(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            NTerm::Zero => {}
            NTerm::Succ(t) | NTerm::Pred(t) => t.collect_free(bound, out),
            NTerm::Var(v) => {
                if !bound.contains(v) {
                    out.insert(v.clone());
                }
            }
            NTerm::Eps(x, f) => {
                bound.push(x.clone());
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn subst(&self, var: &str, with: &NTerm) -> NTerm {
        match self {
            NTerm::Zero => NTerm::Zero,
            NTerm::Succ(t) => NTerm::succ(t.subst(var, with)),
            NTerm::Pred(t) => NTerm::pred(t.subst(var, with)),
            NTerm::Var(v) if v == var => with.clone(),
            NTerm::Var(_) => self.clone(),
            NTerm::Eps(x, f) => {
                let (x, f) = subst_under_binder(x, f, var, with);
                NTerm::Eps(x, Box::new(f))
            }
        }
    }
}

impl NFormula {
    pub fn eq(a: NTerm, b: NTerm) -> NFormula {
        NFormula::Eq(a, b)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: NFormula) -> NFormula {
        NFormula::Not(Box::new(f))
    }

    pub fn implies(a: NFormula, b: NFormula) -> NFormula {
        NFormula::Implies(Box::new(a), Box::new(b))
    }

    pub fn size(&self) -> usize {
        match self {
            NFormula::Eq(a, b) => 1 + a.size() + b.size(),
            NFormula::Atom(_, args) => 1 + args.iter().map(NTerm::size).sum::<usize>(),
            NFormula::Not(f) | NFormula::All(_, f) | NFormula::Ex(_, f) => 1 + f.size(),
            NFormula::Implies(a, b) | NFormula::And(a, b) | NFormula::Or(a, b) => {
                1 + a.size() + b.size()
            }
        }
    }

    pub fn quantifier_count(&self) -> usize {
        match self {
            NFormula::Eq(..) | NFormula::Atom(..) => 0,
            NFormula::Not(f) => f.quantifier_count(),
            NFormula::All(_, f) | NFormula::Ex(_, f) => 1 + f.quantifier_count(),
            NFormula::Implies(a, b) | NFormula::And(a, b) | NFormula::Or(a, b) => {
                a.quantifier_count() + b.quantifier_count()
            }
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            NFormula::Eq(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            NFormula::Atom(_, args) => args.iter().for_each(|t| t.collect_free(bound, out)),
            NFormula::Not(f) => f.collect_free(bound, out),
            NFormula::Implies(a, b) | NFormula::And(a, b) | NFormula::Or(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            NFormula::All(x, f) | NFormula::Ex(x, f) => {
                bound.push(x.clone());
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Capture-avoiding substitution of `with` for the free variable `var`.
    pub fn subst(&self, var: &str, with: &NTerm) -> NFormula {
        let bin = |a: &NFormula, b: &NFormula| {
            (Box::new(a.subst(var, with)), Box::new(b.subst(var, with)))
        };
        match self {
            NFormula::Eq(a, b) => NFormula::Eq(a.subst(var, with), b.subst(var, with)),
            NFormula::Atom(p, args) => {
                NFormula::Atom(p.clone(), args.iter().map(|t| t.subst(var, with)).collect())
            }
            NFormula::Not(f) => NFormula::not(f.subst(var, with)),
            NFormula::Implies(a, b) => {
                let (a, b) = bin(a, b);
                NFormula::Implies(a, b)
            }
            NFormula::And(a, b) => {
                let (a, b) = bin(a, b);
                NFormula::And(a, b)
            }
            NFormula::Or(a, b) => {
                let (a, b) = bin(a, b);
                NFormula::Or(a, b)
            }
            NFormula::All(x, f) => {
                let (x, f) = subst_under_binder(x, f, var, with);
                NFormula::All(x, Box::new(f))
            }
            NFormula::Ex(x, f) => {
                let (x, f) = subst_under_binder(x, f, var, with);
                NFormula::Ex(x, Box::new(f))
            }
        }
    }
}

fn subst_under_binder(x: &str, body: &NFormula, var: &str, with: &NTerm) -> (String, NFormula) {
    if x == var {
        return (x.to_string(), body.clone());
    }
    let body_free = body.free_vars();
    if !body_free.contains(var) {
        return (x.to_string(), body.clone());
    }
    let with_free = with.free_vars();
    if !with_free.contains(x) {
        return (x.to_string(), body.subst(var, with));
    }
    let fresh = (0..)
        .map(|i| format!("{x}{i}"))
        .find(|n| !body_free.contains(n) && !with_free.contains(n) && n != var)
        .expect("some name is unused");
    let renamed = body.subst(x, &NTerm::Var(fresh.clone()));
    (fresh, renamed.subst(var, with))
}

impl fmt::Display for NTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NTerm::Zero => write!(f, "0"),
            NTerm::Succ(t) => write!(f, "({t})+1"),
            NTerm::Pred(t) => write!(f, "d({t})"),
            NTerm::Var(v) => write!(f, "{v}"),
            NTerm::Eps(x, body) => write!(f, "(eps {x}. ({body}))"),
        }
    }
}

impl fmt::Display for NFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NFormula::Eq(a, b) => write!(f, "({a} = {b})"),
            NFormula::Atom(p, args) if args.is_empty() => write!(f, "{p}"),
            NFormula::Atom(p, args) => {
                write!(f, "{p}(")?;
                for (i, t) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{t}")?;
                }
                write!(f, ")")
            }
            NFormula::Not(a) => write!(f, "~({a})"),
            NFormula::Implies(a, b) => write!(f, "({a} -> {b})"),
            NFormula::And(a, b) => write!(f, "({a} & {b})"),
            NFormula::Or(a, b) => write!(f, "({a} | {b})"),
            NFormula::All(x, a) => write!(f, "(all {x}. ({a}))"),
            NFormula::Ex(x, a) => write!(f, "(ex {x}. ({a}))"),
        }
    }
}

/// How `+1`, `d` and the binders are read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    /// All natural numbers. Quantifiers and epsilon terms are not allowed.
    Naturals,
    /// The numbers `0..=k`; `+1` stops at `k` and `d(0) = 0`.
    UpTo(u64),
}

impl Domain {
    fn succ(self, n: u64) -> u64 {
        match self {
            Domain::Naturals => n + 1,
            Domain::UpTo(k) => (n + 1).min(k),
        }
    }

    fn elements(self) -> std::ops::RangeInclusive<u64> {
        match self {
            Domain::Naturals => panic!("binders need a finite domain"),
            Domain::UpTo(k) => 0..=k,
        }
    }
}

/// Truth values of formula variables, by name and argument values.
pub type Interpretation = HashMap<(String, Vec<u64>), bool>;

/// Tarski semantics. Free variables take their values from `env`, an
/// epsilon term denotes the least element satisfying its body and `0` if
/// there is none, and formula variables are false unless listed in `atoms`.
pub struct Semantics<'a> {
    pub domain: Domain,
    pub atoms: Option<&'a Interpretation>,
}

impl Semantics<'_> {
    pub fn new(domain: Domain) -> Self {
        Semantics {
            domain,
            atoms: None,
        }
    }

    pub fn term(&self, t: &NTerm, env: &mut Vec<(String, u64)>) -> u64 {
        match t {
            NTerm::Zero => 0,
            NTerm::Succ(s) => self.domain.succ(self.term(s, env)),
            NTerm::Pred(s) => self.term(s, env).saturating_sub(1),
            NTerm::Var(v) => lookup(env, v),
            NTerm::Eps(x, body) => self
                .domain
                .elements()
                .find(|&n| self.with(env, x, n, body))
                .unwrap_or(0),
        }
    }

    pub fn formula(&self, f: &NFormula, env: &mut Vec<(String, u64)>) -> bool {
        match f {
            NFormula::Eq(a, b) => self.term(a, env) == self.term(b, env),
            NFormula::Atom(p, args) => {
                let values = args.iter().map(|t| self.term(t, env)).collect();
                self.atoms
                    .and_then(|i| i.get(&(p.clone(), values)).copied())
                    .unwrap_or(false)
            }
            NFormula::Not(a) => !self.formula(a, env),
            NFormula::Implies(a, b) => !self.formula(a, env) || self.formula(b, env),
            NFormula::And(a, b) => self.formula(a, env) && self.formula(b, env),
            NFormula::Or(a, b) => self.formula(a, env) || self.formula(b, env),
            NFormula::All(x, body) => self.domain.elements().all(|n| self.with(env, x, n, body)),
            NFormula::Ex(x, body) => self.domain.elements().any(|n| self.with(env, x, n, body)),
        }
    }

    fn with(&self, env: &mut Vec<(String, u64)>, x: &str, n: u64, body: &NFormula) -> bool {
        env.push((x.to_string(), n));
        let out = self.formula(body, env);
        env.pop();
        out
    }
}

fn lookup(env: &[(String, u64)], v: &str) -> u64 {
    env.iter()
        .rev()
        .find(|(n, _)| n == v)
        .map(|(_, x)| *x)
        .unwrap_or_else(|| panic!("unassigned variable {v}"))
}

/// Every term reachable from `t` by one application of `d(0) -> 0` or
/// `d(s+1) -> s` at any position outside epsilon terms.
pub fn one_step(t: &NTerm) -> Vec<NTerm> {
    let mut out = Vec::new();
    match t {
        NTerm::Zero | NTerm::Var(_) | NTerm::Eps(..) => {}
        NTerm::Succ(s) => out.extend(one_step(s).into_iter().map(NTerm::succ)),
        NTerm::Pred(s) => {
            match &**s {
                NTerm::Zero => out.push(NTerm::Zero),
                NTerm::Succ(inner) => out.push((**inner).clone()),
                _ => {}
            }
            out.extend(one_step(s).into_iter().map(NTerm::pred));
        }
    }
    out
}

/// All normal forms reachable from `t` under every reduction order.
pub fn normal_forms(t: &NTerm) -> BTreeSet<NTerm> {
    let mut seen = BTreeSet::new();
    let mut normal = BTreeSet::new();
    let mut pending = vec![t.clone()];
    while let Some(u) = pending.pop() {
        if !seen.insert(u.clone()) {
            continue;
        }
        let next = one_step(&u);
        if next.is_empty() {
            normal.insert(u);
        }
        pending.extend(next);
    }
    normal
}

/// Every term built from the given leaves with `+1` and `d` having exactly
/// `size` nodes.
pub fn terms_of_size(size: usize, leaves: &[NTerm]) -> Vec<NTerm> {
    match size {
        0 => Vec::new(),
        1 => leaves.to_vec(),
        n => terms_of_size(n - 1, leaves)
            .into_iter()
            .flat_map(|t| [NTerm::succ(t.clone()), NTerm::pred(t)])
            .collect(),
    }
}

/// Shape limits for random formulas.
#[derive(Debug, Clone)]
pub struct GenConfig {
    pub depth: u32,
    pub free_vars: Vec<String>,
    pub binder_names: Vec<String>,
    pub quantifiers: bool,
    pub max_quantifiers: usize,
    pub epsilon: bool,
    /// Names of nullary and unary formula variables.
    pub formula_vars: Vec<String>,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            depth: 4,
            free_vars: vec!["a".into(), "b".into()],
            binder_names: vec!["x".into(), "y".into(), "z".into()],
            quantifiers: true,
            max_quantifiers: 3,
            epsilon: true,
            formula_vars: vec!["P".into(), "Q".into()],
        }
    }
}

struct Gen<'a, R> {
    rng: &'a mut R,
    cfg: &'a GenConfig,
    scope: Vec<String>,
    quantifiers: usize,
}

pub fn random_formula<R: Rng>(rng: &mut R, cfg: &GenConfig) -> NFormula {
    let mut g = Gen {
        rng,
        cfg,
        scope: Vec::new(),
        quantifiers: 0,
    };
    g.formula(cfg.depth)
}

pub fn random_term<R: Rng>(rng: &mut R, cfg: &GenConfig) -> NTerm {
    let mut g = Gen {
        rng,
        cfg,
        scope: Vec::new(),
        quantifiers: 0,
    };
    g.term(cfg.depth)
}

impl<R: Rng> Gen<'_, R> {
    fn binder(&mut self) -> bool {
        self.quantifiers < self.cfg.max_quantifiers && !self.cfg.binder_names.is_empty()
    }

    fn bound<T>(&mut self, body: impl FnOnce(&mut Self) -> T) -> (String, T) {
        let i = self.rng.random_range(0..self.cfg.binder_names.len());
        let x = self.cfg.binder_names[i].clone();
        self.quantifiers += 1;
        self.scope.push(x.clone());
        let out = body(self);
        self.scope.pop();
        (x, out)
    }

    fn term(&mut self, depth: u32) -> NTerm {
        let vars = self.scope.len() + self.cfg.free_vars.len();
        let eps = self.cfg.epsilon && depth > 1 && self.binder();
        match self.rng.random_range(0..if depth == 0 { 2 } else { 5 }) {
            0 => NTerm::Zero,
            1 if vars > 0 => {
                let i = self.rng.random_range(0..vars);
                match self.scope.get(i) {
                    Some(x) => NTerm::Var(x.clone()),
                    None => NTerm::Var(self.cfg.free_vars[i - self.scope.len()].clone()),
                }
            }
            1 => NTerm::Zero,
            2 => NTerm::succ(self.term(depth - 1)),
            3 => NTerm::pred(self.term(depth - 1)),
            _ if eps => {
                let (x, body) = self.bound(|g| g.formula(depth - 1));
                NTerm::Eps(x, Box::new(body))
            }
            _ => NTerm::succ(self.term(depth - 1)),
        }
    }

    fn formula(&mut self, depth: u32) -> NFormula {
        if depth == 0 {
            return self.atom(0);
        }
        let binders = self.cfg.quantifiers && self.binder();
        match self.rng.random_range(0..8) {
            0 | 1 => self.atom(depth - 1),
            2 => NFormula::not(self.formula(depth - 1)),
            3 => NFormula::implies(self.formula(depth - 1), self.formula(depth - 1)),
            4 => NFormula::And(
                Box::new(self.formula(depth - 1)),
                Box::new(self.formula(depth - 1)),
            ),
            5 => NFormula::Or(
                Box::new(self.formula(depth - 1)),
                Box::new(self.formula(depth - 1)),
            ),
            6 if binders => {
                let (x, body) = self.bound(|g| g.formula(depth - 1));
                NFormula::All(x, Box::new(body))
            }
            7 if binders => {
                let (x, body) = self.bound(|g| g.formula(depth - 1));
                NFormula::Ex(x, Box::new(body))
            }
            _ => self.atom(depth - 1),
        }
    }

    fn atom(&mut self, depth: u32) -> NFormula {
        let vars = &self.cfg.formula_vars;
        if !vars.is_empty() && self.rng.random_range(0..4) == 0 {
            let p = vars[self.rng.random_range(0..vars.len())].clone();
            let args = if self.rng.random_bool(0.5) {
                vec![self.term(depth.min(2))]
            } else {
                Vec::new()
            };
            return NFormula::Atom(p, args);
        }
        NFormula::Eq(self.term(depth.min(3)), self.term(depth.min(3)))
    }
}
