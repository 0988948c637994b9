//! Structural transformations of proofs: resolution into proof threads,
//! elimination of substitution steps, grounding and numeral reduction.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::proof::{Axiom, Justification, ProofScript, ScriptBuilder};
use crate::subst::{SubstError, Substitution};
use crate::syntax::{Formula, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("epsilon term remains in `{formula}`; eliminate critical formulas first")]
    ResidualEpsilon { formula: String },
    #[error("proof still contains substitution steps")]
    UnresolvedSubstitution,
    #[error(transparent)]
    Subst(#[from] SubstError),
}

/// How a node of a thread proof was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    Axiom(Axiom),
    Subst(Substitution, Box<ThreadNode>),
    Rep(Box<ThreadNode>),
    Mp {
        minor: Box<ThreadNode>,
        major: Box<ThreadNode>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreadNode {
    pub formula: Formula,
    pub step: Step,
}

impl ThreadNode {
    pub fn children(&self) -> Vec<&ThreadNode> {
        match &self.step {
            Step::Axiom(_) => Vec::new(),
            Step::Subst(_, c) | Step::Rep(c) => vec![c],
            Step::Mp { minor, major } => vec![minor, major],
        }
    }

    fn map_formulas(&self, f: &mut impl FnMut(&Formula) -> Formula) -> ThreadNode {
        let step = match &self.step {
            Step::Axiom(a) => Step::Axiom(*a),
            Step::Subst(s, c) => Step::Subst(s.clone(), Box::new(c.map_formulas(f))),
            Step::Rep(c) => Step::Rep(Box::new(c.map_formulas(f))),
            Step::Mp { minor, major } => Step::Mp {
                minor: Box::new(minor.map_formulas(f)),
                major: Box::new(major.map_formulas(f)),
            },
        };
        ThreadNode {
            formula: f(&self.formula),
            step,
        }
    }
}

/// A proof in tree form: every formula occurrence is the premise of at most
/// one inference, and each root-to-leaf path is a proof thread.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreadProof {
    pub root: ThreadNode,
}

impl ThreadProof {
    pub fn end_formula(&self) -> &Formula {
        &self.root.formula
    }

    /// All nodes in post-order (premises before conclusions).
    pub fn nodes(&self) -> Vec<&ThreadNode> {
        fn walk<'a>(n: &'a ThreadNode, out: &mut Vec<&'a ThreadNode>) {
            for c in n.children() {
                walk(c, out);
            }
            out.push(n);
        }
        let mut out = Vec::new();
        walk(&self.root, &mut out);
        out
    }

    pub fn node_count(&self) -> usize {
        self.nodes().len()
    }

    /// Axiom leaves from left to right; one per proof thread.
    pub fn leaves(&self) -> Vec<&ThreadNode> {
        self.nodes()
            .into_iter()
            .filter(|n| matches!(n.step, Step::Axiom(_)))
            .collect()
    }

    pub fn substitution_count(&self) -> usize {
        self.nodes()
            .into_iter()
            .filter(|n| matches!(n.step, Step::Subst(..)))
            .count()
    }

    /// Each thread as the list of formulas from the end formula up to its axiom.
    pub fn threads(&self) -> Vec<Vec<&Formula>> {
        fn walk<'a>(
            n: &'a ThreadNode,
            path: &mut Vec<&'a Formula>,
            out: &mut Vec<Vec<&'a Formula>>,
        ) {
            path.push(&n.formula);
            let children = n.children();
            if children.is_empty() {
                out.push(path.clone());
            }
            for c in children {
                walk(c, path, out);
            }
            path.pop();
        }
        let mut out = Vec::new();
        walk(&self.root, &mut Vec::new(), &mut out);
        out
    }

    pub fn map_formulas(&self, mut f: impl FnMut(&Formula) -> Formula) -> ThreadProof {
        ThreadProof {
            root: self.root.map_formulas(&mut f),
        }
    }

    /// Linearizes the tree, one line per node, premises first.
    pub fn to_script(&self) -> ProofScript {
        let mut b = ScriptBuilder::new();
        emit(&self.root, &mut b);
        b.finish()
    }

    /// Linearizes the tree, merging identical subproofs into one line.
    pub fn to_shared_script(&self) -> ProofScript {
        let mut b = ScriptBuilder::sharing();
        emit(&self.root, &mut b);
        b.finish()
    }
}

fn emit(n: &ThreadNode, b: &mut ScriptBuilder) -> usize {
    let j = match &n.step {
        Step::Axiom(a) => Justification::Axiom(*a),
        Step::Subst(s, c) => Justification::Subst(emit(c, b), s.clone()),
        Step::Rep(c) => Justification::Rep(emit(c, b)),
        Step::Mp { minor, major } => {
            let minor = emit(minor, b);
            let major = emit(major, b);
            Justification::Mp { minor, major }
        }
    };
    b.push(n.formula.clone(), j)
}

/// Copies shared subproofs so that each line feeds at most one inference.
/// Lines the end formula does not depend on are dropped.
pub fn resolve_threads(p: &ProofScript) -> ThreadProof {
    let mut memo: HashMap<usize, ThreadNode> = HashMap::new();
    for line in p.lines() {
        let take = |n: &usize| Box::new(memo[n].clone());
        let step = match &line.justification {
            Justification::Axiom(a) => Step::Axiom(*a),
            Justification::Subst(m, s) => Step::Subst(s.clone(), take(m)),
            Justification::Rep(m) => Step::Rep(take(m)),
            Justification::Mp { minor, major } => Step::Mp {
                minor: take(minor),
                major: take(major),
            },
        };
        memo.insert(
            line.number,
            ThreadNode {
                formula: line.formula.clone(),
                step,
            },
        );
    }
    ThreadProof {
        root: memo.remove(&p.end().number).expect("end line was built"),
    }
}

/// Pushes every substitution step up its thread until it reaches the axioms.
///
/// Walking down from the end formula, a substitution `B => A` is recorded in
/// `B`'s own derivation: composed with an earlier substitution, carried
/// through repetitions, applied to both premises `C` and `C -> B` of modus
/// ponens, and finally applied to the axiom instance at the top of the
/// thread. The substitution step itself disappears.
pub fn eliminate_free_variable_substs(t: &ThreadProof) -> Result<ThreadProof, TransformError> {
    Ok(ThreadProof {
        root: push_down(&t.root, &Substitution::new())?,
    })
}

fn push_down(n: &ThreadNode, pending: &Substitution) -> Result<ThreadNode, TransformError> {
    Ok(match &n.step {
        Step::Subst(s, child) => return push_down(child, &s.then(pending)?),
        Step::Axiom(a) => ThreadNode {
            formula: pending.apply(&n.formula)?,
            step: Step::Axiom(*a),
        },
        Step::Rep(child) => {
            let child = push_down(child, pending)?;
            ThreadNode {
                formula: child.formula.clone(),
                step: Step::Rep(Box::new(child)),
            }
        }
        Step::Mp { minor, major } => ThreadNode {
            formula: pending.apply(&n.formula)?,
            step: Step::Mp {
                minor: Box::new(push_down(minor, pending)?),
                major: Box::new(push_down(major, pending)?),
            },
        },
    })
}

/// Replaces remaining individual variables by `0` and formula variables
/// (with their arguments) by `0 = 0`.
pub fn ground_residual_variables(t: &ThreadProof) -> Result<ThreadProof, TransformError> {
    if t.substitution_count() > 0 {
        return Err(TransformError::UnresolvedSubstitution);
    }
    if let Some(n) = t.nodes().into_iter().find(|n| !n.formula.is_epsilon_free()) {
        return Err(TransformError::ResidualEpsilon {
            formula: n.formula.to_string(),
        });
    }
    Ok(t.map_formulas(ground_formula))
}

/// Grounds variables without looking at epsilon terms.
pub(crate) fn ground_formula(f: &Formula) -> Formula {
    match f {
        Formula::Var(..) => Formula::eq(Term::Zero, Term::Zero),
        Formula::Eq(a, b) => Formula::Eq(ground_term(a), ground_term(b)),
        Formula::Not(a) => Formula::not(ground_formula(a)),
        Formula::Implies(a, b) => Formula::implies(ground_formula(a), ground_formula(b)),
        Formula::And(a, b) => Formula::and(ground_formula(a), ground_formula(b)),
        Formula::Or(a, b) => Formula::or(ground_formula(a), ground_formula(b)),
        Formula::Forall(h, body) => Formula::Forall(h.clone(), Arc::new(ground_formula(body))),
        Formula::Exists(h, body) => Formula::Exists(h.clone(), Arc::new(ground_formula(body))),
    }
}

pub(crate) fn ground_term(t: &Term) -> Term {
    match t {
        Term::Free(_) => Term::Zero,
        Term::Zero | Term::Bound(_) => t.clone(),
        Term::Succ(s) => Term::succ(ground_term(s)),
        Term::Pred(s) => Term::pred(ground_term(s)),
        Term::Epsilon(h, body) => Term::Epsilon(h.clone(), Arc::new(ground_formula(body))),
    }
}

/// Normal form under `d(0) -> 0` and `d(t+1) -> t`, computed innermost first.
pub fn reduce_numerals(t: &Term) -> Term {
    match t {
        Term::Zero | Term::Free(_) | Term::Bound(_) => t.clone(),
        Term::Succ(s) => Term::succ(reduce_numerals(s)),
        Term::Pred(s) => match reduce_numerals(s) {
            Term::Zero => Term::Zero,
            Term::Succ(inner) => Arc::unwrap_or_clone(inner),
            other => Term::pred(other),
        },
        Term::Epsilon(h, body) => Term::Epsilon(h.clone(), Arc::new(reduce_formula(body))),
    }
}

pub fn reduce_formula(f: &Formula) -> Formula {
    f.map_terms(&mut |t, _| Some(reduce_numerals(t)))
}

/// Reduces every formula of a substitution-free thread proof. An instance
/// `t = d(t+1)` of the predecessor axiom becomes `t = t` and is relabelled
/// as an instance of `a = a`; every other axiom class is closed under the
/// reduction.
pub fn reduce_thread_proof(t: &ThreadProof) -> Result<ThreadProof, TransformError> {
    if t.substitution_count() > 0 {
        return Err(TransformError::UnresolvedSubstitution);
    }
    fn go(n: &ThreadNode) -> ThreadNode {
        let step = match &n.step {
            Step::Axiom(Axiom::Pred) => Step::Axiom(Axiom::Id1),
            Step::Axiom(a) => Step::Axiom(*a),
            Step::Rep(c) => Step::Rep(Box::new(go(c))),
            Step::Mp { minor, major } => Step::Mp {
                minor: Box::new(go(minor)),
                major: Box::new(go(major)),
            },
            Step::Subst(..) => unreachable!("checked above"),
        };
        ThreadNode {
            formula: reduce_formula(&n.formula),
            step,
        }
    }
    Ok(ThreadProof { root: go(&t.root) })
}

/// Thread resolution followed by substitution elimination, linearized with
/// identical subproofs merged. The result has no substitution lines and no
/// duplicate lines.
pub fn flatten_substitutions(p: &ProofScript) -> Result<ProofScript, TransformError> {
    Ok(flatten_with_origins(p)?.0)
}

/// Same result as linearizing [`eliminate_free_variable_substs`] with
/// sharing, but computed on the line graph so shared subproofs are not
/// expanded. Also returns, for each output line, the input line it came from.
pub(crate) fn flatten_with_origins(
    p: &ProofScript,
) -> Result<(ProofScript, Vec<usize>), TransformError> {
    struct Flat<'a> {
        p: &'a ProofScript,
        b: ScriptBuilder,
        origins: Vec<usize>,
        memo: HashMap<(usize, Substitution), usize>,
    }

    impl Flat<'_> {
        fn go(&mut self, n: usize, pending: &Substitution) -> Result<usize, TransformError> {
            let key = (n, pending.clone());
            if let Some(&out) = self.memo.get(&key) {
                return Ok(out);
            }
            let line = self.p.line(n).expect("scripts only cite existing lines");
            let (formula, j) = match &line.justification {
                Justification::Subst(m, s) => {
                    let out = self.go(*m, &s.then(pending)?)?;
                    self.memo.insert(key, out);
                    return Ok(out);
                }
                Justification::Axiom(a) => {
                    (pending.apply(&line.formula)?, Justification::Axiom(*a))
                }
                Justification::Rep(m) => {
                    let c = self.go(*m, pending)?;
                    (self.b.formula(c).clone(), Justification::Rep(c))
                }
                Justification::Mp { minor, major } => {
                    let minor = self.go(*minor, pending)?;
                    let major = self.go(*major, pending)?;
                    (
                        pending.apply(&line.formula)?,
                        Justification::Mp { minor, major },
                    )
                }
            };
            let before = self.b.len();
            let out = self.b.push(formula, j);
            if self.b.len() > before {
                self.origins.push(n);
            }
            self.memo.insert(key, out);
            Ok(out)
        }
    }

    let mut flat = Flat {
        p,
        b: ScriptBuilder::sharing(),
        origins: Vec::new(),
        memo: HashMap::new(),
    };
    let end = flat.go(p.end().number, &Substitution::new())?;
    let script = flat.b.finish();
    debug_assert_eq!(end, script.end().number);
    Ok((script, flat.origins))
}
