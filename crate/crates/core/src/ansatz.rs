//! Elimination of critical formulas by guarded proof copies in the simplest
//! case, detection of the shapes that block it, and the translation of
//! quantifiers into epsilon terms.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::kernel::{
    decompose_critical, find_critical_families, identity_congruence, CriticalFamily, KernelError,
};
use crate::proof::{Axiom, Justification, ProofScript, ScriptBuilder};
use crate::syntax::{Formula, Term};
use crate::transform::{flatten_substitutions, flatten_with_origins, TransformError};

/// `ex x. A(x)` becomes `A(eps x. A(x))` and `all x. A(x)` becomes
/// `A(eps x. ~A(x))`, innermost quantifiers first.
pub fn translate_quantifiers(f: &Formula) -> Formula {
    match f {
        Formula::Eq(..) | Formula::Var(..) => f.clone(),
        Formula::Not(a) => Formula::not(translate_quantifiers(a)),
        Formula::Implies(a, b) => {
            Formula::implies(translate_quantifiers(a), translate_quantifiers(b))
        }
        Formula::And(a, b) => Formula::and(translate_quantifiers(a), translate_quantifiers(b)),
        Formula::Or(a, b) => Formula::or(translate_quantifiers(a), translate_quantifiers(b)),
        Formula::Exists(h, body) => {
            let body = translate_quantifiers(body);
            body.open(&Term::Epsilon(h.clone(), Arc::new(body.clone())))
        }
        Formula::Forall(h, body) => {
            let body = translate_quantifiers(body);
            body.open(&Term::Epsilon(
                h.clone(),
                Arc::new(Formula::not(body.clone())),
            ))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BlockerKind {
    /// A matrix contains an epsilon term, so substituting into it destroys
    /// the critical shape.
    NestedMatrixEpsilon,
    /// An identity axiom instance replaces inside an epsilon term.
    EqualityAxiomG,
    /// Replacing one epsilon term would turn another critical formula into a
    /// critical formula for a new epsilon term.
    RenewedEpsilon,
    IdentityAxiomUsed,
    WitnessContainsTarget,
}

impl BlockerKind {
    pub fn name(self) -> &'static str {
        match self {
            BlockerKind::NestedMatrixEpsilon => "NestedMatrixEpsilon",
            BlockerKind::EqualityAxiomG => "EqualityAxiomG",
            BlockerKind::RenewedEpsilon => "RenewedEpsilon",
            BlockerKind::IdentityAxiomUsed => "IdentityAxiomUsed",
            BlockerKind::WitnessContainsTarget => "WitnessContainsTarget",
        }
    }
}

impl fmt::Display for BlockerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockerFinding {
    pub kind: BlockerKind,
    /// Line of the input script.
    pub line: usize,
    pub detail: String,
}

impl fmt::Display for BlockerFinding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "blocker: {} line {}: {}",
            self.kind, self.line, self.detail
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnsatzReport {
    pub applicable: bool,
    pub blockers: Vec<BlockerFinding>,
    /// Families of the proof after substitution steps are pushed to the
    /// axioms; instance lines refer to the input script.
    pub families: Vec<CriticalFamily>,
}

impl AnsatzReport {
    pub fn has(&self, kind: BlockerKind) -> bool {
        self.blockers.iter().any(|b| b.kind == kind)
    }
}

impl fmt::Display for AnsatzReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.applicable {
            return writeln!(f, "applicable");
        }
        for b in &self.blockers {
            writeln!(f, "{b}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnsatzError {
    #[error("critical formulas cannot be eliminated:\n{0}")]
    NotApplicable(AnsatzReport),
    #[error("end formula `{0}` contains epsilon terms")]
    EpsilonInEndFormula(String),
    #[error("no critical formulas for `{0}`")]
    UnknownFamily(String),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Transform(#[from] TransformError),
}

/// Checks the side conditions of the simplest case: epsilon-free matrices,
/// no identity axioms, witnesses free of their own epsilon term, and no
/// critical formula mentioning the epsilon term of another family.
///
/// Substitution steps are pushed to the axioms first, so instances created by
/// substituting into a critical formula are analysed as well.
pub fn check_ansatz_applicable(p: &ProofScript) -> AnsatzReport {
    let (q, origins) = match flatten_with_origins(p) {
        Ok(flat) => flat,
        Err(_) => (p.clone(), p.lines().iter().map(|l| l.number).collect()),
    };
    let origin = |n: usize| origins[q.index_of(n).expect("line exists")];
    let mut blockers = Vec::new();

    for line in q.lines() {
        let kind = match line.justification.axiom() {
            Some(Axiom::Id2) => {
                let inside = identity_congruence(&line.formula).is_some_and(|c| c.inside_epsilon);
                if inside {
                    BlockerKind::EqualityAxiomG
                } else {
                    BlockerKind::IdentityAxiomUsed
                }
            }
            Some(Axiom::Id1) => BlockerKind::IdentityAxiomUsed,
            _ => continue,
        };
        let detail = match kind {
            BlockerKind::EqualityAxiomG => {
                "identity axiom replaces inside an epsilon term".to_string()
            }
            _ => format!("identity axiom {} is used", line.justification.tag()),
        };
        blockers.push(BlockerFinding {
            kind,
            line: origin(line.number),
            detail,
        });
    }

    let mut families = match find_critical_families(&q) {
        Ok(fams) => fams,
        Err(e) => {
            let (line, detail) = match &e {
                KernelError::AmbiguousMatrix {
                    line,
                    decompositions,
                } => (
                    *line,
                    format!("critical formula has {} readings", decompositions.len()),
                ),
                KernelError::NotCritical { line } => (*line, "not a critical formula".to_string()),
            };
            blockers.push(BlockerFinding {
                kind: BlockerKind::NestedMatrixEpsilon,
                line: origin(line),
                detail,
            });
            Vec::new()
        }
    };

    let targets: Vec<Term> = families.iter().map(|f| f.epsilon.clone()).collect();
    for fam in &families {
        let e = &fam.epsilon;
        let first = fam.instances[0].line;
        let nested = fam
            .matrix()
            .epsilon_subterms()
            .into_iter()
            .find(|s| s.has_loose_bound() || !targets.contains(s));
        if nested.is_some() {
            blockers.push(BlockerFinding {
                kind: BlockerKind::NestedMatrixEpsilon,
                line: origin(first),
                detail: format!("the matrix of {e} contains an epsilon term"),
            });
        }
        for inst in &fam.instances {
            let formula = &q.line(inst.line).expect("instance line exists").formula;
            if let Some(other) = targets.iter().find(|t| *t != e && formula.contains_term(t)) {
                blockers.push(BlockerFinding {
                    kind: BlockerKind::RenewedEpsilon,
                    line: origin(inst.line),
                    detail: format!(
                        "critical formula for {e} contains {other}, which has critical formulas of its own"
                    ),
                });
            }
            if inst.witness.contains_term(e) {
                blockers.push(BlockerFinding {
                    kind: BlockerKind::WitnessContainsTarget,
                    line: origin(inst.line),
                    detail: format!("witness {} contains {e}", inst.witness),
                });
            }
        }
    }

    for fam in &mut families {
        for inst in &mut fam.instances {
            inst.line = origin(inst.line);
        }
    }
    blockers.sort_by_key(|b| (b.line, b.kind));
    blockers.dedup();
    AnsatzReport {
        applicable: blockers.is_empty(),
        blockers,
        families,
    }
}

fn check_preconditions(p: &ProofScript) -> Result<ProofScript, AnsatzError> {
    let report = check_ansatz_applicable(p);
    if !report.applicable {
        return Err(AnsatzError::NotApplicable(report));
    }
    if !p.end_formula().is_epsilon_free() {
        return Err(AnsatzError::EpsilonInEndFormula(
            p.end_formula().to_string(),
        ));
    }
    Ok(flatten_substitutions(p)?)
}

/// Removes the first critical formula of the family with epsilon term
/// `fam.epsilon`.
///
/// With `A(t1) -> A(e)` that formula, the proof is copied twice: once with
/// every formula `F` guarded as `~A(t1) -> F`, where the `t1` instance becomes
/// provable propositionally, and once guarded as `A(t1) -> F` with `e`
/// replaced by `t1`, where every instance of the family becomes a tautology.
/// Excluded middle on `A(t1)` combines the two copies.
pub fn eliminate_critical_family(
    p: &ProofScript,
    fam: &CriticalFamily,
) -> Result<ProofScript, AnsatzError> {
    let q = check_preconditions(p)?;
    let fams = find_critical_families(&q)?;
    let fam = fams
        .iter()
        .find(|f| f.epsilon == fam.epsilon)
        .ok_or_else(|| AnsatzError::UnknownFamily(fam.epsilon.to_string()))?;
    Ok(eliminate_first(&q, fam))
}

/// One elimination round on a flattened script whose side conditions hold.
fn eliminate_first(q: &ProofScript, fam: &CriticalFamily) -> ProofScript {
    let e = &fam.epsilon;
    let t1 = &fam.instances[0].witness;
    let a1 = fam.instance(t1);
    let a_eps = fam.instance(e);
    let not_a1 = Formula::not(a1.clone());
    let in_family = |line: usize| fam.instances.iter().any(|i| i.line == line);

    let mut b = ScriptBuilder::sharing();
    let mut guarded = GuardedCopy::new(not_a1.clone(), q.len());
    for line in q.lines() {
        let n = match &line.justification {
            Justification::Axiom(Axiom::Crit) if line.number == fam.instances[0].line => {
                // A(t1) -> (~A(t1) -> A(e)) and its permutation are tautologies.
                let first =
                    Formula::implies(a1.clone(), Formula::implies(not_a1.clone(), a_eps.clone()));
                let swap = Formula::implies(first.clone(), guarded.guard(&line.formula));
                let first = b.push(first, Justification::Axiom(Axiom::Taut));
                let swap = b.push(swap, Justification::Axiom(Axiom::Taut));
                let target = guarded.guard(&line.formula);
                b.push(
                    target,
                    Justification::Mp {
                        minor: first,
                        major: swap,
                    },
                )
            }
            _ => guarded.step(&mut b, q, line.number, &line.formula),
        };
        guarded.record(line.number, n);
    }

    let mut replaced = GuardedCopy::new(a1.clone(), q.len());
    for line in q.lines() {
        let formula = line.formula.replace_term(e, t1);
        let n = match &line.justification {
            Justification::Axiom(Axiom::Crit) if in_family(line.number) => {
                // A(t1) -> (A(ti) -> A(t1))
                b.push(replaced.guard(&formula), Justification::Axiom(Axiom::Taut))
            }
            _ => replaced.step_with(&mut b, q, line.number, formula),
        };
        replaced.record(line.number, n);
    }

    let end = q.end_formula().clone();
    let neg_case = guarded.line(q.end().number);
    let pos_case = replaced.line(q.end().number);
    let lem = Formula::implies(
        Formula::implies(not_a1, end.clone()),
        Formula::implies(Formula::implies(a1, end.clone()), end.clone()),
    );
    let lem = b.push(lem, Justification::Axiom(Axiom::Taut));
    let half = b.push(
        Formula::implies(Formula::implies(fam.instance(t1), end.clone()), end.clone()),
        Justification::Mp {
            minor: neg_case,
            major: lem,
        },
    );
    b.push(
        end,
        Justification::Mp {
            minor: pos_case,
            major: half,
        },
    );
    b.finish()
}

/// Rebuilds a proof with every formula `F` turned into `G -> F`.
struct GuardedCopy {
    guard: Formula,
    lines: Vec<Option<usize>>,
}

impl GuardedCopy {
    fn new(guard: Formula, len: usize) -> Self {
        GuardedCopy {
            guard,
            lines: vec![None; len + 1],
        }
    }

    fn guard(&self, f: &Formula) -> Formula {
        Formula::implies(self.guard.clone(), f.clone())
    }

    fn record(&mut self, source: usize, n: usize) {
        self.lines[source] = Some(n);
    }

    fn line(&self, source: usize) -> usize {
        self.lines[source].expect("premises precede their conclusions")
    }

    fn step(
        &mut self,
        b: &mut ScriptBuilder,
        q: &ProofScript,
        source: usize,
        formula: &Formula,
    ) -> usize {
        self.step_with(b, q, source, formula.clone())
    }

    /// Emits `G -> formula` for line `source` of `q`; `formula` is the
    /// (possibly rewritten) formula of that line.
    fn step_with(
        &mut self,
        b: &mut ScriptBuilder,
        q: &ProofScript,
        source: usize,
        formula: Formula,
    ) -> usize {
        let target = self.guard(&formula);
        let j = &q.line(source).expect("line exists").justification;
        match j {
            Justification::Axiom(a) => {
                // F, F -> (G -> F) / G -> F
                let weaken = Formula::implies(formula.clone(), target.clone());
                let axiom = b.push(formula.clone(), Justification::Axiom(*a));
                let weaken = b.push(weaken, Justification::Axiom(Axiom::Taut));
                b.push(
                    target,
                    Justification::Mp {
                        minor: axiom,
                        major: weaken,
                    },
                )
            }
            Justification::Rep(m) => b.push(target, Justification::Rep(self.line(*m))),
            Justification::Mp { minor, major } => {
                // G -> S, G -> (S -> T) / G -> T via
                // (G -> (S -> T)) -> ((G -> S) -> (G -> T))
                let major_f = b.formula(self.line(*major)).clone();
                let minor_f = b.formula(self.line(*minor)).clone();
                let distribute =
                    Formula::implies(major_f, Formula::implies(minor_f.clone(), target.clone()));
                let distribute = b.push(distribute, Justification::Axiom(Axiom::Taut));
                let half = b.push(
                    Formula::implies(minor_f, target.clone()),
                    Justification::Mp {
                        minor: self.line(*major),
                        major: distribute,
                    },
                );
                b.push(
                    target,
                    Justification::Mp {
                        minor: self.line(*minor),
                        major: half,
                    },
                )
            }
            Justification::Subst(..) => {
                unreachable!("flattened scripts have no substitution lines")
            }
        }
    }
}

/// Number of critical formulas per epsilon term, in first-occurrence order.
pub fn family_sizes(p: &ProofScript) -> Result<Vec<(Term, usize)>, KernelError> {
    Ok(find_critical_families(p)?
        .into_iter()
        .map(|f| {
            let n = f.len();
            (f.epsilon, n)
        })
        .collect())
}

/// One round of [`eliminate_all_critical_traced`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Round {
    pub epsilon: Term,
    pub before: usize,
    pub after: usize,
}

pub fn eliminate_all_critical(p: &ProofScript) -> Result<ProofScript, AnsatzError> {
    Ok(eliminate_all_critical_traced(p)?.0)
}

/// Eliminates families one instance at a time, in first-occurrence order,
/// then replaces every remaining epsilon term by `0`.
pub fn eliminate_all_critical_traced(
    p: &ProofScript,
) -> Result<(ProofScript, Vec<Round>), AnsatzError> {
    let mut q = check_preconditions(p)?;
    let mut rounds = Vec::new();
    loop {
        let fams = find_critical_families(&q)?;
        let Some(fam) = fams.first() else { break };
        let next = eliminate_first(&q, fam);
        let sizes = family_sizes(&next)?;
        let size_of = |e: &Term| sizes.iter().find(|(t, _)| t == e).map_or(0, |(_, n)| *n);
        assert_eq!(
            size_of(&fam.epsilon),
            fam.len() - 1,
            "a round removes exactly one instance"
        );
        for other in &fams[1..] {
            assert!(
                size_of(&other.epsilon) <= other.len(),
                "other families never grow"
            );
        }
        rounds.push(Round {
            epsilon: fam.epsilon.clone(),
            before: fam.len(),
            after: fam.len() - 1,
        });
        q = next;
    }
    Ok((epsilon_to_zero(&q), rounds))
}

/// Replaces every outermost epsilon term by `0`. Valid for proofs without
/// critical formulas and identity axioms: it maps axiom instances to axiom
/// instances and commutes with implication.
fn epsilon_to_zero(p: &ProofScript) -> ProofScript {
    let lines = p
        .lines()
        .iter()
        .map(|l| {
            let mut l = l.clone();
            l.formula = l
                .formula
                .map_terms(&mut |t, _| t.is_epsilon().then_some(Term::Zero));
            l
        })
        .collect();
    ProofScript::new(lines).expect("renaming formulas keeps the line structure")
}

/// True if `f` reads as a critical formula for `e`.
pub fn is_critical_for(f: &Formula, e: &Term) -> bool {
    decompose_critical(f).iter().any(|d| d.epsilon == *e)
}
