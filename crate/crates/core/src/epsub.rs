//! The epsilon substitution method for a single family of critical formulas
//! with an epsilon-free matrix: start with every epsilon term set to `0` and
//! correct the value once using a true instance.

use std::fmt;

use thiserror::Error;

use crate::kernel::{find_critical_families, KernelError};
use crate::proof::ProofScript;
use crate::syntax::{Formula, Term};
use crate::transform::{
    flatten_substitutions, ground_formula, ground_term, reduce_formula, TransformError,
};
use crate::verify::{eval_closed, eval_term, EvalError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EpsubError {
    #[error("not the simple case: {0}")]
    NotSimpleCase(String),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Numeral values for epsilon terms.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EpsAssignment {
    entries: Vec<(Term, Term)>,
}

impl EpsAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets the value of `epsilon`, replacing an earlier one.
    pub fn set(&mut self, epsilon: Term, numeral: Term) {
        debug_assert!(numeral.is_numeral());
        match self.entries.iter_mut().find(|(e, _)| *e == epsilon) {
            Some(entry) => entry.1 = numeral,
            None => self.entries.push((epsilon, numeral)),
        }
    }

    pub fn get(&self, epsilon: &Term) -> Option<&Term> {
        self.entries
            .iter()
            .find(|(e, _)| e == epsilon)
            .map(|(_, n)| n)
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Term, Term)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Replaces each assigned epsilon term by its numeral.
    pub fn apply(&self, f: &Formula) -> Formula {
        f.map_terms(&mut |t, _| self.get(t).cloned())
    }
}

impl fmt::Display for EpsAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (e, n) in &self.entries {
            writeln!(f, "{e} := {n}")?;
        }
        Ok(())
    }
}

/// One evaluation of all critical instances under a candidate value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsRound {
    pub round: usize,
    pub value: Term,
    /// Truth of `A(n_i) -> A(value)` for each instance, in script order.
    pub instances: Vec<bool>,
}

impl EpsRound {
    pub fn succeeded(&self) -> bool {
        self.instances.iter().all(|&b| b)
    }
}

impl fmt::Display for EpsRound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "round {}: eps := {}", self.round, self.value)?;
        for (i, v) in self.instances.iter().enumerate() {
            write!(f, "; instance {}: {v}", i + 1)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsubSolution {
    /// The epsilon term after grounding, as it occurs in `grounded`.
    pub epsilon: Term,
    /// Matrix after grounding; `Bound(0)` is its variable.
    pub matrix: Formula,
    /// Reduced numeral of each witness, in script order.
    pub witnesses: Vec<Term>,
    pub assignment: EpsAssignment,
    pub rounds: Vec<EpsRound>,
    /// The flattened proof with individual and formula variables grounded.
    pub grounded: ProofScript,
}

impl EpsubSolution {
    pub fn transcript(&self) -> String {
        self.rounds.iter().map(|r| format!("{r}\n")).collect()
    }

    /// The grounded proof with the final assignment applied and numerals
    /// reduced. Every line is variable-free and evaluates true.
    pub fn applied(&self) -> ProofScript {
        apply_assignment(&self.grounded, &self.assignment)
    }
}

/// Replaces assigned epsilon terms by their numerals and reduces numerals.
/// Justifications are kept as a record of where each line came from.
pub fn apply_assignment(p: &ProofScript, a: &EpsAssignment) -> ProofScript {
    let lines = p
        .lines()
        .iter()
        .map(|l| {
            let mut l = l.clone();
            l.formula = reduce_formula(&a.apply(&l.formula));
            l
        })
        .collect();
    ProofScript::new(lines).expect("rewriting formulas keeps the line structure")
}

pub fn epsub_solve(p: &ProofScript) -> Result<EpsubSolution, EpsubError> {
    let q = flatten_substitutions(p)?;
    let families = find_critical_families(&q)?;
    let fam = match families.as_slice() {
        [fam] => fam,
        [] => return Err(EpsubError::NotSimpleCase("no critical formulas".into())),
        more => {
            return Err(EpsubError::NotSimpleCase(format!(
                "{} critical families",
                more.len()
            )))
        }
    };
    let e = &fam.epsilon;
    if !fam.matrix().is_epsilon_free() {
        return Err(EpsubError::NotSimpleCase(format!(
            "the matrix of {e} contains an epsilon term"
        )));
    }
    if let Some(w) = fam.witnesses().find(|w| w.contains_term(e)) {
        return Err(EpsubError::NotSimpleCase(format!(
            "witness {w} contains {e}"
        )));
    }
    for line in q.lines() {
        if let Some(other) = line.formula.epsilon_subterms().into_iter().find(|t| t != e) {
            return Err(EpsubError::NotSimpleCase(format!(
                "line {} contains the further epsilon term {other}",
                line.number
            )));
        }
    }

    let grounded = ProofScript::new(
        q.lines()
            .iter()
            .map(|l| {
                let mut l = l.clone();
                l.formula = ground_formula(&l.formula);
                l
            })
            .collect(),
    )
    .expect("rewriting formulas keeps the line structure");
    let epsilon = ground_term(e);
    let matrix = ground_formula(fam.matrix());
    let witnesses = fam
        .witnesses()
        .map(|w| eval_term(&ground_term(w)))
        .collect::<Result<Vec<_>, _>>()?;

    let holds = |n: &Term| eval_closed(&matrix.open(n));
    let evaluate = |round: usize, value: Term| -> Result<EpsRound, EvalError> {
        let target = holds(&value)?;
        let instances = witnesses
            .iter()
            .map(|n| Ok(!holds(n)? || target))
            .collect::<Result<Vec<bool>, EvalError>>()?;
        Ok(EpsRound {
            round,
            value,
            instances,
        })
    };

    let mut rounds = vec![evaluate(1, Term::Zero)?];
    if !rounds[0].succeeded() {
        // A false instance A(n) -> A(0) has a true antecedent A(n).
        let mut best: Option<&Term> = None;
        for n in &witnesses {
            if holds(n)? && best.is_none_or(|b| n.numeral_value() < b.numeral_value()) {
                best = Some(n);
            }
        }
        let value = best
            .expect("a false instance has a true antecedent")
            .clone();
        rounds.push(evaluate(2, value)?);
    }
    let last = rounds.last().expect("at least one round");
    assert!(
        last.succeeded(),
        "a true instance satisfies every critical formula"
    );
    let mut assignment = EpsAssignment::new();
    assignment.set(epsilon.clone(), last.value.clone());
    Ok(EpsubSolution {
        epsilon,
        matrix,
        witnesses,
        assignment,
        rounds,
        grounded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::script::parse_proof;

    fn solve(text: &str) -> Result<EpsubSolution, EpsubError> {
        epsub_solve(&parse_proof(text).unwrap())
    }

    fn all_lines_true(s: &EpsubSolution) -> bool {
        s.applied()
            .lines()
            .iter()
            .all(|l| eval_closed(&l.formula) == Ok(true))
    }

    #[test]
    fn second_round_corrects_the_value() {
        let s = solve("1. 0+1 = 0+1 -> eps x. x = 0+1 = 0+1 ; crit\n").unwrap();
        assert_eq!(
            s.transcript(),
            "round 1: eps := 0; instance 1: false\nround 2: eps := 0+1; instance 1: true\n"
        );
        assert_eq!(s.assignment.get(&s.epsilon), Some(&Term::numeral(1)));
        assert!(all_lines_true(&s));
    }

    #[test]
    fn always_true_matrix_needs_one_round() {
        let s = solve("1. 0+1 = 0+1 -> eps x. x = x = eps x. x = x ; crit\n").unwrap();
        assert_eq!(s.rounds.len(), 1);
        assert_eq!(s.assignment.get(&s.epsilon), Some(&Term::Zero));
    }

    #[test]
    fn least_true_witness_is_chosen() {
        let s = solve(
            "1. d(0+1+1+1) != 0 -> eps x. x != 0 != 0 ; crit\n\
             2. 0+1 != 0 -> eps x. x != 0 != 0 ; crit\n\
             3. (d(0+1+1+1) != 0 -> eps x. x != 0 != 0) -> ((0+1 != 0 -> eps x. x != 0 != 0) -> (0 = 0 -> 0 = 0)) ; taut\n\
             4. (0+1 != 0 -> eps x. x != 0 != 0) -> (0 = 0 -> 0 = 0) ; mp 1 3\n\
             5. 0 = 0 -> 0 = 0 ; mp 2 4\n",
        )
        .unwrap();
        assert_eq!(s.rounds.len(), 2);
        assert_eq!(s.rounds[1].value, Term::numeral(1));
        assert!(all_lines_true(&s));
    }

    #[test]
    fn free_variables_are_grounded() {
        let s = solve("1. a+1 = 0+1 -> eps x. x = 0+1 = 0+1 ; crit\n").unwrap();
        assert_eq!(s.witnesses, vec![Term::numeral(1)]);
        assert!(all_lines_true(&s));
    }

    #[test]
    fn two_families_are_rejected() {
        let text = "\
1. 0 = 0 -> eps x. x = 0 = 0 ; crit
2. 0 = 0+1 -> eps x. x = 0+1 = 0+1 ; crit
3. (0 = 0 -> eps x. x = 0 = 0) -> ((0 = 0+1 -> eps x. x = 0+1 = 0+1) -> (0 = 0 -> 0 = 0)) ; taut
4. (0 = 0+1 -> eps x. x = 0+1 = 0+1) -> (0 = 0 -> 0 = 0) ; mp 1 3
5. 0 = 0 -> 0 = 0 ; mp 2 4
";
        assert!(matches!(solve(text), Err(EpsubError::NotSimpleCase(_))));
        assert!(matches!(
            solve("1. 0 = 0 -> 0 = 0 ; taut\n"),
            Err(EpsubError::NotSimpleCase(_))
        ));
    }
}
