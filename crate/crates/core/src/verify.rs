//! Finitary truth evaluation of variable-free formulas, bounded verifiability
//! checks, and the consistency and conservativity pipelines that end in a
//! truth certificate.

use std::fmt;

use thiserror::Error;

use crate::ansatz::{eliminate_all_critical, AnsatzError};
use crate::kernel::{check_proof, CheckReport};
use crate::par::Exec;
use crate::proof::{Justification, ProofLine, ProofScript};
use crate::subst::Substitution;
use crate::syntax::{Formula, Term};
use crate::transform::{
    eliminate_free_variable_substs, ground_residual_variables, reduce_numerals,
    reduce_thread_proof, resolve_threads, ThreadProof, TransformError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("`{0}` contains a variable, quantifier or epsilon term")]
    NotClosed(String),
    #[error("`{0}` does not reduce to a numeral")]
    NonNumeralTerm(String),
    #[error("{0} instances are too many to enumerate")]
    TooManyInstances(String),
}

/// Reduces a closed term to its numeral.
pub fn eval_term(t: &Term) -> Result<Term, EvalError> {
    fn closed(t: &Term) -> bool {
        match t {
            Term::Zero => true,
            Term::Succ(s) | Term::Pred(s) => closed(s),
            Term::Free(_) | Term::Bound(_) | Term::Epsilon(..) => false,
        }
    }
    if !closed(t) {
        return Err(EvalError::NotClosed(t.to_string()));
    }
    let n = reduce_numerals(t);
    if !n.is_numeral() {
        return Err(EvalError::NonNumeralTerm(t.to_string()));
    }
    Ok(n)
}

/// Truth value of a variable-free, epsilon-free formula: an equation is true
/// iff both sides reduce to the same numeral, connectives are classical.
pub fn eval_closed(f: &Formula) -> Result<bool, EvalError> {
    Ok(match f {
        Formula::Eq(a, b) => eval_term(a)? == eval_term(b)?,
        Formula::Not(a) => !eval_closed(a)?,
        Formula::Implies(a, b) => !eval_closed(a)? || eval_closed(b)?,
        Formula::And(a, b) => eval_closed(a)? && eval_closed(b)?,
        Formula::Or(a, b) => eval_closed(a)? || eval_closed(b)?,
        Formula::Var(..) | Formula::Forall(..) | Formula::Exists(..) => {
            return Err(EvalError::NotClosed(f.to_string()))
        }
    })
}

/// Every instance with numerals `0..=bound` for the free variables is true.
pub fn check_verifiable(axiom: &Formula, bound: u64) -> Result<bool, EvalError> {
    check_verifiable_with(axiom, bound, Exec::default())
}

pub fn check_verifiable_with(axiom: &Formula, bound: u64, exec: Exec) -> Result<bool, EvalError> {
    Ok(find_counterexample(axiom, bound, exec)?.is_none())
}

/// The first false instance in lexicographic order of the assigned values,
/// as pairs of variable and value.
pub fn find_counterexample(
    axiom: &Formula,
    bound: u64,
    exec: Exec,
) -> Result<Option<Vec<(String, u64)>>, EvalError> {
    let vars: Vec<String> = axiom.free_vars().into_iter().collect();
    let base = bound
        .checked_add(1)
        .ok_or_else(|| EvalError::TooManyInstances(format!("{bound}+1")))?;
    let count = u32::try_from(vars.len())
        .ok()
        .and_then(|k| base.checked_pow(k))
        .ok_or_else(|| EvalError::TooManyInstances(format!("{base}^{}", vars.len())))?;
    let values = |index: u64| {
        let mut rest = index;
        let mut out = vec![0; vars.len()];
        for slot in out.iter_mut().rev() {
            *slot = rest % base;
            rest /= base;
        }
        out
    };
    let instance = |index: u64| {
        let s = vars
            .iter()
            .zip(values(index))
            .fold(Substitution::new(), |s, (v, n)| {
                s.with_term(v.clone(), Term::numeral(n))
            });
        s.apply(axiom).expect("term substitutions have no arity")
    };
    // Whether evaluation fails does not depend on the numerals chosen.
    eval_closed(&instance(0))?;
    let bad = exec.find_first_in(count, |i| !eval_closed(&instance(i)).unwrap_or(false));
    Ok(bad.map(|i| vars.iter().cloned().zip(values(i)).collect()))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("the proof does not check:\n{0}")]
    Invalid(CheckReport),
    #[error("end formula `{0}` is not variable-free")]
    NotVariableFree(String),
    #[error("end formula `{0}` must have exactly one free individual variable and no formula variables or quantifiers")]
    WrongArity(String),
    #[error("leaf at line {line} evaluates false: `{formula}`")]
    RefutedLeaf { line: usize, formula: String },
    #[error(transparent)]
    Ansatz(#[from] AnsatzError),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// A variable-free proof tree together with the truth value of every line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthCertificate {
    pub proof: ThreadProof,
    /// The tree linearized without sharing; line numbers below refer to it.
    pub script: ProofScript,
    /// Truth value of every line of `script`, in order.
    pub values: Vec<bool>,
    pub leaf_evaluations: Vec<(usize, bool)>,
    pub end_truth: bool,
}

impl TruthCertificate {
    /// Every inference leads from true premises to a true conclusion.
    pub fn inferences_preserve_truth(&self) -> bool {
        let value = |n: usize| self.values[self.script.index_of(n).expect("line exists")];
        self.script
            .lines()
            .iter()
            .all(|l| l.justification.premises().iter().any(|&m| !value(m)) || value(l.number))
    }
}

impl fmt::Display for TruthCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.script)?;
        for (n, v) in &self.leaf_evaluations {
            writeln!(f, "leaf {n}: {v}")?;
        }
        writeln!(f, "end: {}", self.end_truth)
    }
}

pub fn consistency_pipeline(p: &ProofScript) -> Result<TruthCertificate, PipelineError> {
    consistency_pipeline_with(p, Exec::default())
}

/// Checks `p`, eliminates critical formulas and epsilon terms, resolves the
/// proof into threads, pushes substitutions to the axioms, grounds and
/// reduces, then evaluates every line of the resulting variable-free tree.
pub fn consistency_pipeline_with(
    p: &ProofScript,
    exec: Exec,
) -> Result<TruthCertificate, PipelineError> {
    let report = check_proof(p);
    if !report.is_valid() {
        return Err(PipelineError::Invalid(report));
    }
    if !p.end_formula().is_variable_free() {
        return Err(PipelineError::NotVariableFree(p.end_formula().to_string()));
    }
    let has_epsilon = p.lines().iter().any(|l| !l.formula.is_epsilon_free());
    let q = if has_epsilon {
        eliminate_all_critical(p)?
    } else {
        p.clone()
    };
    let t = eliminate_free_variable_substs(&resolve_threads(&q))?;
    let t = reduce_thread_proof(&ground_residual_variables(&t)?)?;
    let script = t.to_script();
    let values = exec
        .map(script.lines(), |l| eval_closed(&l.formula))
        .into_iter()
        .collect::<Result<Vec<bool>, _>>()?;
    let mut leaf_evaluations = Vec::new();
    for (line, &v) in script.lines().iter().zip(&values) {
        if let Justification::Axiom(_) = line.justification {
            if !v {
                return Err(PipelineError::RefutedLeaf {
                    line: line.number,
                    formula: line.formula.to_string(),
                });
            }
            leaf_evaluations.push((line.number, v));
        }
    }
    let end_truth = *values.last().expect("scripts are nonempty");
    let cert = TruthCertificate {
        proof: t,
        script,
        values,
        leaf_evaluations,
        end_truth,
    };
    assert!(
        cert.inferences_preserve_truth(),
        "modus ponens preserves truth"
    );
    assert!(cert.end_truth, "true axioms yield a true end formula");
    Ok(cert)
}

/// Instantiates the single free variable of the end formula with `z` by a
/// final substitution line and certifies the resulting instance.
pub fn conservativity_extract(p: &ProofScript, z: u64) -> Result<TruthCertificate, PipelineError> {
    conservativity_extract_with(p, z, Exec::default())
}

pub fn conservativity_extract_with(
    p: &ProofScript,
    z: u64,
    exec: Exec,
) -> Result<TruthCertificate, PipelineError> {
    let end = p.end();
    let vars = end.formula.free_vars();
    let shape_ok = vars.len() == 1
        && end.formula.formula_vars().is_empty()
        && end.formula.is_quantifier_free();
    if !shape_ok {
        return Err(PipelineError::WrongArity(end.formula.to_string()));
    }
    let var = vars.into_iter().next().expect("one variable");
    let s = Substitution::single(var, Term::numeral(z));
    let formula = s.apply(&end.formula).map_err(TransformError::from)?;
    let mut lines = p.lines().to_vec();
    lines.push(ProofLine {
        number: end.number + 1,
        formula,
        justification: Justification::Subst(end.number, s),
    });
    let extended =
        ProofScript::new(lines).expect("appending after the end keeps numbering increasing");
    consistency_pipeline_with(&extended, exec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::script::{parse_formula, parse_proof};

    fn eval(s: &str) -> Result<bool, EvalError> {
        eval_closed(&parse_formula(s).unwrap())
    }

    #[test]
    fn closed_evaluation() {
        assert_eq!(eval("0+1 = 0+1"), Ok(true));
        assert_eq!(eval("0 != 0"), Ok(false));
        assert_eq!(eval("d(0+1) = 0"), Ok(true));
        assert_eq!(eval("d(0) = 0"), Ok(true));
        assert_eq!(eval("0 = 0 -> 0 = 0+1"), Ok(false));
        assert!(matches!(eval("a = 0"), Err(EvalError::NotClosed(_))));
        assert!(matches!(
            eval("eps x. x = 0 = 0"),
            Err(EvalError::NotClosed(_))
        ));
        assert!(matches!(eval("A"), Err(EvalError::NotClosed(_))));
        assert!(matches!(eval("ex x. x = 0"), Err(EvalError::NotClosed(_))));
    }

    #[test]
    fn bounded_verifiability() {
        let f = |s: &str| parse_formula(s).unwrap();
        for exec in [Exec::Sequential, Exec::Parallel] {
            assert_eq!(check_verifiable_with(&f("0 != x+1"), 5, exec), Ok(true));
            assert_eq!(check_verifiable_with(&f("x = d(x+1)"), 5, exec), Ok(true));
            assert_eq!(check_verifiable_with(&f("x = x+1"), 0, exec), Ok(false));
            assert_eq!(
                find_counterexample(&f("x = y -> x = 0+1"), 3, exec),
                Ok(Some(vec![("x".to_string(), 0), ("y".to_string(), 0)]))
            );
            assert_eq!(
                find_counterexample(&f("x != y | d(x) = d(y)"), 3, exec),
                Ok(None)
            );
        }
    }

    #[test]
    fn pipeline_on_predecessor_axiom() {
        let p = parse_proof("1. a = d(a+1) ; ax-pred\n2. 0 = d(0+1) ; subst 1 {a := 0}\n").unwrap();
        let cert = consistency_pipeline(&p).unwrap();
        assert!(cert.end_truth);
        assert_eq!(
            cert.to_string(),
            "1. 0 = 0 ; id1\nleaf 1: true\nend: true\n"
        );
    }

    #[test]
    fn pipeline_with_one_critical_formula() {
        let p = parse_proof(
            "1. 0 = d(0+1) ; ax-pred\n\
             2. 0 = d(0+1) -> eps x. x = d(0+1) = d(0+1) ; crit\n\
             3. eps x. x = d(0+1) = d(0+1) ; mp 1 2\n\
             4. eps x. x = d(0+1) = d(0+1) -> (0 = d(0+1) -> 0 = d(0+1)) ; taut\n\
             5. 0 = d(0+1) -> 0 = d(0+1) ; mp 3 4\n\
             6. 0 = d(0+1) ; mp 1 5\n",
        )
        .unwrap();
        let report = check_proof(&p);
        assert!(report.is_valid(), "{report}");
        let cert = consistency_pipeline(&p).unwrap();
        assert!(cert.end_truth);
        assert!(cert.inferences_preserve_truth());
        assert!(cert.to_string().ends_with("end: true\n"));
    }

    #[test]
    fn false_end_formula_never_certifies() {
        let p = parse_proof("1. 0 != 0 ; taut\n").unwrap();
        assert!(matches!(
            consistency_pipeline(&p),
            Err(PipelineError::Invalid(_))
        ));
        let q = parse_proof("1. a = d(a+1) ; ax-pred\n").unwrap();
        assert!(matches!(
            consistency_pipeline(&q),
            Err(PipelineError::NotVariableFree(_))
        ));
    }

    #[test]
    fn conservativity_instances() {
        let p = parse_proof("1. a = d(a+1) ; ax-pred\n").unwrap();
        let cert = conservativity_extract(&p, 3).unwrap();
        assert!(cert.end_truth);
        assert_eq!(
            cert.script.end_formula(),
            &parse_formula("0+1+1+1 = 0+1+1+1").unwrap()
        );
        let q = parse_proof("1. 0 != a+1 ; ax-succ\n").unwrap();
        for z in 0..=4 {
            assert!(conservativity_extract(&q, z).unwrap().end_truth);
        }
        let r = parse_proof("1. a = b -> (a = a -> b = a) ; id2\n").unwrap();
        assert!(matches!(
            conservativity_extract(&r, 0),
            Err(PipelineError::WrongArity(_))
        ));
    }
}
