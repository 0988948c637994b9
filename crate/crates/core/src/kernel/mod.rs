//! Axiom classes, inference rules and the proof checker.

mod critical;
mod taut;

use std::fmt;

use thiserror::Error;

pub use critical::{
    decompose_critical, find_critical_families, CriticalFamily, CriticalInstance, Decomposition,
};
pub use taut::{is_tautology, is_tautology_with, MAX_ATOMS};

use crate::par::Exec;
use crate::proof::{Axiom, Justification, ProofLine, ProofScript};
use crate::syntax::{Formula, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("line {line}: critical formula admits {} readings", decompositions.len())]
    AmbiguousMatrix {
        line: usize,
        decompositions: Vec<Decomposition>,
    },
    #[error("line {line}: not a critical formula")]
    NotCritical { line: usize },
}

pub fn check_axiom(f: &Formula, axiom: Axiom) -> bool {
    check_axiom_with(f, axiom, Exec::default())
}

pub fn check_axiom_with(f: &Formula, axiom: Axiom, exec: Exec) -> bool {
    match axiom {
        Axiom::Taut => is_tautology_with(f, exec),
        Axiom::Id1 => matches!(f, Formula::Eq(a, b) if a == b),
        Axiom::Id2 => identity_congruence(f).is_some(),
        Axiom::Succ => matches!(
            f,
            Formula::Not(inner) if matches!(inner.as_ref(), Formula::Eq(Term::Zero, Term::Succ(_)))
        ),
        Axiom::Pred => match f {
            Formula::Eq(t, Term::Pred(inner)) => {
                matches!(inner.as_ref(), Term::Succ(s) if **s == *t)
            }
            _ => false,
        },
        Axiom::Crit => !decompose_critical(f).is_empty(),
    }
}

/// An instance `s = t -> (C(s) -> C(t))` of the second identity axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence {
    pub lhs: Term,
    pub rhs: Term,
    /// Some replaced position lies inside an epsilon term, as in
    /// `a = b -> (eps x. A(x, a) = eps x. A(x, b))`.
    pub inside_epsilon: bool,
}

pub fn identity_congruence(f: &Formula) -> Option<Congruence> {
    let Formula::Implies(eq, rest) = f else {
        return None;
    };
    let Formula::Eq(s, t) = eq.as_ref() else {
        return None;
    };
    let Formula::Implies(before, after) = rest.as_ref() else {
        return None;
    };
    let mut m = Congruence {
        lhs: s.clone(),
        rhs: t.clone(),
        inside_epsilon: false,
    };
    m.formulas(before, after, false).then_some(m)
}

impl Congruence {
    fn formulas(&mut self, a: &Formula, b: &Formula, in_eps: bool) -> bool {
        match (a, b) {
            (Formula::Eq(p, q), Formula::Eq(r, s)) => {
                self.terms(p, r, in_eps) && self.terms(q, s, in_eps)
            }
            (Formula::Var(n, xs), Formula::Var(m, ys)) => {
                n == m
                    && xs.len() == ys.len()
                    && xs.iter().zip(ys).all(|(x, y)| self.terms(x, y, in_eps))
            }
            (Formula::Not(p), Formula::Not(q)) => self.formulas(p, q, in_eps),
            (Formula::Implies(p, q), Formula::Implies(r, s))
            | (Formula::And(p, q), Formula::And(r, s))
            | (Formula::Or(p, q), Formula::Or(r, s)) => {
                self.formulas(p, r, in_eps) && self.formulas(q, s, in_eps)
            }
            (Formula::Forall(_, p), Formula::Forall(_, q))
            | (Formula::Exists(_, p), Formula::Exists(_, q)) => self.formulas(p, q, in_eps),
            _ => false,
        }
    }

    fn terms(&mut self, a: &Term, b: &Term, in_eps: bool) -> bool {
        if a == b {
            return true;
        }
        if *a == self.lhs && *b == self.rhs {
            self.inside_epsilon |= in_eps;
            return true;
        }
        match (a, b) {
            (Term::Succ(p), Term::Succ(q)) | (Term::Pred(p), Term::Pred(q)) => {
                self.terms(p, q, in_eps)
            }
            (Term::Epsilon(_, p), Term::Epsilon(_, q)) => self.formulas(p, q, true),
            _ => false,
        }
    }
}

/// Outcome of checking one line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineCheck {
    pub number: usize,
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub lines: Vec<LineCheck>,
}

impl CheckReport {
    pub fn is_valid(&self) -> bool {
        self.lines.iter().all(|l| l.failure.is_none())
    }

    pub fn failures(&self) -> impl Iterator<Item = &LineCheck> {
        self.lines.iter().filter(|l| l.failure.is_some())
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            match &l.failure {
                None => writeln!(f, "line {}: ok", l.number)?,
                Some(reason) => writeln!(f, "line {}: FAIL {}", l.number, reason)?,
            }
        }
        Ok(())
    }
}

pub fn check_proof(p: &ProofScript) -> CheckReport {
    check_proof_with(p, Exec::default())
}

/// Lines are independent given the script, so they are checked in parallel
/// under [`Exec::Parallel`]; the report is the same either way.
pub fn check_proof_with(p: &ProofScript, exec: Exec) -> CheckReport {
    // A tautology check already fans out over its truth table; the nested
    // fan-out uses the same pool.
    let lines = exec.map(p.lines(), |line| LineCheck {
        number: line.number,
        failure: check_line(p, line, exec).err(),
    });
    CheckReport { lines }
}

fn check_line(p: &ProofScript, line: &ProofLine, exec: Exec) -> Result<(), String> {
    let cited = |n: usize| &p.line(n).expect("scripts only cite existing lines").formula;
    match &line.justification {
        Justification::Axiom(axiom) => {
            if check_axiom_with(&line.formula, *axiom, exec) {
                Ok(())
            } else if *axiom == Axiom::Taut && taut_too_large(&line.formula) {
                Err(format!("more than {MAX_ATOMS} propositional atoms"))
            } else {
                Err(format!("not an instance of {axiom}"))
            }
        }
        Justification::Subst(m, s) => match s.apply(cited(*m)) {
            Err(e) => Err(e.to_string()),
            Ok(g) if g == line.formula => Ok(()),
            Ok(_) => Err(format!("does not follow from line {m} by the substitution")),
        },
        Justification::Mp { minor, major } => match cited(*major) {
            Formula::Implies(ante, cons) => {
                if **ante != *cited(*minor) {
                    Err(format!(
                        "antecedent of line {major} differs from line {minor}"
                    ))
                } else if **cons != line.formula {
                    Err(format!("consequent of line {major} differs from this line"))
                } else {
                    Ok(())
                }
            }
            _ => Err(format!("line {major} is not an implication")),
        },
        Justification::Rep(m) => {
            if *cited(*m) == line.formula {
                Ok(())
            } else {
                Err(format!("differs from line {m}"))
            }
        }
    }
}

fn taut_too_large(f: &Formula) -> bool {
    taut::Skeleton::of(f).1.len() > MAX_ATOMS
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::script::{parse_formula, parse_proof};

    fn ax(s: &str, a: Axiom) -> bool {
        check_axiom(&parse_formula(s).unwrap(), a)
    }

    #[test]
    fn base_axioms() {
        assert!(ax("0 != 0+1", Axiom::Succ));
        assert!(ax("0 != d(a)+1", Axiom::Succ));
        assert!(!ax("0+1 != 0+1", Axiom::Succ));
        assert!(ax("a = d(a+1)", Axiom::Pred));
        assert!(!ax("a = d(b+1)", Axiom::Pred));
        assert!(ax("0 = 0 -> 0 = 0", Axiom::Taut));
        assert!(ax("d(a) = d(a)", Axiom::Id1));
        assert!(ax("a = b -> (A(a) -> A(b))", Axiom::Id2));
        assert!(ax("a = b -> (a = a -> b = a)", Axiom::Id2));
        assert!(ax("a = b -> (a+1 = a -> b+1 = a)", Axiom::Id2));
        assert!(!ax("a = b -> (a = a -> b = c)", Axiom::Id2));
        assert!(ax("0 = 0 -> eps x. x = 0 = 0", Axiom::Crit));
    }

    #[test]
    fn equality_axiom_g_is_an_identity_instance_inside_epsilon() {
        let f = parse_formula(
            "a = b -> (eps x. A(x, a) = eps x. A(x, a) -> eps x. A(x, a) = eps x. A(x, b))",
        )
        .unwrap();
        let c = identity_congruence(&f).unwrap();
        assert!(c.inside_epsilon);
        let harmless = parse_formula("eps x. A(x) = b -> (A(eps x. A(x)) -> A(b))").unwrap();
        assert!(!identity_congruence(&harmless).unwrap().inside_epsilon);
    }

    #[test]
    fn base_axioms_as_one_line_proofs() {
        for text in [
            "1. 0 != x+1 ; ax-succ",
            "1. x = d(x+1) ; ax-pred",
            "1. a = a ; id1",
            "1. a = b -> (A(a) -> A(b)) ; id2",
            "1. A -> A ; taut",
            "1. A(a) -> A(eps x. A(x)) ; crit",
        ] {
            let report = check_proof(&parse_proof(text).unwrap());
            assert!(report.is_valid(), "{text}: {report}");
        }
    }

    #[test]
    fn mp_with_non_implication_major() {
        let p = parse_proof("1. 0 = 0 ; id1\n2. 0 = 0 ; id1\n3. 0 = 0 ; mp 1 2\n").unwrap();
        let report = check_proof(&p);
        assert!(!report.is_valid());
        assert_eq!(
            report.to_string(),
            "line 1: ok\nline 2: ok\nline 3: FAIL line 2 is not an implication\n"
        );
    }

    #[test]
    fn substitution_lines() {
        let p = parse_proof(
            "1. a = d(a+1) ; ax-pred\n\
             2. 0 = d(0+1) ; subst 1 {a := 0}\n\
             3. 0 = d(0) ; subst 1 {a := 0}\n\
             4. 0 = d(0+1) ; subst 1 {A(p) := p = 0}\n",
        )
        .unwrap();
        let report = check_proof(&p);
        let fails: Vec<usize> = report.failures().map(|l| l.number).collect();
        assert_eq!(fails, vec![3, 4]);
    }

    #[test]
    fn ambiguous_critical_reading() {
        // e2 = eps y. (eps x. x = y) = y and e1 = eps x. x = e2 read e1 = e2
        // both as a critical formula for e1 and for e2.
        let e2 = "eps y. eps x. x = y = y";
        let e1 = format!("eps x. x = ({e2})");
        let f = format!("{e1} = ({e2}) -> {e1} = ({e2})");
        let f = parse_formula(&f).unwrap();
        assert_eq!(decompose_critical(&f).len(), 2);
        let p = parse_proof(&format!("1. {f} ; crit\n")).unwrap();
        assert!(matches!(
            find_critical_families(&p),
            Err(KernelError::AmbiguousMatrix { line: 1, .. })
        ));
    }
}
