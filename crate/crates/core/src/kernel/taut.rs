//! Tautology checking over the propositional skeleton.
//!
//! Atoms are the maximal non-propositional subformulas (equations, formula
//! variables, quantified formulas), identified up to alpha-equivalence. The
//! check splits on atoms one at a time and stops a branch as soon as the
//! partial assignment decides the formula, so guarded formulas `G -> F`
//! with many atoms are settled after a few splits.

use crate::par::Exec;
use crate::syntax::Formula;

/// Formulas with more atoms than this are not attempted.
pub const MAX_ATOMS: usize = 64;

/// Split levels that may run in parallel.
const PARALLEL_DEPTH: usize = 6;

#[derive(Debug, Clone)]
pub(crate) enum Skeleton {
    Atom(usize),
    Not(Box<Skeleton>),
    Implies(Box<Skeleton>, Box<Skeleton>),
    And(Box<Skeleton>, Box<Skeleton>),
    Or(Box<Skeleton>, Box<Skeleton>),
}

impl Skeleton {
    pub(crate) fn of(f: &Formula) -> (Skeleton, Vec<Formula>) {
        let mut atoms = Vec::new();
        let sk = Self::build(f, &mut atoms);
        (sk, atoms)
    }

    fn build(f: &Formula, atoms: &mut Vec<Formula>) -> Skeleton {
        let bin = |a: &Formula, b: &Formula, atoms: &mut Vec<Formula>| {
            (
                Box::new(Self::build(a, atoms)),
                Box::new(Self::build(b, atoms)),
            )
        };
        match f {
            Formula::Not(a) => Skeleton::Not(Box::new(Self::build(a, atoms))),
            Formula::Implies(a, b) => {
                let (a, b) = bin(a, b, atoms);
                Skeleton::Implies(a, b)
            }
            Formula::And(a, b) => {
                let (a, b) = bin(a, b, atoms);
                Skeleton::And(a, b)
            }
            Formula::Or(a, b) => {
                let (a, b) = bin(a, b, atoms);
                Skeleton::Or(a, b)
            }
            atom => {
                let i = atoms.iter().position(|g| g == atom).unwrap_or_else(|| {
                    atoms.push(atom.clone());
                    atoms.len() - 1
                });
                Skeleton::Atom(i)
            }
        }
    }

    /// Value under a partial assignment, if already determined.
    fn eval(&self, values: &[Option<bool>]) -> Option<bool> {
        match self {
            Skeleton::Atom(i) => values[*i],
            Skeleton::Not(a) => a.eval(values).map(|v| !v),
            Skeleton::Implies(a, b) => match (a.eval(values), b.eval(values)) {
                (Some(false), _) | (_, Some(true)) => Some(true),
                (Some(true), Some(false)) => Some(false),
                _ => None,
            },
            Skeleton::And(a, b) => match (a.eval(values), b.eval(values)) {
                (Some(false), _) | (_, Some(false)) => Some(false),
                (Some(true), Some(true)) => Some(true),
                _ => None,
            },
            Skeleton::Or(a, b) => match (a.eval(values), b.eval(values)) {
                (Some(true), _) | (_, Some(true)) => Some(true),
                (Some(false), Some(false)) => Some(false),
                _ => None,
            },
        }
    }

    /// Leftmost atom that still matters under the partial assignment.
    fn undecided_atom(&self, values: &[Option<bool>]) -> Option<usize> {
        if self.eval(values).is_some() {
            return None;
        }
        match self {
            Skeleton::Atom(i) => Some(*i),
            Skeleton::Not(a) => a.undecided_atom(values),
            Skeleton::Implies(a, b) | Skeleton::And(a, b) | Skeleton::Or(a, b) => a
                .undecided_atom(values)
                .or_else(|| b.undecided_atom(values)),
        }
    }

    /// True under every extension of `values`.
    fn holds_always(&self, values: &mut Vec<Option<bool>>, depth: usize, exec: Exec) -> bool {
        if let Some(v) = self.eval(values) {
            return v;
        }
        let atom = self
            .undecided_atom(values)
            .expect("undetermined formulas have an open atom");
        if depth < PARALLEL_DEPTH && exec.is_parallel() {
            let mut yes = values.clone();
            let mut no = values.clone();
            yes[atom] = Some(true);
            no[atom] = Some(false);
            let (a, b) = exec.join(
                || self.holds_always(&mut yes, depth + 1, exec),
                || self.holds_always(&mut no, depth + 1, exec),
            );
            return a && b;
        }
        let mut result = true;
        for v in [true, false] {
            values[atom] = Some(v);
            if !self.holds_always(values, depth + 1, exec) {
                result = false;
                break;
            }
        }
        values[atom] = None;
        result
    }
}

pub fn is_tautology(f: &Formula) -> bool {
    is_tautology_with(f, Exec::default())
}

pub fn is_tautology_with(f: &Formula, exec: Exec) -> bool {
    let (sk, atoms) = Skeleton::of(f);
    if atoms.len() > MAX_ATOMS {
        return false;
    }
    sk.holds_always(&mut vec![None; atoms.len()], 0, exec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::script::parse_formula;

    fn taut(s: &str) -> bool {
        is_tautology(&parse_formula(s).unwrap())
    }

    #[test]
    fn simple_cases() {
        assert!(taut("0 = 0 -> 0 = 0"));
        assert!(taut("A | ~A"));
        assert!(taut("(A -> B) -> (~B -> ~A)"));
        assert!(!taut("0 = 0"));
        assert!(!taut("A -> B"));
    }

    #[test]
    fn atoms_identified_up_to_renaming() {
        assert!(taut("(ex x. x = 0) -> (ex y. y = 0)"));
        assert!(taut("eps x. x = 0 = 0 -> eps y. y = 0 = 0"));
    }

    #[test]
    fn many_atoms() {
        let atoms: Vec<String> = (1..=40).map(|i| format!("A{i}")).collect();
        let text = format!("{} -> A14", atoms.join(" & "));
        for exec in [Exec::Sequential, Exec::Parallel] {
            assert!(is_tautology_with(&parse_formula(&text).unwrap(), exec));
            let bad = format!("{} -> A14", atoms[..20].join(" | "));
            assert!(!is_tautology_with(&parse_formula(&bad).unwrap(), exec));
        }
    }
}
