//! Recognizing critical formulas `A(t) -> A(eps x. A(x))` and grouping them
//! into families by their epsilon term.

use crate::proof::{Axiom, ProofScript};
use crate::syntax::{Formula, Term};

use super::KernelError;

/// One way to read a formula as a critical formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// The epsilon term `eps x. A(x)`; its body is the matrix.
    pub epsilon: Term,
    pub witness: Term,
}

/// All readings of `f` as `A(t) -> A(eps x. A(x))`, without duplicates.
///
/// Matrices that do not mention their variable are not considered: such a
/// formula has the shape `F -> F` and is a tautology anyway.
pub fn decompose_critical(f: &Formula) -> Vec<Decomposition> {
    let Formula::Implies(premise, conclusion) = f else {
        return Vec::new();
    };
    let mut out: Vec<Decomposition> = Vec::new();
    for e in conclusion.epsilon_subterms() {
        if e.has_loose_bound() {
            continue;
        }
        let Term::Epsilon(_, matrix) = &e else {
            unreachable!()
        };
        if matrix.open(&e) != **conclusion {
            continue;
        }
        let mut witness = None;
        if !match_formula(matrix, premise, 0, &mut witness) {
            continue;
        }
        let Some(witness) = witness else { continue };
        let d = Decomposition {
            epsilon: e,
            witness,
        };
        if !out.contains(&d) {
            out.push(d);
        }
    }
    out
}

/// Matches `target` against `pattern`, where `Bound(depth)` in the pattern is
/// the matrix variable. Every occurrence must meet the same closed term.
fn match_formula(pattern: &Formula, target: &Formula, depth: usize, w: &mut Option<Term>) -> bool {
    match (pattern, target) {
        (Formula::Eq(a, b), Formula::Eq(c, d)) => {
            match_term(a, c, depth, w) && match_term(b, d, depth, w)
        }
        (Formula::Var(n, xs), Formula::Var(m, ys)) => {
            n == m
                && xs.len() == ys.len()
                && xs.iter().zip(ys).all(|(x, y)| match_term(x, y, depth, w))
        }
        (Formula::Not(a), Formula::Not(b)) => match_formula(a, b, depth, w),
        (Formula::Implies(a, b), Formula::Implies(c, d))
        | (Formula::And(a, b), Formula::And(c, d))
        | (Formula::Or(a, b), Formula::Or(c, d)) => {
            match_formula(a, c, depth, w) && match_formula(b, d, depth, w)
        }
        (Formula::Forall(_, a), Formula::Forall(_, b))
        | (Formula::Exists(_, a), Formula::Exists(_, b)) => match_formula(a, b, depth + 1, w),
        _ => false,
    }
}

fn match_term(pattern: &Term, target: &Term, depth: usize, w: &mut Option<Term>) -> bool {
    match (pattern, target) {
        (Term::Bound(i), _) if *i == depth => {
            if target.has_loose_bound() {
                return false;
            }
            match w {
                Some(prev) => prev == target,
                None => {
                    *w = Some(target.clone());
                    true
                }
            }
        }
        (Term::Zero, Term::Zero) => true,
        (Term::Free(a), Term::Free(b)) => a == b,
        (Term::Bound(i), Term::Bound(j)) => i == j,
        (Term::Succ(a), Term::Succ(b)) | (Term::Pred(a), Term::Pred(b)) => {
            match_term(a, b, depth, w)
        }
        (Term::Epsilon(_, a), Term::Epsilon(_, b)) => match_formula(a, b, depth + 1, w),
        _ => false,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalInstance {
    /// Line number in the script.
    pub line: usize,
    pub witness: Term,
}

/// An epsilon term with all critical formulas for it in a proof.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalFamily {
    pub epsilon: Term,
    pub instances: Vec<CriticalInstance>,
}

impl CriticalFamily {
    /// The body of the epsilon term; `Bound(0)` is the distinguished parameter.
    pub fn matrix(&self) -> &Formula {
        match &self.epsilon {
            Term::Epsilon(_, body) => body,
            _ => unreachable!("family representative is an epsilon term"),
        }
    }

    /// The matrix instantiated at `t`.
    pub fn instance(&self, t: &Term) -> Formula {
        self.matrix().open(t)
    }

    /// `A(t) -> A(eps x. A(x))`
    pub fn critical_formula(&self, t: &Term) -> Formula {
        Formula::implies(self.instance(t), self.instance(&self.epsilon))
    }

    pub fn len(&self) -> usize {
        self.instances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }

    pub fn witnesses(&self) -> impl Iterator<Item = &Term> {
        self.instances.iter().map(|i| &i.witness)
    }
}

/// Groups the `crit` lines of `p` by epsilon term, in order of first occurrence.
pub fn find_critical_families(p: &ProofScript) -> Result<Vec<CriticalFamily>, KernelError> {
    let mut families: Vec<CriticalFamily> = Vec::new();
    for line in p.lines() {
        if line.justification.axiom() != Some(Axiom::Crit) {
            continue;
        }
        let mut ds = decompose_critical(&line.formula);
        let d = match ds.len() {
            0 => return Err(KernelError::NotCritical { line: line.number }),
            1 => ds.pop().unwrap(),
            _ => {
                return Err(KernelError::AmbiguousMatrix {
                    line: line.number,
                    decompositions: ds,
                })
            }
        };
        let instance = CriticalInstance {
            line: line.number,
            witness: d.witness,
        };
        match families.iter_mut().find(|f| f.epsilon == d.epsilon) {
            Some(f) => f.instances.push(instance),
            None => families.push(CriticalFamily {
                epsilon: d.epsilon,
                instances: vec![instance],
            }),
        }
    }
    Ok(families)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::script::{parse_formula, parse_proof, parse_term};

    #[test]
    fn decomposes_transfinite_instance() {
        let f = parse_formula("0 = 0 -> eps x. x = 0 = 0").unwrap();
        let ds = decompose_critical(&f);
        assert_eq!(ds.len(), 1);
        assert_eq!(ds[0].witness, Term::Zero);
        assert_eq!(ds[0].epsilon, parse_term("eps x. x = 0").unwrap());
    }

    #[test]
    fn witness_must_be_consistent() {
        let f = parse_formula("0 = 0+1 -> eps x. x = x = eps x. x = x").unwrap();
        assert!(decompose_critical(&f).is_empty());
        let g = parse_formula("a = a -> eps x. x = x = eps x. x = x").unwrap();
        assert_eq!(decompose_critical(&g)[0].witness, Term::free("a"));
    }

    #[test]
    fn formula_variable_matrix() {
        let f = parse_formula("A(a+1) -> A(eps x. A(x))").unwrap();
        let ds = decompose_critical(&f);
        assert_eq!(ds.len(), 1);
        assert_eq!(ds[0].witness, parse_term("a+1").unwrap());
    }

    #[test]
    fn families_in_first_occurrence_order() {
        let p = parse_proof(
            "1. 0 = 0 -> eps x. x = 0 = 0 ; crit\n\
             2. A(0) -> A(eps y. A(y)) ; crit\n\
             3. 0+1 = 0 -> eps z. z = 0 = 0 ; crit\n",
        )
        .unwrap();
        let fams = find_critical_families(&p).unwrap();
        assert_eq!(fams.len(), 2);
        assert_eq!(fams[0].len(), 2);
        assert_eq!(fams[0].instances[1].line, 3);
        assert_eq!(fams[0].instances[1].witness, Term::numeral(1));
        assert_eq!(fams[1].instances[0].line, 2);
    }

    #[test]
    fn no_critical_lines() {
        let p = parse_proof("1. 0 = 0 -> 0 = 0 ; taut\n").unwrap();
        assert!(find_critical_families(&p).unwrap().is_empty());
    }
}
