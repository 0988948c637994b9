//! Numbered proof scripts.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::subst::Substitution;
use crate::syntax::Formula;

/// Axiom classes of the calculus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    /// Substitution instance of a propositional tautology.
    Taut,
    /// `a = a`
    Id1,
    /// `a = b -> (A(a) -> A(b))`
    Id2,
    /// `0 != x+1`
    Succ,
    /// `x = d(x+1)`
    Pred,
    /// Critical formula `A(t) -> A(eps x. A(x))`.
    Crit,
}

impl Axiom {
    pub const ALL: [Axiom; 6] = [
        Axiom::Taut,
        Axiom::Id1,
        Axiom::Id2,
        Axiom::Succ,
        Axiom::Pred,
        Axiom::Crit,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Axiom::Taut => "taut",
            Axiom::Id1 => "id1",
            Axiom::Id2 => "id2",
            Axiom::Succ => "ax-succ",
            Axiom::Pred => "ax-pred",
            Axiom::Crit => "crit",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Axiom> {
        Axiom::ALL.into_iter().find(|a| a.tag() == tag)
    }

    pub fn is_identity(self) -> bool {
        matches!(self, Axiom::Id1 | Axiom::Id2)
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// How a line was obtained. Premises are line numbers of earlier lines.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Justification {
    Axiom(Axiom),
    Subst(usize, Substitution),
    /// Modus ponens from `minor` (`C`) and `major` (`C -> B`).
    Mp {
        minor: usize,
        major: usize,
    },
    Rep(usize),
}

impl Justification {
    pub fn premises(&self) -> Vec<usize> {
        match self {
            Justification::Axiom(_) => Vec::new(),
            Justification::Subst(m, _) | Justification::Rep(m) => vec![*m],
            Justification::Mp { minor, major } => vec![*minor, *major],
        }
    }

    pub fn axiom(&self) -> Option<Axiom> {
        match self {
            Justification::Axiom(a) => Some(*a),
            _ => None,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Justification::Axiom(a) => a.tag(),
            Justification::Subst(..) => "subst",
            Justification::Mp { .. } => "mp",
            Justification::Rep(_) => "rep",
        }
    }

    fn renumbered(&self, map: impl Fn(usize) -> usize) -> Justification {
        match self {
            Justification::Axiom(a) => Justification::Axiom(*a),
            Justification::Subst(m, s) => Justification::Subst(map(*m), s.clone()),
            Justification::Mp { minor, major } => Justification::Mp {
                minor: map(*minor),
                major: map(*major),
            },
            Justification::Rep(m) => Justification::Rep(map(*m)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofLine {
    pub number: usize,
    pub formula: Formula,
    pub justification: Justification,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScriptError {
    #[error("a proof script needs at least one line")]
    Empty,
    #[error("line {line}: line numbers must be strictly increasing (previous was {previous})")]
    NonIncreasing { line: usize, previous: usize },
    #[error("line {line}: cites line {cites}, which does not precede it")]
    DanglingReference { line: usize, cites: usize },
}

/// A nonempty list of lines whose justifications only cite earlier lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofScript {
    lines: Vec<ProofLine>,
}

impl ProofScript {
    pub fn new(lines: Vec<ProofLine>) -> Result<Self, ScriptError> {
        if lines.is_empty() {
            return Err(ScriptError::Empty);
        }
        for (i, line) in lines.iter().enumerate() {
            if i > 0 && line.number <= lines[i - 1].number {
                return Err(ScriptError::NonIncreasing {
                    line: line.number,
                    previous: lines[i - 1].number,
                });
            }
            for cited in line.justification.premises() {
                let exists = lines[..i]
                    .binary_search_by_key(&cited, |l| l.number)
                    .is_ok();
                if !exists {
                    return Err(ScriptError::DanglingReference {
                        line: line.number,
                        cites: cited,
                    });
                }
            }
        }
        Ok(ProofScript { lines })
    }

    pub fn lines(&self) -> &[ProofLine] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn end(&self) -> &ProofLine {
        self.lines.last().expect("proof scripts are nonempty")
    }

    pub fn end_formula(&self) -> &Formula {
        &self.end().formula
    }

    pub fn index_of(&self, number: usize) -> Option<usize> {
        self.lines.binary_search_by_key(&number, |l| l.number).ok()
    }

    pub fn line(&self, number: usize) -> Option<&ProofLine> {
        self.index_of(number).map(|i| &self.lines[i])
    }

    /// Same script with lines numbered 1, 2, 3, ...
    pub fn renumbered(&self) -> ProofScript {
        let map: HashMap<usize, usize> = self
            .lines
            .iter()
            .enumerate()
            .map(|(i, l)| (l.number, i + 1))
            .collect();
        let lines = self
            .lines
            .iter()
            .enumerate()
            .map(|(i, l)| ProofLine {
                number: i + 1,
                formula: l.formula.clone(),
                justification: l.justification.renumbered(|n| map[&n]),
            })
            .collect();
        ProofScript { lines }
    }

    /// Appends a line numbered one past the current end.
    pub fn push(&mut self, formula: Formula, justification: Justification) -> usize {
        let number = self.end().number + 1;
        debug_assert!(justification
            .premises()
            .iter()
            .all(|p| self.index_of(*p).is_some()));
        self.lines.push(ProofLine {
            number,
            formula,
            justification,
        });
        number
    }

    pub fn count_axiom(&self, axiom: Axiom) -> usize {
        self.lines
            .iter()
            .filter(|l| l.justification.axiom() == Some(axiom))
            .count()
    }
}

/// Assembles scripts line by line, numbering from 1. With sharing enabled,
/// a line identical to an earlier one (formula and justification) is not
/// emitted again; the earlier number is returned instead.
#[derive(Debug, Default)]
pub struct ScriptBuilder {
    lines: Vec<ProofLine>,
    shared: Option<HashMap<(Formula, Justification), usize>>,
}

impl ScriptBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn sharing() -> Self {
        ScriptBuilder {
            lines: Vec::new(),
            shared: Some(HashMap::new()),
        }
    }

    pub fn push(&mut self, formula: Formula, justification: Justification) -> usize {
        let number = self.lines.len() + 1;
        if let Some(seen) = &mut self.shared {
            match seen.entry((formula.clone(), justification.clone())) {
                Entry::Occupied(e) => return *e.get(),
                Entry::Vacant(e) => {
                    e.insert(number);
                }
            }
        }
        self.lines.push(ProofLine {
            number,
            formula,
            justification,
        });
        number
    }

    pub fn formula(&self, number: usize) -> &Formula {
        &self.lines[number - 1].formula
    }

    /// Lines emitted so far.
    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// Panics if nothing was pushed.
    pub fn finish(self) -> ProofScript {
        ProofScript::new(self.lines).expect("builder emits well-formed scripts")
    }
}
