//! Proof kernel and proof transformations for the epsilon calculus over the
//! arithmetical signature `0`, `+1`, `d` (predecessor) and `=`.
//!
//! The crate checks axiomatic proof scripts, resolves them into proof
//! threads, eliminates free variables and substitutions, reduces numerals,
//! eliminates critical formulas of the epsilon axiom in the simplest case,
//! solves the single-term epsilon substitution problem and evaluates the
//! resulting variable-free proofs.

pub mod ansatz;
pub mod epsub;
pub mod kernel;
pub mod par;
pub mod proof;
pub mod script;
pub mod subst;
pub mod syntax;
pub mod transform;
pub mod verify;

pub use par::Exec;
pub use proof::{Axiom, Justification, ProofLine, ProofScript};
pub use script::{parse_formula, parse_proof, print_formula, print_proof};
pub use subst::{apply_subst, Schema, Substitution};
pub use syntax::{alpha_eq, Formula, Term};
