//! Generated proof-script corpora, as text in the proof-script format.
//!
//! Every script is meant to check valid. The corpora are built from small
//! templates instantiated with numerals, free-variable terms, matrices and
//! witness lists.

use std::fmt::Write;

pub mod named;

/// A named proof script.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub name: String,
    pub text: String,
}

impl Fixture {
    fn new(name: impl Into<String>, text: String) -> Self {
        Fixture {
            name: name.into(),
            text,
        }
    }
}

/// A script together with the blocker kind it must be rejected with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockerFixture {
    pub fixture: Fixture,
    pub kind: &'static str,
}

/// The numeral `0+1+...+1` with `n` successors.
pub fn numeral(n: u64) -> String {
    let mut s = String::from("0");
    for _ in 0..n {
        s.push_str("+1");
    }
    s
}

/// Line-by-line script assembly.
#[derive(Debug, Default)]
struct Script {
    lines: Vec<(String, String)>,
}

impl Script {
    fn push(&mut self, formula: impl Into<String>, justification: impl Into<String>) -> usize {
        self.lines.push((formula.into(), justification.into()));
        self.lines.len()
    }

    fn formula(&self, n: usize) -> &str {
        &self.lines[n - 1].0
    }

    /// Derives `target` from the given lines through one tautology
    /// `F1 -> (F2 -> ... -> target)` and modus ponens.
    fn conclude(&mut self, premises: &[usize], target: &str) -> usize {
        let mut chain = target.to_string();
        for &p in premises.iter().rev() {
            chain = format!("({}) -> ({chain})", self.formula(p));
        }
        let mut major = self.push(chain, "taut");
        for (i, &p) in premises.iter().enumerate() {
            let rest = rest_of_chain(self, &premises[i + 1..], target);
            major = self.push(rest, format!("mp {p} {major}"));
        }
        major
    }

    fn text(&self) -> String {
        let mut out = String::new();
        for (i, (f, j)) in self.lines.iter().enumerate() {
            writeln!(out, "{}. {f} ; {j}", i + 1).expect("writing to a string");
        }
        out
    }
}

fn rest_of_chain(s: &Script, premises: &[usize], target: &str) -> String {
    let mut chain = target.to_string();
    for &p in premises.iter().rev() {
        chain = format!("({}) -> ({chain})", s.formula(p));
    }
    chain
}

/// Base-theory templates over a term `t`: no epsilon terms, and the end
/// formula mentions `t`.
type Template = (&'static str, fn(&str) -> String);

const BASE_TEMPLATES: [Template; 9] = [
    ("succ", succ_instance),
    ("pred", pred_instance),
    ("symmetry", symmetry),
    ("succ-congruence", succ_congruence),
    ("conjunction", conjunction),
    ("formula-variable", formula_variable),
    ("schema", schema_instance),
    ("residual-variable", residual_variable),
    ("repetition", repetition),
];

fn succ_instance(t: &str) -> String {
    let mut s = Script::default();
    let ax = s.push("0 != b+1", "ax-succ");
    s.push(format!("0 != {t}+1"), format!("subst {ax} {{b := {t}}}"));
    s.text()
}

fn pred_instance(t: &str) -> String {
    let mut s = Script::default();
    let ax = s.push("b = d(b+1)", "ax-pred");
    s.push(
        format!("{t} = d({t}+1)"),
        format!("subst {ax} {{b := {t}}}"),
    );
    s.text()
}

fn symmetry(t: &str) -> String {
    let mut s = Script::default();
    let id = s.push("b = c -> (b = b -> c = b)", "id2");
    let inst = s.push(
        format!("{t} = d({t}+1) -> ({t} = {t} -> d({t}+1) = {t})"),
        format!("subst {id} {{b := {t}, c := d({t}+1)}}"),
    );
    let pred = s.push(format!("{t} = d({t}+1)"), "ax-pred");
    let half = s.push(
        format!("{t} = {t} -> d({t}+1) = {t}"),
        format!("mp {pred} {inst}"),
    );
    let refl = s.push(format!("{t} = {t}"), "id1");
    s.push(format!("d({t}+1) = {t}"), format!("mp {refl} {half}"));
    s.text()
}

fn succ_congruence(t: &str) -> String {
    let mut s = Script::default();
    let id = s.push("b = c -> (b+1 = b+1 -> b+1 = c+1)", "id2");
    let inst = s.push(
        format!("{t} = d({t}+1) -> ({t}+1 = {t}+1 -> {t}+1 = d({t}+1)+1)"),
        format!("subst {id} {{b := {t}, c := d({t}+1)}}"),
    );
    let pred = s.push(format!("{t} = d({t}+1)"), "ax-pred");
    let half = s.push(
        format!("{t}+1 = {t}+1 -> {t}+1 = d({t}+1)+1"),
        format!("mp {pred} {inst}"),
    );
    let refl = s.push(format!("{t}+1 = {t}+1"), "id1");
    s.push(format!("{t}+1 = d({t}+1)+1"), format!("mp {refl} {half}"));
    s.text()
}

fn conjunction(t: &str) -> String {
    let mut s = Script::default();
    let a = s.push(format!("0 != {t}+1"), "ax-succ");
    let b = s.push(format!("{t} = d({t}+1)"), "ax-pred");
    s.conclude(&[a, b], &format!("0 != {t}+1 & {t} = d({t}+1)"));
    s.text()
}

fn formula_variable(t: &str) -> String {
    let mut s = Script::default();
    let taut = s.push("B -> B", "taut");
    s.push(
        format!("{t} = 0 -> {t} = 0"),
        format!("subst {taut} {{B := {t} = 0}}"),
    );
    s.text()
}

fn schema_instance(t: &str) -> String {
    let mut s = Script::default();
    let taut = s.push("B(c) | ~B(c)", "taut");
    s.push(
        format!("d({t}) = {t} | ~d({t}) = {t}"),
        format!("subst {taut} {{c := {t}, B(p) := d(p) = p}}"),
    );
    s.text()
}

fn residual_variable(t: &str) -> String {
    let mut s = Script::default();
    let pred = s.push("c = d(c+1)", "ax-pred");
    let side = s.push("B -> B", "taut");
    let succ = s.push(format!("0 != {t}+1"), "ax-succ");
    s.conclude(&[pred, side, succ], &format!("0 != {t}+1 | {t} = 0"));
    s.text()
}

fn repetition(t: &str) -> String {
    let mut s = Script::default();
    let ax = s.push(format!("0 != {t}+1"), "ax-succ");
    let rep = s.push(format!("0 != {t}+1"), format!("rep {ax}"));
    s.conclude(&[rep], &format!("~(0 = {t}+1)"));
    s.text()
}

/// Epsilon-free scripts with variable-free end formulas: every base
/// template instantiated with the numerals `0` to `6`.
pub fn base_corpus() -> Vec<Fixture> {
    let mut out = Vec::new();
    for (name, template) in BASE_TEMPLATES {
        for n in 0..=6 {
            out.push(Fixture::new(
                format!("base-{name}-{n}"),
                template(&numeral(n)),
            ));
        }
    }
    out
}

/// Epsilon-free scripts whose end formula has exactly the free variable `a`.
pub fn free_variable_corpus() -> Vec<Fixture> {
    let mut out = Vec::new();
    for (name, template) in BASE_TEMPLATES {
        for (i, t) in ["a", "a+1", "d(a)", "d(a+1)+1"].iter().enumerate() {
            out.push(Fixture::new(format!("free-{name}-{i}"), template(t)));
        }
    }
    out
}

/// Matrices over `x` without epsilon terms, each with a way to prove
/// its instance at a given witness without identity axioms.
const MATRICES: [(&str, &str); 4] = [
    ("0 != x+1", "ax-succ"),
    ("x = d(x+1)", "ax-pred"),
    ("C(x) | ~C(x)", "taut"),
    ("x != 0+1 | x = 0+1", "taut"),
];

const WITNESSES: [&str; 4] = ["0", "0+1+1", "a", "d(0+1)+1"];

/// Replaces the variable `x` of `matrix` by `t`, parenthesized unless it is
/// a single token.
fn instantiate(matrix: &str, t: &str) -> String {
    let simple = t.chars().all(|c| c.is_ascii_alphanumeric());
    if simple {
        matrix.replace('x', t)
    } else {
        matrix.replace('x', &format!("({t})"))
    }
}

/// Adds a family of critical formulas for `matrix` with the given witnesses
/// to `s`. Returns the lines `A(e)` (derived from the first witness) and the
/// remaining critical formulas.
fn family(s: &mut Script, matrix: &str, proof: &str, witnesses: &[&str]) -> Vec<usize> {
    let e = format!("(eps x. ({matrix}))");
    let first = s.push(instantiate(matrix, witnesses[0]), proof);
    let crit = |s: &mut Script, w: &str| {
        s.push(
            format!(
                "{} -> {}",
                paren(&instantiate(matrix, w)),
                paren(&instantiate(matrix, &e))
            ),
            "crit",
        )
    };
    let c1 = crit(s, witnesses[0]);
    let at_e = s.push(instantiate(matrix, &e), format!("mp {first} {c1}"));
    let mut used = vec![first, at_e];
    for w in &witnesses[1..] {
        used.push(crit(s, w));
    }
    used
}

fn paren(f: &str) -> String {
    format!("({f})")
}

/// Scripts meeting the side conditions of the simplest case: one or two
/// families over epsilon-free matrices, one to four critical formulas in
/// total, no identity axioms, and an epsilon-free end formula.
pub fn ansatz_corpus() -> Vec<Fixture> {
    let mut out = Vec::new();
    for (m, (matrix, proof)) in MATRICES.iter().enumerate() {
        for k in 1..=4 {
            let mut s = Script::default();
            let used = family(&mut s, matrix, proof, &WITNESSES[..k]);
            let end = format!("{} | 0 = 0+1", paren(s.formula(used[0])));
            s.conclude(&used, &end);
            out.push(Fixture::new(format!("ansatz-m{m}-k{k}"), s.text()));
        }
    }
    let pairs = [(0, 1), (1, 3), (0, 2), (2, 3)];
    for (a, b) in pairs {
        for (ka, kb) in [(1, 1), (2, 1), (2, 2)] {
            let mut s = Script::default();
            let (ma, pa) = MATRICES[a];
            let (mb, pb) = MATRICES[b];
            let mut used = family(&mut s, ma, pa, &WITNESSES[..ka]);
            used.extend(family(&mut s, mb, pb, &WITNESSES[1..=kb]));
            let end = format!(
                "{} & {}",
                paren(s.formula(used[0])),
                paren(s.formula(used[ka + 1]))
            );
            s.conclude(&used, &end);
            out.push(Fixture::new(format!("ansatz-m{a}m{b}-k{ka}{kb}"), s.text()));
        }
    }
    out
}

/// Combines arbitrary lines into the end formula `0 = 0 -> 0 = 0`.
fn close(s: &mut Script, lines: &[usize]) {
    s.conclude(lines, "0 = 0 -> 0 = 0");
}

/// Counterexamples to the simplest-case elimination, each with the blocker
/// kind it must be reported under.
pub fn blocker_fixtures() -> Vec<BlockerFixture> {
    let mut out = Vec::new();
    let mut add = |name: &str, kind: &'static str, s: Script| {
        out.push(BlockerFixture {
            fixture: Fixture::new(name, s.text()),
            kind,
        })
    };

    // A matrix A(x, eps y. B(x, y)) whose epsilon term depends on x.
    for (i, w) in ["0", "a", "0+1"].iter().enumerate() {
        let mut s = Script::default();
        let e = "eps x. A(x, eps y. B(x, y))";
        let c = s.push(
            format!("A({w}, eps y. B({w}, y)) -> A({e}, eps y. B({e}, y))"),
            "crit",
        );
        close(&mut s, &[c]);
        add(&format!("nested-matrix-{i}"), "NestedMatrixEpsilon", s);
    }
    {
        let mut s = Script::default();
        let e = "eps x. x = (eps y. y = x+1)";
        let c = s.push(
            format!("0 = (eps y. y = 0+1) -> {e} = (eps y. y = ({e})+1)"),
            "crit",
        );
        close(&mut s, &[c]);
        add("nested-matrix-arith", "NestedMatrixEpsilon", s);
    }

    // The equality axiom for epsilon terms, as an identity instance.
    for (i, (a, b)) in [("a", "b"), ("0", "d(0+1)"), ("a", "a+1")]
        .iter()
        .enumerate()
    {
        let mut s = Script::default();
        let ea = format!("eps x. A(x, {a})");
        let eb = format!("eps x. A(x, {b})");
        let g = s.push(format!("{a} = {b} -> ({ea} = {ea} -> {ea} = {eb})"), "id2");
        let c = s.push(format!("A(0, {a}) -> A({ea}, {a})"), "crit");
        close(&mut s, &[g, c]);
        add(&format!("equality-g-{i}"), "EqualityAxiomG", s);
    }

    // A critical formula for eps y. B(y, eps x. A(x)) next to one for eps x. A(x).
    for (i, (m, w)) in [("A(x)", "a"), ("x = 0+1", "0+1"), ("0 != x+1", "0")]
        .iter()
        .enumerate()
    {
        let mut s = Script::default();
        let ea = format!("(eps x. {m})");
        let inner = s.push(
            format!("({}) -> ({})", instantiate(m, w), instantiate(m, &ea)),
            "crit",
        );
        let eb = format!("eps y. B(y, {ea})");
        let outer = s.push(format!("B(b, {ea}) -> B({eb}, {ea})"), "crit");
        close(&mut s, &[inner, outer]);
        add(&format!("renewed-{i}"), "RenewedEpsilon", s);
    }

    {
        let mut s = Script::default();
        let r = s.push("0 = 0", "id1");
        let c = s.push("0 = 0 -> eps x. x = 0 = 0", "crit");
        close(&mut s, &[r, c]);
        add("identity-used", "IdentityAxiomUsed", s);
    }
    {
        let mut s = Script::default();
        let e = "(eps x. 0 != x)";
        let c = s.push(format!("0 != {e}+1 -> 0 != {e}"), "crit");
        close(&mut s, &[c]);
        add("witness-contains-target", "WitnessContainsTarget", s);
    }
    out
}

/// Single-family scripts for the epsilon substitution method: the matrix
/// and witnesses have no epsilon terms, and no other epsilon term occurs.
pub fn epsub_corpus() -> Vec<Fixture> {
    let cases: [(&str, &[&str]); 12] = [
        ("x = 0+1", &["0+1"]),
        ("x = x", &["0+1"]),
        ("x != 0", &["0+1+1", "0+1"]),
        ("0 != x+1", &["a"]),
        ("d(x) = 0+1", &["0+1+1"]),
        ("C(x)", &["0", "a"]),
        ("x = 0+1+1 | x = 0+1+1+1", &["0+1+1+1", "0+1+1"]),
        ("x = d(x+1)", &["0", "0+1", "d(0+1+1)"]),
        ("x = 0", &["0"]),
        ("~(x = 0) & ~(x = 0+1)", &["d(0+1+1+1+1)", "0"]),
        ("x+1 = 0+1+1", &["a+1", "0+1"]),
        ("x = 0+1 -> x = d(0+1+1)", &["0+1", "0"]),
    ];
    cases
        .iter()
        .enumerate()
        .map(|(i, (matrix, witnesses))| {
            let mut s = Script::default();
            let e = format!("(eps x. ({matrix}))");
            let lines: Vec<usize> = witnesses
                .iter()
                .map(|w| {
                    s.push(
                        format!(
                            "{} -> {}",
                            paren(&instantiate(matrix, w)),
                            paren(&instantiate(matrix, &e))
                        ),
                        "crit",
                    )
                })
                .collect();
            close(&mut s, &lines);
            Fixture::new(format!("epsub-{i}"), s.text())
        })
        .collect()
}
