//! Acceptance suite: one PASS or FAIL line per criterion. Exits non-zero if
//! any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use epsilon_core::ansatz::{
    check_ansatz_applicable, eliminate_all_critical_traced, translate_quantifiers,
};
use epsilon_core::epsub::epsub_solve;
use epsilon_core::kernel::{check_proof, find_critical_families};
use epsilon_core::script::parse_term;
use epsilon_core::transform::reduce_numerals;
use epsilon_core::verify::{conservativity_extract, consistency_pipeline, eval_closed};
use epsilon_core::{
    alpha_eq, parse_formula, parse_proof, print_formula, print_proof, Axiom, Formula, ProofScript,
    Term,
};
use epsilon_fixtures::named::{
    normal_forms, random_formula, terms_of_size, Domain, GenConfig, NFormula, NTerm, Semantics,
};
use epsilon_fixtures::{
    ansatz_corpus, base_corpus, blocker_fixtures, epsub_corpus, free_variable_corpus, Fixture,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn load(f: &Fixture) -> Result<ProofScript, String> {
    let p = parse_proof(&f.text).map_err(|e| format!("{}: {e}", f.name))?;
    let report = check_proof(&p);
    ensure!(report.is_valid(), "{} does not check:\n{report}", f.name);
    Ok(p)
}

fn base_consistency() -> Outcome {
    let start = Instant::now();
    let corpus = base_corpus();
    ensure!(corpus.len() >= 50, "only {} scripts", corpus.len());
    let mut leaves = 0;
    for f in &corpus {
        let p = load(f)?;
        ensure!(
            p.lines().iter().all(|l| l.formula.is_epsilon_free()),
            "{} uses epsilon terms",
            f.name
        );
        ensure!(
            p.end_formula().is_variable_free(),
            "{}: end formula has variables",
            f.name
        );
        let cert = consistency_pipeline(&p).map_err(|e| format!("{}: {e}", f.name))?;
        ensure!(
            cert.leaf_evaluations.iter().all(|(_, v)| *v),
            "{}: a leaf is false",
            f.name
        );
        ensure!(cert.end_truth, "{}: end formula false", f.name);
        leaves += cert.leaf_evaluations.len();
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    Ok(format!(
        "{} scripts, {leaves} true leaves, {elapsed:.2?}",
        corpus.len()
    ))
}

fn ansatz_elimination() -> Outcome {
    let corpus = ansatz_corpus();
    ensure!(corpus.len() >= 20, "only {} scripts", corpus.len());
    let mut total_rounds = 0;
    for f in &corpus {
        let p = load(f)?;
        let crit = p.count_axiom(Axiom::Crit);
        ensure!(
            (1..=4).contains(&crit),
            "{}: {crit} critical formulas",
            f.name
        );
        let families = find_critical_families(&p).map_err(|e| e.to_string())?;
        ensure!(
            (1..=2).contains(&families.len()),
            "{}: {} matrices",
            f.name,
            families.len()
        );
        ensure!(
            families.iter().all(|fam| fam.matrix().is_epsilon_free()),
            "{}: matrix with epsilon",
            f.name
        );

        let (q, rounds) =
            eliminate_all_critical_traced(&p).map_err(|e| format!("{}: {e}", f.name))?;
        ensure!(
            q.count_axiom(Axiom::Crit) == 0,
            "{}: critical formulas remain",
            f.name
        );
        ensure!(
            check_proof(&q).is_valid(),
            "{}: output does not check",
            f.name
        );
        ensure!(
            print_formula(q.end_formula()) == print_formula(p.end_formula()),
            "{}: end formula changed",
            f.name
        );
        ensure!(
            rounds.len() == crit,
            "{}: {} rounds for {crit} formulas",
            f.name,
            rounds.len()
        );
        let mut sizes: BTreeMap<String, usize> = families
            .iter()
            .map(|fam| (fam.epsilon.to_string(), fam.len()))
            .collect();
        for r in &rounds {
            let size = sizes
                .get_mut(&r.epsilon.to_string())
                .ok_or("round for an unknown family")?;
            ensure!(
                r.before == *size && r.after + 1 == r.before,
                "{}: round {r:?} from {size}",
                f.name
            );
            *size = r.after;
        }
        total_rounds += rounds.len();
    }
    Ok(format!("{} scripts, {total_rounds} rounds", corpus.len()))
}

fn blocker_detection() -> Outcome {
    let mut per_kind: BTreeMap<&str, usize> = BTreeMap::new();
    for b in blocker_fixtures() {
        let p = load(&b.fixture)?;
        let report = check_ansatz_applicable(&p);
        ensure!(!report.applicable, "{}: accepted", b.fixture.name);
        let kinds: Vec<&str> = report.blockers.iter().map(|f| f.kind.name()).collect();
        ensure!(
            kinds == [b.kind],
            "{}: expected {}, got {kinds:?}",
            b.fixture.name,
            b.kind
        );
        *per_kind.entry(b.kind).or_default() += 1;
    }
    for kind in ["NestedMatrixEpsilon", "EqualityAxiomG", "RenewedEpsilon"] {
        ensure!(per_kind.contains_key(kind), "no fixture for {kind}");
    }
    for f in ansatz_corpus() {
        let report = check_ansatz_applicable(&load(&f)?);
        ensure!(
            report.applicable && report.blockers.is_empty(),
            "{}: {report}",
            f.name
        );
    }
    Ok(format!(
        "{per_kind:?}; no findings on the applicable corpus"
    ))
}

fn epsilon_substitution() -> Outcome {
    let corpus = epsub_corpus();
    ensure!(corpus.len() >= 10, "only {} fixtures", corpus.len());
    let mut two_rounds = 0;
    for f in &corpus {
        let p = load(f)?;
        let s = epsub_solve(&p).map_err(|e| format!("{}: {e}", f.name))?;
        ensure!(
            (1..=2).contains(&s.rounds.len()),
            "{}: {} rounds",
            f.name,
            s.rounds.len()
        );
        two_rounds += usize::from(s.rounds.len() == 2);
        for l in s.applied().lines() {
            ensure!(
                l.formula.is_variable_free() && l.formula.is_epsilon_free(),
                "{}: line {} not closed",
                f.name,
                l.number
            );
            ensure!(
                eval_closed(&l.formula) == Ok(true),
                "{}: line {} is not true",
                f.name,
                l.number
            );
        }
    }
    Ok(format!(
        "{} fixtures, {two_rounds} needed a second round",
        corpus.len()
    ))
}

/// Core syntax back to named syntax; binders get names by depth.
fn named(f: &Formula, scope: &mut Vec<String>) -> NFormula {
    let bind = |scope: &mut Vec<String>, body: &Formula| {
        let x = format!("v{}", scope.len());
        scope.push(x.clone());
        let body = named(body, scope);
        scope.pop();
        (x, Box::new(body))
    };
    match f {
        Formula::Eq(a, b) => NFormula::Eq(named_term(a, scope), named_term(b, scope)),
        Formula::Var(p, args) => NFormula::Atom(
            p.clone(),
            args.iter().map(|t| named_term(t, scope)).collect(),
        ),
        Formula::Not(a) => NFormula::not(named(a, scope)),
        Formula::Implies(a, b) => NFormula::implies(named(a, scope), named(b, scope)),
        Formula::And(a, b) => NFormula::And(Box::new(named(a, scope)), Box::new(named(b, scope))),
        Formula::Or(a, b) => NFormula::Or(Box::new(named(a, scope)), Box::new(named(b, scope))),
        Formula::Forall(_, body) => {
            let (x, body) = bind(scope, body);
            NFormula::All(x, body)
        }
        Formula::Exists(_, body) => {
            let (x, body) = bind(scope, body);
            NFormula::Ex(x, body)
        }
    }
}

fn named_term(t: &Term, scope: &mut Vec<String>) -> NTerm {
    match t {
        Term::Zero => NTerm::Zero,
        Term::Succ(s) => NTerm::succ(named_term(s, scope)),
        Term::Pred(s) => NTerm::pred(named_term(s, scope)),
        Term::Free(v) => NTerm::Var(v.clone()),
        Term::Bound(i) => NTerm::Var(scope[scope.len() - 1 - i].clone()),
        Term::Epsilon(_, body) => {
            let x = format!("v{}", scope.len());
            scope.push(x.clone());
            let body = named(body, scope);
            scope.pop();
            NTerm::Eps(x, Box::new(body))
        }
    }
}

fn quantifier_translation() -> Outcome {
    let cfg = GenConfig {
        depth: 5,
        free_vars: vec!["a".into()],
        epsilon: false,
        formula_vars: Vec::new(),
        ..GenConfig::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let mut formulas = Vec::new();
    while formulas.len() < 100 {
        let f = random_formula(&mut rng, &cfg);
        if (1..=3).contains(&f.quantifier_count()) {
            formulas.push(f);
        }
    }
    let mut checks = 0;
    for n in &formulas {
        let f = parse_formula(&n.to_string()).map_err(|e| format!("{n}: {e}"))?;
        let translated = translate_quantifiers(&f);
        ensure!(translated.is_quantifier_free(), "{n}: quantifiers remain");
        let eps_form = named(&translated, &mut Vec::new());
        for k in 0..=3 {
            let sem = Semantics::new(Domain::UpTo(k));
            for a in 0..=k {
                let env = || vec![("a".to_string(), a)];
                let tarski = sem.formula(n, &mut env());
                let epsilon = sem.formula(&eps_form, &mut env());
                ensure!(
                    tarski == epsilon,
                    "{n} at k = {k}, a = {a}: {tarski} vs {epsilon} for {translated}"
                );
                checks += 1;
            }
        }
    }
    Ok(format!("100 formulas, {checks} evaluations agree"))
}

fn rewrite_properties() -> Outcome {
    let leaves = [NTerm::Zero, NTerm::var("a")];
    let mut terms = 0;
    let mut closed = 0;
    for size in 1..=8 {
        for t in terms_of_size(size, &leaves) {
            let forms = normal_forms(&t);
            ensure!(forms.len() == 1, "{t} has normal forms {forms:?}");
            let oracle = forms.into_iter().next().expect("one normal form");
            let core = parse_term(&t.to_string()).map_err(|e| format!("{t}: {e}"))?;
            let reduced = reduce_numerals(&core);
            let expected = parse_term(&oracle.to_string()).map_err(|e| e.to_string())?;
            ensure!(
                reduced == expected,
                "{t}: reduced to {reduced}, oracle {oracle}"
            );
            if t.free_vars().is_empty() {
                ensure!(reduced.is_numeral(), "{t} does not reach a numeral");
                closed += 1;
            }
            terms += 1;
        }
    }
    Ok(format!(
        "{terms} terms with a unique normal form, {closed} closed ones reach numerals"
    ))
}

fn conservativity() -> Outcome {
    let corpora = [
        base_corpus(),
        free_variable_corpus(),
        ansatz_corpus(),
        epsub_corpus(),
    ];
    let mut proofs = 0;
    for f in corpora.iter().flatten() {
        let p = load(f)?;
        let end = p.end_formula();
        if end.free_vars().len() != 1 || !end.formula_vars().is_empty() || !end.is_quantifier_free()
        {
            continue;
        }
        for z in 0..=10 {
            let cert =
                conservativity_extract(&p, z).map_err(|e| format!("{} z = {z}: {e}", f.name))?;
            ensure!(cert.end_truth, "{} z = {z}: end formula false", f.name);
        }
        proofs += 1;
    }
    ensure!(proofs > 0, "no proof with one free variable");
    Ok(format!("{proofs} proofs, z = 0..=10"))
}

fn round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let cfg = GenConfig::default();
    for _ in 0..1000 {
        let n = random_formula(&mut rng, &cfg);
        let f = parse_formula(&n.to_string()).map_err(|e| format!("{n}: {e}"))?;
        let again = parse_formula(&print_formula(&f)).map_err(|e| format!("{f}: {e}"))?;
        ensure!(alpha_eq(&f, &again), "{n} printed as {f}");
    }
    let corpora = [
        base_corpus(),
        free_variable_corpus(),
        ansatz_corpus(),
        epsub_corpus(),
    ];
    let blockers = blocker_fixtures().into_iter().map(|b| b.fixture);
    let mut scripts = 0;
    for f in corpora.into_iter().flatten().chain(blockers) {
        let p = load(&f)?;
        let again = parse_proof(&print_proof(&p)).map_err(|e| format!("{}: {e}", f.name))?;
        ensure!(again.len() == p.len(), "{}: line count changed", f.name);
        for (a, b) in p.lines().iter().zip(again.lines()) {
            ensure!(
                alpha_eq(&a.formula, &b.formula),
                "{}: line {} changed",
                f.name,
                a.number
            );
            ensure!(
                a.justification == b.justification,
                "{}: justification of line {} changed",
                f.name,
                a.number
            );
        }
        scripts += 1;
    }
    for case in common::CASES {
        let first = common::run(&case.argv());
        let second = common::run(&case.argv());
        ensure!(
            first == second,
            "{}: output differs between runs",
            case.name
        );
        ensure!(first.0 == case.status, "{}: exit {}", case.name, first.0);
        ensure!(
            first.1 == case.expected(),
            "{}: output differs from the golden file",
            case.name
        );
    }
    Ok(format!(
        "1000 formulas, {scripts} scripts, {} golden outputs",
        common::CASES.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("base-theory consistency", base_consistency),
        ("ansatz elimination", ansatz_elimination),
        ("blocker detection", blocker_detection),
        ("epsilon substitution, simple case", epsilon_substitution),
        ("quantifier translation semantics", quantifier_translation),
        ("rewrite-system properties", rewrite_properties),
        ("conservativity extraction", conservativity),
        ("round-trip fidelity", round_trip),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|payload| {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS {}. {title}: {detail}", i + 1),
            Err(reason) => {
                failed += 1;
                println!("FAIL {}. {title}: {reason}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
