use epsilon_core::ansatz::{
    check_ansatz_applicable, eliminate_all_critical_traced, eliminate_critical_family, family_sizes,
};
use epsilon_core::epsub::epsub_solve;
use epsilon_core::kernel::{check_proof, find_critical_families};
use epsilon_core::verify::{conservativity_extract, consistency_pipeline, eval_closed};
use epsilon_core::{parse_proof, print_proof, Axiom, ProofScript};
use epsilon_fixtures::{
    ansatz_corpus, base_corpus, blocker_fixtures, epsub_corpus, free_variable_corpus, Fixture,
};

fn load(f: &Fixture) -> ProofScript {
    let p = parse_proof(&f.text).unwrap_or_else(|e| panic!("{}: {e}\n{}", f.name, f.text));
    let report = check_proof(&p);
    assert!(report.is_valid(), "{}:\n{}\n{report}", f.name, f.text);
    p
}

#[test]
fn every_corpus_script_checks() {
    let all = base_corpus()
        .into_iter()
        .chain(free_variable_corpus())
        .chain(ansatz_corpus())
        .chain(epsub_corpus())
        .chain(blocker_fixtures().into_iter().map(|b| b.fixture));
    for f in all {
        let p = load(&f);
        let again = parse_proof(&print_proof(&p)).unwrap();
        assert_eq!(again, p, "{}", f.name);
    }
}

#[test]
fn base_corpus_certifies() {
    for f in base_corpus() {
        let p = load(&f);
        assert!(p.end_formula().is_variable_free(), "{}", f.name);
        let cert = consistency_pipeline(&p).unwrap_or_else(|e| panic!("{}: {e}", f.name));
        assert!(cert.end_truth);
        assert!(cert.leaf_evaluations.iter().all(|(_, v)| *v));
        assert!(cert.inferences_preserve_truth());
    }
}

#[test]
fn free_variable_corpus_is_verifiable_instance_by_instance() {
    for f in free_variable_corpus() {
        let p = load(&f);
        for z in 0..=10 {
            let cert =
                conservativity_extract(&p, z).unwrap_or_else(|e| panic!("{} z={z}: {e}", f.name));
            assert!(cert.end_truth);
        }
    }
}

#[test]
fn ansatz_corpus_eliminates() {
    for f in ansatz_corpus() {
        let p = load(&f);
        let report = check_ansatz_applicable(&p);
        assert!(report.applicable, "{}: {report}", f.name);
        assert!(report.blockers.is_empty());
        let total: usize = report.families.iter().map(|fam| fam.len()).sum();
        assert!((1..=4).contains(&total), "{}", f.name);

        let (q, rounds) = eliminate_all_critical_traced(&p).unwrap();
        assert_eq!(rounds.len(), total, "{}", f.name);
        assert!(rounds.iter().all(|r| r.after + 1 == r.before));
        assert!(check_proof(&q).is_valid(), "{}", f.name);
        assert_eq!(q.count_axiom(Axiom::Crit), 0);
        assert!(q.lines().iter().all(|l| l.formula.is_epsilon_free()));
        assert_eq!(q.end_formula().to_string(), p.end_formula().to_string());
    }
}

#[test]
fn single_round_removes_exactly_one_instance() {
    for f in ansatz_corpus() {
        let p = load(&f);
        let before = family_sizes(&p).unwrap();
        let fams = find_critical_families(&p).unwrap();
        let once = eliminate_critical_family(&p, &fams[0]).unwrap();
        assert!(check_proof(&once).is_valid(), "{}", f.name);
        assert_eq!(once.end_formula(), p.end_formula());
        let after = family_sizes(&once).unwrap();
        for (e, n) in &before {
            let m = after.iter().find(|(t, _)| t == e).map_or(0, |(_, m)| *m);
            let expected = if *e == fams[0].epsilon { n - 1 } else { *n };
            assert_eq!(m, expected, "{}", f.name);
        }
    }
}

#[test]
fn blockers_are_detected() {
    for b in blocker_fixtures() {
        let p = load(&b.fixture);
        let report = check_ansatz_applicable(&p);
        assert!(!report.applicable, "{}", b.fixture.name);
        let kinds: Vec<&str> = report.blockers.iter().map(|f| f.kind.name()).collect();
        assert_eq!(kinds, vec![b.kind], "{}", b.fixture.name);
    }
}

#[test]
fn epsub_corpus_solves() {
    for f in epsub_corpus() {
        let p = load(&f);
        let s = epsub_solve(&p).unwrap_or_else(|e| panic!("{}: {e}", f.name));
        assert!((1..=2).contains(&s.rounds.len()));
        for round in &s.rounds {
            for (w, v) in s.witnesses.iter().zip(&round.instances) {
                let instance =
                    epsilon_core::Formula::implies(s.matrix.open(w), s.matrix.open(&round.value));
                assert_eq!(eval_closed(&instance), Ok(*v), "{}", f.name);
            }
        }
        let applied = s.applied();
        for l in applied.lines() {
            assert!(l.formula.is_variable_free(), "{}", f.name);
            assert_eq!(
                eval_closed(&l.formula),
                Ok(true),
                "{}: {}",
                f.name,
                l.formula
            );
        }
    }
}
