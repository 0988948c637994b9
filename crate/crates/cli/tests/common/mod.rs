//! Golden CLI cases shared by the integration and acceptance tests.

use std::path::PathBuf;

pub struct Case {
    /// Name of the expected-output file, without the `.out` extension.
    pub name: &'static str,
    /// Arguments after the program name; input files live in the golden
    /// directory.
    pub args: &'static [&'static str],
    pub status: i32,
}

pub const CASES: &[Case] = &[
    Case {
        name: "check-base",
        args: &["check", "base.proof"],
        status: 0,
    },
    Case {
        name: "check-invalid",
        args: &["check", "invalid.proof"],
        status: 1,
    },
    Case {
        name: "check-broken",
        args: &["check", "broken.proof"],
        status: 2,
    },
    Case {
        name: "threads",
        args: &["threads", "stages.proof"],
        status: 0,
    },
    Case {
        name: "elimvars",
        args: &["elimvars", "stages.proof"],
        status: 0,
    },
    Case {
        name: "ground",
        args: &["ground", "stages.proof"],
        status: 0,
    },
    Case {
        name: "reduce",
        args: &["reduce", "stages.proof"],
        status: 0,
    },
    Case {
        name: "pipeline-stages",
        args: &["pipeline", "stages.proof"],
        status: 0,
    },
    Case {
        name: "pipeline-neq",
        args: &["pipeline", "neq.proof"],
        status: 0,
    },
    Case {
        name: "pipeline-nested",
        args: &["pipeline", "nested.proof"],
        status: 1,
    },
    Case {
        name: "ansatz-neq",
        args: &["ansatz", "neq.proof"],
        status: 0,
    },
    Case {
        name: "ansatz-nested",
        args: &["ansatz", "nested.proof"],
        status: 1,
    },
    Case {
        name: "eliminate-eps",
        args: &["eliminate-eps", "neq.proof"],
        status: 0,
    },
    Case {
        name: "epsub",
        args: &["epsub", "epsub.proof"],
        status: 0,
    },
    Case {
        name: "eval",
        args: &["eval", "closed.formula"],
        status: 0,
    },
    Case {
        name: "conserve",
        args: &["conserve", "free.proof", "--numeral", "3"],
        status: 0,
    },
    Case {
        name: "verify-axiom",
        args: &["verify-axiom", "axiom.formula", "--bound", "5"],
        status: 0,
    },
    Case {
        name: "verify-refuted",
        args: &["verify-axiom", "refutable.formula", "--bound", "3"],
        status: 1,
    },
];

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Runs the CLI in-process with empty standard input.
pub fn run(args: &[String]) -> (i32, String, String) {
    run_with_input(args, "")
}

pub fn run_with_input(args: &[String], input: &str) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("epsilon".to_string()).chain(args.iter().cloned());
    let status = epsilon_cli::run(argv, &mut input.as_bytes(), &mut out, &mut err);
    (
        status,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

impl Case {
    /// Arguments with input files resolved against the golden directory.
    pub fn argv(&self) -> Vec<String> {
        let dir = golden_dir();
        self.args
            .iter()
            .map(|a| match dir.join(a) {
                p if p.is_file() => p.display().to_string(),
                _ => a.to_string(),
            })
            .collect()
    }

    pub fn expected(&self) -> String {
        let path = golden_dir().join(format!("{}.out", self.name));
        std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
    }
}
