//! Command implementations behind the `birkhoff` binary.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::problem_file::{parse_problem, ProblemFile, ResultRecord};
use crate::random::{run_random, RandomConfig};
use crate::solver::{default_cap, solve, Algorithm};
use crate::verify::verify_report;

pub const EXIT_OK: u8 = 0;
pub const EXIT_PARSE: u8 = 1;
pub const EXIT_SOLVE: u8 = 2;
pub const EXIT_VERIFY: u8 = 3;

/// What a command printed and how it exits.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(code: u8, message: impl std::fmt::Display) -> Self {
        Self {
            code,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolveOptions {
    pub algorithm: Option<Algorithm>,
    pub verify: bool,
    pub keep_order: bool,
    pub max_degree: Option<usize>,
    pub json: bool,
}

fn join<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn solve_text(text: &str, opts: &SolveOptions) -> Outcome {
    let parsed = match parse_problem(text, opts.keep_order) {
        Ok(p) => p,
        Err(e) => return Outcome::error(EXIT_PARSE, e),
    };
    let algorithm = opts.algorithm.unwrap_or(if parsed.is_monomial() {
        Algorithm::Monomial
    } else {
        Algorithm::General
    });
    let cap = opts
        .max_degree
        .unwrap_or_else(|| default_cap(&parsed.problem));
    let report = match solve(&parsed.problem, algorithm, cap) {
        Ok(r) => r,
        Err(e) => return Outcome::error(EXIT_SOLVE, e),
    };
    let verification = opts
        .verify
        .then(|| verify_report(parsed.problem.nodes(), &report));
    let record = ResultRecord::new(&parsed, &report, verification.as_ref());

    let mut stdout = String::new();
    if opts.json {
        stdout.push_str(&serde_json::to_string_pretty(&record).expect("records serialize"));
        stdout.push('\n');
    } else {
        let monomials = report.monomial_basis();
        writeln!(stdout, "algorithm: {}", record.algorithm).unwrap();
        writeln!(stdout, "order: {}", record.conditions.join(", ")).unwrap();
        writeln!(stdout, "file order: {}", join(&record.final_order)).unwrap();
        writeln!(stdout, "monomial basis: {}", join(&monomials)).unwrap();
        writeln!(stdout, "newton basis: {}", record.newton_basis.join(", ")).unwrap();
        writeln!(stdout, "pivots: {}", record.pivots.join(", ")).unwrap();
        writeln!(stdout, "escalations: {}", record.escalations).unwrap();
        let swaps = if record.swaps.is_empty() {
            "none".to_string()
        } else {
            record
                .swaps
                .iter()
                .map(|(a, b)| format!("{a}<->{b}"))
                .collect::<Vec<_>>()
                .join(", ")
        };
        writeln!(stdout, "swaps: {swaps}").unwrap();
        writeln!(stdout, "interpolant: {}", record.interpolant).unwrap();
        if let Some(v) = &verification {
            for check in &v.checks {
                writeln!(stdout, "verify {check}").unwrap();
            }
        }
    }
    let code = match &verification {
        Some(v) if !v.passed() => EXIT_VERIFY,
        _ => EXIT_OK,
    };
    Outcome {
        code,
        stdout,
        stderr: String::new(),
    }
}

pub fn solve_file(path: &Path, opts: &SolveOptions) -> Outcome {
    match std::fs::read_to_string(path) {
        Ok(text) => solve_text(&text, opts),
        Err(e) => Outcome::error(EXIT_PARSE, format!("cannot read {}: {e}", path.display())),
    }
}

pub fn polya_text(text: &str) -> Outcome {
    let incidence = parse_problem(text, true).and_then(|p| Ok(p.problem.incidence()?));
    match incidence {
        Ok(e) => {
            let verdict = if e.satisfies_polya() {
                "satisfied"
            } else {
                "not satisfied"
            };
            Outcome {
                code: EXIT_OK,
                stdout: format!("polya: {verdict}\n"),
                stderr: String::new(),
            }
        }
        Err(e) => Outcome::error(EXIT_PARSE, e),
    }
}

pub fn polya_file(path: &Path) -> Outcome {
    match std::fs::read_to_string(path) {
        Ok(text) => polya_text(&text),
        Err(e) => Outcome::error(EXIT_PARSE, format!("cannot read {}: {e}", path.display())),
    }
}

/// Failing instances are written as problem files to `reproducer_dir`.
pub fn random_command(config: &RandomConfig, reproducer_dir: &Path) -> Outcome {
    let (summary, problems) = run_random(config);
    let mut outcome = Outcome {
        code: EXIT_OK,
        stdout: summary.render(),
        stderr: String::new(),
    };
    if summary.failed() > 0 {
        outcome.code = EXIT_VERIFY;
        for failure in summary.failures() {
            let path: PathBuf = reproducer_dir.join(format!(
                "random-seed{}-case{}.json",
                config.seed, failure.index
            ));
            let json = ProblemFile::from_problem(&problems[failure.index]).to_json_pretty();
            match std::fs::write(&path, json) {
                Ok(()) => {
                    writeln!(outcome.stderr, "reproducer written to {}", path.display()).unwrap()
                }
                Err(e) => writeln!(outcome.stderr, "cannot write {}: {e}", path.display()).unwrap(),
            }
        }
    }
    outcome
}
