//! Cross-checks a [`SolveReport`] against the Vandermonde oracle.

use std::fmt;

use num_traits::{One, Zero};

use crate::conditions::BirkhoffProblem;
use crate::oracle::{check_triangularity, is_strongly_proper, leading_minors, oracle_interpolate};
use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::solver::SolveReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckKind {
    Triangularity,
    ConditionsSatisfied,
    OracleEquality,
    StronglyProper,
    DeterminantRatio,
    SpanEquality,
    PivotOrientation,
}

impl CheckKind {
    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Triangularity => "triangularity",
            CheckKind::ConditionsSatisfied => "conditions",
            CheckKind::OracleEquality => "oracle",
            CheckKind::StronglyProper => "strongly-proper",
            CheckKind::DeterminantRatio => "determinant-ratio",
            CheckKind::SpanEquality => "span",
            CheckKind::PivotOrientation => "pivot-orientation",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub kind: CheckKind,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn pass(kind: CheckKind) -> Self {
        Self {
            kind,
            passed: true,
            detail: String::new(),
        }
    }

    fn fail(kind: CheckKind, detail: impl Into<String>) -> Self {
        Self {
            kind,
            passed: false,
            detail: detail.into(),
        }
    }

    fn from_result(kind: CheckKind, result: Result<(), String>) -> Self {
        match result {
            Ok(()) => Self::pass(kind),
            Err(detail) => Self::fail(kind, detail),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed {
            write!(f, "{}: ok", self.kind.name())
        } else {
            write!(f, "{}: FAILED ({})", self.kind.name(), self.detail)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub checks: Vec<Check>,
    /// Leading principal minors over the final monomial basis and order.
    pub minors: Vec<Rational>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, kind: CheckKind) -> Option<&Check> {
        self.checks.iter().find(|c| c.kind == kind)
    }
}

/// Runs every check on `report`. `nodes` are the problem's nodes.
pub fn verify_report(nodes: &[Rational], report: &SolveReport) -> Verification {
    let problem = report.final_problem(nodes);
    let monomials = report.monomial_basis();
    let minors = leading_minors(&monomials, problem.functionals());

    let checks = vec![
        Check::from_result(
            CheckKind::Triangularity,
            check_triangularity(&report.newton_basis, problem.functionals())
                .map_err(|v| format!("{v:?}")),
        ),
        Check::from_result(
            CheckKind::ConditionsSatisfied,
            conditions_satisfied(&problem, &report.interpolant),
        ),
        Check::from_result(
            CheckKind::OracleEquality,
            match oracle_interpolate(&monomials, &problem) {
                Ok(p) if p == report.interpolant => Ok(()),
                Ok(p) => Err(format!(
                    "oracle gives {p}, recursion gives {}",
                    report.interpolant
                )),
                Err(e) => Err(e.to_string()),
            },
        ),
        if is_strongly_proper(&monomials, problem.functionals()) {
            Check::pass(CheckKind::StronglyProper)
        } else {
            Check::fail(
                CheckKind::StronglyProper,
                format!("leading minors {}", join(&minors)),
            )
        },
        Check::from_result(
            CheckKind::DeterminantRatio,
            determinant_ratio(&report.pivots, &minors),
        ),
        Check::from_result(CheckKind::SpanEquality, span_equality(report)),
        Check::from_result(
            CheckKind::PivotOrientation,
            pivot_orientation(&report.pivots, &minors),
        ),
    ];
    Verification { checks, minors }
}

fn join(values: &[Rational]) -> String {
    values
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn conditions_satisfied(problem: &BirkhoffProblem, p: &Polynomial) -> Result<(), String> {
    for (i, (l, y)) in problem
        .functionals()
        .iter()
        .zip(problem.values())
        .enumerate()
    {
        let got = l.apply(p);
        if &got != y {
            return Err(format!(
                "condition {} ({l}) gives {got}, expected {y}",
                i + 1
            ));
        }
    }
    Ok(())
}

/// `pivot_k * det(V_{k-2}) = det(V_{k-1})`, with the empty minor equal to 1.
fn determinant_ratio(pivots: &[Rational], minors: &[Rational]) -> Result<(), String> {
    if pivots.len() != minors.len() {
        return Err(format!(
            "{} pivots for {} minors",
            pivots.len(),
            minors.len()
        ));
    }
    let one = Rational::one();
    for (k, pivot) in pivots.iter().enumerate() {
        let previous = if k == 0 { &one } else { &minors[k - 1] };
        if pivot * previous != minors[k] {
            return Err(format!(
                "step {}: pivot {pivot} times minor {previous} differs from minor {}",
                k + 1,
                minors[k]
            ));
        }
    }
    Ok(())
}

/// The pivot is `det(V_{k-1}) / det(V_{k-2})`; the reciprocal only matches
/// when the two coincide.
fn pivot_orientation(pivots: &[Rational], minors: &[Rational]) -> Result<(), String> {
    let one = Rational::one();
    for (k, pivot) in pivots.iter().enumerate() {
        let previous = if k == 0 { &one } else { &minors[k - 1] };
        if previous.is_zero() || minors[k].is_zero() {
            return Err(format!("step {}: vanishing leading minor", k + 1));
        }
        let ratio = &minors[k] / previous;
        let reciprocal = previous / &minors[k];
        if pivot != &ratio {
            return Err(format!(
                "step {}: pivot {pivot} is not det ratio {ratio}",
                k + 1
            ));
        }
        if pivot == &reciprocal && ratio != reciprocal {
            return Err(format!(
                "step {}: pivot also equals the reciprocal ratio",
                k + 1
            ));
        }
    }
    Ok(())
}

/// Each Newton polynomial lies in the monomial span with coefficient zero on
/// later monomials and a nonzero coefficient on its own monomial.
fn span_equality(report: &SolveReport) -> Result<(), String> {
    let exps = &report.monomial_exponents;
    for (k, g) in report.newton_basis.iter().enumerate() {
        if let Some(e) = g.support().find(|e| !exps.contains(e)) {
            return Err(format!(
                "newton {} has x^{e} outside the monomial basis",
                k + 1
            ));
        }
        if let Some(&e) = exps[k + 1..].iter().find(|&&e| !g.coeff(e).is_zero()) {
            return Err(format!("newton {} uses later monomial x^{e}", k + 1));
        }
        if g.coeff(exps[k]).is_zero() {
            return Err(format!("newton {} has zero diagonal coefficient", k + 1));
        }
    }
    Ok(())
}
