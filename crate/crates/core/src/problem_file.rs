//! JSON problem files and result records.
//!
//! A problem file lists nodes, values, and either explicit conditions or an
//! incidence matrix. Rationals are always strings (`"3"`, `"-1/2"`).
//!
//! ```json
//! {
//!   "nodes": ["1", "2"],
//!   "conditions": [
//!     {"node_index": 0, "operator": {"order": 1}},
//!     {"node_index": 1, "operator": {"coeffs": ["1", "1"]}}
//!   ],
//!   "values": ["1", "3"]
//! }
//! ```
//!
//! With `"incidence"`, conditions are read row-major (node by node, orders
//! ascending) and `values` follow that order.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::conditions::{
    BirkhoffProblem, ConditionError, DiffOperator, Functional, IncidenceMatrix,
};
use crate::rational::{parse_rational, Rational};
use crate::solver::SolveReport;
use crate::verify::Verification;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub nodes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conditions: Option<Vec<ConditionSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub incidence: Option<Vec<Vec<u32>>>,
    pub values: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConditionSpec {
    pub node_index: usize,
    pub operator: OperatorSpec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OperatorSpec {
    Order { order: usize },
    Coeffs { coeffs: Vec<String> },
}

#[derive(Debug, Error)]
pub enum ProblemError {
    #[error("malformed problem file: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("{field}: {message}")]
    Field { field: String, message: String },
    #[error("problem file needs exactly one of `conditions` or `incidence`")]
    ConditionSource,
    #[error("{0}")]
    Condition(#[from] ConditionError),
}

fn field_error(field: impl Into<String>, message: impl ToString) -> ProblemError {
    ProblemError::Field {
        field: field.into(),
        message: message.to_string(),
    }
}

fn rationals(field: &str, items: &[String]) -> Result<Vec<Rational>, ProblemError> {
    items
        .iter()
        .enumerate()
        .map(|(i, s)| parse_rational(s).map_err(|e| field_error(format!("{field}[{i}]"), e)))
        .collect()
}

/// A validated problem plus how it relates to the file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedProblem {
    pub problem: BirkhoffProblem,
    /// `input_order[i]` is the file's index of the condition at position `i`.
    pub input_order: Vec<usize>,
}

impl ParsedProblem {
    pub fn is_monomial(&self) -> bool {
        self.problem.is_monomial()
    }
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<Self, ProblemError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Conditions in file order, without sorting.
    pub fn to_problem(&self) -> Result<BirkhoffProblem, ProblemError> {
        let nodes = rationals("nodes", &self.nodes)?;
        let values = rationals("values", &self.values)?;
        match (&self.conditions, &self.incidence) {
            (Some(conditions), None) => {
                if conditions.is_empty() {
                    return Err(ConditionError::NoConditions.into());
                }
                let functionals = conditions
                    .iter()
                    .enumerate()
                    .map(|(i, spec)| {
                        let node = nodes.get(spec.node_index).cloned().ok_or_else(|| {
                            field_error(
                                format!("conditions[{i}].node_index"),
                                format!("node {} does not exist", spec.node_index),
                            )
                        })?;
                        let op = match &spec.operator {
                            OperatorSpec::Order { order } => DiffOperator::derivative(*order),
                            OperatorSpec::Coeffs { coeffs } => {
                                let field = format!("conditions[{i}].operator.coeffs");
                                DiffOperator::new(rationals(&field, coeffs)?)
                                    .map_err(|e| field_error(field, e))?
                            }
                        };
                        Ok(Functional::new(spec.node_index, node, op))
                    })
                    .collect::<Result<Vec<_>, ProblemError>>()?;
                Ok(BirkhoffProblem::new(nodes, functionals, values)?)
            }
            (None, Some(rows)) => {
                let incidence = IncidenceMatrix::new(rows.clone());
                Ok(BirkhoffProblem::from_incidence(nodes, &incidence, values)?)
            }
            _ => Err(ProblemError::ConditionSource),
        }
    }

    /// Serializes a problem with explicit conditions.
    pub fn from_problem(problem: &BirkhoffProblem) -> Self {
        let conditions = problem
            .functionals()
            .iter()
            .map(|l| ConditionSpec {
                node_index: l.node_index,
                operator: if l.op.is_monomial() {
                    OperatorSpec::Order {
                        order: l.top_order(),
                    }
                } else {
                    OperatorSpec::Coeffs {
                        coeffs: l.op.coeffs().iter().map(ToString::to_string).collect(),
                    }
                },
            })
            .collect();
        Self {
            nodes: problem.nodes().iter().map(ToString::to_string).collect(),
            conditions: Some(conditions),
            incidence: None,
            values: problem.values().iter().map(ToString::to_string).collect(),
        }
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem files always serialize")
    }
}

/// Parses and validates a problem file. Plain-derivative problems are put in
/// N-DOS order (rejecting duplicate conditions), others are stably sorted by
/// highest derivative order. `keep_order` leaves the file order untouched.
pub fn parse_problem(text: &str, keep_order: bool) -> Result<ParsedProblem, ProblemError> {
    let problem = ProblemFile::from_json(text)?.to_problem()?;
    let identity: Vec<usize> = (0..problem.len()).collect();
    if problem.is_monomial() {
        let (sorted, perm) = problem.sorted_ndos()?;
        if keep_order {
            return Ok(ParsedProblem {
                problem,
                input_order: identity,
            });
        }
        return Ok(ParsedProblem {
            problem: sorted,
            input_order: perm,
        });
    }
    if keep_order {
        return Ok(ParsedProblem {
            problem,
            input_order: identity,
        });
    }
    let (sorted, perm) = problem.sorted_by_highest_order();
    Ok(ParsedProblem {
        problem: sorted,
        input_order: perm,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

/// Machine-readable solve output; every number is an exact rational string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub algorithm: u8,
    /// File indices of the conditions in final order.
    pub final_order: Vec<usize>,
    pub conditions: Vec<String>,
    pub values: Vec<String>,
    pub monomial_exponents: Vec<usize>,
    pub newton_basis: Vec<String>,
    pub pivots: Vec<String>,
    pub interpolant: String,
    pub escalations: usize,
    pub escalation_steps: Vec<usize>,
    pub swaps: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<Vec<CheckRecord>>,
}

impl ResultRecord {
    pub fn new(
        parsed: &ParsedProblem,
        report: &SolveReport,
        verification: Option<&Verification>,
    ) -> Self {
        Self {
            algorithm: report.algorithm.number(),
            final_order: report
                .final_order
                .iter()
                .map(|&i| parsed.input_order[i])
                .collect(),
            conditions: report.functionals.iter().map(ToString::to_string).collect(),
            values: report.values.iter().map(ToString::to_string).collect(),
            monomial_exponents: report.monomial_exponents.clone(),
            newton_basis: report
                .newton_basis
                .iter()
                .map(ToString::to_string)
                .collect(),
            pivots: report.pivots.iter().map(ToString::to_string).collect(),
            interpolant: report.interpolant.to_string(),
            escalations: report.escalations.len(),
            escalation_steps: report.escalations.clone(),
            swaps: report.swaps.clone(),
            verification: verification.map(|v| {
                v.checks
                    .iter()
                    .map(|c| CheckRecord {
                        check: c.kind.name().to_string(),
                        passed: c.passed,
                        detail: c.detail.clone(),
                    })
                    .collect()
            }),
        }
    }
}
