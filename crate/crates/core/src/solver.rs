//! Recursive construction of Newton-type bases and interpolants.
//!
//! Both algorithms keep a row of working monomials `g[-1][i] = x^(e_i)` and
//! process conditions one at a time. At step `k` the column
//! `g[-1][k-1], g[0][k-1], ..., g[k-2][k-1]` is built by eliminating the
//! previously accepted conditions from the working monomial:
//!
//! ```text
//! g[j][k-1] = g[j-1][k-1] - L_{j+1}(g[j-1][k-1]) / L_{j+1}(g[j-1][j]) * g[j-1][j]
//! ```
//!
//! The last entry is the candidate Newton polynomial. If `L_k` does not vanish
//! on it, the step is accepted and the interpolant is updated with
//!
//! ```text
//! p_{k-1} = p_{k-2} + (y_k - L_k(p_{k-2})) / L_k(g[k-2][k-1]) * g[k-2][k-1]
//! ```
//!
//! Otherwise [`Algorithm::Monomial`] raises the degree of every unaccepted
//! working monomial by one, while [`Algorithm::General`] first looks for a
//! later condition that does not vanish on the candidate and swaps it in.
//! Either way the escalation is bounded by a degree cap, so linearly dependent
//! conditions end in [`SolveError::DependentConditions`].

use num_traits::Zero;
use thiserror::Error;

use crate::conditions::{BirkhoffProblem, Functional};
use crate::poly::Polynomial;
use crate::rational::Rational;

/// Which recursion drives the solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// Plain derivative conditions; degree escalation only.
    Monomial,
    /// Differential-polynomial conditions; swaps before escalating.
    General,
}

impl Algorithm {
    pub fn number(self) -> u8 {
        match self {
            Algorithm::Monomial => 1,
            Algorithm::General => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    /// Every remaining condition vanished on the candidate and the working
    /// degree cannot be raised further. `certificate` is that candidate.
    #[error(
        "suspected dependent conditions: step {step} cannot be completed below degree cap {cap} \
         (remaining conditions all vanish on {certificate})"
    )]
    DependentConditions {
        step: usize,
        cap: usize,
        certificate: Polynomial,
    },
    #[error("degree cap {cap} is below the initial working degree {required}")]
    CapTooSmall { cap: usize, required: usize },
    #[error(
        "condition {index} ({functional}) is not a plain derivative; use the general algorithm"
    )]
    NotMonomial { index: usize, functional: String },
}

/// Default degree cap: highest order plus `N` plus an extra `8 N`.
pub fn default_cap(problem: &BirkhoffProblem) -> usize {
    problem.max_order() + 9 * problem.len()
}

/// Mutable state of one solve. Conditions are kept in their current order;
/// `order[i]` is the input index now sitting at position `i`.
#[derive(Debug, Clone)]
pub struct SolverState {
    functionals: Vec<Functional>,
    values: Vec<Rational>,
    order: Vec<usize>,
    exponents: Vec<usize>,
    newton: Vec<Polynomial>,
    pivots: Vec<Rational>,
    columns: Vec<Vec<Polynomial>>,
    partial: Polynomial,
    escalations: Vec<usize>,
    swaps: Vec<(usize, usize)>,
    cap: usize,
}

impl SolverState {
    /// Working monomials `x^(alpha_1 + i)` and `p = 0`; if `L_1` does not
    /// vanish on `x^(alpha_1)` the first step is accepted immediately.
    pub fn init(problem: &BirkhoffProblem, cap: usize) -> Result<Self, SolveError> {
        let n = problem.len();
        let start = problem.functionals()[0].top_order();
        let required = start + n - 1;
        if required > cap {
            return Err(SolveError::CapTooSmall { cap, required });
        }
        let mut state = Self {
            functionals: problem.functionals().to_vec(),
            values: problem.values().to_vec(),
            order: (0..n).collect(),
            exponents: (start..start + n).collect(),
            newton: Vec::with_capacity(n),
            pivots: Vec::with_capacity(n),
            columns: Vec::with_capacity(n),
            partial: Polynomial::zero(),
            escalations: Vec::new(),
            swaps: Vec::new(),
            cap,
        };
        let column = state.build_column(1);
        if !state.functionals[0].apply(column.last().unwrap()).is_zero() {
            state.accept_step(1, column);
        }
        Ok(state)
    }

    pub fn len(&self) -> usize {
        self.functionals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functionals.is_empty()
    }

    /// Number of accepted conditions.
    pub fn accepted(&self) -> usize {
        self.newton.len()
    }

    pub fn is_complete(&self) -> bool {
        self.accepted() == self.len()
    }

    pub fn partial(&self) -> &Polynomial {
        &self.partial
    }

    pub fn working_monomial(&self, position: usize) -> Polynomial {
        Polynomial::x_pow(self.exponents[position])
    }

    pub fn functionals(&self) -> &[Functional] {
        &self.functionals
    }

    /// Column `g[-1][k-1], g[0][k-1], ..., g[k-2][k-1]` for the 1-based step
    /// `k`, starting from the current working monomial. Requires steps
    /// `1..k` to be accepted.
    pub fn build_column(&self, k: usize) -> Vec<Polynomial> {
        debug_assert!(k >= 1 && k - 1 <= self.accepted());
        let mut g = self.working_monomial(k - 1);
        let mut column = Vec::with_capacity(k);
        column.push(g.clone());
        for j in 0..k - 1 {
            let value = self.functionals[j].apply(&g);
            if !value.is_zero() {
                g = g.sub_scaled(&(value / &self.pivots[j]), &self.newton[j]);
            }
            column.push(g.clone());
        }
        column
    }

    /// Accepts the candidate at the end of `column` for step `k`.
    ///
    /// Panics if `L_k` vanishes on the candidate; callers check the judgment
    /// condition first.
    pub fn accept_step(&mut self, k: usize, column: Vec<Polynomial>) {
        assert_eq!(k, self.accepted() + 1, "steps are accepted in order");
        let candidate = column.last().expect("column is never empty").clone();
        let l = &self.functionals[k - 1];
        let pivot = l.apply(&candidate);
        assert!(!pivot.is_zero(), "judgment condition violated at step {k}");
        let residual = &self.values[k - 1] - l.apply(&self.partial);
        if !residual.is_zero() {
            self.partial = &self.partial + &candidate.scale(&(residual / &pivot));
        }
        self.newton.push(candidate);
        self.pivots.push(pivot);
        self.columns.push(column);
    }

    /// Multiplies working monomials `k-1..N-1` by `x`.
    pub fn escalate(&mut self, k: usize, candidate: &Polynomial) -> Result<(), SolveError> {
        let top = *self.exponents.last().unwrap();
        if top + 1 > self.cap {
            return Err(SolveError::DependentConditions {
                step: k,
                cap: self.cap,
                certificate: candidate.clone(),
            });
        }
        for e in &mut self.exponents[k - 1..] {
            *e += 1;
        }
        self.escalations.push(k);
        Ok(())
    }

    /// Exchanges conditions at 1-based positions `a` and `b`, with their values.
    pub fn swap(&mut self, a: usize, b: usize) {
        self.functionals.swap(a - 1, b - 1);
        self.values.swap(a - 1, b - 1);
        self.order.swap(a - 1, b - 1);
        self.swaps.push((a, b));
    }

    /// Smallest `s >= 1` with `L_{k+s}(candidate) != 0`.
    fn swap_partner(&self, k: usize, candidate: &Polynomial) -> Option<usize> {
        (k + 1..=self.len()).find(|&m| !self.functionals[m - 1].apply(candidate).is_zero())
    }

    /// Runs the next step to acceptance.
    fn advance(&mut self, algorithm: Algorithm) -> Result<(), SolveError> {
        let k = self.accepted() + 1;
        loop {
            let column = self.build_column(k);
            let candidate = column.last().unwrap();
            if !self.functionals[k - 1].apply(candidate).is_zero() {
                self.accept_step(k, column);
                return Ok(());
            }
            if algorithm == Algorithm::General {
                if let Some(partner) = self.swap_partner(k, candidate) {
                    self.swap(k, partner);
                    self.accept_step(k, column);
                    return Ok(());
                }
            }
            let candidate = candidate.clone();
            self.escalate(k, &candidate)?;
        }
    }

    pub fn finish(self, algorithm: Algorithm) -> SolveReport {
        debug_assert!(self.is_complete());
        SolveReport {
            algorithm,
            monomial_exponents: self.exponents,
            newton_basis: self.newton,
            pivots: self.pivots,
            columns: self.columns,
            interpolant: self.partial,
            final_order: self.order,
            functionals: self.functionals,
            values: self.values,
            escalations: self.escalations,
            swaps: self.swaps,
        }
    }
}

/// Output of a solve, with every condition-indexed field in the final order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub algorithm: Algorithm,
    /// Exponents of the final working monomials.
    pub monomial_exponents: Vec<usize>,
    pub newton_basis: Vec<Polynomial>,
    /// `L_k(g[k-2][k-1])`.
    pub pivots: Vec<Rational>,
    /// The accepted column of auxiliary polynomials for each step.
    pub columns: Vec<Vec<Polynomial>>,
    pub interpolant: Polynomial,
    /// `final_order[i]` is the input index of the condition at position `i`.
    pub final_order: Vec<usize>,
    pub functionals: Vec<Functional>,
    pub values: Vec<Rational>,
    /// Step at which each degree escalation happened.
    pub escalations: Vec<usize>,
    /// 1-based `(k, k + s)` exchanges.
    pub swaps: Vec<(usize, usize)>,
}

impl SolveReport {
    pub fn monomial_basis(&self) -> Vec<Polynomial> {
        self.monomial_exponents
            .iter()
            .map(|&e| Polynomial::x_pow(e))
            .collect()
    }

    /// The problem rearranged into the final condition order.
    pub fn final_problem(&self, nodes: &[Rational]) -> BirkhoffProblem {
        BirkhoffProblem::new(
            nodes.to_vec(),
            self.functionals.clone(),
            self.values.clone(),
        )
        .expect("solver preserves problem validity")
    }

    /// True when everything but the algorithm tag matches.
    pub fn same_result(&self, other: &SolveReport) -> bool {
        let mut other = other.clone();
        other.algorithm = self.algorithm;
        *self == other
    }
}

fn run(
    problem: &BirkhoffProblem,
    cap: usize,
    algorithm: Algorithm,
) -> Result<SolveReport, SolveError> {
    let mut state = SolverState::init(problem, cap)?;
    while !state.is_complete() {
        state.advance(algorithm)?;
    }
    Ok(state.finish(algorithm))
}

/// Conditions must all be plain derivatives, used in the given order (N-DOS
/// order is expected; see [`BirkhoffProblem::sorted_ndos`]).
pub fn algorithm1(problem: &BirkhoffProblem, cap: usize) -> Result<SolveReport, SolveError> {
    if let Some(index) = problem
        .functionals()
        .iter()
        .position(|l| !l.op.is_monomial())
    {
        return Err(SolveError::NotMonomial {
            index,
            functional: problem.functionals()[index].to_string(),
        });
    }
    run(problem, cap, Algorithm::Monomial)
}

/// General conditions in the given order (ascending highest order is
/// expected; see [`BirkhoffProblem::sorted_by_highest_order`]).
pub fn algorithm2(problem: &BirkhoffProblem, cap: usize) -> Result<SolveReport, SolveError> {
    run(problem, cap, Algorithm::General)
}

pub fn solve(
    problem: &BirkhoffProblem,
    algorithm: Algorithm,
    cap: usize,
) -> Result<SolveReport, SolveError> {
    match algorithm {
        Algorithm::Monomial => algorithm1(problem, cap),
        Algorithm::General => algorithm2(problem, cap),
    }
}
