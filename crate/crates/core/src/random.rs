//! Seeded random differential testing of both solvers against the oracle.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::conditions::{BirkhoffProblem, ConditionPair};
use crate::rational::{frac, Rational};
use crate::solver::{algorithm1, algorithm2, default_cap};
use crate::verify::verify_report;

/// Twelve distinct nodes that random problems draw from.
pub fn node_pool() -> Vec<Rational> {
    [
        (-3, 1),
        (-2, 1),
        (-3, 2),
        (-1, 1),
        (-1, 2),
        (-1, 3),
        (0, 1),
        (1, 3),
        (1, 2),
        (1, 1),
        (2, 1),
        (3, 1),
    ]
    .iter()
    .map(|&(n, d)| frac(n, d))
    .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomConfig {
    pub count: usize,
    pub max_n: usize,
    pub max_order: usize,
    pub seed: u64,
}

impl Default for RandomConfig {
    fn default() -> Self {
        Self {
            count: 200,
            max_n: 6,
            max_order: 4,
            seed: 42,
        }
    }
}

/// A plain-derivative problem in N-DOS order with `1..=max_n` distinct
/// conditions. Only nodes that carry a condition are kept.
pub fn random_problem(rng: &mut impl Rng, max_n: usize, max_order: usize) -> BirkhoffProblem {
    let pool = node_pool();
    let n = rng.gen_range(1..=max_n.max(1));
    let mut slots: Vec<(usize, usize)> = (0..pool.len())
        .flat_map(|node| (0..=max_order).map(move |order| (node, order)))
        .collect();
    slots.shuffle(rng);
    slots.truncate(n);

    let used: BTreeSet<usize> = slots.iter().map(|&(node, _)| node).collect();
    let used: Vec<usize> = used.into_iter().collect();
    let nodes: Vec<Rational> = used.iter().map(|&i| pool[i].clone()).collect();
    let mut pairs: Vec<ConditionPair> = slots
        .iter()
        .map(|&(node, order)| ConditionPair::new(used.binary_search(&node).unwrap(), order))
        .collect();
    pairs.sort_by_key(|p| (p.alpha, p.beta));
    let values = (0..pairs.len())
        .map(|_| frac(rng.gen_range(-9..=9), rng.gen_range(1..=4)))
        .collect();
    BirkhoffProblem::from_pairs(nodes, &pairs, values).expect("generated problems are valid")
}

pub fn generate(config: &RandomConfig) -> Vec<BirkhoffProblem> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    (0..config.count)
        .map(|_| random_problem(&mut rng, config.max_n, config.max_order))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceOutcome {
    pub index: usize,
    pub n: usize,
    pub escalations: usize,
    pub swaps: usize,
    pub failures: Vec<String>,
}

impl InstanceOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs both algorithms and every oracle check on one problem.
pub fn check_instance(index: usize, problem: &BirkhoffProblem) -> InstanceOutcome {
    let cap = default_cap(problem);
    let mut failures = Vec::new();
    let mut escalations = 0;
    let mut swaps = 0;
    let first = match algorithm1(problem, cap) {
        Ok(report) => {
            escalations = report.escalations.len();
            let v = verify_report(problem.nodes(), &report);
            failures.extend(v.failures().map(|c| format!("algorithm 1 {c}")));
            Some(report)
        }
        Err(e) => {
            failures.push(format!("algorithm 1: {e}"));
            None
        }
    };
    match algorithm2(problem, cap) {
        Ok(report) => {
            swaps = report.swaps.len();
            let v = verify_report(problem.nodes(), &report);
            failures.extend(v.failures().map(|c| format!("algorithm 2 {c}")));
            if let Some(first) = &first {
                if report.swaps.is_empty() && !first.same_result(&report) {
                    failures.push("algorithms disagree without swaps".to_string());
                }
            }
        }
        Err(e) => failures.push(format!("algorithm 2: {e}")),
    }
    InstanceOutcome {
        index,
        n: problem.len(),
        escalations,
        swaps,
        failures,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomSummary {
    pub config: RandomConfig,
    pub outcomes: Vec<InstanceOutcome>,
}

impl RandomSummary {
    pub fn passed(&self) -> usize {
        self.outcomes.iter().filter(|o| o.passed()).count()
    }

    pub fn failed(&self) -> usize {
        self.outcomes.len() - self.passed()
    }

    pub fn failures(&self) -> impl Iterator<Item = &InstanceOutcome> {
        self.outcomes.iter().filter(|o| !o.passed())
    }

    /// Deterministic text report.
    pub fn render(&self) -> String {
        let c = &self.config;
        let mut out = String::new();
        writeln!(
            out,
            "random: count={} max-n={} max-order={} seed={}",
            c.count, c.max_n, c.max_order, c.seed
        )
        .unwrap();
        let escalated = self.outcomes.iter().filter(|o| o.escalations > 0).count();
        let swapped = self.outcomes.iter().filter(|o| o.swaps > 0).count();
        writeln!(out, "instances with escalation: {escalated}").unwrap();
        writeln!(out, "instances with swaps: {swapped}").unwrap();
        for o in self.failures() {
            writeln!(
                out,
                "FAIL #{} (N={}): {}",
                o.index,
                o.n,
                o.failures.join("; ")
            )
            .unwrap();
        }
        writeln!(out, "passed: {}", self.passed()).unwrap();
        writeln!(out, "failed: {}", self.failed()).unwrap();
        out
    }
}

/// Problems are generated sequentially from the seed and checked in parallel.
pub fn run_random(config: &RandomConfig) -> (RandomSummary, Vec<BirkhoffProblem>) {
    let problems = generate(config);
    let outcomes = problems
        .par_iter()
        .enumerate()
        .map(|(i, p)| check_instance(i, p))
        .collect();
    (
        RandomSummary {
            config: *config,
            outcomes,
        },
        problems,
    )
}
