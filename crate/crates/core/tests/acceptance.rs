//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use birkhoff::oracle::{
    check_triangularity, det_exact, is_strongly_proper, leading_minors, oracle_interpolate, rank,
    solve_exact, vandermonde, ExactMatrix,
};
use birkhoff::random::{generate, RandomConfig};
use birkhoff::rational::{frac, int, Rational};
use birkhoff::solver::default_cap;
use birkhoff::{
    algorithm1, algorithm2, BirkhoffProblem, ConditionPair, DiffOperator, Functional, Polynomial,
    SolveError, SolveReport,
};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

/// Name, check, and whether the one-second golden limit applies.
type Criterion = (&'static str, fn() -> Outcome, bool);

fn poly(text: &str) -> Polynomial {
    text.parse().expect("literal polynomial")
}

fn polys(texts: &[&str]) -> Vec<Polynomial> {
    texts.iter().map(|t| poly(t)).collect()
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(label: &str, got: &T, want: &T) -> Result<(), String> {
    ensure(got == want, || {
        format!("{label}: got {got:?}, want {want:?}")
    })
}

fn expect_polys(label: &str, got: &[Polynomial], want: &[&str]) -> Result<(), String> {
    let got: Vec<String> = got.iter().map(|p| p.to_string()).collect();
    let want: Vec<String> = polys(want).iter().map(|p| p.to_string()).collect();
    expect_eq(label, &got, &want)
}

fn ints(values: &[i64]) -> Vec<Rational> {
    values.iter().map(|&v| int(v)).collect()
}

/// Checks the accepted columns against a triangular table given column by column.
fn expect_table(report: &SolveReport, table: &[&[&str]]) -> Result<(), String> {
    expect_eq("columns", &report.columns.len(), &table.len())?;
    for (k, (got, want)) in report.columns.iter().zip(table).enumerate() {
        expect_polys(&format!("column {k}"), got, want)?;
    }
    Ok(())
}

fn example1() -> BirkhoffProblem {
    let pairs = [(0, 0), (1, 1), (1, 2), (2, 2)].map(|(b, a)| ConditionPair::new(b, a));
    BirkhoffProblem::from_pairs(ints(&[1, 2, 3]), &pairs, ints(&[5, 6, 4, 7])).unwrap()
}

fn example2() -> BirkhoffProblem {
    let pairs = [(0, 0), (2, 0), (1, 1), (2, 1)].map(|(b, a)| ConditionPair::new(b, a));
    BirkhoffProblem::from_pairs(ints(&[-1, 0, 1]), &pairs, ints(&[2, 6, 4, 8])).unwrap()
}

fn op(coeffs: &[i64]) -> DiffOperator {
    DiffOperator::new(ints(coeffs)).unwrap()
}

fn example4() -> BirkhoffProblem {
    let nodes = ints(&[1, 2]);
    let fns = vec![
        Functional::new(0, int(1), op(&[0, 1])),
        Functional::new(1, int(2), op(&[1, 1])),
        Functional::new(0, int(1), op(&[1, 0, 1])),
        Functional::new(1, int(2), op(&[0, 0, 1, 1])),
    ];
    BirkhoffProblem::new(nodes, fns, ints(&[1, 3, 2, 4])).unwrap()
}

fn criterion1() -> Outcome {
    let problem = example1();
    let r = algorithm1(&problem, default_cap(&problem)).map_err(|e| e.to_string())?;
    expect_table(
        &r,
        &[
            &["1"],
            &["x", "x - 1"],
            &["x^2", "x^2 - 1", "x^2 - 4*x + 3"],
            &[
                "x^3",
                "x^3 - 1",
                "x^3 - 12*x + 11",
                "x^3 - 6*x^2 + 12*x - 7",
            ],
        ],
    )?;
    expect_polys(
        "newton basis",
        &r.newton_basis,
        &["1", "x - 1", "x^2 - 4*x + 3", "x^3 - 6*x^2 + 12*x - 7"],
    )?;
    expect_eq("pivots", &r.pivots, &ints(&[1, 1, 2, 6]))?;
    expect_eq(
        "interpolant",
        &r.interpolant,
        &poly("1/2*x^3 - x^2 + 4*x + 3/2"),
    )?;
    Ok(format!("p3 = {}", r.interpolant))
}

fn criterion2() -> Outcome {
    let problem = example2();
    let r = algorithm1(&problem, default_cap(&problem)).map_err(|e| e.to_string())?;
    expect_eq("monomials", &r.monomial_exponents, &vec![0, 1, 3, 4])?;
    expect_table(
        &r,
        &[
            &["1"],
            &["x", "x + 1"],
            &["x^3", "x^3 + 1", "x^3 - x"],
            &["x^4", "x^4 - 1", "x^4 - 1", "x^4 - 1"],
        ],
    )?;
    expect_polys(
        "newton basis",
        &r.newton_basis,
        &["1", "x + 1", "x^3 - x", "x^4 - 1"],
    )?;
    expect_eq("pivots", &r.pivots, &ints(&[1, 2, -1, 4]))?;
    expect_eq(
        "interpolant",
        &r.interpolant,
        &poly("5/2*x^4 - 2*x^3 + 4*x + 3/2"),
    )?;
    expect_eq("escalations", &r.escalations, &vec![3])?;
    Ok(format!("p3 = {}, escalation at k=3", r.interpolant))
}

fn criterion3() -> Outcome {
    let problem = example2();
    let r = algorithm2(&problem, default_cap(&problem)).map_err(|e| e.to_string())?;
    expect_eq("swaps", &r.swaps, &vec![(3, 4)])?;
    let x = ints(&[-1, 0, 1]);
    let order = vec![
        Functional::monomial(0, x[0].clone(), 0),
        Functional::monomial(2, x[2].clone(), 0),
        Functional::monomial(2, x[2].clone(), 1),
        Functional::monomial(1, x[1].clone(), 1),
    ];
    expect_eq("final order", &r.functionals, &order)?;
    expect_eq("values", &r.values, &ints(&[2, 6, 8, 4]))?;
    expect_polys(
        "newton basis",
        &r.newton_basis,
        &["1", "x + 1", "x^2 - 1", "x^3 - x^2 - x + 1"],
    )?;
    expect_eq(
        "interpolant",
        &r.interpolant,
        &poly("-2*x^3 + 5*x^2 + 4*x - 1"),
    )?;
    Ok(format!("one swap L3<->L4, p3 = {}", r.interpolant))
}

fn criterion4() -> Outcome {
    let problem = example4();
    let r = algorithm2(&problem, default_cap(&problem)).map_err(|e| e.to_string())?;
    expect_table(
        &r,
        &[
            &["x"],
            &["x^2", "x^2 - 2*x"],
            &["x^3", "x^3 - 3*x", "x^3 - 11/2*x^2 + 8*x"],
            &[
                "x^4",
                "x^4 - 4*x",
                "x^4 - 18*x^2 + 32*x",
                "x^4 - 6*x^3 + 15*x^2 - 16*x",
            ],
        ],
    )?;
    expect_eq(
        "interpolant",
        &r.interpolant,
        &poly("13/27*x^4 - 32/9*x^3 + 98/9*x^2 - 325/27*x"),
    )?;
    Ok(format!("p3 = {}", r.interpolant))
}

fn criterion5() -> Outcome {
    let problem = example1();
    let r = algorithm1(&problem, default_cap(&problem)).map_err(|e| e.to_string())?;
    expect_eq("degree", &r.interpolant.degree(), &Some(3))?;
    Ok("degree 3 (the cited prior method reports 6; not recomputed)".into())
}

fn criterion6_config() -> RandomConfig {
    RandomConfig {
        count: 200,
        max_n: 6,
        max_order: 4,
        seed: 42,
    }
}

/// Every property recomputed directly from the oracle.
fn check_random_instance(problem: &BirkhoffProblem) -> Result<(), String> {
    let r = algorithm1(problem, default_cap(problem)).map_err(|e| e.to_string())?;
    let fns = problem.functionals();
    check_triangularity(&r.newton_basis, fns).map_err(|e| format!("triangularity: {e:?}"))?;
    for (i, l) in fns.iter().enumerate() {
        ensure(l.apply(&r.interpolant) == problem.values()[i], || {
            format!("condition {i} not met")
        })?;
    }
    let basis = r.monomial_basis();
    let oracle = oracle_interpolate(&basis, problem).map_err(|e| e.to_string())?;
    ensure(oracle == r.interpolant, || {
        "interpolant differs from oracle".into()
    })?;
    ensure(is_strongly_proper(&basis, fns), || {
        "basis not strongly proper".into()
    })?;
    let minors = leading_minors(&basis, fns);
    for k in 0..fns.len() {
        let prev = if k == 0 {
            Rational::one()
        } else {
            minors[k - 1].clone()
        };
        let pivot = fns[k].apply(&r.newton_basis[k]);
        ensure(&pivot * &prev == minors[k], || {
            format!("determinant ratio fails at k={}", k + 1)
        })?;
    }
    Ok(())
}

fn criterion6() -> Outcome {
    let problems = generate(&criterion6_config());
    let mut escalated = 0;
    for (i, p) in problems.iter().enumerate() {
        check_random_instance(p).map_err(|e| format!("instance {i}: {e}"))?;
        escalated += usize::from(
            !algorithm1(p, default_cap(p))
                .unwrap()
                .escalations
                .is_empty(),
        );
    }
    Ok(format!(
        "{} instances, {escalated} with escalation",
        problems.len()
    ))
}

fn criterion7() -> Outcome {
    let node = int(2);
    let dup = Functional::new(1, node.clone(), op(&[1, 1]));
    let fns = vec![
        Functional::monomial(0, int(1), 0),
        dup.clone(),
        dup,
        Functional::monomial(1, node.clone(), 2),
    ];
    let problem = BirkhoffProblem::new(vec![int(1), node], fns, ints(&[1, 2, 2, 3])).unwrap();
    let cap = default_cap(&problem);
    match algorithm2(&problem, cap) {
        Err(SolveError::DependentConditions { step, .. }) => {
            let monomials: Vec<Polynomial> = (0..=cap).map(Polynomial::x_pow).collect();
            let r = rank(&vandermonde(&monomials, problem.functionals()));
            ensure(r < problem.len(), || format!("oracle rank {r} is full"))?;
            Ok(format!(
                "dependence at step {step}, oracle rank {r} < {} at cap {cap}",
                problem.len()
            ))
        }
        Err(e) => Err(format!("unexpected error {e}")),
        Ok(_) => Err("solver accepted dependent conditions".into()),
    }
}

/// Laplace expansion along the first row.
fn cofactor_det(rows: &[Vec<Rational>]) -> Rational {
    if rows.len() == 1 {
        return rows[0][0].clone();
    }
    (0..rows.len())
        .map(|col| {
            let minor: Vec<Vec<Rational>> = rows[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(j, _)| *j != col)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let term = &rows[0][col] * cofactor_det(&minor);
            if col % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .fold(Rational::zero(), |acc, t| acc + t)
}

fn criterion8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut singular = 0;
    for case in 0..100 {
        let n = rng.gen_range(1..=4);
        let mut entry = || frac(rng.gen_range(-5..=5), rng.gen_range(1..=3));
        let rows: Vec<Vec<Rational>> = (0..n).map(|_| (0..n).map(|_| entry()).collect()).collect();
        let rhs: Vec<Rational> = (0..n).map(|_| entry()).collect();
        let m = ExactMatrix::from_rows(rows.clone()).unwrap();
        let det = det_exact(&m).unwrap();
        expect_eq(&format!("case {case} det"), &det, &cofactor_det(&rows))?;
        match solve_exact(&m, &rhs) {
            Ok(a) => expect_eq(&format!("case {case} residual"), &m.mul_vec(&a), &rhs)?,
            Err(_) => {
                ensure(det.is_zero(), || {
                    format!("case {case}: solve failed on non-singular matrix")
                })?;
                singular += 1;
            }
        }
    }
    Ok(format!("100 matrices, {singular} singular"))
}

fn criterion9() -> Outcome {
    let problems = generate(&criterion6_config());
    let (mut steps, mut coincide) = (0, 0);
    for (i, p) in problems.iter().enumerate() {
        let r = algorithm1(p, default_cap(p)).map_err(|e| format!("instance {i}: {e}"))?;
        let minors = leading_minors(&r.monomial_basis(), p.functionals());
        for k in 0..p.len() {
            let prev = if k == 0 {
                Rational::one()
            } else {
                minors[k - 1].clone()
            };
            let ratio = &minors[k] / &prev;
            let pivot = &r.pivots[k];
            ensure(*pivot == ratio, || {
                format!("instance {i} k={}: pivot {pivot} vs ratio {ratio}", k + 1)
            })?;
            steps += 1;
            if pivot.recip() == ratio {
                coincide += 1;
            }
        }
    }
    Ok(format!(
        "pivot = det(V_k-1)/det(V_k-2) on all {steps} steps; reciprocal also equal on {coincide} (pivot = ±1)"
    ))
}

/// Golden criteria must stay well under a second.
const GOLDEN_LIMIT: Duration = Duration::from_secs(1);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 example 1 columns", criterion1, true),
        ("2 example 2 escalation", criterion2, true),
        ("3 example 3 swap", criterion3, true),
        ("4 example 4 columns", criterion4, true),
        ("5 degree comparison", criterion5, true),
        ("6 random oracle equivalence", criterion6, false),
        ("7 dependence detection", criterion7, true),
        ("8 oracle self-check", criterion8, false),
        ("9 pivot orientation", criterion9, false),
    ];
    let mut failed = 0;
    for (name, run, golden) in criteria {
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        if golden && elapsed >= GOLDEN_LIMIT && outcome.is_ok() {
            outcome = Err(format!("took {elapsed:?}"));
        }
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail} ({elapsed:.2?})"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail} ({elapsed:.2?})");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
