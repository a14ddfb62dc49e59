use birkhoff::oracle::{rank, vandermonde};
use birkhoff::rational::{frac, int, Rational};
use birkhoff::solver::{default_cap, SolverState};
use birkhoff::verify::verify_report;
use birkhoff::{
    algorithm1, algorithm2, BirkhoffProblem, ConditionPair, DiffOperator, Functional, Polynomial,
    SolveError,
};
use proptest::prelude::*;

fn pool() -> Vec<Rational> {
    vec![
        int(-2),
        int(-1),
        frac(-1, 2),
        int(0),
        frac(1, 3),
        int(1),
        int(3),
    ]
}

fn value() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=3).prop_map(|(n, d)| frac(n, d))
}

/// Plain-derivative problems in N-DOS order.
fn monomial_problem() -> impl Strategy<Value = BirkhoffProblem> {
    prop::collection::btree_set((0usize..7, 0usize..4), 1..=6)
        .prop_flat_map(|set| {
            let n = set.len();
            (Just(set), prop::collection::vec(value(), n))
        })
        .prop_map(|(set, values)| {
            let used: Vec<usize> = set
                .iter()
                .map(|p| p.0)
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect();
            let nodes: Vec<Rational> = used.iter().map(|&i| pool()[i].clone()).collect();
            let pairs: Vec<ConditionPair> = set
                .iter()
                .map(|&(b, a)| ConditionPair::new(used.binary_search(&b).unwrap(), a))
                .collect();
            let problem = BirkhoffProblem::from_pairs(nodes, &pairs, values).unwrap();
            problem.sorted_ndos().unwrap().0
        })
}

/// General differential-polynomial conditions sorted by highest order.
fn general_problem() -> impl Strategy<Value = BirkhoffProblem> {
    let op = prop::collection::vec(-2i64..=2, 1..=4).prop_filter_map("nonzero", |c| {
        DiffOperator::new(c.into_iter().map(int).collect()).ok()
    });
    prop::collection::vec(((0usize..3), op, value()), 1..=5).prop_map(|conds| {
        let nodes = vec![int(-1), int(0), int(2)];
        let functionals = conds
            .iter()
            .map(|(i, op, _)| Functional::new(*i, nodes[*i].clone(), op.clone()))
            .collect();
        let values = conds.into_iter().map(|c| c.2).collect();
        let problem = BirkhoffProblem::new(nodes, functionals, values).unwrap();
        problem.sorted_by_highest_order().0
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    /// Success is always verified; the only failure mode is a dependence report.
    #[test]
    fn algorithm1_verifies(problem in monomial_problem()) {
        let report = match algorithm1(&problem, default_cap(&problem)) {
            Ok(r) => r,
            Err(SolveError::DependentConditions { .. }) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(format!("unexpected error {e}"))),
        };
        prop_assert_eq!(report.newton_basis.len(), problem.len());
        let v = verify_report(problem.nodes(), &report);
        prop_assert!(v.passed(), "{:?}", v.failures().collect::<Vec<_>>());
        prop_assert!(report.monomial_exponents.windows(2).all(|w| w[0] < w[1]));
        let top = *report.monomial_exponents.last().unwrap();
        prop_assert!(report.interpolant.degree().is_none_or(|d| d <= top));
    }

    #[test]
    fn algorithm2_verifies_and_agrees(problem in monomial_problem()) {
        let cap = default_cap(&problem);
        let r2 = algorithm2(&problem, cap).unwrap();
        let v = verify_report(problem.nodes(), &r2);
        prop_assert!(v.passed(), "{:?}", v.failures().collect::<Vec<_>>());
        if r2.swaps.is_empty() {
            prop_assert!(algorithm1(&problem, cap).unwrap().same_result(&r2));
        } else {
            // Without a swap available, the first algorithm must escalate past
            // the step where the second one swapped.
            if let Ok(r1) = algorithm1(&problem, cap) {
                prop_assert!(!r1.escalations.is_empty());
            }
        }
        let mut perm = r2.final_order.clone();
        perm.sort_unstable();
        prop_assert_eq!(perm, (0..problem.len()).collect::<Vec<_>>());
        for (i, &src) in r2.final_order.iter().enumerate() {
            prop_assert_eq!(&r2.values[i], &problem.values()[src]);
        }
    }

    /// Either a verified solve, or a dependence error that the oracle confirms
    /// over the monomials the solver can reach (`x^alpha_1` up to the cap).
    #[test]
    fn algorithm2_general_operators(problem in general_problem()) {
        let cap = default_cap(&problem);
        let start = problem.functionals()[0].top_order();
        let reachable: Vec<Polynomial> = (start..=cap).map(Polynomial::x_pow).collect();
        let full_rank = rank(&vandermonde(&reachable, problem.functionals())) == problem.len();
        match algorithm2(&problem, cap) {
            Ok(report) => {
                prop_assert!(full_rank);
                let v = verify_report(problem.nodes(), &report);
                prop_assert!(v.passed(), "{:?}", v.failures().collect::<Vec<_>>());
            }
            Err(SolveError::DependentConditions { certificate, .. }) => {
                prop_assert!(!full_rank);
                prop_assert!(!certificate.is_zero());
            }
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn partial_interpolant_tracks_accepted_conditions(problem in monomial_problem()) {
        let mut state = SolverState::init(&problem, default_cap(&problem)).unwrap();
        loop {
            let k = state.accepted();
            for i in 0..k {
                prop_assert_eq!(problem.functionals()[i].apply(state.partial()), problem.values()[i].clone());
            }
            if state.is_complete() {
                break;
            }
            // Drive one step through the public surface.
            let column = state.build_column(k + 1);
            for (j, g) in column.iter().enumerate().skip(1) {
                for l in &problem.functionals()[..j] {
                    prop_assert_eq!(l.apply(g), Rational::from_integer(0.into()));
                }
            }
            let candidate = column.last().unwrap().clone();
            if problem.functionals()[k].apply(&candidate) != Rational::from_integer(0.into()) {
                state.accept_step(k + 1, column);
            } else if state.escalate(k + 1, &candidate).is_err() {
                break;
            }
        }
    }
}

#[test]
fn proportional_functionals_are_dependent() {
    // L_2 = 2 L_1.
    let l1 = Functional::new(0, int(1), DiffOperator::new(vec![int(1), int(1)]).unwrap());
    let l2 = Functional::new(0, int(1), DiffOperator::new(vec![int(2), int(2)]).unwrap());
    let problem = BirkhoffProblem::new(vec![int(1)], vec![l1, l2], vec![int(1), int(2)]).unwrap();
    let err = algorithm2(&problem, default_cap(&problem)).unwrap_err();
    assert!(matches!(
        err,
        SolveError::DependentConditions { step: 2, .. }
    ));
}

/// Independent conditions whose interpolant needs a monomial below `x^alpha_1`:
/// the search starts at `x^1`, so it reports dependence.
#[test]
fn lower_order_terms_below_start_degree() {
    let l1 = Functional::new(0, int(0), DiffOperator::derivative(1));
    let l2 = Functional::new(0, int(0), DiffOperator::new(vec![int(1), int(-1)]).unwrap());
    let fns = vec![l1, l2];
    let problem = BirkhoffProblem::new(vec![int(0)], fns.clone(), vec![int(0), int(0)]).unwrap();
    let all: Vec<Polynomial> = (0..=2).map(Polynomial::x_pow).collect();
    assert_eq!(rank(&vandermonde(&all, &fns)), 2);
    let err = algorithm2(&problem, default_cap(&problem)).unwrap_err();
    assert!(matches!(
        err,
        SolveError::DependentConditions { step: 2, .. }
    ));
}

/// `p'(-1), p'(0), p''(-1/2), p'''(0)`: independent, yet escalating at step 3
/// pushes `x^3` out of reach, and `D^3` at 0 then vanishes on every candidate.
/// The first algorithm runs into the cap; the second swaps at step 3 and
/// finishes.
#[test]
fn escalation_can_skip_a_needed_monomial() {
    let nodes = vec![int(-1), frac(-1, 2), int(0)];
    let pairs = [(0, 1), (2, 1), (1, 2), (2, 3)].map(|(b, a)| ConditionPair::new(b, a));
    let problem =
        BirkhoffProblem::from_pairs(nodes, &pairs, vec![int(1), int(2), int(3), int(4)]).unwrap();
    assert_eq!(problem.sorted_ndos().unwrap().1, vec![0, 1, 2, 3]);
    assert_eq!(
        birkhoff::oracle::greedy_minimal_monomial_basis(problem.functionals(), 10).unwrap(),
        vec![1, 2, 3, 4]
    );
    let cap = default_cap(&problem);
    let err = algorithm1(&problem, cap).unwrap_err();
    assert!(matches!(
        err,
        SolveError::DependentConditions { step: 4, .. }
    ));

    let report = algorithm2(&problem, cap).unwrap();
    assert_eq!(report.swaps, vec![(3, 4)]);
    assert!(verify_report(problem.nodes(), &report).passed());
}
