//! Exact univariate Birkhoff interpolation.
//!
//! Conditions are functionals `L_i = δ(x_β) ∘ Σ c_a D^a`. The [`solver`]
//! builds, one condition at a time, a Newton-type basis (triangular under the
//! conditions), a strongly proper monomial basis, and the interpolant, using
//! only exact rational arithmetic. The [`oracle`] re-derives the same
//! quantities from generalized Vandermonde systems so every result can be
//! checked independently ([`verify`]).
//!
//! ```
//! use birkhoff::conditions::{BirkhoffProblem, ConditionPair};
//! use birkhoff::rational::int;
//! use birkhoff::solver::{algorithm1, default_cap};
//!
//! let pairs = [(0, 0), (1, 1), (1, 2), (2, 2)].map(|(b, a)| ConditionPair::new(b, a));
//! let problem = BirkhoffProblem::from_pairs(
//!     vec![int(1), int(2), int(3)],
//!     &pairs,
//!     vec![int(5), int(6), int(4), int(7)],
//! )
//! .unwrap();
//! let report = algorithm1(&problem, default_cap(&problem)).unwrap();
//! assert_eq!(report.interpolant.to_string(), "1/2*x^3 - x^2 + 4*x + 3/2");
//! ```

pub mod cli;
pub mod conditions;
pub mod oracle;
pub mod poly;
pub mod problem_file;
pub mod random;
pub mod rational;
pub mod solver;
pub mod verify;

pub use conditions::{BirkhoffProblem, ConditionPair, DiffOperator, Functional, IncidenceMatrix};
pub use poly::Polynomial;
pub use rational::Rational;
pub use solver::{algorithm1, algorithm2, Algorithm, SolveError, SolveReport};
