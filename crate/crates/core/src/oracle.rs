//! Brute-force verification through generalized Vandermonde systems.
//!
//! Row `i` of a Vandermonde matrix holds `L_i` applied to each basis
//! polynomial. Determinants, solves and ranks are computed with exact
//! fraction-free (Bareiss) elimination: every row is first cleared of
//! denominators, so elimination runs over big integers and each division is
//! exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::conditions::{BirkhoffProblem, Functional};
use crate::poly::Polynomial;
use crate::rational::{denominator_lcm, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("matrix rows have different lengths")]
    Ragged,
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("right-hand side has {len} entries for {rows} rows")]
    RhsLength { rows: usize, len: usize },
    #[error("not a proper basis: the system is singular")]
    Singular,
    #[error("dependent conditions: rank {rank} of {needed} reached by exponent {cap}")]
    Dependent {
        rank: usize,
        needed: usize,
        cap: usize,
    },
}

/// Dense row-major matrix of rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl ExactMatrix {
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, OracleError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(OracleError::Ragged);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![Rational::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = Rational::one();
        }
        Self {
            rows: n,
            cols: n,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.data[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[Rational] {
        &self.data[row * self.cols..(row + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Top-left `size x size` block.
    pub fn leading_block(&self, size: usize) -> Self {
        let rows = (0..size).map(|r| self.row(r)[..size].to_vec()).collect();
        Self::from_rows(rows).expect("leading block is rectangular")
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    fn square(&self) -> Result<usize, OracleError> {
        if self.rows != self.cols {
            return Err(OracleError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.rows)
    }

    /// Rows scaled to integers, plus the product of the scale factors.
    fn integer_rows(&self, extra: Option<&[Rational]>) -> (Vec<Vec<BigInt>>, BigInt) {
        let mut scale = BigInt::one();
        let rows = (0..self.rows)
            .map(|r| {
                let mut row: Vec<Rational> = self.row(r).to_vec();
                if let Some(extra) = extra {
                    row.push(extra[r].clone());
                }
                let lcm = denominator_lcm(&row);
                scale *= &lcm;
                let lcm = Rational::from_integer(lcm);
                row.iter().map(|v| (v * &lcm).to_integer()).collect()
            })
            .collect();
        (rows, scale)
    }
}

/// Fraction-free elimination over `cols` leading columns, skipping columns
/// without a pivot. Returns the pivot columns and the sign of the row
/// permutation. Rows are left in fraction-free echelon form.
fn bareiss(rows: &mut [Vec<BigInt>], cols: usize) -> (Vec<usize>, bool) {
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut negated = false;
    let width = rows.first().map_or(0, Vec::len);
    for col in 0..cols {
        let r = pivots.len();
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        if found != r {
            rows.swap(found, r);
            negated = !negated;
        }
        for i in r + 1..rows.len() {
            for j in col + 1..width {
                let value = &rows[r][col] * &rows[i][j] - &rows[i][col] * &rows[r][j];
                let (q, rem) = value.div_rem(&prev);
                debug_assert!(rem.is_zero(), "inexact Bareiss division");
                rows[i][j] = q;
            }
            rows[i][col] = BigInt::zero();
        }
        prev = rows[r][col].clone();
        pivots.push(col);
    }
    (pivots, negated)
}

/// Exact determinant of a square matrix.
pub fn det_exact(m: &ExactMatrix) -> Result<Rational, OracleError> {
    let n = m.square()?;
    if n == 0 {
        return Ok(Rational::one());
    }
    let (mut rows, scale) = m.integer_rows(None);
    let (pivots, negated) = bareiss(&mut rows, n);
    if pivots.len() < n {
        return Ok(Rational::zero());
    }
    let mut det = rows[n - 1][n - 1].clone();
    if negated {
        det = -det;
    }
    Ok(Rational::new(det, scale))
}

/// Solves `m * a = rhs` exactly.
pub fn solve_exact(m: &ExactMatrix, rhs: &[Rational]) -> Result<Vec<Rational>, OracleError> {
    let n = m.square()?;
    if rhs.len() != n {
        return Err(OracleError::RhsLength {
            rows: n,
            len: rhs.len(),
        });
    }
    let (mut rows, _) = m.integer_rows(Some(rhs));
    let (pivots, _) = bareiss(&mut rows, n);
    if pivots.len() < n {
        return Err(OracleError::Singular);
    }
    let mut solution = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rational::from_integer(rows[i][n].clone());
        for j in i + 1..n {
            acc -= Rational::from_integer(rows[i][j].clone()) * &solution[j];
        }
        solution[i] = acc / Rational::from_integer(rows[i][i].clone());
    }
    Ok(solution)
}

pub fn rank(m: &ExactMatrix) -> usize {
    let (mut rows, _) = m.integer_rows(None);
    bareiss(&mut rows, m.cols).0.len()
}

/// Entry `(i, j)` is `functionals[i]` applied to `basis[j]`.
pub fn vandermonde(basis: &[Polynomial], functionals: &[Functional]) -> ExactMatrix {
    let data = functionals
        .iter()
        .flat_map(|l| basis.iter().map(move |q| l.apply(q)))
        .collect();
    ExactMatrix {
        rows: functionals.len(),
        cols: basis.len(),
        data,
    }
}

/// The interpolant in span(`basis`), from a direct solve of the full system.
pub fn oracle_interpolate(
    basis: &[Polynomial],
    problem: &BirkhoffProblem,
) -> Result<Polynomial, OracleError> {
    let v = vandermonde(basis, problem.functionals());
    let coeffs = solve_exact(&v, problem.values())?;
    Ok(basis
        .iter()
        .zip(&coeffs)
        .fold(Polynomial::zero(), |acc, (q, a)| &acc + &q.scale(a)))
}

/// Determinants of the leading principal blocks, sizes `1..=N`.
pub fn leading_minors(basis: &[Polynomial], functionals: &[Functional]) -> Vec<Rational> {
    let v = vandermonde(basis, functionals);
    let n = v.rows().min(v.cols());
    (1..=n)
        .map(|k| det_exact(&v.leading_block(k)).expect("leading block is square"))
        .collect()
}

/// Every leading principal minor is nonzero, under the given condition order.
pub fn is_strongly_proper(basis: &[Polynomial], functionals: &[Functional]) -> bool {
    basis.len() == functionals.len()
        && leading_minors(basis, functionals)
            .iter()
            .all(|d| !d.is_zero())
}

/// Smallest exponents, chosen greedily, whose monomials raise the rank of the
/// rectangular system against all `functionals` until it reaches `N`.
pub fn greedy_minimal_monomial_basis(
    functionals: &[Functional],
    cap: usize,
) -> Result<Vec<usize>, OracleError> {
    let needed = functionals.len();
    let mut chosen: Vec<usize> = Vec::with_capacity(needed);
    let mut basis: Vec<Polynomial> = Vec::with_capacity(needed);
    for exponent in 0..=cap {
        if chosen.len() == needed {
            break;
        }
        basis.push(Polynomial::x_pow(exponent));
        if rank(&vandermonde(&basis, functionals)) > chosen.len() {
            chosen.push(exponent);
        } else {
            basis.pop();
        }
    }
    if chosen.len() < needed {
        return Err(OracleError::Dependent {
            rank: chosen.len(),
            needed,
            cap,
        });
    }
    Ok(chosen)
}

/// Where a candidate Newton-type basis fails to be triangular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TriangularityViolation {
    LengthMismatch {
        basis: usize,
        functionals: usize,
    },
    /// `L_row(g_col) != 0` with `row < col`.
    NonZeroAbove {
        row: usize,
        col: usize,
        value: Rational,
    },
    /// `L_k(g_k) = 0`.
    ZeroPivot {
        index: usize,
    },
}

/// `L_i(g_j) = 0` for `i < j` and `L_j(g_j) != 0`; pivots need not be 1.
pub fn check_triangularity(
    newton_basis: &[Polynomial],
    functionals: &[Functional],
) -> Result<(), TriangularityViolation> {
    if newton_basis.len() != functionals.len() {
        return Err(TriangularityViolation::LengthMismatch {
            basis: newton_basis.len(),
            functionals: functionals.len(),
        });
    }
    for (col, g) in newton_basis.iter().enumerate() {
        for (row, l) in functionals.iter().enumerate().take(col) {
            let value = l.apply(g);
            if !value.is_zero() {
                return Err(TriangularityViolation::NonZeroAbove { row, col, value });
            }
        }
        if functionals[col].apply(g).is_zero() {
            return Err(TriangularityViolation::ZeroPivot { index: col });
        }
    }
    Ok(())
}
