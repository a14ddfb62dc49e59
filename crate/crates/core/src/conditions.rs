//! Interpolation conditions: incidence matrices, differential functionals and
//! the two condition orderings used by the solvers.

use std::collections::HashSet;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::poly::Polynomial;
use crate::rational::Rational;

/// First rule an incidence matrix breaks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IncidenceViolation {
    #[error("empty matrix")]
    Empty,
    #[error("ragged matrix: row {row} has {len} entries, expected {expected}")]
    Ragged {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("non-binary entry {value} at ({row}, {col})")]
    NonBinaryEntry { row: usize, col: usize, value: u32 },
    #[error("zero row {row}")]
    ZeroRow { row: usize },
    #[error("{ones} unit entries but {declared} conditions declared")]
    CountMismatch { ones: usize, declared: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConditionError {
    #[error("duplicate condition (node {beta}, order {alpha})")]
    DuplicateCondition { beta: usize, alpha: usize },
    #[error("condition references node {beta} but only {nodes} nodes exist")]
    NodeOutOfRange { beta: usize, nodes: usize },
    #[error("invalid incidence matrix: {0}")]
    Incidence(#[from] IncidenceViolation),
    #[error("differential operator has no nonzero coefficient")]
    ZeroOperator,
    #[error("nodes must be pairwise distinct (nodes {first} and {second} coincide)")]
    RepeatedNode { first: usize, second: usize },
    #[error("at least one condition is required")]
    NoConditions,
    #[error("{functionals} conditions but {values} values")]
    LengthMismatch { functionals: usize, values: usize },
    #[error("condition {index} is not of the form evaluation after a single derivative")]
    NotMonomial { index: usize },
}

/// Rows are nodes, columns are derivative orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    entries: Vec<Vec<u32>>,
}

impl IncidenceMatrix {
    /// Wraps raw entries without checking them; see [`IncidenceMatrix::validate`].
    pub fn new(entries: Vec<Vec<u32>>) -> Self {
        Self { entries }
    }

    pub fn entries(&self) -> &[Vec<u32>] {
        &self.entries
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }

    pub fn ones(&self) -> usize {
        self.entries.iter().flatten().filter(|&&e| e == 1).count()
    }

    /// Checks binary entries, no zero row, and (when given) the declared count.
    pub fn validate(&self, declared: Option<usize>) -> Result<(), IncidenceViolation> {
        let cols = self.cols();
        if self.entries.is_empty() || cols == 0 {
            return Err(IncidenceViolation::Empty);
        }
        for (row, entries) in self.entries.iter().enumerate() {
            if entries.len() != cols {
                return Err(IncidenceViolation::Ragged {
                    row,
                    len: entries.len(),
                    expected: cols,
                });
            }
            if let Some((col, &value)) = entries.iter().enumerate().find(|(_, &e)| e > 1) {
                return Err(IncidenceViolation::NonBinaryEntry { row, col, value });
            }
            if entries.iter().all(|&e| e == 0) {
                return Err(IncidenceViolation::ZeroRow { row });
            }
        }
        if let Some(declared) = declared {
            let ones = self.ones();
            if ones != declared {
                return Err(IncidenceViolation::CountMismatch { ones, declared });
            }
        }
        Ok(())
    }

    /// Unit entries in row-major order.
    pub fn pairs(&self) -> Vec<ConditionPair> {
        self.entries
            .iter()
            .enumerate()
            .flat_map(|(beta, row)| {
                row.iter()
                    .enumerate()
                    .filter(|(_, &e)| e == 1)
                    .map(move |(alpha, _)| ConditionPair { beta, alpha })
            })
            .collect()
    }

    /// Builds the matrix with `nodes` rows and `max(N, highest order + 1)`
    /// columns, the shape used for square Birkhoff problems.
    pub fn from_pairs(pairs: &[ConditionPair], nodes: usize) -> Result<Self, ConditionError> {
        check_distinct(pairs)?;
        let cols = pairs
            .iter()
            .map(|p| p.alpha + 1)
            .max()
            .unwrap_or(1)
            .max(pairs.len());
        let mut entries = vec![vec![0; cols]; nodes];
        for pair in pairs {
            let row = entries
                .get_mut(pair.beta)
                .ok_or(ConditionError::NodeOutOfRange {
                    beta: pair.beta,
                    nodes,
                })?;
            row[pair.alpha] = 1;
        }
        let matrix = Self { entries };
        matrix.validate(Some(pairs.len()))?;
        Ok(matrix)
    }

    /// Cumulative Pólya test: for every order `m` up to the highest order in
    /// use, at least `m + 1` conditions have order `<= m`.
    pub fn satisfies_polya(&self) -> bool {
        let cols = self.cols();
        let column_ones: Vec<usize> = (0..cols)
            .map(|col| {
                self.entries
                    .iter()
                    .filter(|row| row.get(col) == Some(&1))
                    .count()
            })
            .collect();
        let Some(last) = column_ones.iter().rposition(|&c| c > 0) else {
            return false;
        };
        let mut cumulative = 0;
        for (m, ones) in column_ones.iter().take(last + 1).enumerate() {
            cumulative += ones;
            if cumulative < m + 1 {
                return false;
            }
        }
        true
    }
}

/// Prescribes the `alpha`-th derivative at node `beta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConditionPair {
    pub beta: usize,
    pub alpha: usize,
}

impl ConditionPair {
    pub fn new(beta: usize, alpha: usize) -> Self {
        Self { beta, alpha }
    }
}

fn check_distinct(pairs: &[ConditionPair]) -> Result<(), ConditionError> {
    let mut seen = HashSet::with_capacity(pairs.len());
    for pair in pairs {
        if !seen.insert(*pair) {
            return Err(ConditionError::DuplicateCondition {
                beta: pair.beta,
                alpha: pair.alpha,
            });
        }
    }
    Ok(())
}

/// Sorts pairs by derivative order, then by node index.
pub fn order_ndos(pairs: &[ConditionPair]) -> Result<Vec<ConditionPair>, ConditionError> {
    check_distinct(pairs)?;
    let mut sorted = pairs.to_vec();
    sorted.sort_by_key(|p| (p.alpha, p.beta));
    Ok(sorted)
}

/// `sum_a coeffs[a] * D^a`, stored without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiffOperator {
    coeffs: Vec<Rational>,
}

impl DiffOperator {
    pub fn new(mut coeffs: Vec<Rational>) -> Result<Self, ConditionError> {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(ConditionError::ZeroOperator);
        }
        Ok(Self { coeffs })
    }

    /// Plain `D^order`.
    pub fn derivative(order: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); order + 1];
        coeffs[order] = Rational::one();
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Order of the highest derivative with a nonzero coefficient.
    pub fn top_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// True for exactly `D^m` with unit coefficient.
    pub fn is_monomial(&self) -> bool {
        self.coeffs[self.top_order()].is_one()
            && self.coeffs[..self.top_order()].iter().all(Zero::is_zero)
    }

    /// `(sum_a c_a D^a p)(x)`.
    pub fn apply_at(&self, p: &Polynomial, x: &Rational) -> Rational {
        let mut total = Rational::zero();
        let mut derived = p.clone();
        for c in &self.coeffs {
            if derived.is_zero() {
                break;
            }
            if !c.is_zero() {
                total += c * derived.eval(x);
            }
            derived = derived.derivative(1);
        }
        total
    }
}

impl fmt::Display for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (order, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (order, c.is_one()) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => f.write_str("D")?,
                (1, false) => write!(f, "{c}*D")?,
                (_, true) => write!(f, "D^{order}")?,
                (_, false) => write!(f, "{c}*D^{order}")?,
            }
        }
        Ok(())
    }
}

/// Evaluation at a node composed with a differential operator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Functional {
    pub node_index: usize,
    pub node: Rational,
    pub op: DiffOperator,
}

impl Functional {
    pub fn new(node_index: usize, node: Rational, op: DiffOperator) -> Self {
        Self {
            node_index,
            node,
            op,
        }
    }

    pub fn monomial(node_index: usize, node: Rational, order: usize) -> Self {
        Self::new(node_index, node, DiffOperator::derivative(order))
    }

    pub fn apply(&self, p: &Polynomial) -> Rational {
        self.op.apply_at(p, &self.node)
    }

    pub fn top_order(&self) -> usize {
        self.op.top_order()
    }

    /// The `(node, order)` pair when the operator is a plain derivative.
    pub fn as_pair(&self) -> Option<ConditionPair> {
        self.op
            .is_monomial()
            .then(|| ConditionPair::new(self.node_index, self.op.top_order()))
    }
}

impl fmt::Display for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx = self.node_index;
        match (self.op.is_monomial(), self.op.top_order()) {
            (true, 0) => write!(f, "δ[x{idx}]"),
            (true, _) => write!(f, "δ[x{idx}]∘{}", self.op),
            _ if self.op.coeffs().len() == 1 => write!(f, "δ[x{idx}]∘{}", self.op),
            _ => write!(f, "δ[x{idx}]∘({})", self.op),
        }
    }
}

/// Stable sort by highest derivative order. Returns the permutation `perm`
/// with `sorted[i] = input[perm[i]]`.
pub fn order_by_highest_order(
    functionals: &[Functional],
    values: &[Rational],
) -> (Vec<Functional>, Vec<Rational>, Vec<usize>) {
    let mut perm: Vec<usize> = (0..functionals.len()).collect();
    perm.sort_by_key(|&i| functionals[i].top_order());
    let sorted_fns = perm.iter().map(|&i| functionals[i].clone()).collect();
    let sorted_vals = perm.iter().map(|&i| values[i].clone()).collect();
    (sorted_fns, sorted_vals, perm)
}

/// Nodes, ordered conditions and their prescribed values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BirkhoffProblem {
    nodes: Vec<Rational>,
    functionals: Vec<Functional>,
    values: Vec<Rational>,
}

impl BirkhoffProblem {
    /// Checks distinct nodes, matching lengths, and that every functional
    /// points at an existing node with the matching abscissa.
    pub fn new(
        nodes: Vec<Rational>,
        functionals: Vec<Functional>,
        values: Vec<Rational>,
    ) -> Result<Self, ConditionError> {
        for (i, a) in nodes.iter().enumerate() {
            if let Some(j) = nodes[i + 1..].iter().position(|b| b == a) {
                return Err(ConditionError::RepeatedNode {
                    first: i,
                    second: i + 1 + j,
                });
            }
        }
        if functionals.is_empty() {
            return Err(ConditionError::NoConditions);
        }
        if functionals.len() != values.len() {
            return Err(ConditionError::LengthMismatch {
                functionals: functionals.len(),
                values: values.len(),
            });
        }
        for l in &functionals {
            if nodes.get(l.node_index) != Some(&l.node) {
                return Err(ConditionError::NodeOutOfRange {
                    beta: l.node_index,
                    nodes: nodes.len(),
                });
            }
        }
        Ok(Self {
            nodes,
            functionals,
            values,
        })
    }

    /// Monomial conditions in the given order.
    pub fn from_pairs(
        nodes: Vec<Rational>,
        pairs: &[ConditionPair],
        values: Vec<Rational>,
    ) -> Result<Self, ConditionError> {
        let functionals = pairs
            .iter()
            .map(|p| {
                let node = nodes
                    .get(p.beta)
                    .cloned()
                    .ok_or(ConditionError::NodeOutOfRange {
                        beta: p.beta,
                        nodes: nodes.len(),
                    })?;
                Ok(Functional::monomial(p.beta, node, p.alpha))
            })
            .collect::<Result<Vec<_>, ConditionError>>()?;
        Self::new(nodes, functionals, values)
    }

    /// Conditions read row-major from `incidence`; `values` follow the same order.
    pub fn from_incidence(
        nodes: Vec<Rational>,
        incidence: &IncidenceMatrix,
        values: Vec<Rational>,
    ) -> Result<Self, ConditionError> {
        incidence.validate(Some(values.len()))?;
        if incidence.rows() != nodes.len() {
            return Err(ConditionError::NodeOutOfRange {
                beta: incidence.rows().saturating_sub(1),
                nodes: nodes.len(),
            });
        }
        Self::from_pairs(nodes, &incidence.pairs(), values)
    }

    pub fn nodes(&self) -> &[Rational] {
        &self.nodes
    }

    pub fn functionals(&self) -> &[Functional] {
        &self.functionals
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.functionals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functionals.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.functionals.iter().all(|l| l.op.is_monomial())
    }

    pub fn max_order(&self) -> usize {
        self.functionals
            .iter()
            .map(Functional::top_order)
            .max()
            .unwrap_or(0)
    }

    /// Condition pairs, failing on the first non-monomial functional.
    pub fn pairs(&self) -> Result<Vec<ConditionPair>, ConditionError> {
        self.functionals
            .iter()
            .enumerate()
            .map(|(index, l)| l.as_pair().ok_or(ConditionError::NotMonomial { index }))
            .collect()
    }

    /// Reorders conditions by `perm`, where `result[i] = self[perm[i]]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        debug_assert_eq!(perm.len(), self.len());
        Self {
            nodes: self.nodes.clone(),
            functionals: perm.iter().map(|&i| self.functionals[i].clone()).collect(),
            values: perm.iter().map(|&i| self.values[i].clone()).collect(),
        }
    }

    /// N-DOS reordering of a monomial problem, with the applied permutation.
    pub fn sorted_ndos(&self) -> Result<(Self, Vec<usize>), ConditionError> {
        let pairs = self.pairs()?;
        check_distinct(&pairs)?;
        let mut perm: Vec<usize> = (0..pairs.len()).collect();
        perm.sort_by_key(|&i| (pairs[i].alpha, pairs[i].beta));
        Ok((self.permuted(&perm), perm))
    }

    /// Stable reordering by highest derivative order, with the applied permutation.
    pub fn sorted_by_highest_order(&self) -> (Self, Vec<usize>) {
        let (_, _, perm) = order_by_highest_order(&self.functionals, &self.values);
        (self.permuted(&perm), perm)
    }

    /// Incidence matrix of a monomial problem.
    pub fn incidence(&self) -> Result<IncidenceMatrix, ConditionError> {
        IncidenceMatrix::from_pairs(&self.pairs()?, self.nodes.len())
    }
}
