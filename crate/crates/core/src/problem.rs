//! Problem representation and the basic feasibility predicates.
//!
//! A problem is a pair `(A, b)`: an m-by-n matrix of unit scalars and m
//! positive requirements. An assignment `x` in `[0,1]^n` is a solution when
//! every row satisfies `sum_j luk(a_ij, x_j) >= b_i`. The solution set, when
//! nonempty, is an up-set whose greatest element is the all-ones vector.

use std::cmp::Ordering;
use std::fmt;

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{luk, Rational, Requirement, UnitScalar};

/// The inequality system `(A, b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Problem {
    entries: Vec<Vec<UnitScalar>>,
    requirements: Vec<Requirement>,
}

impl Problem {
    /// Builds a problem from matrix rows and per-row requirements.
    ///
    /// The matrix must be nonempty and rectangular with at least one column,
    /// and `requirements` must have one entry per row.
    pub fn new(entries: Vec<Vec<UnitScalar>>, requirements: Vec<Requirement>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::input("matrix must have at least one row"));
        }
        let cols = entries[0].len();
        if cols == 0 {
            return Err(Error::input("matrix must have at least one column"));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::input(format!(
                    "matrix row {} has {} entries, expected {}",
                    i,
                    row.len(),
                    cols
                )));
            }
        }
        if requirements.len() != entries.len() {
            return Err(Error::input(format!(
                "{} requirements for {} matrix rows",
                requirements.len(),
                entries.len()
            )));
        }
        Ok(Problem {
            entries,
            requirements,
        })
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries[0].len()
    }

    pub fn row(&self, i: usize) -> &[UnitScalar] {
        &self.entries[i]
    }

    pub fn entry(&self, i: usize, j: usize) -> &UnitScalar {
        &self.entries[i][j]
    }

    pub fn requirement(&self, i: usize) -> &Requirement {
        &self.requirements[i]
    }

    pub fn requirements(&self) -> &[Requirement] {
        &self.requirements
    }

    /// `sum_j a_ij`, the row value at the all-ones assignment.
    pub fn row_entry_sum(&self, i: usize) -> Rational {
        self.entries[i]
            .iter()
            .fold(Rational::zero(), |acc, a| acc + a.ratio())
    }

    pub(crate) fn check_row_index(&self, i: usize) -> Result<()> {
        if i >= self.rows() {
            return Err(Error::input(format!(
                "row index {} out of range for {} rows",
                i,
                self.rows()
            )));
        }
        Ok(())
    }

    pub(crate) fn check_col_index(&self, j: usize) -> Result<()> {
        if j >= self.cols() {
            return Err(Error::input(format!(
                "column index {} out of range for {} columns",
                j,
                self.cols()
            )));
        }
        Ok(())
    }

    pub(crate) fn check_dimension(&self, x: &Assignment) -> Result<()> {
        if x.len() != self.cols() {
            return Err(Error::input(format!(
                "assignment has {} coordinates, problem has {} columns",
                x.len(),
                self.cols()
            )));
        }
        Ok(())
    }
}

/// A candidate point `x` in `[0,1]^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment(Vec<UnitScalar>);

impl Assignment {
    pub fn new(coords: Vec<UnitScalar>) -> Self {
        Assignment(coords)
    }

    /// The all-ones vector: the greatest solution of every solvable system.
    pub fn ones(n: usize) -> Self {
        Assignment(vec![UnitScalar::one(); n])
    }

    pub fn constant(n: usize, value: UnitScalar) -> Self {
        Assignment(vec![value; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[UnitScalar] {
        &self.0
    }

    pub fn coord(&self, j: usize) -> &UnitScalar {
        &self.0[j]
    }

    pub fn into_coords(self) -> Vec<UnitScalar> {
        self.0
    }

    /// Clone with coordinate `j` replaced.
    pub fn with_coord(&self, j: usize, value: UnitScalar) -> Self {
        let mut coords = self.0.clone();
        coords[j] = value;
        Assignment(coords)
    }

    /// Coordinatewise partial order. Panics if the lengths differ.
    pub fn le(&self, other: &Assignment) -> bool {
        assert_eq!(self.len(), other.len(), "comparing assignments of different length");
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Total lexicographic order, used for deterministic sorting and
    /// deduplication of result sets. Not the solution-set partial order.
    pub fn cmp_lex(&self, other: &Assignment) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// `sum_j luk(a_ij, x_j)` for row `i`. Lies in `[0, n]`.
pub fn row_value(p: &Problem, i: usize, x: &Assignment) -> Result<Rational> {
    p.check_row_index(i)?;
    p.check_dimension(x)?;
    Ok(p.row(i)
        .iter()
        .zip(x.coords())
        .fold(Rational::zero(), |acc, (a, xj)| {
            acc + luk(a, xj).into_ratio()
        }))
}

/// Whether `x` satisfies every row inequality.
pub fn is_solution(p: &Problem, x: &Assignment) -> Result<bool> {
    p.check_dimension(x)?;
    for i in 0..p.rows() {
        if row_value(p, i, x)? < *p.requirement(i).ratio() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The system is solvable iff every row entry sum reaches its requirement,
/// equivalently iff the all-ones vector is a solution.
pub fn is_solvable(p: &Problem) -> bool {
    (0..p.rows()).all(|i| p.row_entry_sum(i) >= *p.requirement(i).ratio())
}

/// The greatest solution: all-ones. Errors when the system is unsolvable.
pub fn greatest_solution(p: &Problem) -> Result<Assignment> {
    ensure_solvable(p)?;
    Ok(Assignment::ones(p.cols()))
}

pub(crate) fn ensure_solvable(p: &Problem) -> Result<()> {
    for i in 0..p.rows() {
        if p.row_entry_sum(i) < *p.requirement(i).ratio() {
            return Err(Error::infeasible(format!(
                "row {} entry sum {} is below requirement {}",
                i,
                crate::scalar::render_exact(&p.row_entry_sum(i)),
                p.requirement(i)
            )));
        }
    }
    Ok(())
}

pub(crate) fn ensure_solution(p: &Problem, x: &Assignment) -> Result<()> {
    if !is_solution(p, x)? {
        return Err(Error::input(format!("assignment {x} is not a solution")));
    }
    Ok(())
}

/// Coordinatewise maximum. The solution set is closed under this join.
pub fn join(x: &Assignment, y: &Assignment) -> Result<Assignment> {
    if x.len() != y.len() {
        return Err(Error::input(format!(
            "joining assignments of lengths {} and {}",
            x.len(),
            y.len()
        )));
    }
    Ok(Assignment::new(
        x.coords()
            .iter()
            .zip(y.coords())
            .map(|(a, b)| if a >= b { a.clone() } else { b.clone() })
            .collect(),
    ))
}

/// Whether the all-ones vector is the *only* solution.
///
/// With a strictly positive matrix this holds iff some row is tight at
/// all-ones (`sum_j a_ij = b_i`). When zeros are present, a tight row whose
/// entries are all nonzero is still sufficient; otherwise the verdict comes
/// from the column minima at all-ones: the solution set collapses to a point
/// iff every such minimum equals 1.
pub fn unique_solution_check(p: &Problem) -> Result<bool> {
    ensure_solvable(p)?;
    let tight_rows: Vec<usize> = (0..p.rows())
        .filter(|&i| p.row_entry_sum(i) == *p.requirement(i).ratio())
        .collect();
    let all_positive = (0..p.rows()).all(|i| p.row(i).iter().all(|a| a.ratio().is_positive()));
    if all_positive {
        return Ok(!tight_rows.is_empty());
    }
    if tight_rows
        .iter()
        .any(|&i| p.row(i).iter().all(|a| a.ratio().is_positive()))
    {
        return Ok(true);
    }
    let ones = Assignment::ones(p.cols());
    let deltas = crate::minimality::delta_vector(p, &ones)?;
    Ok(deltas.iter().all(|d| d.is_one()))
}
