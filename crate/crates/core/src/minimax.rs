//! Minimizing the largest coordinate over the solution set.
//!
//! The objective `Z(x) = max_j x_j` always attains its minimum at a constant
//! vector, so the problem splits into one single-variable subproblem per row:
//! find the least `u` with `sum_j luk(a_ij, u) >= b_i`. Each subproblem is
//! solved by an active-set iteration whose candidate `u` only ever needs the
//! columns with `a_ij + u >= 1`; the active set shrinks strictly until the
//! row sum is exactly tight. The overall optimum is the largest per-row
//! optimum, and the constant vector there is the greatest optimal solution.

use std::collections::BTreeSet;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::minimality::{enumerate_minimals, is_minimal};
use crate::problem::{ensure_solvable, Assignment, Problem};
use crate::scalar::{luk, render_exact, Rational, Requirement, UnitScalar};

/// One iteration of the single-row active-set loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowStep {
    /// Iteration counter, starting at 0.
    pub k: usize,
    /// Candidate constant value at this iteration.
    pub u: UnitScalar,
    /// Columns j with `u >= 1 - a_ij`, i.e. those contributing unclamped.
    pub active_set: BTreeSet<usize>,
    /// `sum over the active set of luk(a_ij, u)`.
    pub row_sum: Rational,
}

/// Full record of one row subproblem solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowMinimaxTrace {
    pub row: usize,
    pub steps: Vec<RowStep>,
    pub final_u: UnitScalar,
}

/// Per-row optimum together with its iteration trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowOptimum {
    pub value: UnitScalar,
    pub trace: RowMinimaxTrace,
}

/// Result of the full minimax solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimaxResult {
    pub per_row: Vec<RowOptimum>,
    /// The optimal value: the largest per-row optimum.
    pub u_star: UnitScalar,
    /// The constant vector at `u_star`; dominates every optimal solution.
    pub greatest_optimal: Assignment,
    /// Equal to `u_star`.
    pub optimal_value: UnitScalar,
    /// True iff the greatest optimal solution is the *only* optimal
    /// solution, which happens exactly when it is a minimal solution.
    pub unique: bool,
}

/// `Z(x)`: the largest coordinate.
pub fn objective(x: &Assignment) -> Result<UnitScalar> {
    x.coords()
        .iter()
        .max()
        .cloned()
        .ok_or_else(|| Error::input("empty assignment has no objective value"))
}

/// Solves the single-row subproblem: the least constant `u` whose row value
/// reaches `b`. `row` only labels the trace.
///
/// Starts from `u = (b - sum_j a_j)/n + 1`, which is always feasible, and
/// repeatedly re-solves the tight equation on the current active set. Stops
/// when the active-set sum equals `b`; an unchanged active set must produce
/// a tight sum on the next iteration, so a repeat with a non-tight sum is
/// reported as an internal error.
pub fn solve_row(
    row: usize,
    entries: &[UnitScalar],
    b: &Requirement,
) -> Result<(UnitScalar, RowMinimaxTrace)> {
    if entries.is_empty() {
        return Err(Error::input("row has no entries"));
    }
    let n = entries.len();
    let entry_sum = entries
        .iter()
        .fold(Rational::zero(), |acc, a| acc + a.ratio());
    if entry_sum < *b.ratio() {
        return Err(Error::infeasible(format!(
            "row {} entry sum {} is below requirement {}",
            row,
            render_exact(&entry_sum),
            b
        )));
    }

    let to_unit = |r: Rational| UnitScalar::new(r).map_err(|e| Error::internal(e.to_string()));
    let mut u = to_unit((b.ratio() - &entry_sum) / Rational::from_integer(n.into()) + Rational::one())?;
    let mut steps: Vec<RowStep> = Vec::new();
    let mut previous_active: Option<BTreeSet<usize>> = None;

    for k in 0.. {
        let active: BTreeSet<usize> = (0..n)
            .filter(|&j| entries[j].ratio() + u.ratio() >= Rational::one())
            .collect();
        if active.is_empty() {
            return Err(Error::internal(format!(
                "empty active set in row {row} although the requirement is positive"
            )));
        }
        let row_sum = active
            .iter()
            .fold(Rational::zero(), |acc, &j| acc + luk(&entries[j], &u).into_ratio());
        steps.push(RowStep {
            k,
            u: u.clone(),
            active_set: active.clone(),
            row_sum: row_sum.clone(),
        });
        if row_sum == *b.ratio() {
            return Ok((
                u.clone(),
                RowMinimaxTrace {
                    row,
                    steps,
                    final_u: u,
                },
            ));
        }
        if row_sum < *b.ratio() {
            return Err(Error::internal(format!(
                "row {row} active-set sum {} fell below requirement {}",
                render_exact(&row_sum),
                b
            )));
        }
        if previous_active.as_ref() == Some(&active) {
            return Err(Error::internal(format!(
                "row {row} active set failed to shrink while its sum exceeds the requirement"
            )));
        }
        if k > n {
            return Err(Error::internal(format!(
                "row {row} iteration did not terminate within {} steps",
                n + 1
            )));
        }
        let active_entry_sum = active
            .iter()
            .fold(Rational::zero(), |acc, &j| acc + entries[j].ratio());
        u = to_unit(
            (b.ratio() - &active_entry_sum) / Rational::from_integer(active.len().into())
                + Rational::one(),
        )?;
        previous_active = Some(active);
    }
    unreachable!("loop exits by return")
}

/// Solves the minimax problem: every row subproblem, the combined optimum,
/// the greatest optimal solution and the uniqueness verdict.
pub fn solve_minimax(p: &Problem) -> Result<MinimaxResult> {
    ensure_solvable(p)?;
    let mut per_row = Vec::with_capacity(p.rows());
    for i in 0..p.rows() {
        let (value, trace) = solve_row(i, p.row(i), p.requirement(i))?;
        per_row.push(RowOptimum { value, trace });
    }
    let u_star = per_row
        .iter()
        .map(|r| &r.value)
        .max()
        .cloned()
        .expect("problems have at least one row");
    let greatest_optimal = Assignment::constant(p.cols(), u_star.clone());
    let unique = is_minimal(p, &greatest_optimal)?.minimal;
    Ok(MinimaxResult {
        per_row,
        u_star: u_star.clone(),
        greatest_optimal,
        optimal_value: u_star,
        unique,
    })
}

/// Minimal optimal solutions: minimal solutions lying below the greatest
/// optimal one. Every returned assignment attains the optimal value exactly.
/// Sorted lexicographically and deduplicated, like [`enumerate_minimals`].
pub fn minimal_optimal_solutions(
    p: &Problem,
    limit: usize,
    force_large: bool,
) -> Result<Vec<Assignment>> {
    let solved = solve_minimax(p)?;
    let found = enumerate_minimals(p, &solved.greatest_optimal, limit, force_large)?;
    debug_assert!(found
        .iter()
        .all(|x| objective(x).map(|z| z == solved.u_star).unwrap_or(false)));
    Ok(found)
}
