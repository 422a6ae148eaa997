//! Brute-force reference checks for the solver.
//!
//! Everything here re-evaluates the row inequalities from the defining
//! formula `sum_j max(a_ij + x_j - 1, 0) >= b_i` with its own arithmetic,
//! deliberately not calling the solver's `luk`/`row_value` path, so that an
//! agreement between the two is evidence rather than tautology. The oracle
//! only enumerates finite grids: it can certify feasibility facts and
//! falsify minimality claims, but absence of a grid counterexample proves
//! nothing about the continuum.

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::problem::{Assignment, Problem};
use crate::scalar::{render_exact, Rational, UnitScalar};

/// Default bound on evaluated grid points.
pub const DEFAULT_GRID_CAP: u64 = 10_000_000;

/// A uniform grid `{0, step, 2*step, ..., 1}` plus optional extra points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSpec {
    step: Rational,
    extra_points: Vec<UnitScalar>,
}

impl GridSpec {
    /// `step` must be positive and divide 1 exactly.
    pub fn new(step: Rational) -> Result<Self> {
        if !step.is_positive() {
            return Err(Error::input(format!(
                "grid step {} must be positive",
                render_exact(&step)
            )));
        }
        if !step.recip().is_integer() {
            return Err(Error::input(format!(
                "grid step {} does not divide 1",
                render_exact(&step)
            )));
        }
        Ok(GridSpec {
            step,
            extra_points: Vec::new(),
        })
    }

    /// Grid with step `1/denominator`.
    pub fn from_denominator(denominator: u64) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::input("grid denominator must be positive"));
        }
        GridSpec::new(Rational::new(1.into(), denominator.into()))
    }

    /// Adds points every coordinate axis must contain besides the uniform
    /// ones, e.g. an exact optimum with an off-grid denominator.
    pub fn with_extra_points(mut self, points: Vec<UnitScalar>) -> Self {
        self.extra_points.extend(points);
        self
    }

    /// The per-coordinate candidate values, ascending and deduplicated.
    pub fn axis_points(&self) -> Result<Vec<UnitScalar>> {
        let denominator = num::ToPrimitive::to_u32(&self.step.recip().to_integer())
            .ok_or_else(|| Error::resource("grid step is too fine to enumerate"))?;
        let mut points: Vec<UnitScalar> = (0..=denominator)
            .map(|k| {
                UnitScalar::new(Rational::new(k.into(), denominator.into()))
                    .expect("grid points lie in [0, 1]")
            })
            .collect();
        points.extend(self.extra_points.iter().cloned());
        points.sort();
        points.dedup();
        Ok(points)
    }
}

/// Independent row check, straight from the composition formula.
fn satisfies(p: &Problem, coords: &[UnitScalar]) -> bool {
    for i in 0..p.rows() {
        let mut total = Rational::zero();
        for (j, coord) in coords.iter().enumerate() {
            let term = p.entry(i, j).ratio() + coord.ratio() - Rational::one();
            if term.is_positive() {
                total += term;
            }
        }
        if total < *p.requirement(i).ratio() {
            return false;
        }
    }
    true
}

fn checked_point_count(per_axis: &[usize], cap: u64) -> Result<()> {
    let mut total: u128 = 1;
    for &len in per_axis {
        total = total.saturating_mul(len as u128);
        if total > cap as u128 {
            return Err(Error::resource(format!(
                "grid of more than {cap} points; raise the cap to scan anyway"
            )));
        }
    }
    Ok(())
}

/// Lazily yields every feasible grid assignment in lexicographic order.
pub struct GridFeasible<'a> {
    problem: &'a Problem,
    axes: Vec<Vec<UnitScalar>>,
    indices: Vec<usize>,
    exhausted: bool,
}

impl<'a> GridFeasible<'a> {
    fn new(problem: &'a Problem, axes: Vec<Vec<UnitScalar>>) -> Self {
        let indices = vec![0; axes.len()];
        let exhausted = axes.iter().any(|a| a.is_empty());
        GridFeasible {
            problem,
            axes,
            indices,
            exhausted,
        }
    }

    fn current(&self) -> Vec<UnitScalar> {
        self.indices
            .iter()
            .zip(&self.axes)
            .map(|(&i, axis)| axis[i].clone())
            .collect()
    }

    fn advance(&mut self) {
        for pos in (0..self.indices.len()).rev() {
            self.indices[pos] += 1;
            if self.indices[pos] < self.axes[pos].len() {
                return;
            }
            self.indices[pos] = 0;
        }
        self.exhausted = true;
    }
}

impl Iterator for GridFeasible<'_> {
    type Item = Assignment;

    fn next(&mut self) -> Option<Assignment> {
        while !self.exhausted {
            let coords = self.current();
            self.advance();
            if satisfies(self.problem, &coords) {
                return Some(Assignment::new(coords));
            }
        }
        None
    }
}

/// Streams every grid assignment satisfying all rows, in lexicographic
/// order. An unsolvable problem gives an empty stream. Errs when the grid
/// has more than `cap` points.
pub fn grid_feasible<'a>(p: &'a Problem, g: &GridSpec, cap: u64) -> Result<GridFeasible<'a>> {
    let axis = g.axis_points()?;
    checked_point_count(&vec![axis.len(); p.cols()], cap)?;
    Ok(GridFeasible::new(p, vec![axis; p.cols()]))
}

/// The least grid value `t` whose constant vector is feasible.
///
/// The minimax optimum is attained at a constant vector, so a 1-D scan
/// suffices; when the grid contains the optimum's denominator the result is
/// exact. Errs as infeasible when even the all-ones vector fails.
pub fn grid_minimax_value(p: &Problem, g: &GridSpec, cap: u64) -> Result<UnitScalar> {
    let axis = g.axis_points()?;
    checked_point_count(&[axis.len()], cap)?;
    for t in axis {
        let coords = vec![t.clone(); p.cols()];
        if satisfies(p, &coords) {
            return Ok(t);
        }
    }
    Err(Error::infeasible(
        "no feasible constant vector on the grid; the system is unsolvable",
    ))
}

/// Full n-dimensional variant of [`grid_minimax_value`]: the least objective
/// over every feasible grid point. Exists to validate the constant-vector
/// reduction on tiny instances; exponentially more work.
pub fn grid_minimax_value_full(p: &Problem, g: &GridSpec, cap: u64) -> Result<UnitScalar> {
    let mut best: Option<UnitScalar> = None;
    for x in grid_feasible(p, g, cap)? {
        let z = x
            .coords()
            .iter()
            .max()
            .cloned()
            .expect("problems have at least one column");
        if best.as_ref().map(|b| z < *b).unwrap_or(true) {
            best = Some(z);
        }
    }
    best.ok_or_else(|| {
        Error::infeasible("no feasible grid point; the system is unsolvable")
    })
}

/// Searches for a solution strictly below `x` on the grid.
///
/// Per-coordinate candidates are the grid values at most `x_j`, plus `x_j`
/// itself so off-grid coordinates can be held fixed. `Some(y)` proves `x` is
/// not minimal; `None` only means the grid holds no counterexample.
pub fn falsify_minimality(
    p: &Problem,
    x: &Assignment,
    g: &GridSpec,
    cap: u64,
) -> Result<Option<Assignment>> {
    p.check_dimension(x)?;
    if !satisfies(p, x.coords()) {
        return Err(Error::input(format!("assignment {x} is not a solution")));
    }
    let axis = g.axis_points()?;
    let axes: Vec<Vec<UnitScalar>> = x
        .coords()
        .iter()
        .map(|xj| {
            let mut candidates: Vec<UnitScalar> =
                axis.iter().filter(|v| *v <= xj).cloned().collect();
            candidates.push(xj.clone());
            candidates.dedup();
            candidates
        })
        .collect();
    checked_point_count(&axes.iter().map(|a| a.len()).collect::<Vec<_>>(), cap)?;
    for y in GridFeasible::new(p, axes) {
        if y != *x {
            return Ok(Some(y));
        }
    }
    Ok(None)
}
