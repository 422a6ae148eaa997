//! Exact solver for systems of addition-Lukasiewicz fuzzy relational
//! inequalities.
//!
//! A problem is a matrix `A` of unit-interval coefficients and a vector `b`
//! of positive requirements; an assignment `x` is a solution when every row
//! satisfies `sum_j max(a_ij + x_j - 1, 0) >= b_i`. The crate decides
//! solvability, certifies and constructs minimal solutions, and minimizes
//! the largest coordinate over the solution set, all in exact rational
//! arithmetic: answers like `13/15` come out as `13/15`, never as a float.
//!
//! Modules:
//! - [`scalar`]: exact rationals on `[0, 1]`, parsing and rendering.
//! - [`problem`]: the system `(A, b)`, feasibility and solvability.
//! - [`minimality`]: column minima, minimality certificates, the
//!   coordinate-lowering reduction and its permutation sweep.
//! - [`minimax`]: least-largest-coordinate optimization and minimal optimal
//!   solutions.
//! - [`oracle`]: independent brute-force grid checks used for verification.

pub mod error;
pub mod minimality;
pub mod minimax;
pub mod oracle;
pub mod problem;
pub mod scalar;

pub use error::{Error, Result};
pub use minimality::{
    delta, delta_vector, enumerate_minimals, f_interval, is_minimal, permutations_lex,
    reduce_to_minimal, reduce_to_minimal_traced, single_coordinate_candidate, unique_minimal,
    MinimalityCertificate, Permutation, ReductionStep, ReductionTrace, Support,
    MAX_FULL_SWEEP_COLS,
};
pub use minimax::{
    minimal_optimal_solutions, objective, solve_minimax, solve_row, MinimaxResult, RowMinimaxTrace,
    RowOptimum, RowStep,
};
pub use oracle::{
    falsify_minimality, grid_feasible, grid_minimax_value, grid_minimax_value_full, GridFeasible,
    GridSpec, DEFAULT_GRID_CAP,
};
pub use problem::{
    greatest_solution, is_solution, is_solvable, join, row_value, unique_solution_check,
    Assignment, Problem,
};
pub use scalar::{luk, parse_rational, render_approx, render_exact, Rational, Requirement, UnitScalar};
