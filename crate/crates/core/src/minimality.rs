//! Minimal solutions of the inequality system.
//!
//! A solution is minimal when no strictly smaller solution exists. Two
//! equivalent characterizations drive everything here: a solution is minimal
//! iff some row is tight with `a_ij + x_j - 1 > 0` on the whole support, and
//! iff every coordinate is a fixed point of its column minimum `delta_j`.
//! The reduction loop lowers one coordinate at a time to that minimum, which
//! turns any solution into a minimal one lying below it.

use std::collections::{BTreeMap, BTreeSet};

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::problem::{ensure_solution, ensure_solvable, is_solution, row_value, Assignment, Problem};
use crate::scalar::{luk, render_exact, Rational, UnitScalar};

/// Columns where an assignment is strictly positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Support(BTreeSet<usize>);

impl Support {
    pub fn of(x: &Assignment) -> Self {
        Support(
            x.coords()
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(j, _)| j)
                .collect(),
        )
    }

    pub fn indices(&self) -> &BTreeSet<usize> {
        &self.0
    }

    pub fn contains(&self, j: usize) -> bool {
        self.0.contains(&j)
    }
}

/// Witness produced by [`is_minimal`].
///
/// A solution is minimal iff every support coordinate is pinned by some
/// tight row that is strict (`a_ij + x_j - 1 > 0`) at that coordinate,
/// equivalently iff the assignment equals its own `fixed_point_deltas`.
/// Usually one tight row pins the whole support at once; `tight_row` then
/// names it and every `strict_flags` entry is true. Systems exist where the
/// pinning is shared across several tight rows with no single row strict
/// everywhere (e.g. entries `[[1, 0.1], [0.1, 1]]` with both requirements
/// `0.5` at the solution `(0.5, 0.5)`); the certificate then reports the
/// first tight row and the flags record where it falls short.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalityCertificate {
    pub minimal: bool,
    /// A tight row strict on the whole support when one exists, otherwise
    /// the first tight row. Present whenever `minimal` is true.
    pub tight_row: Option<usize>,
    pub support: Support,
    /// Strictness of `tight_row` at each support coordinate.
    pub strict_flags: BTreeMap<usize, bool>,
    /// The column minima of the assignment; equal to the assignment exactly
    /// when it is minimal.
    pub fixed_point_deltas: Vec<UnitScalar>,
}

/// A rearrangement of the column indices `0..n`, fixing the order in which
/// the reduction lowers coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &j in &order {
            if j >= n || seen[j] {
                return Err(Error::input(format!(
                    "permutation {order:?} is not a rearrangement of 0..{n}"
                )));
            }
            seen[j] = true;
        }
        Ok(Permutation(order))
    }

    pub fn order(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// All permutations of `0..n` in lexicographic order, starting from the
/// identity. Lazy; `n!` items.
pub fn permutations_lex(n: usize) -> impl Iterator<Item = Permutation> {
    Permutations {
        next: Some((0..n).collect()),
    }
}

struct Permutations {
    next: Option<Vec<usize>>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut following = current.clone();
        if next_permutation(&mut following) {
            self.next = Some(following);
        }
        Some(Permutation(current))
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut k = v.len() - 1;
    while v[k] <= v[i - 1] {
        k -= 1;
    }
    v.swap(i - 1, k);
    v[i..].reverse();
    true
}

fn row_values(p: &Problem, x: &Assignment) -> Result<Vec<Rational>> {
    (0..p.rows()).map(|i| row_value(p, i, x)).collect()
}

/// Column minimum with the per-row values of `x` already in hand.
///
/// For each row, removing column j leaves residual `R_i`; the row then needs
/// `luk(a_ij, t) >= b_i - R_i`, i.e. `t >= 1 - a_ij + b_i - R_i` whenever the
/// right side of the first inequality is positive. The minimum admissible t
/// is the largest such bound, clamped at zero.
fn delta_from_row_values(
    p: &Problem,
    x: &Assignment,
    j: usize,
    values: &[Rational],
) -> Result<UnitScalar> {
    let mut low = Rational::zero();
    for (i, value) in values.iter().enumerate() {
        let residual = value - luk(p.entry(i, j), x.coord(j)).into_ratio();
        let need = p.requirement(i).ratio() - &residual;
        if need.is_positive() {
            let bound = Rational::one() - p.entry(i, j).ratio() + need;
            if bound > low {
                low = bound;
            }
        }
    }
    if &low > x.coord(j).ratio() {
        // cannot happen for a solution: x_j itself is admissible
        return Err(Error::internal(format!(
            "column minimum {} exceeds coordinate {} at column {}",
            render_exact(&low),
            x.coord(j),
            j
        )));
    }
    UnitScalar::new(low).map_err(|e| Error::internal(e.to_string()))
}

/// `delta_j(x)`: the least value coordinate `j` can take while the rest of
/// the solution `x` stays fixed and every row still holds.
pub fn delta(p: &Problem, x: &Assignment, j: usize) -> Result<UnitScalar> {
    p.check_col_index(j)?;
    ensure_solution(p, x)?;
    delta_from_row_values(p, x, j, &row_values(p, x)?)
}

/// All column minima of the solution `x` at once.
pub fn delta_vector(p: &Problem, x: &Assignment) -> Result<Vec<UnitScalar>> {
    ensure_solution(p, x)?;
    let values = row_values(p, x)?;
    (0..p.cols())
        .map(|j| delta_from_row_values(p, x, j, &values))
        .collect()
}

/// The feasible replacement interval for coordinate `j` of solution `x`:
/// exactly `[delta_j(x), 1]`. A value `t` is admissible iff `t >= low`.
pub fn f_interval(p: &Problem, x: &Assignment, j: usize) -> Result<(UnitScalar, UnitScalar)> {
    Ok((delta(p, x, j)?, UnitScalar::one()))
}

/// Decides minimality of the solution `x` and returns the full certificate.
///
/// The row-structural form (every support coordinate has a tight row strict
/// at it) and the fixed-point form (`x_j = delta_j(x)` for all j) are both
/// evaluated; they are provably equivalent, so a disagreement is reported as
/// an internal error rather than papered over.
pub fn is_minimal(p: &Problem, x: &Assignment) -> Result<MinimalityCertificate> {
    ensure_solution(p, x)?;
    let values = row_values(p, x)?;
    let support = Support::of(x);

    let strict = |i: usize, j: usize| -> bool {
        (p.entry(i, j).ratio() + x.coord(j).ratio() - Rational::one()).is_positive()
    };
    let tight_rows: Vec<usize> = (0..p.rows())
        .filter(|&i| values[i] == *p.requirement(i).ratio())
        .collect();
    let structural = support
        .indices()
        .iter()
        .all(|&j| tight_rows.iter().any(|&i| strict(i, j)));

    let fixed_point_deltas: Vec<UnitScalar> = (0..p.cols())
        .map(|j| delta_from_row_values(p, x, j, &values))
        .collect::<Result<_>>()?;
    let fixed_point = fixed_point_deltas
        .iter()
        .zip(x.coords())
        .all(|(d, xj)| d == xj);
    if structural != fixed_point {
        return Err(Error::internal(format!(
            "minimality characterizations disagree at {x}: row-structural says {structural}, fixed-point says {fixed_point}"
        )));
    }
    let minimal = fixed_point;

    let single_row_witness = tight_rows
        .iter()
        .copied()
        .find(|&i| support.indices().iter().all(|&j| strict(i, j)));
    let report_row = single_row_witness.or_else(|| tight_rows.first().copied());
    let strict_flags = report_row
        .map(|i| {
            support
                .indices()
                .iter()
                .map(|&j| (j, strict(i, j)))
                .collect()
        })
        .unwrap_or_default();

    Ok(MinimalityCertificate {
        minimal,
        tight_row: report_row,
        support,
        strict_flags,
        fixed_point_deltas,
    })
}

/// The one-coordinate construction: all coordinates 1 except position `j`,
/// which takes `max_i max(0, 1 + b_i - sum_t a_it)`.
///
/// The result is always a solution. `certified` is true only when the
/// sufficient hypotheses hold (every matrix entry positive and
/// `a_ij + y_j - 1 > 0` for every row), in which case the result is
/// guaranteed minimal; otherwise run [`is_minimal`] to find out.
pub fn single_coordinate_candidate(p: &Problem, j: usize) -> Result<(Assignment, bool)> {
    p.check_col_index(j)?;
    ensure_solvable(p)?;
    let mut level = Rational::zero();
    for i in 0..p.rows() {
        let bound = Rational::one() + p.requirement(i).ratio() - p.row_entry_sum(i);
        if bound > level {
            level = bound;
        }
    }
    let level = UnitScalar::new(level).map_err(|e| Error::internal(e.to_string()))?;
    let y = Assignment::ones(p.cols()).with_coord(j, level);
    if !is_solution(p, &y)? {
        return Err(Error::internal(format!(
            "one-coordinate candidate {y} is not a solution"
        )));
    }
    let all_positive = (0..p.rows()).all(|i| p.row(i).iter().all(|a| a.ratio().is_positive()));
    let strict = (0..p.rows()).all(|i| {
        (p.entry(i, j).ratio() + y.coord(j).ratio() - Rational::one()).is_positive()
    });
    Ok((y, all_positive && strict))
}

/// One coordinate-lowering step of the reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    pub column: usize,
    pub delta: UnitScalar,
}

/// What the reduction did: the column minima at all-ones probed first, and
/// either the shortcut verdict or the sequence of lowering steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    /// `delta_j` at the all-ones solution, for every column.
    pub initial_deltas: Vec<UnitScalar>,
    /// True when the initial-delta vector was itself a solution (it is then
    /// the unique minimal solution) and was returned directly.
    pub shortcut: bool,
    pub steps: Vec<ReductionStep>,
}

fn reduce_with_probe(
    p: &Problem,
    x: &Assignment,
    perm: &Permutation,
    probe: &Assignment,
    probe_is_solution: bool,
) -> Result<(Assignment, ReductionTrace)> {
    if perm.len() != p.cols() {
        return Err(Error::input(format!(
            "permutation over {} indices for {} columns",
            perm.len(),
            p.cols()
        )));
    }
    if probe_is_solution && probe.le(x) {
        return Ok((
            probe.clone(),
            ReductionTrace {
                initial_deltas: probe.coords().to_vec(),
                shortcut: true,
                steps: Vec::new(),
            },
        ));
    }
    let mut current = x.clone();
    let mut steps = Vec::with_capacity(p.cols());
    for &j in perm.order() {
        let value = delta_from_row_values(p, &current, j, &row_values(p, &current)?)?;
        current = current.with_coord(j, value.clone());
        steps.push(ReductionStep {
            column: j,
            delta: value,
        });
    }
    Ok((
        current,
        ReductionTrace {
            initial_deltas: probe.coords().to_vec(),
            shortcut: false,
            steps,
        },
    ))
}

fn ones_probe(p: &Problem) -> Result<(Assignment, bool)> {
    let ones = Assignment::ones(p.cols());
    let probe = Assignment::new(delta_vector(p, &ones)?);
    let feasible = is_solution(p, &probe)?;
    Ok((probe, feasible))
}

/// Lowers the solution `x` to a minimal solution below it, visiting columns
/// in the order given by `perm`, and reports the trace.
///
/// If the vector of column minima at all-ones is already a solution, it is
/// the unique minimal solution and is returned directly.
pub fn reduce_to_minimal_traced(
    p: &Problem,
    x: &Assignment,
    perm: &Permutation,
) -> Result<(Assignment, ReductionTrace)> {
    ensure_solution(p, x)?;
    let (probe, feasible) = ones_probe(p)?;
    reduce_with_probe(p, x, perm, &probe, feasible)
}

/// [`reduce_to_minimal_traced`] without the trace.
pub fn reduce_to_minimal(p: &Problem, x: &Assignment, perm: &Permutation) -> Result<Assignment> {
    Ok(reduce_to_minimal_traced(p, x, perm)?.0)
}

/// Full sweeps beyond this many columns are refused unless forced: the
/// permutation count is factorial in the column count.
pub const MAX_FULL_SWEEP_COLS: usize = 8;

/// Runs the reduction from `x` under every permutation in lexicographic
/// order, collecting distinct minimal solutions until `limit` of them are
/// found or all permutations are exhausted. Results are sorted
/// lexicographically.
///
/// `limit` bounds distinct results, not permutations tried. For more than
/// [`MAX_FULL_SWEEP_COLS`] columns the sweep is refused unless `force_large`
/// is set.
pub fn enumerate_minimals(
    p: &Problem,
    x: &Assignment,
    limit: usize,
    force_large: bool,
) -> Result<Vec<Assignment>> {
    ensure_solution(p, x)?;
    if limit == 0 {
        return Err(Error::input("limit must be positive"));
    }
    if p.cols() > MAX_FULL_SWEEP_COLS && !force_large {
        return Err(Error::resource(format!(
            "sweeping all {}! permutations of {} columns; re-run with the large-sweep override if intended",
            p.cols(),
            p.cols()
        )));
    }
    let (probe, feasible) = ones_probe(p)?;
    if feasible && probe.le(x) {
        // unique minimal solution: every permutation returns it
        return Ok(vec![probe]);
    }
    let mut found: Vec<Assignment> = Vec::new();
    for perm in permutations_lex(p.cols()) {
        let (reduced, _) = reduce_with_probe(p, x, &perm, &probe, feasible)?;
        if !found.contains(&reduced) {
            found.push(reduced);
            if found.len() == limit {
                break;
            }
        }
    }
    found.sort_by(|a, b| a.cmp_lex(b));
    Ok(found)
}

/// The unique minimal solution, if the system has one: the vector of column
/// minima at all-ones, exactly when that vector is itself a solution.
pub fn unique_minimal(p: &Problem) -> Result<Option<Assignment>> {
    ensure_solvable(p)?;
    let (probe, feasible) = ones_probe(p)?;
    Ok(if feasible { Some(probe) } else { None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::test_support::{asg, example1, example2, example6, prob};

    fn u(text: &str) -> UnitScalar {
        UnitScalar::parse(text).unwrap()
    }

    #[test]
    fn delta_examples() {
        let p1 = example1();
        assert_eq!(delta(&p1, &Assignment::ones(3), 0).unwrap(), u("0.6"));
        assert_eq!(delta(&p1, &asg(&["0.8", "0.9", "1"]), 0).unwrap(), u("0.7"));
        let p6 = example6();
        let x = asg(&["5/6", "5/6", "5/6", "5/6", "5/6"]);
        assert_eq!(delta(&p6, &x, 0).unwrap(), u("7/15"));
    }

    #[test]
    fn delta_requires_a_solution() {
        let p = example1();
        let err = delta(&p, &asg(&["0", "0", "0"]), 0);
        assert!(matches!(err, Err(Error::Input(_))));
        assert!(delta(&p, &Assignment::ones(3), 3).is_err());
    }

    #[test]
    fn f_interval_examples() {
        let p1 = example1();
        assert_eq!(
            f_interval(&p1, &Assignment::ones(3), 1).unwrap(),
            (u("0.6"), u("1"))
        );
        assert_eq!(
            f_interval(&p1, &asg(&["0.7", "0.9", "1"]), 2).unwrap(),
            (u("1"), u("1"))
        );
        // no binding row: every coordinate value is admissible
        let slack = prob(&[&["0.5", "0.5"]], &["0.2"]);
        assert_eq!(
            f_interval(&slack, &Assignment::ones(2), 0).unwrap(),
            (u("0"), u("1"))
        );
    }

    #[test]
    fn minimality_certificates() {
        let p1 = example1();
        let cert = is_minimal(&p1, &asg(&["0.6", "1", "1"])).unwrap();
        assert!(cert.minimal);
        assert!(cert.tight_row.is_some());
        assert!(cert.strict_flags.values().all(|&ok| ok));
        assert_eq!(
            cert.fixed_point_deltas,
            vec![u("0.6"), u("1"), u("1")]
        );

        let p2 = example2();
        let cert = is_minimal(&p2, &asg(&["0.6", "1", "1"])).unwrap();
        assert!(!cert.minimal);
        // no row is tight at this solution
        assert_eq!(cert.tight_row, None);

        let cert = is_minimal(&p2, &asg(&["0.8", "0.9", "0.9"])).unwrap();
        assert!(cert.minimal);
    }

    #[test]
    fn minimality_with_pinning_shared_across_tight_rows() {
        // each coordinate is held by its own tight row; no single row is
        // strict over the whole support, yet the point is minimal: lowering
        // either coordinate alone breaks the row that pins it
        let p = prob(&[&["1", "0.1"], &["0.1", "1"]], &["0.5", "0.5"]);
        let x = asg(&["0.5", "0.5"]);
        let cert = is_minimal(&p, &x).unwrap();
        assert!(cert.minimal);
        assert_eq!(cert.fixed_point_deltas, vec![u("0.5"), u("0.5")]);
        assert_eq!(cert.tight_row, Some(0));
        assert!(!cert.strict_flags.values().all(|&ok| ok));
        // and it really is minimal: the only candidates below it fail
        assert!(!crate::problem::is_solution(&p, &asg(&["0.4", "0.5"])).unwrap());
        assert!(!crate::problem::is_solution(&p, &asg(&["0.5", "0.4"])).unwrap());
        assert_eq!(
            reduce_to_minimal(&p, &x, &Permutation::identity(2)).unwrap(),
            x
        );
    }

    #[test]
    fn certificate_support_excludes_zero_coordinates() {
        // x2 = 0 keeps column 1 out of the support, so the zero entry there
        // cannot spoil minimality
        let p = prob(&[&["1", "0.5"]], &["0.5"]);
        let x = asg(&["0.5", "0"]);
        let cert = is_minimal(&p, &x).unwrap();
        assert!(cert.minimal);
        assert!(cert.support.contains(0));
        assert!(!cert.support.contains(1));
    }

    #[test]
    fn one_coordinate_construction() {
        let p1 = example1();
        let (y, certified) = single_coordinate_candidate(&p1, 0).unwrap();
        assert_eq!(y, asg(&["0.6", "1", "1"]));
        assert!(certified);
        let (y, certified) = single_coordinate_candidate(&p1, 2).unwrap();
        assert_eq!(y, asg(&["1", "1", "0.6"]));
        assert!(certified);

        let p2 = example2();
        let (y, certified) = single_coordinate_candidate(&p2, 0).unwrap();
        assert_eq!(y, asg(&["0.6", "1", "1"]));
        assert!(!certified);

        let unsolvable = prob(&[&["0.5", "0.5"]], &["1.1"]);
        assert!(matches!(
            single_coordinate_candidate(&unsolvable, 0),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn reduction_walkthrough() {
        let p = example1();
        let (reduced, trace) = reduce_to_minimal_traced(
            &p,
            &asg(&["0.8", "0.9", "1"]),
            &Permutation::identity(3),
        )
        .unwrap();
        assert_eq!(reduced, asg(&["0.7", "0.9", "1"]));
        assert!(!trace.shortcut);
        assert_eq!(trace.initial_deltas, vec![u("0.6"), u("0.6"), u("0.6")]);
        let deltas: Vec<&UnitScalar> = trace.steps.iter().map(|s| &s.delta).collect();
        assert_eq!(deltas, vec![&u("0.7"), &u("0.9"), &u("1")]);
        assert!(is_minimal(&p, &reduced).unwrap().minimal);
    }

    #[test]
    fn reduction_depends_on_permutation() {
        let p = example2();
        let x = asg(&["0.9", "0.9", "0.9"]);
        assert_eq!(
            reduce_to_minimal(&p, &x, &Permutation::identity(3)).unwrap(),
            asg(&["0.8", "0.9", "0.9"])
        );
        assert_eq!(
            reduce_to_minimal(&p, &x, &Permutation::new(vec![2, 1, 0]).unwrap()).unwrap(),
            asg(&["0.9", "0.9", "0.8"])
        );
    }

    #[test]
    fn reduction_shortcut_on_unique_minimal() {
        let p = prob(&[&["1"]], &["0.5"]);
        let (reduced, trace) =
            reduce_to_minimal_traced(&p, &Assignment::ones(1), &Permutation::identity(1)).unwrap();
        assert_eq!(reduced, asg(&["0.5"]));
        assert!(trace.shortcut);
        assert!(trace.steps.is_empty());
    }

    #[test]
    fn enumerate_collects_distinct_minimals() {
        let p = example2();
        let found = enumerate_minimals(&p, &asg(&["0.9", "0.9", "0.9"]), 6, false).unwrap();
        assert_eq!(
            found,
            vec![
                asg(&["0.8", "0.9", "0.9"]),
                asg(&["0.9", "0.8", "0.9"]),
                asg(&["0.9", "0.9", "0.8"]),
            ]
        );

        let p1 = example1();
        let found = enumerate_minimals(&p1, &Assignment::ones(3), 6, false).unwrap();
        for expected in [
            asg(&["0.6", "1", "1"]),
            asg(&["1", "0.6", "1"]),
            asg(&["1", "1", "0.6"]),
        ] {
            assert!(found.contains(&expected), "missing {expected}");
        }

        // an already-minimal starting point is its own sweep
        let minimal = asg(&["0.8", "0.9", "0.9"]);
        assert_eq!(
            enumerate_minimals(&p, &minimal, 6, false).unwrap(),
            vec![minimal]
        );
    }

    #[test]
    fn enumerate_respects_limit_and_size_guard() {
        let p = example2();
        let found = enumerate_minimals(&p, &asg(&["0.9", "0.9", "0.9"]), 1, false).unwrap();
        assert_eq!(found.len(), 1);

        let wide = prob(
            &[&["0.9", "0.9", "0.9", "0.9", "0.9", "0.9", "0.9", "0.9", "0.9"]],
            &["1"],
        );
        let err = enumerate_minimals(&wide, &Assignment::ones(9), 2, false);
        assert!(matches!(err, Err(Error::Resource(_))));
        assert!(enumerate_minimals(&wide, &Assignment::ones(9), 2, true).is_ok());
    }

    #[test]
    fn unique_minimal_cases() {
        assert_eq!(unique_minimal(&example1()).unwrap(), None);
        let single = prob(&[&["1"]], &["0.5"]);
        assert_eq!(unique_minimal(&single).unwrap(), Some(asg(&["0.5"])));
        let tight = prob(&[&["0.5", "0.5"]], &["1"]);
        assert_eq!(unique_minimal(&tight).unwrap(), Some(Assignment::ones(2)));
    }

    #[test]
    fn permutations_are_lexicographic() {
        let orders: Vec<Vec<usize>> = permutations_lex(3).map(|p| p.order().to_vec()).collect();
        assert_eq!(
            orders,
            vec![
                vec![0, 1, 2],
                vec![0, 2, 1],
                vec![1, 0, 2],
                vec![1, 2, 0],
                vec![2, 0, 1],
                vec![2, 1, 0],
            ]
        );
        assert_eq!(permutations_lex(1).count(), 1);
        assert_eq!(permutations_lex(4).count(), 24);
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(vec![0, 1, 2]).is_ok());
        assert!(Permutation::new(vec![0, 0, 2]).is_err());
        assert!(Permutation::new(vec![0, 3]).is_err());
    }
}
