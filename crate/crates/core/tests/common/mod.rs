//! Shared fixtures and random-instance generation for the integration suites.

#![allow(dead_code)]

use fri_core::{
    is_solution, reduce_to_minimal, Assignment, Permutation, Problem, Rational, Requirement,
    UnitScalar,
};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn us(text: &str) -> UnitScalar {
    UnitScalar::parse(text).unwrap()
}

pub fn req(text: &str) -> Requirement {
    Requirement::parse(text).unwrap()
}

pub fn asg(coords: &[&str]) -> Assignment {
    Assignment::new(coords.iter().map(|s| us(s)).collect())
}

pub fn prob(a: &[&[&str]], b: &[&str]) -> Problem {
    let entries = a.iter().map(|row| row.iter().map(|s| us(s)).collect()).collect();
    let reqs = b.iter().map(|s| req(s)).collect();
    Problem::new(entries, reqs).unwrap()
}

/// Three-user system whose one-coordinate candidates are all minimal.
pub fn example1() -> Problem {
    prob(
        &[
            &["0.5", "0.9", "0.7"],
            &["0.7", "0.5", "0.6"],
            &["0.6", "0.8", "0.9"],
        ],
        &["1.7", "1.2", "1.8"],
    )
}

/// Three-user system where the one-coordinate candidate is not minimal.
/// Also the constraint system of the three-terminal minimax instance.
pub fn example2() -> Problem {
    prob(
        &[
            &["0.5", "0.7", "0.4"],
            &["0.3", "0.5", "0.9"],
            &["0.8", "0.6", "0.7"],
        ],
        &["1", "1.3", "1.6"],
    )
}

/// The six-column single-row instance for the active-set iteration.
pub fn example4_row() -> (Vec<UnitScalar>, Requirement) {
    (
        ["0", "0.1", "0.5", "0.8", "0.6", "0.3"].iter().map(|s| us(s)).collect(),
        req("1.4"),
    )
}

/// Five-user, four-row system with zero entries; minimax optimum 5/6.
pub fn example6() -> Problem {
    prob(
        &[
            &["0", "0.6", "0.5", "0.1", "0.7"],
            &["0.4", "0.8", "0.7", "0.6", "0.5"],
            &["0.3", "0.2", "0.3", "0.8", "0.2"],
            &["0.7", "0.5", "0.5", "0.4", "0.7"],
        ],
        &["1.3", "1.5", "0.8", "1.6"],
    )
}

/// Random solvable problem with entry denominators dividing `denom`.
/// Every row keeps a positive entry sum so a positive requirement fits.
pub fn random_solvable_problem(
    rng: &mut impl Rng,
    max_rows: usize,
    max_cols: usize,
    denom: i64,
) -> Problem {
    let m = rng.gen_range(1..=max_rows);
    let n = rng.gen_range(1..=max_cols);
    let mut entries = Vec::with_capacity(m);
    let mut reqs = Vec::with_capacity(m);
    for _ in 0..m {
        let row: Vec<i64> = loop {
            let row: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=denom)).collect();
            if row.iter().any(|&k| k > 0) {
                break row;
            }
        };
        let sum: i64 = row.iter().sum();
        reqs.push(Requirement::from_ratio(rng.gen_range(1..=sum), denom).unwrap());
        entries.push(
            row.into_iter()
                .map(|k| UnitScalar::from_ratio(k, denom).unwrap())
                .collect(),
        );
    }
    Problem::new(entries, reqs).unwrap()
}

pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Permutation {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    Permutation::new(order).unwrap()
}

/// A random point of the solution set: a random minimal solution lifted
/// part of the way back toward all-ones, coordinate by coordinate.
pub fn random_solution(rng: &mut impl Rng, p: &Problem) -> Assignment {
    let ones = Assignment::ones(p.cols());
    let perm = random_permutation(rng, p.cols());
    let minimal = reduce_to_minimal(p, &ones, &perm).unwrap();
    let lifted = lift_above(rng, &minimal);
    assert!(is_solution(p, &lifted).unwrap());
    lifted
}

/// A random point dominating `x`: each coordinate moves a random quarter
/// fraction of the way up to 1.
pub fn lift_above(rng: &mut impl Rng, x: &Assignment) -> Assignment {
    Assignment::new(
        x.coords()
            .iter()
            .map(|xj| {
                let t = Rational::new(rng.gen_range(0..=4).into(), 4.into());
                let value = xj.ratio() + t * (Rational::from_integer(1.into()) - xj.ratio());
                UnitScalar::new(value).unwrap()
            })
            .collect(),
    )
}

/// `lambda * x + (1 - lambda) * y`, coordinatewise.
pub fn convex_combination(lambda: &Rational, x: &Assignment, y: &Assignment) -> Assignment {
    assert_eq!(x.len(), y.len());
    Assignment::new(
        x.coords()
            .iter()
            .zip(y.coords())
            .map(|(a, b)| {
                let value = lambda * a.ratio()
                    + (Rational::from_integer(1.into()) - lambda) * b.ratio();
                UnitScalar::new(value).unwrap()
            })
            .collect(),
    )
}

/// Least common multiple of the denominators of every entry, requirement,
/// and any extra values supplied.
pub fn common_denominator(p: &Problem, extra: &[Rational]) -> u64 {
    let mut all: Vec<Rational> = Vec::new();
    for i in 0..p.rows() {
        all.extend(p.row(i).iter().map(|v| v.ratio().clone()));
        all.push(p.requirement(i).ratio().clone());
    }
    all.extend_from_slice(extra);
    let mut lcm: u64 = 1;
    for v in &all {
        let d = num::ToPrimitive::to_u64(v.denom()).expect("denominator fits in u64");
        lcm = num::Integer::lcm(&lcm, &d);
    }
    lcm
}
