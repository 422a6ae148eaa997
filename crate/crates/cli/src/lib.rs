//! Command-line front end: every solver operation behind one `fri` binary.
//!
//! [`run_command`] is the whole CLI as a function of its arguments, returning
//! the exit code and both output streams; the binary is a thin wrapper. That
//! keeps the command surface directly testable and the output byte-for-byte
//! reproducible.

pub mod doc;
pub mod output;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use fri_core::{
    enumerate_minimals, falsify_minimality, greatest_solution, grid_feasible, grid_minimax_value,
    grid_minimax_value_full, is_minimal, is_solvable, minimal_optimal_solutions, parse_rational,
    reduce_to_minimal_traced, render_exact, solve_minimax, unique_minimal, unique_solution_check,
    Assignment, Error, GridSpec, Permutation, Problem, Rational, DEFAULT_GRID_CAP,
};

use output::{
    assignment_json, assignments_json, certificate_json, error_document, ok_document,
    rational_json, reduction_trace_json, render, row_trace_json, unit_json,
};

#[derive(Debug, Parser)]
#[command(
    name = "fri",
    version,
    about = "Exact solver for addition-Lukasiewicz fuzzy relational inequality systems"
)]
struct Cli {
    /// Render an indented human-readable view instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Report whether the system has any solution.
    Check { file: PathBuf },

    /// Print the greatest solution (the all-ones vector).
    Greatest { file: PathBuf },

    /// Lower a solution to a minimal one, or sweep permutations for several.
    Minimal {
        file: PathBuf,
        /// Assignment file to start from; defaults to the greatest solution.
        #[arg(long)]
        from: Option<PathBuf>,
        /// Comma-separated 1-based column order, e.g. 1,3,2.
        #[arg(long, conflicts_with = "all_perms")]
        perm: Option<String>,
        /// Try every permutation in lexicographic order.
        #[arg(long)]
        all_perms: bool,
        /// Most distinct minimal solutions to collect with --all-perms.
        #[arg(long, default_value_t = 100)]
        limit: usize,
        /// Allow the factorial sweep beyond 8 columns.
        #[arg(long)]
        force_large: bool,
    },

    /// Print the unique minimal solution if the system has one.
    UniqueMinimal { file: PathBuf },

    /// Report whether the all-ones vector is the only solution.
    UniqueSolution { file: PathBuf },

    /// Minimize the largest coordinate over the solution set.
    Minimax {
        file: PathBuf,
        /// Include the per-row active-set iteration traces.
        #[arg(long)]
        trace: bool,
        /// Also enumerate minimal optimal solutions.
        #[arg(long)]
        minimal_optimals: bool,
        /// Most distinct minimal optimal solutions to collect.
        #[arg(long, default_value_t = 100)]
        limit: usize,
        /// Allow the factorial sweep beyond 8 columns.
        #[arg(long)]
        force_large: bool,
        /// Cross-check the optimum against the brute-force grid scan.
        #[arg(long)]
        verify: bool,
        /// Grid step for --verify, e.g. 1/30 or 0.1.
        #[arg(long, default_value = "1/10")]
        step: String,
    },

    /// Brute-force grid references (independent of the solver path).
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
}

#[derive(Debug, Subcommand)]
enum OracleCommand {
    /// List every feasible grid assignment in lexicographic order.
    Feasible {
        file: PathBuf,
        /// Grid step, e.g. 1/10.
        #[arg(long, default_value = "1/10")]
        step: String,
    },
    /// Least grid value whose constant vector is feasible.
    Minimax {
        file: PathBuf,
        #[arg(long, default_value = "1/10")]
        step: String,
        /// Scan the full n-dimensional grid instead of constants only.
        #[arg(long)]
        full_scan: bool,
    },
    /// Search the grid for a solution strictly below an assignment.
    Falsify {
        file: PathBuf,
        /// Assignment file holding the point to refute.
        #[arg(long)]
        from: PathBuf,
        #[arg(long, default_value = "1/10")]
        step: String,
    },
}

/// Exit code plus both output streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub exit: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the CLI on `args` (without the program name). Exit codes: 0 ok,
/// 1 infeasible, 2 input error, 3 resource or internal error.
pub fn run_command<I, T>(args: I) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let argv = std::iter::once(OsString::from("fri")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    CommandOutput {
                        exit: 0,
                        stdout: rendered,
                        stderr: String::new(),
                    }
                }
                _ => CommandOutput {
                    exit: 2,
                    stdout: String::new(),
                    stderr: rendered,
                },
            };
        }
    };
    let name = command_name(&cli.command);
    match execute(&cli.command) {
        Ok(payload) => CommandOutput {
            exit: 0,
            stdout: render(&ok_document(name, payload), cli.pretty),
            stderr: String::new(),
        },
        Err(error) => {
            let (exit, document) = error_document(name, &error);
            CommandOutput {
                exit,
                stdout: render(&document, cli.pretty),
                stderr: String::new(),
            }
        }
    }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Check { .. } => "check",
        Command::Greatest { .. } => "greatest",
        Command::Minimal { .. } => "minimal",
        Command::UniqueMinimal { .. } => "unique-minimal",
        Command::UniqueSolution { .. } => "unique-solution",
        Command::Minimax { .. } => "minimax",
        Command::Oracle { command } => match command {
            OracleCommand::Feasible { .. } => "oracle feasible",
            OracleCommand::Minimax { .. } => "oracle minimax",
            OracleCommand::Falsify { .. } => "oracle falsify",
        },
    }
}

fn read_file(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))
}

fn load_problem(path: &Path) -> Result<Problem, Error> {
    doc::parse_problem(&read_file(path)?)
}

fn load_assignment(path: &Path) -> Result<Assignment, Error> {
    doc::parse_assignment(&read_file(path)?)
}

fn grid_cap() -> Result<u64, Error> {
    match std::env::var("FRI_GRID_CAP") {
        Ok(text) => text.trim().parse::<u64>().map_err(|_| {
            Error::Input(format!(
                "FRI_GRID_CAP must be a positive integer, got {text:?}"
            ))
        }),
        Err(_) => Ok(DEFAULT_GRID_CAP),
    }
}

fn parse_step(text: &str) -> Result<(Rational, GridSpec), Error> {
    let step = parse_rational(text)?;
    Ok((step.clone(), GridSpec::new(step)?))
}

/// Accepts the 1-based comma-separated order people write (`1,3,2`).
fn parse_perm(text: &str, cols: usize) -> Result<Permutation, Error> {
    let mut order = Vec::new();
    for part in text.split(',') {
        let index: usize = part
            .trim()
            .parse()
            .map_err(|_| Error::Input(format!("bad column index {part:?} in permutation")))?;
        if index == 0 {
            return Err(Error::Input(
                "permutation column indices are 1-based".to_string(),
            ));
        }
        order.push(index - 1);
    }
    if order.len() != cols {
        return Err(Error::Input(format!(
            "permutation lists {} columns, problem has {cols}",
            order.len()
        )));
    }
    Permutation::new(order)
}

fn execute(command: &Command) -> Result<Value, Error> {
    match command {
        Command::Check { file } => {
            let p = load_problem(file)?;
            let rows: Vec<Value> = (0..p.rows())
                .map(|i| {
                    json!({
                        "row": i + 1,
                        "entry_sum": rational_json(&p.row_entry_sum(i)),
                        "requirement": rational_json(p.requirement(i).ratio()),
                    })
                })
                .collect();
            if !is_solvable(&p) {
                let failing: Vec<String> = (0..p.rows())
                    .filter(|&i| p.row_entry_sum(i) < *p.requirement(i).ratio())
                    .map(|i| {
                        format!(
                            "row {} entry sum {} is below requirement {}",
                            i + 1,
                            render_exact(&p.row_entry_sum(i)),
                            p.requirement(i)
                        )
                    })
                    .collect();
                return Err(Error::Infeasible(failing.join("; ")));
            }
            Ok(json!({"solvable": true, "rows": rows}))
        }

        Command::Greatest { file } => {
            let p = load_problem(file)?;
            Ok(json!({"x": assignment_json(&greatest_solution(&p)?)}))
        }

        Command::Minimal {
            file,
            from,
            perm,
            all_perms,
            limit,
            force_large,
        } => {
            let p = load_problem(file)?;
            let start = match from {
                Some(path) => load_assignment(path)?,
                None => greatest_solution(&p)?,
            };
            if *all_perms {
                let found = enumerate_minimals(&p, &start, *limit, *force_large)?;
                return Ok(json!({
                    "from": assignment_json(&start),
                    "count": found.len(),
                    "minimals": assignments_json(&found),
                }));
            }
            let order = match perm {
                Some(text) => parse_perm(text, p.cols())?,
                None => Permutation::identity(p.cols()),
            };
            let (x, trace) = reduce_to_minimal_traced(&p, &start, &order)?;
            let certificate = is_minimal(&p, &x)?;
            Ok(json!({
                "from": assignment_json(&start),
                "order": order.order().iter().map(|j| j + 1).collect::<Vec<_>>(),
                "x": assignment_json(&x),
                "trace": reduction_trace_json(&trace),
                "certificate": certificate_json(&certificate),
            }))
        }

        Command::UniqueMinimal { file } => {
            let p = load_problem(file)?;
            Ok(json!({
                "unique_minimal": unique_minimal(&p)?.map(|x| assignment_json(&x)),
            }))
        }

        Command::UniqueSolution { file } => {
            let p = load_problem(file)?;
            Ok(json!({"unique": unique_solution_check(&p)?}))
        }

        Command::Minimax {
            file,
            trace,
            minimal_optimals,
            limit,
            force_large,
            verify,
            step,
        } => {
            let p = load_problem(file)?;
            let solved = solve_minimax(&p)?;
            let per_row: Vec<Value> = solved
                .per_row
                .iter()
                .map(|r| {
                    let mut entry = json!({
                        "row": r.trace.row + 1,
                        "optimum": unit_json(&r.value),
                    });
                    if *trace {
                        entry["trace"] = row_trace_json(&r.trace);
                    }
                    entry
                })
                .collect();
            let mut payload = json!({
                "per_row": per_row,
                "u_star": unit_json(&solved.u_star),
                "optimal_value": unit_json(&solved.optimal_value),
                "greatest_optimal": assignment_json(&solved.greatest_optimal),
                "unique": solved.unique,
            });
            if *minimal_optimals {
                let found = minimal_optimal_solutions(&p, *limit, *force_large)?;
                payload["minimal_optimals"] = assignments_json(&found);
            }
            if *verify {
                let (step_value, grid) = parse_step(step)?;
                let grid_value = grid_minimax_value(&p, &grid, grid_cap()?)?;
                // equality is guaranteed exactly when the optimum lies on the grid
                let step_denominator = step_value.recip().to_integer();
                let guaranteed =
                    (&step_denominator % solved.u_star.ratio().denom()) == 0.into();
                let agrees = if guaranteed {
                    grid_value == solved.u_star
                } else {
                    grid_value >= solved.u_star
                };
                payload["verification"] = json!({
                    "step": rational_json(&step_value),
                    "grid_value": unit_json(&grid_value),
                    "exact_match_guaranteed": guaranteed,
                    "agrees": agrees,
                });
                if !agrees {
                    return Err(Error::Internal(format!(
                        "oracle grid value {} disagrees with solver optimum {}",
                        grid_value, solved.u_star
                    )));
                }
            }
            Ok(payload)
        }

        Command::Oracle { command } => match command {
            OracleCommand::Feasible { file, step } => {
                let p = load_problem(file)?;
                let (step_value, grid) = parse_step(step)?;
                let points: Vec<Value> = grid_feasible(&p, &grid, grid_cap()?)?
                    .map(|x| assignment_json(&x))
                    .collect();
                Ok(json!({
                    "step": rational_json(&step_value),
                    "count": points.len(),
                    "points": points,
                }))
            }
            OracleCommand::Minimax {
                file,
                step,
                full_scan,
            } => {
                let p = load_problem(file)?;
                let (step_value, grid) = parse_step(step)?;
                let cap = grid_cap()?;
                let value = if *full_scan {
                    grid_minimax_value_full(&p, &grid, cap)?
                } else {
                    grid_minimax_value(&p, &grid, cap)?
                };
                Ok(json!({
                    "step": rational_json(&step_value),
                    "full_scan": full_scan,
                    "value": unit_json(&value),
                }))
            }
            OracleCommand::Falsify { file, from, step } => {
                let p = load_problem(file)?;
                let x = load_assignment(from)?;
                let (step_value, grid) = parse_step(step)?;
                let witness = falsify_minimality(&p, &x, &grid, grid_cap()?)?;
                Ok(json!({
                    "step": rational_json(&step_value),
                    "x": assignment_json(&x),
                    "witness": witness.map(|w| assignment_json(&w)),
                }))
            }
        },
    }
}
