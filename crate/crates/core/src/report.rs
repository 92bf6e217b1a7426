//! Running a configured job and rendering its output.

use std::fmt::Write as _;
use std::path::PathBuf;

use serde::Serialize;

use crate::algorithms::{algo_a0, algo_a1, algo_abs, scheme_s01, AlgorithmResult, Steering};
use crate::brute::{enumerate_autarkies, AdversarialOracle, DEFAULT_LIMIT};
use crate::cnf::{extend_quasi_maximal, ClauseSet};
use crate::dimacs::write_dimacs;
use crate::error::{AlgorithmError, BruteError, OracleError};
use crate::oracle::{CallRecord, InternalOracle, Oracle, RunStats};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum AlgorithmChoice {
    A0,
    A1,
    Abs,
    A01,
    Brute,
}

impl AlgorithmChoice {
    pub const ORACLE_BASED: [AlgorithmChoice; 4] = [
        AlgorithmChoice::A0,
        AlgorithmChoice::A1,
        AlgorithmChoice::Abs,
        AlgorithmChoice::A01,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlgorithmChoice::A0 => "a0",
            AlgorithmChoice::A1 => "a1",
            AlgorithmChoice::Abs => "abs",
            AlgorithmChoice::A01 => "a01",
            AlgorithmChoice::Brute => "brute",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OraclePolicy {
    #[default]
    Internal,
    Adversarial,
}

/// Settings shared by `solve` and `compare`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobConfig {
    pub algorithm: AlgorithmChoice,
    pub oracle: OraclePolicy,
    pub seed: u64,
    pub verify: bool,
    /// Largest instance the brute-force code accepts, both for `--verify`
    /// and for the adversarial oracle.
    pub verify_limit: usize,
    pub steering: Steering,
    pub stats_path: Option<PathBuf>,
}

impl Default for JobConfig {
    fn default() -> Self {
        JobConfig {
            algorithm: AlgorithmChoice::A01,
            oracle: OraclePolicy::Internal,
            seed: 0,
            verify: false,
            verify_limit: DEFAULT_LIMIT,
            steering: Steering::Sqrt,
            stats_path: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Algorithm(#[from] AlgorithmError),
    #[error(transparent)]
    Brute(#[from] BruteError),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl RunError {
    /// 2 for broken invariants, 1 for everything the caller can fix.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Algorithm(AlgorithmError::Invariant(_)) | RunError::Verification(_) => 2,
            _ => 1,
        }
    }
}

impl From<OracleError> for RunError {
    fn from(e: OracleError) -> Self {
        RunError::Algorithm(e.into())
    }
}

fn run_with<O: Oracle>(
    formula: &ClauseSet,
    algorithm: AlgorithmChoice,
    steering: Steering,
    limit: usize,
    oracle: O,
) -> Result<AlgorithmResult, RunError> {
    Ok(match algorithm {
        AlgorithmChoice::A0 => {
            let mut r = algo_a0(formula, oracle)?;
            r.autarky = extend_quasi_maximal(&r.autarky, formula)
                .map_err(|e| AlgorithmError::Invariant(e.to_string()))?;
            r
        }
        AlgorithmChoice::A1 => algo_a1(formula, oracle)?,
        AlgorithmChoice::Abs => algo_abs(formula, oracle)?,
        AlgorithmChoice::A01 => scheme_s01(formula, &steering.clauses(&formula.vars()), oracle)?,
        AlgorithmChoice::Brute => AlgorithmResult {
            autarky: crate::brute::maximal_autarky_bf(formula, limit)?,
            stats: RunStats::default(),
        },
    })
}

/// Runs one algorithm as configured and checks the answer.
///
/// The result is always checked to be an autarky. With `verify` set and the
/// instance small enough, it is also compared with the enumerated largest
/// autarky variable set and lean kernel.
pub fn run_job(formula: &ClauseSet, config: &JobConfig) -> Result<AlgorithmResult, RunError> {
    run_algorithm(formula, config.algorithm, config)
}

fn run_algorithm(
    formula: &ClauseSet,
    algorithm: AlgorithmChoice,
    config: &JobConfig,
) -> Result<AlgorithmResult, RunError> {
    let result = match config.oracle {
        OraclePolicy::Internal => run_with(
            formula,
            algorithm,
            config.steering,
            config.verify_limit,
            InternalOracle::new(config.seed),
        )?,
        OraclePolicy::Adversarial => run_with(
            formula,
            algorithm,
            config.steering,
            config.verify_limit,
            AdversarialOracle::with_limit(config.verify_limit),
        )?,
    };
    if !result.autarky.is_autarky_for(formula) {
        return Err(RunError::Verification(format!(
            "{} returned {} which is not an autarky",
            algorithm.name(),
            result.autarky
        )));
    }
    if config.verify && formula.n() <= config.verify_limit {
        let catalog = enumerate_autarkies(formula, config.verify_limit)?;
        if result.autarky.vars() != catalog.largest_var_set() {
            return Err(RunError::Verification(format!(
                "{} assigns {} variables, the largest autarky has {}",
                algorithm.name(),
                result.autarky.len(),
                catalog.nu_aut()
            )));
        }
        if &result.autarky.apply(formula) != catalog.lean_kernel() {
            return Err(RunError::Verification(format!(
                "{} does not reduce to the lean kernel",
                algorithm.name()
            )));
        }
    }
    Ok(result)
}

/// The statistics record of one run, fields in output order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StatsRecord {
    pub algorithm: String,
    pub n: usize,
    pub c: usize,
    pub oracle_calls: Vec<CallRecord>,
    pub total_calls: usize,
    pub autarky_size: usize,
    pub lean_kernel_clauses: usize,
}

impl StatsRecord {
    pub fn new(algorithm: &str, result: &AlgorithmResult, formula: &ClauseSet) -> Self {
        StatsRecord {
            algorithm: algorithm.to_string(),
            n: formula.n(),
            c: formula.c(),
            oracle_calls: result.stats.calls.clone(),
            total_calls: result.stats.total_calls(),
            autarky_size: result.autarky.len(),
            lean_kernel_clauses: result.autarky.apply(formula).c(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("stats serialise")
    }
}

/// The `v` line for an assignment: `v 1 -2 0`.
pub fn assignment_line(result: &AlgorithmResult) -> String {
    let mut line = String::from("v");
    for lit in result.autarky.iter().map(|(v, b)| if b { v.positive() } else { v.negative() }) {
        write!(line, " {lit}").expect("writing to a string");
    }
    line.push_str(" 0");
    line
}

/// Output of `solve`: the `v` line, the lean kernel in DIMACS, and the
/// statistics record on one line.
pub fn write_result(algorithm: &str, result: &AlgorithmResult, formula: &ClauseSet) -> String {
    format!(
        "{}\n{}{}\n",
        assignment_line(result),
        write_dimacs(&result.autarky.apply(formula)),
        StatsRecord::new(algorithm, result, formula).to_json()
    )
}

/// One line of the comparison table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompareRow {
    pub algorithm: String,
    pub total_calls: usize,
    pub sat_calls: usize,
    pub unsat_calls: usize,
    pub max_instance_vars: usize,
    pub autarky_size: usize,
}

/// Runs the four oracle algorithms on `formula` under the configured policy.
pub fn compare_run(formula: &ClauseSet, config: &JobConfig) -> Result<Vec<CompareRow>, RunError> {
    let mut rows = Vec::new();
    let mut kernel: Option<ClauseSet> = None;
    for algorithm in AlgorithmChoice::ORACLE_BASED {
        let r = run_algorithm(formula, algorithm, config)?;
        let k = r.autarky.apply(formula);
        if kernel.get_or_insert_with(|| k.clone()) != &k {
            return Err(RunError::Verification(format!(
                "{} reaches a different lean kernel",
                algorithm.name()
            )));
        }
        rows.push(CompareRow {
            algorithm: algorithm.name().to_string(),
            total_calls: r.stats.total_calls(),
            sat_calls: r.stats.sat_calls(),
            unsat_calls: r.stats.unsat_calls(),
            max_instance_vars: r.stats.max_instance_vars(),
            autarky_size: r.autarky.len(),
        });
    }
    Ok(rows)
}

/// Plain-text table with a header line.
pub fn render_table(rows: &[CompareRow]) -> String {
    let mut out = format!(
        "{:<9} {:>11} {:>9} {:>11} {:>17} {:>12}\n",
        "algorithm", "total_calls", "sat_calls", "unsat_calls", "max_instance_vars", "autarky_size"
    );
    for r in rows {
        writeln!(
            out,
            "{:<9} {:>11} {:>9} {:>11} {:>17} {:>12}",
            r.algorithm, r.total_calls, r.sat_calls, r.unsat_calls, r.max_instance_vars, r.autarky_size
        )
        .expect("writing to a string");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::PartialAssignment;

    #[test]
    fn v_line() {
        let r = AlgorithmResult {
            autarky: PartialAssignment::from_pairs(&[(1, true), (2, false)]),
            stats: RunStats::default(),
        };
        assert_eq!(assignment_line(&r), "v 1 -2 0");
        let empty = AlgorithmResult {
            autarky: PartialAssignment::new(),
            stats: RunStats::default(),
        };
        assert_eq!(assignment_line(&empty), "v 0");
    }

    #[test]
    fn stats_fields_in_order() {
        let f = ClauseSet::from_ints(&[&[1][..], &[-1], &[2]]);
        let r = run_job(&f, &JobConfig::default()).unwrap();
        let json = StatsRecord::new("a01", &r, &f).to_json();
        let keys = ["algorithm", "n", "c", "oracle_calls", "total_calls", "autarky_size", "lean_kernel_clauses"];
        let positions: Vec<usize> = keys.iter().map(|k| json.find(&format!("\"{k}\"")).unwrap()).collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]));
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed["oracle_calls"].as_array().unwrap().len(), parsed["total_calls"].as_u64().unwrap() as usize);
    }

    #[test]
    fn compare_on_top_is_free() {
        let rows = compare_run(&ClauseSet::new(), &JobConfig::default()).unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows.iter().all(|r| r.total_calls == 0 && r.autarky_size == 0));
    }

    #[test]
    fn verify_mode_accepts_correct_answers() {
        let f = ClauseSet::from_ints(&[&[1, 2][..], &[-1, -2], &[3], &[-3]]);
        for algorithm in AlgorithmChoice::ORACLE_BASED {
            let config = JobConfig {
                algorithm,
                verify: true,
                ..JobConfig::default()
            };
            let r = run_job(&f, &config).unwrap();
            assert_eq!(r.autarky.len(), 2);
        }
    }
}
