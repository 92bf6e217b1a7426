//! Maximal autarkies and lean kernels of CNF clause-sets, computed with a
//! SAT oracle.
//!
//! An autarky of a clause-set `F` is a partial assignment that satisfies
//! every clause it touches. Removing the clauses satisfied by a maximal
//! autarky leaves the lean kernel, the largest sub-clause-set without
//! non-trivial autarkies. This crate computes both with four algorithms
//! that differ in how many oracle calls they need:
//!
//! * [`algo_a0`] uses the variables of refutations,
//! * [`algo_a1`] asks for one autarky at a time through a SAT encoding,
//! * [`algo_abs`] adds a cardinality constraint and searches on the size,
//! * [`algo_a01`] combines both kinds of answers, guided by positive
//!   steering clauses over blocks of `⌈√n⌉` variables.
//!
//! ```
//! use autarky::{algo_a01, ClauseSet, InternalOracle};
//!
//! let f = ClauseSet::from_ints(&[&[1][..], &[-1], &[1, 2], &[2, 3]]);
//! let r = algo_a01(&f, InternalOracle::default()).unwrap();
//! assert_eq!(r.autarky.apply(&f), ClauseSet::from_ints(&[&[1][..], &[-1]]));
//! ```

pub mod algorithms;
pub mod brute;
pub mod cnf;
pub mod dimacs;
pub mod engine;
pub mod error;
pub mod families;
pub mod oracle;
pub mod report;
pub mod translation;

pub use algorithms::{
    algo_a0, algo_a01, algo_a1, algo_abs, scheme_s01, scheme_s01_with, sqrt_partition,
    AlgorithmResult, S01Options, Steering, SteeringClauses, UnsatUpdate,
};
pub use brute::{enumerate_autarkies, maximal_autarky_bf, AdversarialOracle, AutarkyCatalog};
pub use cnf::{compose_autarkies, extend_quasi_maximal, Clause, ClauseSet, Lit, PartialAssignment, Var, VarSet};
pub use dimacs::{parse_dimacs, write_dimacs};
pub use engine::Engine;
pub use error::{AlgorithmError, OracleError, ParseError, TranslationError};
pub use families::gen_family;
pub use oracle::{InternalOracle, Oracle, OracleAnswer, OracleKind, OracleQuery, RunStats};
pub use translation::{translate, translate_full, VarMap};
