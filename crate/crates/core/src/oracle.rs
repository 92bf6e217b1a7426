//! The oracle contract shared by the algorithms, plus per-run call accounting.

use serde::Serialize;

use crate::cnf::{ClauseSet, PartialAssignment, VarSet};
use crate::engine::Engine;
use crate::error::OracleError;
use crate::translation::VarMap;

static EMPTY: &ClauseSet = &ClauseSet::EMPTY;

/// What an oracle returns: a model, or the variables of the axioms of some
/// refutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleAnswer {
    Sat(PartialAssignment),
    Unsat(VarSet),
}

impl OracleAnswer {
    pub fn is_sat(&self) -> bool {
        matches!(self, OracleAnswer::Sat(_))
    }
}

/// Which part of the answer the caller is going to use.
///
/// Providers must still return a full [`OracleAnswer`]; the kind only tells
/// them which half they may compute cheaply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleKind {
    /// `O`: satisfiability only.
    Decision,
    /// `O1`: model on SAT.
    Sat,
    /// `O0`: used variables on UNSAT.
    Core,
    /// `O01`: both.
    Full,
}

/// One oracle call: the formula is `base ∪ extra`.
#[derive(Debug, Clone, Copy)]
pub struct OracleQuery<'a> {
    pub kind: OracleKind,
    pub base: &'a ClauseSet,
    pub extra: &'a ClauseSet,
    pub context: QueryContext<'a>,
}

/// How the query was built. Providers that only need the clauses can ignore
/// this.
#[derive(Debug, Clone, Copy)]
pub enum QueryContext<'a> {
    /// `base` is an ordinary clause-set and `extra` is empty.
    Plain,
    /// `base` is a translation `t_W(G)` under `varmap`, `extra` holds
    /// positive steering clauses over primary variables.
    Steering { varmap: &'a VarMap },
    /// `base` is a translation `t_W(G)` under `varmap`, `extra` encodes
    /// `Σ_{v ∈ vars} v ≥ bound`.
    AtLeast {
        varmap: &'a VarMap,
        vars: &'a VarSet,
        bound: usize,
    },
}

impl<'a> OracleQuery<'a> {
    pub fn plain(kind: OracleKind, formula: &'a ClauseSet) -> Self {
        OracleQuery {
            kind,
            base: formula,
            extra: EMPTY,
            context: QueryContext::Plain,
        }
    }

    pub fn varmap(&self) -> Option<&'a VarMap> {
        match self.context {
            QueryContext::Plain => None,
            QueryContext::Steering { varmap } | QueryContext::AtLeast { varmap, .. } => Some(varmap),
        }
    }

    pub fn formula(&self) -> ClauseSet {
        if self.extra.is_empty() {
            self.base.clone()
        } else {
            self.base.union(self.extra)
        }
    }
}

/// Anything that answers oracle queries.
pub trait Oracle {
    fn ask(&mut self, query: &OracleQuery<'_>) -> Result<OracleAnswer, OracleError>;
}

impl<O: Oracle + ?Sized> Oracle for &mut O {
    fn ask(&mut self, query: &OracleQuery<'_>) -> Result<OracleAnswer, OracleError> {
        (**self).ask(query)
    }
}

/// The embedded CDCL engine as an oracle.
#[derive(Debug, Clone, Copy, Default)]
pub struct InternalOracle {
    engine: Engine,
}

impl InternalOracle {
    pub fn new(seed: u64) -> Self {
        InternalOracle {
            engine: Engine::new(seed),
        }
    }
}

impl Oracle for InternalOracle {
    fn ask(&mut self, query: &OracleQuery<'_>) -> Result<OracleAnswer, OracleError> {
        Ok(self.engine.solve_full(&query.formula()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CallResult {
    Sat,
    Unsat,
}

/// Size of one oracle instance and what came back.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CallRecord {
    pub result: CallResult,
    pub vars: usize,
    pub clauses: usize,
}

/// Ledger of the oracle calls made by one algorithm run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunStats {
    pub calls: Vec<CallRecord>,
    /// Primary variables ruled out by each UNSAT answer whose used variables
    /// the algorithm acted on, in call order.
    pub excluded: Vec<VarSet>,
}

impl RunStats {
    pub fn record(&mut self, formula: &ClauseSet, answer: &OracleAnswer) {
        self.calls.push(CallRecord {
            result: if answer.is_sat() {
                CallResult::Sat
            } else {
                CallResult::Unsat
            },
            vars: formula.n(),
            clauses: formula.c(),
        });
    }

    pub fn total_calls(&self) -> usize {
        self.calls.len()
    }

    pub fn sat_calls(&self) -> usize {
        self.count(CallResult::Sat)
    }

    pub fn unsat_calls(&self) -> usize {
        self.count(CallResult::Unsat)
    }

    pub fn max_instance_vars(&self) -> usize {
        self.calls.iter().map(|c| c.vars).max().unwrap_or(0)
    }

    fn count(&self, kind: CallResult) -> usize {
        self.calls.iter().filter(|c| c.result == kind).count()
    }
}
