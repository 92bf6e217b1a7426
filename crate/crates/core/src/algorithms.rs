//! The maximal-autarky algorithms.
//!
//! All of them keep the current formula and update it in place after every
//! oracle answer. [`algo_a0`] works on the input directly; the others work on
//! the translation and read autarkies off the models.

use crate::cnf::{Clause, ClauseSet, PartialAssignment, VarSet};
use crate::error::AlgorithmError;
use crate::oracle::{CallResult, Oracle, OracleAnswer, OracleKind, OracleQuery, QueryContext, RunStats};
use crate::translation::{
    classes_of, encode_at_least, lift_partial, project, saturate, translate, VarMap,
};

/// An autarky together with the oracle calls spent on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgorithmResult {
    pub autarky: PartialAssignment,
    pub stats: RunStats,
}

/// Positive clauses over primary variables.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SteeringClauses(ClauseSet);

impl SteeringClauses {
    pub fn new(clauses: ClauseSet) -> Result<Self, AlgorithmError> {
        if let Some(c) = clauses.iter().find(|c| !c.is_positive()) {
            return Err(AlgorithmError::SteeringNotPositive {
                clause: c.lits().iter().map(|l| l.to_dimacs()).collect(),
            });
        }
        Ok(SteeringClauses(clauses))
    }

    /// The single clause `var(F)`.
    pub fn full(vars: &VarSet) -> Self {
        let mut clauses = ClauseSet::new();
        if !vars.is_empty() {
            clauses.insert(positive_clause(vars));
        }
        SteeringClauses(clauses)
    }

    /// One unit clause per variable.
    pub fn units(vars: &VarSet) -> Self {
        SteeringClauses(vars.iter().map(|&v| Clause::new([v.positive()]).expect("unit")).collect())
    }

    pub fn clauses(&self) -> &ClauseSet {
        &self.0
    }

    pub fn into_clauses(self) -> ClauseSet {
        self.0
    }
}

fn positive_clause(vars: &VarSet) -> Clause {
    Clause::new(vars.iter().map(|v| v.positive())).expect("positive literals")
}

/// The canonical steering choices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Steering {
    Full,
    Units,
    #[default]
    Sqrt,
}

impl Steering {
    pub fn clauses(self, vars: &VarSet) -> SteeringClauses {
        match self {
            Steering::Full => SteeringClauses::full(vars),
            Steering::Units => SteeringClauses::units(vars),
            Steering::Sqrt => sqrt_partition(vars),
        }
    }
}

/// `⌈√k⌉`.
pub fn ceil_sqrt(k: usize) -> usize {
    let mut s = (k as f64).sqrt() as usize;
    while s * s < k {
        s += 1;
    }
    while s > 0 && (s - 1) * (s - 1) >= k {
        s -= 1;
    }
    s
}

/// Splits `vars` in ascending order into blocks of `⌈√|V|⌉` variables.
pub fn sqrt_partition(vars: &VarSet) -> SteeringClauses {
    let size = ceil_sqrt(vars.len()).max(1);
    let ordered: Vec<_> = vars.iter().copied().collect();
    SteeringClauses(
        ordered
            .chunks(size)
            .map(|block| positive_clause(&block.iter().copied().collect()))
            .collect(),
    )
}

fn record(stats: &mut RunStats, query: &OracleQuery<'_>, answer: &OracleAnswer) {
    stats.record(&query.formula(), answer);
}

/// The resolution-based algorithm: ask the extended oracle about the
/// formula itself, cut away the variables of each refutation, stop at the
/// first model.
///
/// Returns a quasi-maximal autarky; [`crate::cnf::extend_quasi_maximal`]
/// turns it into a maximal one. The empty clause is dropped up front since
/// autarkies do not see it.
pub fn algo_a0<O: Oracle>(formula: &ClauseSet, mut oracle: O) -> Result<AlgorithmResult, AlgorithmError> {
    let mut f: ClauseSet = formula.iter().filter(|c| !c.is_empty()).cloned().collect();
    let mut phi = PartialAssignment::new();
    let mut stats = RunStats::default();
    loop {
        let vars = f.vars();
        if vars.is_empty() {
            break;
        }
        let query = OracleQuery::plain(OracleKind::Full, &f);
        let answer = oracle.ask(&query)?;
        record(&mut stats, &query, &answer);
        match answer {
            OracleAnswer::Unsat(used) => {
                let used: VarSet = used.intersection(&vars).copied().collect();
                if used.is_empty() {
                    return Err(AlgorithmError::Invariant(
                        "refutation of a formula without the empty clause uses no variables".into(),
                    ));
                }
                f = f.restrict(&vars.difference(&used).copied().collect());
                stats.excluded.push(used);
            }
            OracleAnswer::Sat(model) => {
                phi = model.restricted_to(&vars);
                f = ClauseSet::new();
            }
        }
    }
    Ok(AlgorithmResult { autarky: phi, stats })
}

/// How an UNSAT answer updates the translated formula in [`scheme_s01_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UnsatUpdate {
    /// Restrict to the remaining variables and drop the clauses left without
    /// a negative literal. The result is again a translation, of the current
    /// formula over the remaining window.
    #[default]
    Translation,
    /// Only restrict to the remaining variables. Autarky clauses whose head
    /// was removed survive as positive clauses over the remaining auxiliaries.
    RestrictOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct S01Options {
    pub unsat_update: UnsatUpdate,
    /// Recompute the translation after every round and compare.
    pub audit: bool,
}

/// State after one round of the scheme, as seen by the audit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundAudit {
    pub result: CallResult,
    /// The remaining window `W_i`.
    pub window: VarSet,
    /// Clauses of the in-place formula missing from a fresh translation of
    /// the current formula over `W_i`, and vice versa.
    pub unexpected: ClauseSet,
    pub missing: ClauseSet,
    /// Whether the steering clauses equal the input ones restricted to `W_i`.
    pub steering_matches: bool,
}

impl RoundAudit {
    pub fn translation_matches(&self) -> bool {
        self.unexpected.is_empty() && self.missing.is_empty()
    }
}

fn check_steering(formula: &ClauseSet, steering: &SteeringClauses) -> Result<(), AlgorithmError> {
    let vars = formula.vars();
    match steering.clauses().vars().into_iter().find(|v| !vars.contains(v)) {
        Some(v) => Err(AlgorithmError::SteeringOutOfRange { var: v.id() }),
        None => Ok(()),
    }
}

/// What the steered loop does with an UNSAT answer.
#[derive(Debug, Clone, Copy)]
enum OnUnsat {
    Stop,
    Exclude(UnsatUpdate),
}

struct Steered<'a> {
    input: &'a ClauseSet,
    map: VarMap,
    kind: OracleKind,
    on_unsat: OnUnsat,
    audit: bool,
}

impl Steered<'_> {
    fn run<O: Oracle>(
        &self,
        steering: &SteeringClauses,
        mut oracle: O,
    ) -> Result<(AlgorithmResult, Vec<RoundAudit>), AlgorithmError> {
        let map = &self.map;
        let mut window = self.input.vars();
        let mut f = translate(self.input, &window, map)?.clauses;
        let mut p = steering.clauses().clone();
        let mut phi = PartialAssignment::new();
        let mut stats = RunStats::default();
        let mut audits = Vec::new();
        while !p.vars().is_empty() {
            let query = OracleQuery {
                kind: self.kind,
                base: &f,
                extra: &p,
                context: QueryContext::Steering { varmap: map },
            };
            let answer = oracle.ask(&query)?;
            record(&mut stats, &query, &answer);
            let result = if answer.is_sat() { CallResult::Sat } else { CallResult::Unsat };
            match answer {
                OracleAnswer::Unsat(used) => match self.on_unsat {
                    OnUnsat::Stop => {
                        p = ClauseSet::new();
                        f = ClauseSet::new();
                        window.clear();
                    }
                    OnUnsat::Exclude(update) => {
                        let used = saturate(&used, map)?;
                        let classes = classes_of(&used, map);
                        p = p.restrict(&p.vars().difference(&used).copied().collect());
                        f = f.restrict(&f.vars().difference(&used).copied().collect());
                        if update == UnsatUpdate::Translation {
                            f = f
                                .iter()
                                .filter(|c| !c.is_positive())
                                .cloned()
                                .collect();
                        }
                        window = window.difference(&classes).copied().collect();
                        stats.excluded.push(classes);
                    }
                },
                OracleAnswer::Sat(model) => {
                    let model = model.restricted_to(&map.primed(&window));
                    let psi = project(&model, map)?;
                    if psi.is_empty() {
                        return Err(AlgorithmError::Invariant(
                            "model of the steered translation assigns no variable".into(),
                        ));
                    }
                    let psi_vars = psi.vars();
                    p = p.restrict(&p.vars().difference(&psi_vars).copied().collect());
                    f = lift_partial(&psi, map)?.apply(&f);
                    phi = phi.compose(&psi);
                    window = window.difference(&psi_vars).copied().collect();
                }
            }
            if self.audit {
                let expected = translate(&phi.apply(self.input), &window, map)?.clauses;
                audits.push(RoundAudit {
                    result,
                    window: window.clone(),
                    unexpected: f.difference(&expected),
                    missing: expected.difference(&f),
                    steering_matches: p == steering.clauses().restrict(&window),
                });
            }
        }
        Ok((AlgorithmResult { autarky: phi, stats }, audits))
    }
}

/// Repeatedly asks for a non-trivial autarky of the remaining variables
/// through the translation, until the lean kernel is reached.
pub fn algo_a1<O: Oracle>(formula: &ClauseSet, oracle: O) -> Result<AlgorithmResult, AlgorithmError> {
    let steered = Steered {
        input: formula,
        map: VarMap::for_formula(formula),
        kind: OracleKind::Sat,
        on_unsat: OnUnsat::Stop,
        audit: false,
    };
    Ok(steered.run(&SteeringClauses::full(&formula.vars()), oracle)?.0)
}

/// Binary search on the size of the autarky, with a cardinality constraint
/// on the indicator variables.
pub fn algo_abs<O: Oracle>(formula: &ClauseSet, mut oracle: O) -> Result<AlgorithmResult, AlgorithmError> {
    let map = VarMap::for_formula(formula);
    let mut vars = formula.vars();
    let mut f = translate(formula, &vars, &map)?.clauses;
    let mut n = vars.len();
    let mut fresh = map.cardinality_base();
    let mut phi = PartialAssignment::new();
    let mut stats = RunStats::default();
    while n != 0 {
        let m = n.div_ceil(2);
        let enc = encode_at_least(&vars, m, &map, fresh)?;
        fresh = enc.next_fresh;
        let query = OracleQuery {
            kind: OracleKind::Sat,
            base: &f,
            extra: &enc.clauses,
            context: QueryContext::AtLeast {
                varmap: &map,
                vars: &vars,
                bound: m,
            },
        };
        let answer = oracle.ask(&query)?;
        record(&mut stats, &query, &answer);
        match answer {
            OracleAnswer::Unsat(_) => n = m - 1,
            OracleAnswer::Sat(model) => {
                let psi = project(&model.restricted_to(&map.primed(&vars)), &map)?;
                if psi.len() < m {
                    return Err(AlgorithmError::Invariant(format!(
                        "model sets {} indicators, the constraint asks for {m}",
                        psi.len()
                    )));
                }
                n = n.saturating_sub(psi.len());
                let psi_vars = psi.vars();
                vars = vars.difference(&psi_vars).copied().collect();
                f = lift_partial(&psi, &map)?.apply(&f);
                phi = phi.compose(&psi);
            }
        }
    }
    Ok(AlgorithmResult { autarky: phi, stats })
}

/// The steering scheme with the extended oracle: models extend the autarky,
/// refutations exclude their variables from the search.
pub fn scheme_s01<O: Oracle>(
    formula: &ClauseSet,
    steering: &SteeringClauses,
    oracle: O,
) -> Result<AlgorithmResult, AlgorithmError> {
    Ok(scheme_s01_with(formula, steering, oracle, S01Options::default())?.0)
}

/// [`scheme_s01`] with explicit options; the audit is empty unless
/// requested.
pub fn scheme_s01_with<O: Oracle>(
    formula: &ClauseSet,
    steering: &SteeringClauses,
    oracle: O,
    options: S01Options,
) -> Result<(AlgorithmResult, Vec<RoundAudit>), AlgorithmError> {
    check_steering(formula, steering)?;
    let steered = Steered {
        input: formula,
        map: VarMap::for_formula(formula),
        kind: OracleKind::Full,
        on_unsat: OnUnsat::Exclude(options.unsat_update),
        audit: options.audit,
    };
    steered.run(steering, oracle)
}

/// The scheme with the square-root partition of the variables.
pub fn algo_a01<O: Oracle>(formula: &ClauseSet, oracle: O) -> Result<AlgorithmResult, AlgorithmError> {
    scheme_s01(formula, &sqrt_partition(&formula.vars()), oracle)
}

/// `⌊log₂ n⌋ + 1` for `n ≥ 1`, and 0 for `n = 0`.
pub fn abs_call_bound(n: usize) -> usize {
    if n == 0 {
        0
    } else {
        (usize::BITS - n.leading_zeros()) as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::InternalOracle;

    fn cs(clauses: &[&[i64]]) -> ClauseSet {
        ClauseSet::from_ints(clauses)
    }

    #[test]
    fn sqrt_partition_blocks() {
        let v: VarSet = (1..=5).map(crate::cnf::Var::new).collect();
        assert_eq!(sqrt_partition(&v).clauses(), &cs(&[&[1, 2, 3], &[4, 5]]));
        let v: VarSet = (1..=9).map(crate::cnf::Var::new).collect();
        assert_eq!(sqrt_partition(&v).clauses().c(), 3);
        assert!(sqrt_partition(&VarSet::new()).clauses().is_empty());
    }

    #[test]
    fn ceil_sqrt_values() {
        let got: Vec<_> = [0, 1, 2, 4, 5, 9, 10, 16, 17, 25].iter().map(|&k| ceil_sqrt(k)).collect();
        assert_eq!(got, vec![0, 1, 2, 2, 3, 3, 4, 4, 5, 5]);
    }

    #[test]
    fn abs_bound_values() {
        let got: Vec<_> = (0..=8).map(abs_call_bound).collect();
        assert_eq!(got, vec![0, 1, 2, 2, 3, 3, 3, 3, 4]);
    }

    #[test]
    fn empty_input_costs_nothing() {
        let top = ClauseSet::new();
        assert_eq!(algo_a0(&top, InternalOracle::default()).unwrap().stats.total_calls(), 0);
        assert_eq!(algo_a1(&top, InternalOracle::default()).unwrap().stats.total_calls(), 0);
        assert_eq!(algo_abs(&top, InternalOracle::default()).unwrap().stats.total_calls(), 0);
        assert_eq!(algo_a01(&top, InternalOracle::default()).unwrap().stats.total_calls(), 0);
    }

    #[test]
    fn a1_on_lean_input_calls_once() {
        let f = cs(&[&[1], &[-1]]);
        let r = algo_a1(&f, InternalOracle::default()).unwrap();
        assert!(r.autarky.is_empty());
        assert_eq!(r.stats.total_calls(), 1);
        assert_eq!(r.stats.unsat_calls(), 1);
    }

    #[test]
    fn a1_pair_and_free_unit() {
        let f = cs(&[&[1], &[-1], &[2]]);
        let r = algo_a1(&f, InternalOracle::default()).unwrap();
        assert_eq!(r.autarky, PartialAssignment::from_pairs(&[(2, true)]));
        assert_eq!(r.stats.total_calls(), 2);
    }

    #[test]
    fn a0_strips_empty_clause() {
        let mut f = cs(&[&[1]]);
        f.insert(Clause::empty());
        let r = algo_a0(&f, InternalOracle::default()).unwrap();
        assert_eq!(r.autarky, PartialAssignment::from_pairs(&[(1, true)]));
        assert_eq!(r.stats.total_calls(), 1);
    }

    #[test]
    fn steering_must_be_positive_and_in_range() {
        assert!(SteeringClauses::new(cs(&[&[-1]])).is_err());
        let f = cs(&[&[1]]);
        let p = SteeringClauses::new(cs(&[&[2]])).unwrap();
        assert_eq!(
            scheme_s01(&f, &p, InternalOracle::default()),
            Err(AlgorithmError::SteeringOutOfRange { var: 2 })
        );
    }

    #[test]
    fn empty_steering_returns_immediately() {
        let f = cs(&[&[1, 2]]);
        let r = scheme_s01(&f, &SteeringClauses::default(), InternalOracle::default()).unwrap();
        assert!(r.autarky.is_empty());
        assert_eq!(r.stats.total_calls(), 0);
    }

    #[test]
    fn abs_two_units() {
        let f = cs(&[&[1], &[2]]);
        let r = algo_abs(&f, InternalOracle::default()).unwrap();
        assert_eq!(r.autarky, PartialAssignment::from_pairs(&[(1, true), (2, true)]));
        assert!(r.stats.total_calls() <= 2);
    }
}
