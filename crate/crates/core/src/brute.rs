//! Exhaustive reference implementations.
//!
//! Everything here enumerates all `3^n` partial assignments, so it is only
//! usable for small formulas. It serves as the test oracle for the
//! algorithms, and [`AdversarialOracle`] reuses it to answer oracle calls in
//! the least helpful way the contract allows.

use std::collections::BTreeSet;

use crate::cnf::{ClauseSet, PartialAssignment, Var, VarSet};
use crate::engine::Engine;
use crate::error::{BruteError, OracleError};
use crate::oracle::{Oracle, OracleAnswer, OracleKind, OracleQuery, QueryContext};
use crate::translation::{classes_of, decode_translation, lift_total, VarMap};

/// Default cap on the number of variables the enumerations accept.
pub const DEFAULT_LIMIT: usize = 12;

/// Clauses as bit masks over a dense numbering of the variables.
#[derive(Debug, Clone)]
struct Masked {
    vars: Vec<Var>,
    /// `(vars, positive, negative)` per clause.
    clauses: Vec<(u64, u64, u64)>,
}

impl Masked {
    fn new(formula: &ClauseSet, vars: &VarSet) -> Self {
        let vars: Vec<Var> = vars.iter().copied().collect();
        let index = |v: Var| vars.binary_search(&v).expect("variable in range");
        let clauses = formula
            .iter()
            .map(|c| {
                let (mut pos, mut neg) = (0u64, 0u64);
                for l in c.lits() {
                    let bit = 1u64 << index(l.var());
                    if l.is_positive() {
                        pos |= bit;
                    } else {
                        neg |= bit;
                    }
                }
                (pos | neg, pos, neg)
            })
            .collect();
        Masked { vars, clauses }
    }

    /// `assigned` marks the domain, `truth` the variables set to 1.
    fn is_autarky(&self, assigned: u64, truth: u64) -> bool {
        self.clauses.iter().all(|&(vars, pos, neg)| {
            vars & assigned == 0 || (pos & truth) | (neg & assigned & !truth) != 0
        })
    }

    fn assignment(&self, assigned: u64, truth: u64) -> PartialAssignment {
        self.vars
            .iter()
            .enumerate()
            .filter(|(i, _)| assigned >> i & 1 == 1)
            .map(|(i, &v)| (v, truth >> i & 1 == 1))
            .collect()
    }

    fn var_set(&self, mask: u64) -> VarSet {
        self.vars
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect()
    }
}

fn check_limit(vars: usize, limit: usize) -> Result<(), BruteError> {
    if vars > limit || vars > 63 {
        return Err(BruteError::SizeExceeded { vars, limit });
    }
    Ok(())
}

/// Every autarky of a formula, with the derived quantities.
#[derive(Debug, Clone)]
pub struct AutarkyCatalog {
    masked: Masked,
    autarkies: Vec<(u64, u64)>,
    largest: u64,
    lean_kernel: ClauseSet,
}

impl AutarkyCatalog {
    /// All autarkies, the empty one included.
    pub fn autarkies(&self) -> impl Iterator<Item = PartialAssignment> + '_ {
        self.autarkies
            .iter()
            .map(|&(a, t)| self.masked.assignment(a, t))
    }

    pub fn len(&self) -> usize {
        self.autarkies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.autarkies.is_empty()
    }

    /// The union of the variable sets of all autarkies, which is itself the
    /// variable set of an autarky.
    pub fn largest_var_set(&self) -> VarSet {
        self.masked.var_set(self.largest)
    }

    /// The clauses no autarky satisfies.
    pub fn lean_kernel(&self) -> &ClauseSet {
        &self.lean_kernel
    }

    pub fn nu_aut(&self) -> usize {
        self.largest.count_ones() as usize
    }

    pub fn nu_lean(&self) -> usize {
        self.masked.vars.len() - self.nu_aut()
    }

    /// The autarkies whose variable set is the largest one.
    pub fn maximal(&self) -> impl Iterator<Item = PartialAssignment> + '_ {
        self.autarkies
            .iter()
            .filter(|&&(a, _)| a == self.largest)
            .map(|&(a, t)| self.masked.assignment(a, t))
    }
}

/// Enumerates every autarky of `formula`. Fails above `limit` variables.
pub fn enumerate_autarkies(formula: &ClauseSet, limit: usize) -> Result<AutarkyCatalog, BruteError> {
    let vars = formula.vars();
    check_limit(vars.len(), limit)?;
    let masked = Masked::new(formula, &vars);
    let full = (1u64 << vars.len()) - 1;
    let mut autarkies = Vec::new();
    let mut largest = 0u64;
    for assigned in 0..=full {
        // walk the subsets of `assigned` as the true part
        let mut truth = assigned;
        loop {
            if masked.is_autarky(assigned, truth) {
                autarkies.push((assigned, truth));
                largest |= assigned;
            }
            if truth == 0 {
                break;
            }
            truth = (truth - 1) & assigned;
        }
    }
    autarkies.sort_by_key(|&(a, t)| (a.count_ones(), a, t));
    let lean_kernel = formula
        .iter()
        .zip(&masked.clauses)
        .filter(|(_, &(cv, _, _))| cv & largest == 0)
        .map(|(c, _)| c.clone())
        .collect();
    Ok(AutarkyCatalog {
        masked,
        autarkies,
        largest,
        lean_kernel,
    })
}

/// A maximal autarky by enumeration. Among the maximal ones the least in
/// `(variable, value)` order is returned, with false before true.
pub fn maximal_autarky_bf(formula: &ClauseSet, limit: usize) -> Result<PartialAssignment, BruteError> {
    let catalog = enumerate_autarkies(formula, limit)?;
    Ok(catalog.maximal().min().expect("the maximal autarky exists"))
}

/// The lean kernel by enumeration.
pub fn lean_kernel_bf(formula: &ClauseSet, limit: usize) -> Result<ClauseSet, BruteError> {
    Ok(enumerate_autarkies(formula, limit)?.lean_kernel)
}

/// Subsets of `0..n` of size `k` in lexicographic order.
fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut next = (k <= n).then(|| (0..k).collect::<Vec<_>>());
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut succ = current.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if succ[i] < n - k + i {
                succ[i] += 1;
                for j in i + 1..k {
                    succ[j] = succ[j - 1] + 1;
                }
                next = Some(succ);
                break;
            }
        }
        Some(current)
    })
}

/// An oracle that answers every call with the worst answer the contract
/// permits.
///
/// * On plain formulas a satisfiable call returns the engine's model, and an
///   unsatisfiable one the smallest variable set carrying an unsatisfiable
///   sub-formula, which is `var` of a minimally unsatisfiable sub-formula.
/// * On translations a satisfiable call returns the lift of a smallest
///   autarky compatible with the extra clauses, least in `(variable, value)`
///   order among those.
/// * On unsatisfiable steering calls asking for used variables it returns
///   `var` of a minimally unsatisfiable sub-formula over the fewest
///   variable classes.
///
/// Calls that only ask for satisfiability or a model get the engine's core
/// on UNSAT, since the caller never looks at it.
#[derive(Debug, Clone)]
pub struct AdversarialOracle {
    limit: usize,
    engine: Engine,
}

impl Default for AdversarialOracle {
    fn default() -> Self {
        AdversarialOracle::with_limit(DEFAULT_LIMIT)
    }
}

impl AdversarialOracle {
    pub fn with_limit(limit: usize) -> Self {
        AdversarialOracle {
            limit,
            engine: Engine::default(),
        }
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    fn plain(&self, kind: OracleKind, formula: &ClauseSet) -> Result<OracleAnswer, OracleError> {
        let vars = formula.vars();
        check_limit(vars.len(), self.limit)?;
        let answer = self.engine.solve_full(formula);
        if answer.is_sat() || !wants_core(kind) {
            return Ok(answer);
        }
        let order: Vec<Var> = vars.iter().copied().collect();
        for k in 0..=order.len() {
            for pick in combinations(order.len(), k) {
                let u: VarSet = pick.iter().map(|&i| order[i]).collect();
                if !self.engine.solve_decision(&formula.clauses_within(&u)) {
                    return Ok(OracleAnswer::Unsat(u));
                }
            }
        }
        unreachable!("the whole formula is unsatisfiable")
    }

    fn translated(&self, query: &OracleQuery<'_>, map: &VarMap) -> Result<OracleAnswer, OracleError> {
        let (h, window) =
            decode_translation(query.base, map).map_err(OracleError::MalformedTranslation)?;
        check_limit(window.len(), self.limit)?;
        let formula = query.formula();
        let answer = self.engine.solve_full(&formula);
        match answer {
            OracleAnswer::Sat(_) => self.smallest_model(query, map, &h, &window, &formula),
            OracleAnswer::Unsat(_) if !wants_core(query.kind) => Ok(answer),
            OracleAnswer::Unsat(core) => match query.context {
                QueryContext::Steering { .. } => Ok(self.fewest_classes(query, map, &window, &formula)),
                _ => Ok(OracleAnswer::Unsat(core)),
            },
        }
    }

    fn smallest_model(
        &self,
        query: &OracleQuery<'_>,
        map: &VarMap,
        h: &ClauseSet,
        window: &VarSet,
        formula: &ClauseSet,
    ) -> Result<OracleAnswer, OracleError> {
        let masked = Masked::new(h, window);
        let index = |v: Var| masked.vars.binary_search(&v).ok();
        // positive clauses over the window are checked on masks, the rest
        // through the engine once a candidate passes
        let mut hits = Vec::new();
        let mut rest = ClauseSet::new();
        for c in query.extra {
            let mask = c.is_positive().then(|| {
                c.vars()
                    .map(|v| index(v).map(|i| 1u64 << i))
                    .sum::<Option<u64>>()
            });
            match mask.flatten() {
                Some(m) => hits.push(m),
                None => {
                    rest.insert(c.clone());
                }
            };
        }
        let min_size = match query.context {
            QueryContext::AtLeast { bound, .. } => bound,
            _ => 0,
        };
        let n = masked.vars.len();
        for k in min_size..=n {
            for pick in combinations(n, k) {
                let assigned: u64 = pick.iter().map(|&i| 1u64 << i).sum();
                if hits.iter().any(|&m| m & assigned == 0) {
                    continue;
                }
                for signs in 0..1u64 << k {
                    // the first picked variable is the most significant sign
                    let truth: u64 = pick
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| signs >> (k - 1 - j) & 1 == 1)
                        .map(|(_, &i)| 1u64 << i)
                        .sum();
                    if !masked.is_autarky(assigned, truth) {
                        continue;
                    }
                    let psi = masked.assignment(assigned, truth);
                    let lifted = lift_total(&psi, window, map).expect("window is primary");
                    if let Some(model) = self.complete(&lifted, &rest, formula) {
                        return Ok(OracleAnswer::Sat(model));
                    }
                }
            }
        }
        Err(OracleError::MalformedTranslation(
            "satisfiable call without a matching autarky".into(),
        ))
    }

    /// Extends `lifted` to a model of `formula` if the remaining clauses
    /// allow it.
    fn complete(
        &self,
        lifted: &PartialAssignment,
        rest: &ClauseSet,
        formula: &ClauseSet,
    ) -> Option<PartialAssignment> {
        let residual = lifted.apply(rest);
        let mut model = lifted.clone();
        if !residual.is_empty() {
            let extra = self.engine.solve_sat(&residual)?;
            for (v, b) in extra.iter() {
                model.set(v, b);
            }
        }
        for v in formula.vars() {
            if !model.contains_var(v) {
                model.set(v, false);
            }
        }
        model.satisfies(formula).then_some(model)
    }

    fn fewest_classes(
        &self,
        query: &OracleQuery<'_>,
        map: &VarMap,
        window: &VarSet,
        formula: &ClauseSet,
    ) -> OracleAnswer {
        let universe: Vec<Var> = window
            .union(&classes_of(&query.extra.vars(), map))
            .copied()
            .collect();
        let anchors: BTreeSet<Vec<usize>> = query
            .extra
            .iter()
            .map(|c| {
                let classes = classes_of(&c.vars().collect(), map);
                classes
                    .iter()
                    .map(|v| universe.binary_search(v).expect("class in universe"))
                    .collect()
            })
            .collect();
        for size in 0..=universe.len() {
            let mut candidates = BTreeSet::new();
            for anchor in anchors.iter().filter(|a| a.len() <= size) {
                let others: Vec<usize> = (0..universe.len()).filter(|i| !anchor.contains(i)).collect();
                for pick in combinations(others.len(), size - anchor.len()) {
                    let mut u: Vec<usize> = anchor.clone();
                    u.extend(pick.iter().map(|&i| others[i]));
                    u.sort_unstable();
                    candidates.insert(u);
                }
            }
            for u in candidates {
                let classes: VarSet = u.iter().map(|&i| universe[i]).collect();
                let sub = formula.clauses_within(&map.primed(&classes));
                if let Some(core) = self.engine.solve(&sub).core() {
                    return OracleAnswer::Unsat(self.shrink(core).vars());
                }
            }
        }
        unreachable!("the whole formula is unsatisfiable")
    }

    /// Deletion-based reduction to a minimally unsatisfiable sub-formula.
    fn shrink(&self, core: ClauseSet) -> ClauseSet {
        let mut kept = core.clone();
        for c in &core {
            kept.remove(c);
            if self.engine.solve_decision(&kept) {
                kept.insert(c.clone());
            }
        }
        kept
    }
}

fn wants_core(kind: OracleKind) -> bool {
    matches!(kind, OracleKind::Core | OracleKind::Full)
}

impl Oracle for AdversarialOracle {
    fn ask(&mut self, query: &OracleQuery<'_>) -> Result<OracleAnswer, OracleError> {
        match query.varmap() {
            None => self.plain(query.kind, &query.formula()),
            Some(map) => self.translated(query, map),
        }
    }
}

/// One adversarial answer for `t_W(G) ∪ steering` under `map`.
pub fn adversarial_answer(
    translated: &ClauseSet,
    map: &VarMap,
    steering: &ClauseSet,
    limit: usize,
) -> Result<OracleAnswer, OracleError> {
    AdversarialOracle::with_limit(limit).ask(&OracleQuery {
        kind: OracleKind::Full,
        base: translated,
        extra: steering,
        context: QueryContext::Steering { varmap: map },
    })
}
