//! A small CDCL solver that answers the extended oracle: a total model on
//! satisfiable inputs, and on unsatisfiable inputs the set of input clauses
//! used by the refutation it found.
//!
//! Every learned clause remembers the clauses it was resolved from, and every
//! level-0 assignment remembers its reason. When the empty clause is derived
//! the input clauses reachable from the final conflict form an axiom set
//! `F'` that a tree refutation uses in full. The core is never minimised:
//! a larger `F'` excludes more variables from autarkies.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cnf::{Clause, ClauseSet, PartialAssignment, Var, VarSet};
use crate::oracle::OracleAnswer;

/// Outcome of a solve with the full refutation core.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    /// Total model over the variables of the input.
    Sat(PartialAssignment),
    /// Input clauses used by the refutation.
    Unsat(ClauseSet),
}

impl SolveOutcome {
    pub fn is_sat(&self) -> bool {
        matches!(self, SolveOutcome::Sat(_))
    }

    pub fn core(self) -> Option<ClauseSet> {
        match self {
            SolveOutcome::Sat(_) => None,
            SolveOutcome::Unsat(core) => Some(core),
        }
    }

    pub fn into_answer(self) -> OracleAnswer {
        match self {
            SolveOutcome::Sat(model) => OracleAnswer::Sat(model),
            SolveOutcome::Unsat(core) => OracleAnswer::Unsat(core.vars()),
        }
    }
}

/// Solver configuration. The seed perturbs the initial variable order and
/// polarity; seed 0 keeps both at their defaults (ascending order, false).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Engine {
    pub seed: u64,
}

impl Engine {
    pub fn new(seed: u64) -> Self {
        Engine { seed }
    }

    pub fn solve(&self, formula: &ClauseSet) -> SolveOutcome {
        Search::new(formula, self.seed).run()
    }

    /// The extended oracle `O01`.
    pub fn solve_full(&self, formula: &ClauseSet) -> OracleAnswer {
        self.solve(formula).into_answer()
    }

    /// The standard oracle `O1`: `None` for unsatisfiable inputs.
    pub fn solve_sat(&self, formula: &ClauseSet) -> Option<PartialAssignment> {
        match self.solve(formula) {
            SolveOutcome::Sat(m) => Some(m),
            SolveOutcome::Unsat(_) => None,
        }
    }

    /// The core oracle `O0`: `None` for satisfiable inputs, else the
    /// variables of the refutation's axioms.
    pub fn solve_core(&self, formula: &ClauseSet) -> Option<VarSet> {
        match self.solve(formula) {
            SolveOutcome::Sat(_) => None,
            SolveOutcome::Unsat(core) => Some(core.vars()),
        }
    }

    /// The plain decision oracle `O`.
    pub fn solve_decision(&self, formula: &ClauseSet) -> bool {
        self.solve(formula).is_sat()
    }
}

pub fn solve_full(formula: &ClauseSet) -> OracleAnswer {
    Engine::default().solve_full(formula)
}

pub fn solve_sat(formula: &ClauseSet) -> Option<PartialAssignment> {
    Engine::default().solve_sat(formula)
}

pub fn solve_core(formula: &ClauseSet) -> Option<VarSet> {
    Engine::default().solve_core(formula)
}

pub fn solve_decision(formula: &ClauseSet) -> bool {
    Engine::default().solve_decision(formula)
}

type Code = u32;

fn code_var(l: Code) -> usize {
    (l >> 1) as usize
}

fn code_neg(l: Code) -> Code {
    l ^ 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Premise {
    Clause(usize),
    /// The level-0 derivation of a variable's value.
    Unit(usize),
}

#[derive(Debug)]
struct StoredClause {
    lits: Vec<Code>,
    premises: Vec<Premise>,
}

const UNASSIGNED: u8 = 2;

struct Search<'a> {
    input: Vec<&'a Clause>,
    vars: Vec<Var>,
    clauses: Vec<StoredClause>,
    watches: Vec<Vec<usize>>,
    values: Vec<u8>,
    level: Vec<u32>,
    reason: Vec<Option<usize>>,
    trail: Vec<Code>,
    trail_lim: Vec<usize>,
    qhead: usize,
    phase: Vec<bool>,
    heap: VarHeap,
    var_inc: f64,
    seen: Vec<bool>,
}

impl<'a> Search<'a> {
    fn new(formula: &'a ClauseSet, seed: u64) -> Self {
        let vars: Vec<Var> = formula.vars().into_iter().collect();
        let index: HashMap<Var, usize> = vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let input: Vec<&Clause> = formula.iter().collect();
        let clauses = input
            .iter()
            .map(|c| StoredClause {
                lits: c
                    .lits()
                    .iter()
                    .map(|l| (index[&l.var()] as Code) << 1 | Code::from(!l.is_positive()))
                    .collect(),
                premises: Vec::new(),
            })
            .collect();
        let n = vars.len();
        let mut activity = vec![0.0; n];
        let mut phase = vec![false; n];
        if seed != 0 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for i in 0..n {
                activity[i] = rng.gen::<f64>() * 1e-3;
                phase[i] = rng.gen();
            }
        }
        Search {
            input,
            vars,
            clauses,
            watches: vec![Vec::new(); 2 * n],
            values: vec![UNASSIGNED; n],
            level: vec![0; n],
            reason: vec![None; n],
            trail: Vec::with_capacity(n),
            trail_lim: Vec::new(),
            qhead: 0,
            phase,
            heap: VarHeap::new(activity),
            var_inc: 1.0,
            seen: vec![false; n],
        }
    }

    fn lit_value(&self, l: Code) -> u8 {
        let v = self.values[code_var(l)];
        if v == UNASSIGNED {
            UNASSIGNED
        } else {
            v ^ (l & 1) as u8
        }
    }

    fn decision_level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    fn assign(&mut self, l: Code, reason: Option<usize>) {
        let v = code_var(l);
        debug_assert_eq!(self.values[v], UNASSIGNED);
        self.values[v] = u8::from(l & 1 == 0);
        self.level[v] = self.decision_level();
        self.reason[v] = reason;
        self.trail.push(l);
    }

    fn run(mut self) -> SolveOutcome {
        // empty input clause: the refutation is the axiom itself
        if let Some(id) = self.clauses.iter().position(|c| c.lits.is_empty()) {
            return self.core_from(vec![Premise::Clause(id)]);
        }
        for id in 0..self.clauses.len() {
            let lits = &self.clauses[id].lits;
            if lits.len() == 1 {
                let l = lits[0];
                match self.lit_value(l) {
                    UNASSIGNED => self.assign(l, Some(id)),
                    1 => {}
                    _ => return self.final_conflict(id),
                }
            } else {
                let (a, b) = (lits[0], lits[1]);
                self.watches[a as usize].push(id);
                self.watches[b as usize].push(id);
            }
        }

        let mut conflicts_until_restart = luby(1) * 100;
        let mut restarts = 1;
        loop {
            if let Some(confl) = self.propagate() {
                if self.decision_level() == 0 {
                    return self.final_conflict(confl);
                }
                let (learnt, premises, bt) = self.analyze(confl);
                self.backtrack(bt);
                let id = self.clauses.len();
                let asserting = learnt[0];
                if learnt.len() > 1 {
                    self.watches[learnt[0] as usize].push(id);
                    self.watches[learnt[1] as usize].push(id);
                }
                self.clauses.push(StoredClause { lits: learnt, premises });
                self.assign(asserting, Some(id));
                self.var_inc /= 0.95;
                conflicts_until_restart -= 1;
                if conflicts_until_restart == 0 {
                    restarts += 1;
                    conflicts_until_restart = luby(restarts) * 100;
                    self.backtrack(0);
                }
            } else {
                match self.heap.pop_unassigned(&self.values) {
                    None => return self.model(),
                    Some(v) => {
                        self.trail_lim.push(self.trail.len());
                        let l = (v as Code) << 1 | Code::from(!self.phase[v]);
                        self.assign(l, None);
                    }
                }
            }
        }
    }

    /// Unit propagation with two watched literals; returns a conflicting
    /// clause if one is found.
    fn propagate(&mut self) -> Option<usize> {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            let false_lit = code_neg(p);
            let mut watchers = std::mem::take(&mut self.watches[false_lit as usize]);
            let mut i = 0;
            let mut conflict = None;
            while i < watchers.len() {
                let id = watchers[i];
                let lits = &mut self.clauses[id].lits;
                if lits[0] == false_lit {
                    lits.swap(0, 1);
                }
                let first = lits[0];
                if self.lit_value_of(first) == 1 {
                    i += 1;
                    continue;
                }
                let mut moved = false;
                for k in 2..self.clauses[id].lits.len() {
                    let cand = self.clauses[id].lits[k];
                    if self.lit_value(cand) != 0 {
                        self.clauses[id].lits.swap(1, k);
                        self.watches[cand as usize].push(id);
                        watchers.swap_remove(i);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                match self.lit_value(first) {
                    0 => {
                        conflict = Some(id);
                        break;
                    }
                    UNASSIGNED => self.assign(first, Some(id)),
                    _ => {}
                }
                i += 1;
            }
            let rest = std::mem::take(&mut self.watches[false_lit as usize]);
            watchers.extend(rest);
            self.watches[false_lit as usize] = watchers;
            if conflict.is_some() {
                self.qhead = self.trail.len();
                return conflict;
            }
        }
        None
    }

    fn lit_value_of(&self, l: Code) -> u8 {
        self.lit_value(l)
    }

    fn bump(&mut self, v: usize) {
        self.heap.bump(v, self.var_inc);
        if self.heap.activity[v] > 1e100 {
            self.heap.rescale(1e-100);
            self.var_inc *= 1e-100;
        }
    }

    /// First-UIP analysis. Level-0 literals are resolved away implicitly and
    /// recorded as unit premises.
    fn analyze(&mut self, confl: usize) -> (Vec<Code>, Vec<Premise>, u32) {
        let current = self.decision_level();
        let mut learnt: Vec<Code> = vec![0];
        let mut premises = vec![Premise::Clause(confl)];
        let mut level0 = Vec::new();
        let mut open = 0usize;
        let mut clause = confl;
        let mut idx = self.trail.len();
        let mut pivot: Option<Code> = None;
        loop {
            let lits = self.clauses[clause].lits.clone();
            for &q in &lits {
                if Some(q) == pivot {
                    continue;
                }
                let v = code_var(q);
                if self.seen[v] {
                    continue;
                }
                self.seen[v] = true;
                if self.level[v] == 0 {
                    level0.push(v);
                    premises.push(Premise::Unit(v));
                    continue;
                }
                self.bump(v);
                if self.level[v] == current {
                    open += 1;
                } else {
                    learnt.push(q);
                }
            }
            loop {
                idx -= 1;
                if self.seen[code_var(self.trail[idx])] {
                    break;
                }
            }
            let p = self.trail[idx];
            let v = code_var(p);
            self.seen[v] = false;
            open -= 1;
            if open == 0 {
                learnt[0] = code_neg(p);
                break;
            }
            clause = self.reason[v].expect("implied literal has a reason");
            premises.push(Premise::Clause(clause));
            pivot = Some(p);
        }
        for &q in &learnt[1..] {
            self.seen[code_var(q)] = false;
        }
        for v in level0 {
            self.seen[v] = false;
        }
        let mut bt = 0;
        if learnt.len() > 1 {
            let mut best = 1;
            for k in 2..learnt.len() {
                if self.level[code_var(learnt[k])] > self.level[code_var(learnt[best])] {
                    best = k;
                }
            }
            learnt.swap(1, best);
            bt = self.level[code_var(learnt[1])];
        }
        (learnt, premises, bt)
    }

    fn backtrack(&mut self, level: u32) {
        if self.decision_level() <= level {
            return;
        }
        let lim = self.trail_lim[level as usize];
        for k in (lim..self.trail.len()).rev() {
            let l = self.trail[k];
            let v = code_var(l);
            self.phase[v] = l & 1 == 0;
            self.values[v] = UNASSIGNED;
            self.reason[v] = None;
            self.heap.insert(v);
        }
        self.trail.truncate(lim);
        self.trail_lim.truncate(level as usize);
        self.qhead = lim;
    }

    fn final_conflict(&self, confl: usize) -> SolveOutcome {
        let mut start = vec![Premise::Clause(confl)];
        start.extend(
            self.clauses[confl]
                .lits
                .iter()
                .map(|&l| Premise::Unit(code_var(l))),
        );
        self.core_from(start)
    }

    /// Input clauses reachable from `start` in the derivation graph.
    fn core_from(&self, start: Vec<Premise>) -> SolveOutcome {
        let mut clause_seen = vec![false; self.clauses.len()];
        let mut unit_seen = vec![false; self.vars.len()];
        let mut stack = start;
        let mut core = ClauseSet::new();
        while let Some(item) = stack.pop() {
            match item {
                Premise::Clause(id) => {
                    if std::mem::replace(&mut clause_seen[id], true) {
                        continue;
                    }
                    if id < self.input.len() {
                        core.insert(self.input[id].clone());
                    } else {
                        stack.extend(self.clauses[id].premises.iter().copied());
                    }
                }
                Premise::Unit(v) => {
                    if std::mem::replace(&mut unit_seen[v], true) {
                        continue;
                    }
                    let r = self.reason[v].expect("level-0 literal has a reason");
                    stack.push(Premise::Clause(r));
                    stack.extend(
                        self.clauses[r]
                            .lits
                            .iter()
                            .map(|&l| code_var(l))
                            .filter(|&u| u != v)
                            .map(Premise::Unit),
                    );
                }
            }
        }
        SolveOutcome::Unsat(core)
    }

    fn model(&self) -> SolveOutcome {
        let model: PartialAssignment = self
            .vars
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, self.values[i] == 1))
            .collect();
        assert!(
            self.input.iter().all(|c| model.satisfies_clause(c)),
            "engine produced a non-model"
        );
        SolveOutcome::Sat(model)
    }
}

/// The Luby sequence 1, 1, 2, 1, 1, 2, 4, ...
fn luby(mut i: u64) -> u64 {
    loop {
        let mut k = 1;
        while (1u64 << k) - 1 < i {
            k += 1;
        }
        if (1u64 << k) - 1 == i {
            return 1 << (k - 1);
        }
        i -= (1u64 << (k - 1)) - 1;
    }
}

/// Max-heap of variables keyed by activity; ties go to the smaller index.
struct VarHeap {
    activity: Vec<f64>,
    heap: Vec<usize>,
    pos: Vec<Option<usize>>,
}

impl VarHeap {
    fn new(activity: Vec<f64>) -> Self {
        let n = activity.len();
        let mut h = VarHeap {
            activity,
            heap: Vec::with_capacity(n),
            pos: vec![None; n],
        };
        for v in 0..n {
            h.insert(v);
        }
        h
    }

    fn better(&self, a: usize, b: usize) -> bool {
        let (x, y) = (self.activity[a], self.activity[b]);
        x > y || (x == y && a < b)
    }

    fn insert(&mut self, v: usize) {
        if self.pos[v].is_some() {
            return;
        }
        self.pos[v] = Some(self.heap.len());
        self.heap.push(v);
        self.sift_up(self.heap.len() - 1);
    }

    fn bump(&mut self, v: usize, inc: f64) {
        self.activity[v] += inc;
        if let Some(p) = self.pos[v] {
            self.sift_up(p);
        }
    }

    fn rescale(&mut self, factor: f64) {
        for a in &mut self.activity {
            *a *= factor;
        }
    }

    fn pop_unassigned(&mut self, values: &[u8]) -> Option<usize> {
        while !self.heap.is_empty() {
            let top = self.heap[0];
            let last = self.heap.pop().expect("nonempty");
            self.pos[top] = None;
            if !self.heap.is_empty() {
                self.heap[0] = last;
                self.pos[last] = Some(0);
                self.sift_down(0);
            }
            if values[top] == UNASSIGNED {
                return Some(top);
            }
        }
        None
    }

    fn sift_up(&mut self, mut i: usize) {
        while i > 0 {
            let parent = (i - 1) / 2;
            if !self.better(self.heap[i], self.heap[parent]) {
                break;
            }
            self.swap(i, parent);
            i = parent;
        }
    }

    fn sift_down(&mut self, mut i: usize) {
        loop {
            let (l, r) = (2 * i + 1, 2 * i + 2);
            let mut best = i;
            if l < self.heap.len() && self.better(self.heap[l], self.heap[best]) {
                best = l;
            }
            if r < self.heap.len() && self.better(self.heap[r], self.heap[best]) {
                best = r;
            }
            if best == i {
                break;
            }
            self.swap(i, best);
            i = best;
        }
    }

    fn swap(&mut self, i: usize, j: usize) {
        self.heap.swap(i, j);
        self.pos[self.heap[i]] = Some(i);
        self.pos[self.heap[j]] = Some(j);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cs(c: &[&[i64]]) -> ClauseSet {
        ClauseSet::from_ints(c)
    }

    #[test]
    fn luby_prefix() {
        let seq: Vec<u64> = (1..=15).map(luby).collect();
        assert_eq!(seq, [1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8]);
    }

    #[test]
    fn empty_clause_core_is_empty() {
        assert_eq!(solve_full(&cs(&[&[]])), OracleAnswer::Unsat(VarSet::new()));
        let with_other = cs(&[&[], &[1, 2]]);
        assert_eq!(
            Engine::default().solve(&with_other),
            SolveOutcome::Unsat(cs(&[&[]]))
        );
    }

    #[test]
    fn core_avoids_autarky_variables() {
        match solve_full(&cs(&[&[1], &[-1], &[2]])) {
            OracleAnswer::Unsat(vars) => {
                assert!(vars.contains(&Var::new(1)));
                assert!(!vars.contains(&Var::new(2)));
            }
            other => panic!("expected unsat, got {other:?}"),
        }
    }

    #[test]
    fn satisfiable_gets_total_model() {
        let f = cs(&[&[1, 2]]);
        match solve_full(&f) {
            OracleAnswer::Sat(m) => {
                assert_eq!(m.vars(), f.vars());
                assert!(m.satisfies(&f));
            }
            other => panic!("expected sat, got {other:?}"),
        }
    }

    #[test]
    fn projections_of_the_full_oracle() {
        assert!(!solve_decision(&cs(&[&[]])));
        assert!(solve_decision(&ClauseSet::new()));
        assert!(!solve_decision(&cs(&[&[1], &[-1]])));
        assert_eq!(solve_sat(&cs(&[&[1], &[-1], &[2]])), None);
        assert_eq!(solve_core(&cs(&[&[1, 2]])), None);
        assert_eq!(solve_core(&cs(&[&[]])), Some(VarSet::new()));
        assert!(solve_sat(&cs(&[&[1, 2]])).is_some());
    }

    #[test]
    fn pigeonhole_three_into_two() {
        // p_{i,j}: pigeon i in hole j, var 2(i-1)+j
        let p = |i: i64, j: i64| 2 * (i - 1) + j;
        let mut clauses: Vec<Vec<i64>> = (1..=3).map(|i| vec![p(i, 1), p(i, 2)]).collect();
        for j in 1..=2 {
            for a in 1..=3 {
                for b in a + 1..=3 {
                    clauses.push(vec![-p(a, j), -p(b, j)]);
                }
            }
        }
        let mut f = ClauseSet::from_ints(&clauses);
        f.insert(Clause::from_ints(&[7, 8]));
        match Engine::default().solve(&f) {
            SolveOutcome::Unsat(core) => {
                assert!(!core.contains(&Clause::from_ints(&[7, 8])));
                assert!(!Engine::new(3).solve_decision(&core));
            }
            other => panic!("expected unsat, got {other:?}"),
        }
    }
}
