//! Clause-sets, partial assignments and the basic operations on them:
//! application, restriction, autarky checks and composition.
//!
//! All containers use canonical sorted storage, so two clause-sets are equal
//! exactly when they contain the same clauses.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::CnfError;

/// A propositional variable, identified by a positive integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u32);

impl Var {
    /// Panics if `id == 0`.
    pub fn new(id: u32) -> Self {
        assert!(id >= 1, "variable ids start at 1");
        Var(id)
    }

    pub fn try_new(id: u32) -> Option<Self> {
        (id >= 1).then_some(Var(id))
    }

    pub fn id(self) -> u32 {
        self.0
    }

    pub fn positive(self) -> Lit {
        Lit::new(self, true)
    }

    pub fn negative(self) -> Lit {
        Lit::new(self, false)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A literal: a variable together with a sign.
///
/// Literals order by variable first and put the negative literal before the
/// positive one, which gives clauses a canonical layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Lit {
    var: Var,
    positive: bool,
}

impl Lit {
    pub fn new(var: Var, positive: bool) -> Self {
        Lit { var, positive }
    }

    /// Builds a literal from its DIMACS integer; `None` for 0.
    pub fn from_dimacs(code: i64) -> Option<Self> {
        if code == 0 {
            return None;
        }
        let id = u32::try_from(code.unsigned_abs()).ok()?;
        Some(Lit::new(Var::new(id), code > 0))
    }

    pub fn to_dimacs(self) -> i64 {
        let id = i64::from(self.var.id());
        if self.positive {
            id
        } else {
            -id
        }
    }

    pub fn var(self) -> Var {
        self.var
    }

    pub fn is_positive(self) -> bool {
        self.positive
    }

    pub fn complement(self) -> Self {
        Lit {
            var: self.var,
            positive: !self.positive,
        }
    }
}

impl std::ops::Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        self.complement()
    }
}

impl Ord for Lit {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.var, self.positive).cmp(&(other.var, other.positive))
    }
}

impl PartialOrd for Lit {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// A finite set of variables.
pub type VarSet = BTreeSet<Var>;

/// A clause: a set of literals without complementary pairs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Clause {
    lits: Vec<Lit>,
}

impl Clause {
    /// Collapses duplicate literals; rejects clauses containing a literal and
    /// its complement.
    pub fn new<I: IntoIterator<Item = Lit>>(lits: I) -> Result<Self, CnfError> {
        let mut lits: Vec<Lit> = lits.into_iter().collect();
        lits.sort();
        lits.dedup();
        if lits.windows(2).any(|w| w[0].var() == w[1].var()) {
            return Err(CnfError::Tautology {
                clause: lits.iter().map(|l| l.to_dimacs()).collect(),
            });
        }
        Ok(Clause { lits })
    }

    /// Convenience constructor from DIMACS integers. Panics on 0 or on a
    /// tautology; meant for literals known to be well-formed.
    pub fn from_ints(ints: &[i64]) -> Self {
        Clause::new(ints.iter().map(|&i| Lit::from_dimacs(i).expect("literal 0")))
            .expect("tautological clause")
    }

    /// The empty clause.
    pub fn empty() -> Self {
        Clause::default()
    }

    /// Builds a clause from literals already known to be canonical.
    fn from_sorted(lits: Vec<Lit>) -> Self {
        debug_assert!(lits.windows(2).all(|w| w[0].var() < w[1].var()));
        Clause { lits }
    }

    pub fn lits(&self) -> &[Lit] {
        &self.lits
    }

    pub fn len(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn contains(&self, lit: Lit) -> bool {
        self.lits.binary_search(&lit).is_ok()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.lits.iter().map(|l| l.var())
    }

    pub fn is_positive(&self) -> bool {
        self.lits.iter().all(|l| l.is_positive())
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.lits.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

/// A finite set of clauses.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ClauseSet {
    clauses: BTreeSet<Clause>,
}

impl ClauseSet {
    pub const EMPTY: ClauseSet = ClauseSet {
        clauses: BTreeSet::new(),
    };

    /// The empty clause-set.
    pub fn new() -> Self {
        ClauseSet::default()
    }

    /// Panics on tautologies, see [`Clause::from_ints`].
    pub fn from_ints<C: AsRef<[i64]>>(clauses: &[C]) -> Self {
        clauses.iter().map(|c| Clause::from_ints(c.as_ref())).collect()
    }

    pub fn insert(&mut self, clause: Clause) -> bool {
        self.clauses.insert(clause)
    }

    pub fn remove(&mut self, clause: &Clause) -> bool {
        self.clauses.remove(clause)
    }

    pub fn contains(&self, clause: &Clause) -> bool {
        self.clauses.contains(clause)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Clause> + '_ {
        self.clauses.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn has_empty_clause(&self) -> bool {
        self.clauses.first().is_some_and(Clause::is_empty)
    }

    pub fn vars(&self) -> VarSet {
        self.clauses.iter().flat_map(Clause::vars).collect()
    }

    /// Number of variables.
    pub fn n(&self) -> usize {
        self.vars().len()
    }

    /// Number of clauses.
    pub fn c(&self) -> usize {
        self.clauses.len()
    }

    /// Number of literal occurrences.
    pub fn ell(&self) -> usize {
        self.clauses.iter().map(Clause::len).sum()
    }

    pub fn max_clause_len(&self) -> usize {
        self.clauses.iter().map(Clause::len).max().unwrap_or(0)
    }

    pub fn max_var(&self) -> Option<Var> {
        self.clauses.iter().flat_map(Clause::vars).max()
    }

    pub fn union(&self, other: &ClauseSet) -> ClauseSet {
        let mut out = self.clone();
        out.clauses.extend(other.clauses.iter().cloned());
        out
    }

    pub fn is_subset(&self, other: &ClauseSet) -> bool {
        self.clauses.is_subset(&other.clauses)
    }

    pub fn difference(&self, other: &ClauseSet) -> ClauseSet {
        self.clauses.difference(&other.clauses).cloned().collect()
    }

    /// `F[V]`: intersect every clause with the literals over `vars` and drop
    /// the clauses that become empty.
    pub fn restrict(&self, vars: &VarSet) -> ClauseSet {
        self.clauses
            .iter()
            .filter_map(|c| {
                let kept: Vec<Lit> = c
                    .lits
                    .iter()
                    .copied()
                    .filter(|l| vars.contains(&l.var()))
                    .collect();
                (!kept.is_empty()).then(|| Clause::from_sorted(kept))
            })
            .collect()
    }

    /// Clauses whose variables all lie in `vars`.
    pub fn clauses_within(&self, vars: &VarSet) -> ClauseSet {
        self.clauses
            .iter()
            .filter(|c| c.vars().all(|v| vars.contains(&v)))
            .cloned()
            .collect()
    }
}

impl FromIterator<Clause> for ClauseSet {
    fn from_iter<I: IntoIterator<Item = Clause>>(iter: I) -> Self {
        ClauseSet {
            clauses: iter.into_iter().collect(),
        }
    }
}

impl Extend<Clause> for ClauseSet {
    fn extend<I: IntoIterator<Item = Clause>>(&mut self, iter: I) {
        self.clauses.extend(iter);
    }
}

impl IntoIterator for ClauseSet {
    type Item = Clause;
    type IntoIter = std::collections::btree_set::IntoIter<Clause>;

    fn into_iter(self) -> Self::IntoIter {
        self.clauses.into_iter()
    }
}

impl<'a> IntoIterator for &'a ClauseSet {
    type Item = &'a Clause;
    type IntoIter = std::collections::btree_set::Iter<'a, Clause>;

    fn into_iter(self) -> Self::IntoIter {
        self.clauses.iter()
    }
}

impl fmt::Display for ClauseSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.clauses.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

/// A finite map from variables to truth values.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PartialAssignment {
    map: BTreeMap<Var, bool>,
}

impl PartialAssignment {
    /// The empty assignment.
    pub fn new() -> Self {
        PartialAssignment::default()
    }

    /// Builds an assignment from `(variable id, value)` pairs.
    pub fn from_pairs(pairs: &[(u32, bool)]) -> Self {
        pairs.iter().map(|&(v, b)| (Var::new(v), b)).collect()
    }

    /// Assignment making every given literal true.
    pub fn from_lits<I: IntoIterator<Item = Lit>>(lits: I) -> Self {
        lits.into_iter().map(|l| (l.var(), l.is_positive())).collect()
    }

    pub fn set(&mut self, var: Var, value: bool) -> Option<bool> {
        self.map.insert(var, value)
    }

    pub fn get(&self, var: Var) -> Option<bool> {
        self.map.get(&var).copied()
    }

    /// Value of a literal, `None` when its variable is unassigned.
    pub fn value(&self, lit: Lit) -> Option<bool> {
        self.get(lit.var()).map(|b| b == lit.is_positive())
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn vars(&self) -> VarSet {
        self.map.keys().copied().collect()
    }

    pub fn contains_var(&self, var: Var) -> bool {
        self.map.contains_key(&var)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, bool)> + '_ {
        self.map.iter().map(|(&v, &b)| (v, b))
    }

    /// The literals made true.
    pub fn true_lits(&self) -> impl Iterator<Item = Lit> + '_ {
        self.iter().map(|(v, b)| Lit::new(v, b))
    }

    /// Keeps only the variables in `vars`.
    pub fn restricted_to(&self, vars: &VarSet) -> PartialAssignment {
        self.iter().filter(|(v, _)| vars.contains(v)).collect()
    }

    /// `true` iff some literal of `clause` is set true.
    pub fn satisfies_clause(&self, clause: &Clause) -> bool {
        clause.lits().iter().any(|&l| self.value(l) == Some(true))
    }

    pub fn touches(&self, clause: &Clause) -> bool {
        clause.vars().any(|v| self.contains_var(v))
    }

    /// `φ * F`: drop the satisfied clauses and remove the falsified literals
    /// from the others.
    pub fn apply(&self, formula: &ClauseSet) -> ClauseSet {
        formula
            .iter()
            .filter(|c| !self.satisfies_clause(c))
            .map(|c| {
                Clause::from_sorted(
                    c.lits()
                        .iter()
                        .copied()
                        .filter(|&l| self.value(l).is_none())
                        .collect(),
                )
            })
            .collect()
    }

    /// `true` iff every clause of `formula` touched by `self` is satisfied.
    pub fn is_autarky_for(&self, formula: &ClauseSet) -> bool {
        formula
            .iter()
            .all(|c| !self.touches(c) || self.satisfies_clause(c))
    }

    /// `true` iff applying `self` removes every clause.
    pub fn satisfies(&self, formula: &ClauseSet) -> bool {
        formula.iter().all(|c| self.satisfies_clause(c))
    }

    /// Combined assignment; `self` wins where both are defined.
    pub fn compose(&self, other: &PartialAssignment) -> PartialAssignment {
        let mut out = other.clone();
        out.map.extend(self.map.iter().map(|(&v, &b)| (v, b)));
        out
    }
}

impl FromIterator<(Var, bool)> for PartialAssignment {
    fn from_iter<I: IntoIterator<Item = (Var, bool)>>(iter: I) -> Self {
        PartialAssignment {
            map: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for PartialAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (v, b)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}->{}", u8::from(b))?;
        }
        write!(f, "}}")
    }
}

/// Composition of two autarkies; `phi` takes precedence on shared variables.
pub fn compose_autarkies(phi: &PartialAssignment, psi: &PartialAssignment) -> PartialAssignment {
    phi.compose(psi)
}

/// Turns a quasi-maximal autarky into a maximal one by assigning 0 to every
/// variable of `formula` that neither `phi` assigns nor the reduced formula
/// still mentions.
pub fn extend_quasi_maximal(
    phi: &PartialAssignment,
    formula: &ClauseSet,
) -> Result<PartialAssignment, CnfError> {
    let remaining = phi.apply(formula).vars();
    let mut out = phi.clone();
    for v in formula.vars() {
        if !remaining.contains(&v) && !out.contains_var(v) {
            out.set(v, false);
        }
    }
    // variables of phi outside var(F) are irrelevant for the contract
    let out = out.restricted_to(&formula.vars().difference(&remaining).copied().collect());
    if !out.is_autarky_for(formula) {
        return Err(CnfError::NotQuasiMaximal);
    }
    Ok(out)
}
