//! The autarky-search encoding.
//!
//! Every primary variable `v` gets two auxiliary variables `t(v)` and
//! `t(-v)`. A model of the translation describes a partial assignment: the
//! primary variable itself says whether `v` is assigned, `t(v)` says it is
//! set true and `t(-v)` says it is set false. The translation consists of
//!
//! * autarky clauses `{-t(-x)} ∪ {t(y) : y ∈ C \ {x}}`, one per literal
//!   occurrence `x ∈ C` with `var(x)` in the window,
//! * at-most-one clauses `{-t(v), -t(-v)}`,
//! * indicator clauses for `v <-> t(v) ∨ t(-v)`.
//!
//! The id layout is fixed once per run from the input's largest variable
//! `N`: primaries are `1..=N`, `t(v) = N + 2v - 1`, `t(-v) = N + 2v`, and
//! everything from `3N + 1` upwards is reserved for cardinality auxiliaries.

use crate::cnf::{Clause, ClauseSet, Lit, PartialAssignment, Var, VarSet};
use crate::error::TranslationError;

/// The fixed bijection between primary variables and their auxiliaries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VarMap {
    primary_count: u32,
}

/// Which of the three id ranges a variable belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarRole {
    Primary,
    /// `t(lit)` for the given primary literal.
    Aux(Lit),
    Cardinality,
}

impl VarMap {
    pub fn new(primary_count: u32) -> Self {
        VarMap { primary_count }
    }

    /// Map sized for the variable range of `formula`.
    pub fn for_formula(formula: &ClauseSet) -> Self {
        VarMap::new(formula.max_var().map_or(0, Var::id))
    }

    pub fn primary_count(&self) -> u32 {
        self.primary_count
    }

    pub fn cardinality_base(&self) -> u32 {
        3 * self.primary_count + 1
    }

    pub fn is_primary(&self, var: Var) -> bool {
        var.id() <= self.primary_count
    }

    pub fn is_cardinality(&self, var: Var) -> bool {
        var.id() >= self.cardinality_base()
    }

    /// The auxiliary variable `t(lit)`; `lit` must be over a primary variable.
    pub fn t(&self, lit: Lit) -> Var {
        let v = lit.var().id();
        debug_assert!(v <= self.primary_count);
        let id = self.primary_count + 2 * v - u32::from(lit.is_positive());
        Var::new(id)
    }

    pub fn role(&self, var: Var) -> VarRole {
        let id = var.id();
        let n = self.primary_count;
        if id <= n {
            VarRole::Primary
        } else if id <= 3 * n {
            let off = id - n;
            let primary = Var::new(off.div_ceil(2));
            VarRole::Aux(Lit::new(primary, off % 2 == 1))
        } else {
            VarRole::Cardinality
        }
    }

    /// The primary variable of the class containing `var`, or `None` for
    /// cardinality auxiliaries.
    pub fn class_of(&self, var: Var) -> Option<Var> {
        match self.role(var) {
            VarRole::Primary => Some(var),
            VarRole::Aux(lit) => Some(lit.var()),
            VarRole::Cardinality => None,
        }
    }

    /// The three members `v, t(v), t(-v)` of the class of primary `v`.
    pub fn class_members(&self, primary: Var) -> [Var; 3] {
        [primary, self.t(primary.positive()), self.t(primary.negative())]
    }

    /// `V ∪ t(lit(V))` for a set of primary variables.
    pub fn primed(&self, primaries: &VarSet) -> VarSet {
        primaries
            .iter()
            .flat_map(|&v| self.class_members(v))
            .collect()
    }

    fn check_primary(&self, var: Var) -> Result<(), TranslationError> {
        if self.is_primary(var) {
            Ok(())
        } else {
            Err(TranslationError::IdCollision {
                var: var.id(),
                primary_count: self.primary_count,
            })
        }
    }
}

/// Closes `vars` under the three-element classes.
pub fn saturate(vars: &VarSet, map: &VarMap) -> Result<VarSet, TranslationError> {
    let mut classes = VarSet::new();
    for &v in vars {
        match map.class_of(v) {
            Some(p) => {
                classes.insert(p);
            }
            None => return Err(TranslationError::IdOutOfRange { var: v.id() }),
        }
    }
    Ok(map.primed(&classes))
}

/// Primary classes touched by `vars`; cardinality auxiliaries are skipped.
pub fn classes_of(vars: &VarSet, map: &VarMap) -> VarSet {
    vars.iter().filter_map(|&v| map.class_of(v)).collect()
}

/// A translation `t_V(F)` together with the map and window it was built for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslatedFormula {
    pub clauses: ClauseSet,
    pub varmap: VarMap,
    pub window: VarSet,
    /// Some generated clauses coincided and collapsed under set semantics.
    pub collision: bool,
}

/// Builds `t_V(F)` for the window `window ⊆` primary range.
pub fn translate(
    formula: &ClauseSet,
    window: &VarSet,
    map: &VarMap,
) -> Result<TranslatedFormula, TranslationError> {
    for v in formula.vars().iter().chain(window) {
        map.check_primary(*v)?;
    }
    let mut clauses = ClauseSet::new();
    let mut generated = 0usize;
    for c in formula {
        for &x in c.lits() {
            if !window.contains(&x.var()) {
                continue;
            }
            let mut lits = vec![map.t(!x).negative()];
            lits.extend(
                c.lits()
                    .iter()
                    .filter(|&&y| y != x && window.contains(&y.var()))
                    .map(|&y| map.t(y).positive()),
            );
            clauses.insert(Clause::new(lits).expect("translation ids are distinct"));
            generated += 1;
        }
    }
    for &v in window {
        let tp = map.t(v.positive());
        let tn = map.t(v.negative());
        let group = [
            Clause::new([tp.negative(), tn.negative()]),
            Clause::new([v.negative(), tp.positive(), tn.positive()]),
            Clause::new([tp.negative(), v.positive()]),
            Clause::new([tn.negative(), v.positive()]),
        ];
        for c in group {
            clauses.insert(c.expect("translation ids are distinct"));
            generated += 1;
        }
    }
    let collision = generated != clauses.c();
    Ok(TranslatedFormula {
        clauses,
        varmap: *map,
        window: window.clone(),
        collision,
    })
}

/// `t(F) = t_{var(F)}(F)` with a map sized for `F`.
pub fn translate_full(formula: &ClauseSet) -> TranslatedFormula {
    let map = VarMap::for_formula(formula);
    translate(formula, &formula.vars(), &map).expect("map covers the formula")
}

/// `t_{0,V}(φ)`: the total assignment over `V'` describing `φ`, with every
/// variable of the window outside `var(φ)` explicitly unassigned (all three
/// class members 0).
pub fn lift_total(
    phi: &PartialAssignment,
    window: &VarSet,
    map: &VarMap,
) -> Result<PartialAssignment, TranslationError> {
    for v in window {
        map.check_primary(*v)?;
    }
    if let Some(v) = phi.vars().into_iter().find(|v| !window.contains(v)) {
        return Err(TranslationError::Precondition { var: v.id() });
    }
    let mut out = PartialAssignment::new();
    for &v in window {
        let value = phi.get(v);
        out.set(v, value.is_some());
        out.set(map.t(v.positive()), value == Some(true));
        out.set(map.t(v.negative()), value == Some(false));
    }
    Ok(out)
}

/// `t(φ)`: like [`lift_total`] but leaves unassigned variables out.
pub fn lift_partial(
    phi: &PartialAssignment,
    map: &VarMap,
) -> Result<PartialAssignment, TranslationError> {
    lift_total(phi, &phi.vars(), map)
}

/// `t⁻¹(ψ)`: reads a partial assignment over primaries off a saturated
/// assignment. Cardinality auxiliaries are ignored.
pub fn project(psi: &PartialAssignment, map: &VarMap) -> Result<PartialAssignment, TranslationError> {
    let mut out = PartialAssignment::new();
    for (v, value) in psi.iter() {
        let Some(class) = map.class_of(v) else { continue };
        if map
            .class_members(class)
            .iter()
            .any(|&m| !psi.contains_var(m))
        {
            return Err(TranslationError::Unsaturated { var: class.id() });
        }
        if v == class && value {
            out.set(v, psi.get(map.t(v.positive())) == Some(true));
        }
    }
    Ok(out)
}

/// Recovers `(H, W)` from a formula of the form `t_W(G)`, where `H = G[W]`.
/// Fails unless re-translating the recovered pair reproduces the input
/// exactly.
pub fn decode_translation(formula: &ClauseSet, map: &VarMap) -> Result<(ClauseSet, VarSet), String> {
    let mut window = VarSet::new();
    let mut decoded = ClauseSet::new();
    for c in formula {
        let mut primaries = Vec::new();
        let mut head = None;
        let mut tails = Vec::new();
        for &l in c.lits() {
            match map.role(l.var()) {
                VarRole::Primary => primaries.push(l),
                VarRole::Aux(x) if l.is_positive() => tails.push(x),
                VarRole::Aux(x) => {
                    if head.replace(x).is_some() {
                        head = None;
                        tails.clear();
                        break;
                    }
                }
                VarRole::Cardinality => {
                    return Err(format!("clause {c} mentions a cardinality variable"))
                }
            }
        }
        window.extend(primaries.iter().map(|l| l.var()));
        // autarky clause: one negated auxiliary head, positive auxiliary tail
        if let (true, Some(neg_x)) = (primaries.is_empty(), head) {
            let mut lits = vec![!neg_x];
            lits.extend(tails);
            let clause = Clause::new(lits).map_err(|e| format!("clause {c}: {e}"))?;
            decoded.insert(clause);
        }
    }
    let rebuilt = translate(&decoded, &window, map).map_err(|e| e.to_string())?;
    if &rebuilt.clauses != formula {
        return Err("formula is not a translation of any clause-set".into());
    }
    Ok((decoded, window))
}

/// A CNF encoding of a cardinality constraint, with the next free auxiliary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CardinalityEncoding {
    pub clauses: ClauseSet,
    pub next_fresh: u32,
}

/// Totalizer encoding of `Σ_{v ∈ vars} v ≥ bound`.
///
/// Only the implications from the unary counter outputs down to the inputs
/// are emitted, together with the unit asserting the root output `bound`;
/// this is enough for the projection of the models onto `vars` to be exactly
/// the assignments with at least `bound` true variables. Outputs are
/// truncated at `bound`.
pub fn encode_at_least(
    vars: &VarSet,
    bound: usize,
    map: &VarMap,
    fresh_base: u32,
) -> Result<CardinalityEncoding, TranslationError> {
    for v in vars {
        map.check_primary(*v)?;
    }
    if bound > vars.len() {
        return Err(TranslationError::BoundOutOfRange {
            bound,
            size: vars.len(),
        });
    }
    if fresh_base < map.cardinality_base() {
        return Err(TranslationError::FreshBase {
            fresh_base,
            cardinality_base: map.cardinality_base(),
        });
    }
    let mut enc = Totalizer {
        bound,
        next: fresh_base,
        clauses: ClauseSet::new(),
    };
    if bound > 0 {
        let inputs: Vec<Var> = vars.iter().copied().collect();
        let outputs = enc.build(&inputs);
        enc.clauses
            .insert(Clause::new([outputs[bound - 1].positive()]).expect("unit"));
    }
    Ok(CardinalityEncoding {
        clauses: enc.clauses,
        next_fresh: enc.next,
    })
}

struct Totalizer {
    bound: usize,
    next: u32,
    clauses: ClauseSet,
}

impl Totalizer {
    fn fresh(&mut self) -> Var {
        let v = Var::new(self.next);
        self.next += 1;
        v
    }

    /// Returns the counter outputs `o_1..o_k` of the subtree over `inputs`,
    /// `k = min(|inputs|, bound)`, where `o_j` implies at least `j` inputs
    /// are true.
    fn build(&mut self, inputs: &[Var]) -> Vec<Var> {
        if inputs.len() == 1 {
            return inputs.to_vec();
        }
        let (left, right) = inputs.split_at(inputs.len() / 2);
        let a = self.build(left);
        let b = self.build(right);
        let width = inputs.len().min(self.bound);
        let outputs: Vec<Var> = (0..width).map(|_| self.fresh()).collect();
        for (j, &out) in outputs.iter().enumerate() {
            // o_{j+1} -> a_{i+1} ∨ b_{k+1} for all i + k = j
            for i in 0..=j {
                let k = j - i;
                let mut lits = vec![out.negative()];
                if let Some(&ai) = a.get(i) {
                    lits.push(ai.positive());
                } else if i > a.len() {
                    continue;
                }
                if let Some(&bk) = b.get(k) {
                    lits.push(bk.positive());
                } else if k > b.len() {
                    continue;
                }
                self.clauses.insert(Clause::new(lits).expect("distinct ids"));
            }
        }
        outputs
    }
}
