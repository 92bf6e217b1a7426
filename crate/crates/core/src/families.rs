//! Generators for the benchmark families.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cnf::{Clause, ClauseSet, Lit, Var};

pub const FAMILIES: [&str; 4] = ["units-pairs", "units", "random-3cnf", "mixed"];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown family `{0}`, expected one of units-pairs, units, random-3cnf, mixed")]
pub struct UnknownFamily(pub String);

/// Builds instance `n` of the named family. The seed only matters for
/// `random-3cnf`.
pub fn gen_family(name: &str, n: u32, seed: u64) -> Result<ClauseSet, UnknownFamily> {
    match name {
        "units-pairs" => Ok(units_pairs(n, 0)),
        "units" => Ok(units(n, 0)),
        "random-3cnf" => Ok(random_3cnf(n, seed)),
        "mixed" => {
            let lean = n.div_ceil(2);
            Ok(units_pairs(lean, 0).union(&units(n / 2, lean)))
        }
        other => Err(UnknownFamily(other.to_string())),
    }
}

/// `{{1},{-1},…,{n},{-n}}`, shifted by `offset`.
pub fn units_pairs(n: u32, offset: u32) -> ClauseSet {
    (1..=n)
        .flat_map(|i| {
            let v = Var::new(i + offset);
            [unit(v.positive()), unit(v.negative())]
        })
        .collect()
}

/// `{{1},…,{n}}`, shifted by `offset`.
pub fn units(n: u32, offset: u32) -> ClauseSet {
    (1..=n).map(|i| unit(Var::new(i + offset).positive())).collect()
}

fn unit(lit: Lit) -> Clause {
    Clause::new([lit]).expect("unit clause")
}

/// `round(4.2 n)` clauses over `n` variables, each on three distinct
/// variables (fewer when `n < 3`) with random signs. Duplicates collapse.
pub fn random_3cnf(n: u32, seed: u64) -> ClauseSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = (4.2 * f64::from(n)).round() as usize;
    let width = n.min(3) as usize;
    let mut out = ClauseSet::new();
    for _ in 0..count {
        let lits = sample(&mut rng, n as usize, width)
            .into_iter()
            .map(|i| Lit::new(Var::new(i as u32 + 1), rng.gen_bool(0.5)))
            .collect::<Vec<_>>();
        out.insert(Clause::new(lits).expect("distinct variables"));
    }
    out
}
