#![allow(dead_code)]

use autarky::algorithms::{abs_call_bound, ceil_sqrt};
use autarky::brute::AutarkyCatalog;
use autarky::families::FAMILIES;
use autarky::{gen_family, ClauseSet};

/// A named instance.
pub struct Instance {
    pub name: String,
    pub formula: ClauseSet,
}

/// All four families for `n ≤ 8`.
pub fn family_corpus() -> Vec<Instance> {
    let mut out = Vec::new();
    for family in FAMILIES {
        for n in 0..=8 {
            out.push(Instance {
                name: format!("{family}({n})"),
                formula: gen_family(family, n, u64::from(n)).unwrap(),
            });
        }
    }
    out
}

/// `count` seeded random 3-CNF instances with `1 ≤ n ≤ 10`.
pub fn random_corpus(count: usize) -> Vec<Instance> {
    (0..count)
        .map(|i| {
            let n = 1 + (i % 10) as u32;
            let seed = 1000 + i as u64;
            Instance {
                name: format!("random-3cnf({n}, seed {seed})"),
                formula: gen_family("random-3cnf", n, seed).unwrap(),
            }
        })
        .collect()
}

pub fn full_corpus() -> Vec<Instance> {
    let mut c = family_corpus();
    c.extend(random_corpus(500));
    c
}

pub fn a0_bound(f: &ClauseSet, cat: &AutarkyCatalog) -> usize {
    (cat.nu_lean() + 1).min(f.n())
}

pub fn a1_bound(f: &ClauseSet, cat: &AutarkyCatalog) -> usize {
    (cat.nu_aut() + 1).min(f.n())
}

pub fn abs_bound(f: &ClauseSet) -> usize {
    abs_call_bound(f.n())
}

pub fn a01_bound(f: &ClauseSet, cat: &AutarkyCatalog) -> usize {
    let s = ceil_sqrt(f.n());
    s.min(cat.nu_aut()) + s.min(cat.nu_lean())
}
