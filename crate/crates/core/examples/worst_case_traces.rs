//! Call traces against the adversarial oracle on the two extreme families:
//! lean input punishes A0, all-autarky input punishes A1.

use autarky::oracle::CallResult;
use autarky::{algo_a0, algo_a01, algo_a1, algo_abs, gen_family, AdversarialOracle, AlgorithmResult};

fn trace(r: &AlgorithmResult) -> String {
    r.stats
        .calls
        .iter()
        .map(|c| match c.result {
            CallResult::Sat => 'S',
            CallResult::Unsat => 'U',
        })
        .collect()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 9;
    for family in ["units-pairs", "units"] {
        let f = gen_family(family, n, 0)?;
        println!("{family}({n})");
        let runs = [
            ("a0", algo_a0(&f, AdversarialOracle::default())?),
            ("a1", algo_a1(&f, AdversarialOracle::default())?),
            ("abs", algo_abs(&f, AdversarialOracle::default())?),
            ("a01", algo_a01(&f, AdversarialOracle::default())?),
        ];
        for (name, r) in &runs {
            println!("  {name:<4}{:>3} calls  {}", r.stats.total_calls(), trace(r));
        }
    }
    Ok(())
}
