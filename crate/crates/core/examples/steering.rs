//! The S01 scheme with different steering clause sets. The full clause
//! behaves like A1, unit clauses like A0, and the square-root partition
//! sits between them.

use autarky::{gen_family, scheme_s01, AdversarialOracle, Steering};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = gen_family("mixed", 16, 0)?;
    for steering in [Steering::Full, Steering::Units, Steering::Sqrt] {
        let p = steering.clauses(&f.vars());
        let r = scheme_s01(&f, &p, AdversarialOracle::with_limit(16))?;
        println!(
            "{:<6} {} steering clauses  {:>2} calls ({} sat, {} unsat)  autarky on {} vars",
            format!("{steering:?}").to_lowercase(),
            p.clauses().c(),
            r.stats.total_calls(),
            r.stats.sat_calls(),
            r.stats.unsat_calls(),
            r.autarky.len(),
        );
    }
    Ok(())
}
