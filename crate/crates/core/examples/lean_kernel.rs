//! Maximal autarky and lean kernel of a small formula, read from a DIMACS
//! file if one is given.

use autarky::{algo_a01, extend_quasi_maximal, parse_dimacs, write_dimacs, ClauseSet, InternalOracle};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = match std::env::args().nth(1) {
        Some(path) => parse_dimacs(&std::fs::read_to_string(path)?)?,
        None => ClauseSet::from_ints(&[&[1, 2][..], &[-1, 2], &[1, -2], &[-1, -2], &[2, 3], &[-3, 4]]),
    };
    let r = algo_a01(&f, InternalOracle::default())?;
    println!("autarky: {}", r.autarky);
    println!("oracle calls: {}", r.stats.total_calls());
    print!("lean kernel:\n{}", write_dimacs(&r.autarky.apply(&f)));

    // any autarky whose kernel is lean extends to one on every non-kernel variable
    let ext = extend_quasi_maximal(&r.autarky, &f)?;
    assert_eq!(ext.vars(), r.autarky.vars());
    Ok(())
}
