//! Oracle call counts of the four algorithms on a generated family.
//!
//! cargo run --example compare_algorithms -- mixed 12 adversarial

use autarky::report::{compare_run, render_table, JobConfig, OraclePolicy};
use autarky::gen_family;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let family = args.next().unwrap_or_else(|| "random-3cnf".into());
    let n: u32 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(10);
    let oracle = match args.next().as_deref() {
        Some("adversarial") => OraclePolicy::Adversarial,
        _ => OraclePolicy::Internal,
    };

    let f = gen_family(&family, n, 1)?;
    let config = JobConfig { oracle, ..JobConfig::default() };
    println!("{family}({n}): {} clauses", f.c());
    print!("{}", render_table(&compare_run(&f, &config)?));
    Ok(())
}
