//! Unsatisfiable cores from the CDCL engine next to the minimal ones the
//! adversarial oracle hands out.

use autarky::oracle::{OracleKind, OracleQuery};
use autarky::{AdversarialOracle, ClauseSet, Engine, Oracle, OracleAnswer, VarSet};

fn main() {
    // an unsatisfiable square on 1, 2 and a complementary pair on 3
    let f = ClauseSet::from_ints(&[&[1, 2][..], &[-1, 2], &[1, -2], &[-1, -2], &[3], &[-3], &[3, 4]]);

    let core = Engine::default().solve(&f).core().expect("unsatisfiable");
    println!("engine core ({} clauses):", core.c());
    for c in &core {
        println!("  {c}");
    }

    let answer = AdversarialOracle::default()
        .ask(&OracleQuery::plain(OracleKind::Full, &f))
        .unwrap();
    if let OracleAnswer::Unsat(used) = answer {
        println!("adversary blames {}", show(&used));
    }
}

fn show(vars: &VarSet) -> String {
    let ids: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", ids.join(", "))
}
