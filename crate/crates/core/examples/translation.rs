//! The autarky translation: models of t(F) project to autarkies of F and
//! every autarky lifts back.

use autarky::brute::{enumerate_autarkies, DEFAULT_LIMIT};
use autarky::translation::{lift_total, project};
use autarky::{translate_full, ClauseSet, Engine};

fn main() {
    let f = ClauseSet::from_ints(&[&[1, -2][..], &[2, 3], &[-1], &[1]]);
    let t = translate_full(&f);
    println!("F: n = {}, c = {}, l = {}", f.n(), f.c(), f.ell());
    println!("t(F): n = {}, c = {}", t.clauses.n(), t.clauses.c());
    for c in &t.clauses {
        println!("  {c}");
    }

    let model = Engine::new(7).solve_sat(&t.clauses).expect("t(F) always has a model");
    let phi = project(&model, &t.varmap).unwrap();
    println!("projected model: {phi}");
    assert!(phi.is_autarky_for(&f));

    for phi in enumerate_autarkies(&f, DEFAULT_LIMIT).unwrap().autarkies() {
        let lifted = lift_total(&phi, &f.vars(), &t.varmap).unwrap();
        assert!(lifted.satisfies(&t.clauses));
        println!("{phi} lifts to a model");
    }
}
