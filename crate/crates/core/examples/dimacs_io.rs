//! Parsing and writing DIMACS, including the errors the parser reports.

use autarky::{parse_dimacs, write_dimacs};

fn main() {
    let text = "c a comment\np cnf 3 3\n1 -2\n 0 2 3 0\n0\n%\n0\n";
    let f = parse_dimacs(text).unwrap();
    println!("parsed {} clauses, empty clause present: {}", f.c(), f.has_empty_clause());
    print!("{}", write_dimacs(&f));
    assert_eq!(parse_dimacs(&write_dimacs(&f)).unwrap(), f);

    for bad in ["1 2 0\n", "p cnf 2 1\n1 -1 0\n", "p cnf 2 1\n1 x 0\n"] {
        println!("{:?} -> {}", bad, parse_dimacs(bad).unwrap_err());
    }
}
