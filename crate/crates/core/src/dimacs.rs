//! DIMACS CNF reading and writing.

use std::fmt::Write as _;

use crate::cnf::{Clause, ClauseSet, Lit};
use crate::error::{CnfError, ParseError};

/// Parses DIMACS CNF text.
///
/// A `p cnf` header is required before the first clause. Clauses may span
/// lines and a lone `0` is the empty clause. Header counts are not enforced,
/// since duplicate clauses collapse anyway.
pub fn parse_dimacs(text: &str) -> Result<ClauseSet, ParseError> {
    let mut clauses = ClauseSet::new();
    let mut header = false;
    let mut pending: Vec<Lit> = Vec::new();
    let mut start_line = 0;
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('%') {
            // some benchmark sets end with a `%` trailer
            break;
        }
        if let Some(rest) = trimmed.strip_prefix('p') {
            if header {
                return Err(syntax(lineno, "second problem line"));
            }
            let fields: Vec<&str> = rest.split_whitespace().collect();
            let counts_ok = fields.len() == 3
                && fields[0] == "cnf"
                && fields[1..].iter().all(|f| f.parse::<u64>().is_ok());
            if !counts_ok {
                return Err(syntax(lineno, "expected `p cnf <vars> <clauses>`"));
            }
            header = true;
            continue;
        }
        if !header {
            return Err(syntax(lineno, "clause before the `p cnf` line"));
        }
        for token in trimmed.split_whitespace() {
            let code: i64 = token
                .parse()
                .ok()
                .filter(|&c: &i64| c == 0 || Lit::from_dimacs(c).is_some())
                .ok_or_else(|| syntax(lineno, &format!("bad literal `{token}`")))?;
            if pending.is_empty() {
                start_line = lineno;
            }
            match Lit::from_dimacs(code) {
                Some(lit) => pending.push(lit),
                None => {
                    let lits = std::mem::take(&mut pending);
                    let clause = Clause::new(lits).map_err(|e| match e {
                        CnfError::Tautology { clause } => ParseError::Tautology {
                            line: start_line,
                            clause,
                        },
                        other => syntax(lineno, &other.to_string()),
                    })?;
                    clauses.insert(clause);
                }
            }
        }
    }
    if !header {
        return Err(syntax(text.lines().count().max(1), "missing `p cnf` line"));
    }
    if !pending.is_empty() {
        return Err(syntax(start_line, "clause not terminated by 0"));
    }
    Ok(clauses)
}

fn syntax(line: usize, message: &str) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.to_string(),
    }
}

/// Writes `formula` as DIMACS CNF, one clause per line.
pub fn write_dimacs(formula: &ClauseSet) -> String {
    let max_var = formula.max_var().map_or(0, |v| v.id());
    let mut out = format!("p cnf {max_var} {}\n", formula.c());
    for c in formula {
        for l in c.lits() {
            write!(out, "{l} ").expect("writing to a string");
        }
        out.push_str("0\n");
    }
    out
}
