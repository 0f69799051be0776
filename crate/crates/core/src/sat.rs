// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! CNF formulas, DIMACS I/O and two small SAT deciders.
//!
//! Literals use the DIMACS convention: variable `i` (1-based) is `i` when
//! positive and `-i` when negated. Assignments are indexed from 0.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A formula in conjunctive normal form.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Cnf {
    pub vars: usize,
    pub clauses: Vec<Vec<i32>>,
}

impl Cnf {
    /// Builds a formula, growing `vars` to cover every literal.
    pub fn new(vars: usize, clauses: Vec<Vec<i32>>) -> Result<Self> {
        let mut vars = vars;
        for (j, c) in clauses.iter().enumerate() {
            if c.contains(&0) {
                return Err(Error::InvalidInstance(format!("clause {j} contains literal 0")));
            }
            for &l in c {
                vars = vars.max(l.unsigned_abs() as usize);
            }
        }
        Ok(Cnf { vars, clauses })
    }

    pub fn max_clause_len(&self) -> usize {
        self.clauses.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Index of the first clause left unsatisfied, if any.
    pub fn first_unsatisfied(&self, assignment: &[bool]) -> Option<usize> {
        self.clauses.iter().position(|c| !c.iter().any(|&l| lit_value(l, assignment)))
    }

    pub fn evaluate(&self, assignment: &[bool]) -> bool {
        self.first_unsatisfied(assignment).is_none()
    }

    /// Parses DIMACS CNF. Comment lines start with `c`; clauses may span lines.
    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut current = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = idx + 1;
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if line.starts_with('p') {
                let parts: Vec<&str> = line.split_whitespace().collect();
                if parts.len() != 4 || parts[1] != "cnf" {
                    return Err(Error::Parse { line: lineno, message: "expected `p cnf VARS CLAUSES`".into() });
                }
                let num = |s: &str| {
                    s.parse::<usize>().map_err(|_| Error::Parse { line: lineno, message: format!("bad number `{s}`") })
                };
                header = Some((num(parts[2])?, num(parts[3])?));
                continue;
            }
            let Some((vars, _)) = header else {
                return Err(Error::Parse { line: lineno, message: "clause before header".into() });
            };
            for tok in line.split_whitespace() {
                let l: i32 =
                    tok.parse().map_err(|_| Error::Parse { line: lineno, message: format!("bad literal `{tok}`") })?;
                if l == 0 {
                    clauses.push(std::mem::take(&mut current));
                } else if l.unsigned_abs() as usize > vars {
                    return Err(Error::Parse {
                        line: lineno,
                        message: format!("literal {l} exceeds {vars} variables"),
                    });
                } else {
                    current.push(l);
                }
            }
        }
        let Some((vars, count)) = header else {
            return Err(Error::Parse { line: 0, message: "missing header".into() });
        };
        if !current.is_empty() {
            clauses.push(current);
        }
        if clauses.len() != count {
            return Err(Error::Parse {
                line: text.lines().count(),
                message: format!("header declares {count} clauses, found {}", clauses.len()),
            });
        }
        Ok(Cnf { vars, clauses })
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                out.push_str(&l.to_string());
                out.push(' ');
            }
            out.push_str("0\n");
        }
        out
    }

    /// Exhaustive search over all `2^vars` assignments.
    pub fn brute_force(&self) -> Option<Vec<bool>> {
        assert!(self.vars < 32, "brute force limited to 31 variables");
        (0u64..1 << self.vars).find_map(|mask| {
            let a: Vec<bool> = (0..self.vars).map(|i| mask >> i & 1 == 1).collect();
            self.evaluate(&a).then_some(a)
        })
    }

    /// Davis-Putnam-Logemann-Loveland with unit propagation.
    pub fn dpll(&self) -> Option<Vec<bool>> {
        let mut partial = vec![None; self.vars];
        if search(&self.clauses, &mut partial) {
            Some(partial.into_iter().map(|v| v.unwrap_or(false)).collect())
        } else {
            None
        }
    }
}

fn lit_value(l: i32, a: &[bool]) -> bool {
    let v = a[l.unsigned_abs() as usize - 1];
    if l > 0 {
        v
    } else {
        !v
    }
}

fn lit_state(l: i32, a: &[Option<bool>]) -> Option<bool> {
    a[l.unsigned_abs() as usize - 1].map(|v| v == (l > 0))
}

fn search(clauses: &[Vec<i32>], a: &mut Vec<Option<bool>>) -> bool {
    let saved = a.clone();
    loop {
        let mut unit = None;
        let mut open = None;
        for c in clauses {
            let mut free = None;
            let mut free_count = 0;
            let mut sat = false;
            for &l in c {
                match lit_state(l, a) {
                    Some(true) => {
                        sat = true;
                        break;
                    }
                    Some(false) => {}
                    None => {
                        free_count += 1;
                        free = Some(l);
                    }
                }
            }
            if sat {
                continue;
            }
            match free_count {
                0 => {
                    *a = saved;
                    return false;
                }
                1 => {
                    unit = free;
                    break;
                }
                _ => open = open.or(free),
            }
        }
        if let Some(l) = unit {
            a[l.unsigned_abs() as usize - 1] = Some(l > 0);
            continue;
        }
        let Some(l) = open else { return true };
        let var = l.unsigned_abs() as usize - 1;
        for value in [l > 0, l < 0] {
            a[var] = Some(value);
            if search(clauses, a) {
                return true;
            }
        }
        *a = saved;
        return false;
    }
}
