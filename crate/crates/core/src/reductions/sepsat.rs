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

//! Separable 3SAT instances and the reduction from general 3-CNF.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sat::Cnf;

/// A 3-CNF with a partition of its clauses into parts 1, 2 and 3 such that
/// every variable occurs positively exactly once in parts 1 and 2,
/// negatively exactly once in part 3, and nowhere else.
///
/// Literals follow the DIMACS convention over variables `1..=vars`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SepSatInstance {
    pub vars: usize,
    pub clauses: Vec<Vec<i32>>,
    /// Part (1, 2 or 3) of each clause.
    pub part: Vec<u8>,
}

impl SepSatInstance {
    pub fn new(vars: usize, clauses: Vec<Vec<i32>>, part: Vec<u8>) -> Result<Self> {
        let inst = SepSatInstance { vars, clauses, part };
        inst.validate()?;
        Ok(inst)
    }

    /// Builds an instance from `(F_1, F_2, F_3)`.
    pub fn from_parts(vars: usize, parts: [Vec<Vec<i32>>; 3]) -> Result<Self> {
        let mut clauses = Vec::new();
        let mut part = Vec::new();
        for (k, list) in parts.into_iter().enumerate() {
            part.extend(std::iter::repeat_n(k as u8 + 1, list.len()));
            clauses.extend(list);
        }
        Self::new(vars, clauses, part)
    }

    /// Recovers a partition: clauses with a negative literal form part 3 and
    /// the positive clauses are 2-colored, each variable linking its two
    /// positive clauses.
    pub fn from_clauses(vars: usize, clauses: Vec<Vec<i32>>) -> Result<Self> {
        let c = clauses.len();
        let mut part = vec![0u8; c];
        let mut occ: Vec<Vec<usize>> = vec![Vec::new(); vars + 1];
        for (j, cl) in clauses.iter().enumerate() {
            if cl.iter().any(|&l| l < 0) {
                part[j] = 3;
            }
            for &l in cl {
                if l > 0 && (l as usize) <= vars {
                    occ[l as usize].push(j);
                }
            }
        }
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); c];
        for list in &occ[1..] {
            if let [a, b] = list[..] {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        for s in 0..c {
            if part[s] != 0 {
                continue;
            }
            part[s] = 1;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    let want = 3 - part[x];
                    if part[y] == 0 {
                        part[y] = want;
                        queue.push_back(y);
                    } else if part[y] != want {
                        return Err(Error::InvalidInstance("positive clauses admit no separation".into()));
                    }
                }
            }
        }
        Self::new(vars, clauses, part)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |s: String| Err(Error::InvalidInstance(s));
        if self.part.len() != self.clauses.len() {
            return bad("one part per clause required".into());
        }
        let mut count = vec![[0usize; 3]; self.vars + 1];
        for (j, (cl, &p)) in self.clauses.iter().zip(&self.part).enumerate() {
            let cj = j + 1;
            if !(1..=3).contains(&p) {
                return bad(format!("clause {cj} has part {p}"));
            }
            if cl.len() > 3 {
                return bad(format!("clause {cj} has more than 3 literals"));
            }
            let distinct: BTreeSet<i32> = cl.iter().copied().collect();
            if distinct.len() != cl.len() {
                return bad(format!("clause {cj} repeats a literal"));
            }
            for &l in cl {
                let x = l.unsigned_abs() as usize;
                if l == 0 || x > self.vars {
                    return bad(format!("clause {cj} has literal {l} outside 1..={}", self.vars));
                }
                if (l > 0) == (p == 3) {
                    return bad(format!("clause {cj} in part {p} has literal {l} of the wrong sign"));
                }
                count[x][p as usize - 1] += 1;
            }
        }
        for (x, c) in count.iter().enumerate().skip(1) {
            if *c != [1, 1, 1] {
                return bad(format!("variable {x} occurs {c:?} times in parts 1, 2, 3"));
            }
        }
        Ok(())
    }

    /// Number of clauses.
    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn to_cnf(&self) -> Cnf {
        Cnf { vars: self.vars, clauses: self.clauses.clone() }
    }

    /// 1-based index of the first clause `assignment` leaves unsatisfied.
    pub fn check(&self, assignment: &[bool]) -> Result<()> {
        if assignment.len() != self.vars {
            return Err(Error::InvalidWitness(format!(
                "assignment has {} values for {} variables",
                assignment.len(),
                self.vars
            )));
        }
        match self.to_cnf().first_unsatisfied(assignment) {
            Some(j) => Err(Error::Unsatisfied { clause: j + 1 }),
            None => Ok(()),
        }
    }

    /// Lowest-index variable satisfying clause `j` (0-based), as a 1-based index.
    pub(crate) fn witness(&self, j: usize, assignment: &[bool]) -> Option<usize> {
        self.clauses[j]
            .iter()
            .filter(|&&l| assignment[l.unsigned_abs() as usize - 1] == (l > 0))
            .map(|l| l.unsigned_abs() as usize)
            .min()
    }
}

/// A separable instance equisatisfiable with a source formula.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SepSatReduction {
    pub instance: SepSatInstance,
    /// Variables of the source formula.
    pub source_vars: usize,
    /// Variables after balancing; those past `source_vars` are fresh.
    pub balanced_vars: usize,
    /// For each balanced variable, its copies `(x_{i,j}, xbar_{i,j})` as 1-based ids.
    pub copies: Vec<Vec<(usize, usize)>>,
}

impl SepSatReduction {
    /// Lifts a source assignment to the separable instance.
    pub fn lift(&self, assignment: &[bool]) -> Vec<bool> {
        let mut out = vec![false; self.instance.vars];
        for (i, copies) in self.copies.iter().enumerate() {
            let value = assignment.get(i).copied().unwrap_or(false);
            for &(x, xbar) in copies {
                out[x - 1] = value;
                out[xbar - 1] = !value;
            }
        }
        out
    }

    /// Projects an assignment of the separable instance back to the source.
    pub fn project(&self, assignment: &[bool]) -> Vec<bool> {
        self.copies[..self.source_vars].iter().map(|c| c.first().is_some_and(|&(x, _)| assignment[x - 1])).collect()
    }

    /// Display name of a separable variable (1-based id).
    pub fn var_name(&self, id: usize) -> String {
        for (i, copies) in self.copies.iter().enumerate() {
            for (j, &(x, xbar)) in copies.iter().enumerate() {
                if id == x {
                    return format!("x_{},{}", i + 1, j + 1);
                }
                if id == xbar {
                    return format!("~x_{},{}", i + 1, j + 1);
                }
            }
        }
        format!("?{id}")
    }
}

/// Balances occurrences, splits every variable into one copy pair per
/// occurrence and builds the three parts.
pub fn reduce_3sat_sepsat(cnf: &Cnf) -> Result<SepSatReduction> {
    if let Some(j) = cnf.clauses.iter().position(|c| c.len() > 3) {
        return Err(Error::InvalidInstance(format!("clause {} has more than 3 literals", j + 1)));
    }
    let mut clauses: Vec<Vec<i32>> = cnf
        .clauses
        .iter()
        .map(|c| {
            let mut seen = BTreeSet::new();
            c.iter().copied().filter(|l| seen.insert(*l)).collect()
        })
        .collect();
    let mut vars = cnf.vars;
    for x in 1..=cnf.vars as i32 {
        let pos = clauses.iter().flatten().filter(|&&l| l == x).count();
        let neg = clauses.iter().flatten().filter(|&&l| l == -x).count();
        let (lit, extra) = if pos > neg { (-x, pos - neg) } else { (x, neg - pos) };
        for _ in 0..extra {
            vars += 1;
            let y = vars as i32;
            clauses.push(vec![lit, y, -y]);
        }
    }
    let mut copies: Vec<Vec<(usize, usize)>> = vec![Vec::new(); vars];
    let mut next = 0usize;
    let occurrences: Vec<usize> =
        (1..=vars as i32).map(|x| clauses.iter().flatten().filter(|&&l| l == x).count()).collect();
    for (i, &n_i) in occurrences.iter().enumerate() {
        for _ in 0..n_i {
            copies[i].push((next + 1, next + 2));
            next += 2;
        }
    }
    let mut seen_pos = vec![0usize; vars];
    let mut seen_neg = vec![0usize; vars];
    let f1: Vec<Vec<i32>> = clauses
        .iter()
        .map(|c| {
            c.iter()
                .map(|&l| {
                    let i = l.unsigned_abs() as usize - 1;
                    if l > 0 {
                        seen_pos[i] += 1;
                        copies[i][seen_pos[i] - 1].0 as i32
                    } else {
                        seen_neg[i] += 1;
                        copies[i][seen_neg[i] - 1].1 as i32
                    }
                })
                .collect()
        })
        .collect();
    let f2: Vec<Vec<i32>> = copies.iter().flatten().map(|&(x, xb)| vec![x as i32, xb as i32]).collect();
    let f3: Vec<Vec<i32>> = copies
        .iter()
        .flat_map(|c| (0..c.len()).map(move |j| vec![-(c[j].0 as i32), -(c[(j + 1) % c.len()].1 as i32)]))
        .collect();
    let instance = SepSatInstance::from_parts(next, [f1, f2, f3])?;
    Ok(SepSatReduction { instance, source_vars: cnf.vars, balanced_vars: vars, copies })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn example() -> SepSatInstance {
        SepSatInstance::from_parts(3, [vec![vec![1, 2], vec![3]], vec![vec![1], vec![2, 3]], vec![vec![-1, -2, -3]]])
            .unwrap()
    }

    #[test]
    fn partition_recovery_matches_example() {
        let e = example();
        let r = SepSatInstance::from_clauses(3, e.clauses.clone()).unwrap();
        assert_eq!(r.part, vec![1, 1, 2, 2, 3]);
    }

    #[test]
    fn validation() {
        assert!(SepSatInstance::from_parts(1, [vec![vec![1]], vec![vec![1]], vec![vec![-1]]]).is_ok());
        assert!(SepSatInstance::from_parts(1, [vec![vec![1]], vec![], vec![vec![-1]]]).is_err());
        assert!(SepSatInstance::from_parts(1, [vec![vec![1]], vec![vec![1]], vec![vec![1]]]).is_err());
        assert!(SepSatInstance::from_parts(0, [vec![], vec![], vec![]]).is_ok());
    }

    #[test]
    fn single_positive_unit() {
        let cnf = Cnf::new(1, vec![vec![1]]).unwrap();
        let r = reduce_3sat_sepsat(&cnf).unwrap();
        assert_eq!(r.balanced_vars, 2);
        assert_eq!(r.instance.vars, 4);
        assert_eq!(r.instance.len(), 6);
        let model = r.instance.to_cnf().brute_force().unwrap();
        assert!(cnf.evaluate(&r.project(&model)));
        assert!(r.instance.to_cnf().evaluate(&r.lift(&[true])));
        assert_eq!(r.var_name(2), "~x_1,1");
    }

    #[test]
    fn contradiction_stays_unsat() {
        let cnf = Cnf::new(1, vec![vec![1], vec![-1]]).unwrap();
        let r = reduce_3sat_sepsat(&cnf).unwrap();
        assert_eq!(r.balanced_vars, 1);
        assert_eq!(r.instance.to_cnf().brute_force(), None);
    }

    #[test]
    fn empty_formula() {
        let r = reduce_3sat_sepsat(&Cnf::default()).unwrap();
        assert!(r.instance.is_empty());
        assert_eq!(r.instance.to_cnf().brute_force(), Some(vec![]));
    }

    #[test]
    fn unsatisfied_clause_is_named() {
        let e = example();
        assert_eq!(e.check(&[true, false, true]), Ok(()));
        assert_eq!(e.check(&[true, true, true]), Err(Error::Unsatisfied { clause: 5 }));
    }
}
