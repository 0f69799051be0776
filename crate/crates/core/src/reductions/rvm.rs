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

//! Separable 3SAT to routing via matchings.

use super::sepsat::SepSatInstance;
use super::{name, Builder, ReductionOutput, Schedule};
use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::graph::Edge;
use crate::pathroute::endpoint_schedule;
use crate::swap::ParallelSwapSequence;
use crate::verify::Instance;

pub(crate) fn u(i: usize) -> String {
    name("u", &[i])
}

pub(crate) fn u_(i: usize) -> String {
    name("u'", &[i])
}

pub(crate) fn uk(i: usize, k: usize) -> String {
    name("u", &[i, k])
}

pub(crate) fn uk_(i: usize, k: usize) -> String {
    name("u'", &[i, k])
}

pub(crate) fn v(j: usize) -> String {
    name("v", &[j])
}

pub(crate) fn v_(j: usize) -> String {
    name("v'", &[j])
}

pub(crate) fn vji(j: usize, i: usize) -> String {
    name("v", &[j, i])
}

/// `(j, k, i)` for each literal of variable `i` in clause `j` of part `k`, all 1-based.
pub(crate) fn occurrences(f: &SepSatInstance) -> Vec<(usize, usize, usize)> {
    f.clauses
        .iter()
        .zip(&f.part)
        .enumerate()
        .flat_map(|(j, (c, &k))| c.iter().map(move |l| (j + 1, k as usize, l.unsigned_abs() as usize)))
        .collect()
}

/// Branch a variable gadget routes through: `(3, 4)` when true, `(1, 2)` when false.
pub(crate) fn busy_branch(value: bool) -> (usize, usize) {
    if value {
        (3, 4)
    } else {
        (1, 2)
    }
}

/// Registers `u_i, u'_i, u_{i,1..4}` for all variables and `v_j, v'_j` for all clauses.
pub(crate) fn base_vertices(b: &mut Builder, f: &SepSatInstance) {
    for i in 1..=f.vars {
        for s in [u(i), u_(i), uk(i, 1), uk(i, 2), uk(i, 3), uk(i, 4)] {
            b.vertex(&s);
        }
    }
    for j in 1..=f.len() {
        b.vertex(&v(j));
        b.vertex(&v_(j));
    }
}

/// Variable index of the witness for each clause, after checking the assignment.
pub(crate) fn witnesses(f: &SepSatInstance, assignment: &[bool]) -> Result<Vec<usize>> {
    f.validate()?;
    f.check(assignment)?;
    (0..f.len()).map(|j| f.witness(j, assignment).ok_or(Error::Unsatisfied { clause: j + 1 })).collect()
}

fn uh(i: usize, k: usize) -> String {
    name("uh", &[i, k])
}

fn uh_(i: usize, k: usize) -> String {
    name("uh'", &[i, k])
}

fn vh(j: usize, i: usize, k: usize) -> String {
    name("vh", &[j, i, k])
}

/// Builds the instance deciding whether `rt <= p`. For `p > 3` the variable
/// gadgets get pendant paths of length `p - 3` carrying shifted tokens and
/// each clause edge is subdivided `p - 3` times.
pub fn reduce_sepsat_rvm(f: &SepSatInstance, p: usize) -> Result<ReductionOutput> {
    f.validate()?;
    if p < 3 {
        return Err(Error::Precondition(format!("step budget {p} is below 3")));
    }
    let h = p - 3;
    let mut b = Builder::default();
    base_vertices(&mut b, f);
    for i in 1..=f.vars {
        b.path(&[u(i), uk(i, 1), uk(i, 2), u_(i)]);
        b.path(&[u(i), uk(i, 3), uk(i, 4), u_(i)]);
        let mut left = vec![u(i)];
        let mut right = vec![u_(i)];
        left.extend((1..=h).map(|k| uh(i, k)));
        right.extend((1..=h).map(|k| uh_(i, k)));
        b.path(&left);
        b.path(&right);
    }
    for (j, k, i) in occurrences(f) {
        let mut line = vec![v(j)];
        line.extend((1..=h).map(|x| vh(j, i, x)));
        line.extend([uk(i, k), v_(j)]);
        b.path(&line);
    }
    let n = b.len();
    let mut tokens: Vec<usize> = (0..n).collect();
    for i in 1..=f.vars {
        // Token chains u_i -> uh_{i,1} -> ... -> uh_{i,h} -> u'_i and mirrored.
        for (start, pad, end) in [(u(i), uh as fn(usize, usize) -> String, u_(i)), (u_(i), uh_, u(i))] {
            let mut chain = vec![b.id(&start)];
            chain.extend((1..=h).map(|k| b.id(&pad(i, k))));
            chain.push(b.id(&end));
            for w in chain.windows(2) {
                tokens[w[0]] = w[1];
            }
        }
    }
    for j in 1..=f.len() {
        tokens.swap(b.id(&v(j)), b.id(&v_(j)));
    }
    let graph = b.build()?;
    let config = Configuration::new(tokens)?;
    let expected = if config.is_identity() { 0 } else { p };
    Ok(ReductionOutput::new(Instance::Rvm { graph, config }, expected))
}

/// The `p`-step schedule induced by a satisfying assignment: each variable
/// routes through its busy branch and each clause through its witness.
pub fn map_assignment_rvm(f: &SepSatInstance, p: usize, assignment: &[bool]) -> Result<ParallelSwapSequence> {
    let wit = witnesses(f, assignment)?;
    let out = reduce_sepsat_rvm(f, p)?;
    let h = p - 3;
    let id = |s: String| out.vertex(&s);
    let mut sched = Schedule::new(p);
    for i in 1..=f.vars {
        let (a, c) = busy_branch(assignment[i - 1]);
        let mut line: Vec<usize> = (1..=h).rev().map(|k| id(uh(i, k))).collect::<Result<_>>()?;
        line.extend([id(u(i))?, id(uk(i, a))?, id(uk(i, c))?, id(u_(i))?]);
        for k in 1..=h {
            line.push(id(uh_(i, k))?);
        }
        // Two sweeps meeting in the middle edge at step h + 2.
        let last = line.len() - 1;
        for s in 1..=p {
            sched.add(s - 1, Edge::new(line[s - 1], line[s]));
            sched.add(s - 1, Edge::new(line[last - s], line[last + 1 - s]));
        }
    }
    let clause_moves = endpoint_schedule(h + 3)?;
    for (j0, &i) in wit.iter().enumerate() {
        let j = j0 + 1;
        let k = f.part[j0] as usize;
        let mut line = vec![id(v(j))?];
        for x in 1..=h {
            line.push(id(vh(j, i, x))?);
        }
        line.extend([id(uk(i, k))?, id(v_(j))?]);
        sched.add_along(&line, &clause_moves);
    }
    let seq = sched.finish()?;
    Ok(if f.vars == 0 { ParallelSwapSequence::default() } else { seq })
}

/// Degree-3 variant: each `u_{i,k}` is split into `u'_{i,k} - u_{i,k}` and
/// clause paths gain a private vertex `v_{j,i}`. Budget 5.
pub fn reduce_sepsat_rvm_deg3(f: &SepSatInstance) -> Result<ReductionOutput> {
    f.validate()?;
    let mut b = Builder::default();
    base_vertices(&mut b, f);
    for i in 1..=f.vars {
        for k in 1..=4 {
            b.vertex(&uk_(i, k));
        }
        b.path(&[u(i), uk_(i, 1), uk(i, 1), uk_(i, 2), uk(i, 2), u_(i)]);
        b.path(&[u(i), uk_(i, 3), uk(i, 3), uk_(i, 4), uk(i, 4), u_(i)]);
    }
    for (j, k, i) in occurrences(f) {
        b.path(&[v(j), uk(i, k), uk_(i, k), vji(j, i), v_(j)]);
    }
    let n = b.len();
    let mut pairs: Vec<(usize, usize)> = (1..=f.vars).map(|i| (b.id(&u(i)), b.id(&u_(i)))).collect();
    pairs.extend((1..=f.len()).map(|j| (b.id(&v(j)), b.id(&v_(j)))));
    let graph = b.build()?;
    let config = Configuration::transpositions(n, &pairs)?;
    let expected = if config.is_identity() { 0 } else { 5 };
    Ok(ReductionOutput::new(Instance::Rvm { graph, config }, expected))
}

/// Five-step schedule for the degree-3 variant.
pub fn map_assignment_rvm_deg3(f: &SepSatInstance, assignment: &[bool]) -> Result<ParallelSwapSequence> {
    let wit = witnesses(f, assignment)?;
    let out = reduce_sepsat_rvm_deg3(f)?;
    let id = |s: String| out.vertex(&s);
    let mut sched = Schedule::new(5);
    let var_moves = endpoint_schedule(6)?;
    let clause_moves = endpoint_schedule(5)?;
    for i in 1..=f.vars {
        let (a, c) = busy_branch(assignment[i - 1]);
        let line = [id(u(i))?, id(uk_(i, a))?, id(uk(i, a))?, id(uk_(i, c))?, id(uk(i, c))?, id(u_(i))?];
        sched.add_along(&line, &var_moves);
    }
    for (j0, &i) in wit.iter().enumerate() {
        let j = j0 + 1;
        let k = f.part[j0] as usize;
        let line = [id(v(j))?, id(uk(i, k))?, id(uk_(i, k))?, id(vji(j, i))?, id(v_(j))?];
        sched.add_along(&line, &clause_moves);
    }
    let seq = sched.finish()?;
    Ok(if f.vars == 0 { ParallelSwapSequence::default() } else { seq })
}
