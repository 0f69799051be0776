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

//! Three-dimensional matching to token swapping.

use serde::{Deserialize, Serialize};

use super::{name, Builder, ReductionOutput};
use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::graph::Edge;
use crate::swap::SwapSequence;
use crate::verify::Instance;

/// Triples over `A_1 x A_2 x A_3` with `|A_k| = n`; coordinates are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreeDMInstance {
    pub n: usize,
    pub triples: Vec<[usize; 3]>,
}

impl ThreeDMInstance {
    pub fn new(n: usize, triples: Vec<[usize; 3]>) -> Result<Self> {
        let inst = ThreeDMInstance { n, triples };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.triples.is_empty() {
            return Err(Error::InvalidInstance("3DM instance must be nonempty".into()));
        }
        for (j, t) in self.triples.iter().enumerate() {
            if t.iter().any(|&i| i == 0 || i > self.n) {
                return Err(Error::InvalidInstance(format!(
                    "triple {} = {t:?} has a coordinate outside 1..={}",
                    j + 1,
                    self.n
                )));
            }
        }
        Ok(())
    }

    /// Each element occurs in at most three triples.
    pub fn occurrence_bounded(&self) -> bool {
        (0..3).all(|k| (1..=self.n).all(|i| self.triples.iter().filter(|t| t[k] == i).count() <= 3))
    }

    /// `chosen` (0-based triple indices) covers every element exactly once.
    pub fn is_solution(&self, chosen: &[usize]) -> bool {
        if chosen.len() != self.n || chosen.iter().any(|&j| j >= self.triples.len()) {
            return false;
        }
        (0..3).all(|k| {
            let mut seen = vec![false; self.n + 1];
            chosen.iter().all(|&j| !std::mem::replace(&mut seen[self.triples[j][k]], true))
        })
    }
}

fn u(k: usize, i: usize) -> String {
    name("u", &[k, i])
}

fn u_(k: usize, i: usize) -> String {
    name("u'", &[k, i])
}

fn v(j: usize, k: usize) -> String {
    name("v", &[j, k])
}

fn v_(j: usize, k: usize) -> String {
    name("v'", &[j, k])
}

/// Builds the token swapping instance. The expected optimum is `21 n`.
pub fn reduce_3dm_ts(inst: &ThreeDMInstance) -> Result<ReductionOutput> {
    inst.validate()?;
    let mut b = Builder::default();
    for k in 1..=3 {
        for i in 1..=inst.n {
            b.vertex(&u(k, i));
            b.vertex(&u_(k, i));
        }
    }
    for j in 1..=inst.triples.len() {
        for k in 1..=3 {
            b.vertex(&v(j, k));
            b.vertex(&v_(j, k));
        }
    }
    for (j0, t) in inst.triples.iter().enumerate() {
        let j = j0 + 1;
        for k in 1..=3 {
            b.path(&[u(k, t[k - 1]), v_(j, k)]);
            b.path(&[u_(k, t[k - 1]), v(j, k)]);
            for l in 1..=3 {
                if l != k {
                    b.path(&[v(j, k), v_(j, l)]);
                }
            }
        }
    }
    let pairs: Vec<(usize, usize)> = (1..=3)
        .flat_map(|k| (1..=inst.n).map(move |i| (k, i)))
        .map(|(k, i)| (b.id(&u(k, i)), b.id(&u_(k, i))))
        .collect();
    let n = b.len();
    let graph = b.build()?;
    let config = Configuration::transpositions(n, &pairs)?;
    Ok(ReductionOutput::new(Instance::Ts { graph, config }, 21 * inst.n))
}

/// Concatenates the 21-swap exchange for every chosen triple.
pub fn map_3dm_solution(inst: &ThreeDMInstance, chosen: &[usize]) -> Result<SwapSequence> {
    inst.validate()?;
    if !inst.is_solution(chosen) {
        return Err(Error::InvalidWitness(format!("{chosen:?} is not a perfect 3D matching")));
    }
    let out = reduce_3dm_ts(inst)?;
    let id = |s: String| out.vertex(&s);
    let mut seq = SwapSequence::default();
    for &j0 in chosen {
        let j = j0 + 1;
        let t = inst.triples[j0];
        let mut boundary = Vec::new();
        for k in 1..=3 {
            boundary.push(Edge::new(id(u_(k, t[k - 1]))?, id(v(j, k))?));
            boundary.push(Edge::new(id(u(k, t[k - 1]))?, id(v_(j, k))?));
        }
        let cycle = [id(v(j, 1))?, id(v_(j, 2))?, id(v(j, 3))?, id(v_(j, 1))?, id(v(j, 2))?, id(v_(j, 3))?];
        let a: Vec<Edge> = (0..3).map(|x| Edge::new(cycle[2 * x], cycle[2 * x + 1])).collect();
        let bm: Vec<Edge> = (0..3).map(|x| Edge::new(cycle[2 * x + 1], cycle[(2 * x + 2) % 6])).collect();
        for e in boundary.iter().chain(&a).chain(&bm).chain(&a).chain(&boundary) {
            seq.push(*e);
        }
    }
    Ok(seq)
}

/// Half the sum, over all misplaced tokens, of the distance to their goal
/// plus two for the cycle token each of them must displace.
pub fn lower_bound_3dm(out: &ReductionOutput) -> Result<usize> {
    let Instance::Ts { graph, config } = &out.instance else {
        return Err(Error::KindMismatch("expected a token swapping instance".into()));
    };
    let total: usize =
        (0..graph.n()).filter(|&v| config.token(v) != v).map(|v| graph.bfs(v)[config.token(v)] + 2).sum();
    Ok(total / 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::swap::move_count;
    use crate::verify::{verify, Solution};

    fn example() -> ThreeDMInstance {
        ThreeDMInstance::new(2, vec![[1, 1, 1], [1, 1, 2], [2, 2, 2]]).unwrap()
    }

    #[test]
    fn example_graph() {
        let out = reduce_3dm_ts(&example()).unwrap();
        assert_eq!(out.graph().n(), 30);
        assert_eq!(out.graph().edge_count(), 3 * 6 + 3 * 6);
        assert!(out.certificate.bipartite);
        assert_eq!(out.certificate.max_degree, 3);
        assert_eq!(out.certificate.expected_optimum, 42);
        let g = out.graph();
        assert!(g.has_edge(out.vertex("u_3,2").unwrap(), out.vertex("v'_2,3").unwrap()));
        assert!(g.has_edge(out.vertex("v_1,1").unwrap(), out.vertex("v'_1,2").unwrap()));
        assert!(!g.has_edge(out.vertex("v_1,1").unwrap(), out.vertex("v'_1,1").unwrap()));
    }

    #[test]
    fn mapped_solution_verifies() {
        let inst = example();
        let out = reduce_3dm_ts(&inst).unwrap();
        let seq = map_3dm_solution(&inst, &[0, 2]).unwrap();
        assert_eq!(seq.len(), 42);
        assert!(verify(&out.instance, &Solution::Sequential(seq.clone())).unwrap().is_ok());
        assert_eq!(lower_bound_3dm(&out).unwrap(), 42);
        let Instance::Ts { config, .. } = &out.instance else { unreachable!() };
        for x in 0..12 {
            assert_eq!(move_count(config, &seq, x).unwrap(), 5);
        }
        let moved = (12..30).filter(|&y| move_count(config, &seq, y).unwrap() > 0).count();
        assert_eq!(moved, 12);
    }

    #[test]
    fn single_triple() {
        let inst = ThreeDMInstance::new(1, vec![[1, 1, 1]]).unwrap();
        let out = reduce_3dm_ts(&inst).unwrap();
        assert_eq!(out.graph().n(), 12);
        assert!(out.certificate.bipartite);
        assert!(out.certificate.max_degree <= 3);
        let seq = map_3dm_solution(&inst, &[0]).unwrap();
        assert_eq!(seq.len(), 21);
        assert!(verify(&out.instance, &Solution::Sequential(seq)).unwrap().is_ok());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(ThreeDMInstance::new(2, vec![[1, 3, 1]]).is_err());
        assert!(ThreeDMInstance::new(1, vec![]).is_err());
        assert!(matches!(map_3dm_solution(&example(), &[0, 1]), Err(Error::InvalidWitness(_))));
        assert!(example().occurrence_bounded());
    }
}
