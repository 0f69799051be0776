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

//! The doubling gadget relating two-step routings to perfect matchings.

use crate::config::Configuration;
use crate::error::Result;
use crate::graph::{Edge, Graph};
use crate::oracle::{two_step_solutions, OracleOptions};
use crate::swap::Matching;

/// Replaces each vertex `u` of `h` by `u_1 = 2u` and `u_2 = 2u + 1`, joins
/// copies of adjacent vertices completely and swaps every copy pair.
pub fn build_counting_gadget(h: &Graph) -> Result<(Graph, Configuration)> {
    let mut edges = Vec::new();
    for e in h.edges() {
        for a in 0..2 {
            for b in 0..2 {
                edges.push((2 * e.u + a, 2 * e.v + b));
            }
        }
    }
    let labels = (0..h.n()).flat_map(|u| {
        let base = h.labels().map_or_else(|| (u + 1).to_string(), |l| l[u].clone());
        [format!("{base}_1"), format!("{base}_2")]
    });
    let g = Graph::new(2 * h.n(), edges)?.with_labels(labels.collect())?;
    let pairs: Vec<(usize, usize)> = (0..h.n()).map(|u| (2 * u, 2 * u + 1)).collect();
    Ok((g, Configuration::transpositions(2 * h.n(), &pairs)?))
}

/// Whether every vertex `u` has a neighbour `v` in `h` such that one step
/// holds `{u_1,v_1}, {u_2,v_2}` and the other `{u_1,v_2}, {u_2,v_1}`.
pub fn is_structured(h: &Graph, s: &Matching, t: &Matching) -> bool {
    let straight = |m: &Matching, u: usize, v: usize| {
        m.contains(Edge::new(2 * u, 2 * v)) && m.contains(Edge::new(2 * u + 1, 2 * v + 1))
    };
    let crossed = |m: &Matching, u: usize, v: usize| {
        m.contains(Edge::new(2 * u, 2 * v + 1)) && m.contains(Edge::new(2 * u + 1, 2 * v))
    };
    (0..h.n()).all(|u| {
        h.neighbors(u)
            .iter()
            .any(|&v| (straight(s, u, v) && crossed(t, u, v)) || (crossed(s, u, v) && straight(t, u, v)))
    })
}

/// Two-step solutions of the gadget that have the paired structure, found
/// by exhaustive enumeration.
pub fn count_structured_solutions(h: &Graph) -> Result<u64> {
    let (g, f) = build_counting_gadget(h)?;
    let all = two_step_solutions(&g, &f, OracleOptions::default().node_cap)?;
    Ok(all.iter().filter(|(s, t)| is_structured(h, s, t)).count() as u64)
}

/// Number of perfect matchings, by branching on the lowest unmatched vertex.
pub fn count_perfect_matchings(h: &Graph) -> u64 {
    fn go(h: &Graph, used: &mut [bool]) -> u64 {
        let Some(u) = used.iter().position(|&x| !x) else { return 1 };
        used[u] = true;
        let mut total = 0;
        for &v in h.neighbors(u) {
            if !used[v] {
                used[v] = true;
                total += go(h, used);
                used[v] = false;
            }
        }
        used[u] = false;
        total
    }
    go(h, &mut vec![false; h.n()])
}
