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

//! Exhaustive exact solvers for small instances.
//!
//! Every search runs over integer-coded states. Single swaps and parallel
//! swaps are involutions, so the same move set serves both search directions
//! and a table of distances from the identity gives the distance to the
//! identity from every configuration.

mod rank;
mod search;

use crate::config::{Coloring, Configuration};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::swap::{Matching, ParallelSwapSequence, SwapSequence};

pub use rank::{Codec, MAX_PERM_LEN};
use search::{Move, Space};

/// Search limits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleOptions {
    /// Maximum number of stored states.
    pub node_cap: usize,
    /// Expand frontiers with rayon. Results do not depend on this flag.
    pub parallel: bool,
    /// Give up once the distance is known to exceed this bound.
    pub max_depth: Option<usize>,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { node_cap: 10_000_000, parallel: false, max_depth: None }
    }
}

fn perm_state(f: &Configuration) -> Vec<u8> {
    f.tokens().iter().map(|&t| t as u8).collect()
}

fn check_size(g: &Graph, n: usize) -> Result<()> {
    if g.n() != n {
        return Err(Error::InvalidInstance(format!("configuration has {n} entries for {} vertices", g.n())));
    }
    Ok(())
}

fn edge_moves(g: &Graph) -> Vec<Move> {
    g.edges().iter().map(|e| vec![(e.u as u8, e.v as u8)]).collect()
}

fn matching_moves(ms: &[Matching]) -> Vec<Move> {
    ms.iter().map(|m| m.edges().iter().map(|e| (e.u as u8, e.v as u8)).collect()).collect()
}

/// All matchings of `g` in a fixed order, optionally including the empty one.
///
/// Fails with a budget error once more than `cap` matchings exist.
pub fn matchings(g: &Graph, include_empty: bool, cap: usize) -> Result<Vec<Matching>> {
    fn rec(
        edges: &[Edge],
        i: usize,
        used: &mut Vec<bool>,
        cur: &mut Vec<Edge>,
        out: &mut Vec<Vec<Edge>>,
        cap: usize,
    ) -> Result<()> {
        if i == edges.len() {
            out.push(cur.clone());
            if out.len() > cap {
                return Err(Error::Budget { explored: out.len(), cap });
            }
            return Ok(());
        }
        rec(edges, i + 1, used, cur, out, cap)?;
        let e = edges[i];
        if !used[e.u] && !used[e.v] {
            used[e.u] = true;
            used[e.v] = true;
            cur.push(e);
            rec(edges, i + 1, used, cur, out, cap)?;
            cur.pop();
            used[e.u] = false;
            used[e.v] = false;
        }
        Ok(())
    }
    let mut out = Vec::new();
    // The empty matching is always generated, so allow one extra.
    rec(g.edges(), 0, &mut vec![false; g.n()], &mut Vec::new(), &mut out, cap.saturating_add(1)).map_err(
        |e| match e {
            Error::Budget { explored, .. } => Error::Budget { explored: explored - 1, cap },
            e => e,
        },
    )?;
    let mut ms: Vec<Matching> = out
        .into_iter()
        .filter(|m| include_empty || !m.is_empty())
        .map(|m| Matching::new(m).expect("disjoint by construction"))
        .collect();
    ms.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.edges().cmp(b.edges())));
    Ok(ms)
}

/// Minimum number of swaps and one optimal sequence.
pub fn ts_oracle(g: &Graph, f: &Configuration) -> Result<(usize, SwapSequence)> {
    ts_oracle_with(g, f, &OracleOptions::default())
}

pub fn ts_oracle_with(g: &Graph, f: &Configuration, opts: &OracleOptions) -> Result<(usize, SwapSequence)> {
    check_size(g, f.n())?;
    let codec = Codec::perm(g.n())?;
    let moves = edge_moves(g);
    let space = Space { codec, moves: &moves };
    let path = space
        .bidirectional(codec.encode(&perm_state(f)), 0, opts)?
        .ok_or(Error::Budget { explored: 0, cap: opts.node_cap })?;
    let seq = SwapSequence::new(path.iter().map(|&i| g.edges()[i as usize]).collect());
    Ok((seq.len(), seq))
}

/// Minimum number of parallel steps and one optimal sequence.
pub fn rt_oracle(g: &Graph, f: &Configuration) -> Result<(usize, ParallelSwapSequence)> {
    rt_oracle_with(g, f, &OracleOptions::default())
}

pub fn rt_oracle_with(g: &Graph, f: &Configuration, opts: &OracleOptions) -> Result<(usize, ParallelSwapSequence)> {
    match rt_search(g, f, opts)? {
        Some(sol) => Ok((sol.len(), sol)),
        None => Err(Error::Budget { explored: 0, cap: opts.node_cap }),
    }
}

/// A solution of at most `k` parallel steps, if one exists.
pub fn rt_at_most(
    g: &Graph,
    f: &Configuration,
    k: usize,
    opts: &OracleOptions,
) -> Result<Option<ParallelSwapSequence>> {
    let opts = OracleOptions { max_depth: Some(k), ..opts.clone() };
    match rt_search(g, f, &opts) {
        Err(Error::Unreachable) => Ok(None),
        other => other,
    }
}

fn rt_search(g: &Graph, f: &Configuration, opts: &OracleOptions) -> Result<Option<ParallelSwapSequence>> {
    check_size(g, f.n())?;
    let codec = Codec::perm(g.n())?;
    let ms = matchings(g, false, opts.node_cap)?;
    let moves = matching_moves(&ms);
    let space = Space { codec, moves: &moves };
    let path = space.bidirectional(codec.encode(&perm_state(f)), 0, opts)?;
    Ok(path.map(|p| ParallelSwapSequence::from_matchings(p.iter().map(|&i| ms[i as usize].clone()).collect())))
}

fn color_space(g: &Graph, f: &Coloring, goal: &Coloring) -> Result<(Codec, Vec<u8>, Vec<u8>)> {
    check_size(g, f.n())?;
    check_size(g, goal.n())?;
    if !f.is_consistent_with(goal) {
        return Err(Error::InconsistentColorings);
    }
    let base = f.num_colors() as u64;
    if base > u8::MAX as u64 {
        return Err(Error::InvalidInstance("too many colors".into()));
    }
    let codec = Codec::digits(g.n(), base)?;
    let digits = |c: &Coloring| c.colors().iter().map(|&x| (x - 1) as u8).collect::<Vec<u8>>();
    Ok((codec, digits(f), digits(goal)))
}

/// Minimum number of parallel steps turning coloring `f` into `goal`.
pub fn rt_colored_oracle(g: &Graph, f: &Coloring, goal: &Coloring) -> Result<usize> {
    rt_colored_oracle_with(g, f, goal, &OracleOptions::default()).map(|(k, _)| k)
}

pub fn rt_colored_oracle_with(
    g: &Graph,
    f: &Coloring,
    goal: &Coloring,
    opts: &OracleOptions,
) -> Result<(usize, ParallelSwapSequence)> {
    match rt_colored_search(g, f, goal, opts)? {
        Some(sol) => Ok((sol.len(), sol)),
        None => Err(Error::Budget { explored: 0, cap: opts.node_cap }),
    }
}

/// A colored solution of at most `k` steps, if one exists.
pub fn rt_colored_at_most(
    g: &Graph,
    f: &Coloring,
    goal: &Coloring,
    k: usize,
    opts: &OracleOptions,
) -> Result<Option<ParallelSwapSequence>> {
    let opts = OracleOptions { max_depth: Some(k), ..opts.clone() };
    match rt_colored_search(g, f, goal, &opts) {
        Err(Error::Unreachable) => Ok(None),
        other => other,
    }
}

fn rt_colored_search(
    g: &Graph,
    f: &Coloring,
    goal: &Coloring,
    opts: &OracleOptions,
) -> Result<Option<ParallelSwapSequence>> {
    let (codec, start, end) = color_space(g, f, goal)?;
    let ms = matchings(g, false, opts.node_cap)?;
    let moves = matching_moves(&ms);
    let space = Space { codec, moves: &moves };
    let path = space.bidirectional(codec.encode(&start), codec.encode(&end), opts)?;
    Ok(path.map(|p| ParallelSwapSequence::from_matchings(p.iter().map(|&i| ms[i as usize].clone()).collect())))
}

/// Distances to the identity for every configuration on a fixed graph.
#[derive(Debug, Clone)]
pub struct DistanceTable {
    codec: Codec,
    dist: Vec<u8>,
}

impl DistanceTable {
    /// Distance to the identity, `None` if unreachable.
    pub fn get(&self, f: &Configuration) -> Option<usize> {
        let d = self.dist[self.codec.encode(&perm_state(f)) as usize];
        (d != u8::MAX).then_some(d as usize)
    }

    /// Iterates over every configuration together with its distance.
    pub fn iter(&self) -> impl Iterator<Item = (Configuration, Option<usize>)> + '_ {
        let n = self.codec.len();
        self.dist.iter().enumerate().map(move |(code, &d)| {
            let mut buf = vec![0u8; n];
            self.codec.decode(code as u64, &mut buf);
            let f = Configuration::from_vec_unchecked(buf.into_iter().map(usize::from).collect());
            (f, (d != u8::MAX).then_some(d as usize))
        })
    }

    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dist.is_empty()
    }

    pub fn max(&self) -> Option<usize> {
        self.dist.iter().filter(|&&d| d != u8::MAX).max().map(|&d| d as usize)
    }
}

/// Token swapping distance for all `n!` configurations.
pub fn ts_distance_table(g: &Graph, opts: &OracleOptions) -> Result<DistanceTable> {
    let codec = Codec::perm(g.n())?;
    let moves = edge_moves(g);
    let dist = Space { codec, moves: &moves }.distance_table(0, opts)?;
    Ok(DistanceTable { codec, dist })
}

/// Routing distance for all `n!` configurations.
pub fn rt_distance_table(g: &Graph, opts: &OracleOptions) -> Result<DistanceTable> {
    let codec = Codec::perm(g.n())?;
    let ms = matchings(g, false, opts.node_cap)?;
    let moves = matching_moves(&ms);
    let dist = Space { codec, moves: &moves }.distance_table(0, opts)?;
    Ok(DistanceTable { codec, dist })
}

/// Every ordered pair of matchings `(S, T)` with `f S T` the identity.
///
/// Empty matchings are allowed in either position. Given `S`, the product
/// `f S` must be an involution whose 2-cycles are edges, and `T` is then
/// exactly the set of those 2-cycles, so the enumeration runs over `S` only.
pub fn two_step_solutions(g: &Graph, f: &Configuration, cap: usize) -> Result<Vec<(Matching, Matching)>> {
    check_size(g, f.n())?;
    let mut out = Vec::new();
    for s in matchings(g, true, cap)? {
        let mut h = f.tokens().to_vec();
        for e in s.edges() {
            h.swap(e.u, e.v);
        }
        if let Some(t) = involution_edges(g, &h) {
            out.push((s, t));
        }
    }
    Ok(out)
}

/// Number of ordered 2-step solutions, empty steps included.
pub fn count_two_step(g: &Graph, f: &Configuration) -> Result<u64> {
    Ok(two_step_solutions(g, f, OracleOptions::default().node_cap)?.len() as u64)
}

fn involution_edges(g: &Graph, h: &[usize]) -> Option<Matching> {
    let mut edges = Vec::new();
    for (v, &t) in h.iter().enumerate() {
        if t == v {
            continue;
        }
        if h[t] != v || !g.has_edge(v, t) {
            return None;
        }
        if v < t {
            edges.push(Edge::new(v, t));
        }
    }
    Some(Matching::new(edges).expect("2-cycles are disjoint"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_family, Family};
    use crate::verify::{verify, Instance, Solution};

    fn square() -> Graph {
        Graph::new(4, [(0, 1), (2, 3), (0, 2), (1, 3)]).unwrap()
    }

    fn endpoint_swap(n: usize) -> Configuration {
        Configuration::transpositions(n, &[(0, n - 1)]).unwrap()
    }

    #[test]
    fn identity_costs_nothing() {
        let g = square();
        let id = Configuration::identity(4);
        assert_eq!(ts_oracle(&g, &id).unwrap().0, 0);
        assert_eq!(rt_oracle(&g, &id).unwrap().0, 0);
    }

    #[test]
    fn square_reversal() {
        let g = square();
        let f = Configuration::new(vec![3, 2, 1, 0]).unwrap();
        let (ts, seq) = ts_oracle(&g, &f).unwrap();
        assert_eq!(ts, 4);
        let inst = Instance::Ts { graph: g.clone(), config: f.clone() };
        assert!(verify(&inst, &Solution::Sequential(seq)).unwrap().is_ok());
        let (rt, par) = rt_oracle(&g, &f).unwrap();
        assert_eq!(rt, 2);
        let inst = Instance::Rvm { graph: g, config: f };
        assert!(verify(&inst, &Solution::Parallel(par)).unwrap().is_ok());
    }

    #[test]
    fn lollipop_2_1_transposition() {
        // Tokens -1 and 1 sit on each other's vertices.
        let g = make_family(Family::Lollipop { m: 2, n: 1 }).unwrap();
        let f = Configuration::transpositions(4, &[(1, 3)]).unwrap();
        assert_eq!(ts_oracle(&g, &f).unwrap().0, 3);
    }

    #[test]
    fn endpoint_swaps_on_paths() {
        for (n, want) in [(2, 1), (3, 3), (4, 3), (5, 5)] {
            let g = make_family(Family::Path { n }).unwrap();
            assert_eq!(rt_oracle(&g, &endpoint_swap(n)).unwrap().0, want, "P_{n}");
        }
    }

    #[test]
    fn bounded_search() {
        let g = make_family(Family::Path { n: 5 }).unwrap();
        let f = endpoint_swap(5);
        let opts = OracleOptions::default();
        assert!(rt_at_most(&g, &f, 4, &opts).unwrap().is_none());
        assert_eq!(rt_at_most(&g, &f, 5, &opts).unwrap().unwrap().len(), 5);
    }

    #[test]
    fn colored_examples() {
        let p2 = make_family(Family::Path { n: 2 }).unwrap();
        let c = |v: Vec<u32>| Coloring::new(v).unwrap();
        assert_eq!(rt_colored_oracle(&p2, &c(vec![1, 2]), &c(vec![1, 2])).unwrap(), 0);
        assert_eq!(rt_colored_oracle(&p2, &c(vec![1, 2]), &c(vec![2, 1])).unwrap(), 1);
        let p3 = make_family(Family::Path { n: 3 }).unwrap();
        assert_eq!(rt_colored_oracle(&p3, &c(vec![2, 1, 1]), &c(vec![1, 1, 2])).unwrap(), 2);
        assert_eq!(rt_colored_oracle(&p3, &c(vec![2, 1, 1]), &c(vec![2, 2, 1])), Err(Error::InconsistentColorings));
    }

    #[test]
    fn two_step_counts() {
        let p2 = make_family(Family::Path { n: 2 }).unwrap();
        assert_eq!(count_two_step(&p2, &Configuration::identity(2)).unwrap(), 2);
        assert_eq!(count_two_step(&p2, &endpoint_swap(2)).unwrap(), 2);
        let p3 = make_family(Family::Path { n: 3 }).unwrap();
        assert_eq!(count_two_step(&p3, &endpoint_swap(3)).unwrap(), 0);
    }

    #[test]
    fn unreachable_and_budget() {
        let g = Graph::new(3, [(0, 1)]).unwrap();
        let f = Configuration::transpositions(3, &[(1, 2)]).unwrap();
        assert_eq!(ts_oracle(&g, &f), Err(Error::Unreachable));
        let p = make_family(Family::Path { n: 8 }).unwrap();
        let rev = Configuration::new((0..8).rev().collect()).unwrap();
        let opts = OracleOptions { node_cap: 50, ..Default::default() };
        assert!(matches!(ts_oracle_with(&p, &rev, &opts), Err(Error::Budget { .. })));
    }

    #[test]
    fn distance_tables_match_pointwise_search() {
        let g = make_family(Family::Starpath { m: 2, n: 2 }).unwrap();
        let table = ts_distance_table(&g, &OracleOptions::default()).unwrap();
        assert_eq!(table.len(), 120);
        for (f, d) in table.iter().step_by(7) {
            assert_eq!(d, Some(ts_oracle(&g, &f).unwrap().0));
        }
        let rt = rt_distance_table(&g, &OracleOptions::default()).unwrap();
        for (f, d) in rt.iter().step_by(11) {
            assert_eq!(d, Some(rt_oracle(&g, &f).unwrap().0));
        }
    }

    #[test]
    fn parallel_expansion_is_deterministic() {
        let g = make_family(Family::Lollipop { m: 3, n: 3 }).unwrap();
        let f = Configuration::new(vec![6, 5, 4, 3, 2, 1, 0]).unwrap();
        let seq = ts_oracle(&g, &f).unwrap();
        let par = ts_oracle_with(&g, &f, &OracleOptions { parallel: true, ..Default::default() }).unwrap();
        assert_eq!(seq, par);
    }

    #[test]
    fn matching_counts() {
        // P_n has Fibonacci many matchings.
        let p = make_family(Family::Path { n: 7 }).unwrap();
        assert_eq!(matchings(&p, true, 1000).unwrap().len(), 21);
        let k4 = make_family(Family::Complete { n: 4 }).unwrap();
        assert_eq!(matchings(&k4, true, 1000).unwrap().len(), 10);
        assert!(matches!(matchings(&k4, true, 5), Err(Error::Budget { .. })));
    }
}
