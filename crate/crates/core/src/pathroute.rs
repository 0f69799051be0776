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

//! Routing via matchings on paths.
//!
//! Positions along the path are numbered from 1 in the parity rules, so the
//! first step of an odd-even sequence uses the edges `{1,2}, {3,4}, ...`.

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::graph::{make_family, Edge, Family, Graph};
use crate::swap::{Matching, ParallelSwapSequence};

/// Vertex order along a path graph.
#[derive(Debug, Clone)]
struct Line {
    vertex: Vec<usize>,
    position: Vec<usize>,
}

impl Line {
    fn recognize(g: &Graph) -> Result<Self> {
        let n = g.n();
        let vertex: Vec<usize> = if let (Some(Family::Path { .. }), Some(labels)) = (g.family(), g.labels()) {
            let mut v: Vec<usize> = (0..n).collect();
            v.sort_by_key(|&x| labels[x].parse::<usize>().unwrap_or(usize::MAX));
            v
        } else {
            if n == 0 || g.edge_count() != n - 1 || g.max_degree() > 2 || !g.is_connected() {
                return Err(Error::WrongFamily("path"));
            }
            let start = (0..n).find(|&v| g.degree(v) <= 1).ok_or(Error::WrongFamily("path"))?;
            let mut order = vec![start];
            let mut prev = usize::MAX;
            while order.len() < n {
                let cur = *order.last().unwrap();
                let next = *g.neighbors(cur).iter().find(|&&x| x != prev).ok_or(Error::WrongFamily("path"))?;
                prev = cur;
                order.push(next);
            }
            order
        };
        let mut position = vec![0; n];
        for (p, &v) in vertex.iter().enumerate() {
            position[v] = p;
        }
        Ok(Line { vertex, position })
    }

    /// `c[p]` is the position of the token on position `p`.
    fn canonical(&self, f: &Configuration) -> Vec<usize> {
        self.vertex.iter().map(|&v| self.position[f.token(v)]).collect()
    }

    fn decanonicalize(&self, c: &[usize]) -> Configuration {
        let mut t = vec![0; c.len()];
        for (p, &x) in c.iter().enumerate() {
            t[self.vertex[p]] = self.vertex[x];
        }
        Configuration::from_vec_unchecked(t)
    }

    fn edge(&self, p: usize) -> Edge {
        Edge::new(self.vertex[p], self.vertex[p + 1])
    }

    /// Lower position of a path edge.
    fn low(&self, e: Edge) -> Result<usize> {
        let (a, b) = (self.position[e.u], self.position[e.v]);
        if a.abs_diff(b) != 1 {
            return Err(Error::NotAnEdge(e));
        }
        Ok(a.min(b))
    }
}

/// Step `j` (from 1) may use the edge starting at 0-based position `p`.
fn parity_ok(p: usize, j: usize) -> bool {
    (p + 1 + j).is_multiple_of(2)
}

fn check_size(g: &Graph, f: &Configuration) -> Result<()> {
    if g.n() != f.n() {
        return Err(Error::InvalidInstance("configuration size differs from graph".into()));
    }
    Ok(())
}

/// Configurations visited by the greedy odd-even algorithm, starting with `f0`.
pub fn ap_trace(g: &Graph, f0: &Configuration) -> Result<Vec<Configuration>> {
    check_size(g, f0)?;
    let line = Line::recognize(g)?;
    let (_, trace) = run_ap(&line, f0);
    trace.map(|t| t.iter().map(|c| line.decanonicalize(c)).collect())
}

/// Greedy odd-even routing: step `j` swaps every adjacent inversion whose
/// left position `i` makes `i + j` even.
pub fn ap_solve(g: &Graph, f0: &Configuration) -> Result<ParallelSwapSequence> {
    check_size(g, f0)?;
    let line = Line::recognize(g)?;
    let (steps, trace) = run_ap(&line, f0);
    trace?;
    Ok(steps)
}

fn run_ap(line: &Line, f0: &Configuration) -> (ParallelSwapSequence, Result<Vec<Vec<usize>>>) {
    let n = line.vertex.len();
    let mut c = line.canonical(f0);
    let mut trace = vec![c.clone()];
    let mut steps = Vec::new();
    let cap = n * n.saturating_sub(1) / 2 + n + 1;
    let mut j = 0;
    while c.iter().enumerate().any(|(p, &x)| p != x) {
        j += 1;
        if j > cap {
            return (
                ParallelSwapSequence::default(),
                Err(Error::Precondition("odd-even routing did not terminate".into())),
            );
        }
        let mut step = Vec::new();
        for p in 0..n - 1 {
            if parity_ok(p, j) && c[p] > c[p + 1] {
                step.push(p);
            }
        }
        for &p in &step {
            c.swap(p, p + 1);
        }
        trace.push(c.clone());
        steps.push(Matching::new(step.into_iter().map(|p| line.edge(p))).expect("same-parity edges are disjoint"));
    }
    (ParallelSwapSequence::from_matchings(steps), Ok(trace))
}

/// Delays every swap that breaks the odd-even condition by one step.
///
/// Requires consecutive steps to share no edge. The result is one step longer
/// and has the same effect.
pub fn oe_transform(g: &Graph, seq: &ParallelSwapSequence) -> Result<ParallelSwapSequence> {
    let line = Line::recognize(g)?;
    let lows: Vec<Vec<usize>> = seq
        .steps
        .iter()
        .map(|s| s.edges().iter().map(|&e| line.low(e)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    for (j, pair) in seq.steps.windows(2).enumerate() {
        if let Some(e) = pair[0].edges().iter().find(|&&e| pair[1].contains(e)) {
            return Err(Error::Precondition(format!("steps {j} and {} both use {e}", j + 1)));
        }
    }
    let m = lows.len();
    let empty = Vec::new();
    let steps = (1..=m + 1)
        .map(|j| {
            let cur = if j <= m { &lows[j - 1] } else { &empty };
            let prev = if j >= 2 { &lows[j - 2] } else { &empty };
            let edges = cur.iter().chain(prev).filter(|&&p| parity_ok(p, j)).map(|&p| line.edge(p));
            Matching::new(edges).expect("same-parity edges are disjoint")
        })
        .collect();
    Ok(ParallelSwapSequence::from_matchings(steps))
}

/// Whether step `j` uses only edges `{i, i+1}` with `i + j` even.
pub fn is_odd_even(g: &Graph, seq: &ParallelSwapSequence) -> Result<bool> {
    let line = Line::recognize(g)?;
    for (j, s) in seq.steps.iter().enumerate() {
        for &e in s.edges() {
            if !parity_ok(line.low(e)?, j + 1) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether every swap exchanges a larger token on the left with a smaller
/// token on the right at the time it is applied.
pub fn is_reasonable(g: &Graph, f: &Configuration, seq: &ParallelSwapSequence) -> Result<bool> {
    check_size(g, f)?;
    let line = Line::recognize(g)?;
    let mut c = line.canonical(f);
    for s in &seq.steps {
        let lows = s.edges().iter().map(|&e| line.low(e)).collect::<Result<Vec<_>>>()?;
        if lows.iter().any(|&p| c[p] < c[p + 1]) {
            return Ok(false);
        }
        for p in lows {
            c.swap(p, p + 1);
        }
    }
    Ok(true)
}

/// The configuration on `P_n` exchanging the tokens at both ends.
pub fn endpoint_swap(n: usize) -> Result<Configuration> {
    if n < 2 {
        return Err(Error::InvalidFamily("endpoint swap needs n >= 2".into()));
    }
    Configuration::transpositions(n, &[(0, n - 1)])
}

/// An explicit solution for [`endpoint_swap`] on the path built by
/// `make_family(Family::Path { n })`: `n - 1` steps for even `n`, `n` for odd.
pub fn endpoint_schedule(n: usize) -> Result<ParallelSwapSequence> {
    if n < 2 {
        return Err(Error::InvalidFamily("endpoint schedule needs n >= 2".into()));
    }
    // Edge {i, i+1} in 1-based labels.
    let e = |i: usize| Edge::new(i - 1, i);
    let steps: Vec<Vec<Edge>> = if n.is_multiple_of(2) {
        (1..n).map(|i| vec![e(i), e(n - i)]).collect()
    } else {
        let mut s = vec![vec![e(1)]];
        s.extend((2..n).map(|i| vec![e(i), e(n - i + 1)]));
        s.push(vec![e(1)]);
        s
    };
    ParallelSwapSequence::new(steps)
}

/// The path `P_n` with labels `1..=n`.
pub fn path(n: usize) -> Result<Graph> {
    make_family(Family::Path { n })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_based(f: &Configuration) -> Vec<usize> {
        f.tokens().iter().map(|t| t + 1).collect()
    }

    fn from_one_based(v: &[usize]) -> Configuration {
        Configuration::new(v.iter().map(|t| t - 1).collect()).unwrap()
    }

    fn e(i: usize) -> Edge {
        Edge::new(i - 1, i)
    }

    #[test]
    fn identity_needs_no_steps() {
        let g = path(5).unwrap();
        assert!(ap_solve(&g, &Configuration::identity(5)).unwrap().is_empty());
    }

    #[test]
    fn worked_example_trace() {
        let g = path(7).unwrap();
        let f0 = from_one_based(&[3, 2, 5, 1, 7, 6, 4]);
        let trace: Vec<Vec<usize>> = ap_trace(&g, &f0).unwrap().iter().map(one_based).collect();
        assert_eq!(
            trace,
            vec![
                vec![3, 2, 5, 1, 7, 6, 4],
                vec![2, 3, 1, 5, 6, 7, 4],
                vec![2, 1, 3, 5, 6, 4, 7],
                vec![1, 2, 3, 5, 4, 6, 7],
                vec![1, 2, 3, 4, 5, 6, 7],
            ]
        );
        let sol = ap_solve(&g, &f0).unwrap();
        assert_eq!(sol.len(), 4);
        assert!(is_odd_even(&g, &sol).unwrap());
        assert!(is_reasonable(&g, &f0, &sol).unwrap());
    }

    fn optimal_example() -> ParallelSwapSequence {
        ParallelSwapSequence::new(vec![vec![e(1), e(3), e(6)], vec![e(2), e(5)], vec![e(1), e(4), e(6)]]).unwrap()
    }

    #[test]
    fn worked_example_optimum() {
        let g = path(7).unwrap();
        let f0 = from_one_based(&[3, 2, 5, 1, 7, 6, 4]);
        let opt = optimal_example();
        let f1 =
            opt.steps[0..1].iter().try_fold(f0.clone(), |f, s| crate::swap::apply_parallel_swap(&g, &f, s)).unwrap();
        assert_eq!(one_based(&f1), vec![2, 3, 1, 5, 7, 4, 6]);
        assert!(opt.apply(&g, &f0).unwrap().is_identity());
        assert!(is_reasonable(&g, &f0, &opt).unwrap());
        assert!(!is_odd_even(&g, &opt).unwrap());
        let oe = oe_transform(&g, &opt).unwrap();
        assert_eq!(oe.len(), 4);
        assert!(is_odd_even(&g, &oe).unwrap());
        assert!(oe.apply(&g, &f0).unwrap().is_identity());
    }

    #[test]
    fn oe_transform_edge_cases() {
        let g = path(4).unwrap();
        let empty = oe_transform(&g, &ParallelSwapSequence::default()).unwrap();
        assert_eq!(empty.len(), 1);
        assert!(empty.steps[0].is_empty());
        let single = ParallelSwapSequence::new(vec![vec![e(2)]]).unwrap();
        let delayed = oe_transform(&g, &single).unwrap();
        assert_eq!(delayed, ParallelSwapSequence::new(vec![vec![], vec![e(2)]]).unwrap());
        let repeated = ParallelSwapSequence::new(vec![vec![e(2)], vec![e(2)]]).unwrap();
        assert!(matches!(oe_transform(&g, &repeated), Err(Error::Precondition(_))));
    }

    #[test]
    fn reasonableness() {
        let g = path(3).unwrap();
        let sorted_pair = ParallelSwapSequence::new(vec![vec![e(1)]]).unwrap();
        assert!(!is_reasonable(&g, &Configuration::identity(3), &sorted_pair).unwrap());
    }

    #[test]
    fn endpoint_schedules() {
        for (n, len) in [(2, 1), (3, 3), (4, 3), (5, 5), (6, 5), (7, 7)] {
            let sched = endpoint_schedule(n).unwrap();
            assert_eq!(sched.len(), len, "n = {n}");
            let g = path(n).unwrap();
            assert!(sched.apply(&g, &endpoint_swap(n).unwrap()).unwrap().is_identity());
        }
        assert!(endpoint_schedule(1).is_err());
    }

    #[test]
    fn unlabelled_paths() {
        let g = Graph::new(4, [(2, 0), (0, 3), (3, 1)]).unwrap();
        let f = Configuration::new(vec![1, 0, 3, 2]).unwrap();
        let sol = ap_solve(&g, &f).unwrap();
        assert!(sol.apply(&g, &f).unwrap().is_identity());
        assert_eq!(
            ap_solve(&make_family(Family::Cycle { n: 4 }).unwrap(), &Configuration::identity(4)),
            Err(Error::WrongFamily("path"))
        );
    }
}
