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

//! Deciding whether two parallel steps suffice.

use std::collections::{BTreeSet, VecDeque};

use petgraph::algo::maximum_matching;
use petgraph::graph::{NodeIndex, UnGraph};

use crate::config::{Coloring, Configuration};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::swap::Matching;

/// Anchors `u`, `v` for which the reflection pairs
/// `{f^i(u), f^-i(v)}` and `{f^(i+1)(u), f^-i(v)}` form the two steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alignment {
    pub u: usize,
    pub v: usize,
    pub first: Vec<Edge>,
    pub second: Vec<Edge>,
}

/// Non-fixed orbits and which of them can be routed together in two steps.
#[derive(Debug, Clone)]
pub struct OrbitPairGraph {
    pub orbits: Vec<Vec<usize>>,
    /// `(a, b, alignment)` with `a < b` indexing `orbits`.
    pub pairs: Vec<(usize, usize, Alignment)>,
    /// Orbits that can be routed on their own.
    pub self_feasible: Vec<(usize, Alignment)>,
}

fn is_orbit(f: &Configuration, orbit: &[usize]) -> bool {
    let Some(&start) = orbit.first() else { return false };
    if orbit.iter().any(|&x| x >= f.n()) {
        return false;
    }
    let mut cycle = BTreeSet::new();
    let mut x = start;
    while cycle.insert(x) {
        x = f.token(x);
    }
    cycle.len() == orbit.len() && orbit.iter().all(|x| cycle.contains(x))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Records `x <-> y` in a partner table, failing on conflicts.
fn pair(partner: &mut [Option<usize>], x: usize, y: usize) -> bool {
    let ok = |p: Option<usize>, want: usize| p.is_none_or(|q| q == want);
    if !ok(partner[x], y) || !ok(partner[y], x) {
        return false;
    }
    partner[x] = Some(y);
    partner[y] = Some(x);
    true
}

fn try_anchor(g: &Graph, f: &Configuration, u: usize, v: usize, period: usize, members: &[usize]) -> Option<Alignment> {
    let inv = f.inverse();
    let n = f.n();
    let mut first = vec![None; n];
    let mut second = vec![None; n];
    let (mut x, mut y) = (u, v);
    for _ in 0..period {
        let next = f.token(x);
        if !pair(&mut first, x, y) || !pair(&mut second, next, y) {
            return None;
        }
        x = next;
        y = inv[y];
    }
    let mut s = Vec::new();
    let mut t = Vec::new();
    for &a in members {
        for (table, out) in [(&first, &mut s), (&second, &mut t)] {
            if let Some(b) = table[a] {
                if a < b {
                    if !g.has_edge(a, b) {
                        return None;
                    }
                    out.push(Edge::new(a, b));
                }
            }
        }
    }
    // f S T must fix every member.
    let apply = |table: &[Option<usize>], a: usize| table[a].unwrap_or(a);
    if members.iter().any(|&a| f.token(apply(&first, apply(&second, a))) != a) {
        return None;
    }
    Some(Alignment { u, v, first: s, second: t })
}

/// Finds anchors routing the orbits `a` and `b` together in two steps.
///
/// `u` is fixed to the first element of `a` and `v` ranges over `b` in order.
/// Pass the same orbit twice to test an orbit on its own.
pub fn orbit_pair_feasible(g: &Graph, f: &Configuration, a: &[usize], b: &[usize]) -> Result<Option<Alignment>> {
    if g.n() != f.n() {
        return Err(Error::InvalidInstance("configuration size differs from graph".into()));
    }
    for orbit in [a, b] {
        if !is_orbit(f, orbit) {
            return Err(Error::Precondition(format!("{orbit:?} is not an orbit")));
        }
    }
    let same = a.iter().collect::<BTreeSet<_>>() == b.iter().collect::<BTreeSet<_>>();
    if !same && a.iter().any(|x| b.contains(x)) {
        return Err(Error::Precondition("orbits overlap".into()));
    }
    if a.len() == 1 && b.len() == 1 {
        // Fixed points stay put.
        return Ok(Some(Alignment { u: a[0], v: b[0], first: Vec::new(), second: Vec::new() }));
    }
    let period = a.len() / gcd(a.len(), b.len()) * b.len();
    let members: Vec<usize> = if same { a.to_vec() } else { a.iter().chain(b).copied().collect() };
    Ok(b.iter().find_map(|&v| try_anchor(g, f, a[0], v, period, &members)))
}

impl OrbitPairGraph {
    pub fn build(g: &Graph, f: &Configuration) -> Result<Self> {
        let orbits: Vec<Vec<usize>> = f.orbits().into_iter().filter(|o| o.len() > 1).collect();
        let mut pairs = Vec::new();
        let mut self_feasible = Vec::new();
        for i in 0..orbits.len() {
            if let Some(al) = orbit_pair_feasible(g, f, &orbits[i], &orbits[i])? {
                self_feasible.push((i, al));
            }
            for j in i + 1..orbits.len() {
                if orbits[i].len() != orbits[j].len() {
                    continue;
                }
                if let Some(al) = orbit_pair_feasible(g, f, &orbits[i], &orbits[j])? {
                    pairs.push((i, j, al));
                }
            }
        }
        Ok(OrbitPairGraph { orbits, pairs, self_feasible })
    }
}

/// A two-step solution `(S, T)` with `f S T` the identity, if one exists.
pub fn decide_rt2(g: &Graph, f: &Configuration) -> Result<Option<(Matching, Matching)>> {
    let opg = OrbitPairGraph::build(g, f)?;
    let k = opg.orbits.len();
    let aux = opg.self_feasible.len();
    // An orbit routed alone is matched to its auxiliary node; the unused
    // auxiliaries pair up inside a clique, with one dummy fixing parity.
    let dummy = (k + aux) % 2 == 1;
    let total = k + aux + usize::from(dummy);
    let mut h = UnGraph::<(), usize>::with_capacity(total, 0);
    let nodes: Vec<NodeIndex> = (0..total).map(|_| h.add_node(())).collect();
    for (idx, (a, b, _)) in opg.pairs.iter().enumerate() {
        h.add_edge(nodes[*a], nodes[*b], idx);
    }
    for (idx, (o, _)) in opg.self_feasible.iter().enumerate() {
        h.add_edge(nodes[*o], nodes[k + idx], usize::MAX);
    }
    for x in k..total {
        for y in x + 1..total {
            h.add_edge(nodes[x], nodes[y], usize::MAX);
        }
    }
    let matching = maximum_matching(&h);
    if !matching.is_perfect() {
        return Ok(None);
    }
    let mut s = Vec::new();
    let mut t = Vec::new();
    for (o, &node) in nodes.iter().enumerate().take(k) {
        let mate = matching.mate(node).expect("perfect").index();
        let al = if mate >= k {
            &opg.self_feasible[mate - k].1
        } else if o < mate {
            &opg.pairs.iter().find(|(a, b, _)| *a == o && *b == mate).expect("matched pairs are edges").2
        } else {
            continue;
        };
        s.extend_from_slice(&al.first);
        t.extend_from_slice(&al.second);
    }
    let (s, t) = (Matching::new(s)?, Matching::new(t)?);
    debug_assert!(
        {
            let mut c = f.tokens().to_vec();
            for e in s.edges() {
                c.swap(e.u, e.v);
            }
            for e in t.edges() {
                c.swap(e.u, e.v);
            }
            c.iter().enumerate().all(|(v, &x)| v == x)
        },
        "assembled steps do not route f"
    );
    Ok(Some((s, t)))
}

/// Vertex-split flow network for the two-coloring decision.
///
/// Vertices `0..n` are the graph's, `n` is the source and `n + 1` the sink.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    pub n: usize,
    pub arcs: Vec<(usize, usize)>,
    pub sources: Vec<usize>,
    pub sinks: Vec<usize>,
}

/// The four classes by initial and goal color.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColorClass {
    /// Initial 1, goal 2.
    Source,
    /// Initial 2, goal 1.
    Sink,
    /// Stays 1.
    One,
    /// Stays 2.
    Two,
}

fn classify(f: &Coloring, goal: &Coloring) -> Vec<ColorClass> {
    (0..f.n())
        .map(|v| match (f.color(v), goal.color(v)) {
            (1, 2) => ColorClass::Source,
            (2, 1) => ColorClass::Sink,
            (1, 1) => ColorClass::One,
            _ => ColorClass::Two,
        })
        .collect()
}

impl FlowNetwork {
    pub fn build(g: &Graph, f: &Coloring, goal: &Coloring) -> Self {
        use ColorClass::*;
        let class = classify(f, goal);
        let allowed = |a: ColorClass, b: ColorClass| {
            matches!(
                (a, b),
                (Source, Sink) | (Source, One) | (Source, Two) | (One, Sink) | (Two, Sink) | (One, Two) | (Two, One)
            )
        };
        let n = g.n();
        let mut arcs = Vec::new();
        for e in g.edges() {
            for (a, b) in [(e.u, e.v), (e.v, e.u)] {
                if allowed(class[a], class[b]) {
                    arcs.push((a, b));
                }
            }
        }
        let sources: Vec<usize> = (0..n).filter(|&v| class[v] == Source).collect();
        let sinks: Vec<usize> = (0..n).filter(|&v| class[v] == Sink).collect();
        arcs.extend(sources.iter().map(|&v| (n, v)));
        arcs.extend(sinks.iter().map(|&v| (v, n + 1)));
        arcs.sort_unstable();
        FlowNetwork { n, arcs, sources, sinks }
    }

    /// Maximum number of internally vertex-disjoint source-sink paths, with
    /// the paths listed as graph vertices.
    pub fn disjoint_paths(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        // Split node x into 2x (in) and 2x + 1 (out); s = 2n + 1, t = 2(n + 1).
        let s = 2 * n + 1;
        let t = 2 * (n + 1);
        let size = 2 * (n + 2);
        let mut res = Residual::new(size);
        for v in 0..n {
            res.add(2 * v, 2 * v + 1);
        }
        for &(a, b) in &self.arcs {
            let from = if a == n { s } else { 2 * a + 1 };
            let to = if b == n + 1 { t } else { 2 * b };
            res.add(from, to);
        }
        while res.augment(s, t) {}
        let mut paths = Vec::new();
        for &arc in &res.adj[s] {
            if res.flow(arc) == 0 {
                continue;
            }
            let mut path = Vec::new();
            let mut node = res.to[arc];
            while node != t {
                let v = node / 2;
                path.push(v);
                let out = 2 * v + 1;
                let next = res.adj[out].iter().find(|&&a| res.flow(a) == 1).expect("flow is conserved");
                node = res.to[*next];
            }
            paths.push(path);
        }
        paths
    }
}

/// Unit-capacity residual graph with paired forward/backward arcs.
struct Residual {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u8>,
}

impl Residual {
    fn new(size: usize) -> Self {
        Residual { adj: vec![Vec::new(); size], to: Vec::new(), cap: Vec::new() }
    }

    fn add(&mut self, a: usize, b: usize) {
        self.adj[a].push(self.to.len());
        self.to.push(b);
        self.cap.push(1);
        self.adj[b].push(self.to.len());
        self.to.push(a);
        self.cap.push(0);
    }

    /// Flow on a forward arc.
    fn flow(&self, arc: usize) -> u8 {
        if arc.is_multiple_of(2) {
            self.cap[arc ^ 1]
        } else {
            0
        }
    }

    fn augment(&mut self, s: usize, t: usize) -> bool {
        let mut via = vec![usize::MAX; self.adj.len()];
        let mut queue = VecDeque::from([s]);
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        while let Some(x) = queue.pop_front() {
            for &arc in &self.adj[x] {
                let y = self.to[arc];
                if self.cap[arc] > 0 && !seen[y] {
                    seen[y] = true;
                    via[y] = arc;
                    queue.push_back(y);
                }
            }
        }
        if !seen[t] {
            return false;
        }
        let mut y = t;
        while y != s {
            let arc = via[y];
            self.cap[arc] -= 1;
            self.cap[arc ^ 1] += 1;
            y = self.to[arc ^ 1];
        }
        true
    }
}

/// A two-step colored solution together with the paths it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredTwoStep {
    pub first: Matching,
    pub second: Matching,
    pub paths: Vec<Vec<usize>>,
}

/// Decides whether two steps turn 2-coloring `f` into `goal`.
pub fn decide_rt2_2colored(g: &Graph, f: &Coloring, goal: &Coloring) -> Result<Option<ColoredTwoStep>> {
    if f.n() != g.n() || goal.n() != g.n() {
        return Err(Error::InvalidInstance("coloring size differs from graph".into()));
    }
    if !f.is_consistent_with(goal) {
        return Err(Error::InconsistentColorings);
    }
    if f.num_colors() > 2 || goal.num_colors() > 2 {
        return Err(Error::InvalidColoring("expected colors 1 and 2 only".into()));
    }
    let net = FlowNetwork::build(g, f, goal);
    let paths = net.disjoint_paths();
    if paths.len() < net.sources.len() {
        return Ok(None);
    }
    let mut first = Vec::new();
    let mut second = Vec::new();
    for path in &paths {
        let (odd, even): (Vec<Edge>, Vec<Edge>) = {
            let mut odd = Vec::new();
            let mut even = Vec::new();
            for (i, w) in path.windows(2).enumerate() {
                let e = Edge::new(w[0], w[1]);
                if i % 2 == 0 {
                    odd.push(e);
                } else {
                    even.push(e);
                }
            }
            (odd, even)
        };
        if f.color(path[0]) != f.color(path[1]) {
            first.extend(odd);
            second.extend(even);
        } else {
            first.extend(even);
            second.extend(odd);
        }
    }
    Ok(Some(ColoredTwoStep { first: Matching::new(first)?, second: Matching::new(second)?, paths }))
}
