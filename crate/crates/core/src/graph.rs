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

//! Undirected simple graphs and the named graph families.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An undirected edge stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    /// Builds a normalized edge. Panics on a self-loop.
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "self-loop {a}");
        if a < b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn touches(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint that is not `x`.
    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.u, self.v)
    }
}

impl From<(usize, usize)> for Edge {
    fn from((a, b): (usize, usize)) -> Self {
        Edge::new(a, b)
    }
}

impl Serialize for Edge {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.u, self.v].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Edge {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [a, b] = <[usize; 2]>::deserialize(d)?;
        if a == b {
            return Err(serde::de::Error::custom(format!("self-loop {a}")));
        }
        Ok(Edge::new(a, b))
    }
}

/// Graph families with a canonical labelling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum Family {
    Path { n: usize },
    Cycle { n: usize },
    Complete { n: usize },
    Lollipop { m: usize, n: usize },
    Starpath { m: usize, n: usize },
}

/// An undirected simple graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicates and out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at {a}")));
            }
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!("edge {{{a},{b}}} out of range for {n} vertices")));
            }
            let e = Edge::new(a, b);
            if !set.insert(e) {
                return Err(Error::InvalidGraph(format!("duplicate edge {e}")));
            }
        }
        let edges: Vec<Edge> = set.into_iter().collect();
        let mut adj = vec![Vec::new(); n];
        for e in &edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, edges, adj, labels: None })
    }

    /// Attaches one label per vertex.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::InvalidGraph(format!("{} labels for {} vertices", labels.len(), self.n)));
        }
        let distinct: BTreeSet<&String> = labels.iter().collect();
        if distinct.len() != labels.len() {
            return Err(Error::InvalidGraph("duplicate labels".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges in sorted order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    /// Looks up a vertex by its label.
    pub fn vertex_by_label(&self, name: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == name)
    }

    /// Map from label to vertex id.
    pub fn label_index(&self) -> HashMap<String, usize> {
        match &self.labels {
            Some(l) => l.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect(),
            None => HashMap::new(),
        }
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && b < self.n && a != b && self.adj[a].binary_search(&b).is_ok()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.has_edge(e.u, e.v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        queue.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Errors with the component list unless the graph is connected.
    pub fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected(self.components()))
        }
    }

    pub fn is_bipartite(&self) -> bool {
        let mut side = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in &self.adj[x] {
                    if side[y] == u8::MAX {
                        side[y] = 1 - side[x];
                        queue.push_back(y);
                    } else if side[y] == side[x] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// BFS distances from `s`; `usize::MAX` marks unreachable vertices.
    pub fn bfs(&self, s: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// All-pairs shortest path lengths. Requires a connected graph.
    pub fn distances(&self) -> Result<Vec<Vec<usize>>> {
        self.require_connected()?;
        Ok((0..self.n).map(|s| self.bfs(s)).collect())
    }

    /// Recognizes the family encoded by integer labels, if any.
    pub fn family(&self) -> Option<Family> {
        let labels = self.labels.as_ref()?;
        let signed: Vec<i64> = labels.iter().map(|s| s.parse().ok()).collect::<Option<_>>()?;
        let lo = *signed.iter().min()?;
        let hi = *signed.iter().max()?;
        if (hi - lo + 1) as usize != self.n {
            return None;
        }
        let candidates: Vec<Family> = if lo >= 1 {
            if lo != 1 {
                return None;
            }
            vec![Family::Path { n: self.n }, Family::Cycle { n: self.n }, Family::Complete { n: self.n }]
        } else if lo < 0 && hi >= 0 {
            let (m, n) = ((-lo) as usize, hi as usize);
            vec![Family::Lollipop { m, n }, Family::Starpath { m, n }]
        } else {
            return None;
        };
        candidates.into_iter().find(|fam| {
            make_family(*fam).is_ok_and(|g| {
                let idx = g.label_index();
                let remap: Vec<usize> = labels.iter().map(|l| idx[l]).collect();
                self.edges.iter().all(|e| g.has_edge(remap[e.u], remap[e.v])) && g.edge_count() == self.edge_count()
            })
        })
    }
}

/// Builds a member of a family with its canonical labels.
///
/// Lollipop and star-path vertices carry signed labels `-m..=n` stored in
/// increasing order, so label `s` is vertex `s + m`. Path, cycle and complete
/// graphs carry labels `1..=n`.
pub fn make_family(kind: Family) -> Result<Graph> {
    let numbered = |n: usize| (1..=n).map(|i| i.to_string()).collect::<Vec<_>>();
    match kind {
        Family::Path { n } => {
            if n < 1 {
                return Err(Error::InvalidFamily("path needs n >= 1".into()));
            }
            Graph::new(n, (1..n).map(|i| (i - 1, i)))?.with_labels(numbered(n))
        }
        Family::Cycle { n } => {
            if n < 3 {
                return Err(Error::InvalidFamily("cycle needs n >= 3".into()));
            }
            Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))?.with_labels(numbered(n))
        }
        Family::Complete { n } => {
            if n < 1 {
                return Err(Error::InvalidFamily("complete graph needs n >= 1".into()));
            }
            let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
            Graph::new(n, edges)?.with_labels(numbered(n))
        }
        Family::Lollipop { m, n } => {
            if m < 1 {
                return Err(Error::InvalidFamily("lollipop needs m >= 1".into()));
            }
            let clique = (0..=m).flat_map(|i| (i + 1..=m).map(move |j| (i, j)));
            let path = (m..m + n).map(|i| (i, i + 1));
            Graph::new(m + n + 1, clique.chain(path))?.with_labels(signed_labels(m, n))
        }
        Family::Starpath { m, n } => {
            if m < 1 {
                return Err(Error::InvalidFamily("star-path needs m >= 1".into()));
            }
            let star = (0..m).map(|i| (i, m));
            let path = (m..m + n).map(|i| (i, i + 1));
            Graph::new(m + n + 1, star.chain(path))?.with_labels(signed_labels(m, n))
        }
    }
}

fn signed_labels(m: usize, n: usize) -> Vec<String> {
    (-(m as i64)..=n as i64).map(|s| s.to_string()).collect()
}
