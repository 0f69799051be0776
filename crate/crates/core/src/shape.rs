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

//! Recognition of lollipop and star-path graphs and their signed labelling.

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::graph::{Edge, Family, Graph};

/// A bijection between the vertices of a graph and the signed positions
/// `-m..=n`, stored as indices `s + m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Shape {
    pub m: usize,
    pub n: usize,
    /// Index to vertex.
    pub vertex: Vec<usize>,
    /// Vertex to index.
    pub index: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Kind {
    Lollipop,
    Starpath,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Lollipop => "lollipop",
            Kind::Starpath => "star-path",
        }
    }

    fn edges(self, m: usize, n: usize) -> Vec<Edge> {
        let mut out = Vec::new();
        match self {
            Kind::Lollipop => {
                for i in 0..=m {
                    for j in i + 1..=m {
                        out.push(Edge::new(i, j));
                    }
                }
            }
            Kind::Starpath => out.extend((0..m).map(|i| Edge::new(i, m))),
        }
        out.extend((m..m + n).map(|i| Edge::new(i, i + 1)));
        out
    }
}

impl Shape {
    fn from_order(m: usize, n: usize, vertex: Vec<usize>) -> Self {
        let mut index = vec![0; vertex.len()];
        for (i, &v) in vertex.iter().enumerate() {
            index[v] = i;
        }
        Shape { m, n, vertex, index }
    }

    /// Recognizes `g` as a member of `kind`, preferring integer labels.
    pub fn recognize(g: &Graph, kind: Kind) -> Result<Self> {
        let shape = match g.family() {
            Some(Family::Lollipop { m, n: _ }) if kind == Kind::Lollipop || m == 1 => Some(Self::from_labels(g, m)),
            Some(Family::Starpath { m, n: _ }) if kind == Kind::Starpath => Some(Self::from_labels(g, m)),
            Some(Family::Path { n }) if n >= 2 => Some(Self::from_order(1, n - 2, (0..n).collect())),
            Some(Family::Complete { n }) if kind == Kind::Lollipop => {
                Some(Self::from_order(n - 1, 0, (0..n).collect()))
            }
            _ => None,
        };
        let shape = match shape {
            Some(s) => s,
            None => match kind {
                Kind::Lollipop => Self::guess_lollipop(g),
                Kind::Starpath => Self::guess_starpath(g),
            }
            .ok_or(Error::WrongFamily(kind.name()))?,
        };
        if !shape.matches(g, kind) {
            return Err(Error::WrongFamily(kind.name()));
        }
        Ok(shape)
    }

    fn from_labels(g: &Graph, m: usize) -> Self {
        let labels = g.labels().expect("family implies labels");
        let mut vertex = vec![0; g.n()];
        for (v, l) in labels.iter().enumerate() {
            let s: i64 = l.parse().expect("family implies integer labels");
            vertex[(s + m as i64) as usize] = v;
        }
        Self::from_order(m, g.n() - m - 1, vertex)
    }

    fn matches(&self, g: &Graph, kind: Kind) -> bool {
        let want = kind.edges(self.m, self.n);
        want.len() == g.edge_count() && want.iter().all(|e| g.has_edge(self.vertex[e.u], self.vertex[e.v]))
    }

    fn trivial(g: &Graph) -> Option<Self> {
        (g.n() == 1).then(|| Self::from_order(0, 0, vec![0]))
    }

    /// Walks a pendant path from its free end, returning the vertices from
    /// the end inward, stopping before the first vertex of degree > 2.
    fn tail(g: &Graph, end: usize, len: usize) -> Option<Vec<usize>> {
        let mut out = vec![end];
        let mut prev = usize::MAX;
        let mut cur = end;
        while out.len() < len + 1 {
            let next = *g.neighbors(cur).iter().find(|&&x| x != prev)?;
            out.push(next);
            prev = cur;
            cur = next;
        }
        Some(out)
    }

    fn guess_lollipop(g: &Graph) -> Option<Self> {
        if let Some(s) = Self::trivial(g) {
            return Some(s);
        }
        let total = g.n();
        let e = g.edge_count();
        let m = (1..total).find(|&m| m * (m + 1) / 2 + (total - 1 - m) == e)?;
        let n = total - 1 - m;
        let mut vertex = vec![usize::MAX; total];
        let mut used = vec![false; total];
        if n > 0 {
            let end = (0..total).find(|&v| g.degree(v) == 1)?;
            let tail = Self::tail(g, end, n)?;
            for (k, &v) in tail.iter().enumerate() {
                vertex[m + n - k] = v;
                used[v] = true;
            }
        } else {
            vertex[m] = total - 1;
            used[total - 1] = true;
        }
        let rest: Vec<usize> = (0..total).filter(|&v| !used[v]).collect();
        vertex[..m].copy_from_slice(&rest);
        Some(Self::from_order(m, n, vertex))
    }

    fn guess_starpath(g: &Graph) -> Option<Self> {
        if let Some(s) = Self::trivial(g) {
            return Some(s);
        }
        let total = g.n();
        if g.edge_count() != total - 1 || !g.is_connected() {
            return None;
        }
        let hubs: Vec<usize> = (0..total).filter(|&v| g.degree(v) >= 3).collect();
        let center = match hubs.as_slice() {
            [c] => *c,
            [] => {
                let end = (0..total).find(|&v| g.degree(v) == 1)?;
                g.neighbors(end)[0]
            }
            _ => return None,
        };
        let branches: Vec<usize> = g.neighbors(center).to_vec();
        let long: Vec<usize> = branches.iter().copied().filter(|&b| g.degree(b) > 1).collect();
        let (leaves, path_start): (Vec<usize>, Option<usize>) = match long.as_slice() {
            [] if hubs.is_empty() => {
                // A path of two or three vertices: one leaf, the rest is the path.
                let mut b = branches.clone();
                let first = b.remove(0);
                (vec![first], b.first().copied())
            }
            [] => (branches.clone(), None),
            [p] => (branches.iter().copied().filter(|b| b != p).collect(), Some(*p)),
            _ => return None,
        };
        let m = leaves.len();
        let n = total - 1 - m;
        let mut vertex = Vec::with_capacity(total);
        vertex.extend(leaves.iter().rev());
        vertex.push(center);
        if let Some(start) = path_start {
            let mut prev = center;
            let mut cur = start;
            loop {
                vertex.push(cur);
                match g.neighbors(cur).iter().find(|&&x| x != prev) {
                    Some(&next) => {
                        prev = cur;
                        cur = next;
                    }
                    None => break,
                }
            }
        }
        (vertex.len() == total).then(|| Self::from_order(m, n, vertex))
    }

    /// `c[i]` is the index of the token on the vertex with index `i`.
    pub fn canonical(&self, f: &Configuration) -> Vec<usize> {
        self.vertex.iter().map(|&v| self.index[f.token(v)]).collect()
    }

    pub fn edge(&self, a: usize, b: usize) -> Edge {
        Edge::new(self.vertex[a], self.vertex[b])
    }
}
