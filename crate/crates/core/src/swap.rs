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

//! Single swaps, parallel swaps and sequences of them.

use serde::{Deserialize, Serialize};

use crate::config::{Arrangement, Configuration};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

/// A set of pairwise-disjoint edges, stored sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Edge>", into = "Vec<Edge>")]
pub struct Matching {
    edges: Vec<Edge>,
}

impl Matching {
    pub fn new(edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        edges.sort_unstable();
        edges.dedup();
        let mut owner: std::collections::HashMap<usize, Edge> = Default::default();
        for &e in &edges {
            for x in [e.u, e.v] {
                if let Some(prev) = owner.insert(x, e) {
                    return Err(Error::NotAMatching(prev, e));
                }
            }
        }
        Ok(Matching { edges })
    }

    pub fn empty() -> Self {
        Matching::default()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.binary_search(&e).is_ok()
    }
}

impl TryFrom<Vec<Edge>> for Matching {
    type Error = Error;
    fn try_from(v: Vec<Edge>) -> Result<Self> {
        Matching::new(v)
    }
}

impl From<Matching> for Vec<Edge> {
    fn from(m: Matching) -> Self {
        m.edges
    }
}

/// An ordered list of single swaps.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SwapSequence {
    pub steps: Vec<Edge>,
}

impl SwapSequence {
    pub fn new(steps: Vec<Edge>) -> Self {
        SwapSequence { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn push(&mut self, e: Edge) {
        self.steps.push(e);
    }

    /// Applies every step in order.
    pub fn apply<A: Arrangement>(&self, g: &Graph, f: &A) -> Result<A> {
        let mut out = f.clone();
        for &e in &self.steps {
            check_edge(g, e)?;
            out.exchange(e.u, e.v);
        }
        Ok(out)
    }

    /// Each swap as a one-edge parallel step.
    pub fn to_parallel(&self) -> ParallelSwapSequence {
        ParallelSwapSequence { steps: self.steps.iter().map(|&e| Matching { edges: vec![e] }).collect() }
    }
}

/// An ordered list of matchings, each applied as one simultaneous step.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ParallelSwapSequence {
    pub steps: Vec<Matching>,
}

impl ParallelSwapSequence {
    /// Validates every step as a matching, reporting the first bad step.
    pub fn new(steps: Vec<Vec<Edge>>) -> Result<Self> {
        let steps = steps
            .into_iter()
            .enumerate()
            .map(|(i, s)| {
                Matching::new(s).map_err(|e| match e {
                    Error::NotAMatching(first, second) => Error::StepNotAMatching { step: i, first, second },
                    other => other,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ParallelSwapSequence { steps })
    }

    pub fn from_matchings(steps: Vec<Matching>) -> Self {
        ParallelSwapSequence { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Total number of single swaps.
    pub fn swap_count(&self) -> usize {
        self.steps.iter().map(Matching::len).sum()
    }

    pub fn apply<A: Arrangement>(&self, g: &Graph, f: &A) -> Result<A> {
        let mut out = f.clone();
        for s in &self.steps {
            out = apply_parallel(g, &out, s)?;
        }
        Ok(out)
    }

    /// Serializes the steps one swap at a time, in step order.
    pub fn flatten(&self) -> SwapSequence {
        SwapSequence { steps: self.steps.iter().flat_map(|s| s.edges.iter().copied()).collect() }
    }
}

fn check_edge(g: &Graph, e: Edge) -> Result<()> {
    if g.contains(e) {
        Ok(())
    } else {
        Err(Error::NotAnEdge(e))
    }
}

/// Exchanges the tokens on the endpoints of `e`.
pub fn apply_swap(g: &Graph, f: &Configuration, e: Edge) -> Result<Configuration> {
    check_edge(g, e)?;
    let mut out = f.clone();
    out.exchange(e.u, e.v);
    Ok(out)
}

/// Exchanges the tokens across every edge of `s` at once.
pub fn apply_parallel_swap(g: &Graph, f: &Configuration, s: &Matching) -> Result<Configuration> {
    apply_parallel(g, f, s)
}

pub(crate) fn apply_parallel<A: Arrangement>(g: &Graph, f: &A, s: &Matching) -> Result<A> {
    let mut out = f.clone();
    for &e in s.edges() {
        check_edge(g, e)?;
        out.exchange(e.u, e.v);
    }
    Ok(out)
}

/// Number of steps of `seq` that move `token`.
pub fn move_count(f: &Configuration, seq: &SwapSequence, token: usize) -> Result<usize> {
    let mut at = f.vertex_of(token)?;
    let mut count = 0;
    for e in &seq.steps {
        if e.touches(at) {
            at = e.other(at);
            count += 1;
        }
    }
    Ok(count)
}
