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

//! Instance generators for the hardness constructions.
//!
//! Each builder returns a [`ReductionOutput`] whose graph carries structured
//! vertex names (`u_1`, `u'_1`, `u_1,3`, `v_2`, ...). Certificates are
//! recomputed from the built graph. Forward maps turn a witness for the
//! source problem into a schedule of the expected length.

mod colored;
mod counting;
mod rvm;
mod sepsat;
mod threedm;

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::swap::{Matching, ParallelSwapSequence};
use crate::verify::Instance;

pub use colored::{map_assignment_2c3, map_assignment_3c2, reduce_sepsat_2c3, reduce_sepsat_3c2};
pub use counting::{build_counting_gadget, count_perfect_matchings, count_structured_solutions, is_structured};
pub use rvm::{map_assignment_rvm, map_assignment_rvm_deg3, reduce_sepsat_rvm, reduce_sepsat_rvm_deg3};
pub use sepsat::{reduce_3sat_sepsat, SepSatInstance, SepSatReduction};
pub use threedm::{lower_bound_3dm, map_3dm_solution, reduce_3dm_ts, ThreeDMInstance};

/// Structural facts about a generated instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub bipartite: bool,
    pub max_degree: usize,
    pub expected_optimum: usize,
}

impl Certificate {
    pub fn of(graph: &Graph, expected_optimum: usize) -> Self {
        Certificate { bipartite: graph.is_bipartite(), max_degree: graph.max_degree(), expected_optimum }
    }
}

/// A generated instance with its vertex names and certificate.
#[derive(Debug, Clone)]
pub struct ReductionOutput {
    pub instance: Instance,
    pub certificate: Certificate,
}

impl ReductionOutput {
    fn new(instance: Instance, expected_optimum: usize) -> Self {
        let certificate = Certificate::of(instance.graph(), expected_optimum);
        ReductionOutput { instance, certificate }
    }

    pub fn graph(&self) -> &Graph {
        self.instance.graph()
    }

    /// Vertex names mapped to ids.
    pub fn label_map(&self) -> BTreeMap<String, usize> {
        self.graph().label_index().into_iter().collect()
    }

    /// Id of a named vertex.
    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.graph().vertex_by_label(name).ok_or_else(|| Error::InvalidInstance(format!("no vertex named {name}")))
    }
}

/// Incremental graph construction by vertex name.
#[derive(Debug, Default)]
pub(crate) struct Builder {
    names: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<(usize, usize)>,
}

impl Builder {
    pub fn vertex(&mut self, name: &str) -> usize {
        if let Some(&v) = self.index.get(name) {
            return v;
        }
        let v = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), v);
        v
    }

    pub fn id(&self, name: &str) -> usize {
        self.index[name]
    }

    /// Adds the edges of a path through the named vertices.
    pub fn path(&mut self, names: &[String]) {
        let ids: Vec<usize> = names.iter().map(|s| self.vertex(s)).collect();
        for w in ids.windows(2) {
            let e = (w[0].min(w[1]), w[0].max(w[1]));
            if !self.edges.contains(&e) {
                self.edges.push(e);
            }
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn build(self) -> Result<Graph> {
        Graph::new(self.names.len(), self.edges)?.with_labels(self.names)
    }
}

/// Collects swaps per step and checks that each step is a matching.
#[derive(Debug)]
pub(crate) struct Schedule {
    steps: Vec<Vec<Edge>>,
}

impl Schedule {
    pub fn new(len: usize) -> Self {
        Schedule { steps: vec![Vec::new(); len] }
    }

    pub fn add(&mut self, step: usize, e: Edge) {
        if !self.steps[step].contains(&e) {
            self.steps[step].push(e);
        }
    }

    /// Lays a schedule for a path onto the given vertex sequence.
    pub fn add_along(&mut self, line: &[usize], seq: &ParallelSwapSequence) {
        for (s, m) in seq.steps.iter().enumerate() {
            for e in m.edges() {
                self.add(s, Edge::new(line[e.u], line[e.v]));
            }
        }
    }

    pub fn finish(self) -> Result<ParallelSwapSequence> {
        let steps = self.steps.into_iter().map(Matching::new).collect::<Result<Vec<_>>>()?;
        Ok(ParallelSwapSequence::from_matchings(steps))
    }
}

pub(crate) fn name(prefix: &str, idx: &[usize]) -> String {
    let parts: Vec<String> = idx.iter().map(usize::to_string).collect();
    format!("{prefix}_{}", parts.join(","))
}
