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

//! On-disk formats for instances, solutions and reduction metadata.

use serde::{Deserialize, Serialize};
use tokswap_core::reductions::{SepSatInstance, SepSatReduction, ThreeDMInstance};
use tokswap_core::{
    Coloring, Configuration, Edge, Error, Graph, Instance, ParallelSwapSequence, Solution, SwapSequence,
};

/// Instance file. Exactly one of `tokens` or the color pair is present,
/// matching `kind`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub kind: String,
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tokens: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colors: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub goal_colors: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl InstanceFile {
    pub fn from_instance(inst: &Instance) -> Self {
        let g = inst.graph();
        let mut file = InstanceFile {
            kind: inst.kind().to_string(),
            n: g.n(),
            edges: g.edges().iter().map(|e| [e.u, e.v]).collect(),
            tokens: None,
            colors: None,
            goal_colors: None,
            labels: g.labels().map(<[String]>::to_vec),
            budget: None,
            seed: None,
        };
        match inst {
            Instance::Ts { config, .. } | Instance::Rvm { config, .. } => file.tokens = Some(config.tokens().to_vec()),
            Instance::ColoredRvm { initial, goal, .. } => {
                file.colors = Some(initial.colors().to_vec());
                file.goal_colors = Some(goal.colors().to_vec());
            }
        }
        file
    }

    pub fn to_instance(&self) -> Result<Instance, Error> {
        let mut graph = Graph::new(self.n, self.edges.iter().map(|e| (e[0], e[1])))?;
        if let Some(labels) = &self.labels {
            graph = graph.with_labels(labels.clone())?;
        }
        let missing = |what: &str| Error::InvalidInstance(format!("{} instance needs `{what}`", self.kind));
        let inst = match self.kind.as_str() {
            "ts" | "rvm" => {
                if self.colors.is_some() || self.goal_colors.is_some() {
                    return Err(Error::InvalidInstance(format!("{} instance cannot carry colors", self.kind)));
                }
                let config = Configuration::new(self.tokens.clone().ok_or_else(|| missing("tokens"))?)?;
                if self.kind == "ts" {
                    Instance::Ts { graph, config }
                } else {
                    Instance::Rvm { graph, config }
                }
            }
            "crvm" => {
                if self.tokens.is_some() {
                    return Err(Error::InvalidInstance("crvm instance cannot carry tokens".into()));
                }
                let initial = Coloring::new(self.colors.clone().ok_or_else(|| missing("colors"))?)?;
                let goal = Coloring::new(self.goal_colors.clone().ok_or_else(|| missing("goal_colors"))?)?;
                Instance::ColoredRvm { graph, initial, goal }
            }
            other => return Err(Error::InvalidInstance(format!("unknown kind `{other}`"))),
        };
        inst.validate()?;
        Ok(inst)
    }
}

/// Solution file: a list of steps, each a list of swapped edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionFile {
    pub steps: Vec<Vec<[usize; 2]>>,
}

impl SolutionFile {
    pub fn sequential(seq: &SwapSequence) -> Self {
        SolutionFile { steps: seq.steps.iter().map(|e| vec![[e.u, e.v]]).collect() }
    }

    pub fn parallel(seq: &ParallelSwapSequence) -> Self {
        SolutionFile { steps: seq.steps.iter().map(|m| m.edges().iter().map(|e| [e.u, e.v]).collect()).collect() }
    }

    pub fn from_solution(sol: &Solution) -> Self {
        match sol {
            Solution::Sequential(s) => Self::sequential(s),
            Solution::Parallel(p) => Self::parallel(p),
        }
    }

    /// Interprets the steps for an instance of the given kind.
    pub fn to_solution(&self, kind: &str) -> Result<Solution, Error> {
        let edge = |e: &[usize; 2]| {
            if e[0] == e[1] {
                Err(Error::InvalidInstance(format!("self-loop [{}, {}] in solution", e[0], e[1])))
            } else {
                Ok(Edge::new(e[0], e[1]))
            }
        };
        if kind == "ts" {
            let steps = self
                .steps
                .iter()
                .enumerate()
                .map(|(i, s)| match s.as_slice() {
                    [e] => edge(e),
                    _ => Err(Error::KindMismatch(format!("ts step {} must swap exactly one edge", i + 1))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(Solution::Sequential(SwapSequence::new(steps)));
        }
        let steps = self
            .steps
            .iter()
            .map(|s| s.iter().map(edge).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Solution::Parallel(ParallelSwapSequence::new(steps)?))
    }
}

/// Sidecar written by `reduce --emit-map`, consumed by `map-solution`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReductionMeta {
    pub from: String,
    pub to: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub three_dm: Option<ThreeDMInstance>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sepsat: Option<SepSatInstance>,
    /// Present when the source was a general CNF.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub from_cnf: Option<SepSatReduction>,
}

/// Canonical JSON: one top-level field per line in declared order, each
/// value written compactly, trailing newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("serializable value");
    let serde_json::Value::Object(map) = value else {
        return format!("{value}\n");
    };
    let fields: Vec<String> =
        map.iter().map(|(k, v)| format!("  {}: {v}", serde_json::Value::from(k.as_str()))).collect();
    if fields.is_empty() {
        "{}\n".to_string()
    } else {
        format!("{{\n{}\n}}\n", fields.join(",\n"))
    }
}
