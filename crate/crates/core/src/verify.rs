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

//! Replay a solution against an instance and report the first problem.

use std::fmt;

use crate::config::{Arrangement, Coloring, Configuration};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::swap::{ParallelSwapSequence, SwapSequence};

/// A problem instance.
#[derive(Debug, Clone, PartialEq)]
pub enum Instance {
    /// Sequential token swapping.
    Ts { graph: Graph, config: Configuration },
    /// Routing via matchings.
    Rvm { graph: Graph, config: Configuration },
    /// Colored routing via matchings.
    ColoredRvm { graph: Graph, initial: Coloring, goal: Coloring },
}

impl Instance {
    pub fn graph(&self) -> &Graph {
        match self {
            Instance::Ts { graph, .. } | Instance::Rvm { graph, .. } | Instance::ColoredRvm { graph, .. } => graph,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Ts { .. } => "ts",
            Instance::Rvm { .. } => "rvm",
            Instance::ColoredRvm { .. } => "crvm",
        }
    }

    /// Checks sizes and color consistency.
    pub fn validate(&self) -> Result<()> {
        let n = self.graph().n();
        match self {
            Instance::Ts { config, .. } | Instance::Rvm { config, .. } => {
                if config.n() != n {
                    return Err(Error::InvalidInstance(format!(
                        "configuration has {} entries for {n} vertices",
                        config.n()
                    )));
                }
            }
            Instance::ColoredRvm { initial, goal, .. } => {
                if initial.n() != n || goal.n() != n {
                    return Err(Error::InvalidInstance("coloring length differs from vertex count".into()));
                }
                if !initial.is_consistent_with(goal) {
                    return Err(Error::InconsistentColorings);
                }
            }
        }
        Ok(())
    }
}

/// A candidate solution.
#[derive(Debug, Clone, PartialEq)]
pub enum Solution {
    Sequential(SwapSequence),
    Parallel(ParallelSwapSequence),
}

impl Solution {
    pub fn len(&self) -> usize {
        match self {
            Solution::Sequential(s) => s.len(),
            Solution::Parallel(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Why a solution was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NotAnEdge { step: usize, edge: Edge },
    FinalNotIdentity,
    FinalNotGoal,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotAnEdge { step, edge } => write!(f, "step {step}: {edge} is not an edge"),
            Violation::FinalNotIdentity => write!(f, "final configuration not identity"),
            Violation::FinalNotGoal => write!(f, "final coloring differs from goal"),
        }
    }
}

/// Outcome of [`verify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Ok { steps: usize },
    Violation(Violation),
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verdict::Ok { .. })
    }
}

/// Replays `solution` on `instance`.
///
/// A token swapping instance accepts a parallel solution only when every step
/// is a single edge. Errors are reserved for malformed input and kind
/// mismatches; illegal steps and wrong final states are reported as a
/// [`Verdict::Violation`].
pub fn verify(instance: &Instance, solution: &Solution) -> Result<Verdict> {
    instance.validate()?;
    let g = instance.graph();
    let steps: Vec<Vec<Edge>> = match (instance, solution) {
        (Instance::Ts { .. }, Solution::Sequential(s)) => s.steps.iter().map(|&e| vec![e]).collect(),
        (Instance::Ts { .. }, Solution::Parallel(p)) => {
            if let Some(i) = p.steps.iter().position(|s| s.len() > 1) {
                return Err(Error::KindMismatch(format!(
                    "step {i} of a token swapping solution swaps more than one edge"
                )));
            }
            p.steps.iter().map(|s| s.edges().to_vec()).collect()
        }
        (_, Solution::Parallel(p)) => p.steps.iter().map(|s| s.edges().to_vec()).collect(),
        (_, Solution::Sequential(_)) => {
            return Err(Error::KindMismatch(format!("{} instance needs a parallel solution", instance.kind())))
        }
    };
    match instance {
        Instance::Ts { config, .. } | Instance::Rvm { config, .. } => {
            Ok(replay(g, config.clone(), &steps, |c| c.is_identity(), Violation::FinalNotIdentity))
        }
        Instance::ColoredRvm { initial, goal, .. } => {
            Ok(replay(g, initial.clone(), &steps, |c| c == goal, Violation::FinalNotGoal))
        }
    }
}

fn replay<A: Arrangement>(
    g: &Graph,
    mut state: A,
    steps: &[Vec<Edge>],
    done: impl Fn(&A) -> bool,
    fail: Violation,
) -> Verdict {
    for (i, step) in steps.iter().enumerate() {
        for &edge in step {
            if !g.contains(edge) {
                return Verdict::Violation(Violation::NotAnEdge { step: i, edge });
            }
            state.exchange(edge.u, edge.v);
        }
    }
    if done(&state) {
        Verdict::Ok { steps: steps.len() }
    } else {
        Verdict::Violation(fail)
    }
}
