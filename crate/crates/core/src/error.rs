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

use thiserror::Error;

use crate::graph::Edge;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("{0} is not an edge")]
    NotAnEdge(Edge),
    #[error("not a matching: {0} and {1} share a vertex")]
    NotAMatching(Edge, Edge),
    #[error("step {step}: not a matching: {first} and {second} share a vertex")]
    StepNotAMatching { step: usize, first: Edge, second: Edge },
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error("invalid coloring: {0}")]
    InvalidColoring(String),
    #[error("colorings are not consistent (color multisets differ)")]
    InconsistentColorings,
    #[error("unknown token {0}")]
    UnknownToken(usize),
    #[error("graph is disconnected; components: {0:?}")]
    Disconnected(Vec<Vec<usize>>),
    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),
    #[error("input is not a {0} graph")]
    WrongFamily(&'static str),
    #[error("malformed pseudo configuration: {0}")]
    MalformedPseudoConfiguration(String),
    #[error("search budget exceeded after {explored} states (cap {cap})")]
    Budget { explored: usize, cap: usize },
    #[error("goal is unreachable from the initial placement")]
    Unreachable,
    #[error("instance and solution kinds do not match: {0}")]
    KindMismatch(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("assignment does not satisfy clause {clause}")]
    Unsatisfied { clause: usize },
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}
