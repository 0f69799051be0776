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

//! Token swapping and permutation routing via matchings.
//!
//! Exact solvers for lollipop and star-path graphs, an approximation for
//! routing on paths, two-step decision procedures, hardness gadgets with
//! forward solution maps, and exhaustive oracles for small instances.

pub mod config;
pub mod error;
pub mod graph;
pub mod lollipop;
pub mod oracle;
pub mod pathroute;
pub mod reductions;
pub mod sat;
mod shape;
pub mod starpath;
pub mod swap;
pub mod twostep;
pub mod verify;

pub use config::{Arrangement, Coloring, Configuration};
pub use error::{Error, Result};
pub use graph::{make_family, Edge, Family, Graph};
pub use swap::{apply_parallel_swap, apply_swap, move_count, Matching, ParallelSwapSequence, SwapSequence};
pub use verify::{verify, Instance, Solution, Verdict, Violation};
