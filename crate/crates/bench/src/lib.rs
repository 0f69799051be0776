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

//! Seeded workloads shared by the criterion benches.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tokswap_core::{make_family, Configuration, Family, Graph};

pub const SEED: u64 = 0x7053_1a9e;

pub struct Workload {
    pub graph: Graph,
    pub configs: Vec<Configuration>,
}

impl Workload {
    /// `count` uniformly random placements on the given family.
    pub fn new(family: Family, count: usize) -> Self {
        let graph = make_family(family).expect("bench families are valid");
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ graph.n() as u64);
        let configs = (0..count).map(|_| random_config(&mut rng, graph.n())).collect();
        Workload { graph, configs }
    }
}

pub fn random_config(rng: &mut ChaCha8Rng, n: usize) -> Configuration {
    let mut t: Vec<usize> = (0..n).collect();
    t.shuffle(rng);
    Configuration::new(t).expect("permutation of 0..n")
}

/// Placements reachable in two parallel steps on a path: the product of the
/// odd and even matchings restricted by a coin flip per edge.
pub fn two_step_path(n: usize, count: usize) -> Workload {
    let graph = make_family(Family::Path { n }).expect("path");
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x2);
    let configs = (0..count)
        .map(|_| {
            let mut t: Vec<usize> = (0..n).collect();
            for start in [0, 1] {
                for i in (start..n.saturating_sub(1)).step_by(2) {
                    if rand::Rng::random_bool(&mut rng, 0.5) {
                        t.swap(i, i + 1);
                    }
                }
            }
            Configuration::new(t).expect("permutation")
        })
        .collect();
    Workload { graph, configs }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn workloads_are_deterministic() {
        let a = Workload::new(Family::Lollipop { m: 5, n: 6 }, 4);
        let b = Workload::new(Family::Lollipop { m: 5, n: 6 }, 4);
        assert_eq!(a.configs, b.configs);
        assert_eq!(a.graph.n(), 12);
    }

    #[test]
    fn two_step_path_is_two_step() {
        let w = two_step_path(9, 20);
        for f in &w.configs {
            assert!(tokswap_core::twostep::decide_rt2(&w.graph, f).unwrap().is_some() || f.is_identity());
        }
    }
}
