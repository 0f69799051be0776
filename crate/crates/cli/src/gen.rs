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

//! Seeded random instances.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use tokswap_core::{Configuration, Family, Graph, Result};

pub fn shuffled(rng: &mut ChaCha8Rng, n: usize) -> Configuration {
    let mut t: Vec<usize> = (0..n).collect();
    t.shuffle(rng);
    Configuration::new(t).expect("shuffle of 0..n")
}

/// A connected graph: a random spanning tree plus each other pair with probability `density`.
pub fn random_connected(rng: &mut ChaCha8Rng, n: usize, density: f64) -> Result<Graph> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 1..n {
        let parent = order[rng.random_range(0..i)];
        edges.push((parent.min(order[i]), parent.max(order[i])));
    }
    for a in 0..n {
        for b in a + 1..n {
            if !edges.contains(&(a, b)) && rng.random_bool(density.clamp(0.0, 1.0)) {
                edges.push((a, b));
            }
        }
    }
    edges.sort_unstable();
    Graph::new(n, edges)
}

/// Splits a vertex budget between clique (or star) and path.
pub fn family_of_size(lolli: bool, size: usize) -> Family {
    let m = (size / 2).max(1);
    let n = size.saturating_sub(m + 1);
    if lolli {
        Family::Lollipop { m, n }
    } else {
        Family::Starpath { m, n }
    }
}
