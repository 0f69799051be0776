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

//! Token placements and colorings.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A placement of tokens `0..n` on vertices `0..n`: `token_on[v]` is the
/// token sitting on vertex `v`. Token `t` belongs on vertex `t`.
pub struct Configuration {
    token_on: Vec<usize>,
    inverse: OnceLock<Vec<usize>>,
}

impl Configuration {
    pub fn new(token_on: Vec<usize>) -> Result<Self> {
        let n = token_on.len();
        let mut seen = vec![false; n];
        for &t in &token_on {
            if t >= n {
                return Err(Error::InvalidConfiguration(format!("token {t} out of range for {n} vertices")));
            }
            if std::mem::replace(&mut seen[t], true) {
                return Err(Error::InvalidConfiguration(format!("token {t} appears twice")));
            }
        }
        Ok(Self::from_vec_unchecked(token_on))
    }

    pub(crate) fn from_vec_unchecked(token_on: Vec<usize>) -> Self {
        Configuration { token_on, inverse: OnceLock::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_vec_unchecked((0..n).collect())
    }

    /// The configuration exchanging the tokens of each listed vertex pair.
    pub fn transpositions(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut t: Vec<usize> = (0..n).collect();
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::InvalidConfiguration(format!("vertex out of range in ({a},{b})")));
            }
            t.swap(a, b);
        }
        Ok(Self::from_vec_unchecked(t))
    }

    pub fn n(&self) -> usize {
        self.token_on.len()
    }

    /// The token on vertex `v`.
    pub fn token(&self, v: usize) -> usize {
        self.token_on[v]
    }

    pub fn tokens(&self) -> &[usize] {
        &self.token_on
    }

    pub fn into_tokens(self) -> Vec<usize> {
        self.token_on
    }

    /// Vertex-of-token map, computed once.
    pub fn inverse(&self) -> &[usize] {
        self.inverse.get_or_init(|| {
            let mut inv = vec![0; self.token_on.len()];
            for (v, &t) in self.token_on.iter().enumerate() {
                inv[t] = v;
            }
            inv
        })
    }

    /// The vertex currently holding `token`.
    pub fn vertex_of(&self, token: usize) -> Result<usize> {
        self.inverse().get(token).copied().ok_or(Error::UnknownToken(token))
    }

    pub fn is_identity(&self) -> bool {
        self.token_on.iter().enumerate().all(|(v, &t)| v == t)
    }

    /// Cycles of `f`, each listed as `u, f(u), f(f(u)), ...` from its
    /// smallest element. Fixed points are singleton cycles.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.token_on[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Exchanges the tokens on `a` and `b` in place, dropping the cached inverse.
    pub(crate) fn swap_in_place(&mut self, a: usize, b: usize) {
        self.token_on.swap(a, b);
        self.inverse = OnceLock::new();
    }
}

impl Clone for Configuration {
    fn clone(&self) -> Self {
        Self::from_vec_unchecked(self.token_on.clone())
    }
}

impl PartialEq for Configuration {
    fn eq(&self, other: &Self) -> bool {
        self.token_on == other.token_on
    }
}

impl Eq for Configuration {}

impl Hash for Configuration {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.token_on.hash(state);
    }
}

impl fmt::Debug for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Configuration{:?}", self.token_on)
    }
}

impl Serialize for Configuration {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.token_on.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Configuration {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Configuration::new(v).map_err(serde::de::Error::custom)
    }
}

/// A vertex coloring with colors `1..=c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Coloring {
    color_on: Vec<u32>,
}

impl Coloring {
    pub fn new(color_on: Vec<u32>) -> Result<Self> {
        if let Some(v) = color_on.iter().position(|&c| c == 0) {
            return Err(Error::InvalidColoring(format!("vertex {v} has color 0")));
        }
        Ok(Coloring { color_on })
    }

    pub fn n(&self) -> usize {
        self.color_on.len()
    }

    pub fn color(&self, v: usize) -> u32 {
        self.color_on[v]
    }

    pub fn colors(&self) -> &[u32] {
        &self.color_on
    }

    /// Largest color in use.
    pub fn num_colors(&self) -> u32 {
        self.color_on.iter().copied().max().unwrap_or(0)
    }

    /// Equal color multisets.
    pub fn is_consistent_with(&self, other: &Coloring) -> bool {
        let mut a = self.color_on.clone();
        let mut b = other.color_on.clone();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }

    pub(crate) fn swap_in_place(&mut self, a: usize, b: usize) {
        self.color_on.swap(a, b);
    }
}

impl TryFrom<Vec<u32>> for Coloring {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Coloring::new(v)
    }
}

impl From<Coloring> for Vec<u32> {
    fn from(c: Coloring) -> Self {
        c.color_on
    }
}

/// Anything whose vertex contents can be exchanged by swaps.
pub trait Arrangement: Clone + PartialEq {
    fn len(&self) -> usize;
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
    fn exchange(&mut self, a: usize, b: usize);
}

impl Arrangement for Configuration {
    fn len(&self) -> usize {
        self.n()
    }
    fn exchange(&mut self, a: usize, b: usize) {
        self.swap_in_place(a, b);
    }
}

impl Arrangement for Coloring {
    fn len(&self) -> usize {
        self.n()
    }
    fn exchange(&mut self, a: usize, b: usize) {
        self.swap_in_place(a, b);
    }
}
