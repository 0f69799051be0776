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

//! Exact token swapping on lollipop graphs.
//!
//! A lollipop `L(m,n)` is a clique on the signed vertices `-m..=0` with a
//! path `0-1-...-n` attached at `0`. The potential `phi = pi + nu` equals the
//! token swapping distance and every swap changes it by exactly one.

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::shape::{Kind, Shape};
use crate::swap::SwapSequence;

/// The pair of token sequences the potentials recurse on.
///
/// `clique[k - 1]` is the token on vertex `-k`; `path[j]` is the token on
/// vertex `j`. Tokens are signed labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudoConfiguration {
    pub clique: Vec<i64>,
    pub path: Vec<i64>,
}

impl PseudoConfiguration {
    /// Checks that entries are distinct and every label `-m..=-1` occurs.
    pub fn new(clique: Vec<i64>, path: Vec<i64>) -> Result<Self> {
        let m = clique.len() as i64;
        let mut all: Vec<i64> = clique.iter().chain(&path).copied().collect();
        all.sort_unstable();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::MalformedPseudoConfiguration("repeated token".into()));
        }
        if let Some(k) = (1..=m).find(|k| all.binary_search(&-k).is_err()) {
            return Err(Error::MalformedPseudoConfiguration(format!("token -{k} missing")));
        }
        Ok(PseudoConfiguration { clique, path })
    }

    pub(crate) fn of(shape: &Shape, c: &[usize]) -> Self {
        let m = shape.m as i64;
        let signed = |i: usize| c[i] as i64 - m;
        PseudoConfiguration {
            clique: (1..=shape.m).map(|k| signed(shape.m - k)).collect(),
            path: (shape.m..c.len()).map(signed).collect(),
        }
    }

    pub fn m(&self) -> usize {
        self.clique.len()
    }
}

/// Replaces every occurrence of `b` with `a`.
pub(crate) fn substitute(seq: &mut [i64], a: i64, b: i64) {
    for x in seq.iter_mut().filter(|x| **x == b) {
        *x = a;
    }
}

/// Cycle count of `v -> clique[-v]` on `-1..=-m`.
fn clique_cycles(clique: &[i64]) -> Result<usize> {
    let m = clique.len();
    let mut seen = vec![false; m];
    let mut cycles = 0;
    for s in 0..m {
        if seen[s] {
            continue;
        }
        cycles += 1;
        let mut k = s;
        while !seen[k] {
            seen[k] = true;
            let t = clique[k];
            if !(-(m as i64)..0).contains(&t) {
                return Err(Error::MalformedPseudoConfiguration(format!("token {t} left in the clique")));
            }
            k = (-t - 1) as usize;
        }
    }
    Ok(cycles)
}

/// The clique part of the potential.
pub fn nu(pc: &PseudoConfiguration) -> Result<usize> {
    let mut clique = pc.clique.clone();
    for &head in &pc.path {
        let c = clique.iter().copied().max().unwrap_or(i64::MIN);
        if c > head {
            substitute(&mut clique, head, c);
        }
    }
    Ok(pc.m() - clique_cycles(&clique)?)
}

/// Sum over path positions `j` of `j + 1` when token `j` sits on a negative
/// vertex and `min(j + 1, inv)` otherwise, where `inv` counts the smaller
/// tokens to its right.
pub(crate) fn pi_canonical(m: usize, c: &[usize]) -> usize {
    let mut pos = vec![0; c.len()];
    for (v, &t) in c.iter().enumerate() {
        pos[t] = v;
    }
    (0..c.len() - m)
        .map(|j| {
            let t = j + m;
            if pos[t] < m {
                j + 1
            } else {
                let inv = (0..t).filter(|&i| pos[i] > pos[t]).count();
                inv.min(j + 1)
            }
        })
        .sum()
}

fn shape(g: &Graph, f: &Configuration) -> Result<Shape> {
    if f.n() != g.n() {
        return Err(Error::InvalidInstance("configuration size differs from graph".into()));
    }
    Shape::recognize(g, Kind::Lollipop)
}

pub fn pi(g: &Graph, f: &Configuration) -> Result<usize> {
    let s = shape(g, f)?;
    Ok(pi_canonical(s.m, &s.canonical(f)))
}

/// The pseudo configuration of `f` under the lollipop labelling of `g`.
pub fn pseudo_configuration(g: &Graph, f: &Configuration) -> Result<PseudoConfiguration> {
    let s = shape(g, f)?;
    Ok(PseudoConfiguration::of(&s, &s.canonical(f)))
}

pub(crate) fn phi_canonical(shape: &Shape, c: &[usize]) -> usize {
    let nu = nu(&PseudoConfiguration::of(shape, c)).expect("configurations are valid");
    pi_canonical(shape.m, c) + nu
}

/// `pi + nu`; equals the token swapping distance.
pub fn phi(g: &Graph, f: &Configuration) -> Result<usize> {
    let s = shape(g, f)?;
    Ok(phi_canonical(&s, &s.canonical(f)))
}

/// Places tokens `n, ..., 0, -1, ..., -m` in turn, each along a shortest route.
pub fn solve_lollipop(g: &Graph, f: &Configuration) -> Result<SwapSequence> {
    let s = shape(g, f)?;
    g.require_connected()?;
    let mut c = s.canonical(f);
    let mut pos = vec![0; c.len()];
    for (v, &t) in c.iter().enumerate() {
        pos[t] = v;
    }
    let mut seq = SwapSequence::default();
    let mut swap = |c: &mut Vec<usize>, pos: &mut Vec<usize>, a: usize, b: usize| {
        c.swap(a, b);
        pos[c[a]] = a;
        pos[c[b]] = b;
        seq.push(s.edge(a, b));
    };
    let zero = s.m;
    for k in (0..c.len()).rev() {
        let mut p = pos[k];
        if p == k {
            continue;
        }
        if p < zero && k >= zero {
            swap(&mut c, &mut pos, p, zero);
            p = zero;
        }
        if k < zero {
            swap(&mut c, &mut pos, p, k);
            continue;
        }
        while p < k {
            swap(&mut c, &mut pos, p, p + 1);
            p += 1;
        }
    }
    Ok(seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_family, Family};
    use crate::oracle::ts_oracle;

    fn l(m: usize, n: usize) -> Graph {
        make_family(Family::Lollipop { m, n }).unwrap()
    }

    /// Configuration on `L(m, n)` exchanging the tokens of two signed vertices.
    fn swapped(m: usize, n: usize, a: i64, b: i64) -> Configuration {
        let ix = |s: i64| (s + m as i64) as usize;
        Configuration::transpositions(m + n + 1, &[(ix(a), ix(b))]).unwrap()
    }

    #[test]
    fn identity() {
        let g = l(3, 2);
        let id = Configuration::identity(6);
        assert_eq!(pi(&g, &id).unwrap(), 0);
        assert_eq!(phi(&g, &id).unwrap(), 0);
        assert!(solve_lollipop(&g, &id).unwrap().is_empty());
    }

    #[test]
    fn path_token_in_clique() {
        let g = l(2, 1);
        let f = swapped(2, 1, -1, 1);
        assert_eq!(pi(&g, &f).unwrap(), 3);
        assert_eq!(phi(&g, &f).unwrap(), 3);
        let seq = solve_lollipop(&g, &f).unwrap();
        assert_eq!(seq.len(), 3);
        assert!(seq.apply(&g, &f).unwrap().is_identity());
        assert_eq!(ts_oracle(&g, &f).unwrap().0, 3);
    }

    #[test]
    fn clique_transposition() {
        let g = l(2, 1);
        let f = swapped(2, 1, -1, -2);
        assert_eq!(pi(&g, &f).unwrap(), 0);
        assert_eq!(phi(&g, &f).unwrap(), 1);
        assert_eq!(solve_lollipop(&g, &f).unwrap().len(), 1);
    }

    #[test]
    fn nu_examples() {
        let pc = PseudoConfiguration::new(vec![-1, -2], vec![]).unwrap();
        assert_eq!(nu(&pc).unwrap(), 0);
        let pc = PseudoConfiguration::new(vec![-2, -1], vec![0, 1]).unwrap();
        assert_eq!(nu(&pc).unwrap(), 1);
        let pc = PseudoConfiguration::new(vec![1, -2], vec![0, -1]).unwrap();
        assert_eq!(nu(&pc).unwrap(), 0);
        assert!(PseudoConfiguration::new(vec![1, 1], vec![]).is_err());
        assert!(PseudoConfiguration::new(vec![1, 0], vec![2]).is_err());
    }

    #[test]
    fn pseudo_configuration_layout() {
        let g = l(2, 1);
        let f = swapped(2, 1, -1, 1);
        let pc = pseudo_configuration(&g, &f).unwrap();
        assert_eq!(pc.clique, vec![1, -2]);
        assert_eq!(pc.path, vec![0, -1]);
    }

    #[test]
    fn rejects_other_graphs() {
        let g = make_family(Family::Cycle { n: 5 }).unwrap();
        assert_eq!(phi(&g, &Configuration::identity(5)), Err(Error::WrongFamily("lollipop")));
    }

    #[test]
    fn complete_graph_is_a_lollipop() {
        let g = make_family(Family::Complete { n: 5 }).unwrap();
        let f = Configuration::new(vec![1, 2, 0, 4, 3]).unwrap();
        // Two cycles on five vertices: 5 - 2 = 3 swaps.
        assert_eq!(phi(&g, &f).unwrap(), 3);
        assert_eq!(solve_lollipop(&g, &f).unwrap().len(), 3);
    }
}
