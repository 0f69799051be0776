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

//! Exact token swapping on star-path graphs.
//!
//! A star-path `Q(m,n)` has leaves `-m..=-1` around the center `0` and a
//! path `0-1-...-n`. The potential `psi = pi + mu + delta` equals the token
//! swapping distance.

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lollipop::{pi_canonical, substitute, PseudoConfiguration};
use crate::shape::{Kind, Shape};
use crate::swap::SwapSequence;

fn shape(g: &Graph, f: &Configuration) -> Result<Shape> {
    if f.n() != g.n() {
        return Err(Error::InvalidInstance("configuration size differs from graph".into()));
    }
    Shape::recognize(g, Kind::Starpath)
}

pub(crate) fn mu_canonical(m: usize, c: &[usize]) -> usize {
    let misplaced: Vec<bool> = (0..c.len()).map(|t| t < m && c[t] != t).collect();
    let misplaced_tokens = c.iter().enumerate().filter(|&(v, &t)| t < m && t != v).count();
    let mut seen = vec![false; c.len()];
    let mut closed = 0;
    for s in 0..m {
        if seen[s] || c[s] == s {
            continue;
        }
        let mut inside = true;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            inside &= x < m && c[x] < m && misplaced[x];
            x = c[x];
        }
        if inside {
            closed += 1;
        }
    }
    misplaced_tokens + closed
}

/// Misplaced negative tokens plus the cycles made only of them.
pub fn mu(g: &Graph, f: &Configuration) -> Result<usize> {
    let s = shape(g, f)?;
    Ok(mu_canonical(s.m, &s.canonical(f)))
}

/// The discount term. Always at most zero.
pub fn delta(pc: &PseudoConfiguration) -> Result<i64> {
    let mut clique = pc.clique.clone();
    let mut path: std::collections::VecDeque<i64> = pc.path.iter().copied().collect();
    let mut acc = 0;
    loop {
        let c = clique.iter().copied().max().unwrap_or(-1);
        if c < 0 {
            return Ok(acc);
        }
        let Some(&head) = path.front() else {
            return Err(Error::MalformedPseudoConfiguration("path exhausted with a token left in the clique".into()));
        };
        if head > c {
            path.pop_front();
        } else if head >= 0 {
            substitute(&mut clique, head, c);
            path.pop_front();
        } else {
            let slot = (-head - 1) as usize;
            let x = *clique
                .get(slot)
                .ok_or_else(|| Error::MalformedPseudoConfiguration(format!("token {head} has no vertex")))?;
            if x == c {
                acc -= 1;
            }
            clique[slot] = head;
            path[0] = x;
        }
    }
}

/// Runs the center-clearing loop: while `a` is negative, drop it on its own
/// leaf and pick up what was there.
pub fn gamma(clique: &[i64], a: i64) -> Result<(Vec<i64>, i64)> {
    let mut clique = clique.to_vec();
    let mut a = a;
    for _ in 0..=clique.len() {
        if a >= 0 {
            return Ok((clique, a));
        }
        let slot = (-a - 1) as usize;
        let next =
            *clique.get(slot).ok_or_else(|| Error::MalformedPseudoConfiguration(format!("token {a} has no vertex")))?;
        clique[slot] = a;
        a = next;
    }
    Err(Error::MalformedPseudoConfiguration("center loop does not terminate".into()))
}

pub(crate) fn psi_canonical(shape: &Shape, c: &[usize]) -> i64 {
    let pc = PseudoConfiguration::of(shape, c);
    let d = delta(&pc).expect("configurations are valid");
    (pi_canonical(shape.m, c) + mu_canonical(shape.m, c)) as i64 + d
}

/// `pi + mu + delta`; equals the token swapping distance.
pub fn psi(g: &Graph, f: &Configuration) -> Result<usize> {
    let s = shape(g, f)?;
    Ok(psi_canonical(&s, &s.canonical(f)) as usize)
}

/// Places tokens `n, ..., -m` in turn, first sending any negative token on
/// the center back to its leaf.
pub fn solve_starpath(g: &Graph, f: &Configuration) -> Result<SwapSequence> {
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
        while c[zero] < zero {
            let t = c[zero];
            swap(&mut c, &mut pos, zero, t);
        }
        let mut p = pos[k];
        if p == k {
            continue;
        }
        if p < zero {
            swap(&mut c, &mut pos, p, zero);
            p = zero;
        }
        if k < zero {
            swap(&mut c, &mut pos, zero, k);
            continue;
        }
        while p < k {
            swap(&mut c, &mut pos, p, p + 1);
            p += 1;
        }
    }
    Ok(seq)
}
