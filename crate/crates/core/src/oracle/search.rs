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

//! Breadth-first search over encoded states whose moves are involutions.

use std::collections::HashMap;

use rayon::prelude::*;

use super::rank::Codec;
use super::OracleOptions;
use crate::error::{Error, Result};

/// A move exchanges the contents of each listed vertex pair.
pub(crate) type Move = Vec<(u8, u8)>;

pub(crate) struct Space<'a> {
    pub codec: Codec,
    pub moves: &'a [Move],
}

#[derive(Clone, Copy)]
struct Node {
    depth: u32,
    parent: u64,
    mv: u32,
}

impl Space<'_> {
    fn successors(&self, code: u64) -> Vec<(u64, u32)> {
        let n = self.codec.len();
        let mut state = vec![0u8; n];
        self.codec.decode(code, &mut state);
        let mut out = Vec::with_capacity(self.moves.len());
        for (i, mv) in self.moves.iter().enumerate() {
            for &(a, b) in mv {
                state.swap(a as usize, b as usize);
            }
            let next = self.codec.encode(&state);
            for &(a, b) in mv {
                state.swap(a as usize, b as usize);
            }
            if next != code {
                out.push((next, i as u32));
            }
        }
        out
    }

    fn expand(&self, frontier: &[u64], parallel: bool) -> Vec<Vec<(u64, u32)>> {
        if parallel {
            frontier.par_iter().map(|&c| self.successors(c)).collect()
        } else {
            frontier.iter().map(|&c| self.successors(c)).collect()
        }
    }

    /// Shortest move sequence from `start` to `goal`.
    ///
    /// Returns `Ok(None)` when the distance exceeds `opts.max_depth`.
    pub fn bidirectional(&self, start: u64, goal: u64, opts: &OracleOptions) -> Result<Option<Vec<u32>>> {
        if start == goal {
            return Ok(Some(Vec::new()));
        }
        let limit = opts.max_depth.unwrap_or(usize::MAX);
        let root = |c| (c, Node { depth: 0, parent: c, mv: u32::MAX });
        let mut sides = [HashMap::from([root(start)]), HashMap::from([root(goal)])];
        let mut fronts = [vec![start], vec![goal]];
        let mut depths = [0usize; 2];
        loop {
            if depths[0] + depths[1] >= limit {
                return Ok(None);
            }
            let side = usize::from(fronts[1].len() < fronts[0].len());
            let (own, other) = if side == 0 {
                let (a, b) = sides.split_at_mut(1);
                (&mut a[0], &b[0])
            } else {
                let (a, b) = sides.split_at_mut(1);
                (&mut b[0], &a[0])
            };
            let d = depths[side] as u32 + 1;
            let succ = self.expand(&fronts[side], opts.parallel);
            let mut next = Vec::new();
            let mut best: Option<(u32, u64)> = None;
            for (&from, list) in fronts[side].iter().zip(&succ) {
                for &(y, mv) in list {
                    if own.contains_key(&y) {
                        continue;
                    }
                    own.insert(y, Node { depth: d, parent: from, mv });
                    next.push(y);
                    if let Some(o) = other.get(&y) {
                        let total = d + o.depth;
                        if best.is_none_or(|(b, _)| total < b) {
                            best = Some((total, y));
                        }
                    }
                }
            }
            depths[side] += 1;
            if let Some((total, meet)) = best {
                if total as usize > limit {
                    return Ok(None);
                }
                return Ok(Some(join(&sides, meet)));
            }
            if next.is_empty() {
                return Err(Error::Unreachable);
            }
            fronts[side] = next;
            let explored = sides[0].len() + sides[1].len();
            if explored > opts.node_cap {
                return Err(Error::Budget { explored, cap: opts.node_cap });
            }
        }
    }

    /// Distance from `root` to every code, `u8::MAX` where unreachable.
    pub fn distance_table(&self, root: u64, opts: &OracleOptions) -> Result<Vec<u8>> {
        let size = self
            .codec
            .size()
            .filter(|&s| s as usize <= opts.node_cap)
            .ok_or(Error::Budget { explored: 0, cap: opts.node_cap })?;
        let mut dist = vec![u8::MAX; size as usize];
        dist[root as usize] = 0;
        let mut frontier = vec![root];
        let mut depth = 0u8;
        while !frontier.is_empty() {
            depth = depth.checked_add(1).ok_or_else(|| Error::Precondition("distance exceeds 254".into()))?;
            let succ = self.expand(&frontier, opts.parallel);
            let mut next = Vec::new();
            for list in succ {
                for (y, _) in list {
                    if dist[y as usize] == u8::MAX {
                        dist[y as usize] = depth;
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        Ok(dist)
    }
}

fn join(sides: &[HashMap<u64, Node>; 2], meet: u64) -> Vec<u32> {
    let mut head = Vec::new();
    let mut x = meet;
    while let Some(node) = sides[0].get(&x).filter(|n| n.depth > 0) {
        head.push(node.mv);
        x = node.parent;
    }
    head.reverse();
    let mut x = meet;
    while let Some(node) = sides[1].get(&x).filter(|n| n.depth > 0) {
        head.push(node.mv);
        x = node.parent;
    }
    head
}
