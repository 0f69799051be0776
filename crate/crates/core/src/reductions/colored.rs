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

//! Separable 3SAT to colored routing via matchings.

use super::rvm::{base_vertices, busy_branch, occurrences, u, u_, uk, v, v_, vji, witnesses};
use super::sepsat::SepSatInstance;
use super::{Builder, ReductionOutput, Schedule};
use crate::config::Coloring;
use crate::error::Result;
use crate::graph::Edge;
use crate::pathroute::endpoint_schedule;
use crate::swap::ParallelSwapSequence;
use crate::verify::Instance;

fn variable_paths(b: &mut Builder, f: &SepSatInstance) {
    for i in 1..=f.vars {
        b.path(&[u(i), uk(i, 1), uk(i, 2), u_(i)]);
        b.path(&[u(i), uk(i, 3), uk(i, 4), u_(i)]);
    }
}

fn finish(b: Builder, initial: Vec<u32>, goal: Vec<u32>, budget: usize) -> Result<ReductionOutput> {
    let graph = b.build()?;
    let expected = if initial == goal { 0 } else { budget };
    let instance = Instance::ColoredRvm { graph, initial: Coloring::new(initial)?, goal: Coloring::new(goal)? };
    instance.validate()?;
    Ok(ReductionOutput::new(instance, expected))
}

/// Two colors, budget 3. Clause paths are `(v_j, v_{j,i}, u_{i,k}, v'_j)`;
/// part-2 clauses carry their marked token in the opposite direction.
pub fn reduce_sepsat_2c3(f: &SepSatInstance) -> Result<ReductionOutput> {
    f.validate()?;
    let mut b = Builder::default();
    base_vertices(&mut b, f);
    variable_paths(&mut b, f);
    for (j, k, i) in occurrences(f) {
        b.path(&[v(j), vji(j, i), uk(i, k), v_(j)]);
    }
    let mut initial = vec![1; b.len()];
    let mut goal = vec![1; b.len()];
    for i in 1..=f.vars {
        initial[b.id(&u(i))] = 2;
        goal[b.id(&u_(i))] = 2;
    }
    for (j0, &k) in f.part.iter().enumerate() {
        let (from, to) = if k == 2 { (v_(j0 + 1), v(j0 + 1)) } else { (v(j0 + 1), v_(j0 + 1)) };
        initial[b.id(&from)] = 2;
        goal[b.id(&to)] = 2;
    }
    finish(b, initial, goal, 3)
}

/// Three-step schedule for [`reduce_sepsat_2c3`].
pub fn map_assignment_2c3(f: &SepSatInstance, assignment: &[bool]) -> Result<ParallelSwapSequence> {
    let wit = witnesses(f, assignment)?;
    let out = reduce_sepsat_2c3(f)?;
    let id = |s: String| out.vertex(&s);
    let moves = endpoint_schedule(4)?;
    let mut sched = Schedule::new(3);
    for i in 1..=f.vars {
        let (a, c) = busy_branch(assignment[i - 1]);
        sched.add_along(&[id(u(i))?, id(uk(i, a))?, id(uk(i, c))?, id(u_(i))?], &moves);
    }
    for (j0, &i) in wit.iter().enumerate() {
        let j = j0 + 1;
        let k = f.part[j0] as usize;
        sched.add_along(&[id(v(j))?, id(vji(j, i))?, id(uk(i, k))?, id(v_(j))?], &moves);
    }
    sched.finish()
}

/// Three colors, budget 2, on the unsubdivided graph.
pub fn reduce_sepsat_3c2(f: &SepSatInstance) -> Result<ReductionOutput> {
    f.validate()?;
    let mut b = Builder::default();
    base_vertices(&mut b, f);
    variable_paths(&mut b, f);
    for (j, k, i) in occurrences(f) {
        b.path(&[v(j), uk(i, k), v_(j)]);
    }
    let mut initial = vec![1; b.len()];
    let mut goal = vec![1; b.len()];
    for i in 1..=f.vars {
        for (name, fc, gc) in [(u(i), 2, 1), (u_(i), 1, 2), (uk(i, 2), 2, 2), (uk(i, 4), 2, 2)] {
            initial[b.id(&name)] = fc;
            goal[b.id(&name)] = gc;
        }
    }
    for (j0, &k) in f.part.iter().enumerate() {
        let j = j0 + 1;
        let other = if k == 2 { 2 } else { 1 };
        initial[b.id(&v(j))] = 3;
        initial[b.id(&v_(j))] = other;
        goal[b.id(&v(j))] = other;
        goal[b.id(&v_(j))] = 3;
    }
    finish(b, initial, goal, 2)
}

/// Two-step schedule for [`reduce_sepsat_3c2`].
pub fn map_assignment_3c2(f: &SepSatInstance, assignment: &[bool]) -> Result<ParallelSwapSequence> {
    let wit = witnesses(f, assignment)?;
    let out = reduce_sepsat_3c2(f)?;
    let id = |s: String| out.vertex(&s);
    let mut sched = Schedule::new(2);
    for i in 1..=f.vars {
        let (a, c) = busy_branch(assignment[i - 1]);
        sched.add(0, Edge::new(id(u(i))?, id(uk(i, a))?));
        sched.add(0, Edge::new(id(u_(i))?, id(uk(i, c))?));
        sched.add(1, Edge::new(id(uk(i, a))?, id(uk(i, c))?));
    }
    for (j0, &i) in wit.iter().enumerate() {
        let w = id(uk(i, f.part[j0] as usize))?;
        sched.add(0, Edge::new(id(v(j0 + 1))?, w));
        sched.add(1, Edge::new(id(v_(j0 + 1))?, w));
    }
    sched.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{rt_colored_at_most, OracleOptions};
    use crate::verify::{verify, Solution};

    fn one_variable() -> SepSatInstance {
        SepSatInstance::from_parts(1, [vec![vec![1]], vec![vec![1]], vec![vec![-1]]]).unwrap()
    }

    fn example() -> SepSatInstance {
        SepSatInstance::from_parts(3, [vec![vec![1, 2], vec![3]], vec![vec![1], vec![2, 3]], vec![vec![-1, -2, -3]]])
            .unwrap()
    }

    fn marked(out: &ReductionOutput) -> (Vec<String>, Vec<String>) {
        let Instance::ColoredRvm { graph, initial, goal } = &out.instance else { unreachable!() };
        let pick = |c: &Coloring, want: u32| {
            let mut v: Vec<String> = (0..graph.n()).filter(|&x| c.color(x) == want).map(|x| graph.label(x)).collect();
            v.sort();
            v
        };
        (pick(initial, 2), pick(goal, 2))
    }

    #[test]
    fn two_color_gadget_shape() {
        let out = reduce_sepsat_2c3(&one_variable()).unwrap();
        let g = out.graph();
        assert_eq!(g.n(), 15);
        assert_eq!(g.edge_count(), 15);
        let (f, gl) = marked(&out);
        assert_eq!(f, ["u_1", "v'_2", "v_1", "v_3"]);
        assert_eq!(gl, ["u'_1", "v'_1", "v'_3", "v_2"]);
        assert!(g.has_edge(out.vertex("v_2,1").unwrap(), out.vertex("u_1,2").unwrap()));
        assert!(out.certificate.bipartite);
    }

    #[test]
    fn two_color_mapping() {
        let f = example();
        let out = reduce_sepsat_2c3(&f).unwrap();
        assert_eq!(out.certificate.max_degree, 4);
        let seq = map_assignment_2c3(&f, &[true, false, true]).unwrap();
        assert_eq!(seq.len(), 3);
        assert!(verify(&out.instance, &Solution::Parallel(seq)).unwrap().is_ok());
    }

    #[test]
    fn three_color_table() {
        let out = reduce_sepsat_3c2(&one_variable()).unwrap();
        let Instance::ColoredRvm { initial, goal, .. } = &out.instance else { unreachable!() };
        let col = |c: &Coloring, s: &str| c.color(out.vertex(s).unwrap());
        let rows = [
            ("u_1", 2, 1),
            ("u'_1", 1, 2),
            ("u_1,1", 1, 1),
            ("u_1,2", 2, 2),
            ("u_1,3", 1, 1),
            ("u_1,4", 2, 2),
            ("v_1", 3, 1),
            ("v'_1", 1, 3),
            ("v_2", 3, 2),
            ("v'_2", 2, 3),
            ("v_3", 3, 1),
            ("v'_3", 1, 3),
        ];
        for (s, fc, gc) in rows {
            assert_eq!((col(initial, s), col(goal, s)), (fc, gc), "{s}");
        }
    }

    #[test]
    fn three_color_mapping_and_unsat() {
        let f = example();
        let out = reduce_sepsat_3c2(&f).unwrap();
        let seq = map_assignment_3c2(&f, &[true, false, true]).unwrap();
        assert!(verify(&out.instance, &Solution::Parallel(seq)).unwrap().is_ok());
        let bad = reduce_sepsat_3c2(&one_variable()).unwrap();
        let Instance::ColoredRvm { graph, initial, goal } = &bad.instance else { unreachable!() };
        assert_eq!(rt_colored_at_most(graph, initial, goal, 2, &OracleOptions::default()).unwrap(), None);
    }
}
