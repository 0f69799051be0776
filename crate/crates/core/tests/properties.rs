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

use proptest::prelude::*;
use proptest::sample::subsequence;

use tokswap_core::oracle::{rt_at_most, OracleOptions};
use tokswap_core::pathroute::{ap_solve, endpoint_schedule, endpoint_swap, is_odd_even, oe_transform, path};
use tokswap_core::reductions::{
    build_counting_gadget, count_perfect_matchings, count_structured_solutions, map_3dm_solution, map_assignment_2c3,
    map_assignment_3c2, map_assignment_rvm, map_assignment_rvm_deg3, reduce_3dm_ts, reduce_3sat_sepsat,
    reduce_sepsat_2c3, reduce_sepsat_3c2, reduce_sepsat_rvm, reduce_sepsat_rvm_deg3, ThreeDMInstance,
};
use tokswap_core::sat::Cnf;
use tokswap_core::twostep::decide_rt2;
use tokswap_core::{
    apply_swap, lollipop, make_family, starpath, verify, Configuration, Edge, Family, Graph, Instance, Matching,
    ParallelSwapSequence, Solution, SwapSequence,
};

fn permutation(n: usize) -> impl Strategy<Value = Configuration> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|t| Configuration::new(t).unwrap())
}

fn family_instance(lolli: bool) -> impl Strategy<Value = (Graph, Configuration)> {
    (1usize..=7, 0usize..=5).prop_flat_map(move |(m, n)| {
        let fam = if lolli { Family::Lollipop { m, n } } else { Family::Starpath { m, n } };
        let g = make_family(fam).unwrap();
        let size = g.n();
        (Just(g), permutation(size))
    })
}

fn ok(inst: &Instance, sol: Solution) -> bool {
    verify(inst, &sol).unwrap().is_ok()
}

fn cnf(max_vars: usize, max_clauses: usize) -> impl Strategy<Value = Cnf> {
    (1..=max_vars).prop_flat_map(move |vars| {
        let lit = (1..=vars as i32, any::<bool>()).prop_map(|(x, s)| if s { x } else { -x });
        prop::collection::vec(prop::collection::vec(lit, 1..=3), 0..=max_clauses)
            .prop_map(move |clauses| Cnf::new(vars, clauses).unwrap())
    })
}

fn small_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let len = pairs.len();
        subsequence(pairs, 0..=len).prop_map(move |e| Graph::new(n, e).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn lollipop_solver_meets_potential((g, f) in family_instance(true)) {
        let sol = lollipop::solve_lollipop(&g, &f).unwrap();
        prop_assert_eq!(sol.len(), lollipop::phi(&g, &f).unwrap());
        let inst = Instance::Ts { graph: g, config: f };
        prop_assert!(ok(&inst, Solution::Sequential(sol)));
    }

    #[test]
    fn starpath_solver_meets_potential((g, f) in family_instance(false)) {
        let sol = starpath::solve_starpath(&g, &f).unwrap();
        prop_assert_eq!(sol.len(), starpath::psi(&g, &f).unwrap());
        let inst = Instance::Ts { graph: g, config: f };
        prop_assert!(ok(&inst, Solution::Sequential(sol)));
    }

    #[test]
    fn potentials_move_by_one((g, f) in family_instance(true), pick in any::<prop::sample::Index>()) {
        let e = g.edges()[pick.index(g.edge_count())];
        let fe = apply_swap(&g, &f, e).unwrap();
        prop_assert_eq!(lollipop::phi(&g, &f).unwrap().abs_diff(lollipop::phi(&g, &fe).unwrap()), 1);
    }

    #[test]
    fn star_potential_moves_by_one((g, f) in family_instance(false), pick in any::<prop::sample::Index>()) {
        let e = g.edges()[pick.index(g.edge_count())];
        let fe = apply_swap(&g, &f, e).unwrap();
        prop_assert_eq!(starpath::psi(&g, &f).unwrap().abs_diff(starpath::psi(&g, &fe).unwrap()), 1);
    }

    #[test]
    fn swaps_undo_in_reverse((g, f) in family_instance(true), picks in prop::collection::vec(any::<prop::sample::Index>(), 0..20)) {
        let steps: Vec<Edge> = picks.iter().map(|i| g.edges()[i.index(g.edge_count())]).collect();
        let forward = SwapSequence::new(steps.clone()).apply(&g, &f).unwrap();
        let back = SwapSequence::new(steps.into_iter().rev().collect()).apply(&g, &forward).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn path_approximation_is_odd_even(f in (2usize..=14).prop_flat_map(permutation)) {
        let g = path(f.n()).unwrap();
        let sol = ap_solve(&g, &f).unwrap();
        prop_assert!(is_odd_even(&g, &sol).unwrap());
        prop_assert!(sol.len() <= f.n() + 1);
        let inst = Instance::Rvm { graph: g, config: f };
        prop_assert!(ok(&inst, Solution::Parallel(sol)));
    }

    #[test]
    fn oe_transform_adds_one_step(n in 2usize..=10, raw in prop::collection::vec(prop::collection::vec(any::<bool>(), 9), 0..8)) {
        let g = path(n).unwrap();
        // Random matchings on the path, with no edge repeated in consecutive steps.
        let mut steps: Vec<Vec<Edge>> = Vec::new();
        for bits in raw {
            let prev = steps.last().cloned().unwrap_or_default();
            let mut step = Vec::new();
            let mut last_used = None;
            for (p, &bit) in bits.iter().enumerate().take(n - 1) {
                let e = Edge::new(p, p + 1);
                if bit && last_used != Some(p) && !prev.contains(&e) {
                    step.push(e);
                    last_used = Some(p + 1);
                }
            }
            steps.push(step);
        }
        let seq = ParallelSwapSequence::new(steps).unwrap();
        let f = seq.apply(&g, &Configuration::identity(n)).unwrap();
        let oe = oe_transform(&g, &seq).unwrap();
        prop_assert_eq!(oe.len(), seq.len() + 1);
        prop_assert!(is_odd_even(&g, &oe).unwrap());
        prop_assert_eq!(oe.apply(&g, &Configuration::identity(n)).unwrap(), f);
    }

    #[test]
    fn two_step_witnesses_verify((g, f) in small_graph(6).prop_flat_map(|g| { let n = g.n(); (Just(g), permutation(n)) })) {
        let reachable = g.components().iter().all(|c| {
            let mut orbit: Vec<usize> = c.iter().map(|&v| f.token(v)).collect();
            orbit.sort_unstable();
            orbit == *c
        });
        prop_assume!(reachable);
        let got = decide_rt2(&g, &f).unwrap();
        let want = rt_at_most(&g, &f, 2, &OracleOptions::default()).unwrap();
        prop_assert_eq!(got.is_some(), want.is_some());
        if let Some((a, b)) = got {
            let sol = ParallelSwapSequence::from_matchings(vec![a, b]);
            let inst = Instance::Rvm { graph: g, config: f };
            prop_assert!(ok(&inst, Solution::Parallel(sol)));
        }
    }

    #[test]
    fn separable_reduction_preserves_satisfiability(f in cnf(3, 3)) {
        let red = reduce_3sat_sepsat(&f).unwrap();
        let target = red.instance.to_cnf();
        prop_assume!(target.vars <= 12);
        prop_assert_eq!(f.brute_force().is_some(), target.brute_force().is_some());
    }

    #[test]
    fn routing_gadgets_certified(f in cnf(4, 5), p in 3usize..=6) {
        let red = reduce_3sat_sepsat(&f).unwrap();
        let sep = &red.instance;
        prop_assume!(sep.vars > 0);
        let outs = [
            (reduce_sepsat_rvm(sep, p).unwrap(), 4),
            (reduce_sepsat_rvm_deg3(sep).unwrap(), 3),
            (reduce_sepsat_2c3(sep).unwrap(), 4),
            (reduce_sepsat_3c2(sep).unwrap(), 4),
        ];
        for (out, degree) in &outs {
            prop_assert!(out.certificate.bipartite);
            prop_assert_eq!(out.certificate.max_degree, *degree);
            prop_assert_eq!(out.certificate.bipartite, out.graph().is_bipartite());
        }
        if let Some(model) = f.dpll() {
            let phi = red.lift(&model);
            let maps = [
                map_assignment_rvm(sep, p, &phi).unwrap(),
                map_assignment_rvm_deg3(sep, &phi).unwrap(),
                map_assignment_2c3(sep, &phi).unwrap(),
                map_assignment_3c2(sep, &phi).unwrap(),
            ];
            for ((out, _), seq) in outs.iter().zip(maps) {
                prop_assert_eq!(seq.len(), out.certificate.expected_optimum);
                prop_assert!(ok(&out.instance, Solution::Parallel(seq)));
            }
        }
    }

    #[test]
    fn planted_three_dm_maps(
        (n, b, c) in (1usize..=4).prop_flat_map(|n| {
            let coords = || Just((1..=n).collect::<Vec<usize>>()).prop_shuffle();
            (Just(n), coords(), coords())
        }),
        extra in prop::collection::vec((1usize..=4, 1usize..=4, 1usize..=4), 0..4),
    ) {
        let mut triples: Vec<[usize; 3]> = (0..n).map(|i| [i + 1, b[i], c[i]]).collect();
        triples.extend(extra.iter().map(|&(x, y, z)| [(x - 1) % n + 1, (y - 1) % n + 1, (z - 1) % n + 1]));
        let inst = ThreeDMInstance::new(n, triples).unwrap();
        let out = reduce_3dm_ts(&inst).unwrap();
        prop_assert!(out.certificate.bipartite);
        if inst.occurrence_bounded() {
            prop_assert!(out.certificate.max_degree <= 3);
        }
        let chosen: Vec<usize> = (0..n).collect();
        let seq = map_3dm_solution(&inst, &chosen).unwrap();
        prop_assert_eq!(seq.len(), 21 * n);
        prop_assert!(ok(&out.instance, Solution::Sequential(seq)));
    }

    #[test]
    fn counting_gadget_structure(h in small_graph(4)) {
        let (g, f) = build_counting_gadget(&h).unwrap();
        prop_assert_eq!(g.n(), 2 * h.n());
        prop_assert_eq!(g.edge_count(), 4 * h.edge_count());
        prop_assert!(!h.is_bipartite() || g.is_bipartite());
        prop_assert!(f.orbits().iter().all(|o| o.len() == 2));
        let derived = count_perfect_matchings(&h) * 2u64.pow(h.n() as u32 / 2);
        prop_assert_eq!(count_structured_solutions(&h).unwrap(), derived);
    }

    #[test]
    fn dimacs_round_trip(f in cnf(6, 10)) {
        let text = f.to_dimacs();
        prop_assert_eq!(Cnf::parse_dimacs(&text).unwrap(), f);
    }
}

#[test]
fn endpoint_schedules_verify() {
    for n in 2..=60 {
        let sched = endpoint_schedule(n).unwrap();
        let inst = Instance::Rvm { graph: path(n).unwrap(), config: endpoint_swap(n).unwrap() };
        assert!(ok(&inst, Solution::Parallel(sched)));
    }
}

#[test]
fn truncated_solutions_are_rejected() {
    let g = path(5).unwrap();
    let f = endpoint_swap(5).unwrap();
    let mut sched = endpoint_schedule(5).unwrap();
    sched.steps.pop();
    let inst = Instance::Rvm { graph: g, config: f };
    assert!(!verify(&inst, &Solution::Parallel(sched)).unwrap().is_ok());
    let m = Matching::new([Edge::new(0, 2)]).unwrap();
    let bad = ParallelSwapSequence::from_matchings(vec![m]);
    assert!(!verify(&inst, &Solution::Parallel(bad)).unwrap().is_ok());
}
