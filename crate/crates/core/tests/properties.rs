mod common;

use proptest::prelude::*;

use classgraph::class_graph::{
    articulation_points_bruteforce, articulation_points_lowlink, conjugacy_class_data,
    graph_analysis, prime_graph, two_clique_cover, PrimeGraph,
};
use classgraph::group::DEFAULT_CAP;
use classgraph::realizer::{assign_primes, candidate_shapes, verify_plan, Mode, ShapeParams};
use classgraph::structure::reduce;
use classgraph::{enumerate_group, Group, GroupSpec, Subgroup};

use common::{oracle_class_sizes, oracle_primes, sorted_multiset, OracleGraph};

fn pow_mod(b: u64, e: u64, m: u64) -> u64 {
    (0..e).fold(1 % m, |acc, _| acc * b % m)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Split extensions of small abelian groups by powering automorphisms.
fn extension_spec() -> impl Strategy<Value = GroupSpec> {
    let base = prop::collection::vec(
        prop::sample::select(vec![3u64, 4, 5, 7, 8, 9, 11, 13]),
        1..=2,
    );
    let actor = prop::collection::vec(prop::sample::select(vec![1u64, 2, 3, 4, 6]), 1..=2);
    (base, actor, prop::collection::vec(0u64..1000, 4)).prop_map(|(base, actor, seeds)| {
        let action = actor
            .iter()
            .enumerate()
            .map(|(j, &a)| {
                base.iter()
                    .enumerate()
                    .map(|(i, &b)| {
                        let start = seeds[2 * j + i] % b;
                        (0..b)
                            .map(|k| (start + k) % b)
                            .find(|&e| e > 0 && gcd(e, b) == 1 && pow_mod(e, a, b) == 1 % b)
                            .unwrap_or(1)
                    })
                    .collect()
            })
            .collect();
        GroupSpec::Extension {
            base,
            actor,
            action,
        }
    })
}

fn graph_strategy(max_n: u64) -> impl Strategy<Value = PrimeGraph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(u64, u64)> = (1..=n)
            .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
            .collect();
        prop::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let edges: Vec<(u64, u64)> = pairs
                .iter()
                .zip(&keep)
                .filter(|(_, &k)| k)
                .map(|(&e, _)| e)
                .collect();
            PrimeGraph::new((1..=n).collect(), &edges).unwrap()
        })
    })
}

/// The canonical shape graph: `{r} ∪ alpha` and `t ∪ q` cliques joined
/// through `r ~ t`.
fn shape_graph() -> impl Strategy<Value = (PrimeGraph, usize, usize, usize)> {
    (1usize..=2, 1usize..=2, 0usize..=2).prop_map(|(n, m1, m0)| {
        let r = 1u64;
        let alpha: Vec<u64> = (2..2 + n as u64).collect();
        let t: Vec<u64> = (10..10 + m1 as u64).collect();
        let q: Vec<u64> = (20..20 + m0 as u64).collect();
        let mut edges = Vec::new();
        let left: Vec<u64> = std::iter::once(r).chain(alpha.iter().copied()).collect();
        let right: Vec<u64> = t.iter().chain(&q).copied().collect();
        for side in [&left, &right] {
            for (i, &u) in side.iter().enumerate() {
                for &v in &side[i + 1..] {
                    edges.push((u, v));
                }
            }
        }
        edges.extend(t.iter().map(|&v| (r, v)));
        let vertices: Vec<u64> = left.iter().chain(&right).copied().collect();
        (PrimeGraph::new(vertices, &edges).unwrap(), n, m1, m0)
    })
}

fn random_subgroup(g: &Group, picks: &[usize]) -> Subgroup {
    let seeds: Vec<usize> = picks.iter().map(|&i| i % g.order()).collect();
    Subgroup::closure(g, &seeds)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn class_sizes_match_oracle(spec in extension_spec()) {
        let g = enumerate_group(&spec, DEFAULT_CAP).unwrap();
        prop_assert_eq!(g.order() as u64, spec.projected_order().unwrap());
        let cd = conjugacy_class_data(&g);
        let per_element = oracle_class_sizes(&g);
        prop_assert_eq!(&cd.size_multiset, &sorted_multiset(&per_element));
        prop_assert_eq!(cd.size_multiset.iter().sum::<u64>(), g.order() as u64);
        prop_assert!(cd.size_multiset.iter().all(|s| g.order() as u64 % s == 0));

        let graph = prime_graph(&cd);
        let oracle = OracleGraph::from_sizes(&per_element);
        prop_assert_eq!(graph.edges(), oracle.edges.iter().copied().collect::<Vec<_>>());
        prop_assert_eq!(two_clique_cover(&graph).is_some(), oracle.complement_bipartite());
        prop_assert!(oracle.complement_bipartite());
    }

    #[test]
    fn reduction_scales_multiplicities(spec in extension_spec()) {
        let g = enumerate_group(&spec, DEFAULT_CAP).unwrap();
        let red = reduce(&g);
        prop_assert!(red.sizes_preserved());
        let big = sorted_multiset(&oracle_class_sizes(&g));
        let small = sorted_multiset(&oracle_class_sizes(&red.reduced_group));
        let index = g.order() / red.reduced_group.order();
        prop_assert_eq!(index, red.stripped_center.order());
        for s in big.iter().chain(&small) {
            let c = |v: &[u64]| v.iter().filter(|&x| x == s).count();
            prop_assert_eq!(c(&big), index * c(&small));
        }
        for x in g.elements() {
            for y in [0, x / 2, g.order() - 1] {
                prop_assert_eq!(
                    red.projection[g.mul(x, y)],
                    red.reduced_group.mul(red.projection[x], red.projection[y])
                );
            }
        }
    }

    #[test]
    fn subgroups_are_closed(spec in extension_spec(), picks in prop::collection::vec(any::<usize>(), 1..=3), c in any::<usize>()) {
        let g = enumerate_group(&spec, DEFAULT_CAP).unwrap();
        let h = random_subgroup(&g, &picks);
        prop_assert!(h.is_closed(&g));
        prop_assert!(h.satisfies_lagrange(&g));
        prop_assert_eq!(g.order() % h.order(), 0);
        let x = c % g.order();
        prop_assert_eq!(h.conjugate(&g, x).order(), h.order());
        let whole = Subgroup::whole(&g);
        prop_assert!(h.is_subset(&g.normalizer(&h, &whole)));
        let centralizer = g.centralizer(x, &whole);
        prop_assert_eq!(
            centralizer.order(),
            g.elements().filter(|&y| g.mul(x, y) == g.mul(y, x)).count()
        );
    }

    #[test]
    fn abelianization_is_a_homomorphism(spec in extension_spec()) {
        let g = enumerate_group(&spec, DEFAULT_CAP).unwrap();
        let d = g.derived_subgroup();
        prop_assert!(g.is_normal(&d));
        let q = g.quotient(&d).unwrap();
        prop_assert_eq!(q.group.order() * d.order(), g.order());
        prop_assert!(q.group.is_abelian());
        for x in g.elements().step_by(3) {
            for y in g.elements().step_by(7) {
                prop_assert_eq!(q.projection[g.mul(x, y)], q.group.mul(q.projection[x], q.projection[y]));
            }
        }
    }

    #[test]
    fn lowlink_matches_removal(graph in graph_strategy(9)) {
        let expected = OracleGraph::new(graph.vertices(), &graph.edges()).cut_vertices();
        prop_assert_eq!(articulation_points_lowlink(&graph), expected.clone());
        prop_assert_eq!(articulation_points_bruteforce(&graph), expected.clone());
        prop_assert_eq!(graph_analysis(&graph).articulation_points, expected);
    }

    #[test]
    fn complement_is_involutive(graph in graph_strategy(8)) {
        prop_assert_eq!(graph.complement().complement(), graph.clone());
        prop_assert_eq!(graph.edge_count() + graph.complement().edge_count(), graph.len() * (graph.len().max(1) - 1) / 2);
        if let Some((x, y)) = two_clique_cover(&graph) {
            prop_assert!(graph.is_clique(&x) && graph.is_clique(&y));
            prop_assert_eq!(x.len() + y.len(), graph.len());
        }
    }

    #[test]
    fn plans_satisfy_congruences((graph, n, m1, m0) in shape_graph()) {
        let shapes = candidate_shapes(&graph).unwrap();
        let ours = ShapeParams {
            r_vertex: 1,
            alpha_side: (2..2 + n as u64).collect(),
            t_side: (10..10 + m1 as u64).collect(),
            q_side: (20..20 + m0 as u64).collect(),
        };
        prop_assert!(shapes.contains(&ours));
        let plan = assign_primes(&ours).unwrap();
        prop_assert!(verify_plan(&plan).is_ok());
        let mut primes: Vec<u64> = plan.prime_map.values().copied().collect();
        prop_assert!(primes.iter().all(|&p| oracle_primes(p) == vec![p]));
        primes.sort_unstable();
        primes.dedup();
        prop_assert_eq!(primes.len(), graph.len());
        prop_assert_eq!(plan.b1, plan.t.iter().product::<u64>());
        prop_assert!(plan.p.iter().all(|&p| p % plan.b1 == 1));
        let order_of = |e: u64, m: u64| (1..m).find(|&k| pow_mod(e, k, m) == 1).unwrap();
        match plan.mode {
            Mode::Example52 => {
                prop_assert!(m0 >= 1);
                prop_assert_eq!(plan.r % (plan.b0 * plan.b1), 1);
                prop_assert_eq!(order_of(plan.action_exponents[0][0], plan.r), plan.b0);
                prop_assert_eq!(order_of(plan.action_exponents[1][0], plan.r), plan.b1);
                prop_assert_eq!(
                    plan.predicted_order,
                    plan.r * plan.p.iter().product::<u64>() * plan.b0 * plan.b1
                );
            }
            Mode::DirectProduct => {
                prop_assert_eq!(m0, 0);
                prop_assert_eq!(plan.predicted_order, plan.r.pow(3) * plan.p.iter().product::<u64>() * plan.b1);
            }
        }
    }
}
