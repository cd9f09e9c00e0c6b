use proptest::prelude::*;

use vft_spanner::reachability::RecomputeReachability;
use vft_spanner::verify::check_ft_spanner_exhaustive;
use vft_spanner::*;

fn raw_graph(max_n: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize, u64)>)> {
    (2..=max_n).prop_flat_map(|n| {
        let edge = (0..n, 0..n, 0u64..20);
        (Just(n), prop::collection::vec(edge, 0..3 * n))
    })
}

fn int_graph(max_n: usize) -> impl Strategy<Value = IntGraph> {
    raw_graph(max_n).prop_map(|(n, raw)| WeightedGraph::normalize(raw, n).unwrap())
}

fn float_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n)
        .prop_flat_map(|n| {
            let edge = (0..n, 0..n, 0.0f64..1e6);
            (Just(n), prop::collection::vec(edge, 0..3 * n))
        })
        .prop_map(|(n, raw)| WeightedGraph::normalize(raw, n).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normalized_graphs_are_simple((n, raw) in raw_graph(12)) {
        let g = WeightedGraph::normalize(raw.clone(), n).unwrap();
        for (i, e) in g.edges().iter().enumerate() {
            prop_assert_eq!(e.id, i);
            prop_assert!(e.u < e.v);
            let min = raw
                .iter()
                .filter(|&&(a, b, _)| (a.min(b), a.max(b)) == (e.u, e.v))
                .map(|t| t.2)
                .min();
            prop_assert_eq!(Some(e.weight), min);
        }
        prop_assert!(g.edges().windows(2).all(|w| (w[0].u, w[0].v) < (w[1].u, w[1].v)));
    }

    #[test]
    fn triangle_inequality(g in int_graph(10), a in 0usize..10, b in 0usize..10, c in 0usize..10) {
        let n = g.n();
        let (a, b, c) = (a % n, b % n, c % n);
        let none = VertexSet::empty(n);
        let ab = g.weighted_distance(a, b, &none).unwrap();
        let bc = g.weighted_distance(b, c, &none).unwrap();
        let ac = g.weighted_distance(a, c, &none).unwrap();
        prop_assert_eq!(ab, g.weighted_distance(b, a, &none).unwrap());
        if let (Distance::Finite(x), Distance::Finite(y)) = (ab, bc) {
            prop_assert!(ac <= Distance::Finite(x + y));
        }
    }

    #[test]
    fn sorted_edges_is_a_permutation(g in float_graph(12)) {
        let order = g.sorted_edges();
        let mut ids: Vec<usize> = order.iter().map(|e| e.id).collect();
        prop_assert!(order.windows(2).all(|w| w[0].weight <= w[1].weight));
        ids.sort_unstable();
        prop_assert_eq!(ids, (0..g.m()).collect::<Vec<_>>());
    }

    #[test]
    fn text_round_trip_float(g in float_graph(15)) {
        prop_assert_eq!(parse_graph::<f64>(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn text_round_trip_int(g in int_graph(15)) {
        prop_assert_eq!(parse_graph::<u64>(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn record_round_trip(g in int_graph(8), f in 1usize..3, k in 1usize..4, seed in any::<u64>()) {
        let params = AlgoParams::new(f.min(g.n() - 1).max(1), k).with_seed(seed);
        prop_assume!(params.f < g.n());
        let out = ft_fast_randomized(&g, &params).unwrap();
        let rec = ExperimentRecord::new(Algorithm::Fast, "prop", &g, &params, &out);
        let json = serde_json::to_string(&rec).unwrap();
        prop_assert_eq!(serde_json::from_str::<ExperimentRecord>(&json).unwrap(), rec);
    }

    #[test]
    fn incremental_matches_recompute(
        width in 2usize..14,
        k in 1usize..4,
        ops in prop::collection::vec((0usize..14, 0usize..14), 1..40),
    ) {
        let vertices: Vec<usize> = (0..width).map(|x| 3 * x + 1).collect();
        let mut inc = IncrementalReachability::with_vertices(vertices.clone(), k);
        let mut rec = RecomputeReachability::with_vertices(vertices.clone(), k);
        for (a, b) in ops {
            let (a, b) = (a % width, b % width);
            if a != b {
                inc.insert_spanner_edge(vertices[a], vertices[b]).unwrap();
                rec.insert_spanner_edge(vertices[a], vertices[b]).unwrap();
            }
            for x in 0..width {
                for y in 0..width {
                    prop_assert_eq!(inc.reachable_local(x, y), rec.reachable_local(x, y));
                }
            }
        }
    }

    #[test]
    fn checker_is_relabel_invariant(
        g in int_graph(7),
        keep in prop::collection::vec(any::<bool>(), 21),
        perm_seed in any::<u64>(),
        f in 0usize..3,
        k in 1usize..3,
    ) {
        use rand::seq::SliceRandom;
        use rand_chacha::rand_core::SeedableRng;
        let n = g.n();
        let ids: Vec<usize> = (0..g.m()).filter(|&i| keep[i % keep.len()]).collect();
        let h = g.edge_subgraph(ids);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(perm_seed));
        let v1 = check_ft_spanner_exhaustive(&g, &h, f, k).unwrap();
        let v2 = check_ft_spanner_exhaustive(&g.relabel(&perm), &h.relabel(&perm), f, k).unwrap();
        prop_assert_eq!(v1.pass, v2.pass);
    }

    #[test]
    fn spanners_are_subgraphs(g in float_graph(10), k in 1usize..4, seed in any::<u64>()) {
        prop_assume!(g.n() >= 3);
        let params = AlgoParams::new(1, k).with_seed(seed).with_c(8.0);
        for algo in [Algorithm::Greedy, Algorithm::Exact, Algorithm::Basic, Algorithm::Fast, Algorithm::Deterministic] {
            let out = build(&g, algo, &params).unwrap();
            prop_assert!(out.spanner.is_subgraph_of(&g));
            prop_assert_eq!(out.per_edge.len(), g.m());
        }
        // the exact algorithm and the deterministic one are always correct
        let exact = ft_greedy_exact(&g, 1, k).unwrap();
        prop_assert!(check_ft_spanner_exhaustive(&g, &exact.spanner, 1, k).unwrap().pass);
        let det = ft_deterministic(&g, &params).unwrap();
        prop_assert!(check_ft_spanner_exhaustive(&g, &det.spanner, 1, k).unwrap().pass);
    }

    #[test]
    fn girth_of_greedy_exceeds_2k(n in 3usize..13, seed in any::<u64>(), k in 1usize..4) {
        let g: Graph = gen_graph(GraphKind::Gnp { p: 0.5 }, n, WeightDist::Unit, seed).unwrap();
        let h = greedy(&g, k).spanner;
        prop_assert!(shortest_cycle_length(&h).map_or(true, |c| c > 2 * k));
    }
}
