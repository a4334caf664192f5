use critgraph::chroma::{chromatic_number, clique_number, is_k_colorable};
use critgraph::cograph::{cograph_color, is_cograph, recognize};
use critgraph::construct::{color_k3_free_with, partition_closed_neighborhood};
use critgraph::critical::{
    antichain_check, certify_k_colorable, criticality_report, extract_critical_subgraph, is_vertex_critical,
    Certificate, CriticalDb,
};
use critgraph::enumerate::{canonical_form, enumerate_critical};
use critgraph::patterns::{find_induced, Family};
use critgraph::{parse_graph6, to_graph6, Graph, PatternSpec, VertexSet};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|j| (0..j).map(move |i| (i, j)));
            let edges: Vec<(usize, usize)> = pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e).collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn cograph_strategy() -> impl Strategy<Value = Graph> {
    let leaf = Just(Graph::empty(1).unwrap()).boxed();
    leaf.prop_recursive(4, 10, 2, |inner| {
        (inner.clone(), inner, any::<bool>()).prop_filter_map("too large", |(a, b, join)| {
            if a.order() + b.order() > 10 {
                return None;
            }
            Some(if join { a.join(&b).unwrap() } else { a.disjoint_union(&b).unwrap() })
        })
    })
}

/// Tries every injective map of the pattern into the host.
fn brute_force_induced(host: &Graph, pattern: &Graph) -> bool {
    fn go(host: &Graph, pattern: &Graph, map: &mut Vec<usize>) -> bool {
        let i = map.len();
        if i == pattern.order() {
            return true;
        }
        for v in 0..host.order() {
            if map.contains(&v) {
                continue;
            }
            if (0..i).all(|j| pattern.has_edge(i, j) == host.has_edge(v, map[j])) {
                map.push(v);
                if go(host, pattern, map) {
                    return true;
                }
                map.pop();
            }
        }
        false
    }
    go(host, pattern, &mut Vec::new())
}

fn pattern_pool() -> Vec<PatternSpec> {
    use PatternSpec::*;
    vec![Path(3), Path(4), Path(5), Clique(3), Clique(4), Cycle(4), Cycle(5), Star(3), Chair, Bull, Cricket, Gem, TwoP2,
        Path(4).plus_isolated(1), Broom(3, 2)]
}

fn random_perm(n: usize, seed: u64) -> Vec<usize> {
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(&mut rng);
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn graph6_round_trip(g in graph_strategy(20)) {
        let text = to_graph6(&g);
        prop_assert_eq!(parse_graph6(&text).unwrap(), g);
    }

    #[test]
    fn complement_is_involution(g in graph_strategy(12)) {
        let c = g.complement();
        prop_assert_eq!(c.edge_count() + g.edge_count(), g.order() * g.order().saturating_sub(1) / 2);
        prop_assert_eq!(c.complement(), g);
    }

    #[test]
    fn components_are_connected_and_anticomplete(g in graph_strategy(12)) {
        let comps = g.connected_components();
        let total: usize = comps.iter().map(VertexSet::len).sum();
        prop_assert_eq!(total, g.order());
        for (i, a) in comps.iter().enumerate() {
            prop_assert!(g.induced_subgraph(a).unwrap().is_connected());
            for b in &comps[i + 1..] {
                prop_assert!(g.is_anticomplete_between(a, b).unwrap());
            }
        }
    }

    #[test]
    fn find_induced_matches_brute_force(g in graph_strategy(7), idx in 0usize..15) {
        let spec = &pattern_pool()[idx];
        let pattern = spec.realize().unwrap();
        let found = find_induced(&g, &pattern);
        prop_assert_eq!(found.is_some(), brute_force_induced(&g, &pattern), "{}", spec);
        if let Some(e) = found {
            prop_assert!(e.verify(&g, &pattern));
        }
    }

    #[test]
    fn cograph_recognition_agrees_with_p4_search(g in graph_strategy(8)) {
        let p4 = Graph::path(4).unwrap();
        prop_assert_eq!(is_cograph(&g), find_induced(&g, &p4).is_none());
        if let Ok(tree) = recognize(&g) {
            prop_assert!(tree.is_well_formed());
            prop_assert_eq!(tree.realize().unwrap(), g.clone());
            let c = cograph_color(&tree);
            prop_assert!(c.is_proper(&g));
            prop_assert_eq!(c.palette_size(), clique_number(&g));
            prop_assert_eq!(chromatic_number(&g).0, clique_number(&g));
        }
    }

    #[test]
    fn built_cographs_are_recognized(g in cograph_strategy()) {
        let tree = recognize(&g).unwrap();
        prop_assert_eq!(tree.realize().unwrap(), g);
    }

    #[test]
    fn canonical_form_ignores_labelling(g in graph_strategy(10), seed in any::<u64>()) {
        let form = canonical_form(&g).unwrap();
        for i in 0..100 {
            let h = g.permute(&random_perm(g.order(), seed.wrapping_add(i))).unwrap();
            prop_assert_eq!(&canonical_form(&h).unwrap(), &form);
        }
    }

    #[test]
    fn pattern_freeness_is_hereditary(g in graph_strategy(6), idx in 0usize..15, v in 0usize..6) {
        let family = Family::new(&pattern_pool()[idx..idx + 1]).unwrap();
        if family.is_free(&g) && v < g.order() {
            prop_assert!(family.is_free(&g.delete_vertex(v).unwrap()));
        }
    }

    #[test]
    fn criticality_verdict_survives_relabelling(g in graph_strategy(7), seed in any::<u64>()) {
        let h = g.permute(&random_perm(g.order(), seed)).unwrap();
        for k in 1..=4 {
            let (a, b) = (criticality_report(&g, k).unwrap(), criticality_report(&h, k).unwrap());
            prop_assert_eq!(a.verdict, b.verdict);
            prop_assert_eq!(a.verdict, is_vertex_critical(&g, k));
        }
    }

    #[test]
    fn extracted_subgraph_is_critical(g in graph_strategy(8)) {
        let (chi, _) = chromatic_number(&g);
        if chi > 0 {
            let sub = extract_critical_subgraph(&g, chi).unwrap();
            prop_assert!(is_vertex_critical(&sub.graph, chi));
            prop_assert_eq!(g.induced_by(&sub.vertices).unwrap(), sub.graph);
        }
    }

    #[test]
    fn certify_with_clique_database(g in graph_strategy(8), k in 2usize..=4) {
        let db = CriticalDb::new(k + 1, vec![PatternSpec::Path(4)], vec![Graph::complete(k + 1).unwrap()]);
        if is_cograph(&g) {
            let cert = certify_k_colorable(&g, k, &db).unwrap();
            prop_assert!(cert.verify(&g, k));
            prop_assert_eq!(matches!(cert, Certificate::Colorable(_)), is_k_colorable(&g, k).is_some());
        } else {
            prop_assert!(certify_k_colorable(&g, k, &db).is_err());
        }
    }

    #[test]
    fn construction_partition_and_bound(g in graph_strategy(9), ell in 0usize..=3) {
        let p = partition_closed_neighborhood(&g, ell);
        let s = VertexSet::from_vertices(g.order(), p.independent.iter().copied()).unwrap();
        prop_assert!(g.is_independent(&s).unwrap());
        prop_assert!(p.independent.len() <= ell);
        let mut covered = s.clone();
        for b in &p.blocks {
            prop_assert!(covered.is_disjoint(b));
            covered = covered.union(b);
        }
        prop_assert_eq!(covered.clone(), g.closed_set_neighborhood(&s).unwrap());
        prop_assert_eq!(covered.union(&p.remainder).len(), g.order());

        let family = Family::new(&[PatternSpec::Path(4).plus_isolated(ell), PatternSpec::Clique(3)]).unwrap();
        if family.is_free(&g) {
            let c = color_k3_free_with(&g, ell, false).unwrap();
            prop_assert!(c.is_proper(&g));
            prop_assert!(c.palette_size() <= ell + 2);
        }
    }
}

#[test]
fn critical_graphs_have_large_min_degree_and_antichain_traces() {
    for k in 1..=4 {
        for g in enumerate_critical(k, 7, &[]).unwrap().graphs().unwrap() {
            assert!(g.min_degree().unwrap() + 1 >= k, "{}", to_graph6(&g));
            // nonadjacent pairs have incomparable neighbourhoods
            for u in 0..g.order() {
                for w in u + 1..g.order() {
                    if g.has_edge(u, w) {
                        continue;
                    }
                    let s = VertexSet::from_vertices(g.order(), [u, w]).unwrap();
                    let rest = VertexSet::full(g.order()).difference(&s);
                    assert!(antichain_check(&g, &s, &rest).unwrap(), "{} {u} {w}", to_graph6(&g));
                }
            }
        }
    }
}
