mod common;

use proptest::prelude::*;
use tmdelta::{generate, parse_graph, write_graph, Element, Family, Graph};

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![
        (0usize..12).prop_map(|n| Family::Path { n }),
        (3usize..12).prop_map(|n| Family::Cycle { n }),
        (0usize..8).prop_map(|k| Family::Star { k }),
        (0usize..4, 0usize..4).prop_map(|(branches, leaves)| Family::Spider { branches, leaves }),
        (0usize..14).prop_map(|n| Family::RandomForest { n }),
        (1usize..9)
            .prop_flat_map(|n| (Just(n), 0..=n * (n - 1) / 2))
            .prop_map(|(n, m)| Family::RandomSparse { n, m }),
    ]
}

fn simple(g: &Graph) -> bool {
    let mut seen = std::collections::HashSet::new();
    g.edges()
        .iter()
        .all(|e| e.u != e.v && e.u < g.n() && e.v < g.n() && seen.insert((e.u.min(e.v), e.u.max(e.v))))
}

proptest! {
    #[test]
    fn generated_graphs_are_simple(f in family(), seed in any::<u64>()) {
        let g = generate(f, seed).unwrap();
        prop_assert!(simple(&g));
        prop_assert_eq!(generate(f, seed).unwrap(), g);
    }

    #[test]
    fn incidence_is_symmetric_and_reflexive(f in family(), seed in any::<u64>()) {
        let g = generate(f, seed).unwrap();
        let elements: Vec<Element> = g.elements().collect();
        for &a in &elements {
            prop_assert!(g.incident(a, a).unwrap());
            for &b in &elements {
                prop_assert_eq!(g.incident(a, b).unwrap(), g.incident(b, a).unwrap());
            }
        }
    }

    #[test]
    fn components_partition_elements(f in family(), seed in any::<u64>()) {
        let g = generate(f, seed).unwrap();
        let mut vertex_hits = vec![0; g.n()];
        let mut edge_hits = vec![0; g.m()];
        for c in g.components() {
            prop_assert!(c.graph.is_connected());
            for &v in &c.vertex_map { vertex_hits[v] += 1; }
            for &e in &c.edge_map { edge_hits[e] += 1; }
        }
        prop_assert!(vertex_hits.iter().all(|&h| h == 1));
        prop_assert!(edge_hits.iter().all(|&h| h == 1));
    }

    #[test]
    fn file_format_round_trip(f in family(), seed in any::<u64>()) {
        let g = generate(f, seed).unwrap();
        let w = common::random_weights(&mut common::rng(seed), &g, -5, 9);
        prop_assert_eq!(parse_graph(&write_graph(&w)).unwrap(), w);
    }
}

#[test]
fn rejects_malformed_files() {
    for bad in [
        "",
        "graph 3 1\ne 1 1\n",
        "graph 3 2\ne 1 2\ne 2 1\n",
        "graph 3 1\ne 1 4\n",
        "graph 3 2\ne 1 2\n",
        "e 1 2\ngraph 3 1\n",
        "graph 2 0\nx 1\n",
        "graph 2 0\nv 1 3\nv 1 4\n",
    ] {
        assert!(parse_graph(bad).is_err(), "{bad:?}");
    }
}
