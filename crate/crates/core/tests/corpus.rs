use std::collections::{BTreeMap, HashSet};

use itertools::Itertools;
use symbreak::automorphism::find_isomorphism;
use symbreak::enumerate::{canonical_form, enumerate_graphs, graphs_on_seven};
use symbreak::{automorphism_group, Graph, Permutation};

fn degree_sequence(g: &Graph) -> Vec<usize> {
    let mut d: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    d.sort_unstable();
    d
}

#[test]
fn enumeration_is_isomorphism_free() {
    for n in 1..=6 {
        let graphs = enumerate_graphs(n).unwrap();
        let mut buckets: BTreeMap<(usize, Vec<usize>), Vec<&Graph>> = BTreeMap::new();
        for g in &graphs {
            buckets.entry((g.edge_count(), degree_sequence(g))).or_default().push(g);
        }
        for bucket in buckets.values() {
            for (a, b) in bucket.iter().tuple_combinations() {
                assert!(find_isomorphism(a, b).is_none(), "{a:?} ~ {b:?}");
            }
        }
    }
}

#[test]
fn enumeration_is_complete_for_five_vertices() {
    let reps = enumerate_graphs(5).unwrap();
    let slots: Vec<(usize, usize)> = (0..5).tuple_combinations().collect();
    for mask in 0u32..1 << slots.len() {
        let edges: Vec<(usize, usize)> =
            slots.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e).collect();
        let g = Graph::from_edges(5, &edges).unwrap();
        let hits = reps.iter().filter(|r| find_isomorphism(&g, r).is_some()).count();
        assert_eq!(hits, 1, "{g:?}");
    }
}

#[test]
fn seven_vertex_data_matches_extensions() {
    let seven = graphs_on_seven().unwrap();
    let forms: HashSet<u64> = seven.iter().map(|g| canonical_form(g).unwrap()).collect();
    assert_eq!(forms.len(), 1044, "data file contains isomorphic duplicates");

    let mut extended = HashSet::new();
    for g in enumerate_graphs(6).unwrap() {
        for nbrs in 0u32..1 << 6 {
            let mut edges: Vec<(usize, usize)> = g.edges().collect();
            edges.extend((0..6).filter(|v| nbrs >> v & 1 == 1).map(|v| (v, 6)));
            extended.insert(canonical_form(&Graph::from_edges(7, &edges).unwrap()).unwrap());
        }
    }
    assert_eq!(extended, forms);
}

#[test]
fn automorphisms_match_brute_force() {
    for n in 1..=5 {
        for g in enumerate_graphs(n).unwrap() {
            let brute: Vec<Permutation> = (0..n)
                .permutations(n)
                .filter(|p| g.edges().all(|(u, v)| g.adjacent(p[u], p[v])))
                .map(|p| Permutation::from_images(&p).unwrap())
                .sorted()
                .collect();
            assert_eq!(automorphism_group(&g).unwrap().elements(), &brute[..]);
        }
    }
}
