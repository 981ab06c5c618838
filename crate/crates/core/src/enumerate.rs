//! Isomorphism-free enumeration of small graphs by generate-and-reject.
//!
//! A graph's code is its upper-triangle adjacency bit string in graph6 slot
//! order, read with the first slot as the most significant bit. The
//! canonical form is the least code over all vertex permutations, and a
//! candidate is emitted only if it already is its own canonical form.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6::parse_graph6;

pub const MAX_ENUMERATE: usize = 6;
pub const MAX_CANONICAL: usize = 8;

fn slot_pairs(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect()
}

fn code_of(g: &Graph, pairs: &[(usize, usize)]) -> u64 {
    pairs.iter().fold(0, |acc, &(i, j)| acc << 1 | u64::from(g.adjacent(i, j)))
}

fn graph_of(n: usize, code: u64, pairs: &[(usize, usize)]) -> Graph {
    let mut g = Graph::empty(n).expect("n <= MAX_CANONICAL");
    let top = pairs.len();
    for (k, &(i, j)) in pairs.iter().enumerate() {
        if code >> (top - 1 - k) & 1 == 1 {
            g.add_edge(i, j).expect("slot in range");
        }
    }
    g
}

/// Code of `g` relabelled by `perm`, compared bit by bit against `bound`.
/// Returns `Some(code)` when strictly below `bound`, `None` otherwise.
fn code_below(g: &Graph, perm: &[usize], pairs: &[(usize, usize)], bound: u64) -> Option<u64> {
    let top = pairs.len();
    let mut code = 0u64;
    for (k, &(i, j)) in pairs.iter().enumerate() {
        let bit = u64::from(g.adjacent(perm[i], perm[j]));
        code = code << 1 | bit;
        let bound_prefix = bound >> (top - 1 - k);
        if code < bound_prefix {
            // strictly smaller already; finish the remaining bits
            for &(i, j) in &pairs[k + 1..] {
                code = code << 1 | u64::from(g.adjacent(perm[i], perm[j]));
            }
            return Some(code);
        }
        if code > bound_prefix {
            return None;
        }
    }
    None
}

/// Canonical form of a graph with at most [`MAX_CANONICAL`] vertices.
/// Two graphs are isomorphic iff their vertex counts and canonical forms agree.
pub fn canonical_form(g: &Graph) -> Result<u64> {
    let n = g.n();
    if n > MAX_CANONICAL {
        return Err(Error::UnsupportedSize { size: n, limit: MAX_CANONICAL });
    }
    let pairs = slot_pairs(n);
    let mut best = code_of(g, &pairs);
    for perm in (0..n).permutations(n) {
        if let Some(code) = code_below(g, &perm, &pairs, best) {
            best = code;
        }
    }
    Ok(best)
}

/// The graph whose code is the canonical form of `g`.
pub fn canonical_graph(g: &Graph) -> Result<Graph> {
    let code = canonical_form(g)?;
    Ok(graph_of(g.n(), code, &slot_pairs(g.n())))
}

/// One representative of every isomorphism class of graphs on `n`
/// vertices, in increasing canonical-code order.
pub fn enumerate_graphs(n: usize) -> Result<Vec<Graph>> {
    if !(1..=MAX_ENUMERATE).contains(&n) {
        return Err(Error::UnsupportedSize { size: n, limit: MAX_ENUMERATE });
    }
    let pairs = slot_pairs(n);
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let mut out = Vec::new();
    for code in 0..1u64 << pairs.len() {
        let g = graph_of(n, code, &pairs);
        if perms.iter().all(|p| code_below(&g, p, &pairs, code).is_none()) {
            out.push(g);
        }
    }
    Ok(out)
}

/// Every graph on `1..=max_n` vertices, smallest first.
pub fn enumerate_up_to(max_n: usize) -> Result<Vec<Graph>> {
    let mut all = Vec::new();
    for n in 1..=max_n {
        all.extend(enumerate_graphs(n)?);
    }
    Ok(all)
}

/// All 1044 graphs on seven vertices, one per line in graph6, shipped as
/// data because generate-and-reject over 2^21 codes is too slow.
pub const GRAPHS7_G6: &str = include_str!("../data/graphs7.g6");

pub fn graphs_on_seven() -> Result<Vec<Graph>> {
    GRAPHS7_G6.lines().filter(|l| !l.trim().is_empty()).map(parse_graph6).collect()
}

/// Every graph on `1..=max_n` vertices for `max_n <= 7`, the last size
/// read from [`GRAPHS7_G6`].
pub fn corpus_up_to(max_n: usize) -> Result<Vec<Graph>> {
    if max_n <= MAX_ENUMERATE {
        return enumerate_up_to(max_n);
    }
    if max_n > 7 {
        return Err(Error::UnsupportedSize { size: max_n, limit: 7 });
    }
    let mut all = enumerate_up_to(MAX_ENUMERATE)?;
    all.extend(graphs_on_seven()?);
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| enumerate_graphs(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34, 156]);
    }

    #[test]
    fn size_limits() {
        assert!(enumerate_graphs(0).is_err());
        assert!(enumerate_graphs(7).is_err());
        assert!(canonical_form(&Graph::empty(9).unwrap()).is_err());
    }

    #[test]
    fn canonical_form_is_relabel_invariant() {
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let scrambled = p4.relabel(&[2, 0, 3, 1]).unwrap();
        assert_eq!(canonical_form(&p4).unwrap(), canonical_form(&scrambled).unwrap());
        // P4 is self-complementary
        assert_eq!(canonical_form(&p4).unwrap(), canonical_form(&p4.complement()).unwrap());
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_ne!(canonical_form(&p4).unwrap(), canonical_form(&star).unwrap());
    }

    #[test]
    fn canonical_graph_round_trip() {
        let g = Graph::from_edges(5, &[(0, 4), (1, 4), (2, 3)]).unwrap();
        let c = canonical_graph(&g).unwrap();
        assert_eq!(canonical_graph(&c).unwrap(), c);
        assert_eq!(c.edge_count(), 3);
    }

    #[test]
    fn seven_vertex_data() {
        let seven = graphs_on_seven().unwrap();
        assert_eq!(seven.len(), 1044);
        assert!(seven.iter().all(|g| g.n() == 7));
        assert_eq!(corpus_up_to(7).unwrap().len(), 1 + 2 + 4 + 11 + 34 + 156 + 1044);
        assert!(corpus_up_to(8).is_err());
    }
}
