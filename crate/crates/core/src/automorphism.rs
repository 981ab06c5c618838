//! Exact automorphism groups by backtracking.
//!
//! Vertices are split into cells by (degree, sorted neighbour degrees) and
//! mapped one at a time in descending-degree order; a candidate image must
//! share the cell and agree on adjacency with every vertex mapped so far.

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::graph::{bits, Graph};
use crate::group::PermGroup;
use crate::perm::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AutConfig {
    pub max_vertices: usize,
    pub element_cap: usize,
}

impl Default for AutConfig {
    fn default() -> Self {
        AutConfig { max_vertices: 40, element_cap: 1_000_000 }
    }
}

fn vertex_invariant(g: &Graph, v: usize) -> (usize, Vec<usize>) {
    let mut nd: Vec<usize> = bits(g.row(v)).map(|u| g.degree(u)).collect();
    nd.sort_unstable();
    (g.degree(v), nd)
}

struct Matcher<'a> {
    from: &'a Graph,
    to: &'a Graph,
    order: Vec<usize>,
    // candidates[k]: vertices of `to` compatible with order[k]
    candidates: Vec<Vec<usize>>,
    image: Vec<usize>,
    used: u64,
    mapped_to: u64,
}

impl<'a> Matcher<'a> {
    /// `None` when the vertex invariants already rule out any isomorphism.
    fn new(from: &'a Graph, to: &'a Graph) -> Option<Self> {
        let n = from.n();
        if to.n() != n || from.edge_count() != to.edge_count() {
            return None;
        }
        let inv_from: Vec<_> = (0..n).map(|v| vertex_invariant(from, v)).collect();
        let inv_to: Vec<_> = (0..n).map(|v| vertex_invariant(to, v)).collect();
        let mut a = inv_from.clone();
        let mut b = inv_to.clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return None;
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(from.degree(v)), v));
        let candidates = order.iter().map(|&v| (0..n).filter(|&w| inv_to[w] == inv_from[v]).collect()).collect();
        Some(Matcher { from, to, order, candidates, image: vec![usize::MAX; n], used: 0, mapped_to: 0 })
    }

    fn search<F>(&mut self, depth: usize, found: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if depth == self.order.len() {
            return found(&self.image);
        }
        let v = self.order[depth];
        // images of already-mapped neighbours of v
        let expected = bits(self.from.row(v) & self.used).fold(0u64, |acc, u| acc | 1 << self.image[u]);
        for k in 0..self.candidates[depth].len() {
            let w = self.candidates[depth][k];
            if self.mapped_to >> w & 1 == 1 || self.to.row(w) & self.mapped_to != expected {
                continue;
            }
            self.image[v] = w;
            self.used |= 1 << v;
            self.mapped_to |= 1 << w;
            let flow = self.search(depth + 1, found);
            self.used &= !(1 << v);
            self.mapped_to &= !(1 << w);
            self.image[v] = usize::MAX;
            flow?;
        }
        ControlFlow::Continue(())
    }
}

pub fn automorphism_group(g: &Graph) -> Result<PermGroup> {
    automorphism_group_with(g, AutConfig::default())
}

pub fn automorphism_group_with(g: &Graph, config: AutConfig) -> Result<PermGroup> {
    let n = g.n();
    if n > config.max_vertices {
        return Err(Error::UnsupportedSize { size: n, limit: config.max_vertices });
    }
    let mut matcher = Matcher::new(g, g).expect("a graph matches itself");
    let mut elements = Vec::new();
    let mut overflow = false;
    let _ = matcher.search(0, &mut |image: &[usize]| {
        if elements.len() == config.element_cap {
            overflow = true;
            return ControlFlow::Break(());
        }
        elements.push(Permutation::from_bytes_unchecked(image.iter().map(|&w| w as u8).collect()));
        ControlFlow::Continue(())
    });
    if overflow {
        return Err(Error::GroupTooLarge(config.element_cap));
    }
    elements.sort_unstable();
    Ok(PermGroup::from_sorted_unchecked(n, elements))
}

/// An isomorphism `from -> to` as an image array, if one exists.
pub fn find_isomorphism(from: &Graph, to: &Graph) -> Option<Vec<usize>> {
    let mut matcher = Matcher::new(from, to)?;
    let mut result = None;
    let _ = matcher.search(0, &mut |image: &[usize]| {
        result = Some(image.to_vec());
        ControlFlow::Break(())
    });
    result
}

/// Whether `p` preserves adjacency of `g`.
pub fn is_automorphism(g: &Graph, p: &Permutation) -> bool {
    p.degree() == g.n()
        && (0..g.n()).all(|u| (u + 1..g.n()).all(|v| g.adjacent(u, v) == g.adjacent(p.apply(u), p.apply(v))))
}
