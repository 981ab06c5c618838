//! Undirected simple graphs on vertex ids `0..n`.
//!
//! Adjacency is held as one `u64` row per vertex, so graphs are limited to
//! [`MAX_VERTICES`] vertices. That covers every corpus this crate targets.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::UnsupportedSize { size: n, limit: MAX_VERTICES });
        }
        Ok(Graph { n, rows: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds `{u, v}`. Loops are rejected; re-adding an edge is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(Error::Argument(format!("loop at vertex {u}")));
        }
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
        Ok(())
    }

    fn check(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::Index { index: v, n: self.n })
        } else {
            Ok(())
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Unchecked adjacency test; panics if either vertex is out of range.
    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    /// Neighbourhood of `v` as a bitmask over vertex ids.
    #[inline]
    pub fn row(&self, v: usize) -> u64 {
        self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn neighbors(&self, v: usize) -> Result<Vec<usize>> {
        self.check(v)?;
        Ok(bits(self.rows[v]).collect())
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| bits(self.rows[u] & !mask(u + 1)).map(move |v| (u, v)))
    }

    pub fn complement(&self) -> Graph {
        let full = mask(self.n);
        let rows = (0..self.n).map(|v| !self.rows[v] & full & !(1 << v)).collect();
        Graph { n: self.n, rows }
    }

    /// Subgraph induced by `vertices`, plus the old-to-new index map.
    ///
    /// New vertex `i` is the `i`-th smallest member of `vertices`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<(Graph, Vec<Option<usize>>)> {
        let mut keep: Vec<usize> = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        for &v in &keep {
            self.check(v)?;
        }
        let mut index = vec![None; self.n];
        for (new, &old) in keep.iter().enumerate() {
            index[old] = Some(new);
        }
        let mut sub = Graph::empty(keep.len())?;
        for (a, &u) in keep.iter().enumerate() {
            for (b, &v) in keep.iter().enumerate().skip(a + 1) {
                if self.adjacent(u, v) {
                    sub.rows[a] |= 1 << b;
                    sub.rows[b] |= 1 << a;
                }
            }
        }
        Ok((sub, index))
    }

    /// The graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::Degree { left: self.n, right: perm.len() });
        }
        let mut seen = 0u64;
        for &p in perm {
            self.check(p)?;
            seen |= 1 << p;
        }
        if seen != mask(self.n) {
            return Err(Error::NotPermutation(format!("{perm:?}")));
        }
        let mut out = Graph::empty(self.n)?;
        for (u, v) in self.edges() {
            out.rows[perm[u]] |= 1 << perm[v];
            out.rows[perm[v]] |= 1 << perm[u];
        }
        Ok(out)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}

/// Low `n` bits set.
#[inline]
pub(crate) fn mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Indices of set bits, ascending.
pub(crate) fn bits(mut word: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if word == 0 {
            None
        } else {
            let i = word.trailing_zeros() as usize;
            word &= word - 1;
            Some(i)
        }
    })
}
