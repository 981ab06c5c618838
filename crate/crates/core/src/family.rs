//! Named graph families.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Path,
    Cycle,
    Complete,
    Hypercube,
    /// `K_{2^n}` with a path of `n - 1` new edges hanging off every clique vertex.
    CliqueWithTails,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 5] =
        [FamilyKind::Path, FamilyKind::Cycle, FamilyKind::Complete, FamilyKind::Hypercube, FamilyKind::CliqueWithTails];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Path => "path",
            FamilyKind::Cycle => "cycle",
            FamilyKind::Complete => "complete",
            FamilyKind::Hypercube => "hypercube",
            FamilyKind::CliqueWithTails => "clique_with_tails",
        }
    }

    fn min_parameter(self) -> usize {
        match self {
            FamilyKind::Cycle => 3,
            _ => 1,
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| Error::Spec(format!("unknown family {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub parameter: usize,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, parameter: usize) -> Result<Self> {
        let spec = FamilySpec { kind, parameter };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let min = self.kind.min_parameter();
        if self.parameter < min {
            return Err(Error::Spec(format!("{} requires parameter >= {min}, got {}", self.kind, self.parameter)));
        }
        Ok(())
    }

    /// Vertex count of the generated graph, or `None` on overflow.
    pub fn vertex_count(&self) -> Option<usize> {
        let p = self.parameter;
        match self.kind {
            FamilyKind::Path | FamilyKind::Cycle | FamilyKind::Complete => Some(p),
            FamilyKind::Hypercube => 1usize.checked_shl(p as u32).filter(|_| p < usize::BITS as usize),
            FamilyKind::CliqueWithTails => {
                1usize.checked_shl(p as u32).filter(|_| p < usize::BITS as usize).and_then(|c| c.checked_mul(p))
            }
        }
    }
}

/// Builds the graph named by `spec`.
///
/// Layouts: paths and cycles run `0-1-...-(n-1)`; hypercube vertices are
/// bit strings with edges at Hamming distance one; for clique-with-tails the
/// clique is `0..2^n` and the tail of clique vertex `i` occupies
/// `2^n + i*(n-1) ..`, ordered away from the clique.
pub fn generate_family(spec: FamilySpec) -> Result<Graph> {
    spec.validate()?;
    let n = spec
        .vertex_count()
        .filter(|&n| n <= MAX_VERTICES)
        .ok_or(Error::UnsupportedSize { size: spec.vertex_count().unwrap_or(usize::MAX), limit: MAX_VERTICES })?;
    let p = spec.parameter;
    let mut g = Graph::empty(n)?;
    match spec.kind {
        FamilyKind::Path => {
            for v in 1..n {
                g.add_edge(v - 1, v)?;
            }
        }
        FamilyKind::Cycle => {
            for v in 0..n {
                g.add_edge(v, (v + 1) % n)?;
            }
        }
        FamilyKind::Complete => {
            for u in 0..n {
                for v in u + 1..n {
                    g.add_edge(u, v)?;
                }
            }
        }
        FamilyKind::Hypercube => {
            for u in 0..n {
                for b in 0..p {
                    let v = u ^ (1 << b);
                    if u < v {
                        g.add_edge(u, v)?;
                    }
                }
            }
        }
        FamilyKind::CliqueWithTails => {
            let clique = 1 << p;
            for u in 0..clique {
                for v in u + 1..clique {
                    g.add_edge(u, v)?;
                }
            }
            for i in 0..clique {
                let mut prev = i;
                for step in 0..p - 1 {
                    let next = tail_vertex(p, i, step + 1);
                    g.add_edge(prev, next)?;
                    prev = next;
                }
            }
        }
    }
    Ok(g)
}

/// Index of the vertex at distance `depth` from clique vertex `i` in
/// `clique_with_tails(p)`; depth 0 is the clique vertex itself.
pub fn tail_vertex(p: usize, i: usize, depth: usize) -> usize {
    if depth == 0 {
        i
    } else {
        (1 << p) + i * (p - 1) + depth - 1
    }
}

/// The red class of the string colouring of `clique_with_tails(p)`: the
/// tail headed by clique vertex `i` spells the `p`-bit binary string of `i`
/// (most significant bit at the clique vertex), and red marks the ones.
pub fn string_coloring_class(p: usize) -> Vec<usize> {
    let mut class: Vec<usize> = (0..1usize << p)
        .flat_map(|i| (0..p).filter(move |&d| i >> (p - 1 - d) & 1 == 1).map(move |d| tail_vertex(p, i, d)))
        .collect();
    class.sort_unstable();
    class
}
