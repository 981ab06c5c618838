//! Permutations of `0..n` and labelled cycle notation.
//!
//! Composition is right to left: `p.compose(&q)` maps `v` to `p(q(v))`.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported degree; images are stored as bytes.
pub const MAX_DEGREE: usize = 256;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_DEGREE, "degree {n} exceeds {MAX_DEGREE}");
        Permutation { images: (0..n).map(|v| v as u8).collect() }
    }

    /// Array form: `images[v]` is the image of `v`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n > MAX_DEGREE {
            return Err(Error::UnsupportedSize { size: n, limit: MAX_DEGREE });
        }
        let mut seen = vec![false; n];
        for &v in images {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::NotPermutation(format!("{images:?}")));
            }
        }
        Ok(Permutation { images: images.iter().map(|&v| v as u8).collect() })
    }

    /// Builds a permutation of degree `n` from disjoint cycles; each cycle
    /// `[a, b, c]` maps `a -> b -> c -> a`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &v) in cycle.iter().enumerate() {
                if v >= n {
                    return Err(Error::Index { index: v, n });
                }
                if std::mem::replace(&mut touched[v], true) {
                    return Err(Error::NotPermutation(format!("cycles {cycles:?} are not disjoint")));
                }
                images[v] = cycle[(k + 1) % cycle.len()];
            }
        }
        Permutation::from_images(&images)
    }

    pub(crate) fn from_bytes_unchecked(images: Vec<u8>) -> Self {
        Permutation { images }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        usize::from(self.images[v])
    }

    pub fn images(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.images.iter().map(|&v| usize::from(v))
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(v, &w)| v == usize::from(w))
    }

    pub fn fixes(&self, v: usize) -> bool {
        self.apply(v) == v
    }

    /// Number of points moved.
    pub fn support_size(&self) -> usize {
        self.images.iter().enumerate().filter(|&(v, &w)| v != usize::from(w)).count()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::Degree { left: self.degree(), right: other.degree() });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&v| self.images[usize::from(v)]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.degree()];
        for (v, &w) in self.images.iter().enumerate() {
            inv[usize::from(w)] = v as u8;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, k: u32) -> Permutation {
        let mut out = Permutation::identity(self.degree());
        for _ in 0..k {
            out = self.compose_unchecked(&out);
        }
        out
    }

    /// All cycles including fixed points, each rotated to start at its least
    /// element, ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                cycle.push(v);
                v = self.apply(v);
            }
            out.push(cycle);
        }
        out
    }

    /// Cycles of length at least two.
    pub fn nontrivial_cycles(&self) -> Vec<Vec<usize>> {
        self.cycles().into_iter().filter(|c| c.len() > 1).collect()
    }

    /// Cycle lengths, sorted descending; they sum to the degree.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lengths: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    /// Length of the cycle through `v`.
    pub fn cycle_len_at(&self, v: usize) -> usize {
        let mut len = 1;
        let mut w = self.apply(v);
        while w != v {
            w = self.apply(w);
            len += 1;
        }
        len
    }

    /// Cycle notation with every index replaced by its label. Fixed points
    /// are written as singleton cycles.
    pub fn relabel(&self, labeling: &Labeling) -> Result<String> {
        if labeling.degree() != self.degree() {
            return Err(Error::Degree { left: self.degree(), right: labeling.degree() });
        }
        let mut out = String::new();
        for cycle in self.cycles() {
            out.push('(');
            for (k, &v) in cycle.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                out.push_str(labeling.name(v));
            }
            out.push(')');
        }
        Ok(out)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in self.cycles() {
            f.write_str("(")?;
            for (k, v) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{self}")
    }
}

/// Injective map from vertex indices to display labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    names: Vec<String>,
}

impl Labeling {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut seen = HashSet::new();
        for name in &names {
            if name.is_empty() || name.contains(['(', ')', ',']) {
                return Err(Error::Argument(format!("label {name:?} is not printable in cycle notation")));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::Argument(format!("label {name:?} used twice")));
            }
        }
        Ok(Labeling { names })
    }

    /// Labels `0..n` by their own index.
    pub fn indices(n: usize) -> Self {
        Labeling { names: (0..n).map(|v| v.to_string()).collect() }
    }

    /// Labels `0..n` as `1..=n`.
    pub fn one_based(n: usize) -> Self {
        Labeling { names: (1..=n).map(|v| v.to_string()).collect() }
    }

    pub fn degree(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }
}
