//! Breaking, distinguishing colourings, determining sets and cost numbers.
//!
//! Every search here runs over an explicit automorphism group. Minimum
//! subset searches (determining number, cost number) enumerate subsets by
//! increasing size and keep only candidates that can be the lexicographically
//! least member of their orbit: each newly added vertex must be the least
//! point of its orbit under the pointwise stabilizer of the vertices already
//! chosen.

use crate::automorphism::{automorphism_group_with, AutConfig};
use crate::error::{Error, Result};
use crate::graph::{bits, Graph};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// Total map from vertices to colours `0..k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    colors: Vec<usize>,
    k: usize,
}

impl Coloring {
    pub fn new(colors: Vec<usize>, k: usize) -> Result<Self> {
        if let Some(&c) = colors.iter().find(|&&c| c >= k) {
            return Err(Error::Argument(format!("colour {c} not below {k}")));
        }
        Ok(Coloring { colors, k })
    }

    pub fn monochrome(n: usize) -> Self {
        Coloring { colors: vec![0; n], k: 1 }
    }

    /// Two colours: members of `class` get colour 1, everything else 0.
    pub fn from_class(n: usize, class: &[usize]) -> Result<Self> {
        let mut colors = vec![0; n];
        for &v in class {
            if v >= n {
                return Err(Error::Index { index: v, n });
            }
            colors[v] = 1;
        }
        Ok(Coloring { colors, k: 2 })
    }

    pub fn degree(&self) -> usize {
        self.colors.len()
    }

    pub fn num_colors(&self) -> usize {
        self.k
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    /// Vertices of each colour, one list per colour.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.k];
        for (v, &c) in self.colors.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    /// The colouring restricted to `vertices`, renumbered in ascending order.
    pub fn restrict(&self, vertices: &[usize]) -> Coloring {
        let mut keep = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        Coloring { colors: keep.iter().map(|&v| self.colors[v]).collect(), k: self.k }
    }
}

/// Limits on search effort. Exceeding one yields [`Error::BudgetExceeded`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    /// Candidate subsets tested by the determining and cost searches.
    pub subset_tests: u64,
    /// Partial colourings visited by the distinguishing-number search.
    pub coloring_nodes: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { subset_tests: 100_000_000, coloring_nodes: 100_000_000 }
    }
}

fn same_degree(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::Degree { left, right })
    }
}

fn check_subset(n: usize, set: &[usize]) -> Result<()> {
    match set.iter().find(|&&v| v >= n) {
        Some(&v) => Err(Error::Index { index: v, n }),
        None => Ok(()),
    }
}

/// Some cycle of `p` of length at least two carries two different colours.
pub fn is_broken(p: &Permutation, c: &Coloring) -> Result<bool> {
    same_degree(p.degree(), c.degree())?;
    Ok(p.nontrivial_cycles().iter().any(|cycle| cycle.iter().any(|&v| c.color(v) != c.color(cycle[0]))))
}

/// `c(p(v)) = c(v)` for every vertex.
pub fn preserves(p: &Permutation, c: &Coloring) -> Result<bool> {
    same_degree(p.degree(), c.degree())?;
    Ok((0..p.degree()).all(|v| c.color(p.apply(v)) == c.color(v)))
}

/// Every non-identity element of `aut` is broken by `c`.
pub fn is_distinguishing(aut: &PermGroup, c: &Coloring) -> Result<bool> {
    same_degree(aut.degree(), c.degree())?;
    for p in aut.nontrivial() {
        if !is_broken(p, c)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Same predicate as [`is_distinguishing`], computed as "no non-identity
/// element preserves the colouring".
pub fn is_distinguishing_direct(aut: &PermGroup, c: &Coloring) -> Result<bool> {
    same_degree(aut.degree(), c.degree())?;
    for p in aut.nontrivial() {
        if preserves(p, c)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn distinguishing_number(g: &Graph) -> Result<(usize, Coloring)> {
    let aut = automorphism_group_with(g, AutConfig::default())?;
    distinguishing_number_in(&aut, SearchBudget::default())
}

/// Least `k` admitting a distinguishing `k`-colouring, with a witness.
///
/// Colours are assigned in vertex order, and colour `c` may be used at a
/// vertex only if `c - 1` was used earlier, since renaming colours maps
/// distinguishing colourings to distinguishing colourings. A partial
/// colouring is abandoned as soon as some non-identity element whose
/// support is fully coloured preserves it.
pub fn distinguishing_number_in(aut: &PermGroup, budget: SearchBudget) -> Result<(usize, Coloring)> {
    let n = aut.degree();
    if aut.is_trivial() {
        return Ok((1, Coloring::monochrome(n)));
    }
    // elements grouped by their largest moved vertex
    let mut closing: Vec<Vec<&Permutation>> = vec![Vec::new(); n];
    for p in aut.nontrivial() {
        let last = (0..n).rev().find(|&v| !p.fixes(v)).expect("non-identity moves a vertex");
        closing[last].push(p);
    }
    let mut nodes = 0u64;
    for k in 2..=n {
        let mut colors = vec![0usize; n];
        if color_dfs(0, 0, k, &closing, &mut colors, &mut nodes, budget.coloring_nodes)? {
            return Ok((k, Coloring { colors, k }));
        }
    }
    unreachable!("n distinct colours always distinguish")
}

fn color_dfs(
    v: usize,
    used: usize,
    k: usize,
    closing: &[Vec<&Permutation>],
    colors: &mut [usize],
    nodes: &mut u64,
    limit: u64,
) -> Result<bool> {
    if v == colors.len() {
        return Ok(true);
    }
    for c in 0..k.min(used + 1) {
        *nodes += 1;
        if *nodes > limit {
            return Err(Error::BudgetExceeded(limit));
        }
        colors[v] = c;
        let preserved = closing[v].iter().any(|p| (0..=v).all(|u| colors[p.apply(u)] == colors[u]));
        if !preserved && color_dfs(v + 1, used.max(c + 1), k, closing, colors, nodes, limit)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Only the identity fixes every member of `set`.
pub fn is_determining_set(aut: &PermGroup, set: &[usize]) -> Result<bool> {
    check_subset(aut.degree(), set)?;
    Ok(aut.nontrivial().iter().all(|p| set.iter().any(|&v| !p.fixes(v))))
}

/// `set` is a determining set whose setwise stabilizer fixes it pointwise,
/// so colouring `set` one colour and the rest another is distinguishing.
pub fn is_distinguishing_class(aut: &PermGroup, set: &[usize]) -> Result<bool> {
    if !is_determining_set(aut, set)? {
        return Ok(false);
    }
    let setwise = aut.setwise_stabilizer(set)?;
    Ok(setwise.elements().iter().all(|p| set.iter().all(|&v| p.fixes(v))))
}

pub fn determining_number(g: &Graph) -> Result<(usize, Vec<usize>)> {
    let aut = automorphism_group_with(g, AutConfig::default())?;
    determining_number_in(&aut, SearchBudget::default())
}

/// Minimum size of a determining set, with a witness. Zero iff the group
/// is trivial.
pub fn determining_number_in(aut: &PermGroup, budget: SearchBudget) -> Result<(usize, Vec<usize>)> {
    let mut search = SubsetSearch::new(aut, budget.subset_tests)?;
    for k in 0..=aut.degree() {
        if let Some(set) = search.find(k, |_, stab| stab.len() == 1)? {
            return Ok((k, set));
        }
    }
    unreachable!("the full vertex set is determining")
}

/// Cost number with a witness class. `None` when the graph is not
/// 2-distinguishable; `Some((0, []))` when the group is trivial.
pub fn cost_number(g: &Graph) -> Result<Option<(usize, Vec<usize>)>> {
    let aut = automorphism_group_with(g, AutConfig::default())?;
    cost_number_in(&aut, 1, SearchBudget::default())
}

/// Cost number searching class sizes from `min_size` upward. Any lower
/// bound is valid; `Det(G)` is the natural one.
pub fn cost_number_in(aut: &PermGroup, min_size: usize, budget: SearchBudget) -> Result<Option<(usize, Vec<usize>)>> {
    if aut.is_trivial() {
        return Ok(Some((0, Vec::new())));
    }
    let n = aut.degree();
    let nontrivial = aut.nontrivial();
    let mut search = SubsetSearch::new(aut, budget.subset_tests)?;
    // the complement of a distinguishing class is one too, so n/2 suffices
    for k in min_size.max(1)..=n / 2 {
        let found =
            search.find(k, |mask, stab| stab.len() == 1 && nontrivial.iter().all(|p| image_mask(p, mask) != mask))?;
        if let Some(set) = found {
            return Ok(Some((k, set)));
        }
    }
    Ok(None)
}

fn image_mask(p: &Permutation, mask: u64) -> u64 {
    bits(mask).fold(0, |acc, v| acc | 1 << p.apply(v))
}

/// Orbit-pruned enumeration of `k`-subsets over a group of degree <= 64.
struct SubsetSearch<'a> {
    aut: &'a PermGroup,
    tests: u64,
    limit: u64,
}

impl<'a> SubsetSearch<'a> {
    fn new(aut: &'a PermGroup, limit: u64) -> Result<Self> {
        if aut.degree() > 64 {
            return Err(Error::UnsupportedSize { size: aut.degree(), limit: 64 });
        }
        Ok(SubsetSearch { aut, tests: 0, limit })
    }

    /// First `k`-subset (in search order) accepted by `accept`, which sees
    /// the subset as a bitmask and its pointwise stabilizer.
    fn find<F>(&mut self, k: usize, accept: F) -> Result<Option<Vec<usize>>>
    where
        F: Fn(u64, &[&Permutation]) -> bool,
    {
        let stab: Vec<&Permutation> = self.aut.elements().iter().collect();
        let mut chosen = Vec::with_capacity(k);
        if self.dfs(k, 0, &stab, &mut chosen, &accept)? {
            Ok(Some(chosen))
        } else {
            Ok(None)
        }
    }

    fn dfs<F>(
        &mut self,
        k: usize,
        start: usize,
        stab: &[&Permutation],
        chosen: &mut Vec<usize>,
        accept: &F,
    ) -> Result<bool>
    where
        F: Fn(u64, &[&Permutation]) -> bool,
    {
        if chosen.len() == k {
            self.tests += 1;
            if self.tests > self.limit {
                return Err(Error::BudgetExceeded(self.limit));
            }
            let mask = chosen.iter().fold(0u64, |acc, &v| acc | 1 << v);
            return Ok(accept(mask, stab));
        }
        let n = self.aut.degree();
        let remaining = k - chosen.len();
        for v in start..=n - remaining {
            if stab.iter().any(|p| p.apply(v) < v) {
                continue;
            }
            let next: Vec<&Permutation> = stab.iter().copied().filter(|p| p.fixes(v)).collect();
            chosen.push(v);
            if self.dfs(k, v + 1, &next, chosen, accept)? {
                return Ok(true);
            }
            chosen.pop();
        }
        Ok(false)
    }
}

/// Ordered neighbour-non-neighbour pairs of `{v1, v2}`: `(n1, n2)` with
/// `n1 ~ v1`, `n2 ~ v2`, `n1 ≁ v2`, `n2 ≁ v1`, all four vertices distinct.
/// The mirrored orientation of the definition shows up as the swapped pair.
pub fn nn_pairs(g: &Graph, v1: usize, v2: usize) -> Result<Vec<(usize, usize)>> {
    let n = g.n();
    check_subset(n, &[v1, v2])?;
    if v1 == v2 {
        return Err(Error::Argument(format!("nn_pairs needs two distinct vertices, got {v1} twice")));
    }
    let outside = !(1u64 << v1 | 1u64 << v2);
    let first = g.row(v1) & !g.row(v2) & outside;
    let second = g.row(v2) & !g.row(v1) & outside;
    let mut pairs = Vec::new();
    for n1 in bits(first) {
        for n2 in bits(second) {
            pairs.push((n1, n2));
        }
    }
    for n1 in bits(second) {
        for n2 in bits(first) {
            pairs.push((n1, n2));
        }
    }
    pairs.sort_unstable();
    Ok(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphism::automorphism_group;
    use crate::family::{generate_family, FamilyKind, FamilySpec};

    fn family(kind: FamilyKind, p: usize) -> Graph {
        generate_family(FamilySpec::new(kind, p).unwrap()).unwrap()
    }

    fn net() -> Graph {
        Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)]).unwrap()
    }

    fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn broken_examples() {
        let p = cyc(4, &[&[0, 1], &[2, 3]]);
        assert!(is_broken(&p, &Coloring::new(vec![0, 0, 0, 1], 2).unwrap()).unwrap());
        assert!(!is_broken(&cyc(4, &[&[0, 1]]), &Coloring::monochrome(4)).unwrap());
        assert!(!is_broken(&Permutation::identity(4), &Coloring::new(vec![0, 1, 2, 3], 4).unwrap()).unwrap());
        assert!(is_broken(&p, &Coloring::monochrome(3)).is_err());
    }

    #[test]
    fn distinguishing_examples() {
        let p4 = automorphism_group(&family(FamilyKind::Path, 4)).unwrap();
        assert!(is_distinguishing(&p4, &Coloring::from_class(4, &[0]).unwrap()).unwrap());
        let k3 = automorphism_group(&family(FamilyKind::Complete, 3)).unwrap();
        assert!(!is_distinguishing(&k3, &Coloring::from_class(3, &[0]).unwrap()).unwrap());
        let c4 = automorphism_group(&family(FamilyKind::Cycle, 4)).unwrap();
        for bits in 0..16usize {
            let colors = (0..4).map(|v| bits >> v & 1).collect();
            assert!(!is_distinguishing(&c4, &Coloring::new(colors, 2).unwrap()).unwrap());
        }
    }

    #[test]
    fn distinguishing_numbers() {
        assert_eq!(distinguishing_number(&family(FamilyKind::Cycle, 5)).unwrap().0, 3);
        assert_eq!(distinguishing_number(&family(FamilyKind::Complete, 3)).unwrap().0, 3);
        assert_eq!(distinguishing_number(&net()).unwrap().0, 2);
        for n in 1..=6 {
            let (d, w) = distinguishing_number(&family(FamilyKind::Complete, n)).unwrap();
            assert_eq!(d, n);
            assert_eq!(w.num_colors(), n);
        }
        assert_eq!(distinguishing_number(&Graph::empty(1).unwrap()).unwrap().0, 1);
    }

    #[test]
    fn coloring_budget() {
        let aut = automorphism_group(&family(FamilyKind::Complete, 6)).unwrap();
        let budget = SearchBudget { subset_tests: 10, coloring_nodes: 10 };
        assert_eq!(distinguishing_number_in(&aut, budget).unwrap_err(), Error::BudgetExceeded(10));
    }

    #[test]
    fn determining_examples() {
        let p4 = automorphism_group(&family(FamilyKind::Path, 4)).unwrap();
        assert!(is_determining_set(&p4, &[0]).unwrap());
        let c4 = automorphism_group(&family(FamilyKind::Cycle, 4)).unwrap();
        assert!(!is_determining_set(&c4, &[0]).unwrap());
        let k3 = automorphism_group(&family(FamilyKind::Complete, 3)).unwrap();
        assert!(is_determining_set(&k3, &[0, 1]).unwrap());
        assert!(is_determining_set(&k3, &[3]).is_err());
    }

    #[test]
    fn determining_numbers() {
        let asym = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (4, 5), (3, 5)]).unwrap();
        if automorphism_group(&asym).unwrap().is_trivial() {
            assert_eq!(determining_number(&asym).unwrap(), (0, vec![]));
        }
        assert_eq!(determining_number(&Graph::empty(1).unwrap()).unwrap().0, 0);
        assert_eq!(determining_number(&family(FamilyKind::CliqueWithTails, 2)).unwrap().0, 3);
        assert_eq!(determining_number(&net()).unwrap().0, 2);
        assert_eq!(determining_number(&family(FamilyKind::Complete, 5)).unwrap().0, 4);
    }

    #[test]
    fn class_examples() {
        let p4 = automorphism_group(&family(FamilyKind::Path, 4)).unwrap();
        assert!(is_distinguishing_class(&p4, &[0]).unwrap());
        let c4 = automorphism_group(&family(FamilyKind::Cycle, 4)).unwrap();
        for mask in 0..16usize {
            let set: Vec<usize> = (0..4).filter(|v| mask >> v & 1 == 1).collect();
            assert!(!is_distinguishing_class(&c4, &set).unwrap());
        }
        let kt = automorphism_group(&family(FamilyKind::CliqueWithTails, 2)).unwrap();
        assert_eq!(kt.order(), 24);
        assert!(is_distinguishing_class(&kt, &[2, 3, 5, 7]).unwrap());
    }

    #[test]
    fn cost_numbers() {
        for n in 2..=8 {
            assert_eq!(cost_number(&family(FamilyKind::Path, n)).unwrap().unwrap().0, 1);
        }
        let (rho, class) = cost_number(&family(FamilyKind::CliqueWithTails, 2)).unwrap().unwrap();
        assert_eq!(rho, 4);
        let kt = automorphism_group(&family(FamilyKind::CliqueWithTails, 2)).unwrap();
        assert!(is_distinguishing_class(&kt, &class).unwrap());
        assert_eq!(cost_number(&family(FamilyKind::Cycle, 4)).unwrap(), None);
        assert_eq!(cost_number(&Graph::empty(1).unwrap()).unwrap(), Some((0, vec![])));
    }

    #[test]
    fn nn_pair_examples() {
        let c4 = family(FamilyKind::Cycle, 4);
        assert!(nn_pairs(&c4, 0, 1).unwrap().contains(&(3, 2)));
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(nn_pairs(&star, 1, 2).unwrap().is_empty());
        let p4 = family(FamilyKind::Path, 4);
        assert_eq!(nn_pairs(&p4, 1, 2).unwrap(), vec![(0, 3), (3, 0)]);
        assert!(matches!(nn_pairs(&p4, 1, 1), Err(Error::Argument(_))));
        assert!(nn_pairs(&p4, 1, 4).is_err());
    }

    #[test]
    fn coloring_helpers() {
        let c = Coloring::new(vec![1, 0, 1, 2], 3).unwrap();
        assert_eq!(c.classes(), vec![vec![1], vec![0, 2], vec![3]]);
        assert_eq!(c.restrict(&[3, 0]).colors(), &[1, 2]);
        assert!(Coloring::new(vec![0, 2], 2).is_err());
    }
}
