//! Distinguishable equivalence: two graphs are equivalent when some
//! bijection of their vertex sets conjugates one automorphism group onto the
//! other, so that suitable labelings make the two representations equal as
//! sets of labelled cycle expressions.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::automorphism::{automorphism_group_with, AutConfig};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::PermGroup;
use crate::perm::Permutation;

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// Same degree and identical element sets.
pub fn representations_equal(a: &PermGroup, b: &PermGroup) -> bool {
    a.degree() == b.degree() && a.elements() == b.elements()
}

/// Outcome of comparing two groups, with the first invariant that failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// `sigma · A · sigma⁻¹ = B`.
    Equivalent(Permutation),
    DegreeMismatch {
        left: usize,
        right: usize,
    },
    OrderMismatch {
        left: usize,
        right: usize,
    },
    CycleTypeMismatch,
    VertexProfileMismatch,
    SearchExhausted,
}

impl Verdict {
    pub fn bijection(&self) -> Option<&Permutation> {
        match self {
            Verdict::Equivalent(s) => Some(s),
            _ => None,
        }
    }

    pub fn reason(&self) -> String {
        match self {
            Verdict::Equivalent(_) => "equivalent".into(),
            Verdict::DegreeMismatch { left, right } => format!("vertex count mismatch ({left} vs {right})"),
            Verdict::OrderMismatch { left, right } => format!("order mismatch ({left} vs {right})"),
            Verdict::CycleTypeMismatch => "cycle-type mismatch".into(),
            Verdict::VertexProfileMismatch => "vertex cycle-profile mismatch".into(),
            Verdict::SearchExhausted => "search exhausted".into(),
        }
    }
}

/// Per-vertex multiset of lengths of the cycles through it, over all
/// elements. Conjugation by `sigma` carries the profile of `v` to `sigma(v)`.
fn vertex_profiles(group: &PermGroup) -> Vec<Vec<usize>> {
    (0..group.degree())
        .map(|v| {
            let mut lens: Vec<usize> = group.elements().iter().map(|p| p.cycle_len_at(v)).collect();
            lens.sort_unstable();
            lens
        })
        .collect()
}

fn sorted<T: Ord + Clone>(items: &[T]) -> Vec<T> {
    let mut v = items.to_vec();
    v.sort_unstable();
    v
}

/// Searches for a bijection conjugating `a` onto `b`.
///
/// It suffices that every generator of `a` lands in `b` and the orders agree.
/// Vertices are assigned one at a time; each generator keeps the list of
/// `b`-elements of its cycle type still consistent with the partial
/// bijection, and an empty list prunes the branch.
pub fn compare_groups(a: &PermGroup, b: &PermGroup, node_budget: u64) -> Result<Verdict> {
    if a.degree() != b.degree() {
        return Ok(Verdict::DegreeMismatch { left: a.degree(), right: b.degree() });
    }
    if a.order() != b.order() {
        return Ok(Verdict::OrderMismatch { left: a.order(), right: b.order() });
    }
    let n = a.degree();
    if a.is_trivial() || a == b {
        return Ok(Verdict::Equivalent(Permutation::identity(n)));
    }
    if a.cycle_type_multiset() != b.cycle_type_multiset() {
        return Ok(Verdict::CycleTypeMismatch);
    }
    let prof_a = vertex_profiles(a);
    let prof_b = vertex_profiles(b);
    if sorted(&prof_a) != sorted(&prof_b) {
        return Ok(Verdict::VertexProfileMismatch);
    }

    let gens = a.generators();
    let mut by_type: HashMap<Vec<usize>, Vec<&Permutation>> = HashMap::new();
    for p in b.elements() {
        by_type.entry(p.cycle_type()).or_default().push(p);
    }
    let candidates: Vec<Vec<&Permutation>> = gens.iter().map(|g| by_type[&g.cycle_type()].clone()).collect();

    let order = assignment_order(a, &gens);
    let options: Vec<Vec<usize>> =
        order.iter().map(|&v| (0..n).filter(|&w| prof_b[w] == prof_a[v]).collect()).collect();

    let mut search = ConjugacySearch {
        gens: &gens,
        inverses: gens.iter().map(Permutation::inverse).collect(),
        order: &order,
        options: &options,
        sigma: vec![usize::MAX; n],
        taken: vec![false; n],
        nodes: 0,
        budget: node_budget,
        target: b,
        source: a,
    };
    match search.run(0, candidates)? {
        Some(sigma) => Ok(Verdict::Equivalent(sigma)),
        None => Ok(Verdict::SearchExhausted),
    }
}

/// Moved vertices first, grown along generator images so constraints bind
/// early; vertices fixed by the whole group go last.
fn assignment_order(group: &PermGroup, gens: &[Permutation]) -> Vec<usize> {
    let n = group.degree();
    let moved: Vec<bool> = (0..n).map(|v| gens.iter().any(|g| !g.fixes(v))).collect();
    let mut support: Vec<usize> = (0..n).filter(|&v| moved[v]).collect();
    support.sort_by_key(|&v| (std::cmp::Reverse(gens.iter().filter(|g| !g.fixes(v)).count()), v));
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for &seed in &support {
        if placed[seed] {
            continue;
        }
        placed[seed] = true;
        order.push(seed);
        let mut k = order.len() - 1;
        while k < order.len() {
            let v = order[k];
            for g in gens {
                let w = g.apply(v);
                if !placed[w] {
                    placed[w] = true;
                    order.push(w);
                }
            }
            k += 1;
        }
    }
    order.extend((0..n).filter(|&v| !moved[v]));
    order
}

struct ConjugacySearch<'a> {
    gens: &'a [Permutation],
    inverses: Vec<Permutation>,
    order: &'a [usize],
    options: &'a [Vec<usize>],
    sigma: Vec<usize>,
    taken: Vec<bool>,
    nodes: u64,
    budget: u64,
    target: &'a PermGroup,
    source: &'a PermGroup,
}

impl<'a> ConjugacySearch<'a> {
    fn run(&mut self, depth: usize, candidates: Vec<Vec<&'a Permutation>>) -> Result<Option<Permutation>> {
        if depth == self.order.len() {
            let sigma = Permutation::from_images(&self.sigma).expect("assignment is a bijection");
            return Ok((self.source.conjugate(&sigma)? == *self.target).then_some(sigma));
        }
        let v = self.order[depth];
        for &w in &self.options[depth] {
            if self.taken[w] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded(self.budget));
            }
            self.sigma[v] = w;
            self.taken[w] = true;
            let mut next = Vec::with_capacity(candidates.len());
            let mut alive = true;
            for (i, gen) in self.gens.iter().enumerate() {
                let fwd = self.sigma[gen.apply(v)];
                let back = self.inverses[i].apply(v);
                let back_img = self.sigma[back];
                let kept: Vec<&Permutation> = candidates[i]
                    .iter()
                    .copied()
                    .filter(|b| {
                        (fwd == usize::MAX || b.apply(w) == fwd) && (back_img == usize::MAX || b.apply(back_img) == w)
                    })
                    .collect();
                if kept.is_empty() {
                    alive = false;
                    break;
                }
                next.push(kept);
            }
            if alive {
                if let Some(sigma) = self.run(depth + 1, next)? {
                    return Ok(Some(sigma));
                }
            }
            self.sigma[v] = usize::MAX;
            self.taken[w] = false;
        }
        Ok(None)
    }
}

pub fn distinguishably_equivalent(g1: &Graph, g2: &Graph) -> Result<Option<Permutation>> {
    if g1.n() != g2.n() {
        return Ok(None);
    }
    let a = automorphism_group_with(g1, AutConfig::default())?;
    let b = automorphism_group_with(g2, AutConfig::default())?;
    match compare_groups(&a, &b, DEFAULT_NODE_BUDGET)? {
        Verdict::Equivalent(sigma) => Ok(Some(sigma)),
        _ => Ok(None),
    }
}

/// Partition of a corpus into distinguishable-equivalence classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceClasses {
    /// Corpus indices per class; classes ordered by first member.
    pub classes: Vec<Vec<usize>>,
    /// Pairs whose test ran out of budget.
    pub unresolved: Vec<(usize, usize)>,
}

pub fn equivalence_classes(corpus: &[Graph], node_budget: u64) -> Result<EquivalenceClasses> {
    let groups: Vec<PermGroup> =
        corpus.par_iter().map(|g| automorphism_group_with(g, AutConfig::default())).collect::<Result<_>>()?;
    classes_of_groups(&groups, node_budget)
}

/// Equivalence is transitive, so each graph is tested only against one
/// representative per existing class with the same cheap invariants.
pub fn classes_of_groups(groups: &[PermGroup], node_budget: u64) -> Result<EquivalenceClasses> {
    type Key = (usize, usize, Vec<Vec<usize>>);
    let mut reps: HashMap<Key, Vec<usize>> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut unresolved = Vec::new();
    for (i, g) in groups.iter().enumerate() {
        let key = (g.degree(), g.order(), g.cycle_type_multiset());
        let bucket = reps.entry(key).or_default();
        let mut joined = None;
        for &class in bucket.iter() {
            let rep = classes[class][0];
            match compare_groups(&groups[rep], g, node_budget) {
                Ok(Verdict::Equivalent(_)) => {
                    joined = Some(class);
                    break;
                }
                Ok(_) => {}
                Err(Error::BudgetExceeded(_)) => unresolved.push((rep, i)),
                Err(e) => return Err(e),
            }
        }
        let class = joined.unwrap_or_else(|| {
            classes.push(Vec::new());
            bucket.push(classes.len() - 1);
            classes.len() - 1
        });
        classes[class].push(i);
    }
    Ok(EquivalenceClasses { classes, unresolved })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphism::automorphism_group;
    use crate::enumerate::enumerate_graphs;

    fn g(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn representations() {
        let p3 = automorphism_group(&g(3, &[(0, 1), (1, 2)])).unwrap();
        assert!(representations_equal(&p3, &p3));
        // K2 plus an isolated vertex, with the edge on {0,2}
        let k2 = automorphism_group(&g(3, &[(0, 2)])).unwrap();
        assert!(representations_equal(&p3, &k2));
        let k3 = automorphism_group(&g(3, &[(0, 1), (1, 2), (0, 2)])).unwrap();
        assert!(!representations_equal(&p3, &k3));
    }

    #[test]
    fn self_and_complement() {
        let x = g(5, &[(0, 1), (1, 2), (2, 3), (1, 4)]);
        let sigma = distinguishably_equivalent(&x, &x).unwrap().unwrap();
        assert!(automorphism_group(&x).unwrap().conjugate(&sigma).unwrap() == automorphism_group(&x).unwrap());
        assert!(distinguishably_equivalent(&x, &x.complement()).unwrap().is_some());
    }

    #[test]
    fn path_versus_triangle() {
        let p3 = g(3, &[(0, 1), (1, 2)]);
        let k3 = g(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(distinguishably_equivalent(&p3, &k3).unwrap(), None);
        let a = automorphism_group(&p3).unwrap();
        let b = automorphism_group(&k3).unwrap();
        assert_eq!(compare_groups(&a, &b, 100).unwrap(), Verdict::OrderMismatch { left: 2, right: 6 });
        assert_eq!(distinguishably_equivalent(&p3, &g(4, &[])).unwrap(), None);
    }

    #[test]
    fn relabelled_graph_needs_search() {
        let x = g(7, &[(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5), (5, 6)]);
        let y = x.relabel(&[4, 6, 0, 2, 1, 5, 3]).unwrap();
        let a = automorphism_group(&x).unwrap();
        let b = automorphism_group(&y).unwrap();
        let sigma = compare_groups(&a, &b, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(a.conjugate(sigma.bijection().unwrap()).unwrap(), b);
    }

    #[test]
    fn same_order_different_cycle_types() {
        // P4 swaps two pairs; the paw swaps a single pair
        let p4 = automorphism_group(&g(4, &[(0, 1), (1, 2), (2, 3)])).unwrap();
        let paw = automorphism_group(&g(4, &[(0, 1), (1, 2), (0, 2), (2, 3)])).unwrap();
        assert_eq!(p4.order(), paw.order());
        assert_eq!(compare_groups(&p4, &paw, 1000).unwrap(), Verdict::CycleTypeMismatch);
    }

    #[test]
    fn three_vertex_classes() {
        let corpus = enumerate_graphs(3).unwrap();
        let classes = equivalence_classes(&corpus, DEFAULT_NODE_BUDGET).unwrap();
        assert!(classes.unresolved.is_empty());
        assert_eq!(classes.classes.len(), 2);
        let orders: Vec<Vec<usize>> = classes
            .classes
            .iter()
            .map(|c| c.iter().map(|&i| automorphism_group(&corpus[i]).unwrap().order()).collect())
            .collect();
        assert!(orders.iter().all(|o| o.len() == 2 && o[0] == o[1]));
    }

    #[test]
    fn asymmetric_graphs_share_a_class() {
        let a = g(6, &[(0, 2), (1, 2), (1, 3), (1, 4), (2, 4), (3, 5)]);
        let b = g(6, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (2, 3), (3, 5)]);
        assert!(automorphism_group(&a).unwrap().is_trivial());
        assert!(automorphism_group(&b).unwrap().is_trivial());
        let classes = equivalence_classes(&[a, b], 10).unwrap();
        assert_eq!(classes.classes, vec![vec![0, 1]]);
        assert_eq!(equivalence_classes(&[g(2, &[])], 10).unwrap().classes, vec![vec![0]]);
    }
}
