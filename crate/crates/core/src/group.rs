//! Permutation groups stored as explicit, sorted element lists.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::perm::{Labeling, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PermGroup {
    degree: usize,
    // sorted ascending by image array, so the identity comes first
    elements: Vec<Permutation>,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        PermGroup { degree, elements: vec![Permutation::identity(degree)] }
    }

    /// Wraps an element list after checking degrees, duplicates and the
    /// presence of the identity. Closure is not re-checked here; see
    /// [`PermGroup::is_closed`].
    pub fn from_elements(degree: usize, mut elements: Vec<Permutation>) -> Result<Self> {
        if let Some(p) = elements.iter().find(|p| p.degree() != degree) {
            return Err(Error::Degree { left: degree, right: p.degree() });
        }
        elements.sort_unstable();
        let before = elements.len();
        elements.dedup();
        if elements.len() != before {
            return Err(Error::Argument("duplicate group elements".into()));
        }
        if elements.first().is_none_or(|e| !e.is_identity()) {
            return Err(Error::Argument("element list lacks the identity".into()));
        }
        Ok(PermGroup { degree, elements })
    }

    pub(crate) fn from_sorted_unchecked(degree: usize, elements: Vec<Permutation>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        PermGroup { degree, elements }
    }

    /// The group generated by `generators`, enumerated breadth-first.
    pub fn generate(degree: usize, generators: &[Permutation], cap: usize) -> Result<Self> {
        if let Some(p) = generators.iter().find(|p| p.degree() != degree) {
            return Err(Error::Degree { left: degree, right: p.degree() });
        }
        let identity = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::from([identity.clone()]);
        let mut queue = VecDeque::from([identity]);
        while let Some(p) = queue.pop_front() {
            for g in generators {
                let q = g.compose_unchecked(&p);
                if seen.insert(q.clone()) {
                    if seen.len() > cap {
                        return Err(Error::GroupTooLarge(cap));
                    }
                    queue.push_back(q);
                }
            }
        }
        let mut elements: Vec<Permutation> = seen.into_iter().collect();
        elements.sort_unstable();
        Ok(PermGroup { degree, elements })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    /// Elements other than the identity.
    pub fn nontrivial(&self) -> &[Permutation] {
        &self.elements[1..]
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    /// Closed under composition and inverses. Quadratic in the order.
    pub fn is_closed(&self) -> bool {
        self.elements.iter().all(|a| {
            self.contains(&a.inverse()) && self.elements.iter().all(|b| self.contains(&a.compose_unchecked(b)))
        })
    }

    /// Lagrange: the order divides `degree!`.
    pub fn order_divides_factorial(&self) -> bool {
        let mut rest = self.order();
        for k in 1..=self.degree {
            rest /= gcd(rest, k);
        }
        rest == 1
    }

    /// Finest partition of `0..degree` such that every element maps each
    /// block into itself. Blocks are sorted and ordered by least member.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.degree;
        let mut block = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if block[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            block[start] = id;
            let mut members = vec![start];
            let mut k = 0;
            while k < members.len() {
                let v = members[k];
                for g in &self.elements {
                    let w = g.apply(v);
                    if block[w] == usize::MAX {
                        block[w] = id;
                        members.push(w);
                    }
                }
                k += 1;
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    fn check_set(&self, set: &[usize]) -> Result<()> {
        match set.iter().find(|&&v| v >= self.degree) {
            Some(&v) => Err(Error::Index { index: v, n: self.degree }),
            None => Ok(()),
        }
    }

    /// Elements fixing every member of `set`.
    pub fn pointwise_stabilizer(&self, set: &[usize]) -> Result<PermGroup> {
        self.check_set(set)?;
        Ok(self.filter(|g| set.iter().all(|&v| g.fixes(v))))
    }

    /// Elements mapping `set` onto itself.
    pub fn setwise_stabilizer(&self, set: &[usize]) -> Result<PermGroup> {
        self.check_set(set)?;
        let mut member = vec![false; self.degree];
        for &v in set {
            member[v] = true;
        }
        Ok(self.filter(|g| set.iter().all(|&v| member[g.apply(v)])))
    }

    fn filter(&self, keep: impl Fn(&Permutation) -> bool) -> PermGroup {
        let elements = self.elements.iter().filter(|g| keep(g)).cloned().collect();
        PermGroup::from_sorted_unchecked(self.degree, elements)
    }

    /// Sorted multiset of element cycle types.
    pub fn cycle_type_multiset(&self) -> Vec<Vec<usize>> {
        let mut types: Vec<Vec<usize>> = self.elements.iter().map(Permutation::cycle_type).collect();
        types.sort_unstable();
        types
    }

    /// The automorphism representation under `labeling`: every element in
    /// labelled cycle notation, in element order.
    pub fn representation(&self, labeling: &Labeling) -> Result<Vec<String>> {
        self.elements.iter().map(|g| g.relabel(labeling)).collect()
    }

    /// `sigma · G · sigma⁻¹`.
    pub fn conjugate(&self, sigma: &Permutation) -> Result<PermGroup> {
        if sigma.degree() != self.degree {
            return Err(Error::Degree { left: self.degree, right: sigma.degree() });
        }
        let inv = sigma.inverse();
        let mut elements: Vec<Permutation> =
            self.elements.iter().map(|g| sigma.compose_unchecked(&g.compose_unchecked(&inv))).collect();
        elements.sort_unstable();
        Ok(PermGroup::from_sorted_unchecked(self.degree, elements))
    }

    /// A generating set, chosen greedily from elements in order of
    /// decreasing support.
    pub fn generators(&self) -> Vec<Permutation> {
        let mut candidates: Vec<&Permutation> = self.nontrivial().iter().collect();
        candidates.sort_by_key(|g| std::cmp::Reverse(g.support_size()));
        let mut gens: Vec<Permutation> = Vec::new();
        let mut span: HashSet<Permutation> = HashSet::from([Permutation::identity(self.degree)]);
        for g in candidates {
            if span.len() == self.order() {
                break;
            }
            if span.contains(g) {
                continue;
            }
            gens.push(g.clone());
            span = PermGroup::generate(self.degree, &gens, usize::MAX)
                .expect("generators share the group degree")
                .elements
                .into_iter()
                .collect();
        }
        gens
    }
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    fn dihedral4() -> PermGroup {
        // Aut(C4) for the cycle 0-1-2-3-0
        PermGroup::generate(4, &[cyc(4, &[&[0, 1, 2, 3]]), cyc(4, &[&[1, 3]])], 100).unwrap()
    }

    fn symmetric(n: usize) -> PermGroup {
        let all: Vec<usize> = (0..n).collect();
        PermGroup::generate(n, &[cyc(n, &[&[0, 1]]), cyc(n, &[&all])], 1_000_000).unwrap()
    }

    #[test]
    fn generated_groups() {
        let d4 = dihedral4();
        assert_eq!(d4.order(), 8);
        assert!(d4.is_closed());
        assert!(d4.order_divides_factorial());
        assert!(d4.elements()[0].is_identity());
        assert_eq!(symmetric(4).order(), 24);
        assert!(matches!(
            PermGroup::generate(6, symmetric(6).generators().as_slice(), 100),
            Err(Error::GroupTooLarge(100))
        ));
    }

    #[test]
    fn orbit_examples() {
        assert_eq!(symmetric(4).orbits(), vec![vec![0, 1, 2, 3]]);
        let p3 = PermGroup::generate(3, &[cyc(3, &[&[0, 2]])], 10).unwrap();
        assert_eq!(p3.orbits(), vec![vec![0, 2], vec![1]]);
        assert_eq!(PermGroup::trivial(3).orbits(), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn pointwise_examples() {
        let s3 = symmetric(3);
        assert!(s3.pointwise_stabilizer(&[0, 1]).unwrap().is_trivial());
        let stab = dihedral4().pointwise_stabilizer(&[0]).unwrap();
        assert_eq!(stab.elements(), &[Permutation::identity(4), cyc(4, &[&[1, 3]])]);
        assert_eq!(dihedral4().pointwise_stabilizer(&[]).unwrap(), dihedral4());
        assert!(s3.pointwise_stabilizer(&[3]).is_err());
    }

    #[test]
    fn setwise_examples() {
        // filtering all 8 elements: the rotations by one step move {0,2} to {1,3}
        let diag = dihedral4().setwise_stabilizer(&[0, 2]).unwrap();
        let d4 = dihedral4();
        let brute = d4.elements().iter().filter(|g| {
            let mut img = [g.apply(0), g.apply(2)];
            img.sort();
            img == [0, 2]
        });
        assert_eq!(diag.order(), brute.count());
        assert_eq!(diag.order(), 4);
        let p3 = PermGroup::generate(3, &[cyc(3, &[&[0, 2]])], 10).unwrap();
        assert_eq!(p3.setwise_stabilizer(&[0, 2]).unwrap().order(), 2);
        assert_eq!(dihedral4().setwise_stabilizer(&[0, 1, 2, 3]).unwrap(), dihedral4());
        assert_eq!(dihedral4().setwise_stabilizer(&[0, 1]).unwrap().order(), 2);
    }

    #[test]
    fn from_elements_validation() {
        let t = cyc(3, &[&[0, 1]]);
        assert!(PermGroup::from_elements(3, vec![t.clone()]).is_err());
        assert!(PermGroup::from_elements(3, vec![Permutation::identity(3), t.clone(), t.clone()]).is_err());
        let g = PermGroup::from_elements(3, vec![t.clone(), Permutation::identity(3)]).unwrap();
        assert!(g.contains(&t));
        assert!(g.is_closed());
        let not_closed = PermGroup::from_elements(3, vec![Permutation::identity(3), cyc(3, &[&[0, 1, 2]])]).unwrap();
        assert!(!not_closed.is_closed());
    }

    #[test]
    fn generators_span_the_group() {
        for g in [dihedral4(), symmetric(5), PermGroup::trivial(4)] {
            let gens = g.generators();
            assert_eq!(PermGroup::generate(g.degree(), &gens, usize::MAX).unwrap(), g);
        }
    }

    #[test]
    fn conjugation_preserves_order() {
        let sigma = cyc(4, &[&[0, 1]]);
        let c = dihedral4().conjugate(&sigma).unwrap();
        assert_eq!(c.order(), 8);
        assert_eq!(c.cycle_type_multiset(), dihedral4().cycle_type_multiset());
        assert!(c.is_closed());
    }

    #[test]
    fn representation_of_order_two() {
        let g = PermGroup::generate(4, &[cyc(4, &[&[0, 1], &[2, 3]])], 10).unwrap();
        let labels = Labeling::new(["1a", "2a", "1b", "2b"]).unwrap();
        assert_eq!(g.representation(&labels).unwrap(), vec!["(1a)(2a)(1b)(2b)", "(1a,2a)(1b,2b)"]);
        // swapping two labels changes the representation
        let swapped = Labeling::new(["1a", "1b", "2a", "2b"]).unwrap();
        assert_ne!(g.representation(&labels).unwrap(), g.representation(&swapped).unwrap());
    }
}
