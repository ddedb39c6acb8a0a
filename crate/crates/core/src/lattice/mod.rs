//! Finite lattices given by an explicit order relation.
//!
//! Elements are addressed by their position in the element list passed to
//! [`Lattice::new`]. That position is the canonical index used everywhere
//! else in the crate, in particular as the coordinate order of multiplicity
//! vectors.

mod catalog;
mod decompose;
mod iso;
mod split;

use std::collections::HashMap;

use crate::error::{BoundKind, Error, Result};

pub use catalog::catalog;
pub use decompose::Decomposition;
pub use split::SplittingPair;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lattice {
    elements: Vec<String>,
    leq: Vec<bool>,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
}

/// A lattice axiom instance that fails, as found by [`Lattice::verify_axioms`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    Order(&'static str, Vec<usize>),
    Bound(&'static str, Vec<usize>),
    Identity(&'static str, Vec<usize>),
}

impl Lattice {
    /// Builds a lattice from element identifiers and an arbitrary relation
    /// whose reflexive-transitive closure is the order.
    pub fn new<S: AsRef<str>>(elements: &[S], order_pairs: &[(S, S)]) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::EmptyLattice);
        }
        let mut index = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.as_ref().to_string(), i).is_some() {
                return Err(Error::DuplicateElement(e.as_ref().to_string()));
            }
        }
        let m = elements.len();
        let mut leq = vec![false; m * m];
        for i in 0..m {
            leq[i * m + i] = true;
        }
        for (a, b) in order_pairs {
            let ia = *index
                .get(a.as_ref())
                .ok_or_else(|| Error::UnknownElement(a.as_ref().to_string()))?;
            let ib = *index
                .get(b.as_ref())
                .ok_or_else(|| Error::UnknownElement(b.as_ref().to_string()))?;
            leq[ia * m + ib] = true;
        }
        for k in 0..m {
            for i in 0..m {
                if !leq[i * m + k] {
                    continue;
                }
                for j in 0..m {
                    if leq[k * m + j] {
                        leq[i * m + j] = true;
                    }
                }
            }
        }
        let names = elements.iter().map(|e| e.as_ref().to_string()).collect();
        Self::from_order(names, leq)
    }

    /// Builds a lattice from an already reflexive and transitive relation.
    pub(crate) fn from_order(elements: Vec<String>, leq: Vec<bool>) -> Result<Self> {
        let m = elements.len();
        for i in 0..m {
            for j in (i + 1)..m {
                if leq[i * m + j] && leq[j * m + i] {
                    return Err(Error::NotAPoset(elements[i].clone(), elements[j].clone()));
                }
            }
        }
        let mut meet = vec![0; m * m];
        let mut join = vec![0; m * m];
        for i in 0..m {
            for j in i..m {
                let lower: Vec<usize> = (0..m).filter(|&k| leq[k * m + i] && leq[k * m + j]).collect();
                let glb = lower
                    .iter()
                    .copied()
                    .find(|&g| lower.iter().all(|&k| leq[k * m + g]))
                    .ok_or_else(|| Error::NotALattice(elements[i].clone(), elements[j].clone(), BoundKind::Meet))?;
                let upper: Vec<usize> = (0..m).filter(|&k| leq[i * m + k] && leq[j * m + k]).collect();
                let lub = upper
                    .iter()
                    .copied()
                    .find(|&g| upper.iter().all(|&k| leq[g * m + k]))
                    .ok_or_else(|| Error::NotALattice(elements[i].clone(), elements[j].clone(), BoundKind::Join))?;
                meet[i * m + j] = glb;
                meet[j * m + i] = glb;
                join[i * m + j] = lub;
                join[j * m + i] = lub;
            }
        }
        let bottom = (0..m).fold(0, |acc, x| meet[acc * m + x]);
        let top = (0..m).fold(0, |acc, x| join[acc * m + x]);
        Ok(Lattice {
            elements,
            leq,
            meet,
            join,
            bottom,
            top,
        })
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn label(&self, x: usize) -> &str {
        &self.elements[x]
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.elements
            .iter()
            .position(|e| e == id)
            .ok_or_else(|| Error::UnknownElement(id.to_string()))
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.size() + y]
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.size() + y]
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.size() + y]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Meet of all given elements; the top element for an empty iterator.
    pub fn meet_all<I: IntoIterator<Item = usize>>(&self, xs: I) -> usize {
        xs.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn join_all<I: IntoIterator<Item = usize>>(&self, xs: I) -> usize {
        xs.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// `x` is covered by `y`.
    pub fn covers(&self, x: usize, y: usize) -> bool {
        self.lt(x, y) && !(0..self.size()).any(|z| self.lt(x, z) && self.lt(z, y))
    }

    pub fn upper_covers(&self, x: usize) -> Vec<usize> {
        (0..self.size()).filter(|&y| self.covers(x, y)).collect()
    }

    pub fn lower_covers(&self, x: usize) -> Vec<usize> {
        (0..self.size()).filter(|&y| self.covers(y, x)).collect()
    }

    /// Covering pairs `(x, y)` with `x` covered by `y`, in index order.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let m = self.size();
        let mut out = Vec::new();
        for x in 0..m {
            for y in 0..m {
                if self.covers(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn atoms(&self) -> Result<Vec<usize>> {
        if self.size() < 2 {
            return Err(Error::TrivialLattice);
        }
        Ok(self.upper_covers(self.bottom))
    }

    pub fn coatoms(&self) -> Result<Vec<usize>> {
        if self.size() < 2 {
            return Err(Error::TrivialLattice);
        }
        Ok(self.lower_covers(self.top))
    }

    /// Length of the longest chain from the bottom to each element.
    pub fn heights(&self) -> Vec<usize> {
        let m = self.size();
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by_key(|&x| (0..m).filter(|&y| self.leq(y, x)).count());
        let mut height = vec![0; m];
        for &x in &order {
            height[x] = (0..m)
                .filter(|&y| self.lt(y, x))
                .map(|y| height[y] + 1)
                .max()
                .unwrap_or(0);
        }
        height
    }

    /// Elements sorted by height, then index: a linear extension of the order.
    pub fn bottom_up(&self) -> Vec<usize> {
        let h = self.heights();
        let mut order: Vec<usize> = (0..self.size()).collect();
        order.sort_by_key(|&x| (h[x], x));
        order
    }

    /// Exhaustively checks the order and operation tables against the
    /// lattice axioms.
    pub fn verify_axioms(&self) -> std::result::Result<(), AxiomViolation> {
        let m = self.size();
        for x in 0..m {
            if !self.leq(x, x) {
                return Err(AxiomViolation::Order("reflexivity", vec![x]));
            }
            if !self.leq(self.bottom, x) || !self.leq(x, self.top) {
                return Err(AxiomViolation::Bound("bounds", vec![x]));
            }
            if self.meet(x, x) != x || self.join(x, x) != x {
                return Err(AxiomViolation::Identity("idempotence", vec![x]));
            }
        }
        for x in 0..m {
            for y in 0..m {
                if x != y && self.leq(x, y) && self.leq(y, x) {
                    return Err(AxiomViolation::Order("antisymmetry", vec![x, y]));
                }
                let (mt, jn) = (self.meet(x, y), self.join(x, y));
                if mt != self.meet(y, x) || jn != self.join(y, x) {
                    return Err(AxiomViolation::Identity("commutativity", vec![x, y]));
                }
                if self.meet(x, jn) != x || self.join(x, mt) != x {
                    return Err(AxiomViolation::Identity("absorption", vec![x, y]));
                }
                if !self.leq(mt, x) || !self.leq(mt, y) || !self.leq(x, jn) || !self.leq(y, jn) {
                    return Err(AxiomViolation::Bound("bound", vec![x, y]));
                }
                for z in 0..m {
                    if self.leq(x, y) && self.leq(y, z) && !self.leq(x, z) {
                        return Err(AxiomViolation::Order("transitivity", vec![x, y, z]));
                    }
                    if self.leq(z, x) && self.leq(z, y) && !self.leq(z, mt) {
                        return Err(AxiomViolation::Bound("greatest lower bound", vec![x, y, z]));
                    }
                    if self.leq(x, z) && self.leq(y, z) && !self.leq(jn, z) {
                        return Err(AxiomViolation::Bound("least upper bound", vec![x, y, z]));
                    }
                    if self.meet(mt, z) != self.meet(x, self.meet(y, z))
                        || self.join(jn, z) != self.join(x, self.join(y, z))
                    {
                        return Err(AxiomViolation::Identity("associativity", vec![x, y, z]));
                    }
                }
            }
        }
        Ok(())
    }

    /// First triple `(x, y, z)` with `x <= z` violating the modular law, in
    /// lexicographic index order.
    pub fn modularity_witness(&self) -> Option<(usize, usize, usize)> {
        let m = self.size();
        for x in 0..m {
            for z in 0..m {
                if !self.leq(x, z) {
                    continue;
                }
                for y in 0..m {
                    if self.join(x, self.meet(y, z)) != self.meet(self.join(x, y), z) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn is_modular(&self) -> bool {
        self.modularity_witness().is_none()
    }

    pub(crate) fn require_modular(&self) -> Result<()> {
        match self.modularity_witness() {
            None => Ok(()),
            Some((x, y, z)) => Err(Error::NotModular(
                self.label(x).to_string(),
                self.label(y).to_string(),
                self.label(z).to_string(),
            )),
        }
    }

    /// The interval `[a, b]` with the induced order; labels are kept.
    pub fn interval(&self, a: usize, b: usize) -> Result<Lattice> {
        if !self.leq(a, b) {
            return Err(Error::NotComparable(
                self.label(a).to_string(),
                self.label(b).to_string(),
            ));
        }
        let members: Vec<usize> = (0..self.size()).filter(|&x| self.leq(a, x) && self.leq(x, b)).collect();
        Ok(self.restrict(&members))
    }

    /// Induced sub-order on `members`, which must be closed under meet and join.
    pub(crate) fn restrict(&self, members: &[usize]) -> Lattice {
        let k = members.len();
        let mut leq = vec![false; k * k];
        for (i, &x) in members.iter().enumerate() {
            for (j, &y) in members.iter().enumerate() {
                leq[i * k + j] = self.leq(x, y);
            }
        }
        let labels = members.iter().map(|&x| self.elements[x].clone()).collect();
        Lattice::from_order(labels, leq).expect("sublattice of a lattice")
    }

    /// Hasse diagram edges as label pairs, in index order.
    pub fn cover_labels(&self) -> Vec<(String, String)> {
        self.cover_pairs()
            .into_iter()
            .map(|(x, y)| (self.elements[x].clone(), self.elements[y].clone()))
            .collect()
    }
}

/// A direct product `left × right` together with its coordinate maps.
///
/// The pair `(x, y)` sits at index `x * right.size() + y` and carries the
/// label `(x,y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductLattice {
    pub lattice: Lattice,
    pub left: Lattice,
    pub right: Lattice,
}

impl ProductLattice {
    pub fn new(left: &Lattice, right: &Lattice) -> Self {
        let (p, q) = (left.size(), right.size());
        let m = p * q;
        let mut labels = Vec::with_capacity(m);
        for x in 0..p {
            for y in 0..q {
                labels.push(format!("({},{})", left.label(x), right.label(y)));
            }
        }
        let mut leq = vec![false; m * m];
        for a in 0..m {
            for b in 0..m {
                leq[a * m + b] = left.leq(a / q, b / q) && right.leq(a % q, b % q);
            }
        }
        let lattice = Lattice::from_order(labels, leq).expect("product of lattices");
        ProductLattice {
            lattice,
            left: left.clone(),
            right: right.clone(),
        }
    }

    pub fn pair(&self, x: usize, y: usize) -> usize {
        x * self.right.size() + y
    }

    pub fn split(&self, a: usize) -> (usize, usize) {
        (a / self.right.size(), a % self.right.size())
    }
}

/// Direct product of two lattices.
pub fn product(l1: &Lattice, l2: &Lattice) -> ProductLattice {
    ProductLattice::new(l1, l2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m3() -> Lattice {
        Lattice::new(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
        )
        .unwrap()
    }

    #[test]
    fn two_element_chain() {
        let l = Lattice::new(&["0", "1"], &[("0", "1")]).unwrap();
        assert_eq!(l.bottom(), 0);
        assert_eq!(l.top(), 1);
        assert_eq!(l.atoms().unwrap(), vec![1]);
        assert_eq!(l.coatoms().unwrap(), vec![0]);
        l.verify_axioms().unwrap();
    }

    #[test]
    fn diamond_operations() {
        let l = m3();
        assert_eq!(l.meet(1, 2), 0);
        assert_eq!(l.join(1, 2), 4);
        assert_eq!(l.atoms().unwrap(), vec![1, 2, 3]);
        assert_eq!(l.coatoms().unwrap(), vec![1, 2, 3]);
        assert!(l.is_modular());
        l.verify_axioms().unwrap();
    }

    #[test]
    fn missing_upper_bound_is_rejected() {
        let err = Lattice::new(&["0", "a", "b", "1"], &[("0", "a"), ("0", "b")]).unwrap_err();
        let Error::NotALattice(x, y, kind) = err else {
            panic!("unexpected {err:?}")
        };
        // Brute-force the given order: the witness pair really lacks the bound.
        let ids = ["0", "a", "b", "1"];
        let leq = |u: &str, v: &str| u == v || (u == "0" && (v == "a" || v == "b"));
        let bounds: Vec<&str> = ids
            .iter()
            .copied()
            .filter(|&u| match kind {
                BoundKind::Join => leq(&x, u) && leq(&y, u),
                BoundKind::Meet => leq(u, &x) && leq(u, &y),
            })
            .collect();
        let extremal = bounds.iter().any(|&g| {
            bounds.iter().all(|&u| match kind {
                BoundKind::Join => leq(g, u),
                BoundKind::Meet => leq(u, g),
            })
        });
        assert!(!extremal);
    }

    #[test]
    fn cycle_is_not_a_poset() {
        let err = Lattice::new(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
        assert!(matches!(err, Error::NotAPoset(..)));
    }

    #[test]
    fn bad_inputs() {
        let empty: [&str; 0] = [];
        assert!(matches!(Lattice::new(&empty, &[]), Err(Error::EmptyLattice)));
        assert!(matches!(
            Lattice::new(&["a", "a"], &[]),
            Err(Error::DuplicateElement(_))
        ));
        assert!(matches!(
            Lattice::new(&["a"], &[("a", "z")]),
            Err(Error::UnknownElement(_))
        ));
    }

    #[test]
    fn pentagon_fails_modularity_on_every_reported_triple() {
        let n5 = Lattice::new(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")],
        )
        .unwrap();
        let (x, y, z) = n5.modularity_witness().unwrap();
        assert!(n5.leq(x, z));
        assert_ne!(n5.join(x, n5.meet(y, z)), n5.meet(n5.join(x, y), z));
        // Enumerate all 125 triples independently of the witness search.
        let failing = (0..5)
            .flat_map(|x| (0..5).flat_map(move |y| (0..5).map(move |z| (x, y, z))))
            .filter(|&(x, y, z)| n5.leq(x, z) && n5.join(x, n5.meet(y, z)) != n5.meet(n5.join(x, y), z))
            .count();
        assert!(failing > 0);
        assert!(!n5.is_modular());
    }

    #[test]
    fn chains_are_modular() {
        for n in 1..6 {
            let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
            let pairs: Vec<(String, String)> = (1..n).map(|i| (names[i - 1].clone(), names[i].clone())).collect();
            let l = Lattice::new(&names, &pairs).unwrap();
            assert!(l.is_modular());
        }
    }

    #[test]
    fn one_element_has_no_atoms() {
        let l = Lattice::new(&["0"], &[]).unwrap();
        assert!(matches!(l.atoms(), Err(Error::TrivialLattice)));
        assert!(matches!(l.coatoms(), Err(Error::TrivialLattice)));
    }

    #[test]
    fn intervals() {
        let l = m3();
        let lower = l.interval(0, 1).unwrap();
        assert_eq!(lower.size(), 2);
        assert_eq!(l.interval(0, 4).unwrap(), l);
        assert!(matches!(l.interval(1, 2), Err(Error::NotComparable(..))));
        let chain = Lattice::new(&["0", "t", "1"], &[("0", "t"), ("t", "1")]).unwrap();
        let upper = chain.interval(1, 2).unwrap();
        assert_eq!(upper.elements(), &["t".to_string(), "1".to_string()]);
    }

    #[test]
    fn products() {
        let b2 = Lattice::new(&["0", "1"], &[("0", "1")]).unwrap();
        let chain = Lattice::new(&["0", "t", "1"], &[("0", "t"), ("t", "1")]).unwrap();
        let p = product(&b2, &chain);
        assert_eq!(p.lattice.size(), 6);
        assert_eq!(p.lattice.atoms().unwrap().len(), 2);
        assert_eq!(p.lattice.label(p.pair(1, 1)), "(1,t)");
        assert_eq!(p.split(p.pair(1, 2)), (1, 2));
        p.lattice.verify_axioms().unwrap();
    }

    #[test]
    fn heights_and_linear_extension() {
        let l = m3();
        assert_eq!(l.heights(), vec![0, 1, 1, 1, 2]);
        assert_eq!(l.bottom_up(), vec![0, 1, 2, 3, 4]);
    }
}
