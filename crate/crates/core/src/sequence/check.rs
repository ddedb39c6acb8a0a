//! Admissibility checking on a finite verification box.
//!
//! If `E(a) = E(min(a, c))` coordinatewise, then every axiom instance over
//! `ℕ₀^m` has the same truth value as the instance obtained by truncating
//! all of its vectors at `c`, because `min(b + d, c) = min(min(b, c) +
//! min(d, c), c)`. So quantifying over `[0, c]^m`, with sums truncated back
//! into the box, is both sound and complete.

use serde::Serialize;

use super::{support_meet, OperationSequence};
use crate::lattice::Lattice;
use crate::upset::Vector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Axiom {
    HC1,
    HC2,
    HC3,
    HC4,
    HC7,
    HC8,
}

impl Axiom {
    pub const ALL: [Axiom; 6] = [Axiom::HC1, Axiom::HC2, Axiom::HC3, Axiom::HC4, Axiom::HC7, Axiom::HC8];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::HC1 => "HC1",
            Axiom::HC2 => "HC2",
            Axiom::HC3 => "HC3",
            Axiom::HC4 => "HC4",
            Axiom::HC7 => "HC7",
            Axiom::HC8 => "HC8",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            Axiom::HC1 => "E(a) <= meet of the arguments",
            Axiom::HC2 => "raising an argument raises the value",
            Axiom::HC3 => "E(a + e_i) <= E(a)",
            Axiom::HC4 => "symmetric (built into the multiset encoding)",
            Axiom::HC7 => "E(a + e_(x v y)) = E(a + e_x) v E(a + e_y)",
            Axiom::HC8 => "E(b + e_E(c)) <= E(b + c)",
        }
    }
}

/// First failing instance of an axiom, in lexicographic order of its
/// vectors and then element indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `E(a)` is not below the meet of the support of `a`.
    Support { a: Vector },
    /// Replacing one argument `from` by a larger `to` lowers or breaks the value.
    Raise { a: Vector, from: usize, to: usize },
    /// Adding an argument `index` does not lower the value.
    Extend { a: Vector, index: usize },
    /// The join `x ∨ y` as an extra argument is not the join of the values.
    Join { a: Vector, x: usize, y: usize },
    /// Nesting `inner` inside the arguments `outer` is not below the flat value.
    Nest { outer: Vector, inner: Vector },
}

impl Witness {
    pub fn describe(&self, l: &Lattice) -> String {
        match self {
            Witness::Support { a } => format!("a = {a}"),
            Witness::Raise { a, from, to } => {
                format!("a = {a}, replacing `{}` by `{}`", l.label(*from), l.label(*to))
            }
            Witness::Extend { a, index } => format!("a = {a}, adding `{}`", l.label(*index)),
            Witness::Join { a, x, y } => {
                format!("a = {a}, x = `{}`, y = `{}`", l.label(*x), l.label(*y))
            }
            Witness::Nest { outer, inner } => format!("b = {outer}, c = {inner}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomOutcome {
    pub axiom: Axiom,
    pub failures: u64,
    pub witness: Option<Witness>,
}

impl AxiomOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibilityReport {
    /// Side length `c` of the verification box `[0, c]^m`.
    pub cap: u32,
    pub outcomes: Vec<AxiomOutcome>,
}

impl AdmissibilityReport {
    pub fn is_admissible(&self) -> bool {
        self.outcomes.iter().all(AxiomOutcome::passed)
    }

    pub fn outcome(&self, axiom: Axiom) -> &AxiomOutcome {
        self.outcomes
            .iter()
            .find(|o| o.axiom == axiom)
            .expect("every axiom is reported")
    }
}

/// Advances `a` to the next vector of `[0, c]^m` in lexicographic order;
/// returns `false` once it wraps around to zero.
pub(crate) fn next_in_box(a: &mut [u32], c: u32) -> bool {
    for x in a.iter_mut().rev() {
        if *x < c {
            *x += 1;
            return true;
        }
        *x = 0;
    }
    false
}

/// Values of a sequence on every vector of `[0, c]^m`, indexed in
/// lexicographic order. Slot 0 (the zero vector) holds the bottom element.
pub(crate) struct BoxTable {
    m: usize,
    c: u32,
    strides: Vec<usize>,
    coords: Vec<u32>,
    values: Vec<usize>,
}

impl BoxTable {
    pub(crate) fn new<S: OperationSequence + ?Sized>(s: &S, c: u32) -> Self {
        let l = s.lattice();
        let m = l.size();
        let side = c as usize + 1;
        let len = side.pow(m as u32);
        let mut strides = vec![1; m];
        for i in (0..m.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * side;
        }
        let mut coords = Vec::with_capacity(len * m);
        let mut values = Vec::with_capacity(len);
        let mut a = vec![0; m];
        coords.extend_from_slice(&a);
        values.push(l.bottom());
        while next_in_box(&mut a, c) {
            coords.extend_from_slice(&a);
            values.push(s.value(&a));
        }
        BoxTable {
            m,
            c,
            strides,
            coords,
            values,
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.values.len()
    }

    pub(crate) fn coords(&self, idx: usize) -> &[u32] {
        &self.coords[idx * self.m..(idx + 1) * self.m]
    }

    pub(crate) fn value(&self, idx: usize) -> usize {
        self.values[idx]
    }

    /// Index of `min(a + e_i, c)`.
    #[inline]
    fn plus_unit(&self, idx: usize, i: usize) -> usize {
        if self.coords[idx * self.m + i] < self.c {
            idx + self.strides[i]
        } else {
            idx
        }
    }

    /// Index of `min(a + b, c)`.
    #[inline]
    fn plus(&self, a: usize, b: usize) -> usize {
        let (ca, cb) = (self.coords(a), self.coords(b));
        (0..self.m)
            .map(|i| (ca[i] + cb[i]).min(self.c) as usize * self.strides[i])
            .sum()
    }

    fn vector(&self, idx: usize) -> Vector {
        Vector(self.coords(idx).to_vec())
    }
}

#[derive(Default)]
struct Tally {
    failures: u64,
    witness: Option<Witness>,
}

impl Tally {
    fn fail(&mut self, w: impl FnOnce() -> Witness) {
        self.failures += 1;
        if self.witness.is_none() {
            self.witness = Some(w());
        }
    }

    fn finish(self, axiom: Axiom) -> AxiomOutcome {
        AxiomOutcome {
            axiom,
            failures: self.failures,
            witness: self.witness,
        }
    }
}

/// Checks HC1–HC4, HC7 and HC8 on the box `[0, c]^m` with `c = s.cap()`.
///
/// HC7 is checked in binary form, which together with HC1 (an argument
/// equal to the bottom forces the bottom) gives distributivity over every
/// finite family.
pub fn check_admissible<S: OperationSequence + ?Sized>(s: &S) -> AdmissibilityReport {
    let c = s.cap().max(1);
    let table = BoxTable::new(s, c);
    let l = s.lattice();
    AdmissibilityReport {
        cap: c,
        outcomes: vec![
            check_support(l, &table),
            check_raise(l, &table),
            check_extend(l, &table),
            AxiomOutcome {
                axiom: Axiom::HC4,
                failures: 0,
                witness: None,
            },
            check_join(l, &table),
            check_nest(l, &table),
        ],
    }
}

fn check_support(l: &Lattice, t: &BoxTable) -> AxiomOutcome {
    let mut tally = Tally::default();
    for idx in 1..t.len() {
        if !l.leq(t.value(idx), support_meet(l, t.coords(idx))) {
            tally.fail(|| Witness::Support { a: t.vector(idx) });
        }
    }
    tally.finish(Axiom::HC1)
}

fn check_raise(l: &Lattice, t: &BoxTable) -> AxiomOutcome {
    let m = l.size();
    let pairs: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| (0..m).map(move |j| (i, j)))
        .filter(|&(i, j)| l.lt(i, j))
        .collect();
    let mut tally = Tally::default();
    for idx in 1..t.len() {
        let here = t.value(idx);
        let a = t.coords(idx);
        for &(i, j) in &pairs {
            if a[i] == 0 {
                continue;
            }
            let lowered = idx - t.strides[i];
            let moved = t.plus_unit(lowered, j);
            if !l.leq(here, t.value(moved)) {
                tally.fail(|| Witness::Raise {
                    a: t.vector(idx),
                    from: i,
                    to: j,
                });
            }
            // `a + e_i` lies outside the box but truncates to `a`.
            if a[i] == t.c && !l.leq(here, t.value(t.plus_unit(idx, j))) {
                tally.fail(|| {
                    let mut outside = t.vector(idx);
                    outside.0[i] += 1;
                    Witness::Raise {
                        a: outside,
                        from: i,
                        to: j,
                    }
                });
            }
        }
    }
    tally.finish(Axiom::HC2)
}

fn check_extend(l: &Lattice, t: &BoxTable) -> AxiomOutcome {
    let mut tally = Tally::default();
    for idx in 1..t.len() {
        let here = t.value(idx);
        for i in 0..l.size() {
            if !l.leq(t.value(t.plus_unit(idx, i)), here) {
                tally.fail(|| Witness::Extend {
                    a: t.vector(idx),
                    index: i,
                });
            }
        }
    }
    tally.finish(Axiom::HC3)
}

fn check_join(l: &Lattice, t: &BoxTable) -> AxiomOutcome {
    let m = l.size();
    let mut tally = Tally::default();
    for idx in 0..t.len() {
        for x in 0..m {
            for y in (x + 1)..m {
                let joined = t.value(t.plus_unit(idx, l.join(x, y)));
                let parts = l.join(t.value(t.plus_unit(idx, x)), t.value(t.plus_unit(idx, y)));
                if joined != parts {
                    tally.fail(|| Witness::Join { a: t.vector(idx), x, y });
                }
            }
        }
    }
    tally.finish(Axiom::HC7)
}

fn check_nest(l: &Lattice, t: &BoxTable) -> AxiomOutcome {
    let m = l.size();
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); m];
    for idx in 1..t.len() {
        groups[t.value(idx)].push(idx);
    }
    let mut tally = Tally::default();
    for outer in 0..t.len() {
        let mut first: Option<usize> = None;
        for (gamma, inners) in groups.iter().enumerate() {
            if inners.is_empty() {
                continue;
            }
            let nested = t.value(t.plus_unit(outer, gamma));
            if nested == l.bottom() {
                continue;
            }
            for &inner in inners {
                if !l.leq(nested, t.value(t.plus(outer, inner))) {
                    tally.failures += 1;
                    first = Some(first.map_or(inner, |f| f.min(inner)));
                }
            }
        }
        if let (Some(inner), None) = (first, &tally.witness) {
            tally.witness = Some(Witness::Nest {
                outer: t.vector(outer),
                inner: t.vector(inner),
            });
        }
    }
    tally.finish(Axiom::HC8)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::lattice::catalog;
    use crate::sequence::{SequencePresentation, TruncatedTable};

    fn b2() -> Arc<Lattice> {
        Arc::new(catalog("B2").unwrap())
    }

    fn table(l: &Arc<Lattice>, bound: u32, entries: &[(&[u32], usize)]) -> TruncatedTable {
        TruncatedTable::new(l.clone(), bound, entries.iter().map(|(v, x)| (Vector(v.to_vec()), *x))).unwrap()
    }

    #[test]
    fn box_order_is_lexicographic() {
        let mut a = vec![0, 0];
        let mut seen = vec![a.clone()];
        while next_in_box(&mut a, 2) {
            seen.push(a.clone());
        }
        let mut sorted = seen.clone();
        sorted.sort();
        assert_eq!(seen, sorted);
        assert_eq!(seen.len(), 9);
    }

    #[test]
    fn lemma_sequences_on_b2_pass() {
        let l = b2();
        let g = table(&l, 1, &[(&[0, 1], 1)]);
        for p in [
            SequencePresentation::zero(l.clone()),
            SequencePresentation::from_truncated_table(&g).unwrap(),
            SequencePresentation::meet(l.clone()),
        ] {
            let report = check_admissible(&p);
            assert!(report.is_admissible(), "{report:?}");
        }
        assert!(check_admissible(&g).is_admissible());
    }

    #[test]
    fn growing_value_fails_hc3() {
        let l = b2();
        let t = table(&l, 2, &[(&[0, 2], 1)]);
        let report = check_admissible(&t);
        let hc3 = report.outcome(Axiom::HC3);
        assert!(!hc3.passed());
        assert_eq!(
            hc3.witness,
            Some(Witness::Extend {
                a: Vector(vec![0, 1]),
                index: 1
            })
        );
    }

    #[test]
    fn truncated_meet_fails_hc8() {
        let l = b2();
        let t = table(&l, 3, &[(&[0, 1], 1), (&[0, 2], 1)]);
        let report = check_admissible(&t);
        let hc8 = report.outcome(Axiom::HC8);
        assert!(!hc8.passed());
        assert_eq!(
            hc8.witness,
            Some(Witness::Nest {
                outer: Vector(vec![0, 1]),
                inner: Vector(vec![0, 2])
            })
        );
        // Same verdict on the level-family form.
        let p = SequencePresentation::from_truncated_table(&t).unwrap();
        assert_eq!(check_admissible(&p).outcome(Axiom::HC8).witness, hc8.witness);
        for axiom in [Axiom::HC1, Axiom::HC2, Axiom::HC3, Axiom::HC7] {
            assert!(report.outcome(axiom).passed(), "{axiom:?}");
        }
    }

    #[test]
    fn monotonicity_beyond_the_box() {
        // On C3 with cap 1: f_n(t, …, t) = t for every n but f_2(t, 1) = 0.
        let l = Arc::new(catalog("C3").unwrap());
        let set = |gens: &[&[u32]]| {
            crate::UpwardClosedSet::from_generators(3, gens.iter().map(|g| Vector(g.to_vec())).collect()).unwrap()
        };
        let levels = vec![
            set(&[&[1, 0, 0], &[0, 1, 1]]),
            set(&[&[1, 0, 0], &[0, 1, 0]]),
            crate::UpwardClosedSet::nonzero(3),
        ];
        let p = SequencePresentation::from_levels(l, levels).unwrap();
        let report = check_admissible(&p);
        assert_eq!(report.cap, 1);
        assert_eq!(
            report.outcome(Axiom::HC2).witness,
            Some(Witness::Raise {
                a: Vector(vec![0, 2, 0]),
                from: 1,
                to: 2
            })
        );
        assert!(!report.outcome(Axiom::HC7).passed());
        assert!(report.outcome(Axiom::HC3).passed());
    }

    #[test]
    fn meet_on_diamond_is_not_join_distributive() {
        let m3 = Arc::new(catalog("M3").unwrap());
        let report = check_admissible(&SequencePresentation::meet(m3));
        assert!(!report.outcome(Axiom::HC7).passed());
        assert!(report.outcome(Axiom::HC1).passed());
    }

    #[test]
    fn identity_above_argument_fails_hc1() {
        let l = b2();
        // R(0) missing (1,0) means E(e_0) = 1 > 0.
        let levels = vec![
            crate::UpwardClosedSet::from_generators(2, vec![Vector(vec![2, 0]), Vector(vec![0, 1])]).unwrap(),
            crate::UpwardClosedSet::nonzero(2),
        ];
        let p = SequencePresentation::from_levels(l, levels).unwrap();
        let report = check_admissible(&p);
        assert_eq!(
            report.outcome(Axiom::HC1).witness,
            Some(Witness::Support { a: Vector(vec![1, 0]) })
        );
    }
}
