//! Operation sequences as families of level sets.
//!
//! A symmetric sequence `(f_n)` on a lattice with elements `α_1, …, α_m`
//! is a function `E` of nonzero multiplicity vectors: `E(a)` is `f_n`
//! applied to `a_1` copies of `α_1`, …, `a_m` copies of `α_m`, where
//! `n = Σ a_k`. A [`SequencePresentation`] stores the level sets
//! `R(α) = {a ≠ 0 : E(a) <= α}`, each an upward-closed subset of `ℕ₀^m`
//! under HC3. `E(a)` is recovered as the least `α` with `a ∈ R(α)`.

mod check;
mod ops;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::upset::{UpwardClosedSet, Vector};

pub(crate) use check::BoxTable;
pub use check::{check_admissible, AdmissibilityReport, Axiom, AxiomOutcome, Witness};
pub use ops::{
    leq_sequences, lower_central_series, product_sequence, project_sequence, vanishing_arity, CentralSeries,
    Nilpotency, Side,
};

/// Anything that yields a value for every nonzero multiplicity vector and
/// is invariant under truncating coordinates at [`cap`](Self::cap).
pub trait OperationSequence {
    fn lattice(&self) -> &Lattice;

    /// A bound `c >= 1` with `E(a) = E(min(a, c))` coordinatewise.
    fn cap(&self) -> u32;

    /// `E(a)` for a nonzero vector of the lattice's dimension.
    fn value(&self, a: &[u32]) -> usize;
}

/// Meet of the elements occurring in `a`.
pub(crate) fn support_meet(l: &Lattice, a: &[u32]) -> usize {
    l.meet_all(a.iter().enumerate().filter(|(_, &k)| k > 0).map(|(i, _)| i))
}

/// Multiplicity vector of an argument list.
pub fn multiset(l: &Lattice, args: &[usize]) -> Result<Vector> {
    if args.is_empty() {
        return Err(Error::EmptyArgs);
    }
    let mut v = vec![0; l.size()];
    for &x in args {
        if x >= l.size() {
            return Err(Error::UnknownElement(x.to_string()));
        }
        v[x] += 1;
    }
    Ok(Vector(v))
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SequencePresentation {
    lattice: Arc<Lattice>,
    levels: Vec<UpwardClosedSet>,
}

impl SequencePresentation {
    /// Validates a level family: dimensions, monotonicity in `α`,
    /// `R(α ∧ β) = R(α) ∩ R(β)` and `R(1) ⊇ ℕ₀^m \ {0}`.
    ///
    /// A zero generator is read as "every nonzero vector".
    pub fn from_levels(lattice: Arc<Lattice>, levels: Vec<UpwardClosedSet>) -> Result<Self> {
        let m = lattice.size();
        if levels.len() != m {
            return Err(Error::InvalidPresentation(format!(
                "{} level sets for {m} elements",
                levels.len()
            )));
        }
        let mut normalized = Vec::with_capacity(m);
        for u in levels {
            if u.dim() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    found: u.dim(),
                });
            }
            if u.generators().iter().any(Vector::is_zero) {
                normalized.push(UpwardClosedSet::nonzero(m));
            } else {
                normalized.push(u);
            }
        }
        let p = SequencePresentation {
            lattice,
            levels: normalized,
        };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        let l = &*self.lattice;
        let m = l.size();
        let label = |x: usize| l.label(x).to_string();
        if self.levels[l.top()] != UpwardClosedSet::nonzero(m) {
            return Err(Error::InvalidPresentation(format!(
                "level of top `{}` must contain every nonzero vector",
                label(l.top())
            )));
        }
        for x in 0..m {
            for y in 0..m {
                if l.leq(x, y) && !self.levels[x].is_subset(&self.levels[y])? {
                    return Err(Error::InvalidPresentation(format!(
                        "level of `{}` is not contained in level of `{}`",
                        label(x),
                        label(y)
                    )));
                }
                if y > x {
                    let both = self.levels[x].intersect(&self.levels[y])?;
                    if both != self.levels[l.meet(x, y)] {
                        return Err(Error::InvalidPresentation(format!(
                            "levels of `{}` and `{}` do not intersect to the level of their meet",
                            label(x),
                            label(y)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Builds the level family of `f`, which must be antitone (HC3) and
    /// invariant under truncation at `cap`.
    pub(crate) fn from_function<F>(lattice: Arc<Lattice>, cap: u32, f: F) -> Self
    where
        F: Fn(&[u32]) -> usize,
    {
        let levels = level_sets(&lattice, cap.max(1), f);
        let p = SequencePresentation { lattice, levels };
        debug_assert!(p.validate().is_ok());
        p
    }

    /// The sequence that is constantly the bottom element.
    pub fn zero(lattice: Arc<Lattice>) -> Self {
        let bottom = lattice.bottom();
        Self::from_function(lattice, 1, |_| bottom)
    }

    /// `f_n(α_1, …, α_n) = α_1 ∧ … ∧ α_n`.
    pub fn meet(lattice: Arc<Lattice>) -> Self {
        let l = lattice.clone();
        Self::from_function(lattice, 1, move |a| support_meet(&l, a))
    }

    /// Converts a zero-tailed table, rejecting tables whose level sets would
    /// not be upward closed.
    pub fn from_truncated_table(table: &TruncatedTable) -> Result<Self> {
        if let Some((a, i)) = table.hc3_violation() {
            let l = &table.lattice;
            let mut b = a.clone();
            b.0[i] += 1;
            return Err(Error::InconsistentTable(format!(
                "E{a} = `{}` but E{b} = `{}` is not below it",
                l.label(table.value(&a.0)),
                l.label(table.value(&b.0)),
            )));
        }
        Ok(Self::from_function(table.lattice.clone(), table.cap(), |a| {
            table.value(a)
        }))
    }

    pub fn lattice_arc(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn levels(&self) -> &[UpwardClosedSet] {
        &self.levels
    }

    pub fn level(&self, alpha: usize) -> &UpwardClosedSet {
        &self.levels[alpha]
    }

    /// Largest generator coordinate over all levels.
    pub fn cap_degree(&self) -> u32 {
        self.levels.iter().map(UpwardClosedSet::cap_degree).max().unwrap_or(0)
    }

    /// `f_n(args)` with `n = args.len()`.
    pub fn evaluate(&self, args: &[usize]) -> Result<usize> {
        let a = multiset(&self.lattice, args)?;
        Ok(self.value(&a.0))
    }

    /// `E(a)` with a dimension check; the zero vector has no value.
    pub fn evaluate_vector(&self, a: &Vector) -> Result<usize> {
        let m = self.lattice.size();
        if a.dim() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: a.dim(),
            });
        }
        if a.is_zero() {
            return Err(Error::EmptyArgs);
        }
        Ok(self.value(&a.0))
    }

    /// Moves the sequence along a lattice isomorphism `map` (source index to
    /// target index).
    pub fn transport(&self, target: Arc<Lattice>, map: &[usize]) -> Result<Self> {
        if !self.lattice.is_lattice_isomorphism(&target, map) {
            return Err(Error::LatticeMismatch);
        }
        let mut levels = vec![UpwardClosedSet::empty(0); target.size()];
        for (x, level) in self.levels.iter().enumerate() {
            levels[map[x]] = level.permuted(map);
        }
        Ok(SequencePresentation {
            lattice: target,
            levels,
        })
    }
}

impl OperationSequence for SequencePresentation {
    fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    fn cap(&self) -> u32 {
        self.cap_degree().max(1)
    }

    fn value(&self, a: &[u32]) -> usize {
        let l = &*self.lattice;
        let mut acc = l.top();
        for (alpha, level) in self.levels.iter().enumerate() {
            if level.holds(a) {
                acc = l.meet(acc, alpha);
            }
        }
        acc
    }
}

/// Minimal generators of every level set of an antitone, `cap`-invariant
/// function.
///
/// For each `α`, walks the complement of `R(α)` size by size: a vector of
/// size `s + 1` in `R(α)` is a generator exactly when all of its nonzero
/// lower neighbours are outside `R(α)`.
fn level_sets<F>(l: &Lattice, cap: u32, f: F) -> Vec<UpwardClosedSet>
where
    F: Fn(&[u32]) -> usize,
{
    let m = l.size();
    let mut memo: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut value = |a: &[u32]| -> usize {
        if let Some(&v) = memo.get(a) {
            return v;
        }
        let v = f(a);
        memo.insert(a.to_vec(), v);
        v
    };
    let mut levels = Vec::with_capacity(m);
    for alpha in 0..m {
        let mut gens = Vec::new();
        let mut outside: HashSet<Vec<u32>> = HashSet::new();
        for i in 0..m {
            let e = Vector::unit(m, i).0;
            if l.leq(value(&e), alpha) {
                gens.push(Vector(e));
            } else {
                outside.insert(e);
            }
        }
        while !outside.is_empty() {
            let mut candidates: Vec<Vec<u32>> = Vec::new();
            for a in &outside {
                for i in 0..m {
                    if a[i] < cap {
                        let mut b = a.clone();
                        b[i] += 1;
                        candidates.push(b);
                    }
                }
            }
            candidates.sort_unstable();
            candidates.dedup();
            let mut next = HashSet::new();
            for b in candidates {
                if l.leq(value(&b), alpha) {
                    let minimal = (0..m).filter(|&j| b[j] > 0).all(|j| {
                        let mut c = b.clone();
                        c[j] -= 1;
                        c.iter().all(|&x| x == 0) || outside.contains(&c)
                    });
                    if minimal {
                        gens.push(Vector(b));
                    }
                } else {
                    next.insert(b);
                }
            }
            outside = next;
        }
        levels.push(UpwardClosedSet::from_generators(m, gens).expect("dimension m"));
    }
    levels
}

/// Values of `E` on all nonzero vectors of size at most `bound`, zero
/// beyond. Entries not listed are the bottom element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedTable {
    lattice: Arc<Lattice>,
    bound: u32,
    values: BTreeMap<Vector, usize>,
}

impl TruncatedTable {
    pub fn new<I>(lattice: Arc<Lattice>, bound: u32, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vector, usize)>,
    {
        if bound == 0 {
            return Err(Error::InconsistentTable("bound T must be positive".into()));
        }
        let m = lattice.size();
        let mut values = BTreeMap::new();
        for (a, x) in entries {
            if a.dim() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    found: a.dim(),
                });
            }
            if a.is_zero() || a.total() > bound {
                return Err(Error::InconsistentTable(format!(
                    "vector {a} is zero or longer than T = {bound}"
                )));
            }
            if x >= m {
                return Err(Error::UnknownElement(x.to_string()));
            }
            let cap = support_meet(&lattice, &a.0);
            if !lattice.leq(x, cap) {
                return Err(Error::InconsistentTable(format!(
                    "E{a} = `{}` is not below the meet `{}` of its arguments",
                    lattice.label(x),
                    lattice.label(cap)
                )));
            }
            if let Some(old) = values.insert(a.clone(), x) {
                if old != x {
                    return Err(Error::InconsistentTable(format!("conflicting values for {a}")));
                }
            }
        }
        Ok(TruncatedTable { lattice, bound, values })
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn lattice_arc(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    /// Explicit entries in lexicographic vector order.
    pub fn entries(&self) -> impl Iterator<Item = (&Vector, usize)> {
        self.values.iter().map(|(a, &x)| (a, x))
    }

    /// First `(a, i)` in lexicographic order with `E(a + e_i) > E(a)`.
    pub(crate) fn hc3_violation(&self) -> Option<(Vector, usize)> {
        let l = &*self.lattice;
        let m = l.size();
        let mut a = vec![0; m];
        while crate::sequence::check::next_in_box(&mut a, self.bound) {
            if a.iter().sum::<u32>() > self.bound {
                continue;
            }
            let here = self.value(&a);
            for i in 0..m {
                a[i] += 1;
                let up = self.value(&a);
                a[i] -= 1;
                if !l.leq(up, here) {
                    return Some((Vector(a), i));
                }
            }
        }
        None
    }
}

impl OperationSequence for TruncatedTable {
    fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    fn cap(&self) -> u32 {
        self.bound + 1
    }

    fn value(&self, a: &[u32]) -> usize {
        if a.iter().sum::<u32>() > self.bound {
            return self.lattice.bottom();
        }
        // Coordinates beyond the bound only occur in vectors longer than it.
        self.values
            .get(&Vector(a.to_vec()))
            .copied()
            .unwrap_or(self.lattice.bottom())
    }
}
