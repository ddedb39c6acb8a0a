use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::{Lattice, SplittingPair};
use crate::sequence::{support_meet, SequencePresentation};

/// The chain `h^(0) ⊑ h^(1) ⊑ …` attached to a strong splitting pair
/// `(δ, ε)`.
///
/// `h^(j)` is the identity at arity 1 (for `j >= 1`), is `ε` at arities
/// `2..=j` when no argument lies below `δ` and the bottom otherwise, and
/// vanishes above arity `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfiniteFamily {
    lattice: Arc<Lattice>,
    pair: SplittingPair,
}

impl InfiniteFamily {
    pub fn new(lattice: Arc<Lattice>, pair: SplittingPair) -> Result<Self> {
        let labels = || {
            (
                lattice.label(pair.delta).to_string(),
                lattice.label(pair.epsilon).to_string(),
            )
        };
        if !lattice.is_splitting_pair(pair.delta, pair.epsilon) {
            let (d, e) = labels();
            return Err(Error::NotSplittingPair(d, e));
        }
        if !lattice.leq(pair.epsilon, pair.delta) {
            let (d, e) = labels();
            return Err(Error::NotStrong(d, e));
        }
        let pair = SplittingPair { strong: true, ..pair };
        Ok(InfiniteFamily { lattice, pair })
    }

    /// The family of the least strong pair of `l`.
    pub fn for_lattice(l: &Lattice) -> Result<Self> {
        let pair = if l.size() < 2 { None } else { l.splits_strongly()? };
        let pair = pair.ok_or(Error::NoStrongPair)?;
        InfiniteFamily::new(Arc::new(l.clone()), pair)
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn pair(&self) -> SplittingPair {
        self.pair
    }

    /// `E` of `h^(j)`.
    pub fn value(&self, j: u32, a: &[u32]) -> usize {
        let l = &*self.lattice;
        let n: u32 = a.iter().sum();
        if n == 0 || n > j {
            return l.bottom();
        }
        if n == 1 {
            return a.iter().position(|&k| k > 0).expect("nonzero");
        }
        let below = a.iter().enumerate().any(|(x, &k)| k > 0 && l.leq(x, self.pair.delta));
        if below {
            l.bottom()
        } else {
            self.pair.epsilon
        }
    }

    pub fn member(&self, j: u32) -> SequencePresentation {
        SequencePresentation::from_function(self.lattice.clone(), j + 1, |a| {
            debug_assert!(self.lattice.leq(self.value(j, a), support_meet(&self.lattice, a)));
            self.value(j, a)
        })
    }

    /// `h^(0), …, h^(k)`.
    pub fn prefix(&self, k: u32) -> Vec<SequencePresentation> {
        (0..=k).map(|j| self.member(j)).collect()
    }
}

/// `h^(0), …, h^(k)` for a strong pair of `l`.
pub fn infinite_family(l: &Lattice, pair: SplittingPair, k: u32) -> Result<Vec<SequencePresentation>> {
    Ok(InfiniteFamily::new(Arc::new(l.clone()), pair)?.prefix(k))
}
