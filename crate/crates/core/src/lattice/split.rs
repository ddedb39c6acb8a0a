use serde::{Deserialize, Serialize};

use super::Lattice;
use crate::error::{Error, Result};

/// A pair `(delta, epsilon)` with `delta < 1`, `epsilon > 0` such that every
/// element lies below `delta` or above `epsilon`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SplittingPair {
    pub delta: usize,
    pub epsilon: usize,
    pub strong: bool,
}

impl Lattice {
    /// Tests the splitting condition for one candidate pair.
    pub fn is_splitting_pair(&self, delta: usize, epsilon: usize) -> bool {
        delta != self.top()
            && epsilon != self.bottom()
            && (0..self.size()).all(|x| self.leq(epsilon, x) || self.leq(x, delta))
    }

    /// All splitting pairs, ordered by `(delta, epsilon)` index.
    pub fn splitting_pairs(&self) -> Result<Vec<SplittingPair>> {
        if self.size() < 2 {
            return Err(Error::TrivialLattice);
        }
        let m = self.size();
        let mut pairs = Vec::new();
        for delta in 0..m {
            for epsilon in 0..m {
                if self.is_splitting_pair(delta, epsilon) {
                    pairs.push(SplittingPair {
                        delta,
                        epsilon,
                        strong: self.leq(epsilon, delta),
                    });
                }
            }
        }
        Ok(pairs)
    }

    pub fn splits(&self) -> Result<bool> {
        Ok(!self.splitting_pairs()?.is_empty())
    }

    /// The least strong splitting pair by index, if any.
    pub fn splits_strongly(&self) -> Result<Option<SplittingPair>> {
        Ok(self.splitting_pairs()?.into_iter().find(|p| p.strong))
    }

    /// Looks for `0 < epsilon <= delta < 1` such that the lattice is the
    /// union of the intervals `[0, delta]` and `[epsilon, 1]`.
    pub fn interval_cover(&self) -> Option<(usize, usize)> {
        let m = self.size();
        for delta in 0..m {
            for epsilon in 0..m {
                if delta == self.top() || epsilon == self.bottom() || !self.leq(epsilon, delta) {
                    continue;
                }
                let lower: Vec<usize> = (0..m).filter(|&x| self.leq(x, delta)).collect();
                let upper: Vec<usize> = (0..m).filter(|&x| self.leq(epsilon, x)).collect();
                if (0..m).all(|x| lower.contains(&x) || upper.contains(&x)) {
                    return Some((delta, epsilon));
                }
            }
        }
        None
    }
}
