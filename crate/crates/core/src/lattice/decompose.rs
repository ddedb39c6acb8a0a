use super::Lattice;
use crate::error::{Error, Result};

/// A lattice written as `core × B2^n` with a non-splitting core.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub core: Lattice,
    pub b2_power: usize,
    /// For each source element: its core coordinate and its `n` two-element
    /// coordinates (`true` is the top of that factor).
    pub iso: Vec<(usize, Vec<bool>)>,
}

impl Decomposition {
    /// Index of the image of `x` in the left-nested product
    /// `((core × B2) × B2) × …` built with [`crate::lattice::product`].
    pub fn nested_index(&self, x: usize) -> usize {
        let (c, bits) = &self.iso[x];
        bits.iter().fold(*c, |acc, &b| acc * 2 + usize::from(b))
    }

    /// Exhaustively checks that `iso` is a bijection onto `core × B2^n`
    /// carrying meets and joins of `source` to componentwise operations.
    pub fn verify(&self, source: &Lattice) -> bool {
        let m = source.size();
        if self.iso.len() != m || m != self.core.size() << self.b2_power {
            return false;
        }
        let mut seen = vec![false; m];
        for x in 0..m {
            let (c, bits) = &self.iso[x];
            if *c >= self.core.size() || bits.len() != self.b2_power {
                return false;
            }
            if std::mem::replace(&mut seen[self.nested_index(x)], true) {
                return false;
            }
        }
        for x in 0..m {
            for y in 0..m {
                let (cx, bx) = &self.iso[x];
                let (cy, by) = &self.iso[y];
                let meet = (
                    self.core.meet(*cx, *cy),
                    bx.iter().zip(by).map(|(p, q)| *p && *q).collect::<Vec<_>>(),
                );
                let join = (
                    self.core.join(*cx, *cy),
                    bx.iter().zip(by).map(|(p, q)| *p || *q).collect::<Vec<_>>(),
                );
                if self.iso[source.meet(x, y)] != meet || self.iso[source.join(x, y)] != join {
                    return false;
                }
            }
        }
        true
    }
}

impl Lattice {
    /// Splits off two-element factors until the remaining interval has no
    /// splitting pair.
    ///
    /// Each step takes the least splitting pair `(α, β)`, the least atom
    /// `ε <= β` and the least coatom `δ >= α`, maps `x` to `(x ∧ δ, x ∧ ε)`
    /// and recurses on `[0, δ]`.
    pub fn decompose(&self) -> Result<Decomposition> {
        self.require_modular()?;
        if self.size() >= 2 {
            if let Some(p) = self.splits_strongly()? {
                return Err(Error::StronglySplits(
                    self.label(p.delta).to_string(),
                    self.label(p.epsilon).to_string(),
                ));
            }
        }
        Ok(self.decompose_unchecked())
    }

    fn decompose_unchecked(&self) -> Decomposition {
        let m = self.size();
        let first = if m < 2 {
            None
        } else {
            self.splitting_pairs().expect("nontrivial").into_iter().next()
        };
        let Some(pair) = first else {
            return Decomposition {
                core: self.clone(),
                b2_power: 0,
                iso: (0..m).map(|x| (x, Vec::new())).collect(),
            };
        };
        let epsilon = self
            .atoms()
            .expect("nontrivial")
            .into_iter()
            .find(|&a| self.leq(a, pair.epsilon))
            .expect("epsilon is above some atom");
        let delta = self
            .coatoms()
            .expect("nontrivial")
            .into_iter()
            .find(|&c| self.leq(pair.delta, c))
            .expect("delta is below some coatom");
        debug_assert!(self.is_splitting_pair(delta, epsilon));
        debug_assert!(!self.leq(epsilon, delta));

        let members: Vec<usize> = (0..m).filter(|&x| self.leq(x, delta)).collect();
        let lower = self.restrict(&members);
        let inner = lower.decompose_unchecked();
        let iso = (0..m)
            .map(|x| {
                let y = self.meet(x, delta);
                let pos = members.binary_search(&y).expect("x ∧ δ lies in [0, δ]");
                let (c, mut bits) = inner.iso[pos].clone();
                bits.push(self.meet(x, epsilon) == epsilon);
                (c, bits)
            })
            .collect();
        Decomposition {
            core: inner.core,
            b2_power: inner.b2_power + 1,
            iso,
        }
    }
}
