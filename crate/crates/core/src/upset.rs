//! Upward-closed subsets of `ℕ₀^m`, stored as their finite antichain of
//! minimal elements.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of `ℕ₀^m`, ordered componentwise for set membership and
/// lexicographically for storage.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector(pub Vec<u32>);

impl Vector {
    pub fn zero(m: usize) -> Self {
        Vector(vec![0; m])
    }

    pub fn unit(m: usize, i: usize) -> Self {
        let mut v = vec![0; m];
        v[i] = 1;
        Vector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Sum of the coordinates.
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Componentwise `<=`.
    pub fn le(&self, other: &Vector) -> bool {
        dominated(&self.0, &other.0)
    }

    /// Truncates every coordinate at `c`.
    pub fn cap(&self, c: u32) -> Vector {
        Vector(self.0.iter().map(|&x| x.min(c)).collect())
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<u32>> for Vector {
    fn from(v: Vec<u32>) -> Self {
        Vector(v)
    }
}

#[inline]
pub(crate) fn dominated(g: &[u32], a: &[u32]) -> bool {
    g.iter().zip(a).all(|(x, y)| x <= y)
}

/// Keeps the minimal elements, sorted lexicographically.
fn minimalize(mut vs: Vec<Vector>) -> Vec<Vector> {
    vs.sort();
    vs.dedup();
    let mut keep = Vec::with_capacity(vs.len());
    for (i, v) in vs.iter().enumerate() {
        let dominated_by_other = vs.iter().enumerate().any(|(j, w)| j != i && w.le(v));
        if !dominated_by_other {
            keep.push(v.clone());
        }
    }
    keep
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "UpsetJson", into = "UpsetJson")]
pub struct UpwardClosedSet {
    m: usize,
    generators: Vec<Vector>,
}

#[derive(Serialize, Deserialize)]
struct UpsetJson {
    m: usize,
    generators: Vec<Vec<u32>>,
}

impl TryFrom<UpsetJson> for UpwardClosedSet {
    type Error = Error;

    fn try_from(raw: UpsetJson) -> Result<Self> {
        UpwardClosedSet::from_generators(raw.m, raw.generators.into_iter().map(Vector).collect())
    }
}

impl From<UpwardClosedSet> for UpsetJson {
    fn from(u: UpwardClosedSet) -> Self {
        UpsetJson {
            m: u.m,
            generators: u.generators.into_iter().map(|v| v.0).collect(),
        }
    }
}

impl UpwardClosedSet {
    pub fn from_generators(m: usize, vs: Vec<Vector>) -> Result<Self> {
        if let Some(bad) = vs.iter().find(|v| v.dim() != m) {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: bad.dim(),
            });
        }
        Ok(UpwardClosedSet {
            m,
            generators: minimalize(vs),
        })
    }

    pub fn empty(m: usize) -> Self {
        UpwardClosedSet {
            m,
            generators: Vec::new(),
        }
    }

    /// All of `ℕ₀^m`, generated by the zero vector.
    pub fn full(m: usize) -> Self {
        UpwardClosedSet {
            m,
            generators: vec![Vector::zero(m)],
        }
    }

    /// All nonzero vectors, generated by the unit vectors.
    pub fn nonzero(m: usize) -> Self {
        UpwardClosedSet {
            m,
            generators: (0..m).rev().map(|i| Vector::unit(m, i)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found == self.m {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.m,
                found,
            })
        }
    }

    pub fn contains(&self, a: &Vector) -> Result<bool> {
        self.check_dim(a.dim())?;
        Ok(self.holds(&a.0))
    }

    /// Membership without the dimension check.
    #[inline]
    pub(crate) fn holds(&self, a: &[u32]) -> bool {
        self.generators.iter().any(|g| dominated(&g.0, a))
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.check_dim(other.m)?;
        let all = self.generators.iter().chain(&other.generators).cloned().collect();
        Ok(UpwardClosedSet {
            m: self.m,
            generators: minimalize(all),
        })
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_dim(other.m)?;
        let mut maxima = Vec::with_capacity(self.generators.len() * other.generators.len());
        for g in &self.generators {
            for h in &other.generators {
                maxima.push(Vector(g.0.iter().zip(&h.0).map(|(x, y)| *x.max(y)).collect()));
            }
        }
        Ok(UpwardClosedSet {
            m: self.m,
            generators: minimalize(maxima),
        })
    }

    pub fn is_subset(&self, other: &Self) -> Result<bool> {
        self.check_dim(other.m)?;
        Ok(self.generators.iter().all(|g| other.holds(&g.0)))
    }

    /// Largest coordinate among the generators; membership of any vector is
    /// unchanged by truncating its coordinates at this value.
    pub fn cap_degree(&self) -> u32 {
        self.generators
            .iter()
            .flat_map(|g| g.0.iter().copied())
            .max()
            .unwrap_or(0)
    }

    /// Applies a coordinate permutation: coordinate `i` moves to `perm[i]`.
    pub(crate) fn permuted(&self, perm: &[usize]) -> Self {
        let gens = self
            .generators
            .iter()
            .map(|g| {
                let mut v = vec![0; self.m];
                for (i, &x) in g.0.iter().enumerate() {
                    v[perm[i]] = x;
                }
                Vector(v)
            })
            .collect();
        UpwardClosedSet {
            m: self.m,
            generators: minimalize(gens),
        }
    }
}
