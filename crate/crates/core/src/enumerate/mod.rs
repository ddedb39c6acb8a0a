//! Finiteness, exhaustive enumeration, the infinite family and the `⊑`
//! poset of admissible sequences.

mod family;
mod poset;
mod search;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::{catalog, Lattice, SplittingPair};
use crate::sequence::{product_sequence, SequencePresentation};

pub use family::{infinite_family, InfiniteFamily};
pub use poset::{sequence_poset, SequencePoset};

use search::{Space, Universe};

/// Node limit used when the caller does not supply one.
pub const DEFAULT_BUDGET: u64 = 200_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Decomposition,
    Oracle,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Decomposition => "decomposition",
            Method::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Finite(Vec<SequencePresentation>),
    Infinite {
        pair: SplittingPair,
        family: InfiniteFamily,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub verdict: Verdict,
    pub method: Method,
    /// For oracle results: the list is complete among sequences whose
    /// presentation degree is at most this cap.
    pub cap: Option<u32>,
}

impl Classification {
    pub fn is_finite(&self) -> bool {
        matches!(self.verdict, Verdict::Finite(_))
    }

    pub fn sequences(&self) -> Option<&[SequencePresentation]> {
        match &self.verdict {
            Verdict::Finite(seqs) => Some(seqs),
            Verdict::Infinite { .. } => None,
        }
    }

    fn infinite(l: &Lattice, pair: SplittingPair, method: Method) -> Result<Self> {
        let family = InfiniteFamily::new(Arc::new(l.clone()), pair)?;
        Ok(Classification {
            verdict: Verdict::Infinite { pair, family },
            method,
            cap: None,
        })
    }
}

fn strong_pair(l: &Lattice) -> Result<Option<SplittingPair>> {
    if l.size() < 2 {
        Ok(None)
    } else {
        l.splits_strongly()
    }
}

pub fn classify(l: &Lattice) -> Result<Classification> {
    classify_with_budget(l, DEFAULT_BUDGET)
}

/// Infinite with the least strong pair if one exists; otherwise the full
/// list, built from the non-splitting core and the three sequences on each
/// two-element factor.
pub fn classify_with_budget(l: &Lattice, budget: u64) -> Result<Classification> {
    if let Some(pair) = strong_pair(l)? {
        return Classification::infinite(l, pair, Method::Decomposition);
    }
    let d = l.decompose()?;
    let core = enumerate_nonsplitting_with_budget(&d.core, budget)?;
    let b2 = b2_sequences();
    let target = Arc::new(l.clone());
    let mut map = vec![0; l.size()];
    for x in 0..l.size() {
        map[d.nested_index(x)] = x;
    }

    let mut out = Vec::with_capacity(core.len() * 3usize.pow(d.b2_power as u32));
    for s in &core {
        let mut choice = vec![0usize; d.b2_power];
        loop {
            let nested = choice.iter().fold(s.clone(), |p, &k| product_sequence(&p, &b2[k]));
            out.push(nested.transport(target.clone(), &map)?);
            if !next_choice(&mut choice) {
                break;
            }
        }
    }
    Ok(Classification {
        verdict: Verdict::Finite(out),
        method: Method::Decomposition,
        cap: None,
    })
}

/// Odometer over `{0, 1, 2}^n`, last position fastest.
fn next_choice(choice: &mut [usize]) -> bool {
    for k in choice.iter_mut().rev() {
        if *k < 2 {
            *k += 1;
            return true;
        }
        *k = 0;
    }
    false
}

/// Oracle-based classification: infinite on a strong pair, otherwise the
/// oracle's list at `cap` (or the derived cap when `cap` is `None`).
pub fn classify_by_oracle(l: &Lattice, cap: Option<u32>, budget: u64) -> Result<Classification> {
    if let Some(pair) = strong_pair(l)? {
        return Classification::infinite(l, pair, Method::Oracle);
    }
    let c = match cap {
        Some(c) => c,
        None => derived_oracle_cap(l)?,
    };
    let seqs = brute_force_oracle_with_budget(l, c, budget)?;
    Ok(Classification {
        verdict: Verdict::Finite(seqs),
        method: Method::Oracle,
        cap: Some(c),
    })
}

/// `max(#atoms(core), 2)`: every sequence on a modular lattice without a
/// strong pair has presentation degree at most this.
pub fn derived_oracle_cap(l: &Lattice) -> Result<u32> {
    let d = l.decompose()?;
    let atoms = if d.core.size() < 2 { 0 } else { d.core.atoms()?.len() };
    Ok(atoms.max(2) as u32)
}

/// The zero, "identity at arity one" and meet sequences on the two-element
/// lattice, in this order.
pub fn b2_sequences() -> [SequencePresentation; 3] {
    let l = Arc::new(catalog("B2").expect("catalog lattice"));
    let top = l.top();
    let bottom = l.bottom();
    let g = SequencePresentation::from_function(
        l.clone(),
        2,
        |a| {
            if a[top] == 1 && a[bottom] == 0 {
                top
            } else {
                bottom
            }
        },
    );
    [SequencePresentation::zero(l.clone()), g, SequencePresentation::meet(l)]
}

pub fn enumerate_nonsplitting(m: &Lattice) -> Result<Vec<SequencePresentation>> {
    enumerate_nonsplitting_with_budget(m, DEFAULT_BUDGET)
}

/// All admissible sequences on a lattice without splitting pairs. Values
/// are searched on vectors of size below the number of atoms; larger
/// vectors take the bottom value.
pub fn enumerate_nonsplitting_with_budget(m: &Lattice, budget: u64) -> Result<Vec<SequencePresentation>> {
    let lattice = Arc::new(m.clone());
    if m.size() < 2 {
        return Ok(vec![SequencePresentation::zero(lattice)]);
    }
    if let Some(p) = m.splitting_pairs()?.first() {
        return Err(Error::HasSplittingPair(
            m.label(p.delta).to_string(),
            m.label(p.epsilon).to_string(),
        ));
    }
    let bound = (m.atoms()?.len() as u32).saturating_sub(1).max(1);
    Space::new(lattice, Universe::Truncated(bound)).sequences(budget)
}

pub fn brute_force_oracle(l: &Lattice, c: u32) -> Result<Vec<SequencePresentation>> {
    brute_force_oracle_with_budget(l, c, DEFAULT_BUDGET)
}

/// Every admissible sequence of presentation degree at most `c`, by direct
/// search on `[0, c]^m`.
pub fn brute_force_oracle_with_budget(l: &Lattice, c: u32, budget: u64) -> Result<Vec<SequencePresentation>> {
    if c == 0 {
        return Err(Error::InvalidArgument("oracle cap must be at least 1".into()));
    }
    Space::new(Arc::new(l.clone()), Universe::Capped(c)).sequences(budget)
}
