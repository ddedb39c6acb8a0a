use serde::Serialize;

use crate::error::{Error, Result};
use crate::sequence::{leq_sequences, BoxTable, OperationSequence, SequencePresentation};

/// The `⊑` order on a finite list of sequences.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequencePoset {
    /// `relation[i][j]` is `seqs[i] ⊑ seqs[j]`.
    pub relation: Vec<Vec<bool>>,
    pub longest_chain: usize,
    pub largest_antichain: usize,
    /// Distinct sequences have distinct level families.
    pub embedding_injective: bool,
    /// Pointwise `⊑` holds exactly when the level families are contained
    /// in the reverse direction.
    pub embedding_order_reversing: bool,
}

impl SequencePoset {
    pub fn len(&self) -> usize {
        self.relation.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relation.is_empty()
    }
}

/// Builds the `⊑` relation from level containment and cross-checks it
/// against pointwise comparison on a common verification box.
pub fn sequence_poset(seqs: &[SequencePresentation]) -> Result<SequencePoset> {
    let n = seqs.len();
    if let Some(first) = seqs.first() {
        if seqs.iter().any(|p| p.lattice() != first.lattice()) {
            return Err(Error::LatticeMismatch);
        }
    }
    let mut relation = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            relation[i][j] = leq_sequences(&seqs[i], &seqs[j])?;
        }
    }

    let c = seqs.iter().map(|p| p.cap_degree()).max().unwrap_or(1).max(1);
    let tables: Vec<BoxTable> = seqs.iter().map(|p| BoxTable::new(p, c)).collect();
    let mut injective = true;
    let mut reversing = true;
    for i in 0..n {
        for j in 0..n {
            let l = seqs[i].lattice();
            let (ti, tj) = (&tables[i], &tables[j]);
            let pointwise = (1..ti.len()).all(|k| l.leq(ti.value(k), tj.value(k)));
            let same = (1..ti.len()).all(|k| ti.value(k) == tj.value(k));
            if pointwise != relation[i][j] {
                reversing = false;
            }
            if i != j && !same && seqs[i].levels() == seqs[j].levels() {
                injective = false;
            }
        }
    }

    Ok(SequencePoset {
        longest_chain: longest_chain(&relation),
        largest_antichain: largest_antichain(&relation),
        relation,
        embedding_injective: injective,
        embedding_order_reversing: reversing,
    })
}

/// Number of elements in a longest strictly increasing chain.
fn longest_chain(rel: &[Vec<bool>]) -> usize {
    let n = rel.len();
    let strict = |i: usize, j: usize| rel[i][j] && !rel[j][i];
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (0..n).filter(|&j| strict(j, i)).count());
    let mut best = vec![1; n];
    for (pos, &i) in order.iter().enumerate() {
        for &j in &order[..pos] {
            if strict(j, i) {
                best[i] = best[i].max(best[j] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}

/// Size of a largest antichain: by Dilworth, `n` minus a maximum matching
/// in the bipartite graph of strict comparabilities.
fn largest_antichain(rel: &[Vec<bool>]) -> usize {
    let n = rel.len();
    let strict = |i: usize, j: usize| rel[i][j] && !rel[j][i];
    let mut mate: Vec<Option<usize>> = vec![None; n];
    let mut matched = 0;
    for u in 0..n {
        let mut seen = vec![false; n];
        if augment(u, &strict, &mut seen, &mut mate) {
            matched += 1;
        }
    }
    n - matched
}

fn augment(u: usize, strict: &dyn Fn(usize, usize) -> bool, seen: &mut [bool], mate: &mut [Option<usize>]) -> bool {
    for v in 0..mate.len() {
        if strict(u, v) && !seen[v] {
            seen[v] = true;
            if mate[v].is_none_or(|w| augment(w, strict, seen, mate)) {
                mate[v] = Some(u);
                return true;
            }
        }
    }
    false
}
