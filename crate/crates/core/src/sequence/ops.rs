use std::sync::Arc;

use serde::Serialize;

use super::{OperationSequence, SequencePresentation};
use crate::error::{Error, Result};
use crate::lattice::{product, Lattice, ProductLattice};

/// `p ⊑ q`: every `f_n` of `p` lies below the matching `g_n` of `q`.
///
/// Decided by level containment: `p ⊑ q` iff `R_q(α) ⊆ R_p(α)` for all `α`.
pub fn leq_sequences(p: &SequencePresentation, q: &SequencePresentation) -> Result<bool> {
    if p.lattice() != q.lattice() {
        return Err(Error::LatticeMismatch);
    }
    for (rp, rq) in p.levels().iter().zip(q.levels()) {
        if !rq.is_subset(rp)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Componentwise sequence on `L1 × L2`:
/// `f_n((α_1, β_1), …) = (f¹_n(α_1, …), f²_n(β_1, …))`.
pub fn product_sequence(p1: &SequencePresentation, p2: &SequencePresentation) -> SequencePresentation {
    let prod = product(p1.lattice(), p2.lattice());
    let (m1, m2) = (p1.lattice().size(), p2.lattice().size());
    let cap = p1.cap().max(p2.cap());
    let target = Arc::new(prod.lattice.clone());
    SequencePresentation::from_function(target, cap, |a| {
        let mut left = vec![0; m1];
        let mut right = vec![0; m2];
        for (idx, &k) in a.iter().enumerate() {
            let (x, y) = prod.split(idx);
            left[x] += k;
            right[y] += k;
        }
        prod.pair(p1.value(&left), p2.value(&right))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Restriction of a sequence on a product to one factor:
/// `f¹_n(α_1, …) = first coordinate of f_n((α_1, 0), …)`.
pub fn project_sequence(p: &SequencePresentation, prod: &ProductLattice, side: Side) -> Result<SequencePresentation> {
    if p.lattice() != &prod.lattice {
        return Err(Error::NotAProduct);
    }
    let factor = match side {
        Side::Left => &prod.left,
        Side::Right => &prod.right,
    };
    let m = prod.lattice.size();
    let embed = |x: usize| match side {
        Side::Left => prod.pair(x, prod.right.bottom()),
        Side::Right => prod.pair(prod.left.bottom(), x),
    };
    let target = Arc::new(factor.clone());
    Ok(SequencePresentation::from_function(target, p.cap(), |a| {
        let mut lifted = vec![0; m];
        for (x, &k) in a.iter().enumerate() {
            lifted[embed(x)] += k;
        }
        let (u, v) = prod.split(p.value(&lifted));
        match side {
            Side::Left => u,
            Side::Right => v,
        }
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Nilpotency {
    /// The series reaches the bottom at `γ_{class+1}`.
    Nilpotent { class: usize },
    /// The series stabilizes at `limit > 0`.
    NotNilpotent { limit: usize },
}

/// `γ_1 = 1`, `γ_n = f_2(1, γ_{n-1})`, stopped at the bottom or at the
/// first repeat.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CentralSeries {
    pub terms: Vec<usize>,
    pub verdict: Nilpotency,
}

pub fn lower_central_series(p: &SequencePresentation) -> CentralSeries {
    let l: &Lattice = p.lattice();
    let (top, bottom) = (l.top(), l.bottom());
    let mut terms = vec![top];
    if top == bottom {
        return CentralSeries {
            terms,
            verdict: Nilpotency::Nilpotent { class: 0 },
        };
    }
    loop {
        let last = *terms.last().expect("nonempty");
        let next = p.evaluate(&[top, last]).expect("two arguments");
        if next == bottom {
            terms.push(next);
            let class = terms.len() - 1;
            return CentralSeries {
                terms,
                verdict: Nilpotency::Nilpotent { class },
            };
        }
        if terms.contains(&next) {
            return CentralSeries {
                terms,
                verdict: Nilpotency::NotNilpotent { limit: next },
            };
        }
        terms.push(next);
    }
}

/// Least `N` with `f_N(1, …, 1) = 0`, or `None` if `f_n(1, …, 1)` stays
/// above the bottom for every `n`.
pub fn vanishing_arity(p: &SequencePresentation) -> Option<u32> {
    let l = p.lattice();
    let mut a = vec![0; l.size()];
    for n in 1..=p.cap() {
        a[l.top()] = n;
        if p.value(&a) == l.bottom() {
            return Some(n);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::catalog;
    use crate::sequence::{check_admissible, TruncatedTable};
    use crate::upset::Vector;

    fn b2_sequences() -> (Arc<Lattice>, [SequencePresentation; 3]) {
        let l = Arc::new(catalog("B2").unwrap());
        let g = TruncatedTable::new(l.clone(), 1, [(Vector(vec![0, 1]), 1)]).unwrap();
        let seqs = [
            SequencePresentation::zero(l.clone()),
            SequencePresentation::from_truncated_table(&g).unwrap(),
            SequencePresentation::meet(l.clone()),
        ];
        (l, seqs)
    }

    #[test]
    fn chain_of_b2_sequences() {
        let (_, [f, g, h]) = b2_sequences();
        assert!(leq_sequences(&f, &g).unwrap());
        assert!(leq_sequences(&g, &h).unwrap());
        assert!(leq_sequences(&f, &h).unwrap());
        assert!(!leq_sequences(&h, &g).unwrap());
        assert!(leq_sequences(&g, &g).unwrap());
        let m3 = SequencePresentation::zero(Arc::new(catalog("M3").unwrap()));
        assert!(matches!(leq_sequences(&f, &m3), Err(Error::LatticeMismatch)));
    }

    #[test]
    fn products_of_b2_sequences() {
        let (l, [f, g, h]) = b2_sequences();
        let prod = product(&l, &l);
        let sq = Arc::new(prod.lattice.clone());
        assert_eq!(product_sequence(&h, &h), SequencePresentation::meet(sq.clone()));
        assert_eq!(product_sequence(&f, &f), SequencePresentation::zero(sq.clone()));
        let gf = product_sequence(&g, &f);
        for beta in 0..2 {
            assert_eq!(gf.evaluate(&[prod.pair(1, beta)]).unwrap(), prod.pair(1, 0));
        }
        assert_eq!(gf.evaluate(&[3, 3]).unwrap(), 0);
        assert_eq!(gf.evaluate(&[3, 3, 3]).unwrap(), 0);
        assert!(check_admissible(&gf).is_admissible());
    }

    #[test]
    fn projections_invert_products() {
        let (l, seqs) = b2_sequences();
        let prod = product(&l, &l);
        for p1 in &seqs {
            for p2 in &seqs {
                let both = product_sequence(p1, p2);
                assert_eq!(&project_sequence(&both, &prod, Side::Left).unwrap(), p1);
                assert_eq!(&project_sequence(&both, &prod, Side::Right).unwrap(), p2);
            }
        }
        let h_sq = SequencePresentation::meet(Arc::new(prod.lattice.clone()));
        assert_eq!(project_sequence(&h_sq, &prod, Side::Left).unwrap(), seqs[2]);
        assert!(matches!(
            project_sequence(&seqs[0], &prod, Side::Left),
            Err(Error::NotAProduct)
        ));
    }

    #[test]
    fn central_series() {
        let (_, [f, g, h]) = b2_sequences();
        let zero = lower_central_series(&f);
        assert_eq!(zero.terms, vec![1, 0]);
        assert_eq!(zero.verdict, Nilpotency::Nilpotent { class: 1 });
        assert_eq!(lower_central_series(&g).verdict, Nilpotency::Nilpotent { class: 1 });
        let meet = lower_central_series(&h);
        assert_eq!(meet.terms, vec![1]);
        assert_eq!(meet.verdict, Nilpotency::NotNilpotent { limit: 1 });
        let one = SequencePresentation::zero(Arc::new(catalog("ONE").unwrap()));
        assert_eq!(lower_central_series(&one).verdict, Nilpotency::Nilpotent { class: 0 });
    }

    #[test]
    fn vanishing_arities() {
        let (_, [f, g, h]) = b2_sequences();
        assert_eq!(vanishing_arity(&f), Some(1));
        assert_eq!(vanishing_arity(&g), Some(2));
        assert_eq!(vanishing_arity(&h), None);
    }
}
