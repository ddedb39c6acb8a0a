use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use hcseq::enumerate::{
    brute_force_oracle, classify, classify_by_oracle, enumerate_nonsplitting, infinite_family, sequence_poset, Verdict,
    DEFAULT_BUDGET,
};
use hcseq::sequence::{
    check_admissible, leq_sequences, lower_central_series, product_sequence, vanishing_arity, Nilpotency,
    OperationSequence, SequencePresentation,
};
use hcseq::{catalog, product, Error, Lattice, Vector};

type Outcome = Result<String, String>;
type Rule<'a> = &'a dyn Fn(&[usize]) -> usize;
type Criterion = (&'static str, &'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lattice(name: &str) -> Lattice {
    catalog(name).expect("catalog lattice")
}

fn finite(l: &Lattice) -> Result<Vec<SequencePresentation>, String> {
    let c = classify(l).map_err(|e| e.to_string())?;
    c.sequences()
        .map(<[_]>::to_vec)
        .ok_or_else(|| "expected a finite verdict".into())
}

/// Every argument list of length `1..=n` over `m` elements.
fn tuples(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut layer = vec![Vec::new()];
    for _ in 0..n {
        layer = layer
            .into_iter()
            .flat_map(|t: Vec<usize>| {
                (0..m).map(move |x| {
                    let mut u = t.clone();
                    u.push(x);
                    u
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn box_vectors(m: usize, hi: u32) -> impl Iterator<Item = Vector> {
    let mut v = vec![0u32; m];
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = Vector(v.clone());
        done = true;
        for x in v.iter_mut() {
            if *x < hi {
                *x += 1;
                done = false;
                break;
            }
            *x = 0;
        }
        Some(out)
    })
}

fn pointwise_leq(p: &SequencePresentation, q: &SequencePresentation, arity: usize) -> bool {
    let l = p.lattice();
    tuples(l.size(), arity)
        .iter()
        .all(|t| l.leq(p.evaluate(t).unwrap(), q.evaluate(t).unwrap()))
}

fn ac1() -> Outcome {
    let l = lattice("B2");
    let seqs = finite(&l)?;
    ensure(seqs.len() == 3, || format!("count {}", seqs.len()))?;
    let (zero, one) = (l.index_of("0").unwrap(), l.index_of("1").unwrap());
    let f = |_: &[usize]| zero;
    let g = |t: &[usize]| if t == [one] { one } else { zero };
    let h = |t: &[usize]| l.meet_all(t.iter().copied());
    let defs: [Rule; 3] = [&f, &g, &h];
    for (name, def) in ["f", "g", "h"].iter().zip(defs) {
        let hits = seqs
            .iter()
            .filter(|p| tuples(2, 6).iter().all(|t| p.evaluate(t).unwrap() == def(t)))
            .count();
        ensure(hits == 1, || format!("{name} matched {hits} sequences"))?;
    }
    let oracle: BTreeSet<_> = brute_force_oracle(&l, 2)
        .map_err(|e| e.to_string())?
        .into_iter()
        .collect();
    ensure(oracle == seqs.iter().cloned().collect(), || {
        "oracle at cap 2 disagrees".into()
    })?;
    Ok("3 sequences = f, g, h; oracle cap 2 agrees".into())
}

fn ac2() -> Outcome {
    let mut infinite = Vec::new();
    for name in ["ONE", "B2", "M2", "M3", "M4", "C3", "C4", "B2xC3"] {
        let l = lattice(name);
        let strong = if l.size() < 2 {
            None
        } else {
            l.splits_strongly().map_err(|e| e.to_string())?
        };
        let c = classify(&l).map_err(|e| format!("{name}: {e}"))?;
        match (&c.verdict, strong) {
            (Verdict::Infinite { pair, .. }, Some(p)) if *pair == p => infinite.push(name),
            (Verdict::Finite(_), None) => {}
            _ => return Err(format!("{name}: verdict does not match the strong-split test")),
        }
    }
    ensure(infinite == ["C3", "C4", "B2xC3"], || {
        format!("infinite on {infinite:?}")
    })?;
    Ok(format!("infinite exactly on {}", infinite.join(", ")))
}

fn ac3() -> Outcome {
    let l = lattice("M3");
    let oracle = brute_force_oracle(&l, 3).map_err(|e| e.to_string())?;
    let seqs = enumerate_nonsplitting(&l).map_err(|e| e.to_string())?;
    let a: BTreeSet<_> = seqs.iter().cloned().collect();
    let b: BTreeSet<_> = oracle.iter().cloned().collect();
    ensure(a == b, || format!("enumeration {} vs oracle {}", a.len(), b.len()))?;
    for p in &seqs {
        let n = vanishing_arity(p);
        ensure(n.is_some_and(|n| n <= 3), || format!("vanishing arity {n:?}"))?;
    }
    Ok(format!(
        "{} sequences, equal to oracle(M3, 3); all vanish by arity 3",
        seqs.len()
    ))
}

fn ac4() -> Outcome {
    let m2 = lattice("M2");
    let seqs = finite(&m2)?;
    let b2 = lattice("B2");
    let b2seqs = finite(&b2)?;
    let square = product(&b2, &b2);
    let target = Arc::new(square.lattice.clone());
    let map = m2.is_isomorphic(&target).ok_or("M2 is not B2 x B2")?;
    let back: Vec<usize> = (0..map.len())
        .map(|y| map.iter().position(|&x| x == y).unwrap())
        .collect();

    let products: BTreeSet<_> = b2seqs
        .iter()
        .flat_map(|p| b2seqs.iter().map(move |q| product_sequence(p, q)))
        .map(|pq| pq.transport(Arc::new(m2.clone()), &back).unwrap())
        .collect();
    ensure(products.len() == 9, || format!("{} distinct products", products.len()))?;
    ensure(products == seqs.iter().cloned().collect(), || {
        format!("{} enumerated vs 9 products", seqs.len())
    })?;

    let sq = &square.lattice;
    let zero = b2.bottom();
    let mut checked = 0usize;
    for p in &seqs {
        let q = p.transport(target.clone(), &map).map_err(|e| e.to_string())?;
        for t in tuples(sq.size(), 4) {
            let left: Vec<usize> = t.iter().map(|&x| square.pair(square.split(x).0, zero)).collect();
            let right: Vec<usize> = t.iter().map(|&x| square.pair(zero, square.split(x).1)).collect();
            let joined = sq.join(q.evaluate(&left).unwrap(), q.evaluate(&right).unwrap());
            ensure(q.evaluate(&t).unwrap() == joined, || {
                format!("product law fails at {t:?}")
            })?;
            checked += 1;
        }
    }
    Ok(format!("9 = 3 x 3 products; product law on {checked} argument lists"))
}

fn ac5() -> Outcome {
    let l = lattice("C3");
    let pair = l.splits_strongly().unwrap().ok_or("C3 does not split strongly")?;
    let family = infinite_family(&l, pair, 10).map_err(|e| e.to_string())?;
    ensure(family.len() == 11, || format!("{} members", family.len()))?;
    for (j, h) in family.iter().enumerate() {
        ensure(check_admissible(h).is_admissible(), || format!("h{j} not admissible"))?;
    }
    let distinct: BTreeSet<_> = family.iter().collect();
    ensure(distinct.len() == 11, || "members repeat".into())?;
    for w in family.windows(2) {
        let up = leq_sequences(&w[0], &w[1]).unwrap() && !leq_sequences(&w[1], &w[0]).unwrap();
        ensure(up, || "not a strictly ascending chain".into())?;
    }
    for c in 1..=11 {
        let oracle: BTreeSet<_> = brute_force_oracle(&l, c)
            .map_err(|e| e.to_string())?
            .into_iter()
            .collect();
        for (j, h) in family.iter().enumerate() {
            let expected = h.cap_degree() <= c;
            ensure(oracle.contains(h) == expected, || {
                format!("h{j} (degree {}) vs oracle cap {c}", h.cap_degree())
            })?;
        }
    }
    let degrees: Vec<u32> = family.iter().map(|h| h.cap_degree()).collect();
    Ok(format!(
        "11 admissible members, strictly ascending, degrees {degrees:?}, each in oracle from its degree"
    ))
}

fn ac6() -> Outcome {
    let mut pairs = 0;
    for name in ["B2", "M2", "M3"] {
        let seqs = finite(&lattice(name))?;
        for p in &seqs {
            for q in &seqs {
                let fast = leq_sequences(p, q).map_err(|e| e.to_string())?;
                ensure(fast == pointwise_leq(p, q, 4), || format!("{name}: disagreement"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!(
        "{pairs} ordered pairs agree with pointwise comparison at arity <= 4"
    ))
}

fn stored_presentations() -> Vec<SequencePresentation> {
    let mut out = Vec::new();
    for name in ["ONE", "B2", "M2", "M3", "M4"] {
        out.extend(classify(&lattice(name)).unwrap().sequences().unwrap().iter().cloned());
    }
    for name in ["C3", "C4", "B2xC3"] {
        let l = lattice(name);
        let pair = l.splits_strongly().unwrap().unwrap();
        out.extend(infinite_family(&l, pair, if l.size() > 4 { 3 } else { 10 }).unwrap());
    }
    out.extend(brute_force_oracle(&lattice("C3"), 4).unwrap());
    out
}

fn ac7() -> Outcome {
    let seqs = stored_presentations();
    let mut points = 0usize;
    for p in &seqs {
        let (m, c) = (p.lattice().size(), p.cap());
        for a in box_vectors(m, c + 3).filter(|a| !a.is_zero()) {
            let capped = a.cap(c);
            ensure(
                p.evaluate_vector(&a).unwrap() == p.evaluate_vector(&capped).unwrap(),
                || format!("value of {a} differs from its cap {capped}"),
            )?;
            points += 1;
        }
    }
    Ok(format!("{} presentations, {points} box points", seqs.len()))
}

fn ac8() -> Outcome {
    let m2 = lattice("M2");
    let d = m2.decompose().map_err(|e| e.to_string())?;
    ensure(d.core.size() == 1 && d.b2_power == 2 && d.verify(&m2), || {
        "M2 decomposition".into()
    })?;
    let m3 = lattice("M3");
    let d = m3.decompose().map_err(|e| e.to_string())?;
    ensure(
        d.b2_power == 0 && d.core.is_isomorphic(&m3).is_some() && d.verify(&m3),
        || "M3 decomposition".into(),
    )?;
    let c3 = lattice("C3");
    ensure(matches!(c3.decompose(), Err(Error::StronglySplits(..))), || {
        "C3 should refuse".into()
    })?;
    Ok("M2 = ONE x B2^2, M3 = M3 x B2^0, C3 refused; isomorphisms verified".into())
}

fn ac9() -> Outcome {
    let mut total = 0;
    for name in ["M3", "M4"] {
        let l = lattice(name);
        let atoms = l.atoms().map_err(|e| e.to_string())?.len();
        for p in finite(&l)? {
            ensure(check_admissible(&p).is_admissible(), || format!("{name}: inadmissible"))?;
            match lower_central_series(&p).verdict {
                Nilpotency::Nilpotent { class } if class <= atoms => total += 1,
                v => return Err(format!("{name}: {v:?} with {atoms} atoms")),
            }
        }
    }
    Ok(format!("{total} sequences reach 0 within #atoms steps"))
}

fn ac10() -> Outcome {
    let mut stats = Vec::new();
    for name in ["ONE", "B2", "M2", "M3", "M4"] {
        let seqs = finite(&lattice(name))?;
        let poset = sequence_poset(&seqs).map_err(|e| e.to_string())?;
        ensure(poset.embedding_injective && poset.embedding_order_reversing, || {
            format!("{name}: embedding")
        })?;
        ensure(
            poset.longest_chain <= seqs.len() && poset.largest_antichain <= seqs.len(),
            || name.into(),
        )?;
        stats.push(format!(
            "{name} {}/{}/{}",
            poset.len(),
            poset.longest_chain,
            poset.largest_antichain
        ));
    }
    Ok(format!("size/chain/antichain: {}", stats.join(", ")))
}

fn oracle_classification_agrees() -> Outcome {
    let c = classify_by_oracle(&lattice("M2"), None, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    ensure(c.sequences().map(<[_]>::len) == Some(9), || "M2 oracle count".into())?;
    Ok(format!("derived cap {:?}", c.cap))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("AC1", "B2 exact count", Duration::from_secs(1), ac1),
        ("AC2", "strong-split dichotomy", Duration::from_secs(10), ac2),
        ("AC3", "M3 vanishing bound", Duration::from_secs(300), ac3),
        ("AC4", "product law on M2", Duration::from_secs(60), ac4),
        ("AC5", "infinite family on C3", Duration::from_secs(10), ac5),
        ("AC6", "order by level containment", Duration::from_secs(60), ac6),
        ("AC7", "capping soundness", Duration::from_secs(60), ac7),
        ("AC8", "decomposition", Duration::from_secs(10), ac8),
        ("AC9", "nilpotency on M3, M4", Duration::from_secs(10), ac9),
        ("AC10", "sequence poset report", Duration::from_secs(10), ac10),
    ];
    let mut failed = 0;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match result {
            Ok(detail) if elapsed <= limit => Ok(detail),
            Ok(detail) => Err(format!("{detail}; too slow")),
            Err(e) => Err(e),
        };
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "{id:<5} {tag} {name} [{:.3} s, limit {} s]: {detail}",
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    match oracle_classification_agrees() {
        Ok(d) => println!("extra PASS oracle classification of M2: {d}"),
        Err(d) => {
            failed += 1;
            println!("extra FAIL oracle classification of M2: {d}");
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
