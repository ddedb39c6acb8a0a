//! Backtracking search for admissible level assignments.
//!
//! Variables are the vectors `a` whose support has a meet above the bottom
//! (every other value is forced to the bottom by HC1). They are assigned in
//! order of size, then lexicographically. Each axiom instance is compiled
//! into a constraint that is evaluated as soon as its last variable is set.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::sequence::{check_admissible, support_meet, SequencePresentation};

/// Which vectors carry free values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Universe {
    /// Every vector of `[0, c]^m`; larger vectors are truncated at `c`.
    Capped(u32),
    /// Vectors of size at most `T`; larger vectors take the bottom value.
    Truncated(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Term {
    Var(usize),
    Fixed(usize),
}

#[derive(Debug, Clone)]
enum Constraint {
    /// `E(lhs) <= E(rhs)`.
    Le(Term, Term),
    /// `E(z) = E(x) ∨ E(y)`.
    JoinEq { z: Term, x: Term, y: Term },
    /// `E(outer[E(inner)]) <= E(rhs)`.
    Nest { inner: Term, outer: Vec<Term>, rhs: Term },
}

pub(crate) struct Space {
    lattice: Arc<Lattice>,
    universe: Universe,
    vars: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    domains: Vec<Vec<usize>>,
    triggers: Vec<Vec<Constraint>>,
    infeasible: bool,
}

impl Space {
    pub(crate) fn new(lattice: Arc<Lattice>, universe: Universe) -> Self {
        let l = &*lattice;
        let m = l.size();
        let mut vars = Vec::new();
        match universe {
            Universe::Capped(c) => collect_box(l, &mut vec![0; m], 0, c, u32::MAX, &mut vars),
            Universe::Truncated(t) => collect_box(l, &mut vec![0; m], 0, t, t, &mut vars),
        }
        vars.sort_by(|a, b| total(a).cmp(&total(b)).then_with(|| a.cmp(b)));
        let index = vars.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let order = l.bottom_up();
        let domains = vars
            .iter()
            .map(|a| {
                let top = support_meet(l, a);
                order.iter().copied().filter(|&x| l.leq(x, top)).collect()
            })
            .collect();
        let n = vars.len();
        let mut space = Space {
            lattice,
            universe,
            vars,
            index,
            domains,
            triggers: vec![Vec::new(); n],
            infeasible: false,
        };
        space.compile();
        space
    }

    #[cfg(test)]
    pub(crate) fn var_count(&self) -> usize {
        self.vars.len()
    }

    fn resolve(&self, a: &[u32]) -> Term {
        let l = &*self.lattice;
        let key: Vec<u32> = match self.universe {
            Universe::Capped(c) => a.iter().map(|&x| x.min(c)).collect(),
            Universe::Truncated(t) => {
                if total(a) > t {
                    return Term::Fixed(l.bottom());
                }
                a.to_vec()
            }
        };
        match self.index.get(&key) {
            Some(&i) => Term::Var(i),
            None => Term::Fixed(l.bottom()),
        }
    }

    fn shifted(&self, a: &[u32], i: usize, up: bool) -> Term {
        let mut b = a.to_vec();
        if up {
            b[i] += 1;
        } else {
            b[i] -= 1;
        }
        self.resolve(&b)
    }

    /// Vectors `a` for which `a + e_x` may be live: zero and every variable.
    fn bases(&self) -> Vec<Vec<u32>> {
        let m = self.lattice.size();
        std::iter::once(vec![0; m]).chain(self.vars.iter().cloned()).collect()
    }

    fn compile(&mut self) {
        let arc = self.lattice.clone();
        let l: &Lattice = &arc;
        let m = l.size();
        let bottom = l.bottom();
        let mut out: Vec<Constraint> = Vec::new();

        for a in &self.vars {
            let here = self.resolve(a);
            for i in (0..m).filter(|&i| a[i] > 0) {
                // HC3: E(a) <= E(a - e_i).
                if total(a) > 1 {
                    out.push(Constraint::Le(here, self.shifted(a, i, false)));
                }
                // HC2: E(a) <= E(a - e_i + e_j) for α_i < α_j.
                for j in (0..m).filter(|&j| l.lt(i, j)) {
                    let mut b = a.clone();
                    b[i] -= 1;
                    b[j] += 1;
                    out.push(Constraint::Le(here, self.resolve(&b)));
                    if self.universe == Universe::Capped(a[i]) {
                        // Same instance for `a + e_i`, which truncates to `a`.
                        out.push(Constraint::Le(here, self.shifted(a, j, true)));
                    }
                }
            }
        }

        let pairs: Vec<(usize, usize)> = (0..m).flat_map(|x| ((x + 1)..m).map(move |y| (x, y))).collect();
        for a in self.bases() {
            // HC7, binary form.
            for &(x, y) in &pairs {
                let z = l.join(x, y);
                out.push(Constraint::JoinEq {
                    z: self.shifted(&a, z, true),
                    x: self.shifted(&a, x, true),
                    y: self.shifted(&a, y, true),
                });
            }
            // HC8: E(b + e_{E(c')}) <= E(b + c').
            for (ci, c) in self.vars.iter().enumerate() {
                let outer: Vec<Term> = (0..m)
                    .map(|g| {
                        if self.domains[ci].contains(&g) {
                            self.shifted(&a, g, true)
                        } else {
                            Term::Fixed(bottom)
                        }
                    })
                    .collect();
                if outer.iter().all(|&t| t == Term::Fixed(bottom)) {
                    continue;
                }
                let sum: Vec<u32> = a.iter().zip(c).map(|(x, y)| x + y).collect();
                out.push(Constraint::Nest {
                    inner: Term::Var(ci),
                    outer,
                    rhs: self.resolve(&sum),
                });
            }
        }

        for con in out {
            match self.trigger(&con) {
                Some(k) => self.triggers[k].push(con),
                None => {
                    if !holds(l, &con, &[]) {
                        self.infeasible = true;
                    }
                }
            }
        }
    }

    fn trigger(&self, con: &Constraint) -> Option<usize> {
        let var = |t: &Term| match *t {
            Term::Var(i) => Some(i),
            Term::Fixed(_) => None,
        };
        match con {
            Constraint::Le(a, b) => var(a).max(var(b)),
            Constraint::JoinEq { z, x, y } => var(z).max(var(x)).max(var(y)),
            Constraint::Nest { inner, outer, rhs } => outer.iter().map(var).fold(var(inner).max(var(rhs)), Option::max),
        }
    }

    /// All complete assignments, in search order. Each tried value counts
    /// against `budget`.
    pub(crate) fn solve(&self, budget: u64) -> Result<Vec<Vec<usize>>> {
        let mut run = Run {
            space: self,
            values: vec![0; self.vars.len()],
            nodes: 0,
            budget,
            found: Vec::new(),
        };
        if !self.infeasible {
            run.descend(0)?;
        }
        Ok(run.found)
    }

    /// The presentation of a complete assignment.
    pub(crate) fn presentation(&self, values: &[usize]) -> SequencePresentation {
        let cap = match self.universe {
            Universe::Capped(c) => c,
            Universe::Truncated(t) => t + 1,
        };
        SequencePresentation::from_function(self.lattice.clone(), cap, |a| match self.resolve(a) {
            Term::Var(i) => values[i],
            Term::Fixed(x) => x,
        })
    }

    /// Solves, converts and keeps the solutions that pass the full check.
    pub(crate) fn sequences(&self, budget: u64) -> Result<Vec<SequencePresentation>> {
        let mut out = Vec::new();
        for values in self.solve(budget)? {
            let p = self.presentation(&values);
            let report = check_admissible(&p);
            debug_assert!(report.is_admissible(), "search admitted {:?}", report);
            if report.is_admissible() && !out.contains(&p) {
                out.push(p);
            }
        }
        Ok(out)
    }
}

struct Run<'a> {
    space: &'a Space,
    values: Vec<usize>,
    nodes: u64,
    budget: u64,
    found: Vec<Vec<usize>>,
}

impl Run<'_> {
    fn descend(&mut self, k: usize) -> Result<()> {
        let space = self.space;
        if k == space.vars.len() {
            self.found.push(self.values.clone());
            return Ok(());
        }
        for &x in &space.domains[k] {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::SearchBudgetExceeded(self.budget));
            }
            self.values[k] = x;
            if space.triggers[k]
                .iter()
                .all(|con| holds(&space.lattice, con, &self.values))
            {
                self.descend(k + 1)?;
            }
        }
        Ok(())
    }
}

fn holds(l: &Lattice, con: &Constraint, values: &[usize]) -> bool {
    let get = |t: &Term| match *t {
        Term::Var(i) => values[i],
        Term::Fixed(x) => x,
    };
    match con {
        Constraint::Le(a, b) => l.leq(get(a), get(b)),
        Constraint::JoinEq { z, x, y } => get(z) == l.join(get(x), get(y)),
        Constraint::Nest { inner, outer, rhs } => l.leq(get(&outer[get(inner)]), get(rhs)),
    }
}

fn total(a: &[u32]) -> u32 {
    a.iter().sum()
}

/// Live nonzero vectors with coordinates at most `c` and size at most
/// `size_limit`.
fn collect_box(l: &Lattice, a: &mut Vec<u32>, pos: usize, c: u32, size_limit: u32, out: &mut Vec<Vec<u32>>) {
    if pos == a.len() {
        if total(a) > 0 && support_meet(l, a) != l.bottom() {
            out.push(a.clone());
        }
        return;
    }
    let used = total(&a[..pos]);
    let mut k = 0;
    while k <= c && used + k <= size_limit {
        a[pos] = k;
        collect_box(l, a, pos + 1, c, size_limit, out);
        k += 1;
    }
    a[pos] = 0;
}
