use super::Lattice;

/// Per-element invariant used to prune candidate images.
fn signatures(l: &Lattice) -> Vec<(usize, usize, usize)> {
    let h = l.heights();
    (0..l.size())
        .map(|x| (h[x], l.lower_covers(x).len(), l.upper_covers(x).len()))
        .collect()
}

impl Lattice {
    /// An order isomorphism onto `other` as an index map, if one exists.
    ///
    /// Order isomorphisms between lattices preserve meets and joins, so the
    /// search only has to respect `<=` in both directions.
    pub fn is_isomorphic(&self, other: &Lattice) -> Option<Vec<usize>> {
        if self.size() != other.size() {
            return None;
        }
        let (sa, sb) = (signatures(self), signatures(other));
        let mut ka = sa.clone();
        let mut kb = sb.clone();
        ka.sort_unstable();
        kb.sort_unstable();
        if ka != kb {
            return None;
        }
        let order = self.bottom_up();
        let mut map = vec![usize::MAX; self.size()];
        let mut used = vec![false; other.size()];
        if self.extend_iso(other, &order, 0, &sa, &sb, &mut map, &mut used) {
            Some(map)
        } else {
            None
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_iso(
        &self,
        other: &Lattice,
        order: &[usize],
        depth: usize,
        sa: &[(usize, usize, usize)],
        sb: &[(usize, usize, usize)],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let Some(&x) = order.get(depth) else { return true };
        for y in 0..other.size() {
            if used[y] || sa[x] != sb[y] {
                continue;
            }
            let consistent = order[..depth].iter().all(|&z| {
                let w = map[z];
                self.leq(z, x) == other.leq(w, y) && self.leq(x, z) == other.leq(y, w)
            });
            if !consistent {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if self.extend_iso(other, order, depth + 1, sa, sb, map, used) {
                return true;
            }
            used[y] = false;
            map[x] = usize::MAX;
        }
        false
    }

    /// Checks that `map` is a bijection onto `other` preserving meet and join.
    pub fn is_lattice_isomorphism(&self, other: &Lattice, map: &[usize]) -> bool {
        let m = self.size();
        if other.size() != m || map.len() != m {
            return false;
        }
        let mut seen = vec![false; m];
        for &y in map {
            if y >= m || std::mem::replace(&mut seen[y], true) {
                return false;
            }
        }
        (0..m).all(|x| {
            (0..m).all(|y| {
                map[self.meet(x, y)] == other.meet(map[x], map[y]) && map[self.join(x, y)] == other.join(map[x], map[y])
            })
        })
    }
}
