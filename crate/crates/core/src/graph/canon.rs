//! Canonical labeling: the isomorph whose row-major edge vector is
//! lexicographically smallest over all vertex permutations.
//!
//! The search places vertices position by position. Once positions
//! `0..k` are fixed, the remaining vertices sit in an ordered partition
//! whose cells are forced by minimality of the earlier rows (within each
//! cell, non-neighbours of a placed vertex precede its neighbours), so
//! row `k` is fully determined by the choice of the vertex at position `k`.
//! Branches whose partial edge vector exceeds the incumbent are cut, and
//! automorphisms discovered at tied leaves prune equivalent siblings.

use std::cmp::Ordering;

use super::{full_mask, CanonicalKey, Graph, DEFAULT_MAX_ORDER, MAX_REPR_ORDER};
use crate::error::{Error, Result};

const MAX_GENERATORS: usize = 64;

struct Search<'a> {
    adj: &'a [u32],
    n: usize,
    best_rows: Vec<u32>,
    best_perm: Vec<u8>,
    path: Vec<u8>,
    generators: Vec<Vec<u8>>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.order();
        Search {
            adj: &g.adj,
            n,
            best_rows: vec![0; n],
            best_perm: Vec::with_capacity(n),
            path: Vec::with_capacity(n),
            generators: Vec::new(),
        }
    }

    /// Row bits of the vertex `v` placed next, and the refined cells after it.
    fn place(&self, v: usize, cells: &[u32]) -> (u32, Vec<u32>) {
        let nb = self.adj[v];
        let mut row = 0u64;
        let mut next = Vec::with_capacity(cells.len() + 1);
        for (idx, &cell) in cells.iter().enumerate() {
            let cell = if idx == 0 { cell & !(1 << v) } else { cell };
            if cell == 0 {
                continue;
            }
            let yes = cell & nb;
            let no = cell & !nb;
            let b = yes.count_ones();
            row <<= no.count_ones();
            row = (row << b) | ((1u64 << b) - 1);
            if no != 0 {
                next.push(no);
            }
            if yes != 0 {
                next.push(yes);
            }
        }
        (row as u32, next)
    }

    /// Orbit representatives under the generators fixing the current prefix.
    fn orbits(&self, parent: &mut [u8]) {
        for (v, p) in parent.iter_mut().enumerate() {
            *p = v as u8;
        }
        fn find(parent: &mut [u8], mut x: u8) -> u8 {
            while parent[x as usize] != x {
                let up = parent[parent[x as usize] as usize];
                parent[x as usize] = up;
                x = up;
            }
            x
        }
        for gamma in &self.generators {
            if self.path.iter().any(|&p| gamma[p as usize] != p) {
                continue;
            }
            for v in 0..self.n {
                let a = find(parent, v as u8);
                let b = find(parent, gamma[v]);
                if a != b {
                    parent[a.max(b) as usize] = a.min(b);
                }
            }
        }
        for v in 0..self.n {
            let r = find(parent, v as u8);
            parent[v] = r;
        }
    }

    /// Returns the level to resume at when a tied leaf yields an automorphism:
    /// it fixes the common prefix with the incumbent, so the whole subtree
    /// below the divergence point mirrors one already searched.
    fn dfs(&mut self, k: usize, cells: &[u32], mut less: bool) -> Option<usize> {
        if k == self.n {
            if less {
                self.best_perm.clone_from(&self.path);
                return None;
            }
            let diverge = (0..self.n).find(|&i| self.path[i] != self.best_perm[i])?;
            if self.generators.len() < MAX_GENERATORS {
                let mut gamma = vec![0u8; self.n];
                for (i, &b) in self.best_perm.iter().enumerate() {
                    gamma[b as usize] = self.path[i];
                }
                self.generators.push(gamma);
            }
            return Some(diverge);
        }
        let mut candidates = cells[0];
        let mut explored = 0u32;
        let mut seen_generators = usize::MAX;
        let mut parent = [0u8; MAX_REPR_ORDER];
        while candidates != 0 {
            let v = candidates.trailing_zeros() as usize;
            candidates &= candidates - 1;
            if explored != 0 {
                if self.generators.len() != seen_generators {
                    seen_generators = self.generators.len();
                    self.orbits(&mut parent[..self.n]);
                }
                let rep = parent[v];
                let mut e = explored;
                let mut redundant = false;
                while e != 0 {
                    let u = e.trailing_zeros() as usize;
                    e &= e - 1;
                    if parent[u] == rep {
                        redundant = true;
                        break;
                    }
                }
                if redundant {
                    continue;
                }
            }
            let (row, next) = self.place(v, cells);
            let child_less = if less {
                true
            } else {
                match row.cmp(&self.best_rows[k]) {
                    Ordering::Greater => continue,
                    Ordering::Less => true,
                    Ordering::Equal => false,
                }
            };
            if child_less {
                self.best_rows[k] = row;
            }
            explored |= 1 << v;
            self.path.push(v as u8);
            let jump = self.dfs(k + 1, &next, child_less);
            self.path.pop();
            less = false;
            if let Some(level) = jump {
                if level < k {
                    return jump;
                }
            }
        }
        None
    }
}

/// Position-to-vertex map of the lexicographically minimal labeling.
fn minimal_labeling(g: &Graph) -> Vec<usize> {
    if g.order() == 0 {
        return Vec::new();
    }
    let mut search = Search::new(g);
    search.dfs(0, &[full_mask(g.order())], true);
    search.best_perm.iter().map(|&v| v as usize).collect()
}

/// Canonical form with an explicit order cap (at most [`MAX_REPR_ORDER`]).
pub fn canonical_form_capped(g: &Graph, max_order: usize) -> Result<Graph> {
    let cap = max_order.min(MAX_REPR_ORDER);
    if g.order() > cap {
        return Err(Error::capacity("order for canonicalization", g.order(), cap));
    }
    let order = minimal_labeling(g);
    let mut new_label = vec![0usize; g.order()];
    for (pos, &v) in order.iter().enumerate() {
        new_label[v] = pos;
    }
    g.relabel(&new_label)
}

/// The isomorph of `g` with lexicographically minimal row-major edge vector.
pub fn canonical_form(g: &Graph) -> Result<Graph> {
    canonical_form_capped(g, DEFAULT_MAX_ORDER)
}

pub fn canonical_key(g: &Graph) -> Result<CanonicalKey> {
    Ok(canonical_form(g)?.labeled_key())
}

pub fn are_isomorphic(g1: &Graph, g2: &Graph) -> Result<bool> {
    if g1.order() != g2.order() || g1.edge_count() != g2.edge_count() {
        // still enforce the capacity contract
        canonical_key(g1)?;
        canonical_key(g2)?;
        return Ok(false);
    }
    Ok(canonical_key(g1)? == canonical_key(g2)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for slot in 0..n {
                let mut q = p.clone();
                q.insert(slot, n - 1);
                out.push(q);
            }
        }
        out
    }

    /// Minimum labeled key over every relabeling.
    fn brute_force_key(g: &Graph) -> CanonicalKey {
        permutations(g.order())
            .iter()
            .map(|p| g.relabel(p).unwrap().labeled_key())
            .min()
            .unwrap()
    }

    fn graph_from_seed(n: usize, seed: u64) -> Graph {
        let mut bits = Vec::new();
        let mut s = seed;
        for _ in 0..n * (n - 1) / 2 {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            bits.push(s >> 33 & 1 == 1);
        }
        Graph::from_edge_bits(n, &bits).unwrap()
    }

    #[test]
    fn path3_labelings_agree() {
        let a = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let b = Graph::from_edges(3, &[(0, 2), (1, 2)]).unwrap();
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
    }

    #[test]
    fn complete_graph_is_fixed() {
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(canonical_form(&k3).unwrap(), k3);
    }

    #[test]
    fn all_labelings_of_p4_share_a_key() {
        let p4 = Graph::path(4).unwrap();
        let keys: std::collections::BTreeSet<_> = permutations(4)
            .iter()
            .map(|p| canonical_key(&p4.relabel(p).unwrap()).unwrap())
            .collect();
        assert_eq!(keys.len(), 1);
        assert_eq!(keys.into_iter().next().unwrap(), brute_force_key(&p4));
    }

    #[test]
    fn isomorphism_examples() {
        let p4 = Graph::path(4).unwrap();
        let relabeled = p4.relabel(&[2, 0, 3, 1]).unwrap();
        assert!(are_isomorphic(&p4, &relabeled).unwrap());
        assert!(!are_isomorphic(&p4, &Graph::star(3).unwrap()).unwrap());
    }

    #[test]
    fn matches_brute_force_on_small_graphs() {
        for n in 1..=7 {
            for seed in 0..12u64 {
                let g = graph_from_seed(n, seed * 7919 + n as u64);
                assert_eq!(
                    canonical_form(&g).unwrap().labeled_key(),
                    brute_force_key(&g),
                    "n={n} seed={seed}"
                );
            }
        }
    }

    #[test]
    fn symmetric_graphs_match_brute_force() {
        let cases = [
            Graph::empty(6).unwrap(),
            Graph::complete(7).unwrap(),
            Graph::cycle(7).unwrap(),
            Graph::star(6).unwrap(),
            Graph::from_edges(6, &[(0, 1), (2, 3), (4, 5)]).unwrap(),
            Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap(),
        ];
        for g in &cases {
            assert_eq!(canonical_key(g).unwrap(), brute_force_key(g), "{g:?}");
        }
    }

    #[test]
    fn order_cap_is_enforced() {
        let g = Graph::empty(25).unwrap();
        assert!(matches!(canonical_form(&g), Err(Error::Capacity { .. })));
        assert!(canonical_form_capped(&g, 32).is_ok());
    }

    proptest! {
        #[test]
        fn canonical_form_is_idempotent_and_relabeling_invariant(
            n in 1usize..=8,
            seed in any::<u64>(),
            perm_seed in any::<u64>(),
        ) {
            let g = graph_from_seed(n, seed);
            let mut perm: Vec<usize> = (0..n).collect();
            let mut s = perm_seed;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1);
                perm.swap(i, (s >> 33) as usize % (i + 1));
            }
            let c = canonical_form(&g).unwrap();
            prop_assert_eq!(&canonical_form(&c).unwrap(), &c);
            prop_assert_eq!(&canonical_form(&g.relabel(&perm).unwrap()).unwrap(), &c);
        }

        #[test]
        fn relabeling_invariant_at_larger_orders(
            n in 9usize..=16,
            seed in any::<u64>(),
            perm_seed in any::<u64>(),
        ) {
            let g = graph_from_seed(n, seed);
            let mut perm: Vec<usize> = (0..n).collect();
            let mut s = perm_seed;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1);
                perm.swap(i, (s >> 33) as usize % (i + 1));
            }
            let c = canonical_form(&g).unwrap();
            prop_assert_eq!(&canonical_form(&g.relabel(&perm).unwrap()).unwrap(), &c);
        }
    }
}
