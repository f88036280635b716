//! Unlabeled simple graphs, their canonical forms and the two semiring
//! operations (disjoint union and cartesian product).
//!
//! A [`Graph`] is stored as one adjacency bitmask per vertex. The logical
//! edge vector is the row-major upper triangle: bit `(i, j)` for `i < j`,
//! ordered by `i` and then by `j`.

mod canon;
mod enumerate;
pub mod graph6;

use std::fmt;

use crate::error::{Error, Result};

pub use canon::{are_isomorphic, canonical_form, canonical_form_capped, canonical_key};
pub use enumerate::{
    enumerate_connected, enumerate_connected_capped, enumerate_graphs, enumerate_graphs_capped,
};

/// Largest vertex count the bitmask representation can hold.
pub const MAX_REPR_ORDER: usize = 32;
/// Default bound on the order of graphs passed to canonicalization.
pub const DEFAULT_MAX_ORDER: usize = 24;
/// Default bound on exhaustive enumeration.
pub const DEFAULT_ENUM_CAP: usize = 8;
/// Hard bound on exhaustive enumeration (needs a larger runtime budget).
pub const EXTENDED_ENUM_CAP: usize = 9;

/// A finite simple graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u32>,
}

/// Row-major upper-triangular edge vector of a labeled graph, packed so that
/// the derived ordering is the lexicographic order on the bit vector.
///
/// `rows[i]` holds the bits `(i, i+1), ..., (i, n-1)` with `(i, i+1)` as the
/// most significant bit. Keys of canonical forms identify isomorphism classes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    n: usize,
    rows: Vec<u32>,
}

impl CanonicalKey {
    pub fn order(&self) -> usize {
        self.n
    }

    /// The edge bit vector in row-major upper-triangular order.
    pub fn bits(&self) -> Vec<bool> {
        let mut out = Vec::with_capacity(self.n * self.n.saturating_sub(1) / 2);
        for (i, &row) in self.rows.iter().enumerate() {
            let len = self.n - 1 - i;
            for t in (0..len).rev() {
                out.push(row >> t & 1 == 1);
            }
        }
        out
    }

    /// Rebuilds the labeled graph this key was read from.
    pub fn to_graph(&self) -> Graph {
        let mut g = Graph::empty_unchecked(self.n);
        for (i, &row) in self.rows.iter().enumerate() {
            let len = self.n - 1 - i;
            for t in 0..len {
                if row >> (len - 1 - t) & 1 == 1 {
                    g.set_edge(i, i + 1 + t);
                }
            }
        }
        g
    }
}

impl Graph {
    fn empty_unchecked(n: usize) -> Self {
        Graph { n, adj: vec![0; n] }
    }

    fn check_order(n: usize) -> Result<()> {
        if n > MAX_REPR_ORDER {
            return Err(Error::capacity("graph order", n, MAX_REPR_ORDER));
        }
        Ok(())
    }

    /// The edgeless graph on `n` vertices. `Graph::empty(0)` is the additive identity.
    pub fn empty(n: usize) -> Result<Self> {
        Self::check_order(n)?;
        Ok(Self::empty_unchecked(n))
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for u in 0..n {
            for v in u + 1..n {
                g.set_edge(u, v);
            }
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for v in 1..n {
            g.set_edge(v - 1, v);
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::domain(format!("cycle needs at least 3 vertices, got {n}")));
        }
        let mut g = Self::path(n)?;
        g.set_edge(0, n - 1);
        Ok(g)
    }

    /// The star `K_{1,leaves}` with centre 0.
    pub fn star(leaves: usize) -> Result<Self> {
        let mut g = Self::empty(leaves + 1)?;
        for v in 1..=leaves {
            g.set_edge(0, v);
        }
        Ok(g)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::domain(format!("edge ({u}, {v}) out of range for order {n}")));
            }
            if u == v {
                return Err(Error::domain(format!("self-loop at vertex {u}")));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from its row-major upper-triangular edge vector.
    pub fn from_edge_bits(n: usize, bits: &[bool]) -> Result<Self> {
        let expected = n * n.saturating_sub(1) / 2;
        if bits.len() != expected {
            return Err(Error::domain(format!(
                "edge vector of length {} does not match order {n} (expected {expected})",
                bits.len()
            )));
        }
        let mut g = Self::empty(n)?;
        let mut it = bits.iter();
        for u in 0..n {
            for v in u + 1..n {
                if *it.next().unwrap() {
                    g.set_edge(u, v);
                }
            }
        }
        Ok(g)
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    /// Neighbourhood of `v` as a vertex bitmask.
    pub fn neighbors(&self, v: usize) -> u32 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Degree sequence in nonincreasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// Edges `(u, v)` with `u < v`, in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            (u + 1..self.n).filter(move |&v| self.has_edge(u, v)).map(move |v| (u, v))
        })
    }

    pub fn edge_bits(&self) -> Vec<bool> {
        self.labeled_key().bits()
    }

    /// The key of this particular labeling (not of its isomorphism class).
    pub fn labeled_key(&self) -> CanonicalKey {
        let rows = (0..self.n)
            .map(|i| {
                let mut row = 0u32;
                for j in i + 1..self.n {
                    row = row << 1 | (self.adj[i] >> j & 1);
                }
                row
            })
            .collect();
        CanonicalKey { n: self.n, rows }
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = 0u64;
        if perm.len() != self.n {
            return Err(Error::domain("permutation length differs from graph order"));
        }
        for &p in perm {
            if p >= self.n || seen >> p & 1 == 1 {
                return Err(Error::domain("not a permutation"));
            }
            seen |= 1 << p;
        }
        let mut g = Self::empty_unchecked(self.n);
        for (u, v) in self.edges() {
            g.set_edge(perm[u], perm[v]);
        }
        Ok(g)
    }

    pub fn complement(&self) -> Self {
        let full = full_mask(self.n);
        let adj = (0..self.n).map(|v| full & !self.adj[v] & !(1 << v)).collect();
        Graph { n: self.n, adj }
    }

    /// Subgraph induced on the vertices in `mask`, relabeled in ascending order.
    pub fn induced(&self, mask: u32) -> Self {
        let verts: Vec<usize> = (0..self.n).filter(|&v| mask >> v & 1 == 1).collect();
        let mut g = Self::empty_unchecked(verts.len());
        for (a, &u) in verts.iter().enumerate() {
            for (b, &v) in verts.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    g.set_edge(a, b);
                }
            }
        }
        g
    }

    /// Vertex set of the component containing `start`, as a bitmask.
    fn component_mask(&self, start: usize) -> u32 {
        let mut seen = 1u32 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.adj[v] & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen
    }

    /// Whether the vertices in `mask` induce a connected subgraph.
    pub(crate) fn induces_connected(&self, mask: u32) -> bool {
        if mask == 0 {
            return false;
        }
        let mut seen = mask & mask.wrapping_neg();
        let mut frontier = seen;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.adj[v] & mask & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen == mask
    }
}

pub(crate) fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}, {})", self.n, graph6::to_graph6(self))
    }
}

/// Disjoint union `g1 + g2`; the vertices of `g2` follow those of `g1`.
pub fn disjoint_union(g1: &Graph, g2: &Graph) -> Result<Graph> {
    let n = g1.n + g2.n;
    Graph::check_order(n)?;
    let mut adj = g1.adj.clone();
    adj.extend(g2.adj.iter().map(|&r| r << g1.n));
    Ok(Graph { n, adj })
}

/// Cartesian product `g1 □ g2`. Vertex `(v1, v2)` gets index `v1 * n2 + v2`.
pub fn cartesian_product(g1: &Graph, g2: &Graph) -> Result<Graph> {
    let n = g1.n * g2.n;
    Graph::check_order(n)?;
    let mut g = Graph::empty_unchecked(n);
    for v1 in 0..g1.n {
        for v2 in 0..g2.n {
            let here = v1 * g2.n + v2;
            for w2 in (0..g2.n).filter(|&w| g2.has_edge(v2, w)) {
                g.adj[here] |= 1 << (v1 * g2.n + w2);
            }
            for w1 in (0..g1.n).filter(|&w| g1.has_edge(v1, w)) {
                g.adj[here] |= 1 << (w1 * g2.n + v2);
            }
        }
    }
    Ok(g)
}

/// Whether `g` has exactly one component. The empty graph is rejected:
/// it is the additive identity, neither prime nor composite.
pub fn is_connected(g: &Graph) -> Result<bool> {
    if g.n == 0 {
        return Err(Error::domain("the empty graph has no connectivity status"));
    }
    Ok(g.component_mask(0) == full_mask(g.n))
}

/// The connected components of `g` in canonical form, sorted by canonical key.
pub fn connected_components(g: &Graph) -> Result<Vec<Graph>> {
    let mut rest = full_mask(g.n);
    let mut parts = Vec::new();
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        let comp = g.component_mask(v);
        rest &= !comp;
        parts.push(canonical_form(&g.induced(comp))?);
    }
    parts.sort_by_cached_key(|c| c.labeled_key());
    Ok(parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disjoint_union_examples() {
        let e = Graph::empty(0).unwrap();
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(disjoint_union(&e, &k3).unwrap(), k3);
        let g = disjoint_union(&Graph::complete(1).unwrap(), &k3).unwrap();
        assert_eq!((g.order(), g.edge_count()), (4, 3));
        assert_eq!(connected_components(&g).unwrap().len(), 2);
        let k2 = Graph::complete(2).unwrap();
        let m = disjoint_union(&k2, &k2).unwrap();
        let matching = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(are_isomorphic(&m, &matching).unwrap());
        assert_eq!(m.degree_sequence(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn cartesian_product_examples() {
        let k1 = Graph::complete(1).unwrap();
        let k2 = Graph::complete(2).unwrap();
        let k3 = Graph::complete(3).unwrap();
        let p4 = Graph::path(4).unwrap();
        assert!(are_isomorphic(&cartesian_product(&k1, &p4).unwrap(), &p4).unwrap());
        assert!(are_isomorphic(&cartesian_product(&p4, &k1).unwrap(), &p4).unwrap());
        let c4 = cartesian_product(&k2, &k2).unwrap();
        assert!(are_isomorphic(&c4, &Graph::cycle(4).unwrap()).unwrap());
        let prism = cartesian_product(&k3, &k2).unwrap();
        assert_eq!((prism.order(), prism.edge_count()), (6, 9));
        assert_eq!(prism.degree_sequence(), vec![3; 6]);
    }

    #[test]
    fn connectivity() {
        assert!(is_connected(&Graph::complete(1).unwrap()).unwrap());
        let k2 = Graph::complete(2).unwrap();
        assert!(!is_connected(&disjoint_union(&k2, &k2).unwrap()).unwrap());
        assert!(is_connected(&Graph::cycle(4).unwrap()).unwrap());
        assert!(matches!(is_connected(&Graph::empty(0).unwrap()), Err(Error::Domain(_))));
    }

    #[test]
    fn components_examples() {
        let k1 = Graph::complete(1).unwrap();
        let k2 = Graph::complete(2).unwrap();
        let k3 = Graph::complete(3).unwrap();
        let comps = connected_components(&disjoint_union(&k1, &k3).unwrap()).unwrap();
        assert_eq!(comps, vec![k1.clone(), k3.clone()]);
        let comps = connected_components(&disjoint_union(&k2, &k2).unwrap()).unwrap();
        assert_eq!(comps, vec![k2.clone(), k2.clone()]);
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(connected_components(&c4).unwrap(), vec![canonical_form(&c4).unwrap()]);
        assert!(connected_components(&Graph::empty(0).unwrap()).unwrap().is_empty());
    }

    #[test]
    fn edge_bits_round_trip() {
        let g = Graph::from_edges(5, &[(0, 4), (1, 2), (3, 4)]).unwrap();
        let bits = g.edge_bits();
        assert_eq!(bits.len(), 10);
        // (0,1) (0,2) (0,3) (0,4) (1,2) ...
        assert_eq!(&bits[..5], &[false, false, false, true, true]);
        assert_eq!(Graph::from_edge_bits(5, &bits).unwrap(), g);
        assert_eq!(g.labeled_key().to_graph(), g);
    }

    #[test]
    fn capacity_errors() {
        assert!(matches!(Graph::empty(33), Err(Error::Capacity { .. })));
        let k6 = Graph::complete(6).unwrap();
        assert!(matches!(cartesian_product(&k6, &k6), Err(Error::Capacity { .. })));
        let big = Graph::empty(20).unwrap();
        assert!(matches!(disjoint_union(&big, &big), Err(Error::Capacity { .. })));
    }

    #[test]
    fn complement_and_induced() {
        let p4 = Graph::path(4).unwrap();
        assert!(are_isomorphic(&p4, &p4.complement()).unwrap());
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(c5.induced(0b00111).edge_count(), 2);
        assert!(c5.induces_connected(0b00111));
        assert!(!c5.induces_connected(0b00101));
    }
}
