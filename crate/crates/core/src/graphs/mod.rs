//! Loop-aware simple graphs with bitset adjacency.
//!
//! Loops are kept apart from the adjacency rows: clique counting, graph6 and
//! the other simple-graph algorithms never see them, while blow-up semantics
//! (a looped vertex blows up into a clique) consult them explicitly.

mod bitset;
mod canon;
mod cliques;
mod graph6;
mod hom;
pub mod named;

use serde::{Deserialize, Serialize};

pub use bitset::Bitset;
pub use canon::{canonical_certificate, canonical_form, canonical_labeling, enumerate_graphs, CANON_MAX};
pub use cliques::{count_cliques, count_cliques_in, count_cliques_upto, count_cliques_upto_in, has_subgraph};
pub use graph6::{emit_graph6, parse_graph6};
pub use hom::{
    automorphism_count, automorphisms, automorphism_group_order, count_strong_homomorphisms, extends_to_automorphism, find_isomorphism, is_isomorphic,
    stabilizer_order, strong_homomorphisms, Permutation,
};

use crate::error::{Error, Result};

/// Largest vertex count any graph in this crate may have.
pub const MAX_ORDER: usize = 1024;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<Bitset>,
    loops: Bitset,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_ORDER, "graph order {n} exceeds {MAX_ORDER}");
        Self {
            n,
            adj: vec![Bitset::new(n); n],
            loops: Bitset::new(n),
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            g.add_edge(u, (u + 1) % n);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 1..n {
            g.add_edge(u - 1, u);
        }
        g
    }

    /// `n/2` disjoint edges `{2i, 2i+1}`.
    pub fn perfect_matching(n: usize) -> Self {
        assert!(n.is_multiple_of(2));
        let mut g = Self::empty(n);
        for i in (0..n).step_by(2) {
            g.add_edge(i, i + 1);
        }
        g
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// Adds the edge `uv`. A `u == v` request is rejected; use [`Graph::set_loop`].
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "use set_loop for loops");
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].remove(v);
        self.adj[v].remove(u);
    }

    pub fn toggle_edge(&mut self, u: usize, v: usize) {
        assert!(u != v);
        self.adj[u].toggle(v);
        self.adj[v].toggle(u);
    }

    pub fn set_edge(&mut self, u: usize, v: usize, present: bool) {
        if present {
            self.add_edge(u, v)
        } else {
            self.remove_edge(u, v)
        }
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn set_loop(&mut self, v: usize, looped: bool) {
        self.loops.set(v, looped)
    }

    #[inline]
    pub fn has_loop(&self, v: usize) -> bool {
        self.loops.contains(v)
    }

    /// Adjacency under blow-up semantics: distinct vertices use the edge set,
    /// a vertex is adjacent to itself iff it is looped.
    #[inline]
    pub fn linked(&self, u: usize, v: usize) -> bool {
        if u == v {
            self.has_loop(u)
        } else {
            self.has_edge(u, v)
        }
    }

    pub fn loops(&self) -> &Bitset {
        &self.loops
    }

    pub fn has_loops(&self) -> bool {
        !self.loops.is_empty()
    }

    pub fn with_all_loops(mut self) -> Self {
        self.loops = Bitset::full(self.n);
        self
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &Bitset {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Bitset::count).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.adj[u].iter_above(u).map(move |v| (u, v)))
    }

    pub fn is_regular(&self) -> Option<usize> {
        let d = if self.n == 0 { 0 } else { self.degree(0) };
        (0..self.n).all(|v| self.degree(v) == d).then_some(d)
    }

    /// Complement on distinct pairs; loops are kept as they are.
    pub fn complement(&self) -> Graph {
        let mut g = self.clone();
        for v in 0..self.n {
            let mut row = self.adj[v].complement();
            row.remove(v);
            g.adj[v] = row;
        }
        g
    }

    /// Complement on distinct pairs with every loop flipped, so that the
    /// blow-up of the result is the complement of the blow-up of `self`.
    pub fn looped_complement(&self) -> Graph {
        let mut g = self.complement();
        g.loops = self.loops.complement();
        g
    }

    /// The subgraph induced by `vertices`, relabelled `0..k` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::empty(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            g.set_loop(i, self.has_loop(u));
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::empty(self.n);
        for v in 0..self.n {
            g.set_loop(perm[v], self.has_loop(v));
        }
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    /// Disjoint union; the vertices of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.n + other.n;
        let mut g = Graph::empty(n);
        for v in 0..self.n {
            g.set_loop(v, self.has_loop(v));
        }
        for v in 0..other.n {
            g.set_loop(self.n + v, other.has_loop(v));
        }
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(self.n + u, self.n + v);
        }
        g
    }

    /// `m`-fold blow-up materialised with loops carried into the parts:
    /// the copies of a looped vertex form a looped clique, the copies of an
    /// unlooped vertex an independent set. Vertex `(v, i)` gets index `v*m + i`.
    pub fn blow_up(&self, m: usize) -> Graph {
        let n = self.n * m;
        let mut g = Graph::empty(n);
        for u in 0..self.n {
            for i in 0..m {
                let a = u * m + i;
                g.set_loop(a, self.has_loop(u));
                for v in u..self.n {
                    if !self.linked(u, v) {
                        continue;
                    }
                    for j in 0..m {
                        let b = v * m + j;
                        if b > a {
                            g.add_edge(a, b);
                        }
                    }
                }
            }
        }
        g
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.n,
            edges: self.edges().map(|(u, v)| [u, v]).collect(),
            loops: self.loops.iter().collect(),
        }
    }

    pub fn from_json(j: &GraphJson) -> Result<Graph> {
        if j.n > MAX_ORDER {
            return Err(Error::Unsupported(format!("graph order {} > {MAX_ORDER}", j.n)));
        }
        let mut g = Graph::empty(j.n);
        for &[u, v] in &j.edges {
            if u >= j.n || v >= j.n {
                return Err(Error::invalid(format!("edge [{u},{v}] out of range for n={}", j.n)));
            }
            if u == v {
                g.set_loop(u, true);
            } else {
                g.add_edge(u, v);
            }
        }
        for &v in &j.loops {
            if v >= j.n {
                return Err(Error::invalid(format!("loop {v} out of range for n={}", j.n)));
            }
            g.set_loop(v, true);
        }
        Ok(g)
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?}", self.n, self.edges().collect::<Vec<_>>())?;
        if self.has_loops() {
            write!(f, ", loops={:?}", self.loops)?;
        }
        write!(f, ")")
    }
}

/// JSON graph form that, unlike graph6, carries loops.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    #[serde(default)]
    pub edges: Vec<[usize; 2]>,
    #[serde(default)]
    pub loops: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_of_triangle_is_empty() {
        assert_eq!(Graph::complete(3).complement(), Graph::empty(3));
    }

    #[test]
    fn looped_complement_of_k2() {
        let lc = Graph::complete(2).looped_complement();
        assert_eq!(lc.edge_count(), 0);
        assert!(lc.has_loop(0) && lc.has_loop(1));
    }

    #[test]
    fn looped_complement_of_c5_is_looped_c5_complement() {
        let lc = Graph::cycle(5).looped_complement();
        assert_eq!(lc.loops().count(), 5);
        assert_eq!(lc.edge_count(), 5);
        assert!(lc.has_edge(0, 2) && !lc.has_edge(0, 1));
    }

    #[test]
    fn complement_keeps_loops() {
        let mut g = Graph::path(3);
        g.set_loop(1, true);
        let c = g.complement();
        assert!(c.has_loop(1) && !c.has_loop(0));
        assert!(c.has_edge(0, 2));
    }

    #[test]
    fn blow_up_of_looped_vertex_is_looped_clique() {
        let mut g = Graph::empty(1);
        g.set_loop(0, true);
        let b = g.blow_up(3);
        assert_eq!(b.edge_count(), 3);
        assert_eq!(b.loops().count(), 3);
        assert_eq!(Graph::complete(2).blow_up(2).edge_count(), 4);
    }

    #[test]
    fn json_round_trip() {
        let mut g = Graph::cycle(4);
        g.set_loop(2, true);
        let j = g.to_json();
        assert_eq!(Graph::from_json(&j).unwrap(), g);
        let bad = GraphJson { n: 2, edges: vec![[0, 5]], loops: vec![] };
        assert!(Graph::from_json(&bad).is_err());
    }
}
