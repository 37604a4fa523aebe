//! Canonical labelling by colour refinement plus individualisation, with
//! automorphism pruning of equivalent branches. Exact for the small orders
//! used by flag enumeration; no attempt at nauty-level speed.

use std::collections::HashMap;

use super::{has_subgraph, Graph};
use crate::error::{Error, Result};

/// Largest order accepted by [`canonical_form`].
pub const CANON_MAX: usize = 12;

type Partition = Vec<Vec<usize>>;

/// Returns `(position_of_vertex, certificate)`. Vertices with smaller colour
/// always receive smaller positions; isomorphic coloured graphs get equal
/// certificates and the relabelled graphs coincide.
pub fn canonical_labeling(g: &Graph, colors: &[u32]) -> Result<(Vec<usize>, u128)> {
    let n = g.order();
    if n > CANON_MAX {
        return Err(Error::Unsupported(format!(
            "canonical form is limited to {CANON_MAX} vertices, got {n}"
        )));
    }
    assert_eq!(colors.len(), n);
    let mut keyed: Vec<((u32, bool, usize), usize)> =
        (0..n).map(|v| ((colors[v], g.has_loop(v), g.degree(v)), v)).collect();
    keyed.sort();
    let mut part: Partition = Vec::new();
    for (i, (key, v)) in keyed.iter().enumerate() {
        if i > 0 && keyed[i - 1].0 == *key {
            part.last_mut().unwrap().push(*v);
        } else {
            part.push(vec![*v]);
        }
    }
    let mut search = Search {
        g,
        best: None,
        automorphisms: Vec::new(),
    };
    let mut path = Vec::new();
    search.descend(part, &mut path);
    let (cert, lab) = search.best.expect("search visits at least one leaf");
    Ok((lab, cert))
}

pub fn canonical_certificate(g: &Graph) -> Result<u128> {
    Ok(canonical_labeling(g, &vec![0; g.order()])?.1)
}

/// Canonical representative of the isomorphism class of `g` (loops included).
pub fn canonical_form(g: &Graph) -> Result<Graph> {
    let (lab, _) = canonical_labeling(g, &vec![0; g.order()])?;
    Ok(g.relabel(&lab))
}

struct Search<'a> {
    g: &'a Graph,
    best: Option<(u128, Vec<usize>)>,
    automorphisms: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn descend(&mut self, mut part: Partition, path: &mut Vec<usize>) {
        refine(self.g, &mut part);
        let n = self.g.order();
        if part.len() == n {
            let mut lab = vec![0; n];
            for (pos, cell) in part.iter().enumerate() {
                lab[cell[0]] = pos;
            }
            let cert = certificate(self.g, &lab);
            match &self.best {
                None => self.best = Some((cert, lab)),
                Some((best, best_lab)) => {
                    if cert == *best {
                        // lab^{-1} . best_lab maps vertices to vertices preserving the graph.
                        let mut inv = vec![0; n];
                        for (v, &p) in lab.iter().enumerate() {
                            inv[p] = v;
                        }
                        let auto: Vec<usize> = (0..n).map(|v| inv[best_lab[v]]).collect();
                        self.automorphisms.push(auto);
                    } else if cert > *best {
                        self.best = Some((cert, lab));
                    }
                }
            }
            return;
        }
        let target = part.iter().position(|c| c.len() > 1).unwrap();
        let cell = part[target].clone();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cell {
            if tried.iter().any(|&u| self.same_orbit(u, v, path)) {
                continue;
            }
            tried.push(v);
            let mut child = part.clone();
            let rest: Vec<usize> = cell.iter().copied().filter(|&u| u != v).collect();
            child.splice(target..=target, [vec![v], rest]);
            path.push(v);
            self.descend(child, path);
            path.pop();
        }
    }

    /// Whether the automorphisms found so far that fix `path` pointwise
    /// connect `u` and `v`.
    fn same_orbit(&self, u: usize, v: usize, path: &[usize]) -> bool {
        let n = self.g.order();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for a in &self.automorphisms {
            if path.iter().any(|&p| a[p] != p) {
                continue;
            }
            for x in 0..n {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, a[x]));
                if rx != ry {
                    parent[rx] = ry;
                }
            }
        }
        find(&mut parent, u) == find(&mut parent, v)
    }
}

/// Equitable refinement. New cells are ordered by a label-invariant
/// signature, so refining isomorphic inputs gives corresponding outputs.
fn refine(g: &Graph, part: &mut Partition) {
    let n = g.order();
    loop {
        let mut cell_of = vec![0usize; n];
        for (i, c) in part.iter().enumerate() {
            for &v in c {
                cell_of[v] = i;
            }
        }
        let k = part.len();
        let mut next: Partition = Vec::with_capacity(n);
        for cell in part.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut sigs: Vec<(Vec<u8>, usize)> = cell
                .iter()
                .map(|&v| {
                    let mut s = vec![0u8; k];
                    for w in g.neighbors(v).iter() {
                        s[cell_of[w]] += 1;
                    }
                    (s, v)
                })
                .collect();
            sigs.sort();
            for (i, (s, v)) in sigs.iter().enumerate() {
                if i > 0 && sigs[i - 1].0 == *s {
                    next.last_mut().unwrap().push(*v);
                } else {
                    next.push(vec![*v]);
                }
            }
        }
        let done = next.len() == part.len();
        *part = next;
        if done {
            return;
        }
    }
}

/// Upper triangle row by row, then the loop flags, packed into 128 bits.
fn certificate(g: &Graph, lab: &[usize]) -> u128 {
    let n = g.order();
    let mut inv = vec![0; n];
    for (v, &p) in lab.iter().enumerate() {
        inv[p] = v;
    }
    let mut c: u128 = 0;
    for i in 0..n {
        for j in i + 1..n {
            c = (c << 1) | g.has_edge(inv[i], inv[j]) as u128;
        }
    }
    for &v in &inv {
        c = (c << 1) | g.has_loop(v) as u128;
    }
    c
}

/// One representative per isomorphism class of loop-free `n`-vertex graphs
/// that contain no member of `forbidden` as a (not necessarily induced)
/// subgraph. Sorted by edge count, then certificate.
pub fn enumerate_graphs(n: usize, forbidden: &[Graph]) -> Result<Vec<Graph>> {
    if n > CANON_MAX {
        return Err(Error::Unsupported(format!("enumeration limited to {CANON_MAX} vertices")));
    }
    if n > 8 {
        log::warn!("enumerating graphs on {n} vertices; this is slow");
    }
    let mut level: Vec<Graph> = vec![Graph::empty(0)];
    for k in 1..=n {
        let mut seen: HashMap<u128, Graph> = HashMap::new();
        for g in &level {
            for mask in 0u32..1 << (k - 1) {
                let mut h = Graph::empty(k);
                for (u, v) in g.edges() {
                    h.add_edge(u, v);
                }
                for u in 0..k - 1 {
                    if mask >> u & 1 == 1 {
                        h.add_edge(u, k - 1);
                    }
                }
                let cert = canonical_certificate(&h)?;
                if seen.contains_key(&cert) {
                    continue;
                }
                if forbidden.iter().any(|f| has_subgraph(&h, f)) {
                    // Record the rejection so the check is not repeated.
                    seen.insert(cert, Graph::empty(0));
                    continue;
                }
                seen.insert(cert, canonical_form(&h)?);
            }
        }
        let mut next: Vec<(usize, u128, Graph)> = seen
            .into_iter()
            .filter(|(_, g)| g.order() == k)
            .map(|(c, g)| (g.edge_count(), c, g))
            .collect();
        next.sort_by_key(|a| (a.0, a.1));
        level = next.into_iter().map(|(_, _, g)| g).collect();
    }
    Ok(level)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabelled_paths_agree() {
        let p1 = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        let p2 = Graph::from_edges(3, &[(1, 0), (0, 2)]);
        assert_eq!(canonical_form(&p1).unwrap(), canonical_form(&p2).unwrap());
    }

    #[test]
    fn loops_participate() {
        let mut a = Graph::path(3);
        a.set_loop(0, true);
        let mut b = Graph::path(3);
        b.set_loop(1, true);
        assert_ne!(canonical_certificate(&a).unwrap(), canonical_certificate(&b).unwrap());
        let mut c = Graph::path(3);
        c.set_loop(2, true);
        assert_eq!(canonical_certificate(&a).unwrap(), canonical_certificate(&c).unwrap());
    }

    #[test]
    fn colours_are_respected() {
        let g = Graph::path(3);
        let (l1, c1) = canonical_labeling(&g, &[0, 1, 1]).unwrap();
        let (_, c2) = canonical_labeling(&g, &[1, 1, 0]).unwrap();
        assert_eq!(c1, c2);
        assert_eq!(l1[0], 0);
        let (_, c3) = canonical_labeling(&g, &[1, 0, 1]).unwrap();
        assert_ne!(c1, c3);
    }

    #[test]
    fn small_graph_counts() {
        let counts: Vec<usize> = (0..=6).map(|n| enumerate_graphs(n, &[]).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156]);
        assert_eq!(enumerate_graphs(3, &[Graph::complete(3)]).unwrap().len(), 3);
    }

    #[test]
    fn over_cap_is_rejected() {
        assert!(matches!(canonical_form(&Graph::empty(13)), Err(Error::Unsupported(_))));
    }

    #[test]
    fn highly_symmetric_graphs_finish() {
        for g in [Graph::empty(12), Graph::complete(12), Graph::cycle(12)] {
            canonical_form(&g).unwrap();
        }
    }
}
