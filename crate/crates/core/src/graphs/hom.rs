//! Structure-preserving maps found by backtracking over bitset domains,
//! always branching on the unassigned vertex with fewest candidates.

use super::{Bitset, Graph};

/// `0[v]` is the image of `v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(pub Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn apply(&self, v: usize) -> usize {
        self.0[v]
    }

    /// `self` after `other`: `v -> self(other(v))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&v| self.0[v]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (v, &w) in self.0.iter().enumerate() {
            inv[w] = v;
        }
        Permutation(inv)
    }
}

/// Shared search: maps from `src` to `dst` such that for distinct `u, v` in
/// `src`, `src.has_edge(u, v) == dst.linked(f(u), f(v))`. With `injective`
/// the map is also one-to-one and must preserve loops.
struct Maps<'a> {
    src: &'a Graph,
    dst: &'a Graph,
    injective: bool,
    image: Vec<usize>,
}

impl Maps<'_> {
    fn run(&mut self, domains: &mut Vec<Bitset>, assigned: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let n = self.src.order();
        if assigned == n {
            return visit(&self.image);
        }
        // Most constrained unassigned vertex.
        let u = (0..n)
            .filter(|&u| self.image[u] == usize::MAX)
            .min_by_key(|&u| domains[u].count())
            .unwrap();
        let cands: Vec<usize> = domains[u].iter().collect();
        for x in cands {
            let saved = domains.clone();
            self.image[u] = x;
            let mut ok = true;
            for w in 0..n {
                if self.image[w] != usize::MAX {
                    continue;
                }
                let d = &mut domains[w];
                if self.src.has_edge(u, w) {
                    let mut allowed = self.dst.neighbors(x).clone();
                    if self.dst.has_loop(x) && !self.injective {
                        allowed.insert(x);
                    }
                    d.intersect_with(&allowed);
                } else {
                    let mut allowed = self.dst.neighbors(x).complement();
                    if self.injective || self.dst.has_loop(x) {
                        allowed.remove(x);
                    } else {
                        allowed.insert(x);
                    }
                    d.intersect_with(&allowed);
                }
                if self.injective {
                    d.remove(x);
                }
                if d.is_empty() {
                    ok = false;
                    break;
                }
            }
            if ok && self.run(domains, assigned + 1, visit) {
                return true;
            }
            *domains = saved;
            self.image[u] = usize::MAX;
        }
        false
    }
}

fn initial_domains(src: &Graph, dst: &Graph, injective: bool) -> Vec<Bitset> {
    (0..src.order())
        .map(|u| {
            let mut d = Bitset::full(dst.order());
            if injective {
                for x in 0..dst.order() {
                    if dst.degree(x) != src.degree(u) || dst.has_loop(x) != src.has_loop(u) {
                        d.remove(x);
                    }
                }
            }
            d
        })
        .collect()
}

fn for_each_automorphism(g: &Graph, fixed: &[(usize, usize)], visit: &mut dyn FnMut(&[usize]) -> bool) {
    let mut domains = initial_domains(g, g, true);
    for &(u, x) in fixed {
        let keep = domains[u].contains(x);
        domains[u] = Bitset::new(g.order());
        if keep {
            domains[u].insert(x);
        }
    }
    if domains.iter().any(Bitset::is_empty) && g.order() > 0 {
        return;
    }
    let mut m = Maps {
        src: g,
        dst: g,
        injective: true,
        image: vec![usize::MAX; g.order()],
    };
    m.run(&mut domains, 0, visit);
}

/// An isomorphism `g -> h` (loops preserved), if one exists.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Permutation> {
    if g.order() != h.order() || g.edge_count() != h.edge_count() || g.loops().count() != h.loops().count() {
        return None;
    }
    let mut domains = initial_domains(g, h, true);
    if g.order() > 0 && domains.iter().any(Bitset::is_empty) {
        return None;
    }
    let mut found = None;
    let mut m = Maps {
        src: g,
        dst: h,
        injective: true,
        image: vec![usize::MAX; g.order()],
    };
    m.run(&mut domains, 0, &mut |img| {
        found = Some(Permutation(img.to_vec()));
        true
    });
    found
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    find_isomorphism(g, h).is_some()
}

/// Every automorphism of `g` (loops must be preserved).
pub fn automorphisms(g: &Graph) -> Vec<Permutation> {
    let mut out = Vec::new();
    for_each_automorphism(g, &[], &mut |img| {
        out.push(Permutation(img.to_vec()));
        false
    });
    out
}

pub fn automorphism_count(g: &Graph) -> u64 {
    let mut count = 0;
    for_each_automorphism(g, &[], &mut |_| {
        count += 1;
        false
    });
    count
}

/// Whether the partial map `u -> x` for each pair extends to an automorphism.
pub fn extends_to_automorphism(g: &Graph, partial: &[(usize, usize)]) -> bool {
    let mut found = false;
    for_each_automorphism(g, partial, &mut |_| {
        found = true;
        true
    });
    found
}

/// Order of the subgroup of `Aut(g)` fixing each listed vertex, via a
/// stabiliser chain: each step multiplies by the orbit length of the next
/// unfixed vertex, found by partial-extension checks.
pub fn stabilizer_order(g: &Graph, fixed: &[usize]) -> u128 {
    let mut pairs: Vec<(usize, usize)> = fixed.iter().map(|&v| (v, v)).collect();
    if !extends_to_automorphism(g, &pairs) {
        return 0;
    }
    let mut order = 1u128;
    for v in 0..g.order() {
        if pairs.iter().any(|&(u, _)| u == v) {
            continue;
        }
        let mut orbit = 0u128;
        for x in 0..g.order() {
            pairs.push((v, x));
            if extends_to_automorphism(g, &pairs) {
                orbit += 1;
            }
            pairs.pop();
        }
        order *= orbit;
        pairs.push((v, v));
    }
    order
}

/// `|Aut(g)|` without enumerating the group.
pub fn automorphism_group_order(g: &Graph) -> u128 {
    stabilizer_order(g, &[])
}

/// Number of maps [`strong_homomorphisms`] would return, without storing them.
pub fn count_strong_homomorphisms(t: &Graph, c: &Graph) -> u64 {
    if t.order() == 0 {
        return 1;
    }
    if c.order() == 0 {
        return 0;
    }
    let mut domains = initial_domains(t, c, false);
    let mut m = Maps {
        src: t,
        dst: c,
        injective: false,
        image: vec![usize::MAX; t.order()],
    };
    let mut count = 0;
    m.run(&mut domains, 0, &mut |_| {
        count += 1;
        false
    });
    count
}

/// Maps `f: V(t) -> V(c)` with `t`'s adjacency between distinct vertices
/// equal to `c.linked(f(u), f(v))`, i.e. embeddings of `t` as an induced
/// subgraph of a blow-up of `c`. Stops after `limit` maps when given.
pub fn strong_homomorphisms(t: &Graph, c: &Graph, limit: Option<usize>) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if limit == Some(0) {
        return out;
    }
    if t.order() == 0 {
        out.push(Vec::new());
        return out;
    }
    if c.order() == 0 {
        return out;
    }
    let mut domains = initial_domains(t, c, false);
    let mut m = Maps {
        src: t,
        dst: c,
        injective: false,
        image: vec![usize::MAX; t.order()],
    };
    m.run(&mut domains, 0, &mut |img| {
        out.push(img.to_vec());
        limit.is_some_and(|l| out.len() >= l)
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classic_group_orders() {
        assert_eq!(automorphism_count(&Graph::cycle(5)), 10);
        assert_eq!(automorphism_count(&Graph::complete(4)), 24);
        assert_eq!(automorphism_count(&Graph::path(4)), 2);
        assert_eq!(automorphism_count(&Graph::empty(0)), 1);
        let mut p = Graph::path(3);
        p.set_loop(0, true);
        assert_eq!(automorphism_count(&p), 1);
    }

    #[test]
    fn petersen_has_120() {
        let mut g = Graph::empty(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5);
            g.add_edge(5 + i, 5 + (i + 2) % 5);
            g.add_edge(i, i + 5);
        }
        assert_eq!(automorphism_count(&g), 120);
        assert!(automorphisms(&g).iter().all(|p| g.relabel(&p.0) == g));
    }

    #[test]
    fn isomorphism_search() {
        let p = Graph::from_edges(4, &[(2, 0), (0, 3), (3, 1)]);
        let iso = find_isomorphism(&Graph::path(4), &p).unwrap();
        assert_eq!(Graph::path(4).relabel(&iso.0), p);
        assert!(!is_isomorphic(&Graph::path(4), &Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)])));
        assert!(!is_isomorphic(&Graph::cycle(6), &Graph::cycle(3).disjoint_union(&Graph::cycle(3))));
    }

    #[test]
    fn partial_extension() {
        let p = Graph::path(3);
        assert!(extends_to_automorphism(&p, &[(0, 2)]));
        assert!(!extends_to_automorphism(&p, &[(0, 1)]));
        assert_eq!(stabilizer_order(&Graph::cycle(6), &[0]), 2);
        assert_eq!(automorphism_group_order(&Graph::cycle(6)), 12);
        assert_eq!(automorphism_group_order(&Graph::complete(5)), 120);
    }

    #[test]
    fn strong_maps_into_edge() {
        // P3 into K2: the middle vertex goes to one side, both ends to the other.
        let maps = strong_homomorphisms(&Graph::path(3), &Graph::complete(2), None);
        assert_eq!(maps.len(), 2);
        // A triangle needs three mutually linked images.
        assert!(strong_homomorphisms(&Graph::complete(3), &Graph::complete(2), None).is_empty());
        let mut lk = Graph::complete(2);
        lk.set_loop(0, true);
        assert!(!strong_homomorphisms(&Graph::complete(3), &lk, None).is_empty());
        assert_eq!(strong_homomorphisms(&Graph::path(3), &Graph::complete(2), Some(1)).len(), 1);
        assert_eq!(count_strong_homomorphisms(&Graph::path(3), &Graph::complete(2)), 2);
    }
}
