//! Flags, their densities, and exact verification of flag-algebra
//! certificates.

mod cert;
mod psd;

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::graphs::{canonical_certificate, canonical_labeling, enumerate_graphs, has_subgraph, Graph};
use crate::rational::Rational;

pub use cert::{
    all_flags, limit_flag_vector, sharp_graphs, toy_certificate, verify_certificate, zero_eigenvector_check, CertificateJson, FlagCertificate,
    SlackRow, VerifyReport, MAX_M, TOY_CERTIFICATE,
};
pub use psd::{corank, mat_vec, psd_check, quadratic_form, rank, Matrix, PsdReport};

/// Largest flag order [`enumerate_flags`] accepts.
pub const MAX_FLAG_ORDER: usize = 6;
/// Largest host order for [`subgraph_density`].
pub const MAX_DENSITY_ORDER: usize = 10;

/// A graph `graph` with vertex `labels[i]` carrying label `i`; every vertex
/// is labelled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagType {
    pub graph: Graph,
    pub labels: Vec<usize>,
}

impl FlagType {
    pub fn new(graph: Graph, labels: Vec<usize>) -> Result<Self> {
        let v = graph.order();
        let mut seen = vec![false; v];
        if labels.len() != v || labels.iter().any(|&x| x >= v || std::mem::replace(&mut seen[x], true)) {
            return Err(Error::Certificate("type labelling must be a bijection onto its vertices".into()));
        }
        Ok(Self { graph, labels })
    }

    pub fn empty() -> Self {
        Self {
            graph: Graph::empty(0),
            labels: Vec::new(),
        }
    }

    /// One labelled vertex.
    pub fn vertex() -> Self {
        Self {
            graph: Graph::empty(1),
            labels: vec![0],
        }
    }

    /// The type graph with vertex `i` carrying label `i`.
    pub fn labelled(graph: &Graph) -> Self {
        Self {
            graph: graph.clone(),
            labels: (0..graph.order()).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    /// The type graph relabelled so that label `i` sits on vertex `i`.
    pub fn ordered(&self) -> Graph {
        self.graph.induced(&self.labels)
    }
}

/// `graph` with label `i` on vertex `embedding[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flag {
    pub graph: Graph,
    pub embedding: Vec<usize>,
}

impl Flag {
    pub fn new(ty: &FlagType, graph: Graph, embedding: Vec<usize>) -> Result<Self> {
        let n = graph.order();
        let mut seen = vec![false; n];
        if embedding.len() != ty.order() || embedding.iter().any(|&x| x >= n || std::mem::replace(&mut seen[x], true)) {
            return Err(Error::Certificate("flag embedding must be injective with one image per label".into()));
        }
        if graph.has_loops() {
            return Err(Error::Certificate("flags must be loop-free".into()));
        }
        if graph.induced(&embedding) != ty.ordered() {
            return Err(Error::Certificate("flag labels do not induce the type".into()));
        }
        Ok(Self { graph, embedding })
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    /// Equal exactly for flags isomorphic by a label-preserving map.
    pub fn key(&self) -> Result<u128> {
        flag_key(&self.graph, &self.embedding)
    }
}

/// Canonical certificate with label `i` coloured `i + 1`. Distinct colours
/// pin each labelled vertex to a fixed canonical position, so the
/// certificate alone identifies the flag.
pub(crate) fn flag_key(g: &Graph, labelled: &[usize]) -> Result<u128> {
    let mut colors = vec![0u32; g.order()];
    for (i, &v) in labelled.iter().enumerate() {
        colors[v] = i as u32 + 1;
    }
    Ok(canonical_labeling(g, &colors)?.1)
}

/// Key of the flag on `prefix ++ rest` in `h`, the first `v` vertices labelled.
fn induced_key(h: &Graph, verts: &[usize], v: usize) -> Result<u128> {
    let g = h.induced(verts);
    let labelled: Vec<usize> = (0..v).collect();
    flag_key(&g, &labelled)
}

/// All order `l` flags of type `ty` up to label-preserving
/// isomorphism, free of `forbidden` as subgraphs. Labels sit on vertices
/// `0..v`. Sorted by edge count, then key.
pub fn enumerate_flags(ty: &FlagType, l: usize, forbidden: &[Graph]) -> Result<Vec<Flag>> {
    let v = ty.order();
    if l < v || l > MAX_FLAG_ORDER {
        return Err(Error::Unsupported(format!("flag order must satisfy v <= l <= {MAX_FLAG_ORDER}")));
    }
    let base = ty.ordered();
    let free: Vec<(usize, usize)> = (0..l)
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .filter(|&(_, j)| j >= v)
        .collect();
    let labelled: Vec<usize> = (0..v).collect();
    let mut seen: HashMap<u128, Option<Graph>> = HashMap::new();
    for mask in 0u64..1 << free.len() {
        let mut g = Graph::empty(l);
        for (u, w) in base.edges() {
            g.add_edge(u, w);
        }
        for (k, &(i, j)) in free.iter().enumerate() {
            if mask >> k & 1 == 1 {
                g.add_edge(i, j);
            }
        }
        let key = flag_key(&g, &labelled)?;
        if seen.contains_key(&key) {
            continue;
        }
        let ok = !forbidden.iter().any(|f| has_subgraph(&g, f));
        seen.insert(key, ok.then_some(g));
    }
    let mut out: Vec<(usize, u128, Graph)> = seen
        .into_iter()
        .filter_map(|(k, g)| g.map(|g| (g.edge_count(), k, g)))
        .collect();
    out.sort_by_key(|a| (a.0, a.1));
    Ok(out
        .into_iter()
        .map(|(_, _, graph)| Flag {
            graph,
            embedding: labelled.clone(),
        })
        .collect())
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

fn falling(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i))
}

/// Calls `f` on every `k`-subset of `items`, in lexicographic order.
pub(crate) fn for_each_subset(items: &[usize], k: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            go(items, k, i + 1, cur, f);
            cur.pop();
        }
    }
    go(items, k, 0, &mut Vec::with_capacity(k), f);
}

/// Calls `f` on every injective map `[v] -> [n]`.
pub(crate) fn for_each_injection(n: usize, v: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(n: usize, v: usize, used: &mut [bool], cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == v {
            f(cur);
            return;
        }
        for x in 0..n {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                go(n, v, used, cur, f);
                cur.pop();
                used[x] = false;
            }
        }
    }
    go(n, v, &mut vec![false; n], &mut Vec::with_capacity(v), f);
}

/// Probability that `|V(h)|` uniformly random vertices of `g` induce `h`.
pub fn subgraph_density(h: &Graph, g: &Graph) -> Result<Rational> {
    let (k, n) = (h.order(), g.order());
    if k > n || n > MAX_DENSITY_ORDER {
        return Err(Error::Unsupported(format!("subgraph density needs |V(H)| <= |V(G)| <= {MAX_DENSITY_ORDER}")));
    }
    let target = canonical_certificate(h)?;
    let all: Vec<usize> = (0..n).collect();
    let mut hits = 0u64;
    let mut err = None;
    for_each_subset(&all, k, &mut |s| match canonical_certificate(&g.induced(s)) {
        Ok(c) if c == target => hits += 1,
        Ok(_) => {}
        Err(e) => err = Some(e),
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(Rational::new(hits.into(), binomial(n, k)))
}

/// `d_H(G)` for every `H` in `graphs` (all of one order), by one pass over
/// the subsets of `g`.
pub fn induced_densities(graphs: &[Graph], g: &Graph) -> Result<Vec<Rational>> {
    let Some(k) = graphs.first().map(Graph::order) else {
        return Ok(Vec::new());
    };
    let index: HashMap<u128, usize> = graphs
        .iter()
        .enumerate()
        .map(|(i, h)| Ok((canonical_certificate(h)?, i)))
        .collect::<Result<_>>()?;
    let all: Vec<usize> = (0..g.order()).collect();
    let mut counts = vec![0u64; graphs.len()];
    let mut err = None;
    for_each_subset(&all, k, &mut |s| match canonical_certificate(&g.induced(s)) {
        Ok(c) => {
            if let Some(&i) = index.get(&c) {
                counts[i] += 1;
            }
        }
        Err(e) => err = Some(e),
    });
    if let Some(e) = err {
        return Err(e);
    }
    let total = binomial(g.order(), k);
    Ok(counts.into_iter().map(|c| Rational::new(c.into(), total.clone())).collect())
}

/// `d_F(H)`: average over injective `theta` of the probability that `l - v`
/// random unlabelled vertices with `theta` form `F`.
pub fn flag_density(f: &Flag, h: &Graph) -> Result<Rational> {
    let (v, l, n) = (f.embedding.len(), f.order(), h.order());
    if n < l {
        return Err(Error::contract("host graph smaller than the flag"));
    }
    let target = f.key()?;
    let mut hits = 0u64;
    let mut err = None;
    for_each_injection(n, v, &mut |theta| {
        let rest: Vec<usize> = (0..n).filter(|x| !theta.contains(x)).collect();
        for_each_subset(&rest, l - v, &mut |s| {
            let verts: Vec<usize> = theta.iter().chain(s).copied().collect();
            match induced_key(h, &verts, v) {
                Ok(k) if k == target => hits += 1,
                Ok(_) => {}
                Err(e) => err = Some(e),
            }
        });
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(Rational::new(hits.into(), falling(n, v) * binomial(n - v, l - v)))
}

/// `D(H)`: entry `(a, b)` is `d_{F_a, F_b}(H)` for flags of one type and
/// order. Ordered disjoint pairs `(S1, S2)` are enumerated exactly.
pub fn pair_density_matrix(flags: &[Flag], h: &Graph) -> Result<Matrix> {
    let k = flags.len();
    if k == 0 {
        return Ok(Vec::new());
    }
    let v = flags[0].embedding.len();
    let l = flags[0].order();
    if flags.iter().any(|f| f.embedding.len() != v || f.order() != l) {
        return Err(Error::contract("flags must share type and order"));
    }
    let n = h.order();
    if n < 2 * l - v {
        return Err(Error::contract(format!("host order {n} is below 2l - v = {}", 2 * l - v)));
    }
    let index: HashMap<u128, usize> = flags
        .iter()
        .enumerate()
        .map(|(i, f)| Ok((f.key()?, i)))
        .collect::<Result<_>>()?;
    let mut counts = vec![vec![0u64; k]; k];
    let mut err = None;
    for_each_injection(n, v, &mut |theta| {
        let rest: Vec<usize> = (0..n).filter(|x| !theta.contains(x)).collect();
        let mut subsets: Vec<(Vec<usize>, usize)> = Vec::new();
        for_each_subset(&rest, l - v, &mut |s| {
            let verts: Vec<usize> = theta.iter().chain(s).copied().collect();
            match induced_key(h, &verts, v) {
                Ok(key) => {
                    if let Some(&i) = index.get(&key) {
                        subsets.push((s.to_vec(), i));
                    }
                }
                Err(e) => err = Some(e),
            }
        });
        for (s1, a) in &subsets {
            for (s2, b) in &subsets {
                if s1.iter().all(|x| !s2.contains(x)) {
                    counts[*a][*b] += 1;
                }
            }
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    let total = falling(n, v) * binomial(n - v, l - v) * binomial(n - l, l - v);
    Ok(counts
        .into_iter()
        .map(|row| row.into_iter().map(|c| Rational::new(c.into(), total.clone())).collect())
        .collect())
}

/// `d_{F, F'}(H)` for a single pair.
pub fn pair_density(f: &Flag, f2: &Flag, h: &Graph) -> Result<Rational> {
    if f.embedding.len() != f2.embedding.len() || f.order() != f2.order() {
        return Err(Error::contract("flags must share type and order"));
    }
    if f.key()? == f2.key()? {
        let d = pair_density_matrix(std::slice::from_ref(f), h)?;
        return Ok(d[0][0].clone());
    }
    let d = pair_density_matrix(&[f.clone(), f2.clone()], h)?;
    Ok(d[0][1].clone())
}

/// Loop-free graphs of order `m` free of `forbidden`.
pub fn admissible_graphs(m: usize, forbidden: &[Graph]) -> Result<Vec<Graph>> {
    enumerate_graphs(m, forbidden)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn densities_in_c5() {
        assert_eq!(subgraph_density(&Graph::complete(2), &Graph::complete(3)).unwrap(), rat(1, 1));
        assert_eq!(subgraph_density(&Graph::complete(3), &Graph::cycle(5)).unwrap(), rat(0, 1));
        assert_eq!(subgraph_density(&Graph::path(3), &Graph::cycle(5)).unwrap(), rat(1, 2));
    }

    #[test]
    fn flag_counts() {
        let one = FlagType::vertex();
        assert_eq!(enumerate_flags(&one, 2, &[]).unwrap().len(), 2);
        assert_eq!(enumerate_flags(&one, 3, &[]).unwrap().len(), 6);
        assert_eq!(enumerate_flags(&FlagType::empty(), 3, &[]).unwrap().len(), 4);
        assert_eq!(enumerate_flags(&FlagType::empty(), 4, &[Graph::complete(3)]).unwrap().len(), 7);
    }

    #[test]
    fn flag_keys_match_label_preserving_isomorphism() {
        // Brute force: flags on 4 vertices, 2 labelled, compared by trying
        // every permutation fixing the labels.
        let ty = FlagType::labelled(&Graph::empty(2));
        let flags = enumerate_flags(&ty, 4, &[]).unwrap();
        let perms = [[0, 1, 2, 3], [0, 1, 3, 2]];
        let mut classes = 0;
        let mut reps: Vec<Graph> = Vec::new();
        for mask in 0u32..1 << 5 {
            let pairs = [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
            let mut g = Graph::empty(4);
            for (k, &(a, b)) in pairs.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    g.add_edge(a, b);
                }
            }
            if !reps.iter().any(|r| perms.iter().any(|p| g.relabel(p) == *r)) {
                reps.push(g);
                classes += 1;
            }
        }
        assert_eq!(flags.len(), classes);
    }

    #[test]
    fn toy_pair_densities() {
        let one = FlagType::vertex();
        let fl = enumerate_flags(&one, 2, &[]).unwrap();
        let (non, edge) = (&fl[0], &fl[1]);
        assert_eq!(pair_density(edge, edge, &Graph::complete(3)).unwrap(), rat(1, 1));
        // P3: theta on an end gives one edge and one nonedge, on the middle two edges.
        assert_eq!(pair_density(edge, non, &Graph::path(3)).unwrap(), rat(1, 3));
        assert_eq!(pair_density(edge, edge, &Graph::path(3)).unwrap(), rat(1, 3));
        for g in enumerate_graphs(3, &[]).unwrap() {
            let d = pair_density_matrix(&fl, &g).unwrap();
            let total: Rational = d.iter().flatten().sum();
            assert_eq!(total, rat(1, 1));
        }
    }
}
