//! Checkable preconditions of the stability arguments: unique embeddings,
//! unique neighbourhoods, reconstructor lemmas and the symmetry conditions
//! that pin down an optimal weighting.

use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::blowup::WeightVector;
use crate::error::{Error, Result};
use crate::flags::{corank, zero_eigenvector_check, FlagCertificate};
use crate::graphs::{
    automorphism_group_order, automorphisms, count_strong_homomorphisms, extends_to_automorphism, find_isomorphism,
    stabilizer_order, strong_homomorphisms, Graph,
};

pub const MAX_EMBED_SOURCE: usize = 7;
pub const MAX_EMBED_TARGET: usize = 30;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    /// Number of strong homomorphisms `T -> C`.
    pub count: u64,
    /// Size of the `Aut(C) x Aut(T)` orbit of the first one found.
    pub orbit_size: u128,
    pub aut_target: u128,
    pub aut_source: u128,
    pub unique_up_to_automorphism: bool,
    pub witness: Option<Vec<usize>>,
}

/// Whether the partial map `a(u) -> b(u)` is a well-defined bijection
/// between the images that extends to an automorphism of `c`.
fn same_target_orbit(c: &Graph, a: &[usize], b: &[usize]) -> bool {
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (&x, &y) in a.iter().zip(b) {
        match pairs.iter().find(|&&(p, q)| p == x || q == y) {
            Some(&(p, q)) if p == x && q == y => {}
            Some(_) => return false,
            None => pairs.push((x, y)),
        }
    }
    extends_to_automorphism(c, &pairs)
}

/// Strong-embedding analysis against a fixed target, caching `|Aut(C)|`
/// and per-vertex-set results.
pub struct Embedder<'a> {
    pub target: &'a Graph,
    aut_target: u128,
    cache: Mutex<HashMap<Vec<usize>, bool>>,
}

impl<'a> Embedder<'a> {
    pub fn new(target: &'a Graph) -> Result<Self> {
        if target.order() > MAX_EMBED_TARGET {
            return Err(Error::Unsupported(format!("embedding targets are limited to {MAX_EMBED_TARGET} vertices")));
        }
        Ok(Self {
            target,
            aut_target: automorphism_group_order(target),
            cache: Mutex::new(HashMap::new()),
        })
    }

    /// The orbit is the union of the `Aut(C)`-orbits of `psi o phi` for
    /// `phi` in `Aut(T)`; all share one image, so each has size
    /// `|Aut(C)| / |pointwise stabiliser of the image|`.
    pub fn report(&self, source: &Graph) -> Result<EmbeddingReport> {
        if source.order() > MAX_EMBED_SOURCE {
            return Err(Error::Unsupported(format!("embedded graphs are limited to {MAX_EMBED_SOURCE} vertices")));
        }
        let c = self.target;
        let count = count_strong_homomorphisms(source, c);
        let auts = automorphisms(source);
        let mut report = EmbeddingReport {
            count,
            orbit_size: 0,
            aut_target: self.aut_target,
            aut_source: auts.len() as u128,
            unique_up_to_automorphism: false,
            witness: None,
        };
        let Some(psi) = strong_homomorphisms(source, c, Some(1)).pop() else {
            return Ok(report);
        };
        let mut image: Vec<usize> = psi.clone();
        image.sort_unstable();
        image.dedup();
        let per_orbit = self.aut_target / stabilizer_order(c, &image);
        let mut reps: Vec<Vec<usize>> = Vec::new();
        for phi in &auts {
            let m: Vec<usize> = (0..source.order()).map(|u| psi[phi.apply(u)]).collect();
            if !reps.iter().any(|r| same_target_orbit(c, r, &m)) {
                reps.push(m);
            }
        }
        report.orbit_size = reps.len() as u128 * per_orbit;
        report.unique_up_to_automorphism = count as u128 == report.orbit_size;
        report.witness = Some(psi);
        Ok(report)
    }

    /// Whether `C[set]` uniquely embeds into `C`.
    pub fn unique_subset(&self, set: &[usize]) -> Result<bool> {
        let mut key = set.to_vec();
        key.sort_unstable();
        key.dedup();
        if let Some(&b) = self.cache.lock().unwrap().get(&key) {
            return Ok(b);
        }
        let b = self.report(&self.target.induced(&key))?.unique_up_to_automorphism;
        self.cache.lock().unwrap().insert(key, b);
        Ok(b)
    }
}

pub fn uniquely_embeds(t: &Graph, c: &Graph) -> Result<EmbeddingReport> {
    Embedder::new(c)?.report(t)
}

fn check_set(x: &[usize], c: &Graph) -> Result<()> {
    if let Some(&v) = x.iter().find(|&&v| v >= c.order()) {
        return Err(Error::contract(format!("vertex {v} is not in a graph of order {}", c.order())));
    }
    Ok(())
}

/// `N(v) ∩ X` as a sorted list.
fn trace(c: &Graph, v: usize, x: &[usize]) -> Vec<usize> {
    let mut t: Vec<usize> = x.iter().copied().filter(|&u| c.has_edge(u, v)).collect();
    t.sort_unstable();
    t.dedup();
    t
}

/// Classes of `~_X`, each sorted, ordered by smallest member.
pub fn neighborhood_classes(x: &[usize], c: &Graph) -> Vec<Vec<usize>> {
    let mut by_trace: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for v in 0..c.order() {
        by_trace.entry(trace(c, v, x)).or_default().push(v);
    }
    let mut classes: Vec<Vec<usize>> = by_trace.into_values().collect();
    classes.sort();
    classes
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NeighborhoodReport {
    pub unique: bool,
    /// First class with more than one vertex.
    pub offending: Option<Vec<usize>>,
}

pub fn defines_unique_neighborhoods(x: &[usize], c: &Graph) -> Result<NeighborhoodReport> {
    check_set(x, c)?;
    let offending = neighborhood_classes(x, c).into_iter().find(|k| k.len() > 1);
    Ok(NeighborhoodReport {
        unique: offending.is_none(),
        offending,
    })
}

/// Vertices alone in their `~_X` class.
pub fn uniquely_determined(x: &[usize], c: &Graph) -> Vec<usize> {
    let mut out: Vec<usize> = neighborhood_classes(x, c)
        .into_iter()
        .filter(|k| k.len() == 1)
        .map(|k| k[0])
        .collect();
    out.sort_unstable();
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimpleReconstructorReport {
    pub size_ok: bool,
    pub uniquely_embeds: bool,
    pub unique_neighborhoods: bool,
    pub holds: bool,
}

/// `|X| <= l - 2`, `C[X]` uniquely embeds, and `X` separates all vertices.
pub fn check_reconstructor_simple(x: &[usize], c: &Graph, l: usize) -> Result<SimpleReconstructorReport> {
    check_set(x, c)?;
    let size_ok = x.len() + 2 <= l;
    let unique_neighborhoods = defines_unique_neighborhoods(x, c)?.unique;
    let uniquely_embeds = Embedder::new(c)?.unique_subset(x)?;
    Ok(SimpleReconstructorReport {
        size_ok,
        uniquely_embeds,
        unique_neighborhoods,
        holds: size_ok && uniquely_embeds && unique_neighborhoods,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairWitness {
    pub v1: usize,
    pub v2: usize,
    /// First `X''` found, by increasing size then lexicographically.
    pub witness: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrongReconstructorReport {
    /// `'a'` or `'b'` when condition (1) holds through that branch.
    pub branch: Option<char>,
    pub condition1: bool,
    pub condition2: bool,
    pub pairs: Vec<PairWitness>,
    pub condition3: bool,
    pub holds: bool,
}

fn subsets_by_size(x: &[usize], max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for k in 0..=max.min(x.len()) {
        crate::flags::for_each_subset(x, k, &mut |s| out.push(s.to_vec()));
    }
    out
}

fn bipartite_uniform(c: &Graph, a: &[usize], b: &[usize]) -> bool {
    let first = c.has_edge(a[0], b[0]);
    a.iter().all(|&u| b.iter().all(|&v| c.has_edge(u, v) == first))
}

fn pair_witness(e: &Embedder, c: &Graph, subsets: &[Vec<usize>], v1: usize, v2: usize) -> Result<Option<Vec<usize>>> {
    for xs in subsets {
        let classes = neighborhood_classes(xs, c);
        let class_of = |v: usize| classes.iter().find(|k| k.contains(&v)).unwrap();
        let with = |v: usize| -> Vec<usize> { xs.iter().copied().chain([v]).collect() };
        if v1 == v2 {
            if class_of(v1).len() == 1 && e.unique_subset(&with(v1))? {
                return Ok(Some(xs.clone()));
            }
            continue;
        }
        let (k1, k2) = (class_of(v1), class_of(v2));
        if k1 == k2 || !bipartite_uniform(c, k1, k2) {
            continue;
        }
        if e.unique_subset(&with(v1))? || e.unique_subset(&with(v2))? {
            return Ok(Some(xs.clone()));
        }
    }
    Ok(None)
}

/// Conditions (1)-(3) of the strengthened reconstructor lemma for
/// `X' ⊆ X ⊆ V(C)`. Witnesses for (3) are searched exhaustively.
pub fn check_reconstructor_strong(x: &[usize], x_prime: &[usize], c: &Graph, l: usize) -> Result<StrongReconstructorReport> {
    check_set(x, c)?;
    if !x_prime.iter().all(|v| x.contains(v)) {
        return Err(Error::contract("X' must be a subset of X"));
    }
    if l < 2 {
        return Err(Error::contract("l must be at least 2"));
    }
    let e = Embedder::new(c)?;
    let branch_a = x.len() == x_prime.len() && x.len() < l && e.unique_subset(x)?;
    let branch_b = !branch_a && x.len() == l && x_prime.len() + 2 <= l && {
        let mut ok = true;
        for &v in x {
            let s: Vec<usize> = x_prime.iter().copied().chain([v]).collect();
            if !e.unique_subset(&s)? {
                ok = false;
                break;
            }
        }
        ok
    };
    let branch = if branch_a {
        Some('a')
    } else if branch_b {
        Some('b')
    } else {
        None
    };
    let condition2 = defines_unique_neighborhoods(x_prime, c)?.unique;

    let outside: Vec<usize> = (0..c.order()).filter(|v| !x.contains(v)).collect();
    let subsets = subsets_by_size(x, l - 2);
    let todo: Vec<(usize, usize)> = outside
        .iter()
        .enumerate()
        .flat_map(|(i, &a)| outside[i..].iter().map(move |&b| (a, b)))
        .collect();
    let pairs = todo
        .par_iter()
        .map(|&(v1, v2)| {
            Ok(PairWitness {
                v1,
                v2,
                witness: pair_witness(&e, c, &subsets, v1, v2)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let condition3 = pairs.iter().all(|p| p.witness.is_some());
    let condition1 = branch.is_some();
    Ok(StrongReconstructorReport {
        branch,
        condition1,
        condition2,
        pairs,
        condition3,
        holds: condition1 && condition2 && condition3,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetryReport {
    /// (a), embedding part only.
    pub first_embeds: bool,
    /// (b) per set.
    pub chain: Vec<bool>,
    /// (c).
    pub coverage: bool,
    /// (d) per set: a labelling of `C[X_i]` realising type `j_i`.
    pub labellings: Vec<Option<Vec<usize>>>,
    /// (e) per set: corank of `Q^{j_i}`.
    pub coranks: Vec<usize>,
    /// Zero-eigenvector check for each realised labelling.
    pub eigenvectors: Vec<Option<bool>>,
    pub holds: bool,
    /// The lambda-gap part of (a) needs a second certificate and is not
    /// decided here.
    pub lambda_gap: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexSetReport {
    /// `C[X_1]` uniquely embeds.
    pub first_embeds: bool,
    /// Per set: every vertex lies in `X_1` or is uniquely determined by an
    /// earlier set.
    pub chain: Vec<bool>,
    /// Every vertex of `C` is uniquely determined by some set.
    pub coverage: bool,
}

/// The purely structural conditions on the sets `xs` (0-based), with no
/// certificate involved.
pub fn check_vertex_sets(c: &Graph, xs: &[Vec<usize>]) -> Result<VertexSetReport> {
    if xs.is_empty() {
        return Err(Error::contract("need at least one vertex set"));
    }
    for x in xs {
        check_set(x, c)?;
    }
    let first_embeds = Embedder::new(c)?.unique_subset(&xs[0])?;
    let determined: Vec<Vec<usize>> = xs.iter().map(|x| uniquely_determined(x, c)).collect();
    let chain = (0..xs.len())
        .map(|i| {
            xs[i]
                .iter()
                .all(|v| xs[0].contains(v) || determined[..i].iter().any(|d| d.contains(v)))
        })
        .collect();
    let coverage = (0..c.order()).all(|v| determined.iter().any(|d| d.contains(&v)));
    Ok(VertexSetReport {
        first_embeds,
        chain,
        coverage,
    })
}

/// Conditions (a)-(e) of the symmetry proposition for sets `xs` (0-based)
/// and type indices `js`.
pub fn check_symmetry_conditions(
    cert: &FlagCertificate,
    c: &Graph,
    w: &WeightVector,
    xs: &[Vec<usize>],
    js: &[usize],
) -> Result<SymmetryReport> {
    if xs.len() != js.len() || xs.is_empty() {
        return Err(Error::contract("need one type index per vertex set, at least one set"));
    }
    if let Some(&j) = js.iter().find(|&&j| j >= cert.types.len()) {
        return Err(Error::contract(format!("type index {j} out of range")));
    }
    for x in xs {
        check_set(x, c)?;
    }
    if w.len() != c.order() {
        return Err(Error::contract("weight vector length differs from the construction order"));
    }
    let VertexSetReport {
        first_embeds,
        chain,
        coverage,
    } = check_vertex_sets(c, xs)?;
    let mut labellings = Vec::new();
    let mut coranks = Vec::new();
    let mut eigenvectors = Vec::new();
    for (x, &j) in xs.iter().zip(js) {
        let ty = &cert.types[j];
        // psi(i) = x[iso(i)] where iso maps the ordered type onto C[X].
        let psi = find_isomorphism(&ty.ordered(), &c.induced(x)).map(|iso| iso.0.iter().map(|&k| x[k]).collect::<Vec<_>>());
        coranks.push(corank(&cert.q[j]));
        eigenvectors.push(match &psi {
            Some(p) if p.iter().all(|&v| !w.as_slice()[v].is_zero()) => {
                Some(zero_eigenvector_check(cert, j, c, w, p)?)
            }
            _ => None,
        });
        labellings.push(psi);
    }
    let holds = first_embeds
        && chain.iter().all(|&b| b)
        && coverage
        && labellings.iter().all(Option::is_some)
        && coranks.iter().all(|&r| r == 1);
    Ok(SymmetryReport {
        first_embeds,
        chain,
        coverage,
        labellings,
        coranks,
        eigenvectors,
        holds,
        lambda_gap: "attested by a separate certificate; not decided here",
    })
}
