//! Checks shared by the property suites and the acceptance suite.

#![allow(dead_code)]

use ramsey_mult::blowup::BlowupObjective;
use ramsey_mult::flags::{
    admissible_graphs, enumerate_flags, induced_densities, pair_density_matrix, FlagCertificate, FlagType, Matrix,
};
use ramsey_mult::graphs::{enumerate_graphs, Graph};
use ramsey_mult::rational::rat;
use ramsey_mult::Rational;

/// Every type of order `v = m mod 2`, `v <= m - 2`, one labelling per
/// unlabelled graph.
pub fn types_for(m: usize) -> Vec<FlagType> {
    let mut out = Vec::new();
    for v in (m % 2..=m.saturating_sub(2)).step_by(2) {
        if v == 0 {
            out.push(FlagType::empty());
        } else {
            out.extend(enumerate_graphs(v, &[]).unwrap().iter().map(FlagType::labelled));
        }
    }
    out
}

fn combine(weights: &[Rational], mats: &[Matrix]) -> Matrix {
    let k = mats[0].len();
    let mut out = vec![vec![rat(0, 1); k]; k];
    for (w, m) in weights.iter().zip(mats) {
        for a in 0..k {
            for b in 0..k {
                out[a][b] += w * &m[a][b];
            }
        }
    }
    out
}

/// Checks both averaging identities for every host of order `m < n <=
/// max_host`. Returns the number of (host, type) pairs checked.
pub fn averaging_identities(m: usize, max_host: usize) -> usize {
    let hs = admissible_graphs(m, &[]).unwrap();
    let lam = FlagCertificate {
        m,
        forbidden: Vec::new(),
        objective: BlowupObjective::new(m.min(3), m.min(3)).with_lambda(rat(3, 2)),
        types: Vec::new(),
        flags: Vec::new(),
        q: Vec::new(),
    };
    let typed: Vec<(Vec<_>, Vec<Matrix>)> = types_for(m)
        .into_iter()
        .map(|ty| {
            let l = (m + ty.order()) / 2;
            let flags = enumerate_flags(&ty, l, &[]).unwrap();
            let per_h = hs.iter().map(|h| pair_density_matrix(&flags, h).unwrap()).collect();
            (flags, per_h)
        })
        .collect();
    let mut checked = 0;
    for n in m + 1..=max_host {
        for g in enumerate_graphs(n, &[]).unwrap() {
            let d = induced_densities(&hs, &g).unwrap();
            assert_eq!(d.iter().sum::<Rational>(), rat(1, 1));
            if m >= 2 {
                let avg: Rational = d.iter().zip(&hs).map(|(x, h)| x * lam.lambda_of(h)).sum();
                assert_eq!(lam.lambda_of(&g), avg, "lambda, m = {m}, n = {n}");
            }
            for (flags, per_h) in &typed {
                assert_eq!(pair_density_matrix(flags, &g).unwrap(), combine(&d, per_h), "m = {m}, n = {n}");
                checked += 1;
            }
        }
    }
    checked
}

pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut g = Graph::empty(n);
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> k & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    g
}

/// Ordered `t`-tuples of vertices, pairwise linked (a vertex is linked to
/// itself iff it carries a loop), counted by brute force over closed
/// neighbourhood masks.
pub fn linked_tuples(g: &Graph, t: usize) -> u64 {
    let n = g.order();
    assert!(n <= 64);
    let rows: Vec<u64> = (0..n)
        .map(|v| (0..n).filter(|&u| g.linked(u, v)).fold(0u64, |m, u| m | 1 << u))
        .collect();
    fn go(rows: &[u64], cand: u64, t: usize) -> u64 {
        if t == 0 {
            return 1;
        }
        if t == 1 {
            return cand.count_ones() as u64;
        }
        let mut total = 0;
        let mut c = cand;
        while c != 0 {
            let v = c.trailing_zeros() as usize;
            c &= c - 1;
            total += go(rows, cand & rows[v], t - 1);
        }
        total
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    go(&rows, all, t)
}

pub fn looped_variants(n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for g in enumerate_graphs(n, &[]).unwrap() {
        for mask in 0u32..1 << n {
            let mut h = g.clone();
            for v in 0..n {
                h.set_loop(v, mask >> v & 1 == 1);
            }
            out.push(h);
        }
    }
    out
}
