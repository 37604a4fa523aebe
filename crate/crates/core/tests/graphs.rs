use proptest::prelude::*;
use ramsey_mult::graphs::{
    automorphism_count, automorphisms, canonical_form, count_cliques, is_isomorphic, named, strong_homomorphisms, Graph,
};

fn graph_from_bits(n: usize, bits: &[bool], loops: &[bool]) -> Graph {
    let mut g = Graph::empty(n);
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if bits[k] {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    for (v, &l) in loops.iter().enumerate().take(n) {
        g.set_loop(v, l);
    }
    g
}

fn arb_graph(max_n: usize, with_loops: bool) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(move |n| {
        let pairs = n * n.saturating_sub(1) / 2;
        (
            Just(n),
            prop::collection::vec(any::<bool>(), pairs),
            prop::collection::vec(any::<bool>(), n),
        )
            .prop_map(move |(n, bits, loops)| {
                let loops = if with_loops { loops } else { vec![false; n] };
                graph_from_bits(n, &bits, &loops)
            })
    })
}

fn arb_graph_with_perm(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    arb_graph(max_n, true).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
    })
}

fn naive_cliques(g: &Graph, t: usize) -> u64 {
    let n = g.order();
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == t)
        .filter(|m| {
            let vs: Vec<usize> = (0..n).filter(|&v| m >> v & 1 == 1).collect();
            vs.iter().enumerate().all(|(a, &u)| vs[a + 1..].iter().all(|&v| g.has_edge(u, v)))
        })
        .count() as u64
}

proptest! {
    #[test]
    fn clique_counts_match_subset_enumeration(g in arb_graph(8, false)) {
        for t in 0..=g.order() {
            prop_assert_eq!(count_cliques(&g, t), naive_cliques(&g, t), "t = {}", t);
        }
    }

    #[test]
    fn complements_are_involutions(g in arb_graph(9, true)) {
        prop_assert_eq!(g.complement().complement(), g.clone());
        prop_assert_eq!(g.looped_complement().looped_complement(), g);
    }

    #[test]
    fn canonical_form_is_idempotent_and_invariant((g, perm) in arb_graph_with_perm(8)) {
        let c = canonical_form(&g).unwrap();
        prop_assert_eq!(canonical_form(&c).unwrap(), c.clone());
        prop_assert_eq!(canonical_form(&g.relabel(&perm)).unwrap(), c);
    }

    #[test]
    fn automorphisms_fix_the_graph(g in arb_graph(7, true)) {
        let auts = automorphisms(&g);
        prop_assert!(auts.iter().any(|p| p.0.iter().enumerate().all(|(i, &v)| i == v)));
        for p in &auts {
            prop_assert_eq!(g.relabel(&p.0), g.clone());
        }
    }
}

#[test]
fn loops_change_the_canonical_form() {
    let mut a = Graph::path(3);
    a.set_loop(0, true);
    let mut b = Graph::path(3);
    b.set_loop(1, true);
    assert_ne!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
}

#[test]
fn strong_homomorphisms_closed_under_target_automorphisms() {
    let cases = [
        (Graph::path(3), Graph::cycle(5)),
        (named::triangles_sharing_vertex(), named::ramsey_13()),
        (Graph::complete(2), Graph::cycle(6)),
    ];
    for (t, c) in cases {
        let homs = strong_homomorphisms(&t, &c, None);
        assert!(!homs.is_empty());
        let set: std::collections::HashSet<Vec<usize>> = homs.iter().cloned().collect();
        for a in automorphisms(&c) {
            for h in &homs {
                let img: Vec<usize> = h.iter().map(|&v| a.0[v]).collect();
                assert!(set.contains(&img));
            }
        }
    }
}

#[test]
fn ramsey13_automorphisms_are_affine() {
    // The circulant on Z13 with connection set {2, 3, 4, 6} and its negatives.
    let mut g = Graph::empty(13);
    for x in 0..13 {
        for d in [2, 3, 4, 6] {
            g.add_edge(x, (x + d) % 13);
        }
    }
    assert!(is_isomorphic(&g, &named::ramsey_13()) || is_isomorphic(&g.complement(), &named::ramsey_13()));
    // Affine maps x -> a x + b preserving it.
    let mut affine = 0;
    for a in 1..13usize {
        for b in 0..13usize {
            let p: Vec<usize> = (0..13).map(|x| (a * x + b) % 13).collect();
            if g.relabel(&p) == g {
                affine += 1;
            }
        }
    }
    assert_eq!(affine, 52);
    assert_eq!(automorphism_count(&g), 52);
    assert_eq!(automorphism_count(&named::ramsey_13()), 52);
    assert_eq!(automorphism_count(&Graph::complete(3)), 6);
    assert_eq!(automorphism_count(&Graph::cycle(5)), 10);
}
