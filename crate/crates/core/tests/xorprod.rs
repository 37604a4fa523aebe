use proptest::prelude::*;
use ramsey_mult::graphs::Graph;
use ramsey_mult::xorprod::{compose, inverse_wht, pattern_dim, pattern_vector, wht, xor_product, PatternVector};

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        (prop::collection::vec(any::<bool>(), n * (n - 1) / 2), prop::collection::vec(any::<bool>(), n)).prop_map(
            move |(bits, loops)| {
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
                for (v, &l) in loops.iter().enumerate() {
                    g.set_loop(v, l);
                }
                g
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn compose_matches_the_materialized_product(a in arb_graph(5), b in arb_graph(5), t in 1usize..=4) {
        let direct = pattern_vector(&xor_product(&a, &b).unwrap(), t).unwrap();
        let composed = compose(&pattern_vector(&a, t).unwrap(), &pattern_vector(&b, t).unwrap()).unwrap();
        prop_assert_eq!(direct, composed);
    }

    #[test]
    fn compose_is_associative_and_commutative(a in arb_graph(4), b in arb_graph(4), c in arb_graph(4), t in 1usize..=4) {
        let (va, vb, vc) = (pattern_vector(&a, t).unwrap(), pattern_vector(&b, t).unwrap(), pattern_vector(&c, t).unwrap());
        prop_assert_eq!(compose(&va, &vb).unwrap(), compose(&vb, &va).unwrap());
        let left = compose(&compose(&va, &vb).unwrap(), &vc).unwrap();
        let right = compose(&va, &compose(&vb, &vc).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(compose(&va, &PatternVector::unit(t)).unwrap(), va);
    }

    #[test]
    fn pattern_vectors_sum_to_all_maps(g in arb_graph(5), t in 1usize..=4) {
        let v = pattern_vector(&g, t).unwrap();
        prop_assert!(v.entries.iter().all(|&x| x >= 0));
        prop_assert_eq!(v.total(), (g.order() as i128).pow(t as u32));
    }

    #[test]
    fn looped_complement_flips_patterns(g in arb_graph(5), t in 1usize..=4) {
        let v = pattern_vector(&g, t).unwrap();
        let w = pattern_vector(&g.looped_complement(), t).unwrap();
        let top = pattern_dim(t) - 1;
        for p in 0..=top {
            prop_assert_eq!(v.entries[p], w.entries[top ^ p]);
        }
    }

    #[test]
    fn wht_round_trip(log in 0usize..=10, seed in any::<u64>()) {
        let dim = 1usize << log;
        let mut x = seed;
        let orig: Vec<i128> = (0..dim)
            .map(|_| {
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (x >> 33) as i128 - (1 << 30)
            })
            .collect();
        let mut v = orig.clone();
        wht(&mut v);
        inverse_wht(&mut v).unwrap();
        prop_assert_eq!(v, orig);
    }
}
