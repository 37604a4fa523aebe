mod common;

use common::{linked_tuples, looped_variants};
use num_bigint::BigInt;
use proptest::prelude::*;
use ramsey_mult::blowup::{cost, hom_clique_weight, stirling2, BlowupObjective, WeightVector};
use ramsey_mult::graphs::{count_cliques, enumerate_graphs, Graph};
use ramsey_mult::rational::{int, rat};
use ramsey_mult::Rational;

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

#[test]
fn materialized_blow_ups_match_the_formula() {
    for n in 1..=5 {
        for c in looped_variants(n) {
            for t in 1..=4 {
                let w = hom_clique_weight(t, &c, &WeightVector::uniform(n)).unwrap();
                for m in 1..=4 {
                    let b = c.blow_up(m);
                    let expected = &w * int(BigInt::from(n * m).pow(t as u32));
                    assert_eq!(int(linked_tuples(&b, t)), expected, "n={n} t={t} m={m}");
                }
            }
        }
    }
}

#[test]
fn loop_free_weight_counts_cliques() {
    for n in 1..=6 {
        for c in enumerate_graphs(n, &[]).unwrap() {
            for t in 1..=5 {
                let w = hom_clique_weight(t, &c, &WeightVector::uniform(n)).unwrap();
                let lhs = w * int(BigInt::from(n).pow(t as u32));
                assert_eq!(lhs, int(factorial(t) * count_cliques(&c, t)));
            }
        }
    }
}

#[test]
fn looped_complement_weight_is_a_stirling_sum() {
    for n in 1..=5 {
        for c in enumerate_graphs(n, &[]).unwrap() {
            let lc = c.looped_complement();
            let comp = c.complement();
            for t in 1..=5 {
                let w = hom_clique_weight(t, &lc, &WeightVector::uniform(n)).unwrap();
                let lhs = w * int(BigInt::from(n).pow(t as u32));
                let rhs: u64 = (1..=t).map(|j| factorial(j) * stirling2(t, j) * count_cliques(&comp, j)).sum();
                assert_eq!(lhs, int(rhs), "n={n} t={t}");
            }
        }
    }
}

#[test]
fn stirling_numbers() {
    assert_eq!(stirling2(0, 0), 1);
    assert_eq!(stirling2(5, 2), 15);
    assert_eq!(stirling2(6, 3), 90);
    assert_eq!(stirling2(4, 0), 0);
}

fn arb_weighted() -> impl Strategy<Value = (Graph, Vec<Rational>, Vec<usize>)> {
    (1usize..=6).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (
            prop::collection::vec(any::<bool>(), pairs),
            prop::collection::vec(any::<bool>(), n),
            prop::collection::vec(1i64..20, n),
            Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
        )
            .prop_map(move |(bits, loops, raw, perm)| {
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
                let total: i64 = raw.iter().sum();
                let w = raw.iter().map(|&r| rat(r, total)).collect();
                (g, w, perm)
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cost_is_isomorphism_invariant((g, w, perm) in arb_weighted(), s in 2usize..5, t in 2usize..5) {
        let obj = BlowupObjective::new(s, t).with_lambda(rat(3, 1));
        let before = cost(&g, &obj, &WeightVector::new(w.clone()).unwrap()).unwrap();
        let mut moved = vec![rat(0, 1); w.len()];
        for (v, x) in w.into_iter().enumerate() {
            moved[perm[v]] = x;
        }
        let after = cost(&g.relabel(&perm), &obj, &WeightVector::new(moved).unwrap()).unwrap();
        prop_assert_eq!(before, after);
    }
}
