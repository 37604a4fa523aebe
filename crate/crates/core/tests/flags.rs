mod common;

use proptest::prelude::*;
use ramsey_mult::blowup::BlowupObjective;
use ramsey_mult::flags::{enumerate_flags, toy_certificate, verify_certificate, FlagCertificate, FlagType, Matrix};
use ramsey_mult::rational::rat;

#[test]
fn averaging_identities_up_to_order_five() {
    for m in 2..=4 {
        assert!(common::averaging_identities(m, 5) > 0);
    }
}

fn permuted(cert: &FlagCertificate, perms: &[Vec<usize>]) -> FlagCertificate {
    let mut out = cert.clone();
    for (i, p) in perms.iter().enumerate() {
        out.flags[i] = p.iter().map(|&k| cert.flags[i][k].clone()).collect();
        out.q[i] = p.iter().map(|&a| p.iter().map(|&b| cert.q[i][a][b].clone()).collect()).collect();
    }
    out
}

/// `B B^T` for a small integer matrix `B`, scaled by `1/den`.
fn gram(b: &[Vec<i64>], den: i64) -> Matrix {
    b.iter()
        .map(|r| b.iter().map(|s| rat(r.iter().zip(s).map(|(x, y)| x * y).sum(), den)).collect())
        .collect()
}

/// An `m = 4` certificate for `s = t = 3` with the empty type and the
/// two-vertex edge and non-edge types, matrices `B B^T` from `seed`.
fn random_cert(seed: &[i64]) -> FlagCertificate {
    let types = common::types_for(4);
    let mut flags = Vec::new();
    let mut q = Vec::new();
    let mut it = seed.iter().cycle();
    for ty in &types {
        let f = enumerate_flags(ty, (4 + ty.order()) / 2, &[]).unwrap();
        let d = f.len();
        let b: Vec<Vec<i64>> = (0..d).map(|_| (0..d).map(|_| *it.next().unwrap()).collect()).collect();
        q.push(gram(&b, 50));
        flags.push(f);
    }
    FlagCertificate {
        m: 4,
        forbidden: Vec::new(),
        objective: BlowupObjective::new(3, 3),
        types,
        flags,
        q,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn bound_ignores_flag_order(seed in prop::collection::vec(-3i64..=3, 1..40), rot in 0usize..8) {
        let cert = random_cert(&seed);
        let perms: Vec<Vec<usize>> = cert
            .flags
            .iter()
            .map(|f| {
                let d = f.len();
                (0..d).map(|k| (k + rot) % d).rev().collect()
            })
            .collect();
        let a = verify_certificate(&cert).unwrap();
        let b = verify_certificate(&permuted(&cert, &perms)).unwrap();
        prop_assert_eq!(&a.bound, &b.bound);
        for row in &a.rows {
            prop_assert!(row.slack >= rat(0, 1));
            prop_assert_eq!(&row.slack, &(&row.value - &a.bound));
        }
        prop_assert!(a.rows.iter().any(|r| r.slack == rat(0, 1)));
    }
}

#[test]
fn toy_certificate_survives_swapping_flags() {
    let cert = toy_certificate();
    let swapped = permuted(&cert, &[vec![1, 0]]);
    assert_eq!(verify_certificate(&swapped).unwrap().bound, rat(1, 4));
}

#[test]
fn no_types_gives_the_minimum_over_graphs() {
    // Without types the bound is min over 6-vertex graphs of the triangle
    // plus independent triple density, which is 2/20.
    let cert = FlagCertificate {
        m: 6,
        forbidden: Vec::new(),
        objective: BlowupObjective::new(3, 3),
        types: Vec::new(),
        flags: Vec::new(),
        q: Vec::new(),
    };
    let r = verify_certificate(&cert).unwrap();
    assert_eq!(r.bound, rat(1, 10));
    let min = r.rows.iter().map(|row| row.lambda.clone()).min().unwrap();
    assert_eq!(min, r.bound);
}

#[test]
fn labelled_types_have_expected_flag_counts() {
    let edge = FlagType::labelled(&ramsey_mult::Graph::complete(2));
    // Third vertex joined to any subset of the two labels.
    assert_eq!(enumerate_flags(&edge, 3, &[]).unwrap().len(), 4);
}
