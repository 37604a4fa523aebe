use proptest::prelude::*;
use ramsey_mult::blowup::WeightVector;
use ramsey_mult::graphs::Graph;
use ramsey_mult::rational::rat;
use ramsey_mult::region::{
    construction_point, figure_constructions_c34, goodman_gadget_point, upper_curve, upper_curve_branches,
};

#[test]
fn upper_curve_is_nonincreasing() {
    for s in 2..=6 {
        for t in 2..=6 {
            let mut prev = f64::INFINITY;
            for i in 0..=1000 {
                let x = i as f64 / 1000.0;
                let y = upper_curve(s, t, x).unwrap();
                assert!((0.0..=1.0).contains(&y));
                assert!(y <= prev + 1e-12, "s={s} t={t} x={x}");
                prev = y;
            }
            assert!((upper_curve(s, t, 0.0).unwrap() - 1.0).abs() < 1e-12);
            assert!(upper_curve(s, t, 1.0).unwrap().abs() < 1e-12);
        }
    }
}

#[test]
fn curve_is_the_larger_branch() {
    for i in 0..=50 {
        let x = i as f64 / 50.0;
        let (a, b) = upper_curve_branches(3, 4, x).unwrap();
        assert_eq!(upper_curve(3, 4, x).unwrap(), a.max(b));
    }
}

#[test]
fn constructions_lie_above_the_lower_line() {
    let c34 = rat(689, 6561);
    let points = figure_constructions_c34().unwrap();
    assert_eq!(points.len(), 7);
    for p in &points {
        assert!(p.sum() >= c34, "{}", p.source);
    }
    assert!(points.iter().any(|p| p.sum() == c34));
}

#[test]
fn goodman_gadget_sweep() {
    for k in 0..=20 {
        let p = goodman_gadget_point(&rat(k, 40)).unwrap();
        assert_eq!(p.sum(), rat(1, 4), "b = {k}/40");
    }
    assert!(goodman_gadget_point(&rat(3, 5)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn blow_ups_never_beat_goodman(mask in 0u64..1 << 15, loops in 0u32..1 << 6, raw in prop::collection::vec(1i64..10, 6)) {
        let mut g = Graph::empty(6);
        let mut k = 0;
        for i in 0..6 {
            for j in i + 1..6 {
                if mask >> k & 1 == 1 {
                    g.add_edge(i, j);
                }
                k += 1;
            }
            g.set_loop(i, loops >> i & 1 == 1);
        }
        let total: i64 = raw.iter().sum();
        let w = WeightVector::new(raw.iter().map(|&r| rat(r, total)).collect()).unwrap();
        let p = construction_point(&g, 3, 3, &w, "random").unwrap();
        prop_assert!(p.sum() >= rat(1, 4));
    }
}
