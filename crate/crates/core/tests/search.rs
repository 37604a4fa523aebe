use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ramsey_mult::ap::PartialProblem;
use ramsey_mult::blowup::{cost, BlowupObjective, WeightVector};
use ramsey_mult::rational::rat;
use ramsey_mult::search::{
    delta_cost, parallel_restarts, simulated_annealing, tabu_search, Algorithm, BlowupProblem, FiniteGroup, Schedule,
    SearchProblem, SearchSpace,
};

fn check_deltas<P: SearchProblem>(p: &P, samples: usize, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = p.num_bits();
    for _ in 0..samples {
        let state: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
        let i = rng.gen_range(0..n);
        let cache = p.prime(&state);
        let before = p.score(&cache);
        let mut flipped = state.clone();
        flipped[i] = !flipped[i];
        let after = p.score(&p.prime(&flipped));
        assert_eq!(p.delta(&state, &cache, i).unwrap(), after - before);
        assert_eq!(delta_cost(p, &state, i, &cache).unwrap(), p.to_rational(after) - p.to_rational(before));
        let (mut s2, mut c2) = (state.clone(), cache.clone());
        p.apply(&mut s2, &mut c2, i);
        assert_eq!(s2, flipped);
        assert_eq!(p.score(&c2), after);
    }
}

#[test]
fn deltas_in_graph_space() {
    let obj = BlowupObjective::new(3, 4).with_lambda(rat(5, 2));
    let p = BlowupProblem::new(SearchSpace::graph(7), obj).unwrap();
    check_deltas(&p, 10_000, 1);
}

#[test]
fn deltas_in_cayley_space() {
    let obj = BlowupObjective::new(4, 5).with_lambda(rat(1_000_000, 1));
    let p = BlowupProblem::new(SearchSpace::cayley(FiniteGroup::cyclic(13).unwrap()), obj).unwrap();
    check_deltas(&p, 5_000, 2);
    let obj = BlowupObjective::new(3, 3);
    let p = BlowupProblem::new(SearchSpace::cayley(FiniteGroup::direct_product(&[2, 2, 4]).unwrap()), obj).unwrap();
    check_deltas(&p, 5_000, 3);
}

#[test]
fn deltas_for_partial_colourings() {
    let p = PartialProblem::new(12, 2, 3).unwrap();
    check_deltas(&p, 2_000, 4);
}

#[test]
fn scores_agree_with_the_exact_cost() {
    let obj = BlowupObjective::new(3, 4).with_lambda(rat(5, 2));
    let p = BlowupProblem::new(SearchSpace::graph(6), obj.clone()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..50 {
        let state: Vec<bool> = (0..p.num_bits()).map(|_| rng.gen()).collect();
        let g = p.space.decode(&state);
        let exact = cost(&g, &obj, &WeightVector::uniform(6)).unwrap();
        assert_eq!(p.to_rational(p.score(&p.prime(&state))), exact);
    }
}

#[test]
fn restarts_do_not_depend_on_thread_count() {
    let obj = BlowupObjective::new(3, 4);
    let p = BlowupProblem::new(SearchSpace::graph(8), obj).unwrap();
    let sched = Schedule {
        iterations: 400,
        initial_temperature: 0.05,
        tabu_length: 5,
        seed: 42,
        record_steps: true,
        ..Schedule::default()
    };
    for alg in [Algorithm::Anneal, Algorithm::Tabu] {
        let run = |threads: usize| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            pool.install(|| parallel_restarts(&p, alg, &sched, 6, None, &|_, _| {}).unwrap())
        };
        let (r1, a) = run(1);
        let (r4, b) = run(4);
        assert_eq!(r1, r4);
        assert_eq!(a.best_state, b.best_state);
        assert_eq!(a.best_score, b.best_score);
        assert_eq!(a.steps, b.steps);
        assert_eq!(a.improvements, b.improvements);
    }
}

#[test]
fn tabu_traces_repeat() {
    let obj = BlowupObjective::new(4, 5).with_lambda(rat(1_000_000, 1));
    let p = BlowupProblem::new(SearchSpace::cayley(FiniteGroup::cyclic(13).unwrap()), obj).unwrap();
    let sched = Schedule {
        iterations: 100,
        tabu_length: 3,
        seed: 5,
        record_steps: true,
        ..Schedule::default()
    };
    let a = tabu_search(&p, &sched, None, &mut |_| {}).unwrap();
    let b = tabu_search(&p, &sched, None, &mut |_| {}).unwrap();
    assert_eq!(a.steps, b.steps);
    assert!(a.steps.iter().all(|s| s.accepted));
}

#[test]
fn cold_annealing_never_goes_uphill() {
    let obj = BlowupObjective::new(3, 3);
    let p = BlowupProblem::new(SearchSpace::graph(7), obj).unwrap();
    let iterations = 2_000;
    let mut uphill_tries = 0;
    for seed in 0..20 {
        let sched = Schedule {
            iterations,
            temperatures: Some(vec![1e-12; iterations]),
            seed,
            record_steps: true,
            ..Schedule::default()
        };
        let out = simulated_annealing(&p, &sched, None, &mut |_| {}).unwrap();
        let mut prev = out.improvements[0].1;
        for s in &out.steps {
            if s.accepted {
                assert!(s.score <= prev, "uphill move accepted at iteration {}", s.iteration);
            } else {
                assert_eq!(s.score, prev);
                uphill_tries += 1;
            }
            prev = s.score;
        }
    }
    assert!(uphill_tries > 0);
}

#[test]
fn hot_annealing_is_a_random_walk() {
    // With huge temperatures every proposal is accepted and each bit is
    // proposed uniformly.
    let p = BlowupProblem::new(SearchSpace::graph(4), BlowupObjective::new(3, 3)).unwrap();
    let mut counts = [0usize; 6];
    for seed in 0..10_000 {
        let sched = Schedule {
            iterations: 1,
            temperatures: Some(vec![1e30]),
            seed,
            record_steps: true,
            ..Schedule::default()
        };
        let out = simulated_annealing(&p, &sched, None, &mut |_| {}).unwrap();
        assert!(out.steps[0].accepted);
        counts[out.steps[0].bit] += 1;
    }
    // Each bit expected 10000/6 ~ 1667 times; allow about 5 standard deviations.
    assert!(counts.iter().all(|&c| (1480..1860).contains(&c)), "{counts:?}");
}
