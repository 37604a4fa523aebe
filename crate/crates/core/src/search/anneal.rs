use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{initial_state, Best, Improvement, Schedule, SearchOutcome, SearchProblem, Step};
use crate::error::Result;

/// Simulated annealing with single-bit-flip moves and the Metropolis rule:
/// a candidate with cost change `d` is accepted with probability
/// `min(1, exp(-d / t_i))`. With `rejection_free` the move is instead drawn
/// from all neighbours in proportion to those probabilities.
pub fn simulated_annealing<P: SearchProblem>(
    p: &P,
    sched: &Schedule,
    init: Option<&[bool]>,
    observer: &mut dyn FnMut(&Improvement),
) -> Result<SearchOutcome> {
    sched.validate()?;
    let n = p.num_bits();
    let mut rng = ChaCha8Rng::seed_from_u64(sched.seed);
    let mut state = initial_state(n, init, &mut rng)?;
    let mut cache = p.prime(&state);
    let mut score = p.score(&cache);
    let mut best = Best::new(&state, score, observer);
    let mut steps = Vec::new();
    if n == 0 {
        return Ok(best.finish(p, state, steps));
    }
    let mut weights = vec![0.0f64; n];
    for i in 1..=sched.iterations {
        let temp = sched.temperature(i);
        let (bit, d, accepted) = if sched.rejection_free {
            let mut deltas = Vec::with_capacity(n);
            for b in 0..n {
                let d = p.delta(&state, &cache, b)?;
                weights[b] = acceptance(p.to_f64(d), temp);
                deltas.push(d);
            }
            let total: f64 = weights.iter().sum();
            let mut r = rng.gen::<f64>() * total;
            let mut bit = n - 1;
            for (b, &w) in weights.iter().enumerate() {
                if r < w {
                    bit = b;
                    break;
                }
                r -= w;
            }
            (bit, deltas[bit], true)
        } else {
            let bit = rng.gen_range(0..n);
            let d = p.delta(&state, &cache, bit)?;
            let accept = d <= 0 || rng.gen::<f64>() < acceptance(p.to_f64(d), temp);
            (bit, d, accept)
        };
        if accepted {
            p.apply(&mut state, &mut cache, bit);
            score += d;
            best.offer(i, &state, score);
        }
        if sched.record_steps {
            steps.push(Step {
                iteration: i,
                bit,
                accepted,
                score,
            });
        }
    }
    debug_assert_eq!(score, p.score(&cache));
    Ok(best.finish(p, state, steps))
}

fn acceptance(d: f64, temp: f64) -> f64 {
    if d <= 0.0 {
        1.0
    } else {
        (-d / temp).exp()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blowup::BlowupObjective;
    use crate::rational::rat;
    use crate::search::{BlowupProblem, FiniteGroup, SearchSpace};

    fn z13() -> BlowupProblem {
        let obj = BlowupObjective::new(4, 5).with_lambda(rat(1_000_000, 1));
        BlowupProblem::new(SearchSpace::cayley(FiniteGroup::cyclic(13).unwrap()), obj).unwrap()
    }

    #[test]
    fn zero_iterations_return_the_initial_state() {
        let p = z13();
        let init = vec![true; 6];
        let sched = Schedule {
            iterations: 0,
            ..Schedule::default()
        };
        let out = simulated_annealing(&p, &sched, Some(&init), &mut |_| {}).unwrap();
        assert_eq!(out.best_state, init);
        assert_eq!(out.final_state, init);
    }

    #[test]
    fn same_seed_same_trace() {
        let p = z13();
        let sched = Schedule {
            iterations: 300,
            initial_temperature: 0.01,
            seed: 11,
            record_steps: true,
            ..Schedule::default()
        };
        let a = simulated_annealing(&p, &sched, None, &mut |_| {}).unwrap();
        let b = simulated_annealing(&p, &sched, None, &mut |_| {}).unwrap();
        assert_eq!(a.steps, b.steps);
        let rf = Schedule {
            rejection_free: true,
            ..sched
        };
        let c = simulated_annealing(&p, &rf, None, &mut |_| {}).unwrap();
        assert!(c.steps.iter().all(|s| s.accepted));
    }
}
