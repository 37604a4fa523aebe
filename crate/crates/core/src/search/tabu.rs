use std::collections::VecDeque;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{initial_state, Best, Improvement, Schedule, SearchOutcome, SearchProblem, Step};
use crate::error::{Error, Result};

/// Tabu search: every iteration flips the non-tabu bit giving the lowest
/// cost (lowest index on ties), even when that is worse than staying put.
/// The last `tabu_length` flipped bits are tabu. The seed only matters for
/// the random initial state.
pub fn tabu_search<P: SearchProblem>(
    p: &P,
    sched: &Schedule,
    init: Option<&[bool]>,
    observer: &mut dyn FnMut(&Improvement),
) -> Result<SearchOutcome> {
    let n = p.num_bits();
    if n > 0 && sched.tabu_length >= n {
        return Err(Error::contract(format!("tabu length {} must be below N = {n}", sched.tabu_length)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(sched.seed);
    let mut state = initial_state(n, init, &mut rng)?;
    let mut cache = p.prime(&state);
    let mut score = p.score(&cache);
    let mut best = Best::new(&state, score, observer);
    let mut steps = Vec::new();
    if n == 0 {
        return Ok(best.finish(p, state, steps));
    }
    let mut tabu: VecDeque<usize> = VecDeque::with_capacity(sched.tabu_length + 1);
    let mut is_tabu = vec![false; n];
    for i in 1..=sched.iterations {
        let mut choice: Option<(i128, usize)> = None;
        while choice.is_none() {
            for b in (0..n).filter(|&b| !is_tabu[b]) {
                let d = p.delta(&state, &cache, b)?;
                if choice.is_none_or(|(bd, _)| d < bd) {
                    choice = Some((d, b));
                }
            }
            if choice.is_none() {
                let old = tabu.pop_front().expect("some bit is tabu");
                is_tabu[old] = false;
                log::debug!("tabu: every neighbour forbidden at iteration {i}, releasing bit {old}");
            }
        }
        let (d, bit) = choice.unwrap();
        p.apply(&mut state, &mut cache, bit);
        score += d;
        best.offer(i, &state, score);
        tabu.push_back(bit);
        is_tabu[bit] = true;
        while tabu.len() > sched.tabu_length {
            let old = tabu.pop_front().unwrap();
            is_tabu[old] = tabu.contains(&old);
        }
        if sched.record_steps {
            steps.push(Step {
                iteration: i,
                bit,
                accepted: true,
                score,
            });
        }
    }
    Ok(best.finish(p, state, steps))
}
