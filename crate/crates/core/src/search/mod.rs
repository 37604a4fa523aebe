//! Local search over bit-vector states: simulated annealing, tabu search,
//! exhaustive enumeration, and seeded parallel restarts.

mod anneal;
pub mod group;
mod runlog;
mod space;
mod tabu;

use std::sync::Mutex;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use anneal::simulated_annealing;
pub use group::{cayley_graph, load_group_table, FiniteGroup};
pub use runlog::{state_from_hex, state_to_hex, Checkpoint, RunLog};
pub use space::{pairs, BlowupCache, BlowupProblem, SearchSpace};
pub use tabu::tabu_search;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A minimisation problem over `{0,1}^N` with exact integer scores and an
/// incremental cache for single-bit flips.
pub trait SearchProblem: Sync {
    type Cache: Clone + Send;

    fn num_bits(&self) -> usize;
    /// Builds the cache for `state` from scratch.
    fn prime(&self, state: &[bool]) -> Self::Cache;
    fn score(&self, cache: &Self::Cache) -> i128;
    /// `score(flip(state, i)) - score(state)`; errors if `cache` was not
    /// built for `state`.
    fn delta(&self, state: &[bool], cache: &Self::Cache, i: usize) -> Result<i128>;
    fn apply(&self, state: &mut [bool], cache: &mut Self::Cache, i: usize);
    /// The exact cost a score stands for.
    fn to_rational(&self, score: i128) -> Rational;
    fn to_f64(&self, score: i128) -> f64 {
        crate::rational::to_f64(&self.to_rational(score))
    }
}

/// Exact cost difference of flipping bit `i`.
pub fn delta_cost<P: SearchProblem>(p: &P, state: &[bool], i: usize, cache: &P::Cache) -> Result<Rational> {
    Ok(p.to_rational(p.delta(state, cache, i)?))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    pub iterations: usize,
    /// Initial annealing temperature in cost units; decays linearly towards 0.
    pub initial_temperature: f64,
    /// Explicit temperatures, overriding the linear schedule when present.
    #[serde(default)]
    pub temperatures: Option<Vec<f64>>,
    pub tabu_length: usize,
    pub seed: u64,
    #[serde(default)]
    pub rejection_free: bool,
    /// Record every step in the outcome (memory grows with `iterations`).
    #[serde(default)]
    pub record_steps: bool,
}

impl Default for Schedule {
    fn default() -> Self {
        Self {
            iterations: 10_000,
            initial_temperature: 1e-3,
            temperatures: None,
            tabu_length: 10,
            seed: 0,
            rejection_free: false,
            record_steps: false,
        }
    }
}

impl Schedule {
    /// Temperature at 1-based iteration `i`: `t0 * (I - i + 1) / I`.
    pub fn temperature(&self, i: usize) -> f64 {
        match &self.temperatures {
            Some(ts) => ts[i - 1],
            None => self.initial_temperature * (self.iterations - i + 1) as f64 / self.iterations as f64,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(ts) = &self.temperatures {
            if ts.len() != self.iterations {
                return Err(Error::contract("one temperature per iteration required"));
            }
            if ts.iter().any(|&t| t.is_nan() || t <= 0.0) || ts.windows(2).any(|w| w[1] > w[0]) {
                return Err(Error::contract("temperatures must be positive and nonincreasing"));
            }
        } else if self.initial_temperature.is_nan() || self.initial_temperature <= 0.0 {
            return Err(Error::contract("initial temperature must be positive"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub iteration: usize,
    pub bit: usize,
    pub accepted: bool,
    pub score: i128,
}

/// A new best state, reported as it is found.
#[derive(Clone, Copy, Debug)]
pub struct Improvement<'a> {
    pub iteration: usize,
    pub score: i128,
    pub state: &'a [bool],
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub best_state: Vec<bool>,
    pub best_score: i128,
    pub best_cost: Rational,
    pub final_state: Vec<bool>,
    pub steps: Vec<Step>,
    /// `(iteration, score)` for every new best, starting with the initial state.
    pub improvements: Vec<(usize, i128)>,
}

pub(crate) fn random_state(n: usize, rng: &mut ChaCha8Rng) -> Vec<bool> {
    (0..n).map(|_| rng.gen()).collect()
}

pub(crate) fn initial_state(bits: usize, init: Option<&[bool]>, rng: &mut ChaCha8Rng) -> Result<Vec<bool>> {
    match init {
        Some(s) if s.len() != bits => Err(Error::contract(format!("initial state has {} bits, expected {bits}", s.len()))),
        Some(s) => Ok(s.to_vec()),
        None => Ok(random_state(bits, rng)),
    }
}

/// Tracks the best state seen during one run.
pub(crate) struct Best<'o> {
    pub state: Vec<bool>,
    pub score: i128,
    pub improvements: Vec<(usize, i128)>,
    observer: &'o mut dyn FnMut(&Improvement),
}

impl<'o> Best<'o> {
    pub fn new(state: &[bool], score: i128, observer: &'o mut dyn FnMut(&Improvement)) -> Self {
        observer(&Improvement {
            iteration: 0,
            score,
            state,
        });
        Self {
            state: state.to_vec(),
            score,
            improvements: vec![(0, score)],
            observer,
        }
    }

    pub fn offer(&mut self, iteration: usize, state: &[bool], score: i128) {
        if score < self.score {
            self.score = score;
            self.state.copy_from_slice(state);
            self.improvements.push((iteration, score));
            (self.observer)(&Improvement { iteration, score, state });
        }
    }

    pub fn finish<P: SearchProblem>(self, p: &P, final_state: Vec<bool>, steps: Vec<Step>) -> SearchOutcome {
        SearchOutcome {
            best_cost: p.to_rational(self.score),
            best_state: self.state,
            best_score: self.score,
            final_state,
            steps,
            improvements: self.improvements,
        }
    }
}

/// Largest space [`exhaustive_search`] accepts.
pub const EXHAUSTIVE_MAX_BITS: usize = 24;

/// Global optimum by Gray-code enumeration; ties go to the first state met.
pub fn exhaustive_search<P: SearchProblem>(p: &P) -> Result<(Vec<bool>, i128)> {
    let n = p.num_bits();
    if n > EXHAUSTIVE_MAX_BITS {
        return Err(Error::Unsupported(format!(
            "exhaustive search needs N <= {EXHAUSTIVE_MAX_BITS}, this space has N = {n}"
        )));
    }
    let mut state = vec![false; n];
    let mut cache = p.prime(&state);
    let mut best = (state.clone(), p.score(&cache));
    for k in 1u64..1 << n {
        let bit = k.trailing_zeros() as usize;
        p.apply(&mut state, &mut cache, bit);
        let s = p.score(&cache);
        if s < best.1 {
            best = (state.clone(), s);
        }
    }
    Ok(best)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Anneal,
    Tabu,
}

/// Seed of restart `r`, decorrelated from neighbouring restarts.
pub fn restart_seed(seed: u64, r: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(r as u64);
    rng.gen()
}

/// `restarts` independent seeded runs in parallel. The winner is the lowest
/// `(score, restart index)`, so the result does not depend on scheduling.
/// `observer` sees each run's improvements tagged with the restart index;
/// `best_so_far` is updated as runs improve.
pub fn parallel_restarts<P: SearchProblem>(
    p: &P,
    algorithm: Algorithm,
    sched: &Schedule,
    restarts: usize,
    init: Option<&[bool]>,
    observer: &(dyn Fn(usize, &Improvement) + Sync),
) -> Result<(usize, SearchOutcome)> {
    let best_so_far: Mutex<Option<i128>> = Mutex::new(None);
    let runs: Vec<Result<SearchOutcome>> = (0..restarts.max(1))
        .into_par_iter()
        .map(|r| {
            let mut s = sched.clone();
            s.seed = if restarts <= 1 { sched.seed } else { restart_seed(sched.seed, r) };
            let mut obs = |imp: &Improvement| {
                let mut b = best_so_far.lock().unwrap();
                if b.is_none_or(|x| imp.score < x) {
                    *b = Some(imp.score);
                }
                drop(b);
                observer(r, imp);
            };
            match algorithm {
                Algorithm::Anneal => simulated_annealing(p, &s, init, &mut obs),
                Algorithm::Tabu => tabu_search(p, &s, init, &mut obs),
            }
        })
        .collect();
    let mut best: Option<(usize, SearchOutcome)> = None;
    for (r, run) in runs.into_iter().enumerate() {
        let run = run?;
        if best.as_ref().is_none_or(|(_, b)| run.best_score < b.best_score) {
            best = Some((r, run));
        }
    }
    Ok(best.unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blowup::BlowupObjective;
    use crate::rational::rat;

    #[test]
    fn exhaustive_z13() {
        let obj = BlowupObjective::new(4, 5).with_lambda(rat(1_000_000, 1));
        let p = BlowupProblem::new(SearchSpace::cayley(FiniteGroup::cyclic(13).unwrap()), obj).unwrap();
        let (state, score) = exhaustive_search(&p).unwrap();
        assert_eq!(p.to_rational(score), rat(29, 2197));
        let g = p.space.decode(&state);
        assert!(crate::graphs::is_isomorphic(&g, &crate::graphs::named::ramsey_13()));
    }

    #[test]
    fn exhaustive_refuses_large_spaces() {
        let p = BlowupProblem::new(SearchSpace::graph(8), BlowupObjective::new(3, 3)).unwrap();
        let err = exhaustive_search(&p).unwrap_err().to_string();
        assert!(err.contains("N = 28"), "{err}");
    }

    #[test]
    fn schedule_is_linear() {
        let s = Schedule {
            iterations: 4,
            initial_temperature: 2.0,
            ..Schedule::default()
        };
        let ts: Vec<f64> = (1..=4).map(|i| s.temperature(i)).collect();
        assert_eq!(ts, vec![2.0, 1.5, 1.0, 0.5]);
        let bad = Schedule {
            iterations: 2,
            temperatures: Some(vec![1.0, 2.0]),
            ..Schedule::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn restarts_are_deterministic() {
        let obj = BlowupObjective::new(3, 3);
        let p = BlowupProblem::new(SearchSpace::graph(6), obj).unwrap();
        let sched = Schedule {
            iterations: 200,
            initial_temperature: 0.01,
            seed: 3,
            ..Schedule::default()
        };
        let run = |threads| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            pool.install(|| parallel_restarts(&p, Algorithm::Anneal, &sched, 6, None, &|_, _| {}).unwrap())
        };
        let (r1, a) = run(1);
        let (r4, b) = run(4);
        assert_eq!((r1, a.best_state, a.final_state), (r4, b.best_state, b.final_state));
    }
}
