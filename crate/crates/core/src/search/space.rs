//! Bit-vector search spaces for blow-up constructions with exact,
//! incrementally maintained integer scores.

use num_bigint::BigInt;

use super::group::{cayley_graph, connection_set, FiniteGroup};
use super::SearchProblem;
use crate::blowup::{factorial, stirling2, BlowupObjective};
use crate::error::{Error, Result};
use crate::graphs::{count_cliques_upto_in, Bitset, Graph};
use crate::rational::Rational;

#[derive(Clone, Debug)]
pub enum SearchSpace {
    /// Bit `i` is the `i`-th pair of `{0..n}` in lexicographic order.
    Graph { n: usize },
    /// One bit per inverse class `{g, g^-1}`, `g != 1`.
    Cayley { group: FiniteGroup, classes: Vec<Vec<usize>> },
}

impl SearchSpace {
    pub fn graph(n: usize) -> Self {
        SearchSpace::Graph { n }
    }

    pub fn cayley(group: FiniteGroup) -> Self {
        let classes = group.inverse_classes();
        SearchSpace::Cayley { group, classes }
    }

    pub fn num_bits(&self) -> usize {
        match self {
            SearchSpace::Graph { n } => n * n.saturating_sub(1) / 2,
            SearchSpace::Cayley { classes, .. } => classes.len(),
        }
    }

    pub fn order(&self) -> usize {
        match self {
            SearchSpace::Graph { n } => *n,
            SearchSpace::Cayley { group, .. } => group.order(),
        }
    }

    pub fn decode(&self, bits: &[bool]) -> Graph {
        assert_eq!(bits.len(), self.num_bits());
        match self {
            SearchSpace::Graph { n } => {
                let mut g = Graph::empty(*n);
                for (i, (u, v)) in pairs(*n).enumerate() {
                    if bits[i] {
                        g.add_edge(u, v);
                    }
                }
                g
            }
            SearchSpace::Cayley { group, .. } => cayley_graph(group, bits),
        }
    }

    /// Graph space only: the state whose decoding is `g`.
    pub fn encode(&self, g: &Graph) -> Option<Vec<bool>> {
        match self {
            SearchSpace::Graph { n } if g.order() == *n => Some(pairs(*n).map(|(u, v)| g.has_edge(u, v)).collect()),
            _ => None,
        }
    }
}

pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
}

/// The exact uniform blow-up cost of a loop-free graph, as an integer over
/// a fixed denominator:
/// `cost = (cx * sum_j j! S(s,j) k_j(complement) + cy * t! k_t) / den`.
#[derive(Clone, Debug)]
struct Scorer {
    s: usize,
    t: usize,
    cx: i128,
    cy: i128,
    den: BigInt,
    inv_den: f64,
}

impl Scorer {
    fn new(n: usize, obj: &BlowupObjective) -> Result<Self> {
        obj.validate()?;
        let (s, t) = (obj.s, obj.t);
        let m = s.max(t);
        let wx = obj.ws.clone();
        let wy = &obj.lambda * &obj.wt;
        let (a1, b1) = (wx.numer().clone(), wx.denom().clone());
        let (a2, b2) = (wy.numer().clone(), wy.denom().clone());
        let nn = BigInt::from(n);
        let cx = &a1 * &b2 * nn.pow((m - s) as u32);
        let cy = &a2 * &b1 * nn.pow((m - t) as u32);
        let den = &b1 * &b2 * nn.pow(m as u32);
        // Largest score is bounded by (cx + cy) n^m.
        let bound = (&cx + &cy) * nn.pow(m as u32);
        let to_i128 = |x: &BigInt| i128::try_from(x).ok();
        match (to_i128(&cx), to_i128(&cy), to_i128(&bound)) {
            (Some(cx), Some(cy), Some(_)) => Ok(Self {
                s,
                t,
                cx,
                cy,
                inv_den: 1.0 / crate::rational::to_f64(&Rational::from_integer(den.clone())),
                den,
            }),
            _ => Err(Error::Unsupported("objective too large for 128-bit scores".into())),
        }
    }

    fn score(&self, kbar: &[u64], kt: u64) -> i128 {
        let x: i128 = (1..=self.s)
            .map(|j| factorial(j) as i128 * stirling2(self.s, j) as i128 * kbar[j] as i128)
            .sum();
        self.cx * x + self.cy * factorial(self.t) as i128 * kt as i128
    }
}

/// Clique counts of the current state: `kbar[j]` for the complement
/// (`j <= s`) and `kt` for the graph.
#[derive(Clone, Debug)]
pub struct BlowupCache {
    state: Vec<bool>,
    graph: Option<(Graph, Graph)>,
    kbar: Vec<u64>,
    kt: u64,
}

impl BlowupCache {
    pub fn state(&self) -> &[bool] {
        &self.state
    }
}

/// Minimise the uniform blow-up cost over a [`SearchSpace`].
#[derive(Clone, Debug)]
pub struct BlowupProblem {
    pub space: SearchSpace,
    pub objective: BlowupObjective,
    scorer: Scorer,
    pair_list: Vec<(usize, usize)>,
}

impl BlowupProblem {
    pub fn new(space: SearchSpace, objective: BlowupObjective) -> Result<Self> {
        let scorer = Scorer::new(space.order(), &objective)?;
        let pair_list = match &space {
            SearchSpace::Graph { n } => pairs(*n).collect(),
            SearchSpace::Cayley { .. } => Vec::new(),
        };
        Ok(Self {
            space,
            objective,
            scorer,
            pair_list,
        })
    }

    fn check(&self, state: &[bool], cache: &BlowupCache) -> Result<()> {
        if cache.state != state {
            return Err(Error::contract("delta cache is stale for this state"));
        }
        Ok(())
    }

    /// Change in `(kbar, kt)` from toggling the edge behind bit `i`.
    fn edge_change(&self, cache: &BlowupCache, i: usize) -> (Vec<i64>, i64) {
        let (g, gc) = cache.graph.as_ref().expect("graph-space cache");
        let (u, v) = self.pair_list[i];
        let (s, t) = (self.scorer.s, self.scorer.t);
        let present = cache.state[i];
        // Cliques through uv live in the common neighbourhood of the graph
        // that currently (or after the flip) contains uv.
        let common = g.neighbors(u).intersection(g.neighbors(v));
        let through_t = count_cliques_upto_in(g, &common, t - 2)[t - 2] as i64;
        let common_c = gc.neighbors(u).intersection(gc.neighbors(v));
        let through_c = count_cliques_upto_in(gc, &common_c, s - 2);
        let mut dbar = vec![0i64; s + 1];
        for j in 2..=s {
            dbar[j] = through_c[j - 2] as i64;
        }
        if present {
            // Edge leaves g, enters the complement.
            (dbar, -through_t)
        } else {
            (dbar.into_iter().map(|x| -x).collect(), through_t)
        }
    }

    fn cayley_counts(&self, state: &[bool]) -> (Vec<u64>, u64) {
        let SearchSpace::Cayley { group, classes } = &self.space else {
            unreachable!()
        };
        let n = group.order();
        let in_s = connection_set(group, classes, state);
        let mut in_c = in_s.iter().map(|&x| !x).collect::<Vec<_>>();
        in_c[group.identity()] = false;
        // k_j = n * (number of (j-1)-cliques in the neighbourhood of 1) / j.
        let through_identity = |conn: &[bool], tmax: usize| {
            let members: Vec<usize> = (0..n).filter(|&g| conn[g]).collect();
            let mut h = Graph::empty(members.len());
            for (a, &x) in members.iter().enumerate() {
                let xi = group.inv(x);
                for (b, &y) in members.iter().enumerate().skip(a + 1) {
                    if conn[group.mul(xi, y)] {
                        h.add_edge(a, b);
                    }
                }
            }
            let local = count_cliques_upto_in(&h, &Bitset::full(h.order()), tmax.saturating_sub(1));
            let mut k = vec![0u64; tmax + 1];
            k[0] = 1;
            for j in 1..=tmax {
                let c = local.get(j - 1).copied().unwrap_or(0) as u128 * n as u128;
                debug_assert_eq!(c % j as u128, 0);
                k[j] = (c / j as u128) as u64;
            }
            k
        };
        let (s, t) = (self.scorer.s, self.scorer.t);
        let kbar = through_identity(&in_c, s);
        let kt = through_identity(&in_s, t)[t];
        (kbar, kt)
    }
}

impl SearchProblem for BlowupProblem {
    type Cache = BlowupCache;

    fn num_bits(&self) -> usize {
        self.space.num_bits()
    }

    fn prime(&self, state: &[bool]) -> BlowupCache {
        match &self.space {
            SearchSpace::Graph { .. } => {
                let g = self.space.decode(state);
                let gc = g.complement();
                let mut kbar = count_cliques_upto_in(&gc, &Bitset::full(gc.order()), self.scorer.s);
                kbar.resize(self.scorer.s + 1, 0);
                let kt = count_cliques_upto_in(&g, &Bitset::full(g.order()), self.scorer.t)[self.scorer.t];
                BlowupCache {
                    state: state.to_vec(),
                    graph: Some((g, gc)),
                    kbar,
                    kt,
                }
            }
            SearchSpace::Cayley { .. } => {
                let (kbar, kt) = self.cayley_counts(state);
                BlowupCache {
                    state: state.to_vec(),
                    graph: None,
                    kbar,
                    kt,
                }
            }
        }
    }

    fn score(&self, cache: &BlowupCache) -> i128 {
        self.scorer.score(&cache.kbar, cache.kt)
    }

    fn delta(&self, state: &[bool], cache: &BlowupCache, i: usize) -> Result<i128> {
        self.check(state, cache)?;
        let before = self.score(cache);
        match &self.space {
            SearchSpace::Graph { .. } => {
                let (dbar, dt) = self.edge_change(cache, i);
                let kbar: Vec<u64> = cache.kbar.iter().zip(&dbar).map(|(&k, &d)| (k as i64 + d) as u64).collect();
                Ok(self.scorer.score(&kbar, (cache.kt as i64 + dt) as u64) - before)
            }
            SearchSpace::Cayley { .. } => {
                let mut next = state.to_vec();
                next[i] = !next[i];
                let (kbar, kt) = self.cayley_counts(&next);
                Ok(self.scorer.score(&kbar, kt) - before)
            }
        }
    }

    fn apply(&self, state: &mut [bool], cache: &mut BlowupCache, i: usize) {
        match &self.space {
            SearchSpace::Graph { .. } => {
                let (dbar, dt) = self.edge_change(cache, i);
                for (k, d) in cache.kbar.iter_mut().zip(&dbar) {
                    *k = (*k as i64 + d) as u64;
                }
                cache.kt = (cache.kt as i64 + dt) as u64;
                let (u, v) = self.pair_list[i];
                let (g, gc) = cache.graph.as_mut().unwrap();
                g.toggle_edge(u, v);
                gc.toggle_edge(u, v);
            }
            SearchSpace::Cayley { .. } => {
                let mut next = state.to_vec();
                next[i] = !next[i];
                let (kbar, kt) = self.cayley_counts(&next);
                cache.kbar = kbar;
                cache.kt = kt;
            }
        }
        state[i] = !state[i];
        cache.state[i] = !cache.state[i];
    }

    fn to_rational(&self, score: i128) -> Rational {
        Rational::new(BigInt::from(score), self.scorer.den.clone())
    }

    fn to_f64(&self, score: i128) -> f64 {
        score as f64 * self.scorer.inv_den
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blowup::{cost, WeightVector};
    use crate::graphs::named;
    use crate::rational::rat;

    fn scratch(p: &BlowupProblem, bits: &[bool]) -> Rational {
        cost(&p.space.decode(bits), &p.objective, &WeightVector::uniform(p.space.order())).unwrap()
    }

    #[test]
    fn scores_match_exact_cost() {
        let p = BlowupProblem::new(SearchSpace::graph(27), BlowupObjective::new(3, 4)).unwrap();
        let bits = p.space.encode(&named::schlafli()).unwrap();
        let c = p.prime(&bits);
        assert_eq!(p.to_rational(p.score(&c)), rat(689, 6561));
    }

    #[test]
    fn cayley_ramsey_13() {
        let z13 = FiniteGroup::cyclic(13).unwrap();
        let obj = BlowupObjective::new(4, 5).with_lambda(rat(1_000_000, 1));
        let p = BlowupProblem::new(SearchSpace::cayley(z13), obj).unwrap();
        // Classes {1,12},{2,11},...: the non-residues are 2, 3, 4, 6 and their negatives.
        let bits = [false, true, true, true, false, true];
        let c = p.prime(&bits);
        assert_eq!(p.to_rational(p.score(&c)), rat(29, 2197));
        assert_eq!(p.to_rational(p.score(&c)), scratch(&p, &bits));
    }

    #[test]
    fn deltas_match_scratch_in_both_spaces() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let problems = [
            BlowupProblem::new(SearchSpace::graph(7), BlowupObjective::new(3, 4)).unwrap(),
            BlowupProblem::new(
                SearchSpace::cayley(FiniteGroup::direct_product(&[2, 6]).unwrap()),
                BlowupObjective::new(4, 3).with_lambda(rat(7, 3)),
            )
            .unwrap(),
        ];
        for p in &problems {
            let mut state: Vec<bool> = (0..p.num_bits()).map(|_| rng.gen()).collect();
            let mut cache = p.prime(&state);
            for _ in 0..200 {
                let i = rng.gen_range(0..p.num_bits());
                let d = p.delta(&state, &cache, i).unwrap();
                let before = scratch(p, &state);
                p.apply(&mut state, &mut cache, i);
                assert_eq!(p.to_rational(d), scratch(p, &state) - before);
                assert_eq!(p.to_rational(p.score(&cache)), scratch(p, &state));
            }
        }
    }

    #[test]
    fn stale_cache_is_rejected() {
        let p = BlowupProblem::new(SearchSpace::graph(4), BlowupObjective::new(3, 3)).unwrap();
        let state = vec![false; 6];
        let cache = p.prime(&state);
        let mut other = state.clone();
        other[0] = true;
        assert!(matches!(p.delta(&other, &cache, 1), Err(Error::Contract(_))));
    }
}
