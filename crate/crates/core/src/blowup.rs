//! Limit densities of cliques and independent sets in (weighted) blow-up
//! sequences, and the search cost built from them.
//!
//! A map `f: [t] -> V(g)` counts when every two positions with distinct
//! images land on adjacent vertices and any repeated image is looped. The
//! weighted density sums `prod w_{f(i)}` over such maps; in the uniform case
//! it equals `hom(K_t, g) / n^t`, and `hom(K_t, g[m]) = m^t hom(K_t, g)`
//! for the materialised blow-up.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{Bitset, Graph};
use crate::rational::{int, pow, rat, Rational};

/// Largest clique order the density formulas accept.
pub const MAX_T: usize = 16;

/// Probability vector over the vertices of a construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector(Vec<Rational>);

impl WeightVector {
    pub fn new(w: Vec<Rational>) -> Result<Self> {
        if w.iter().any(Signed::is_negative) {
            return Err(Error::contract("weights must be nonnegative"));
        }
        let total: Rational = w.iter().sum();
        if !total.is_one() {
            return Err(Error::contract(format!("weights sum to {total}, not 1")));
        }
        Ok(Self(w))
    }

    pub fn uniform(n: usize) -> Self {
        Self(vec![rat(1, n.max(1) as i64); n])
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_uniform(&self) -> bool {
        self.0.windows(2).all(|p| p[0] == p[1])
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(crate::rational::to_f64).collect()
    }
}

/// `ws * x + lambda * wt * y` with `x` the independent-`s` density and `y`
/// the `t`-clique density.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupObjective {
    pub s: usize,
    pub t: usize,
    #[serde(with = "crate::rational::serde_rational")]
    pub ws: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub wt: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub lambda: Rational,
}

impl BlowupObjective {
    pub fn new(s: usize, t: usize) -> Self {
        Self {
            s,
            t,
            ws: Rational::one(),
            wt: Rational::one(),
            lambda: Rational::one(),
        }
    }

    pub fn with_lambda(mut self, lambda: Rational) -> Self {
        self.lambda = lambda;
        self
    }

    pub fn with_weights(mut self, ws: Rational, wt: Rational) -> Self {
        self.ws = ws;
        self.wt = wt;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.s < 2 || self.t < 2 || self.s > MAX_T || self.t > MAX_T {
            return Err(Error::contract(format!("need 2 <= s,t <= {MAX_T}")));
        }
        if self.ws.is_negative() || self.wt.is_negative() || self.lambda.is_negative() {
            return Err(Error::contract("objective weights must be nonnegative"));
        }
        Ok(())
    }
}

/// Stirling numbers of the second kind, `S(n, k)` for `n, k <= MAX_T`.
pub fn stirling2(n: usize, k: usize) -> u64 {
    static TABLE: std::sync::OnceLock<Vec<Vec<u64>>> = std::sync::OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut s = vec![vec![0u64; MAX_T + 1]; MAX_T + 1];
        s[0][0] = 1;
        for n in 1..=MAX_T {
            for k in 1..=n {
                s[n][k] = k as u64 * s[n - 1][k] + s[n - 1][k - 1];
            }
        }
        s
    });
    assert!(n <= MAX_T && k <= MAX_T, "Stirling table is capped at {MAX_T}");
    table[n][k]
}

pub(crate) fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn falling(n: usize, k: usize) -> u64 {
    (n - k + 1..=n).map(|x| x as u64).product()
}

/// Calls `f` on every nonempty clique of size at most `tmax`, vertices increasing.
pub(crate) fn for_each_clique(g: &Graph, tmax: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(g: &Graph, cand: &Bitset, stack: &mut Vec<usize>, tmax: usize, f: &mut dyn FnMut(&[usize])) {
        for v in cand.iter() {
            stack.push(v);
            f(stack);
            if stack.len() < tmax {
                let mut next = cand.clone();
                // Restrict to later neighbours of v.
                for u in cand.iter() {
                    if u <= v || !g.has_edge(u, v) {
                        next.remove(u);
                    }
                }
                if !next.is_empty() {
                    go(g, &next, stack, tmax, f);
                }
            }
            stack.pop();
        }
    }
    if tmax == 0 {
        return;
    }
    go(g, &Bitset::full(g.order()), &mut Vec::new(), tmax, f);
}

/// `hom(K_t, g)`: the number of maps `[t] -> V(g)` with all pairs linked.
pub fn hom_clique_count(t: usize, g: &Graph) -> BigUint {
    assert!((1..=MAX_T).contains(&t));
    let mut total = BigUint::zero();
    for_each_clique(g, t, &mut |c| {
        let l = c.iter().filter(|&&v| g.has_loop(v)).count();
        let u = c.len() - l;
        if u > t {
            return;
        }
        // Unlooped vertices are hit once, looped ones at least once.
        let ways = falling(t, u) as u128 * factorial(l) as u128 * stirling2(t - u, l) as u128;
        if ways > 0 {
            total += BigUint::from(ways);
        }
    });
    total
}

/// Weighted homomorphism density of `K_t` in `g`; see the module docs.
pub fn hom_clique_weight(t: usize, g: &Graph, w: &WeightVector) -> Result<Rational> {
    if t == 0 || t > MAX_T {
        return Err(Error::contract(format!("clique order must be in 1..={MAX_T}")));
    }
    if w.len() != g.order() {
        return Err(Error::contract(format!("{} weights for {} vertices", w.len(), g.order())));
    }
    if g.order() == 0 {
        return Ok(Rational::zero());
    }
    if w.is_uniform() {
        let n = BigInt::from(g.order());
        return Ok(Rational::new(hom_clique_count(t, g).into(), n.pow(t as u32)));
    }
    let ws = w.as_slice();
    let mut total = Rational::zero();
    for_each_clique(g, t, &mut |c| {
        let (looped, unlooped): (Vec<usize>, Vec<usize>) = c.iter().partition(|&&v| g.has_loop(v));
        let u = unlooped.len();
        if u > t || (looped.is_empty() && u != t) {
            return;
        }
        let mut term: Rational = unlooped.iter().map(|&v| ws[v].clone()).product();
        if term.is_zero() {
            return;
        }
        term *= int(falling(t, u));
        term *= surjection_weight(t - u, &looped, ws);
        total += term;
    });
    Ok(total)
}

/// Total weight of words of length `k` over `looped` that use every letter.
fn surjection_weight(k: usize, looped: &[usize], w: &[Rational]) -> Rational {
    let l = looped.len();
    if k < l {
        return Rational::zero();
    }
    let mut total = Rational::zero();
    for mask in 0u32..1 << l {
        let mass: Rational = (0..l).filter(|&i| mask >> i & 1 == 1).map(|i| w[looped[i]].clone()).sum();
        let term = pow(&mass, k as u32);
        if (l - mask.count_ones() as usize).is_multiple_of(2) {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// `(x, y)`: the independent-`s` and clique-`t` limit densities of the
/// `w`-weighted blow-up sequence of `c`.
pub fn blowup_density_pair(c: &Graph, s: usize, t: usize, w: &WeightVector) -> Result<(Rational, Rational)> {
    let x = hom_clique_weight(s, &c.looped_complement(), w)?;
    let y = hom_clique_weight(t, c, w)?;
    Ok((x, y))
}

pub fn cost(c: &Graph, obj: &BlowupObjective, w: &WeightVector) -> Result<Rational> {
    obj.validate()?;
    let (x, y) = blowup_density_pair(c, obj.s, obj.t, w)?;
    Ok(&obj.ws * x + &obj.lambda * &obj.wt * y)
}

/// Float evaluator with the clique structure precomputed, used by the
/// weight optimiser.
struct FloatCost {
    // (unlooped, looped, factor) per clique, for each of the two terms.
    terms: [Vec<(Vec<usize>, Vec<usize>, f64)>; 2],
    orders: [usize; 2],
    coef: [f64; 2],
}

impl FloatCost {
    fn new(c: &Graph, obj: &BlowupObjective) -> Self {
        let collect = |g: &Graph, t: usize| {
            let mut out = Vec::new();
            for_each_clique(g, t, &mut |cl| {
                let (l, u): (Vec<usize>, Vec<usize>) = cl.iter().partition(|&&v| g.has_loop(v));
                if u.len() <= t && !(l.is_empty() && u.len() != t) {
                    out.push((u.clone(), l, falling(t, u.len()) as f64));
                }
            });
            out
        };
        let lc = c.looped_complement();
        Self {
            terms: [collect(&lc, obj.s), collect(c, obj.t)],
            orders: [obj.s, obj.t],
            coef: [
                crate::rational::to_f64(&obj.ws),
                crate::rational::to_f64(&(&obj.lambda * &obj.wt)),
            ],
        }
    }

    fn eval(&self, w: &[f64]) -> f64 {
        let mut total = 0.0;
        for k in 0..2 {
            let t = self.orders[k];
            let mut sum = 0.0;
            for (u, l, f) in &self.terms[k] {
                let mut term = *f * u.iter().map(|&v| w[v]).product::<f64>();
                if term == 0.0 {
                    continue;
                }
                let kk = t - u.len();
                let mut surj = 0.0;
                for mask in 0u32..1 << l.len() {
                    let mass: f64 = (0..l.len()).filter(|&i| mask >> i & 1 == 1).map(|i| w[l[i]]).sum();
                    let sign = if (l.len() - mask.count_ones() as usize).is_multiple_of(2) { 1.0 } else { -1.0 };
                    surj += sign * mass.powi(kk as i32);
                }
                term *= surj;
                sum += term;
            }
            total += self.coef[k] * sum;
        }
        total
    }
}

#[derive(Clone, Debug)]
pub struct WeightOptimum {
    pub weights: WeightVector,
    pub value: Rational,
    /// False when the iteration cap was hit before the step size shrank below tolerance.
    pub converged: bool,
}

/// Local minimiser of `cost(c, obj, .)` over the simplex by pairwise mass
/// transfers, starting from uniform weights and a few seeded perturbations.
/// The reported value is exact at the returned rational weights and never
/// exceeds the uniform cost.
pub fn optimize_weights(c: &Graph, obj: &BlowupObjective, tol: &Rational, seed: u64) -> Result<WeightOptimum> {
    use rand::{Rng, SeedableRng};
    obj.validate()?;
    let n = c.order();
    if n == 0 || n > 64 {
        return Err(Error::Unsupported(format!("weight optimisation needs 1..=64 vertices, got {n}")));
    }
    let uniform = WeightVector::uniform(n);
    let uniform_value = cost(c, obj, &uniform)?;
    let f = FloatCost::new(c, obj);
    let tol = crate::rational::to_f64(tol).max(1e-15);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut converged = true;
    for restart in 0..4 {
        let mut w = vec![1.0 / n as f64; n];
        if restart > 0 {
            for x in w.iter_mut() {
                *x *= 1.0 + 0.2 * (rng.gen::<f64>() - 0.5);
            }
            let s: f64 = w.iter().sum();
            w.iter_mut().for_each(|x| *x /= s);
        }
        let mut val = f.eval(&w);
        let mut step = 0.1 / n as f64;
        let mut iters = 0;
        while step > tol {
            iters += 1;
            if iters > 10_000 {
                converged = false;
                break;
            }
            let mut improved = false;
            for i in 0..n {
                for j in 0..n {
                    if i == j || w[j] <= 0.0 {
                        continue;
                    }
                    let d = step.min(w[j]);
                    w[i] += d;
                    w[j] -= d;
                    let v = f.eval(&w);
                    if v < val - 1e-15 {
                        val = v;
                        improved = true;
                    } else {
                        w[i] -= d;
                        w[j] += d;
                    }
                }
            }
            if !improved {
                step /= 2.0;
            }
        }
        if best.as_ref().is_none_or(|(b, _)| val < *b) {
            best = Some((val, w));
        }
    }
    let (_, w) = best.unwrap();
    let exact = round_to_simplex(&w, 1 << 30);
    let value = cost(c, obj, &exact)?;
    if value < uniform_value {
        Ok(WeightOptimum { weights: exact, value, converged })
    } else {
        Ok(WeightOptimum { weights: uniform, value: uniform_value, converged })
    }
}

/// Rounds a float probability vector to rationals with denominator `den`,
/// putting the rounding error on the largest entry.
fn round_to_simplex(w: &[f64], den: u64) -> WeightVector {
    let mut nums: Vec<i64> = w.iter().map(|&x| (x * den as f64).round().max(0.0) as i64).collect();
    let total: i64 = nums.iter().sum();
    let big = (0..nums.len()).max_by(|&a, &b| nums[a].cmp(&nums[b]).then(b.cmp(&a))).unwrap();
    nums[big] += den as i64 - total;
    WeightVector(nums.into_iter().map(|x| rat(x, den as i64)).collect())
}
