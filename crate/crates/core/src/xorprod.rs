//! XOR graph products and pattern-count vectors that compose under them.
//!
//! For a map `f: [t] -> V(g)` its pattern is the set of pairs `{i, j}` of
//! positions with `g.linked(f(i), f(j))`. In a product the pattern of a pair
//! of maps is the XOR of the factor patterns, so product count vectors are
//! XOR convolutions, which the Walsh-Hadamard transform turns into
//! pointwise products.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::graphs::{Bitset, Graph, MAX_ORDER};
use crate::rational::Rational;

pub const MAX_PATTERN_T: usize = 5;
pub const MAX_PATTERN_ORDER: usize = 256;

/// Vertex `(a, b)` gets index `a * |V(g2)| + b`. Distinct vertices are
/// adjacent iff exactly one coordinate pair is linked; `(a, b)` is looped
/// iff exactly one of `a`, `b` is.
pub fn xor_product(g1: &Graph, g2: &Graph) -> Result<Graph> {
    let (n1, n2) = (g1.order(), g2.order());
    let n = n1 * n2;
    if n > MAX_ORDER {
        return Err(Error::Unsupported(format!("product order {n} exceeds {MAX_ORDER}")));
    }
    let mut g = Graph::empty(n);
    for a in 0..n1 {
        for b in 0..n2 {
            let x = a * n2 + b;
            g.set_loop(x, g1.has_loop(a) != g2.has_loop(b));
            for c in a..n1 {
                for d in 0..n2 {
                    let y = c * n2 + d;
                    if y > x && g1.linked(a, c) != g2.linked(b, d) {
                        g.add_edge(x, y);
                    }
                }
            }
        }
    }
    Ok(g)
}

/// `entries[P]` counts maps `[t] -> V(g)` with pattern `P`; bit `e` of `P`
/// is the `e`-th pair of `[t]` in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternVector {
    pub t: usize,
    pub entries: Vec<i128>,
}

/// Index of pair `(i, j)`, `i < j`, among the pairs of `[t]`.
fn pair_index(t: usize, i: usize, j: usize) -> usize {
    i * (2 * t - i - 1) / 2 + (j - i - 1)
}

pub fn pattern_dim(t: usize) -> usize {
    1 << (t * t.saturating_sub(1) / 2)
}

impl PatternVector {
    /// The vector of the one-vertex unlooped graph: the identity for [`compose`].
    pub fn unit(t: usize) -> Self {
        let mut entries = vec![0; pattern_dim(t)];
        entries[0] = 1;
        Self { t, entries }
    }

    pub fn total(&self) -> i128 {
        self.entries.iter().sum()
    }

    pub fn full(&self) -> i128 {
        *self.entries.last().unwrap()
    }

    pub fn empty(&self) -> i128 {
        self.entries[0]
    }
}

pub fn pattern_vector(g: &Graph, t: usize) -> Result<PatternVector> {
    if t == 0 || t > MAX_PATTERN_T {
        return Err(Error::Unsupported(format!("pattern vectors need 1 <= t <= {MAX_PATTERN_T}")));
    }
    if g.order() > MAX_PATTERN_ORDER {
        return Err(Error::Unsupported(format!("pattern vectors need at most {MAX_PATTERN_ORDER} vertices")));
    }
    let n = g.order();
    let mut entries = vec![0i128; pattern_dim(t)];
    if n == 0 {
        return Ok(PatternVector { t, entries });
    }
    // Closed neighbourhoods under `linked`.
    let rows: Vec<Bitset> = (0..n)
        .map(|v| {
            let mut r = g.neighbors(v).clone();
            r.set(v, g.has_loop(v));
            r
        })
        .collect();
    let mut prefix = Vec::with_capacity(t);
    extend_prefix(&rows, n, t, &mut prefix, 0, &mut entries);
    Ok(PatternVector { t, entries })
}

/// Chooses images for positions `0..t-1` recursively; the last position is
/// handled by counting, for each subset of earlier positions, the vertices
/// linked to exactly those.
fn extend_prefix(rows: &[Bitset], n: usize, t: usize, prefix: &mut Vec<usize>, pattern: usize, out: &mut [i128]) {
    let k = prefix.len();
    if k == t - 1 {
        for mask in 0usize..1 << k {
            let mut set = Bitset::full(n);
            for (i, &p) in prefix.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    set.intersect_with(&rows[p]);
                } else {
                    set.difference_with(&rows[p]);
                }
            }
            let c = set.count();
            if c == 0 {
                continue;
            }
            let mut p = pattern;
            for i in 0..k {
                if mask >> i & 1 == 1 {
                    p |= 1 << pair_index(t, i, k);
                }
            }
            out[p] += c as i128;
        }
        return;
    }
    for v in 0..n {
        let mut p = pattern;
        for (i, &u) in prefix.iter().enumerate() {
            if rows[u].contains(v) {
                p |= 1 << pair_index(t, i, k);
            }
        }
        prefix.push(v);
        extend_prefix(rows, n, t, prefix, p, out);
        prefix.pop();
    }
}

/// In-place unnormalised Walsh-Hadamard transform.
pub fn wht(v: &mut [i128]) {
    let n = v.len();
    assert!(n.is_power_of_two());
    let mut h = 1;
    while h < n {
        for block in (0..n).step_by(2 * h) {
            for i in block..block + h {
                let (a, b) = (v[i], v[i + h]);
                v[i] = a + b;
                v[i + h] = a - b;
            }
        }
        h *= 2;
    }
}

/// Inverse transform; every entry must divide exactly.
pub fn inverse_wht(v: &mut [i128]) -> Result<()> {
    wht(v);
    let n = v.len() as i128;
    for x in v.iter_mut() {
        if *x % n != 0 {
            return Err(Error::contract("inverse Walsh-Hadamard transform is not integral"));
        }
        *x /= n;
    }
    Ok(())
}

/// The pattern vector of the XOR product of the graphs behind `v1`, `v2`.
pub fn compose(v1: &PatternVector, v2: &PatternVector) -> Result<PatternVector> {
    if v1.t != v2.t {
        return Err(Error::contract(format!("pattern orders differ: {} vs {}", v1.t, v2.t)));
    }
    let mut a = v1.entries.clone();
    let mut b = v2.entries.clone();
    wht(&mut a);
    wht(&mut b);
    for (x, y) in a.iter_mut().zip(&b) {
        *x = x
            .checked_mul(*y)
            .ok_or_else(|| Error::Unsupported("pattern counts overflow 128 bits".into()))?;
    }
    inverse_wht(&mut a)?;
    Ok(PatternVector { t: v1.t, entries: a })
}

/// `(x, y)` for the blow-up sequence of `factors[0] ⊗ factors[1] ⊗ ...`:
/// the independent-`s` density (empty pattern at order `s`) and the
/// `t`-clique density (full pattern at order `t`).
pub fn density_pair_of_product(factors: &[Graph], s: usize, t: usize) -> Result<(Rational, Rational)> {
    if factors.is_empty() {
        return Err(Error::contract("need at least one factor"));
    }
    let chain = |k: usize| -> Result<(i128, i128)> {
        let mut acc = PatternVector::unit(k);
        for f in factors {
            acc = compose(&acc, &pattern_vector(f, k)?)?;
        }
        Ok((acc.empty(), acc.full()))
    };
    let order: BigInt = factors.iter().map(|f| BigInt::from(f.order())).product();
    let (xs, _) = chain(s)?;
    let (_, yt) = chain(t)?;
    Ok((
        Rational::new(xs.into(), order.pow(s as u32)),
        Rational::new(yt.into(), order.pow(t as u32)),
    ))
}

/// `x + y` from [`density_pair_of_product`].
pub fn mono_density_of_product(factors: &[Graph], s: usize, t: usize) -> Result<Rational> {
    let (x, y) = density_pair_of_product(factors, s, t)?;
    Ok(x + y)
}
