//! Finite groups given by multiplication tables, and their Cayley graphs.

use std::path::Path;

use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::graphs::{Graph, MAX_ORDER};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    labels: Vec<String>,
    table: Vec<u32>,
    inverse: Vec<usize>,
    identity: usize,
}

impl FiniteGroup {
    /// Validates `table[a][b] = a*b`: closure, a two-sided identity and
    /// inverses exhaustively, associativity on sampled triples (all triples
    /// for orders up to 24).
    pub fn from_table(table: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = table.len();
        if n == 0 || n > MAX_ORDER {
            return Err(Error::Group(format!("order must be in 1..={MAX_ORDER}, got {n}")));
        }
        if let Some((r, row)) = table.iter().enumerate().find(|(_, row)| row.len() != n) {
            return Err(Error::Group(format!("row {r} has {} entries, expected {n}", row.len())));
        }
        for (a, row) in table.iter().enumerate() {
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                return Err(Error::Group(format!("closure: entry {x} in row {a} is not an element")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::Group("identity: no two-sided identity element".into()))?;
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::Group(format!("inverse: element {a} has no two-sided inverse")))?;
        }
        let assoc = |a: usize, b: usize, c: usize| table[table[a][b]][c] == table[a][table[b][c]];
        if n <= 24 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(Error::Group(format!("associativity fails at ({a}, {b}, {c})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x6a09_e667);
            for _ in 0..20_000 {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !assoc(a, b, c) {
                    return Err(Error::Group(format!("associativity fails at ({a}, {b}, {c})")));
                }
            }
        }
        let labels = labels.unwrap_or_else(|| (0..n).map(|i| i.to_string()).collect());
        if labels.len() != n {
            return Err(Error::Group("label count differs from order".into()));
        }
        Ok(Self {
            order: n,
            labels,
            table: table.into_iter().flatten().map(|x| x as u32).collect(),
            inverse,
            identity,
        })
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        Self::direct_product(&[n])
    }

    /// `Z_{m1} x ... x Z_{mk}`; element `i` has coordinates given by the
    /// mixed-radix digits of `i` with the last factor varying fastest.
    pub fn direct_product(factors: &[usize]) -> Result<Self> {
        let order = factors.iter().try_fold(1usize, |acc, &m| {
            if m == 0 {
                None
            } else {
                acc.checked_mul(m).filter(|&o| o <= MAX_ORDER)
            }
        });
        let order = order.ok_or_else(|| Error::Group(format!("product of {factors:?} exceeds {MAX_ORDER} or has a zero factor")))?;
        let digits = |mut x: usize| {
            let mut d = vec![0; factors.len()];
            for (k, &m) in factors.iter().enumerate().rev() {
                d[k] = x % m;
                x /= m;
            }
            d
        };
        let undigits = |d: &[usize]| d.iter().zip(factors).fold(0, |acc, (&x, &m)| acc * m + x);
        let coords: Vec<Vec<usize>> = (0..order).map(digits).collect();
        let mut table = vec![0u32; order * order];
        let mut inverse = vec![0; order];
        for a in 0..order {
            for b in 0..order {
                let sum: Vec<usize> = (0..factors.len()).map(|k| (coords[a][k] + coords[b][k]) % factors[k]).collect();
                table[a * order + b] = undigits(&sum) as u32;
            }
            let neg: Vec<usize> = (0..factors.len()).map(|k| (factors[k] - coords[a][k]) % factors[k]).collect();
            inverse[a] = undigits(&neg);
        }
        let labels = coords
            .iter()
            .map(|c| if c.len() == 1 { c[0].to_string() } else { format!("{c:?}") })
            .collect();
        Ok(Self {
            order,
            labels,
            table,
            inverse,
            identity: 0,
        })
    }

    /// Whitespace-separated integers: the order, then the table row by row.
    pub fn parse_table(text: &str) -> Result<Self> {
        let mut nums = text.split_whitespace().map(|w| {
            w.parse::<usize>()
                .map_err(|_| Error::Group(format!("not a nonnegative integer: {w:?}")))
        });
        let n = nums.next().ok_or_else(|| Error::Group("empty group table".into()))??;
        if n == 0 || n > MAX_ORDER {
            return Err(Error::Group(format!("order must be in 1..={MAX_ORDER}, got {n}")));
        }
        let flat: Vec<usize> = nums.collect::<Result<_>>()?;
        if flat.len() != n * n {
            return Err(Error::Group(format!("expected {} table entries, found {}", n * n, flat.len())));
        }
        Self::from_table(flat.chunks(n).map(<[usize]>::to_vec).collect(), None)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The classes `{g, g^-1}` for `g != 1`, ordered by smallest member.
    pub fn inverse_classes(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for g in 0..self.order {
            let h = self.inverse[g];
            if g == self.identity || h < g {
                continue;
            }
            out.push(if h == g { vec![g] } else { vec![g, h] });
        }
        out
    }
}

pub fn load_group_table(path: &Path) -> Result<FiniteGroup> {
    FiniteGroup::parse_table(&std::fs::read_to_string(path)?)
}

/// The connection set selected by `bits` over `classes`.
pub fn connection_set(group: &FiniteGroup, classes: &[Vec<usize>], bits: &[bool]) -> Vec<bool> {
    let mut in_s = vec![false; group.order()];
    for (class, &on) in classes.iter().zip(bits) {
        if on {
            for &g in class {
                in_s[g] = true;
            }
        }
    }
    in_s
}

/// Cayley graph with edges `{g, gs}` for `s` in the selected classes.
pub fn cayley_graph(group: &FiniteGroup, bits: &[bool]) -> Graph {
    let classes = group.inverse_classes();
    assert_eq!(bits.len(), classes.len(), "one bit per inverse class");
    let in_s = connection_set(group, &classes, bits);
    let n = group.order();
    let mut g = Graph::empty(n);
    for a in 0..n {
        for b in a + 1..n {
            if in_s[group.mul(group.inv(a), b)] {
                g.add_edge(a, b);
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> Vec<Vec<usize>> {
        // Permutations of {0,1,2} as image arrays; product is composition.
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        perms
            .iter()
            .map(|a| perms.iter().map(|b| idx([a[b[0]], a[b[1]], a[b[2]]])).collect())
            .collect()
    }

    #[test]
    fn cyclic_and_products() {
        assert_eq!(FiniteGroup::cyclic(13).unwrap().order(), 13);
        assert_eq!(FiniteGroup::direct_product(&[3, 2, 2, 2, 2, 2, 2]).unwrap().order(), 192);
        let g = FiniteGroup::direct_product(&[3, 2, 2, 2, 2, 2, 2, 2, 2]).unwrap();
        assert_eq!(g.order(), 768);
        assert!(g.is_abelian());
        assert!(FiniteGroup::direct_product(&[1024, 2]).is_err());
        assert_eq!(FiniteGroup::cyclic(13).unwrap().inverse_classes().len(), 6);
        assert_eq!(FiniteGroup::direct_product(&[2, 2]).unwrap().inverse_classes().len(), 3);
    }

    #[test]
    fn tables() {
        let z3 = FiniteGroup::parse_table("3\n0 1 2\n1 2 0\n2 0 1\n").unwrap();
        assert_eq!(z3.order(), 3);
        let g = FiniteGroup::from_table(s3(), None).unwrap();
        assert!(!g.is_abelian());
        let mut broken = s3();
        broken[1][1] = 2;
        let err = FiniteGroup::from_table(broken, None).unwrap_err().to_string();
        assert!(err.contains("inverse") || err.contains("associativity"), "{err}");
        assert!(FiniteGroup::parse_table("2\n0 1\n1 1\n").is_err());
        assert!(FiniteGroup::parse_table("2\n0 1 1").is_err());
    }

    #[test]
    fn cayley_examples() {
        let z5 = FiniteGroup::cyclic(5).unwrap();
        // classes {1,4}, {2,3}
        assert_eq!(cayley_graph(&z5, &[true, false]), Graph::cycle(5));
        let z4 = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(cayley_graph(&z4, &[true, true]), Graph::complete(4));
    }
}
