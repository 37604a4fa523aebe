//! Certificates: parsing, exact verification, sharp graphs and the
//! zero-eigenvector condition for weighted constructions.

use std::collections::HashMap;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::psd::{corank, mat_vec, psd_check, Matrix, PsdReport};
use super::{admissible_graphs, enumerate_flags, flag_key, pair_density_matrix, Flag, FlagType, MAX_FLAG_ORDER};
use crate::blowup::{BlowupObjective, WeightVector};
use crate::error::{Error, Result};
use crate::graphs::{count_cliques, emit_graph6, parse_graph6, Graph};
use crate::rational::{format_rational, parse_rational, Rational};

/// Largest `m` verified; 7 is accepted with a warning.
pub const MAX_M: usize = 7;

/// Certificate for the triangle-plus-independent-triple bound `1/4` at
/// `m = 3`, with one vertex type.
pub const TOY_CERTIFICATE: &str = include_str!("../../data/flag_toy_c3.json");

pub fn toy_certificate() -> FlagCertificate {
    FlagCertificate::parse(TOY_CERTIFICATE).expect("bundled certificate is valid")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectiveJson {
    pub s: usize,
    pub t: usize,
    pub ws: String,
    pub wt: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeJson {
    pub graph6: String,
    pub labels: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagJson {
    pub graph6: String,
    pub embedding: Vec<usize>,
}

/// On-disk certificate; every rational is a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub m: usize,
    #[serde(default)]
    pub forbidden: Vec<String>,
    pub objective: ObjectiveJson,
    pub types: Vec<TypeJson>,
    pub flags: Vec<Vec<FlagJson>>,
    #[serde(rename = "Q")]
    pub q: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FlagCertificate {
    pub m: usize,
    pub forbidden: Vec<Graph>,
    pub objective: BlowupObjective,
    pub types: Vec<FlagType>,
    pub flags: Vec<Vec<Flag>>,
    pub q: Vec<Matrix>,
}

fn cert_err(msg: impl Into<String>) -> Error {
    Error::Certificate(msg.into())
}

impl FlagCertificate {
    pub fn from_json(j: &CertificateJson) -> Result<Self> {
        let g6 = |s: &str| parse_graph6(s).map_err(|e| cert_err(format!("graph6 {s:?}: {e}")));
        let rat = |s: &str| parse_rational(s).map_err(|e| cert_err(e.to_string()));
        let forbidden = j.forbidden.iter().map(|s| g6(s)).collect::<Result<Vec<_>>>()?;
        let mut objective = BlowupObjective::new(j.objective.s, j.objective.t)
            .with_weights(rat(&j.objective.ws)?, rat(&j.objective.wt)?);
        if let Some(l) = &j.objective.lambda {
            objective = objective.with_lambda(rat(l)?);
        }
        let types = j
            .types
            .iter()
            .map(|t| FlagType::new(g6(&t.graph6)?, t.labels.clone()))
            .collect::<Result<Vec<_>>>()?;
        if j.flags.len() != types.len() || j.q.len() != types.len() {
            return Err(cert_err(format!(
                "{} types but {} flag lists and {} matrices",
                types.len(),
                j.flags.len(),
                j.q.len()
            )));
        }
        let flags = types
            .iter()
            .zip(&j.flags)
            .map(|(ty, list)| {
                list.iter()
                    .map(|f| Flag::new(ty, g6(&f.graph6)?, f.embedding.clone()))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let q = j
            .q
            .iter()
            .map(|m| m.iter().map(|row| row.iter().map(|x| rat(x)).collect()).collect())
            .collect::<Result<Vec<Matrix>>>()?;
        let cert = Self {
            m: j.m,
            forbidden,
            objective,
            types,
            flags,
            q,
        };
        cert.validate()?;
        Ok(cert)
    }

    pub fn to_json(&self) -> Result<CertificateJson> {
        let lambda = (!self.objective.lambda.is_one()).then(|| format_rational(&self.objective.lambda));
        Ok(CertificateJson {
            m: self.m,
            forbidden: self.forbidden.iter().map(emit_graph6).collect::<Result<_>>()?,
            objective: ObjectiveJson {
                s: self.objective.s,
                t: self.objective.t,
                ws: format_rational(&self.objective.ws),
                wt: format_rational(&self.objective.wt),
                lambda,
            },
            types: self
                .types
                .iter()
                .map(|t| {
                    Ok(TypeJson {
                        graph6: emit_graph6(&t.graph)?,
                        labels: t.labels.clone(),
                    })
                })
                .collect::<Result<_>>()?,
            flags: self
                .flags
                .iter()
                .map(|list| {
                    list.iter()
                        .map(|f| {
                            Ok(FlagJson {
                                graph6: emit_graph6(&f.graph)?,
                                embedding: f.embedding.clone(),
                            })
                        })
                        .collect::<Result<_>>()
                })
                .collect::<Result<_>>()?,
            q: self
                .q
                .iter()
                .map(|m| m.iter().map(|row| row.iter().map(format_rational).collect()).collect())
                .collect(),
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Structural checks: orders, parities, dimensions, distinct flags.
    pub fn validate(&self) -> Result<()> {
        let m = self.m;
        if m > MAX_M {
            return Err(Error::Unsupported(format!("certificates with m > {MAX_M} are not verified")));
        }
        if m == MAX_M {
            log::warn!("verifying a certificate with m = {m}; this enumerates 1044 graphs and is slow");
        }
        self.objective.validate()?;
        if m < self.objective.s.max(self.objective.t) {
            return Err(cert_err(format!("m = {m} is below max(s, t)")));
        }
        for (i, ty) in self.types.iter().enumerate() {
            let v = ty.order();
            if v + 2 > m || v % 2 != m % 2 {
                return Err(cert_err(format!("type {i} has order {v}; need v <= m - 2 and v = m mod 2")));
            }
            let l = (m + v) / 2;
            if l > MAX_FLAG_ORDER {
                return Err(Error::Unsupported(format!("type {i} needs flags of order {l} > {MAX_FLAG_ORDER}")));
            }
            let mut keys = HashMap::new();
            for (k, f) in self.flags[i].iter().enumerate() {
                if f.order() != l {
                    return Err(cert_err(format!("flag {k} of type {i} has order {}, expected {l}", f.order())));
                }
                if let Some(prev) = keys.insert(f.key()?, k) {
                    return Err(cert_err(format!("flags {prev} and {k} of type {i} are isomorphic")));
                }
            }
            let q = &self.q[i];
            let d = self.flags[i].len();
            if q.len() != d || q.iter().any(|row| row.len() != d) {
                return Err(cert_err(format!("matrix {i} is not {d} x {d}")));
            }
        }
        Ok(())
    }

    /// `lambda(H)`: weighted density of independent `s`-sets and `t`-cliques.
    pub fn lambda_of(&self, h: &Graph) -> Rational {
        let n = h.order();
        let d = |count: u64, k: usize| Rational::new(count.into(), binom(n, k));
        let o = &self.objective;
        &o.ws * d(count_cliques(&h.complement(), o.s), o.s) + &o.lambda * &o.wt * d(count_cliques(h, o.t), o.t)
    }

    /// `sum_i <Q_i, D_i(H)>`.
    pub fn correction(&self, h: &Graph) -> Result<Rational> {
        let mut total = Rational::zero();
        for (flags, q) in self.flags.iter().zip(&self.q) {
            let d = pair_density_matrix(flags, h)?;
            for (qr, dr) in q.iter().zip(&d) {
                for (a, b) in qr.iter().zip(dr) {
                    if !a.is_zero() && !b.is_zero() {
                        total += a * b;
                    }
                }
            }
        }
        Ok(total)
    }

    /// One row per admissible graph of order `m`, in enumeration order.
    pub fn evaluate(&self) -> Result<Vec<SlackRow>> {
        let graphs = admissible_graphs(self.m, &self.forbidden)?;
        graphs
            .into_par_iter()
            .map(|graph| {
                let lambda = self.lambda_of(&graph);
                let correction = self.correction(&graph)?;
                let value = &lambda - &correction;
                Ok(SlackRow {
                    graph,
                    lambda,
                    correction,
                    value,
                    slack: Rational::zero(),
                })
            })
            .collect()
    }
}

fn binom(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SlackRow {
    pub graph: Graph,
    pub lambda: Rational,
    pub correction: Rational,
    /// `lambda - correction`.
    pub value: Rational,
    /// `value - bound`; zero exactly for sharp graphs.
    pub slack: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub bound: Rational,
    pub rows: Vec<SlackRow>,
    pub psd: Vec<PsdReport>,
    pub coranks: Vec<usize>,
}

impl VerifyReport {
    pub fn sharp(&self) -> Vec<&Graph> {
        self.rows.iter().filter(|r| r.slack.is_zero()).map(|r| &r.graph).collect()
    }
}

/// Checks every matrix is PSD, then returns the minimum over admissible `H`
/// of `lambda(H) - sum_i <Q_i, D_i(H)>` with the full slack table.
pub fn verify_certificate(cert: &FlagCertificate) -> Result<VerifyReport> {
    cert.validate()?;
    let mut psd = Vec::new();
    for (i, q) in cert.q.iter().enumerate() {
        let r = psd_check(q)?;
        if !r.psd {
            return Err(Error::NotPsd {
                matrix: i,
                pivot: r.failed_at.unwrap_or(0),
            });
        }
        psd.push(r);
    }
    let mut rows = cert.evaluate()?;
    let bound = rows
        .iter()
        .map(|r| r.value.clone())
        .min()
        .ok_or_else(|| cert_err("no admissible graphs of order m"))?;
    for r in &mut rows {
        r.slack = &r.value - &bound;
    }
    Ok(VerifyReport {
        bound,
        rows,
        psd,
        coranks: cert.q.iter().map(corank).collect(),
    })
}

/// Admissible graphs whose value equals `bound` exactly.
pub fn sharp_graphs(cert: &FlagCertificate, bound: &Rational) -> Result<Vec<Graph>> {
    Ok(cert
        .evaluate()?
        .into_iter()
        .filter(|r| &r.value == bound)
        .map(|r| r.graph)
        .collect())
}

/// `(d^psi_F(C, w))_F`: labels on `psi`, the other `l - v` vertices drawn
/// independently from `w` in the blow-up of `c`, so two draws of one vertex
/// (or a draw of a labelled vertex) are adjacent iff it carries a loop.
pub fn limit_flag_vector(ty: &FlagType, flags: &[Flag], c: &Graph, w: &WeightVector, psi: &[usize]) -> Result<Vec<Rational>> {
    let v = ty.order();
    if w.len() != c.order() {
        return Err(Error::contract("weight vector length differs from the construction order"));
    }
    let mut seen = vec![false; c.order()];
    if psi.len() != v || psi.iter().any(|&x| x >= c.order() || std::mem::replace(&mut seen[x], true)) {
        return Err(cert_err("labelling must be injective with one image per label"));
    }
    if c.induced(psi) != ty.ordered() {
        return Err(cert_err("labelled vertices do not induce the type"));
    }
    if psi.iter().any(|&x| w.as_slice()[x].is_zero()) {
        return Err(Error::contract("labelled vertices need positive weight"));
    }
    let Some(l) = flags.first().map(Flag::order) else {
        return Ok(Vec::new());
    };
    let index: HashMap<u128, usize> = flags
        .iter()
        .enumerate()
        .map(|(i, f)| Ok((f.key()?, i)))
        .collect::<Result<_>>()?;
    let k = l - v;
    let n = c.order();
    let labelled: Vec<usize> = (0..v).collect();
    let mut out = vec![Rational::zero(); flags.len()];
    let mut draw = vec![0usize; k];
    loop {
        let weight: Rational = draw.iter().map(|&x| w.as_slice()[x].clone()).product();
        if !weight.is_zero() {
            let images: Vec<usize> = psi.iter().chain(&draw).copied().collect();
            let mut g = Graph::empty(l);
            for a in 0..l {
                for b in a + 1..l {
                    let linked = if a < v && b < v {
                        c.has_edge(images[a], images[b])
                    } else {
                        c.linked(images[a], images[b])
                    };
                    if linked {
                        g.add_edge(a, b);
                    }
                }
            }
            if let Some(&i) = index.get(&flag_key(&g, &labelled)?) {
                out[i] += weight;
            }
        }
        // Next tuple in V(C)^k.
        let mut pos = 0;
        while pos < k {
            draw[pos] += 1;
            if draw[pos] < n {
                break;
            }
            draw[pos] = 0;
            pos += 1;
        }
        if pos == k {
            break;
        }
    }
    Ok(out)
}

/// Whether `Q_i x = 0` for `x` from [`limit_flag_vector`].
pub fn zero_eigenvector_check(cert: &FlagCertificate, i: usize, c: &Graph, w: &WeightVector, psi: &[usize]) -> Result<bool> {
    let ty = cert.types.get(i).ok_or_else(|| Error::contract(format!("no type {i}")))?;
    let x = limit_flag_vector(ty, &cert.flags[i], c, w, psi)?;
    Ok(mat_vec(&cert.q[i], &x).iter().all(Zero::is_zero))
}

/// The full flag list for type `i` at the certificate's order, for building
/// certificates programmatically.
pub fn all_flags(cert: &FlagCertificate, i: usize) -> Result<Vec<Flag>> {
    let ty = &cert.types[i];
    enumerate_flags(ty, (cert.m + ty.order()) / 2, &cert.forbidden)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn toy(q: Matrix) -> FlagCertificate {
        let ty = FlagType::vertex();
        let flags = enumerate_flags(&ty, 2, &[]).unwrap();
        FlagCertificate {
            m: 3,
            forbidden: Vec::new(),
            objective: BlowupObjective::new(3, 3),
            types: vec![ty],
            flags: vec![flags],
            q: vec![q],
        }
    }

    fn toy_q() -> Matrix {
        vec![vec![rat(3, 4), rat(-3, 4)], vec![rat(-3, 4), rat(3, 4)]]
    }

    #[test]
    fn toy_bound_and_sharp_graphs() {
        let cert = toy(toy_q());
        let r = verify_certificate(&cert).unwrap();
        assert_eq!(r.bound, rat(1, 4));
        assert_eq!(r.sharp().len(), 4);
        assert_eq!(sharp_graphs(&cert, &r.bound).unwrap().len(), 4);
        assert_eq!(r.coranks, vec![1]);
    }

    #[test]
    fn zero_matrix_gives_trivial_bound() {
        let zero = vec![vec![rat(0, 1); 2]; 2];
        let r = verify_certificate(&toy(zero)).unwrap();
        assert_eq!(r.bound, rat(0, 1));
        // Sharp graphs are the one- and two-edge graphs.
        assert_eq!(r.sharp().iter().map(|g| g.edge_count()).collect::<Vec<_>>(), vec![1, 2]);
    }

    #[test]
    fn rejects_indefinite() {
        let bad = vec![vec![rat(1, 1), rat(0, 1)], vec![rat(0, 1), rat(-1, 1)]];
        assert!(matches!(verify_certificate(&toy(bad)), Err(Error::NotPsd { matrix: 0, .. })));
    }

    #[test]
    fn json_round_trip() {
        let cert = toy(toy_q());
        let j = cert.to_json().unwrap();
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.contains("\"Q\""));
        assert_eq!(FlagCertificate::parse(&text).unwrap(), cert);
        assert_eq!(toy_certificate(), cert);
    }

    #[test]
    fn duplicate_flags_rejected() {
        let mut cert = toy(toy_q());
        cert.flags[0][1] = cert.flags[0][0].clone();
        assert!(matches!(cert.validate(), Err(Error::Certificate(_))));
    }

    #[test]
    fn toy_eigenvector() {
        let cert = toy(toy_q());
        let x = limit_flag_vector(&cert.types[0], &cert.flags[0], &Graph::complete(2), &WeightVector::uniform(2), &[0]).unwrap();
        assert_eq!(x, vec![rat(1, 2), rat(1, 2)]);
        assert!(zero_eigenvector_check(&cert, 0, &Graph::complete(2), &WeightVector::uniform(2), &[0]).unwrap());
        assert!(!zero_eigenvector_check(&cert, 0, &Graph::complete(3), &WeightVector::uniform(3), &[0]).unwrap());
    }
}
