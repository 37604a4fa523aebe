//! Parsing of graph, rational and list arguments.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use ramsey_mult::blowup::WeightVector;
use ramsey_mult::graphs::{named, parse_graph6, Graph, GraphJson};
use ramsey_mult::rational::{format_rational, parse_rational};
use ramsey_mult::search::FiniteGroup;
use ramsey_mult::Rational;

/// A graph given as `g6:<graph6>`, `@<file>` (graph6 or JSON), a built-in
/// name such as `schlafli` or `K3`, or a bare graph6 string.
pub fn graph_spec(spec: &str) -> Result<Graph> {
    if let Some(g6) = spec.strip_prefix("g6:") {
        return parse_graph6(g6).with_context(|| format!("bad graph6 {g6:?}"));
    }
    if let Some(path) = spec.strip_prefix('@') {
        return graph_file(Path::new(path));
    }
    if let Some(g) = named::by_name(spec) {
        return Ok(g);
    }
    parse_graph6(spec).map_err(|e| {
        anyhow!(
            "{spec:?} is neither a known graph name ({}) nor valid graph6: {e}",
            named::NAMES.join(", ")
        )
    })
}

pub fn graph_file(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let text = text.trim();
    if text.starts_with('{') {
        let j: GraphJson = serde_json::from_str(text).with_context(|| format!("bad graph JSON in {}", path.display()))?;
        return Ok(Graph::from_json(&j)?);
    }
    let line = text.lines().next().unwrap_or("").trim();
    parse_graph6(line).with_context(|| format!("bad graph6 in {}", path.display()))
}

/// The graph from `--graph6` or `--graph`, exactly one of which is set.
pub fn one_graph(graph6: Option<&str>, graph: Option<&str>) -> Result<Graph> {
    match (graph6, graph) {
        (Some(g6), None) => parse_graph6(g6).with_context(|| format!("bad graph6 {g6:?}")),
        (None, Some(spec)) => graph_spec(spec),
        _ => bail!("give exactly one of --graph6 or --graph"),
    }
}

pub fn rational(s: &str) -> Result<Rational> {
    Ok(parse_rational(s)?)
}

pub fn weights(spec: Option<&str>, n: usize) -> Result<WeightVector> {
    let Some(spec) = spec else {
        return Ok(WeightVector::uniform(n));
    };
    let w = spec.split(',').map(rational).collect::<Result<Vec<_>>>()?;
    if w.len() != n {
        bail!("{} weights given for a graph on {n} vertices", w.len());
    }
    Ok(WeightVector::new(w)?)
}

/// `1,2,4` with an optional shift from 1-based numbering.
pub fn vertex_set(spec: &str, one_based: bool) -> Result<Vec<usize>> {
    spec.split(',')
        .map(|x| {
            let v: usize = x.trim().parse().with_context(|| format!("bad vertex {x:?}"))?;
            if one_based {
                v.checked_sub(1).ok_or_else(|| anyhow!("vertex 0 in a 1-based list"))
            } else {
                Ok(v)
            }
        })
        .collect()
}

/// `Z13`, `Z2xZ2xZ4` or `Z2^4`.
pub fn group_spec(spec: &str) -> Result<FiniteGroup> {
    let mut factors = Vec::new();
    for part in spec.split(['x', '*']) {
        let part = part.trim().strip_prefix('Z').ok_or_else(|| anyhow!("bad group factor {part:?}, expected Z<n>"))?;
        let (m, e) = part.split_once('^').unwrap_or((part, "1"));
        let m: usize = m.parse().with_context(|| format!("bad cyclic order {m:?}"))?;
        let e: usize = e.parse().with_context(|| format!("bad exponent {e:?}"))?;
        factors.extend(std::iter::repeat_n(m, e));
    }
    Ok(FiniteGroup::direct_product(&factors)?)
}

pub fn fmt(r: &Rational) -> String {
    format_rational(r)
}
