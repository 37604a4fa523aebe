//! The attainable region of (independent-`s`, clique-`t`) density pairs:
//! its upper boundary curve, exact construction points, and CSV export.

use std::fmt;
use std::io::Write;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::blowup::{blowup_density_pair, WeightVector};
use crate::error::{Error, Result};
use crate::graphs::named;
use crate::graphs::Graph;
use crate::rational::{exact_root, format_rational, format_sig, int, pow, rat, to_f64, Rational};

const BISECTION_TOL: f64 = 1e-12;

fn check_st(s: usize, t: usize) -> Result<()> {
    if s < 2 || t < 2 {
        return Err(Error::contract(format!("need s, t >= 2 (got s={s}, t={t})")));
    }
    Ok(())
}

fn check_x(x: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::contract(format!("x = {x} is outside [0, 1]")));
    }
    Ok(())
}

/// The root in `[0, 1]` of `z^t + t z^(t-1) (1 - z) = x`.
fn clique_root(t: usize, x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return x.clamp(0.0, 1.0);
    }
    let f = |z: f64| z.powi(t as i32) + t as f64 * z.powi(t as i32 - 1) * (1.0 - z);
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        if f(mid) < x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The two expressions whose maximum is the upper curve at `x`.
pub fn upper_curve_branches(s: usize, t: usize, x: f64) -> Result<(f64, f64)> {
    check_st(s, t)?;
    check_x(x)?;
    let u = x.powf(1.0 / t as f64);
    let first = (1.0 - u).powi(s as i32) + s as f64 * u * (1.0 - u).powi(s as i32 - 1);
    let z = clique_root(t, x);
    let second = (1.0 - z).powi(s as i32);
    Ok((first, second))
}

/// Largest clique-`t` density compatible with independent-`s` density `x`.
pub fn upper_curve(s: usize, t: usize, x: f64) -> Result<f64> {
    let (a, b) = upper_curve_branches(s, t, x)?;
    Ok(a.max(b))
}

/// Interior points where the two branches of the upper curve swap, found by
/// scanning `samples` intervals and bisecting each sign change.
pub fn branch_crossings(s: usize, t: usize, samples: usize) -> Result<Vec<(f64, f64)>> {
    check_st(s, t)?;
    if samples < 2 {
        return Err(Error::contract("need at least 2 samples"));
    }
    let diff = |x: f64| -> Result<f64> {
        let (a, b) = upper_curve_branches(s, t, x)?;
        Ok(a - b)
    };
    let xs: Vec<f64> = (1..samples).map(|i| i as f64 / samples as f64).collect();
    let ds = xs.iter().map(|&x| diff(x)).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for i in 1..xs.len() {
        if ds[i - 1] == 0.0 || ds[i - 1].signum() == ds[i].signum() {
            continue;
        }
        let (mut lo, mut hi) = (xs[i - 1], xs[i]);
        let lo_sign = ds[i - 1].signum();
        while hi - lo > BISECTION_TOL {
            let mid = 0.5 * (lo + hi);
            if diff(mid)?.signum() == lo_sign {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let x = 0.5 * (lo + hi);
        out.push((x, upper_curve(s, t, x)?));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointSource {
    /// Evaluated exactly from a graph.
    Computed(String),
    /// Copied from a figure whose graph is not available.
    PaperFigure(String),
}

impl fmt::Display for PointSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointSource::Computed(name) => write!(f, "{name}"),
            PointSource::PaperFigure(name) => write!(f, "paper-figure {name}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RegionPoint {
    pub x: Rational,
    pub y: Rational,
    pub source: PointSource,
}

impl RegionPoint {
    pub fn sum(&self) -> Rational {
        &self.x + &self.y
    }
}

pub fn construction_point(c: &Graph, s: usize, t: usize, w: &WeightVector, name: &str) -> Result<RegionPoint> {
    let (x, y) = blowup_density_pair(c, s, t, w)?;
    Ok(RegionPoint {
        x,
        y,
        source: PointSource::Computed(name.to_string()),
    })
}

/// The gadget of [`named::goodman_gadget`] with weight `1/2 - b` on each
/// looped vertex and `b` on each unlooped one, at `s = t = 3`.
pub fn goodman_gadget_point(b: &Rational) -> Result<RegionPoint> {
    let half = rat(1, 2);
    if b.is_negative() || *b > half {
        return Err(Error::contract(format!("b = {} is outside [0, 1/2]", format_rational(b))));
    }
    let a = &half - b;
    let w = WeightVector::new(vec![a.clone(), a, b.clone(), b.clone()])?;
    construction_point(&named::goodman_gadget(), 3, 3, &w, &format!("goodman gadget b={}", format_rational(b)))
}

/// Exact (x, y) pairs for the constructions drawn for `s = 3, t = 4`,
/// followed by the figure points whose graphs are not printed.
pub fn figure_constructions_c34() -> Result<Vec<RegionPoint>> {
    let computed = [
        ("K3", Graph::complete(3)),
        ("looped complement of C5", Graph::cycle(5).looped_complement()),
        ("Schlafli graph", named::schlafli()),
        ("24 vertices", named::vt24().looped_complement()),
    ];
    let mut out = computed
        .iter()
        .map(|(name, g)| construction_point(g, 3, 4, &WeightVector::uniform(g.order()), name))
        .collect::<Result<Vec<_>>>()?;
    for (x, y, name) in [
        (rat(3, 200), rat(6347, 64000), "40 vertices"),
        (rat(563, 8192), rat(2469, 65536), "128 vertices"),
        (rat(437, 6272), rat(33, 896), "112 vertices"),
    ] {
        out.push(RegionPoint {
            x,
            y,
            source: PointSource::PaperFigure(name.to_string()),
        });
    }
    Ok(out)
}

/// A bound that is exact when the roots involved are rational.
#[derive(Clone, Debug, PartialEq)]
pub enum Bound {
    Exact(Rational),
    Approx(f64),
}

impl Bound {
    pub fn to_f64(&self) -> f64 {
        match self {
            Bound::Exact(r) => to_f64(r),
            Bound::Approx(x) => *x,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Exact(r) => write!(f, "{}", format_rational(r)),
            Bound::Approx(x) => write!(f, "{}", format_sig(*x, 12)),
        }
    }
}

/// Pushes an upper bound `g` on the `(s, t0)` problem to `t >= t0` via
/// `(t - t0 + g^(1/(1-s)))^(1-s)`.
pub fn erdos_propagate(s: usize, t0: usize, g: &Rational, t: usize) -> Result<Bound> {
    if s < 2 {
        return Err(Error::contract("need s >= 2"));
    }
    if t < t0 {
        return Err(Error::contract(format!("t = {t} is below t0 = {t0}")));
    }
    if !g.is_positive() || *g > Rational::one() {
        return Err(Error::contract(format!("g = {} is outside (0, 1]", format_rational(g))));
    }
    if t == t0 {
        return Ok(Bound::Exact(g.clone()));
    }
    let k = (s - 1) as u32;
    let steps = (t - t0) as i64;
    let num = g.numer().to_biguint().expect("positive");
    let den = g.denom().to_biguint().expect("positive");
    if let (Some(p), Some(q)) = (exact_root(&num, k), exact_root(&den, k)) {
        // g^(1/(1-s)) = q / p
        let r = Rational::new(BigInt::from(q), BigInt::from(p)) + int(steps);
        return Ok(Bound::Exact(pow(&r.recip(), k)));
    }
    let r = to_f64(g).powf(-1.0 / k as f64) + steps as f64;
    Ok(Bound::Approx(r.powi(-(k as i32))))
}

/// One step of [`erdos_propagate`] in floating point.
pub fn erdos_step(s: usize, g: f64) -> f64 {
    let k = (s - 1) as f64;
    (g.powf(-1.0 / k) + 1.0).powf(-k)
}

/// Writes `x,y,source` rows: `grid` samples of the upper curve, the given
/// construction points, and the two ends of the line `y = c - x` if a lower
/// bound `c` is supplied.
pub fn write_region_csv<W: Write>(
    out: &mut W,
    s: usize,
    t: usize,
    constructions: &[RegionPoint],
    grid: usize,
    lower: Option<&Rational>,
) -> Result<()> {
    check_st(s, t)?;
    if grid < 2 {
        return Err(Error::contract("grid needs at least 2 points"));
    }
    let ys = (0..grid)
        .into_par_iter()
        .map(|i| {
            let x = i as f64 / (grid - 1) as f64;
            upper_curve(s, t, x).map(|y| (x, y))
        })
        .collect::<Result<Vec<_>>>()?;
    writeln!(out, "x,y,source")?;
    for (x, y) in ys {
        writeln!(out, "{},{},upper", format_sig(x, 12), format_sig(y, 12))?;
    }
    for p in constructions {
        writeln!(out, "{},{},{}", format_rational(&p.x), format_rational(&p.y), csv_field(&p.source.to_string()))?;
    }
    if let Some(c) = lower {
        let zero = Rational::zero();
        writeln!(out, "{},{},lower", format_rational(&zero), format_rational(c))?;
        writeln!(out, "{},{},lower", format_rational(c), format_rational(&zero))?;
    }
    Ok(())
}

pub fn export_region_csv(
    path: &std::path::Path,
    s: usize,
    t: usize,
    constructions: &[RegionPoint],
    grid: usize,
    lower: Option<&Rational>,
) -> Result<()> {
    let mut buf = Vec::new();
    write_region_csv(&mut buf, s, t, constructions, grid, lower)?;
    std::fs::write(path, buf)?;
    Ok(())
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
