//! Monochromatic `k`-term arithmetic progressions in 2-colourings of `Z_n`,
//! and partial colourings whose uncoloured cells can be blown up.
//!
//! A progression is an ordered pair `(a, d)` in `Z_n x Z_n`, `d = 0`
//! included, so every total colouring has fraction at least `1/n`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rational::{rat, Rational};
use crate::search::{exhaustive_search, simulated_annealing, tabu_search, Algorithm, Schedule, SearchProblem};

/// Most uncoloured cells whose completions are enumerated.
pub const MAX_STARS: usize = 20;
/// Largest `n` for [`exhaustive_min`].
pub const MAX_EXHAUSTIVE_N: usize = 24;

pub const Z44_K5: &str = include_str!("../data/z44_k5.txt");
pub const Z226_K6: &str = include_str!("../data/z226_k6.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cell {
    Zero,
    One,
    Star,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZnColoring {
    cells: Vec<Cell>,
}

impl ZnColoring {
    pub fn new(cells: Vec<Cell>) -> Self {
        Self { cells }
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        Self::new(bits.iter().map(|&b| if b { Cell::One } else { Cell::Zero }).collect())
    }

    /// Reads `0`, `1` and `*` (or `⋆`, or `\star`), ignoring whitespace.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.replace("\\star", "*");
        let mut cells = Vec::new();
        for ch in text.chars() {
            match ch {
                '0' => cells.push(Cell::Zero),
                '1' => cells.push(Cell::One),
                '*' | '⋆' | '★' => cells.push(Cell::Star),
                c if c.is_whitespace() => {}
                c => return Err(Error::invalid(format!("unexpected character {c:?} in colouring"))),
            }
        }
        if cells.is_empty() {
            return Err(Error::invalid("empty colouring"));
        }
        Ok(Self { cells })
    }

    /// As [`ZnColoring::parse`], also checking the length.
    pub fn parse_n(text: &str, n: usize) -> Result<Self> {
        let c = Self::parse(text)?;
        if c.n() != n {
            return Err(Error::invalid(format!("colouring has length {}, expected {n}", c.n())));
        }
        Ok(c)
    }

    pub fn n(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn stars(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.cells[i] == Cell::Star).collect()
    }

    pub fn is_total(&self) -> bool {
        !self.cells.contains(&Cell::Star)
    }

    /// Fills the stars, in increasing position, with `bits`.
    pub fn complete(&self, bits: &[bool]) -> Result<ZnColoring> {
        let stars = self.stars();
        if bits.len() != stars.len() {
            return Err(Error::contract(format!("{} stars but {} completion bits", stars.len(), bits.len())));
        }
        let mut cells = self.cells.clone();
        for (&p, &b) in stars.iter().zip(bits) {
            cells[p] = if b { Cell::One } else { Cell::Zero };
        }
        Ok(Self { cells })
    }
}

impl fmt::Display for ZnColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cells {
            f.write_str(match c {
                Cell::Zero => "0",
                Cell::One => "1",
                Cell::Star => "*",
            })?;
        }
        Ok(())
    }
}

fn check_k(k: usize) -> Result<()> {
    if k < 3 {
        return Err(Error::contract(format!("k = {k}, need k >= 3")));
    }
    Ok(())
}

/// Number of monochromatic `(a, d)` progressions of length `k`.
pub fn mono_ap_count(bits: &[bool], k: usize) -> u64 {
    let n = bits.len();
    let mut count = 0;
    for a in 0..n {
        for d in 0..n {
            let c = bits[a];
            if (1..k).all(|j| bits[(a + j * d) % n] == c) {
                count += 1;
            }
        }
    }
    count
}

pub fn mono_ap_fraction(c: &ZnColoring, k: usize) -> Result<Rational> {
    check_k(k)?;
    if !c.is_total() {
        return Err(Error::contract("colouring has uncoloured cells"));
    }
    let bits: Vec<bool> = c.cells.iter().map(|&x| x == Cell::One).collect();
    let n = bits.len() as i64;
    Ok(rat(mono_ap_count(&bits, k) as i64, n * n))
}

/// Progressions that meet the stars, grouped by what makes them
/// monochromatic in a completion.
#[derive(Clone, Debug)]
struct StarAps {
    /// Monochromatic progressions avoiding the stars.
    fixed: u64,
    /// Progressions meeting both kinds of cell whose coloured cells agree:
    /// `(star mask, colour)`.
    cross: Vec<(u32, bool)>,
    /// Progressions inside the stars, by star mask.
    inner: Vec<u32>,
}

impl StarAps {
    fn new(cells: &[Cell], k: usize) -> Self {
        let n = cells.len();
        let mut star_index = vec![usize::MAX; n];
        for (i, p) in (0..n).filter(|&p| cells[p] == Cell::Star).enumerate() {
            star_index[p] = i;
        }
        let mut out = StarAps {
            fixed: 0,
            cross: Vec::new(),
            inner: Vec::new(),
        };
        for a in 0..n {
            'ap: for d in 0..n {
                let (mut mask, mut colour) = (0u32, None);
                for j in 0..k {
                    let p = (a + j * d) % n;
                    match cells[p] {
                        Cell::Star => mask |= 1 << star_index[p],
                        c => {
                            let b = c == Cell::One;
                            match colour {
                                None => colour = Some(b),
                                Some(x) if x != b => continue 'ap,
                                _ => {}
                            }
                        }
                    }
                }
                match (mask, colour) {
                    (0, _) => out.fixed += 1,
                    (m, Some(c)) => out.cross.push((m, c)),
                    (m, None) => out.inner.push(m),
                }
            }
        }
        out
    }

    /// Monochromatic progressions when star `i` gets bit `i` of `fill`.
    fn count(&self, fill: u32) -> u64 {
        let cross = self
            .cross
            .iter()
            .filter(|&&(m, c)| if c { fill & m == m } else { fill & m == 0 })
            .count();
        let inner = self.inner.iter().filter(|&&m| fill & m == m || fill & m == 0).count();
        self.fixed + (cross + inner) as u64
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PartialReport {
    pub n: usize,
    pub k: usize,
    pub stars: Vec<usize>,
    /// Progressions that meet both coloured cells and stars and that some
    /// completion makes monochromatic. The cross condition holds iff empty.
    pub violations: usize,
    /// Smallest fraction over all completions; the stars then carry an
    /// optimal colouring of `Z_l`.
    pub min_fraction: Rational,
    pub min_completion: Vec<bool>,
    /// Largest fraction over all completions.
    pub max_fraction: Rational,
}

impl PartialReport {
    pub fn cross_condition(&self) -> bool {
        self.violations == 0
    }

    /// `1/(n_eff + l)` when the cross condition holds and the minimum
    /// fraction is `1/n_eff`.
    pub fn bound(&self) -> Option<Rational> {
        if !self.cross_condition() || !self.min_fraction.numer().is_one() {
            return None;
        }
        let n_eff: usize = self.min_fraction.denom().try_into().ok()?;
        Some(lemma_bound(n_eff, self.stars.len()))
    }
}

/// Checks that the stars are a coset of the subgroup of order `l`.
fn check_stars(n: usize, stars: &[usize]) -> Result<()> {
    let l = stars.len();
    if l == 0 {
        return Err(Error::contract("no uncoloured cells"));
    }
    if l > MAX_STARS {
        return Err(Error::Unsupported(format!("{l} uncoloured cells, at most {MAX_STARS} supported")));
    }
    if !n.is_multiple_of(l) {
        return Err(Error::contract(format!("{l} uncoloured cells do not divide n = {n}")));
    }
    let step = n / l;
    if stars.iter().any(|&p| !(p + n - stars[0]).is_multiple_of(step)) {
        return Err(Error::contract(format!(
            "uncoloured cells {stars:?} are not an arithmetic progression with difference {step}"
        )));
    }
    Ok(())
}

pub fn verify_partial(c: &ZnColoring, k: usize) -> Result<PartialReport> {
    check_k(k)?;
    let stars = c.stars();
    check_stars(c.n(), &stars)?;
    let aps = StarAps::new(&c.cells, k);
    let l = stars.len();
    let counts: Vec<u64> = (0..1u32 << l).into_par_iter().map(|fill| aps.count(fill)).collect();
    let (mut lo, mut hi) = (0usize, 0usize);
    for (i, &v) in counts.iter().enumerate() {
        if v < counts[lo] {
            lo = i;
        }
        if v > counts[hi] {
            hi = i;
        }
    }
    let n2 = (c.n() * c.n()) as i64;
    Ok(PartialReport {
        n: c.n(),
        k,
        violations: aps.cross.len(),
        min_fraction: rat(counts[lo] as i64, n2),
        min_completion: (0..l).map(|i| lo >> i & 1 == 1).collect(),
        max_fraction: rat(counts[hi] as i64, n2),
        stars,
    })
}

pub fn lemma_bound(n_effective: usize, l: usize) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(n_effective + l))
}

/// The least monochromatic fraction over all 2-colourings of `Z_n`, with a
/// colouring attaining it (cell 0 coloured 0).
pub fn exhaustive_min(n: usize, k: usize) -> Result<(Rational, ZnColoring)> {
    check_k(k)?;
    if n == 0 || n > MAX_EXHAUSTIVE_N {
        return Err(Error::Unsupported(format!("exhaustive search needs 1 <= n <= {MAX_EXHAUSTIVE_N}")));
    }
    // Swapping colours preserves the count, so cell 0 is fixed to 0.
    let to_bits = |x: u64| (0..n).map(|i| x >> i & 1 == 1).collect::<Vec<bool>>();
    let (count, best) = (0..1u64 << (n - 1))
        .into_par_iter()
        .map(|x| (mono_ap_count(&to_bits(x << 1), k), x << 1))
        .min()
        .expect("nonempty");
    Ok((rat(count as i64, (n * n) as i64), ZnColoring::from_bits(&to_bits(best))))
}

/// Partial colourings of `Z_n` with stars at `0, n/l, 2n/l, ...` as a
/// search problem over the remaining cells. The score is
/// `n^2 * violations + min completion count`, so any violation outweighs
/// every count.
#[derive(Clone, Debug)]
pub struct PartialProblem {
    pub n: usize,
    pub k: usize,
    pub l: usize,
    free: Vec<usize>,
}

impl PartialProblem {
    pub fn new(n: usize, l: usize, k: usize) -> Result<Self> {
        check_k(k)?;
        let stars: Vec<usize> = if l == 0 || !n.is_multiple_of(l) {
            return Err(Error::contract(format!("l = {l} must divide n = {n}")));
        } else {
            (0..l).map(|j| j * (n / l)).collect()
        };
        check_stars(n, &stars)?;
        let free = (0..n).filter(|p| !stars.contains(p)).collect();
        Ok(Self { n, k, l, free })
    }

    pub fn coloring(&self, bits: &[bool]) -> ZnColoring {
        let mut cells = vec![Cell::Star; self.n];
        for (&p, &b) in self.free.iter().zip(bits) {
            cells[p] = if b { Cell::One } else { Cell::Zero };
        }
        ZnColoring::new(cells)
    }

    /// Bits for the free cells of `c`, which must have its stars in the
    /// canonical places.
    pub fn encode(&self, c: &ZnColoring) -> Result<Vec<bool>> {
        if c.n() != self.n || c.stars() != self.coloring(&vec![false; self.free.len()]).stars() {
            return Err(Error::contract("colouring does not match the canonical star positions"));
        }
        Ok(self.free.iter().map(|&p| c.cells[p] == Cell::One).collect())
    }

    fn evaluate(&self, bits: &[bool]) -> i128 {
        let aps = StarAps::new(&self.coloring(bits).cells, self.k);
        let min = (0..1u32 << self.l).map(|f| aps.count(f)).min().unwrap();
        let n2 = (self.n * self.n) as i128;
        n2 * aps.cross.len() as i128 + min as i128
    }
}

impl SearchProblem for PartialProblem {
    /// The state's score.
    type Cache = i128;

    fn num_bits(&self) -> usize {
        self.free.len()
    }

    fn prime(&self, state: &[bool]) -> i128 {
        self.evaluate(state)
    }

    fn score(&self, cache: &i128) -> i128 {
        *cache
    }

    fn delta(&self, state: &[bool], cache: &i128, i: usize) -> Result<i128> {
        let mut s = state.to_vec();
        s[i] = !s[i];
        Ok(self.evaluate(&s) - cache)
    }

    fn apply(&self, state: &mut [bool], cache: &mut i128, i: usize) {
        state[i] = !state[i];
        *cache = self.evaluate(state);
    }

    fn to_rational(&self, score: i128) -> Rational {
        Rational::new(BigInt::from(score), BigInt::from(self.n * self.n))
    }
}

/// Local search for a partial colouring; returns the best one found with
/// its report.
pub fn search_partial(
    n: usize,
    l: usize,
    k: usize,
    sched: &Schedule,
    algorithm: Algorithm,
    init: Option<&ZnColoring>,
) -> Result<(ZnColoring, PartialReport)> {
    let p = PartialProblem::new(n, l, k)?;
    let init = init.map(|c| p.encode(c)).transpose()?;
    let mut ignore = |_: &crate::search::Improvement| {};
    let out = match algorithm {
        Algorithm::Tabu => tabu_search(&p, sched, init.as_deref(), &mut ignore)?,
        Algorithm::Anneal => simulated_annealing(&p, sched, init.as_deref(), &mut ignore)?,
    };
    let c = p.coloring(&out.best_state);
    let report = verify_partial(&c, k)?;
    Ok((c, report))
}

/// Exact optimum of [`PartialProblem`] by enumeration.
pub fn exhaustive_partial(n: usize, l: usize, k: usize) -> Result<(ZnColoring, PartialReport)> {
    let p = PartialProblem::new(n, l, k)?;
    let (bits, _) = exhaustive_search(&p)?;
    let c = p.coloring(&bits);
    let report = verify_partial(&c, k)?;
    Ok((c, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let c = ZnColoring::parse("⋆10 \n*01").unwrap();
        assert_eq!(c.to_string(), "*10*01");
        assert_eq!(c.stars(), vec![0, 3]);
        assert!(ZnColoring::parse("01x").is_err());
        assert!(ZnColoring::parse_n("0101", 5).is_err());
        assert_eq!(ZnColoring::parse("\\star 1").unwrap().to_string(), "*1");
    }

    #[test]
    fn fractions() {
        let ones = ZnColoring::parse("11111").unwrap();
        assert_eq!(mono_ap_fraction(&ones, 3).unwrap(), rat(1, 1));
        let c = ZnColoring::parse("0110100").unwrap();
        assert!(mono_ap_fraction(&c, 3).unwrap() >= rat(1, 7));
        assert!(mono_ap_fraction(&ZnColoring::parse("*1").unwrap(), 3).is_err());
        assert!(mono_ap_fraction(&ones, 2).is_err());
    }

    #[test]
    fn z11_k4() {
        let (m, c) = exhaustive_min(11, 4).unwrap();
        assert_eq!(m, rat(1, 11));
        assert_eq!(mono_ap_fraction(&c, 4).unwrap(), rat(1, 11));
        assert_eq!(lemma_bound(11, 1), rat(1, 12));

        let (c, r) = exhaustive_partial(11, 1, 4).unwrap();
        assert!(r.cross_condition(), "{c}");
        assert_eq!(r.bound(), Some(rat(1, 12)));
    }

    #[test]
    fn z12_one_star_has_no_certificate() {
        // (0, 6) always meets the star and one coloured cell.
        let (_, r) = exhaustive_partial(12, 1, 4).unwrap();
        assert!(!r.cross_condition());
        assert_eq!(r.bound(), None);
    }

    #[test]
    fn tabu_finds_z11() {
        let sched = Schedule {
            iterations: 200,
            tabu_length: 3,
            seed: 7,
            ..Schedule::default()
        };
        let (_, r) = search_partial(11, 1, 4, &sched, Algorithm::Tabu, None).unwrap();
        assert_eq!(r.bound(), Some(rat(1, 12)));
    }

    #[test]
    fn z44_k5() {
        let c = ZnColoring::parse_n(Z44_K5, 44).unwrap();
        assert_eq!(c.stars(), vec![0, 11, 22, 33]);
        let r = verify_partial(&c, 5).unwrap();
        assert!(r.cross_condition());
        assert_eq!(r.min_fraction, rat(1, 44));
        assert_eq!(r.bound(), Some(rat(1, 48)));
        assert_eq!(lemma_bound(44, 4), rat(1, 48));
    }

    #[test]
    fn z226_k6() {
        let c = ZnColoring::parse_n(Z226_K6, 226).unwrap();
        assert_eq!(c.stars(), vec![0, 113]);
        let r = verify_partial(&c, 6).unwrap();
        assert!(r.cross_condition());
        assert_eq!(r.min_fraction, rat(1, 226));
        assert_eq!(r.bound(), Some(rat(1, 228)));
    }

    #[test]
    fn all_stars() {
        let c = ZnColoring::parse("****").unwrap();
        let r = verify_partial(&c, 3).unwrap();
        assert!(r.cross_condition());
        // The best colouring of Z_4 is 0011, leaving only the d = 0 progressions.
        assert_eq!(r.min_fraction, rat(1, 4));
        assert_eq!(r.max_fraction, rat(1, 1));
    }

    #[test]
    fn star_preconditions() {
        assert!(verify_partial(&ZnColoring::parse("*0*00").unwrap(), 3).is_err());
        assert!(verify_partial(&ZnColoring::parse("**0000").unwrap(), 3).is_err());
        assert!(verify_partial(&ZnColoring::parse("000000").unwrap(), 3).is_err());
        assert!(verify_partial(&ZnColoring::parse("*00*00").unwrap(), 3).is_ok());
    }

    #[test]
    fn search_keeps_a_good_start() {
        let c = ZnColoring::parse_n(Z44_K5, 44).unwrap();
        let sched = Schedule {
            iterations: 0,
            tabu_length: 3,
            ..Schedule::default()
        };
        let (found, r) = search_partial(44, 4, 5, &sched, Algorithm::Tabu, Some(&c)).unwrap();
        assert_eq!(found, c);
        assert_eq!(r.bound(), Some(rat(1, 48)));
    }
}
