//! Exact positive-semidefiniteness and rank over the rationals.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

pub type Matrix = Vec<Vec<Rational>>;

#[derive(Clone, Debug, PartialEq)]
pub struct PsdReport {
    pub psd: bool,
    /// Pivots of the `L D L^T` factorisation in elimination order.
    pub pivots: Vec<Rational>,
    /// Index (in elimination order) of the first failing pivot.
    pub failed_at: Option<usize>,
    /// `x` with `x^T Q x < 0` when not PSD.
    pub witness: Option<Vec<Rational>>,
}

fn check_symmetric(q: &Matrix) -> Result<usize> {
    let n = q.len();
    for (i, row) in q.iter().enumerate() {
        if row.len() != n {
            return Err(Error::invalid(format!("matrix row {i} has {} entries, expected {n}", row.len())));
        }
        for j in 0..i {
            if row[j] != q[j][i] {
                return Err(Error::invalid(format!("matrix is not symmetric at ({i}, {j})")));
            }
        }
    }
    Ok(n)
}

pub fn quadratic_form(q: &Matrix, x: &[Rational]) -> Rational {
    let mut s = Rational::zero();
    for (i, row) in q.iter().enumerate() {
        for (j, a) in row.iter().enumerate() {
            s += a * &x[i] * &x[j];
        }
    }
    s
}

pub fn mat_vec(q: &Matrix, x: &[Rational]) -> Vec<Rational> {
    q.iter()
        .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
        .collect()
}

/// `L D L^T` with symmetric pivoting: at each step a positive diagonal entry
/// is eliminated. A negative diagonal, or a zero diagonal with a nonzero
/// off-diagonal entry in its row, proves the matrix is not PSD.
pub fn psd_check(q: &Matrix) -> Result<PsdReport> {
    let n = check_symmetric(q)?;
    let mut a = q.clone();
    let mut remaining: Vec<usize> = (0..n).collect();
    // (pivot index, its row over the indices remaining at that time, pivot value)
    let mut eliminated: Vec<(usize, Vec<(usize, Rational)>, Rational)> = Vec::new();
    let mut pivots = Vec::new();

    let witness_from = |y: Vec<(usize, Rational)>, eliminated: &[(usize, Vec<(usize, Rational)>, Rational)]| {
        let mut x = vec![Rational::zero(); n];
        for (i, v) in y {
            x[i] = v;
        }
        for (p, row, d) in eliminated.iter().rev() {
            let s: Rational = row.iter().map(|(j, r)| r * &x[*j]).sum();
            x[*p] = -s / d;
        }
        x
    };

    while !remaining.is_empty() {
        if let Some(&i) = remaining.iter().find(|&&i| a[i][i].is_negative()) {
            let x = witness_from(vec![(i, Rational::one())], &eliminated);
            pivots.push(a[i][i].clone());
            return Ok(PsdReport {
                psd: false,
                failed_at: Some(pivots.len() - 1),
                pivots,
                witness: Some(x),
            });
        }
        let Some(pos) = remaining.iter().position(|&i| a[i][i].is_positive()) else {
            // All remaining diagonal entries vanish.
            for &i in &remaining {
                if let Some(&j) = remaining.iter().find(|&&j| j != i && !a[i][j].is_zero()) {
                    let aij = a[i][j].clone();
                    let y = if a[j][j].is_zero() {
                        let sign = if aij.is_positive() { -Rational::one() } else { Rational::one() };
                        vec![(i, Rational::one()), (j, sign)]
                    } else {
                        let t = -(&a[j][j] + Rational::one()) / (Rational::from_integer(2.into()) * &aij);
                        vec![(i, t), (j, Rational::one())]
                    };
                    pivots.push(Rational::zero());
                    return Ok(PsdReport {
                        psd: false,
                        failed_at: Some(pivots.len() - 1),
                        pivots,
                        witness: Some(witness_from(y, &eliminated)),
                    });
                }
            }
            pivots.extend(remaining.iter().map(|_| Rational::zero()));
            break;
        };
        let p = remaining.remove(pos);
        let d = a[p][p].clone();
        let row: Vec<(usize, Rational)> = remaining.iter().map(|&j| (j, a[p][j].clone())).collect();
        for &(i, ref api) in &row {
            if api.is_zero() {
                continue;
            }
            for &(j, ref apj) in &row {
                let delta = api * apj / &d;
                a[i][j] -= delta;
            }
        }
        pivots.push(d.clone());
        eliminated.push((p, row, d));
    }
    Ok(PsdReport {
        psd: true,
        pivots,
        failed_at: None,
        witness: None,
    })
}

pub fn rank(q: &Matrix) -> usize {
    let mut a = q.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &a[r][c];
            for k in c..cols {
                let delta = &f * &a[r][k];
                a[i][k] -= delta;
            }
        }
        r += 1;
    }
    r
}

/// Dimension of the kernel of a square matrix.
pub fn corank(q: &Matrix) -> usize {
    q.len() - rank(q)
}
