//! Exact Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use super::rational::{Point, Rational};

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[Point]) -> (Vec<Point>, Vec<usize>) {
    let mut m: Vec<Point> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Point]) -> usize {
    rref(rows).1.len()
}

/// Indices of a maximal linearly independent subset of `rows`, greedily in order.
pub fn independent_rows(rows: &[Point]) -> Vec<usize> {
    let mut basis: Vec<Point> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let mut chosen = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        let mut v = row.clone();
        for (b, &p) in basis.iter().zip(&pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone() / &b[p];
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= &f * y;
                }
            }
        }
        if let Some(p) = v.iter().position(|x| !x.is_zero()) {
            basis.push(v);
            pivots.push(p);
            chosen.push(idx);
        }
    }
    chosen
}

/// Solves the square system `m x = rhs`; `None` when `m` is singular.
pub fn solve(m: &[Point], rhs: &[Rational]) -> Option<Point> {
    let n = m.len();
    let aug: Vec<Point> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let (red, pivots) = rref(&aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(red.into_iter().map(|r| r[n].clone()).collect())
}

/// Least-squares-free consistency solve of an overdetermined system: returns a
/// solution if `m x = rhs` is consistent and has full column rank.
pub fn solve_consistent(m: &[Point], rhs: &[Rational]) -> Option<Point> {
    let ncols = m.first()?.len();
    let aug: Vec<Point> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let (red, pivots) = rref(&aug);
    if pivots.contains(&ncols) || pivots.len() != ncols {
        return None;
    }
    Some(red.into_iter().map(|r| r[ncols].clone()).collect())
}

/// Basis of the null space `{x : m x = 0}`.
pub fn null_space(m: &[Point], ncols: usize) -> Vec<Point> {
    let (red, pivots) = rref(m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &p) in red.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Inverse of a square matrix; `None` when singular.
pub fn inverse(m: &[Point]) -> Option<Vec<Point>> {
    let n = m.len();
    let aug: Vec<Point> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let (red, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
}
