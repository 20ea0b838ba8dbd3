//! Double description method for pointed polyhedral cones.
//!
//! Rays are kept as primitive integer vectors, so combining two rays never
//! introduces denominators. Adjacency uses the combinatorial test on zero
//! sets, which is exact as long as the current ray set is irredundant.

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::linalg;
use super::rational::primitive;
use crate::error::{Error, Result};

struct Ray {
    coords: Vec<BigInt>,
    zeros: FixedBitSet,
}

fn eval(row: &[BigInt], ray: &[BigInt]) -> BigInt {
    row.iter().zip(ray).fold(BigInt::zero(), |acc, (a, x)| acc + a * x)
}

/// Extreme rays of the cone `{x : row·x >= 0 for every row}`.
///
/// Fails with [`Error::NotPointed`] when the rows do not span the space, i.e.
/// when the cone contains a line. The result is sorted lexicographically.
pub(crate) fn extreme_rays(rows: &[Vec<BigInt>], dim: usize) -> Result<Vec<Vec<BigInt>>> {
    if dim == 0 {
        return Ok(Vec::new());
    }
    let as_rational: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().cloned().map(BigRational::from_integer).collect())
        .collect();
    let basis = linalg::independent_rows(&as_rational);
    if basis.len() < dim {
        return Err(Error::NotPointed);
    }
    let basis_matrix: Vec<Vec<BigRational>> = basis.iter().map(|&i| as_rational[i].clone()).collect();
    let inv = linalg::inverse(&basis_matrix).ok_or(Error::NotPointed)?;

    let m = rows.len();
    let mut rays: Vec<Ray> = (0..dim)
        .map(|k| {
            let column: Vec<BigRational> = inv.iter().map(|row| row[k].clone()).collect();
            let coords = super::rational::primitive_integer_vector(&column);
            let mut zeros = FixedBitSet::with_capacity(m);
            for (j, &b) in basis.iter().enumerate() {
                if j != k {
                    zeros.insert(b);
                }
            }
            Ray { coords, zeros }
        })
        .collect();

    let mut in_basis = FixedBitSet::with_capacity(m);
    for &b in &basis {
        in_basis.insert(b);
    }

    for (i, row) in rows.iter().enumerate() {
        if in_basis.contains(i) {
            continue;
        }
        let values: Vec<BigInt> = rays.iter().map(|r| eval(row, &r.coords)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_negative()).collect();

        let mut created = Vec::new();
        if !neg.is_empty() {
            for &p in &pos {
                for &n in &neg {
                    let mut common = rays[p].zeros.clone();
                    common.intersect_with(&rays[n].zeros);
                    if common.count_ones(..) + 2 < dim {
                        continue;
                    }
                    let blocked = rays.iter().enumerate().any(|(k, r)| {
                        k != p && k != n && common.is_subset(&r.zeros)
                    });
                    if blocked {
                        continue;
                    }
                    let vp = &values[p];
                    let vn = -&values[n];
                    let coords: Vec<BigInt> = rays[p]
                        .coords
                        .iter()
                        .zip(&rays[n].coords)
                        .map(|(xp, xn)| vp * xn + &vn * xp)
                        .collect();
                    let mut zeros = common;
                    zeros.insert(i);
                    created.push(Ray { coords: primitive(coords), zeros });
                }
            }
        }

        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + created.len());
        for (k, mut r) in rays.into_iter().enumerate() {
            if values[k].is_negative() {
                continue;
            }
            if values[k].is_zero() {
                r.zeros.insert(i);
            }
            next.push(r);
        }
        next.extend(created);
        rays = next;
    }

    let mut out: Vec<Vec<BigInt>> = rays.into_iter().map(|r| r.coords).collect();
    out.sort();
    out.dedup();
    Ok(out)
}
