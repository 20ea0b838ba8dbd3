//! Tight-subset enumeration: the slow, obviously-correct route to vertices
//! and extreme rays. Used as a test oracle for the double description path.

use num_traits::{Signed, Zero};

use super::linalg;
use super::polyhedron::Polyhedron;
use super::rational::{dot, primitive_integer_vector, Halfspace, Point, Rational};
use crate::error::{Error, Result};

fn subsets(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::with_capacity(k), &mut f);
}

/// Enumerates vertices by solving every `d`-subset of inequalities as
/// equations and keeping the feasible unique solutions, and extreme rays by
/// taking every `(d-1)`-subset of rank `d-1` and testing both directions of
/// its one-dimensional kernel against the recession cone.
pub fn vertex_enumeration_brute_force(inequalities: &[Halfspace]) -> Result<Polyhedron> {
    let d = inequalities.first().ok_or(Error::EmptyInput)?.normal.len();
    let normals: Vec<Point> = inequalities.iter().map(|h| h.normal.clone()).collect();
    if linalg::rank(&normals) < d {
        return Err(Error::NotPointed);
    }
    let m = inequalities.len();
    let mut vertices: Vec<Point> = Vec::new();
    subsets(m, d, |idx| {
        let a: Vec<Point> = idx.iter().map(|&i| normals[i].clone()).collect();
        let b: Vec<Rational> = idx.iter().map(|&i| inequalities[i].offset.clone()).collect();
        if let Some(x) = linalg::solve(&a, &b) {
            if inequalities.iter().all(|h| h.contains(&x)) && !vertices.contains(&x) {
                vertices.push(x);
            }
        }
    });
    if vertices.is_empty() {
        return Err(Error::Infeasible);
    }
    let mut rays: Vec<Point> = Vec::new();
    if d >= 1 {
        subsets(m, d - 1, |idx| {
            let a: Vec<Point> = idx.iter().map(|&i| normals[i].clone()).collect();
            if d > 1 && linalg::rank(&a) != d - 1 {
                return;
            }
            let kernel = if d == 1 {
                vec![vec![Rational::from_integer(1.into())]]
            } else {
                linalg::null_space(&a, d)
            };
            for base in kernel {
                for sign in [1i64, -1] {
                    let r: Point = base.iter().map(|x| x * Rational::from_integer(sign.into())).collect();
                    if normals.iter().all(|n| !dot(n, &r).is_positive()) {
                        let r: Point = primitive_integer_vector(&r).into_iter().map(Rational::from_integer).collect();
                        if !r.iter().all(Zero::is_zero) && !rays.contains(&r) {
                            rays.push(r);
                        }
                    }
                }
            }
        });
    }
    Ok(Polyhedron::from_parts(inequalities.to_vec(), vertices, rays))
}
