//! Standard polytope families.

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, UnitSphere};

use super::polytope::{convex_hull, Polytope};
use super::rational::{int, ratio, Halfspace, Point, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    /// `conv{0, e_1, ..., e_d}`.
    Simplex(usize),
    /// `[0,1]^d`.
    Cube(usize),
    /// Permutations of `(1, ..., n)`: an `(n-1)`-polytope in `R^n`.
    Permutohedron(usize),
    /// Points of the moment curve `t -> (t, t^2, ..., t^d)`.
    Cyclic { dim: usize, params: Vec<Rational> },
    /// The `2d` inequalities `0 <= x1 <= 1`, `x_i/3 <= x_{i+1} <= 1 - x_i/3`.
    KleeMinty(usize),
    /// Cartesian product, coordinates concatenated.
    Product(Box<Polytope>, Box<Polytope>),
}

pub fn construct_standard(family: &Family) -> Result<Polytope> {
    match family {
        Family::Simplex(d) => simplex(*d),
        Family::Cube(d) => cube(*d),
        Family::Permutohedron(n) => permutohedron(*n),
        Family::Cyclic { dim, params } => cyclic(*dim, params),
        Family::KleeMinty(d) => klee_minty(*d),
        Family::Product(p, q) => product(p, q),
    }
}

fn unit(d: usize, i: usize) -> Point {
    (0..d).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()
}

pub fn simplex(d: usize) -> Result<Polytope> {
    if d == 0 {
        return Err(Error::InvalidParameter("simplex dimension must be at least 1".into()));
    }
    let mut pts = vec![vec![Rational::zero(); d]];
    pts.extend((0..d).map(|i| unit(d, i)));
    convex_hull(&pts)
}

pub fn cube(d: usize) -> Result<Polytope> {
    if d == 0 || d > 20 {
        return Err(Error::InvalidParameter(format!("cube dimension {d} out of range 1..=20")));
    }
    let pts: Vec<Point> = (0u32..1 << d)
        .map(|mask| (0..d).map(|i| int(((mask >> i) & 1) as i64)).collect())
        .collect();
    convex_hull(&pts)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i + 1);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// All permutation vectors of `(1, ..., n)` in lexicographic order.
pub fn permutation_vectors(n: usize) -> Vec<Point> {
    permutations(n).into_iter().map(|p| p.into_iter().map(|x| int(x as i64)).collect()).collect()
}

pub fn permutohedron(n: usize) -> Result<Polytope> {
    if !(2..=7).contains(&n) {
        return Err(Error::InvalidParameter(format!("permutohedron degree {n} out of range 2..=7")));
    }
    convex_hull(&permutation_vectors(n))
}

/// Cyclic polytope on the moment curve at the given parameters.
pub fn cyclic(dim: usize, params: &[Rational]) -> Result<Polytope> {
    if dim == 0 {
        return Err(Error::InvalidParameter("cyclic polytope dimension must be positive".into()));
    }
    if params.len() < dim + 1 {
        return Err(Error::InvalidParameter(format!("cyclic {dim}-polytope needs at least {} points", dim + 1)));
    }
    if params.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter("cyclic parameters must be strictly increasing".into()));
    }
    let pts: Vec<Point> = params
        .iter()
        .map(|t| {
            let mut acc = Rational::one();
            (0..dim)
                .map(|_| {
                    acc = &acc * t;
                    acc.clone()
                })
                .collect()
        })
        .collect();
    convex_hull(&pts)
}

/// Cyclic polytope with parameters `1, 2, ..., n`.
pub fn cyclic_default(dim: usize, n: usize) -> Result<Polytope> {
    let params: Vec<Rational> = (1..=n as i64).map(int).collect();
    cyclic(dim, &params)
}

pub fn klee_minty_inequalities(d: usize) -> Vec<Halfspace> {
    let mut h = Vec::with_capacity(2 * d);
    let mut lower = vec![Rational::zero(); d];
    lower[0] = int(-1);
    h.push(Halfspace::new(lower, Rational::zero()));
    h.push(Halfspace::new(unit(d, 0), Rational::one()));
    for i in 0..d.saturating_sub(1) {
        // x_i/3 - x_{i+1} <= 0
        let mut a = vec![Rational::zero(); d];
        a[i] = ratio(1, 3);
        a[i + 1] = int(-1);
        h.push(Halfspace::new(a, Rational::zero()).normalized());
        // x_i/3 + x_{i+1} <= 1
        let mut a = vec![Rational::zero(); d];
        a[i] = ratio(1, 3);
        a[i + 1] = int(1);
        h.push(Halfspace::new(a, Rational::one()).normalized());
    }
    h
}

pub fn klee_minty(d: usize) -> Result<Polytope> {
    if d == 0 || d > 12 {
        return Err(Error::InvalidParameter(format!("Klee-Minty dimension {d} out of range 1..=12")));
    }
    Polytope::from_inequalities(&klee_minty_inequalities(d))
}

pub fn product(p: &Polytope, q: &Polytope) -> Result<Polytope> {
    let pts: Vec<Point> = p
        .vertices()
        .iter()
        .flat_map(|u| {
            q.vertices().iter().map(move |v| {
                let mut x = u.clone();
                x.extend(v.iter().cloned());
                x
            })
        })
        .collect();
    convex_hull(&pts)
}

/// Pyritohedral icosahedron `(0, ±1, ±3/2)` and cyclic shifts: the regular
/// one up to replacing the golden ratio by 3/2, with the same combinatorics.
pub fn icosahedron() -> Polytope {
    let phi = ratio(3, 2);
    let mut pts = Vec::new();
    for s1 in [-1, 1] {
        for s2 in [-1, 1] {
            let a = int(s1);
            let b = &phi * int(s2);
            pts.push(vec![int(0), a.clone(), b.clone()]);
            pts.push(vec![a.clone(), b.clone(), int(0)]);
            pts.push(vec![b, int(0), a]);
        }
    }
    convex_hull(&pts).expect("icosahedron points span R^3")
}

/// Polar of [`icosahedron`].
pub fn dodecahedron() -> Polytope {
    icosahedron().polar().expect("origin is interior")
}

/// Cross-polytope `conv{±e_i}`.
pub fn cross_polytope(d: usize) -> Result<Polytope> {
    if d == 0 {
        return Err(Error::InvalidParameter("cross-polytope dimension must be positive".into()));
    }
    let pts: Vec<Point> = (0..d)
        .flat_map(|i| {
            let e = unit(d, i);
            let neg = e.iter().map(|x| -x).collect();
            [e, neg]
        })
        .collect();
    convex_hull(&pts)
}

/// Hull of `n` random points on the unit sphere in `R^3`, rounded to
/// multiples of `1/1024`. The graph is planar and 3-connected with at most
/// `n` nodes.
pub fn random_spherical(n: usize, seed: u64) -> Result<Polytope> {
    if n < 4 {
        return Err(Error::InvalidParameter("need at least four points".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts: Vec<Point> = (0..n)
        .map(|_| {
            let x: [f64; 3] = UnitSphere.sample(&mut rng);
            x.iter().map(|c| ratio((c * 1024.0).round() as i64, 1024)).collect()
        })
        .collect();
    convex_hull(&pts)
}

/// Minkowski sum of the segments `[0, g]` for the given generators.
pub fn zonotope(generators: &[Point]) -> Result<Polytope> {
    let d = generators.first().map(Vec::len).ok_or(Error::EmptyInput)?;
    if let Some(g) = generators.iter().find(|g| g.len() != d) {
        return Err(Error::DimensionMismatch { expected: d, found: g.len() });
    }
    if generators.len() > 16 {
        return Err(Error::InvalidParameter("at most 16 zonotope generators".into()));
    }
    let pts: Vec<Point> = (0u32..1 << generators.len())
        .map(|mask| {
            generators
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask >> i & 1 == 1)
                .fold(vec![Rational::zero(); d], |acc, (_, g)| crate::geom::add(&acc, g))
        })
        .collect();
    convex_hull(&pts)
}
