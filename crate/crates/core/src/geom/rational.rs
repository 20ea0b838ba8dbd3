use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact arbitrary-precision rational.
pub type Rational = BigRational;

/// A point (or direction) with exact coordinates.
pub type Point = Vec<Rational>;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[Rational], b: &[Rational]) -> Point {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[Rational], s: &Rational) -> Point {
    a.iter().map(|x| x * s).collect()
}

pub fn barycenter(points: &[&Point]) -> Point {
    let n = points[0].len();
    let mut acc = vec![Rational::zero(); n];
    for p in points {
        for (a, x) in acc.iter_mut().zip(p.iter()) {
            *a += x;
        }
    }
    let k = int(points.len() as i64);
    acc.into_iter().map(|a| a / &k).collect()
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Exact rational value of a finite float.
pub fn from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"0.026"` or `"-1.5e-3"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    if let Ok(p) = s.parse::<BigInt>() {
        return Ok(Rational::from_integer(p));
    }
    parse_decimal(s).ok_or_else(bad)
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    if exponent.unsigned_abs() > 4096 {
        return None;
    }
    let digits: BigInt = format!("{whole}{frac}").parse().ok()?;
    let shift = exponent - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut q = Rational::from_integer(digits);
    if shift >= 0 {
        q *= Rational::from_integer(num_traits::pow(ten, shift as usize));
    } else {
        q /= Rational::from_integer(num_traits::pow(ten, (-shift) as usize));
    }
    Some(if neg { -q } else { q })
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Scales `v` by a positive factor so that all entries are integers with gcd 1.
/// The zero vector maps to the zero vector.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
    primitive(ints)
}

pub(crate) fn primitive(mut ints: Vec<BigInt>) -> Vec<BigInt> {
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in &mut ints {
            *x /= &g;
        }
    }
    ints
}

/// Inequality `a·x <= b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Halfspace {
    pub normal: Point,
    pub offset: Rational,
}

impl Halfspace {
    pub fn new(normal: Point, offset: Rational) -> Self {
        Halfspace { normal, offset }
    }

    /// `b - a·x`: positive strictly inside, zero on the boundary.
    pub fn slack(&self, x: &[Rational]) -> Rational {
        &self.offset - dot(&self.normal, x)
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        !self.slack(x).is_negative()
    }

    /// Rescales to an integral primitive normal; the offset follows.
    pub fn normalized(&self) -> Self {
        let ints = primitive_integer_vector(&self.normal);
        let Some(k) = self
            .normal
            .iter()
            .zip(&ints)
            .find(|(x, _)| !x.is_zero())
            .map(|(x, i)| Rational::from_integer(i.clone()) / x)
        else {
            return self.clone();
        };
        Halfspace {
            normal: ints.into_iter().map(Rational::from_integer).collect(),
            offset: &self.offset * k,
        }
    }
}

impl fmt::Display for Halfspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.normal.iter().map(format_rational).collect();
        write!(f, "({})·x <= {}", terms.join(", "), format_rational(&self.offset))
    }
}
