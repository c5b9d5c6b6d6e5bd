//! Rank-2 integer sublattices of Z² and the modular color forms they carry.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub type Point = (i64, i64);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("lattice basis is singular")]
    SingularLattice,
    #[error("lattice index {size} exceeds the bound {bound}")]
    SizeBound { size: usize, bound: usize },
    #[error("cannot parse lattice {0:?}; expected \"u=a,b;v=c,d\"")]
    Parse(String),
}

/// Default bound on the number of coset representatives.
pub const DEFAULT_COSET_BOUND: usize = 4096;

/// A full-rank sublattice of Z², stored in Hermite form `u = (n1, 0)`,
/// `v = (m, n2)` with `n1, n2 > 0` and `0 <= m < n1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lattice2D {
    n1: i64,
    m: i64,
    n2: i64,
}

fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.signum() * a, a.signum(), 0)
    } else {
        let (g, s, t) = egcd(b, a.rem_euclid(b));
        // a = q*b + r
        let q = a.div_euclid(b);
        (g, t, s - q * t)
    }
}

impl Lattice2D {
    /// Lattice generated by `u` and `v`.
    pub fn new(u: Point, v: Point) -> Result<Lattice2D, LatticeError> {
        let (a, b) = u;
        let (c, d) = v;
        let det = a * d - b * c;
        if det == 0 {
            return Err(LatticeError::SingularLattice);
        }
        // combine u, v unimodularly so the second vector has y = gcd(b, d)
        let (g, s, t) = egcd(b, d);
        let (s, t, g) = if g < 0 { (-s, -t, -g) } else { (s, t, g) };
        let wx = s * a + t * c;
        let n1 = (det / g).abs();
        Ok(Lattice2D { n1, m: wx.rem_euclid(n1), n2: g })
    }

    pub fn u(&self) -> Point {
        (self.n1, 0)
    }

    pub fn v(&self) -> Point {
        (self.m, self.n2)
    }

    pub fn index(&self) -> usize {
        (self.n1 * self.n2) as usize
    }

    /// Canonical representative of `p + L`: `0 <= y < n2`, `0 <= x < n1`.
    pub fn reduce(&self, p: Point) -> Point {
        let t = p.1.div_euclid(self.n2);
        let x = p.0 - t * self.m;
        let y = p.1 - t * self.n2;
        (x.rem_euclid(self.n1), y)
    }

    pub fn contains(&self, p: Point) -> bool {
        self.reduce(p) == (0, 0)
    }

    /// Is every vector of `self` in `other`?
    pub fn is_sublattice_of(&self, other: &Lattice2D) -> bool {
        other.contains(self.u()) && other.contains(self.v())
    }

    /// Dense index of a representative within `cosets()`.
    pub fn coset_index(&self, p: Point) -> usize {
        let (x, y) = self.reduce(p);
        (y * self.n1 + x) as usize
    }

    /// All coset representatives, ordered by `(y, x)`.
    pub fn cosets(&self, bound: usize) -> Result<Vec<Point>, LatticeError> {
        if self.index() > bound {
            return Err(LatticeError::SizeBound { size: self.index(), bound });
        }
        Ok((0..self.n2).flat_map(|y| (0..self.n1).map(move |x| (x, y))).collect())
    }

    /// `self ∩ other`, found as the Hermite form of the common vectors.
    pub fn intersect(&self, other: &Lattice2D) -> Lattice2D {
        // the intersection contains lcm-scaled copies of both bases, so a
        // search over the y-period and x-period is finite
        let l = self.index() as i64 * other.index() as i64;
        let n2 = (1..=l)
            .find(|&y| (0..l).any(|x| self.contains((x, y)) && other.contains((x, y))))
            .unwrap();
        let m = (0..l).find(|&x| self.contains((x, n2)) && other.contains((x, n2))).unwrap();
        let n1 = (1..=l).find(|&x| self.contains((x, 0)) && other.contains((x, 0))).unwrap();
        Lattice2D::new((n1, 0), (m, n2)).unwrap()
    }

    /// Lattice of points whose value under `a·x + b·y` vanishes mod `q`.
    pub fn kernel(q: i64, a: i64, b: i64) -> Lattice2D {
        let g = Lattice2D::new((q, 0), (0, q)).unwrap();
        let n2 = (1..=q).find(|&y| (0..q).any(|x| (a * x + b * y).rem_euclid(q) == 0)).unwrap();
        let m = (0..q).find(|&x| (a * x + b * n2).rem_euclid(q) == 0).unwrap();
        let n1 = (1..=q).find(|&x| (a * x).rem_euclid(q) == 0).unwrap();
        let k = Lattice2D::new((n1, 0), (m, n2)).unwrap();
        debug_assert!(g.is_sublattice_of(&k));
        k
    }
}

impl fmt::Display for Lattice2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u={},{};v={},{}", self.n1, 0, self.m, self.n2)
    }
}

fn parse_pair(s: &str) -> Option<Point> {
    let (a, b) = s.split_once(',')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

impl FromStr for Lattice2D {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || LatticeError::Parse(s.to_string());
        let (us, vs) = s.split_once(';').ok_or_else(bad)?;
        let u = parse_pair(us.trim().strip_prefix("u=").ok_or_else(bad)?).ok_or_else(bad)?;
        let v = parse_pair(vs.trim().strip_prefix("v=").ok_or_else(bad)?).ok_or_else(bad)?;
        Lattice2D::new(u, v)
    }
}

impl Serialize for Lattice2D {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Lattice2D {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Affine color form `offset(role) + x_coeff·x + y_coeff·y (mod modulus)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorForm {
    pub modulus: i64,
    pub x_coeff: i64,
    pub y_coeff: i64,
    pub offsets: Vec<(&'static str, i64)>,
}

impl ColorForm {
    /// The five-color form of the square tiling.
    pub fn square() -> ColorForm {
        ColorForm {
            modulus: 5,
            x_coeff: 1,
            y_coeff: 2,
            offsets: vec![("vertex", 2), ("h", 0), ("v", 3), ("face", 1)],
        }
    }

    /// The seven-color form of the triangular tiling (anti-diagonal frame).
    pub fn triangular() -> ColorForm {
        ColorForm {
            modulus: 7,
            x_coeff: 1,
            y_coeff: 5,
            offsets: vec![("vertex", 0), ("h", 4), ("v", 6), ("d", 3), ("up", 2), ("down", 4)],
        }
    }

    /// The triangular form carried to the main-diagonal frame by the shear
    /// `(x, y) -> (x - y, y)`. The shear sends main verticals to
    /// anti-diagonals and main diagonals to verticals, hence the offsets.
    pub fn triangular_main() -> ColorForm {
        ColorForm {
            modulus: 7,
            x_coeff: 1,
            y_coeff: 4,
            offsets: vec![("vertex", 0), ("h", 4), ("v", 2), ("d", 6), ("up", 2), ("down", 3)],
        }
    }

    pub fn linear(&self, p: Point) -> i64 {
        (self.x_coeff * p.0 + self.y_coeff * p.1).rem_euclid(self.modulus)
    }

    pub fn offset(&self, role: &str) -> Option<i64> {
        self.offsets.iter().find(|(r, _)| *r == role).map(|&(_, o)| o)
    }

    pub fn eval(&self, role: &str, p: Point) -> Option<u8> {
        self.offset(role).map(|o| (o + self.linear(p)).rem_euclid(self.modulus) as u8)
    }

    pub fn kernel(&self) -> Lattice2D {
        Lattice2D::kernel(self.modulus, self.x_coeff, self.y_coeff)
    }
}

/// Does the form vanish on both basis vectors (so the coloring descends to
/// the quotient by `l`)?
pub fn kernel_check(f: &ColorForm, l: &Lattice2D) -> bool {
    f.linear(l.u()) == 0 && f.linear(l.v()) == 0
}
