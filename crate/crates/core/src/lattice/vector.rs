use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A vector (or point) of the integer lattice Z².
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LatticeVector {
    pub x: i64,
    pub y: i64,
}

/// Lattice points and lattice vectors share one representation.
pub type LatticePoint = LatticeVector;

impl LatticeVector {
    pub const fn new(x: i64, y: i64) -> Self {
        LatticeVector { x, y }
    }

    pub const fn zero() -> Self {
        LatticeVector { x: 0, y: 0 }
    }

    pub fn is_zero(self) -> bool {
        self.x == 0 && self.y == 0
    }

    /// `det(self, other) = x·y' − y·x'`.
    pub fn det(self, other: LatticeVector) -> i64 {
        self.x * other.y - self.y * other.x
    }

    pub fn dot(self, other: LatticeVector) -> i64 {
        self.x * other.x + self.y * other.y
    }

    /// Rotation by +π/2: `(x, y) ↦ (−y, x)`.
    pub fn perp(self) -> LatticeVector {
        LatticeVector::new(-self.y, self.x)
    }

    /// `gcd(|x|, |y|)`, the integral length of the vector.
    pub fn content(self) -> i64 {
        self.x.gcd(&self.y)
    }

    pub fn is_primitive(self) -> bool {
        self.content() == 1
    }

    /// The primitive vector pointing the same way. Panics on the zero vector.
    pub fn primitive(self) -> LatticeVector {
        let g = self.content();
        assert!(g > 0, "zero vector has no primitive direction");
        LatticeVector::new(self.x / g, self.y / g)
    }

    /// Errors with `NotPrimitive` unless the vector is primitive.
    pub fn require_primitive(self) -> Result<LatticeVector> {
        if self.is_primitive() {
            Ok(self)
        } else {
            Err(Error::NotPrimitive(self.x, self.y))
        }
    }

    pub fn apply(self, m: &Sl2) -> LatticeVector {
        m.apply(self)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Add for LatticeVector {
    type Output = LatticeVector;
    fn add(self, o: LatticeVector) -> LatticeVector {
        LatticeVector::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for LatticeVector {
    type Output = LatticeVector;
    fn sub(self, o: LatticeVector) -> LatticeVector {
        LatticeVector::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector::new(-self.x, -self.y)
    }
}

impl Mul<LatticeVector> for i64 {
    type Output = LatticeVector;
    fn mul(self, v: LatticeVector) -> LatticeVector {
        LatticeVector::new(self * v.x, self * v.y)
    }
}

/// Number of lattice points on the segment `[p, q]` minus one.
pub fn integral_length(p: LatticePoint, q: LatticePoint) -> i64 {
    (q - p).content()
}

/// An integer 2×2 matrix of determinant ±1, stored row-major.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Sl2(pub [[i64; 2]; 2]);

impl Sl2 {
    pub const IDENTITY: Sl2 = Sl2([[1, 0], [0, 1]]);

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Sl2> {
        let det = a * d - b * c;
        if det.abs() != 1 {
            return Err(Error::Invalid(format!("matrix determinant {det} is not ±1")));
        }
        Ok(Sl2([[a, b], [c, d]]))
    }

    pub fn det(&self) -> i64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn apply(&self, v: LatticeVector) -> LatticeVector {
        let m = &self.0;
        LatticeVector::new(m[0][0] * v.x + m[0][1] * v.y, m[1][0] * v.x + m[1][1] * v.y)
    }

    pub fn compose(&self, other: &Sl2) -> Sl2 {
        let (a, b) = (&self.0, &other.0);
        let mut out = [[0i64; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Sl2(out)
    }

    pub fn inverse(&self) -> Sl2 {
        let m = &self.0;
        let det = self.det();
        Sl2([[m[1][1] * det, -m[0][1] * det], [-m[1][0] * det, m[0][0] * det]])
    }

    pub fn transpose(&self) -> Sl2 {
        let m = &self.0;
        Sl2([[m[0][0], m[1][0]], [m[0][1], m[1][1]]])
    }

    /// The determinant-one map `B = [[b, −a], [s, t]]` with `B·d = (0, 1)`,
    /// where `d = (a, b)` is primitive and `s·a + t·b = 1`.
    pub fn normalizing(d: LatticeVector) -> Result<Sl2> {
        d.require_primitive()?;
        let g = d.x.extended_gcd(&d.y);
        // g.gcd may be −1 for negative inputs; flip the Bézout pair then.
        let (s, t) = if g.gcd == 1 { (g.x, g.y) } else { (-g.x, -g.y) };
        let m = Sl2([[d.y, -d.x], [s, t]]);
        debug_assert_eq!(m.apply(d), LatticeVector::new(0, 1));
        debug_assert_eq!(m.det(), 1);
        Ok(m)
    }
}

/// Cyclic quotient singularity type `(order, k)` of a polygon corner whose
/// inward edge directions are `u_prime` and `u_second`.
pub fn vertex_singularity(u_prime: LatticeVector, u_second: LatticeVector) -> Result<(i64, i64)> {
    u_prime.require_primitive()?;
    u_second.require_primitive()?;
    let order = u_prime.det(u_second);
    if order <= 0 {
        return Err(Error::NonPositiveDeterminant(order));
    }
    if order == 1 {
        return Ok((1, 0));
    }
    // Solve q + k·p ≡ 0 (mod order) with p = perp(u'), q = −perp(u'').
    let p = u_prime.perp();
    let q = -u_second.perp();
    let g = p.x.extended_gcd(&p.y);
    let (a, b) = if g.gcd == 1 { (g.x, g.y) } else { (-g.x, -g.y) };
    let lq = a * q.x + b * q.y;
    let k = (-lq).rem_euclid(order);
    debug_assert_eq!((q.x + k * p.x).rem_euclid(order), 0);
    debug_assert_eq!((q.y + k * p.y).rem_euclid(order), 0);
    Ok((order, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integral_length_examples() {
        let v = LatticeVector::new;
        assert_eq!(integral_length(v(0, 0), v(3, 0)), 3);
        assert_eq!(integral_length(v(0, 0), v(2, 4)), 2);
        assert_eq!(integral_length(v(2, 2), v(0, 0)), 2);
        assert_eq!(integral_length(v(1, 1), v(1, 1)), 0);
    }

    #[test]
    fn perp_has_positive_determinant() {
        let v = LatticeVector::new(3, -2);
        assert_eq!(v.det(v.perp()), 13);
        assert!(!LatticeVector::zero().is_primitive());
        assert!(LatticeVector::new(0, -1).is_primitive());
    }

    #[test]
    fn singularity_examples() {
        let v = LatticeVector::new;
        for r in 1..6 {
            assert_eq!(vertex_singularity(v(-r, 1), v(-1, 0)).unwrap(), (1, 0));
            let expected = if r == 1 { (1, 0) } else { (r, 1) };
            assert_eq!(vertex_singularity(v(0, -1), v(r, -1)).unwrap(), expected);
        }
        assert_eq!(vertex_singularity(v(1, 1), v(-1, 2)).unwrap(), (3, 2));
        assert_eq!(vertex_singularity(v(2, 1), v(1, 2)).unwrap(), (3, 2));
    }

    #[test]
    fn singularity_errors() {
        let v = LatticeVector::new;
        assert_eq!(vertex_singularity(v(-1, 0), v(0, 1)), Err(Error::NonPositiveDeterminant(-1)));
        assert_eq!(vertex_singularity(v(2, 0), v(0, 1)), Err(Error::NotPrimitive(2, 0)));
    }

    #[test]
    fn normalizing_map_sends_direction_up() {
        for d in [(0, 1), (1, 0), (1, 1), (1, -1), (-2, 3), (3, -5), (0, -1)] {
            let d = LatticeVector::new(d.0, d.1);
            let b = Sl2::normalizing(d).unwrap();
            assert_eq!(b.apply(d), LatticeVector::new(0, 1));
            assert_eq!(b.det(), 1);
            assert_eq!(b.compose(&b.inverse()), Sl2::IDENTITY);
        }
        assert_eq!(Sl2::normalizing(LatticeVector::new(0, 1)).unwrap(), Sl2::IDENTITY);
        assert!(Sl2::normalizing(LatticeVector::new(2, 2)).is_err());
    }
}
