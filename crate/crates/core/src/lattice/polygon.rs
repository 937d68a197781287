use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::vector::{integral_length, vertex_singularity, LatticePoint, LatticeVector, Sl2};

/// Position of a lattice point relative to a polygon.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Interior,
    Boundary,
    Exterior,
}

/// A convex lattice polygon with counterclockwise vertices, no three
/// consecutive vertices collinear. The first vertex is the lexicographically
/// smallest one, so equal polygons have equal vertex lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PolygonJson", into = "PolygonJson")]
pub struct LatticePolygon {
    vertices: Vec<LatticePoint>,
}

#[derive(Serialize, Deserialize)]
struct PolygonJson {
    vertices: Vec<[i64; 2]>,
}

impl TryFrom<PolygonJson> for LatticePolygon {
    type Error = Error;
    fn try_from(j: PolygonJson) -> Result<Self> {
        LatticePolygon::new(j.vertices.iter().map(|v| LatticeVector::new(v[0], v[1])).collect())
    }
}

impl From<LatticePolygon> for PolygonJson {
    fn from(p: LatticePolygon) -> Self {
        PolygonJson { vertices: p.vertices.iter().map(|v| [v.x, v.y]).collect() }
    }
}

/// Twice the signed area of a closed vertex loop.
fn signed_double_area(vs: &[LatticePoint]) -> i64 {
    let n = vs.len();
    (0..n).map(|i| vs[i].det(vs[(i + 1) % n])).sum()
}

/// Counterclockwise convex hull without collinear points (monotone chain).
fn hull_ccw(points: &[LatticePoint]) -> Vec<LatticePoint> {
    let mut pts: Vec<LatticePoint> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: LatticePoint, a: LatticePoint, b: LatticePoint| (a - o).det(b - o);
    let mut lower: Vec<LatticePoint> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<LatticePoint> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

impl LatticePolygon {
    /// Builds a polygon from its vertices in cyclic order. Clockwise input is
    /// reversed and vertices in the middle of an edge are dropped.
    pub fn new(vertices: Vec<LatticePoint>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::DegeneratePolygon(format!("{} vertices", vertices.len())));
        }
        let mut vs = vertices;
        let area = signed_double_area(&vs);
        if area == 0 {
            return Err(Error::DegeneratePolygon("zero area".into()));
        }
        if area < 0 {
            vs.reverse();
        }
        // Drop repeated and collinear intermediate vertices.
        let mut cleaned: Vec<LatticePoint> = Vec::with_capacity(vs.len());
        let n = vs.len();
        for i in 0..n {
            let prev = vs[(i + n - 1) % n];
            let cur = vs[i];
            let next = vs[(i + 1) % n];
            if cur == next {
                continue;
            }
            let turn = (cur - prev).det(next - cur);
            let straight = turn == 0 && (cur - prev).dot(next - cur) > 0;
            if !straight {
                cleaned.push(cur);
            }
        }
        let hull = hull_ccw(&cleaned);
        if hull.len() != cleaned.len() {
            return Err(Error::NotConvex);
        }
        let poly = Self::from_ccw(hull);
        let rotated = Self::from_ccw(cleaned);
        if poly != rotated {
            return Err(Error::NotConvex);
        }
        Ok(poly)
    }

    /// Convex hull of an arbitrary point set.
    pub fn hull(points: &[LatticePoint]) -> Result<Self> {
        let h = hull_ccw(points);
        if h.len() < 3 {
            return Err(Error::DegeneratePolygon("points are collinear".into()));
        }
        Ok(Self::from_ccw(h))
    }

    fn from_ccw(mut vs: Vec<LatticePoint>) -> Self {
        let start = vs.iter().enumerate().min_by_key(|(_, v)| **v).map(|(i, _)| i).unwrap_or(0);
        vs.rotate_left(start);
        LatticePolygon { vertices: vs }
    }

    /// The triangle `T_d` with vertices (0,0), (d,0), (0,d).
    pub fn triangle(d: i64) -> Result<Self> {
        Self::new(vec![LatticeVector::new(0, 0), LatticeVector::new(d, 0), LatticeVector::new(0, d)])
    }

    /// The trapezium `Tz^r_{a,b}`: height `a`, width `b + (a − y)·r` at height `y`.
    pub fn trapezium(r: i64, a: i64, b: i64) -> Result<Self> {
        if r < 0 || a <= 0 || b < 0 {
            return Err(Error::Invalid(format!("trapezium parameters r={r}, a={a}, b={b}")));
        }
        Self::new(vec![
            LatticeVector::new(0, 0),
            LatticeVector::new(b + a * r, 0),
            LatticeVector::new(b, a),
            LatticeVector::new(0, a),
        ])
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    /// Edges `(v_i, v_{i+1})` in counterclockwise order.
    pub fn edges(&self) -> impl Iterator<Item = (LatticePoint, LatticePoint)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn double_area(&self) -> i64 {
        signed_double_area(&self.vertices)
    }

    pub fn boundary_points(&self) -> i64 {
        self.edges().map(|(p, q)| integral_length(p, q)).sum()
    }

    pub fn locate(&self, p: LatticePoint) -> Location {
        let mut on_edge = false;
        for (a, b) in self.edges() {
            let c = (b - a).det(p - a);
            if c < 0 {
                return Location::Exterior;
            }
            if c == 0 {
                on_edge = true;
            }
        }
        if on_edge {
            Location::Boundary
        } else {
            Location::Interior
        }
    }

    /// Bounding box `(min, max)`.
    pub fn bounding_box(&self) -> (LatticePoint, LatticePoint) {
        let xs = self.vertices.iter().map(|v| v.x);
        let ys = self.vertices.iter().map(|v| v.y);
        (
            LatticeVector::new(xs.clone().min().unwrap(), ys.clone().min().unwrap()),
            LatticeVector::new(xs.max().unwrap(), ys.max().unwrap()),
        )
    }

    /// All lattice points of the closed polygon, sorted.
    pub fn lattice_points(&self) -> Vec<LatticePoint> {
        let (lo, hi) = self.bounding_box();
        let mut out = Vec::new();
        for x in lo.x..=hi.x {
            for y in lo.y..=hi.y {
                let p = LatticeVector::new(x, y);
                if self.locate(p) != Location::Exterior {
                    out.push(p);
                }
            }
        }
        out
    }

    /// Interior lattice points, counted by direct enumeration.
    pub fn interior_points(&self) -> i64 {
        let (lo, hi) = self.bounding_box();
        let mut count = 0;
        for x in lo.x..=hi.x {
            for y in lo.y..=hi.y {
                if self.locate(LatticeVector::new(x, y)) == Location::Interior {
                    count += 1;
                }
            }
        }
        count
    }

    /// Arithmetic genus: the number of interior lattice points.
    pub fn p_a(&self) -> i64 {
        self.interior_points()
    }

    /// `2A = 2·interior + boundary − 2`.
    pub fn pick_identity(&self) -> bool {
        self.double_area() == 2 * self.interior_points() + self.boundary_points() - 2
    }

    /// Singularity type `(order, k)` at every vertex, in vertex order.
    pub fn singularities(&self) -> Vec<(i64, i64)> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let v = self.vertices[i];
                let u1 = (self.vertices[(i + 1) % n] - v).primitive();
                let u2 = (self.vertices[(i + n - 1) % n] - v).primitive();
                vertex_singularity(u1, u2).expect("convex polygon corners have positive determinant")
            })
            .collect()
    }

    pub fn translate(&self, t: LatticeVector) -> Self {
        Self::from_ccw(self.vertices.iter().map(|&v| v + t).collect())
    }

    /// Image under a unimodular map; orientation is restored if it flips.
    pub fn transform(&self, m: &Sl2) -> Self {
        let mut vs: Vec<LatticePoint> = self.vertices.iter().map(|&v| m.apply(v)).collect();
        if m.det() < 0 {
            vs.reverse();
        }
        Self::from_ccw(vs)
    }

    /// The translate whose smallest vertex is the origin.
    pub fn normalized_translation(&self) -> Self {
        self.translate(-self.vertices[0])
    }

    pub fn eq_up_to_translation(&self, other: &LatticePolygon) -> bool {
        self.normalized_translation() == other.normalized_translation()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(vs: &[(i64, i64)]) -> LatticePolygon {
        LatticePolygon::new(vs.iter().map(|&(x, y)| LatticeVector::new(x, y)).collect()).unwrap()
    }

    #[test]
    fn triangle_invariants() {
        for d in 1..=6 {
            let t = LatticePolygon::triangle(d).unwrap();
            assert_eq!(t.double_area(), d * d);
            assert_eq!(t.boundary_points(), 3 * d);
            assert_eq!(t.interior_points(), (d - 1) * (d - 2) / 2);
            assert!(t.pick_identity());
        }
        let t3 = LatticePolygon::triangle(3).unwrap();
        assert_eq!((t3.interior_points(), t3.boundary_points(), t3.double_area()), (1, 9, 9));
    }

    #[test]
    fn fixtures() {
        let square = poly(&[(0, 0), (1, 0), (1, 1), (0, 1)]);
        assert_eq!(square.double_area(), 2);
        let diamond = poly(&[(0, 1), (1, 0), (2, 1), (1, 2)]);
        assert_eq!((diamond.double_area(), diamond.interior_points(), diamond.boundary_points()), (4, 1, 4));
        let tz = LatticePolygon::trapezium(2, 3, 2).unwrap();
        assert_eq!(tz.interior_points(), 8);
        assert!(tz.pick_identity());
        let octic = poly(&[(0, 0), (1, 1), (3, -1), (2, -2)]);
        assert_eq!((octic.double_area(), octic.interior_points(), octic.boundary_points()), (8, 2, 6));
    }

    #[test]
    fn orientation_and_collinear_cleanup() {
        let cw = poly(&[(0, 0), (0, 2), (2, 0)]);
        let ccw = poly(&[(2, 0), (0, 2), (0, 0)]);
        assert_eq!(cw, ccw);
        let with_mid = poly(&[(0, 0), (1, 0), (2, 0), (0, 2)]);
        assert_eq!(with_mid.vertices().len(), 3);
        assert_eq!(with_mid, LatticePolygon::triangle(2).unwrap());
    }

    #[test]
    fn rejects_bad_input() {
        let v = |x, y| LatticeVector::new(x, y);
        assert!(matches!(LatticePolygon::new(vec![v(0, 0), v(1, 1), v(2, 2)]), Err(Error::DegeneratePolygon(_))));
        assert!(matches!(LatticePolygon::new(vec![v(0, 0), v(1, 1)]), Err(Error::DegeneratePolygon(_))));
        assert_eq!(LatticePolygon::new(vec![v(0, 0), v(4, 0), v(1, 1), v(0, 4)]), Err(Error::NotConvex));
        assert!(LatticePolygon::hull(&[v(0, 0), v(3, 3), v(1, 1)]).is_err());
    }

    #[test]
    fn singularity_report() {
        let tz = LatticePolygon::trapezium(3, 2, 1).unwrap();
        assert_eq!(tz.singularities(), vec![(1, 0); 4]);
        // b = 0 collapses the top edge into a 1/r(1,1) point.
        let wp = LatticePolygon::trapezium(3, 2, 0).unwrap();
        assert_eq!(wp.vertices().len(), 3);
        assert_eq!(wp.singularities(), vec![(1, 0), (1, 0), (3, 1)]);
        let tri = poly(&[(0, 0), (2, 1), (1, 2)]);
        assert_eq!(tri.singularities(), vec![(3, 2), (3, 2), (3, 2)]);
    }

    #[test]
    fn hull_matches_constructor() {
        let v = |x, y| LatticeVector::new(x, y);
        let pts = [v(0, 0), v(1, 0), v(2, 0), v(1, 1), v(0, 2), v(0, 1)];
        assert_eq!(LatticePolygon::hull(&pts).unwrap(), LatticePolygon::triangle(2).unwrap());
    }
}
