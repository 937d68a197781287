use std::cmp::Ordering;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{LatticePolygon, LatticeVector};
use crate::rational::Point;

/// Bounded edge between two vertices; `direction` is primitive, from `from` to `to`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub from: usize,
    pub to: usize,
    pub weight: u64,
    pub direction: LatticeVector,
}

/// Unbounded edge leaving `base` in the primitive `direction`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ray {
    pub base: usize,
    pub direction: LatticeVector,
    pub weight: u64,
}

/// A weighted rational graph in the plane. Crossings of two edges are
/// ordinary 4-valent vertices.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct PlaneTropicalCurve {
    pub vertices: Vec<Point>,
    pub segments: Vec<Segment>,
    pub rays: Vec<Ray>,
}

/// Total order on nonzero directions by angle in `[0, 2π)`.
pub fn angle_cmp(a: LatticeVector, b: LatticeVector) -> Ordering {
    let half = |v: LatticeVector| u8::from(!(v.y > 0 || (v.y == 0 && v.x > 0)));
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&a.det(b)))
}

impl PlaneTropicalCurve {
    /// Weighted primitive directions `(w, u)` of the edges leaving each vertex.
    pub fn stars(&self) -> Vec<Vec<(u64, LatticeVector)>> {
        let mut star = vec![Vec::new(); self.vertices.len()];
        for s in &self.segments {
            star[s.from].push((s.weight, s.direction));
            star[s.to].push((s.weight, -s.direction));
        }
        for r in &self.rays {
            star[r.base].push((r.weight, r.direction));
        }
        star
    }

    /// `Σ w·u = 0` at every vertex.
    pub fn check_balancing(&self) -> bool {
        self.stars()
            .iter()
            .all(|star| star.iter().fold(LatticeVector::zero(), |acc, &(w, u)| acc + (w as i64) * u).is_zero())
    }

    /// Polygon traced by the rotated weighted ray directions in circular order,
    /// normalized so that its smallest vertex is the origin.
    pub fn newton_polygon_of(&self) -> Result<LatticePolygon> {
        if !self.check_balancing() {
            return Err(Error::NotClosed);
        }
        let mut rays: Vec<(u64, LatticeVector)> = self.rays.iter().map(|r| (r.weight, r.direction)).collect();
        rays.sort_by(|a, b| angle_cmp(a.1, b.1));
        let mut cur = LatticeVector::zero();
        let mut pts = Vec::with_capacity(rays.len());
        for (w, u) in rays {
            pts.push(cur);
            cur = cur + (w as i64) * u.perp();
        }
        if !cur.is_zero() {
            return Err(Error::NotClosed);
        }
        Ok(LatticePolygon::new(pts)?.normalized_translation())
    }

    /// The curve moved by `t`.
    pub fn translate(&self, t: &Point) -> PlaneTropicalCurve {
        PlaneTropicalCurve {
            vertices: self.vertices.iter().map(|p| p.add(t)).collect(),
            segments: self.segments.clone(),
            rays: self.rays.clone(),
        }
    }

    /// Tropical line with vertex at `p`.
    pub fn line(p: Point) -> PlaneTropicalCurve {
        PlaneTropicalCurve {
            vertices: vec![p],
            segments: vec![],
            rays: [(-1, 0), (0, -1), (1, 1)]
                .into_iter()
                .map(|(x, y)| Ray { base: 0, direction: LatticeVector::new(x, y), weight: 1 })
                .collect(),
        }
    }
}

#[derive(Serialize)]
struct CurveJson<'a> {
    vertices: &'a [Point],
    segments: &'a [Segment],
    rays: &'a [Ray],
    newton: Option<LatticePolygon>,
}

impl Serialize for PlaneTropicalCurve {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CurveJson {
            vertices: &self.vertices,
            segments: &self.segments,
            rays: &self.rays,
            newton: self.newton_polygon_of().ok(),
        }
        .serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: i64, y: i64) -> LatticeVector {
        LatticeVector::new(x, y)
    }

    #[test]
    fn angle_order() {
        let mut ds = vec![v(0, -1), v(1, 1), v(-1, 0), v(1, 0), v(1, -1), v(0, 1)];
        ds.sort_by(|a, b| angle_cmp(*a, *b));
        assert_eq!(ds, vec![v(1, 0), v(1, 1), v(0, 1), v(-1, 0), v(0, -1), v(1, -1)]);
    }

    #[test]
    fn line_balancing_and_polygon() {
        let mut line = PlaneTropicalCurve::line(Point::origin());
        assert!(line.check_balancing());
        assert_eq!(line.newton_polygon_of().unwrap(), LatticePolygon::triangle(1).unwrap());
        line.rays[0].weight = 2;
        assert!(!line.check_balancing());
        assert_eq!(line.newton_polygon_of(), Err(Error::NotClosed));
    }

    #[test]
    fn tripled_rays_give_cubic_triangle() {
        let mut c = PlaneTropicalCurve::line(Point::origin());
        let rays = c.rays.clone();
        c.rays = rays.iter().flat_map(|r| std::iter::repeat_n(r.clone(), 3)).collect();
        // Three copies of each ray from one point are still balanced.
        assert_eq!(c.newton_polygon_of().unwrap(), LatticePolygon::triangle(3).unwrap());
    }
}
