//! Legendre–Fenchel transform of functions on finite sets of lattice points.
//!
//! `f^∨(p) = max_x { p·x − f(x) }` is the max-plus polynomial with
//! coefficients `−f`; its linearity domains are indexed by the vertices of
//! the lower convex hull of the graph of `f`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{LatticePolygon, LatticeVector};
use crate::rational::{int, one, serde_rational, Point, Rational};
use crate::tropical::locus::upper_faces;

/// The closed half-plane `normal·p ≥ bound` of the dual plane.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HalfPlane {
    pub normal: LatticeVector,
    #[serde(with = "serde_rational")]
    pub bound: Rational,
}

impl HalfPlane {
    pub fn contains(&self, p: &Point) -> bool {
        p.dot(self.normal) >= self.bound
    }
}

/// `p ↦ exponent·p + constant` on the intersection of `domain`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AffinePiece {
    pub exponent: LatticeVector,
    #[serde(with = "serde_rational")]
    pub constant: Rational,
    pub domain: Vec<HalfPlane>,
}

impl AffinePiece {
    pub fn eval(&self, p: &Point) -> Rational {
        &self.constant + p.dot(self.exponent)
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.domain.iter().all(|h| h.contains(p))
    }
}

/// The transform as a list of affine pieces whose domains cover the plane.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LegendreTransform {
    pub pieces: Vec<AffinePiece>,
    #[serde(skip)]
    source: Source,
}

/// Lower hull of the graph of `f`, kept for the bi-transform.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Source {
    Point(LatticeVector, Rational),
    /// Lower hull vertices along a line, in order.
    Line(Vec<(LatticeVector, Rational)>),
    /// Cells of the lower hull with the affine function `c + λ·x` on each.
    Plane(Vec<(LatticePolygon, (Rational, Rational), Rational)>),
}

/// Legendre transform of `f`.
pub fn legendre_transform(f: &BTreeMap<LatticeVector, Rational>) -> Result<LegendreTransform> {
    let pts: Vec<LatticeVector> = f.keys().copied().collect();
    let Some(&first) = pts.first() else {
        return Err(Error::Invalid("empty domain".into()));
    };
    let piece = |x: LatticeVector, neighbours: &BTreeSet<LatticeVector>| AffinePiece {
        exponent: x,
        constant: -f[&x].clone(),
        domain: neighbours.iter().map(|&y| HalfPlane { normal: x - y, bound: &f[&x] - &f[&y] }).collect(),
    };
    let direction = pts.iter().map(|&p| p - first).find(|v| !v.is_zero());
    let Some(direction) = direction else {
        return Ok(LegendreTransform {
            pieces: vec![piece(first, &BTreeSet::new())],
            source: Source::Point(first, f[&first].clone()),
        });
    };
    if pts.iter().all(|&p| (p - first).det(direction) == 0) {
        // Points are collinear and sorted along the line already.
        let mut hull: Vec<(LatticeVector, Rational)> = Vec::new();
        for &p in &pts {
            let fp = f[&p].clone();
            while hull.len() >= 2 {
                let (a, fa) = &hull[hull.len() - 2];
                let (b, fb) = &hull[hull.len() - 1];
                let (ab, ap) = (int((*b - *a).content()), int((p - *a).content()));
                // Drop b unless it lies strictly below the chord from a to p.
                if (fb - fa) * &ap >= (&fp - fa) * &ab {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push((p, fp));
        }
        let pieces = (0..hull.len())
            .map(|i| {
                let nb: BTreeSet<LatticeVector> = [i.checked_sub(1), Some(i + 1)]
                    .into_iter()
                    .flatten()
                    .filter_map(|j| hull.get(j))
                    .map(|h| h.0)
                    .collect();
                piece(hull[i].0, &nb)
            })
            .collect();
        return Ok(LegendreTransform { pieces, source: Source::Line(hull) });
    }
    let terms: Vec<(LatticeVector, Rational)> = f.iter().map(|(&x, v)| (x, -v.clone())).collect();
    let mut neighbours: BTreeMap<LatticeVector, BTreeSet<LatticeVector>> = BTreeMap::new();
    let mut cells = Vec::new();
    for face in upper_faces(&terms) {
        let cell = LatticePolygon::hull(&face.points)?;
        for (a, b) in cell.edges() {
            neighbours.entry(a).or_default().insert(b);
            neighbours.entry(b).or_default().insert(a);
        }
        cells.push((cell, face.lambda, face.offset));
    }
    let pieces = neighbours.iter().map(|(&x, nb)| piece(x, nb)).collect();
    Ok(LegendreTransform { pieces, source: Source::Plane(cells) })
}

impl LegendreTransform {
    /// `max` over the pieces, which equals `f^∨(p)`.
    pub fn evaluate(&self, p: &Point) -> Rational {
        self.pieces.iter().map(|piece| piece.eval(p)).max().expect("nonempty")
    }

    /// Indices of the pieces whose domain contains `p`.
    pub fn pieces_at(&self, p: &Point) -> Vec<usize> {
        (0..self.pieces.len()).filter(|&i| self.pieces[i].contains(p)).collect()
    }

    /// `f^∨∨(x)`: the lower convex envelope of `f` at `x`, or `None` when `x`
    /// lies outside the convex hull of the domain, where it is infinite.
    pub fn bi_transform_at(&self, x: &Point) -> Option<Rational> {
        match &self.source {
            Source::Point(p, v) => (*x == Point::from_ints(p.x, p.y)).then(|| v.clone()),
            Source::Line(hull) => hull.windows(2).find_map(|w| {
                let ((a, fa), (b, fb)) = (&w[0], &w[1]);
                let t = x.param_along(&Point::from_ints(a.x, a.y), *b - *a)?;
                (t <= one()).then(|| fa + (fb - fa) * t)
            }),
            Source::Plane(cells) => cells.iter().find_map(|(cell, lambda, offset)| {
                contains(cell, x).then(|| -(offset + &lambda.0 * &x.x + &lambda.1 * &x.y))
            }),
        }
    }
}

fn contains(cell: &LatticePolygon, x: &Point) -> bool {
    cell.edges().all(|(a, b)| {
        let rel = x.sub(&Point::from_ints(a.x, a.y));
        rel.cross(b - a) <= Rational::zero()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn v(x: i64, y: i64) -> LatticeVector {
        LatticeVector::new(x, y)
    }

    fn func(entries: &[((i64, i64), i64)]) -> BTreeMap<LatticeVector, Rational> {
        entries.iter().map(|&((x, y), a)| (v(x, y), int(a))).collect()
    }

    #[test]
    fn single_point() {
        let t = legendre_transform(&func(&[((0, 0), 0)])).unwrap();
        assert_eq!(t.pieces.len(), 1);
        assert!(t.pieces[0].domain.is_empty());
        assert_eq!(t.evaluate(&Point::from_ints(5, -3)), int(0));
        assert_eq!(t.bi_transform_at(&Point::origin()), Some(int(0)));
        assert_eq!(t.bi_transform_at(&Point::from_ints(1, 0)), None);
    }

    #[test]
    fn two_points_split_along_axis() {
        let t = legendre_transform(&func(&[((0, 0), 0), ((1, 0), 0)])).unwrap();
        assert_eq!(t.pieces.len(), 2);
        assert_eq!(t.pieces_at(&Point::from_ints(-1, 7)), vec![0]);
        assert_eq!(t.pieces_at(&Point::from_ints(1, 7)), vec![1]);
        assert_eq!(t.pieces_at(&Point::from_ints(0, 2)), vec![0, 1]);
        assert_eq!(t.evaluate(&Point::from_ints(3, 1)), int(3));
        assert_eq!(t.bi_transform_at(&Point::new(rat(1, 2), int(0))), Some(int(0)));
    }

    #[test]
    fn collinear_point_above_hull_is_dropped() {
        let t = legendre_transform(&func(&[((0, 0), 0), ((1, 1), 5), ((2, 2), 0)])).unwrap();
        assert_eq!(t.pieces.len(), 2);
        assert_eq!(t.bi_transform_at(&Point::from_ints(1, 1)), Some(int(0)));
    }

    #[test]
    fn square_domains_match_subdivision() {
        // f = −a for max{0, x, y, x+y+1}.
        let f = func(&[((0, 0), 0), ((1, 0), 0), ((0, 1), 0), ((1, 1), -1)]);
        let t = legendre_transform(&f).unwrap();
        assert_eq!(t.pieces.len(), 4);
        let corner = t.pieces.iter().find(|p| p.exponent == v(0, 0)).unwrap();
        // (0,0) borders (1,0), (0,1) and (1,1) across the diagonal.
        assert_eq!(corner.domain.len(), 3);
        let side = t.pieces.iter().find(|p| p.exponent == v(1, 0)).unwrap();
        assert_eq!(side.domain.len(), 2);
        // Envelope of f is f at the corners and −1/2 at the centre.
        for (x, fx) in &f {
            assert_eq!(t.bi_transform_at(&Point::from_ints(x.x, x.y)).as_ref(), Some(fx));
        }
        assert_eq!(t.bi_transform_at(&Point::new(rat(1, 2), rat(1, 2))), Some(rat(-1, 2)));
        assert_eq!(t.bi_transform_at(&Point::from_ints(2, 0)), None);
    }

    #[test]
    fn domains_cover_and_agree() {
        let f = func(&[((0, 0), 3), ((2, 0), 1), ((0, 2), 0), ((1, 1), 0), ((2, 2), 4)]);
        let t = legendre_transform(&f).unwrap();
        for x in -4..=4 {
            for y in -4..=4 {
                let p = Point::new(rat(x, 3), rat(y, 2));
                let value = t.evaluate(&p);
                let at = t.pieces_at(&p);
                assert!(!at.is_empty());
                assert!(at.iter().all(|&i| t.pieces[i].eval(&p) == value));
            }
        }
    }
}
