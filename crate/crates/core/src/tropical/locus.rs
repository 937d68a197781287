//! Corner loci through the upper hull of the lifted support.
//!
//! Under the max convention a term `a_I` is lifted to `(I, a_I)`; the
//! non-vertical faces of the upper hull project to the dual subdivision, and
//! the face with supporting plane `z = c + λ·I` is dual to the vertex `−λ`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{LatticePolygon, LatticeVector};
use crate::rational::{Point, Rational};
use crate::tropical::curve::{PlaneTropicalCurve, Ray, Segment};
use crate::tropical::polynomial::TropicalPolynomial;

/// Regular subdivision of the Newton polygon, dual to a corner locus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualSubdivision {
    /// Cell `i` is dual to vertex `i` of the curve.
    pub cells: Vec<LatticePolygon>,
    /// Interior edge dual to each segment, as `(p, q)`.
    pub segment_edges: Vec<(LatticeVector, LatticeVector)>,
    /// Boundary edge dual to each ray, as `(p, q)`.
    pub ray_edges: Vec<(LatticeVector, LatticeVector)>,
}

/// A non-vertical upper face: its slope `λ`, offset `c` and the lattice
/// points lying on it.
#[derive(Debug, Clone)]
pub(crate) struct Face {
    pub lambda: (Rational, Rational),
    pub offset: Rational,
    pub points: Vec<LatticeVector>,
}

/// Upper faces of `{(I, a_I)}`, sorted by the dual vertex `−λ`.
pub(crate) fn upper_faces(terms: &[(LatticeVector, Rational)]) -> Vec<Face> {
    let n = terms.len();
    let mut faces: BTreeMap<(Rational, Rational), Face> = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (pi, ai) = &terms[i];
                let (pj, aj) = &terms[j];
                let (pk, ak) = &terms[k];
                let (ej, ek) = (*pj - *pi, *pk - *pi);
                let det = ej.det(ek);
                if det == 0 {
                    continue;
                }
                let (dj, dk) = (aj - ai, ak - ai);
                let det_r = Rational::from_integer(det.into());
                let lx =
                    (&dj * Rational::from_integer(ek.y.into()) - &dk * Rational::from_integer(ej.y.into())) / &det_r;
                let ly =
                    (&dk * Rational::from_integer(ej.x.into()) - &dj * Rational::from_integer(ek.x.into())) / &det_r;
                if faces.contains_key(&(-&lx, -&ly)) {
                    continue;
                }
                let plane = Point::new(lx.clone(), ly.clone());
                let offset = ai - plane.dot(*pi);
                let mut on = Vec::new();
                let mut upper = true;
                for (p, a) in terms {
                    let h = &offset + plane.dot(*p);
                    if *a > h {
                        upper = false;
                        break;
                    }
                    if *a == h {
                        on.push(*p);
                    }
                }
                if upper {
                    faces.insert((-&lx, -&ly), Face { lambda: (lx, ly), offset, points: on });
                }
            }
        }
    }
    faces.into_values().collect()
}

/// Corner locus of `p` with its dual subdivision.
pub fn corner_locus(p: &TropicalPolynomial) -> Result<(PlaneTropicalCurve, DualSubdivision)> {
    p.newton_polygon()?;
    let terms: Vec<(LatticeVector, Rational)> = p.terms().iter().map(|(i, a)| (*i, a.clone())).collect();
    let faces = upper_faces(&terms);
    let vertices: Vec<Point> = faces.iter().map(|f| Point::new(-f.lambda.0.clone(), -f.lambda.1.clone())).collect();
    let cells: Vec<LatticePolygon> = faces.iter().map(|f| LatticePolygon::hull(&f.points)).collect::<Result<_>>()?;
    // Undirected cell edge -> cells containing it, with the edge as seen from each.
    type Side = (usize, LatticeVector, LatticeVector);
    let mut edge_cells: BTreeMap<(LatticeVector, LatticeVector), Vec<Side>> = BTreeMap::new();
    for (c, cell) in cells.iter().enumerate() {
        for (a, b) in cell.edges() {
            let key = if a < b { (a, b) } else { (b, a) };
            edge_cells.entry(key).or_default().push((c, a, b));
        }
    }
    let mut segments = Vec::new();
    let mut rays = Vec::new();
    let mut segment_edges = Vec::new();
    let mut ray_edges = Vec::new();
    for ((p0, q0), owners) in edge_cells {
        let (c, a, b) = owners[0];
        let e = b - a;
        let normal = LatticeVector::new(e.y, -e.x);
        let (u, w) = (normal.primitive(), e.content() as u64);
        match owners.len() {
            1 => {
                rays.push(Ray { base: c, direction: u, weight: w });
                ray_edges.push((p0, q0));
            }
            2 => {
                let other = owners[1].0;
                debug_assert!({
                    let diff = vertices[other].sub(&vertices[c]);
                    diff.cross(u).is_zero() && diff.dot(u) > Rational::zero()
                });
                segments.push(Segment { from: c, to: other, weight: w, direction: u });
                segment_edges.push((p0, q0));
            }
            _ => return Err(Error::Internal("an edge lies in more than two cells".into())),
        }
    }
    Ok((PlaneTropicalCurve { vertices, segments, rays }, DualSubdivision { cells, segment_edges, ray_edges }))
}

/// Each curve edge is orthogonal to its dual edge with weight equal to the
/// dual edge's integral length, and the cells tile `newton`.
pub fn check_duality(curve: &PlaneTropicalCurve, sub: &DualSubdivision, newton: &LatticePolygon) -> bool {
    let dual_ok = |u: LatticeVector, w: u64, (p, q): (LatticeVector, LatticeVector)| {
        let e = q - p;
        u.dot(e) == 0 && e.content() as u64 == w
    };
    let edges_ok = curve.segments.len() == sub.segment_edges.len()
        && curve.rays.len() == sub.ray_edges.len()
        && curve.segments.iter().zip(&sub.segment_edges).all(|(s, &e)| dual_ok(s.direction, s.weight, e))
        && curve.rays.iter().zip(&sub.ray_edges).all(|(r, &e)| dual_ok(r.direction, r.weight, e));
    let area: i64 = sub.cells.iter().map(LatticePolygon::double_area).sum();
    edges_ok && area == newton.double_area() && curve.vertices.len() == sub.cells.len()
}
