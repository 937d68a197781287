//! δ-invariant and geometric genus of curves whose dual tiles are triangles
//! and parallelograms.

use crate::error::{Error, Result};
use crate::lattice::LatticeVector;
use crate::tropical::curve::PlaneTropicalCurve;
use crate::tropical::parametrized::{chains, is_crossing, separate_nodes, ChainEnd, Piece};

/// Local contribution of a vertex, read off its dual tile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexTile {
    /// Dual triangle with its double area and interior point count.
    Triangle { double_area: u64, interior: u64 },
    /// Dual parallelogram with its area.
    Parallelogram { area: u64 },
}

/// Classifies the dual tile of a vertex from its weighted star.
pub fn vertex_tile(star: &[(u64, LatticeVector)]) -> Result<VertexTile> {
    let scaled = |i: usize| (star[i].0 as i64) * star[i].1;
    match star.len() {
        3 => {
            let double_area = scaled(0).det(scaled(1)).unsigned_abs();
            let boundary: u64 = star.iter().map(|&(w, _)| w).sum();
            // Pick: 2A = 2i + b − 2.
            Ok(VertexTile::Triangle { double_area, interior: (double_area + 2 - boundary) / 2 })
        }
        4 if is_crossing(star) => {
            let other = (1..4).find(|&i| star[i].1.det(star[0].1) != 0).expect("two lines");
            Ok(VertexTile::Parallelogram { area: scaled(0).det(scaled(other)).unsigned_abs() })
        }
        n => Err(Error::UnsupportedShape(format!("vertex of valence {n} is neither a triangle nor a crossing"))),
    }
}

/// Rejects curves in which two edges overlap along a segment.
fn check_reduced(c: &PlaneTropicalCurve) -> Result<()> {
    let pieces: Vec<Piece> = c
        .segments
        .iter()
        .map(|s| Piece::segment(&c.vertices[s.from], &c.vertices[s.to], s.direction, s.weight))
        .chain(c.rays.iter().map(|r| Piece::ray(&c.vertices[r.base], r.direction, r.weight)))
        .collect();
    for i in 0..pieces.len() {
        for j in i + 1..pieces.len() {
            if let Some(Err(())) = pieces[i].meet_params(&pieces[j]) {
                return Err(Error::NonReduced);
            }
        }
    }
    Ok(())
}

/// `Σ (w − 1)` over finite straight chains, plus parallelogram areas, plus
/// interior points of dual triangles.
pub fn delta_invariant(c: &PlaneTropicalCurve) -> Result<u64> {
    check_reduced(c)?;
    let mut delta = 0;
    for star in c.stars() {
        delta += match vertex_tile(&star)? {
            VertexTile::Triangle { interior, .. } => interior,
            VertexTile::Parallelogram { area } => area,
        };
    }
    for ch in chains(c) {
        if let (ChainEnd::Vertex(_), ChainEnd::Vertex(_)) = ch.ends {
            delta += ch.weight - 1;
        }
    }
    Ok(delta)
}

/// `p_a(Δ) − δ(C)`, checked against `1 − t + a` on the curve with its
/// crossings separated.
pub fn geometric_genus(c: &PlaneTropicalCurve) -> Result<i64> {
    let delta = delta_invariant(c)? as i64;
    let pa = c.newton_polygon_of()?.interior_points();
    let separated = separate_nodes(c)?;
    if !separated.is_connected() {
        return Err(Error::Reducible);
    }
    let (t, a) = (separated.vertices.len() as i64, separated.edges.len() as i64);
    let abstract_genus = 1 - t + a;
    if pa - delta != abstract_genus {
        return Err(Error::Internal(format!(
            "genus mismatch: p_a − δ = {} but 1 − t + a = {abstract_genus}",
            pa - delta
        )));
    }
    Ok(abstract_genus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::rational::Point;
    use crate::tropical::curve::{Ray, Segment};
    use crate::tropical::{corner_locus, TropicalPolynomial};

    fn v(x: i64, y: i64) -> LatticeVector {
        LatticeVector::new(x, y)
    }

    fn ray(base: usize, x: i64, y: i64, weight: u64) -> Ray {
        Ray { base, direction: v(x, y), weight }
    }

    #[test]
    fn tiles() {
        let line = [(1, v(-1, 0)), (1, v(0, -1)), (1, v(1, 1))];
        assert_eq!(vertex_tile(&line).unwrap(), VertexTile::Triangle { double_area: 1, interior: 0 });
        // Dual triangle (0,0),(3,0),(0,3)... scaled down: T with one interior point.
        let fat = [(1, v(-1, -1)), (1, v(2, -1)), (1, v(-1, 2))];
        assert_eq!(vertex_tile(&fat).unwrap(), VertexTile::Triangle { double_area: 3, interior: 1 });
        let cross = [(2, v(0, 1)), (2, v(0, -1)), (1, v(1, 0)), (1, v(-1, 0))];
        assert_eq!(vertex_tile(&cross).unwrap(), VertexTile::Parallelogram { area: 2 });
        let star4 = [(1, v(1, 0)), (1, v(0, 1)), (1, v(-1, 0)), (1, v(0, -1)), (0, v(1, 1))];
        assert!(vertex_tile(&star4).is_err());
    }

    #[test]
    fn fat_triangle_curve() {
        let c = PlaneTropicalCurve {
            vertices: vec![Point::origin()],
            segments: vec![],
            rays: vec![ray(0, -1, -1, 1), ray(0, 2, -1, 1), ray(0, -1, 2, 1)],
        };
        assert_eq!(delta_invariant(&c).unwrap(), 1);
        assert_eq!(geometric_genus(&c).unwrap(), 0);
    }

    #[test]
    fn overlapping_edges_are_not_reduced() {
        let c = PlaneTropicalCurve {
            vertices: vec![Point::origin(), Point::from_ints(1, 0)],
            segments: vec![Segment { from: 0, to: 1, weight: 1, direction: v(1, 0) }],
            rays: vec![ray(0, 1, 0, 1), ray(0, -1, 0, 2), ray(1, 0, 1, 1), ray(1, 0, -1, 1)],
        };
        assert_eq!(delta_invariant(&c), Err(Error::NonReduced));
    }

    /// Lift with a dominant convex term in `j`, so that cells stay between
    /// consecutive rows, and row profiles `q[j]`.
    fn strips(q: &[&[i64]]) -> TropicalPolynomial {
        let terms = q.iter().enumerate().flat_map(|(j, row)| {
            row.iter().enumerate().map(move |(i, &f)| (v(i as i64, j as i64), int(-(100 * (j * j) as i64 + f))))
        });
        TropicalPolynomial::new(terms).unwrap()
    }

    #[test]
    fn weight_two_segment_cubic() {
        let (c, _) = corner_locus(&strips(&[&[0, 1, 3, 7], &[0, 0, 0], &[0, 1], &[0]])).unwrap();
        assert!(c.segments.iter().any(|s| s.weight == 2));
        assert_eq!(delta_invariant(&c).unwrap(), 1);
        assert_eq!(geometric_genus(&c).unwrap(), 0);
    }

    #[test]
    fn fat_triangle_cubic() {
        let a = [((0, 0), -29), ((1, 0), -7), ((2, 0), -4), ((3, 0), -4), ((0, 1), -15)];
        let b = [((1, 1), -100), ((2, 1), -1), ((0, 2), -12), ((1, 2), -10), ((0, 3), -24)];
        let p = TropicalPolynomial::new(a.iter().chain(&b).map(|&((x, y), c)| (v(x, y), int(c)))).unwrap();
        let (c, sub) = corner_locus(&p).unwrap();
        assert!(sub.cells.iter().any(|t| t.interior_points() == 1));
        assert!(c.segments.iter().all(|s| s.weight == 1));
        assert_eq!(delta_invariant(&c).unwrap(), 1);
        assert_eq!(geometric_genus(&c).unwrap(), 0);
    }

    #[test]
    fn crossing_weight_two_quartic() {
        let (c, sub) = corner_locus(&strips(&[&[0, 1, 3, 7, 15], &[0, 0, 0, 5], &[0, 0, 0], &[0, 1], &[0]])).unwrap();
        assert!(sub.cells.iter().any(|t| t.vertices().len() == 4 && t.double_area() == 4));
        assert_eq!(c.newton_polygon_of().unwrap().interior_points(), 3);
        assert_eq!(delta_invariant(&c).unwrap(), 3);
        assert_eq!(geometric_genus(&c).unwrap(), 0);
    }
}
