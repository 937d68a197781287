//! Stable intersection of two plane tropical curves in general position.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::rational::{rat, Point};
use crate::tropical::curve::PlaneTropicalCurve;
use crate::tropical::parametrized::Piece;

fn pieces(c: &PlaneTropicalCurve) -> Vec<Piece> {
    c.segments
        .iter()
        .map(|s| Piece::segment(&c.vertices[s.from], &c.vertices[s.to], s.direction, s.weight))
        .chain(c.rays.iter().map(|r| Piece::ray(&c.vertices[r.base], r.direction, r.weight)))
        .collect()
}

/// Crossing points of `c1` and `c2` with multiplicity `w1·w2·|det(u1, u2)|`,
/// sorted by point. Fails with `NonTransverse` when edges overlap or meet at
/// a vertex of either curve.
pub fn stable_intersection(c1: &PlaneTropicalCurve, c2: &PlaneTropicalCurve) -> Result<Vec<(Point, u64)>> {
    let mut out: BTreeMap<Point, u64> = BTreeMap::new();
    let second = pieces(c2);
    for p in pieces(c1) {
        for q in &second {
            match p.meet_params(q) {
                None => {}
                Some(Err(())) => return Err(Error::NonTransverse("edges overlap".into())),
                Some(Ok((s, t))) => {
                    let at = p.point_at(&s);
                    if p.is_end(&s) || q.is_end(&t) {
                        return Err(Error::NonTransverse(format!("curves meet at a vertex ({}, {})", at.x, at.y)));
                    }
                    let m = p.weight * q.weight * p.dir.det(q.dir).unsigned_abs();
                    *out.entry(at).or_default() += m;
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Translates `c2` by the first of a fixed sequence of small rational
/// vectors for which the intersection is transverse. Returns the translation
/// used along with the intersection.
pub fn stable_intersection_generic(
    c1: &PlaneTropicalCurve,
    c2: &PlaneTropicalCurve,
) -> Result<(Point, Vec<(Point, u64)>)> {
    let mut last = None;
    for k in 0..64 {
        let shift = if k == 0 { Point::origin() } else { Point::new(rat(k, 97), rat(k * k + 1, 89 * (k + 1))) };
        match stable_intersection(c1, &c2.translate(&shift)) {
            Ok(points) => return Ok((shift, points)),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one attempt"))
}
