use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::polygon::LatticePolygon;
use crate::lattice::vector::{LatticePoint, LatticeVector, Sl2};

/// Which part of the boundary an edge belongs to, relative to a direction `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
    Top,
    Bottom,
}

/// Classifies the counterclockwise edge `p → q` relative to `d`.
pub fn edge_side(p: LatticePoint, q: LatticePoint, d: LatticeVector) -> Side {
    let e = q - p;
    let outward = LatticeVector::new(e.y, -e.x);
    let s = outward.dot(d.perp());
    if s > 0 {
        Side::Left
    } else if s < 0 {
        Side::Right
    } else if outward.dot(d) > 0 {
        Side::Top
    } else {
        Side::Bottom
    }
}

/// Left/right direction lists and heights of a transverse polygon.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DirectionData {
    pub d: LatticeVector,
    /// Sorted multiset of left directions.
    pub d_left: Vec<LatticeVector>,
    /// Sorted multiset of right directions.
    pub d_right: Vec<LatticeVector>,
    pub d_plus: i64,
    pub d_minus: i64,
    pub d_height: i64,
}

impl DirectionData {
    /// Slopes `m` of the left directions `(1, m)` after sending `d` to `(0, 1)`, sorted.
    pub fn left_slopes(&self) -> Vec<i64> {
        normalized_slopes(&self.d_left, self.d)
    }

    /// Slopes of the right directions in the normalized frame, sorted.
    pub fn right_slopes(&self) -> Vec<i64> {
        normalized_slopes(&self.d_right, self.d)
    }
}

fn normalized_slopes(list: &[LatticeVector], d: LatticeVector) -> Vec<i64> {
    let b = Sl2::normalizing(d).expect("direction is primitive");
    let mut out: Vec<i64> = list
        .iter()
        .map(|&v| {
            let w = b.apply(v);
            debug_assert_eq!(w.x, 1, "transverse directions normalize to (1, m)");
            w.y
        })
        .collect();
    out.sort();
    out
}

/// True iff every left/right boundary edge pairs unimodularly with `perp(d)`.
pub fn is_transverse(poly: &LatticePolygon, d: LatticeVector) -> bool {
    if !d.is_primitive() {
        return false;
    }
    let dp = d.perp();
    poly.edges().all(|(p, q)| match edge_side(p, q, d) {
        Side::Left | Side::Right => (q - p).primitive().det(dp).abs() == 1,
        _ => true,
    })
}

/// Direction lists, top/bottom lengths and height of `poly` relative to `d`.
pub fn direction_data(poly: &LatticePolygon, d: LatticeVector) -> Result<DirectionData> {
    d.require_primitive()?;
    if !is_transverse(poly, d) {
        return Err(Error::NotTransverse(d.x, d.y));
    }
    let dp = d.perp();
    let mut left = Vec::new();
    let mut right = Vec::new();
    let (mut d_plus, mut d_minus) = (0, 0);
    for (p, q) in poly.edges() {
        let e = q - p;
        let len = e.content();
        match edge_side(p, q, d) {
            side @ (Side::Left | Side::Right) => {
                let down = if e.dot(d) < 0 { e } else { -e };
                let u = down.primitive();
                debug_assert_eq!(dp.det(u), 1);
                let list = if side == Side::Left { &mut left } else { &mut right };
                list.extend(std::iter::repeat_n(u.perp(), len as usize));
            }
            Side::Top => d_plus += len,
            Side::Bottom => d_minus += len,
        }
    }
    left.sort();
    right.sort();
    let data = DirectionData { d, d_height: left.len() as i64, d_left: left, d_right: right, d_plus, d_minus };
    if data.d_left.len() != data.d_right.len() || 2 * data.d_height + d_plus + d_minus != poly.boundary_points() {
        return Err(Error::Internal("direction data violates the boundary count".into()));
    }
    Ok(data)
}

/// Rebuilds the polygon (up to translation) from normalized slopes and the
/// top/bottom lengths, then maps it back to the frame where `d` is the given
/// direction.
pub fn polygon_from_slopes(
    d: LatticeVector,
    left_slopes: &[i64],
    right_slopes: &[i64],
    d_minus: i64,
    d_plus: i64,
) -> Result<LatticePolygon> {
    let b = Sl2::normalizing(d)?;
    let mut l = left_slopes.to_vec();
    let mut r = right_slopes.to_vec();
    l.sort();
    r.sort();
    let mut steps: Vec<LatticeVector> = Vec::new();
    steps.push(LatticeVector::new(d_minus, 0));
    steps.extend(r.iter().map(|&m| LatticeVector::new(-m, 1)));
    steps.push(LatticeVector::new(-d_plus, 0));
    steps.extend(l.iter().map(|&m| LatticeVector::new(m, -1)));
    let mut cur = LatticeVector::zero();
    let mut pts = Vec::with_capacity(steps.len());
    for s in steps {
        pts.push(cur);
        cur = cur + s;
    }
    if !cur.is_zero() {
        return Err(Error::NotClosed);
    }
    let normalized = LatticePolygon::new(pts)?;
    // The polygon lives in the dual plane, so it transforms by B^{-T}; undo with B^T.
    Ok(normalized.transform(&b.transpose()))
}

/// Primitive directions with coordinates in `[-bound, bound]` for which the
/// polygon is transverse, one representative per pair `±d`.
pub fn transverse_directions(poly: &LatticePolygon, bound: i64) -> Vec<LatticeVector> {
    let mut out = Vec::new();
    for x in 0..=bound {
        for y in -bound..=bound {
            let d = LatticeVector::new(x, y);
            if (x == 0 && y <= 0) || !d.is_primitive() {
                continue;
            }
            if is_transverse(poly, d) {
                out.push(d);
            }
        }
    }
    out
}
