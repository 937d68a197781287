use std::collections::BTreeMap;

use crate::diagram::{DiagramEdge, Floor, FloorDiagram};
use crate::error::Result;
use crate::lattice::{LatticeVector, Sl2};
use crate::tropical::ParametrizedCurve;

/// Elevators are the edges mapped in direction `±d`; floors are the
/// connected components of what remains. Each elevator becomes a diagram edge
/// oriented along `d`, unbounded elevators become tails, and `θ` is the slope
/// of a floor's left end in the frame where `d = (0, 1)`.
///
/// No validity is assumed: on a curve that is not stretched, an elevator may
/// return to the floor it left, giving a loop that validation then rejects.
pub fn floor_decompose(c: &ParametrizedCurve, d: LatticeVector) -> Result<FloorDiagram> {
    let b = Sl2::normalizing(d)?;
    let up = LatticeVector::new(0, 1);
    let n = c.vertices.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for e in &c.edges {
        let u = b.apply(e.direction);
        if u != up && u != -up {
            let (x, y) = (find(&mut parent, e.from), find(&mut parent, e.to));
            parent[x] = y;
        }
    }
    // Floors numbered by their smallest vertex.
    let mut floor_of_root: BTreeMap<usize, u32> = BTreeMap::new();
    let mut floor_of = vec![0u32; n];
    for (v, slot) in floor_of.iter_mut().enumerate() {
        let r = find(&mut parent, v);
        let next = floor_of_root.len() as u32;
        *slot = *floor_of_root.entry(r).or_insert(next);
    }
    let count = floor_of_root.len();
    let mut theta: Vec<Option<i64>> = vec![None; count];
    for end in &c.ends {
        let u = b.apply(end.direction);
        if u.x < 0 {
            let t = &mut theta[floor_of[end.base] as usize];
            let slope = u.y.div_euclid(u.x);
            *t = Some(t.map_or(slope, |s: i64| s.min(slope)));
        }
    }
    let floors = (0..count).map(|i| Floor { id: i as u32, theta: theta[i].unwrap_or(0) }).collect();
    let mut next = count as u32;
    let (mut inf_minus, mut inf_plus, mut edges) = (Vec::new(), Vec::new(), Vec::new());
    for e in &c.edges {
        let u = b.apply(e.direction);
        let (a, z) = (floor_of[e.from], floor_of[e.to]);
        if u == up {
            edges.push(DiagramEdge { from: a, to: z, w: e.weight });
        } else if u == -up {
            edges.push(DiagramEdge { from: z, to: a, w: e.weight });
        }
    }
    for end in &c.ends {
        let u = b.apply(end.direction);
        let f = floor_of[end.base];
        if u == -up {
            inf_minus.push(next);
            edges.push(DiagramEdge { from: next, to: f, w: end.weight });
            next += 1;
        } else if u == up {
            inf_plus.push(next);
            edges.push(DiagramEdge { from: f, to: next, w: end.weight });
            next += 1;
        }
    }
    Ok(FloorDiagram { floors, inf_minus, inf_plus, edges })
}
