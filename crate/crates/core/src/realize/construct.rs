use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::diagram::{
    check_marking, enumerate_diagrams, enumerate_markings, DiagramSpec, Element, FloorDiagram, LabelKind, Marking,
};
use crate::error::{Error, Result};
use crate::lattice::LatticeVector;
use crate::rational::{int, serde_rational, Point, Rational};
use crate::realize::config::{stretch_points, PointConfig};
use crate::tropical::{ParamEdge, ParamEnd, ParametrizedCurve};

/// Doublings of the spacing tried before giving up.
const MAX_DOUBLINGS: usize = 10;

/// A floor as a graph over the transverse axis: its vertices in order and
/// the slopes of its pieces in the normalized frame, `slopes[0] = θ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FloorPath {
    pub floor: u32,
    pub vertices: Vec<usize>,
    pub slopes: Vec<i64>,
}

/// The line carrying the image of a diagram edge. `lower`/`upper` are curve
/// vertices, `None` meaning the elevator runs off to infinity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElevatorLine {
    pub edge: usize,
    #[serde(with = "serde_rational")]
    pub transverse: Rational,
    pub weight: u64,
    pub lower: Option<usize>,
    pub upper: Option<usize>,
}

/// A tropical curve built from a marked floor diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Realization {
    pub curve: ParametrizedCurve,
    pub floor_paths: Vec<FloorPath>,
    pub elevator_lines: Vec<ElevatorLine>,
}

/// One marked class together with its curve.
#[derive(Debug, Clone, Serialize)]
pub struct RealizedClass {
    pub diagram: FloorDiagram,
    pub marking: Marking,
    pub realization: Realization,
}

enum Kind {
    Finite(u32, u32),
    Bottom(u32),
    Top(u32),
}

fn edge_kind(d: &FloorDiagram, i: usize) -> Kind {
    let e = &d.edges[i];
    if d.inf_minus.contains(&e.from) {
        Kind::Bottom(e.to)
    } else if d.inf_plus.contains(&e.to) {
        Kind::Top(e.from)
    } else {
        Kind::Finite(e.from, e.to)
    }
}

/// Builds the curve of `(d, m)` through `cfg`: each elevator sits on the
/// vertical line of its label, each floor bends by `±w` where it meets an
/// elevator and is moved along the direction until it contains its point.
pub fn realize(d: &FloorDiagram, m: &Marking, cfg: &PointConfig, spec: &DiagramSpec) -> Result<Realization> {
    check_marking(d, spec, m)?;
    let s = spec.point_count();
    if cfg.points.len() != s
        || cfg.omega_minus.len() != spec.alpha_minus().size() as usize
        || cfg.omega_plus.len() != spec.alpha_plus().size() as usize
        || cfg.direction != spec.direction()
    {
        return Err(Error::Invalid("point configuration does not fit the spec".into()));
    }
    let b = cfg.frame()?;
    let pts = cfg.normalized_points()?;
    let point_of = |label: i64| -> Option<&Point> {
        matches!(spec.label_kind(label), LabelKind::Free).then(|| &pts[(label - 1) as usize])
    };
    let mut edge_label = vec![0i64; d.edges.len()];
    let mut floor_label = BTreeMap::new();
    for (&label, el) in &m.labels {
        match *el {
            Element::Edge(i) => edge_label[i] = label,
            Element::Floor(id) => {
                floor_label.insert(id, label);
            }
        }
    }
    let xs: Vec<Rational> = edge_label
        .iter()
        .map(|&label| match spec.label_kind(label) {
            LabelKind::Free => pts[(label - 1) as usize].x.clone(),
            LabelKind::AlphaMinus(_) => cfg.omega_minus[(label - spec.first_label()) as usize].clone(),
            LabelKind::AlphaPlus(_) => cfg.omega_plus[(label - s as i64 - 1) as usize].clone(),
        })
        .collect();
    let distinct: HashSet<&Rational> =
        pts.iter().map(|p| &p.x).chain(&cfg.omega_minus).chain(&cfg.omega_plus).collect();
    if distinct.len() < pts.len() + cfg.omega_minus.len() + cfg.omega_plus.len() {
        return Err(Error::Invalid("transverse coordinates are not distinct".into()));
    }

    let mut vertices: Vec<Point> = Vec::new();
    let mut floor_paths = Vec::new();
    let mut edges = Vec::new();
    let mut ends = Vec::new();
    // Vertex where edge `i` meets its lower and upper floor.
    let mut lower = vec![None; d.edges.len()];
    let mut upper = vec![None; d.edges.len()];
    for floor in &d.floors {
        let mut attached: Vec<(Rational, i64, usize)> = (0..d.edges.len())
            .filter_map(|i| match edge_kind(d, i) {
                Kind::Finite(a, _) | Kind::Top(a) if a == floor.id => Some((xs[i].clone(), -(d.edges[i].w as i64), i)),
                Kind::Finite(_, c) | Kind::Bottom(c) if c == floor.id => Some((xs[i].clone(), d.edges[i].w as i64, i)),
                _ => None,
            })
            .collect();
        if attached.is_empty() {
            return Err(Error::Internal(format!("floor {} meets no elevator", floor.id)));
        }
        attached.sort();
        let mut slopes = vec![floor.theta];
        for (_, dw, _) in &attached {
            slopes.push(slopes.last().expect("nonempty") + dw);
        }
        // Heights relative to the first vertex, then shifted through the anchor.
        let mut rel = vec![int(0)];
        for k in 1..attached.len() {
            let dx = &attached[k].0 - &attached[k - 1].0;
            rel.push(&rel[k - 1] + dx * int(slopes[k]));
        }
        let anchor = floor_label
            .get(&floor.id)
            .and_then(|&l| point_of(l))
            .ok_or_else(|| Error::InvalidMarking(format!("floor {} does not carry a base point", floor.id)))?;
        let k = attached.partition_point(|a| a.0 < anchor.x);
        let at_anchor = if k == 0 {
            &rel[0] + (&anchor.x - &attached[0].0) * int(slopes[0])
        } else {
            &rel[k - 1] + (&anchor.x - &attached[k - 1].0) * int(slopes[k])
        };
        let shift = &anchor.y - at_anchor;
        let first = vertices.len();
        for ((x, dw, i), r) in attached.iter().zip(rel) {
            let v = vertices.len();
            vertices.push(Point::new(x.clone(), r + &shift));
            if *dw > 0 {
                upper[*i] = Some(v);
            } else {
                lower[*i] = Some(v);
            }
        }
        let ids: Vec<usize> = (first..vertices.len()).collect();
        for (k, w) in ids.windows(2).enumerate() {
            edges.push(ParamEdge { from: w[0], to: w[1], direction: LatticeVector::new(1, slopes[k + 1]), weight: 1 });
        }
        ends.push(ParamEnd { base: first, direction: LatticeVector::new(-1, -floor.theta), weight: 1 });
        let last_slope = *slopes.last().expect("nonempty");
        ends.push(ParamEnd { base: vertices.len() - 1, direction: LatticeVector::new(1, last_slope), weight: 1 });
        floor_paths.push(FloorPath { floor: floor.id, vertices: ids, slopes });
    }

    let too_small = |what: String| Err(Error::SpacingTooSmall(what));
    let mut elevator_lines = Vec::new();
    for i in 0..d.edges.len() {
        let w = d.edges[i].w;
        let (lo, hi) = (lower[i], upper[i]);
        let y = |v: Option<usize>| v.map(|v| vertices[v].y.clone());
        if let (Some(a), Some(c)) = (y(lo), y(hi)) {
            if a >= c {
                return too_small(format!("elevator {i} runs downwards"));
            }
        }
        if let Some(p) = point_of(edge_label[i]) {
            if y(lo).is_some_and(|a| a >= p.y) || y(hi).is_some_and(|c| c <= p.y) {
                return too_small(format!("elevator {i} misses its point"));
            }
        }
        match (lo, hi) {
            (Some(a), Some(c)) => {
                edges.push(ParamEdge { from: a, to: c, direction: LatticeVector::new(0, 1), weight: w })
            }
            (None, Some(c)) => ends.push(ParamEnd { base: c, direction: LatticeVector::new(0, -1), weight: w }),
            (Some(a), None) => ends.push(ParamEnd { base: a, direction: LatticeVector::new(0, 1), weight: w }),
            (None, None) => return Err(Error::Internal(format!("edge {i} touches no floor"))),
        }
        elevator_lines.push(ElevatorLine { edge: i, transverse: xs[i].clone(), weight: w, lower: lo, upper: hi });
    }

    let back = b.inverse();
    let curve = ParametrizedCurve {
        vertices: vertices.iter().map(|p| p.transform(&back.0)).collect(),
        edges: edges.into_iter().map(|e| ParamEdge { direction: back.apply(e.direction), ..e }).collect(),
        ends: ends.into_iter().map(|e| ParamEnd { direction: back.apply(e.direction), ..e }).collect(),
    };
    Ok(Realization { curve, floor_paths, elevator_lines })
}

/// Realizes `(d, m)` on the points of `seed`, doubling the spacing while the
/// configuration is not stretched enough.
pub fn realize_stretched(
    d: &FloorDiagram,
    m: &Marking,
    spec: &DiagramSpec,
    seed: u64,
) -> Result<(PointConfig, Realization)> {
    let mut cfg = stretch_points(spec, seed)?;
    for _ in 0..MAX_DOUBLINGS {
        match realize(d, m, &cfg, spec) {
            Err(Error::SpacingTooSmall(_)) => cfg = cfg.with_spacing(&cfg.spacing * int(2))?,
            other => return other.map(|r| (cfg, r)),
        }
    }
    realize(d, m, &cfg, spec).map(|r| (cfg, r))
}

/// Every marked class of `spec` realized on one common configuration.
pub fn realize_all(spec: &DiagramSpec, seed: u64) -> Result<(PointConfig, Vec<RealizedClass>)> {
    let mut classes = Vec::new();
    for d in enumerate_diagrams(spec) {
        for m in enumerate_markings(&d, spec)? {
            classes.push((d.clone(), m));
        }
    }
    let mut cfg = stretch_points(spec, seed)?;
    for attempt in 0..=MAX_DOUBLINGS {
        let out: Result<Vec<RealizedClass>> = classes
            .par_iter()
            .map(|(d, m)| {
                let realization = realize(d, m, &cfg, spec)?;
                Ok(RealizedClass { diagram: d.clone(), marking: m.clone(), realization })
            })
            .collect();
        match out {
            Err(Error::SpacingTooSmall(_)) if attempt < MAX_DOUBLINGS => {
                cfg = cfg.with_spacing(&cfg.spacing * int(2))?;
            }
            other => return other.map(|r| (cfg, r)),
        }
    }
    unreachable!("the last attempt returns")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::NSeq;
    use crate::realize::verify_realization;

    #[test]
    fn line_through_two_points() {
        let spec = DiagramSpec::plane(1, 0, NSeq::empty(), NSeq::new(vec![1])).unwrap();
        let (cfg, all) = realize_all(&spec, 5).unwrap();
        assert_eq!(all.len(), 1);
        let c = &all[0].realization.curve;
        assert_eq!(c.vertices.len(), 1);
        let mut dirs: Vec<_> = c.ends.iter().map(|e| e.direction).collect();
        dirs.sort();
        assert_eq!(dirs, vec![LatticeVector::new(-1, 0), LatticeVector::new(0, -1), LatticeVector::new(1, 1)]);
        // The tail's point lies straight below the vertex.
        let v = &c.vertices[0];
        assert!(cfg.points.iter().any(|p| p.x == v.x && p.y < v.y));
        let r = &all[0];
        assert!(verify_realization(&r.realization, &r.diagram, &r.marking, &cfg, &spec).passed());
    }

    #[test]
    fn insufficient_spacing_is_reported() {
        let spec = DiagramSpec::plane(3, 0, NSeq::empty(), NSeq::new(vec![3])).unwrap();
        let d = enumerate_diagrams(&spec).into_iter().next().unwrap();
        let m = enumerate_markings(&d, &spec).unwrap().remove(0);
        let cfg = stretch_points(&spec, 1).unwrap().with_spacing(Rational::new(1.into(), 1_000_000.into())).unwrap();
        assert!(matches!(realize(&d, &m, &cfg, &spec), Err(Error::SpacingTooSmall(_))));
        assert!(realize_stretched(&d, &m, &spec, 1).is_ok());
    }
}
