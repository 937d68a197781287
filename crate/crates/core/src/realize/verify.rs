use serde::Serialize;

use crate::diagram::{is_isomorphic, DiagramSpec, Element, FloorDiagram, LabelKind, Marking};
use crate::lattice::{LatticeVector, Sl2};
use crate::realize::config::PointConfig;
use crate::realize::construct::Realization;
use crate::realize::decompose::floor_decompose;
use crate::tropical::parametrized::Piece;
use crate::tropical::ParametrizedCurve;

/// Failed checks of a realization; empty when it passes.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub violations: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `∏ tails w · ∏ finite edges w²` of the diagram.
pub fn edge_product(d: &FloorDiagram) -> u128 {
    d.edges
        .iter()
        .map(|e| {
            let tail = d.inf_minus.contains(&e.from) || d.inf_plus.contains(&e.to);
            let w = e.w as u128;
            if tail {
                w
            } else {
                w * w
            }
        })
        .product()
}

fn pieces(c: &ParametrizedCurve) -> Vec<Piece> {
    c.edges
        .iter()
        .map(|e| Piece::segment(&c.vertices[e.from], &c.vertices[e.to], e.direction, e.weight))
        .chain(c.ends.iter().map(|r| Piece::ray(&c.vertices[r.base], r.direction, r.weight)))
        .collect()
}

/// Checks the realization against the diagram, marking, points and spec.
pub fn verify_realization(
    r: &Realization,
    d: &FloorDiagram,
    m: &Marking,
    cfg: &PointConfig,
    spec: &DiagramSpec,
) -> VerificationReport {
    let mut out = Vec::new();
    let c = &r.curve;
    if !c.check_balancing() {
        out.push("curve is not balanced".to_string());
    }
    if !c.check_geometry() {
        out.push("edge images disagree with their directions".to_string());
    }
    match c.genus() {
        Ok(g) if g == spec.genus() as i64 => {}
        Ok(g) => out.push(format!("source genus {g}, expected {}", spec.genus())),
        Err(e) => out.push(format!("source genus: {e}")),
    }

    let Ok(b) = Sl2::normalizing(spec.direction()) else {
        out.push("direction is not primitive".to_string());
        return VerificationReport { violations: out };
    };
    let back = b.inverse();
    let dir = spec.direction();
    let data = spec.direction_data();
    let mut expected: Vec<(LatticeVector, u64)> = Vec::new();
    expected.extend(data.left_slopes().iter().map(|&t| (back.apply(LatticeVector::new(-1, -t)), 1)));
    expected.extend(data.right_slopes().iter().map(|&t| (back.apply(LatticeVector::new(1, t)), 1)));
    expected.extend(spec.minus_weights().into_iter().map(|w| (-dir, w)));
    expected.extend(spec.plus_weights().into_iter().map(|w| (dir, w)));
    expected.sort();
    let mut ends: Vec<(LatticeVector, u64)> = c.ends.iter().map(|e| (e.direction, e.weight)).collect();
    ends.sort();
    if ends != expected {
        out.push(format!("unbounded ends {ends:?} do not match the polygon and tangency data {expected:?}"));
    }

    let ps = pieces(c);
    for (i, p) in cfg.points.iter().enumerate() {
        if !ps.iter().any(|piece| piece.param_of(p).is_some()) {
            out.push(format!("point {} at {p} is not on the curve", i + 1));
        }
    }
    for (&label, el) in &m.labels {
        let omega = match spec.label_kind(label) {
            LabelKind::Free => continue,
            LabelKind::AlphaMinus(_) => &cfg.omega_minus[(label - spec.first_label()) as usize],
            LabelKind::AlphaPlus(_) => &cfg.omega_plus[(label - spec.point_count() as i64 - 1) as usize],
        };
        let on_line = match el {
            Element::Edge(i) => r.elevator_lines.iter().any(|l| l.edge == *i && &l.transverse == omega),
            Element::Floor(_) => false,
        };
        if !on_line {
            out.push(format!("label {label} is not on its fixed line"));
        }
    }

    for (v, star) in c.stars().iter().enumerate() {
        for &(_, u) in star {
            if u != dir && u != -dir && u.det(dir).abs() != 1 {
                out.push(format!("floor piece {u:?} at vertex {v} is not unimodular against the direction"));
            }
        }
    }

    let product = edge_product(d);
    match c.tropical_multiplicity() {
        Ok(mu) if mu == product => {}
        Ok(mu) => out.push(format!("multiplicity {mu}, edge product {product}")),
        Err(e) => out.push(format!("multiplicity: {e}")),
    }

    match floor_decompose(c, dir) {
        Ok(back) if is_isomorphic(&back, d) => {}
        Ok(_) => out.push("floor decomposition differs from the diagram".to_string()),
        Err(e) => out.push(format!("floor decomposition: {e}")),
    }
    VerificationReport { violations: out }
}
