//! Multiplicities and the weighted count of marked floor diagrams.

use rayon::prelude::*;
use serde::Serialize;

use crate::diagram::enumerate::enumerate_diagrams;
use crate::diagram::graph::{EdgeKind, FloorDiagram};
use crate::diagram::marking::marking_count;
use crate::diagram::spec::DiagramSpec;
use crate::error::{Error, Result};

/// `I^{β^+} I^{β^−} · Π w(e)²` over the finite edges; independent of the marking.
pub fn multiplicity(d: &FloorDiagram, spec: &DiagramSpec) -> Result<u128> {
    let ix = d.indexed().map_err(|v| Error::Invalid(format!("malformed diagram: {v:?}")))?;
    let fin: u128 =
        ix.edges.iter().filter(|(k, _)| matches!(k, EdgeKind::Finite(..))).map(|&(_, w)| (w as u128).pow(2)).product();
    Ok(spec.beta_factor() * fin)
}

/// One row of the per-diagram breakdown.
#[derive(Debug, Clone, Serialize)]
pub struct CountRow {
    pub diagram: FloorDiagram,
    pub markings: u128,
    pub multiplicity: u128,
    pub contribution: u128,
}

/// The count together with its per-diagram contributions, in canonical order.
#[derive(Debug, Clone, Serialize)]
pub struct CountBreakdown {
    pub total: u128,
    pub rows: Vec<CountRow>,
}

/// Per-diagram breakdown of [`count`].
pub fn count_explain(spec: &DiagramSpec) -> Result<CountBreakdown> {
    let diagrams = enumerate_diagrams(spec);
    let rows = diagrams
        .into_par_iter()
        .map(|diagram| {
            let markings = marking_count(&diagram, spec)?;
            let multiplicity = multiplicity(&diagram, spec)?;
            Ok(CountRow { contribution: markings * multiplicity, diagram, markings, multiplicity })
        })
        .collect::<Result<Vec<_>>>()?;
    let total = rows.iter().map(|r| r.contribution).sum();
    Ok(CountBreakdown { total, rows })
}

/// Number of curves of the spec's genus and Newton polygon through a generic
/// configuration, as the weighted sum over marked floor diagrams.
pub fn count(spec: &DiagramSpec) -> Result<u128> {
    count_explain(spec).map(|b| b.total)
}

/// Floor count `d` and `Card(D) = 2d + g − 1 + Card(Vert^{−∞})` for a diagram
/// of a plane spec of degree `d`.
pub fn lemma_1_5_check(d: &FloorDiagram, degree: i64, genus: i64) -> bool {
    d.floors.len() as i64 == degree && d.element_count() as i64 == 2 * degree + genus - 1 + d.inf_minus.len() as i64
}

/// `Card_w(D) = Card(∂Δ_Z) + g − 1`, where infinite edges count with their weights.
pub fn weighted_card_check(d: &FloorDiagram, spec: &DiagramSpec) -> bool {
    let Ok(ix) = d.indexed() else { return false };
    let card_w_edges: u64 = ix.edges.iter().map(|&(k, w)| if matches!(k, EdgeKind::Finite(..)) { 1 } else { w }).sum();
    ix.n() as i64 + card_w_edges as i64 == spec.polygon().boundary_points() + spec.genus() as i64 - 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::spec::NSeq;

    #[test]
    fn plane_cubic_counts() {
        let s = DiagramSpec::plane(3, 0, NSeq::empty(), NSeq::new(vec![3])).unwrap();
        let b = count_explain(&s).unwrap();
        assert_eq!(b.total, 12);
        let mut marks: Vec<u128> = b.rows.iter().map(|r| r.markings).collect();
        marks.sort();
        assert_eq!(marks, vec![1, 3, 5]);
        let s = DiagramSpec::plane(3, 0, NSeq::empty(), NSeq::new(vec![1, 1])).unwrap();
        assert_eq!(count(&s).unwrap(), 36);
        let s = DiagramSpec::plane(3, 0, NSeq::new(vec![0, 1]), NSeq::new(vec![1])).unwrap();
        assert_eq!(count(&s).unwrap(), 10);
        let s = DiagramSpec::plane(3, 1, NSeq::empty(), NSeq::new(vec![3])).unwrap();
        assert_eq!(count(&s).unwrap(), 1);
    }

    #[test]
    fn line_count() {
        let s = DiagramSpec::plane(1, 0, NSeq::empty(), NSeq::new(vec![1])).unwrap();
        assert_eq!(count(&s).unwrap(), 1);
    }
}
