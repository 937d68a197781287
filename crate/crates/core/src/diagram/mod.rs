//! Floor diagrams: validation, exhaustive generation, markings and the count.

mod canon;
mod count;
mod enumerate;
mod graph;
mod marking;
mod spec;

pub use canon::{automorphism_count, canonical_key, is_isomorphic, CanonKey};
pub use count::{count, count_explain, lemma_1_5_check, multiplicity, weighted_card_check, CountBreakdown, CountRow};
pub use enumerate::enumerate_diagrams;
pub use graph::{check_marking, validate, DiagramEdge, Element, Floor, FloorDiagram, Marking, Violation};
pub use marking::{enumerate_markings, enumerate_markings_limited, marking_count};
pub use spec::{DiagramSpec, LabelKind, NSeq};

/// First Betti number of a connected diagram.
pub fn diagram_genus(d: &FloorDiagram) -> crate::Result<i64> {
    d.genus()
}
