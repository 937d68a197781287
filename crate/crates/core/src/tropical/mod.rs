//! Max-plus polynomials and plane tropical curves: corner loci, dual
//! subdivisions, Legendre transforms, genus, multiplicities and intersections.

mod curve;
mod genus;
mod intersection;
mod legendre;
mod locus;
pub(crate) mod parametrized;
mod polynomial;

pub use curve::{angle_cmp, PlaneTropicalCurve, Ray, Segment};
pub use genus::{delta_invariant, geometric_genus, vertex_tile, VertexTile};
pub use intersection::{stable_intersection, stable_intersection_generic};
pub use legendre::{legendre_transform, AffinePiece, HalfPlane, LegendreTransform};
pub use locus::{check_duality, corner_locus, DualSubdivision};
pub use parametrized::{separate_nodes, ParamEdge, ParamEnd, ParametrizedCurve};
pub use polynomial::TropicalPolynomial;
