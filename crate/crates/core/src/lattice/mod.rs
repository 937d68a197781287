//! Convex lattice polygons: integral lengths, areas, lattice point counts,
//! cyclic quotient singularities at the corners, transversality to a
//! direction and the left/right direction lists used by floor diagrams.

mod direction;
mod polygon;
mod vector;

pub use direction::{
    direction_data, edge_side, is_transverse, polygon_from_slopes, transverse_directions, DirectionData, Side,
};
pub use polygon::{LatticePolygon, Location};
pub use vector::{integral_length, vertex_singularity, LatticePoint, LatticeVector, Sl2};
