//! Tropical curves through vertically stretched points, one for each marked
//! floor diagram, and the floor decomposition taking them back.

mod config;
mod construct;
mod decompose;
mod verify;

pub use config::{stretch_points, PointConfig};
pub use construct::{realize, realize_all, realize_stretched, ElevatorLine, FloorPath, Realization, RealizedClass};
pub use decompose::floor_decompose;
pub use verify::{edge_product, verify_realization, VerificationReport};
