//! Counting curves on toric surfaces with floor diagrams, and the exact plane
//! tropical geometry behind them.
//!
//! * [`lattice`]: convex lattice polygons and their invariants.
//! * [`diagram`]: floor diagrams, markings and the curve count.
//! * [`tropical`]: max-plus polynomials, plane tropical curves, genus and intersections.
//! * [`realize`]: tropical curves through stretched point configurations.

pub mod diagram;
pub mod error;
pub mod lattice;
pub mod rational;
pub mod realize;
pub mod tropical;

pub use error::{Error, Result};
pub use lattice::{LatticePolygon, LatticeVector};
pub use rational::{Point, Rational};
