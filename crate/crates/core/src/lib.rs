//! Chains of tangent circles inscribed in the vertex angles of triangles and
//! convex polygons.
//!
//! The crate builds such chains in Cartesian coordinates, reduces the
//! triangle case to a piecewise-linear interval map whose orbits are
//! eventually periodic, certifies periods and pre-periods (in floating point
//! and in exact rational arithmetic), solves the Malfatti configuration, and
//! ships reproducible experiment drivers plus CSV/JSON/SVG reporting.

pub mod chain;
pub mod error;
pub mod experiments;
pub mod geom;
pub mod oracles;
pub mod plmap;
pub mod polygon;
pub mod report;
pub mod scenario;
pub mod svg;
pub mod triangle;

pub use chain::{
    circle_from_phi, circle_from_radius, circle_from_u, run_chain, AngleCircle, ChainRecord,
    ChainStep, Choice, Policy, SignCase, Tangency, Termination,
};
pub use error::{Error, Result};
pub use geom::Point;
pub use plmap::{OrbitReport, PlParams};
pub use polygon::ConvexPolygon;
pub use triangle::Triangle;
