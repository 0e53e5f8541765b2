//! Smooth complete toric surfaces as an exact ground truth.
//!
//! A fan gives both sides of every check: its intersection theory exports a
//! [`SurfaceModel`](crate::lattice::SurfaceModel), and `h⁰` of a torus-invariant
//! divisor is the number of lattice points of its polygon.

mod fan;
mod model;
mod polygon;
mod scan;

pub use fan::{build_fan, FanFile, ToricDivisor, ToricFan};
pub use model::{fan_to_surface_model, ToricSurface};
pub use polygon::{count_h0, ehrhart_period, oracle_volume, polygon_vertices, Vertex};
pub use scan::{h0_limit_scan, GrowthEvidence, ScanOutcome, ScanParams, ScanReport, ScanRow};
