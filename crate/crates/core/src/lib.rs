//! Thin metric spaces on finite data: exact geodesic primitives, the (R, D)
//! thin-condition decision procedure with replayable witnesses, 1-dimensional
//! skeleton extraction, explicit width maps with fiber audits, and
//! curvature-integral functionals on closed-form manifolds.

pub mod curvature;
pub mod error;
pub mod families;
pub mod io;
pub mod runner;
pub mod skeleton;
pub mod space;
pub mod thinness;
pub mod urysohn;
pub mod volume;

pub use error::{Error, Result};
pub use space::{DiscreteSegment, FiniteGeodesicSpace, PointSet, SegmentSearch, Vertex};
