//! Adapted moving frames for surfaces in the unit 5-sphere of C^3, their
//! connection forms, and numerical residuals of the structure equations
//! relating the contact angle, the holomorphic angle and the second
//! fundamental form.

pub mod ambient;
pub mod catalog;
pub mod chart;
pub mod error;
pub mod fd;
pub mod field;
pub mod frame;
pub mod structure;

pub use ambient::{ComplexVec3, SpherePoint};
pub use catalog::{HomogeneousTorusSpec, LocusSample};
pub use chart::{ChartSpec, Domain, Jet, Metric};
pub use error::{Angle, GeometryError, Result};
pub use field::{Gradient, Grid, GridField};
pub use frame::{FramePoint, FrameResiduals};
pub use structure::{ConnectionTable, PointSample, PointValues, ResidualStats};
