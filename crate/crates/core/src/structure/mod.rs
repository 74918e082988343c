//! Connection forms of the adapted frame and the structure equations built
//! from them.

pub mod codazzi;
pub mod connection;
pub mod curvature;
pub mod identities;
pub mod reduced;
pub mod sample;
pub mod stats;
pub mod sweep;
pub mod trig;

pub use connection::{connection_forms, ConnectionTable};
pub use identities::{connection_table_identities, parallel_normal_residual, Form, ParallelNormal};
pub use sample::{gauss_curvature_intrinsic, PointSample, PointValues};
pub use stats::{Accumulator, ResidualStats};
pub use sweep::sweep;
