//! Monte Carlo estimators for integral-geometric quantities of concrete
//! convex bodies, checked against the exact euclidean tables.

pub mod body;
pub mod error;
pub mod estimators;
pub mod gjk;
pub mod minkowski;
pub mod motion;
pub mod sampler;
pub mod suite;

pub use body::{parse_bodies, ConvexBody};
pub use error::McError;
pub use estimators::{
    cauchy_projection_check, estimate_additive, estimate_crofton, estimate_principal_kinematic, steiner_mc,
    McEstimate,
};
pub use gjk::intersects;
pub use motion::{random_rotation, RigidMotion};
pub use sampler::SampleConfig;
