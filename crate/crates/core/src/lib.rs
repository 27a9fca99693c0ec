//! Relative equilibria of the planar four-vortex problem with three unit strengths and a free
//! fourth strength `gamma4`.
//!
//! The crate enumerates, certifies and counts collinear, kite, rhombus and special-case
//! equilibria. Counting statements are decided with exact rational arithmetic (Sturm chains and
//! Sylvester resultants); geometric solutions are certified against the velocity field of the
//! point-vortex equations.

pub mod error;
pub mod ratpoly;
pub mod rhombus;
pub mod special;
pub mod census;
pub mod collinear;
pub mod kite;
pub mod vortexcore;

pub use error::{Error, Result};
