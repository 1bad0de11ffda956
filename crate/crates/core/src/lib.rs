//! Shift dynamics on the generalized Cantor space `{0,1}^A`.
//!
//! Points, cylinder sets and the shift live in [`space`]; the uniformity
//! generated by coordinate blocks in [`uniformity`]. [`witness`] and
//! [`sensitivity`] build checkable witnesses for transitivity, dense
//! periodic points, shared periodic orbits and sensitive dependence.
//! [`sft`] and [`odometer`] are brute-force oracles on finite symbolic
//! systems.

pub mod error;
pub mod odometer;
pub mod sample;
pub mod sensitivity;
pub mod sft;
pub mod space;
pub mod text;
pub mod uniformity;
pub mod witness;

pub use error::{Error, Result};
pub use sensitivity::{SensitivityConfig, SensitivityWitness};
pub use sft::{OracleReport, SftSystem};
pub use space::{BasicCylinder, Coordinate, Cylinder, FiberLabel, FiberWord, Orbit, Point};
pub use text::{ParseError, Value, ValueKind};
pub use uniformity::{AxiomReport, UIndex};
pub use witness::{PeriodicWitness, SharedOrbitWitness, TransitivityWitness};
