//! Quasi-static modeling laboratory for a hinged-shell pneumatic bending
//! actuator.
//!
//! A soft rectangular chamber sits inside a chain of articulated rigid
//! shells; pressurizing the chamber makes the chain bend at its hinge
//! joints. The crate covers the full desk-side analysis of that actuator:
//!
//! * [`material`] — Neo-Hookean wall stresses and their affine
//!   effective-modulus fits.
//! * [`geometry`] — segment geometry, inflation state, and the local stretch
//!   fields entering every torque integral.
//! * [`statics`] — closed-form torque balance: the `k1`, `k2`, `k3`
//!   coefficients, the piecewise-affine pressure-to-angle law, and the
//!   blocked-force law.
//! * [`oracle`] — adaptive-quadrature evaluation of the exact torque
//!   integrals, flat-wall height fitting, and the approximation-accuracy
//!   report that measures the closed forms against the integrals.
//! * [`kinematics`] — planar forward kinematics of the shell chain and tip
//!   trajectories over pressure sweeps.
//! * [`calibration`] — least-squares fitting of the shear modulus and joint
//!   friction limit from experimental CSV data.
//!
//! Internal units are MPa, mm, N, and radians throughout; kPa and degrees
//! appear only at file and CLI interfaces.

pub mod calibration;
pub mod error;
pub mod geometry;
pub mod kinematics;
pub mod material;
pub mod optimize;
pub mod oracle;
pub mod quadrature;
pub mod statics;

pub use error::{Error, Result};
pub use geometry::{inflate, ActuatorGeometry, InflatedState};
pub use material::{HyperelasticMaterial, LinearizedModulus};
pub use quadrature::QuadratureSettings;
pub use statics::{CalibratedParams, ModelCoefficients, TorqueBreakdown};
