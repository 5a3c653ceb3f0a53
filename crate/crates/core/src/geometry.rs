//! Actuator geometry, inflation-phase quantities, and local stretch fields.
//!
//! The geometry follows the cross-section of one shell segment: a rectangular
//! soft chamber (internal width `b`, wall thickness `t`, side-wall offset `a`)
//! sits inside a semicircular shell of inner radius `big_r`. Hinge joints lie
//! a distance `d` below the chamber bottom wall and `l` apart along the
//! actuator axis. On pressurization the chamber conforms to the shell: the top
//! wall becomes a semicircular annulus with hoop stretch `lt2`, thinned to
//! `t0 = t / lt2`, leaving an inflated inner radius `r0 = big_r - t0`.
//!
//! All lengths are millimetres, all angles radians.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::path::Path;

use crate::error::{Error, Result};

/// Default joint-axis-to-chamber-bottom distance (mm) when a configuration
/// does not specify `d`. The reference design does not pin this value, so
/// every quantitative output should echo the value actually used.
pub const DEFAULT_JOINT_OFFSET: f64 = 1.0;

/// Default flat-wall height `H` (mm) for the rectangular top-wall
/// approximation. Can be refit per geometry with
/// [`crate::oracle::fit_flat_wall_height`].
pub const DEFAULT_FLAT_WALL_HEIGHT: f64 = 7.0;

/// Geometric parameters of one actuator segment plus chain-level data.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ActuatorGeometry {
    /// Side-wall offset, mm.
    pub a: f64,
    /// Internal chamber width, mm.
    pub b: f64,
    /// Wall thickness, mm.
    pub t: f64,
    /// Inter-axis (joint-to-joint) distance, mm.
    pub l: f64,
    /// Shell inner radius, mm.
    pub big_r: f64,
    /// Joint-axis-to-chamber-bottom distance, mm.
    pub d: f64,
    /// Segment count of the assembled actuator.
    pub n: u32,
    /// Distance between the actuator tip and the nearest joint, mm.
    pub l_star: f64,
    /// Flat-wall height `H` of the rectangular top-wall approximation, mm.
    pub h_flat: f64,
}

/// Mirror of [`ActuatorGeometry`] with optional fields for JSON input.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGeometry {
    a: f64,
    b: f64,
    t: f64,
    l: f64,
    big_r: f64,
    #[serde(default)]
    d: Option<f64>,
    n: u32,
    #[serde(default)]
    l_star: Option<f64>,
    #[serde(default)]
    h_flat: Option<f64>,
}

impl ActuatorGeometry {
    /// Create a geometry from the five cross-section parameters and the
    /// segment count, using the documented defaults `d` =
    /// [`DEFAULT_JOINT_OFFSET`], `l_star = l`, `h_flat` =
    /// [`DEFAULT_FLAT_WALL_HEIGHT`].
    pub fn new(a: f64, b: f64, t: f64, l: f64, big_r: f64, n: u32) -> Result<Self> {
        Self {
            a,
            b,
            t,
            l,
            big_r,
            d: DEFAULT_JOINT_OFFSET,
            n,
            l_star: l,
            h_flat: DEFAULT_FLAT_WALL_HEIGHT,
        }
        .validated()
    }

    /// Replace the joint offset `d` (mm).
    pub fn with_joint_offset(mut self, d: f64) -> Result<Self> {
        self.d = d;
        self.validated()
    }

    /// Replace the tip lever arm `l_star` (mm).
    pub fn with_tip_lever(mut self, l_star: f64) -> Result<Self> {
        self.l_star = l_star;
        self.validated()
    }

    /// Replace the flat-wall height `h_flat` (mm).
    pub fn with_flat_wall_height(mut self, h_flat: f64) -> Result<Self> {
        self.h_flat = h_flat;
        self.validated()
    }

    /// Replace the segment count.
    pub fn with_segments(mut self, n: u32) -> Result<Self> {
        self.n = n;
        self.validated()
    }

    fn validated(self) -> Result<Self> {
        self.validate()?;
        Ok(self)
    }

    /// Check every geometric invariant, including `h_flat` exceeding the
    /// inflated wall thickness.
    pub fn validate(&self) -> Result<()> {
        let lengths = [
            ("a", self.a),
            ("b", self.b),
            ("t", self.t),
            ("l", self.l),
            ("big_r", self.big_r),
            ("d", self.d),
            ("l_star", self.l_star),
            ("h_flat", self.h_flat),
        ];
        for (name, v) in lengths {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::InvalidGeometry(format!(
                    "{name} must be a positive length, got {v}"
                )));
            }
        }
        if self.t >= self.big_r {
            return Err(Error::InvalidGeometry(format!(
                "wall thickness t = {} must be less than shell radius big_r = {}",
                self.t, self.big_r
            )));
        }
        if self.n < 2 {
            return Err(Error::InvalidGeometry(format!(
                "segment count n = {} must be at least 2",
                self.n
            )));
        }
        // h_flat must clear the inflated wall thickness for the flat-wall
        // torque integral to have positive extent.
        let inflated = inflate_unchecked(self);
        if !inflated.t0.is_finite() {
            return Err(Error::InvalidGeometry(
                "inflation produced a non-finite wall thickness".to_string(),
            ));
        }
        if self.h_flat <= inflated.t0 {
            return Err(Error::FlatWallTooShort {
                h: self.h_flat,
                t0: inflated.t0,
            });
        }
        Ok(())
    }

    /// Parse a geometry from a JSON document with exactly the field names of
    /// this struct; unknown fields are rejected. `d`, `l_star`, and `h_flat`
    /// are optional and fall back to the documented defaults.
    pub fn from_json_str(json: &str) -> Result<Self> {
        let raw: RawGeometry = serde_json::from_str(json)
            .map_err(|e| Error::InvalidGeometry(format!("JSON parse error: {e}")))?;
        Self {
            a: raw.a,
            b: raw.b,
            t: raw.t,
            l: raw.l,
            big_r: raw.big_r,
            d: raw.d.unwrap_or(DEFAULT_JOINT_OFFSET),
            n: raw.n,
            l_star: raw.l_star.unwrap_or(raw.l),
            h_flat: raw.h_flat.unwrap_or(DEFAULT_FLAT_WALL_HEIGHT),
        }
        .validated()
    }

    /// Load a geometry from a JSON file.
    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::InvalidGeometry(format!("cannot read {}: {e}", path.display()))
        })?;
        Self::from_json_str(&text)
    }
}

/// Derived quantities of the conformed (inflated) chamber.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InflatedState {
    /// Hoop stretch of the top wall.
    pub lt2: f64,
    /// Inflated top-wall thickness, mm.
    pub t0: f64,
    /// Inflated inner radius, mm.
    pub r0: f64,
}

impl InflatedState {
    /// Whether the chamber actually stretches into the shell (`lt2 > 1`).
    /// A non-conforming state means the rest chamber is already wider than
    /// the shell interior; the model's inflation assumptions do not hold.
    pub fn conforming(&self) -> bool {
        self.lt2 > 1.0
    }
}

fn inflate_unchecked(geom: &ActuatorGeometry) -> InflatedState {
    let r = geom.big_r - geom.t;
    let lt2 = (r + geom.t / 2.0) * PI / (geom.b + 2.0 * geom.t + 2.0 * geom.a);
    let t0 = geom.t / lt2;
    let r0 = geom.big_r - t0;
    // Nudge t0 by at most one ulp so that r0 + t0 reconstructs big_r exactly
    // (the difference big_r - r0 is exact whenever t0 <= big_r / 2).
    let t0 = geom.big_r - r0;
    InflatedState { lt2, t0, r0 }
}

/// Compute the inflation-phase state of the chamber.
///
/// A state with `lt2 <= 1` is returned as-is but flagged via
/// [`InflatedState::conforming`]; only non-finite results are errors.
pub fn inflate(geom: &ActuatorGeometry) -> Result<InflatedState> {
    let state = inflate_unchecked(geom);
    if !(state.lt2.is_finite() && state.t0.is_finite() && state.r0.is_finite()) {
        return Err(Error::NonFinite("inflated state"));
    }
    Ok(state)
}

/// Length-direction stretch of the bottom wall at local height `beta` (mm
/// above the joint axis) for joint angle `theta_i`: `(beta * theta_i + l) / l`.
///
/// The physical wall occupies `beta` in `[d, d + t]`.
pub fn bottom_stretch(beta: f64, theta_i: f64, l: f64) -> f64 {
    debug_assert!(l > 0.0);
    debug_assert!(theta_i >= 0.0);
    (beta * theta_i + l) / l
}

/// Length-direction stretch of the semicircular top wall at angular position
/// `phi` in `[0, pi/2]` and depth `tau` in `[0, t0]`:
/// `((d + t + (r0 + tau) sin(phi)) * theta_i + l) / l`.
///
/// The stretch equals 1 at `theta_i = 0` and grows affinely with the fiber's
/// height above the joint axis, matching the bottom-wall and flat-wall forms.
pub fn top_stretch_exact(
    phi: f64,
    tau: f64,
    theta_i: f64,
    geom: &ActuatorGeometry,
    inflated: &InflatedState,
) -> f64 {
    debug_assert!((0.0..=PI / 2.0 + 1e-12).contains(&phi));
    debug_assert!(tau >= 0.0 && tau <= inflated.t0 + 1e-12);
    debug_assert!(theta_i >= 0.0);
    let height = geom.d + geom.t + (inflated.r0 + tau) * phi.sin();
    (height * theta_i + geom.l) / geom.l
}

/// Length-direction stretch of the rectangular (flat) top-wall approximation
/// at height `beta` in `[h_flat - t0, h_flat]`; same affine form as
/// [`bottom_stretch`].
pub fn top_stretch_flat(beta: f64, theta_i: f64, l: f64) -> f64 {
    bottom_stretch(beta, theta_i, l)
}

#[cfg(test)]
pub(crate) fn test_geometry() -> ActuatorGeometry {
    // Reference cross-section used throughout the tests:
    // (a, b, t, l, R) = (0.5, 10, 1.5, 8, 8) mm, d = 1 mm, H = 7 mm.
    ActuatorGeometry::new(0.5, 10.0, 1.5, 8.0, 8.0, 8).unwrap()
}
