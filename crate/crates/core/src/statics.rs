//! Closed-form torque balance: pressure torque, wall-stretch torques, the
//! three model coefficients, the pressure-to-angle law, and blocked force.
//!
//! Around every hinge joint the air-pressure torque works against the two
//! wall-stretch torques and joint friction. With the wall stresses linearized
//! (see [`crate::material`]) and the semicircular top wall replaced by a flat
//! wall at height `h_flat`, both wall torques are affine in the joint angle,
//! so the balance collapses to three coefficients `k1`, `k2`, `k3`:
//!
//! * bending angle: `theta = max(0, (k1 * p - k2) / k3)`
//! * blocked force: `f = max(0, (k1 * p - k2) / l_star)`
//!
//! Below the threshold pressure `k2 / k1` the shells rest against each other
//! and the unilateral geometric constraint absorbs the torque deficit, so the
//! actuator stays straight.
//!
//! Units: MPa, mm, radians, N·mm.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{ActuatorGeometry, InflatedState};
use crate::material::{
    bottom_wall_moduli, top_wall_moduli, HyperelasticMaterial, LinearizedModulus,
};

/// Coefficients of the affine torque balance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelCoefficients {
    /// Pressure-torque coefficient, mm³ (torque per unit pressure).
    pub k1: f64,
    /// Angle-independent resisting torque including friction, N·mm.
    pub k2: f64,
    /// Angle-proportional stiffness, N·mm per radian.
    pub k3: f64,
}

impl ModelCoefficients {
    /// Threshold pressure `k2 / k1` (MPa) below which the actuator stays
    /// straight.
    pub fn threshold_pressure(&self) -> f64 {
        self.k2 / self.k1
    }
}

/// Calibrated material and friction parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CalibratedParams {
    /// Initial shear modulus, MPa.
    pub mu: f64,
    /// Maximum friction torque per joint, N·mm.
    pub m_f_max: f64,
}

impl CalibratedParams {
    /// Create parameters; `mu` must be positive and `m_f_max` non-negative.
    pub fn new(mu: f64, m_f_max: f64) -> Result<Self> {
        if !mu.is_finite() || mu <= 0.0 {
            return Err(Error::InvalidMaterial(format!(
                "calibrated mu must be positive, got {mu}"
            )));
        }
        if !m_f_max.is_finite() || m_f_max < 0.0 {
            return Err(Error::InvalidMaterial(format!(
                "friction torque must be non-negative, got {m_f_max}"
            )));
        }
        Ok(Self { mu, m_f_max })
    }
}

/// Torque contributions around one joint at a given state.
///
/// `m_a`, `m_t`, and `m_b` are magnitudes of the pressure and wall torques.
/// `m_f` is the signed friction torque in the same sign convention as `m_a`
/// (counter-clockwise positive); at incipient bending friction opposes motion
/// at full magnitude, so `m_f = -m_f_max` and the equilibrium residual
/// [`TorqueBreakdown::residual`] vanishes at the equilibrium angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TorqueBreakdown {
    /// Pressure-induced torque, N·mm.
    pub m_a: f64,
    /// Top-wall stretch torque, N·mm.
    pub m_t: f64,
    /// Bottom-wall stretch torque, N·mm.
    pub m_b: f64,
    /// Friction torque in effect (signed), N·mm.
    pub m_f: f64,
}

impl TorqueBreakdown {
    /// Equilibrium residual `m_a - m_t - m_b + m_f`; zero at the angle served
    /// by [`bending_angle`].
    pub fn residual(&self) -> f64 {
        self.m_a - self.m_t - self.m_b + self.m_f
    }
}

/// Torque induced by the relative air pressure `p_in` (MPa) around one joint:
/// `p_in * r0^2 * (3 d pi + 4 r0 + 3 pi t) / 6`.
///
/// This is the closed form of the pressure integral over the inflated
/// semicircular chamber cross-section; the quadrature oracle cross-checks it.
pub fn pressure_torque(
    p_in: f64,
    inflated: &InflatedState,
    geom: &ActuatorGeometry,
) -> Result<f64> {
    if !p_in.is_finite() || p_in < 0.0 {
        return Err(Error::NegativePressure(p_in));
    }
    Ok(p_in * pressure_torque_coefficient(inflated, geom))
}

/// `k1`: pressure torque per unit pressure, mm³.
pub fn pressure_torque_coefficient(inflated: &InflatedState, geom: &ActuatorGeometry) -> f64 {
    let r0 = inflated.r0;
    r0 * r0 * (3.0 * geom.d * std::f64::consts::PI + 4.0 * r0 + 3.0 * std::f64::consts::PI * geom.t)
        / 6.0
}

/// Bottom-wall stretch torque with linearized stress, integrated over the
/// wall cross-section from `d` to `d + t`:
/// `e1 * theta_i * (b + 2t) / (3l) * [(d+t)^3 - d^3]
///  + e2 * (b + 2t) / 2 * [(d+t)^2 - d^2]`.
pub fn bottom_torque_approx(
    theta_i: f64,
    geom: &ActuatorGeometry,
    eb: &LinearizedModulus,
) -> f64 {
    debug_assert!(theta_i >= 0.0);
    let width = geom.b + 2.0 * geom.t;
    let hi = geom.d + geom.t;
    let lo = geom.d;
    eb.e1 * theta_i * width / (3.0 * geom.l) * (hi.powi(3) - lo.powi(3))
        + eb.e2 * width / 2.0 * (hi.powi(2) - lo.powi(2))
}

/// Top-wall stretch torque for the flat-wall approximation at height
/// `h_flat`:
/// `e1 * theta_i * (r0 + t0/2) / (3l) * [H^3 - (H - t0)^3]
///  + e2 * (r0 + t0/2) / 2 * [H^2 - (H - t0)^2]`.
pub fn top_torque_approx(
    theta_i: f64,
    geom: &ActuatorGeometry,
    inflated: &InflatedState,
    et: &LinearizedModulus,
) -> Result<f64> {
    debug_assert!(theta_i >= 0.0);
    if geom.h_flat <= inflated.t0 {
        return Err(Error::FlatWallTooShort {
            h: geom.h_flat,
            t0: inflated.t0,
        });
    }
    Ok(top_torque_approx_at(theta_i, geom, inflated, et, geom.h_flat))
}

/// Same as [`top_torque_approx`] with an explicit wall height, used by the
/// flat-wall height fit.
pub(crate) fn top_torque_approx_at(
    theta_i: f64,
    geom: &ActuatorGeometry,
    inflated: &InflatedState,
    et: &LinearizedModulus,
    h: f64,
) -> f64 {
    let width = inflated.r0 + inflated.t0 / 2.0;
    let lo = h - inflated.t0;
    et.e1 * theta_i * width / (3.0 * geom.l) * (h.powi(3) - lo.powi(3))
        + et.e2 * width / 2.0 * (h.powi(2) - lo.powi(2))
}

/// Assemble the three coefficients of the torque balance.
///
/// `k2` sums the angle-independent parts of both wall torques plus the
/// friction limit; `k3` sums the angle-proportional parts. Both wall moduli
/// are fitted from `mat` over the working stretch range.
pub fn model_coefficients(
    geom: &ActuatorGeometry,
    inflated: &InflatedState,
    mat: &HyperelasticMaterial,
    m_f_max: f64,
) -> Result<ModelCoefficients> {
    if !m_f_max.is_finite() || m_f_max < 0.0 {
        return Err(Error::InvalidMaterial(format!(
            "friction torque must be non-negative, got {m_f_max}"
        )));
    }
    let eb = bottom_wall_moduli(mat)?;
    let et = top_wall_moduli(mat, inflated.lt2)?;
    if geom.h_flat <= inflated.t0 {
        return Err(Error::FlatWallTooShort {
            h: geom.h_flat,
            t0: inflated.t0,
        });
    }

    let k1 = pressure_torque_coefficient(inflated, geom);
    // constant terms: wall torques at zero joint angle, plus friction
    let k2 = bottom_torque_approx(0.0, geom, &eb)
        + top_torque_approx_at(0.0, geom, inflated, &et, geom.h_flat)
        + m_f_max;
    // slope terms: wall torque growth per radian
    let k3 = (bottom_torque_approx(1.0, geom, &eb) - bottom_torque_approx(0.0, geom, &eb))
        + (top_torque_approx_at(1.0, geom, inflated, &et, geom.h_flat)
            - top_torque_approx_at(0.0, geom, inflated, &et, geom.h_flat));
    Ok(ModelCoefficients { k1, k2, k3 })
}

/// Pressure-to-angle law: returns `(theta_total, theta_i)` in radians.
///
/// `theta_total = max(0, (k1 * p_in - k2) / k3)` as the balance is written;
/// the per-joint angle distributes the total over the `n - 1` joints of an
/// `n`-segment chain. Note the law itself carries no segment count, so the
/// total angle at a given pressure is the same for every configuration and
/// only the per-joint share changes.
pub fn bending_angle(p_in: f64, coeffs: &ModelCoefficients, n: u32) -> (f64, f64) {
    debug_assert!(p_in >= 0.0);
    debug_assert!(n >= 2);
    let theta_total = ((coeffs.k1 * p_in - coeffs.k2) / coeffs.k3).max(0.0);
    (theta_total, theta_total / (n - 1) as f64)
}

/// Blocked tip force (N) with the actuator held straight:
/// `max(0, (k1 * p_in - k2) / l_star)`.
///
/// `k2` here plays the role of the zero-angle material torque plus the
/// friction limit, so the force law shares its threshold with the bending
/// law and carries no segment-count dependence at all.
pub fn blocked_force(p_in: f64, coeffs: &ModelCoefficients, l_star: f64) -> f64 {
    debug_assert!(p_in >= 0.0);
    debug_assert!(l_star > 0.0);
    ((coeffs.k1 * p_in - coeffs.k2) / l_star).max(0.0)
}

/// All four torque contributions at pressure `p_in` and joint angle
/// `theta_i`, with friction engaged at full magnitude against the bending
/// direction (`m_f = -m_f_max`).
pub fn torque_breakdown(
    p_in: f64,
    theta_i: f64,
    geom: &ActuatorGeometry,
    inflated: &InflatedState,
    mat: &HyperelasticMaterial,
    m_f_max: f64,
) -> Result<TorqueBreakdown> {
    debug_assert!(theta_i >= 0.0);
    let eb = bottom_wall_moduli(mat)?;
    let et = top_wall_moduli(mat, inflated.lt2)?;
    Ok(TorqueBreakdown {
        m_a: pressure_torque(p_in, inflated, geom)?,
        m_t: top_torque_approx(theta_i, geom, inflated, &et)?,
        m_b: bottom_torque_approx(theta_i, geom, &eb),
        m_f: -m_f_max,
    })
}
