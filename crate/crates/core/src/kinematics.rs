//! Planar forward kinematics of the serial hinged-shell chain and tip
//! trajectories over pressure sweeps.
//!
//! The chain model is the planar sum with uniformly accumulating joint angle:
//! tip `= [sum_i l_i cos(i * theta_i), sum_i l_i sin(i * theta_i), 0]` for
//! `i = 1..n`. Note the indexing convention: the sum rotates every one of the
//! `n` links, including the first, even though a clamped `n`-segment actuator
//! articulates at `n - 1` joints. [`forward_kinematics_clamped`] implements
//! the alternative convention with the proximal link held at angle zero; the
//! two differ by one joint rotation and neither is singled out here —
//! [`forward_kinematics`] is the primary operation and the transform-chain
//! product [`transform_chain_tip`] reproduces it exactly.

use nalgebra::{Isometry2, Point2, Vector2};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::ActuatorGeometry;
use crate::statics::{bending_angle, ModelCoefficients};

/// Configuration of the planar chain: link lengths and the uniform joint
/// angle.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainConfig {
    /// Length of each link, mm.
    pub link_lengths: Vec<f64>,
    /// Uniform joint angle, radians (non-negative).
    pub joint_angle: f64,
}

impl ChainConfig {
    /// Build a validated configuration.
    pub fn new(link_lengths: Vec<f64>, joint_angle: f64) -> Result<Self> {
        if link_lengths.is_empty() {
            return Err(Error::InvalidChain("no links".to_string()));
        }
        if link_lengths.iter().any(|&l| !l.is_finite() || l <= 0.0) {
            return Err(Error::InvalidChain(
                "link lengths must be positive".to_string(),
            ));
        }
        if !joint_angle.is_finite() || joint_angle < 0.0 {
            return Err(Error::InvalidChain(format!(
                "joint angle must be non-negative, got {joint_angle}"
            )));
        }
        Ok(Self {
            link_lengths,
            joint_angle,
        })
    }

    /// `n` identical links of length `l` at joint angle `theta_i`.
    pub fn uniform(n: usize, l: f64, theta_i: f64) -> Result<Self> {
        Self::new(vec![l; n], theta_i)
    }

    /// Total chain length, mm.
    pub fn total_length(&self) -> f64 {
        self.link_lengths.iter().sum()
    }
}

/// Tip position `[x, y, 0]` (mm) of the chain.
pub fn forward_kinematics(config: &ChainConfig) -> [f64; 3] {
    let theta = config.joint_angle;
    let (mut x, mut y) = (0.0, 0.0);
    for (i, &l) in config.link_lengths.iter().enumerate() {
        let angle = (i + 1) as f64 * theta;
        x += l * angle.cos();
        y += l * angle.sin();
    }
    [x, y, 0.0]
}

/// Tip position with the clamped convention: the proximal link stays at angle
/// zero and only the `n - 1` downstream joints articulate. Differs from
/// [`forward_kinematics`] by one joint rotation.
pub fn forward_kinematics_clamped(config: &ChainConfig) -> [f64; 3] {
    let theta = config.joint_angle;
    let (mut x, mut y) = (0.0, 0.0);
    for (i, &l) in config.link_lengths.iter().enumerate() {
        let angle = i as f64 * theta;
        x += l * angle.cos();
        y += l * angle.sin();
    }
    [x, y, 0.0]
}

/// Tip position computed by composing homogeneous transforms: each link
/// contributes a joint rotation followed by a translation along the link.
/// An independent evaluation route for [`forward_kinematics`].
pub fn transform_chain_tip(config: &ChainConfig) -> [f64; 3] {
    let mut iso = Isometry2::identity();
    for &l in &config.link_lengths {
        iso *= Isometry2::rotation(config.joint_angle);
        iso *= Isometry2::translation(l, 0.0);
    }
    let tip = iso.transform_point(&Point2::origin());
    [tip.x, tip.y, 0.0]
}

/// Joint positions as partial sums of the link vectors, starting at the
/// origin; the last entry equals [`forward_kinematics`].
pub fn joint_positions(config: &ChainConfig) -> Vec<[f64; 3]> {
    let theta = config.joint_angle;
    let mut points = Vec::with_capacity(config.link_lengths.len() + 1);
    let mut p = Vector2::new(0.0, 0.0);
    points.push([0.0, 0.0, 0.0]);
    for (i, &l) in config.link_lengths.iter().enumerate() {
        let angle = (i + 1) as f64 * theta;
        p += Vector2::new(l * angle.cos(), l * angle.sin());
        points.push([p.x, p.y, 0.0]);
    }
    points
}

/// One sample of a tip trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrajectorySample {
    /// Relative input pressure, kPa (interface unit).
    pub pressure_kpa: f64,
    /// Tip x-coordinate, mm.
    pub tip_x_mm: f64,
    /// Tip y-coordinate, mm.
    pub tip_y_mm: f64,
    /// Total bending angle, degrees.
    pub theta_total_deg: f64,
}

/// Tip trajectory over an ascending pressure sweep, origin at the clamp.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TipTrajectory {
    /// Samples in pressure order.
    pub samples: Vec<TrajectorySample>,
}

impl TipTrajectory {
    /// Serialize with the fixed column order
    /// `pressure_kpa,tip_x_mm,tip_y_mm,theta_total_deg`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("pressure_kpa,tip_x_mm,tip_y_mm,theta_total_deg\n");
        for s in &self.samples {
            out.push_str(&format!(
                "{},{},{},{}\n",
                s.pressure_kpa, s.tip_x_mm, s.tip_y_mm, s.theta_total_deg
            ));
        }
        out
    }
}

/// Sweep the strictly ascending `pressures_kpa`, solving the bending law at
/// each pressure and placing the tip with [`forward_kinematics`] on `n`
/// links of length `l` from `geom`.
pub fn trajectory(
    geom: &ActuatorGeometry,
    coeffs: &ModelCoefficients,
    pressures_kpa: &[f64],
) -> Result<TipTrajectory> {
    if pressures_kpa.is_empty() {
        return Err(Error::InvalidDataset("empty pressure list".to_string()));
    }
    if pressures_kpa.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidDataset(
            "pressures must be strictly ascending".to_string(),
        ));
    }
    if pressures_kpa[0] < 0.0 {
        return Err(Error::NegativePressure(pressures_kpa[0] / 1000.0));
    }
    let mut samples = Vec::with_capacity(pressures_kpa.len());
    for &p_kpa in pressures_kpa {
        let (theta_total, theta_i) = bending_angle(p_kpa / 1000.0, coeffs, geom.n);
        let config = ChainConfig::uniform(geom.n as usize, geom.l, theta_i)?;
        let tip = forward_kinematics(&config);
        samples.push(TrajectorySample {
            pressure_kpa: p_kpa,
            tip_x_mm: tip[0],
            tip_y_mm: tip[1],
            theta_total_deg: theta_total.to_degrees(),
        });
    }
    Ok(TipTrajectory { samples })
}
