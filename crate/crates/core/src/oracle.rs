//! Quadrature reference implementation of the exact wall-torque integrals,
//! empirical fitting of the flat-wall height, and the approximation-accuracy
//! report.
//!
//! The closed forms in [`crate::statics`] rest on two approximations: the
//! affine stress fit and the flat rectangular stand-in for the semicircular
//! top wall. This module evaluates the un-approximated integrals with
//! adaptive quadrature so both simplifications can be measured rather than
//! trusted:
//!
//! * [`bottom_torque_exact`] integrates the full Neo-Hookean bottom-wall
//!   stress over the wall cross-section (`beta` from `d` to `d + t`).
//! * [`top_torque_exact`] integrates the full Neo-Hookean top-wall stress
//!   over the inflated semicircular annulus (`phi` in `[0, pi/2]`, `tau` in
//!   `[0, t0]`, doubled for symmetry), with the hoop stretch pinned at the
//!   inflated value.
//! * [`bottom_torque_exact_linearized`] integrates the affine-fitted stress
//!   instead; its value must agree with the closed form to quadrature
//!   precision since the integrand is polynomial.

use serde::Serialize;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::{self, ActuatorGeometry, InflatedState};
use crate::material::{
    bottom_wall_moduli, stress_bottom_raw, stress_top_raw, top_wall_moduli, HyperelasticMaterial,
    LinearizedModulus,
};
use crate::optimize::golden_section;
use crate::quadrature::{integrate, integrate_2d, QuadratureSettings};
use crate::statics::{bottom_torque_approx, top_torque_approx_at};

/// Number of grid angles used when measuring approximation error over an
/// angle interval (excluding the lower endpoint, including the upper).
pub const ERROR_GRID_POINTS: usize = 61;

/// Exact bottom-wall torque by adaptive quadrature of the full Neo-Hookean
/// stress: integral of `s_b(lambda(beta)) * (b + 2t) * beta` for `beta` from
/// `d` to `d + t`.
pub fn bottom_torque_exact(
    theta_i: f64,
    geom: &ActuatorGeometry,
    mat: &HyperelasticMaterial,
    settings: &QuadratureSettings,
) -> Result<f64> {
    debug_assert!(theta_i >= 0.0);
    let width = geom.b + 2.0 * geom.t;
    let (mu, l) = (mat.mu, geom.l);
    integrate(
        |beta| stress_bottom_raw(mu, geometry::bottom_stretch(beta, theta_i, l)) * width * beta,
        geom.d,
        geom.d + geom.t,
        settings,
    )
}

/// Bottom-wall torque by quadrature of the affine-fitted stress. The
/// integrand is a polynomial in `beta`, so this equals the closed form
/// [`bottom_torque_approx`] to machine precision; it exists to check that
/// equivalence through an independent evaluation route.
pub fn bottom_torque_exact_linearized(
    theta_i: f64,
    geom: &ActuatorGeometry,
    eb: &LinearizedModulus,
    settings: &QuadratureSettings,
) -> Result<f64> {
    debug_assert!(theta_i >= 0.0);
    let width = geom.b + 2.0 * geom.t;
    let l = geom.l;
    let eb = *eb;
    integrate(
        |beta| eb.stress(geometry::bottom_stretch(beta, theta_i, l)) * width * beta,
        geom.d,
        geom.d + geom.t,
        settings,
    )
}

/// Exact top-wall torque by adaptive 2D quadrature over the inflated
/// semicircular annulus:
/// `2 * integral of s_t(lambda(phi, tau)) * [(r0 + tau) sin(phi) + t + d]
/// * (r0 + tau)` for `phi` in `[0, pi/2]`, `tau` in `[0, t0]`, with the hoop
/// stretch fixed at the inflated `lt2`.
pub fn top_torque_exact(
    theta_i: f64,
    geom: &ActuatorGeometry,
    inflated: &InflatedState,
    mat: &HyperelasticMaterial,
    settings: &QuadratureSettings,
) -> Result<f64> {
    debug_assert!(theta_i >= 0.0);
    let (mu, lt2) = (mat.mu, inflated.lt2);
    let (r0, arm_offset) = (inflated.r0, geom.t + geom.d);
    let geom = geom.clone();
    let inflated = *inflated;
    integrate_2d(
        |tau, phi| {
            let lam = geometry::top_stretch_exact(phi, tau, theta_i, &geom, &inflated);
            let rho = r0 + tau;
            2.0 * stress_top_raw(mu, lam, lt2) * (rho * phi.sin() + arm_offset) * rho
        },
        (0.0, inflated.t0),
        (0.0, PI / 2.0),
        settings,
    )
}

/// Result of the empirical flat-wall height fit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FlatWallFit {
    /// Fitted wall height, mm.
    pub h: f64,
    /// Maximum relative error of the flat-wall torque against the exact
    /// integral over the fitted angle grid.
    pub max_rel_err: f64,
}

/// Fit the flat-wall height `H` by minimizing the worst-case relative error
/// between the closed-form top-wall torque and [`top_torque_exact`] over a
/// uniform grid of joint angles in `theta_range` (radians, `(lo, hi]` with
/// `hi` at most `pi/2`). A degenerate range with `lo == hi` fits the single
/// angle `hi`.
///
/// The search brackets the minimum with a coarse scan over `[t0, 2 * big_r]`
/// and refines it by golden section; if that produces a non-finite objective
/// the whole interval is re-scanned densely at 0.01 mm resolution.
pub fn fit_flat_wall_height(
    geom: &ActuatorGeometry,
    inflated: &InflatedState,
    mat: &HyperelasticMaterial,
    theta_range: (f64, f64),
    settings: &QuadratureSettings,
) -> Result<FlatWallFit> {
    let (lo, hi) = theta_range;
    if !(lo.is_finite() && hi.is_finite()) || lo < 0.0 || hi <= 0.0 || hi < lo || hi > PI / 2.0 {
        return Err(Error::OptimizationFailure(format!(
            "invalid angle range ({lo}, {hi}]"
        )));
    }
    let grid = angle_grid(lo, hi);
    let exact: Vec<f64> = grid
        .iter()
        .map(|&th| top_torque_exact(th, geom, inflated, mat, settings))
        .collect::<Result<_>>()?;
    let et = top_wall_moduli(mat, inflated.lt2)?;

    let objective = |h: f64| -> f64 {
        grid.iter()
            .zip(&exact)
            .map(|(&th, &ex)| rel_err(top_torque_approx_at(th, geom, inflated, &et, h), ex))
            .fold(0.0f64, f64::max)
    };

    let (h_min, h_max) = (inflated.t0, 2.0 * geom.big_r);
    // coarse bracketing scan, then golden section inside the best bracket
    const COARSE: usize = 33;
    let mut best_k = 0;
    let mut best_v = f64::INFINITY;
    for k in 0..COARSE {
        let h = h_min + (h_max - h_min) * k as f64 / (COARSE - 1) as f64;
        let v = objective(h);
        if v < best_v {
            best_v = v;
            best_k = k;
        }
    }
    let bracket_lo = h_min + (h_max - h_min) * best_k.saturating_sub(1) as f64 / (COARSE - 1) as f64;
    let bracket_hi =
        h_min + (h_max - h_min) * (best_k + 1).min(COARSE - 1) as f64 / (COARSE - 1) as f64;
    let (h, err) = golden_section(objective, bracket_lo, bracket_hi, 1e-7, 200);

    let (h, err) = if h.is_finite() && err.is_finite() {
        (h, err)
    } else {
        // dense fallback at 0.01 mm resolution
        let mut best = (h_min, objective(h_min));
        let steps = ((h_max - h_min) / 0.01).ceil() as usize;
        for k in 1..=steps {
            let hh = (h_min + 0.01 * k as f64).min(h_max);
            let v = objective(hh);
            if v < best.1 {
                best = (hh, v);
            }
        }
        best
    };
    if !(h.is_finite() && err.is_finite()) {
        return Err(Error::OptimizationFailure(
            "flat-wall height objective is not finite".to_string(),
        ));
    }
    Ok(FlatWallFit { h, max_rel_err: err })
}

fn angle_grid(lo: f64, hi: f64) -> Vec<f64> {
    if lo == hi {
        return vec![hi];
    }
    (1..=ERROR_GRID_POINTS)
        .map(|k| lo + (hi - lo) * k as f64 / ERROR_GRID_POINTS as f64)
        .collect()
}

/// Relative error with the zero-torque convention: zero when both values
/// vanish (e.g. a zero-modulus material), infinite when only the reference
/// does.
pub fn rel_err(approx: f64, exact: f64) -> f64 {
    if exact == 0.0 {
        if approx == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        (approx - exact).abs() / exact.abs()
    }
}

/// One row of the approximation-accuracy report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ApproximationRow {
    /// Joint angle, degrees (interface unit).
    pub theta_deg: f64,
    /// Exact top-wall torque, N·mm.
    pub m_t_exact: f64,
    /// Closed-form top-wall torque, N·mm.
    pub m_t_approx: f64,
    /// Relative top-wall error.
    pub m_t_rel_err: f64,
    /// Exact bottom-wall torque, N·mm.
    pub m_b_exact: f64,
    /// Closed-form bottom-wall torque, N·mm.
    pub m_b_approx: f64,
    /// Relative bottom-wall error.
    pub m_b_rel_err: f64,
}

/// Approximation-accuracy comparison over a grid of joint angles.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApproximationReport {
    /// One row per grid angle, in input order.
    pub rows: Vec<ApproximationRow>,
}

impl ApproximationReport {
    /// Largest top-wall relative error in the report.
    pub fn max_top_rel_err(&self) -> f64 {
        self.rows.iter().map(|r| r.m_t_rel_err).fold(0.0, f64::max)
    }

    /// Largest bottom-wall relative error in the report.
    pub fn max_bottom_rel_err(&self) -> f64 {
        self.rows.iter().map(|r| r.m_b_rel_err).fold(0.0, f64::max)
    }

    /// Serialize with the fixed column order
    /// `theta_deg,m_t_exact,m_t_approx,m_t_rel_err,m_b_exact,m_b_approx,m_b_rel_err`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "theta_deg,m_t_exact,m_t_approx,m_t_rel_err,m_b_exact,m_b_approx,m_b_rel_err\n",
        );
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.theta_deg,
                r.m_t_exact,
                r.m_t_approx,
                r.m_t_rel_err,
                r.m_b_exact,
                r.m_b_approx,
                r.m_b_rel_err
            ));
        }
        out
    }
}

/// Compare the closed-form wall torques against the exact integrals on a
/// grid of joint angles given in degrees (the report's interface unit).
pub fn approximation_report(
    geom: &ActuatorGeometry,
    inflated: &InflatedState,
    mat: &HyperelasticMaterial,
    grid_deg: &[f64],
    settings: &QuadratureSettings,
) -> Result<ApproximationReport> {
    if grid_deg.is_empty() {
        return Err(Error::InvalidDataset("empty angle grid".to_string()));
    }
    let eb = bottom_wall_moduli(mat)?;
    let et = top_wall_moduli(mat, inflated.lt2)?;
    let mut rows = Vec::with_capacity(grid_deg.len());
    for &deg in grid_deg {
        if !deg.is_finite() || deg < 0.0 {
            return Err(Error::InvalidDataset(format!("invalid grid angle {deg}")));
        }
        let th = deg.to_radians();
        let m_t_exact = top_torque_exact(th, geom, inflated, mat, settings)?;
        let m_t_approx = top_torque_approx_at(th, geom, inflated, &et, geom.h_flat);
        let m_b_exact = bottom_torque_exact(th, geom, mat, settings)?;
        let m_b_approx = bottom_torque_approx(th, geom, &eb);
        rows.push(ApproximationRow {
            theta_deg: deg,
            m_t_exact,
            m_t_approx,
            m_t_rel_err: rel_err(m_t_approx, m_t_exact),
            m_b_exact,
            m_b_approx,
            m_b_rel_err: rel_err(m_b_approx, m_b_exact),
        });
    }
    Ok(ApproximationReport { rows })
}
