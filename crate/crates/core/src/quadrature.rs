//! Adaptive Gauss–Legendre quadrature.
//!
//! A 15-point Gauss–Legendre rule is applied per panel; a panel is accepted
//! when the two-child refinement agrees with the parent estimate within the
//! panel's share of the global tolerance, otherwise the panel is bisected.
//! The integrands in this crate are smooth, so convergence is fast and the
//! recursion order (left before right) makes results bit-for-bit repeatable.

use crate::error::{Error, Result};

/// Tolerances and refinement budget for the adaptive rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSettings {
    /// Relative tolerance on the whole integral.
    pub rel_tol: f64,
    /// Absolute tolerance floor (same units as the integral).
    pub abs_tol: f64,
    /// Maximum bisection depth before giving up.
    pub max_refinements: usize,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            abs_tol: 1e-12,
            max_refinements: 32,
        }
    }
}

impl QuadratureSettings {
    /// Check the settings invariants.
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(Error::InvalidQuadratureSettings(format!(
                "rel_tol must be positive, got {}",
                self.rel_tol
            )));
        }
        if !(self.abs_tol > 0.0 && self.abs_tol.is_finite()) {
            return Err(Error::InvalidQuadratureSettings(format!(
                "abs_tol must be positive, got {}",
                self.abs_tol
            )));
        }
        if self.max_refinements < 1 {
            return Err(Error::InvalidQuadratureSettings(
                "max_refinements must be at least 1".to_string(),
            ));
        }
        Ok(())
    }

    /// Settings tightened for the inner integral of a nested (iterated) rule.
    pub(crate) fn inner(&self) -> Self {
        Self {
            rel_tol: self.rel_tol / 4.0,
            abs_tol: self.abs_tol / 4.0,
            max_refinements: self.max_refinements,
        }
    }
}

/// 15-point Gauss–Legendre nodes and weights on [-1, 1].
const GL15: [(f64, f64); 15] = [
    (-0.987_992_518_020_485_4, 0.030_753_241_996_117_27),
    (-0.937_273_392_400_706, 0.070_366_047_488_108_12),
    (-0.848_206_583_410_427_2, 0.107_159_220_467_171_94),
    (-0.724_417_731_360_170_1, 0.139_570_677_926_154_3),
    (-0.570_972_172_608_538_8, 0.166_269_205_816_993_93),
    (-0.394_151_347_077_563_4, 0.186_161_000_015_562_2),
    (-0.201_194_093_997_434_52, 0.198_431_485_327_111_58),
    (0.0, 0.202_578_241_925_561_27),
    (0.201_194_093_997_434_52, 0.198_431_485_327_111_58),
    (0.394_151_347_077_563_4, 0.186_161_000_015_562_2),
    (0.570_972_172_608_538_8, 0.166_269_205_816_993_93),
    (0.724_417_731_360_170_1, 0.139_570_677_926_154_3),
    (0.848_206_583_410_427_2, 0.107_159_220_467_171_94),
    (0.937_273_392_400_706, 0.070_366_047_488_108_12),
    (0.987_992_518_020_485_4, 0.030_753_241_996_117_27),
];

fn gl15<F>(f: &F, a: f64, b: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut sum = 0.0;
    for &(x, w) in &GL15 {
        sum += w * f(mid + half * x)?;
    }
    Ok(half * sum)
}

/// Integrate a fallible integrand over `[a, b]`.
///
/// Errors from the integrand propagate unchanged; failure to reach the
/// tolerance within `max_refinements` levels produces
/// [`Error::QuadratureNonConvergence`] carrying the deepest refined estimate.
pub fn integrate_fallible<F>(f: F, a: f64, b: f64, settings: &QuadratureSettings) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    settings.validate()?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::NonFinite("integration bounds"));
    }
    if a == b {
        return Ok(0.0);
    }
    let whole = gl15(&f, a, b)?;
    let tol = settings.abs_tol.max(settings.rel_tol * whole.abs());
    let mut converged = true;
    let total = adapt(&f, a, b, whole, tol, settings.max_refinements, &mut converged)?;
    if !converged {
        return Err(Error::QuadratureNonConvergence {
            max_refinements: settings.max_refinements,
            last_estimate: total,
        });
    }
    if !total.is_finite() {
        return Err(Error::NonFinite("integral"));
    }
    Ok(total)
}

fn adapt<F>(
    f: &F,
    a: f64,
    b: f64,
    whole: f64,
    tol: f64,
    depth: usize,
    converged: &mut bool,
) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let mid = 0.5 * (a + b);
    let left = gl15(f, a, mid)?;
    let right = gl15(f, mid, b)?;
    let refined = left + right;
    if (refined - whole).abs() <= tol {
        return Ok(refined);
    }
    if depth == 0 {
        *converged = false;
        return Ok(refined);
    }
    let half_tol = 0.5 * tol;
    Ok(adapt(f, a, mid, left, half_tol, depth - 1, converged)?
        + adapt(f, mid, b, right, half_tol, depth - 1, converged)?)
}

/// Integrate an infallible integrand over `[a, b]`.
pub fn integrate<F>(f: F, a: f64, b: f64, settings: &QuadratureSettings) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    integrate_fallible(|x| Ok(f(x)), a, b, settings)
}

/// Iterated 2D integral of `f(x, y)` over `[x0, x1] x [y0, y1]`.
///
/// The outer (x) integral runs at the caller's tolerance; each inner (y)
/// integral runs at a tightened tolerance so inner error does not dominate.
pub fn integrate_2d<F>(
    f: F,
    x_range: (f64, f64),
    y_range: (f64, f64),
    settings: &QuadratureSettings,
) -> Result<f64>
where
    F: Fn(f64, f64) -> f64,
{
    let inner_settings = settings.inner();
    integrate_fallible(
        |x| integrate(|y| f(x, y), y_range.0, y_range.1, &inner_settings),
        x_range.0,
        x_range.1,
        settings,
    )
}
