//! Incompressible Neo-Hookean constitutive model and its affine linearization.
//!
//! The soft chamber walls are modeled with a single-parameter Neo-Hookean
//! energy. Wall stresses in the length direction come from plane-stress
//! eliminations of the Lagrange multiplier, which yields the two closed
//! forms [`HyperelasticMaterial::stress_top_length`] (hoop stretch held at
//! the inflated value) and [`HyperelasticMaterial::stress_bottom_length`]
//! (free width). For the closed-form torque expressions those stress curves
//! are replaced by an affine fit `E1 * (stretch - 1) + E2` over the working
//! stretch range; see [`linearize_stress`].

use crate::error::{Error, Result};

/// Working stretch range of the wall material in the length direction.
/// All effective-modulus fits use this interval.
pub const STRETCH_FIT_RANGE: (f64, f64) = (1.0, 1.6);

/// Number of uniform samples used by [`linearize_stress`]. Fixed so that the
/// fit is deterministic.
pub const LINEARIZE_SAMPLES: usize = 200;

/// Incompressible Neo-Hookean material.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperelasticMaterial {
    /// Initial shear modulus, MPa (N/mm²).
    pub mu: f64,
}

impl HyperelasticMaterial {
    /// Create a material with initial shear modulus `mu` (MPa).
    ///
    /// `mu = 0` is accepted as a degenerate material (all stresses vanish);
    /// physical materials have `mu > 0`.
    pub fn new(mu: f64) -> Result<Self> {
        if !mu.is_finite() || mu < 0.0 {
            return Err(Error::InvalidMaterial(format!(
                "shear modulus must be finite and non-negative, got {mu}"
            )));
        }
        Ok(Self { mu })
    }

    /// Strain energy density (MPa) at the given principal stretches.
    ///
    /// Implemented as `W = mu/2 * (I1 - 1)`. The conventional incompressible
    /// Neo-Hookean energy uses `I1 - 3`; the two differ by a constant that
    /// cancels in every stress derivative, so this choice has no behavioral
    /// consequence.
    pub fn strain_energy(&self, l1: f64, l2: f64, l3: f64) -> Result<f64> {
        let i1 = first_invariant(l1, l2, l3)?;
        Ok(self.mu / 2.0 * (i1 - 1.0))
    }

    /// Nominal stress (MPa) in the length direction of the top wall, with the
    /// hoop stretch `lt2` held fixed at its inflated value:
    /// `mu * (lt1 - 1 / (lt2^2 * lt1^3))`.
    pub fn stress_top_length(&self, lt1: f64, lt2: f64) -> Result<f64> {
        check_stretch(lt1)?;
        check_stretch(lt2)?;
        Ok(stress_top_raw(self.mu, lt1, lt2))
    }

    /// Nominal stress (MPa) in the length direction of the bottom wall:
    /// `mu * (lb1 - 1 / lb1^3)`.
    pub fn stress_bottom_length(&self, lb1: f64) -> Result<f64> {
        check_stretch(lb1)?;
        Ok(stress_bottom_raw(self.mu, lb1))
    }
}

/// First invariant of three principal stretches: `l1^2 + l2^2 + l3^2`.
pub fn first_invariant(l1: f64, l2: f64, l3: f64) -> Result<f64> {
    check_stretch(l1)?;
    check_stretch(l2)?;
    check_stretch(l3)?;
    Ok(l1 * l1 + l2 * l2 + l3 * l3)
}

fn check_stretch(l: f64) -> Result<()> {
    if !l.is_finite() || l <= 0.0 {
        return Err(Error::NonPositiveStretch(l));
    }
    Ok(())
}

/// Unchecked top-wall stress; callers guarantee positive stretches.
pub(crate) fn stress_top_raw(mu: f64, lt1: f64, lt2: f64) -> f64 {
    mu * (lt1 - 1.0 / (lt2 * lt2 * lt1 * lt1 * lt1))
}

/// Unchecked bottom-wall stress; callers guarantee a positive stretch.
pub(crate) fn stress_bottom_raw(mu: f64, lb1: f64) -> f64 {
    mu * (lb1 - 1.0 / (lb1 * lb1 * lb1))
}

/// Affine stress fit `e1 * (stretch - 1) + e2` over `[stretch_lo, stretch_hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearizedModulus {
    /// Slope modulus, MPa.
    pub e1: f64,
    /// Offset stress at unit stretch, MPa.
    pub e2: f64,
    /// Lower end of the fitted stretch interval.
    pub stretch_lo: f64,
    /// Upper end of the fitted stretch interval.
    pub stretch_hi: f64,
}

impl LinearizedModulus {
    /// Evaluate the fitted affine stress at `stretch`.
    pub fn stress(&self, stretch: f64) -> f64 {
        self.e1 * (stretch - 1.0) + self.e2
    }
}

/// Least-squares affine fit of a stress curve over `[lo, hi]`.
///
/// The fit minimizes the squared error of `e1 * (stretch - 1) + e2` against
/// `stress_curve` on [`LINEARIZE_SAMPLES`] uniformly spaced points including
/// both endpoints, which makes the result deterministic and, for affine
/// inputs, exact. `e1` is non-negative for every monotone increasing curve;
/// a zero-modulus material yields the degenerate fit `e1 = e2 = 0`.
pub fn linearize_stress<F>(stress_curve: F, lo: f64, hi: f64) -> Result<LinearizedModulus>
where
    F: Fn(f64) -> f64,
{
    if !(lo.is_finite() && hi.is_finite()) || lo < 1.0 || hi <= lo {
        return Err(Error::DegenerateInterval { lo, hi });
    }
    let n = LINEARIZE_SAMPLES;
    let step = (hi - lo) / (n - 1) as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for k in 0..n {
        let lambda = lo + step * k as f64;
        let x = lambda - 1.0;
        let y = stress_curve(lambda);
        if !y.is_finite() {
            return Err(Error::NonFinite("stress curve sample"));
        }
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    let nf = n as f64;
    let denom = nf * sxx - sx * sx;
    let e1 = (nf * sxy - sx * sy) / denom;
    let e2 = (sy - e1 * sx) / nf;
    Ok(LinearizedModulus {
        e1,
        e2,
        stretch_lo: lo,
        stretch_hi: hi,
    })
}

/// Effective moduli for the bottom wall: fit of
/// [`HyperelasticMaterial::stress_bottom_length`] over [`STRETCH_FIT_RANGE`].
pub fn bottom_wall_moduli(mat: &HyperelasticMaterial) -> Result<LinearizedModulus> {
    let mu = mat.mu;
    linearize_stress(
        |l| stress_bottom_raw(mu, l),
        STRETCH_FIT_RANGE.0,
        STRETCH_FIT_RANGE.1,
    )
}

/// Effective moduli for the top wall: fit of
/// [`HyperelasticMaterial::stress_top_length`] at hoop stretch `lt2` over
/// [`STRETCH_FIT_RANGE`].
pub fn top_wall_moduli(mat: &HyperelasticMaterial, lt2: f64) -> Result<LinearizedModulus> {
    check_stretch(lt2)?;
    let mu = mat.mu;
    linearize_stress(
        |l| stress_top_raw(mu, l, lt2),
        STRETCH_FIT_RANGE.0,
        STRETCH_FIT_RANGE.1,
    )
}
