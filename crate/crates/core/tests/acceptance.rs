//! Acceptance suite: one test per criterion, each printing a single
//! PASS/FAIL line with the measured numbers (run with `--nocapture` to see
//! the lines for passing criteria).
//!
//! Two criteria are expected to fail and are left red on purpose. The
//! closed-form top-wall torque (and hence the k2/k3 coefficients) uses the
//! flat-wall width `r0 + t0/2`, which integrates to roughly 1/3 of the exact
//! semicircular-annulus torque at the nominal 7 mm wall height; no wall
//! height inside the search range closes that gap. The criteria assert the
//! few-percent agreement anyway, as stated, so the measured disagreement is
//! visible rather than papered over. Details sit next to each criterion.

use std::time::Instant;

use hybrid_actuator::calibration::{
    fit_parameters, ExperimentDataset, ExperimentKind, ScaledModel,
};
use hybrid_actuator::geometry::{inflate, ActuatorGeometry, InflatedState};
use hybrid_actuator::kinematics::{forward_kinematics, transform_chain_tip, ChainConfig};
use hybrid_actuator::material::{bottom_wall_moduli, HyperelasticMaterial};
use hybrid_actuator::oracle::{
    approximation_report, bottom_torque_exact_linearized, fit_flat_wall_height, rel_err,
};
use hybrid_actuator::quadrature::QuadratureSettings;
use hybrid_actuator::statics::{
    bending_angle, blocked_force, bottom_torque_approx, model_coefficients,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MU: f64 = 0.07; // MPa
const MF: f64 = 5.0; // N·mm

fn reference_geometry() -> ActuatorGeometry {
    // (a, b, t, l, R) = (0.5, 10, 1.5, 8, 8) mm with the documented defaults
    // d = 1 mm, l_star = l = 8 mm, h_flat = 7 mm.
    ActuatorGeometry::new(0.5, 10.0, 1.5, 8.0, 8.0, 8).unwrap()
}

fn setup() -> (ActuatorGeometry, InflatedState, HyperelasticMaterial) {
    let geom = reference_geometry();
    let inflated = inflate(&geom).unwrap();
    let mat = HyperelasticMaterial::new(MU).unwrap();
    (geom, inflated, mat)
}

fn verdict(criterion: u32, pass: bool, detail: &str) {
    println!(
        "criterion {criterion} {}: {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
}

/// Criterion 1: at the reference geometry with H = 7 mm, the flat-wall
/// closed form must track the exact top-wall torque integral within 4% over
/// joint angles in (0°, 30°], in under 5 s.
///
/// Expected red: the measured worst-case error is ~74% (the closed form's
/// width factor `r0 + t0/2` is ~pi times smaller than the unrolled annulus
/// width consistent with the exact integral, and refitting the wall height
/// cannot absorb a factor of ~3 in scale). The model coefficients keep the
/// printed width because the companion calibration targets (mu = 0.07 MPa,
/// M_f,max = 5 N·mm reproducing ~250° near 60-70 kPa) only hold with it.
#[test]
fn criterion_1_top_wall_approximation_accuracy() {
    let start = Instant::now();
    let (geom, inflated, mat) = setup();
    let grid: Vec<f64> = (1..=61).map(|k| 30.0 * k as f64 / 61.0).collect();
    let report = approximation_report(
        &geom,
        &inflated,
        &mat,
        &grid,
        &QuadratureSettings::default(),
    )
    .unwrap();
    let max_err = report.max_top_rel_err();
    let elapsed = start.elapsed();
    let pass = max_err < 0.04 && elapsed.as_secs_f64() < 5.0;
    verdict(
        1,
        pass,
        &format!(
            "top-wall closed form vs exact integral over (0°, 30°]: max rel err {:.2}% (required < 4%), {:.2} s (required < 5 s)",
            100.0 * max_err,
            elapsed.as_secs_f64()
        ),
    );
    assert!(
        elapsed.as_secs_f64() < 5.0,
        "runtime {:.2} s exceeds 5 s",
        elapsed.as_secs_f64()
    );
    assert!(
        max_err < 0.04,
        "max top-wall relative error {:.4} exceeds the required 0.04",
        max_err
    );
}

/// Criterion 2: the closed-form bottom-wall torque is the exact integral of
/// the affine-fitted stress, so quadrature of that integrand must agree to
/// 1e-9 relative across [0°, 30°], in under 1 s.
#[test]
fn criterion_2_bottom_wall_closed_form_equals_linearized_quadrature() {
    let start = Instant::now();
    let (geom, _, mat) = setup();
    let eb = bottom_wall_moduli(&mat).unwrap();
    let settings = QuadratureSettings::default();
    let mut worst: f64 = 0.0;
    for k in 0..=60 {
        let theta = (30.0 * k as f64 / 60.0).to_radians();
        let quad = bottom_torque_exact_linearized(theta, &geom, &eb, &settings).unwrap();
        let closed = bottom_torque_approx(theta, &geom, &eb);
        worst = worst.max(rel_err(closed, quad));
    }
    let elapsed = start.elapsed();
    let pass = worst < 1e-9 && elapsed.as_secs_f64() < 1.0;
    verdict(
        2,
        pass,
        &format!(
            "closed form vs quadrature of the affine integrand: max rel err {worst:.2e} (required < 1e-9), {:.3} s (required < 1 s)",
            elapsed.as_secs_f64()
        ),
    );
    assert!(worst < 1e-9, "max relative error {worst:e}");
    assert!(elapsed.as_secs_f64() < 1.0);
}

/// Criterion 3: bending angle and blocked force are continuous
/// piecewise-affine functions of pressure with exactly one breakpoint at
/// k2/k1 and constant slopes k1/k3 (resp. k1/l*) above it, checked by finite
/// differences on a 1 kPa grid to 1e-9 relative.
#[test]
fn criterion_3_piecewise_affine_law() {
    let (geom, inflated, mat) = setup();
    let coeffs = model_coefficients(&geom, &inflated, &mat, MF).unwrap();
    let threshold_kpa = coeffs.threshold_pressure() * 1000.0;

    let check = |f: &dyn Fn(f64) -> f64, slope_per_kpa: f64| -> (usize, f64) {
        let values: Vec<f64> = (0..=130).map(|k| f(k as f64 / 1000.0)).collect();
        let mut partial_cells = 0usize;
        let mut worst_dev: f64 = 0.0;
        for (k, w) in values.windows(2).enumerate() {
            let slope = w[1] - w[0];
            let p_mid = k as f64 + 0.5;
            if slope == 0.0 {
                // flat section must lie below the breakpoint
                assert!(
                    (k + 1) as f64 >= threshold_kpa || p_mid < threshold_kpa,
                    "flat cell above threshold at {k} kPa"
                );
            } else if (slope - slope_per_kpa).abs() <= 1e-9 * slope_per_kpa {
                worst_dev = worst_dev.max((slope - slope_per_kpa).abs() / slope_per_kpa);
                assert!(
                    (k as f64) >= threshold_kpa - 1.0,
                    "affine cell below threshold at {k} kPa"
                );
            } else {
                partial_cells += 1;
                // the single transitional cell must bracket the breakpoint
                assert!(
                    (k as f64) <= threshold_kpa && threshold_kpa <= (k + 1) as f64,
                    "unexpected partial slope in cell [{k}, {}] kPa",
                    k + 1
                );
            }
        }
        (partial_cells, worst_dev)
    };

    let (bend_partials, bend_dev) = check(
        &|p| bending_angle(p, &coeffs, geom.n).0,
        coeffs.k1 / coeffs.k3 / 1000.0,
    );
    let (force_partials, force_dev) = check(
        &|p| blocked_force(p, &coeffs, geom.l_star),
        coeffs.k1 / geom.l_star / 1000.0,
    );

    let pass = bend_partials <= 1 && force_partials <= 1;
    verdict(
        3,
        pass,
        &format!(
            "one breakpoint at {threshold_kpa:.3} kPa; slope deviation bend {bend_dev:.2e}, force {force_dev:.2e} (required < 1e-9)"
        ),
    );
    assert!(pass, "bend {bend_partials} partial cells, force {force_partials}");
}

/// Criterion 4: blocked-force tables are bit-identical for segment counts 7
/// through 12 — the force law contains no segment count.
#[test]
fn criterion_4_segment_count_force_invariance() {
    let (_, _, mat) = setup();
    let table = |n: u32| -> Vec<u64> {
        let geom = reference_geometry().with_segments(n).unwrap();
        let inflated = inflate(&geom).unwrap();
        let coeffs = model_coefficients(&geom, &inflated, &mat, MF).unwrap();
        (0..=130)
            .map(|k| blocked_force(k as f64 / 1000.0, &coeffs, geom.l_star).to_bits())
            .collect()
    };
    let reference = table(7);
    let mut identical = true;
    for n in 8..=12 {
        identical &= table(n) == reference;
    }
    verdict(
        4,
        identical,
        "blocked-force tables for n in {7..12} are bit-identical",
    );
    assert!(identical);
}

/// Criterion 5: refitting noiseless synthetic 8-segment bend data generated
/// at (mu, M_f,max) = (0.07 MPa, 5 N·mm) recovers both parameters within
/// 0.5%; with 2% multiplicative noise, mu is recovered within 10% in at
/// least 18 of 20 seeded runs. Total runtime under 30 s.
#[test]
fn criterion_5_calibration_round_trip() {
    let start = Instant::now();
    let geom = reference_geometry();
    let model = ScaledModel::from_geometry(&geom).unwrap();
    let pressures: Vec<f64> = (0..=26).map(|k| 5.0 * k as f64).collect();
    let clean: Vec<(f64, f64)> = pressures
        .iter()
        .map(|&p| (p, model.predict(ExperimentKind::Bend, MU, MF, p)))
        .collect();

    let data = ExperimentDataset::new(ExperimentKind::Bend, clean.clone(), "synthetic", 8).unwrap();
    let (params, _) = fit_parameters(&data, &geom).unwrap();
    let mu_err = (params.mu - MU).abs() / MU;
    let mf_err = (params.m_f_max - MF).abs() / MF;
    let noiseless_ok = mu_err < 0.005 && mf_err < 0.005;

    let mut recovered = 0;
    for seed in 0..20u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let noisy: Vec<(f64, f64)> = clean
            .iter()
            .map(|&(p, v)| {
                let u1: f64 = rng.gen_range(1e-12..1.0);
                let u2: f64 = rng.gen_range(0.0..1.0);
                let z = (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos();
                (p, v * (1.0 + 0.02 * z))
            })
            .collect();
        let data = ExperimentDataset::new(ExperimentKind::Bend, noisy, "noisy", 8).unwrap();
        let (p, _) = fit_parameters(&data, &geom).unwrap();
        if (p.mu - MU).abs() / MU < 0.10 {
            recovered += 1;
        }
    }
    let elapsed = start.elapsed();
    let pass = noiseless_ok && recovered >= 18 && elapsed.as_secs_f64() < 30.0;
    verdict(
        5,
        pass,
        &format!(
            "noiseless refit err mu {:.3}% / mf {:.3}% (required < 0.5%); noisy mu within 10% in {recovered}/20 seeds (required >= 18); {:.1} s (required < 30 s)",
            100.0 * mu_err,
            100.0 * mf_err,
            elapsed.as_secs_f64()
        ),
    );
    assert!(noiseless_ok, "mu err {mu_err}, mf err {mf_err}");
    assert!(recovered >= 18, "only {recovered}/20 seeds");
    assert!(elapsed.as_secs_f64() < 30.0);
}

/// Criterion 6: the trigonometric-sum kinematics matches the
/// homogeneous-transform chain product to 1e-12 over 1000 random
/// configurations, and a straight chain lands exactly at (sum l_i, 0, 0).
#[test]
fn criterion_6_kinematics_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=15usize);
        let lengths: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..20.0)).collect();
        let theta = rng.gen_range(0.0..std::f64::consts::FRAC_PI_2);
        let config = ChainConfig::new(lengths, theta).unwrap();
        let a = forward_kinematics(&config);
        let b = transform_chain_tip(&config);
        for k in 0..3 {
            worst = worst.max((a[k] - b[k]).abs());
        }
    }

    let straight = ChainConfig::uniform(10, 8.0, 0.0).unwrap();
    let tip = forward_kinematics(&straight);
    let exact = tip == [80.0, 0.0, 0.0];

    let pass = worst < 1e-12 && exact;
    verdict(
        6,
        pass,
        &format!(
            "trig sum vs transform product: worst coordinate gap {worst:.2e} over 1000 configs (required < 1e-12); straight chain exact: {exact}"
        ),
    );
    assert!(worst < 1e-12, "worst gap {worst:e}");
    assert!(exact);
}

/// Criterion 7 (reported, not asserted): with the documented assumption set
/// d = 1 mm, l_i = 8 mm, l* = 8 mm and calibrated parameters
/// (mu, M_f,max) = (0.07 MPa, 5 N·mm), report the pressure at which an
/// 11-joint (12-segment) actuator reaches 250° total bend, and the blocked
/// force at 130 kPa, next to the reference figures of ~60 kPa and ~2.1 N.
/// The joint offset and tip lever are not pinned by the reference design, so
/// exact reproduction is out of reach at desk scale; the other criteria
/// carry the property-based acceptance instead.
#[test]
fn criterion_7_reference_curve_proximity_report() {
    let geom = reference_geometry().with_segments(12).unwrap();
    let inflated = inflate(&geom).unwrap();
    let mat = HyperelasticMaterial::new(MU).unwrap();
    let coeffs = model_coefficients(&geom, &inflated, &mat, MF).unwrap();

    // invert the bend law at 250 degrees total
    let theta_target = 250f64.to_radians();
    let p_250_kpa = (theta_target * coeffs.k3 + coeffs.k2) / coeffs.k1 * 1000.0;
    let force_130 = blocked_force(0.13, &coeffs, geom.l_star);

    verdict(
        7,
        true,
        &format!(
            "assumptions (a,b,t,l,R,d,n,l*,H) = (0.5, 10, 1.5, 8, 8, 1, 12, 8, 7) mm, mu = {MU} MPa, M_f,max = {MF} N·mm: \
             250° total bend at {p_250_kpa:.1} kPa (reference: ~60 kPa); blocked force at 130 kPa = {force_130:.2} N (reference: ~2.1 N); reported, not asserted"
        ),
    );
    assert!(p_250_kpa.is_finite() && p_250_kpa > 0.0);
    assert!(force_130.is_finite() && force_130 > 0.0);
    // sanity pin against the frozen evaluation of the same formulas
    assert!((p_250_kpa - 67.285_676).abs() < 1e-3);
    assert!((force_130 - 6.103_242).abs() < 1e-3);
}

/// Criterion 8: the empirical flat-wall height fit at the reference geometry
/// must land in [6, 8] mm with a worst-case error under 4%, in under 10 s.
///
/// Expected red, same root cause as criterion 1: against the exact integral
/// the best achievable wall height runs to the top of the search range
/// (~16 mm, twice the shell radius) with a ~26% worst-case error, because no
/// height can compensate the closed form's ~3x width shortfall.
#[test]
fn criterion_8_flat_wall_height_fit() {
    let start = Instant::now();
    let (geom, inflated, mat) = setup();
    let fit = fit_flat_wall_height(
        &geom,
        &inflated,
        &mat,
        (0.0, 30f64.to_radians()),
        &QuadratureSettings::default(),
    )
    .unwrap();
    let elapsed = start.elapsed();
    let in_band = (6.0..=8.0).contains(&fit.h);
    let pass = in_band && fit.max_rel_err < 0.04 && elapsed.as_secs_f64() < 10.0;
    verdict(
        8,
        pass,
        &format!(
            "fitted H = {:.3} mm (required in [6, 8]), max rel err {:.2}% (required < 4%), {:.2} s (required < 10 s)",
            fit.h,
            100.0 * fit.max_rel_err,
            elapsed.as_secs_f64()
        ),
    );
    assert!(
        elapsed.as_secs_f64() < 10.0,
        "runtime {:.2} s",
        elapsed.as_secs_f64()
    );
    assert!(in_band, "fitted H = {} mm outside [6, 8]", fit.h);
    assert!(
        fit.max_rel_err < 0.04,
        "max rel err {:.4} exceeds 0.04",
        fit.max_rel_err
    );
}
