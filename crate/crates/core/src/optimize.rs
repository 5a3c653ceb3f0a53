//! Small derivative-free minimizers: a two-parameter Nelder–Mead simplex and
//! a golden-section line search. Both are deterministic.

/// Result of a Nelder–Mead run.
#[derive(Debug, Clone, Copy)]
pub struct SimplexResult {
    /// Best point found.
    pub x: [f64; 2],
    /// Objective value at the best point.
    pub value: f64,
    /// Iterations performed.
    pub iterations: usize,
    /// Whether the stopping tolerances were met before the iteration cap.
    pub converged: bool,
}

/// Options for [`nelder_mead_2d`].
#[derive(Debug, Clone, Copy)]
pub struct SimplexOptions {
    /// Iteration cap.
    pub max_iterations: usize,
    /// Stop when the simplex value spread falls below
    /// `f_tol_abs + f_tol_rel * |f_best|`.
    pub f_tol_abs: f64,
    /// Relative part of the value-spread tolerance.
    pub f_tol_rel: f64,
    /// Stop when the simplex diameter falls below this (per-axis, scaled by
    /// the initial step).
    pub x_tol: f64,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self {
            max_iterations: 500,
            f_tol_abs: 1e-18,
            f_tol_rel: 1e-12,
            x_tol: 1e-10,
        }
    }
}

/// Minimize `f` over two parameters with the Nelder–Mead simplex
/// (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
///
/// The initial simplex is `start` plus one step along each axis. Ties and
/// orderings are resolved deterministically, so repeated runs are identical.
pub fn nelder_mead_2d<F>(f: F, start: [f64; 2], step: [f64; 2], opts: &SimplexOptions) -> SimplexResult
where
    F: Fn([f64; 2]) -> f64,
{
    const ALPHA: f64 = 1.0; // reflection
    const GAMMA: f64 = 2.0; // expansion
    const RHO: f64 = 0.5; // contraction
    const SIGMA: f64 = 0.5; // shrink

    let mut pts = [
        start,
        [start[0] + step[0], start[1]],
        [start[0], start[1] + step[1]],
    ];
    let mut vals = [f(pts[0]), f(pts[1]), f(pts[2])];

    let mut iterations = 0;
    let mut converged = false;
    while iterations < opts.max_iterations {
        // order: best, middle, worst (stable under equal values)
        let mut order = [0usize, 1, 2];
        order.sort_by(|&i, &j| vals[i].partial_cmp(&vals[j]).unwrap_or(std::cmp::Ordering::Equal));
        let (b, m, w) = (order[0], order[1], order[2]);

        let spread = vals[w] - vals[b];
        let diameter = pts
            .iter()
            .map(|p| {
                let dx = (p[0] - pts[b][0]).abs() / step[0].abs().max(f64::MIN_POSITIVE);
                let dy = (p[1] - pts[b][1]).abs() / step[1].abs().max(f64::MIN_POSITIVE);
                dx.max(dy)
            })
            .fold(0.0f64, f64::max);
        if spread <= opts.f_tol_abs + opts.f_tol_rel * vals[b].abs() || diameter <= opts.x_tol {
            converged = true;
            break;
        }

        let centroid = [
            0.5 * (pts[b][0] + pts[m][0]),
            0.5 * (pts[b][1] + pts[m][1]),
        ];
        let reflect = [
            centroid[0] + ALPHA * (centroid[0] - pts[w][0]),
            centroid[1] + ALPHA * (centroid[1] - pts[w][1]),
        ];
        let f_reflect = f(reflect);

        if f_reflect < vals[b] {
            let expand = [
                centroid[0] + GAMMA * (reflect[0] - centroid[0]),
                centroid[1] + GAMMA * (reflect[1] - centroid[1]),
            ];
            let f_expand = f(expand);
            if f_expand < f_reflect {
                pts[w] = expand;
                vals[w] = f_expand;
            } else {
                pts[w] = reflect;
                vals[w] = f_reflect;
            }
        } else if f_reflect < vals[m] {
            pts[w] = reflect;
            vals[w] = f_reflect;
        } else {
            let contract = [
                centroid[0] + RHO * (pts[w][0] - centroid[0]),
                centroid[1] + RHO * (pts[w][1] - centroid[1]),
            ];
            let f_contract = f(contract);
            if f_contract < vals[w] {
                pts[w] = contract;
                vals[w] = f_contract;
            } else {
                // shrink toward the best vertex
                for i in 0..3 {
                    if i != b {
                        pts[i] = [
                            pts[b][0] + SIGMA * (pts[i][0] - pts[b][0]),
                            pts[b][1] + SIGMA * (pts[i][1] - pts[b][1]),
                        ];
                        vals[i] = f(pts[i]);
                    }
                }
            }
        }
        iterations += 1;
    }

    let mut best = 0;
    for i in 1..3 {
        if vals[i] < vals[best] {
            best = i;
        }
    }
    SimplexResult {
        x: pts[best],
        value: vals[best],
        iterations,
        converged,
    }
}

/// Golden-section search for the minimum of a unimodal `f` on `[a, b]`.
/// Returns `(argmin, min)` once the bracket is narrower than `x_tol` or the
/// iteration cap is hit.
pub fn golden_section<F>(f: F, a: f64, b: f64, x_tol: f64, max_iterations: usize) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let (mut lo, mut hi) = (a.min(b), a.max(b));
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..max_iterations {
        if hi - lo <= x_tol {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}
