//! Simultaneous polynomial root refinement (Aberth-Ehrlich iteration).
//!
//! Used as the fallback zero finder when the Schur-Cohn reduction hits a
//! degenerate step, and as the independent cross-check for root moduli of
//! the extremal family. The iteration refines all roots at once; with the
//! deterministic circle initialization below it converges cubically for
//! the simple-rooted polynomials this crate produces.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

pub(crate) struct RootsResult {
    pub roots: Vec<Complex64>,
    pub converged: bool,
    #[allow(dead_code)]
    pub iterations: usize,
}

const MAX_ITERATIONS: usize = 200;
/// Relative step size under which the root set counts as converged.
const STEP_TOL: f64 = 1e-13;

/// Finds all d roots of the polynomial with ascending coefficients.
/// Requires a nonzero constant term and a nonzero leading coefficient
/// (callers strip origin zeros and trailing zero coefficients first).
pub(crate) fn find_roots(coeffs: &[Complex64]) -> RootsResult {
    let d = coeffs.len() - 1;
    debug_assert!(d >= 1);
    debug_assert!(coeffs[0] != Complex64::ZERO && coeffs[d] != Complex64::ZERO);

    if d == 1 {
        return RootsResult {
            roots: alloc::vec![-coeffs[0] / coeffs[1]],
            converged: true,
            iterations: 0,
        };
    }

    let eval = |z: Complex64| {
        let mut p = Complex64::ZERO;
        let mut dp = Complex64::ZERO;
        for &c in coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    };

    // Deterministic start: a circle slightly outside the geometric-mean
    // radius (|a_0 / a_d|)^(1/d), with an angular offset so no start point
    // lies on the real axis (real-coefficient polynomials would otherwise
    // trap conjugate-symmetric iterates there).
    let radius = 1.1 * (coeffs[0].norm() / coeffs[d].norm()).powf(1.0 / d as f64);
    let mut roots: Vec<Complex64> = (0..d)
        .map(|k| {
            let angle = core::f64::consts::TAU * (k as f64 + 0.353) / d as f64;
            Complex64::from_polar(radius, angle)
        })
        .collect();

    for iter in 0..MAX_ITERATIONS {
        let mut max_rel_step = 0.0f64;
        for k in 0..d {
            let z = roots[k];
            let (p, dp) = eval(z);
            if p == Complex64::ZERO {
                continue;
            }
            if dp == Complex64::ZERO {
                // Landed on a critical point; nudge off it deterministically.
                roots[k] = z + Complex64::new(1e-6 * (1.0 + z.norm()), 1e-6);
                max_rel_step = f64::MAX;
                continue;
            }
            let newton = p / dp;
            let mut repulsion = Complex64::ZERO;
            for (j, &other) in roots.iter().enumerate() {
                if j != k {
                    let gap = z - other;
                    if gap != Complex64::ZERO {
                        repulsion += gap.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * repulsion;
            let step = if denom == Complex64::ZERO {
                newton
            } else {
                newton / denom
            };
            roots[k] = z - step;
            max_rel_step = max_rel_step.max(step.norm() / (1.0 + roots[k].norm()));
        }
        if max_rel_step <= STEP_TOL {
            return RootsResult {
                roots,
                converged: true,
                iterations: iter + 1,
            };
        }
    }
    RootsResult {
        roots,
        converged: false,
        iterations: MAX_ITERATIONS,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real_coeffs(cs: &[f64]) -> Vec<Complex64> {
        cs.iter().map(|&x| Complex64::new(x, 0.0)).collect()
    }

    fn sorted_moduli(r: &RootsResult) -> Vec<f64> {
        let mut m: Vec<f64> = r.roots.iter().map(|z| z.norm()).collect();
        m.sort_by(f64::total_cmp);
        m
    }

    #[test]
    fn linear_and_quadratic() {
        let r = find_roots(&real_coeffs(&[1.0, 2.0]));
        assert!(r.converged);
        assert!((r.roots[0] - Complex64::new(-0.5, 0.0)).norm() < 1e-12);

        // z^2 + 1: roots +-i on the unit circle.
        let r = find_roots(&real_coeffs(&[1.0, 0.0, 1.0]));
        assert!(r.converged);
        for m in sorted_moduli(&r) {
            assert!((m - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn reconstructs_scattered_roots() {
        // (z - 1/2)(z - 3)(z + 2i) expanded:
        // z^3 + (2i - 7/2) z^2 + (3/2 - 7i) z + 3i.
        let coeffs = alloc::vec![
            Complex64::new(0.0, 3.0),
            Complex64::new(1.5, -7.0),
            Complex64::new(-3.5, 2.0),
            Complex64::new(1.0, 0.0),
        ];
        let r = find_roots(&coeffs);
        assert!(r.converged);
        let mods = sorted_moduli(&r);
        assert!((mods[0] - 0.5).abs() < 1e-9);
        assert!((mods[1] - 2.0).abs() < 1e-9);
        assert!((mods[2] - 3.0).abs() < 1e-9);
    }

    #[test]
    fn handles_circle_roots_where_counting_cannot() {
        // (1 + z)(1 + z/4): zero exactly on the circle.
        let r = find_roots(&real_coeffs(&[1.0, 1.25, 0.25]));
        assert!(r.converged);
        let mods = sorted_moduli(&r);
        assert!((mods[0] - 1.0).abs() < 1e-10);
        assert!((mods[1] - 4.0).abs() < 1e-10);
    }
}
