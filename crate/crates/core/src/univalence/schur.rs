//! Zero counting inside circles through the Schur-Cohn reduction.
//!
//! One reduction step maps p of degree d with coefficients a_0..a_d to
//! T p = conj(a_0) p - a_d p*, where p*(z) = z^d conj(p(1/conj z)) is the
//! reversed conjugate polynomial. On the unit circle |p*| = |p|, and
//! (T p)(0) = |a_0|^2 - |a_d|^2 =: delta, so by Rouche's theorem
//!
//! * delta > 0: T p has the same number of zeros inside the circle as p,
//! * delta < 0: T p has d - (zeros of p inside) zeros inside.
//!
//! T p has degree at most d - 1, so iterating reaches a constant. A step
//! with |a_0| close to |a_d| (after normalizing the coefficients) cannot
//! be classified reliably in floating point and is reported as degenerate;
//! callers fall back to explicit root finding.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

/// Relative degeneracy threshold for ||a_0| - |a_d|| on coefficients
/// normalized to unit max magnitude.
const REL_DEGENERACY: f64 = 1e-10;

pub(crate) enum CountOutcome {
    /// Number of zeros strictly inside the unit circle.
    Count(usize),
    /// A reduction step was too close to |a_0| = |a_d| to classify.
    Degenerate,
}

/// Counts zeros of the polynomial with the given ascending coefficients
/// strictly inside the unit circle. Requires a nonzero constant term (the
/// caller strips zeros at the origin first) and a nonzero polynomial.
pub(crate) fn count_inside_unit(coeffs: &[Complex64]) -> CountOutcome {
    debug_assert!(!coeffs.is_empty());
    debug_assert!(coeffs[0] != Complex64::ZERO, "strip origin zeros first");

    let mut c: Vec<Complex64> = coeffs.to_vec();
    // count(p) = offset + sign * count(current); delta < 0 flips the sign
    // because the inside count complements against the current degree.
    let mut offset: isize = 0;
    let mut sign: isize = 1;
    loop {
        while c.len() > 1 && *c.last().unwrap() == Complex64::ZERO {
            c.pop();
        }
        let d = c.len() - 1;
        if d == 0 {
            // A nonzero constant has no zeros at all.
            debug_assert!(c[0] != Complex64::ZERO);
            return CountOutcome::Count(offset as usize);
        }
        let scale = c.iter().map(|x| x.norm()).fold(0.0, f64::max);
        if scale == 0.0 || !scale.is_finite() {
            return CountOutcome::Degenerate;
        }
        for x in &mut c {
            *x /= scale;
        }
        let a0 = c[0];
        let ad = c[d];
        if (a0.norm() - ad.norm()).abs() <= REL_DEGENERACY {
            return CountOutcome::Degenerate;
        }
        let delta_positive = a0.norm_sqr() > ad.norm_sqr();
        // (T p)_k = conj(a_0) a_k - a_d conj(a_{d-k}) for k = 0..d-1; the
        // k = 0 entry equals delta, which is nonzero here, so the reduced
        // polynomial again has a nonzero constant term.
        let reduced: Vec<Complex64> = (0..d).map(|k| a0.conj() * c[k] - ad * c[d - k].conj()).collect();
        if !delta_positive {
            offset += sign * d as isize;
            sign = -sign;
        }
        c = reduced;
    }
}

/// Rescales coefficients so that the zeros of the result are the zeros of
/// the input divided by rho: q_k = a_k rho^k.
fn scale_radius(coeffs: &[Complex64], rho: f64) -> Vec<Complex64> {
    let mut pow = 1.0;
    coeffs
        .iter()
        .map(|&a| {
            let out = a * pow;
            pow *= rho;
            out
        })
        .collect()
}

/// Counts zeros strictly inside |z| < rho.
pub(crate) fn count_inside_radius(coeffs: &[Complex64], rho: f64) -> CountOutcome {
    count_inside_unit(&scale_radius(coeffs, rho))
}

pub(crate) enum ModulusOutcome {
    Value {
        modulus: f64,
        /// Width of the final bisection bracket around the modulus.
        bracket: f64,
    },
    Degenerate,
}

/// Bisection width below which a degenerate probe is harmless: the sought
/// modulus is pinned inside the bracket regardless of the probe's answer.
const TIGHT_BRACKET: f64 = 1e-9;

/// Absolute bisection target for the modulus.
const MODULUS_TOL: f64 = 1e-12;

/// Smallest zero modulus of the polynomial, located by bisection on the
/// zero count inside |z| < rho. Requires a nonzero constant term and
/// degree >= 1. The initial bracket comes from the classical coefficient
/// bounds: every zero z satisfies |z| >= |a_0|/(|a_0| + max_{k>=1} |a_k|)
/// and |z| <= 1 + max_k |a_k / a_d|.
pub(crate) fn min_modulus_bisect(coeffs: &[Complex64]) -> ModulusOutcome {
    let d = coeffs.len() - 1;
    debug_assert!(d >= 1 && coeffs[0] != Complex64::ZERO);

    let a0 = coeffs[0].norm();
    let tail_max = coeffs[1..].iter().map(|x| x.norm()).fold(0.0, f64::max);
    if tail_max == 0.0 {
        // Constant polynomial after trimming would not reach here.
        return ModulusOutcome::Degenerate;
    }
    let mut lo = a0 / (a0 + tail_max);
    let ad = coeffs[d].norm();
    let mut hi = 1.0 + coeffs[..d].iter().map(|x| x.norm()).fold(0.0, f64::max) / ad;
    hi *= 1.0 + 1e-6;

    // The bounds guarantee count(lo) = 0 and count(hi) = d mathematically;
    // a degenerate probe at either edge is genuine bad luck and defers to
    // the fallback root finder.
    match count_inside_radius(coeffs, lo) {
        CountOutcome::Count(0) => {}
        _ => return ModulusOutcome::Degenerate,
    }
    match count_inside_radius(coeffs, hi) {
        CountOutcome::Count(k) if k == d => {}
        _ => return ModulusOutcome::Degenerate,
    }

    // Invariant: count(lo) = 0 and count(hi) >= 1, so the smallest zero
    // modulus lies in [lo, hi]. A probe radius that lands within the
    // degeneracy threshold of some zero modulus cannot be classified, so
    // the probe slides off-center before the bracket is declared stuck.
    while hi - lo > MODULUS_TOL {
        let width = hi - lo;
        let mut classified = false;
        for frac in [0.5, 0.4375, 0.5625, 0.375, 0.625] {
            let probe = lo + frac * width;
            match count_inside_radius(coeffs, probe) {
                CountOutcome::Count(0) => {
                    lo = probe;
                    classified = true;
                    break;
                }
                CountOutcome::Count(_) => {
                    hi = probe;
                    classified = true;
                    break;
                }
                CountOutcome::Degenerate => {}
            }
        }
        if !classified {
            // Every probe in the middle half is degenerate: the sought
            // modulus fills the bracket. A tight bracket still pins it;
            // otherwise give up and let the caller fall back.
            if width <= TIGHT_BRACKET {
                return ModulusOutcome::Value {
                    modulus: 0.5 * (lo + hi),
                    bracket: width,
                };
            }
            return ModulusOutcome::Degenerate;
        }
    }
    ModulusOutcome::Value {
        modulus: 0.5 * (lo + hi),
        bracket: hi - lo,
    }
}
