//! Univalence tests for polynomials on the unit disk.
//!
//! The central tool is Dieudonne's criterion: a normalized polynomial
//! f(z) = z + c_2 z^2 + ... + c_d z^d is univalent in |z| < 1 exactly when
//! for every t in [0, pi] the associated polynomial
//!
//! ```text
//! q(z; t) = 1 + sum_{k=2}^{d} c_k (sin(kt)/sin t) z^(k-1)
//! ```
//!
//! has no zero in the open disk (at t = 0 the quotient degenerates to k,
//! making q(z; 0) = f'(z)). Zero locations are decided by Schur-Cohn
//! counting with bisection on the radius, falling back to Aberth root
//! finding when a reduction step degenerates.
//!
//! The module also certifies starlikeness (Re(z f'(z)/f(z)) >= 0 on the
//! boundary) and carries the extremal polynomial family
//! f(z) = z - 4/(3n-1) z^n + (n+1)/((2n-1)(3n-1)) z^(2n-1), whose critical
//! points split into two explicit modulus rings.

mod aberth;
mod poly;
mod schur;

pub use poly::{polynomial_eval, ComplexPolynomial};

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::trig::kernel_sum;

/// Neither zero-location method could separate the zeros from the unit
/// circle: the Schur-Cohn reduction degenerated and the fallback root
/// finder did not converge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegenerateError;

impl fmt::Display for DegenerateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "could not separate polynomial zeros from the unit circle by either method"
        )
    }
}

impl core::error::Error for DegenerateError {}

/// Which method produced a [`DiskZeroReport`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroMethod {
    /// Schur-Cohn counting plus bisection on the radius.
    SchurCohn,
    /// Explicit roots from the Aberth-Ehrlich fallback.
    Aberth,
}

/// Zero locations of a polynomial relative to the unit circle.
#[derive(Clone, Copy, Debug)]
pub struct DiskZeroReport {
    /// Zeros strictly inside |z| < 1, counted with multiplicity.
    pub count_inside: usize,
    /// Smallest zero modulus (0 for a zero at the origin, +infinity for a
    /// nonzero constant).
    pub min_root_modulus: f64,
    pub method: ZeroMethod,
    /// Distance from the reported nearest zero modulus to the unit
    /// circle. On the Aberth path this is the minimum of ||z| - 1| over
    /// every zero; on the Schur-Cohn path it is |min_root_modulus - 1|,
    /// which covers every zero whenever the count inside is zero.
    pub certified_margin: f64,
}

/// Locates the zeros of a nonzero polynomial relative to the unit circle.
///
/// The Schur-Cohn path is tried first; a degenerate reduction falls back
/// to the Aberth root finder. `Err(DegenerateError)` means both failed,
/// which in practice requires zeros pinned to the circle in a way the
/// iteration cannot resolve either. Zeros exactly on the circle that the
/// fallback does resolve are reported with `certified_margin` near zero
/// rather than as an error.
pub fn zeros_in_unit_disk(p: &ComplexPolynomial) -> Result<DiskZeroReport, DegenerateError> {
    if p.is_zero() {
        return Err(DegenerateError);
    }
    let mut coeffs = p.coeffs().to_vec();
    let mut origin_zeros = 0usize;
    while coeffs.len() > 1 && coeffs[0] == Complex64::ZERO {
        coeffs.remove(0);
        origin_zeros += 1;
    }
    if coeffs.len() == 1 {
        // c z^k: all zeros (if any) are at the origin.
        return Ok(DiskZeroReport {
            count_inside: origin_zeros,
            min_root_modulus: if origin_zeros > 0 { 0.0 } else { f64::INFINITY },
            method: ZeroMethod::SchurCohn,
            certified_margin: 1.0,
        });
    }

    if let schur::CountOutcome::Count(inside) = schur::count_inside_unit(&coeffs) {
        if let schur::ModulusOutcome::Value { modulus, bracket } =
            schur::min_modulus_bisect(&coeffs)
        {
            let margin = ((modulus - 1.0).abs() - bracket).max(0.0);
            return Ok(DiskZeroReport {
                count_inside: origin_zeros + inside,
                min_root_modulus: if origin_zeros > 0 { 0.0 } else { modulus },
                method: ZeroMethod::SchurCohn,
                certified_margin: if origin_zeros > 0 { 1.0f64.min(margin) } else { margin },
            });
        }
    }

    let found = aberth::find_roots(&coeffs);
    if !found.converged {
        return Err(DegenerateError);
    }
    let mut count_inside = origin_zeros;
    let mut min_modulus = if origin_zeros > 0 { 0.0 } else { f64::INFINITY };
    let mut margin = if origin_zeros > 0 { 1.0 } else { f64::INFINITY };
    for z in &found.roots {
        let m = z.norm();
        if m < 1.0 {
            count_inside += 1;
        }
        min_modulus = min_modulus.min(m);
        margin = margin.min((m - 1.0).abs());
    }
    Ok(DiskZeroReport {
        count_inside,
        min_root_modulus: min_modulus,
        method: ZeroMethod::Aberth,
        certified_margin: margin,
    })
}

/// The polynomial is not in the normalized form f(z) = z + c_2 z^2 + ...
/// (constant term 0, linear coefficient 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NormalizationError;

impl fmt::Display for NormalizationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "polynomial must be normalized: f(0) = 0 and f'(0) = 1")
    }
}

impl core::error::Error for NormalizationError {}

/// Dieudonne's associated polynomial of a normalized f at angle t:
/// q(z; t) = 1 + sum_{k=2}^{d} c_k (sin(kt)/sin t) z^(k-1), where the
/// quotient is evaluated in its total sum form. At t = 0 this is exactly
/// f'(z); at t = pi the quotient becomes (-1)^(k-1) k.
pub fn dieudonne_associated(
    p: &ComplexPolynomial,
    t: f64,
) -> Result<ComplexPolynomial, NormalizationError> {
    if p.coeff(0) != Complex64::ZERO || p.coeff(1) != Complex64::new(1.0, 0.0) {
        return Err(NormalizationError);
    }
    let d = p.degree();
    let mut coeffs = Vec::with_capacity(d.max(1));
    for k in 1..=d.max(1) {
        coeffs.push(p.coeff(k) * kernel_sum(k as u32, t));
    }
    Ok(ComplexPolynomial::new(coeffs))
}

/// Outcome of sampling Dieudonne's criterion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnivalenceStatus {
    /// Every sampled associated polynomial is zero-free in the closed
    /// disk with at least the required margin.
    UnivalentSampled,
    /// Some associated polynomial has a zero strictly inside the disk:
    /// a certificate of non-univalence.
    NotUnivalent,
    /// At least one sample came too close to the circle to classify.
    Uncertain,
}

/// Result of [`dieudonne_check`].
#[derive(Clone, Copy, Debug)]
pub struct UnivalenceVerdict {
    pub status: UnivalenceStatus,
    /// The smallest sampled t with a zero inside the disk, present exactly
    /// when the status is `NotUnivalent`.
    pub witness_t: Option<f64>,
    /// Minimum over the sampled t of (min zero modulus - 1); negative
    /// values certify non-univalence, values above the margin tolerance
    /// support univalence.
    pub worst_margin: f64,
    /// Number of t samples examined.
    pub samples: usize,
}

/// Failure modes of [`dieudonne_check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DieudonneError {
    NotNormalized,
    /// Fewer samples than 64 per coefficient degree were requested.
    TooFewSamples { requested: usize, minimum: usize },
}

impl fmt::Display for DieudonneError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DieudonneError::NotNormalized => NormalizationError.fmt(f),
            DieudonneError::TooFewSamples { requested, minimum } => write!(
                f,
                "need at least {minimum} angle samples for this degree, got {requested}"
            ),
        }
    }
}

impl core::error::Error for DieudonneError {}

/// Default classification tolerance: a sampled minimum zero modulus must
/// clear 1 by this much to count toward univalence.
pub const DEFAULT_MARGIN_TOL: f64 = 1e-10;

/// A zero must be this far inside the circle before it certifies
/// non-univalence.
const INSIDE_ROOT_TOL: f64 = 1e-9;

/// Samples Dieudonne's criterion at t_j = (j+1) pi / (t_samples + 1),
/// j = 0..t_samples, classifying each associated polynomial with
/// [`zeros_in_unit_disk`].
///
/// The samples deliberately exclude the endpoints: at t = 0 the associated
/// polynomial is f', whose zeros for the extremal families sit exactly on
/// the unit circle, carrying no sign information; for small positive t
/// they move strictly outside. Requires t_samples >= 64 * degree(f).
///
/// A zero of modulus below 1 - 1e-9 certifies non-univalence and the scan
/// stops at the first (smallest) such t; `worst_margin` then reflects the
/// prefix scanned up to the witness.
pub fn dieudonne_check(
    p: &ComplexPolynomial,
    t_samples: usize,
    margin_tol: f64,
) -> Result<UnivalenceVerdict, DieudonneError> {
    if p.coeff(0) != Complex64::ZERO || p.coeff(1) != Complex64::new(1.0, 0.0) {
        return Err(DieudonneError::NotNormalized);
    }
    let minimum = 64 * p.degree();
    if t_samples < minimum {
        return Err(DieudonneError::TooFewSamples {
            requested: t_samples,
            minimum,
        });
    }

    let mut worst_margin = f64::INFINITY;
    let mut uncertain = false;
    for j in 0..t_samples {
        let t = (j as f64 + 1.0) * core::f64::consts::PI / (t_samples as f64 + 1.0);
        let q = dieudonne_associated(p, t).expect("normalization already checked");
        match zeros_in_unit_disk(&q) {
            Ok(report) => {
                let margin = report.min_root_modulus - 1.0;
                worst_margin = worst_margin.min(margin);
                if report.count_inside > 0 && report.min_root_modulus < 1.0 - INSIDE_ROOT_TOL {
                    return Ok(UnivalenceVerdict {
                        status: UnivalenceStatus::NotUnivalent,
                        witness_t: Some(t),
                        worst_margin,
                        samples: j + 1,
                    });
                }
                if margin < margin_tol {
                    uncertain = true;
                }
            }
            Err(DegenerateError) => {
                // Unresolvable sample: treat as sitting on the circle.
                worst_margin = worst_margin.min(0.0);
                uncertain = true;
            }
        }
    }

    Ok(UnivalenceVerdict {
        status: if uncertain {
            UnivalenceStatus::Uncertain
        } else {
            UnivalenceStatus::UnivalentSampled
        },
        witness_t: None,
        worst_margin,
        samples: t_samples,
    })
}

/// The extremal polynomial family
/// f(z) = z - 4/(3n-1) z^n + (n+1)/((2n-1)(3n-1)) z^(2n-1) for n >= 2,
/// with each rational coefficient converted once to floating point.
pub fn family_poly(n: u32) -> ComplexPolynomial {
    assert!(n >= 2, "family is defined for n >= 2");
    let n_usize = n as usize;
    let nf = f64::from(n);
    let mut coeffs = vec![0.0f64; 2 * n_usize];
    coeffs[1] = 1.0;
    coeffs[n_usize] = -4.0 / (3.0 * nf - 1.0);
    coeffs[2 * n_usize - 1] = (nf + 1.0) / ((2.0 * nf - 1.0) * (3.0 * nf - 1.0));
    ComplexPolynomial::from_real(&coeffs)
}

/// Common modulus of the nonzero zeros of the family member: in the
/// variable zeta = z^(n-1) the quotient f(z)/z factors over the conjugate
/// pair zeta = (2(2n-1) +- i (n-1) sqrt(3(2n-1))) / (n+1), giving
/// |z|^(2n-2) = (2n-1)(3n^2+2n-1)/(n+1)^2 > 1 for all 2n-2 of them. This
/// is the margin by which the boundary quotient z f'(z)/f(z) stays free of
/// poles on the closed disk.
pub fn family_root_modulus(n: u32) -> f64 {
    assert!(n >= 2, "family is defined for n >= 2");
    let nf = f64::from(n);
    let modulus_sq_in_zeta = (2.0 * nf - 1.0) * (3.0 * nf * nf + 2.0 * nf - 1.0)
        / ((nf + 1.0) * (nf + 1.0));
    modulus_sq_in_zeta.powf(0.5 / (nf - 1.0))
}

/// Both sides of the boundary starlikeness identity for the family: with
/// x = cos(theta) - 1,
///
/// ```text
/// lhs = 2n x ((3n^2-2n+1) cos(theta) - 2(2n-1)) + 3n (n-1)^2 sin^2(theta)
/// rhs = n (n+1)(3n-1) x^2
/// ```
///
/// The identity lhs = rhs holds exactly; it reduces the real part of
/// z f'(z)/f(z) on the boundary to an explicit nonnegative multiple of the
/// denominator modulus.
///
/// To keep both sides accurate at small angles, x is evaluated as
/// -2 sin^2(theta/2) (full relative accuracy, unlike the difference
/// cos(theta) - 1) and the cosine factor as its exact regrouping
/// 3(n-1)^2 + (3n^2-2n+1) x, which has no cancellation for small x.
pub fn starlike_identity(n: u32, theta: f64) -> (f64, f64) {
    assert!(n >= 2, "family is defined for n >= 2");
    let nf = f64::from(n);
    let half = (0.5 * theta).sin();
    let x = -2.0 * half * half;
    let s = theta.sin();
    let cos_factor = 3.0 * (nf - 1.0) * (nf - 1.0) + (3.0 * nf * nf - 2.0 * nf + 1.0) * x;
    let lhs = 2.0 * nf * x * cos_factor + 3.0 * nf * (nf - 1.0) * (nf - 1.0) * s * s;
    let rhs = nf * (nf + 1.0) * (3.0 * nf - 1.0) * x * x;
    (lhs, rhs)
}

/// Failure modes of [`starlike_check`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StarlikeError {
    /// f(0) != 0, so z f'(z)/f(z) has no removable singularity at 0.
    NotVanishingAtZero,
    /// f has a zero on or inside the unit circle away from the origin
    /// (min modulus of the zeros of f(z)/z attached), so the boundary
    /// quotient is not defined.
    Pole { min_root_modulus: f64 },
    /// The zeros of f(z)/z could not be separated from the circle.
    Degenerate,
}

impl fmt::Display for StarlikeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StarlikeError::NotVanishingAtZero => {
                write!(f, "starlikeness requires f(0) = 0")
            }
            StarlikeError::Pole { min_root_modulus } => write!(
                f,
                "f(z)/z has a zero of modulus {min_root_modulus:.6} inside or on the unit circle"
            ),
            StarlikeError::Degenerate => DegenerateError.fmt(f),
        }
    }
}

impl core::error::Error for StarlikeError {}

/// Boundary margin required of the zeros of f(z)/z before the boundary
/// quotient is considered well defined.
const STARLIKE_POLE_MARGIN: f64 = 1e-9;

/// Tolerance for Re(z f'(z)/f(z)) on the boundary: values above the
/// negation of this pass.
pub const STARLIKE_TOL: f64 = 1e-10;

/// Result of [`starlike_check`].
#[derive(Clone, Copy, Debug)]
pub struct StarlikeReport {
    pub pass: bool,
    /// Minimum of Re(z f'(z)/f(z)) over the boundary samples.
    pub worst_margin: f64,
    /// Angle attaining the worst margin.
    pub witness_theta: f64,
    pub samples: usize,
}

/// Certifies Re(z f'(z)/f(z)) >= 0 on the unit circle by uniform boundary
/// sampling at theta_j = 2 pi j / samples.
///
/// Precondition (checked): f(0) = 0 and every zero of f(z)/z has modulus
/// above 1 + 1e-9, so the quotient is continuous on the closed disk and
/// nonnegativity on the boundary extends it to starlikeness of f.
pub fn starlike_check(
    p: &ComplexPolynomial,
    boundary_samples: usize,
) -> Result<StarlikeReport, StarlikeError> {
    if p.coeff(0) != Complex64::ZERO || p.is_zero() {
        return Err(StarlikeError::NotVanishingAtZero);
    }
    let reduced = ComplexPolynomial::new(p.coeffs()[1..].to_vec());
    let report = zeros_in_unit_disk(&reduced).map_err(|_| StarlikeError::Degenerate)?;
    if report.min_root_modulus.is_nan()
        || report.min_root_modulus <= 1.0 + STARLIKE_POLE_MARGIN
    {
        return Err(StarlikeError::Pole {
            min_root_modulus: report.min_root_modulus,
        });
    }

    let samples = boundary_samples.max(16);
    let derivative = p.derivative();
    let mut worst = f64::INFINITY;
    let mut witness = 0.0;
    for j in 0..samples {
        let theta = core::f64::consts::TAU * j as f64 / samples as f64;
        let z = Complex64::from_polar(1.0, theta);
        let num = z * derivative.eval(z);
        let den = p.eval(z);
        // den != 0 is guaranteed by the pole margin above.
        let re = (num * den.conj()).re / den.norm_sqr();
        if re < worst {
            worst = re;
            witness = theta;
        }
    }
    Ok(StarlikeReport {
        pass: worst >= -STARLIKE_TOL,
        worst_margin: worst,
        witness_theta: witness,
        samples,
    })
}
