//! Second-variation functional of the Koebe-direction perturbation and the
//! exact coefficient sequence q_n it generates.
//!
//! For a weight phi on [0, 1] and a real parameter w > -1/4, the
//! second-variation value is the pair of integrals
//!
//! ```text
//! Q(w) = -w^2 * S1 - 2 w^3 * S2,
//!   S1 = integral_0^1 phi(u)^2 / U du,
//!   S2 = integral_0^1 integral_0^v<=u (3 + 1/V) phi(u) phi(v) / sqrt(U V) dv du,
//! ```
//!
//! with U = 1 + 4uw and V = 1 + 4vw. For the standard weight
//! phi(u) = 1 - u everything collapses to the closed form
//! Q(w) = (1+4w)/6 * (sqrt(1+4w) - 1 - 2w), assembled from the inner
//! integral J and the companion triangle integral D as
//! Q = -w^2 (phi(0) J + 3w J^2 + D). The module keeps the direct
//! quadrature route ([`second_variation_numeric`]) fully independent of
//! the closed route so the two can check each other.
//!
//! Expanding Q's generating function q(z) = -z^2 (1+z)^2 / (3 (1-z)^4)
//! yields the rational coefficients q_n = -(n-1)(2n^2-4n+3)/9, computed
//! here both by exact series convolution and by the closed form.

pub mod quad;

use alloc::vec::Vec;
use core::cell::Cell;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use crate::trig::PairError;
pub use quad::{ConvergenceError, Quadrature, QuadratureConfig};

/// Failure modes of the variation computations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum VariationError {
    /// The parameter w is outside the domain of definition.
    Domain { w: f64 },
    /// An invalid weight or quadrature configuration.
    Config(&'static str),
    /// The adaptive integrator did not converge.
    Convergence(ConvergenceError),
}

impl fmt::Display for VariationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VariationError::Domain { w } => {
                write!(f, "w = {w} is outside the domain (requires w > -1/4)")
            }
            VariationError::Config(msg) => write!(f, "invalid configuration: {msg}"),
            VariationError::Convergence(e) => e.fmt(f),
        }
    }
}

impl core::error::Error for VariationError {}

impl From<ConvergenceError> for VariationError {
    fn from(e: ConvergenceError) -> Self {
        VariationError::Convergence(e)
    }
}

/// Weight functions phi on [0, 1] for [`second_variation_numeric`].
#[derive(Clone, Debug)]
pub enum PhiWeight {
    /// The standard weight phi(u) = 1 - u of the closed form.
    Linear,
    /// The standard weight scaled by a constant: phi(u) = c (1 - u). The
    /// variation is quadratic in phi, so this scales Q by c^2.
    Scaled(f64),
    /// Uniform samples of phi over [0, 1] (at least two), evaluated by
    /// linear interpolation.
    Tabulated(Vec<f64>),
}

impl PhiWeight {
    /// phi(u) for u in [0, 1] (clamped outside).
    pub fn eval(&self, u: f64) -> f64 {
        match self {
            PhiWeight::Linear => 1.0 - u,
            PhiWeight::Scaled(c) => c * (1.0 - u),
            PhiWeight::Tabulated(values) => {
                let u = u.clamp(0.0, 1.0);
                let steps = (values.len() - 1) as f64;
                let x = u * steps;
                let i = (x.floor() as usize).min(values.len() - 2);
                let frac = x - i as f64;
                values[i] * (1.0 - frac) + values[i + 1] * frac
            }
        }
    }

    /// phi(0), the boundary value entering the closed-form assembly.
    pub fn at_zero(&self) -> f64 {
        match self {
            PhiWeight::Linear => 1.0,
            PhiWeight::Scaled(c) => *c,
            PhiWeight::Tabulated(values) => values[0],
        }
    }

    fn validate(&self) -> Result<(), VariationError> {
        match self {
            PhiWeight::Linear => Ok(()),
            PhiWeight::Scaled(c) if c.is_finite() => Ok(()),
            PhiWeight::Scaled(_) => Err(VariationError::Config("weight scale must be finite")),
            PhiWeight::Tabulated(values) => {
                if values.len() < 2 {
                    return Err(VariationError::Config(
                        "tabulated weight needs at least two samples",
                    ));
                }
                if values.iter().any(|v| !v.is_finite()) {
                    return Err(VariationError::Config(
                        "tabulated weight samples must be finite",
                    ));
                }
                Ok(())
            }
        }
    }
}

/// Series fallback radius: below this |w| the closed forms divide by w^2
/// or w^3 and lose accuracy, while the truncated Taylor series is exact to
/// well under a part in 1e-20.
const SERIES_RADIUS: f64 = 1e-4;

/// The inner integral of the closed route,
/// J(w) = integral_0^1 (1-u)/sqrt(1+4uw) du
///      = ((1+4w)^(3/2) - 6w - 1) / (12 w^2),
/// extended through w = 0 by J(0) = 1/2. Requires w > -1/4.
pub fn inner_integral_closed(w: f64) -> Result<f64, VariationError> {
    if w <= -0.25 || !w.is_finite() {
        return Err(VariationError::Domain { w });
    }
    if w.abs() <= SERIES_RADIUS {
        // 1/2 - w/3 + w^2/2 - w^3 + 7w^4/3 - 6w^5 + O(w^6)
        let tail = 0.5 + w * (-1.0 + w * (7.0 / 3.0 + w * -6.0));
        return Ok(0.5 + w * (-1.0 / 3.0 + w * tail));
    }
    let s = (1.0 + 4.0 * w).sqrt();
    Ok(((1.0 + 4.0 * w) * s - 6.0 * w - 1.0) / (12.0 * w * w))
}

/// The companion triangle integral of the closed route,
/// D(w) = ((1+4w)^(3/2) - 6w^2 - 6w - 1) / (24 w^3),
/// extended through w = 0 by D(0) = -1/6; it closes the assembly
/// Q = -w^2 (phi(0) J + 3w J^2 + D) for the standard weight.
/// Requires w > -1/4.
pub fn double_integral_closed(w: f64) -> Result<f64, VariationError> {
    if w <= -0.25 || !w.is_finite() {
        return Err(VariationError::Domain { w });
    }
    if w.abs() <= SERIES_RADIUS {
        // -1/6 + w/4 - w^2/2 + 7w^3/6 - 3w^4 + 33w^5/4 + O(w^6)
        let tail = 7.0 / 6.0 + w * (-3.0 + w * (33.0 / 4.0));
        return Ok(-1.0 / 6.0 + w * (0.25 + w * (-0.5 + w * tail)));
    }
    let s = (1.0 + 4.0 * w).sqrt();
    Ok(((1.0 + 4.0 * w) * s - 6.0 * w * w - 6.0 * w - 1.0) / (24.0 * w * w * w))
}

/// The closed second variation for the standard weight phi(u) = 1 - u:
/// Q(w) = (1+4w)/6 * (sqrt(1+4w) - 1 - 2w). Defined for w >= -1/4, with
/// Q(-1/4) = Q(0) = 0 and Q(w) < 0 everywhere else on the domain.
pub fn second_variation_closed(w: f64) -> Result<f64, VariationError> {
    if w < -0.25 || !w.is_finite() {
        return Err(VariationError::Domain { w });
    }
    if w.abs() <= SERIES_RADIUS {
        // sqrt(1+4w) - 1 - 2w = -2w^2 + 4w^3 - 10w^4 + 28w^5 + O(w^6)
        let bracket = w * w * (-2.0 + w * (4.0 + w * (-10.0 + w * 28.0)));
        return Ok((1.0 + 4.0 * w) / 6.0 * bracket);
    }
    let s = (1.0 + 4.0 * w).sqrt();
    Ok((1.0 + 4.0 * w) / 6.0 * (s - 1.0 - 2.0 * w))
}

/// The second variation by direct adaptive quadrature of S1 and the
/// lower-triangle double integral S2, for an arbitrary weight:
/// Q(w) = -w^2 S1 - 2 w^3 S2. This route shares no algebra with
/// [`second_variation_closed`] beyond the integrand definitions, so the
/// two act as independent checks of each other.
///
/// cfg.tol is the absolute target for Q itself; it is split between the
/// two integrals in proportion to their w-prefactors. Requires w > -1/4
/// strictly (the integrands blow up at u = 1 for w = -1/4).
pub fn second_variation_numeric(
    w: f64,
    phi: &PhiWeight,
    cfg: &QuadratureConfig,
) -> Result<f64, VariationError> {
    if w <= -0.25 || !w.is_finite() {
        return Err(VariationError::Domain { w });
    }
    phi.validate()?;
    cfg.validate().map_err(VariationError::Config)?;

    let w2 = w * w;
    let w3_doubled = 2.0 * w2 * w.abs();
    let tol_single = (cfg.tol / (4.0 * w2.max(1.0))).max(1e-14);
    let tol_double = (cfg.tol / (4.0 * w3_doubled.max(1.0))).max(1e-14);
    // The inner integral of the nested double must not dominate the outer
    // panel error estimates, so it gets a tenth of the outer share.
    let tol_inner = (tol_double / 10.0).max(5e-15);

    let single_cfg = QuadratureConfig {
        tol: tol_single,
        ..*cfg
    };
    let s1 = quad::integrate(
        &|u: f64| {
            let p = phi.eval(u);
            p * p / (1.0 + 4.0 * u * w)
        },
        0.0,
        1.0,
        &single_cfg,
    )?
    .value;

    let inner_cfg = QuadratureConfig {
        tol: tol_inner,
        ..*cfg
    };
    let outer_cfg = QuadratureConfig {
        tol: tol_double,
        ..*cfg
    };
    // Inner quadrature failures cannot propagate through the f64 closure
    // signature, so they are parked in a cell and rechecked afterwards.
    let inner_failure: Cell<Option<ConvergenceError>> = Cell::new(None);
    let outer = quad::integrate(
        &|u: f64| {
            if u <= 0.0 {
                return 0.0;
            }
            let inner = quad::integrate(
                &|v: f64| {
                    let big_v = 1.0 + 4.0 * v * w;
                    (3.0 + 1.0 / big_v) * phi.eval(v) / big_v.sqrt()
                },
                0.0,
                u,
                &inner_cfg,
            );
            match inner {
                Ok(q) => {
                    let big_u = 1.0 + 4.0 * u * w;
                    phi.eval(u) / big_u.sqrt() * q.value
                }
                Err(e) => {
                    inner_failure.set(Some(e));
                    0.0
                }
            }
        },
        0.0,
        1.0,
        &outer_cfg,
    )?;
    if let Some(e) = inner_failure.get() {
        return Err(e.into());
    }

    Ok(-w2 * s1 - 2.0 * w2 * w * outer.value)
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// Exact rational q_n by the closed form q_n = -(n-1)(2n^2-4n+3)/9.
/// Requires n >= 2.
pub fn q_n_closed(n: u32) -> BigRational {
    assert!(n >= 2, "coefficients are defined for n >= 2");
    let n = i64::from(n);
    BigRational::new(big(-(n - 1) * (2 * n * n - 4 * n + 3)), big(9))
}

/// Exact rational coefficients q_2, ..., q_max_n extracted from the
/// generating function by series convolution:
/// q(z) = -(1/3) (z^2 + 2z^3 + z^4) * sum_k C(k) z^k with
/// C(k) = (k+1)(k+2)(k+3)/6 the coefficients of (1-z)^(-4).
/// The route is independent of [`q_n_closed`]. Requires max_n >= 2.
pub fn q_series_coefficients(max_n: u32) -> Vec<BigRational> {
    assert!(max_n >= 2, "coefficients are defined for n >= 2");
    let binom4 = |k: i64| -> BigRational {
        if k < 0 {
            BigRational::zero()
        } else {
            BigRational::new(big((k + 1) * (k + 2) * (k + 3)), big(6))
        }
    };
    let third = BigRational::new(big(-1), big(3));
    (2..=i64::from(max_n))
        .map(|n| {
            let conv = binom4(n - 2) + binom4(n - 3) * BigRational::from(big(2)) + binom4(n - 4);
            &third * conv
        })
        .collect()
}

/// The Leung normalization of the coefficient sequence: 4 q_n, the value
/// the functional takes against the unnormalized Koebe direction.
/// Requires n >= 2.
pub fn leung_qn(n: u32) -> BigRational {
    q_n_closed(n) * BigRational::from(big(4))
}

/// Comparison of the exact coefficient ratio q_n/q_m with the endpoint
/// ratio (n^3 - n)/(m^3 - m) that bounds it.
#[derive(Clone, Debug)]
pub struct SigmaRatioBound {
    /// q_n / q_m as a positive rational (both coefficients are negative).
    pub ratio: BigRational,
    /// The endpoint ratio (n^3 - n)/(m^3 - m).
    pub expected: BigRational,
    /// Whether ratio < expected holds strictly.
    pub strict: bool,
}

/// Exact rational comparison q_n/q_m vs (n^3 - n)/(m^3 - m). The strict
/// inequality is what places the variational lower bound below the
/// conjectured value for every pair. Requires 2 <= n < m.
pub fn sigma_ratio_bound(m: u32, n: u32) -> Result<SigmaRatioBound, PairError> {
    if !(2 <= n && n < m) {
        return Err(PairError { m, n });
    }
    let ratio = q_n_closed(n) / q_n_closed(m);
    let mi = i64::from(m);
    let ni = i64::from(n);
    let expected = BigRational::new(big(ni * ni * ni - ni), big(mi * mi * mi - mi));
    let strict = ratio < expected;
    Ok(SigmaRatioBound {
        ratio,
        expected,
        strict,
    })
}

/// The continuous ratio profile behind [`sigma_ratio_bound`] and its
/// derivative: value (2x^2 - 4x + 3)/(x (x + 1)) and derivative
/// 3 (2x^2 - 2x - 1)/(x^2 (x + 1)^2), for x > 0. The derivative has its
/// only positive zero at x = (1 + sqrt 3)/2, the crossover below which
/// the ratio comparison flips.
pub fn growth_factor(x: f64) -> (f64, f64) {
    assert!(x > 0.0, "growth factor is defined for x > 0");
    let value = (2.0 * x * x - 4.0 * x + 3.0) / (x * (x + 1.0));
    let derivative = {
        let den = x * (x + 1.0);
        3.0 * (2.0 * x * x - 2.0 * x - 1.0) / (den * den)
    };
    (value, derivative)
}

/// The classical reference value (e - 1)/(4e) ~ 0.15803 against which the
/// (3, 2) coefficient bound is compared.
pub fn sigma_32_reference() -> f64 {
    (core::f64::consts::E - 1.0) / (4.0 * core::f64::consts::E)
}

/// Convenience: is the exact sequence ratio check available as one bool.
pub fn sigma_ratio_is_strict(m: u32, n: u32) -> Result<bool, PairError> {
    sigma_ratio_bound(m, n).map(|b| b.strict)
}
