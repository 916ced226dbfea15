//! Adaptive quadrature on (7, 15) Gauss-Kronrod panels.
//!
//! Each panel is evaluated with the 15-point Kronrod rule; the embedded
//! 7-point Gauss rule shares every other node, and the difference between
//! the two estimates bounds the panel error. Panels that miss their share
//! of the tolerance are bisected recursively; error shares are allocated
//! proportionally to panel length, with a roundoff floor so that panels
//! already at machine precision are never split further.

use core::fmt;

#[allow(unused_imports)]
use num_traits::Float;

/// Positive abscissas of the 15-point Kronrod rule on [-1, 1] (the rule is
/// symmetric; index 0 is the center node). Every even index is also a node
/// of the embedded 7-point Gauss rule.
#[allow(clippy::excessive_precision)] // canonical published digits
const KRONROD_NODES: [f64; 8] = [
    0.000000000000000000000000000000000,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329,
];

/// Kronrod weights matching `KRONROD_NODES` by index.
#[allow(clippy::excessive_precision)] // canonical published digits
const KRONROD_WEIGHTS: [f64; 8] = [
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970,
];

/// Gauss weights for the nodes at even Kronrod indices 0, 2, 4, 6.
#[allow(clippy::excessive_precision)] // canonical published digits
const GAUSS_WEIGHTS: [f64; 4] = [
    0.417959183673469387755102040816327,
    0.381830050505118944950369775488975,
    0.279705391489276667901467771423780,
    0.129484966168869693270611432679082,
];

/// Tolerance and subdivision limits for the adaptive integrator.
#[derive(Clone, Copy, Debug)]
pub struct QuadratureConfig {
    /// Absolute error target for the whole integral; must be positive.
    pub tol: f64,
    /// Maximum bisection depth per panel.
    pub max_depth: u32,
    /// Points of the underlying panel rule; only 15 is implemented.
    pub order: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            tol: 1e-10,
            max_depth: 30,
            order: 15,
        }
    }
}

impl QuadratureConfig {
    pub(crate) fn validate(&self) -> Result<(), &'static str> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err("quadrature tolerance must be positive and finite");
        }
        if self.max_depth == 0 {
            return Err("quadrature max_depth must be at least 1");
        }
        if self.order != 15 {
            return Err("only the 15-point Kronrod rule is implemented");
        }
        Ok(())
    }
}

/// The integrator hit its depth limit before the error estimate met the
/// requested tolerance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConvergenceError {
    pub requested: f64,
    /// Error estimate of the panel that failed to converge.
    pub achieved: f64,
}

impl fmt::Display for ConvergenceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "quadrature did not reach tolerance {:e} (stuck panel error {:e})",
            self.requested, self.achieved
        )
    }
}

impl core::error::Error for ConvergenceError {}

/// A converged integral with its accumulated error estimate.
#[derive(Clone, Copy, Debug)]
pub struct Quadrature {
    pub value: f64,
    pub error_estimate: f64,
}

/// One (7, 15) panel: returns the Kronrod value and the error estimate
/// |K15 - G7| scaled by the half-length.
fn g7k15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(mid);
    let mut kronrod = KRONROD_WEIGHTS[0] * fc;
    let mut gauss = GAUSS_WEIGHTS[0] * fc;
    for i in 1..8 {
        let dx = half * KRONROD_NODES[i];
        let pair = f(mid - dx) + f(mid + dx);
        kronrod += KRONROD_WEIGHTS[i] * pair;
        if i % 2 == 0 {
            gauss += GAUSS_WEIGHTS[i / 2] * pair;
        }
    }
    (half * kronrod, half * (kronrod - gauss).abs())
}

/// Roundoff floor: a panel whose error estimate is below this multiple of
/// its own magnitude cannot be improved by splitting.
const ROUNDOFF_REL: f64 = 1e-15;

fn adapt<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    depth: u32,
    err_acc: &mut f64,
) -> Result<f64, ConvergenceError> {
    let (value, err) = g7k15(f, a, b);
    if err <= tol || err <= ROUNDOFF_REL * value.abs() {
        *err_acc += err;
        return Ok(value);
    }
    if depth == 0 {
        return Err(ConvergenceError {
            requested: tol,
            achieved: err,
        });
    }
    let mid = 0.5 * (a + b);
    let left = adapt(f, a, mid, 0.5 * tol, depth - 1, err_acc)?;
    let right = adapt(f, mid, b, 0.5 * tol, depth - 1, err_acc)?;
    Ok(left + right)
}

/// Integrates f over [a, b] to the absolute tolerance in cfg.
///
/// The caller validates cfg (see [`QuadratureConfig::validate`]); an empty
/// or reversed interval integrates with the usual sign convention.
pub fn integrate<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<Quadrature, ConvergenceError> {
    debug_assert!(cfg.validate().is_ok());
    if a == b {
        return Ok(Quadrature {
            value: 0.0,
            error_estimate: 0.0,
        });
    }
    if a > b {
        let q = integrate(f, b, a, cfg)?;
        return Ok(Quadrature {
            value: -q.value,
            error_estimate: q.error_estimate,
        });
    }
    let mut err_acc = 0.0;
    let value = adapt(f, a, b, cfg.tol, cfg.max_depth, &mut err_acc)?;
    Ok(Quadrature {
        value,
        error_estimate: err_acc,
    })
}
