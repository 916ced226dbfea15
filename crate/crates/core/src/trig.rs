//! Stable evaluation of the trigonometric blocks A_n(t) and global
//! minimization of the ratio profiles phi_mn(t) = A_n(t)/A_m(t).
//!
//! The quotient sin(nt)/sin t is never formed directly. `kernel_sum`
//! evaluates the equivalent finite cosine sum, which is total in t and
//! takes the correct limit value at every multiple of pi. `eval_a` goes one
//! step further and evaluates A_n(t) as an explicitly nonnegative sum of
//! squared sines, which keeps full relative accuracy near the zeros of A_n
//! where the difference n - sin(nt)/sin t cancels catastrophically.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::{ToPrimitive, Zero};

/// The pair (m, n) must satisfy 2 <= n < m.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairError {
    pub m: u32,
    pub n: u32,
}

impl fmt::Display for PairError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "invalid index pair (m, n) = ({}, {}): need 2 <= n < m",
            self.m, self.n
        )
    }
}

impl core::error::Error for PairError {}

/// An interior-only evaluation was requested at or beyond an endpoint of
/// (0, pi); the caller should use the endpoint limits instead.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DomainError {
    pub t: f64,
}

impl fmt::Display for DomainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "t = {:e} is outside the open interval (0, pi); use the endpoint limits",
            self.t
        )
    }
}

impl core::error::Error for DomainError {}

/// A grid or refinement parameter is out of its accepted range.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConfigError(pub &'static str);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid configuration: {}", self.0)
    }
}

impl core::error::Error for ConfigError {}

/// Failure modes of [`minimize_b`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MinimizeError {
    Pair(PairError),
    Config(ConfigError),
}

impl fmt::Display for MinimizeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinimizeError::Pair(e) => e.fmt(f),
            MinimizeError::Config(e) => e.fmt(f),
        }
    }
}

impl core::error::Error for MinimizeError {}

impl From<PairError> for MinimizeError {
    fn from(e: PairError) -> Self {
        MinimizeError::Pair(e)
    }
}

impl From<ConfigError> for MinimizeError {
    fn from(e: ConfigError) -> Self {
        MinimizeError::Config(e)
    }
}

/// Evaluates sin(nt)/sin t through the finite cosine sum
/// sum_{k=0}^{n-1} cos((n - 1 - 2k) t).
///
/// The sum form has no singularity at multiples of pi and agrees with the
/// continuous extension of the quotient everywhere. The value always lies
/// in [-n, n], with equality n exactly at even multiples of pi. Cost is
/// O(n).
pub fn kernel_sum(n: u32, t: f64) -> f64 {
    debug_assert!(n >= 1, "kernel_sum requires n >= 1");
    // The arguments n-1-2k run over -(n-1), ..., n-3, n-1. Cosine is even,
    // so each positive argument counts twice; the zero argument appears
    // exactly when n is odd and counts once.
    let center = if n % 2 == 1 { 1.0 } else { 0.0 };
    let mut acc = 0.0;
    let mut j = 1 + n % 2;
    while j < n {
        acc += (f64::from(j) * t).cos();
        j += 2;
    }
    center + 2.0 * acc
}

/// Evaluates A_n(t) = n - sin(nt)/sin t.
///
/// Uses the exact rearrangement
/// A_n(t) = 4 * sum sin^2(j t / 2) over j = n-1, n-3, ..., ending at 1 or 2,
/// obtained by pairing n with the cosine sum of [`kernel_sum`] term by term
/// via 1 - cos x = 2 sin^2(x/2). Every term is a square, so the result is
/// nonnegative by construction and keeps full relative accuracy near the
/// zeros of A_n. Cost is O(n).
pub fn eval_a(n: u32, t: f64) -> f64 {
    debug_assert!(n >= 2, "eval_a requires n >= 2");
    let mut acc = 0.0;
    let mut j = 2 - (n - 1) % 2;
    while j < n {
        let s = (0.5 * f64::from(j) * t).sin();
        acc += s * s;
        j += 2;
    }
    4.0 * acc
}

/// The limit of a ratio profile at t = pi. The limit at t = 0 is always
/// finite and is stored separately as an exact rational.
#[derive(Clone, Debug, PartialEq)]
pub enum EndpointLimit {
    Finite(BigRational),
    PosInfinite,
}

impl EndpointLimit {
    /// Nearest floating-point value of the limit (`f64::INFINITY` for the
    /// infinite case).
    pub fn as_f64(&self) -> f64 {
        match self {
            EndpointLimit::Finite(r) => r.to_f64().unwrap_or(f64::NAN),
            EndpointLimit::PosInfinite => f64::INFINITY,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, EndpointLimit::PosInfinite)
    }
}

fn ratio_u32(num: u32, den: u32) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Cube-minus-self n^3 - n, exact in u64 for any u32 input.
fn cubic_weight(n: u32) -> u64 {
    let n = u64::from(n);
    n * n * n - n
}

/// The ratio profile phi_mn(t) = A_n(t)/A_m(t) on [0, pi] together with its
/// exact endpoint limits.
///
/// The limit at 0 is (n^3 - n)/(m^3 - m). The limit at pi depends only on
/// the parities of m and n: it equals the limit at 0 when both are odd,
/// n/m when both are even, 0 when m is even and n is odd, and +infinity
/// when m is odd and n is even.
#[derive(Clone, Debug)]
pub struct RatioProfile {
    m: u32,
    n: u32,
    limit0: BigRational,
    limit_pi: EndpointLimit,
}

impl RatioProfile {
    /// Requires 2 <= n < m.
    pub fn new(m: u32, n: u32) -> Result<Self, PairError> {
        if !(2 <= n && n < m) {
            return Err(PairError { m, n });
        }
        let limit0 = BigRational::new(BigInt::from(cubic_weight(n)), BigInt::from(cubic_weight(m)));
        let limit_pi = match (m % 2, n % 2) {
            (1, 1) => EndpointLimit::Finite(limit0.clone()),
            (0, 0) => EndpointLimit::Finite(ratio_u32(n, m)),
            (0, 1) => EndpointLimit::Finite(BigRational::zero()),
            _ => EndpointLimit::PosInfinite,
        };
        Ok(RatioProfile {
            m,
            n,
            limit0,
            limit_pi,
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Exact limit of the profile as t -> 0+.
    pub fn limit0(&self) -> &BigRational {
        &self.limit0
    }

    /// Exact limit of the profile as t -> pi-.
    pub fn limit_pi(&self) -> &EndpointLimit {
        &self.limit_pi
    }

    /// Evaluates the profile at an interior point t in (0, pi).
    pub fn eval(&self, t: f64) -> Result<f64, DomainError> {
        if !(t > 0.0 && t < core::f64::consts::PI) {
            return Err(DomainError { t });
        }
        Ok(self.eval_interior(t))
    }

    /// Unchecked interior evaluation. A_m(t) > 0 holds throughout (0, pi)
    /// for every m >= 2, so the quotient is well defined there.
    fn eval_interior(&self, t: f64) -> f64 {
        eval_a(self.n, t) / eval_a(self.m, t)
    }
}

/// Exact endpoint limits of phi_mn without constructing a profile value
/// for repeated use. Requires 2 <= n < m.
pub fn endpoint_limits(m: u32, n: u32) -> Result<(BigRational, EndpointLimit), PairError> {
    let profile = RatioProfile::new(m, n)?;
    let RatioProfile {
        limit0, limit_pi, ..
    } = profile;
    Ok((limit0, limit_pi))
}

/// Location of the minimizer reported by [`minimize_b`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ArgMin {
    /// The infimum is attained in the limit t -> 0+.
    Zero,
    /// The minimum is attained at the given interior point of (0, pi).
    Interior(f64),
    /// The infimum is attained in the limit t -> pi-.
    Pi,
}

impl ArgMin {
    /// Rank used for deterministic tie-breaking: candidates are ordered by
    /// the t they represent, with 0 < every interior point < pi.
    fn order_key(&self) -> (u8, f64) {
        match self {
            ArgMin::Zero => (0, 0.0),
            ArgMin::Interior(t) => (1, *t),
            ArgMin::Pi => (2, 0.0),
        }
    }
}

/// Grid and refinement parameters for [`minimize_b`].
#[derive(Clone, Copy, Debug)]
pub struct MinimizeConfig {
    /// Interior grid points per unit of m, at least 8; the grid never has
    /// fewer than 1024 points regardless of m.
    pub grid_mult: u32,
    /// Width below which golden-section refinement of a bracketed minimum
    /// stops; must be positive and finite.
    pub refine_tol: f64,
}

impl Default for MinimizeConfig {
    fn default() -> Self {
        MinimizeConfig {
            grid_mult: 64,
            refine_tol: 1e-13,
        }
    }
}

/// Result of the global minimization of a ratio profile.
#[derive(Clone, Debug)]
pub struct MinResult {
    /// The trigonometric Bombieri number B_mn = inf over [0, pi] of phi_mn.
    pub value: f64,
    /// Where the infimum is attained (smallest such t under ties).
    pub argmin: ArgMin,
    /// Number of interior grid points scanned.
    pub grid_points: usize,
    /// Refinement tolerance that was in effect.
    pub refine_tol: f64,
    /// Gap between the best and the second-best candidate value; +infinity
    /// when only one distinct candidate exists, 0 when two candidates tie
    /// exactly (for example both endpoint limits of an odd/odd pair).
    pub margin: f64,
}

/// Inverse golden ratio, (sqrt 5 - 1)/2.
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for a minimum of f on [a, b]. Requires a < b.
/// Stops when the bracket is narrower than tol or cannot shrink further in
/// floating point; returns the best probed point and value.
fn golden_min<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    // 200 iterations shrink the bracket by phi^200 ~ 10^-42, far below any
    // representable spacing on (0, pi); the cap only guards degenerate
    // floating-point stalls.
    for _ in 0..200 {
        if b - a <= tol || x2 <= x1 {
            break;
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Computes B_mn = inf over [0, pi] of phi_mn(t) by a dense grid scan with
/// golden-section refinement of every bracketed local minimum, comparing
/// the refined interior minima against the exact endpoint limits.
///
/// The grid has max(1024, grid_mult * m) interior points t_i = i pi/(G+1).
/// A grid point is refined when its value is below both neighbors, where
/// the missing neighbor of the first and last grid point is the endpoint
/// limit itself. The result is deterministic for fixed inputs; when
/// several candidates agree within refine_tol the reported argmin is the
/// one with the smallest t.
pub fn minimize_b(m: u32, n: u32, cfg: &MinimizeConfig) -> Result<MinResult, MinimizeError> {
    let profile = RatioProfile::new(m, n)?;
    if cfg.grid_mult < 8 {
        return Err(ConfigError("grid_mult must be at least 8").into());
    }
    if !(cfg.refine_tol > 0.0 && cfg.refine_tol.is_finite()) {
        return Err(ConfigError("refine_tol must be positive and finite").into());
    }

    let grid = usize::try_from(u64::from(cfg.grid_mult) * u64::from(m))
        .map_err(|_| ConfigError("grid size overflows usize"))?
        .max(1024);
    let h = core::f64::consts::PI / (grid as f64 + 1.0);
    let limit0 = profile.limit0().to_f64().unwrap_or(f64::NAN);
    let limit_pi = profile.limit_pi().as_f64();

    let mut candidates: Vec<(ArgMin, f64)> = Vec::new();
    candidates.push((ArgMin::Zero, limit0));
    candidates.push((ArgMin::Pi, limit_pi));

    // Streaming three-point window over the grid; prev/cur/next hold
    // phi(t_{i-1}), phi(t_i), phi(t_{i+1}) with the endpoint limits
    // standing in for the missing neighbors at i = 1 and i = G.
    let eval = |t: f64| profile.eval_interior(t);
    let mut prev = limit0;
    let mut cur = eval(h);
    for i in 1..=grid {
        let next = if i < grid {
            eval((i as f64 + 1.0) * h)
        } else {
            limit_pi
        };
        if cur < prev && cur < next {
            // Bracket [t_{i-1}, t_{i+1}], pulled slightly inside (0, pi)
            // when the neighbor is an endpoint. phi approaches both
            // endpoints from above, so the minimum cannot hide between
            // the shrunken bracket edge and the endpoint itself.
            let a = if i == 1 { 0.125 * h } else { (i as f64 - 1.0) * h };
            let b = if i == grid {
                core::f64::consts::PI - 0.125 * h
            } else {
                (i as f64 + 1.0) * h
            };
            let (t_min, v_min) = golden_min(eval, a, b, cfg.refine_tol);
            candidates.push((ArgMin::Interior(t_min), v_min));
        }
        prev = cur;
        cur = next;
    }

    // Deterministic order: by value, then by position along [0, pi].
    candidates.sort_by(|x, y| {
        x.1.total_cmp(&y.1).then_with(|| {
            let (rx, tx) = x.0.order_key();
            let (ry, ty) = y.0.order_key();
            rx.cmp(&ry).then(tx.total_cmp(&ty))
        })
    });

    let value = candidates[0].1;
    let margin = candidates[1].1 - value;
    // Among candidates that agree with the minimum within refine_tol,
    // report the smallest t.
    let argmin = candidates
        .iter()
        .filter(|c| c.1 <= value + cfg.refine_tol)
        .map(|c| c.0)
        .min_by(|x, y| {
            let (rx, tx) = x.order_key();
            let (ry, ty) = y.order_key();
            rx.cmp(&ry).then(tx.total_cmp(&ty))
        })
        .expect("candidate list is never empty");

    Ok(MinResult {
        value,
        argmin,
        grid_points: grid,
        refine_tol: cfg.refine_tol,
        margin,
    })
}

/// The weighted step form
///
/// ```text
/// Phi_N(t) = 2(N^2 - 1) sin t - 3N sin(Nt) cos t + (N^2 + 2) cos(Nt) sin t
/// ```
///
/// whose nonnegativity on [0, pi] is equivalent (after multiplying by the
/// positive factor sin t / ((N-1)N(N+1)(N^2-1)) and integrating the
/// telescoping derivative identity) to the normalized two-step comparison
/// A_{N-1}(t)/((N-1)^3 - (N-1)) >= A_{N+1}(t)/((N+1)^3 - (N+1)).
///
/// Phi_N vanishes to order t^5 at t = 0 and satisfies
/// Phi_N(t_k) = 3 N^2 sin t_k at the points N t_k = 2 k pi.
pub fn step_form(big_n: u32, t: f64) -> f64 {
    debug_assert!(big_n >= 3, "step_form requires N >= 3");
    let nf = f64::from(big_n);
    let (sin_t, cos_t) = t.sin_cos();
    let (sin_nt, cos_nt) = (nf * t).sin_cos();
    2.0 * (nf * nf - 1.0) * sin_t - 3.0 * nf * sin_nt * cos_t + (nf * nf + 2.0) * cos_nt * sin_t
}

/// Tolerance for the direct ratio comparison in [`verify_step_inequality`]:
/// the normalized difference may only dip this far below zero.
pub const STEP_RATIO_TOL: f64 = 1e-12;

/// Tolerance for the step form in [`verify_step_inequality`]: Phi_N may
/// only dip this far below zero.
pub const STEP_FORM_TOL: f64 = 1e-10;

/// Grid evidence that the normalized block sequence A_k(t)/(k^3 - k) is
/// non-increasing along k -> k+2, checked both as a direct ratio
/// difference and through the equivalent step form.
#[derive(Clone, Debug)]
pub struct StepReport {
    pub n: u32,
    pub grid_points: usize,
    /// True when both the ratio difference and the step form stay above
    /// their respective negative tolerances on the whole grid.
    pub pass: bool,
    /// Minimum over the grid of A_n/(n^3-n) - A_{n+2}/((n+2)^3-(n+2)).
    pub worst_ratio_margin: f64,
    /// Grid point attaining `worst_ratio_margin`.
    pub ratio_witness_t: f64,
    /// Minimum over the grid of Phi_{n+1}.
    pub worst_form_value: f64,
    /// Grid point attaining `worst_form_value`.
    pub form_witness_t: f64,
    pub ratio_tol: f64,
    pub form_tol: f64,
}

/// Checks A_n(t)/(n^3 - n) >= A_{n+2}(t)/((n+2)^3 - (n+2)) on a uniform
/// interior grid of (0, pi), and independently checks Phi_{n+1} >= 0 on
/// the same grid. Requires n >= 2 and at least 1000 grid points.
pub fn verify_step_inequality(n: u32, grid_points: usize) -> Result<StepReport, ConfigError> {
    if n < 2 {
        return Err(ConfigError("step inequality requires n >= 2"));
    }
    if grid_points < 1000 {
        return Err(ConfigError("step inequality needs at least 1000 grid points"));
    }
    let wn = cubic_weight(n) as f64;
    let wn2 = cubic_weight(n + 2) as f64;
    let h = core::f64::consts::PI / (grid_points as f64 + 1.0);

    let mut worst_ratio = f64::INFINITY;
    let mut ratio_witness = 0.0;
    let mut worst_form = f64::INFINITY;
    let mut form_witness = 0.0;
    for i in 1..=grid_points {
        let t = i as f64 * h;
        let diff = eval_a(n, t) / wn - eval_a(n + 2, t) / wn2;
        if diff < worst_ratio {
            worst_ratio = diff;
            ratio_witness = t;
        }
        let form = step_form(n + 1, t);
        if form < worst_form {
            worst_form = form;
            form_witness = t;
        }
    }

    Ok(StepReport {
        n,
        grid_points,
        pass: worst_ratio >= -STEP_RATIO_TOL && worst_form >= -STEP_FORM_TOL,
        worst_ratio_margin: worst_ratio,
        ratio_witness_t: ratio_witness,
        worst_form_value: worst_form,
        form_witness_t: form_witness,
        ratio_tol: STEP_RATIO_TOL,
        form_tol: STEP_FORM_TOL,
    })
}
