//! Classification and sweep of index pairs (m, n).
//!
//! Every admissible pair 2 <= n < m falls into exactly one parity class,
//! which determines how much is known about its trigonometric Bombieri
//! number B_mn relative to the candidate value (n^3 - n)/(m^3 - m):
//!
//! * `OddOdd`, `EvenEven`: equality is proved.
//! * `CaseC` (m odd, n even, n <= (m + 1)/2): equality is proved through
//!   the reduction to the boundary pair m = 2n - 1.
//! * `EvenMOddN`: B_mn = 0 at t = pi, strictly below the candidate.
//! * `MixedOpen` (m odd, n even, n > (m + 1)/2): open; the conjecture
//!   predicts equality exactly when 5n < 4m + 2.
//!
//! [`scan_pair`] computes B_mn numerically and issues a verdict; the
//! conjecture comparison in [`conjecture_report`] aggregates how the
//! predictions fare against the verdicts.

use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::trig::{minimize_b, ArgMin, MinResult, MinimizeConfig, MinimizeError, RatioProfile};

/// Parity class of an admissible pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairClass {
    OddOdd,
    EvenEven,
    /// m odd, n even with n <= (m + 1)/2: covered by the reduction to the
    /// boundary pair (2n - 1, n).
    CaseC,
    /// m odd, n even above the boundary line: not covered by any proof.
    MixedOpen,
    /// m even, n odd: the profile vanishes at t = pi.
    EvenMOddN,
}

impl fmt::Display for PairClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairClass::OddOdd => "ODD_ODD",
            PairClass::EvenEven => "EVEN_EVEN",
            PairClass::CaseC => "CASE_C",
            PairClass::MixedOpen => "MIXED_OPEN",
            PairClass::EvenMOddN => "EVEN_M_ODD_N",
        })
    }
}

pub use crate::trig::PairError;

/// Total classification of an admissible pair; requires 2 <= n < m.
pub fn classify(m: u32, n: u32) -> Result<PairClass, PairError> {
    if !(2 <= n && n < m) {
        return Err(PairError { m, n });
    }
    Ok(match (m % 2, n % 2) {
        (1, 1) => PairClass::OddOdd,
        (0, 0) => PairClass::EvenEven,
        (0, 1) => PairClass::EvenMOddN,
        _ => {
            if 2 * n <= m + 1 {
                PairClass::CaseC
            } else {
                PairClass::MixedOpen
            }
        }
    })
}

/// Relation of the computed B_mn to the candidate value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanVerdict {
    /// |B - candidate| within tolerance.
    Equal,
    /// B below the candidate by more than the tolerance.
    StrictlyLess,
    /// Within the gray zone around the tolerance, or above the candidate.
    Uncertain,
}

impl fmt::Display for ScanVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScanVerdict::Equal => "EQUAL",
            ScanVerdict::StrictlyLess => "STRICTLY_LESS",
            ScanVerdict::Uncertain => "UNCERTAIN",
        })
    }
}

/// Everything the sweep knows about one pair.
#[derive(Clone, Debug)]
pub struct ScanRecord {
    pub m: u32,
    pub n: u32,
    pub class: PairClass,
    /// Computed trigonometric Bombieri number.
    pub b: f64,
    /// Exact candidate value (n^3 - n)/(m^3 - m).
    pub expected: BigRational,
    pub verdict: ScanVerdict,
    pub argmin: ArgMin,
    /// Candidate separation margin from the minimizer (see
    /// [`MinResult::margin`]).
    pub margin: f64,
    /// Whether equality for this class is proved.
    pub theorem_covers: bool,
    /// For m odd, n even: the prediction 5n < 4m + 2; `None` otherwise.
    pub conjecture_predicts: Option<bool>,
}

impl ScanRecord {
    /// The candidate value rounded to floating point.
    pub fn expected_f64(&self) -> f64 {
        self.expected.to_f64().unwrap_or(f64::NAN)
    }
}

/// Default comparison tolerance for verdicts.
pub const DEFAULT_SCAN_TOL: f64 = 1e-7;

/// Default sweep bound on m.
pub const DEFAULT_SCAN_MAX: u32 = 80;

/// Computes B_mn and classifies it against the candidate value.
/// Requires 2 <= n < m and a positive finite tolerance.
pub fn scan_pair(
    m: u32,
    n: u32,
    cfg: &MinimizeConfig,
    tol: f64,
) -> Result<ScanRecord, MinimizeError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(MinimizeError::Config(crate::trig::ConfigError(
            "scan tolerance must be positive and finite",
        )));
    }
    let class = classify(m, n)?;
    let profile = RatioProfile::new(m, n)?;
    let expected = profile.limit0().clone();
    let MinResult {
        value: b,
        argmin,
        margin,
        ..
    } = minimize_b(m, n, cfg)?;

    let expected_f = expected.to_f64().unwrap_or(f64::NAN);
    // The candidate is below 1, so an absolute and a relative reading of
    // the tolerance coincide up to the max(1, .) floor.
    let verdict = if (b - expected_f).abs() <= tol * expected_f.max(1.0) {
        ScanVerdict::Equal
    } else if b < expected_f - tol {
        ScanVerdict::StrictlyLess
    } else {
        ScanVerdict::Uncertain
    };

    let theorem_covers = matches!(
        class,
        PairClass::OddOdd | PairClass::EvenEven | PairClass::CaseC
    );
    let conjecture_predicts = (m % 2 == 1 && n % 2 == 0).then(|| 5 * n < 4 * m + 2);

    Ok(ScanRecord {
        m,
        n,
        class,
        b,
        expected,
        verdict,
        argmin,
        margin,
        theorem_covers,
        conjecture_predicts,
    })
}

/// Serial sweep over all admissible pairs with m <= max_m, ordered by
/// (m, n). Requires max_m >= 3.
pub fn scan(max_m: u32, cfg: &MinimizeConfig, tol: f64) -> Result<Vec<ScanRecord>, MinimizeError> {
    if max_m < 3 {
        return Err(MinimizeError::Config(crate::trig::ConfigError(
            "sweep needs max_m >= 3",
        )));
    }
    let mut records = Vec::new();
    for m in 3..=max_m {
        for n in 2..m {
            records.push(scan_pair(m, n, cfg, tol)?);
        }
    }
    Ok(records)
}

/// Aggregate of the conjecture comparison over the m-odd, n-even pairs of
/// a sweep.
#[derive(Clone, Debug, Default)]
pub struct ConjectureSummary {
    /// Number of m-odd, n-even pairs seen.
    pub considered: usize,
    /// Pairs where the prediction matches a definite verdict.
    pub agreements: usize,
    /// Pairs with a definite verdict contradicting the prediction.
    pub disagreements: Vec<(u32, u32, ScanVerdict, bool)>,
    /// Pairs whose verdict was uncertain.
    pub uncertain: Vec<(u32, u32)>,
}

impl fmt::Display for ConjectureSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "conjecture check: {} pairs, {} agree, {} disagree, {} uncertain",
            self.considered,
            self.agreements,
            self.disagreements.len(),
            self.uncertain.len()
        )?;
        for (m, n, verdict, predicted) in &self.disagreements {
            write!(
                f,
                "\n  disagreement at ({m}, {n}): predicted equality = {predicted}, verdict = {verdict}"
            )?;
        }
        Ok(())
    }
}

/// Compares the conjecture's equality predictions with the verdicts of a
/// sweep. A prediction agrees when `Equal` verdicts coincide with
/// predicted equality and `StrictlyLess` verdicts with predicted strict
/// inequality; `Uncertain` verdicts are tallied separately.
pub fn conjecture_report(records: &[ScanRecord]) -> ConjectureSummary {
    let mut summary = ConjectureSummary::default();
    for r in records {
        let Some(predicted) = r.conjecture_predicts else {
            continue;
        };
        summary.considered += 1;
        match r.verdict {
            ScanVerdict::Uncertain => summary.uncertain.push((r.m, r.n)),
            v => {
                let observed_equal = v == ScanVerdict::Equal;
                if observed_equal == predicted {
                    summary.agreements += 1;
                } else {
                    summary.disagreements.push((r.m, r.n, v, predicted));
                }
            }
        }
    }
    summary
}
