//! Deterministic text renderings of sweep records and statuses.
//!
//! The CSV schema is fixed: one row per record under [`CSV_HEADER`],
//! floating-point fields with 17 significant digits, `inf` for the
//! infinite margin, endpoint argmins as the literals `0` and `pi`, the
//! candidate value as an exact reduced fraction, and an empty prediction
//! field outside the m-odd/n-even region. The JSON report mirrors the
//! same field names with the same value texts; `B` stays a JSON number,
//! `margin`/`argmin_t`/`expected` are strings, and the missing prediction
//! becomes `null`. Byte determinism of both formats is part of the
//! contract, so every piece of text is produced here and nowhere else.

use bombieri_core::scan::ScanRecord;
use bombieri_core::trig::ArgMin;
use bombieri_core::univalence::UnivalenceStatus;

/// Fixed header of the sweep CSV report.
pub const CSV_HEADER: &str =
    "m,n,class,B,expected,verdict,argmin_t,margin,theorem_covers,conjecture_predicts";

/// Renders a float with 17 significant digits, enough to reproduce the
/// exact bit pattern on parse.
pub fn float17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Argmin location as a CSV/JSON field: endpoint tags or the angle.
pub fn argmin_text(argmin: &ArgMin) -> String {
    match argmin {
        ArgMin::Zero => "0".to_string(),
        ArgMin::Interior(t) => float17(*t),
        ArgMin::Pi => "pi".to_string(),
    }
}

/// Candidate-separation margin; the infinite case (no second candidate
/// below +infinity) prints as `inf`.
pub fn margin_text(margin: f64) -> String {
    if margin.is_infinite() {
        "inf".to_string()
    } else {
        float17(margin)
    }
}

/// The conjecture prediction column: empty outside the m-odd/n-even
/// region.
pub fn prediction_text(prediction: Option<bool>) -> &'static str {
    match prediction {
        Some(true) => "true",
        Some(false) => "false",
        None => "",
    }
}

/// Status names shared by the `dieudonne` and `family` subcommands.
pub fn status_text(status: UnivalenceStatus) -> &'static str {
    match status {
        UnivalenceStatus::UnivalentSampled => "UNIVALENT_SAMPLED",
        UnivalenceStatus::NotUnivalent => "NOT_UNIVALENT",
        UnivalenceStatus::Uncertain => "UNCERTAIN",
    }
}

/// One CSV row in header order.
pub fn record_csv_row(r: &ScanRecord) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{}",
        r.m,
        r.n,
        r.class,
        float17(r.b),
        r.expected,
        r.verdict,
        argmin_text(&r.argmin),
        margin_text(r.margin),
        r.theorem_covers,
        prediction_text(r.conjecture_predicts),
    )
}

/// Full CSV report: header plus one row per record.
pub fn records_csv(records: &[ScanRecord]) -> String {
    let mut out = String::with_capacity(64 * (records.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&record_csv_row(r));
        out.push('\n');
    }
    out
}

/// One record as a JSON object with the CSV field names.
pub fn record_json(r: &ScanRecord) -> String {
    format!(
        "{{\"m\":{},\"n\":{},\"class\":\"{}\",\"B\":{},\"expected\":\"{}\",\"verdict\":\"{}\",\"argmin_t\":\"{}\",\"margin\":\"{}\",\"theorem_covers\":{},\"conjecture_predicts\":{}}}",
        r.m,
        r.n,
        r.class,
        float17(r.b),
        r.expected,
        r.verdict,
        argmin_text(&r.argmin),
        margin_text(r.margin),
        r.theorem_covers,
        match r.conjecture_predicts {
            Some(true) => "true",
            Some(false) => "false",
            None => "null",
        },
    )
}

/// Full JSON report: an array with one object per line.
pub fn records_json(records: &[ScanRecord]) -> String {
    let mut out = String::from("[\n");
    for (i, r) in records.iter().enumerate() {
        out.push_str(&record_json(r));
        out.push_str(if i + 1 == records.len() { "\n" } else { ",\n" });
    }
    out.push_str("]\n");
    out
}
