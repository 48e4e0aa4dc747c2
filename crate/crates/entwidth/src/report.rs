//! Bound reports and deterministic text serialization.
//!
//! Scans emit CSV with a header row and floats printed with 12 significant
//! digits in scientific notation, so identical configurations produce
//! byte-identical files. Structured results (certificates, bound tables) are
//! serialized as JSON through serde.

use serde::{Deserialize, Serialize};

/// Outcome of checking one observable against one named bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    /// Which criterion produced the bound (e.g. "variance_width_2").
    pub criterion: String,
    /// Scalar parameters the bound was evaluated at, name/value pairs.
    pub parameters: Vec<(String, f64)>,
    /// The bound value.
    pub bound: f64,
    /// The observable measured on the state under test.
    pub observed: f64,
    /// Whether the observable beats the bound beyond the criterion tolerance.
    pub violated: bool,
    /// Slack before violation; negative exactly when the bound is beaten
    /// (`observed - bound` for lower bounds, `bound - observed` for upper).
    pub margin: f64,
}

impl BoundReport {
    /// Builds a report for a lower bound, deriving `violated` and `margin`
    /// from the values; violation means the observable dips below the bound.
    pub fn evaluate(
        criterion: impl Into<String>,
        parameters: Vec<(String, f64)>,
        bound: f64,
        observed: f64,
    ) -> Self {
        let margin = observed - bound;
        BoundReport {
            criterion: criterion.into(),
            parameters,
            bound,
            observed,
            violated: margin < -crate::tol::CRITERION_TOL,
            margin,
        }
    }

    /// Builds a report for an upper bound: violation means the observable
    /// exceeds the bound, and `margin` is `bound - observed` (still negative
    /// exactly when violated).
    pub fn evaluate_upper(
        criterion: impl Into<String>,
        parameters: Vec<(String, f64)>,
        bound: f64,
        observed: f64,
    ) -> Self {
        let margin = bound - observed;
        BoundReport {
            criterion: criterion.into(),
            parameters,
            bound,
            observed,
            violated: margin < -crate::tol::CRITERION_TOL,
            margin,
        }
    }
}

/// Formats a float with 12 significant digits (scientific notation), the
/// fixed width used by every CSV column.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.11e}")
}

/// Formats a CSV row from float cells (no trailing newline).
pub fn csv_row(cells: &[f64]) -> String {
    cells
        .iter()
        .map(|&x| fmt_float(x))
        .collect::<Vec<_>>()
        .join(",")
}

/// Assembles a complete CSV document: header plus one line per row.
pub fn csv_document(header: &[&str], rows: &[Vec<f64>]) -> String {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        debug_assert_eq!(row.len(), header.len());
        out.push_str(&csv_row(row));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format_has_12_significant_digits() {
        assert_eq!(fmt_float(1.0), "1.00000000000e0");
        assert_eq!(fmt_float(-0.25), "-2.50000000000e-1");
        assert_eq!(fmt_float(123456.789), "1.23456789000e5");
    }

    #[test]
    fn csv_document_is_deterministic() {
        let header = ["a", "b"];
        let rows = vec![vec![1.0, 2.0], vec![3.5, -0.125]];
        let doc1 = csv_document(&header, &rows);
        let doc2 = csv_document(&header, &rows);
        assert_eq!(doc1, doc2);
        assert!(doc1.starts_with("a,b\n"));
        assert_eq!(doc1.lines().count(), 3);
    }

    #[test]
    fn bound_report_flags_only_beyond_tolerance() {
        let r = BoundReport::evaluate("test", vec![], 1.0, 1.0 - 1e-12);
        assert!(!r.violated);
        let r = BoundReport::evaluate("test", vec![], 1.0, 0.9);
        assert!(r.violated);
        assert!((r.margin + 0.1).abs() < 1e-12);
    }
}
