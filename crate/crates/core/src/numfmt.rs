//! Number formatting shared by the CSV/JSON serializers.

/// Format a float with 17 significant digits (enough to round-trip any f64).
pub(crate) fn sig17(x: f64) -> String {
    format!("{x:.16e}")
}
