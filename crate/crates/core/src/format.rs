//! Number formatting for CSV and config output.

/// Significant digits every formatted number carries at least.
pub const MIN_SIGNIFICANT_DIGITS: usize = 12;

/// Scientific notation that round-trips exactly and shows at least
/// [`MIN_SIGNIFICANT_DIGITS`] digits, e.g. `2.29000000000e-6`.
pub fn fmt_sci(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let s = format!("{x:e}");
    let (mantissa, exponent) = s.split_once('e').expect("`{:e}` always has an exponent");
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => ("-", rest),
        None => ("", mantissa),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    let mut frac = frac.to_string();
    while 1 + frac.len() < MIN_SIGNIFICANT_DIGITS {
        frac.push('0');
    }
    format!("{sign}{int}.{frac}e{exponent}")
}
