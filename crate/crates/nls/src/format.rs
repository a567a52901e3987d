//! C `printf("%.12e")`-compatible number formatting for CSV output.

/// Formats `x` like C's `%.12e`: 12 fractional digits and a signed exponent of
/// at least two digits (`1.500000000000e-03`). Non-finite values print as
/// `nan`, `inf` or `-inf`.
pub fn sci12(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let s = format!("{x:.12e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}
