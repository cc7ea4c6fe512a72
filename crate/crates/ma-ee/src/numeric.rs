//! Small numerical helpers: bracketing root-finder and grid generation.

use crate::error::{Error, Result};

/// Finds a root of `f` on `[lo, hi]` by bisection.
///
/// Requires `f(lo)` and `f(hi)` to have opposite signs (a zero at either
/// endpoint is returned directly). Iterates until the bracket width falls
/// below `tol` relative to the magnitude of the midpoint, or an absolute
/// width of `tol` for brackets around zero.
pub fn bisect<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::domain(format!("invalid bracket [{lo}, {hi}]")));
    }
    if !(tol > 0.0) {
        return Err(Error::domain("tolerance must be positive"));
    }
    let mut a = lo;
    let mut b = hi;
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::domain(format!(
            "no sign change on [{lo}, {hi}]: f(lo)={fa}, f(hi)={fb}"
        )));
    }
    // 200 halvings exhaust f64 resolution for any finite bracket.
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if b - a <= tol * mid.abs().max(1.0) {
            return Ok(mid);
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

/// Formats a float with 12 significant digits in scientific notation.
///
/// Output is locale-free and value-deterministic, which is what makes
/// repeated CSV emissions byte-comparable.
pub fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

/// `n` evenly spaced points covering `[lo, hi]` inclusive.
///
/// The first point is exactly `lo` and the last exactly `hi`; `n` must be
/// at least 2.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2, "linspace needs at least two points");
    let step = (hi - lo) / (n - 1) as f64;
    (0..n)
        .map(|i| if i == n - 1 { hi } else { lo + i as f64 * step })
        .collect()
}
