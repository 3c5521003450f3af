//! Scalar root finding.

use crate::{Error, Result};

/// Bisection on `[lo, hi]`, which must bracket a sign change of `f`.
///
/// Stops once `|f(mid)| < ftol` or the bracket is narrower than `xtol`.
pub fn bisect<F>(mut f: F, mut lo: f64, mut hi: f64, ftol: f64, xtol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut flo = f(lo)?;
    let fhi = f(hi)?;
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::InvalidArgument("bisection interval does not bracket a root"));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fmid = f(mid)?;
        if fmid.abs() < ftol || (hi - lo) < xtol {
            return Ok(mid);
        }
        if fmid.signum() == flo.signum() {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Newton iteration with a central-difference derivative.
pub fn newton<F>(mut f: F, mut x: f64, tol: f64, max_iter: usize) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    for _ in 0..max_iter {
        let fx = f(x)?;
        let h = 1e-6 * x.abs().max(1.0);
        let slope = (f(x + h)? - f(x - h)?) / (2.0 * h);
        if slope == 0.0 || !slope.is_finite() {
            return Err(Error::InvalidArgument("Newton iteration hit a flat point"));
        }
        let step = fx / slope;
        x -= step;
        if step.abs() < tol {
            return Ok(x);
        }
    }
    Err(Error::InvalidArgument("Newton iteration did not converge"))
}
