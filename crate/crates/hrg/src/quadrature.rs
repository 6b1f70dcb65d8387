//! Adaptive Simpson quadrature for the smooth one-dimensional integrals
//! of the model (expected degrees, average-degree calibration).

use crate::error::{HrgError, Result};

const MAX_DEPTH: u32 = 60;

/// Integrates `f` over `[a, b]` to the given relative tolerance.
///
/// Callers are expected to split at known kinks so that `f` is smooth on
/// the interval. Non-convergence within the depth limit is reported as an
/// error rather than returning a silently inaccurate value.
pub(crate) fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    // Absolute budget derived from a first coarse estimate; the floor keeps
    // integrals that are genuinely ~0 from demanding impossible precision.
    let tol = rel_tol * whole.abs().max(1e-300);
    let value = refine(&f, a, b, fa, fm, fb, whole, tol, 0).map_err(|()| {
        HrgError::Quadrature(format!(
            "no convergence on [{a}, {b}] after depth {MAX_DEPTH} (rel_tol {rel_tol:e})"
        ))
    })?;
    Ok(value)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn refine<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> std::result::Result<f64, ()> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol {
        // Richardson extrapolation term.
        return Ok(left + right + delta / 15.0);
    }
    if depth >= MAX_DEPTH {
        return Err(());
    }
    let l = refine(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1)?;
    let r = refine(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1)?;
    Ok(l + r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials_exactly() {
        let v = integrate(|x| x * x, 0.0, 3.0, 1e-12).unwrap();
        assert!((v - 9.0).abs() < 1e-9);
    }

    #[test]
    fn integrates_exponentials() {
        let v = integrate(|x| x.exp(), 0.0, 1.0, 1e-10).unwrap();
        assert!((v - (1f64.exp() - 1.0)).abs() < 1e-9);
    }

    #[test]
    fn empty_interval_is_zero() {
        assert_eq!(integrate(|x| x.exp(), 2.0, 2.0, 1e-8).unwrap(), 0.0);
    }
}
