//! Truncation-error threshold: the out-of-band integral of the filter
//! magnitude, plus a low-frequency-gap extension for responses that do not
//! start at DC, plus the quadrature margin of the transform itself.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::filters::AnalogFilter;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorBound {
    /// Threshold used by the checker.
    pub e_total: f64,
    /// M * (1/pi) * integral of |F| over [omega_m, inf).
    pub tail_part: f64,
    /// M_low * (1/pi) * integral of |F| over [0, omega_min]; 0 at DC.
    pub lowfreq_part: f64,
    /// Out-of-band magnitude bound on H (1 for passive devices).
    pub m_bound: f64,
    /// Discretization margin copied from the time series.
    pub quadrature_margin: f64,
}

/// Recursive adaptive Simpson. `tol` is an absolute tolerance on the
/// subinterval; terminates on the usual 15x Richardson criterion.
fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(f, a, b, fa, fm, fb, whole, tol, 50)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
}

/// Absolute tolerance for the bound quadratures; negligible against any
/// detection threshold.
fn quad_tol(estimate: f64) -> f64 {
    1e-9 * estimate.abs().max(1.0)
}

/// M * (1/pi) * integral over [omega_m, inf) of |F(jw)|.
///
/// The finite part up to Omega = 1e3 * max(cutoff, omega_m) is adaptive
/// Simpson; beyond Omega the integrand is majorized by
/// gain / (w - rho)^order with rho the largest pole magnitude, whose
/// integral is closed-form. The far piece over-estimates, keeping the
/// whole bound one-sided.
pub fn truncation_bound(filter: &AnalogFilter, omega_m: f64, m_bound: f64) -> Result<f64> {
    let order = filter.spec.order;
    if order == 0 {
        return Err(Error::invalid("filter order must be >= 1"));
    }
    if order == 1 {
        return Err(Error::DivergentBound(
            "the out-of-band integral of an order-1 filter diverges; use order >= 2".into(),
        ));
    }
    if omega_m <= 0.0 || !omega_m.is_finite() {
        return Err(Error::invalid("omega_m must be positive"));
    }
    if m_bound < 0.0 || !m_bound.is_finite() {
        return Err(Error::invalid("M must be >= 0"));
    }
    if m_bound == 0.0 {
        return Ok(0.0);
    }
    let big_omega = 1e3 * filter.spec.cutoff.max(omega_m);
    let integrand = |w: f64| filter.magnitude(w);
    // coarse estimate for the relative tolerance scale
    let coarse = (big_omega - omega_m) * integrand(omega_m);
    let finite = adaptive_simpson(&integrand, omega_m, big_omega, quad_tol(coarse / PI));
    let rho = filter.pole_radius();
    debug_assert!(big_omega > 2.0 * rho);
    let n1 = (order - 1) as f64;
    let far = filter.gain / (n1 * (big_omega - rho).powf(n1));
    Ok(m_bound / PI * (finite + far))
}

/// M_low * (1/pi) * integral over [0, omega_min] of |F(jw)|; covers the
/// gap when samples start above DC.
pub fn lowfreq_gap_bound(filter: &AnalogFilter, omega_min: f64, m_low: f64) -> Result<f64> {
    if omega_min < 0.0 || !omega_min.is_finite() {
        return Err(Error::invalid("omega_min must be >= 0"));
    }
    if m_low < 0.0 || !m_low.is_finite() {
        return Err(Error::invalid("M_low must be >= 0"));
    }
    if omega_min == 0.0 || m_low == 0.0 {
        return Ok(0.0);
    }
    let integrand = |w: f64| filter.magnitude(w);
    let coarse = omega_min * integrand(0.0);
    let val = adaptive_simpson(&integrand, 0.0, omega_min, quad_tol(coarse / PI));
    Ok(m_low / PI * val)
}

pub fn assemble_bound(
    tail_part: f64,
    lowfreq_part: f64,
    quadrature_margin: f64,
    m_bound: f64,
) -> Result<ErrorBound> {
    for (name, v) in [
        ("tail_part", tail_part),
        ("lowfreq_part", lowfreq_part),
        ("quadrature_margin", quadrature_margin),
        ("M", m_bound),
    ] {
        if v < 0.0 || !v.is_finite() {
            return Err(Error::invalid(format!("{name} must be >= 0 and finite")));
        }
    }
    Ok(ErrorBound {
        e_total: tail_part + lowfreq_part + quadrature_margin,
        tail_part,
        lowfreq_part,
        m_bound,
        quadrature_margin,
    })
}
