//! The causality verdict: compare |hat h_F(t)| against the truncation
//! threshold for t < 0, locate the violation in time, and suggest a
//! delay repair.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::errbound::ErrorBound;
use crate::error::{Error, Result};
use crate::ift::TimeSeries;
use crate::spdata::FrequencyResponse;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    ViolationDetected,
    /// One-sided: the check can prove non-causality, never causality.
    ConsistentWithCausality,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CausalityReport {
    pub label: String,
    pub verdict: Verdict,
    /// Most negative t with |h_F(t)| > E; absent when consistent.
    pub t_star: Option<f64>,
    /// Time of the largest excess (secondary diagnostic).
    pub t_worst: Option<f64>,
    /// max over t<0 of |h_F(t)| - E, clamped at 0.
    pub max_excess: f64,
    /// max over t<0 of |h_F(t)|, divided by E.
    pub excess_ratio: f64,
    /// -t_star; the candidate repair delay.
    pub suggested_delay: Option<f64>,
    pub bound: ErrorBound,
    pub summary: String,
}

/// Applies Eq-style threshold test: violation iff some grid point t < 0
/// has |value| strictly above E. Equality stays consistent.
pub fn check_causality(
    label: &str,
    h_f: &TimeSeries,
    bound: &ErrorBound,
) -> Result<CausalityReport> {
    let e = bound.e_total;
    let mut t_star = None;
    let mut t_worst = None;
    let mut max_abs = 0.0f64;
    let mut saw_negative = false;
    for (t, v) in h_f.grid.times().zip(&h_f.values) {
        if t >= 0.0 {
            continue;
        }
        saw_negative = true;
        let a = v.abs();
        if a > e {
            if t_star.is_none() {
                t_star = Some(t); // grid is increasing: first hit is most negative
            }
            if a > max_abs {
                t_worst = Some(t);
            }
        }
        max_abs = max_abs.max(a);
    }
    if !saw_negative {
        return Err(Error::invalid("time grid contains no t < 0 points"));
    }
    let verdict = if t_star.is_some() {
        Verdict::ViolationDetected
    } else {
        Verdict::ConsistentWithCausality
    };
    let max_excess = (max_abs - e).max(0.0);
    let excess_ratio = if e > 0.0 { max_abs / e } else { f64::INFINITY };
    let suggested_delay = t_star.map(|t| -t);
    let summary = match verdict {
        Verdict::ViolationDetected => format!(
            "{label}: causality violation detected; |h_F| exceeds E = {e:.6e} starting at t = {:.6e} s (suggested repair delay {:.6e} s)",
            t_star.unwrap(),
            suggested_delay.unwrap()
        ),
        Verdict::ConsistentWithCausality => format!(
            "{label}: consistent with causality within truncation error (max |h_F| for t<0 is {max_abs:.6e} vs E = {e:.6e}); note this is not a proof of causality"
        ),
    };
    Ok(CausalityReport {
        label: label.to_string(),
        verdict,
        t_star,
        t_worst,
        max_excess,
        excess_ratio,
        suggested_delay,
        bound: bound.clone(),
        summary,
    })
}

/// Multiplies each sample by e^{-j w tau}. A positive tau delays the
/// response; anticipation (negative tau) is rejected.
pub fn apply_delay(response: &FrequencyResponse, tau: f64) -> Result<FrequencyResponse> {
    if tau < 0.0 || !tau.is_finite() {
        return Err(Error::invalid("repair delay must be >= 0"));
    }
    let values = response
        .omega
        .iter()
        .zip(&response.values)
        .map(|(&w, v)| v * Complex64::new(0.0, -w * tau).exp())
        .collect();
    FrequencyResponse::new(response.omega.clone(), values, response.label.clone())
}

pub fn suggest_delay(report: &CausalityReport) -> Option<f64> {
    report.suggested_delay
}
