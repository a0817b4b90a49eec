//! One-call pipeline: filter design, filtered transform, error bound,
//! verdict. Shared by the CLI and the end-to-end tests.

use serde::{Deserialize, Serialize};

use crate::checker::{check_causality, CausalityReport};
use crate::errbound::{assemble_bound, lowfreq_gap_bound, truncation_bound};
use crate::error::{Error, Result};
use crate::filters::{design_butterworth, design_chebyshev1, AnalogFilter, FilterFamily};
use crate::ift::{filtered_ift, make_time_grid, TimeSeries};
use crate::spdata::FrequencyResponse;

/// Everything that determines a single-parameter check; echoed verbatim
/// into the report so a run can be reproduced from its output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckConfig {
    pub family: FilterFamily,
    pub order: usize,
    /// rad/s; None = 0.3 * omega_max of the input.
    pub cutoff: Option<f64>,
    pub ripple_db: f64,
    /// Out-of-band magnitude bound M (1 for passive devices).
    pub m_bound: f64,
    /// Bound below the lowest sample; None = same as `m_bound`.
    pub m_low: Option<f64>,
    pub oversample: f64,
    /// seconds; None = 10 / cutoff.
    pub horizon: Option<f64>,
    /// Fold the discretization estimate into E (extension over the pure
    /// spectral-truncation bound; disable to get that bound alone).
    pub include_quad_margin: bool,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            family: FilterFamily::Chebyshev1,
            order: 4,
            cutoff: None,
            ripple_db: 6.0,
            m_bound: 1.0,
            m_low: None,
            oversample: 8.0,
            horizon: None,
            include_quad_margin: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutput {
    pub report: CausalityReport,
    pub series: TimeSeries,
    pub warnings: Vec<String>,
}

pub fn build_filter(config: &CheckConfig, omega_max: f64) -> Result<AnalogFilter> {
    if config.order < 2 {
        return Err(Error::invalid(
            "checking requires filter order >= 2 (the truncation bound diverges otherwise)",
        ));
    }
    let cutoff = config.cutoff.unwrap_or(0.3 * omega_max);
    if cutoff >= omega_max {
        return Err(Error::invalid(format!(
            "cutoff {cutoff} rad/s must lie inside the data band (omega_max = {omega_max} rad/s)"
        )));
    }
    match config.family {
        FilterFamily::Butterworth => design_butterworth(config.order, cutoff),
        FilterFamily::Chebyshev1 => design_chebyshev1(config.order, cutoff, config.ripple_db),
    }
}

/// Runs the full check on one parameter.
pub fn check_response(response: &FrequencyResponse, config: &CheckConfig) -> Result<CheckOutput> {
    let filter = build_filter(config, response.omega_max)?;
    let horizon = config.horizon.unwrap_or(10.0 / filter.spec.cutoff);
    let grid = make_time_grid(response, config.oversample, horizon)?;
    let series = filtered_ift(response, &filter, &grid)?;

    let mut warnings = Vec::new();
    let max_h = response.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if series.imag_residual > 1e-6 * max_h.max(1e-300) {
        warnings.push(format!(
            "DC sample has a significant imaginary part ({:.3e}); it was discarded, but a real impulse response demands a real DC value",
            series.imag_residual
        ));
    }

    let tail = truncation_bound(&filter, response.omega_max, config.m_bound)?;
    let omega_min = response.omega[0];
    let m_low = config.m_low.unwrap_or(config.m_bound);
    let lowfreq = lowfreq_gap_bound(&filter, omega_min, m_low)?;
    if lowfreq > 0.0 {
        warnings.push(format!(
            "samples start at {omega_min} rad/s (no DC point); a low-frequency gap term {lowfreq:.3e} was added to E (extension beyond the pure truncation bound)"
        ));
    }
    let quad_margin = if config.include_quad_margin {
        series.quad_error_est
    } else {
        0.0
    };
    let bound = assemble_bound(tail, lowfreq, quad_margin, config.m_bound)?;
    let report = check_causality(&response.label, &series, &bound)?;
    Ok(CheckOutput {
        report,
        series,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checker::Verdict;
    use crate::synth::{gen_causal_example, gen_noncausal_example};

    fn paper_config() -> CheckConfig {
        CheckConfig {
            family: FilterFamily::Chebyshev1,
            order: 6,
            cutoff: Some(1.4),
            ripple_db: 3.0,
            ..CheckConfig::default()
        }
    }

    #[test]
    fn causal_benchmark_is_consistent() {
        let r = gen_causal_example(100, 2.0).unwrap();
        let out = check_response(&r, &paper_config()).unwrap();
        assert_eq!(out.report.verdict, Verdict::ConsistentWithCausality);
    }

    #[test]
    fn noncausal_benchmark_is_detected() {
        let r = gen_noncausal_example(100, 2.0).unwrap();
        let out = check_response(&r, &paper_config()).unwrap();
        assert_eq!(out.report.verdict, Verdict::ViolationDetected);
        let t = out.report.t_star.unwrap();
        assert!((-5.0 - 1e-9..0.0).contains(&t), "t_star = {t}");
    }

    #[test]
    fn cutoff_must_be_in_band() {
        let r = gen_causal_example(100, 2.0).unwrap();
        let cfg = CheckConfig {
            cutoff: Some(2.5),
            ..paper_config()
        };
        assert!(check_response(&r, &cfg).is_err());
    }

    #[test]
    fn order_below_two_rejected() {
        let r = gen_causal_example(100, 2.0).unwrap();
        let cfg = CheckConfig {
            order: 1,
            ..paper_config()
        };
        assert!(check_response(&r, &cfg).is_err());
    }

    #[test]
    fn config_round_trips_through_json() {
        let cfg = paper_config();
        let s = serde_json::to_string(&cfg).unwrap();
        let back: CheckConfig = serde_json::from_str(&s).unwrap();
        assert_eq!(cfg, back);
    }
}
