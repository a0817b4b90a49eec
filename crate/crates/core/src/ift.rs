//! Band-limited inverse Fourier transform of a filtered frequency response,
//! by composite trapezoidal quadrature on the native sample grid.
//!
//! Samples cover omega >= 0 only; Hermitian symmetry H(-jw) = conj H(jw)
//! is folded in analytically, so the integrand becomes
//! (1/pi) * Re[ F(jw) H(jw) e^{jwt} ] on [0, omega_m] and the result is
//! real by construction.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::filters::AnalogFilter;
use crate::spdata::FrequencyResponse;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    pub t_min: f64,
    pub t_max: f64,
    pub step: f64,
}

impl TimeGrid {
    pub fn len(&self) -> usize {
        ((self.t_max - self.t_min) / self.step).round() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        let n = self.len();
        let (t_min, step) = (self.t_min, self.step);
        (0..n).map(move |k| t_min + k as f64 * step)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    pub grid: TimeGrid,
    pub values: Vec<f64>,
    /// Max |imaginary part| discarded by the Hermitian fold (DC sample).
    pub imag_residual: f64,
    /// Max over the grid of |trapezoid - Simpson-on-pairs|.
    pub quad_error_est: f64,
}

/// Builds a uniform grid straddling t = 0, with t = 0 on the grid.
/// step = pi / (omega_max * oversample).
pub fn make_time_grid(
    response: &FrequencyResponse,
    oversample: f64,
    horizon: f64,
) -> Result<TimeGrid> {
    if oversample < 1.0 || !oversample.is_finite() {
        return Err(Error::invalid("oversample must be >= 1"));
    }
    if horizon <= 0.0 || !horizon.is_finite() {
        return Err(Error::invalid("horizon must be positive"));
    }
    let step = PI / (response.omega_max * oversample);
    if horizon < step {
        return Err(Error::invalid(format!(
            "horizon {horizon} is smaller than the grid step {step}"
        )));
    }
    let n = (horizon / step).round().max(1.0);
    Ok(TimeGrid {
        t_min: -n * step,
        t_max: n * step,
        step,
    })
}

/// Spectral table after the Hermitian fold: weights 1/pi (DC handled via
/// the trapezoid endpoint), DC forced real.
struct FoldedSpectrum {
    omega: Vec<f64>,
    /// F(jw) * H(jw) per node (F = 1 for the raw transform).
    spectrum: Vec<Complex64>,
    imag_residual: f64,
}

fn hermitian_fold(response: &FrequencyResponse, filter: Option<&AnalogFilter>) -> FoldedSpectrum {
    let mut spectrum = Vec::with_capacity(response.len());
    let mut imag_residual = 0.0f64;
    for (k, (&w, &h)) in response.omega.iter().zip(&response.values).enumerate() {
        let mut v = h;
        if k == 0 && w == 0.0 {
            // a real impulse response demands a real DC value
            imag_residual = v.im.abs();
            v = Complex64::new(v.re, 0.0);
        }
        if let Some(f) = filter {
            v *= f.eval(w);
        }
        spectrum.push(v);
    }
    FoldedSpectrum {
        omega: response.omega.clone(),
        spectrum,
        imag_residual,
    }
}

/// Composite trapezoid of g(w) over the (possibly nonuniform) nodes.
fn trapezoid(omega: &[f64], g: &[f64]) -> f64 {
    let mut acc = 0.0;
    for k in 1..omega.len() {
        acc += 0.5 * (omega[k] - omega[k - 1]) * (g[k] + g[k - 1]);
    }
    acc
}

/// Composite Simpson over pairs of intervals (nonuniform 3-point rule),
/// trapezoid on a trailing odd interval. Used only as an error estimator.
fn simpson_on_pairs(omega: &[f64], g: &[f64]) -> f64 {
    let n = omega.len();
    let mut acc = 0.0;
    let mut k = 0;
    while k + 2 < n {
        let h0 = omega[k + 1] - omega[k];
        let h1 = omega[k + 2] - omega[k + 1];
        let h = h0 + h1;
        acc += h / 6.0
            * ((2.0 - h1 / h0) * g[k] + h * h / (h0 * h1) * g[k + 1] + (2.0 - h0 / h1) * g[k + 2]);
        k += 2;
    }
    if k + 1 < n {
        acc += 0.5 * (omega[k + 1] - omega[k]) * (g[k + 1] + g[k]);
    }
    acc
}

fn transform(
    response: &FrequencyResponse,
    filter: Option<&AnalogFilter>,
    grid: &TimeGrid,
) -> Result<TimeSeries> {
    if response.len() < 2 {
        return Err(Error::invalid("need at least 2 frequency samples"));
    }
    if let Some(f) = filter {
        let (ok, bad) = f.verify_minimum_phase();
        if !ok {
            return Err(Error::invalid(format!(
                "filter is not minimum phase; offending poles: {bad:?}"
            )));
        }
    }
    let folded = hermitian_fold(response, filter);
    let mut values = Vec::with_capacity(grid.len());
    let mut quad_error_est = 0.0f64;
    let mut integrand = vec![0.0f64; folded.omega.len()];
    for t in grid.times() {
        for ((g, &w), &s) in integrand.iter_mut().zip(&folded.omega).zip(&folded.spectrum) {
            let phase = Complex64::new(0.0, w * t).exp();
            *g = (s * phase).re;
        }
        let trap = trapezoid(&folded.omega, &integrand) / PI;
        let simp = simpson_on_pairs(&folded.omega, &integrand) / PI;
        quad_error_est = quad_error_est.max((trap - simp).abs());
        values.push(trap);
    }
    Ok(TimeSeries {
        grid: *grid,
        values,
        imag_residual: folded.imag_residual,
        quad_error_est,
    })
}

/// hat h_F(t) of the filtered response H_F = F * H.
pub fn filtered_ift(
    response: &FrequencyResponse,
    filter: &AnalogFilter,
    grid: &TimeGrid,
) -> Result<TimeSeries> {
    transform(response, Some(filter), grid)
}

/// hat h(t) with no filter; reproduces the truncation artifacts that make
/// the unfiltered check unreliable. Comparison mode only.
pub fn raw_ift(response: &FrequencyResponse, grid: &TimeGrid) -> Result<TimeSeries> {
    transform(response, None, grid)
}
