//! Causality verification for band-limited sampled scattering parameters.
//!
//! The check runs an inverse Fourier transform of the samples through a
//! minimum-phase analog low-pass filter, computes a rigorous bound on the
//! error caused by the missing out-of-band spectrum, and flags the
//! response as non-causal whenever the filtered impulse response exceeds
//! that bound for t < 0. A violation comes with its time extent and a
//! candidate delay repair.
//!
//! Typical flow:
//!
//! ```
//! use causalift::pipeline::{check_response, CheckConfig};
//! use causalift::synth::gen_noncausal_example;
//!
//! let response = gen_noncausal_example(100, 2.0).unwrap();
//! let out = check_response(&response, &CheckConfig::default()).unwrap();
//! println!("{}", out.report.summary);
//! ```

pub mod checker;
pub mod errbound;
pub mod error;
pub mod filters;
pub mod ift;
pub mod pipeline;
pub mod spdata;
pub mod synth;
pub mod units;

pub use checker::{apply_delay, check_causality, suggest_delay, CausalityReport, Verdict};
pub use errbound::{assemble_bound, lowfreq_gap_bound, truncation_bound, ErrorBound};
pub use error::{Error, Result};
pub use filters::{design_butterworth, design_chebyshev1, AnalogFilter, FilterFamily, FilterSpec};
pub use ift::{filtered_ift, make_time_grid, raw_ift, TimeGrid, TimeSeries};
pub use pipeline::{check_response, CheckConfig, CheckOutput};
pub use spdata::{parse_csv, parse_touchstone, FrequencyResponse, NetworkData};
