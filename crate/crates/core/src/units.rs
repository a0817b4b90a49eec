//! Engineering-unit parsing for CLI flags. Suffixes are mandatory:
//! frequency-unit ambiguity is this domain's classic footgun.

use std::f64::consts::PI;

use crate::error::{Error, Result};

fn split_suffix(s: &str) -> (&str, &str) {
    let s = s.trim();
    let cut = s
        .char_indices()
        .find(|(_, c)| c.is_alphabetic() && *c != 'e' && *c != 'E')
        .map(|(i, _)| i)
        .unwrap_or(s.len());
    // an 'e'/'E' only counts as part of the number when followed by a digit/sign
    let mut cut = cut;
    if let Some(epos) = s[..cut].rfind(['e', 'E']) {
        let rest = &s[epos + 1..cut];
        if rest.is_empty() || !rest.chars().all(|c| c.is_ascii_digit() || c == '+' || c == '-') {
            cut = epos;
        }
    }
    (&s[..cut], s[cut..].trim())
}

/// "6GHz", "2MHz", "1.4rad/s" -> rad/s.
pub fn parse_frequency(s: &str) -> Result<f64> {
    let (num, suffix) = split_suffix(s);
    let v: f64 = num
        .parse()
        .map_err(|_| Error::invalid(format!("bad frequency '{s}'")))?;
    let scale = match suffix.to_ascii_lowercase().as_str() {
        "rad/s" | "rads" => return Ok(v),
        "hz" => 1.0,
        "khz" => 1e3,
        "mhz" => 1e6,
        "ghz" => 1e9,
        "thz" => 1e12,
        "" => {
            return Err(Error::invalid(format!(
                "frequency '{s}' needs an explicit unit (Hz, kHz, MHz, GHz, rad/s)"
            )))
        }
        other => return Err(Error::invalid(format!("unknown frequency unit '{other}'"))),
    };
    Ok(2.0 * PI * v * scale)
}

/// "22.5ps", "1.5ns", "10s" -> seconds.
pub fn parse_time(s: &str) -> Result<f64> {
    let (num, suffix) = split_suffix(s);
    let v: f64 = num
        .parse()
        .map_err(|_| Error::invalid(format!("bad time '{s}'")))?;
    let scale = match suffix.to_ascii_lowercase().as_str() {
        "s" => 1.0,
        "ms" => 1e-3,
        "us" => 1e-6,
        "ns" => 1e-9,
        "ps" => 1e-12,
        "fs" => 1e-15,
        "" => {
            return Err(Error::invalid(format!(
                "time '{s}' needs an explicit unit (s, ms, us, ns, ps)"
            )))
        }
        other => return Err(Error::invalid(format!("unknown time unit '{other}'"))),
    };
    Ok(v * scale)
}

/// "3dB" or bare "3" -> dB.
pub fn parse_ripple_db(s: &str) -> Result<f64> {
    let (num, suffix) = split_suffix(s);
    let v: f64 = num
        .parse()
        .map_err(|_| Error::invalid(format!("bad ripple '{s}'")))?;
    match suffix.to_ascii_lowercase().as_str() {
        "" | "db" => Ok(v),
        other => Err(Error::invalid(format!("unknown ripple unit '{other}'"))),
    }
}
