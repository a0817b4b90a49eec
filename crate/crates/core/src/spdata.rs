//! Sampled multiport scattering-parameter data and ingestion from
//! Touchstone v1 and CSV files. Frequencies are stored in rad/s.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

pub const TWO_PI: f64 = 2.0 * PI;

/// Relative spacing below which two frequency nodes count as duplicates.
const DUP_REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct NetworkData {
    pub port_count: usize,
    /// Angular frequencies in rad/s, strictly increasing, all >= 0.
    pub frequencies: Vec<f64>,
    /// Row-major (i,j) grid; entries[(i-1)*n + (j-1)] aligns with `frequencies`.
    pub entries: Vec<Vec<Complex64>>,
    pub reference_impedance: f64,
    pub source_meta: String,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyResponse {
    /// Angular frequencies in rad/s, strictly increasing, all >= 0.
    pub omega: Vec<f64>,
    pub values: Vec<Complex64>,
    pub omega_max: f64,
    pub label: String,
}

impl FrequencyResponse {
    pub fn new(omega: Vec<f64>, values: Vec<Complex64>, label: impl Into<String>) -> Result<Self> {
        if omega.len() != values.len() {
            return Err(Error::invalid("omega and values must have the same length"));
        }
        if omega.len() < 2 {
            return Err(Error::invalid("a frequency response needs at least 2 samples"));
        }
        check_monotone(&omega, 0)?;
        let omega_max = *omega.last().unwrap();
        Ok(FrequencyResponse {
            omega,
            values,
            omega_max,
            label: label.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.omega.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omega.is_empty()
    }
}

impl NetworkData {
    /// Extracts the (i,j) parameter (1-based port indices) as a standalone response.
    pub fn response(&self, i: usize, j: usize) -> Result<FrequencyResponse> {
        let n = self.port_count;
        if i < 1 || i > n || j < 1 || j > n {
            return Err(Error::invalid(format!(
                "port index ({i},{j}) out of range for {n}-port network"
            )));
        }
        FrequencyResponse::new(
            self.frequencies.clone(),
            self.entries[(i - 1) * n + (j - 1)].clone(),
            format!("S{i}{j}"),
        )
    }

    /// All (i,j) labels in row-major order.
    pub fn labels(&self) -> Vec<String> {
        let n = self.port_count;
        (1..=n)
            .flat_map(|i| (1..=n).map(move |j| format!("S{i}{j}")))
            .collect()
    }
}

fn check_monotone(omega: &[f64], line_hint: usize) -> Result<()> {
    for (k, w) in omega.iter().enumerate() {
        if !w.is_finite() || *w < 0.0 {
            return Err(Error::parse(
                line_hint,
                format!("frequency {w} is negative or non-finite"),
            ));
        }
        if k > 0 {
            let prev = omega[k - 1];
            let scale = w.abs().max(prev.abs()).max(1.0);
            if *w <= prev || (w - prev).abs() <= DUP_REL_TOL * scale {
                return Err(Error::parse(
                    line_hint,
                    format!("frequencies not strictly increasing near sample {k} ({prev} then {w})"),
                ));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SFormat {
    Ri,
    Ma,
    Db,
}

struct OptionLine {
    unit_to_hz: f64,
    format: SFormat,
    resistance: f64,
}

fn parse_option_line(line: &str, line_no: usize) -> Result<OptionLine> {
    let mut unit_to_hz = 1e9; // Touchstone default GHz
    let mut format = SFormat::Ma; // Touchstone default MA
    let mut resistance = 50.0;
    let mut tokens = line.trim_start_matches('#').split_whitespace().peekable();
    while let Some(tok) = tokens.next() {
        match tok.to_ascii_uppercase().as_str() {
            "HZ" => unit_to_hz = 1.0,
            "KHZ" => unit_to_hz = 1e3,
            "MHZ" => unit_to_hz = 1e6,
            "GHZ" => unit_to_hz = 1e9,
            "S" => {}
            "Y" | "Z" | "H" | "G" => {
                return Err(Error::parse(
                    line_no,
                    format!("parameter type '{tok}' not supported (S only)"),
                ));
            }
            "RI" => format = SFormat::Ri,
            "MA" => format = SFormat::Ma,
            "DB" => format = SFormat::Db,
            "R" => {
                let v = tokens
                    .next()
                    .ok_or_else(|| Error::parse(line_no, "option line: 'R' without a value"))?;
                resistance = v.parse::<f64>().map_err(|_| {
                    Error::parse(line_no, format!("option line: bad resistance '{v}'"))
                })?;
            }
            other => {
                return Err(Error::parse(
                    line_no,
                    format!("option line: unrecognized token '{other}'"),
                ));
            }
        }
    }
    Ok(OptionLine {
        unit_to_hz,
        format,
        resistance,
    })
}

fn to_complex(a: f64, b: f64, format: SFormat) -> Complex64 {
    match format {
        SFormat::Ri => Complex64::new(a, b),
        SFormat::Ma => Complex64::from_polar(a, b * PI / 180.0),
        SFormat::Db => Complex64::from_polar(10f64.powf(a / 20.0), b * PI / 180.0),
    }
}

/// Parses a Touchstone v1.x file. `declared_ports` comes from the .sNp
/// extension; the data layout depends on it.
pub fn parse_touchstone(text: &str, declared_ports: usize) -> Result<NetworkData> {
    if declared_ports < 1 {
        return Err(Error::invalid("declared_ports must be >= 1"));
    }
    let n = declared_ports;
    let values_per_record = 1 + 2 * n * n;

    let mut option: Option<OptionLine> = None;
    let mut option_line_no = 0usize;
    // (token, line_no) stream of numeric data
    let mut tokens: Vec<(f64, usize)> = Vec::new();
    // line numbers at which a fresh line started, to spot the noise section
    let mut line_starts: Vec<(usize, usize)> = Vec::new(); // (token index, line_no)
    let mut warnings = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('!') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('[') {
            return Err(Error::parse(
                line_no,
                format!("Touchstone v2 keyword '{line}' not supported (v1 only)"),
            ));
        }
        if line.starts_with('#') {
            if option.is_some() {
                return Err(Error::parse(line_no, "duplicate option line"));
            }
            option = Some(parse_option_line(line, line_no)?);
            option_line_no = line_no;
            continue;
        }
        line_starts.push((tokens.len(), line_no));
        for tok in line.split_whitespace() {
            let v = tok
                .parse::<f64>()
                .map_err(|_| Error::parse(line_no, format!("expected a number, got '{tok}'")))?;
            tokens.push((v, line_no));
        }
    }

    let option = option.ok_or_else(|| Error::parse(0, "missing '#' option line"))?;
    if tokens.is_empty() {
        return Err(Error::parse(0, "no data rows"));
    }

    let mut frequencies: Vec<f64> = Vec::new();
    let mut grid: Vec<Vec<Complex64>> = vec![Vec::new(); n * n];
    let mut pos = 0usize;
    while pos < tokens.len() {
        let (freq_raw, rec_line) = tokens[pos];
        let omega = TWO_PI * freq_raw * option.unit_to_hz;
        // A 2-port noise-parameter section starts where frequency drops back down.
        if n == 2 && !frequencies.is_empty() && omega <= *frequencies.last().unwrap() {
            warnings.push(format!(
                "line {rec_line}: noise-parameter section ignored"
            ));
            break;
        }
        if pos + values_per_record > tokens.len() {
            return Err(Error::parse(
                rec_line,
                format!(
                    "incomplete data record: expected {} values for a {n}-port point, got {}",
                    values_per_record - 1,
                    tokens.len() - pos - 1
                ),
            ));
        }
        frequencies.push(omega);
        let vals: Vec<Complex64> = (0..n * n)
            .map(|k| {
                let a = tokens[pos + 1 + 2 * k].0;
                let b = tokens[pos + 2 + 2 * k].0;
                to_complex(a, b, option.format)
            })
            .collect();
        // 2-port files order the pairs S11 S21 S12 S22; everything else is row-major.
        if n == 2 {
            grid[0].push(vals[0]); // S11
            grid[2].push(vals[1]); // S21
            grid[1].push(vals[2]); // S12
            grid[3].push(vals[3]); // S22
        } else {
            for (k, v) in vals.into_iter().enumerate() {
                grid[k].push(v);
            }
        }
        pos += values_per_record;
    }

    check_monotone(&frequencies, tokens[0].1)?;
    if frequencies.len() < 2 {
        return Err(Error::parse(
            tokens[0].1,
            "need at least 2 frequency points",
        ));
    }

    let _ = (option_line_no, line_starts);
    Ok(NetworkData {
        port_count: n,
        frequencies,
        entries: grid,
        reference_impedance: option.resistance,
        source_meta: String::new(),
        warnings,
    })
}

/// Writes a Touchstone v1 file in Hz / RI format.
///
/// Frequency values are nudged within a couple of ulps so that
/// parse(serialize(net)) reproduces the rad/s grid bit-exactly.
pub fn serialize_touchstone(net: &NetworkData) -> String {
    let n = net.port_count;
    let mut out = String::new();
    out.push_str("! written by causalift\n");
    out.push_str(&format!("# Hz S RI R {}\n", net.reference_impedance));
    for (k, &omega) in net.frequencies.iter().enumerate() {
        let f = hz_preimage(omega);
        let mut line = format!("{f:?}");
        let pairs: Vec<(usize, usize)> = if n == 2 {
            vec![(0, 0), (1, 0), (0, 1), (1, 1)]
        } else {
            (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect()
        };
        for (i, j) in pairs {
            let v = net.entries[i * n + j][k];
            line.push_str(&format!(" {:?} {:?}", v.re, v.im));
        }
        line.push('\n');
        out.push_str(&line);
    }
    out
}

/// Finds an Hz value whose product with 2*pi rounds to exactly `omega`.
fn hz_preimage(omega: f64) -> f64 {
    let f = omega / TWO_PI;
    if f * TWO_PI == omega {
        return f;
    }
    let mut up = f;
    let mut down = f;
    for _ in 0..8 {
        up = next_up(up);
        down = next_down(down);
        if up * TWO_PI == omega {
            return up;
        }
        if down * TWO_PI == omega {
            return down;
        }
    }
    f
}

fn next_up(x: f64) -> f64 {
    f64::from_bits(x.to_bits() + 1)
}

fn next_down(x: f64) -> f64 {
    f64::from_bits(x.to_bits() - 1)
}

/// Parses a single-parameter CSV with header `frequency_hz,real,imag`.
pub fn parse_csv(text: &str) -> Result<FrequencyResponse> {
    let mut omega = Vec::new();
    let mut values = Vec::new();
    let mut saw_header = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if !saw_header {
            let cols: Vec<&str> = line.split(',').map(str::trim).collect();
            if cols != ["frequency_hz", "real", "imag"] {
                return Err(Error::parse(
                    line_no,
                    "expected header 'frequency_hz,real,imag'",
                ));
            }
            saw_header = true;
            continue;
        }
        let cols: Vec<&str> = line.split(',').map(str::trim).collect();
        if cols.len() != 3 {
            return Err(Error::parse(
                line_no,
                format!("expected 3 columns, got {}", cols.len()),
            ));
        }
        let mut nums = [0.0f64; 3];
        for (k, c) in cols.iter().enumerate() {
            nums[k] = c
                .parse::<f64>()
                .map_err(|_| Error::parse(line_no, format!("bad number '{c}'")))?;
        }
        omega.push(TWO_PI * nums[0]);
        values.push(Complex64::new(nums[1], nums[2]));
    }
    if !saw_header {
        return Err(Error::parse(0, "empty CSV (missing header)"));
    }
    if omega.is_empty() {
        return Err(Error::parse(0, "no data rows"));
    }
    check_monotone(&omega, 0)?;
    FrequencyResponse::new(omega, values, "response")
}

/// Writes the CSV form read back by [`parse_csv`].
pub fn serialize_csv(resp: &FrequencyResponse) -> String {
    let mut out = String::from("frequency_hz,real,imag\n");
    for (w, v) in resp.omega.iter().zip(&resp.values) {
        out.push_str(&format!("{:?},{:?},{:?}\n", hz_preimage(*w), v.re, v.im));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_port_ghz_ri() {
        let net = parse_touchstone("# GHz S RI R 50\n1.0 0.5 -0.5\n2.0 0.4 -0.4\n", 1).unwrap();
        assert_eq!(net.port_count, 1);
        assert!((net.frequencies[0] - TWO_PI * 1e9).abs() < 1e-3);
        assert_eq!(net.entries[0][0], Complex64::new(0.5, -0.5));
        assert_eq!(net.reference_impedance, 50.0);
    }

    #[test]
    fn db_format_unity() {
        let net = parse_touchstone("# Hz S DB R 50\n1 0 0\n2 0 0\n", 1).unwrap();
        let v = net.entries[0][0];
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn ma_format() {
        let net = parse_touchstone("# Hz S MA R 50\n1 1 90\n2 1 90\n", 1).unwrap();
        let v = net.entries[0][0];
        assert!((v - Complex64::new(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn two_port_column_order() {
        // S11 S21 S12 S22
        let text = "# Hz S RI R 50\n1 1 0 2 0 3 0 4 0\n2 1 0 2 0 3 0 4 0\n";
        let net = parse_touchstone(text, 2).unwrap();
        assert_eq!(net.response(1, 1).unwrap().values[0].re, 1.0);
        assert_eq!(net.response(2, 1).unwrap().values[0].re, 2.0);
        assert_eq!(net.response(1, 2).unwrap().values[0].re, 3.0);
        assert_eq!(net.response(2, 2).unwrap().values[0].re, 4.0);
    }

    #[test]
    fn out_of_range_port() {
        let text = "# Hz S RI R 50\n1 1 0 2 0 3 0 4 0\n2 1 0 2 0 3 0 4 0\n";
        let net = parse_touchstone(text, 2).unwrap();
        assert!(net.response(3, 1).is_err());
    }

    #[test]
    fn wrapped_data_lines() {
        let text = "# Hz S RI R 50\n1 1 0 2 0\n3 0 4 0\n2 1 0 2 0 3 0 4 0\n";
        let net = parse_touchstone(text, 2).unwrap();
        assert_eq!(net.frequencies.len(), 2);
    }

    #[test]
    fn comments_ignored() {
        let text = "! header comment\n# Hz S RI R 50\n1 0.5 0.5 ! inline\n2 0.5 0.5\n";
        let net = parse_touchstone(text, 1).unwrap();
        assert_eq!(net.frequencies.len(), 2);
    }

    #[test]
    fn non_monotone_rejected() {
        let text = "# Hz S RI R 50\n2 1 0\n1 1 0\n";
        let err = parse_touchstone(text, 1).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }

    #[test]
    fn duplicate_frequency_rejected() {
        let text = "# Hz S RI R 50\n1 1 0\n1 1 0\n";
        assert!(parse_touchstone(text, 1).is_err());
    }

    #[test]
    fn v2_keyword_rejected() {
        let text = "[Version] 2.0\n# Hz S RI R 50\n1 1 0\n";
        let err = parse_touchstone(text, 1).unwrap_err().to_string();
        assert!(err.contains("v2"), "{err}");
    }

    #[test]
    fn missing_option_line() {
        assert!(parse_touchstone("1 1 0\n2 1 0\n", 1).is_err());
    }

    #[test]
    fn wrong_column_count() {
        let text = "# Hz S RI R 50\n1 1 0 2\n";
        assert!(parse_touchstone(text, 2).is_err());
    }

    #[test]
    fn empty_data() {
        assert!(parse_touchstone("# Hz S RI R 50\n", 1).is_err());
    }

    #[test]
    fn noise_section_warns() {
        let mut text = String::from("# Hz S RI R 50\n");
        text.push_str("1 1 0 0 0 0 0 1 0\n");
        text.push_str("2 1 0 0 0 0 0 1 0\n");
        // noise parameters restart at a lower frequency
        text.push_str("1 3.0 0.5 30 0.6\n");
        let net = parse_touchstone(&text, 2).unwrap();
        assert_eq!(net.frequencies.len(), 2);
        assert_eq!(net.warnings.len(), 1);
        assert!(net.warnings[0].contains("noise"));
    }

    #[test]
    fn round_trip_exact() {
        let text = "# Hz S RI R 50\n1 0.25 -0.125 0.5 0 0.75 0 -1 0.0625\n20 0.1 0.2 0.3 0.4 0.5 0.6 0.7 0.8\n";
        let net = parse_touchstone(text, 2).unwrap();
        let net2 = parse_touchstone(&serialize_touchstone(&net), 2).unwrap();
        assert_eq!(net.frequencies, net2.frequencies);
        assert_eq!(net.entries, net2.entries);
    }

    #[test]
    fn unit_scaling_equivalence() {
        let ghz = parse_touchstone("# GHz S RI R 50\n1 0.5 0.5\n2 0.4 0.4\n", 1).unwrap();
        let hz = parse_touchstone("# Hz S RI R 50\n1e9 0.5 0.5\n2e9 0.4 0.4\n", 1).unwrap();
        assert_eq!(ghz.frequencies, hz.frequencies);
        assert_eq!(ghz.entries, hz.entries);
    }

    #[test]
    fn csv_round_trip() {
        let resp = FrequencyResponse::new(
            vec![0.0, 1.0, 2.5],
            vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(0.5, -0.5),
                Complex64::new(0.25, -0.3),
            ],
            "S11",
        )
        .unwrap();
        let parsed = parse_csv(&serialize_csv(&resp)).unwrap();
        assert_eq!(resp.omega, parsed.omega);
        assert_eq!(resp.values, parsed.values);
    }

    #[test]
    fn csv_header_required() {
        assert!(parse_csv("1,2,3\n").is_err());
    }

    #[test]
    fn csv_basic() {
        let r = parse_csv("frequency_hz,real,imag\n0,1,0\n1,0.5,-0.5\n").unwrap();
        assert_eq!(r.len(), 2);
        assert!((r.omega[1] - TWO_PI).abs() < 1e-15);
        assert_eq!(r.values[1], Complex64::new(0.5, -0.5));
    }
}
