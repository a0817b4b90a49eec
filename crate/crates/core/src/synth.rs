//! Analytic benchmark responses and randomized rational models with
//! controlled (non-)causality, used as ground truth by the test suites.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spdata::FrequencyResponse;

/// Sum of first-order terms r_i * e^{j w tau_i} / (j w - p_i); a term with
/// tau_i > 0 is anticipated, hence non-causal.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalModel {
    pub residues: Vec<Complex64>,
    pub poles: Vec<Complex64>,
    /// Per-term time advance, seconds >= 0; 0 = causal term.
    pub anticipations: Vec<f64>,
}

impl RationalModel {
    pub fn new(
        residues: Vec<Complex64>,
        poles: Vec<Complex64>,
        anticipations: Vec<f64>,
    ) -> Result<Self> {
        if residues.len() != poles.len() || residues.len() != anticipations.len() {
            return Err(Error::invalid(
                "residues, poles and anticipations must have the same length",
            ));
        }
        if let Some(p) = poles.iter().find(|p| p.re >= 0.0) {
            return Err(Error::invalid(format!(
                "pole {p} has non-negative real part"
            )));
        }
        if anticipations.iter().any(|t| *t < 0.0) {
            return Err(Error::invalid("anticipations must be >= 0"));
        }
        Ok(RationalModel {
            residues,
            poles,
            anticipations,
        })
    }

    pub fn is_causal(&self) -> bool {
        self.residues
            .iter()
            .zip(&self.anticipations)
            .all(|(r, tau)| *tau == 0.0 || r.norm() == 0.0)
    }

    pub fn eval(&self, omega: f64) -> Complex64 {
        let jw = Complex64::new(0.0, omega);
        let mut acc = Complex64::new(0.0, 0.0);
        for ((r, p), tau) in self.residues.iter().zip(&self.poles).zip(&self.anticipations) {
            acc += r * Complex64::new(0.0, omega * tau).exp() / (jw - p);
        }
        acc
    }
}

pub fn sample_rational(model: &RationalModel, omega: &[f64]) -> Result<FrequencyResponse> {
    let values = omega.iter().map(|&w| model.eval(w)).collect();
    FrequencyResponse::new(omega.to_vec(), values, "rational")
}

fn uniform_grid(n_points: usize, omega_max: f64) -> Vec<f64> {
    (0..n_points)
        .map(|k| omega_max * k as f64 / (n_points - 1) as f64)
        .collect()
}

/// H_c(jw) = 1/(jw + 1), the causal benchmark, on a DC-inclusive grid.
pub fn gen_causal_example(n_points: usize, omega_max: f64) -> Result<FrequencyResponse> {
    if n_points < 2 {
        return Err(Error::invalid("need at least 2 points"));
    }
    let omega = uniform_grid(n_points, omega_max);
    let values = omega.iter().map(|&w| 1.0 / Complex64::new(1.0, w)).collect();
    FrequencyResponse::new(omega, values, "H_c")
}

/// H_nc(jw) = 1/(jw + 1) + 0.01 e^{j w 5} / (jw + 0.5): the causal
/// benchmark plus a small 5-second anticipation.
pub fn gen_noncausal_example(n_points: usize, omega_max: f64) -> Result<FrequencyResponse> {
    if n_points < 2 {
        return Err(Error::invalid("need at least 2 points"));
    }
    let omega = uniform_grid(n_points, omega_max);
    let values = omega
        .iter()
        .map(|&w| {
            1.0 / Complex64::new(1.0, w)
                + 0.01 * Complex64::new(0.0, 5.0 * w).exp() / Complex64::new(0.5, w)
        })
        .collect();
    FrequencyResponse::new(omega, values, "H_nc")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn causal_example_values() {
        let r = gen_causal_example(100, 2.0).unwrap();
        assert_eq!(r.len(), 100);
        assert_eq!(r.omega[0], 0.0);
        assert_eq!(r.omega_max, 2.0);
        assert!((r.values[0] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        // at w = 1: 1/(1+j) = 0.5 - 0.5j
        let k = r.omega.iter().position(|&w| (w - 1.0).abs() < 1e-12);
        let v = 1.0 / Complex64::new(1.0, 1.0);
        assert!((v - Complex64::new(0.5, -0.5)).norm() < 1e-15);
        let _ = k;
    }

    #[test]
    fn noncausal_dc_value() {
        let r = gen_noncausal_example(100, 2.0).unwrap();
        assert!((r.values[0] - Complex64::new(1.02, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn noncausal_minus_causal_is_perturbation() {
        let a = gen_causal_example(50, 2.0).unwrap();
        let b = gen_noncausal_example(50, 2.0).unwrap();
        for ((w, x), y) in a.omega.iter().zip(&a.values).zip(&b.values) {
            let pert = 0.01 * Complex64::new(0.0, 5.0 * w).exp() / Complex64::new(0.5, *w);
            assert!((y - x - pert).norm() < 1e-15);
        }
    }

    #[test]
    fn rational_reproduces_examples() {
        let causal = RationalModel::new(
            vec![Complex64::new(1.0, 0.0)],
            vec![Complex64::new(-1.0, 0.0)],
            vec![0.0],
        )
        .unwrap();
        let omega = uniform_grid(50, 2.0);
        let s = sample_rational(&causal, &omega).unwrap();
        let e = gen_causal_example(50, 2.0).unwrap();
        for (a, b) in s.values.iter().zip(&e.values) {
            assert!((a - b).norm() < 1e-15);
        }

        let noncausal = RationalModel::new(
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.01, 0.0)],
            vec![Complex64::new(-1.0, 0.0), Complex64::new(-0.5, 0.0)],
            vec![0.0, 5.0],
        )
        .unwrap();
        assert!(!noncausal.is_causal());
        let s = sample_rational(&noncausal, &omega).unwrap();
        let e = gen_noncausal_example(50, 2.0).unwrap();
        for (a, b) in s.values.iter().zip(&e.values) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn rational_matches_term_sum_oracle() {
        // random-ish 6-term causal model, one node, independent summation
        let residues: Vec<Complex64> = vec![
            Complex64::new(0.3, 0.1),
            Complex64::new(0.3, -0.1),
            Complex64::new(-0.2, 0.4),
            Complex64::new(-0.2, -0.4),
            Complex64::new(0.05, 0.0),
            Complex64::new(0.7, 0.0),
        ];
        let poles: Vec<Complex64> = vec![
            Complex64::new(-0.5, 1.5),
            Complex64::new(-0.5, -1.5),
            Complex64::new(-1.2, 0.3),
            Complex64::new(-1.2, -0.3),
            Complex64::new(-0.8, 0.0),
            Complex64::new(-2.0, 0.0),
        ];
        let model =
            RationalModel::new(residues.clone(), poles.clone(), vec![0.0; 6]).unwrap();
        let w = 1.37;
        let mut expect = Complex64::new(0.0, 0.0);
        for (r, p) in residues.iter().zip(&poles) {
            expect += r / (Complex64::new(0.0, w) - p);
        }
        assert!((model.eval(w) - expect).norm() < 1e-12);
    }

    #[test]
    fn conjugate_closed_model_real_at_dc() {
        let model = RationalModel::new(
            vec![Complex64::new(0.3, 0.1), Complex64::new(0.3, -0.1)],
            vec![Complex64::new(-0.5, 1.5), Complex64::new(-0.5, -1.5)],
            vec![0.0, 0.0],
        )
        .unwrap();
        assert!(model.eval(0.0).im.abs() < 1e-16);
    }

    #[test]
    fn rejects_unstable_pole() {
        assert!(RationalModel::new(
            vec![Complex64::new(1.0, 0.0)],
            vec![Complex64::new(0.1, 0.0)],
            vec![0.0],
        )
        .is_err());
    }
}
