use std::ops::RangeInclusive;

use serde::Serialize;

use crate::error::{Error, Result};

/// Least-squares line through `(x, ln y)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LogLinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub residual_rms: f64,
    /// 1-based inclusive index window.
    pub window: (usize, usize),
}

fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = if sxx == 0.0 { 0.0 } else { sxy / sxx };
    let intercept = my - slope * mx;
    let ss: f64 = xs.iter().zip(ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    (slope, intercept, (ss / n).sqrt())
}

fn logs_in_window(values: &[f64], window: &RangeInclusive<usize>) -> Result<Vec<f64>> {
    let (lo, hi) = (*window.start(), *window.end());
    if lo == 0 || lo > hi || hi > values.len() {
        return Err(Error::InvalidArgument(format!(
            "fit window {lo}..={hi} outside 1..={}",
            values.len()
        )));
    }
    values[lo - 1..hi]
        .iter()
        .enumerate()
        .map(|(k, v)| {
            if *v > 0.0 && v.is_finite() {
                Ok(v.ln())
            } else {
                Err(Error::Domain {
                    op: "fit_log_linear",
                    detail: format!("value {v} at index {} is not positive", lo + k),
                })
            }
        })
        .collect()
}

/// `ln values[i] ≈ intercept + slope * i` over the 1-based `window`.
pub fn fit_log_linear(values: &[f64], window: RangeInclusive<usize>) -> Result<LogLinearFit> {
    let ys = logs_in_window(values, &window)?;
    let xs: Vec<f64> = window.clone().map(|i| i as f64).collect();
    let (slope, intercept, residual_rms) = least_squares(&xs, &ys);
    Ok(LogLinearFit {
        slope,
        intercept,
        residual_rms,
        window: (*window.start(), *window.end()),
    })
}

/// `ln values[i] ≈ intercept + slope * ln i`; `-slope` is the polynomial
/// decay exponent.
pub fn fit_power_law(values: &[f64], window: RangeInclusive<usize>) -> Result<LogLinearFit> {
    let ys = logs_in_window(values, &window)?;
    let xs: Vec<f64> = window.clone().map(|i| (i as f64).ln()).collect();
    let (slope, intercept, residual_rms) = least_squares(&xs, &ys);
    Ok(LogLinearFit {
        slope,
        intercept,
        residual_rms,
        window: (*window.start(), *window.end()),
    })
}

/// Decay type suggested by comparing the two fits on the same window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecayType {
    Exponential,
    Polynomial,
}

pub fn classify_decay(exponential: &LogLinearFit, power_law: &LogLinearFit) -> DecayType {
    if exponential.residual_rms < power_law.residual_rms {
        DecayType::Exponential
    } else {
        DecayType::Polynomial
    }
}

/// Solves the normal equations of `y ≈ Σ_k c_k f_k(x)` for a small basis.
pub fn fit_linear_model(xs: &[f64], ys: &[f64], basis: &[fn(f64) -> f64]) -> Result<Vec<f64>> {
    let m = basis.len();
    if xs.len() < m || xs.len() != ys.len() {
        return Err(Error::InvalidArgument("not enough points for the model".into()));
    }
    let mut a = vec![vec![0.0; m + 1]; m];
    for (x, y) in xs.iter().zip(ys) {
        let f: Vec<f64> = basis.iter().map(|b| b(*x)).collect();
        for r in 0..m {
            for c in 0..m {
                a[r][c] += f[r] * f[c];
            }
            a[r][m] += f[r] * y;
        }
    }
    for col in 0..m {
        let pivot = (col..m)
            .max_by(|&p, &q| a[p][col].abs().total_cmp(&a[q][col].abs()))
            .expect("nonempty");
        a.swap(col, pivot);
        if a[col][col] == 0.0 {
            return Err(Error::Domain {
                op: "fit_linear_model",
                detail: "singular normal equations".into(),
            });
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col {
                let factor = row[col] / pivot_row[col];
                for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                    *x -= factor * p;
                }
            }
        }
    }
    Ok((0..m).map(|r| a[r][m] / a[r][r]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_exponential() {
        let v: Vec<f64> = (1..=20).map(|i| (-1.2 * i as f64 + 2.0).exp()).collect();
        let f = fit_log_linear(&v, 1..=20).unwrap();
        assert!((f.slope + 1.2).abs() < 1e-12);
        assert!((f.intercept - 2.0).abs() < 1e-12);
        assert!(f.residual_rms < 1e-12);
        let p = fit_power_law(&v, 1..=20).unwrap();
        assert_eq!(classify_decay(&f, &p), DecayType::Exponential);
    }

    #[test]
    fn constant_and_power() {
        let f = fit_log_linear(&[3.0; 5], 1..=5).unwrap();
        assert_eq!(f.slope, 0.0);
        let v: Vec<f64> = (1..=30).map(|i| (i as f64).powf(-2.5)).collect();
        let p = fit_power_law(&v, 1..=30).unwrap();
        assert!((p.slope + 2.5).abs() < 1e-12);
        let e = fit_log_linear(&v, 1..=30).unwrap();
        assert_eq!(classify_decay(&e, &p), DecayType::Polynomial);
    }

    #[test]
    fn rejects_bad_windows() {
        assert!(fit_log_linear(&[1.0, 0.0], 1..=2).is_err());
        assert!(fit_log_linear(&[1.0], 1..=2).is_err());
        assert!(fit_log_linear(&[1.0], 0..=1).is_err());
    }

    #[test]
    fn linear_model() {
        let xs: Vec<f64> = (1..=10).map(f64::from).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 1.5 - 0.25 * x + 3.0 * x.ln()).collect();
        let c = fit_linear_model(&xs, &ys, &[|_| 1.0, |x| x, f64::ln]).unwrap();
        assert!((c[0] - 1.5).abs() < 1e-9 && (c[1] + 0.25).abs() < 1e-9 && (c[2] - 3.0).abs() < 1e-9);
    }
}
