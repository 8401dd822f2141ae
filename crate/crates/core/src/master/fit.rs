// Copyright 2026 The jcbath Authors
// SPDX-License-Identifier: Apache-2.0

use crate::{Error, Result};

/// Rate `Gamma` of `y ~ exp(-Gamma t)` from a least-squares line through
/// `ln y` over samples with `t <= t_end`.
pub fn fit_exponential_rate(times: &[f64], values: &[f64], t_end: f64) -> Result<f64> {
    if times.len() != values.len() {
        return Err(Error::InvalidParameter(
            "times and values differ in length".into(),
        ));
    }
    let pts: Vec<(f64, f64)> = times
        .iter()
        .zip(values)
        .filter(|(t, y)| **t <= t_end && **y > 0.0)
        .map(|(t, y)| (*t, y.ln()))
        .collect();
    if pts.len() < 2 {
        return Err(Error::InvalidParameter(
            "fewer than two positive samples in the fit window".into(),
        ));
    }
    let n = pts.len() as f64;
    let mean_t = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mean_t).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mean_t) * (p.1 - mean_y)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidParameter(
            "fit window spans a single time".into(),
        ));
    }
    Ok(-sxy / sxx)
}

/// First time `t` after which every series varies by less than `tol` across
/// `[t, t + window]`, or `None` when no such window fits in the data.
pub fn steady_after(times: &[f64], series: &[&[f64]], window: f64, tol: f64) -> Option<f64> {
    let n = times.len();
    let mut end = 0;
    for start in 0..n {
        let t_stop = times[start] + window;
        if t_stop > times[n - 1] {
            return None;
        }
        end = end.max(start);
        while end + 1 < n && times[end + 1] <= t_stop {
            end += 1;
        }
        let settled = series.iter().all(|s| {
            let slice = &s[start..=end];
            let hi = slice.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let lo = slice.iter().cloned().fold(f64::INFINITY, f64::min);
            hi - lo < tol
        });
        if settled {
            return Some(times[start]);
        }
    }
    None
}

/// Interior indices `i` with `y[i-1] < y[i] >= y[i+1]`.
pub fn local_maxima(values: &[f64]) -> Vec<usize> {
    if values.len() < 3 {
        return Vec::new();
    }
    (1..values.len() - 1)
        .filter(|&i| values[i] > values[i - 1] && values[i] >= values[i + 1])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_exact_exponential() {
        let t: Vec<f64> = (0..200).map(|i| i as f64 * 0.5).collect();
        let y: Vec<f64> = t.iter().map(|t| 0.5 * (-0.0334 * t).exp()).collect();
        assert!((fit_exponential_rate(&t, &y, 90.0).unwrap() - 0.0334).abs() < 1e-12);
    }

    #[test]
    fn window_and_length_checks() {
        assert!(fit_exponential_rate(&[0.0, 1.0], &[1.0], 2.0).is_err());
        assert!(fit_exponential_rate(&[0.0, 1.0], &[1.0, 0.5], 0.5).is_err());
    }

    #[test]
    fn steady_detection() {
        let t: Vec<f64> = (0..=400).map(|i| i as f64).collect();
        let y: Vec<f64> = t.iter().map(|t| (-0.1 * t).exp()).collect();
        let at = steady_after(&t, &[&y], 100.0, 1e-6).unwrap();
        // exp(-0.1 t) < 1e-6 from t ~ 138
        assert!((at - 139.0).abs() <= 1.0, "{at}");
        assert_eq!(steady_after(&t, &[&y], 1000.0, 1e-6), None);
    }

    #[test]
    fn maxima() {
        assert_eq!(local_maxima(&[0.0, 1.0, 0.0, 2.0, 2.0, 1.0]), vec![1, 3]);
        assert!(local_maxima(&[1.0, 2.0, 3.0]).is_empty());
    }
}
