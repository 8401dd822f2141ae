// Copyright 2026 The jcbath Authors
// SPDX-License-Identifier: Apache-2.0

//! Adaptive Dormand-Prince 5(4) integrator for complex linear systems.
//!
//! Steps are clipped so that every requested output time is hit exactly;
//! the proposed step size carries over between output intervals.

use crate::{Error, Result, C64};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            rtol: 1e-9,
            atol: 1e-12,
            max_steps: 5_000_000,
        }
    }
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const SAFETY: f64 = 0.9;
const FAC_MIN: f64 = 0.2;
const FAC_MAX: f64 = 10.0;

struct Stages {
    k: [Vec<C64>; 7],
    tmp: Vec<C64>,
    y_new: Vec<C64>,
}

impl Stages {
    fn new(n: usize) -> Self {
        let z = vec![C64::new(0.0, 0.0); n];
        Self {
            k: [
                z.clone(),
                z.clone(),
                z.clone(),
                z.clone(),
                z.clone(),
                z.clone(),
                z.clone(),
            ],
            tmp: z.clone(),
            y_new: z,
        }
    }
}

fn combine(out: &mut [C64], y: &[C64], h: f64, terms: &[(f64, &[C64])]) {
    for (i, o) in out.iter_mut().enumerate() {
        let mut acc = C64::new(0.0, 0.0);
        for (coef, k) in terms {
            acc += k[i] * *coef;
        }
        *o = y[i] + acc * h;
    }
}

/// Integrate `dy/dt = f(t, y)` from `t_grid[0]` and return the state at
/// every grid time (the first entry is `y0`).
pub fn integrate<F>(mut f: F, y0: &[C64], t_grid: &[f64], tol: &Tolerances) -> Result<Vec<Vec<C64>>>
where
    F: FnMut(f64, &[C64], &mut [C64]),
{
    if t_grid.is_empty() {
        return Ok(Vec::new());
    }
    if t_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidParameter(
            "time grid must be strictly increasing".into(),
        ));
    }
    let n = y0.len();
    let mut out = Vec::with_capacity(t_grid.len());
    out.push(y0.to_vec());
    if t_grid.len() == 1 {
        return Ok(out);
    }

    let mut st = Stages::new(n);
    let mut y = y0.to_vec();
    let mut t = t_grid[0];
    f(t, &y, &mut st.k[0]);
    let mut h = initial_step(&mut f, t, &y, &st.k[0], tol, t_grid[t_grid.len() - 1] - t);
    let mut steps = 0usize;

    for &t_target in &t_grid[1..] {
        while t < t_target {
            if steps >= tol.max_steps {
                return Err(Error::Integration {
                    time: t,
                    reason: "maximum step count exceeded".into(),
                });
            }
            let remaining = t_target - t;
            // absorb a sliver that would otherwise force a vanishing follow-up step
            let clipped = h * (1.0 + 1e-8) >= remaining;
            let h_step = if clipped { remaining } else { h };
            if h_step <= 1e-14 * t.abs().max(1.0) {
                return Err(Error::Integration {
                    time: t,
                    reason: format!("step size underflow (h = {h_step:e})"),
                });
            }

            let err = attempt(&mut f, t, &y, h_step, &mut st, tol);
            steps += 1;
            if !err.is_finite() {
                h = 0.25 * h_step;
                continue;
            }
            let fac = if err == 0.0 {
                FAC_MAX
            } else {
                (SAFETY * err.powf(-0.2)).clamp(FAC_MIN, FAC_MAX)
            };
            if err <= 1.0 {
                t = if clipped { t_target } else { t + h_step };
                std::mem::swap(&mut y, &mut st.y_new);
                st.k.swap(0, 6);
                // a clipped step says nothing about the natural step size
                if !clipped || fac < 1.0 {
                    h = h_step * fac;
                }
            } else {
                h = h_step * fac.min(1.0);
            }
        }
        out.push(y.clone());
    }
    Ok(out)
}

fn attempt<F>(f: &mut F, t: f64, y: &[C64], h: f64, st: &mut Stages, tol: &Tolerances) -> f64
where
    F: FnMut(f64, &[C64], &mut [C64]),
{
    let (k1, rest) = st.k.split_at_mut(1);
    let k1 = &k1[0];
    let [k2, k3, k4, k5, k6, k7] = rest else {
        unreachable!()
    };

    combine(&mut st.tmp, y, h, &[(A21, k1)]);
    f(t + C2 * h, &st.tmp, k2);
    combine(&mut st.tmp, y, h, &[(A31, k1), (A32, k2)]);
    f(t + C3 * h, &st.tmp, k3);
    combine(&mut st.tmp, y, h, &[(A41, k1), (A42, k2), (A43, k3)]);
    f(t + C4 * h, &st.tmp, k4);
    combine(
        &mut st.tmp,
        y,
        h,
        &[(A51, k1), (A52, k2), (A53, k3), (A54, k4)],
    );
    f(t + C5 * h, &st.tmp, k5);
    combine(
        &mut st.tmp,
        y,
        h,
        &[(A61, k1), (A62, k2), (A63, k3), (A64, k4), (A65, k5)],
    );
    f(t + h, &st.tmp, k6);
    combine(
        &mut st.y_new,
        y,
        h,
        &[(A71, k1), (A73, k3), (A74, k4), (A75, k5), (A76, k6)],
    );
    f(t + h, &st.y_new, k7);

    let mut sum = 0.0;
    for i in 0..y.len() {
        let e = (k1[i] * E1 + k3[i] * E3 + k4[i] * E4 + k5[i] * E5 + k6[i] * E6 + k7[i] * E7) * h;
        let scale = tol.atol + tol.rtol * y[i].norm().max(st.y_new[i].norm());
        let r = e.norm() / scale;
        sum += r * r;
    }
    (sum / y.len().max(1) as f64).sqrt()
}

fn initial_step<F>(f: &mut F, t: f64, y: &[C64], f0: &[C64], tol: &Tolerances, span: f64) -> f64
where
    F: FnMut(f64, &[C64], &mut [C64]),
{
    let n = y.len().max(1) as f64;
    let scale: Vec<f64> = y.iter().map(|v| tol.atol + tol.rtol * v.norm()).collect();
    let norm = |v: &[C64]| {
        (v.iter()
            .zip(&scale)
            .map(|(x, s)| (x.norm() / s).powi(2))
            .sum::<f64>()
            / n)
            .sqrt()
    };
    let d0 = norm(y);
    let d1 = norm(f0);
    let h0 = if d0 < 1e-5 || d1 < 1e-5 {
        1e-6
    } else {
        0.01 * d0 / d1
    };
    let h0 = h0.min(span);
    let y1: Vec<C64> = y.iter().zip(f0).map(|(a, b)| a + b * h0).collect();
    let mut f1 = vec![C64::new(0.0, 0.0); y.len()];
    f(t + h0, &y1, &mut f1);
    let diff: Vec<C64> = f1.iter().zip(f0).map(|(a, b)| a - b).collect();
    let d2 = norm(&diff) / h0;
    let h1 = if d1.max(d2) <= 1e-15 {
        (h0 * 1e-3).max(1e-6)
    } else {
        (0.01 / d1.max(d2)).powf(0.2)
    };
    (100.0 * h0).min(h1).min(span)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotating_phase_is_exact() {
        // dy/dt = -i w y  =>  y(t) = exp(-i w t)
        let w = 1.7;
        let grid: Vec<f64> = (0..=50).map(|k| 0.4 * k as f64).collect();
        let ys = integrate(
            |_, y, dy| dy[0] = C64::new(0.0, -w) * y[0],
            &[C64::new(1.0, 0.0)],
            &grid,
            &Tolerances::default(),
        )
        .unwrap();
        for (t, y) in grid.iter().zip(&ys) {
            let exact = C64::new(0.0, -w * t).exp();
            assert!((y[0] - exact).norm() < 1e-8, "t = {t}");
        }
    }

    #[test]
    fn damped_two_level_exchange() {
        // population transfer with loss; compare with closed form
        let g = 0.3;
        let k = 0.05;
        let grid: Vec<f64> = (0..=20).map(|i| i as f64).collect();
        let ys = integrate(
            |_, y, dy| {
                dy[0] = C64::new(0.0, -g) * y[1];
                dy[1] = C64::new(0.0, -g) * y[0] - y[1] * k;
            },
            &[C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
            &grid,
            &Tolerances::default(),
        )
        .unwrap();
        // eigenvalues of [[0, -ig], [-ig, -k]]
        let disc = (C64::new(k * k / 4.0 - g * g, 0.0)).sqrt();
        let l1 = -k / 2.0 + disc;
        let l2 = -k / 2.0 - disc;
        for (t, y) in grid.iter().zip(&ys) {
            // y0 = (l1 e^{l2 t} - l2 e^{l1 t}) / (l1 - l2) ... solved with y0(0)=1, y0'(0)=0
            let exact = (l1 * (l2 * *t).exp() - l2 * (l1 * *t).exp()) / (l1 - l2);
            assert!((y[0] - exact).norm() < 1e-8, "t = {t}");
        }
    }

    #[test]
    fn single_point_grid_returns_initial_state() {
        let ys = integrate(
            |_, _, dy| dy[0] = C64::new(1.0, 0.0),
            &[C64::new(2.0, 0.0)],
            &[0.0],
            &Tolerances::default(),
        )
        .unwrap();
        assert_eq!(ys, vec![vec![C64::new(2.0, 0.0)]]);
    }

    #[test]
    fn rejects_non_increasing_grid() {
        let r = integrate(
            |_, _, _| {},
            &[C64::new(1.0, 0.0)],
            &[0.0, 1.0, 1.0],
            &Tolerances::default(),
        );
        assert!(r.is_err());
    }

    #[test]
    fn step_budget_is_reported_with_time() {
        let tol = Tolerances {
            max_steps: 3,
            ..Tolerances::default()
        };
        let r = integrate(
            |_, y, dy| dy[0] = C64::new(0.0, -50.0) * y[0],
            &[C64::new(1.0, 0.0)],
            &[0.0, 100.0],
            &tol,
        );
        assert!(matches!(r, Err(Error::Integration { .. })));
    }
}
