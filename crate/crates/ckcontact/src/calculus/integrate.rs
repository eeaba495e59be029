//! Adaptive Dormand-Prince 5(4) integration of time-dependent fields.

use crate::calculus::fields::TimeDependentField;
use crate::error::{CkError, Result};

/// Hard floor for the step size; going below it raises `StepFailure`.
const H_MIN: f64 = 1e-12;
/// Dense sample spacing: accepted steps never jump over a grid point.
pub const SAMPLE_DT: f64 = 0.05;

/// Named monitor evaluated along the trajectory; the recorded drift of
/// sample `k` is `|m(t_k, x_k) - m(t_0, x_0)|`.
pub struct Monitor {
    pub name: String,
    pub f: Box<dyn Fn(f64, &[f64]) -> f64 + Send + Sync>,
}

/// One accepted sample. `first_try` is false when the step that produced the
/// sample was re-attempted after an error-controller rejection.
#[derive(Debug, Clone)]
pub struct Sample {
    pub t: f64,
    pub state: Vec<f64>,
    pub first_try: bool,
}

/// Integration output: samples with strictly increasing `t` plus monitored
/// invariant drift series (one column per monitor).
pub struct Trajectory {
    pub samples: Vec<Sample>,
    pub monitor_names: Vec<String>,
    pub drifts: Vec<Vec<f64>>,
    pub rejected_steps: usize,
    pub accepted_steps: usize,
    /// Set when some |I - 1|-style monitored residual exceeded 1e-4.
    pub flagged: bool,
}

impl Trajectory {
    pub fn final_state(&self) -> &[f64] {
        &self.samples.last().expect("non-empty trajectory").state
    }

    pub fn max_drift(&self, column: usize) -> f64 {
        self.drifts[column].iter().cloned().fold(0.0, f64::max)
    }

    /// State at a grid time (exact match against recorded samples).
    pub fn state_at(&self, t: f64) -> Option<&[f64]> {
        self.samples
            .iter()
            .find(|s| (s.t - t).abs() < 1e-9)
            .map(|s| s.state.as_slice())
    }
}

// Dormand-Prince 5(4) tableau.
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const C: [f64; 6] = [0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
// 5th-order weights (same as the last A row, FSAL) and the embedded
// 4th-order error weights.
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Integrate `F` from `x0` over `[t0, t1]` with absolute and relative local
/// error tolerance `tol` per step. Works in either time direction.
pub fn integrate(
    field: &TimeDependentField,
    x0: &[f64],
    t0: f64,
    t1: f64,
    tol: f64,
    monitors: &[Monitor],
) -> Result<Trajectory> {
    assert_eq!(
        x0.len(),
        field.chart.dim(),
        "state dimension must match the chart"
    );
    integrate_fn(&|t, x| field.at(t, x), field.chart, x0, t0, t1, tol, monitors)
}

/// Integration core over a raw right-hand side.
#[allow(clippy::too_many_arguments)]
pub fn integrate_fn(
    field: &dyn Fn(f64, &[f64]) -> Vec<f64>,
    chart: crate::calculus::fields::Chart,
    x0: &[f64],
    t0: f64,
    t1: f64,
    tol: f64,
    monitors: &[Monitor],
) -> Result<Trajectory> {
    if t1 == t0 {
        return Err(CkError::Domain("empty integration span".into()));
    }
    let dir = (t1 - t0).signum();
    let n = x0.len();
    assert_eq!(n, chart.dim(), "state dimension must match the chart");

    let base: Vec<f64> = monitors.iter().map(|m| (m.f)(t0, x0)).collect();
    let mut traj = Trajectory {
        samples: vec![Sample {
            t: t0,
            state: x0.to_vec(),
            first_try: true,
        }],
        monitor_names: monitors.iter().map(|m| m.name.clone()).collect(),
        drifts: vec![vec![0.0]; monitors.len()],
        rejected_steps: 0,
        accepted_steps: 0,
        flagged: false,
    };

    let mut t = t0;
    let mut x = x0.to_vec();
    let mut h = (SAMPLE_DT).min((t1 - t0).abs()) * dir;
    let mut k0 = field(t, &x);
    let mut next_grid = t0 + SAMPLE_DT * dir;

    while (t1 - t) * dir > 1e-14 {
        // Never step over the sample grid or the endpoint.
        let mut h_cap = (t1 - t).abs();
        let grid_gap = (next_grid - t) * dir;
        if grid_gap > 1e-12 {
            h_cap = h_cap.min(grid_gap);
        }
        h = h.abs().min(h_cap).max(H_MIN) * dir;

        let mut first_try = true;
        loop {
            // Stage evaluations.
            let mut k = vec![k0.clone()];
            for s in 0..6 {
                let mut xs = x.clone();
                for (j, kj) in k.iter().enumerate() {
                    let a = A[s][j];
                    if a != 0.0 {
                        for i in 0..n {
                            xs[i] += h * a * kj[i];
                        }
                    }
                }
                k.push(field(t + C[s] * h, &xs));
            }
            // 5th-order proposal and embedded error estimate.
            let mut x5 = x.clone();
            let mut err_vec = vec![0.0; n];
            for (j, kj) in k.iter().enumerate() {
                for i in 0..n {
                    x5[i] += h * B5[j] * kj[i];
                    err_vec[i] += h * E[j] * kj[i];
                }
            }
            let mut err: f64 = 0.0;
            for i in 0..n {
                let sc = tol + tol * x[i].abs().max(x5[i].abs());
                err = err.max((err_vec[i] / sc).abs());
            }

            if err <= 1.0 {
                t += h;
                x = x5;
                k0 = k.pop().unwrap(); // FSAL
                traj.accepted_steps += 1;
                if (t - next_grid) * dir >= -1e-12 {
                    next_grid += SAMPLE_DT * dir;
                }
                traj.samples.push(Sample {
                    t,
                    state: x.clone(),
                    first_try,
                });
                for (c, m) in monitors.iter().enumerate() {
                    let d = ((m.f)(t, &x) - base[c]).abs();
                    if d > 1e-4 {
                        traj.flagged = true;
                    }
                    traj.drifts[c].push(d);
                }
                // PI-free standard controller.
                let fac = (0.9 * err.powf(-0.2)).clamp(0.2, 5.0);
                h = (h.abs() * fac).min(SAMPLE_DT) * dir;
                break;
            }
            traj.rejected_steps += 1;
            first_try = false;
            let fac = (0.9 * err.powf(-0.2)).clamp(0.1, 1.0);
            h = h.abs() * fac * dir;
            if h.abs() < H_MIN {
                return Err(CkError::StepFailure { t });
            }
        }
    }
    Ok(traj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::fields::{Chart, VectorField};
    use crate::calculus::parse::parse_coeff;

    fn oscillator() -> TimeDependentField {
        // (q1, q2, p1, p2) with unit frequency: dq = p, dp = -q.
        let kinetic = VectorField::new(
            Chart::OscCanonical4,
            evaluator!(4, 4; move |p| vec![p[2], p[3], p[0] * 0.0, p[0] * 0.0]),
        );
        let potential = VectorField::new(
            Chart::OscCanonical4,
            evaluator!(4, 4; move |p| vec![p[0] * 0.0, p[0] * 0.0, -p[0], -p[1]]),
        );
        TimeDependentField::new(vec![
            (parse_coeff("1").unwrap(), kinetic),
            (parse_coeff("1").unwrap(), potential),
        ])
        .unwrap()
    }

    #[test]
    fn oscillator_against_closed_form() {
        let f = oscillator();
        let traj = integrate(&f, &[1.0, 0.0, 0.0, 0.0], 0.0, 10.0, 1e-12, &[]).unwrap();
        let mut worst = 0.0f64;
        for s in &traj.samples {
            worst = worst.max((s.state[0] - s.t.cos()).abs());
            worst = worst.max((s.state[2] + s.t.sin()).abs());
        }
        assert!(worst < 1e-8, "max deviation {worst}");
    }

    #[test]
    fn dense_sample_spacing() {
        let f = oscillator();
        let traj = integrate(&f, &[1.0, 0.0, 0.0, 0.0], 0.0, 3.0, 1e-10, &[]).unwrap();
        for w in traj.samples.windows(2) {
            assert!(w[1].t > w[0].t);
            assert!(w[1].t - w[0].t <= SAMPLE_DT + 1e-9);
        }
    }

    #[test]
    fn zero_field_is_constant() {
        let zero = VectorField::zero(Chart::Plane2);
        let f = TimeDependentField::new(vec![(parse_coeff("0").unwrap(), zero)]).unwrap();
        let traj = integrate(&f, &[0.3, -0.7], 0.0, 2.0, 1e-10, &[]).unwrap();
        for s in &traj.samples {
            assert_eq!(s.state, vec![0.3, -0.7]);
        }
    }

    #[test]
    fn time_reversibility() {
        let f = oscillator();
        let tol = 1e-10;
        let x0 = [0.9, -0.4, 0.2, 0.5];
        let fwd = integrate(&f, &x0, 0.0, 5.0, tol, &[]).unwrap();
        let back = integrate(&f, fwd.final_state(), 5.0, 0.0, tol, &[]).unwrap();
        let err = crate::calculus::ops::max_abs_diff(back.final_state(), &x0);
        assert!(err < 10.0 * tol, "reversibility error {err}");
    }

    #[test]
    fn monitor_drift_and_flag() {
        let f = oscillator();
        let energy = Monitor {
            name: "energy".into(),
            f: Box::new(|_, x: &[f64]| {
                0.5 * (x[2] * x[2] + x[3] * x[3]) + 0.5 * (x[0] * x[0] + x[1] * x[1])
            }),
        };
        let traj = integrate(&f, &[1.0, 0.0, 0.0, 0.0], 0.0, 10.0, 1e-12, &[energy]).unwrap();
        assert!(traj.max_drift(0) < 1e-8);
        assert!(!traj.flagged);
    }

    #[test]
    fn grid_states_are_recorded() {
        let f = oscillator();
        let traj = integrate(&f, &[1.0, 0.0, 0.0, 0.0], 0.0, 1.0, 1e-10, &[]).unwrap();
        for k in 0..=20 {
            let t = k as f64 * 0.05;
            assert!(traj.state_at(t).is_some(), "missing grid sample at {t}");
        }
    }
}
