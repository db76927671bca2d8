//! Transient solution by uniformization.
//!
//! With `Λ` the largest exit rate, `P = I + Q/Λ` is a stochastic matrix and
//! `π(t) = Σ_j Pois(j; Λt) π₀ Pᵗ`. The series is cut once the remaining
//! Poisson mass drops under the tolerance; that remaining mass is assigned to
//! the last computed iterate so distributions keep unit total. Long intervals
//! are split so every segment has a Poisson mean of at most
//! [`MAX_SEGMENT_MEAN`], with the tolerance divided evenly between segments.

use crate::chain::{build_ctmc, Ctmc};
use crate::error::{Error, Result};
use crate::model::Scenario;

pub const DEFAULT_TOL: f64 = 1e-10;

/// Keeps `exp(-q)` well inside the normal f64 range.
pub const MAX_SEGMENT_MEAN: f64 = 600.0;

/// State probabilities at one instant, aligned with `Ctmc::states`.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    pub time: f64,
    pub values: Vec<f64>,
}

impl Distribution {
    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BerRow {
    pub time_hours: f64,
    pub p_fail: f64,
    pub ber: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BerSeries {
    /// The f64 value of `m (n - k) / k` every row was scaled by.
    pub coefficient: f64,
    pub rows: Vec<BerRow>,
}

fn check_args(t: f64, tol: f64) -> Result<()> {
    if !t.is_finite() || t < 0.0 {
        return Err(Error::ConstraintViolated(format!(
            "time must be finite and >= 0, got {t}"
        )));
    }
    if !(tol > 0.0 && tol <= 1e-6) {
        return Err(Error::ConstraintViolated(format!(
            "tolerance must lie in (0, 1e-6], got {tol}"
        )));
    }
    Ok(())
}

/// One step of the uniformized chain: `out = x P`.
fn step(chain: &Ctmc, lambda: f64, x: &[f64], out: &mut [f64]) {
    for (i, (o, &xi)) in out.iter_mut().zip(x).enumerate() {
        *o = xi * (1.0 - chain.exit_rate(i) / lambda);
    }
    for tr in chain.transitions() {
        let xi = x[tr.source];
        if xi != 0.0 {
            out[tr.target] += xi * (tr.rate / lambda);
        }
    }
}

/// Advances `start` by `dt` hours with total truncation error at most `tol`.
fn propagate(chain: &Ctmc, start: Vec<f64>, dt: f64, tol: f64) -> Result<Vec<f64>> {
    let lambda = chain.max_exit_rate();
    if dt == 0.0 || lambda == 0.0 {
        return Ok(start);
    }
    let q_total = lambda * dt;
    if !q_total.is_finite() {
        return Err(Error::NumericalFailure(format!(
            "uniformization mean {lambda} * {dt} is not finite"
        )));
    }
    let segments = (q_total / MAX_SEGMENT_MEAN).ceil().max(1.0);
    if segments > 1e9 {
        return Err(Error::NumericalFailure(format!(
            "uniformization mean {q_total:e} needs too many segments"
        )));
    }
    let segments = segments as usize;
    let q = q_total / segments as f64;
    let seg_tol = tol / segments as f64;
    let max_terms = (q + 100.0 * q.sqrt() + 100.0).ceil() as usize;

    let n = chain.len();
    let mut current = start;
    let mut next = vec![0.0; n];
    for _ in 0..segments {
        let mut acc = vec![0.0; n];
        let mut iterate = current;
        let mut weight = (-q).exp();
        let mut cumulative = 0.0;
        let mut j = 0usize;
        loop {
            for (a, &v) in acc.iter_mut().zip(&iterate) {
                *a += weight * v;
            }
            cumulative += weight;
            let past_mode = j as f64 > q;
            if 1.0 - cumulative <= seg_tol
                || (past_mode && weight < f64::EPSILON * 1e-6)
                || j >= max_terms
            {
                break;
            }
            step(chain, lambda, &iterate, &mut next);
            std::mem::swap(&mut iterate, &mut next);
            j += 1;
            weight *= q / j as f64;
        }
        let tail = (1.0 - cumulative).max(0.0);
        for (a, &v) in acc.iter_mut().zip(&iterate) {
            *a += tail * v;
        }
        if acc.iter().any(|v| !v.is_finite()) {
            return Err(Error::NumericalFailure(
                "non-finite probability during uniformization".into(),
            ));
        }
        current = acc;
    }
    Ok(current)
}

fn point_mass(chain: &Ctmc) -> Vec<f64> {
    let mut v = vec![0.0; chain.len()];
    v[chain.initial_index()] = 1.0;
    v
}

fn clamped(values: Vec<f64>) -> Vec<f64> {
    values.into_iter().map(|v| v.clamp(0.0, 1.0)).collect()
}

/// Distribution at `t` hours, starting from the good state.
pub fn transient(chain: &Ctmc, t: f64, tol: f64) -> Result<Distribution> {
    check_args(t, tol)?;
    let values = propagate(chain, point_mass(chain), t, tol)?;
    Ok(Distribution {
        time: t,
        values: clamped(values),
    })
}

/// Distributions on an increasing grid, each segment advanced from the
/// previous instant. Total truncation error at every point is at most `tol`.
pub fn transient_grid(chain: &Ctmc, grid: &[f64], tol: f64) -> Result<Vec<Distribution>> {
    for &t in grid {
        check_args(t, tol)?;
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::ConstraintViolated(
            "time grid must be strictly increasing".into(),
        ));
    }
    let seg_tol = tol / grid.len().max(1) as f64;
    let mut out = Vec::with_capacity(grid.len());
    let mut current = point_mass(chain);
    let mut prev_t = 0.0;
    for &t in grid {
        current = propagate(chain, current, t - prev_t, seg_tol)?;
        prev_t = t;
        out.push(Distribution {
            time: t,
            values: clamped(current.clone()),
        });
    }
    Ok(out)
}

pub fn fail_probability(chain: &Ctmc, t: f64, tol: f64) -> Result<f64> {
    Ok(transient(chain, t, tol)?.values[chain.fail_index()])
}

/// BER per grid instant for an already built chain.
pub fn ber_curve_for(chain: &Ctmc, grid: &[f64], tol: f64) -> Result<BerSeries> {
    let coefficient = chain.code().ber_factor();
    let fail = chain.fail_index();
    let mut rows = Vec::with_capacity(grid.len());
    let mut prev = 0.0f64;
    for d in transient_grid(chain, grid, tol)? {
        // Fail is absorbing; this only removes rounding-level dips
        let p_fail = d.values[fail].max(prev);
        prev = p_fail;
        rows.push(BerRow {
            time_hours: d.time,
            p_fail,
            ber: coefficient * p_fail,
        });
    }
    Ok(BerSeries { coefficient, rows })
}

/// Builds the scenario's chain once and evaluates BER on its time grid.
pub fn ber_curve(scenario: &Scenario, tol: f64) -> Result<BerSeries> {
    let chain = build_ctmc(scenario)?;
    ber_curve_for(&chain, scenario.time_grid(), tol)
}
