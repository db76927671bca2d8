//! Scenario files: TOML documents naming one analysis setup and optional sweeps.

use rsmem_core::model::log_grid;
use rsmem_core::{
    validate_code, Arrangement, DecodeRule, FaultRates, RateMode, Scenario, ScrubConfig,
};
use serde::Deserialize;

use crate::error::CliError;

/// Log-spaced points used when a file gives neither `time_grid` nor `grid_points`.
pub const DEFAULT_GRID_POINTS: usize = 25;

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum ArrangementKey {
    Simplex,
    Duplex,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum RateModeKey {
    Physical,
    PaperLiteral,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum DecodeRuleKey {
    EachWord,
    AnyWord,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    arrangement: ArrangementKey,
    n: u32,
    k: u32,
    #[serde(default = "default_m")]
    m: u32,
    lambda_bit_per_day: Option<f64>,
    lambda_e_symbol_per_day: f64,
    scrub_period_hours: Option<f64>,
    horizon_hours: f64,
    time_grid: Option<Vec<f64>>,
    grid_points: Option<usize>,
    rate_mode: Option<RateModeKey>,
    decode_rule: Option<DecodeRuleKey>,
    lambda_list: Option<Vec<f64>>,
    scrub_period_list: Option<Vec<f64>>,
}

fn default_m() -> u32 {
    8
}

/// One point of a sweep: the scenario plus the swept values that produced it.
#[derive(Debug, Clone)]
pub struct SweepEntry {
    pub scenario: Scenario,
    pub lambda: Option<f64>,
    pub scrub_period: Option<f64>,
}

/// A parsed file: the cartesian product of its sweep lists, lambda-major.
#[derive(Debug, Clone)]
pub struct ScenarioFile {
    pub entries: Vec<SweepEntry>,
    /// Whether the file had a `lambda_list` (adds a CSV column).
    pub sweeps_lambda: bool,
    /// Whether the file had a `scrub_period_list` (adds a CSV column).
    pub sweeps_scrub: bool,
}

/// 1-based line of the first `key = ...` assignment, for error messages.
fn line_of(text: &str, key: &str) -> Option<usize> {
    text.lines().position(|l| {
        l.trim_start()
            .strip_prefix(key)
            .is_some_and(|rest| rest.trim_start().starts_with('='))
    })
    .map(|i| i + 1)
}

fn at(text: &str, key: &str, msg: impl std::fmt::Display) -> CliError {
    match line_of(text, key) {
        Some(line) => CliError::Input(format!("line {line}: {key}: {msg}")),
        None => CliError::Input(format!("{key}: {msg}")),
    }
}

pub fn parse(text: &str, mode_override: Option<RateMode>) -> Result<ScenarioFile, CliError> {
    let raw: RawScenario = toml::from_str(text).map_err(|e| {
        let line = e
            .span()
            .map(|s| text[..s.start.min(text.len())].matches('\n').count() + 1);
        let msg = e.message().trim_end().to_string();
        CliError::Input(match line {
            Some(l) => format!("line {l}: {msg}"),
            None => msg,
        })
    })?;

    let code = validate_code(raw.n, raw.k, raw.m).map_err(|e| at(text, "n", e))?;
    let arrangement = match raw.arrangement {
        ArrangementKey::Simplex => Arrangement::Simplex,
        ArrangementKey::Duplex => Arrangement::Duplex,
    };
    let mode = mode_override.unwrap_or(match raw.rate_mode {
        None | Some(RateModeKey::Physical) => RateMode::Physical,
        Some(RateModeKey::PaperLiteral) => RateMode::PaperLiteral,
    });
    let rule = match raw.decode_rule {
        None | Some(DecodeRuleKey::EachWord) => DecodeRule::EachWord,
        Some(DecodeRuleKey::AnyWord) => DecodeRule::AnyWord,
    };

    let horizon = raw.horizon_hours;
    if !horizon.is_finite() || horizon < 0.0 {
        return Err(at(text, "horizon_hours", "must be a finite number of hours >= 0"));
    }
    let grid = match (raw.time_grid, raw.grid_points) {
        (Some(_), Some(_)) => {
            return Err(at(text, "grid_points", "give either time_grid or grid_points, not both"))
        }
        (Some(g), None) => g,
        (None, points) => {
            let points = points.unwrap_or(DEFAULT_GRID_POINTS);
            if points == 0 {
                return Err(at(text, "grid_points", "must be >= 1"));
            }
            if horizon == 0.0 && points > 1 {
                return Err(at(text, "grid_points", "a zero horizon admits a single point"));
            }
            log_grid(horizon, points)
        }
    };

    let (lambdas, sweeps_lambda) = match (raw.lambda_list, raw.lambda_bit_per_day) {
        (Some(_), Some(_)) => {
            return Err(at(text, "lambda_list", "conflicts with lambda_bit_per_day"))
        }
        (Some(l), None) if l.is_empty() => return Err(at(text, "lambda_list", "is empty")),
        (Some(l), None) => (l, true),
        (None, Some(l)) => (vec![l], false),
        (None, None) => {
            return Err(CliError::Input(
                "missing lambda_bit_per_day (or lambda_list)".into(),
            ))
        }
    };
    let (periods, sweeps_scrub) = match (raw.scrub_period_list, raw.scrub_period_hours) {
        (Some(_), Some(_)) => {
            return Err(at(text, "scrub_period_list", "conflicts with scrub_period_hours"))
        }
        (Some(l), None) if l.is_empty() => {
            return Err(at(text, "scrub_period_list", "is empty"))
        }
        (Some(l), None) => (l.into_iter().map(Some).collect(), true),
        (None, p) => (vec![p], false),
    };

    let lambda_key = if sweeps_lambda { "lambda_list" } else { "lambda_bit_per_day" };
    let scrub_key = if sweeps_scrub { "scrub_period_list" } else { "scrub_period_hours" };
    let mut entries = Vec::with_capacity(lambdas.len() * periods.len());
    for &lambda in &lambdas {
        let rates = FaultRates::new(lambda, raw.lambda_e_symbol_per_day).map_err(|e| {
            let key = if lambda.is_finite() && lambda >= 0.0 {
                "lambda_e_symbol_per_day"
            } else {
                lambda_key
            };
            at(text, key, e)
        })?;
        for &period in &periods {
            let scrub = match period {
                Some(p) => ScrubConfig::every(p).map_err(|e| at(text, scrub_key, e))?,
                None => ScrubConfig::disabled(),
            };
            let scenario = Scenario::new(arrangement, code, rates, scrub, horizon, grid.clone())
                .map_err(|e| at(text, "time_grid", e))?
                .with_rate_mode(mode)
                .with_decode_rule(rule);
            entries.push(SweepEntry {
                scenario,
                lambda: sweeps_lambda.then_some(lambda),
                scrub_period: if sweeps_scrub { period } else { None },
            });
        }
    }
    Ok(ScenarioFile {
        entries,
        sweeps_lambda,
        sweeps_scrub,
    })
}
