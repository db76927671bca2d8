//! Monte Carlo fault injection on explicit symbol arrays.
//!
//! Each stored word is an array of `n` symbols that are clean, hold a random
//! error, or are erased. Every symbol sees SEUs at rate `m·λ` (a second hit
//! on an errored symbol changes nothing) and erasures at rate `λ_e` (an
//! erasure replaces whatever was there). A configuration that exceeds the
//! correction capability is an absorbing failure, so the check runs after
//! every event and again at the horizon.
//!
//! Trial `i` uses its own ChaCha8 stream seeded with
//! `splitmix64(seed + (i + 1) * 0x9E3779B97F4A7C15)`, which makes estimates
//! independent of how trials are scheduled across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution as _, Exp};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{Arrangement, CodeParams, DecodeRule, Scenario};

/// Two-sided 95% normal quantile.
pub const Z_95: f64 = 1.959_963_984_540_054;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ScrubDiscipline {
    /// Scrubs arrive as a Poisson process of rate `1 / T_sc`, like the chain.
    #[default]
    Exponential,
    /// Scrubs at `T_sc, 2 T_sc, ...`.
    DeterministicPeriod,
}

impl ScrubDiscipline {
    pub fn name(self) -> &'static str {
        match self {
            ScrubDiscipline::Exponential => "exponential",
            ScrubDiscipline::DeterministicPeriod => "deterministic-period",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    Fail,
}

#[derive(Debug, Clone, PartialEq)]
pub struct McConfig {
    pub scenario: Scenario,
    pub trials: u64,
    pub seed: u64,
    pub discipline: ScrubDiscipline,
}

impl McConfig {
    pub fn new(scenario: Scenario, trials: u64, seed: u64, discipline: ScrubDiscipline) -> Result<Self> {
        if trials == 0 {
            return Err(Error::ConstraintViolated("trials must be >= 1".into()));
        }
        Ok(McConfig {
            scenario,
            trials,
            seed,
            discipline,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub p_fail_hat: f64,
    pub ci_halfwidth_95: f64,
    pub ber_hat: f64,
    pub failures: u64,
    pub trials: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Sym {
    Clean,
    Error,
    Erased,
}

pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn trial_seed(master: u64, trial: u64) -> u64 {
    splitmix64(master.wrapping_add(trial.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15)))
}

/// Erasures and random errors one word presents to its decoder. With a
/// partner word, erasures on only one side are masked by taking the partner's
/// symbol, which passes on that symbol's random error if it has one.
fn word_load(own: &[Sym], partner: Option<&[Sym]>) -> (u32, u32) {
    let mut erasures = 0;
    let mut errors = 0;
    for (i, &s) in own.iter().enumerate() {
        match (s, partner.map(|p| p[i])) {
            (Sym::Clean, _) => {}
            (Sym::Error, _) => errors += 1,
            (Sym::Erased, None) | (Sym::Erased, Some(Sym::Erased)) => erasures += 1,
            (Sym::Erased, Some(Sym::Error)) => errors += 1,
            (Sym::Erased, Some(Sym::Clean)) => {}
        }
    }
    (erasures, errors)
}

fn failed(words: &[Vec<Sym>], code: &CodeParams, rule: DecodeRule) -> bool {
    match words {
        [w] => {
            let (er, re) = word_load(w, None);
            !code.can_correct(er, re)
        }
        [w1, w2] => {
            let (er1, re1) = word_load(w1, Some(w2));
            let (er2, re2) = word_load(w2, Some(w1));
            let ok1 = code.can_correct(er1, re1);
            let ok2 = code.can_correct(er2, re2);
            match rule {
                DecodeRule::EachWord => !(ok1 && ok2),
                DecodeRule::AnyWord => !(ok1 || ok2),
            }
        }
        _ => unreachable!("one or two words"),
    }
}

/// Simulates one stored word (or pair) over the scenario horizon.
pub fn simulate_once(scenario: &Scenario, discipline: ScrubDiscipline, seed: u64) -> Outcome {
    let code = scenario.code();
    let rule = scenario.decode_rule();
    let n = code.n() as usize;
    let word_count = match scenario.arrangement() {
        Arrangement::Simplex => 1,
        Arrangement::Duplex => 2,
    };
    let mut words = vec![vec![Sym::Clean; n]; word_count];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let seu = f64::from(code.m()) * scenario.rates().seu_per_bit_hour();
    let erasure = scenario.rates().erasure_per_symbol_hour();
    let per_symbol = seu + erasure;
    let fault_total = per_symbol * (n * word_count) as f64;
    let period = scenario.scrub().period_hours();
    let exp_scrub = match (discipline, period) {
        (ScrubDiscipline::Exponential, Some(p)) => 1.0 / p,
        _ => 0.0,
    };
    let mut next_timed_scrub = match (discipline, period) {
        (ScrubDiscipline::DeterministicPeriod, Some(p)) => p,
        _ => f64::INFINITY,
    };
    let horizon = scenario.horizon_hours();
    let total = fault_total + exp_scrub;
    let clock = (total > 0.0).then(|| Exp::new(total).expect("positive rate"));

    let mut t = 0.0;
    loop {
        let dt = clock.as_ref().map_or(f64::INFINITY, |c| c.sample(&mut rng));
        if next_timed_scrub <= horizon && t + dt > next_timed_scrub {
            // memoryless clock: restarting the draw after a timed scrub is exact
            t = next_timed_scrub;
            if scrub(&mut words, code, rule) == Outcome::Fail {
                return Outcome::Fail;
            }
            next_timed_scrub += period.expect("timed scrub has a period");
            continue;
        }
        t += dt;
        if t > horizon {
            break;
        }
        let u = rng.random::<f64>() * total;
        if u < fault_total {
            let w = rng.random_range(0..word_count);
            let i = rng.random_range(0..n);
            let sym = &mut words[w][i];
            if rng.random::<f64>() * per_symbol < erasure {
                *sym = Sym::Erased;
            } else if *sym == Sym::Clean {
                *sym = Sym::Error;
            }
            if failed(&words, code, rule) {
                return Outcome::Fail;
            }
        } else if scrub(&mut words, code, rule) == Outcome::Fail {
            return Outcome::Fail;
        }
    }
    if failed(&words, code, rule) {
        Outcome::Fail
    } else {
        Outcome::Ok
    }
}

/// Corrects every random error; fails if the data was already unreadable.
fn scrub(words: &mut [Vec<Sym>], code: &CodeParams, rule: DecodeRule) -> Outcome {
    if failed(words, code, rule) {
        return Outcome::Fail;
    }
    for s in words.iter_mut().flatten() {
        if *s == Sym::Error {
            *s = Sym::Clean;
        }
    }
    Outcome::Ok
}

/// Half-width of the 95% Wilson score interval. Zero failures report a
/// half-width of 0.
pub fn wilson_halfwidth(failures: u64, trials: u64) -> f64 {
    if failures == 0 || trials == 0 {
        return 0.0;
    }
    let n = trials as f64;
    let p = failures as f64 / n;
    let z2 = Z_95 * Z_95;
    Z_95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / (1.0 + z2 / n)
}

pub fn estimate(cfg: &McConfig) -> McEstimate {
    let failures = (0..cfg.trials)
        .into_par_iter()
        .filter(|&i| {
            simulate_once(&cfg.scenario, cfg.discipline, trial_seed(cfg.seed, i)) == Outcome::Fail
        })
        .count() as u64;
    let p_fail_hat = failures as f64 / cfg.trials as f64;
    McEstimate {
        p_fail_hat,
        ci_halfwidth_95: wilson_halfwidth(failures, cfg.trials),
        ber_hat: cfg.scenario.code().ber_factor() * p_fail_hat,
        failures,
        trials: cfg.trials,
    }
}
