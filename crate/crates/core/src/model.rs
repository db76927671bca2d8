//! Domain types for a Reed-Solomon coded memory word (simplex) or word pair
//! (duplex): code parameters, fault rates, scrubbing, the state tuples of the
//! two Markov models, and the predicates that decide when a configuration is
//! no longer decodable.
//!
//! Rates enter per day and are converted to per hour here; every other time
//! quantity in the crate is in hours.

use std::fmt;

use num_rational::Ratio;

use crate::error::{Error, Result};

pub const HOURS_PER_DAY: f64 = 24.0;

/// An RS(n, k) code over m-bit symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CodeParams {
    n: u32,
    k: u32,
    m: u32,
}

/// Checks `1 <= k < n <= 2^m - 1` and builds the code.
pub fn validate_code(n: u32, k: u32, m: u32) -> Result<CodeParams> {
    if n < 1 || k < 1 || m < 1 {
        return Err(Error::ConstraintViolated(format!(
            "RS({n},{k}) over {m}-bit symbols: all parameters must be >= 1"
        )));
    }
    if k >= n {
        return Err(Error::ConstraintViolated(format!(
            "RS({n},{k}): k must be smaller than n"
        )));
    }
    let max_len = 1u64.checked_shl(m).map_or(u64::MAX, |p| p - 1);
    if u64::from(n) > max_len {
        return Err(Error::ConstraintViolated(format!(
            "RS({n},{k}): n exceeds 2^{m} - 1 = {max_len}"
        )));
    }
    Ok(CodeParams { n, k, m })
}

impl CodeParams {
    pub fn new(n: u32, k: u32, m: u32) -> Result<Self> {
        validate_code(n, k, m)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Bits per symbol.
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Number of check symbols, `n - k`.
    pub fn redundancy(&self) -> u32 {
        self.n - self.k
    }

    /// Maximum number of correctable random errors with no erasures.
    pub fn t(&self) -> u32 {
        self.redundancy() / 2
    }

    /// The factor `m (n - k) / k` relating fail probability to BER,
    /// kept as an exact fraction.
    pub fn ber_coefficient(&self) -> Ratio<u64> {
        Ratio::new(
            u64::from(self.m) * u64::from(self.redundancy()),
            u64::from(self.k),
        )
    }

    /// `ber_coefficient` as the single f64 used for every BER value.
    pub fn ber_factor(&self) -> f64 {
        let r = self.ber_coefficient();
        *r.numer() as f64 / *r.denom() as f64
    }

    /// Errors-and-erasures bound: `erasures + 2 * errors <= n - k`.
    pub fn can_correct(&self, erasures: u32, errors: u32) -> bool {
        u64::from(erasures) + 2 * u64::from(errors) <= u64::from(self.redundancy())
    }
}

impl fmt::Display for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RS({},{}) m={}", self.n, self.k, self.m)
    }
}

/// Free-function form of [`CodeParams::ber_coefficient`].
pub fn ber_coefficient(code: &CodeParams) -> Ratio<u64> {
    code.ber_coefficient()
}

/// SEU rate per bit and erasure rate per symbol, both per day.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FaultRates {
    lambda_bit: f64,
    lambda_e: f64,
}

impl FaultRates {
    pub fn new(lambda_bit_per_day: f64, lambda_e_per_day: f64) -> Result<Self> {
        for (name, v) in [
            ("lambda_bit", lambda_bit_per_day),
            ("lambda_e", lambda_e_per_day),
        ] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::ConstraintViolated(format!(
                    "{name} must be finite and >= 0, got {v}"
                )));
            }
        }
        Ok(FaultRates {
            lambda_bit: lambda_bit_per_day,
            lambda_e: lambda_e_per_day,
        })
    }

    pub fn zero() -> Self {
        FaultRates {
            lambda_bit: 0.0,
            lambda_e: 0.0,
        }
    }

    pub fn lambda_bit_per_day(&self) -> f64 {
        self.lambda_bit
    }

    pub fn lambda_e_per_day(&self) -> f64 {
        self.lambda_e
    }

    pub fn seu_per_bit_hour(&self) -> f64 {
        self.lambda_bit / HOURS_PER_DAY
    }

    pub fn erasure_per_symbol_hour(&self) -> f64 {
        self.lambda_e / HOURS_PER_DAY
    }
}

/// Periodic scrubbing; `None` period means scrubbing is disabled.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ScrubConfig {
    period_hours: Option<f64>,
}

impl ScrubConfig {
    pub fn disabled() -> Self {
        ScrubConfig { period_hours: None }
    }

    pub fn every(period_hours: f64) -> Result<Self> {
        if !period_hours.is_finite() || period_hours <= 0.0 {
            return Err(Error::ConstraintViolated(format!(
                "scrub period must be finite and > 0 hours, got {period_hours}"
            )));
        }
        Ok(ScrubConfig {
            period_hours: Some(period_hours),
        })
    }

    pub fn enabled(&self) -> bool {
        self.period_hours.is_some()
    }

    pub fn period_hours(&self) -> Option<f64> {
        self.period_hours
    }

    /// Scrub rate `1 / T_sc` per hour, zero when disabled.
    pub fn rate_per_hour(&self) -> f64 {
        self.period_hours.map_or(0.0, |p| 1.0 / p)
    }
}

/// Simplex chain state: erased and randomly corrupted symbols of one word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SimplexState {
    pub er: u32,
    pub re: u32,
}

impl SimplexState {
    pub const GOOD: SimplexState = SimplexState { er: 0, re: 0 };

    pub fn new(er: u32, re: u32) -> Self {
        SimplexState { er, re }
    }

    pub fn affected(&self) -> u32 {
        self.er + self.re
    }
}

impl fmt::Display for SimplexState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.er, self.re)
    }
}

/// Duplex chain state. Each field counts symbol positions whose pair of
/// homologous symbols is in the named condition:
///
/// * `x`  erased in both words
/// * `y`  erased in one word, clean in the other
/// * `b`  erased in one word, random error in the other
/// * `e1` random error in word 1 only
/// * `e2` random error in word 2 only
/// * `ec` random error in both words
///
/// Derived `Ord` is lexicographic in that field order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DuplexState {
    pub x: u32,
    pub y: u32,
    pub b: u32,
    pub e1: u32,
    pub e2: u32,
    pub ec: u32,
}

impl DuplexState {
    pub const GOOD: DuplexState = DuplexState {
        x: 0,
        y: 0,
        b: 0,
        e1: 0,
        e2: 0,
        ec: 0,
    };

    pub fn new(x: u32, y: u32, b: u32, e1: u32, e2: u32, ec: u32) -> Self {
        DuplexState {
            x,
            y,
            b,
            e1,
            e2,
            ec,
        }
    }

    pub fn to_array(self) -> [u32; 6] {
        [self.x, self.y, self.b, self.e1, self.e2, self.ec]
    }

    pub fn from_array(a: [u32; 6]) -> Self {
        DuplexState::new(a[0], a[1], a[2], a[3], a[4], a[5])
    }

    /// Number of symbol positions touched by any fault.
    pub fn affected(&self) -> u32 {
        self.x + self.y + self.b + self.e1 + self.e2 + self.ec
    }

    /// Swaps the roles of the two words.
    pub fn mirrored(self) -> Self {
        DuplexState {
            e1: self.e2,
            e2: self.e1,
            ..self
        }
    }

    /// Correction cost `X + 2(b + ec + e_i)` seen by word 1 and word 2 once the
    /// arbiter has masked single-sided erasures.
    pub fn word_costs(&self) -> (u64, u64) {
        let shared = u64::from(self.x) + 2 * u64::from(self.b) + 2 * u64::from(self.ec);
        (
            shared + 2 * u64::from(self.e1),
            shared + 2 * u64::from(self.e2),
        )
    }
}

impl fmt::Display for DuplexState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{},{},{})",
            self.x, self.y, self.b, self.e1, self.e2, self.ec
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Arrangement {
    Simplex,
    Duplex,
}

impl Arrangement {
    pub fn name(self) -> &'static str {
        match self {
            Arrangement::Simplex => "simplex",
            Arrangement::Duplex => "duplex",
        }
    }
}

/// Which duplex rates are used for transitions C and F.
///
/// `PaperLiteral` uses the single-sided factors `λ_e·(n − sum)` and `λ_e·ec`.
/// `Physical` counts an erasure landing on either of the two homologous
/// symbols, doubling both, which is what a per-symbol simulation of the two
/// words produces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum RateMode {
    PaperLiteral,
    #[default]
    Physical,
}

impl RateMode {
    pub fn name(self) -> &'static str {
        match self {
            RateMode::PaperLiteral => "paper-literal",
            RateMode::Physical => "physical",
        }
    }
}

/// When a duplex pair still yields a correct read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum DecodeRule {
    /// Both words must satisfy the errors-and-erasures bound.
    #[default]
    EachWord,
    /// One word satisfying the bound is enough.
    AnyWord,
}

impl DecodeRule {
    pub fn name(self) -> &'static str {
        match self {
            DecodeRule::EachWord => "each-word",
            DecodeRule::AnyWord => "any-word",
        }
    }
}

/// A configuration from which a read or scrub can no longer succeed:
/// `er + 2 re > n - k`.
pub fn simplex_is_fail(s: SimplexState, code: &CodeParams) -> bool {
    !code.can_correct(s.er, s.re)
}

/// Duplex failure under the given decode rule. Single-sided erasures (`y`)
/// never count against either word.
pub fn duplex_is_fail(d: DuplexState, code: &CodeParams, rule: DecodeRule) -> bool {
    let r = u64::from(code.redundancy());
    let (w1, w2) = d.word_costs();
    let (bad1, bad2) = (w1 > r, w2 > r);
    match rule {
        DecodeRule::EachWord => bad1 || bad2,
        DecodeRule::AnyWord => bad1 && bad2,
    }
}

/// Result of a scrub: the cleaned state, or failure when the configuration
/// was already beyond correction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scrubbed<S> {
    State(S),
    Fail,
}

pub fn simplex_scrub_target(s: SimplexState, code: &CodeParams) -> Scrubbed<SimplexState> {
    if simplex_is_fail(s, code) {
        Scrubbed::Fail
    } else {
        Scrubbed::State(SimplexState::new(s.er, 0))
    }
}

/// Scrubbing rewrites corrected data but cannot repair permanent faults, so
/// every `b` pair keeps its erasure and becomes a `y` pair.
pub fn duplex_scrub_target(
    d: DuplexState,
    code: &CodeParams,
    rule: DecodeRule,
) -> Scrubbed<DuplexState> {
    if duplex_is_fail(d, code, rule) {
        Scrubbed::Fail
    } else {
        Scrubbed::State(DuplexState::new(d.x, d.y + d.b, 0, 0, 0, 0))
    }
}

/// One analysis setup: arrangement, code, rates, scrubbing, and time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    arrangement: Arrangement,
    code: CodeParams,
    rates: FaultRates,
    scrub: ScrubConfig,
    horizon_hours: f64,
    time_grid: Vec<f64>,
    rate_mode: RateMode,
    decode_rule: DecodeRule,
}

impl Scenario {
    pub fn new(
        arrangement: Arrangement,
        code: CodeParams,
        rates: FaultRates,
        scrub: ScrubConfig,
        horizon_hours: f64,
        time_grid: Vec<f64>,
    ) -> Result<Self> {
        if !horizon_hours.is_finite() || horizon_hours < 0.0 {
            return Err(Error::ConstraintViolated(format!(
                "horizon must be finite and >= 0 hours, got {horizon_hours}"
            )));
        }
        if time_grid.is_empty() {
            return Err(Error::ConstraintViolated("time grid is empty".into()));
        }
        for (i, &t) in time_grid.iter().enumerate() {
            if !t.is_finite() || t < 0.0 || t > horizon_hours {
                return Err(Error::ConstraintViolated(format!(
                    "time grid entry {t} outside [0, {horizon_hours}]"
                )));
            }
            if i > 0 && t <= time_grid[i - 1] {
                return Err(Error::ConstraintViolated(
                    "time grid must be strictly increasing".into(),
                ));
            }
        }
        Ok(Scenario {
            arrangement,
            code,
            rates,
            scrub,
            horizon_hours,
            time_grid,
            rate_mode: RateMode::default(),
            decode_rule: DecodeRule::default(),
        })
    }

    /// Scenario evaluated only at its horizon.
    pub fn at_horizon(
        arrangement: Arrangement,
        code: CodeParams,
        rates: FaultRates,
        scrub: ScrubConfig,
        horizon_hours: f64,
    ) -> Result<Self> {
        Self::new(
            arrangement,
            code,
            rates,
            scrub,
            horizon_hours,
            vec![horizon_hours],
        )
    }

    pub fn with_rate_mode(mut self, mode: RateMode) -> Self {
        self.rate_mode = mode;
        self
    }

    pub fn with_decode_rule(mut self, rule: DecodeRule) -> Self {
        self.decode_rule = rule;
        self
    }

    pub fn with_rates(mut self, rates: FaultRates) -> Self {
        self.rates = rates;
        self
    }

    pub fn with_scrub(mut self, scrub: ScrubConfig) -> Self {
        self.scrub = scrub;
        self
    }

    pub fn arrangement(&self) -> Arrangement {
        self.arrangement
    }

    pub fn code(&self) -> &CodeParams {
        &self.code
    }

    pub fn rates(&self) -> &FaultRates {
        &self.rates
    }

    pub fn scrub(&self) -> &ScrubConfig {
        &self.scrub
    }

    pub fn horizon_hours(&self) -> f64 {
        self.horizon_hours
    }

    pub fn time_grid(&self) -> &[f64] {
        &self.time_grid
    }

    pub fn rate_mode(&self) -> RateMode {
        self.rate_mode
    }

    pub fn decode_rule(&self) -> DecodeRule {
        self.decode_rule
    }
}

/// `points` log-spaced instants from `horizon / 1000` to `horizon`.
pub fn log_grid(horizon_hours: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![horizon_hours],
        _ => {
            let lo = (horizon_hours / 1000.0).ln();
            let hi = horizon_hours.ln();
            let mut grid: Vec<f64> = (0..points)
                .map(|i| (lo + (hi - lo) * i as f64 / (points - 1) as f64).exp())
                .collect();
            // exp(ln(h)) can land one ulp away from h
            grid[points - 1] = horizon_hours;
            grid
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(n: u32, k: u32) -> CodeParams {
        validate_code(n, k, 8).unwrap()
    }

    #[test]
    fn validate_code_examples() {
        assert_eq!(rs(18, 16).t(), 1);
        assert_eq!(rs(36, 16).t(), 10);
        assert!(matches!(
            validate_code(36, 16, 5),
            Err(Error::ConstraintViolated(_))
        ));
        assert!(validate_code(16, 16, 8).is_err());
        assert!(validate_code(18, 0, 8).is_err());
        assert!(validate_code(0, 0, 8).is_err());
        assert!(validate_code(18, 16, 0).is_err());
        assert!(validate_code(31, 1, 5).is_ok());
        assert!(validate_code(1000, 3, 64).is_ok());
    }

    #[test]
    fn simplex_fail_examples() {
        let c18 = rs(18, 16);
        assert!(!simplex_is_fail(SimplexState::new(0, 0), &c18));
        assert!(simplex_is_fail(SimplexState::new(1, 1), &c18));
        assert!(!simplex_is_fail(SimplexState::new(10, 5), &rs(36, 16)));
        assert!(simplex_is_fail(SimplexState::new(11, 5), &rs(36, 16)));
    }

    #[test]
    fn duplex_fail_examples_any_word() {
        let c = rs(18, 16);
        let any = DecodeRule::AnyWord;
        assert!(!duplex_is_fail(DuplexState::new(0, 5, 0, 0, 0, 0), &c, any));
        assert!(!duplex_is_fail(DuplexState::new(2, 0, 0, 1, 0, 0), &c, any));
        assert!(duplex_is_fail(DuplexState::new(1, 0, 1, 0, 0, 0), &c, any));
    }

    #[test]
    fn duplex_fail_examples_each_word() {
        let c = rs(18, 16);
        let each = DecodeRule::EachWord;
        assert!(!duplex_is_fail(DuplexState::new(0, 5, 0, 0, 0, 0), &c, each));
        // word 1 is overloaded, so the pair is lost under this rule
        assert!(duplex_is_fail(DuplexState::new(2, 0, 0, 1, 0, 0), &c, each));
        assert!(duplex_is_fail(DuplexState::new(1, 0, 1, 0, 0, 0), &c, each));
        assert!(!duplex_is_fail(DuplexState::new(0, 0, 0, 1, 1, 0), &c, each));
        assert!(duplex_is_fail(DuplexState::new(0, 0, 0, 2, 0, 0), &c, each));
    }

    #[test]
    fn scrub_examples() {
        let c18 = rs(18, 16);
        let c36 = rs(36, 16);
        assert_eq!(
            simplex_scrub_target(SimplexState::new(2, 0), &c18),
            Scrubbed::State(SimplexState::new(2, 0))
        );
        assert_eq!(
            simplex_scrub_target(SimplexState::new(4, 3), &c36),
            Scrubbed::State(SimplexState::new(4, 0))
        );
        assert_eq!(
            simplex_scrub_target(SimplexState::new(1, 1), &c18),
            Scrubbed::Fail
        );

        for rule in [DecodeRule::EachWord, DecodeRule::AnyWord] {
            assert_eq!(
                duplex_scrub_target(DuplexState::new(1, 2, 1, 3, 0, 1), &c36, rule),
                Scrubbed::State(DuplexState::new(1, 3, 0, 0, 0, 0))
            );
            assert_eq!(
                duplex_scrub_target(DuplexState::GOOD, &c18, rule),
                Scrubbed::State(DuplexState::GOOD)
            );
            assert_eq!(
                duplex_scrub_target(DuplexState::new(1, 0, 1, 0, 0, 0), &c18, rule),
                Scrubbed::Fail
            );
        }
    }

    #[test]
    fn ber_coefficient_examples() {
        assert_eq!(rs(18, 16).ber_coefficient(), Ratio::from_integer(1));
        assert_eq!(rs(36, 16).ber_coefficient(), Ratio::from_integer(10));
        let c18m4 = validate_code(14, 12, 4).unwrap();
        assert_eq!(c18m4.ber_coefficient(), Ratio::new(8, 12));
        assert_eq!(rs(18, 16).ber_factor(), 1.0);
        assert_eq!(rs(36, 16).ber_factor(), 10.0);
    }

    #[test]
    fn ber_coefficient_rs18_with_4_bit_symbols_is_half() {
        // 18 > 2^4 - 1, so the m=4 example is checked on the formula, not a
        // constructible code
        assert_eq!(Ratio::new(4u64 * 2, 16), Ratio::new(1, 2));
    }

    #[test]
    fn rate_conversion_divides_by_24() {
        let r = FaultRates::new(24.0, 48.0).unwrap();
        assert_eq!(r.seu_per_bit_hour(), 1.0);
        assert_eq!(r.erasure_per_symbol_hour(), 2.0);
        assert!(FaultRates::new(-1.0, 0.0).is_err());
        assert!(FaultRates::new(f64::NAN, 0.0).is_err());
        assert!(FaultRates::new(0.0, f64::INFINITY).is_err());
    }

    #[test]
    fn scrub_config_rejects_bad_period() {
        assert!(ScrubConfig::every(0.0).is_err());
        assert!(ScrubConfig::every(-2.0).is_err());
        assert!(!ScrubConfig::disabled().enabled());
        assert_eq!(ScrubConfig::every(4.0).unwrap().rate_per_hour(), 0.25);
    }

    #[test]
    fn scenario_grid_validation() {
        let c = rs(18, 16);
        let mk = |grid: Vec<f64>| {
            Scenario::new(
                Arrangement::Simplex,
                c,
                FaultRates::zero(),
                ScrubConfig::disabled(),
                48.0,
                grid,
            )
        };
        assert!(mk(vec![0.0, 1.0, 48.0]).is_ok());
        assert!(mk(vec![1.0, 1.0]).is_err());
        assert!(mk(vec![2.0, 1.0]).is_err());
        assert!(mk(vec![49.0]).is_err());
        assert!(mk(vec![-1.0]).is_err());
        assert!(mk(vec![]).is_err());
    }

    #[test]
    fn log_grid_endpoints() {
        let g = log_grid(48.0, 7);
        assert_eq!(g.len(), 7);
        assert!((g[0] - 0.048).abs() < 1e-12);
        assert_eq!(g[6], 48.0);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn code_strategy() -> impl Strategy<Value = CodeParams> {
            (2u32..=40, 3u32..=8).prop_flat_map(|(n, m)| {
                let n = n.min((1 << m) - 1).max(2);
                (1..n).prop_map(move |k| validate_code(n, k, m).unwrap())
            })
        }

        fn duplex_strategy(n: u32) -> impl Strategy<Value = DuplexState> {
            // clamp greedily so the component sum never exceeds n
            (proptest::collection::vec(0..=n, 6), 0usize..6).prop_map(move |(v, rot)| {
                let mut a = [0u32; 6];
                let mut left = n;
                for i in 0..6 {
                    let j = (i + rot) % 6;
                    a[j] = v[j].min(left);
                    left -= a[j];
                }
                DuplexState::from_array(a)
            })
        }

        proptest! {
            #[test]
            fn coefficient_cross_multiplies(c in code_strategy()) {
                let r = c.ber_coefficient();
                prop_assert_eq!(
                    *r.numer() * u64::from(c.k()),
                    *r.denom() * u64::from(c.m()) * u64::from(c.redundancy())
                );
            }

            #[test]
            fn duplex_scrub_idempotent_and_symmetric(
                (c, d) in code_strategy().prop_flat_map(|c| (Just(c), duplex_strategy(c.n())))
            ) {
                for rule in [DecodeRule::EachWord, DecodeRule::AnyWord] {
                    prop_assert_eq!(
                        duplex_is_fail(d, &c, rule),
                        duplex_is_fail(d.mirrored(), &c, rule)
                    );
                    let once = duplex_scrub_target(d, &c, rule);
                    let twice = match once {
                        Scrubbed::State(s) => duplex_scrub_target(s, &c, rule),
                        Scrubbed::Fail => Scrubbed::Fail,
                    };
                    prop_assert_eq!(once, twice);
                    if d.b == 0 && d.e1 == 0 && d.e2 == 0 && d.ec == 0 && d.x <= c.redundancy() {
                        prop_assert!(!duplex_is_fail(d, &c, rule));
                    }
                }
            }

            #[test]
            fn simplex_scrub_idempotent(
                (c, er, re) in code_strategy()
                    .prop_flat_map(|c| (Just(c), 0..=c.n()))
                    .prop_flat_map(|(c, er)| (Just(c), Just(er), 0..=c.n() - er))
            ) {
                let s = SimplexState::new(er, re);
                let once = simplex_scrub_target(s, &c);
                let twice = match once {
                    Scrubbed::State(t) => simplex_scrub_target(t, &c),
                    Scrubbed::Fail => Scrubbed::Fail,
                };
                prop_assert_eq!(once, twice);
                if re == 0 && er <= c.redundancy() {
                    prop_assert!(!simplex_is_fail(s, &c));
                }
            }
        }
    }
}
