//! State-space enumeration and generator assembly for the simplex and duplex
//! chains.
//!
//! Non-fail states are kept in lexicographic tuple order and a single
//! absorbing Fail state is appended last. Event targets that exceed the
//! correction capability are folded into one `to-fail` transition per source.

use std::fmt;
use std::io::{self, Write};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{
    duplex_is_fail, duplex_scrub_target, simplex_is_fail, simplex_scrub_target, Arrangement,
    CodeParams, DecodeRule, DuplexState, FaultRates, RateMode, Scenario, Scrubbed, SimplexState,
};
use crate::text::sci;

pub const DEFAULT_STATE_CAP: usize = 5_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TransitionKind {
    /// Erasure on the clean side of a `y` pair.
    ErasureA,
    /// Erasure on the errored side of a `b` pair.
    ErasureB,
    /// Erasure on a clean pair.
    ErasureC,
    /// Erasure on the errored symbol of an `e1` pair.
    ErasureD,
    ErasureE,
    /// Erasure on either side of an `ec` pair.
    ErasureF,
    /// Erasure on the clean side of an `e1` pair.
    ErasureG,
    ErasureH,
    /// SEU on the clean side of a `y` pair.
    RandomI,
    /// SEU in word 1 on a clean pair.
    RandomL,
    RandomM,
    /// SEU in word 2 on an `e1` pair.
    RandomN,
    RandomO,
    SimplexErasure,
    SimplexError,
    Scrub,
    ToFail,
}

impl TransitionKind {
    pub fn label(self) -> &'static str {
        use TransitionKind::*;
        match self {
            ErasureA => "erasure-A",
            ErasureB => "erasure-B",
            ErasureC => "erasure-C",
            ErasureD => "erasure-D",
            ErasureE => "erasure-E",
            ErasureF => "erasure-F",
            ErasureG => "erasure-G",
            ErasureH => "erasure-H",
            RandomI => "random-I",
            RandomL => "random-L",
            RandomM => "random-M",
            RandomN => "random-N",
            RandomO => "random-O",
            SimplexErasure => "simplex-erasure",
            SimplexError => "simplex-error",
            Scrub => "scrub",
            ToFail => "to-fail",
        }
    }

    /// The kind under the word 1 / word 2 relabelling.
    pub fn mirrored(self) -> Self {
        use TransitionKind::*;
        match self {
            ErasureD => ErasureE,
            ErasureE => ErasureD,
            ErasureG => ErasureH,
            ErasureH => ErasureG,
            RandomL => RandomM,
            RandomM => RandomL,
            RandomN => RandomO,
            RandomO => RandomN,
            other => other,
        }
    }
}

impl fmt::Display for TransitionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Target<S> {
    State(S),
    Fail,
}

/// An outgoing transition of a single state, before indexing. Rates are per
/// hour.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateTransition<S> {
    pub target: Target<S>,
    pub rate: f64,
    pub kind: TransitionKind,
}

/// Generator entry between two indexed states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transition {
    pub source: usize,
    pub target: usize,
    pub rate: f64,
    pub kind: TransitionKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChainState {
    Simplex(SimplexState),
    Duplex(DuplexState),
    Fail,
}

impl fmt::Display for ChainState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainState::Simplex(s) => s.fmt(f),
            ChainState::Duplex(d) => d.fmt(f),
            ChainState::Fail => f.write_str("Fail"),
        }
    }
}

/// Collects event outcomes, merging every failing target into one entry.
struct Emitter<S> {
    out: Vec<StateTransition<S>>,
    to_fail: f64,
}

impl<S> Emitter<S> {
    fn new() -> Self {
        Emitter {
            out: Vec::new(),
            to_fail: 0.0,
        }
    }

    fn push(&mut self, target: S, fails: bool, rate: f64, kind: TransitionKind) {
        if rate <= 0.0 {
            return;
        }
        if fails {
            self.to_fail += rate;
        } else {
            self.out.push(StateTransition {
                target: Target::State(target),
                rate,
                kind,
            });
        }
    }

    fn finish(mut self) -> Vec<StateTransition<S>> {
        if self.to_fail > 0.0 {
            self.out.push(StateTransition {
                target: Target::Fail,
                rate: self.to_fail,
                kind: TransitionKind::ToFail,
            });
        }
        self.out
    }
}

fn simplex_states(code: &CodeParams, cap: usize) -> Result<Vec<SimplexState>> {
    let n = code.n();
    let mut states = Vec::new();
    for er in 0..=n {
        for re in 0..=(n - er) {
            let s = SimplexState::new(er, re);
            if !simplex_is_fail(s, code) {
                states.push(s);
                if states.len() + 1 > cap {
                    return Err(Error::ModelTooLarge {
                        states: states.len() + 1,
                        cap,
                    });
                }
            }
        }
    }
    Ok(states)
}

fn duplex_states(code: &CodeParams, rule: DecodeRule, cap: usize) -> Result<Vec<DuplexState>> {
    let n = code.n();
    let r = code.redundancy();
    let mut states = Vec::new();
    // Loop order matches the lexicographic field order, so `states` comes out
    // sorted. X + 2b + 2ec <= n - k is necessary under both rules.
    for x in 0..=n.min(r) {
        for y in 0..=(n - x) {
            let used_xy = x + y;
            for b in 0..=(n - used_xy) {
                if x + 2 * b > r {
                    break;
                }
                let used_xyb = used_xy + b;
                for e1 in 0..=(n - used_xyb) {
                    for e2 in 0..=(n - used_xyb - e1) {
                        for ec in 0..=(n - used_xyb - e1 - e2) {
                            if x + 2 * b + 2 * ec > r {
                                break;
                            }
                            let d = DuplexState::new(x, y, b, e1, e2, ec);
                            if !duplex_is_fail(d, code, rule) {
                                states.push(d);
                                if states.len() + 1 > cap {
                                    return Err(Error::ModelTooLarge {
                                        states: states.len() + 1,
                                        cap,
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(states)
}

/// All non-fail simplex states in lexicographic order, followed by `Fail`.
pub fn enumerate_simplex(code: &CodeParams) -> Vec<ChainState> {
    simplex_states(code, usize::MAX)
        .expect("uncapped enumeration")
        .into_iter()
        .map(ChainState::Simplex)
        .chain(std::iter::once(ChainState::Fail))
        .collect()
}

/// All non-fail duplex states in lexicographic order, followed by `Fail`.
pub fn enumerate_duplex(code: &CodeParams, rule: DecodeRule) -> Vec<ChainState> {
    duplex_states(code, rule, usize::MAX)
        .expect("uncapped enumeration")
        .into_iter()
        .map(ChainState::Duplex)
        .chain(std::iter::once(ChainState::Fail))
        .collect()
}

/// Fault events out of a non-fail simplex state.
pub fn simplex_transitions(
    s: SimplexState,
    code: &CodeParams,
    rates: &FaultRates,
) -> Vec<StateTransition<SimplexState>> {
    let clean = f64::from(code.n() - s.affected());
    let lam_e = rates.erasure_per_symbol_hour();
    let lam_sym = f64::from(code.m()) * rates.seu_per_bit_hour();
    let mut em = Emitter::new();
    let mut push = |er: u32, re: u32, rate: f64, kind| {
        let t = SimplexState::new(er, re);
        em.push(t, simplex_is_fail(t, code), rate, kind);
    };

    push(
        s.er + 1,
        s.re,
        lam_e * clean,
        TransitionKind::SimplexErasure,
    );
    if s.re > 0 {
        push(
            s.er + 1,
            s.re - 1,
            lam_e * f64::from(s.re),
            TransitionKind::SimplexErasure,
        );
    }
    push(
        s.er,
        s.re + 1,
        lam_sym * clean,
        TransitionKind::SimplexError,
    );
    em.finish()
}

/// Fault events A..O out of a non-fail duplex state.
pub fn duplex_event_transitions(
    d: DuplexState,
    code: &CodeParams,
    rates: &FaultRates,
    mode: RateMode,
    rule: DecodeRule,
) -> Vec<StateTransition<DuplexState>> {
    use TransitionKind::*;

    let lam_e = rates.erasure_per_symbol_hour();
    let lam_sym = f64::from(code.m()) * rates.seu_per_bit_hour();
    let sides = match mode {
        RateMode::PaperLiteral => 1.0,
        RateMode::Physical => 2.0,
    };
    let clean = f64::from(code.n() - d.affected());
    let (y, b, e1, e2, ec) = (
        f64::from(d.y),
        f64::from(d.b),
        f64::from(d.e1),
        f64::from(d.e2),
        f64::from(d.ec),
    );

    // (kind, field deltas over (x, y, b, e1, e2, ec), rate)
    let events: [(TransitionKind, [i32; 6], f64); 13] = [
        (ErasureA, [1, -1, 0, 0, 0, 0], lam_e * y),
        (ErasureB, [1, 0, -1, 0, 0, 0], lam_e * b),
        (ErasureC, [0, 1, 0, 0, 0, 0], sides * lam_e * clean),
        (ErasureD, [0, 1, 0, -1, 0, 0], lam_e * e1),
        (ErasureE, [0, 1, 0, 0, -1, 0], lam_e * e2),
        (ErasureF, [0, 0, 1, 0, 0, -1], sides * lam_e * ec),
        (ErasureG, [0, 0, 1, -1, 0, 0], lam_e * e1),
        (ErasureH, [0, 0, 1, 0, -1, 0], lam_e * e2),
        (RandomI, [0, -1, 1, 0, 0, 0], lam_sym * y),
        (RandomL, [0, 0, 0, 1, 0, 0], lam_sym * clean),
        (RandomM, [0, 0, 0, 0, 1, 0], lam_sym * clean),
        (RandomN, [0, 0, 0, -1, 0, 1], lam_sym * e1),
        (RandomO, [0, 0, 0, 0, -1, 1], lam_sym * e2),
    ];

    let base = d.to_array();
    let mut em = Emitter::new();
    for (kind, delta, rate) in events {
        if rate <= 0.0 {
            continue;
        }
        // a positive rate implies the decremented field is positive
        let mut t = [0u32; 6];
        for i in 0..6 {
            t[i] = base[i].checked_add_signed(delta[i]).expect("positive multiplicity");
        }
        let t = DuplexState::from_array(t);
        em.push(t, duplex_is_fail(t, code, rule), rate, kind);
    }
    em.finish()
}

/// Sparse CTMC over an enumerated state space. Off-diagonal rates are stored
/// per source row; the diagonal is the negated exit rate.
#[derive(Debug, Clone)]
pub struct Ctmc {
    states: Vec<ChainState>,
    row_start: Vec<usize>,
    transitions: Vec<Transition>,
    exit_rates: Vec<f64>,
    fail_index: usize,
    initial_index: usize,
    code: CodeParams,
}

impl Ctmc {
    /// Chain from explicit edges. `states` must end with `ChainState::Fail`,
    /// which may have no outgoing edges; `code` only supplies the BER factor.
    pub fn from_edges(
        code: CodeParams,
        states: Vec<ChainState>,
        mut edges: Vec<Transition>,
        initial_index: usize,
    ) -> Result<Ctmc> {
        let n = states.len();
        if n == 0 || states[n - 1] != ChainState::Fail {
            return Err(Error::ConstraintViolated(
                "state list must end with Fail".into(),
            ));
        }
        if initial_index >= n {
            return Err(Error::ConstraintViolated("initial index out of range".into()));
        }
        let fail_index = n - 1;
        for e in &edges {
            if e.source >= n || e.target >= n || e.source == e.target {
                return Err(Error::ConstraintViolated(format!(
                    "bad edge {} -> {}",
                    e.source, e.target
                )));
            }
            if e.source == fail_index {
                return Err(Error::ConstraintViolated("Fail must be absorbing".into()));
            }
            if !(e.rate.is_finite() && e.rate > 0.0) {
                return Err(Error::ConstraintViolated(format!("bad rate {}", e.rate)));
            }
        }
        edges.sort_by_key(|e| e.source);
        let mut row_start = vec![0; n + 1];
        let mut exit_rates = vec![0.0; n];
        for e in &edges {
            row_start[e.source + 1] += 1;
            exit_rates[e.source] += e.rate;
        }
        for i in 0..n {
            row_start[i + 1] += row_start[i];
        }
        Ok(Ctmc {
            states,
            row_start,
            transitions: edges,
            exit_rates,
            fail_index,
            initial_index,
            code,
        })
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[ChainState] {
        &self.states
    }

    pub fn code(&self) -> &CodeParams {
        &self.code
    }

    pub fn fail_index(&self) -> usize {
        self.fail_index
    }

    pub fn initial_index(&self) -> usize {
        self.initial_index
    }

    /// All transitions, grouped by source in index order.
    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn outgoing(&self, source: usize) -> &[Transition] {
        &self.transitions[self.row_start[source]..self.row_start[source + 1]]
    }

    pub fn exit_rate(&self, source: usize) -> f64 {
        self.exit_rates[source]
    }

    /// Generator diagonal entry, `-exit_rate`.
    pub fn diagonal(&self, source: usize) -> f64 {
        -self.exit_rates[source]
    }

    pub fn max_exit_rate(&self) -> f64 {
        self.exit_rates.iter().copied().fold(0.0, f64::max)
    }

    pub fn index_of(&self, state: &ChainState) -> Option<usize> {
        match state {
            ChainState::Fail => Some(self.fail_index),
            s => self.states[..self.fail_index].binary_search(s).ok(),
        }
    }

    /// Row-major dense generator, for small chains.
    pub fn dense_generator(&self) -> Vec<Vec<f64>> {
        let n = self.len();
        let mut q = vec![vec![0.0; n]; n];
        for tr in &self.transitions {
            q[tr.source][tr.target] += tr.rate;
        }
        for (i, row) in q.iter_mut().enumerate() {
            row[i] = -self.exit_rates[i];
        }
        q
    }

    /// One state per line, in index order.
    pub fn write_states<W: Write>(&self, w: &mut W) -> io::Result<()> {
        for s in &self.states {
            writeln!(w, "{s}")?;
        }
        Ok(())
    }

    /// Edge list: `source_tuple target_tuple rate kind` per line.
    pub fn write_edge_list<W: Write>(&self, w: &mut W) -> io::Result<()> {
        for tr in &self.transitions {
            writeln!(
                w,
                "{} {} {} {}",
                self.states[tr.source],
                self.states[tr.target],
                sci(tr.rate),
                tr.kind
            )?;
        }
        Ok(())
    }
}

trait WordModel: Sync {
    type State: Copy + Ord + Send + Sync;

    fn states(&self, cap: usize) -> Result<Vec<Self::State>>;
    fn events(&self, s: Self::State) -> Vec<StateTransition<Self::State>>;
    fn scrub(&self, s: Self::State) -> Scrubbed<Self::State>;
    fn good() -> Self::State;
    fn wrap(s: Self::State) -> ChainState;
}

struct SimplexModel {
    code: CodeParams,
    rates: FaultRates,
}

impl WordModel for SimplexModel {
    type State = SimplexState;

    fn states(&self, cap: usize) -> Result<Vec<SimplexState>> {
        simplex_states(&self.code, cap)
    }

    fn events(&self, s: SimplexState) -> Vec<StateTransition<SimplexState>> {
        simplex_transitions(s, &self.code, &self.rates)
    }

    fn scrub(&self, s: SimplexState) -> Scrubbed<SimplexState> {
        simplex_scrub_target(s, &self.code)
    }

    fn good() -> SimplexState {
        SimplexState::GOOD
    }

    fn wrap(s: SimplexState) -> ChainState {
        ChainState::Simplex(s)
    }
}

struct DuplexModel {
    code: CodeParams,
    rates: FaultRates,
    mode: RateMode,
    rule: DecodeRule,
}

impl WordModel for DuplexModel {
    type State = DuplexState;

    fn states(&self, cap: usize) -> Result<Vec<DuplexState>> {
        duplex_states(&self.code, self.rule, cap)
    }

    fn events(&self, d: DuplexState) -> Vec<StateTransition<DuplexState>> {
        duplex_event_transitions(d, &self.code, &self.rates, self.mode, self.rule)
    }

    fn scrub(&self, d: DuplexState) -> Scrubbed<DuplexState> {
        duplex_scrub_target(d, &self.code, self.rule)
    }

    fn good() -> DuplexState {
        DuplexState::GOOD
    }

    fn wrap(d: DuplexState) -> ChainState {
        ChainState::Duplex(d)
    }
}

fn assemble<M: WordModel>(
    model: &M,
    code: CodeParams,
    scrub_rate: f64,
    cap: usize,
) -> Result<Ctmc> {
    let states = model.states(cap)?;
    let fail_index = states.len();
    let lookup = |s: &M::State| {
        states
            .binary_search(s)
            .expect("transition target outside the enumerated space")
    };

    let rows: Vec<Vec<Transition>> = states
        .par_iter()
        .enumerate()
        .map(|(source, &s)| {
            let mut row: Vec<Transition> = model
                .events(s)
                .into_iter()
                .map(|st| Transition {
                    source,
                    target: match st.target {
                        Target::State(t) => lookup(&t),
                        Target::Fail => fail_index,
                    },
                    rate: st.rate,
                    kind: st.kind,
                })
                .collect();
            if scrub_rate > 0.0 {
                let target = match model.scrub(s) {
                    Scrubbed::State(t) => lookup(&t),
                    Scrubbed::Fail => fail_index,
                };
                if target != source {
                    row.push(Transition {
                        source,
                        target,
                        rate: scrub_rate,
                        kind: TransitionKind::Scrub,
                    });
                }
            }
            row
        })
        .collect();

    let mut row_start = Vec::with_capacity(fail_index + 2);
    let mut transitions = Vec::with_capacity(rows.iter().map(Vec::len).sum());
    let mut exit_rates = Vec::with_capacity(fail_index + 1);
    for row in rows {
        row_start.push(transitions.len());
        exit_rates.push(row.iter().map(|t| t.rate).sum());
        transitions.extend(row);
    }
    // Fail row: absorbing
    row_start.push(transitions.len());
    exit_rates.push(0.0);
    row_start.push(transitions.len());

    let initial_index = lookup(&M::good());
    let states = states
        .into_iter()
        .map(M::wrap)
        .chain(std::iter::once(ChainState::Fail))
        .collect();

    Ok(Ctmc {
        states,
        row_start,
        transitions,
        exit_rates,
        fail_index,
        initial_index,
        code,
    })
}

/// Builds the chain for `scenario` with the default state cap.
pub fn build_ctmc(scenario: &Scenario) -> Result<Ctmc> {
    build_ctmc_with_cap(scenario, DEFAULT_STATE_CAP)
}

/// Scrubbing is an exponential event at rate `1 / T_sc` from every state whose
/// scrub target differs from itself.
pub fn build_ctmc_with_cap(scenario: &Scenario, cap: usize) -> Result<Ctmc> {
    let code = *scenario.code();
    let rates = *scenario.rates();
    let scrub_rate = scenario.scrub().rate_per_hour();
    match scenario.arrangement() {
        Arrangement::Simplex => assemble(&SimplexModel { code, rates }, code, scrub_rate, cap),
        Arrangement::Duplex => assemble(
            &DuplexModel {
                code,
                rates,
                mode: scenario.rate_mode(),
                rule: scenario.decode_rule(),
            },
            code,
            scrub_rate,
            cap,
        ),
    }
}
