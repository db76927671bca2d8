//! Reference implementations kept apart from the library code paths they
//! check: exhaustive tuple enumeration, a per-symbol event-outcome generator
//! for the duplex chain, and a dense matrix exponential.

#![allow(dead_code)]

use std::collections::BTreeMap;

use rsmem_core::chain::{ChainState, Ctmc};
use rsmem_core::{CodeParams, DecodeRule, DuplexState, FaultRates};

/// Pinned by the exhaustive scan below (and cross-checked by an independent
/// script when the fixtures were created).
pub const DUPLEX_RS64_ANY_WORD: usize = 207;
pub const DUPLEX_RS1816_ANY_WORD: usize = 1911;
pub const DUPLEX_RS64_EACH_WORD: usize = 47;
pub const DUPLEX_RS1816_EACH_WORD: usize = 143;

fn word_cost_ok(n_minus_k: u32, x: u32, b: u32, ec: u32, e: u32) -> bool {
    x + 2 * b + 2 * ec + 2 * e <= n_minus_k
}

/// Every 6-tuple with component sum <= n, filtered by the decode rule.
pub fn brute_force_duplex_count(n: u32, k: u32, rule: DecodeRule) -> usize {
    let r = n - k;
    let mut count = 0;
    for x in 0..=n {
        for y in 0..=n {
            for b in 0..=n {
                for e1 in 0..=n {
                    for e2 in 0..=n {
                        for ec in 0..=n {
                            if x + y + b + e1 + e2 + ec > n {
                                continue;
                            }
                            let w1 = word_cost_ok(r, x, b, ec, e1);
                            let w2 = word_cost_ok(r, x, b, ec, e2);
                            let alive = match rule {
                                DecodeRule::EachWord => w1 && w2,
                                DecodeRule::AnyWord => w1 || w2,
                            };
                            if alive {
                                count += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    count
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Sym {
    C,
    R,
    E,
}

fn realize(d: DuplexState, n: u32) -> Vec<(Sym, Sym)> {
    let mut pairs = Vec::new();
    let groups = [
        (d.x, (Sym::E, Sym::E)),
        (d.y, (Sym::E, Sym::C)),
        (d.b, (Sym::E, Sym::R)),
        (d.e1, (Sym::R, Sym::C)),
        (d.e2, (Sym::C, Sym::R)),
        (d.ec, (Sym::R, Sym::R)),
    ];
    for (count, pair) in groups {
        pairs.extend(std::iter::repeat_n(pair, count as usize));
    }
    pairs.resize(n as usize, (Sym::C, Sym::C));
    pairs
}

/// Returns `None` when the physical words can no longer be read.
fn classify(pairs: &[(Sym, Sym)], code: &CodeParams, rule: DecodeRule) -> Option<DuplexState> {
    let mut t = [0u32; 6];
    let (mut cost1, mut cost2) = (0u32, 0u32);
    for &(a, b) in pairs {
        let slot = match (a, b) {
            (Sym::E, Sym::E) => Some(0),
            (Sym::E, Sym::C) | (Sym::C, Sym::E) => Some(1),
            (Sym::E, Sym::R) | (Sym::R, Sym::E) => Some(2),
            (Sym::R, Sym::C) => Some(3),
            (Sym::C, Sym::R) => Some(4),
            (Sym::R, Sym::R) => Some(5),
            (Sym::C, Sym::C) => None,
        };
        if let Some(i) = slot {
            t[i] += 1;
        }
        // what each decoder sees after arbiter masking
        let seen = |own: Sym, other: Sym| match (own, other) {
            (Sym::E, Sym::E) => 1,
            (Sym::R, _) | (Sym::E, Sym::R) => 2,
            _ => 0,
        };
        cost1 += seen(a, b);
        cost2 += seen(b, a);
    }
    let r = code.n() - code.k();
    let ok = match rule {
        DecodeRule::EachWord => cost1 <= r && cost2 <= r,
        DecodeRule::AnyWord => cost1 <= r || cost2 <= r,
    };
    ok.then(|| DuplexState::from_array(t))
}

/// Outgoing rates of `d` obtained by hitting every physical symbol of both
/// words with each fault type. Self-loops are dropped; `None` is Fail.
pub fn physical_outcomes(
    d: DuplexState,
    code: &CodeParams,
    rates: &FaultRates,
    rule: DecodeRule,
) -> BTreeMap<Option<DuplexState>, f64> {
    let pairs = realize(d, code.n());
    let seu = f64::from(code.m()) * rates.seu_per_bit_hour();
    let erasure = rates.erasure_per_symbol_hour();
    let mut out: BTreeMap<Option<DuplexState>, f64> = BTreeMap::new();
    for pos in 0..pairs.len() {
        for side in 0..2 {
            for (is_erasure, rate) in [(true, erasure), (false, seu)] {
                if rate == 0.0 {
                    continue;
                }
                let mut next = pairs.clone();
                let sym = if side == 0 {
                    &mut next[pos].0
                } else {
                    &mut next[pos].1
                };
                if is_erasure {
                    *sym = Sym::E;
                } else if *sym == Sym::C {
                    *sym = Sym::R;
                }
                let target = classify(&next, code, rule);
                if target == Some(d) {
                    continue;
                }
                *out.entry(target).or_insert(0.0) += rate;
            }
        }
    }
    out
}

/// Event transitions of the chain row for `d`, aggregated by target.
pub fn chain_outcomes(chain: &Ctmc, d: DuplexState) -> BTreeMap<Option<DuplexState>, f64> {
    let i = chain.index_of(&ChainState::Duplex(d)).expect("state in chain");
    let mut out = BTreeMap::new();
    for tr in chain.outgoing(i) {
        let key = match chain.states()[tr.target] {
            ChainState::Duplex(t) => Some(t),
            ChainState::Fail => None,
            ChainState::Simplex(_) => unreachable!(),
        };
        *out.entry(key).or_insert(0.0) += tr.rate;
    }
    out
}

pub type Dense = Vec<Vec<f64>>;

fn matmul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let mut c = vec![vec![0.0; n]; n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..n {
                c[i][j] += aik * b[k][j];
            }
        }
    }
    c
}

fn inf_norm(a: &Dense) -> f64 {
    a.iter()
        .map(|r| r.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// `exp(Q t)` by scaling to norm <= 1/2, a Taylor series to 1e-18, and
/// repeated squaring.
pub fn expm(q: &Dense, t: f64) -> Dense {
    let n = q.len();
    let mut a: Dense = q
        .iter()
        .map(|r| r.iter().map(|v| v * t).collect())
        .collect();
    let norm = inf_norm(&a);
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let scale = 2f64.powi(-squarings);
    for r in a.iter_mut() {
        for v in r.iter_mut() {
            *v *= scale;
        }
    }
    let mut result: Dense = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let mut term = result.clone();
    for j in 1..60 {
        term = matmul(&term, &a);
        for r in term.iter_mut() {
            for v in r.iter_mut() {
                *v /= j as f64;
            }
        }
        for (rr, tr) in result.iter_mut().zip(&term) {
            for (x, y) in rr.iter_mut().zip(tr) {
                *x += y;
            }
        }
        if inf_norm(&term) < 1e-18 {
            break;
        }
    }
    for _ in 0..squarings {
        result = matmul(&result, &result);
    }
    result
}

/// Row vector times matrix.
pub fn vecmat(v: &[f64], m: &Dense) -> Vec<f64> {
    let mut out = vec![0.0; v.len()];
    for (i, &vi) in v.iter().enumerate() {
        if vi == 0.0 {
            continue;
        }
        for (o, &mij) in out.iter_mut().zip(&m[i]) {
            *o += vi * mij;
        }
    }
    out
}

/// Distributions at `step, 2 step, ..., points * step` from the chain's good
/// state using one dense exponential.
pub fn dense_path(chain: &Ctmc, step: f64, points: usize) -> Vec<Vec<f64>> {
    let e = expm(&chain.dense_generator(), step);
    let mut v = vec![0.0; chain.len()];
    v[chain.initial_index()] = 1.0;
    (0..points)
        .map(|_| {
            v = vecmat(&v, &e);
            v.clone()
        })
        .collect()
}
