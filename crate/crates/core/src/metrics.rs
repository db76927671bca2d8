//! Decoder latency and storage overhead figures.

use crate::model::{Arrangement, CodeParams};

/// Decoder latency model `T_d = 3n + 10(n - k)` clock cycles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatencyModel {
    pub cycles: u64,
}

impl LatencyModel {
    pub fn for_code(code: &CodeParams) -> Self {
        LatencyModel {
            cycles: latency_cycles(code.n(), code.k()),
        }
    }
}

/// `3n + 10(n - k)` on raw parameters; `k = n` is allowed and gives `3n`.
pub fn latency_cycles(n: u32, k: u32) -> u64 {
    assert!(k <= n, "k must not exceed n");
    3 * u64::from(n) + 10 * u64::from(n - k)
}

pub fn decode_latency(code: &CodeParams) -> u64 {
    LatencyModel::for_code(code).cycles
}

/// Redundant symbols stored per data symbol.
pub fn storage_overhead(arrangement: Arrangement, code: &CodeParams) -> f64 {
    let (n, k) = (f64::from(code.n()), f64::from(code.k()));
    match arrangement {
        Arrangement::Simplex => (n - k) / k,
        Arrangement::Duplex => (2.0 * n - k) / k,
    }
}

/// Shown next to the latency figures; no numeric area model is provided.
pub const AREA_NOTE: &str = "decoder area grows roughly linearly with m and n-k: \
two RS(18,16) decoders are expected to be smaller than one RS(36,16) decoder";
