//! Command bodies. Each returns the full output so nothing is written on error.

use std::fmt::Write as _;

use rayon::prelude::*;
use rsmem_core::oracle::{estimate, McConfig, ScrubDiscipline};
use rsmem_core::text::sci;
use rsmem_core::{
    ber_curve, build_ctmc, decode_latency, storage_overhead, validate_code, Arrangement,
};

use crate::error::CliError;
use crate::scenario::{ScenarioFile, SweepEntry};

fn sweep_header(file: &ScenarioFile, base: &str) -> String {
    let mut h = base.to_string();
    if file.sweeps_lambda {
        h.push_str(",lambda_bit_per_day");
    }
    if file.sweeps_scrub {
        h.push_str(",scrub_period_hours");
    }
    h.push('\n');
    h
}

fn sweep_suffix(e: &SweepEntry) -> String {
    let mut s = String::new();
    if let Some(l) = e.lambda {
        let _ = write!(s, ",{}", sci(l));
    }
    if let Some(p) = e.scrub_period {
        let _ = write!(s, ",{}", sci(p));
    }
    s
}

pub fn analyze(file: &ScenarioFile, tol: f64) -> Result<String, CliError> {
    let blocks = file
        .entries
        .par_iter()
        .map(|e| {
            let series = ber_curve(&e.scenario, tol)?;
            let suffix = sweep_suffix(e);
            let mut out = String::new();
            for row in &series.rows {
                let _ = writeln!(
                    out,
                    "{},{},{}{suffix}",
                    sci(row.time_hours),
                    sci(row.p_fail),
                    sci(row.ber)
                );
            }
            Ok(out)
        })
        .collect::<Result<Vec<String>, CliError>>()?;
    Ok(sweep_header(file, "time_hours,p_fail,ber") + &blocks.concat())
}

pub fn mc(
    file: &ScenarioFile,
    trials: u64,
    seed: u64,
    discipline: ScrubDiscipline,
) -> Result<String, CliError> {
    let mut out = sweep_header(file, "p_fail_hat,ci95,ber_hat,trials");
    for e in &file.entries {
        let cfg = McConfig::new(e.scenario.clone(), trials, seed, discipline)?;
        let est = estimate(&cfg);
        let _ = writeln!(
            out,
            "{},{},{},{}{}",
            sci(est.p_fail_hat),
            sci(est.ci_halfwidth_95),
            sci(est.ber_hat),
            est.trials,
            sweep_suffix(e)
        );
    }
    Ok(out)
}

pub fn states(file: &ScenarioFile) -> Result<String, CliError> {
    use std::io::Write;
    let mut buf = Vec::new();
    for (i, e) in file.entries.iter().enumerate() {
        let chain = build_ctmc(&e.scenario)?;
        if file.entries.len() > 1 {
            writeln!(buf, "# entry {i}{}", sweep_suffix(e))?;
        }
        writeln!(buf, "# states {}", chain.len())?;
        chain.write_states(&mut buf)?;
        writeln!(buf, "# transitions {}", chain.transitions().len())?;
        chain.write_edge_list(&mut buf)?;
    }
    Ok(String::from_utf8(buf).expect("chain dump is ASCII"))
}

pub fn metrics(n: u32, k: u32, m: u32, arrangement: Arrangement) -> Result<String, CliError> {
    let code = validate_code(n, k, m)?;
    Ok(format!(
        "t_d_cycles,overhead\n{},{}\n",
        decode_latency(&code),
        storage_overhead(arrangement, &code)
    ))
}
