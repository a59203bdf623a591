//! Monte-Carlo campaigns of the randomized construction on one graph.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use strongid::code::{self, CodeParams};
use strongid::rng::{derive_seed, tag};
use strongid::{analysis, BitSet, Graph};

use crate::CliError;

pub const CSV_HEADER: &str = "trial_index,seed,n,delta_max,r,d,q_used,code_size,n_bad,valid,gamma_bound";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialRecord {
    pub trial_index: usize,
    pub derived_seed: u64,
    pub n: usize,
    pub delta_max: usize,
    pub r: usize,
    pub d: usize,
    pub q_used: f64,
    pub code_size: usize,
    pub n_bad: usize,
    pub valid: bool,
    /// n Γ(q_used)
    pub gamma_bound: f64,
}

impl TrialRecord {
    fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.trial_index,
            self.derived_seed,
            self.n,
            self.delta_max,
            self.r,
            self.d,
            self.q_used,
            self.code_size,
            self.n_bad,
            self.valid,
            self.gamma_bound
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub schema: &'static str,
    pub n: usize,
    pub delta_max: usize,
    pub strong_index: usize,
    pub r: usize,
    pub d: usize,
    pub q_used: f64,
    pub trials: usize,
    pub master_seed: u64,
    pub mean_code_size: f64,
    /// Sample standard deviation; `null` for a single trial.
    pub std_code_size: Option<f64>,
    pub standard_error: f64,
    pub gamma_bound: f64,
    /// mean <= n Γ(q_used) + 3 standard errors
    pub bound_respected: bool,
    pub all_valid: bool,
}

pub struct ExperimentResult {
    pub records: Vec<TrialRecord>,
    pub summary: Summary,
}

impl ExperimentResult {
    pub fn csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for rec in &self.records {
            let _ = writeln!(out, "{}", rec.csv_row());
        }
        out
    }
}

/// Runs `trials` independent constructions with seeds
/// `derive_seed(master_seed, TRIAL, i)`. The strong index is checked once up
/// front; records come back in trial order whatever the thread count.
pub fn run(
    g: &Graph,
    params: CodeParams,
    q: Option<f64>,
    trials: usize,
    master_seed: u64,
) -> Result<ExperimentResult, CliError> {
    if trials == 0 {
        return Err(CliError::input("InvalidTrials", "trials must be at least 1"));
    }
    let params = CodeParams::new(params.r, params.d)?;
    if let Some(q) = q {
        if !(0.0..=1.0).contains(&q) {
            return Err(strongid::Error::InvalidProbability(q).into());
        }
    }
    let strong_index = code::strong_index(g)?;
    if strong_index < params.r {
        return Err(strongid::Error::NotRStrong { achieved: strong_index, required: params.r }.into());
    }
    let n = g.n();
    let delta_max = g.degree_stats().delta_max;

    let records = (0..trials)
        .into_par_iter()
        .map(|i| {
            let seed = derive_seed(master_seed, tag::TRIAL, i as u64);
            let res = code::randomized_code_unchecked(g, params, q, seed)?;
            let outcome = code::verify_set(g, &BitSet::from_ids(n, res.code.iter().copied()), params.r)?;
            Ok(TrialRecord {
                trial_index: i,
                derived_seed: seed,
                n,
                delta_max,
                r: params.r,
                d: params.d,
                q_used: res.q_used,
                code_size: res.code.len(),
                n_bad: res.bad.len(),
                valid: outcome.valid,
                gamma_bound: n as f64 * analysis::gamma(res.q_used, delta_max, params.r, params.d),
            })
        })
        .collect::<Result<Vec<_>, strongid::Error>>()?;

    let sizes: Vec<f64> = records.iter().map(|r| r.code_size as f64).collect();
    let k = sizes.len() as f64;
    let mean = sizes.iter().sum::<f64>() / k;
    let std = (trials > 1).then(|| (sizes.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (k - 1.0)).sqrt());
    let standard_error = std.map_or(0.0, |s| s / k.sqrt());
    let q_used = records[0].q_used;
    let gamma_bound = records[0].gamma_bound;

    let summary = Summary {
        schema: crate::SCHEMA,
        n,
        delta_max,
        strong_index,
        r: params.r,
        d: params.d,
        q_used,
        trials,
        master_seed,
        mean_code_size: mean,
        std_code_size: std,
        standard_error,
        gamma_bound,
        bound_respected: mean <= gamma_bound + 3.0 * standard_error,
        all_valid: records.iter().all(|r| r.valid),
    };
    Ok(ExperimentResult { records, summary })
}
