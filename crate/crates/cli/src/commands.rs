use std::path::{Path, PathBuf};

use serde_json::json;
use strongid::code::{self, CodeParams};
use strongid::{analysis, graph, Vertex};

use crate::experiment;
use crate::source::{load_graph, GeneratorSpec};
use crate::{CliError, Outcome, SCHEMA};

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::input("Io", format!("cannot write {}: {e}", path.display())))
}

pub fn gen(spec: &GeneratorSpec, out: &Path) -> Result<Outcome, CliError> {
    let generated = spec.generate()?;
    let g = &generated.graph;
    write_file(out, &graph::serialize_edge_list(g))?;
    let mut report = json!({
        "schema": SCHEMA,
        "kind": spec.kind(),
        "n": g.n(),
        "m": g.edge_count(),
        "path": out.display().to_string(),
    });
    if let (Some(map), Some(extra)) = (report.as_object_mut(), generated.details.as_object()) {
        map.extend(extra.clone());
    }
    Ok(Outcome::json(&report, 0))
}

/// Vertex ids separated by commas and/or whitespace; brackets and `#`
/// comments are ignored.
pub fn parse_code(text: &str) -> Result<Vec<Vertex>, CliError> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(|l| l.split(|c: char| c == ',' || c == '[' || c == ']' || c.is_whitespace()))
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| CliError::input("InvalidCode", format!("not a vertex id: \"{t}\""))))
        .collect()
}

pub enum CodeArg {
    Inline(String),
    File(PathBuf),
}

pub fn verify(graph_path: &Path, code_arg: &CodeArg, r: usize) -> Result<Outcome, CliError> {
    let g = load_graph(graph_path)?;
    let ids = match code_arg {
        CodeArg::Inline(s) => parse_code(s)?,
        CodeArg::File(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::input("Io", format!("cannot read {}: {e}", p.display())))?;
            parse_code(&text)?
        }
    };
    let outcome = code::is_identification_code(&g, &ids, r)?;
    let mut sorted = ids;
    sorted.sort_unstable();
    sorted.dedup();
    let report = json!({
        "schema": SCHEMA,
        "n": g.n(),
        "r": r,
        "code_size": sorted.len(),
        "valid": outcome.valid,
        "achieved_min": outcome.achieved_min,
        "witness": outcome.witness,
    });
    Ok(Outcome::json(&report, if outcome.valid { 0 } else { 1 }))
}

pub fn construct(graph_path: &Path, r: usize, d: usize, q: Option<f64>, seed: u64) -> Result<Outcome, CliError> {
    let g = load_graph(graph_path)?;
    let params = CodeParams::new(r, d)?;
    let res = code::randomized_code(&g, params, q, seed)?;
    let check = code::is_identification_code(&g, &res.code, r)?;
    let delta_max = g.degree_stats().delta_max;
    let report = json!({
        "schema": SCHEMA,
        "n": g.n(),
        "delta_max": delta_max,
        "r": r,
        "d": d,
        "q_used": res.q_used,
        "seed": seed,
        "sizes": {
            "sampled": res.sampled.len(),
            "bad": res.bad.len(),
            "bad_closure": res.bad_closure.len(),
            "code": res.code.len(),
        },
        "gamma_bound": g.n() as f64 * analysis::gamma(res.q_used, delta_max, r, d),
        "verified": check.valid,
        "achieved_min": check.achieved_min,
        "code": res.code,
        "sampled": res.sampled,
        "bad": res.bad,
        "bad_closure": res.bad_closure,
    });
    Ok(Outcome::json(&report, 0))
}

pub fn exact(graph_path: &Path, r: usize, cap: Option<usize>) -> Result<Outcome, CliError> {
    let g = load_graph(graph_path)?;
    let found = code::exact_min_code(&g, r, cap)?;
    let lower = g.n().div_ceil(g.degree_stats().delta_max + 1);
    let (theta, ids) = match found {
        Some((size, ids)) => (Some(size), Some(ids)),
        None => (None, None),
    };
    let report = json!({
        "schema": SCHEMA,
        "n": g.n(),
        "r": r,
        "lower_bound": lower,
        "theta": theta,
        "code": ids,
    });
    Ok(Outcome::json(&report, 0))
}

/// Reads `STRONGID_EXACT_CAP`, if set.
pub fn exact_cap_from_env() -> Result<Option<usize>, CliError> {
    match std::env::var("STRONGID_EXACT_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::input("InvalidEnv", format!("STRONGID_EXACT_CAP is not an integer: \"{v}\""))),
        Err(_) => Ok(None),
    }
}

pub fn bounds(n: usize, delta_max: usize, r: usize, d: usize) -> Result<Outcome, CliError> {
    let rep = analysis::theta_bounds(n, delta_max, r, d)?;
    let mut report = serde_json::Map::new();
    report.insert("schema".into(), SCHEMA.into());
    if let serde_json::Value::Object(fields) = serde_json::to_value(&rep).expect("serializable") {
        report.extend(fields);
    }
    report.insert("q_star_gap".into(), analysis::q_star_gap(delta_max, r, d).into());
    Ok(Outcome::json(&report, 0))
}

pub enum GraphSource {
    File(PathBuf),
    Generator(GeneratorSpec),
}

pub struct ExperimentSpec {
    pub source: GraphSource,
    pub r: usize,
    pub d: usize,
    pub q: Option<f64>,
    pub trials: usize,
    pub master_seed: u64,
    pub csv: PathBuf,
    pub summary: Option<PathBuf>,
}

pub fn experiment(spec: &ExperimentSpec) -> Result<Outcome, CliError> {
    let g = match &spec.source {
        GraphSource::File(p) => load_graph(p)?,
        GraphSource::Generator(gs) => gs.generate()?.graph,
    };
    let params = CodeParams::new(spec.r, spec.d)?;
    let result = experiment::run(&g, params, spec.q, spec.trials, spec.master_seed)?;
    write_file(&spec.csv, &result.csv())?;
    let out = Outcome::json(&result.summary, 0);
    if let Some(path) = &spec.summary {
        write_file(path, &out.stdout)?;
    }
    Ok(out)
}

/// Runs `f` on a dedicated pool when a thread count is given.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    match threads {
        None => Ok(f()),
        Some(0) => Err(CliError::input("InvalidThreads", "thread count must be at least 1")),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| CliError::input("InvalidThreads", e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}
