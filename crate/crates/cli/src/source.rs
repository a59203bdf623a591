//! Where graphs come from: edge-list files or generator specs such as
//! `lemma:n=1441,y=3,seed=7`.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use serde_json::{json, Value};
use strongid::generators::{self, LemmaParams, DEFAULT_MAX_RETRIES};
use strongid::{graph, Graph};

use crate::CliError;

pub fn load_graph(path: &Path) -> Result<Graph, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input("Io", format!("cannot read {}: {e}", path.display())))?;
    graph::parse_edge_list(&text)
        .map_err(|e| CliError::input("ParseError", format!("{}: {e}", path.display())))
}

#[derive(Clone, Debug, PartialEq)]
pub enum GeneratorSpec {
    Cycle { n: usize },
    Complete { n: usize },
    Path { n: usize },
    Petersen,
    Gnp { n: usize, p: f64, seed: u64 },
    Lemma { n: usize, y: usize, seed: u64, max_retries: usize },
    Chain { n: usize, w: usize, seed: u64, max_retries: usize, c_override: Option<usize> },
}

/// A generated graph plus whatever the generator wants to report.
pub struct Generated {
    pub graph: Graph,
    pub details: Value,
}

impl GeneratorSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Cycle { .. } => "cycle",
            Self::Complete { .. } => "complete",
            Self::Path { .. } => "path",
            Self::Petersen => "petersen",
            Self::Gnp { .. } => "gnp",
            Self::Lemma { .. } => "lemma",
            Self::Chain { .. } => "chain",
        }
    }

    pub fn generate(&self) -> Result<Generated, CliError> {
        let plain = |graph: Graph| Generated { graph, details: json!({}) };
        Ok(match *self {
            Self::Cycle { n } => plain(generators::cycle(n)?),
            Self::Complete { n } => plain(generators::complete(n)?),
            Self::Path { n } => plain(generators::path(n)?),
            Self::Petersen => plain(generators::petersen()),
            Self::Gnp { n, p, seed } => plain(generators::gnp(n, p, seed)?),
            Self::Lemma { n, y, seed, max_retries } => {
                let params = LemmaParams::new(n, y, max_retries)?;
                let (graph, verdict) = generators::generate_lemma_graph(&params, seed)?;
                Generated { graph, details: json!({ "params": params, "verdict": verdict }) }
            }
            Self::Chain { n, w, seed, max_retries, c_override } => {
                let build = generators::build_strong_graph(n, w, seed, max_retries, c_override)?;
                Generated {
                    details: json!({
                        "plan": build.plan,
                        "block_verdicts": build.verdicts,
                        "strong_index": build.strong_index,
                        "max_degree": build.max_degree,
                        "connected": true,
                    }),
                    graph: build.graph,
                }
            }
        })
    }
}

impl FromStr for GeneratorSpec {
    type Err = CliError;

    /// `kind[:key=value,...]`. Randomized kinds require `seed`.
    fn from_str(s: &str) -> Result<Self, CliError> {
        let bad = |m: String| CliError::input("InvalidGeneratorSpec", format!("\"{s}\": {m}"));
        let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut kv = BTreeMap::new();
        for item in rest.split(',').filter(|i| !i.trim().is_empty()) {
            let (k, v) = item.split_once('=').ok_or_else(|| bad(format!("expected key=value, got \"{item}\"")))?;
            kv.insert(k.trim().to_string(), v.trim().to_string());
        }
        let mut take = |key: &str| kv.remove(key);
        fn num<T: FromStr>(key: &str, v: Option<String>) -> Result<Option<T>, String> {
            v.map(|v| v.parse().map_err(|_| format!("invalid value for {key}: \"{v}\"")))
                .transpose()
        }
        let need = |key: &str, v: Option<usize>| v.ok_or_else(|| format!("missing {key}"));

        let spec = (|| -> Result<Self, String> {
            let n = num::<usize>("n", take("n"))?;
            let seed = num::<u64>("seed", take("seed"))?;
            let retries = num::<usize>("max_retries", take("max_retries"))?.unwrap_or(DEFAULT_MAX_RETRIES);
            let spec = match kind {
                "cycle" => Self::Cycle { n: need("n", n)? },
                "complete" => Self::Complete { n: need("n", n)? },
                "path" => Self::Path { n: need("n", n)? },
                "petersen" => Self::Petersen,
                "gnp" => Self::Gnp {
                    n: need("n", n)?,
                    p: num::<f64>("p", take("p"))?.ok_or("missing p")?,
                    seed: seed.ok_or("missing seed")?,
                },
                "lemma" => Self::Lemma {
                    n: need("n", n)?,
                    y: need("y", num("y", take("y"))?)?,
                    seed: seed.ok_or("missing seed")?,
                    max_retries: retries,
                },
                "chain" => Self::Chain {
                    n: need("n", n)?,
                    w: need("w", num("w", take("w"))?)?,
                    seed: seed.ok_or("missing seed")?,
                    max_retries: retries,
                    c_override: num("c_override", take("c_override"))?,
                },
                other => return Err(format!("unknown generator \"{other}\"")),
            };
            Ok(spec)
        })()
        .map_err(bad)?;
        if let Some(k) = kv.keys().next() {
            return Err(bad(format!("unexpected key \"{k}\"")));
        }
        Ok(spec)
    }
}
