//! Graph constructions: small fixture families, the seeded G(n,p) sampler,
//! generate-and-verify for random strong-neighbourhood graphs, and the
//! block-chaining builder that scales them to arbitrary `n`.

use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::BitSet;
use crate::code::{self, Witness};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::rng::{derive_seed, tag, Rng};

pub const DEFAULT_MAX_RETRIES: usize = 100;

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidSize(format!("cycle needs n >= 3, got {n}")));
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidSize("complete graph needs n >= 1".into()));
    }
    Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
}

pub fn path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidSize("path needs n >= 1".into()));
    }
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
}

/// Outer 5-cycle 0..5, inner pentagram 5..10, spokes `i -- i+5`.
pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    Graph::from_edges(10, outer.chain(inner).chain(spokes)).expect("valid fixture")
}

/// G(n, p): pairs `(i, j)`, `i < j`, visited in lexicographic order, each
/// kept by one Bernoulli(p) draw.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    let mut rng = Rng::new(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.bernoulli(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// `p = max(16 ln n, 4y) / (n - 1)`.
pub fn lemma_p(n: usize, y: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidSize(format!("need n >= 2, got {n}")));
    }
    let p = (16.0 * (n as f64).ln()).max(4.0 * y as f64) / (n as f64 - 1.0);
    if p > 1.0 {
        return Err(Error::InfeasibleP { n, y, p });
    }
    Ok(p)
}

/// `160 y^2 + 1`
pub fn lemma_min_n(y: usize) -> usize {
    160 * y * y + 1
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LemmaParams {
    pub n: usize,
    pub y: usize,
    pub p: f64,
    pub max_retries: usize,
    /// `2(n-1)p = max(32 ln n, 8y)`
    pub degree_cap: f64,
    /// `(n-1)p/4`
    pub common_cap: f64,
    /// `y - 1`
    pub strong_target: usize,
}

impl LemmaParams {
    /// Parameters at `p = lemma_p(n, y)`, requiring `n >= 160 y^2 + 1`.
    pub fn new(n: usize, y: usize, max_retries: usize) -> Result<Self> {
        if y < 3 {
            return Err(Error::InvalidSize(format!("strength parameter y must be >= 3, got {y}")));
        }
        let p = lemma_p(n, y)?;
        if n < lemma_min_n(y) {
            return Err(Error::InvalidSize(format!(
                "n = {n} is below 160y^2 + 1 = {} for y = {y}",
                lemma_min_n(y)
            )));
        }
        Self::with_probability(n, y, p, max_retries)
    }

    /// Thresholds at an arbitrary `p`, without the size condition. Useful for
    /// checking small or hand-built graphs against the same four properties.
    pub fn with_probability(n: usize, y: usize, p: f64, max_retries: usize) -> Result<Self> {
        if y < 2 {
            return Err(Error::InvalidSize(format!("strength parameter y must be >= 2, got {y}")));
        }
        if n < 2 {
            return Err(Error::TooSmall(n));
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidProbability(p));
        }
        let np = (n as f64 - 1.0) * p;
        Ok(Self {
            n,
            y,
            p,
            max_retries,
            degree_cap: 2.0 * np,
            common_cap: np / 4.0,
            strong_target: y - 1,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeWitness {
    pub vertex: Vertex,
    pub degree: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CommonWitness {
    pub i: Vertex,
    pub j: Vertex,
    pub count: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LemmaWitnesses {
    /// First vertex whose degree exceeds the cap.
    pub degree: Option<DegreeWitness>,
    /// First pair `i < j` whose common-neighbour count exceeds the cap.
    pub common: Option<CommonWitness>,
    /// First ordered pair attaining the strong index, when it is too small.
    pub strong: Option<Witness>,
    /// Lowest vertex not reachable from vertex 0.
    pub unreached: Option<Vertex>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LemmaVerdict {
    pub degree_ok: bool,
    pub common_ok: bool,
    pub strong_ok: bool,
    pub connected_ok: bool,
    pub witnesses: LemmaWitnesses,
    pub max_degree: usize,
    pub max_common: usize,
    pub strong_index: usize,
    pub attempts_used: usize,
}

impl LemmaVerdict {
    pub fn passed(&self) -> bool {
        self.degree_ok && self.common_ok && self.strong_ok && self.connected_ok
    }
}

/// Checks the four properties deterministically: max degree `<= 2(n-1)p`,
/// every `T_ij <= (n-1)p/4`, strong index `>= y - 1`, connectivity.
/// `attempts_used` is left at 0.
pub fn verify_lemma_graph(g: &Graph, params: &LemmaParams) -> Result<LemmaVerdict> {
    let n = g.n();
    if n != params.n {
        return Err(Error::InvalidSize(format!("graph has {n} vertices, parameters say {}", params.n)));
    }
    let mut witnesses = LemmaWitnesses::default();

    let stats = g.degree_stats();
    let degree_ok = stats.delta_max as f64 <= params.degree_cap;
    if !degree_ok {
        witnesses.degree = (0..n)
            .find(|&v| g.degree(v) as f64 > params.degree_cap)
            .map(|vertex| DegreeWitness { vertex, degree: g.degree(vertex) });
    }

    // T_ij is zero beyond distance two
    let per_vertex: Vec<(usize, Option<CommonWitness>)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut max = 0;
            let mut first = None;
            for j in g.ball2(i).iter().filter(|&j| j > i) {
                let count = g.common_neighbor_count(i, j);
                max = max.max(count);
                if first.is_none() && count as f64 > params.common_cap {
                    first = Some(CommonWitness { i, j, count });
                }
            }
            (max, first)
        })
        .collect();
    let max_common = per_vertex.iter().map(|(m, _)| *m).max().unwrap_or(0);
    witnesses.common = per_vertex.iter().find_map(|(_, w)| *w);
    let common_ok = witnesses.common.is_none();

    let strong = code::verify_set(g, &BitSet::full(n), params.strong_target)?;
    witnesses.strong = strong.witness;

    witnesses.unreached = first_unreached(g);
    let connected_ok = witnesses.unreached.is_none();

    Ok(LemmaVerdict {
        degree_ok,
        common_ok,
        strong_ok: strong.valid,
        connected_ok,
        witnesses,
        max_degree: stats.delta_max,
        max_common,
        strong_index: strong.achieved_min,
        attempts_used: 0,
    })
}

fn first_unreached(g: &Graph) -> Option<Vertex> {
    if g.is_connected() {
        return None;
    }
    let mut seen = BitSet::new(g.n());
    let mut stack = vec![0];
    seen.insert(0);
    while let Some(v) = stack.pop() {
        for &u in g.neighbors(v) {
            if !seen.contains(u) {
                seen.insert(u);
                stack.push(u);
            }
        }
    }
    (0..g.n()).find(|&v| !seen.contains(v))
}

/// Draws `gnp(n, p, derive_seed(seed, LEMMA_ATTEMPT, attempt))` until one
/// passes [`verify_lemma_graph`] or `max_retries` attempts are spent.
pub fn generate_lemma_graph(params: &LemmaParams, seed: u64) -> Result<(Graph, LemmaVerdict)> {
    // recompute p so infeasible parameters fail the same way as lemma_p
    lemma_p(params.n, params.y)?;
    let mut last = None;
    for attempt in 0..params.max_retries {
        let g = gnp(params.n, params.p, derive_seed(seed, tag::LEMMA_ATTEMPT, attempt as u64))?;
        let mut verdict = verify_lemma_graph(&g, params)?;
        verdict.attempts_used = attempt + 1;
        if verdict.passed() {
            return Ok((g, verdict));
        }
        last = Some(verdict);
    }
    let verdict = last.unwrap_or(LemmaVerdict {
        degree_ok: false,
        common_ok: false,
        strong_ok: false,
        connected_ok: false,
        witnesses: LemmaWitnesses::default(),
        max_degree: 0,
        max_common: 0,
        strong_index: 0,
        attempts_used: 0,
    });
    Err(Error::GenerationFailed { block: None, verdict: Box::new(verdict) })
}

/// `M(w) = max(C, 160 (w+1)^2 + 1)` with `C = c_override.unwrap_or(1)`.
pub fn m_of_w(w: usize, c_override: Option<usize>) -> usize {
    c_override.unwrap_or(1).max(lemma_min_n(w + 1))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainPlan {
    pub w: usize,
    /// Block size M(w).
    pub m: usize,
    pub block_sizes: Vec<usize>,
    /// One edge per adjacent block pair, in global ids: local vertex 1 of
    /// block i joined to local vertex 0 of block i+1.
    pub link_pairs: Vec<(Vertex, Vertex)>,
    /// Δ₀, the largest per-block degree cap `2(n_i - 1) p_i`.
    pub delta0: f64,
}

impl ChainPlan {
    /// Splits `n` into `floor(n / M)` blocks, all of size M except the last,
    /// which takes the remainder and so has size in `[M, 2M)`.
    pub fn new(n: usize, w: usize, c_override: Option<usize>) -> Result<Self> {
        if w < 2 {
            return Err(Error::InvalidSize(format!("target strength w must be >= 2, got {w}")));
        }
        let m = m_of_w(w, c_override);
        if n < m {
            return Err(Error::InvalidSize(format!("n = {n} is below M(w) = {m}")));
        }
        let t = n / m;
        let mut block_sizes = vec![m; t];
        block_sizes[t - 1] = n - (t - 1) * m;
        let link_pairs = (0..t - 1).map(|i| (i * m + 1, (i + 1) * m)).collect();
        Ok(Self { w, m, block_sizes, link_pairs, delta0: 0.0 })
    }

    pub fn offsets(&self) -> Vec<usize> {
        self.block_sizes
            .iter()
            .scan(0, |acc, &s| {
                let o = *acc;
                *acc += s;
                Some(o)
            })
            .collect()
    }

    /// Block index owning global vertex `v`.
    pub fn block_of(&self, v: Vertex) -> usize {
        let mut acc = 0;
        for (i, &s) in self.block_sizes.iter().enumerate() {
            acc += s;
            if v < acc {
                return i;
            }
        }
        self.block_sizes.len()
    }
}

#[derive(Clone, Debug)]
pub struct ChainBuild {
    pub graph: Graph,
    pub plan: ChainPlan,
    pub verdicts: Vec<LemmaVerdict>,
    /// Strong index of the assembled graph.
    pub strong_index: usize,
    pub max_degree: usize,
}

/// Fills each block with a verified random graph at `y = w + 1` (block seed
/// `derive_seed(seed, CHAIN_BLOCK, i)`), chains consecutive blocks by one
/// edge each, then re-verifies connectivity, strong index `>= w` and max
/// degree `<= Δ₀ + 1` on the assembled graph.
pub fn build_strong_graph(
    n: usize,
    w: usize,
    seed: u64,
    max_retries: usize,
    c_override: Option<usize>,
) -> Result<ChainBuild> {
    let mut plan = ChainPlan::new(n, w, c_override)?;

    let blocks: Vec<(Graph, LemmaVerdict, f64)> = plan
        .block_sizes
        .par_iter()
        .enumerate()
        .map(|(i, &size)| {
            let params = LemmaParams::new(size, w + 1, max_retries)?;
            let (g, v) = generate_lemma_graph(&params, derive_seed(seed, tag::CHAIN_BLOCK, i as u64))
                .map_err(|e| match e {
                    Error::GenerationFailed { verdict, .. } => Error::GenerationFailed { block: Some(i), verdict },
                    other => other,
                })?;
            Ok((g, v, params.degree_cap))
        })
        .collect::<Result<_>>()?;

    plan.delta0 = blocks.iter().map(|b| b.2).fold(0.0, f64::max);
    let parts: Vec<Graph> = blocks.iter().map(|b| b.0.clone()).collect();
    let graph = Graph::disjoint_union(&parts, &plan.link_pairs)?;

    if !graph.is_connected() {
        return Err(Error::ChainVerification("assembled graph is disconnected".into()));
    }
    let strong_index = code::strong_index(&graph)?;
    if strong_index < w {
        return Err(Error::ChainVerification(format!("strong index {strong_index} < {w}")));
    }
    let max_degree = graph.degree_stats().delta_max;
    if max_degree as f64 > plan.delta0 + 1.0 {
        return Err(Error::ChainVerification(format!(
            "max degree {max_degree} exceeds Δ₀ + 1 = {}",
            plan.delta0 + 1.0
        )));
    }
    let offsets = plan.offsets();
    for (b, part) in parts.iter().enumerate() {
        for v in 0..part.n() {
            if graph.degree(offsets[b] + v) > part.degree(v) + 1 {
                return Err(Error::ChainVerification(format!(
                    "vertex {} gained more than one chaining edge",
                    offsets[b] + v
                )));
            }
        }
    }

    Ok(ChainBuild {
        graph,
        plan,
        verdicts: blocks.into_iter().map(|b| b.1).collect(),
        strong_index,
        max_degree,
    })
}
