//! Strong identification codes: the strong index of a graph, the code
//! verifier, the bad-vertex rule, the randomized Z ∪ Z_b construction and an
//! exhaustive minimum-code search.
//!
//! Every pairwise scan uses the same locality fact: if `u` is farther than two
//! hops from `v` then N[v] and N[u] are disjoint, so N[v] \ N[u] = N[v]. Only
//! the radius-2 ball around `v` needs explicit set differences.

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis;
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::rng::Rng;

pub const DEFAULT_EXACT_CAP: usize = 24;

/// Index `r` and slack `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CodeParams {
    pub r: usize,
    pub d: usize,
}

impl CodeParams {
    pub fn new(r: usize, d: usize) -> Result<Self> {
        if r == 0 || d == 0 {
            return Err(Error::InvalidParams { r, d });
        }
        Ok(Self { r, d })
    }
}

/// Ordered pair `(v, u)` together with `#((N[v] \ N[u]) ∩ C)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub v: Vertex,
    pub u: Vertex,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyOutcome {
    pub valid: bool,
    /// Lexicographically first pair attaining `achieved_min`, present only
    /// when the code is invalid.
    pub witness: Option<Witness>,
    /// Minimum of `#((N[v] \ N[u]) ∩ C)` over all ordered pairs.
    pub achieved_min: usize,
}

/// Output of [`randomized_code`]. All sets are sorted ascending.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CodeResult {
    /// Y = Z ∪ Z_b.
    pub code: Vec<Vertex>,
    /// Z, the Bernoulli(q) sample.
    pub sampled: Vec<Vertex>,
    /// Y_b, the bad vertices.
    pub bad: Vec<Vertex>,
    /// Z_b, the union of N[v] over bad v.
    pub bad_closure: Vec<Vertex>,
    pub q_used: f64,
    pub seed: u64,
}

fn to_set(g: &Graph, ids: &[Vertex]) -> Result<BitSet> {
    let n = g.n();
    let mut s = BitSet::new(n);
    for &v in ids {
        if v >= n {
            return Err(Error::InvalidVertex(v, n));
        }
        s.insert(v);
    }
    Ok(s)
}

/// min over ordered pairs `v != u` of `#(N[v] \ N[u])`, the largest `r` for
/// which the graph has the r-strong neighbourhood property.
pub fn strong_index(g: &Graph) -> Result<usize> {
    let n = g.n();
    if n < 2 {
        return Err(Error::TooSmall(n));
    }
    let best = (0..n)
        .into_par_iter()
        .map(|v| {
            let nv = g.closed_row(v);
            let ball = g.ball2(v);
            let mut best = if ball.count() < n { nv.count() } else { usize::MAX };
            for u in ball.iter().filter(|&u| u != v) {
                best = best.min(nv.difference_count(g.closed_row(u)));
            }
            best
        })
        .min()
        .expect("n >= 2");
    Ok(best)
}

/// Checks `#((N[v] \ N[u]) ∩ C) >= r` for every ordered pair of distinct
/// vertices.
pub fn is_identification_code(g: &Graph, code: &[Vertex], r: usize) -> Result<VerifyOutcome> {
    let set = to_set(g, code)?;
    verify_set(g, &set, r)
}

/// [`is_identification_code`] for a code already held as a bit set over
/// `0..n`.
pub fn verify_set(g: &Graph, code: &BitSet, r: usize) -> Result<VerifyOutcome> {
    let n = g.n();
    if r == 0 {
        return Err(Error::ZeroIndex);
    }
    if n < 2 {
        return Err(Error::TooSmall(n));
    }
    assert_eq!(code.len(), n, "code set capacity must equal n");

    // per v: (min count, first u attaining it)
    let per_vertex: Vec<(usize, Vertex)> = (0..n)
        .into_par_iter()
        .map(|v| {
            let mut cv = g.closed_row(v).clone();
            cv.intersect_with(code);
            let far = cv.count();
            let ball = g.ball2(v);
            let mut best = (usize::MAX, usize::MAX);
            for u in (0..n).filter(|&u| u != v) {
                let count = if ball.contains(u) {
                    cv.difference_count(g.closed_row(u))
                } else {
                    far
                };
                if count < best.0 {
                    best = (count, u);
                }
            }
            best
        })
        .collect();

    let (v, &(achieved_min, u)) = per_vertex
        .iter()
        .enumerate()
        .min_by_key(|(v, (count, _))| (*count, *v))
        .expect("n >= 2");
    let valid = achieved_min >= r;
    Ok(VerifyOutcome {
        valid,
        witness: (!valid).then_some(Witness { v, u, count: achieved_min }),
        achieved_min,
    })
}

/// Vertices that are bad relative to the sample `z`: either
/// `#(N[v] ∩ Z) <= r - 1`, or some `w != v` within distance two has
/// `#((N[v] \ N[w]) ∩ Z) <= r - 1`.
pub fn bad_vertices(g: &Graph, z: &[Vertex], r: usize) -> Result<Vec<Vertex>> {
    let set = to_set(g, z)?;
    Ok(bad_set(g, &set, r).to_vec())
}

pub(crate) fn bad_set(g: &Graph, z: &BitSet, r: usize) -> BitSet {
    let n = g.n();
    let flags: Vec<bool> = (0..n)
        .into_par_iter()
        .map(|v| {
            let mut zv = g.closed_row(v).clone();
            zv.intersect_with(z);
            if zv.count() < r {
                return true;
            }
            g.ball2(v)
                .iter()
                .filter(|&w| w != v)
                .any(|w| zv.difference_below(g.closed_row(w), r))
        })
        .collect();
    BitSet::from_ids(n, flags.iter().enumerate().filter(|(_, &b)| b).map(|(v, _)| v))
}

/// Samples Z with independent Bernoulli(q) draws in ascending vertex order,
/// finds the bad vertices and returns Y = Z ∪ Z_b.
///
/// When `q` is `None` the sampling probability is
/// [`analysis::q_star`] at the graph's maximum degree, clamped into `[0, 1]`.
pub fn randomized_code(g: &Graph, params: CodeParams, q: Option<f64>, seed: u64) -> Result<CodeResult> {
    let params = CodeParams::new(params.r, params.d)?;
    let achieved = strong_index(g)?;
    if achieved < params.r {
        return Err(Error::NotRStrong { achieved, required: params.r });
    }
    randomized_code_unchecked(g, params, q, seed)
}

/// [`randomized_code`] without the strong-index precondition check. The
/// output is only guaranteed to be a code when the caller has established
/// `strong_index(g) >= params.r`.
pub fn randomized_code_unchecked(g: &Graph, params: CodeParams, q: Option<f64>, seed: u64) -> Result<CodeResult> {
    let n = g.n();
    let q_used = match q {
        Some(q) if !(0.0..=1.0).contains(&q) => return Err(Error::InvalidProbability(q)),
        Some(q) => q,
        None => analysis::q_star(g.degree_stats().delta_max, params.r, params.d).clamp(0.0, 1.0),
    };

    let mut rng = Rng::new(seed);
    let mut sampled = BitSet::new(n);
    for v in 0..n {
        if rng.bernoulli(q_used) {
            sampled.insert(v);
        }
    }

    let bad = bad_set(g, &sampled, params.r);
    let mut bad_closure = BitSet::new(n);
    for v in bad.iter() {
        bad_closure.union_with(g.closed_row(v));
    }
    let mut code = sampled.clone();
    code.union_with(&bad_closure);

    Ok(CodeResult {
        code: code.to_vec(),
        sampled: sampled.to_vec(),
        bad: bad.to_vec(),
        bad_closure: bad_closure.to_vec(),
        q_used,
        seed,
    })
}

/// Minimum-size code of index `r` by exhaustive search, or `None` when the
/// graph's strong index is below `r` (then not even V is a code).
///
/// Subsets are tried by increasing size starting at `ceil(n / (Δ + 1))`,
/// lexicographically within a size; the first valid one is returned.
pub fn exact_min_code(g: &Graph, r: usize, cap: Option<usize>) -> Result<Option<(usize, Vec<Vertex>)>> {
    let n = g.n();
    let cap = cap.unwrap_or(DEFAULT_EXACT_CAP);
    if n > cap || n > 64 {
        return Err(Error::TooLargeForExact { n, cap: cap.min(64) });
    }
    if r == 0 {
        return Err(Error::ZeroIndex);
    }
    if strong_index(g)? < r {
        return Ok(None);
    }

    let closed: Vec<u64> = (0..n)
        .map(|v| g.closed_row(v).iter().fold(0u64, |m, x| m | 1 << x))
        .collect();
    let mut separators: Vec<u64> = Vec::with_capacity(n * (n - 1));
    for v in 0..n {
        for u in (0..n).filter(|&u| u != v) {
            separators.push(closed[v] & !closed[u]);
        }
    }
    // smallest sets first: they reject most candidates
    separators.sort_unstable_by_key(|m| (m.count_ones(), *m));
    separators.dedup();
    let r = r as u32;
    let accepts = |c: u64| separators.iter().all(|&s| (s & c).count_ones() >= r);

    let delta = g.degree_stats().delta_max;
    let start = n.div_ceil(delta + 1);
    for k in start..=n {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let mask = idx.iter().fold(0u64, |m, &i| m | 1 << i);
            if accepts(mask) {
                return Ok(Some((k, idx)));
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
    }
    unreachable!("the full vertex set is a code once strong_index >= r")
}

/// Advances `idx` (strictly increasing, values `< n`) to the next
/// k-combination in lexicographic order. Returns false after the last one.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
