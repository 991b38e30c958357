//! Exhaustive maximisation of `e(M)` over multigraphs with a per-pair cap and a
//! per-triple cap on `w(xy) + w(xz) + w(yz)`.
//!
//! Depth-first branch and bound over the pairs in lexicographic order, values
//! tried from high to low. A remaining pair can take at most the slack left by
//! every triangle it closes with two assigned pairs, and the sum of those
//! slacks bounds the subtree. With symmetry reduction on, a partial
//! assignment is dropped once some vertex permutation provably maps it to a
//! lexicographically larger weight vector, so only lex-max representatives of
//! each isomorphism class survive.

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::binomial;
use crate::multigraph::{Multigraph, DEFAULT_CAP};

pub const DEFAULT_TRIPLE_CAP: u32 = 10;

/// Largest `n` for which the full symmetric group is used; above it only transpositions.
pub const FULL_SYMMETRY_MAX_N: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaSearchConfig {
    pub n: usize,
    pub pair_cap: u32,
    pub triple_cap: u32,
    pub symmetry_reduction: bool,
    pub node_limit: Option<u64>,
    /// Worker count; `1` runs the plain sequential search.
    pub threads: usize,
}

impl LemmaSearchConfig {
    pub fn new(n: usize) -> Self {
        LemmaSearchConfig {
            n,
            pair_cap: DEFAULT_CAP,
            triple_cap: DEFAULT_TRIPLE_CAP,
            symmetry_reduction: true,
            node_limit: None,
            threads: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaCertificate {
    pub n: usize,
    pub pair_cap: u32,
    pub triple_cap: u32,
    pub optimum: u64,
    #[serde(serialize_with = "serialize_multigraph")]
    pub maximizer: Multigraph,
    pub nodes_explored: u64,
    pub proven_exhaustive: bool,
}

fn serialize_multigraph<S: serde::Serializer>(
    m: &Multigraph,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&m.to_string())
}

/// Pairs `(u, v)` with `u < v` in lexicographic order and their positions.
struct PairOrder {
    n: usize,
    pairs: Vec<(usize, usize)>,
    pos: Vec<usize>,
}

impl PairOrder {
    fn new(n: usize) -> Self {
        let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
        let mut pos = vec![usize::MAX; n * n];
        for (i, &(u, v)) in pairs.iter().enumerate() {
            pos[u * n + v] = i;
            pos[v * n + u] = i;
        }
        PairOrder { n, pairs, pos }
    }

    #[inline]
    fn at(&self, u: usize, v: usize) -> usize {
        self.pos[u * self.n + v]
    }
}

/// For each permutation, the position that each pair position is sent to.
fn permutation_images(order: &PairOrder) -> Vec<Vec<usize>> {
    let n = order.n;
    let image = |perm: &[usize]| -> Vec<usize> {
        order
            .pairs
            .iter()
            .map(|&(u, v)| order.at(perm[u], perm[v]))
            .collect()
    };
    let identity: Vec<usize> = (0..n).collect();
    if n <= FULL_SYMMETRY_MAX_N {
        (0..n)
            .permutations(n)
            .filter(|p| *p != identity)
            .map(|p| image(&p))
            .collect()
    } else {
        (0..n)
            .tuple_combinations()
            .map(|(a, b)| {
                let mut p = identity.clone();
                p.swap(a, b);
                image(&p)
            })
            .collect()
    }
}

struct Search<'a> {
    cfg: &'a LemmaSearchConfig,
    order: &'a PairOrder,
    perms: &'a [Vec<usize>],
    /// Weights by pair position; only `..depth` are meaningful.
    w: Vec<u8>,
    /// Positions after which a row of the weight matrix is complete.
    row_end: Vec<bool>,
    global_cap: u64,
    best_value: Option<u64>,
    best: Option<Vec<u8>>,
    nodes: u64,
    aborted: bool,
}

impl<'a> Search<'a> {
    fn new(cfg: &'a LemmaSearchConfig, order: &'a PairOrder, perms: &'a [Vec<usize>]) -> Self {
        let n = cfg.n;
        let npairs = order.pairs.len();
        let row_end = order.pairs.iter().map(|&(_, v)| v == n - 1).collect();
        // Each pair lies in n − 2 triples, each triple carries at most triple_cap.
        let global_cap = if n >= 3 {
            (cfg.triple_cap as u64 * binomial(n, 3) as u64) / (n as u64 - 2)
        } else {
            cfg.pair_cap as u64 * npairs as u64
        };
        Search {
            cfg,
            order,
            perms,
            w: vec![0; npairs],
            row_end,
            global_cap,
            best_value: None,
            best: None,
            nodes: 0,
            aborted: false,
        }
    }

    /// Largest weight the pair at `p` can take given the first `depth` pairs; `None` if infeasible.
    #[inline]
    fn slack(&self, p: usize, depth: usize) -> Option<u32> {
        let (u, v) = self.order.pairs[p];
        let mut ub = self.cfg.pair_cap as i64;
        for z in 0..self.cfg.n {
            if z == u || z == v {
                continue;
            }
            let (a, b) = (self.order.at(u, z), self.order.at(v, z));
            if a < depth && b < depth {
                let left = self.cfg.triple_cap as i64 - self.w[a] as i64 - self.w[b] as i64;
                ub = ub.min(left);
            }
        }
        (ub >= 0).then_some(ub as u32)
    }

    fn upper_bound(&self, depth: usize, current: u64) -> Option<u64> {
        let mut total = current;
        for p in depth..self.w.len() {
            total += self.slack(p, depth)? as u64;
        }
        Some(total.min(self.global_cap))
    }

    /// True if some permutation maps the assigned prefix to a provably larger vector.
    fn dominated(&self, depth: usize) -> bool {
        self.perms.iter().any(|img| {
            for (p, &q) in img.iter().enumerate().take(depth) {
                if q >= depth {
                    return false;
                }
                match self.w[q].cmp(&self.w[p]) {
                    std::cmp::Ordering::Greater => return true,
                    std::cmp::Ordering::Less => return false,
                    std::cmp::Ordering::Equal => {}
                }
            }
            false
        })
    }

    fn admissible_prefix(&self, depth: usize) -> bool {
        !(self.cfg.symmetry_reduction
            && depth > 0
            && self.row_end[depth - 1]
            && self.dominated(depth))
    }

    fn dfs(&mut self, depth: usize, current: u64) {
        if self.aborted {
            return;
        }
        self.nodes += 1;
        if self.cfg.node_limit.is_some_and(|lim| self.nodes > lim) {
            self.aborted = true;
            return;
        }
        if depth == self.w.len() {
            if self.best_value.is_none_or(|b| current > b) {
                self.best_value = Some(current);
                self.best = Some(self.w.clone());
            }
            return;
        }
        match self.upper_bound(depth, current) {
            None => return,
            Some(ub) if self.best_value.is_some_and(|b| ub <= b) => return,
            _ => {}
        }
        let Some(top) = self.slack(depth, depth) else {
            return;
        };
        for value in (0..=top).rev() {
            self.w[depth] = value as u8;
            if self.admissible_prefix(depth + 1) {
                self.dfs(depth + 1, current + value as u64);
            }
            if self.aborted {
                return;
            }
        }
    }

    /// Feasible, admissible prefixes of length `depth`, in search order.
    fn prefixes(&mut self, depth: usize) -> Vec<Vec<u8>> {
        fn go(s: &mut Search<'_>, d: usize, target: usize, out: &mut Vec<Vec<u8>>) {
            if d == target {
                out.push(s.w[..d].to_vec());
                return;
            }
            let Some(top) = s.slack(d, d) else { return };
            for value in (0..=top).rev() {
                s.w[d] = value as u8;
                if s.admissible_prefix(d + 1) {
                    go(s, d + 1, target, out);
                }
            }
        }
        let mut out = Vec::new();
        go(self, 0, depth, &mut out);
        out
    }

    fn run_from(&mut self, prefix: &[u8]) {
        self.w[..prefix.len()].copy_from_slice(prefix);
        let current = prefix.iter().map(|&x| x as u64).sum();
        self.dfs(prefix.len(), current);
    }
}

fn certificate(
    cfg: &LemmaSearchConfig,
    best: Option<(u64, Vec<u8>)>,
    nodes: u64,
    exhaustive: bool,
) -> LemmaCertificate {
    let npairs = binomial(cfg.n, 2);
    let (optimum, w) = best.unwrap_or((0, vec![0; npairs]));
    LemmaCertificate {
        n: cfg.n,
        pair_cap: cfg.pair_cap,
        triple_cap: cfg.triple_cap,
        optimum,
        maximizer: Multigraph::from_weights(cfg.n, cfg.pair_cap, lex_to_colex(cfg.n, &w))
            .expect("search respects the pair cap"),
        nodes_explored: nodes,
        proven_exhaustive: exhaustive,
    }
}

/// Reorders a lexicographic pair vector into colex order.
fn lex_to_colex(n: usize, lex: &[u8]) -> Vec<u8> {
    let mut out = vec![0; lex.len()];
    for (i, (u, v)) in (0..n).tuple_combinations().enumerate() {
        out[crate::hypergraph::pair_rank(u, v)] = lex[i];
    }
    out
}

/// Best value and weights found in a subtree (if it beat the seed), and its node count.
type SubtreeResult = (Option<(u64, Vec<u8>)>, u64);

/// Exact maximum of `e(M)` under the caps in `cfg`.
///
/// With `threads > 1` (and no node limit) the search is split on a short
/// prefix of pairs; the first subtree is solved alone and its value seeds
/// every other subtree, which then run in parallel. The optimum, the
/// maximizer and the node count are independent of scheduling, and the
/// maximizer equals the one the sequential search returns.
pub fn max_feasible_edges(cfg: &LemmaSearchConfig) -> Result<LemmaCertificate> {
    if cfg.n == 0 {
        return Err(Error::Unsupported("lemma search needs n >= 1".into()));
    }
    if cfg.pair_cap > u8::MAX as u32 {
        return Err(Error::Unsupported(format!(
            "pair cap {} too large",
            cfg.pair_cap
        )));
    }
    let order = PairOrder::new(cfg.n);
    let perms = if cfg.symmetry_reduction {
        permutation_images(&order)
    } else {
        Vec::new()
    };

    let split = 3.min(order.pairs.len());
    if cfg.threads <= 1 || cfg.node_limit.is_some() || split == 0 {
        let mut s = Search::new(cfg, &order, &perms);
        s.dfs(0, 0);
        let best = s.best_value.zip(s.best);
        return Ok(certificate(cfg, best, s.nodes, !s.aborted));
    }

    let prefixes = Search::new(cfg, &order, &perms).prefixes(split);
    let Some((first, rest)) = prefixes.split_first() else {
        return Ok(certificate(cfg, None, 0, true));
    };
    let mut head = Search::new(cfg, &order, &perms);
    head.run_from(first);
    let seed = head.best_value;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| Error::Unsupported(e.to_string()))?;
    let results: Vec<SubtreeResult> = pool.install(|| {
        rest.par_iter()
            .map(|prefix| {
                let mut s = Search::new(cfg, &order, &perms);
                s.best_value = seed;
                s.run_from(prefix);
                let found = if s.best_value != seed {
                    s.best_value.zip(s.best)
                } else {
                    None
                };
                (found, s.nodes)
            })
            .collect()
    });

    let mut best = seed.zip(head.best);
    let mut nodes = head.nodes;
    for (found, n) in results {
        nodes += n;
        if let Some((v, w)) = found {
            if best.as_ref().is_none_or(|(b, _)| v > *b) {
                best = Some((v, w));
            }
        }
    }
    Ok(certificate(cfg, best, nodes, true))
}

/// Checks both caps directly; shares no code with the search.
pub fn verify_feasible(m: &Multigraph, cfg: &LemmaSearchConfig) -> bool {
    let n = m.n();
    if n != cfg.n {
        return false;
    }
    for u in 0..n {
        for v in u + 1..n {
            if m.weight(u, v) > cfg.pair_cap {
                return false;
            }
            for z in v + 1..n {
                if m.weight(u, v) + m.weight(u, z) + m.weight(v, z) > cfg.triple_cap {
                    return false;
                }
            }
        }
    }
    true
}

/// Seeded stream of random feasible multigraphs (default caps).
///
/// Pairs are visited in a shuffled order; each takes either its full remaining
/// slack or a uniform value below it, so samples range from sparse to maximal.
pub struct FeasibleSampler {
    n: usize,
    remaining: usize,
    rng: ChaCha8Rng,
}

pub fn sample_feasible(n: usize, trials: usize, seed: u64) -> FeasibleSampler {
    FeasibleSampler {
        n,
        remaining: trials,
        rng: ChaCha8Rng::seed_from_u64(seed),
    }
}

impl Iterator for FeasibleSampler {
    type Item = Multigraph;

    fn next(&mut self) -> Option<Multigraph> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let n = self.n;
        let mut m = Multigraph::new(n, DEFAULT_CAP);
        let mut pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
        pairs.shuffle(&mut self.rng);
        let greedy = self.rng.gen_bool(0.5);
        let mut assigned = vec![false; n * n];
        for (u, v) in pairs {
            let slack = (0..n)
                .filter(|&z| z != u && z != v && assigned[u * n + z] && assigned[v * n + z])
                .map(|z| DEFAULT_TRIPLE_CAP - m.weight(u, z) - m.weight(v, z))
                .fold(DEFAULT_CAP, u32::min);
            let w = if greedy || self.rng.gen_bool(0.3) {
                slack
            } else {
                self.rng.gen_range(0..=slack)
            };
            m.set_weight(u, v, w).expect("within cap");
            assigned[u * n + v] = true;
            assigned[v * n + u] = true;
        }
        Some(m)
    }
}
