//! Exact `ex(n, F₃,₃)` for small `n`.
//!
//! Every copy of `F₃,₃` in `K³ₙ` is listed as a 10-edge mask over the triple
//! universe. An `F₃,₃`-free graph is the complement of a set of triples that
//! meets every copy, so the Turán number is `C(n,3)` minus a minimum hitting
//! set, found by branch and bound: take the unhit copy with the fewest
//! deletable edges and branch on which of them to delete, keeping the earlier
//! ones. Disjoint unhit copies each need their own deletion, which gives the
//! lower bound.

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::constructions::count_b;
use crate::error::{Error, Result};
use crate::hypergraph::{binomial, triple_rank, ThreeGraph, Triple, Vertex};
use crate::pattern::{contains_f33, SearchMode, Witness};

/// Largest host size whose triple universe fits a 128-bit mask.
pub const MAX_N: usize = 10;

/// Largest host size for which [`enumerate_extremal`] canonicalises by brute force.
pub const MAX_ENUMERATE_N: usize = 7;

type Mask = u128;

/// The edge sets of all copies of `F₃,₃` in `K³ₙ`, as colex-rank masks, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CopyCatalog {
    pub n: usize,
    pub copies: Vec<Mask>,
}

impl CopyCatalog {
    pub fn len(&self) -> usize {
        self.copies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.copies.is_empty()
    }

    /// Whether `deleted` (a set of triples) meets every copy.
    pub fn is_hit_by(&self, deleted: &ThreeGraph) -> bool {
        let mask = graph_mask(deleted);
        self.copies.iter().all(|&c| c & mask != 0)
    }
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_N {
        return Err(Error::Unsupported(format!(
            "exact Turán search supports n <= {MAX_N}, got {n}"
        )));
    }
    Ok(())
}

fn graph_mask(g: &ThreeGraph) -> Mask {
    g.edge_bits().ones().fold(0, |m, r| m | 1 << r)
}

fn mask_graph(n: usize, mask: Mask) -> ThreeGraph {
    let triples = (0..n)
        .tuple_combinations()
        .filter(|&(u, v, w)| mask >> triple_rank(u, v, w) & 1 == 1)
        .map(|(u, v, w)| [u, v, w]);
    ThreeGraph::from_triples(n, triples).expect("in range")
}

fn full_mask(n: usize) -> Mask {
    match binomial(n, 3) {
        128 => Mask::MAX,
        k => (1 << k) - 1,
    }
}

#[inline]
fn bit(t: Triple) -> Mask {
    let [u, v, w] = crate::hypergraph::sort_triple(t);
    1 << triple_rank(u, v, w)
}

/// Lists every copy: for each 6-set and each choice of its `xyz` half.
pub fn enumerate_copies(n: usize) -> Result<CopyCatalog> {
    check_size(n)?;
    let mut copies = Vec::new();
    for six in (0..n).combinations(6) {
        for xyz in six.iter().copied().combinations(3) {
            let abc: Vec<Vertex> = six.iter().copied().filter(|v| !xyz.contains(v)).collect();
            let mut mask = bit([abc[0], abc[1], abc[2]]);
            for &a in &abc {
                for (&x, &y) in xyz.iter().tuple_combinations() {
                    mask |= bit([a, x, y]);
                }
            }
            copies.push(mask);
        }
    }
    copies.sort_unstable();
    copies.dedup();
    Ok(CopyCatalog { n, copies })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TuranConfig {
    pub n: usize,
    pub node_limit: Option<u64>,
    /// Worker count; `1` runs sequentially.
    pub threads: usize,
}

impl TuranConfig {
    pub fn new(n: usize) -> Self {
        TuranConfig {
            n,
            node_limit: None,
            threads: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TuranCertificate {
    pub n: usize,
    pub optimum: usize,
    #[serde(serialize_with = "serialize_graph")]
    pub witness: ThreeGraph,
    pub proven_exhaustive: bool,
    pub nodes_explored: u64,
}

fn serialize_graph<S: serde::Serializer>(
    g: &ThreeGraph,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&g.to_string())
}

/// The claimed value of `ex(n, F₃,₃)`: `b(n)`, except 10 at `n = 5`.
pub fn theorem_value(n: u32) -> i128 {
    if n == 5 {
        10
    } else {
        count_b(n)
    }
}

enum Goal {
    /// Find a hitting set smaller than the incumbent.
    Minimize,
    /// Collect every hitting set of exactly this size.
    EnumerateSize(usize),
}

struct HittingSearch<'a> {
    copies: &'a [Mask],
    goal: Goal,
    best_size: usize,
    best: Mask,
    found: Vec<Mask>,
    nodes: u64,
    node_limit: Option<u64>,
    aborted: bool,
}

impl<'a> HittingSearch<'a> {
    fn new(copies: &'a [Mask], goal: Goal, node_limit: Option<u64>) -> Self {
        HittingSearch {
            copies,
            goal,
            best_size: usize::MAX,
            best: 0,
            found: Vec::new(),
            nodes: 0,
            node_limit,
            aborted: false,
        }
    }

    fn limit(&self) -> usize {
        match self.goal {
            Goal::Minimize => self.best_size,
            // anything of size target + 1 or more is useless
            Goal::EnumerateSize(k) => k + 1,
        }
    }

    /// Unhit copy with the fewest deletable edges (first in catalog order on ties),
    /// together with a greedy packing of unhit copies with disjoint deletable edges.
    fn inspect(&self, chosen: Mask, kept: Mask) -> Option<(Option<Mask>, usize)> {
        let mut pick: Option<Mask> = None;
        let mut pick_len = u32::MAX;
        let mut packed = 0;
        let mut used: Mask = 0;
        for &c in self.copies {
            if c & chosen != 0 {
                continue;
            }
            let cand = c & !kept;
            let len = cand.count_ones();
            if len == 0 {
                return None;
            }
            if len < pick_len {
                pick = Some(cand);
                pick_len = len;
            }
            if cand & used == 0 {
                used |= cand;
                packed += 1;
            }
        }
        Some((pick, packed))
    }

    fn dfs(&mut self, chosen: Mask, size: usize, kept: Mask) {
        if self.aborted {
            return;
        }
        self.nodes += 1;
        if self.node_limit.is_some_and(|lim| self.nodes > lim) {
            self.aborted = true;
            return;
        }
        let Some((pick, packed)) = self.inspect(chosen, kept) else {
            return;
        };
        if size + packed >= self.limit() {
            return;
        }
        let Some(cand) = pick else {
            match self.goal {
                Goal::Minimize => {
                    self.best_size = size;
                    self.best = chosen;
                }
                Goal::EnumerateSize(k) => {
                    if size == k {
                        self.found.push(chosen);
                    }
                }
            }
            return;
        };
        let mut kept = kept;
        let mut rest = cand;
        while rest != 0 {
            let e = rest & rest.wrapping_neg();
            rest &= rest - 1;
            self.dfs(chosen | e, size + 1, kept);
            if self.aborted {
                return;
            }
            kept |= e;
        }
    }
}

/// Repeatedly deletes the triple meeting the most unhit copies (lowest rank on ties).
fn greedy_hitting_set(copies: &[Mask], universe: usize) -> Mask {
    let mut chosen: Mask = 0;
    loop {
        let unhit: Vec<Mask> = copies
            .iter()
            .copied()
            .filter(|&c| c & chosen == 0)
            .collect();
        if unhit.is_empty() {
            return chosen;
        }
        let best = (0..universe)
            .max_by_key(|&r| {
                let hits = unhit.iter().filter(|&&c| c >> r & 1 == 1).count();
                (hits, std::cmp::Reverse(r))
            })
            .expect("non-empty universe");
        chosen |= 1 << best;
    }
}

fn minimum_hitting_set(cat: &CopyCatalog, cfg: &TuranConfig) -> Result<(Mask, u64, bool)> {
    let universe = binomial(cat.n, 3);
    let greedy = greedy_hitting_set(&cat.copies, universe);
    let seeded = |s: &mut HittingSearch<'_>, size: usize, set: Mask| {
        s.best_size = size;
        s.best = set;
    };

    if cfg.threads <= 1 || cfg.node_limit.is_some() || cat.copies.is_empty() {
        let mut s = HittingSearch::new(&cat.copies, Goal::Minimize, cfg.node_limit);
        seeded(&mut s, greedy.count_ones() as usize, greedy);
        s.dfs(0, 0, 0);
        return Ok((s.best, s.nodes, !s.aborted));
    }

    // Root branches: the first copy's edges, in the order the sequential search takes them.
    let root = HittingSearch::new(&cat.copies, Goal::Minimize, None);
    let (pick, _) = root.inspect(0, 0).expect("nothing kept yet");
    let root_copy = pick.expect("catalog is non-empty");
    let mut branches = Vec::new();
    let mut kept = 0;
    let mut rest = root_copy;
    while rest != 0 {
        let e = rest & rest.wrapping_neg();
        rest &= rest - 1;
        branches.push((e, kept));
        kept |= e;
    }

    let mut head = HittingSearch::new(&cat.copies, Goal::Minimize, None);
    seeded(&mut head, greedy.count_ones() as usize, greedy);
    head.nodes = 1;
    let (e0, k0) = branches[0];
    head.dfs(e0, 1, k0);
    let (seed_size, seed_set) = (head.best_size, head.best);

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| Error::Unsupported(e.to_string()))?;
    let results: Vec<(usize, Mask, u64)> = pool.install(|| {
        branches[1..]
            .par_iter()
            .map(|&(e, k)| {
                let mut s = HittingSearch::new(&cat.copies, Goal::Minimize, None);
                seeded(&mut s, seed_size, seed_set);
                s.dfs(e, 1, k);
                (s.best_size, s.best, s.nodes)
            })
            .collect()
    });
    let (mut size, mut set, mut nodes) = (seed_size, seed_set, head.nodes);
    for (s, m, n) in results {
        nodes += n;
        if s < size {
            size = s;
            set = m;
        }
    }
    Ok((set, nodes, true))
}

/// Exact Turán number with an audited witness.
pub fn exact_turan(cfg: &TuranConfig) -> Result<TuranCertificate> {
    if cfg.n == 0 {
        return Err(Error::Unsupported("exact Turán search needs n >= 1".into()));
    }
    let cat = enumerate_copies(cfg.n)?;
    let (deleted, nodes, exhaustive) = minimum_hitting_set(&cat, cfg)?;
    let witness = mask_graph(cfg.n, full_mask(cfg.n) & !deleted);
    Ok(TuranCertificate {
        n: cfg.n,
        optimum: witness.edge_count(),
        witness,
        proven_exhaustive: exhaustive,
        nodes_explored: nodes,
    })
}

/// Every extremal `F₃,₃`-free graph on `n ≤ 7` vertices, one per isomorphism
/// class, in canonical labelling and sorted.
pub fn enumerate_extremal(n: usize) -> Result<Vec<ThreeGraph>> {
    if n == 0 || n > MAX_ENUMERATE_N {
        return Err(Error::Unsupported(format!(
            "enumeration supports 1 <= n <= {MAX_ENUMERATE_N}, got {n}"
        )));
    }
    let cat = enumerate_copies(n)?;
    let (min_set, _, _) = minimum_hitting_set(&cat, &TuranConfig::new(n))?;
    let k = min_set.count_ones() as usize;
    let mut s = HittingSearch::new(&cat.copies, Goal::EnumerateSize(k), None);
    s.dfs(0, 0, 0);

    let images = triple_images(n);
    let full = full_mask(n);
    let mut classes: Vec<Mask> = s
        .found
        .iter()
        .map(|&h| canonical_mask(full & !h, &images))
        .collect();
    classes.sort_unstable();
    classes.dedup();
    Ok(classes.into_iter().map(|m| mask_graph(n, m)).collect())
}

/// For every vertex permutation, the image of each triple, indexed by colex rank.
fn triple_images(n: usize) -> Vec<Vec<usize>> {
    let mut triples: Vec<Triple> = vec![[0; 3]; binomial(n, 3)];
    for (u, v, w) in (0..n).tuple_combinations() {
        triples[triple_rank(u, v, w)] = [u, v, w];
    }
    (0..n)
        .permutations(n)
        .map(|p| {
            triples
                .iter()
                .map(|&[u, v, w]| bit([p[u], p[v], p[w]]).trailing_zeros() as usize)
                .collect()
        })
        .collect()
}

fn canonical_mask(mask: Mask, images: &[Vec<usize>]) -> Mask {
    images
        .iter()
        .map(|img| {
            img.iter()
                .enumerate()
                .filter(|&(r, _)| mask >> r & 1 == 1)
                .fold(0, |acc, (_, &to)| acc | 1 << to)
        })
        .min()
        .unwrap_or(mask)
}

/// Canonical form of a small 3-graph (minimum edge mask over all relabelings).
pub fn canonical_form(g: &ThreeGraph) -> Result<ThreeGraph> {
    if g.n() > MAX_ENUMERATE_N {
        return Err(Error::Unsupported(format!(
            "canonical form supports n <= {MAX_ENUMERATE_N}"
        )));
    }
    let m = canonical_mask(graph_mask(g), &triple_images(g.n()));
    Ok(mask_graph(g.n(), m))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AuditFailure {
    #[error("witness has {found} vertices, expected {expected}")]
    VertexCount { expected: usize, found: usize },
    #[error("witness has {found} edges but the optimum claims {claimed}")]
    EdgeCount { claimed: usize, found: usize },
    #[error("witness contains F(3,3) at {0:?}")]
    ContainsF33(Witness),
    #[error("optimum {optimum} is below the construction bound {bound}")]
    BelowLowerBound { optimum: usize, bound: i128 },
}

impl AuditFailure {
    pub fn code(&self) -> &'static str {
        match self {
            AuditFailure::VertexCount { .. } => "vertex-count",
            AuditFailure::EdgeCount { .. } => "edge-count",
            AuditFailure::ContainsF33(_) => "contains-f33",
            AuditFailure::BelowLowerBound { .. } => "below-lower-bound",
        }
    }
}

/// Rechecks a certificate with the pattern search and the construction bound.
pub fn audit_certificate(c: &TuranCertificate) -> std::result::Result<(), AuditFailure> {
    if c.witness.n() != c.n {
        return Err(AuditFailure::VertexCount {
            expected: c.n,
            found: c.witness.n(),
        });
    }
    if c.witness.edge_count() != c.optimum {
        return Err(AuditFailure::EdgeCount {
            claimed: c.optimum,
            found: c.witness.edge_count(),
        });
    }
    if let Some(w) = contains_f33(&c.witness, SearchMode::Deterministic) {
        return Err(AuditFailure::ContainsF33(w));
    }
    let bound = if c.n == 5 { 10 } else { count_b(c.n as u32) };
    if (c.optimum as i128) < bound {
        return Err(AuditFailure::BelowLowerBound {
            optimum: c.optimum,
            bound,
        });
    }
    Ok(())
}
