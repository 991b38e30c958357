//! 3-uniform hypergraphs and simple pair graphs.
//!
//! A [`ThreeGraph`] stores its edge set as a bitset over the colex ranks of
//! all triples, so membership is a single bit probe and the edge set of the
//! induced subgraph on `0..k` is a prefix of the bitset.

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use num_rational::Ratio;

use crate::error::{parse_err, Error, Result};

pub type Vertex = usize;
pub type Triple = [Vertex; 3];
pub type Rational = Ratio<i128>;

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Colex rank of the pair `u < v`.
#[inline]
pub fn pair_rank(u: Vertex, v: Vertex) -> usize {
    debug_assert!(u < v);
    v * (v - 1) / 2 + u
}

/// Colex rank of the triple `u < v < w`.
#[inline]
pub fn triple_rank(u: Vertex, v: Vertex, w: Vertex) -> usize {
    debug_assert!(u < v && v < w);
    w * (w - 1) * (w - 2) / 6 + v * (v - 1) / 2 + u
}

pub fn sort_triple([a, b, c]: Triple) -> Triple {
    let mut t = [a, b, c];
    t.sort_unstable();
    t
}

pub(crate) fn check_vertices(vs: &[Vertex], n: usize) -> Result<()> {
    match vs.iter().find(|&&v| v >= n) {
        Some(&vertex) => Err(Error::VertexOutOfRange { vertex, n }),
        None => Ok(()),
    }
}

/// Order-preserving relabeling of `0..n` minus `removed`; `None` marks a removed vertex.
fn survivor_map(n: usize, removed: &[Vertex]) -> (Vec<Option<Vertex>>, usize) {
    let mut gone = vec![false; n];
    for &v in removed {
        gone[v] = true;
    }
    let mut next = 0;
    let map = gone
        .iter()
        .map(|&g| {
            if g {
                None
            } else {
                next += 1;
                Some(next - 1)
            }
        })
        .collect();
    (map, next)
}

/// A 3-uniform hypergraph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ThreeGraph {
    n: usize,
    edges: FixedBitSet,
}

impl ThreeGraph {
    pub fn empty(n: usize) -> Self {
        ThreeGraph {
            n,
            edges: FixedBitSet::with_capacity(binomial(n, 3)),
        }
    }

    /// Builds a graph from triples given in any vertex order. Repeated triples collapse.
    pub fn from_triples<I>(n: usize, triples: I) -> Result<Self>
    where
        I: IntoIterator<Item = Triple>,
    {
        let mut g = ThreeGraph::empty(n);
        for t in triples {
            g.add_edge(t)?;
        }
        Ok(g)
    }

    /// Inserts a triple; returns whether it was new.
    pub fn add_edge(&mut self, t: Triple) -> Result<bool> {
        let r = self.rank_of(t)?;
        let was = self.edges.put(r);
        Ok(!was)
    }

    /// Removes a triple; returns whether it was present.
    pub fn remove_edge(&mut self, t: Triple) -> Result<bool> {
        let r = self.rank_of(t)?;
        let was = self.edges.contains(r);
        self.edges.set(r, false);
        Ok(was)
    }

    fn rank_of(&self, t: Triple) -> Result<usize> {
        check_vertices(&t, self.n)?;
        let [u, v, w] = sort_triple(t);
        if u == v || v == w {
            return Err(Error::DegenerateTriple(t));
        }
        Ok(triple_rank(u, v, w))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.count_ones(..)
    }

    /// Membership test; vertices may be in any order. Out-of-range or repeated vertices are never edges.
    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex, w: Vertex) -> bool {
        let [a, b, c] = sort_triple([u, v, w]);
        a < b && b < c && c < self.n && self.edges.contains(triple_rank(a, b, c))
    }

    #[inline]
    pub fn has_rank(&self, rank: usize) -> bool {
        self.edges.contains(rank)
    }

    /// The bitset of edge ranks (colex order).
    pub fn edge_bits(&self) -> &FixedBitSet {
        &self.edges
    }

    /// Edges in lexicographic order, each ascending.
    pub fn edges(&self) -> impl Iterator<Item = Triple> + '_ {
        (0..self.n)
            .tuple_combinations()
            .filter(|&(u, v, w)| self.edges.contains(triple_rank(u, v, w)))
            .map(|(u, v, w)| [u, v, w])
    }

    pub fn degree(&self, a: Vertex) -> usize {
        (0..self.n)
            .filter(|&x| x != a)
            .tuple_combinations()
            .filter(|&(x, y)| self.has_edge(a, x, y))
            .count()
    }

    /// Exact edge density `e(G) / C(n, 3)`.
    pub fn density(&self) -> Result<Rational> {
        if self.n < 3 {
            return Err(Error::UndefinedDensity(self.n));
        }
        Ok(Ratio::new(
            self.edge_count() as i128,
            binomial(self.n, 3) as i128,
        ))
    }

    /// Induced subgraph on the complement of `removed`, relabeled order-preservingly.
    pub fn delete_vertices(&self, removed: &[Vertex]) -> Result<ThreeGraph> {
        check_vertices(removed, self.n)?;
        let (map, m) = survivor_map(self.n, removed);
        let mut out = ThreeGraph::empty(m);
        for [u, v, w] in self.edges() {
            if let (Some(a), Some(b), Some(c)) = (map[u], map[v], map[w]) {
                out.edges.insert(triple_rank(a, b, c));
            }
        }
        Ok(out)
    }

    /// Number of edges meeting `s`.
    pub fn incident_count(&self, s: &[Vertex]) -> Result<usize> {
        check_vertices(s, self.n)?;
        let mut hit = vec![false; self.n];
        for &v in s {
            hit[v] = true;
        }
        Ok(self.edges().filter(|t| t.iter().any(|&v| hit[v])).count())
    }

    /// The link `G(a) = {xy : axy ∈ G}` as a pair graph on the same vertex set.
    pub fn vertex_link(&self, a: Vertex) -> Result<PairGraph> {
        check_vertices(&[a], self.n)?;
        let mut link = PairGraph::empty(self.n);
        for x in 0..self.n {
            for y in x + 1..self.n {
                if x != a && y != a && self.has_edge(a, x, y) {
                    link.pairs.insert(pair_rank(x, y));
                }
            }
        }
        Ok(link)
    }

    /// All triples not in `self`.
    pub fn complement(&self) -> ThreeGraph {
        let mut edges = self.edges.clone();
        edges.toggle_range(..);
        ThreeGraph { n: self.n, edges }
    }

    /// Image under `perm`, which maps old vertex `v` to new vertex `perm[v]`.
    pub fn relabeled(&self, perm: &[Vertex]) -> ThreeGraph {
        debug_assert_eq!(perm.len(), self.n);
        let mut out = ThreeGraph::empty(self.n);
        for [u, v, w] in self.edges() {
            let [a, b, c] = sort_triple([perm[u], perm[v], perm[w]]);
            out.edges.insert(triple_rank(a, b, c));
        }
        out
    }

    /// Whether every edge of `self` is an edge of `other` (same vertex count).
    pub fn is_subgraph_of(&self, other: &ThreeGraph) -> bool {
        self.n == other.n && self.edges.is_subset(&other.edges)
    }
}

impl fmt::Debug for ThreeGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ThreeGraph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Edge-list text: `n m`, then `m` lines `u v w`, ascending, LF-terminated.
impl fmt::Display for ThreeGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.n, self.edge_count())?;
        for [u, v, w] in self.edges() {
            writeln!(f, "{u} {v} {w}")?;
        }
        Ok(())
    }
}

fn parse_fields<const K: usize>(line: &str, lineno: usize) -> Result<[usize; K]> {
    let mut out = [0usize; K];
    let mut fields = line.split(' ');
    for slot in out.iter_mut() {
        let tok = fields
            .next()
            .ok_or_else(|| parse_err(lineno, format!("expected {K} fields")))?;
        if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
            return Err(parse_err(lineno, format!("bad integer {tok:?}")));
        }
        *slot = tok
            .parse()
            .map_err(|_| parse_err(lineno, format!("bad integer {tok:?}")))?;
    }
    if fields.next().is_some() {
        return Err(parse_err(lineno, format!("expected {K} fields")));
    }
    Ok(out)
}

pub(crate) fn text_lines(s: &str) -> Result<Vec<&str>> {
    if s.contains('\r') {
        return Err(parse_err(0, "CR line endings are not accepted"));
    }
    let body = s.strip_suffix('\n').unwrap_or(s);
    Ok(body.split('\n').collect())
}

pub(crate) fn parse_line<const K: usize>(line: &str, lineno: usize) -> Result<[usize; K]> {
    parse_fields(line, lineno)
}

impl FromStr for ThreeGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lines = text_lines(s)?;
        let [n, m] = parse_fields::<2>(lines[0], 1)?;
        if lines.len() != m + 1 {
            return Err(parse_err(
                lines.len().min(m + 1),
                format!("header declares {m} edges, found {}", lines.len() - 1),
            ));
        }
        let mut g = ThreeGraph::empty(n);
        let mut prev: Option<Triple> = None;
        for (i, line) in lines[1..].iter().enumerate() {
            let lineno = i + 2;
            let t = parse_fields::<3>(line, lineno)?;
            let [u, v, w] = t;
            if !(u < v && v < w) {
                return Err(parse_err(lineno, "triple is not strictly ascending"));
            }
            if w >= n {
                return Err(parse_err(lineno, format!("vertex {w} out of range")));
            }
            if prev.is_some_and(|p| p >= t) {
                return Err(parse_err(lineno, "duplicate or out-of-order triple"));
            }
            prev = Some(t);
            g.edges.insert(triple_rank(u, v, w));
        }
        Ok(g)
    }
}

/// A simple graph on `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PairGraph {
    n: usize,
    pairs: FixedBitSet,
}

impl PairGraph {
    pub fn empty(n: usize) -> Self {
        PairGraph {
            n,
            pairs: FixedBitSet::with_capacity(binomial(n, 2)),
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = PairGraph::empty(n);
        g.pairs.insert_range(..);
        g
    }

    pub fn from_pairs<I>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = PairGraph::empty(n);
        for (u, v) in pairs {
            g.add_pair(u, v)?;
        }
        Ok(g)
    }

    pub fn add_pair(&mut self, u: Vertex, v: Vertex) -> Result<bool> {
        check_vertices(&[u, v], self.n)?;
        if u == v {
            return Err(Error::DegeneratePair(u, v));
        }
        let was = self.pairs.put(pair_rank(u.min(v), u.max(v)));
        Ok(!was)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.pairs.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_clear()
    }

    pub fn has_pair(&self, u: Vertex, v: Vertex) -> bool {
        u != v && u.max(v) < self.n && self.pairs.contains(pair_rank(u.min(v), u.max(v)))
    }

    /// Pairs in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.n)
            .tuple_combinations()
            .filter(|&(u, v)| self.pairs.contains(pair_rank(u, v)))
    }

    /// Keeps pairs inside `keep` and relabels `keep` (as a sorted set) to `0..|keep|`.
    pub fn restrict(&self, keep: &[Vertex]) -> Result<PairGraph> {
        check_vertices(keep, self.n)?;
        let mut kept = keep.to_vec();
        kept.sort_unstable();
        kept.dedup();
        let removed: Vec<Vertex> = (0..self.n)
            .filter(|v| kept.binary_search(v).is_err())
            .collect();
        let (map, m) = survivor_map(self.n, &removed);
        let mut out = PairGraph::empty(m);
        for (u, v) in self.pairs() {
            if let (Some(a), Some(b)) = (map[u], map[v]) {
                out.pairs.insert(pair_rank(a, b));
            }
        }
        Ok(out)
    }

    /// Neighbourhood rows, one bitset of length `n` per vertex.
    pub fn adjacency_rows(&self) -> Vec<FixedBitSet> {
        let mut rows = vec![FixedBitSet::with_capacity(self.n); self.n];
        for (u, v) in self.pairs() {
            rows[u].insert(v);
            rows[v].insert(u);
        }
        rows
    }

    /// Size of a largest clique (exact, by branch and bound on candidate sets).
    pub fn clique_number(&self) -> usize {
        fn expand(rows: &[FixedBitSet], size: usize, cand: FixedBitSet, best: &mut usize) {
            if cand.is_clear() {
                *best = (*best).max(size);
                return;
            }
            let mut cand = cand;
            while !cand.is_clear() {
                if size + cand.count_ones(..) <= *best {
                    return;
                }
                let v = cand.minimum().expect("non-empty");
                cand.set(v, false);
                let mut next = cand.clone();
                next.intersect_with(&rows[v]);
                expand(rows, size + 1, next, best);
            }
            *best = (*best).max(size);
        }
        let rows = self.adjacency_rows();
        let mut all = FixedBitSet::with_capacity(self.n);
        all.insert_range(..);
        let mut best = 0;
        expand(&rows, 0, all, &mut best);
        best
    }
}

impl fmt::Debug for PairGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PairGraph")
            .field("n", &self.n)
            .field("pairs", &self.pairs().collect::<Vec<_>>())
            .finish()
    }
}
