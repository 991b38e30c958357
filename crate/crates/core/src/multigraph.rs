//! Multigraphs with bounded multiplicities and their coloured variant, the
//! link multigraph of a vertex set in a 3-graph.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{parse_err, Error, Result};
use crate::hypergraph::{
    binomial, check_vertices, pair_rank, parse_line, text_lines, PairGraph, ThreeGraph, Triple,
    Vertex,
};

pub const DEFAULT_CAP: u32 = 4;

/// Largest number of apexes a [`ColoredMultigraph`] can carry.
pub const MAX_APEXES: usize = 8;

/// Multigraph on `0..n`; `w(xy) ∈ [0, cap]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Multigraph {
    n: usize,
    cap: u32,
    w: Vec<u8>,
}

impl Multigraph {
    pub fn new(n: usize, cap: u32) -> Self {
        assert!(cap <= u8::MAX as u32, "cap {cap} too large");
        Multigraph {
            n,
            cap,
            w: vec![0; binomial(n, 2)],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    #[inline]
    pub fn weight(&self, u: Vertex, v: Vertex) -> u32 {
        if u == v {
            return 0;
        }
        self.w[pair_rank(u.min(v), u.max(v))] as u32
    }

    pub fn set_weight(&mut self, u: Vertex, v: Vertex, weight: u32) -> Result<()> {
        check_vertices(&[u, v], self.n)?;
        if u == v {
            return Err(Error::DegeneratePair(u, v));
        }
        if weight > self.cap {
            return Err(Error::WeightExceedsCap {
                weight,
                cap: self.cap,
            });
        }
        self.w[pair_rank(u.min(v), u.max(v))] = weight as u8;
        Ok(())
    }

    /// Weights indexed by colex pair rank.
    pub fn weights(&self) -> &[u8] {
        &self.w
    }

    /// Builds from a colex-ranked weight vector.
    pub fn from_weights(n: usize, cap: u32, w: Vec<u8>) -> Result<Self> {
        if w.len() != binomial(n, 2) {
            return Err(Error::Unsupported(format!(
                "expected {} weights for {n} vertices, got {}",
                binomial(n, 2),
                w.len()
            )));
        }
        if let Some(&bad) = w.iter().find(|&&x| x as u32 > cap) {
            return Err(Error::WeightExceedsCap {
                weight: bad as u32,
                cap,
            });
        }
        Ok(Multigraph { n, cap, w })
    }

    /// `e(M)`, the sum of all multiplicities.
    pub fn total(&self) -> u64 {
        self.w.iter().map(|&x| x as u64).sum()
    }

    /// Sum of `w(xy)` over pairs meeting `s`.
    pub fn weighted_incidence(&self, s: &[Vertex]) -> Result<u64> {
        check_vertices(s, self.n)?;
        let mut hit = vec![false; self.n];
        for &v in s {
            hit[v] = true;
        }
        Ok((0..self.n)
            .tuple_combinations()
            .filter(|&(u, v)| hit[u] || hit[v])
            .map(|(u, v)| self.weight(u, v) as u64)
            .sum())
    }

    pub fn weighted_degree(&self, x: Vertex) -> u64 {
        (0..self.n).map(|y| self.weight(x, y) as u64).sum()
    }

    /// Largest `w(xy) + w(xz) + w(yz)` and the lexicographically first triple attaining it.
    pub fn max_triple_sum(&self) -> Result<(u32, Triple)> {
        if self.n < 3 {
            return Err(Error::Unsupported(format!(
                "triple sums need at least 3 vertices, got {}",
                self.n
            )));
        }
        let mut best = (0, [0, 1, 2]);
        let mut first = true;
        for (x, y, z) in (0..self.n).tuple_combinations() {
            let s = self.weight(x, y) + self.weight(x, z) + self.weight(y, z);
            if first || s > best.0 {
                best = (s, [x, y, z]);
                first = false;
            }
        }
        Ok(best)
    }

    /// Induced multigraph on the complement of `removed`, relabeled order-preservingly.
    pub fn delete_vertices(&self, removed: &[Vertex]) -> Result<Multigraph> {
        check_vertices(removed, self.n)?;
        let keep: Vec<Vertex> = (0..self.n).filter(|v| !removed.contains(v)).collect();
        let mut out = Multigraph::new(keep.len(), self.cap);
        for (i, j) in (0..keep.len()).tuple_combinations() {
            out.w[pair_rank(i, j)] = self.weight(keep[i], keep[j]) as u8;
        }
        Ok(out)
    }

    /// Image under `perm` (old vertex `v` becomes `perm[v]`).
    pub fn relabeled(&self, perm: &[Vertex]) -> Multigraph {
        let mut out = Multigraph::new(self.n, self.cap);
        for (u, v) in (0..self.n).tuple_combinations() {
            let (a, b) = (perm[u], perm[v]);
            out.w[pair_rank(a.min(b), a.max(b))] = self.weight(u, v) as u8;
        }
        out
    }

    /// A vertex bijection `perm` with `other.weight(perm[u], perm[v]) == self.weight(u, v)`.
    ///
    /// Backtracking over vertices, restricted to targets with the same sorted
    /// incident-weight profile. Caps are ignored.
    pub fn find_isomorphism(&self, other: &Multigraph) -> Option<Vec<Vertex>> {
        if self.n != other.n {
            return None;
        }
        let profile = |m: &Multigraph, x: Vertex| {
            let mut p: Vec<u32> = (0..m.n)
                .filter(|&y| y != x)
                .map(|y| m.weight(x, y))
                .collect();
            p.sort_unstable();
            p
        };
        let ps: Vec<_> = (0..self.n).map(|x| profile(self, x)).collect();
        let po: Vec<_> = (0..other.n).map(|x| profile(other, x)).collect();
        let mut a = ps.clone();
        let mut b = po.clone();
        a.sort();
        b.sort();
        if a != b {
            return None;
        }

        fn extend(
            me: &Multigraph,
            other: &Multigraph,
            ps: &[Vec<u32>],
            po: &[Vec<u32>],
            map: &mut Vec<Vertex>,
            used: &mut [bool],
        ) -> bool {
            let u = map.len();
            if u == me.n {
                return true;
            }
            for t in 0..other.n {
                if used[t] || ps[u] != po[t] {
                    continue;
                }
                if (0..u).all(|p| me.weight(p, u) == other.weight(map[p], t)) {
                    used[t] = true;
                    map.push(t);
                    if extend(me, other, ps, po, map, used) {
                        return true;
                    }
                    map.pop();
                    used[t] = false;
                }
            }
            false
        }

        let mut map = Vec::with_capacity(self.n);
        let mut used = vec![false; self.n];
        extend(self, other, &ps, &po, &mut map, &mut used).then_some(map)
    }

    pub fn is_isomorphic(&self, other: &Multigraph) -> bool {
        self.find_isomorphism(other).is_some()
    }

    /// Parses the text format, enforcing `cap`.
    pub fn parse_with_cap(s: &str, cap: u32) -> Result<Self> {
        let lines = text_lines(s)?;
        let [n] = parse_line::<1>(lines[0], 1)?;
        let mut m = Multigraph::new(n, cap);
        let mut prev: Option<(usize, usize)> = None;
        for (i, line) in lines[1..].iter().enumerate() {
            let lineno = i + 2;
            let [u, v, w] = parse_line::<3>(line, lineno)?;
            if u >= v || v >= n {
                return Err(parse_err(lineno, "pair must satisfy u < v < n"));
            }
            if w == 0 {
                return Err(parse_err(lineno, "zero weights are not listed"));
            }
            if prev.is_some_and(|p| p >= (u, v)) {
                return Err(parse_err(lineno, "duplicate or out-of-order pair"));
            }
            prev = Some((u, v));
            m.set_weight(u, v, w.try_into().unwrap_or(u32::MAX))
                .map_err(|e| parse_err(lineno, e.to_string()))?;
        }
        Ok(m)
    }
}

impl fmt::Debug for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Multigraph(n={}, cap={}, e={})",
            self.n,
            self.cap,
            self.total()
        )
    }
}

/// Text format: `n`, then `u v w` per pair with nonzero weight in lexicographic order.
impl fmt::Display for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for (u, v) in (0..self.n).tuple_combinations() {
            let w = self.weight(u, v);
            if w > 0 {
                writeln!(f, "{u} {v} {w}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Multigraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Multigraph::parse_with_cap(s, DEFAULT_CAP)
    }
}

/// Link multigraph of an apex set: every pair carries the set of apexes it is joined to.
#[derive(Clone, PartialEq, Eq)]
pub struct ColoredMultigraph {
    n: usize,
    apexes: Vec<Vertex>,
    /// Host vertex of each link vertex.
    host: Vec<Vertex>,
    /// Bit `i` set when apex `apexes[i]` colours the pair.
    colors: Vec<u8>,
}

impl ColoredMultigraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn apexes(&self) -> &[Vertex] {
        &self.apexes
    }

    /// Host-graph label of link vertex `x`.
    pub fn host_vertex(&self, x: Vertex) -> Vertex {
        self.host[x]
    }

    pub fn color_mask(&self, u: Vertex, v: Vertex) -> u8 {
        if u == v {
            return 0;
        }
        self.colors[pair_rank(u.min(v), u.max(v))]
    }

    /// Apex labels colouring the pair `uv`.
    pub fn colors(&self, u: Vertex, v: Vertex) -> Vec<Vertex> {
        self.mask_to_apexes(self.color_mask(u, v))
    }

    fn mask_to_apexes(&self, mask: u8) -> Vec<Vertex> {
        (0..self.apexes.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| self.apexes[i])
            .collect()
    }

    pub fn multiplicity(&self, u: Vertex, v: Vertex) -> u32 {
        self.color_mask(u, v).count_ones()
    }

    /// Forgets the colours; the cap is the number of apexes.
    pub fn multigraph(&self) -> Multigraph {
        let w = self.colors.iter().map(|c| c.count_ones() as u8).collect();
        Multigraph::from_weights(self.n, self.apexes.len() as u32, w)
            .expect("multiplicity never exceeds apex count")
    }

    /// A triangle whose three pairs share at least `k` colours, with the `k`
    /// smallest shared apex labels. Triangles are scanned lexicographically.
    pub fn find_common_color_triangle(&self, k: usize) -> Option<(Triple, Vec<Vertex>)> {
        let support = |u: Vertex, v: Vertex| self.multiplicity(u, v) as usize >= k;
        for x in 0..self.n {
            for y in x + 1..self.n {
                if !support(x, y) {
                    continue;
                }
                for z in y + 1..self.n {
                    if !support(x, z) || !support(y, z) {
                        continue;
                    }
                    let common =
                        self.color_mask(x, y) & self.color_mask(x, z) & self.color_mask(y, z);
                    if common.count_ones() as usize >= k {
                        let mut labels = self.mask_to_apexes(common);
                        labels.truncate(k);
                        return Some(([x, y, z], labels));
                    }
                }
            }
        }
        None
    }

    /// Simple graph of pairs with at least `threshold` colours.
    pub fn high_multiplicity_graph(&self, threshold: u32) -> PairGraph {
        let pairs = (0..self.n)
            .tuple_combinations()
            .filter(|&(u, v)| self.multiplicity(u, v) >= threshold);
        PairGraph::from_pairs(self.n, pairs).expect("pairs are in range")
    }
}

impl fmt::Debug for ColoredMultigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ColoredMultigraph")
            .field("n", &self.n)
            .field("apexes", &self.apexes)
            .finish_non_exhaustive()
    }
}

/// Link multigraph of `s` in `g`: vertex set `V \ S` (relabeled in order),
/// and pair `xy` coloured by every `a ∈ S` with `axy ∈ G`.
pub fn build_link(g: &ThreeGraph, s: &[Vertex]) -> Result<ColoredMultigraph> {
    check_vertices(s, g.n())?;
    let mut apexes = s.to_vec();
    apexes.sort_unstable();
    apexes.dedup();
    if apexes.is_empty() || apexes.len() > MAX_APEXES {
        return Err(Error::Unsupported(format!(
            "link needs between 1 and {MAX_APEXES} apexes, got {}",
            apexes.len()
        )));
    }
    let host: Vec<Vertex> = (0..g.n())
        .filter(|v| apexes.binary_search(v).is_err())
        .collect();
    let n = host.len();
    let mut colors = vec![0u8; binomial(n, 2)];
    for (i, j) in (0..n).tuple_combinations() {
        let mut mask = 0u8;
        for (bit, &a) in apexes.iter().enumerate() {
            if g.has_edge(a, host[i], host[j]) {
                mask |= 1 << bit;
            }
        }
        colors[pair_rank(i, j)] = mask;
    }
    Ok(ColoredMultigraph {
        n,
        apexes,
        host,
        colors,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredPairJson {
    pub u: Vertex,
    pub v: Vertex,
    pub colors: Vec<Vertex>,
}

/// `{"n", "apexes", "pairs": [{"u","v","colors"}]}`; only coloured pairs, lexicographic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredMultigraphJson {
    pub n: usize,
    pub apexes: Vec<Vertex>,
    pub pairs: Vec<ColoredPairJson>,
}

impl From<&ColoredMultigraph> for ColoredMultigraphJson {
    fn from(c: &ColoredMultigraph) -> Self {
        let pairs = (0..c.n)
            .tuple_combinations()
            .filter(|&(u, v)| c.color_mask(u, v) != 0)
            .map(|(u, v)| ColoredPairJson {
                u,
                v,
                colors: c.colors(u, v),
            })
            .collect();
        ColoredMultigraphJson {
            n: c.n,
            apexes: c.apexes.clone(),
            pairs,
        }
    }
}

impl Serialize for ColoredMultigraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ColoredMultigraphJson::from(self).serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{make_bipartite, make_complete, make_m1, make_m2, make_m3_fourpart};

    #[test]
    fn weighted_incidence_examples() {
        let m1 = make_m1(6);
        assert_eq!(m1.weighted_incidence(&[0]).unwrap(), 16);
        assert_eq!(m1.weighted_degree(0), 16);
        assert_eq!(m1.weighted_incidence(&[]).unwrap(), 0);
        assert_eq!(make_m2(4).weighted_incidence(&[0, 1]).unwrap(), 16);
    }

    #[test]
    fn max_triple_sum_examples() {
        assert_eq!(make_m1(8).max_triple_sum().unwrap().0, 10);
        assert_eq!(
            Multigraph::new(5, 4).max_triple_sum().unwrap(),
            (0, [0, 1, 2])
        );
        assert_eq!(make_m3_fourpart(8).max_triple_sum().unwrap().0, 10);
        assert!(Multigraph::new(2, 4).max_triple_sum().is_err());
    }

    #[test]
    fn set_weight_checks_cap() {
        let mut m = Multigraph::new(3, 4);
        assert_eq!(
            m.set_weight(0, 1, 5),
            Err(Error::WeightExceedsCap { weight: 5, cap: 4 })
        );
        assert!(m.set_weight(1, 1, 1).is_err());
        m.set_weight(2, 0, 3).unwrap();
        assert_eq!(m.weight(0, 2), 3);
    }

    #[test]
    fn link_of_complete() {
        let link = build_link(&make_complete(6), &[0, 2, 3, 5]).unwrap();
        assert_eq!(link.n(), 2);
        assert_eq!(link.multiplicity(0, 1), 4);
        assert_eq!(link.host_vertex(0), 1);
        assert_eq!(link.host_vertex(1), 4);

        let empty = build_link(&ThreeGraph::empty(7), &[1, 2]).unwrap();
        assert_eq!(empty.multigraph().total(), 0);

        assert!(build_link(&make_complete(4), &[]).is_err());
        assert!(build_link(&make_complete(4), &[4]).is_err());
    }

    #[test]
    fn common_color_triangles() {
        let link = build_link(&make_complete(7), &[0, 1, 2, 3]).unwrap();
        let (t, cols) = link.find_common_color_triangle(3).unwrap();
        assert_eq!(t, [0, 1, 2]);
        assert_eq!(cols, vec![0, 1, 2]);

        let blank = build_link(&ThreeGraph::empty(6), &[0]).unwrap();
        assert!(blank.find_common_color_triangle(1).is_none());
    }

    #[test]
    fn high_multiplicity_examples() {
        // B(6) parts {0,1,2},{3,4,5}; {0,1,3,4} spans K4.
        let b6 = make_bipartite(6);
        let link = build_link(&b6, &[0, 1, 3, 4]).unwrap();
        // Brute force: pair {2,5} with each apex gives a crossing triple.
        let brute = [0usize, 1, 3, 4]
            .iter()
            .filter(|&&a| b6.has_edge(a, 2, 5))
            .count();
        assert_eq!(brute, 4);
        let j = link.high_multiplicity_graph(3);
        assert_eq!(j.pairs().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(j.clique_number(), 2);

        assert_eq!(link.high_multiplicity_graph(0), PairGraph::complete(2));
        assert!(link.high_multiplicity_graph(5).is_empty());
    }

    #[test]
    fn text_format_round_trip() {
        let m = make_m2(5);
        let text = m.to_string();
        assert!(text.starts_with("5\n0 1 4\n0 2 3\n"));
        assert_eq!(text.parse::<Multigraph>().unwrap(), m);
        assert!("3\n0 1 5\n".parse::<Multigraph>().is_err());
        assert!("3\n0 1 2\n0 1 2\n".parse::<Multigraph>().is_err());
        assert!("3\n1 0 2\n".parse::<Multigraph>().is_err());
        assert!("3\n0 1 0\n".parse::<Multigraph>().is_err());
    }

    #[test]
    fn isomorphism() {
        let m = make_m1(7);
        let perm = [3, 6, 0, 5, 1, 4, 2];
        let p = m.relabeled(&perm);
        assert!(p.is_isomorphic(&m));
        let iso = m.find_isomorphism(&p).unwrap();
        for (u, v) in (0..7).tuple_combinations() {
            assert_eq!(m.weight(u, v), p.weight(iso[u], iso[v]));
        }
        assert!(!make_m1(6).is_isomorphic(&make_m2(6)));
    }

    #[test]
    fn json_shape() {
        let link = build_link(&make_complete(5), &[0, 4]).unwrap();
        let json = serde_json::to_string(&link).unwrap();
        assert!(json.starts_with(r#"{"n":3,"apexes":[0,4],"pairs":[{"u":0,"v":1,"colors":[0,4]}"#));
    }
}
