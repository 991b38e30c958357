//! Containment of small fixed patterns in a host 3-graph.
//!
//! `F₃,₃` gets a dedicated routine: for every edge `abc`, intersect the three
//! vertex links and look for a triangle in what remains. Arbitrary small
//! patterns go through a generic backtracking embedder.

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::{make_complete, make_f33};
use crate::error::{Error, Result};
use crate::hypergraph::{ThreeGraph, Triple, Vertex};

/// How witnesses are selected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SearchMode {
    /// Sequential; returns the lexicographically smallest witness.
    #[default]
    Deterministic,
    /// Edges are split across the rayon pool; any witness may come back.
    Parallel,
}

/// A pattern graph plus classes of interchangeable vertices used for symmetry breaking.
#[derive(Debug, Clone)]
pub struct Pattern {
    graph: ThreeGraph,
    orbits: Vec<Vec<Vertex>>,
}

impl Pattern {
    /// `orbits`, when given, must partition the vertices, and every permutation
    /// inside a class must be an automorphism of `graph`.
    pub fn new(graph: ThreeGraph, orbits: Option<Vec<Vec<Vertex>>>) -> Result<Self> {
        let n = graph.n();
        let orbits = orbits.unwrap_or_else(|| (0..n).map(|v| vec![v]).collect());
        let mut seen = vec![false; n];
        for class in &orbits {
            for &v in class {
                if v >= n || seen[v] {
                    return Err(Error::InvalidPattern(format!(
                        "orbit classes do not partition 0..{n}"
                    )));
                }
                seen[v] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidPattern(format!(
                "orbit classes do not partition 0..{n}"
            )));
        }
        // Transpositions generate the symmetric group on each class.
        for class in &orbits {
            for (&p, &q) in class.iter().tuple_combinations() {
                let mut perm: Vec<Vertex> = (0..n).collect();
                perm.swap(p, q);
                if graph.relabeled(&perm) != graph {
                    return Err(Error::InvalidPattern(format!(
                        "swapping {p} and {q} is not an automorphism"
                    )));
                }
            }
        }
        let mut orbits = orbits;
        for class in &mut orbits {
            class.sort_unstable();
        }
        Ok(Pattern { graph, orbits })
    }

    /// `F₃,₃` with classes `{a,b,c}` and `{x,y,z}`.
    pub fn f33() -> Self {
        Pattern::new(make_f33(), Some(vec![vec![0, 1, 2], vec![3, 4, 5]])).expect("valid")
    }

    /// `K³ₜ` with a single class.
    pub fn complete(t: usize) -> Self {
        Pattern::new(make_complete(t), Some(vec![(0..t).collect()])).expect("valid")
    }

    pub fn graph(&self) -> &ThreeGraph {
        &self.graph
    }

    pub fn orbits(&self) -> &[Vec<Vertex>] {
        &self.orbits
    }
}

/// Injective map from pattern vertices to host vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Witness {
    pub map: Vec<Vertex>,
}

impl Witness {
    /// Checks injectivity and that every pattern edge lands on a host edge.
    pub fn verify(&self, pattern: &ThreeGraph, host: &ThreeGraph) -> bool {
        if self.map.len() != pattern.n() || self.map.iter().any(|&h| h >= host.n()) {
            return false;
        }
        if !self.map.iter().all_unique() {
            return false;
        }
        pattern
            .edges()
            .all(|[u, v, w]| host.has_edge(self.map[u], self.map[v], self.map[w]))
    }
}

/// `links[a * n + x]` holds every `y` with `axy ∈ G`.
fn link_rows(g: &ThreeGraph) -> Vec<FixedBitSet> {
    let n = g.n();
    let mut rows = vec![FixedBitSet::with_capacity(n); n * n];
    for [u, v, w] in g.edges() {
        for (a, x, y) in [(u, v, w), (v, u, w), (w, u, v)] {
            rows[a * n + x].insert(y);
            rows[a * n + y].insert(x);
        }
    }
    rows
}

/// Smallest triangle `x < y < z` of the common link of the edge `abc`, if any.
fn common_link_triangle(
    n: usize,
    links: &[FixedBitSet],
    [a, b, c]: Triple,
    rows: &mut [FixedBitSet],
) -> Option<Triple> {
    for x in 0..n {
        let row = &mut rows[x];
        if x == a || x == b || x == c {
            row.clear();
            continue;
        }
        row.clone_from(&links[a * n + x]);
        row.intersect_with(&links[b * n + x]);
        row.intersect_with(&links[c * n + x]);
        for v in [a, b, c] {
            row.set(v, false);
        }
    }
    for x in 0..n {
        for y in rows[x].ones().filter(|&y| y > x) {
            if let Some(z) = rows[x].intersection(&rows[y]).find(|&z| z > y) {
                return Some([x, y, z]);
            }
        }
    }
    None
}

/// A copy of `F₃,₃` in `g` as the map `[a, b, c, x, y, z]`.
///
/// In deterministic mode the witness is the lexicographically smallest one
/// with `a < b < c` and `x < y < z`.
pub fn contains_f33(g: &ThreeGraph, mode: SearchMode) -> Option<Witness> {
    let n = g.n();
    if n < 6 {
        return None;
    }
    let links = link_rows(g);
    let found = |t: Triple, rows: &mut Vec<FixedBitSet>| {
        common_link_triangle(n, &links, t, rows).map(|[x, y, z]| Witness {
            map: vec![t[0], t[1], t[2], x, y, z],
        })
    };
    match mode {
        SearchMode::Deterministic => {
            let mut rows = vec![FixedBitSet::with_capacity(n); n];
            g.edges().find_map(|t| found(t, &mut rows))
        }
        SearchMode::Parallel => {
            let edges: Vec<Triple> = g.edges().collect();
            edges.par_iter().find_map_any(|&t| {
                let mut rows = vec![FixedBitSet::with_capacity(n); n];
                found(t, &mut rows)
            })
        }
    }
}

/// Generic non-induced containment by backtracking.
///
/// Pattern vertices are placed in order of decreasing degree; a host vertex is
/// a candidate only if its degree is at least the pattern vertex's degree.
/// Within an orbit class, images must increase with the pattern label.
pub fn contains_pattern(g: &ThreeGraph, p: &Pattern) -> Option<Witness> {
    let pg = p.graph();
    let k = pg.n();
    if k > g.n() {
        return None;
    }
    let pdeg: Vec<usize> = (0..k).map(|v| pg.degree(v)).collect();
    let hdeg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut class_of = vec![0; k];
    for (i, class) in p.orbits().iter().enumerate() {
        for &v in class {
            class_of[v] = i;
        }
    }
    let mut order: Vec<Vertex> = (0..k).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(pdeg[v]), v));

    // For each position, the pattern edges completed there, as the other two positions' vertices.
    let pos_of: Vec<usize> = {
        let mut pos = vec![0; k];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        pos
    };
    let mut closing: Vec<Vec<(Vertex, Vertex)>> = vec![Vec::new(); k];
    for t in pg.edges() {
        let last = *t
            .iter()
            .max_by_key(|&&v| pos_of[v])
            .expect("three vertices");
        let others: Vec<Vertex> = t.iter().copied().filter(|&v| v != last).collect();
        closing[pos_of[last]].push((others[0], others[1]));
    }

    struct Ctx<'a> {
        g: &'a ThreeGraph,
        order: &'a [Vertex],
        closing: &'a [Vec<(Vertex, Vertex)>],
        pdeg: &'a [usize],
        hdeg: &'a [usize],
        class_of: &'a [usize],
    }

    fn place(ctx: &Ctx<'_>, depth: usize, map: &mut [Option<Vertex>], used: &mut [bool]) -> bool {
        if depth == ctx.order.len() {
            return true;
        }
        let v = ctx.order[depth];
        for h in 0..ctx.g.n() {
            if used[h] || ctx.hdeg[h] < ctx.pdeg[v] {
                continue;
            }
            let breaks_symmetry = map.iter().enumerate().any(|(u, img)| {
                img.is_some_and(|hu| ctx.class_of[u] == ctx.class_of[v] && ((u < v) != (hu < h)))
            });
            if breaks_symmetry {
                continue;
            }
            let consistent = ctx.closing[depth].iter().all(|&(a, b)| {
                ctx.g
                    .has_edge(map[a].expect("placed"), map[b].expect("placed"), h)
            });
            if !consistent {
                continue;
            }
            map[v] = Some(h);
            used[h] = true;
            if place(ctx, depth + 1, map, used) {
                return true;
            }
            map[v] = None;
            used[h] = false;
        }
        false
    }

    let ctx = Ctx {
        g,
        order: &order,
        closing: &closing,
        pdeg: &pdeg,
        hdeg: &hdeg,
        class_of: &class_of,
    };
    let mut map = vec![None; k];
    let mut used = vec![false; g.n()];
    place(&ctx, 0, &mut map, &mut used).then(|| Witness {
        map: map.into_iter().map(|h| h.expect("complete")).collect(),
    })
}

/// First 4-set (lexicographic) spanning `K³₄`.
pub fn find_dense_four_set(g: &ThreeGraph) -> Option<[Vertex; 4]> {
    let n = g.n();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if !g.has_edge(a, b, c) {
                    continue;
                }
                for d in c + 1..n {
                    if g.has_edge(a, b, d) && g.has_edge(a, c, d) && g.has_edge(b, c, d) {
                        return Some([a, b, c, d]);
                    }
                }
            }
        }
    }
    None
}

/// Some `{a, b, c}` disjoint from `{x, y}` such that every triple made of two
/// of `a, b, c` and one of `x, y` is an edge.
pub fn is_t_connected(g: &ThreeGraph, x: Vertex, y: Vertex) -> Option<[Vertex; 3]> {
    if x == y {
        return None;
    }
    let n = g.n();
    let ok = |p: Vertex, q: Vertex| g.has_edge(p, q, x) && g.has_edge(p, q, y);
    let free = |v: Vertex| v != x && v != y;
    for a in (0..n).filter(|&v| free(v)) {
        for b in (a + 1..n).filter(|&v| free(v)) {
            if !ok(a, b) {
                continue;
            }
            for c in (b + 1..n).filter(|&v| free(v)) {
                if ok(a, c) && ok(b, c) {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TTriple {
    pub triple: Triple,
    /// Witnesses for the pairs `xy`, `xz`, `yz` in that order.
    pub witnesses: [[Vertex; 3]; 3],
}

/// First edge (lexicographic) whose three pairs are all t-connected.
pub fn find_t_triple(g: &ThreeGraph) -> Option<TTriple> {
    let n = g.n();
    let mut memo: Vec<Option<Option<[Vertex; 3]>>> = vec![None; n * n];
    let mut pair =
        |u: Vertex, v: Vertex| *memo[u * n + v].get_or_insert_with(|| is_t_connected(g, u, v));
    for [x, y, z] in g.edges().collect::<Vec<_>>() {
        let Some(wxy) = pair(x, y) else { continue };
        let Some(wxz) = pair(x, z) else { continue };
        let Some(wyz) = pair(y, z) else { continue };
        return Some(TTriple {
            triple: [x, y, z],
            witnesses: [wxy, wxz, wyz],
        });
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::make_bipartite;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// All injections of the pattern into the host.
    fn brute_force(host: &ThreeGraph, pat: &ThreeGraph) -> bool {
        let pe: Vec<Triple> = pat.edges().collect();
        (0..host.n())
            .permutations(pat.n())
            .any(|m| pe.iter().all(|&[u, v, w]| host.has_edge(m[u], m[v], m[w])))
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> ThreeGraph {
        let edges = (0..n)
            .tuple_combinations()
            .filter(|_| rng.gen_bool(p))
            .map(|(u, v, w)| [u, v, w]);
        ThreeGraph::from_triples(n, edges).unwrap()
    }

    #[test]
    fn f33_examples() {
        assert!(contains_f33(&make_bipartite(20), SearchMode::Deterministic).is_none());
        assert!(contains_f33(&make_complete(5), SearchMode::Deterministic).is_none());
        let mut g = make_complete(6);
        g.remove_edge([1, 3, 5]).unwrap();
        let w = contains_f33(&g, SearchMode::Deterministic).unwrap();
        assert!(w.verify(&make_f33(), &g));
        assert!(contains_f33(&g, SearchMode::Parallel).is_some());
    }

    #[test]
    fn deterministic_witness_is_lex_smallest() {
        let k7 = make_complete(7);
        let w = contains_f33(&k7, SearchMode::Deterministic).unwrap();
        assert_eq!(w.map, vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn pattern_examples() {
        let single = Pattern::new(ThreeGraph::from_triples(3, [[0, 1, 2]]).unwrap(), None).unwrap();
        assert!(contains_pattern(&ThreeGraph::empty(5), &single).is_none());
        assert!(contains_pattern(&make_bipartite(4), &single).is_some());

        let b7 = make_bipartite(7);
        let w = contains_pattern(&b7, &Pattern::complete(4)).unwrap();
        assert!(w.verify(&make_complete(4), &b7));

        assert!(contains_pattern(&make_bipartite(6), &Pattern::f33()).is_none());
        assert!(contains_pattern(&make_complete(3), &Pattern::f33()).is_none());
    }

    #[test]
    fn bad_orbits_rejected() {
        assert!(Pattern::new(make_f33(), Some(vec![vec![0, 3], vec![1, 2, 4, 5]])).is_err());
        assert!(Pattern::new(make_f33(), Some(vec![vec![0, 1, 2]])).is_err());
        assert!(Pattern::new(make_f33(), Some(vec![vec![0, 1, 2], vec![2, 3, 4, 5]])).is_err());
    }

    #[test]
    fn generic_matches_specialised_and_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let f = make_f33();
        let pat = Pattern::f33();
        for i in 0..120 {
            let n = 6 + i % 3;
            let p = rng.gen_range(0.55..0.95);
            let g = random_graph(&mut rng, n, p);
            let fast = contains_f33(&g, SearchMode::Deterministic);
            let generic = contains_pattern(&g, &pat);
            assert_eq!(fast.is_some(), generic.is_some());
            assert_eq!(fast.is_some(), brute_force(&g, &f));
            if let Some(w) = generic {
                assert!(w.verify(&f, &g));
            }
        }
    }

    #[test]
    fn dense_four_sets() {
        assert_eq!(find_dense_four_set(&make_complete(4)), Some([0, 1, 2, 3]));
        let b10 = make_bipartite(10);
        let s = find_dense_four_set(&b10).unwrap();
        assert!(s
            .iter()
            .copied()
            .tuple_combinations()
            .all(|(a, b, c)| b10.has_edge(a, b, c)));
        assert_eq!(find_dense_four_set(&ThreeGraph::empty(6)), None);
    }

    #[test]
    fn t_connection() {
        let k5 = make_complete(5);
        for (x, y) in (0..5).tuple_combinations() {
            assert!(is_t_connected(&k5, x, y).is_some());
        }
        assert!(is_t_connected(&ThreeGraph::empty(6), 0, 1).is_none());

        // Oracle: brute force over all ordered choices of three other vertices.
        let b8 = make_bipartite(8);
        let brute = |x: usize, y: usize| {
            (0..8)
                .filter(|&v| v != x && v != y)
                .combinations(3)
                .any(|abc| {
                    abc.iter()
                        .tuple_combinations()
                        .all(|(&p, &q)| b8.has_edge(p, q, x) && b8.has_edge(p, q, y))
                })
        };
        for (x, y) in (0..8).tuple_combinations() {
            let w = is_t_connected(&b8, x, y);
            assert_eq!(w.is_some(), brute(x, y), "pair {x},{y}");
            // same part ⇔ t-connected in B(8)
            assert_eq!(w.is_some(), (x < 4) == (y < 4));
        }
    }

    #[test]
    fn t_triples() {
        let t = find_t_triple(&make_complete(5)).unwrap();
        assert_eq!(t.triple, [0, 1, 2]);
        assert!(find_t_triple(&ThreeGraph::empty(6)).is_none());
        assert!(find_t_triple(&make_bipartite(12)).is_none());
        assert!(find_t_triple(&make_f33()).is_some());
    }
}
