//! Named 3-graphs and multigraphs, the counting functions `b(n)` and `m(n)`,
//! and an exact check of the identities relating them.

use itertools::Itertools;
use num_rational::Ratio;
use serde::Serialize;

use crate::hypergraph::{Rational, ThreeGraph, Vertex};
use crate::multigraph::{Multigraph, DEFAULT_CAP};

/// Balanced split of `0..n`: part A is `0..⌊n/2⌋`, part B the rest.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BipartitionSpec {
    pub n: usize,
    pub size_a: usize,
    pub size_b: usize,
}

impl BipartitionSpec {
    pub fn new(n: usize) -> Self {
        BipartitionSpec {
            n,
            size_a: n / 2,
            size_b: n - n / 2,
        }
    }

    #[inline]
    pub fn in_a(&self, v: Vertex) -> bool {
        v < self.size_a
    }
}

/// Exact `C(n, k)` for `k ≤ 3` in 128-bit arithmetic; cannot overflow for `n: u32`.
fn choose_wide(n: u32, k: u32) -> i128 {
    let n = n as i128;
    match k {
        0 => 1,
        1 => n,
        2 => n * (n - 1) / 2,
        3 => {
            if n < 3 {
                0
            } else {
                n * (n - 1) * (n - 2) / 6
            }
        }
        _ => unreachable!("only small k is needed"),
    }
}

/// `b(n) = C(n,3) − C(⌊n/2⌋,3) − C(⌈n/2⌉,3)`, the edge count of the balanced complete bipartite 3-graph.
pub fn count_b(n: u32) -> i128 {
    choose_wide(n, 3) - choose_wide(n / 2, 3) - choose_wide(n - n / 2, 3)
}

/// `m(n)`: `3n²/2 − n` for even `n`, `(3n²−1)/2 − n` for odd `n`.
pub fn count_m(n: u32) -> i128 {
    let n = n as i128;
    if n % 2 == 0 {
        3 * n * n / 2 - n
    } else {
        (3 * n * n - 1) / 2 - n
    }
}

/// The 6-vertex pattern: `a,b,c = 0,1,2`, `x,y,z = 3,4,5`; edge `abc` plus every
/// triple with one vertex of `abc` and two of `xyz`.
pub fn make_f33() -> ThreeGraph {
    let mut edges = vec![[0, 1, 2]];
    for i in 0..3 {
        for (j, k) in (3..6).tuple_combinations() {
            edges.push([i, j, k]);
        }
    }
    ThreeGraph::from_triples(6, edges).expect("valid triples")
}

/// All triples not contained in either part of the balanced bipartition.
pub fn make_bipartite(n: usize) -> ThreeGraph {
    let spec = BipartitionSpec::new(n);
    let edges = (0..n)
        .tuple_combinations()
        .filter(|&(u, v, w)| {
            let in_a = [u, v, w].iter().filter(|&&x| spec.in_a(x)).count();
            in_a == 1 || in_a == 2
        })
        .map(|(u, v, w)| [u, v, w]);
    ThreeGraph::from_triples(n, edges).expect("valid triples")
}

pub fn make_complete(n: usize) -> ThreeGraph {
    ThreeGraph::empty(n).complement()
}

/// Crossing pairs of the balanced bipartition weigh 4, pairs inside a part weigh 2.
pub fn make_m1(n: usize) -> Multigraph {
    let spec = BipartitionSpec::new(n);
    let mut m = Multigraph::new(n, DEFAULT_CAP);
    for (u, v) in (0..n).tuple_combinations() {
        let w = if spec.in_a(u) == spec.in_a(v) { 2 } else { 4 };
        m.set_weight(u, v, w).expect("in range");
    }
    m
}

/// Every pair weighs 3 except the matching `{0,1}, {2,3}, …`, which weighs 4.
pub fn make_m2(n: usize) -> Multigraph {
    let mut m = Multigraph::new(n, DEFAULT_CAP);
    for (u, v) in (0..n).tuple_combinations() {
        let w = if u % 2 == 0 && v == u + 1 { 4 } else { 3 };
        m.set_weight(u, v, w).expect("in range");
    }
    m
}

/// Sizes of the four parts `W, X, Y, Z`, remainders going to `W` first.
pub fn fourpart_sizes(n: usize) -> [usize; 4] {
    std::array::from_fn(|i| n / 4 + usize::from(i < n % 4))
}

/// Four balanced parts `W, X, Y, Z` (consecutive blocks). Pairs inside a part
/// weigh 2, `W–X` and `Y–Z` pairs weigh 4, all other crossing pairs weigh 3.
pub fn make_m3_fourpart(n: usize) -> Multigraph {
    let sizes = fourpart_sizes(n);
    let part: Vec<usize> = (0..4)
        .flat_map(|p| std::iter::repeat_n(p, sizes[p]))
        .collect();
    let mut m = Multigraph::new(n, DEFAULT_CAP);
    for (u, v) in (0..n).tuple_combinations() {
        let (p, q) = (part[u].min(part[v]), part[u].max(part[v]));
        let w = match (p, q) {
            _ if p == q => 2,
            (0, 1) | (2, 3) => 4,
            _ => 3,
        };
        m.set_weight(u, v, w).expect("in range");
    }
    m
}

/// `e(M₁(n))` from the part sizes: `2·C(n,2) + 2·|A|·|B|`.
pub fn m1_edge_count(n: u32) -> i128 {
    let a = (n / 2) as i128;
    let b = (n - n / 2) as i128;
    2 * choose_wide(n, 2) + 2 * a * b
}

/// `e(M₂(n))` from the matching size: `3·C(n,2) + ⌊n/2⌋`.
pub fn m2_edge_count(n: u32) -> i128 {
    3 * choose_wide(n, 2) + (n / 2) as i128
}

pub fn density_b(n: u32) -> Rational {
    Ratio::new(count_b(n), choose_wide(n, 3))
}

/// Constructions are built explicitly up to this size inside [`check_identities`];
/// larger sizes use the structural edge counts.
pub const MATERIALIZE_UP_TO: u32 = 48;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityFailure {
    pub n: u32,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityFamily {
    pub name: &'static str,
    pub checked: usize,
    pub first_failure: Option<IdentityFailure>,
}

impl IdentityFamily {
    fn new(name: &'static str) -> Self {
        IdentityFamily {
            name,
            checked: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, n: u32, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.first_failure.is_none() {
            self.first_failure = Some(IdentityFailure {
                n,
                detail: detail(),
            });
        }
    }

    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub n_max: u32,
    pub families: Vec<IdentityFamily>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.families.iter().all(IdentityFamily::passed)
    }
}

/// Checks, for every `n ≤ n_max`:
/// 1. `b(n) − b(n−4) = m(n−4) + 5(n−4) + 4` (n ≥ 4);
/// 2. `m(n) − m(n−1)` is `3(n−1)+1` for even `n`, `3(n−1)` for odd `n` (n ≥ 1);
/// 3. `e(M₁(n)) = e(M₂(n)) = m(n)`;
/// 4. `d(B(n)) ≥ 3/4` and `d(B(n)) ≤ d(B(n−1))` (n ≥ 4).
pub fn check_identities(n_max: u32) -> IdentityReport {
    let mut bb = IdentityFamily::new("b(n)-b(n-4) = m(n-4)+5(n-4)+4");
    let mut mm = IdentityFamily::new("m(n)-m(n-1) parity step");
    let mut eq = IdentityFamily::new("e(M1(n)) = e(M2(n)) = m(n)");
    let mut dens = IdentityFamily::new("d(B(n)) >= 3/4 and non-increasing");
    let three_quarters = Ratio::new(3, 4);

    for n in 0..=n_max {
        if n >= 4 {
            let lhs = count_b(n) - count_b(n - 4);
            let k = (n - 4) as i128;
            let rhs = count_m(n - 4) + 5 * k + 4;
            bb.record(n, lhs == rhs, || format!("{lhs} != {rhs}"));
        }
        if n >= 1 {
            let lhs = count_m(n) - count_m(n - 1);
            let k = (n - 1) as i128;
            let rhs = if n % 2 == 0 { 3 * k + 1 } else { 3 * k };
            mm.record(n, lhs == rhs, || format!("{lhs} != {rhs}"));
        }

        let (e1, e2) = if n <= MATERIALIZE_UP_TO {
            (
                make_m1(n as usize).total() as i128,
                make_m2(n as usize).total() as i128,
            )
        } else {
            (m1_edge_count(n), m2_edge_count(n))
        };
        let m = count_m(n);
        eq.record(n, e1 == m && e2 == m, || {
            format!("e(M1)={e1}, e(M2)={e2}, m={m}")
        });

        if n >= 4 {
            let (d, prev) = if n <= MATERIALIZE_UP_TO {
                let d = make_bipartite(n as usize).density().expect("n >= 4");
                let prev = make_bipartite(n as usize - 1).density().expect("n >= 3");
                (d, prev)
            } else {
                (density_b(n), density_b(n - 1))
            };
            dens.record(n, d >= three_quarters && d <= prev, || {
                format!("d(B(n))={d}, d(B(n-1))={prev}")
            });
        }
    }

    IdentityReport {
        n_max,
        families: vec![bb, mm, eq, dens],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::binomial;

    #[test]
    fn f33_shape() {
        let f = make_f33();
        assert_eq!((f.n(), f.edge_count()), (6, 10));
        assert_eq!(f.degree(0), 4);
        assert_eq!(f.degree(3), 6);
        assert!(f.has_edge(0, 1, 2));
        assert!(!f.has_edge(3, 4, 5));
    }

    #[test]
    fn bipartite_counts() {
        assert_eq!(make_bipartite(6).edge_count(), 18);
        assert_eq!(make_bipartite(5).edge_count(), 9);
        // 1/2 split of 3 vertices: only {0,1,2} itself, which crosses.
        let b3 = make_bipartite(3);
        assert_eq!(b3.edges().collect::<Vec<_>>(), vec![[0, 1, 2]]);
        assert_eq!(count_b(3), 1);
        assert_eq!(count_b(5), 9);
        assert_eq!(count_b(6), 18);
        assert_eq!(count_b(7), 30);
        assert_eq!(make_bipartite(7).edge_count(), 30);
    }

    #[test]
    fn m_values() {
        assert_eq!(count_m(0), 0);
        assert_eq!(count_m(1), 0);
        assert_eq!(count_m(3), 10);
        assert_eq!(count_m(4), 20);
        assert_eq!(count_m(5), 32);
        assert_eq!(count_m(6), 48);
        assert_eq!(count_m(12), 204);
    }

    #[test]
    fn complete_counts() {
        assert_eq!(make_complete(5).edge_count(), 10);
        assert_eq!(make_complete(2).edge_count(), 0);
        assert_eq!(make_complete(6).edge_count(), 20);
    }

    #[test]
    fn m1_m2_examples() {
        assert_eq!(make_m1(6).total(), 48);
        assert_eq!(make_m1(1).total(), 0);
        assert_eq!(make_m1(5).total(), 32);
        assert_eq!(make_m2(6).total(), 48);
        assert_eq!(make_m2(5).total(), 32);
        assert_eq!(make_m2(2).total(), 4);
        assert_eq!(make_m2(5).weight(3, 4), 3);
    }

    #[test]
    fn fourpart_examples() {
        let m = make_m3_fourpart(4);
        assert_eq!(m.weight(0, 1), 4);
        assert_eq!(m.weight(2, 3), 4);
        for (u, v) in [(0, 2), (0, 3), (1, 2), (1, 3)] {
            assert_eq!(m.weight(u, v), 3);
        }
        assert_eq!(m.total(), 20);
        assert_eq!(fourpart_sizes(7), [2, 2, 2, 1]);
        assert_eq!(fourpart_sizes(9), [3, 2, 2, 2]);
    }

    #[test]
    fn fourpart_edge_count_when_divisible() {
        // With parts of size k: 4·2·C(k,2) within, 2·4·k² for W–X and Y–Z, 4·3·k² otherwise.
        for k in 0..12usize {
            let oracle = 8 * binomial(k, 2) + 8 * k * k + 12 * k * k;
            let n = 4 * k;
            assert_eq!(make_m3_fourpart(n).total() as usize, oracle);
            assert_eq!(oracle as i128, count_m(n as u32));
        }
    }

    #[test]
    fn structural_counts_match_constructions() {
        for n in 0..80u32 {
            assert_eq!(make_m1(n as usize).total() as i128, m1_edge_count(n));
            assert_eq!(make_m2(n as usize).total() as i128, m2_edge_count(n));
        }
    }

    #[test]
    fn identities_small() {
        let r = check_identities(100);
        assert!(r.passed(), "{r:?}");
        assert_eq!(count_m(6) - count_m(5), 16);
        assert_eq!(density_b(6), Ratio::new(9, 10));
        assert!(density_b(6) >= Ratio::new(3, 4));
    }

    #[test]
    fn wide_arithmetic_at_u32_max() {
        let n = u32::MAX;
        assert!(count_b(n) > 0);
        assert!(count_m(n) > 0);
        assert!(count_b(n) < choose_wide(n, 3));
    }
}
