use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use f33_core::constructions::{count_b, count_m, make_bipartite, make_m1, BipartitionSpec};
use f33_core::lemma::{sample_feasible, verify_feasible, LemmaSearchConfig};
use f33_core::{build_link, contains_f33, SearchMode, ThreeGraph};

#[test]
fn bipartite_edge_counts() {
    for n in 0..=200usize {
        assert_eq!(
            make_bipartite(n).edge_count() as i128,
            count_b(n as u32),
            "n={n}"
        );
    }
}

#[test]
fn bipartite_has_no_edge_inside_a_part() {
    for n in 0..=60 {
        let spec = BipartitionSpec::new(n);
        assert!(spec.size_a + spec.size_b == n && spec.size_a.abs_diff(spec.size_b) <= 1);
        let g = make_bipartite(n);
        for e in g.edges() {
            let in_a = e.iter().filter(|&&v| spec.in_a(v)).count();
            assert!(in_a == 1 || in_a == 2, "n={n}, {e:?}");
        }
    }
}

#[test]
fn link_of_two_per_part_is_m1() {
    for n in 8..=16 {
        let a = n / 2;
        let link = build_link(&make_bipartite(n), &[0, 1, a, a + 1]).unwrap();
        let m = link.multigraph();
        assert_eq!(m.total() as i128, count_m(n as u32 - 4), "n={n}");
        assert!(m.is_isomorphic(&make_m1(n - 4)), "n={n}");
    }
}

/// A K4 on `S` plus a triangle `xyz` in the link with three shared colours is an F33.
#[test]
fn planted_common_colour_triangle_is_detected() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..200 {
        let n = rng.gen_range(7..=11);
        let mut g = ThreeGraph::from_triples(
            n,
            (0..n)
                .tuple_combinations()
                .filter(|_| rng.gen_bool(0.2))
                .map(|(u, v, w)| [u, v, w]),
        )
        .unwrap();
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let s = &order[..4];
        for t in s.iter().copied().combinations(3) {
            g.add_edge([t[0], t[1], t[2]]).unwrap();
        }
        let (x, y, z) = (order[4], order[5], order[6]);
        for &a in &s[..3] {
            for (p, q) in [(x, y), (x, z), (y, z)] {
                g.add_edge([a, p, q]).unwrap();
            }
        }

        let link = build_link(&g, s).unwrap();
        let (t, colors) = link
            .find_common_color_triangle(3)
            .expect("planted triangle");
        let mut six: Vec<usize> = colors.clone();
        six.extend(t.map(|v| link.host_vertex(v)));
        let others: Vec<usize> = (0..n).filter(|v| !six.contains(v)).collect();
        let induced = g.delete_vertices(&others).unwrap();
        assert!(contains_f33(&induced, SearchMode::Deterministic).is_some());
        assert!(contains_f33(&g, SearchMode::Deterministic).is_some());
    }
}

#[test]
fn sampled_multigraphs_respect_the_bound() {
    let n = 12;
    let cfg = LemmaSearchConfig::new(n);
    let mut maximal = 0;
    for m in sample_feasible(n, 1000, 7) {
        assert!(verify_feasible(&m, &cfg));
        assert!(m.total() as i128 <= count_m(n as u32));
        maximal = maximal.max(m.total());
        for (x, y) in (0..n)
            .tuple_combinations()
            .filter(|&(x, y)| m.weight(x, y) == 4)
        {
            let rest = m.delete_vertices(&[x, y]).unwrap();
            assert!(verify_feasible(&rest, &LemmaSearchConfig::new(n - 2)));
            // i(xy) >= 6n - 7 would force a triple over 10
            assert!(m.weighted_incidence(&[x, y]).unwrap() <= 6 * n as u64 - 8);
        }
    }
    assert!(maximal > 150);
}

#[test]
fn sampler_small_cases() {
    assert!(sample_feasible(1, 10, 0).all(|m| m.total() == 0));
    assert!(sample_feasible(5, 500, 3).all(|m| m.total() <= 32));
    let a: Vec<_> = sample_feasible(8, 20, 99).collect();
    let b: Vec<_> = sample_feasible(8, 20, 99).collect();
    assert_eq!(a, b);
}
