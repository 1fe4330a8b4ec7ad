//! Instance generators: two adversarial families with exponentially many
//! near shortest paths, and seeded random digraphs for the oracle suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenSpec {
    /// Chain of diamond blocks: every s-t path has the same length and cost,
    /// and there are 2^blocks of them.
    TripletChain { blocks: usize },
    /// Chain with parallel arcs of doubling costs: 2^(n-1) paths realizing
    /// every total cost in 1..=2^(n-2), each exactly twice.
    BinaryDoubling { n: usize },
    /// Seeded random digraph with a guaranteed s-t path.
    Random { n: usize, m: usize, cost_max: i64, seed: u64 },
}

pub fn generate(spec: &GenSpec) -> Result<Graph> {
    match *spec {
        GenSpec::TripletChain { blocks } => gen_triplet_chain(blocks),
        GenSpec::BinaryDoubling { n } => gen_binary_doubling(n),
        GenSpec::Random { n, m, cost_max, seed } => gen_random(n, m, cost_max, seed),
    }
}

/// n = 3b+1 vertices; per block, two parallel two-hop branches into a shared
/// joint vertex; all costs 1. Every s-t path has (2n-2)/3 arcs and there are
/// exactly 2^b of them.
pub fn gen_triplet_chain(blocks: usize) -> Result<Graph> {
    if blocks < 1 {
        return Err(Error::InvalidInput("triplet chain needs at least one block".into()));
    }
    let n = 3 * blocks + 1;
    let mut arcs = Vec::with_capacity(4 * blocks);
    for i in 0..blocks {
        let v = 3 * i + 1;
        arcs.push((v, v + 1, 1));
        arcs.push((v, v + 2, 1));
        arcs.push((v + 1, v + 3, 1));
        arcs.push((v + 2, v + 3, 1));
    }
    Graph::new(n, arcs, 1, n)
}

/// Chain v1..vn. The first segment has two parallel cost-1 arcs; segment i
/// (i >= 2) has parallel arcs of cost 0 and 2^(i-2). Path costs cover
/// 1..=2^(n-2), each cost realized by exactly two paths.
pub fn gen_binary_doubling(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidInput("binary doubling needs n >= 3".into()));
    }
    if n > 64 {
        return Err(Error::InvalidInput("binary doubling costs overflow beyond n = 64".into()));
    }
    let mut arcs = Vec::with_capacity(2 * (n - 1));
    arcs.push((1, 2, 1));
    arcs.push((1, 2, 1));
    for i in 2..n {
        arcs.push((i, i + 1, 0));
        arcs.push((i, i + 1, 1i64 << (i - 2)));
    }
    Graph::new(n, arcs, 1, n)
}

/// Seeded random digraph on n vertices with m arcs, costs uniform in
/// 0..=cost_max, s=1, t=n. A random simple spine from s to t is inserted
/// first so an s-t path always exists; parallel arcs may occur.
pub fn gen_random(n: usize, m: usize, cost_max: i64, seed: u64) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidInput("random graph needs n >= 2".into()));
    }
    if m < n - 1 {
        return Err(Error::InvalidInput(format!(
            "random graph with guaranteed connectivity needs m >= n-1 (n={n}, m={m})"
        )));
    }
    if cost_max < 0 {
        return Err(Error::InvalidInput("cost_max must be nonnegative".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut middles: Vec<usize> = (2..n).collect();
    middles.shuffle(&mut rng);
    let spine_len = rng.gen_range(0..=middles.len());
    middles.truncate(spine_len);

    let mut arcs = Vec::with_capacity(m);
    let mut prev = 1;
    for &w in &middles {
        arcs.push((prev, w, rng.gen_range(0..=cost_max)));
        prev = w;
    }
    arcs.push((prev, n, rng.gen_range(0..=cost_max)));
    while arcs.len() < m {
        let tail = rng.gen_range(1..=n);
        let mut head = rng.gen_range(1..=n);
        while head == tail {
            head = rng.gen_range(1..=n);
        }
        arcs.push((tail, head, rng.gen_range(0..=cost_max)));
    }
    Graph::new(n, arcs, 1, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::{enumerate_alg2, enumerate_brute, PathSink};
    use crate::graph::{parse_graph, ArcMask};
    use crate::objective::{universal_value, Lambda};
    use crate::solvers;
    use num_rational::Rational64;

    fn all_path_values(g: &Graph, lam: &Lambda) -> Vec<i64> {
        let mask = ArcMask::new(g);
        let mut values = Vec::new();
        solvers::for_each_simple_path(g, &mask, g.source(), g.sink(), |arcs, _| {
            let p = crate::graph::Path::from_arcs(g, g.source(), arcs.to_vec()).unwrap();
            values.push(universal_value(&p, lam, g).unwrap());
            true
        });
        values
    }

    #[test]
    fn triplet_chain_counts() {
        let g = gen_triplet_chain(3).unwrap();
        assert_eq!(g.vertex_count(), 10);
        assert_eq!(g.arc_count(), 12);
        let mask = ArcMask::new(&g);
        let mut lengths = Vec::new();
        solvers::for_each_simple_path(&g, &mask, 1, 10, |arcs, _| {
            lengths.push(arcs.len());
            true
        });
        assert_eq!(lengths.len(), 8, "2^3 paths");
        assert!(lengths.iter().all(|&l| l == 6), "every path has (2n-2)/3 arcs");
        let sums = all_path_values(&g, &Lambda::Sum);
        assert!(sums.iter().all(|&v| v == 6));

        let small = gen_triplet_chain(1).unwrap();
        assert_eq!(all_path_values(&small, &Lambda::Sum).len(), 2);

        for b in 1..=5 {
            let g = gen_triplet_chain(b).unwrap();
            assert_eq!(g.arc_count(), (4 * g.vertex_count() - 4) / 3);
            assert_eq!(all_path_values(&g, &Lambda::Sum).len(), 1 << b);
        }
    }

    #[test]
    fn triplet_chain_paths_are_equivalent_for_monotone_objectives() {
        let g = gen_triplet_chain(2).unwrap();
        for lam in [Lambda::Sum, Lambda::Bottleneck, Lambda::KMax(2)] {
            let values = all_path_values(&g, &lam);
            assert!(values.windows(2).all(|w| w[0] == w[1]), "{lam:?}");
        }
    }

    #[test]
    fn binary_doubling_value_multiset() {
        let g = gen_binary_doubling(6).unwrap();
        let mut values = all_path_values(&g, &Lambda::Sum);
        assert_eq!(values.len(), 32, "2^(n-1) paths");
        values.sort_unstable();
        let expected: Vec<i64> = (1..=16).flat_map(|v| [v, v]).collect();
        assert_eq!(values, expected, "each cost in 1..=2^(n-2) exactly twice");

        let tiny = gen_binary_doubling(3).unwrap();
        let mut v3 = all_path_values(&tiny, &Lambda::Sum);
        v3.sort_unstable();
        assert_eq!(v3, vec![1, 1, 2, 2]);
    }

    #[test]
    fn binary_doubling_optimum_is_one() {
        for n in 3..=10 {
            let g = gen_binary_doubling(n).unwrap();
            let out = solvers::solve_sum(&g, &ArcMask::new(&g), 1, n).unwrap();
            assert_eq!(out.value, Some(1));
        }
    }

    #[test]
    fn random_is_deterministic_and_connected() {
        let a = gen_random(8, 20, 10, 7).unwrap();
        let b = gen_random(8, 20, 10, 7).unwrap();
        assert_eq!(a.serialize(), b.serialize());
        assert_ne!(a.serialize(), gen_random(8, 20, 10, 8).unwrap().serialize());
        for seed in 0..50 {
            let g = gen_random(8, 20, 10, seed).unwrap();
            let out = solvers::solve_sum(&g, &ArcMask::new(&g), 1, 8).unwrap();
            assert!(out.is_found(), "spine guarantees an s-t path");
        }
        assert!(gen_random(8, 3, 10, 0).is_err());
        let round = parse_graph(&a.serialize()).unwrap();
        assert_eq!(round, a);
    }

    #[test]
    fn thousand_seeds_pass_the_enumeration_oracle() {
        let quarter = Rational64::new(1, 4);
        for seed in 0..1000u64 {
            let n = 2 + (seed % 9) as usize;
            let m = (n - 1).max((seed % 26) as usize);
            let g = gen_random(n, m, 8, seed).unwrap();
            let out = solvers::solve_sum(&g, &ArcMask::new(&g), 1, n).unwrap();
            assert!(out.is_found(), "seed {seed}");
            if seed % 10 == 0 {
                let mut fast = Vec::new();
                let mut sink = PathSink::new(usize::MAX, |p: &crate::graph::Path, v| {
                    fast.push((p.arc_ids().to_vec(), v));
                });
                enumerate_alg2(&g, &Lambda::Sum, quarter, &mut sink).unwrap();
                drop(sink);
                let mut slow = Vec::new();
                let mut sink = PathSink::new(usize::MAX, |p: &crate::graph::Path, v| {
                    slow.push((p.arc_ids().to_vec(), v));
                });
                enumerate_brute(&g, &Lambda::Sum, quarter, &mut sink).unwrap();
                drop(sink);
                fast.sort();
                slow.sort();
                assert_eq!(fast, slow, "seed {seed}");
            }
        }
    }
}
