//! Independent oracles and generators shared by the integration tests.
//! Nothing here calls the library's algorithms, only its graph container.
#![allow(dead_code)]

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use signed_balance::graph::{Sign, SignedGraph};

pub type Triples = Vec<(usize, usize, i64)>;

/// Signed graph on up to `max_n` nodes, each pair present with
/// probability about one half and negative about half the time.
pub fn graph_strategy(min_n: usize, max_n: usize) -> impl Strategy<Value = SignedGraph> {
    (min_n..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(0u8..4, pairs).prop_map(move |cells| {
            let mut t = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    match cells[i] {
                        1 => t.push((u, v, 1)),
                        2 => t.push((u, v, -1)),
                        _ => {}
                    }
                    i += 1;
                }
            }
            SignedGraph::from_triples(n, &t).unwrap()
        })
    })
}

pub fn switch_mask(n: usize) -> impl Strategy<Value = Vec<bool>> {
    proptest::collection::vec(any::<bool>(), n)
}

/// Seeded random graph: order in `min_n..=max_n`, density and negative
/// share drawn uniformly.
pub fn seeded_graph(seed: u64, min_n: usize, max_n: usize) -> SignedGraph {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let n = r.gen_range(min_n..=max_n);
    let p: f64 = r.gen_range(0.15..0.8);
    let q: f64 = r.gen_range(0.0..1.0);
    let mut t = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if r.gen::<f64>() < p {
                t.push((u, v, if r.gen::<f64>() < q { -1 } else { 1 }));
            }
        }
    }
    SignedGraph::from_triples(n, &t).unwrap()
}

pub fn triples(g: &SignedGraph) -> Triples {
    g.edges().iter().map(|e| (e.u, e.v, e.sign.value())).collect()
}

/// Minimum frustrated-edge count by trying every coloring.
pub fn brute_frustration(g: &SignedGraph) -> usize {
    let n = g.node_count();
    if n == 0 {
        return 0;
    }
    let t = triples(g);
    (0u64..1 << (n - 1))
        .map(|mask| {
            t.iter()
                .filter(|&&(u, v, s)| {
                    let cu = u > 0 && mask >> (u - 1) & 1 == 1;
                    let cv = v > 0 && mask >> (v - 1) & 1 == 1;
                    (cu == cv) == (s < 0)
                })
                .count()
        })
        .min()
        .unwrap()
}

/// Balanced iff some two-coloring frustrates nothing.
pub fn brute_balanced(g: &SignedGraph) -> bool {
    brute_frustration(g) == 0
}

/// `(balanced, unbalanced)` simple cycles per length, by depth-first search
/// from each cycle's smallest node, oriented so the second node is smaller
/// than the last.
pub fn brute_cycle_census(g: &SignedGraph) -> Vec<(u64, u64)> {
    let n = g.node_count();
    let mut sign = vec![vec![0i64; n]; n];
    for (u, v, s) in triples(g) {
        sign[u][v] = s;
        sign[v][u] = s;
    }
    let mut counts = vec![(0u64, 0u64); n + 1];
    fn walk(
        sign: &[Vec<i64>],
        path: &mut Vec<usize>,
        product: i64,
        counts: &mut [(u64, u64)],
    ) {
        let start = path[0];
        let last = *path.last().unwrap();
        for next in start + 1..sign.len() {
            if sign[last][next] == 0 || path.contains(&next) {
                continue;
            }
            path.push(next);
            let p = product * sign[last][next];
            if path.len() >= 3 && sign[next][start] != 0 && path[1] < next {
                let closed = p * sign[next][start];
                let slot = &mut counts[path.len()];
                if closed > 0 {
                    slot.0 += 1;
                } else {
                    slot.1 += 1;
                }
            }
            walk(sign, path, p, counts);
            path.pop();
        }
    }
    for start in 0..n {
        let mut path = vec![start];
        walk(&sign, &mut path, 1, &mut counts);
    }
    counts
}

pub fn census_totals(c: &[(u64, u64)]) -> (u64, u64) {
    c.iter().fold((0, 0), |(a, b), &(x, y)| (a + x, b + y))
}

/// `(balanced, total)` triangles by checking every node triple.
pub fn brute_triangles(g: &SignedGraph) -> (u64, u64) {
    let n = g.node_count();
    let mut balanced = 0;
    let mut total = 0;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if let (Some(x), Some(y), Some(z)) =
                    (g.sign_between(a, b), g.sign_between(b, c), g.sign_between(a, c))
                {
                    total += 1;
                    if x.times(y).times(z) == Sign::Positive {
                        balanced += 1;
                    }
                }
            }
        }
    }
    (balanced, total)
}

pub fn factorial(n: usize) -> f64 {
    (2..=n).map(|i| i as f64).product()
}

/// Number of `k`-cycles in `K_n`.
pub fn kn_cycles(n: usize, k: usize) -> u128 {
    let mut falling: u128 = 1;
    for i in 0..k {
        falling *= (n - i) as u128;
    }
    falling / (2 * k as u128)
}

/// Number of `k`-cycles of `K_n` through a fixed edge.
pub fn kn_cycles_through_edge(n: usize, k: usize) -> u128 {
    let mut falling: u128 = 1;
    for i in 0..k - 2 {
        falling *= (n - 2 - i) as u128;
    }
    falling
}

pub fn sample_mean_se(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}
