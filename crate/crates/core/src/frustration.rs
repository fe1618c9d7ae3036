//! Frustration index `L(G)`: exact branch-and-bound, switching-descent
//! heuristic, and the normalized measures built on it.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::graph::SignedGraph;

/// Default cap on branch-and-bound search nodes.
pub const DEFAULT_BNB_BUDGET: u64 = 50_000_000;

const INCUMBENT_SEED: u64 = 0x5eed_f00d;
const INCUMBENT_RESTARTS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrustrationError {
    #[error("measure undefined on a graph without edges")]
    EmptyGraph,
    #[error("graph too small for F′: denominator is {denominator}")]
    TooSmallForModified { denominator: i64 },
    #[error("balanced transformation needs an exact frustration result")]
    Inexact,
}

/// Outcome of a frustration computation. `coloring[v] == false` is "white".
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrustrationResult {
    pub l_value: usize,
    pub coloring: Vec<bool>,
    /// Edge ids frustrated under `coloring`.
    pub estar: Vec<usize>,
    pub exact: bool,
    pub lower_bound: usize,
    pub upper_bound: usize,
}

/// An edge is frustrated when it is positive across colors or negative within one.
pub fn frustrated_edges(g: &SignedGraph, coloring: &[bool]) -> Vec<usize> {
    g.edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| (coloring[e.u] != coloring[e.v]) != e.sign.is_negative())
        .map(|(id, _)| id)
        .collect()
}

pub fn frustration_count(g: &SignedGraph, coloring: &[bool]) -> usize {
    frustrated_edges(g, coloring).len()
}

/// Greedy packing of edge-disjoint unbalanced triangles; a lower bound on `L`.
pub fn unbalanced_triangle_packing(g: &SignedGraph) -> usize {
    let mut used = vec![false; g.edge_count()];
    let mut packed = 0;
    for (id, e) in g.edges().iter().enumerate() {
        if used[id] {
            continue;
        }
        for &(w, a) in g.neighbors(e.u) {
            if w == e.v || used[id] || used[a] {
                continue;
            }
            let Some(b) = g.edge_id(e.v, w) else { continue };
            if used[b] {
                continue;
            }
            let negatives = [id, a, b]
                .iter()
                .filter(|&&x| g.edge(x).sign.is_negative())
                .count();
            if negatives % 2 == 1 {
                used[id] = true;
                used[a] = true;
                used[b] = true;
                packed += 1;
            }
        }
    }
    packed
}

fn descend(g: &SignedGraph, coloring: &mut [bool]) {
    let n = g.node_count();
    let mut frustrated = vec![0usize; n];
    for id in frustrated_edges(g, coloring) {
        let e = g.edge(id);
        frustrated[e.u] += 1;
        frustrated[e.v] += 1;
    }
    let mut queue: VecDeque<usize> = (0..n).collect();
    let mut queued = vec![true; n];
    while let Some(v) = queue.pop_front() {
        queued[v] = false;
        let degree = g.degree(v);
        if 2 * frustrated[v] <= degree {
            continue;
        }
        for &(w, id) in g.neighbors(v) {
            let was = (coloring[v] != coloring[w]) != g.edge(id).sign.is_negative();
            if was {
                frustrated[w] -= 1;
            } else {
                frustrated[w] += 1;
            }
            if !queued[w] {
                queued[w] = true;
                queue.push_back(w);
            }
        }
        coloring[v] = !coloring[v];
        frustrated[v] = degree - frustrated[v];
    }
}

fn finish(g: &SignedGraph, mut coloring: Vec<bool>, exact: bool, lower_bound: usize) -> FrustrationResult {
    // canonical orientation: the smallest node of each component is white
    let decomposition = g.components();
    for c in &decomposition.components {
        if coloring[c.nodes[0]] {
            for &v in &c.nodes {
                coloring[v] = !coloring[v];
            }
        }
    }
    let estar = frustrated_edges(g, &coloring);
    let l_value = estar.len();
    FrustrationResult {
        l_value,
        coloring,
        estar,
        exact,
        lower_bound: if exact { l_value } else { lower_bound.min(l_value) },
        upper_bound: l_value,
    }
}

/// Switching descent from `restarts` starting colorings (the first all white).
/// Each descent flips any node with more frustrated than satisfied incident
/// edges until none is left; the best coloring wins.
pub fn frustration_heuristic(g: &SignedGraph, seed: u64, restarts: usize) -> FrustrationResult {
    let n = g.node_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(usize, Vec<bool>)> = None;
    for r in 0..restarts.max(1) {
        let mut coloring: Vec<bool> = if r == 0 {
            vec![false; n]
        } else {
            (0..n).map(|_| rng.gen()).collect()
        };
        descend(g, &mut coloring);
        let value = frustration_count(g, &coloring);
        if best.as_ref().map_or(true, |(b, _)| value < *b) {
            best = Some((value, coloring));
        }
    }
    let (value, coloring) = best.expect("at least one restart");
    let bound = unbalanced_triangle_packing(g);
    finish(g, coloring, value == bound, bound)
}

struct Search {
    order: Vec<usize>,
    later: Vec<Vec<(usize, bool)>>,
    color: Vec<bool>,
    counts: Vec<[usize; 2]>,
    cost: usize,
    slack: usize,
    best: usize,
    best_color: Vec<bool>,
    visits: u64,
    budget: u64,
    exhausted: bool,
}

impl Search {
    fn new(g: &SignedGraph, nodes: &[usize], incumbent: &[bool], budget: u64) -> Search {
        let root = *nodes
            .iter()
            .max_by_key(|&&v| (g.degree(v), std::cmp::Reverse(v)))
            .expect("component is non-empty");
        let mut position = vec![usize::MAX; g.node_count()];
        let mut order = Vec::with_capacity(nodes.len());
        let mut queue = VecDeque::from([root]);
        position[root] = 0;
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &(w, _) in g.neighbors(u) {
                if position[w] == usize::MAX {
                    position[w] = order.len() + queue.len();
                    queue.push_back(w);
                }
            }
        }
        let later = order
            .iter()
            .enumerate()
            .map(|(i, &u)| {
                g.neighbors(u)
                    .iter()
                    .filter(|&&(w, _)| position[w] > i)
                    .map(|&(w, id)| (position[w], g.edge(id).sign.is_negative()))
                    .collect()
            })
            .collect();
        let mut best_color: Vec<bool> = order.iter().map(|&v| incumbent[v]).collect();
        if best_color[0] {
            best_color.iter_mut().for_each(|c| *c = !*c);
        }
        let best = g
            .edges()
            .iter()
            .filter(|e| position[e.u] != usize::MAX)
            .filter(|e| {
                (best_color[position[e.u]] != best_color[position[e.v]]) != e.sign.is_negative()
            })
            .count();
        Search {
            later,
            color: vec![false; order.len()],
            counts: vec![[0, 0]; order.len()],
            order,
            cost: 0,
            slack: 0,
            best,
            best_color,
            visits: 0,
            budget,
            exhausted: false,
        }
    }

    fn assign(&mut self, i: usize, c: bool) {
        for k in 0..self.later[i].len() {
            let (j, negative) = self.later[i][k];
            let before = self.counts[j][0].min(self.counts[j][1]);
            let slot = usize::from(if negative { c } else { !c });
            self.counts[j][slot] += 1;
            let after = self.counts[j][0].min(self.counts[j][1]);
            self.slack = self.slack + after - before;
        }
    }

    fn unassign(&mut self, i: usize, c: bool) {
        for k in 0..self.later[i].len() {
            let (j, negative) = self.later[i][k];
            let before = self.counts[j][0].min(self.counts[j][1]);
            let slot = usize::from(if negative { c } else { !c });
            self.counts[j][slot] -= 1;
            let after = self.counts[j][0].min(self.counts[j][1]);
            self.slack = self.slack + after - before;
        }
    }

    fn run(&mut self, i: usize) {
        if self.exhausted {
            return;
        }
        if i == self.order.len() {
            if self.cost < self.best {
                self.best = self.cost;
                self.best_color.copy_from_slice(&self.color);
            }
            return;
        }
        self.visits += 1;
        if self.visits > self.budget {
            self.exhausted = true;
            return;
        }
        let [white, black] = self.counts[i];
        let first = black < white;
        let choices: &[bool] = if i == 0 { &[false] } else if first { &[true, false] } else { &[false, true] };
        let own = white.min(black);
        for &c in choices {
            let add = self.counts[i][usize::from(c)];
            self.cost += add;
            self.slack -= own;
            self.assign(i, c);
            if self.cost + self.slack < self.best {
                self.color[i] = c;
                self.run(i + 1);
            }
            self.unassign(i, c);
            self.slack += own;
            self.cost -= add;
        }
    }
}

/// Exact frustration index by branch-and-bound over 2-colorings, one
/// connected component at a time. When the node budget runs out the best
/// coloring found is returned with `exact = false` and a lower bound.
pub fn frustration_exact(g: &SignedGraph, budget: u64) -> FrustrationResult {
    let incumbent = frustration_heuristic(g, INCUMBENT_SEED, INCUMBENT_RESTARTS);
    let mut coloring = incumbent.coloring.clone();
    let mut exact = true;
    let mut lower = 0;
    let mut remaining = budget;
    for c in &g.components().components {
        if c.edge_count == 0 {
            continue;
        }
        let mut search = Search::new(g, &c.nodes, &incumbent.coloring, remaining);
        search.run(0);
        remaining = remaining.saturating_sub(search.visits);
        for (&v, &col) in search.order.iter().zip(&search.best_color) {
            coloring[v] = col;
        }
        if search.exhausted {
            exact = false;
            lower += unbalanced_triangle_packing(&g.induced_subgraph(&c.nodes));
        } else {
            lower += search.best;
        }
    }
    finish(g, coloring, exact, lower)
}

/// `F = 1 - L / (m/2)`.
pub fn normalized_frustration(g: &SignedGraph, r: &FrustrationResult) -> Result<f64, FrustrationError> {
    let m = g.edge_count();
    if m == 0 {
        return Err(FrustrationError::EmptyGraph);
    }
    Ok(1.0 - 2.0 * r.l_value as f64 / m as f64)
}

/// `⌊m/2 - (n-1)/4⌋`, evaluated in integers.
pub fn modified_denominator(n: usize, m: usize) -> i64 {
    (2 * m as i64 - n as i64 + 1).div_euclid(4)
}

/// `F′ = 1 - L / ⌊m/2 - (n-1)/4⌋`. Not clamped.
pub fn modified_normalized_frustration(
    g: &SignedGraph,
    r: &FrustrationResult,
) -> Result<f64, FrustrationError> {
    if g.edge_count() == 0 {
        return Err(FrustrationError::EmptyGraph);
    }
    let denominator = modified_denominator(g.node_count(), g.edge_count());
    if denominator <= 0 {
        return Err(FrustrationError::TooSmallForModified { denominator });
    }
    Ok(1.0 - r.l_value as f64 / denominator as f64)
}

/// `X = 1 - L / m⁻`, and 1 when there are no negative edges.
pub fn x_measure(g: &SignedGraph, r: &FrustrationResult) -> f64 {
    let negatives = g.negative_count();
    if negatives == 0 {
        return 1.0;
    }
    1.0 - r.l_value as f64 / negatives as f64
}

/// The graph with its frustrated edges deleted.
pub fn balanced_transformation(
    g: &SignedGraph,
    r: &FrustrationResult,
) -> Result<SignedGraph, FrustrationError> {
    if !r.exact {
        return Err(FrustrationError::Inexact);
    }
    Ok(g.without_edges(&r.estar))
}

/// True when deleting `estar` balances `g` and restoring any single edge
/// breaks that balance again.
pub fn is_deletion_minimal(g: &SignedGraph, estar: &[usize]) -> bool {
    if !g.without_edges(estar).is_balanced() {
        return false;
    }
    (0..estar.len()).all(|skip| {
        let rest: Vec<usize> = estar
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &id)| id)
            .collect();
        !g.without_edges(&rest).is_balanced()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Sign;

    fn ka(n: usize) -> SignedGraph {
        let mut signs = vec![Sign::Positive; n * (n - 1) / 2];
        signs[0] = Sign::Negative;
        SignedGraph::complete(n, Sign::Positive).with_signs(&signs)
    }

    #[test]
    fn complete_graphs() {
        for n in 3..9 {
            let r = frustration_exact(&ka(n), DEFAULT_BNB_BUDGET);
            assert!(r.exact);
            assert_eq!(r.l_value, 1);
            let c = frustration_exact(&SignedGraph::complete(n, Sign::Negative), DEFAULT_BNB_BUDGET);
            let expected = if n % 2 == 0 { (n * n - 2 * n) / 4 } else { (n * n - 2 * n + 1) / 4 };
            assert_eq!(c.l_value, expected, "n = {n}");
        }
    }

    #[test]
    fn normalized_values() {
        let k4a = ka(4);
        let r = frustration_exact(&k4a, DEFAULT_BNB_BUDGET);
        assert!((normalized_frustration(&k4a, &r).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!((modified_normalized_frustration(&k4a, &r).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(x_measure(&k4a, &r), 0.0);
        let k4c = SignedGraph::complete(4, Sign::Negative);
        let r = frustration_exact(&k4c, DEFAULT_BNB_BUDGET);
        assert!((x_measure(&k4c, &r) - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(modified_normalized_frustration(&k4c, &r).unwrap(), 0.0);
        let k5c = SignedGraph::complete(5, Sign::Negative);
        let r = frustration_exact(&k5c, DEFAULT_BNB_BUDGET);
        assert!((normalized_frustration(&k5c, &r).unwrap() - 0.2).abs() < 1e-15);
    }

    #[test]
    fn degenerate_inputs() {
        let empty = SignedGraph::empty(3);
        let r = frustration_exact(&empty, DEFAULT_BNB_BUDGET);
        assert_eq!(r.l_value, 0);
        assert_eq!(normalized_frustration(&empty, &r), Err(FrustrationError::EmptyGraph));
        let edge = SignedGraph::from_triples(3, &[(0, 1, -1)]).unwrap();
        assert_eq!(
            modified_normalized_frustration(&edge, &frustration_exact(&edge, 10)),
            Err(FrustrationError::TooSmallForModified { denominator: 0 })
        );
        assert_eq!(x_measure(&SignedGraph::cycle(4, 0), &frustration_exact(&SignedGraph::cycle(4, 0), 10)), 1.0);
    }

    #[test]
    fn transformation_balances() {
        let g = SignedGraph::cycle(3, 1);
        let r = frustration_exact(&g, DEFAULT_BNB_BUDGET);
        let t = balanced_transformation(&g, &r).unwrap();
        assert_eq!(t.edge_count(), 2);
        assert!(t.is_balanced());
        assert!(is_deletion_minimal(&g, &r.estar));
        let mut inexact = r.clone();
        inexact.exact = false;
        assert_eq!(balanced_transformation(&g, &inexact), Err(FrustrationError::Inexact));
    }

    #[test]
    fn canonical_coloring() {
        let g = SignedGraph::cycle(5, 2).disjoint_union(&SignedGraph::complete(4, Sign::Negative));
        let r = frustration_exact(&g, DEFAULT_BNB_BUDGET);
        assert!(!r.coloring[0]);
        assert!(!r.coloring[5]);
        assert_eq!(r.l_value, 2);
    }

    #[test]
    fn budget_exhaustion_reports_bounds() {
        let g = SignedGraph::complete(12, Sign::Negative);
        let r = frustration_exact(&g, 5);
        assert!(!r.exact);
        assert!(r.lower_bound <= 30 && 30 <= r.upper_bound);
        assert_eq!(r.l_value, r.estar.len());
    }

    #[test]
    fn triangle_packing() {
        assert_eq!(unbalanced_triangle_packing(&SignedGraph::cycle(3, 1)), 1);
        assert_eq!(unbalanced_triangle_packing(&SignedGraph::cycle(3, 2)), 0);
        assert_eq!(unbalanced_triangle_packing(&SignedGraph::complete(4, Sign::Negative)), 1);
    }
}
