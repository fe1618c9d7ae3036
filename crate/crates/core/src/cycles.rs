//! Simple-cycle census and the cycle-based balance measures.
//!
//! Cycles are enumerated by depth-first path extension from an anchor node.
//! A cycle is emitted only from its smallest node, and only in the direction
//! where the second node is smaller than the last, so each undirected cycle
//! is seen exactly once.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Sign, SignedGraph};

/// Default cap on path extensions during enumeration.
pub const DEFAULT_CENSUS_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("cycle census infeasible: more than {budget} path extensions needed")]
    BudgetExceeded { budget: u64 },
    #[error("max cycle length {max_len} exceeds node count {n}")]
    MaxLenTooLarge { max_len: usize, n: usize },
    #[error("cycle catalog supports at most {limit} cycles, graph has more")]
    CatalogTooLarge { limit: usize },
}

/// Weighting of cycle lengths in the weighted degree of balance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum WeightFunction {
    /// `f(k) = 1/k`
    Reciprocal,
    /// `f(k) = 1/k!`
    InverseFactorial,
    /// `f(k) = 1`
    Constant,
}

impl WeightFunction {
    pub fn weight(self, k: usize) -> f64 {
        match self {
            WeightFunction::Reciprocal => 1.0 / k as f64,
            WeightFunction::InverseFactorial => 1.0 / (2..=k).map(|i| i as f64).product::<f64>(),
            WeightFunction::Constant => 1.0,
        }
    }
}

/// Balanced and unbalanced simple-cycle counts, indexed by cycle length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleCensus {
    positive: Vec<u64>,
    negative: Vec<u64>,
}

impl CycleCensus {
    pub fn new(max_len: usize) -> Self {
        CycleCensus {
            positive: vec![0; max_len + 1],
            negative: vec![0; max_len + 1],
        }
    }

    /// Builds a census from explicit `(O_k^+, O_k^-)` pairs starting at `k = 3`.
    pub fn from_counts(counts: &[(u64, u64)]) -> Self {
        let mut c = CycleCensus::new(counts.len() + 2);
        for (i, &(p, q)) in counts.iter().enumerate() {
            c.positive[i + 3] = p;
            c.negative[i + 3] = q;
        }
        c
    }

    pub fn max_len(&self) -> usize {
        self.positive.len() - 1
    }

    fn record(&mut self, len: usize, negative: bool) {
        if negative {
            self.negative[len] += 1;
        } else {
            self.positive[len] += 1;
        }
    }

    /// `O_k^+`
    pub fn balanced(&self, k: usize) -> u64 {
        self.positive.get(k).copied().unwrap_or(0)
    }

    /// `O_k^-`
    pub fn unbalanced(&self, k: usize) -> u64 {
        self.negative.get(k).copied().unwrap_or(0)
    }

    /// `O_k`
    pub fn total(&self, k: usize) -> u64 {
        self.balanced(k) + self.unbalanced(k)
    }

    pub fn total_cycles(&self) -> u64 {
        (3..=self.max_len()).map(|k| self.total(k)).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.total_cycles() == 0
    }

    /// Lengths with at least one cycle.
    pub fn lengths(&self) -> impl Iterator<Item = usize> + '_ {
        (3..=self.max_len()).filter(|&k| self.total(k) > 0)
    }

    /// Fraction of balanced cycles; 1 when there are none.
    pub fn degree_of_balance(&self) -> f64 {
        self.weighted_degree_of_balance(WeightFunction::Constant)
    }

    /// Length-weighted fraction of balanced cycles; 1 when there are none.
    pub fn weighted_degree_of_balance(&self, f: WeightFunction) -> f64 {
        let mut num = 0.0;
        let mut den = 0.0;
        for k in 3..=self.max_len() {
            let w = f.weight(k);
            num += w * self.balanced(k) as f64;
            den += w * self.total(k) as f64;
        }
        if den == 0.0 {
            1.0
        } else {
            num / den
        }
    }

    /// `O_k^+ / O_k`; 1 when there are no `k`-cycles.
    pub fn relative_k_balance(&self, k: usize) -> f64 {
        let total = self.total(k);
        if total == 0 {
            1.0
        } else {
            self.balanced(k) as f64 / total as f64
        }
    }

    /// Adds the counts of `other` (the census of a disjoint union).
    pub fn merged(&self, other: &CycleCensus) -> CycleCensus {
        let len = self.max_len().max(other.max_len());
        let mut c = CycleCensus::new(len);
        for k in 0..=len {
            c.positive[k] = self.balanced(k) + other.balanced(k);
            c.negative[k] = self.unbalanced(k) + other.unbalanced(k);
        }
        c
    }
}

struct Walker<'g, F> {
    g: &'g SignedGraph,
    max_len: usize,
    budget: u64,
    spent: u64,
    on_path: Vec<bool>,
    path_nodes: Vec<usize>,
    path_edges: Vec<usize>,
    visit: F,
}

impl<'g, F> Walker<'g, F>
where
    F: FnMut(&[usize], bool),
{
    fn extend(&mut self, start: usize, u: usize, negative: bool) -> Result<(), CensusError> {
        let depth = self.path_nodes.len();
        for &(w, id) in self.g.neighbors(u) {
            let edge_negative = self.g.edge(id).sign.is_negative();
            if w == start {
                if depth >= 3 && self.path_nodes[1] < u {
                    self.path_edges.push(id);
                    (self.visit)(&self.path_edges, negative ^ edge_negative);
                    self.path_edges.pop();
                }
                continue;
            }
            if w < start || self.on_path[w] || depth >= self.max_len {
                continue;
            }
            self.spent += 1;
            if self.spent > self.budget {
                return Err(CensusError::BudgetExceeded {
                    budget: self.budget,
                });
            }
            self.on_path[w] = true;
            self.path_nodes.push(w);
            self.path_edges.push(id);
            self.extend(start, w, negative ^ edge_negative)?;
            self.path_edges.pop();
            self.path_nodes.pop();
            self.on_path[w] = false;
        }
        Ok(())
    }
}

/// Calls `visit(edge_ids, is_unbalanced)` once per simple cycle of length
/// `3..=max_len`.
pub fn for_each_cycle<F>(
    g: &SignedGraph,
    max_len: usize,
    budget: u64,
    visit: F,
) -> Result<(), CensusError>
where
    F: FnMut(&[usize], bool),
{
    let n = g.node_count();
    if max_len > n.max(2) {
        return Err(CensusError::MaxLenTooLarge { max_len, n });
    }
    let mut walker = Walker {
        g,
        max_len,
        budget,
        spent: 0,
        on_path: vec![false; n],
        path_nodes: Vec::with_capacity(max_len),
        path_edges: Vec::with_capacity(max_len),
        visit,
    };
    for start in 0..n {
        walker.on_path[start] = true;
        walker.path_nodes.push(start);
        walker.extend(start, start, false)?;
        walker.path_nodes.pop();
        walker.on_path[start] = false;
    }
    Ok(())
}

/// Exact census of simple cycles up to `max_len` (or `n` when `None`).
pub fn cycle_census(
    g: &SignedGraph,
    max_len: Option<usize>,
    budget: u64,
) -> Result<CycleCensus, CensusError> {
    let max_len = max_len.unwrap_or(g.node_count());
    let mut census = CycleCensus::new(max_len.max(2));
    for_each_cycle(g, max_len, budget, |edges, negative| {
        census.record(edges.len(), negative)
    })?;
    Ok(census)
}

/// The simple cycles of a fixed topology, stored as edge bitmasks so the
/// census can be recomputed quickly for many sign assignments.
#[derive(Debug, Clone)]
pub struct CycleCatalog {
    words: usize,
    max_len: usize,
    lengths: Vec<u8>,
    masks: Vec<u64>,
}

impl CycleCatalog {
    /// Largest number of stored cycles.
    pub const LIMIT: usize = 20_000_000;

    pub fn enumerate(
        g: &SignedGraph,
        max_len: Option<usize>,
        budget: u64,
    ) -> Result<Self, CensusError> {
        let max_len = max_len.unwrap_or(g.node_count());
        let words = g.edge_count().div_ceil(64).max(1);
        let mut lengths = Vec::new();
        let mut masks = Vec::new();
        let mut overflow = false;
        for_each_cycle(g, max_len, budget, |edges, _| {
            if lengths.len() >= Self::LIMIT {
                overflow = true;
                return;
            }
            lengths.push(edges.len() as u8);
            let base = masks.len();
            masks.resize(base + words, 0u64);
            for &id in edges {
                masks[base + id / 64] |= 1u64 << (id % 64);
            }
        })?;
        if overflow {
            return Err(CensusError::CatalogTooLarge { limit: Self::LIMIT });
        }
        Ok(CycleCatalog {
            words,
            max_len: max_len.max(2),
            lengths,
            masks,
        })
    }

    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    /// Census for the topology carrying `signs` (in edge order).
    pub fn census(&self, signs: &[Sign]) -> CycleCensus {
        let mut negative = vec![0u64; self.words];
        for (id, s) in signs.iter().enumerate() {
            if s.is_negative() {
                negative[id / 64] |= 1u64 << (id % 64);
            }
        }
        let mut census = CycleCensus::new(self.max_len);
        for (i, &len) in self.lengths.iter().enumerate() {
            let mask = &self.masks[i * self.words..(i + 1) * self.words];
            let parity = mask
                .iter()
                .zip(&negative)
                .map(|(a, b)| (a & b).count_ones())
                .sum::<u32>()
                & 1;
            census.record(len as usize, parity == 1);
        }
        census
    }
}

/// `(Tr(A³), Tr(|A|³))`, computed by closed-walk counting over triangles.
pub fn cube_traces(g: &SignedGraph) -> (i64, i64) {
    let mut signed = 0i64;
    let mut unsigned = 0i64;
    for e in g.edges() {
        let (small, large) = if g.degree(e.u) <= g.degree(e.v) {
            (e.u, e.v)
        } else {
            (e.v, e.u)
        };
        for &(w, id) in g.neighbors(small) {
            if w == large {
                continue;
            }
            if let Some(third) = g.sign_between(w, large) {
                let product = e.sign.times(g.edge(id).sign).times(third);
                signed += product.value();
                unsigned += 1;
            }
        }
    }
    // each triangle is met once per edge, and each closed 3-walk is one of
    // two directions
    (2 * signed, 2 * unsigned)
}

/// Triangle index `(Tr(A³) + Tr(|A|³)) / (2 Tr(|A|³))`; 1 for triangle-free graphs.
pub fn triangle_index_trace(g: &SignedGraph) -> f64 {
    let (signed, unsigned) = cube_traces(g);
    if unsigned == 0 {
        1.0
    } else {
        (signed + unsigned) as f64 / (2 * unsigned) as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Sign;

    fn census(g: &SignedGraph) -> CycleCensus {
        cycle_census(g, None, DEFAULT_CENSUS_BUDGET).unwrap()
    }

    fn kna(n: usize) -> SignedGraph {
        let edges = (0..n).flat_map(|u| {
            (u + 1..n).map(move |v| {
                let s = if (u, v) == (0, 1) {
                    Sign::Negative
                } else {
                    Sign::Positive
                };
                (u, v, s)
            })
        });
        SignedGraph::new(n, edges).unwrap()
    }

    #[test]
    fn k4_counts() {
        let c = census(&SignedGraph::complete(4, Sign::Positive));
        assert_eq!(c.total(3), 4);
        assert_eq!(c.total(4), 3);
        assert_eq!(c.total_cycles(), 7);
        let a = census(&kna(4));
        // 2 triangles and 2 quadrilaterals use the negative edge (n-2)!/(n-k)!
        assert_eq!(a.unbalanced(3), 2);
        assert_eq!(a.unbalanced(4), 2);
        assert!((a.degree_of_balance() - 3.0 / 7.0).abs() < 1e-15);
        assert_eq!(a.relative_k_balance(3), 0.5);
    }

    #[test]
    fn acyclic_and_missing_lengths_default_to_one() {
        let path = SignedGraph::from_triples(4, &[(0, 1, -1), (1, 2, 1), (2, 3, -1)]).unwrap();
        let c = census(&path);
        assert!(c.is_empty());
        assert_eq!(c.degree_of_balance(), 1.0);
        assert_eq!(c.weighted_degree_of_balance(WeightFunction::Reciprocal), 1.0);
        let c4 = census(&SignedGraph::cycle(4, 1));
        assert_eq!(c4.relative_k_balance(5), 1.0);
        assert_eq!(c4.relative_k_balance(4), 0.0);
    }

    #[test]
    fn weights() {
        let c3 = census(&SignedGraph::complete(3, Sign::Negative));
        assert_eq!(c3.weighted_degree_of_balance(WeightFunction::Reciprocal), 0.0);
        let a = census(&kna(5));
        assert_eq!(
            a.weighted_degree_of_balance(WeightFunction::Constant),
            a.degree_of_balance()
        );
        assert_eq!(WeightFunction::InverseFactorial.weight(4), 1.0 / 24.0);
        assert_eq!(WeightFunction::Reciprocal.weight(4), 0.25);
    }

    #[test]
    fn budget_overflow_is_an_error() {
        let g = SignedGraph::complete(8, Sign::Positive);
        assert_eq!(
            cycle_census(&g, None, 100),
            Err(CensusError::BudgetExceeded { budget: 100 })
        );
        assert!(matches!(
            cycle_census(&g, Some(9), 100),
            Err(CensusError::MaxLenTooLarge { .. })
        ));
    }

    #[test]
    fn max_len_truncates_lengths() {
        let g = SignedGraph::complete(6, Sign::Positive);
        let c = cycle_census(&g, Some(4), DEFAULT_CENSUS_BUDGET).unwrap();
        assert_eq!(c.total(3), 20);
        assert_eq!(c.total(4), 45);
        assert_eq!(c.total(5), 0);
    }

    #[test]
    fn catalog_matches_direct_census() {
        let g = kna(6);
        let catalog = CycleCatalog::enumerate(&g, None, DEFAULT_CENSUS_BUDGET).unwrap();
        assert_eq!(catalog.census(&g.signs()), census(&g));
        let flipped: Vec<Sign> = g.signs().into_iter().map(Sign::flipped).collect();
        assert_eq!(catalog.census(&flipped), census(&g.with_signs(&flipped)));
    }

    #[test]
    fn triangle_index_examples() {
        assert_eq!(triangle_index_trace(&SignedGraph::cycle(3, 1)), 0.0);
        assert_eq!(cube_traces(&SignedGraph::cycle(3, 1)), (-6, 6));
        assert_eq!(
            triangle_index_trace(&SignedGraph::complete(4, Sign::Positive)),
            1.0
        );
        assert_eq!(triangle_index_trace(&SignedGraph::cycle(5, 1)), 1.0);
    }
}
