//! Immutable undirected signed graphs.
//!
//! A [`SignedGraph`] stores `n` dense node indices and a list of edges, each
//! carrying a sign of `+1` or `-1`. Graphs are never mutated in place; every
//! editing operation returns a fresh copy, so a graph can be shared freely
//! between threads.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop on node {node} in edge ({node}, {node}, {sign})")]
    SelfLoop { node: usize, sign: i64 },
    #[error("duplicate edge ({u}, {v})")]
    DuplicateEdge { u: usize, v: usize },
    #[error("edge ({u}, {v}) references a node outside 0..{n}")]
    NodeOutOfRange { u: usize, v: usize, n: usize },
    #[error("invalid sign {sign} on edge ({u}, {v}); expected +1 or -1")]
    InvalidSign { u: usize, v: usize, sign: i64 },
    #[error("edge ({u}, {v}) does not exist")]
    MissingEdge { u: usize, v: usize },
    #[error("switch mask has length {found}, graph has {expected} nodes")]
    MaskLength { expected: usize, found: usize },
    #[error("label list has {found} entries, graph has {expected} nodes")]
    LabelCount { expected: usize, found: usize },
}

/// Sign of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn from_int(value: i64) -> Option<Sign> {
        match value {
            1 => Some(Sign::Positive),
            -1 => Some(Sign::Negative),
            _ => None,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Negative
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    /// Product of two signs.
    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Positive => f.write_str("+1"),
            Sign::Negative => f.write_str("-1"),
        }
    }
}

/// An undirected edge with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub sign: Sign,
}

impl Edge {
    pub fn endpoints(&self) -> (usize, usize) {
        (self.u, self.v)
    }

    pub fn other(&self, node: usize) -> usize {
        if node == self.u {
            self.v
        } else {
            self.u
        }
    }
}

fn ordered(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Per-node positive, negative and total degrees.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeVector {
    pub positive: Vec<usize>,
    pub negative: Vec<usize>,
}

impl DegreeVector {
    pub fn total(&self, node: usize) -> usize {
        self.positive[node] + self.negative[node]
    }

    pub fn totals(&self) -> Vec<usize> {
        (0..self.positive.len()).map(|i| self.total(i)).collect()
    }
}

/// A node subset `X` used by the switching operation, stored as a mask.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SwitchSet {
    mask: Vec<bool>,
}

impl SwitchSet {
    pub fn from_mask(mask: Vec<bool>) -> Self {
        SwitchSet { mask }
    }

    pub fn empty(n: usize) -> Self {
        SwitchSet { mask: vec![false; n] }
    }

    pub fn all(n: usize) -> Self {
        SwitchSet { mask: vec![true; n] }
    }

    pub fn from_nodes(n: usize, nodes: &[usize]) -> Self {
        let mut mask = vec![false; n];
        for &v in nodes {
            mask[v] = true;
        }
        SwitchSet { mask }
    }

    pub fn len(&self) -> usize {
        self.mask.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mask.is_empty()
    }

    pub fn contains(&self, node: usize) -> bool {
        self.mask[node]
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }
}

/// A connected component: its nodes (ascending) and whether it holds a cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    pub nodes: Vec<usize>,
    pub edge_count: usize,
    pub cyclic: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentDecomposition {
    /// Component id of every node.
    pub component_of: Vec<usize>,
    pub components: Vec<Component>,
}

impl ComponentDecomposition {
    pub fn count(&self) -> usize {
        self.components.len()
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() <= 1
    }

    /// Index of the largest component by node count; ties go to the lowest id.
    pub fn giant(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (i, c) in self.components.iter().enumerate() {
            match best {
                Some(b) if self.components[b].nodes.len() >= c.nodes.len() => {}
                _ => best = Some(i),
            }
        }
        best
    }
}

/// Witness of balance: `side[v]` tells which camp node `v` belongs to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bipartition {
    pub side: Vec<bool>,
}

/// An immutable undirected signed graph on nodes `0..n`.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct SignedGraph {
    n: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(usize, usize)>>,
    index: HashMap<(usize, usize), usize>,
    labels: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct RawGraph {
    n: usize,
    edges: Vec<(usize, usize, i64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl TryFrom<RawGraph> for SignedGraph {
    type Error = GraphError;

    fn try_from(raw: RawGraph) -> Result<Self, Self::Error> {
        let g = SignedGraph::from_triples(raw.n, &raw.edges)?;
        match raw.labels {
            Some(labels) => g.with_labels(labels),
            None => Ok(g),
        }
    }
}

impl From<SignedGraph> for RawGraph {
    fn from(g: SignedGraph) -> Self {
        RawGraph {
            n: g.n,
            edges: g.triples(),
            labels: g.labels,
        }
    }
}

impl PartialEq for SignedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for SignedGraph {}

impl fmt::Debug for SignedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SignedGraph")
            .field("n", &self.n)
            .field("edges", &self.triples())
            .finish()
    }
}

impl SignedGraph {
    /// Builds a graph after validating every edge.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize, Sign)>,
    {
        let mut list = Vec::new();
        let mut index = HashMap::new();
        let mut adjacency = vec![Vec::new(); n];
        for (u, v, sign) in edges {
            if u >= n || v >= n {
                return Err(GraphError::NodeOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop {
                    node: u,
                    sign: sign.value(),
                });
            }
            let (a, b) = ordered(u, v);
            if index.contains_key(&(a, b)) {
                return Err(GraphError::DuplicateEdge { u: a, v: b });
            }
            let id = list.len();
            index.insert((a, b), id);
            adjacency[a].push((b, id));
            adjacency[b].push((a, id));
            list.push(Edge { u: a, v: b, sign });
        }
        Ok(SignedGraph {
            n,
            edges: list,
            adjacency,
            index,
            labels: None,
        })
    }

    /// Builds a graph from `(u, v, sign)` triples with integer signs.
    pub fn from_triples(n: usize, triples: &[(usize, usize, i64)]) -> Result<Self, GraphError> {
        let mut edges = Vec::with_capacity(triples.len());
        for &(u, v, s) in triples {
            let sign = Sign::from_int(s).ok_or(GraphError::InvalidSign { u, v, sign: s })?;
            edges.push((u, v, sign));
        }
        SignedGraph::new(n, edges)
    }

    pub fn empty(n: usize) -> Self {
        SignedGraph::new(n, std::iter::empty()).expect("edgeless graph is valid")
    }

    /// Complete graph on `n` nodes with every edge carrying `sign`.
    pub fn complete(n: usize, sign: Sign) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v, sign)));
        SignedGraph::new(n, edges).expect("complete graph is valid")
    }

    /// Cycle `0 - 1 - ... - (len-1) - 0` whose first `negatives` edges are negative.
    pub fn cycle(len: usize, negatives: usize) -> Self {
        assert!(len >= 3, "a cycle needs at least three nodes");
        let edges = (0..len).map(|i| {
            let sign = if i < negatives {
                Sign::Negative
            } else {
                Sign::Positive
            };
            (i, (i + 1) % len, sign)
        });
        SignedGraph::new(len, edges).expect("cycle is valid")
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, GraphError> {
        if labels.len() != self.n {
            return Err(GraphError::LabelCount {
                expected: self.n,
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Label of a node, falling back to its index.
    pub fn label(&self, node: usize) -> String {
        match &self.labels {
            Some(l) => l[node].clone(),
            None => node.to_string(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn positive_count(&self) -> usize {
        self.edges.len() - self.negative_count()
    }

    pub fn negative_count(&self) -> usize {
        self.edges.iter().filter(|e| e.sign.is_negative()).count()
    }

    /// `(n, m, m⁻)`.
    pub fn triple(&self) -> (usize, usize, usize) {
        (self.n, self.edge_count(), self.negative_count())
    }

    /// `2m / (n(n-1))`, zero for graphs with fewer than two nodes.
    pub fn density(&self) -> f64 {
        if self.n < 2 {
            return 0.0;
        }
        2.0 * self.edge_count() as f64 / (self.n as f64 * (self.n as f64 - 1.0))
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Edge {
        self.edges[id]
    }

    pub fn triples(&self) -> Vec<(usize, usize, i64)> {
        self.edges.iter().map(|e| (e.u, e.v, e.sign.value())).collect()
    }

    /// Neighbours of `node` as `(neighbour, edge id)` pairs.
    pub fn neighbors(&self, node: usize) -> &[(usize, usize)] {
        &self.adjacency[node]
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        self.index.get(&ordered(u, v)).copied()
    }

    pub fn sign_between(&self, u: usize, v: usize) -> Option<Sign> {
        self.edge_id(u, v).map(|id| self.edges[id].sign)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.index.contains_key(&ordered(u, v))
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].len()
    }

    pub fn degrees(&self) -> DegreeVector {
        let mut positive = vec![0; self.n];
        let mut negative = vec![0; self.n];
        for e in &self.edges {
            let slot = if e.sign.is_negative() {
                &mut negative
            } else {
                &mut positive
            };
            slot[e.u] += 1;
            slot[e.v] += 1;
        }
        DegreeVector { positive, negative }
    }

    /// Signed adjacency matrix `A`.
    pub fn signed_adjacency(&self) -> DMatrix<f64> {
        let mut a = DMatrix::zeros(self.n, self.n);
        for e in &self.edges {
            let s = e.sign.value() as f64;
            a[(e.u, e.v)] = s;
            a[(e.v, e.u)] = s;
        }
        a
    }

    /// Unsigned adjacency matrix `|A|`.
    pub fn unsigned_adjacency(&self) -> DMatrix<f64> {
        let mut a = DMatrix::zeros(self.n, self.n);
        for e in &self.edges {
            a[(e.u, e.v)] = 1.0;
            a[(e.v, e.u)] = 1.0;
        }
        a
    }

    /// Signed Laplacian `L = D - A`.
    pub fn signed_laplacian(&self) -> DMatrix<f64> {
        let mut l = -self.signed_adjacency();
        for v in 0..self.n {
            l[(v, v)] = self.degree(v) as f64;
        }
        l
    }

    /// Breadth-first two-camp propagation: returns the camps when every
    /// negative edge crosses between camps and every positive edge stays
    /// inside one, `None` otherwise.
    pub fn bipartition(&self) -> Option<Bipartition> {
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        let mut queue = VecDeque::new();
        for root in 0..self.n {
            if side[root].is_some() {
                continue;
            }
            side[root] = Some(false);
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                let su = side[u].expect("queued nodes are colored");
                for &(w, id) in &self.adjacency[u] {
                    let want = su ^ self.edges[id].sign.is_negative();
                    match side[w] {
                        None => {
                            side[w] = Some(want);
                            queue.push_back(w);
                        }
                        Some(sw) if sw != want => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(Bipartition {
            side: side.into_iter().map(|s| s.unwrap_or(false)).collect(),
        })
    }

    pub fn is_balanced(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Negates every edge with exactly one endpoint in `x`.
    pub fn switch(&self, x: &SwitchSet) -> Result<SignedGraph, GraphError> {
        if x.len() != self.n {
            return Err(GraphError::MaskLength {
                expected: self.n,
                found: x.len(),
            });
        }
        let mut g = self.clone();
        for e in &mut g.edges {
            if x.contains(e.u) != x.contains(e.v) {
                e.sign = e.sign.flipped();
            }
        }
        Ok(g)
    }

    /// Same topology with the given signs, in edge order.
    pub fn with_signs(&self, signs: &[Sign]) -> SignedGraph {
        assert_eq!(signs.len(), self.edges.len(), "one sign per edge");
        let mut g = self.clone();
        for (e, &s) in g.edges.iter_mut().zip(signs) {
            e.sign = s;
        }
        g
    }

    pub fn signs(&self) -> Vec<Sign> {
        self.edges.iter().map(|e| e.sign).collect()
    }

    /// `self ⊕ other`: the nodes of `other` are shifted by `self.n`.
    pub fn disjoint_union(&self, other: &SignedGraph) -> SignedGraph {
        let shift = self.n;
        let edges = self
            .edges
            .iter()
            .map(|e| (e.u, e.v, e.sign))
            .chain(other.edges.iter().map(|e| (e.u + shift, e.v + shift, e.sign)));
        let g = SignedGraph::new(self.n + other.n, edges).expect("union of valid graphs is valid");
        match (&self.labels, &other.labels) {
            (Some(a), Some(b)) => {
                let labels = a.iter().chain(b.iter()).cloned().collect();
                g.with_labels(labels).expect("label counts add up")
            }
            _ => g,
        }
    }

    /// Returns a copy with `remove` deleted and then `add` inserted.
    pub fn edit(
        &self,
        add: &[(usize, usize, Sign)],
        remove: &[(usize, usize)],
    ) -> Result<SignedGraph, GraphError> {
        let mut drop = vec![false; self.edges.len()];
        for &(u, v) in remove {
            let id = self.edge_id(u, v).ok_or(GraphError::MissingEdge { u, v })?;
            drop[id] = true;
        }
        let kept = self
            .edges
            .iter()
            .zip(&drop)
            .filter(|(_, &d)| !d)
            .map(|(e, _)| (e.u, e.v, e.sign));
        let g = SignedGraph::new(self.n, kept.chain(add.iter().copied()))?;
        Ok(self.carry_labels(g))
    }

    /// Copy without the edges whose ids are listed.
    pub fn without_edges(&self, ids: &[usize]) -> SignedGraph {
        let mut drop = vec![false; self.edges.len()];
        for &id in ids {
            drop[id] = true;
        }
        let kept = self
            .edges
            .iter()
            .zip(&drop)
            .filter(|(_, &d)| !d)
            .map(|(e, _)| (e.u, e.v, e.sign));
        let g = SignedGraph::new(self.n, kept).expect("subset of valid edges is valid");
        self.carry_labels(g)
    }

    /// Copy with `extra` fresh nodes appended.
    pub fn with_extra_nodes(&self, extra: usize) -> SignedGraph {
        let edges = self.edges.iter().map(|e| (e.u, e.v, e.sign));
        SignedGraph::new(self.n + extra, edges).expect("adding nodes keeps edges valid")
    }

    fn carry_labels(&self, g: SignedGraph) -> SignedGraph {
        match &self.labels {
            Some(l) => g.with_labels(l.clone()).expect("node count unchanged"),
            None => g,
        }
    }

    /// Subgraph induced by `nodes`, relabelled densely in the given order.
    pub fn induced_subgraph(&self, nodes: &[usize]) -> SignedGraph {
        let mut position = vec![usize::MAX; self.n];
        for (i, &v) in nodes.iter().enumerate() {
            position[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| position[e.u] != usize::MAX && position[e.v] != usize::MAX)
            .map(|e| (position[e.u], position[e.v], e.sign));
        let g = SignedGraph::new(nodes.len(), edges).expect("induced edges are valid");
        match &self.labels {
            Some(l) => g
                .with_labels(nodes.iter().map(|&v| l[v].clone()).collect())
                .expect("one label per node"),
            None => g,
        }
    }

    pub fn components(&self) -> ComponentDecomposition {
        let mut component_of = vec![usize::MAX; self.n];
        let mut components = Vec::new();
        let mut stack = Vec::new();
        for root in 0..self.n {
            if component_of[root] != usize::MAX {
                continue;
            }
            let id = components.len();
            component_of[root] = id;
            stack.push(root);
            let mut nodes = Vec::new();
            let mut degree_sum = 0;
            while let Some(u) = stack.pop() {
                nodes.push(u);
                degree_sum += self.adjacency[u].len();
                for &(w, _) in &self.adjacency[u] {
                    if component_of[w] == usize::MAX {
                        component_of[w] = id;
                        stack.push(w);
                    }
                }
            }
            nodes.sort_unstable();
            let edge_count = degree_sum / 2;
            components.push(Component {
                cyclic: edge_count >= nodes.len(),
                nodes,
                edge_count,
            });
        }
        ComponentDecomposition {
            component_of,
            components,
        }
    }

    pub fn is_connected(&self) -> bool {
        self.components().is_connected()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3a() -> SignedGraph {
        SignedGraph::from_triples(3, &[(0, 1, 1), (1, 2, 1), (0, 2, -1)]).unwrap()
    }

    #[test]
    fn builds_triangle_with_one_negative_edge() {
        let g = k3a();
        assert_eq!(g.triple(), (3, 3, 1));
        let d = g.degrees();
        assert_eq!(d.positive, vec![1, 2, 1]);
        assert_eq!(d.negative, vec![1, 0, 1]);
        assert_eq!(d.totals().iter().sum::<usize>(), 2 * g.edge_count());
    }

    #[test]
    fn complete_all_negative_k4() {
        let g = SignedGraph::complete(4, Sign::Negative);
        assert_eq!(g.triple(), (4, 6, 6));
    }

    #[test]
    fn rejects_duplicates_loops_and_bad_indices() {
        let dup = SignedGraph::from_triples(3, &[(0, 1, 1), (1, 0, -1)]);
        assert_eq!(dup.unwrap_err(), GraphError::DuplicateEdge { u: 0, v: 1 });
        let lp = SignedGraph::from_triples(3, &[(2, 2, 1)]);
        assert!(matches!(lp, Err(GraphError::SelfLoop { node: 2, .. })));
        let oob = SignedGraph::from_triples(3, &[(0, 3, 1)]);
        assert!(matches!(oob, Err(GraphError::NodeOutOfRange { .. })));
        let sign = SignedGraph::from_triples(3, &[(0, 1, 0)]);
        assert!(matches!(sign, Err(GraphError::InvalidSign { .. })));
    }

    #[test]
    fn bipartition_cases() {
        let k5 = SignedGraph::complete(5, Sign::Positive);
        let part = k5.bipartition().unwrap();
        assert!(part.side.iter().all(|&s| !s));
        assert!(!k3a().is_balanced());

        // 4-cycle with two opposite negative edges: 0-1 and 2-3.
        let c4 = SignedGraph::from_triples(4, &[(0, 1, -1), (1, 2, 1), (2, 3, -1), (3, 0, 1)])
            .unwrap();
        let part = c4.bipartition().unwrap();
        assert_eq!(part.side.iter().filter(|&&s| s).count(), 2);
        // hand oracle: of the 16 colorings, a valid one has 0,3 together and 1,2 together
        assert_eq!(part.side[0], part.side[3]);
        assert_eq!(part.side[1], part.side[2]);
        assert_ne!(part.side[0], part.side[1]);
    }

    #[test]
    fn switching_boundaries_and_sign_preservation() {
        let g = k3a();
        assert_eq!(g.switch(&SwitchSet::all(3)).unwrap(), g);
        assert_eq!(g.switch(&SwitchSet::empty(3)).unwrap(), g);
        let s = g.switch(&SwitchSet::from_nodes(3, &[0])).unwrap();
        assert_eq!(s.negative_count(), 1);
        let product = s
            .edges()
            .iter()
            .fold(Sign::Positive, |acc, e| acc.times(e.sign));
        assert_eq!(product, Sign::Negative);
        assert!(matches!(
            g.switch(&SwitchSet::empty(2)),
            Err(GraphError::MaskLength { .. })
        ));
    }

    #[test]
    fn disjoint_union_counts() {
        let g = k3a();
        assert_eq!(g.disjoint_union(&SignedGraph::empty(0)), g);
        let u = SignedGraph::cycle(3, 0).disjoint_union(&SignedGraph::cycle(3, 1));
        assert_eq!(u.triple(), (6, 6, 1));
        assert_eq!(u.edge(3).endpoints(), (3, 4));
    }

    #[test]
    fn edit_copies() {
        let g = k3a();
        let h = g.edit(&[], &[(2, 0)]).unwrap();
        assert!(h.is_balanced());
        assert_eq!(g.edge_count(), 3);
        let c3 = g.with_extra_nodes(3).edit(
            &[
                (3, 4, Sign::Positive),
                (4, 5, Sign::Positive),
                (3, 5, Sign::Positive),
            ],
            &[],
        );
        assert_eq!(c3.unwrap().triple(), (6, 6, 1));
        assert!(matches!(
            g.edit(&[], &[(0, 5)]),
            Err(GraphError::MissingEdge { .. })
        ));
        assert!(matches!(
            g.edit(&[(0, 1, Sign::Positive)], &[]),
            Err(GraphError::DuplicateEdge { .. })
        ));
    }

    #[test]
    fn component_flags() {
        let k4 = SignedGraph::complete(4, Sign::Positive).components();
        assert_eq!(k4.count(), 1);
        assert!(k4.components[0].cyclic);
        let two = SignedGraph::cycle(3, 0)
            .disjoint_union(&SignedGraph::cycle(5, 1))
            .components();
        assert_eq!(two.count(), 2);
        assert!(two.components.iter().all(|c| c.cyclic));
        assert_eq!(two.giant(), Some(1));
        let edge = SignedGraph::from_triples(2, &[(0, 1, 1)]).unwrap().components();
        assert_eq!(edge.count(), 1);
        assert!(!edge.components[0].cyclic);
    }

    #[test]
    fn serde_round_trip_validates() {
        let g = k3a();
        let text = serde_json::to_string(&g).unwrap();
        let back: SignedGraph = serde_json::from_str(&text).unwrap();
        assert_eq!(back, g);
        let bad = r#"{"n":2,"edges":[[0,0,1]]}"#;
        assert!(serde_json::from_str::<SignedGraph>(bad).is_err());
    }
}
