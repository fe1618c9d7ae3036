//! Executable axioms (A1-A4) and desirable properties (B1-B4) for measures
//! of partial balance.
//!
//! A check can only refute: a cell is either refuted with a witness that
//! re-evaluates to a violation, or left unrefuted on the corpus.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::graph::{Sign, SignedGraph, SwitchSet};
use crate::measure::{EvalConfig, MeasureError, MeasureId, Profile};
use crate::synthetic::{self, derive_seed, SignAssignment};

/// Margin for strict inequalities and range checks.
pub const STRICT_TOL: f64 = 1e-12;
/// Margin for equalities (switching invariance, `μ = 1`).
pub const EQUAL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Property {
    A1,
    A2,
    A3,
    A4,
    B1,
    B2,
    B3,
    B4,
}

impl Property {
    pub const ALL: [Property; 8] = [
        Property::A1,
        Property::A2,
        Property::A3,
        Property::A4,
        Property::B1,
        Property::B2,
        Property::B3,
        Property::B4,
    ];

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Anything the harness can evaluate on a graph.
pub trait Measure: Send + Sync {
    fn name(&self) -> String;
    fn eval(&self, p: &Profile) -> Result<f64, MeasureError>;
}

impl Measure for MeasureId {
    fn name(&self) -> String {
        MeasureId::name(self)
    }

    fn eval(&self, p: &Profile) -> Result<f64, MeasureError> {
        p.value(*self)
    }
}

impl<M: Measure + ?Sized> Measure for Arc<M> {
    fn name(&self) -> String {
        (**self).name()
    }

    fn eval(&self, p: &Profile) -> Result<f64, MeasureError> {
        (**self).eval(p)
    }
}

/// `h(μ) = μ²`, a strictly increasing reparametrization fixing 0 and 1.
pub struct Squared<M>(pub M);

impl<M: Measure> Measure for Squared<M> {
    fn name(&self) -> String {
        format!("{}^2", self.0.name())
    }

    fn eval(&self, p: &Profile) -> Result<f64, MeasureError> {
        self.0.eval(p).map(|v| v * v)
    }
}

/// A deliberately broken measure for harness self-tests.
pub struct Constant(pub f64);

impl Measure for Constant {
    fn name(&self) -> String {
        format!("const{}", self.0)
    }

    fn eval(&self, _: &Profile) -> Result<f64, MeasureError> {
        Ok(self.0)
    }
}

/// A column of the verdict matrix. A family column is refuted when any
/// member is.
#[derive(Clone)]
pub struct Column {
    pub label: String,
    pub members: Vec<Arc<dyn Measure>>,
}

impl Column {
    pub fn single<M: Measure + 'static>(m: M) -> Column {
        Column {
            label: m.name(),
            members: vec![Arc::new(m)],
        }
    }
}

pub const PAPER_COLUMNS: [&str; 9] = ["D", "C", "W", "D_k", "A", "F", "X", "Y", "Z"];

/// Published verdicts, `true` for satisfied. Rows follow [`Property::ALL`],
/// columns follow [`PAPER_COLUMNS`].
pub const PAPER_TABLE: [[bool; 9]; 8] = [
    [true, true, true, true, true, true, true, true, true],
    [true, true, true, false, false, true, true, false, true],
    [true, true, true, true, false, true, true, true, true],
    [true, true, true, true, true, true, false, false, true],
    [true, true, true, false, true, true, false, false, false],
    [true, true, false, false, false, false, false, false, true],
    [false, false, false, false, false, true, true, false, false],
    [false, false, false, false, false, true, true, false, true],
];

/// Lengths standing in for the `D_k` family.
pub const DK_FAMILY: [usize; 3] = [3, 4, 5];

/// The nine columns of the published tables; `C` uses `1/k!` and `D_k`
/// is the family `k ∈ {3, 4, 5}`.
pub fn paper_columns() -> Vec<Column> {
    PAPER_COLUMNS
        .iter()
        .map(|&label| match label {
            "D_k" => Column {
                label: "D_k".into(),
                members: DK_FAMILY
                    .iter()
                    .map(|&k| Arc::new(MeasureId::Dk(k)) as Arc<dyn Measure>)
                    .collect(),
            },
            other => Column::single(other.parse::<MeasureId>().expect("known measure")),
        })
        .collect()
}

/// The same columns under `h(μ) = μ²`.
pub fn squared_columns() -> Vec<Column> {
    paper_columns()
        .into_iter()
        .map(|c| Column {
            label: format!("{}^2", c.label),
            members: c
                .members
                .into_iter()
                .map(|m| Arc::new(Squared(m)) as Arc<dyn Measure>)
                .collect(),
        })
        .collect()
}

/// Fewest frustrated edges and every distinct minimum frustrated-edge set,
/// by enumerating all colorings with node 0 fixed.
pub fn minimum_deletion_sets(g: &SignedGraph) -> (usize, Vec<Vec<usize>>) {
    let n = g.node_count();
    assert!(n <= 20, "exhaustive enumeration is limited to 20 nodes");
    if n == 0 {
        return (0, vec![Vec::new()]);
    }
    let mut best = usize::MAX;
    let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
    for mask in 0u32..(1 << (n - 1)) {
        let frustrated: Vec<usize> = g
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| {
                let cu = e.u > 0 && mask >> (e.u - 1) & 1 == 1;
                let cv = e.v > 0 && mask >> (e.v - 1) & 1 == 1;
                (cu != cv) != e.sign.is_negative()
            })
            .map(|(id, _)| id)
            .collect();
        if frustrated.len() < best {
            best = frustrated.len();
            sets.clear();
        }
        if frustrated.len() == best {
            sets.insert(frustrated);
        }
    }
    (best, sets.into_iter().collect())
}

fn triangle(signs: [i64; 3]) -> SignedGraph {
    SignedGraph::from_triples(3, &[(0, 1, signs[0]), (1, 2, signs[1]), (0, 2, signs[2])])
        .expect("valid triangle")
}

/// Realizations of the balanced triangle.
pub const POSITIVE_TRIANGLES: [[i64; 3]; 2] = [[1, 1, 1], [1, -1, -1]];
/// Realizations of the unbalanced triangle.
pub const NEGATIVE_TRIANGLES: [[i64; 3]; 2] = [[1, 1, -1], [-1, -1, -1]];

/// The transformation a witness applies to its graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum WitnessOp {
    /// The graph alone (A1, A2).
    Evaluate,
    /// `G ⊕ other` against both parts (A3).
    Union { other: SignedGraph },
    /// Switching at the marked nodes (A4).
    Switch { mask: Vec<bool> },
    /// `G ⊕ C_3` with these signs (B1, B2).
    AddTriangle { signs: [i64; 3] },
    /// `G ⊖ e` for `e = (u, v)` in a minimum deletion set (B3).
    DeleteEdge { u: usize, v: usize },
    /// `G ⊕ e` for a new edge (B4).
    AddEdge { u: usize, v: usize, sign: i64 },
}

/// A recorded violation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub property: Property,
    pub measure: String,
    pub source: String,
    pub graph: SignedGraph,
    pub op: WitnessOp,
    /// `μ(G)` followed by the values the violation compares it to.
    pub values: Vec<f64>,
}

fn eval_on(m: &dyn Measure, g: &SignedGraph, config: EvalConfig) -> Option<f64> {
    m.eval(&Profile::new(g, config)).ok()
}

/// Margins used by the checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerance {
    pub strict: f64,
    pub equal: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            strict: STRICT_TOL,
            equal: EQUAL_TOL,
        }
    }
}

impl Tolerance {
    fn is_one(&self, v: f64) -> bool {
        (v - 1.0).abs() <= self.equal
    }

    fn is_nonzero(&self, v: f64) -> bool {
        v > self.strict
    }

    fn out_of_range(&self, v: f64) -> bool {
        v < -self.strict || v > 1.0 + self.strict
    }

    fn a2_violation(&self, v: f64, balanced: bool) -> bool {
        self.is_one(v) != balanced
    }

    fn a3_violation(&self, vg: f64, vh: f64, vu: f64) -> bool {
        let (lo, hi) = if vg <= vh { (vg, vh) } else { (vh, vg) };
        vu < lo - self.strict || vu > hi + self.strict
    }

    fn a4_violation(&self, v: f64, switched: f64) -> bool {
        (v - switched).abs() > self.equal
    }

    fn b1_violation(&self, v: f64, after: f64) -> bool {
        !self.is_one(v) && after <= v + self.strict
    }

    fn b2_violation(&self, v: f64, after: f64) -> bool {
        self.is_nonzero(v) && after >= v - self.strict
    }

    fn b3_violation(&self, v: f64, after: f64) -> bool {
        after < v - self.strict
    }

    fn b4_violation(&self, v: f64, after: f64) -> bool {
        self.is_nonzero(v) && after > v + self.strict
    }
}

/// Side graphs `G ⊖ S ⊕ e` over every minimum deletion set `S`.
fn b4_side_graphs(g: &SignedGraph, sets: &[Vec<usize>], e: (usize, usize, Sign)) -> Vec<SignedGraph> {
    sets.iter()
        .map(|s| {
            g.without_edges(s)
                .edit(&[e], &[])
                .expect("new edge is absent")
        })
        .collect()
}

impl Witness {
    /// Re-evaluates the violation from scratch.
    pub fn recheck(&self, m: &dyn Measure, config: EvalConfig, t: Tolerance) -> bool {
        let g = &self.graph;
        let Some(v) = eval_on(m, g, config) else { return false };
        let after = |h: &SignedGraph| eval_on(m, h, config);
        match (&self.property, &self.op) {
            (Property::A1, WitnessOp::Evaluate) => t.out_of_range(v),
            (Property::A2, WitnessOp::Evaluate) => t.a2_violation(v, g.is_balanced()),
            (Property::A3, WitnessOp::Union { other }) => {
                match (after(other), after(&g.disjoint_union(other))) {
                    (Some(vh), Some(vu)) => t.a3_violation(v, vh, vu),
                    _ => false,
                }
            }
            (Property::A4, WitnessOp::Switch { mask }) => {
                let x = SwitchSet::from_mask(mask.clone());
                g.switch(&x)
                    .ok()
                    .and_then(|s| after(&s))
                    .is_some_and(|vs| t.a4_violation(v, vs))
            }
            (Property::B1 | Property::B2, WitnessOp::AddTriangle { signs }) => {
                let tri = triangle(*signs);
                let positive = tri.is_balanced();
                let Some(va) = after(&g.disjoint_union(&tri)) else { return false };
                match self.property {
                    Property::B1 => positive && t.b1_violation(v, va),
                    _ => !positive && t.b2_violation(v, va),
                }
            }
            (Property::B3, WitnessOp::DeleteEdge { u, v: w }) => {
                let Some(id) = g.edge_id(*u, *w) else { return false };
                let (_, sets) = minimum_deletion_sets(g);
                sets.iter().any(|s| s.contains(&id))
                    && after(&g.without_edges(&[id])).is_some_and(|va| t.b3_violation(v, va))
            }
            (Property::B4, WitnessOp::AddEdge { u, v: w, sign }) => {
                let Some(s) = Sign::from_int(*sign) else { return false };
                if g.has_edge(*u, *w) {
                    return false;
                }
                let e = (*u, *w, s);
                let (_, sets) = minimum_deletion_sets(g);
                let side_ok = b4_side_graphs(g, &sets, e)
                    .iter()
                    .all(|h| after(h).is_some_and(|x| !t.is_one(x)));
                let added = g.edit(&[e], &[]).expect("edge is new");
                side_ok && after(&added).is_some_and(|va| t.b4_violation(v, va))
            }
            _ => false,
        }
    }

    pub fn describe(&self) -> String {
        let (n, m, neg) = self.graph.triple();
        let op = match &self.op {
            WitnessOp::Evaluate => "evaluate".to_string(),
            WitnessOp::Union { other } => {
                let (a, b, c) = other.triple();
                format!("union with ({a},{b},{c})")
            }
            WitnessOp::Switch { mask } => {
                let nodes: Vec<String> = mask
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x)
                    .map(|(i, _)| i.to_string())
                    .collect();
                format!("switch {{{}}}", nodes.join(" "))
            }
            WitnessOp::AddTriangle { signs } => format!("add triangle {signs:?}"),
            WitnessOp::DeleteEdge { u, v } => format!("delete ({u},{v})"),
            WitnessOp::AddEdge { u, v, sign } => format!("add ({u},{v},{sign:+})"),
        };
        let values: Vec<String> = self.values.iter().map(|v| format!("{v:.6}")).collect();
        format!(
            "{} on {} ({n},{m},{neg}): {op}; values {}",
            self.measure,
            self.source,
            values.join(" ")
        )
    }
}

/// One graph of the corpus with its sampled switching sets.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub graph: SignedGraph,
    pub switches: Vec<SwitchSet>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorpusConfig {
    /// Every signed graph up to isomorphism on `3..=exhaustive_max_n` nodes.
    pub exhaustive_max_n: usize,
    pub random_count: usize,
    pub random_max_n: usize,
    /// Random pairs for A3, drawn among graphs with at most `pair_max_n` nodes.
    pub random_pairs: usize,
    pub pair_max_n: usize,
    /// Random switching sets per graph, on top of every single-node switch.
    pub switch_samples: usize,
    /// B4 enumerates new edges only on graphs up to this order.
    pub b4_max_n: usize,
    pub seed: u64,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            exhaustive_max_n: 5,
            random_count: 500,
            random_max_n: 10,
            random_pairs: 1500,
            pair_max_n: 7,
            switch_samples: 3,
            b4_max_n: 10,
            seed: 20_170_501,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Corpus {
    pub entries: Vec<CorpusEntry>,
    /// Index pairs for A3.
    pub pairs: Vec<(usize, usize)>,
    pub b4_max_n: usize,
}

fn signed(n: usize, triples: &[(usize, usize, i64)]) -> SignedGraph {
    SignedGraph::from_triples(n, triples).expect("fixture is valid")
}

/// Hand-built graphs that hit the published counterexamples.
pub fn named_graphs() -> Vec<(String, SignedGraph)> {
    let kna = |n| synthetic::make_kna(n).expect("n ≥ 3");
    let c3a = SignedGraph::cycle(3, 1);
    vec![
        ("C5 with one negative edge".into(), SignedGraph::cycle(5, 1)),
        (
            "unbalanced triangle plus positive triangle".into(),
            c3a.disjoint_union(&SignedGraph::cycle(3, 0)),
        ),
        ("K4 with one negative edge".into(), kna(4)),
        ("K5 with one negative edge".into(), kna(5)),
        ("all-negative K4".into(), SignedGraph::complete(4, Sign::Negative)),
        ("all-negative K5".into(), SignedGraph::complete(5, Sign::Negative)),
        (
            "K4 with two opposite negative edges".into(),
            signed(4, &[(0, 1, -1), (2, 3, -1), (0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1)]),
        ),
        (
            "C3 and C5 with one negative edge each".into(),
            c3a.disjoint_union(&SignedGraph::cycle(5, 1)),
        ),
        ("two-hub book graph".into(), book_graph()),
        ("seven-node triangle-count witness".into(), d3_addition_witness()),
    ]
}

/// Two hubs joined by a negative edge and to six pages, two of the hub-page
/// edges negative: `n = 8`, `m⁺ = 10`, `m⁻ = 3`, `L = 3`.
pub fn book_graph() -> SignedGraph {
    let mut t = vec![(0, 1, -1), (0, 2, -1), (0, 3, -1)];
    for page in 2..8 {
        if page > 3 {
            t.push((0, page, 1));
        }
        t.push((1, page, 1));
    }
    signed(8, &t)
}

/// A graph on 7 nodes and 15 edges with `L = 3` on which adding an edge
/// raises `D_3` (by adding `(3, 6, +)`). Found by a seeded search over
/// `G(7, 15/21)` conditioned on 15 edges (base seed 7153, index 3) and frozen.
pub fn d3_addition_witness() -> SignedGraph {
    signed(
        7,
        &[
            (0, 1, 1),
            (0, 3, 1),
            (0, 6, -1),
            (1, 2, -1),
            (1, 3, 1),
            (1, 4, -1),
            (1, 5, 1),
            (1, 6, 1),
            (2, 3, 1),
            (2, 4, 1),
            (2, 5, 1),
            (2, 6, 1),
            (3, 4, -1),
            (4, 5, -1),
            (5, 6, -1),
        ],
    )
}

/// Pairs that hit the published A3 counterexample.
pub fn named_pairs() -> Vec<(String, SignedGraph, SignedGraph)> {
    vec![(
        "C5 with one negative edge and all-negative K5".into(),
        SignedGraph::cycle(5, 1),
        SignedGraph::complete(5, Sign::Negative),
    )]
}

fn pair_list(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

/// All signed graphs on `n` nodes up to isomorphism, one per class.
pub fn signed_graphs_up_to_isomorphism(n: usize) -> Vec<SignedGraph> {
    let pairs = pair_list(n);
    let slot = |u: usize, v: usize| -> usize {
        let (a, b) = (u.min(v), u.max(v));
        pairs.iter().position(|&p| p == (a, b)).expect("pair exists")
    };
    let mut perms: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..n {
        perms = perms
            .into_iter()
            .flat_map(|p| {
                (0..n)
                    .filter(|x| !p.contains(x))
                    .map(|x| {
                        let mut q = p.clone();
                        q.push(x);
                        q
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    // remap[p][i]: slot of pair i after permuting nodes by p
    let remap: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| pairs.iter().map(|&(u, v)| slot(p[u], p[v])).collect())
        .collect();
    let total = 3usize.pow(pairs.len() as u32);
    let mut out = Vec::new();
    let mut digits = vec![0u8; pairs.len()];
    let mut image = vec![0u8; pairs.len()];
    for code in 0..total {
        let mut c = code;
        for d in digits.iter_mut() {
            *d = (c % 3) as u8;
            c /= 3;
        }
        let canonical = remap.iter().all(|r| {
            for (i, &j) in r.iter().enumerate() {
                image[j] = digits[i];
            }
            // keep `code` only if no relabelling gives a smaller code
            image.iter().rev().cmp(digits.iter().rev()) != std::cmp::Ordering::Less
        });
        if canonical {
            let triples: Vec<(usize, usize, i64)> = pairs
                .iter()
                .zip(&digits)
                .filter(|(_, &d)| d != 0)
                .map(|(&(u, v), &d)| (u, v, if d == 1 { 1 } else { -1 }))
                .collect();
            out.push(signed(n, &triples));
        }
    }
    out
}

fn sample_switches(n: usize, samples: usize, seed: u64) -> Vec<SwitchSet> {
    let mut rng = synthetic::rng(seed);
    let mut out: Vec<SwitchSet> = (0..n).map(|v| SwitchSet::from_nodes(n, &[v])).collect();
    for _ in 0..samples {
        out.push(SwitchSet::from_mask((0..n).map(|_| rng.gen()).collect()));
    }
    out
}

fn random_graph(seed: u64, max_n: usize) -> SignedGraph {
    let mut rng = synthetic::rng(seed);
    let n = rng.gen_range(3..=max_n);
    let p = rng.gen_range(0.2..0.7);
    let q = rng.gen_range(0.1..0.9);
    let topology = synthetic::gen_erdos_renyi(n, p, rng.gen()).expect("valid probability");
    synthetic::assign_signs(&topology, SignAssignment::Iid(q), rng.gen()).expect("valid probability")
}

impl Corpus {
    pub fn build(config: &CorpusConfig) -> Corpus {
        let mut graphs: Vec<(String, SignedGraph)> = named_graphs();
        let mut pair_specs = Vec::new();
        for (name, g, h) in named_pairs() {
            let i = graphs.len();
            graphs.push((format!("{name} (left)"), g));
            graphs.push((format!("{name} (right)"), h));
            pair_specs.push((i, i + 1));
        }
        for n in 3..=config.exhaustive_max_n {
            for (i, g) in signed_graphs_up_to_isomorphism(n).into_iter().enumerate() {
                graphs.push((format!("exhaustive n={n} #{i}"), g));
            }
        }
        for i in 0..config.random_count {
            let seed = derive_seed(config.seed, i as u64);
            graphs.push((format!("random #{i}"), random_graph(seed, config.random_max_n)));
        }
        let entries: Vec<CorpusEntry> = graphs
            .into_iter()
            .enumerate()
            .map(|(i, (name, graph))| CorpusEntry {
                switches: sample_switches(
                    graph.node_count(),
                    config.switch_samples,
                    derive_seed(config.seed ^ 0xa4, i as u64),
                ),
                name,
                graph,
            })
            .collect();
        let small: Vec<usize> = (0..entries.len())
            .filter(|&i| entries[i].graph.node_count() <= config.pair_max_n)
            .collect();
        let mut rng = synthetic::rng(derive_seed(config.seed, u64::MAX));
        let mut seen: HashSet<(usize, usize)> = pair_specs.iter().copied().collect();
        let mut pairs = pair_specs;
        if !small.is_empty() {
            for &i in small.iter().take(200) {
                if seen.insert((i, i)) {
                    pairs.push((i, i));
                }
            }
            for _ in 0..config.random_pairs {
                let a = small[rng.gen_range(0..small.len())];
                let b = small[rng.gen_range(0..small.len())];
                if seen.insert((a, b)) {
                    pairs.push((a, b));
                }
            }
        }
        Corpus {
            entries,
            pairs,
            b4_max_n: config.b4_max_n,
        }
    }
}

/// Verdict for one (property, column) cell.
#[derive(Debug, Clone, Serialize)]
pub struct Cell {
    pub property: Property,
    pub column: String,
    pub refuted: bool,
    /// Instances where the premise held and the measure was defined.
    pub instances: usize,
    pub witness: Option<Witness>,
}

pub struct VerdictMatrix {
    pub columns: Vec<String>,
    /// `cells[property][column]`.
    pub cells: Vec<Vec<Cell>>,
}

/// Per-member scan state: first witness (by corpus order) and instance count.
#[derive(Clone, Default)]
struct Finding {
    first: Option<(usize, Witness)>,
    instances: usize,
}

impl Finding {
    fn merge(mut self, other: Finding) -> Finding {
        self.instances += other.instances;
        self.first = match (self.first, other.first) {
            (Some(a), Some(b)) => Some(if a.0 <= b.0 { a } else { b }),
            (a, b) => a.or(b),
        };
        self
    }
}

struct Scan<'a> {
    members: &'a [Arc<dyn Measure>],
    config: EvalConfig,
    tol: Tolerance,
    /// `findings[property][member]`.
    findings: Vec<Vec<Finding>>,
}

impl<'a> Scan<'a> {
    fn new(members: &'a [Arc<dyn Measure>], config: EvalConfig, tol: Tolerance) -> Self {
        Scan {
            members,
            config,
            tol,
            findings: vec![vec![Finding::default(); members.len()]; Property::ALL.len()],
        }
    }

    fn values(&self, g: &SignedGraph) -> Vec<Option<f64>> {
        let p = Profile::new(g, self.config);
        self.members.iter().map(|m| m.eval(&p).ok()).collect()
    }

    #[allow(clippy::too_many_arguments)]
    fn record(
        &mut self,
        property: Property,
        member: usize,
        order: usize,
        entry: &CorpusEntry,
        op: &WitnessOp,
        values: Vec<f64>,
        violated: bool,
    ) {
        let f = &mut self.findings[property.index()][member];
        f.instances += 1;
        if violated && f.first.as_ref().map_or(true, |(o, _)| order < *o) {
            f.first = Some((
                order,
                Witness {
                    property,
                    measure: self.members[member].name(),
                    source: entry.name.clone(),
                    graph: entry.graph.clone(),
                    op: op.clone(),
                    values,
                },
            ));
        }
    }

    fn entry(&mut self, order: usize, entry: &CorpusEntry, b4_max_n: usize) -> Vec<Option<f64>> {
        let g = &entry.graph;
        let t = self.tol;
        let base = self.values(g);
        let balanced = g.is_balanced();
        for (k, v) in base.iter().enumerate() {
            let Some(v) = *v else { continue };
            self.record(Property::A1, k, order, entry, &WitnessOp::Evaluate, vec![v], t.out_of_range(v));
            self.record(Property::A2, k, order, entry, &WitnessOp::Evaluate, vec![v], t.a2_violation(v, balanced));
        }
        for x in &entry.switches {
            let op = WitnessOp::Switch { mask: x.mask().to_vec() };
            let after = self.values(&g.switch(x).expect("mask sized to graph"));
            for k in 0..base.len() {
                if let (Some(v), Some(a)) = (base[k], after[k]) {
                    self.record(Property::A4, k, order, entry, &op, vec![v, a], t.a4_violation(v, a));
                }
            }
        }
        for (property, shapes) in [
            (Property::B1, POSITIVE_TRIANGLES),
            (Property::B2, NEGATIVE_TRIANGLES),
        ] {
            for signs in shapes {
                let op = WitnessOp::AddTriangle { signs };
                let after = self.values(&g.disjoint_union(&triangle(signs)));
                for k in 0..base.len() {
                    let (Some(v), Some(a)) = (base[k], after[k]) else { continue };
                    let premise = match property {
                        Property::B1 => !t.is_one(v),
                        _ => t.is_nonzero(v),
                    };
                    if premise {
                        let bad = match property {
                            Property::B1 => t.b1_violation(v, a),
                            _ => t.b2_violation(v, a),
                        };
                        self.record(property, k, order, entry, &op, vec![v, a], bad);
                    }
                }
            }
        }
        if g.node_count() > 20 {
            return base;
        }
        let (_, sets) = minimum_deletion_sets(g);
        let in_some_set: BTreeSet<usize> = sets.iter().flatten().copied().collect();
        for &id in &in_some_set {
            let e = g.edge(id);
            let op = WitnessOp::DeleteEdge { u: e.u, v: e.v };
            let after = self.values(&g.without_edges(&[id]));
            for k in 0..base.len() {
                if let (Some(v), Some(a)) = (base[k], after[k]) {
                    self.record(Property::B3, k, order, entry, &op, vec![v, a], t.b3_violation(v, a));
                }
            }
        }
        if g.node_count() <= b4_max_n {
            for (u, w) in pair_list(g.node_count()) {
                if g.has_edge(u, w) {
                    continue;
                }
                for sign in [Sign::Positive, Sign::Negative] {
                    let e = (u, w, sign);
                    let side: Vec<Vec<Option<f64>>> =
                        b4_side_graphs(g, &sets, e).iter().map(|h| self.values(h)).collect();
                    let after = self.values(&g.edit(&[e], &[]).expect("edge is new"));
                    let op = WitnessOp::AddEdge { u, v: w, sign: sign.value() };
                    for k in 0..base.len() {
                        let (Some(v), Some(a)) = (base[k], after[k]) else { continue };
                        let side_ok = side.iter().all(|s| s[k].is_some_and(|x| !t.is_one(x)));
                        if t.is_nonzero(v) && side_ok {
                            self.record(Property::B4, k, order, entry, &op, vec![v, a], t.b4_violation(v, a));
                        }
                    }
                }
            }
        }
        base
    }

    fn merge(mut self, other: Scan<'a>) -> Scan<'a> {
        for (row, other_row) in self.findings.iter_mut().zip(other.findings) {
            for (f, o) in row.iter_mut().zip(other_row) {
                *f = std::mem::take(f).merge(o);
            }
        }
        self
    }
}

/// Runs every check of every column over the corpus.
pub fn verdict_matrix(
    columns: &[Column],
    corpus: &Corpus,
    config: EvalConfig,
    tol: Tolerance,
) -> VerdictMatrix {
    let members: Vec<Arc<dyn Measure>> = columns.iter().flat_map(|c| c.members.iter().cloned()).collect();
    let (scan, base) = corpus
        .entries
        .par_iter()
        .enumerate()
        .map(|(i, entry)| {
            let mut scan = Scan::new(&members, config, tol);
            let base = scan.entry(i, entry, corpus.b4_max_n);
            (scan, vec![(i, base)])
        })
        .reduce(
            || (Scan::new(&members, config, tol), Vec::new()),
            |(a, mut ba), (b, bb)| {
                ba.extend(bb);
                (a.merge(b), ba)
            },
        );
    let mut base_values = vec![Vec::new(); corpus.entries.len()];
    for (i, b) in base {
        base_values[i] = b;
    }
    let pair_scan = corpus
        .pairs
        .par_iter()
        .enumerate()
        .map(|(order, &(a, b))| {
            let mut scan = Scan::new(&members, config, tol);
            let t = tol;
            let (ga, gb) = (&corpus.entries[a].graph, &corpus.entries[b].graph);
            let union = scan.values(&ga.disjoint_union(gb));
            let op = WitnessOp::Union { other: gb.clone() };
            for k in 0..members.len() {
                if let (Some(va), Some(vb), Some(vu)) = (base_values[a][k], base_values[b][k], union[k]) {
                    scan.record(Property::A3, k, order, &corpus.entries[a], &op, vec![va, vb, vu], t.a3_violation(va, vb, vu));
                }
            }
            scan
        })
        .reduce(|| Scan::new(&members, config, tol), Scan::merge);
    let scan = scan.merge(pair_scan);

    let mut cells = Vec::new();
    for property in Property::ALL {
        let mut row = Vec::new();
        let mut offset = 0;
        for c in columns {
            let found: Vec<&Finding> = (offset..offset + c.members.len())
                .map(|k| &scan.findings[property.index()][k])
                .collect();
            offset += c.members.len();
            let witness = found.iter().find_map(|f| f.first.as_ref().map(|(_, w)| w.clone()));
            row.push(Cell {
                property,
                column: c.label.clone(),
                refuted: witness.is_some(),
                instances: found.iter().map(|f| f.instances).sum(),
                witness,
            });
        }
        cells.push(row);
    }
    VerdictMatrix {
        columns: columns.iter().map(|c| c.label.clone()).collect(),
        cells,
    }
}

impl VerdictMatrix {
    pub fn cell(&self, property: Property, column: &str) -> Option<&Cell> {
        let j = self.columns.iter().position(|c| c == column)?;
        Some(&self.cells[property.index()][j])
    }

    /// Cells whose outcome differs from the published tables, assuming the
    /// columns are [`PAPER_COLUMNS`] (possibly reparametrized).
    pub fn mismatches_with_paper(&self) -> Vec<(Property, String, bool)> {
        let mut out = Vec::new();
        for property in Property::ALL {
            for (j, expected) in PAPER_TABLE[property.index()].iter().enumerate() {
                let cell = &self.cells[property.index()][j];
                if cell.refuted == *expected {
                    out.push((property, cell.column.clone(), *expected));
                }
            }
        }
        out
    }

    /// Long-format CSV: `property,measure,verdict,instances,witness`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["property", "measure", "verdict", "instances", "witness"])
            .expect("in-memory write");
        for row in &self.cells {
            for c in row {
                w.write_record([
                    c.property.to_string(),
                    c.column.clone(),
                    if c.refuted { "failed" } else { "satisfied-on-corpus" }.to_string(),
                    c.instances.to_string(),
                    c.witness.as_ref().map(Witness::describe).unwrap_or_default(),
                ])
                .expect("in-memory write");
            }
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    /// Grid of ✓ (unrefuted) and ✗ (refuted).
    pub fn to_table(&self) -> String {
        let width = self.columns.iter().map(|c| c.chars().count()).max().unwrap_or(1).max(3);
        let mut out = format!("{:<4}", "");
        for c in &self.columns {
            out.push_str(&format!(" {c:>width$}"));
        }
        out.push('\n');
        for row in &self.cells {
            out.push_str(&format!("{:<4}", row[0].property.to_string()));
            for c in row {
                let mark = if c.refuted { "✗" } else { "✓" };
                out.push_str(&format!(" {mark:>width$}"));
            }
            out.push('\n');
        }
        out
    }
}
