//! Measure identifiers and a per-graph cache of the expensive intermediates
//! (cycle census, spectra, frustration) shared by all measures.

use std::cell::OnceCell;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::cycles::{self, CensusError, CycleCensus, WeightFunction, DEFAULT_CENSUS_BUDGET};
use crate::frustration::{self, FrustrationError, FrustrationResult, DEFAULT_BNB_BUDGET};
use crate::graph::SignedGraph;
use crate::spectral::{self, ConflictReport, SpectralError, SpectralSummary};
use crate::trivial::{self, NoEdges};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeasureError {
    #[error("cycle census: {0}")]
    Census(#[from] CensusError),
    #[error("spectral: {0}")]
    Spectral(#[from] SpectralError),
    #[error("frustration: {0}")]
    Frustration(#[from] FrustrationError),
    #[error("{0}")]
    NoEdges(#[from] NoEdges),
    #[error("unknown measure `{0}`")]
    Unknown(String),
    #[error("empty measure list")]
    EmptyList,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MeasureId {
    /// Fraction of balanced cycles.
    D,
    /// Weighted cycle balance, `f(k) = 1/k!`.
    C,
    /// Weighted cycle balance, `f(k) = 1/k`.
    CRec,
    /// Relative `k`-balance.
    Dk(usize),
    /// Triangle index.
    T,
    W,
    A,
    F,
    FPrime,
    X,
    Y,
    Z,
    Lambda,
    L,
}

impl MeasureId {
    /// Every measure reported by `all`.
    pub const ALL: [MeasureId; 14] = [
        MeasureId::D,
        MeasureId::C,
        MeasureId::CRec,
        MeasureId::Dk(3),
        MeasureId::T,
        MeasureId::W,
        MeasureId::A,
        MeasureId::F,
        MeasureId::FPrime,
        MeasureId::X,
        MeasureId::Y,
        MeasureId::Z,
        MeasureId::Lambda,
        MeasureId::L,
    ];

    pub fn name(&self) -> String {
        match self {
            MeasureId::D => "D".into(),
            MeasureId::C => "C".into(),
            MeasureId::CRec => "C_rec".into(),
            MeasureId::Dk(k) => format!("D{k}"),
            MeasureId::T => "T".into(),
            MeasureId::W => "W".into(),
            MeasureId::A => "A".into(),
            MeasureId::F => "F".into(),
            MeasureId::FPrime => "Fprime".into(),
            MeasureId::X => "X".into(),
            MeasureId::Y => "Y".into(),
            MeasureId::Z => "Z".into(),
            MeasureId::Lambda => "lambda".into(),
            MeasureId::L => "L".into(),
        }
    }

    /// `lambda` and `L` grow with imbalance; the rest lie in `[0, 1]`.
    pub fn is_imbalance(&self) -> bool {
        matches!(self, MeasureId::Lambda | MeasureId::L)
    }

    pub fn needs_census(&self) -> bool {
        matches!(self, MeasureId::D | MeasureId::C | MeasureId::CRec | MeasureId::Dk(_))
    }

    /// Parses a comma-separated list; `all` expands to [`MeasureId::ALL`].
    pub fn parse_list(text: &str) -> Result<Vec<MeasureId>, MeasureError> {
        let mut out: Vec<MeasureId> = Vec::new();
        for token in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            if token.eq_ignore_ascii_case("all") {
                out.extend(MeasureId::ALL);
            } else {
                out.push(token.parse()?);
            }
        }
        let mut seen = std::collections::HashSet::new();
        out.retain(|id| seen.insert(*id));
        if out.is_empty() {
            return Err(MeasureError::EmptyList);
        }
        Ok(out)
    }
}

impl FromStr for MeasureId {
    type Err = MeasureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "D" => MeasureId::D,
            "C" => MeasureId::C,
            "C_rec" => MeasureId::CRec,
            "T" => MeasureId::T,
            "W" => MeasureId::W,
            "A" => MeasureId::A,
            "F" => MeasureId::F,
            "Fprime" | "F'" => MeasureId::FPrime,
            "X" => MeasureId::X,
            "Y" => MeasureId::Y,
            "Z" => MeasureId::Z,
            "lambda" => MeasureId::Lambda,
            "L" => MeasureId::L,
            _ => s
                .strip_prefix('D')
                .and_then(|k| k.parse::<usize>().ok())
                .filter(|&k| k >= 3)
                .map(MeasureId::Dk)
                .ok_or_else(|| MeasureError::Unknown(s.to_string()))?,
        })
    }
}

impl fmt::Display for MeasureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl Serialize for MeasureId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.name())
    }
}

/// Which subgraph `lambda` and `A` are evaluated on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ConflictScope {
    /// The whole graph, as in the definition.
    Whole,
    /// The largest cyclic component when the graph is disconnected.
    GiantComponent,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalConfig {
    pub census_budget: u64,
    pub max_cycle_len: Option<usize>,
    pub bnb_budget: u64,
    pub conflict_scope: ConflictScope,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            census_budget: DEFAULT_CENSUS_BUDGET,
            max_cycle_len: None,
            bnb_budget: DEFAULT_BNB_BUDGET,
            conflict_scope: ConflictScope::Whole,
        }
    }
}

/// Lazily computed intermediates for one graph.
pub struct Profile<'g> {
    graph: &'g SignedGraph,
    config: EvalConfig,
    census: OnceCell<Result<CycleCensus, CensusError>>,
    spectral: OnceCell<Result<SpectralSummary, SpectralError>>,
    conflict: OnceCell<Result<ConflictReport, SpectralError>>,
    frustration: OnceCell<FrustrationResult>,
}

impl<'g> Profile<'g> {
    pub fn new(graph: &'g SignedGraph, config: EvalConfig) -> Self {
        Profile {
            graph,
            config,
            census: OnceCell::new(),
            spectral: OnceCell::new(),
            conflict: OnceCell::new(),
            frustration: OnceCell::new(),
        }
    }

    pub fn graph(&self) -> &'g SignedGraph {
        self.graph
    }

    pub fn config(&self) -> &EvalConfig {
        &self.config
    }

    pub fn census(&self) -> Result<&CycleCensus, MeasureError> {
        self.census
            .get_or_init(|| {
                cycles::cycle_census(self.graph, self.config.max_cycle_len, self.config.census_budget)
            })
            .as_ref()
            .map_err(|e| e.clone().into())
    }

    /// Installs a census computed elsewhere (e.g. from a shared catalog).
    pub fn with_census(self, census: CycleCensus) -> Self {
        let _ = self.census.set(Ok(census));
        self
    }

    pub fn spectral(&self) -> Result<&SpectralSummary, MeasureError> {
        self.spectral
            .get_or_init(|| SpectralSummary::of(self.graph))
            .as_ref()
            .map_err(|e| e.clone().into())
    }

    pub fn conflict_report(&self) -> Result<&ConflictReport, MeasureError> {
        self.conflict
            .get_or_init(|| spectral::component_conflict(self.graph))
            .as_ref()
            .map_err(|e| e.clone().into())
    }

    pub fn frustration(&self) -> &FrustrationResult {
        self.frustration
            .get_or_init(|| frustration::frustration_exact(self.graph, self.config.bnb_budget))
    }

    fn use_component(&self) -> bool {
        self.config.conflict_scope == ConflictScope::GiantComponent && !self.graph.is_connected()
    }

    pub fn value(&self, id: MeasureId) -> Result<f64, MeasureError> {
        let g = self.graph;
        Ok(match id {
            MeasureId::D => self.census()?.degree_of_balance(),
            MeasureId::C => self.census()?.weighted_degree_of_balance(WeightFunction::InverseFactorial),
            MeasureId::CRec => self.census()?.weighted_degree_of_balance(WeightFunction::Reciprocal),
            MeasureId::Dk(k) => self.census()?.relative_k_balance(k),
            MeasureId::T => cycles::triangle_index_trace(g),
            MeasureId::W => self.spectral()?.walk_balance(),
            MeasureId::Lambda if self.use_component() => self.conflict_report()?.headline.lambda,
            MeasureId::A if self.use_component() => self.conflict_report()?.headline.normalized,
            MeasureId::Lambda => self.spectral()?.algebraic_conflict(),
            MeasureId::A => self.spectral()?.normalized_algebraic_conflict()?,
            MeasureId::L => self.frustration().l_value as f64,
            MeasureId::F => frustration::normalized_frustration(g, self.frustration())?,
            MeasureId::FPrime => frustration::modified_normalized_frustration(g, self.frustration())?,
            MeasureId::X => frustration::x_measure(g, self.frustration()),
            MeasureId::Y => trivial::fraction_positive(g)?,
            MeasureId::Z => trivial::binary_balance(g),
        })
    }
}

/// Evaluates one measure on `g` without sharing intermediates.
pub fn evaluate(g: &SignedGraph, id: MeasureId, config: EvalConfig) -> Result<f64, MeasureError> {
    Profile::new(g, config).value(id)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Sign;

    #[test]
    fn names_round_trip() {
        for id in MeasureId::ALL.iter().chain([MeasureId::Dk(5)].iter()) {
            assert_eq!(id.name().parse::<MeasureId>().unwrap(), *id);
        }
        assert!(matches!("Q".parse::<MeasureId>(), Err(MeasureError::Unknown(_))));
        assert!(matches!("D2".parse::<MeasureId>(), Err(MeasureError::Unknown(_))));
        assert_eq!(MeasureId::parse_list("T, A,F,T").unwrap().len(), 3);
        assert_eq!(MeasureId::parse_list("all").unwrap().len(), 14);
        assert_eq!(MeasureId::parse_list(" , "), Err(MeasureError::EmptyList));
    }

    #[test]
    fn balanced_graph_scores() {
        let g = SignedGraph::from_triples(4, &[(0, 1, -1), (1, 2, 1), (2, 3, -1), (3, 0, 1), (0, 2, -1)])
            .unwrap();
        let p = Profile::new(&g, EvalConfig::default());
        for id in MeasureId::ALL {
            let v = p.value(id).unwrap();
            let want = if id.is_imbalance() { 0.0 } else { 1.0 };
            if id == MeasureId::Y {
                assert!(v < 1.0);
            } else {
                assert!((v - want).abs() < 1e-9, "{id}: {v}");
            }
        }
    }

    #[test]
    fn conflict_scope() {
        let g = SignedGraph::cycle(3, 0).disjoint_union(&SignedGraph::complete(4, Sign::Negative));
        let whole = evaluate(&g, MeasureId::A, EvalConfig::default()).unwrap();
        assert!((whole - 1.0).abs() < 1e-12);
        let config = EvalConfig {
            conflict_scope: ConflictScope::GiantComponent,
            ..EvalConfig::default()
        };
        assert!(evaluate(&g, MeasureId::A, config).unwrap().abs() < 1e-9);
    }
}
