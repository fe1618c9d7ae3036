//! Eigenvalue-based measures: walk-based balance, algebraic conflict and its
//! normalization, plus the spectral balance criterion.

use nalgebra::DMatrix;
use serde::Serialize;
use thiserror::Error;

use crate::graph::SignedGraph;

/// Relative tolerance for spectral equality and zero-clamping.
pub const EIGEN_EPS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("eigensolver did not converge for a {n}x{n} matrix")]
    NoConvergence { n: usize },
    #[error("spectral summary needs at least one node")]
    EmptyGraph,
    #[error("algebraic conflict requested on a graph with {components} components")]
    Disconnected { components: usize },
    #[error("normalization undefined: max edge-average degree is {dbar_max}")]
    NormalizationUndefined { dbar_max: f64 },
    #[error("graph has no cyclic component")]
    NoCyclicComponent,
}

fn sorted_eigenvalues(m: DMatrix<f64>) -> Result<Vec<f64>, SpectralError> {
    let n = m.nrows();
    let mut values: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    if values.iter().any(|v| !v.is_finite()) {
        return Err(SpectralError::NoConvergence { n });
    }
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// `max over edges (u,v) of (d_u + d_v)/2`, `None` for edgeless graphs.
pub fn max_edge_average_degree(g: &SignedGraph) -> Option<f64> {
    g.edges()
        .iter()
        .map(|e| (g.degree(e.u) + g.degree(e.v)) as f64 / 2.0)
        .reduce(f64::max)
}

/// Spectra of `A`, `|A|` and `L = D - A`, each sorted ascending.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralSummary {
    pub eig_signed: Vec<f64>,
    pub eig_unsigned: Vec<f64>,
    pub eig_laplacian: Vec<f64>,
    pub dbar_max: Option<f64>,
    pub components: usize,
}

impl SpectralSummary {
    pub fn of(g: &SignedGraph) -> Result<Self, SpectralError> {
        if g.node_count() == 0 {
            return Err(SpectralError::EmptyGraph);
        }
        Ok(SpectralSummary {
            eig_signed: sorted_eigenvalues(g.signed_adjacency())?,
            eig_unsigned: sorted_eigenvalues(g.unsigned_adjacency())?,
            eig_laplacian: sorted_eigenvalues(g.signed_laplacian())?,
            dbar_max: max_edge_average_degree(g),
            components: g.components().count(),
        })
    }

    pub fn is_connected(&self) -> bool {
        self.components <= 1
    }

    fn laplacian_scale(&self) -> f64 {
        self.eig_laplacian
            .iter()
            .fold(1.0f64, |acc, v| acc.max(v.abs()))
    }

    /// `W = (K + 1)/2` with `K = Σ e^{λ_i(A)} / Σ e^{λ_i(|A|)}`.
    pub fn walk_balance(&self) -> f64 {
        // shift by the largest unsigned eigenvalue, which is also the largest overall
        let shift = self.eig_unsigned.last().copied().unwrap_or(0.0);
        let signed: f64 = self.eig_signed.iter().map(|l| (l - shift).exp()).sum();
        let unsigned: f64 = self.eig_unsigned.iter().map(|l| (l - shift).exp()).sum();
        (signed / unsigned + 1.0) / 2.0
    }

    /// Smallest Laplacian eigenvalue of the whole graph, clamped to zero
    /// within the eigen tolerance.
    pub fn algebraic_conflict(&self) -> f64 {
        let smallest = self.eig_laplacian.first().copied().unwrap_or(0.0);
        if smallest.abs() <= EIGEN_EPS * self.laplacian_scale() {
            0.0
        } else {
            smallest.max(0.0)
        }
    }

    /// Algebraic conflict, refusing disconnected graphs.
    pub fn algebraic_conflict_connected(&self) -> Result<f64, SpectralError> {
        if !self.is_connected() {
            return Err(SpectralError::Disconnected {
                components: self.components,
            });
        }
        Ok(self.algebraic_conflict())
    }

    /// `A = 1 - λ / (d̄_max - 1)` on the whole graph.
    pub fn normalized_algebraic_conflict(&self) -> Result<f64, SpectralError> {
        let dbar = self.dbar_max.unwrap_or(0.0);
        if dbar <= 1.0 {
            return Err(SpectralError::NormalizationUndefined { dbar_max: dbar });
        }
        Ok(1.0 - self.algebraic_conflict() / (dbar - 1.0))
    }

    /// True when the signed and unsigned spectra agree within `tol` (relative).
    pub fn is_balanced(&self, tol: f64) -> bool {
        let scale = self
            .eig_unsigned
            .iter()
            .fold(1.0f64, |acc, v| acc.max(v.abs()));
        self.eig_signed
            .iter()
            .zip(&self.eig_unsigned)
            .all(|(a, b)| (a - b).abs() <= tol * scale)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentConflict {
    pub component: usize,
    pub nodes: usize,
    pub edges: usize,
    pub lambda: f64,
    pub dbar_max: f64,
    pub normalized: f64,
}

/// Algebraic conflict evaluated per cyclic connected component.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConflictReport {
    pub per_component: Vec<ComponentConflict>,
    /// Smallest normalized value over cyclic components.
    pub minimum: f64,
    /// The value for the largest cyclic component.
    pub headline: ComponentConflict,
    pub warning: Option<String>,
}

pub fn component_conflict(g: &SignedGraph) -> Result<ConflictReport, SpectralError> {
    let decomposition = g.components();
    let mut per_component = Vec::new();
    for (id, c) in decomposition.components.iter().enumerate() {
        if !c.cyclic {
            continue;
        }
        let sub = g.induced_subgraph(&c.nodes);
        let summary = SpectralSummary::of(&sub)?;
        let lambda = summary.algebraic_conflict();
        per_component.push(ComponentConflict {
            component: id,
            nodes: c.nodes.len(),
            edges: c.edge_count,
            lambda,
            dbar_max: summary.dbar_max.unwrap_or(0.0),
            normalized: summary.normalized_algebraic_conflict()?,
        });
    }
    let headline = per_component
        .iter()
        .fold(None::<&ComponentConflict>, |best, c| match best {
            Some(b) if b.nodes >= c.nodes => Some(b),
            _ => Some(c),
        })
        .cloned()
        .ok_or(SpectralError::NoCyclicComponent)?;
    let minimum = per_component
        .iter()
        .map(|c| c.normalized)
        .fold(f64::INFINITY, f64::min);
    let warning = (decomposition.count() > 1).then(|| {
        format!(
            "graph has {} components ({} cyclic); A(G) reported for the largest cyclic component",
            decomposition.count(),
            per_component.len()
        )
    });
    Ok(ConflictReport {
        per_component,
        minimum,
        headline,
        warning,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Sign;
    use approx::assert_abs_diff_eq;

    fn summary(g: &SignedGraph) -> SpectralSummary {
        SpectralSummary::of(g).unwrap()
    }

    #[test]
    fn complete_graph_spectra() {
        let s = summary(&SignedGraph::complete(3, Sign::Positive));
        assert_abs_diff_eq!(s.eig_signed[0], -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s.eig_signed[1], -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s.eig_signed[2], 2.0, epsilon = 1e-12);
        let c = summary(&SignedGraph::complete(3, Sign::Negative));
        assert_abs_diff_eq!(c.eig_signed[0], -2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(c.eig_signed[2], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(c.eig_signed.iter().sum::<f64>(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn walk_balance_k3c() {
        let s = summary(&SignedGraph::complete(3, Sign::Negative));
        let e = std::f64::consts::E;
        let k = (2.0 * e + e.powi(-2)) / (2.0 / e + e * e);
        assert_abs_diff_eq!(s.walk_balance(), (k + 1.0) / 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s.walk_balance(), 0.8429, epsilon = 1e-4);
        let p = summary(&SignedGraph::complete(5, Sign::Positive));
        assert_abs_diff_eq!(p.walk_balance(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn conflict_of_knc() {
        let s = summary(&SignedGraph::complete(5, Sign::Negative));
        assert_abs_diff_eq!(s.algebraic_conflict(), 3.0, epsilon = 1e-9);
        assert_abs_diff_eq!(s.normalized_algebraic_conflict().unwrap(), 0.0, epsilon = 1e-9);
    }

    #[test]
    fn balanced_graphs_have_zero_conflict() {
        let c4 = SignedGraph::from_triples(4, &[(0, 1, -1), (1, 2, 1), (2, 3, -1), (3, 0, 1)])
            .unwrap();
        let s = summary(&c4);
        assert_eq!(s.algebraic_conflict(), 0.0);
        assert!(s.is_balanced(EIGEN_EPS));
        assert!(!summary(&SignedGraph::cycle(3, 1)).is_balanced(EIGEN_EPS));
    }

    #[test]
    fn normalization_errors() {
        let edge = SignedGraph::from_triples(2, &[(0, 1, -1)]).unwrap();
        assert!(matches!(
            summary(&edge).normalized_algebraic_conflict(),
            Err(SpectralError::NormalizationUndefined { .. })
        ));
        let two = SignedGraph::cycle(3, 1).disjoint_union(&SignedGraph::cycle(3, 0));
        assert!(matches!(
            summary(&two).algebraic_conflict_connected(),
            Err(SpectralError::Disconnected { components: 2 })
        ));
        assert!(matches!(
            SpectralSummary::of(&SignedGraph::empty(0)),
            Err(SpectralError::EmptyGraph)
        ));
    }

    #[test]
    fn per_component_report_uses_giant_cyclic_component() {
        let g = SignedGraph::cycle(3, 1)
            .disjoint_union(&SignedGraph::complete(5, Sign::Positive))
            .disjoint_union(&SignedGraph::from_triples(2, &[(0, 1, 1)]).unwrap());
        let report = component_conflict(&g).unwrap();
        assert_eq!(report.per_component.len(), 2);
        assert_eq!(report.headline.nodes, 5);
        assert_abs_diff_eq!(report.headline.normalized, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(report.minimum, 0.0, epsilon = 1e-9);
        assert!(report.warning.is_some());
    }
}
