//! Strawman measures: fraction of positive edges and binary balance.

use thiserror::Error;

use crate::graph::SignedGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("fraction of positive edges is undefined without edges")]
pub struct NoEdges;

/// `Y = m⁺ / m`.
pub fn fraction_positive(g: &SignedGraph) -> Result<f64, NoEdges> {
    if g.edge_count() == 0 {
        return Err(NoEdges);
    }
    Ok(g.positive_count() as f64 / g.edge_count() as f64)
}

/// `Z = 1` for balanced graphs, `0` otherwise.
pub fn binary_balance(g: &SignedGraph) -> f64 {
    if g.is_balanced() {
        1.0
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Sign;

    #[test]
    fn examples() {
        assert_eq!(fraction_positive(&SignedGraph::complete(4, Sign::Positive)), Ok(1.0));
        assert_eq!(fraction_positive(&SignedGraph::complete(4, Sign::Negative)), Ok(0.0));
        assert_eq!(fraction_positive(&SignedGraph::empty(2)), Err(NoEdges));
        assert_eq!(binary_balance(&SignedGraph::cycle(3, 1)), 0.0);
        assert_eq!(binary_balance(&SignedGraph::cycle(4, 2)), 1.0);
    }
}
