//! Sign-reshuffling null model and Z-scores.

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cycles::CycleCatalog;
use crate::graph::SignedGraph;
use crate::measure::{EvalConfig, MeasureError, MeasureId, Profile};
use crate::synthetic::{derive_seed, rng};

pub const DEFAULT_RESHUFFLES: usize = 500;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StatsError {
    #[error("R ≥ 2 required, got {0}")]
    TooFewRuns(usize),
    #[error("measure {measure} failed on the observed graph: {source}")]
    Observed { measure: String, source: MeasureError },
    #[error("measure {measure} failed on reshuffle {run}: {source}")]
    Run {
        measure: String,
        run: usize,
        source: MeasureError,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReshuffleStats {
    pub measure: String,
    pub observed: f64,
    pub mean: f64,
    pub sd: f64,
    /// `None` when the reshuffled values have zero spread.
    pub z: Option<f64>,
    pub runs: usize,
    pub seed: u64,
}

/// Same topology with the edge signs permuted uniformly at random.
pub fn reshuffle(g: &SignedGraph, seed: u64) -> SignedGraph {
    let mut signs = g.signs();
    signs.shuffle(&mut rng(seed));
    g.with_signs(&signs)
}

/// Sample mean and standard deviation (denominator `len - 1`).
pub fn mean_sd(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let ss: f64 = values.iter().map(|v| (v - mean).powi(2)).sum();
    (mean, (ss / (n - 1.0)).sqrt())
}

/// `z = (observed - mean) / sd`, undefined for `sd = 0`.
pub fn z_score(observed: f64, mean: f64, sd: f64) -> Option<f64> {
    (sd > 0.0).then(|| (observed - mean) / sd)
}

/// Reshuffle test of several measures at once; run `r` uses the seed
/// `derive_seed(seed, r)` and every measure sees the same reshuffles.
pub fn reshuffle_test(
    g: &SignedGraph,
    measures: &[MeasureId],
    runs: usize,
    seed: u64,
    config: EvalConfig,
) -> Result<Vec<ReshuffleStats>, StatsError> {
    if runs < 2 {
        return Err(StatsError::TooFewRuns(runs));
    }
    let profile = Profile::new(g, config);
    let observed = measures
        .iter()
        .map(|&id| {
            profile.value(id).map_err(|source| StatsError::Observed {
                measure: id.name(),
                source,
            })
        })
        .collect::<Result<Vec<f64>, _>>()?;
    // reshuffling keeps the topology, so the cycles are enumerated once
    let catalog = if measures.iter().any(MeasureId::needs_census) {
        CycleCatalog::enumerate(g, config.max_cycle_len, config.census_budget).ok()
    } else {
        None
    };
    let samples: Vec<Vec<f64>> = (0..runs)
        .into_par_iter()
        .map(|run| {
            let shuffled = reshuffle(g, derive_seed(seed, run as u64));
            let mut p = Profile::new(&shuffled, config);
            if let Some(c) = &catalog {
                p = p.with_census(c.census(&shuffled.signs()));
            }
            measures
                .iter()
                .map(|&id| {
                    p.value(id).map_err(|source| StatsError::Run {
                        measure: id.name(),
                        run,
                        source,
                    })
                })
                .collect::<Result<Vec<f64>, _>>()
        })
        .collect::<Result<_, _>>()?;
    Ok(measures
        .iter()
        .enumerate()
        .map(|(i, id)| {
            let column: Vec<f64> = samples.iter().map(|row| row[i]).collect();
            let (mean, sd) = mean_sd(&column);
            ReshuffleStats {
                measure: id.name(),
                observed: observed[i],
                mean,
                sd,
                z: z_score(observed[i], mean, sd),
                runs,
                seed,
            }
        })
        .collect())
}
