//! Parameter sweeps over synthetic graphs, emitted as long-format rows
//! (`parameter, run, measure, value`) for external plotting.

use std::io;

use rayon::prelude::*;
use serde::Serialize;

use crate::cycles::{CensusError, CycleCatalog};
use crate::graph::SignedGraph;
use crate::measure::{EvalConfig, MeasureError, MeasureId, Profile};
use crate::synthetic::{self, derive_seed, OracleMeasure, SignAssignment, SyntheticError};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub parameter: usize,
    pub run: usize,
    pub measure: String,
    pub value: Option<f64>,
    /// Exact closed-form value, for the complete-graph families.
    pub oracle: Option<f64>,
    /// Large-`n` approximation, for the complete-graph families.
    pub asymptotic: Option<f64>,
    /// `ok`, `skipped: budget`, or the error that prevented a value.
    pub status: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErSweep {
    pub n: usize,
    pub p: f64,
    pub runs: usize,
    /// Values of `m⁻`; `None` means every value `0..=m`.
    pub negatives: Option<Vec<usize>>,
    pub measures: Vec<MeasureId>,
}

impl Default for ErSweep {
    fn default() -> Self {
        let mut measures = vec![MeasureId::D, MeasureId::CRec, MeasureId::C];
        measures.extend((3..=8).map(MeasureId::Dk));
        measures.extend([MeasureId::W, MeasureId::T, MeasureId::A, MeasureId::F]);
        ErSweep {
            n: 15,
            p: 0.5,
            runs: 50,
            negatives: None,
            measures,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegularSweep {
    pub orders: Vec<usize>,
    pub k: usize,
    pub negative_fraction: f64,
    pub runs: usize,
    pub measures: Vec<MeasureId>,
}

impl Default for RegularSweep {
    fn default() -> Self {
        RegularSweep {
            orders: (10..=60).step_by(10).collect(),
            k: 4,
            negative_fraction: 0.5,
            runs: 100,
            measures: vec![MeasureId::W, MeasureId::T, MeasureId::A, MeasureId::F],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `K_n` with one negative edge.
    Kna,
    /// All-negative `K_n`.
    Knc,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilySweep {
    pub family: Family,
    pub orders: Vec<usize>,
    pub measures: Vec<MeasureId>,
}

impl FamilySweep {
    pub fn new(family: Family) -> Self {
        FamilySweep {
            family,
            orders: (3..=12).collect(),
            measures: vec![
                MeasureId::D,
                MeasureId::C,
                MeasureId::Dk(3),
                MeasureId::Dk(4),
                MeasureId::W,
                MeasureId::Lambda,
                MeasureId::A,
                MeasureId::L,
                MeasureId::F,
            ],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Experiment {
    ErSweep(ErSweep),
    RegularSweep(RegularSweep),
    Family(FamilySweep),
}

fn status_of(e: &MeasureError) -> String {
    match e {
        MeasureError::Census(CensusError::BudgetExceeded { .. })
        | MeasureError::Census(CensusError::CatalogTooLarge { .. }) => "skipped: budget".into(),
        other => other.to_string(),
    }
}

fn row(parameter: usize, run: usize, id: MeasureId, value: Result<f64, MeasureError>) -> Row {
    let (value, status) = match value {
        Ok(v) => (Some(v), "ok".to_string()),
        Err(e) => (None, status_of(&e)),
    };
    Row {
        parameter,
        run,
        measure: id.name(),
        value,
        oracle: None,
        asymptotic: None,
        status,
    }
}

/// Every measure on one graph, sharing intermediates; `census` overrides
/// the graph's own enumeration.
fn measure_rows(
    g: &SignedGraph,
    parameter: usize,
    run: usize,
    measures: &[MeasureId],
    config: EvalConfig,
    census: Option<Result<crate::cycles::CycleCensus, CensusError>>,
) -> Vec<Row> {
    let mut profile = Profile::new(g, config);
    let mut census_error = None;
    match census {
        Some(Ok(c)) => profile = profile.with_census(c),
        Some(Err(e)) => census_error = Some(e),
        None => {}
    }
    measures
        .iter()
        .map(|&id| {
            let value = match &census_error {
                Some(e) if id.needs_census() => Err(MeasureError::Census(e.clone())),
                _ => profile.value(id),
            };
            row(parameter, run, id, value)
        })
        .collect()
}

impl Experiment {
    /// Runs the sweep; rows are ordered by parameter, run and measure
    /// regardless of scheduling.
    pub fn run(&self, seed: u64, config: EvalConfig) -> Result<Vec<Row>, SyntheticError> {
        match self {
            Experiment::ErSweep(s) => er_sweep(s, seed, config),
            Experiment::RegularSweep(s) => regular_sweep(s, seed, config),
            Experiment::Family(s) => family_sweep(s, config),
        }
    }
}

fn er_sweep(s: &ErSweep, seed: u64, config: EvalConfig) -> Result<Vec<Row>, SyntheticError> {
    let topology = synthetic::gen_erdos_renyi(s.n, s.p, derive_seed(seed, 0))?;
    let m = topology.edge_count();
    let negatives = s.negatives.clone().unwrap_or_else(|| (0..=m).collect());
    if let Some(&bad) = negatives.iter().find(|&&k| k > m) {
        return Err(SyntheticError::TooManyNegatives { requested: bad, m });
    }
    // one enumeration serves every sign assignment
    let catalog = s
        .measures
        .iter()
        .any(MeasureId::needs_census)
        .then(|| CycleCatalog::enumerate(&topology, config.max_cycle_len, config.census_budget));
    let tasks: Vec<(usize, usize)> = negatives
        .iter()
        .flat_map(|&k| (0..s.runs).map(move |r| (k, r)))
        .collect();
    let rows = tasks
        .par_iter()
        .map(|&(k, run)| {
            let task_seed = derive_seed(derive_seed(seed, 1 + k as u64), run as u64);
            let g = synthetic::assign_signs(&topology, SignAssignment::FixedCount(k), task_seed)?;
            let census = catalog.as_ref().map(|c| match c {
                Ok(c) => Ok(c.census(&g.signs())),
                Err(e) => Err(e.clone()),
            });
            Ok(measure_rows(&g, k, run, &s.measures, config, census))
        })
        .collect::<Result<Vec<_>, SyntheticError>>()?;
    Ok(rows.into_iter().flatten().collect())
}

fn regular_sweep(s: &RegularSweep, seed: u64, config: EvalConfig) -> Result<Vec<Row>, SyntheticError> {
    if !(0.0..=1.0).contains(&s.negative_fraction) {
        return Err(SyntheticError::InvalidProbability(s.negative_fraction));
    }
    let mut out = Vec::new();
    for &n in &s.orders {
        let topology = synthetic::gen_k_regular(n, s.k, derive_seed(seed, n as u64))?;
        let negatives = (topology.edge_count() as f64 * s.negative_fraction).round() as usize;
        let rows = (0..s.runs)
            .into_par_iter()
            .map(|run| {
                let task_seed = derive_seed(derive_seed(seed, (1 << 32) + n as u64), run as u64);
                let g = synthetic::assign_signs(&topology, SignAssignment::FixedCount(negatives), task_seed)?;
                Ok(measure_rows(&g, n, run, &s.measures, config, None))
            })
            .collect::<Result<Vec<_>, SyntheticError>>()?;
        out.extend(rows.into_iter().flatten());
    }
    Ok(out)
}

fn family_sweep(s: &FamilySweep, config: EvalConfig) -> Result<Vec<Row>, SyntheticError> {
    let mut out = Vec::new();
    for &n in &s.orders {
        let g = match s.family {
            Family::Kna => synthetic::make_kna(n)?,
            Family::Knc => synthetic::make_knc(n)?,
        };
        for mut r in measure_rows(&g, n, 0, &s.measures, config, None) {
            if let Ok(o) = OracleMeasure::from_name(&r.measure) {
                let (exact, approx) = match s.family {
                    Family::Kna => (synthetic::oracle_kna(n, o), synthetic::asymptotic_kna(n, o)),
                    Family::Knc => (synthetic::oracle_knc(n, o), synthetic::asymptotic_knc(n, o)),
                };
                r.oracle = exact.ok();
                r.asymptotic = approx;
            }
            out.push(r);
        }
    }
    Ok(out)
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.12}")).unwrap_or_default()
}

/// Writes rows as CSV with a header line.
pub fn write_csv<W: io::Write>(rows: &[Row], out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["parameter", "run", "measure", "value", "oracle", "asymptotic", "status"])?;
    for r in rows {
        w.write_record([
            r.parameter.to_string(),
            r.run.to_string(),
            r.measure.clone(),
            opt(r.value),
            opt(r.oracle),
            opt(r.asymptotic),
            r.status.clone(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Mean and sample standard deviation of the successful values per
/// `(parameter, measure)`, in first-seen order.
pub fn summarize(rows: &[Row]) -> Vec<(usize, String, f64, f64, usize)> {
    let mut keys: Vec<(usize, String)> = Vec::new();
    let mut values: Vec<Vec<f64>> = Vec::new();
    for r in rows {
        let key = (r.parameter, r.measure.clone());
        let slot = match keys.iter().position(|k| *k == key) {
            Some(i) => i,
            None => {
                keys.push(key);
                values.push(Vec::new());
                keys.len() - 1
            }
        };
        if let Some(v) = r.value {
            values[slot].push(v);
        }
    }
    keys.into_iter()
        .zip(values)
        .filter(|(_, v)| !v.is_empty())
        .map(|((p, name), v)| {
            let (mean, sd) = crate::stats::mean_sd(&v);
            (p, name, mean, sd, v.len())
        })
        .collect()
}
