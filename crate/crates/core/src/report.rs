//! Per-graph analysis report: measure values, optional reshuffle
//! statistics, and frustration diagnostics.

use std::time::Instant;

use serde::Serialize;

use crate::cycles::CensusError;
use crate::graph::SignedGraph;
use crate::measure::{EvalConfig, MeasureError, MeasureId, Profile};
use crate::stats::{self, ReshuffleStats, StatsError};

pub const REPORT_SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    /// Cycle census over budget.
    SkippedBudget,
    /// The measure is undefined on this graph (e.g. no edges).
    Undefined,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureEntry {
    pub measure: MeasureId,
    pub value: Option<f64>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reshuffle: Option<ReshuffleStats>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrustrationSummary {
    pub l_value: usize,
    pub exact: bool,
    pub lower_bound: usize,
    pub upper_bound: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Timing {
    pub measures_ms: f64,
    pub reshuffle_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BalanceReport {
    pub schema: u32,
    pub n: usize,
    pub m: usize,
    pub m_negative: usize,
    pub density: f64,
    pub measures: Vec<MeasureEntry>,
    /// Present when a frustration-based measure was requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frustration: Option<FrustrationSummary>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    /// Wall-clock timings; opt-in so that reports stay reproducible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

fn classify(e: &MeasureError) -> Status {
    match e {
        MeasureError::Census(CensusError::BudgetExceeded { .. } | CensusError::CatalogTooLarge { .. }) => {
            Status::SkippedBudget
        }
        _ => Status::Undefined,
    }
}

fn uses_frustration(id: MeasureId) -> bool {
    matches!(id, MeasureId::L | MeasureId::F | MeasureId::FPrime | MeasureId::X)
}

impl BalanceReport {
    pub fn analyze(g: &SignedGraph, measures: &[MeasureId], config: EvalConfig) -> BalanceReport {
        let start = Instant::now();
        let profile = Profile::new(g, config);
        let entries = measures
            .iter()
            .map(|&id| match profile.value(id) {
                Ok(v) => MeasureEntry {
                    measure: id,
                    value: Some(v),
                    status: Status::Ok,
                    detail: None,
                    reshuffle: None,
                },
                Err(e) => MeasureEntry {
                    measure: id,
                    value: None,
                    status: classify(&e),
                    detail: Some(e.to_string()),
                    reshuffle: None,
                },
            })
            .collect();
        let mut warnings = Vec::new();
        let frustration = measures.iter().any(|&id| uses_frustration(id)).then(|| {
            let r = profile.frustration();
            if !r.exact {
                warnings.push(format!(
                    "frustration search hit its budget: L in [{}, {}], reporting the upper bound",
                    r.lower_bound, r.upper_bound
                ));
            }
            FrustrationSummary {
                l_value: r.l_value,
                exact: r.exact,
                lower_bound: r.lower_bound,
                upper_bound: r.upper_bound,
            }
        });
        if measures.iter().any(|id| matches!(id, MeasureId::A | MeasureId::Lambda)) {
            if let Ok(Some(w)) = profile.conflict_report().map(|c| c.warning.clone()) {
                warnings.push(w);
            }
        }
        let (n, m, m_negative) = g.triple();
        BalanceReport {
            schema: REPORT_SCHEMA,
            n,
            m,
            m_negative,
            density: g.density(),
            measures: entries,
            frustration,
            warnings,
            timing: Some(Timing {
                measures_ms: start.elapsed().as_secs_f64() * 1e3,
                reshuffle_ms: None,
            }),
        }
    }

    /// Adds reshuffle statistics for every measure that was computed.
    pub fn reshuffle(
        &mut self,
        g: &SignedGraph,
        runs: usize,
        seed: u64,
        config: EvalConfig,
    ) -> Result<(), StatsError> {
        let start = Instant::now();
        let ids: Vec<MeasureId> = self
            .measures
            .iter()
            .filter(|e| e.status == Status::Ok)
            .map(|e| e.measure)
            .collect();
        if runs < 2 {
            return Err(StatsError::TooFewRuns(runs));
        }
        let results = stats::reshuffle_test(g, &ids, runs, seed, config)?;
        for (id, s) in ids.iter().zip(results) {
            if let Some(e) = self.measures.iter_mut().find(|e| e.measure == *id) {
                e.reshuffle = Some(s);
            }
        }
        if let Some(t) = &mut self.timing {
            t.reshuffle_ms = Some(start.elapsed().as_secs_f64() * 1e3);
        }
        Ok(())
    }

    pub fn without_timing(mut self) -> Self {
        self.timing = None;
        self
    }

    pub fn any_skipped(&self) -> bool {
        self.measures.iter().any(|e| e.status == Status::SkippedBudget)
    }

    /// Checks the documented ranges: `[0, 1]` for measures of balance,
    /// non-negative for `lambda` and `L`.
    pub fn values_in_range(&self) -> bool {
        self.measures.iter().all(|e| match e.value {
            None => true,
            Some(v) if e.measure.is_imbalance() => v >= 0.0,
            Some(v) => (-1e-12..=1.0 + 1e-12).contains(&v),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        let mut out = format!(
            "n = {}, m = {}, m- = {}, density = {:.4}\n",
            self.n, self.m, self.m_negative, self.density
        );
        let reshuffled = self.measures.iter().any(|e| e.reshuffle.is_some());
        out.push_str(&format!("{:<8} {:>10}", "measure", "value"));
        if reshuffled {
            out.push_str(&format!(" {:>10} {:>10} {:>8}", "mean", "sd", "z"));
        }
        out.push('\n');
        for e in &self.measures {
            let value = match (e.value, e.status) {
                (Some(v), _) => format!("{v:.4}"),
                (None, Status::SkippedBudget) => "skipped: budget".into(),
                (None, _) => "undefined".into(),
            };
            out.push_str(&format!("{:<8} {:>10}", e.measure.name(), value));
            if let Some(s) = &e.reshuffle {
                let z = s.z.map(|z| format!("{z:.2}")).unwrap_or_else(|| "-".into());
                out.push_str(&format!(" {:>10.4} {:>10.4} {:>8}", s.mean, s.sd, z));
            }
            out.push('\n');
        }
        if let Some(f) = &self.frustration {
            out.push_str(&format!(
                "L = {} ({})\n",
                f.l_value,
                if f.exact { "exact".to_string() } else { format!("bounds {}..{}", f.lower_bound, f.upper_bound) }
            ));
        }
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Sign;

    #[test]
    fn balanced_report() {
        let g = SignedGraph::cycle(6, 2);
        let r = BalanceReport::analyze(&g, &MeasureId::ALL, EvalConfig::default()).without_timing();
        assert!(r.values_in_range());
        assert!(!r.any_skipped());
        assert!(r.frustration.as_ref().unwrap().exact);
        let json = r.to_json();
        assert!(json.contains("\"schema\": 1"));
        assert!(!json.contains("timing"));
    }

    #[test]
    fn skipped_and_undefined() {
        let g = SignedGraph::complete(6, Sign::Positive);
        let config = EvalConfig {
            census_budget: 3,
            ..EvalConfig::default()
        };
        let r = BalanceReport::analyze(&g, &[MeasureId::D, MeasureId::T], config);
        assert_eq!(r.measures[0].status, Status::SkippedBudget);
        assert!(r.to_table().contains("skipped: budget"));
        let empty = SignedGraph::empty(3);
        let r = BalanceReport::analyze(&empty, &[MeasureId::Y], EvalConfig::default());
        assert_eq!(r.measures[0].status, Status::Undefined);
    }

    #[test]
    fn reshuffle_needs_two_runs() {
        let g = SignedGraph::cycle(5, 1);
        let mut r = BalanceReport::analyze(&g, &[MeasureId::T], EvalConfig::default());
        assert_eq!(r.reshuffle(&g, 1, 0, EvalConfig::default()), Err(StatsError::TooFewRuns(1)));
        r.reshuffle(&g, 20, 0, EvalConfig::default()).unwrap();
        assert_eq!(r.measures[0].reshuffle.as_ref().unwrap().runs, 20);
    }
}
