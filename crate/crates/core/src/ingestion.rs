//! Edge-list parsing and serialization, ranking tables, and dataset loading.
//!
//! Edge-list format, one item per line:
//!
//! ```text
//! # comment
//! alice bob +1
//! bob carol -
//! dave          # a node without edges
//! ```
//!
//! Accepted signs are `+1`, `-1`, `+`, `-`, `1` (and the Unicode minus).

use std::collections::{BTreeMap, HashMap, HashSet};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use thiserror::Error;

use crate::graph::{GraphError, Sign, SignedGraph};

pub const DATA_ENV: &str = "SIGNED_BALANCE_DATA";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IngestError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
    #[error("cannot read {path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("{name}: expected (n, m, m⁻) = {expected:?}, found {found:?}")]
    TripleMismatch {
        name: String,
        expected: (usize, usize, usize),
        found: (usize, usize, usize),
    },
    #[error("unknown dataset `{0}`")]
    UnknownDataset(String),
    #[error("rank ranges {positive:?} and {negative:?} overlap")]
    OverlappingRanges {
        positive: RangeInclusive<u32>,
        negative: RangeInclusive<u32>,
    },
    #[error("ranking table: {0}")]
    Ranking(String),
}

fn parse_sign(token: &str) -> Option<Sign> {
    match token {
        "+1" | "+" | "1" => Some(Sign::Positive),
        "-1" | "-" | "\u{2212}" | "\u{2212}1" => Some(Sign::Negative),
        _ => None,
    }
}

/// Parses the edge-list format. Labels get dense ids in first-seen order.
pub fn parse_edge_list(text: &str) -> Result<SignedGraph, IngestError> {
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    let mut intern = |token: &str, labels: &mut Vec<String>| -> usize {
        *ids.entry(token.to_string()).or_insert_with(|| {
            labels.push(token.to_string());
            labels.len() - 1
        })
    };
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens.as_slice() {
            [] => {}
            [node] => {
                intern(node, &mut labels);
            }
            [a, b, s] => {
                let sign = parse_sign(s).ok_or_else(|| IngestError::Malformed {
                    line,
                    message: format!("invalid sign `{s}`"),
                })?;
                let u = intern(a, &mut labels);
                let v = intern(b, &mut labels);
                if u == v {
                    return Err(IngestError::Graph {
                        line,
                        source: GraphError::SelfLoop {
                            node: u,
                            sign: sign.value(),
                        },
                    });
                }
                if !seen.insert((u.min(v), u.max(v))) {
                    return Err(IngestError::Graph {
                        line,
                        source: GraphError::DuplicateEdge {
                            u: u.min(v),
                            v: u.max(v),
                        },
                    });
                }
                edges.push((u, v, sign));
            }
            _ => {
                return Err(IngestError::Malformed {
                    line,
                    message: format!("expected `u v sign`, found {} fields", tokens.len()),
                })
            }
        }
    }
    let g = SignedGraph::new(labels.len(), edges).map_err(|source| IngestError::Graph { line: 0, source })?;
    g.with_labels(labels)
        .map_err(|source| IngestError::Graph { line: 0, source })
}

/// Writes `u v +1|-1` per edge, then one line per isolated node. Nodes are
/// written by label, or by index when the graph has none.
pub fn serialize_edge_list(g: &SignedGraph) -> String {
    let mut out = String::new();
    for e in g.edges() {
        out.push_str(&format!("{} {} {}\n", g.label(e.u), g.label(e.v), e.sign));
    }
    for v in 0..g.node_count() {
        if g.degree(v) == 0 {
            out.push_str(&g.label(v));
            out.push('\n');
        }
    }
    out
}

pub fn read_edge_list(path: &Path) -> Result<SignedGraph, IngestError> {
    let text = std::fs::read_to_string(path).map_err(|e| IngestError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    parse_edge_list(&text)
}

/// How a criterion's ranks translate into signs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    /// Sign decided by the rank thresholds.
    Ranked,
    /// Every nomination is positive.
    Positive,
    /// Every nomination is negative.
    Negative,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct Nomination {
    pub criterion: String,
    pub polarity: Polarity,
    pub rater: String,
    pub ratee: String,
    #[serde(default)]
    pub rank: Option<u32>,
}

/// One-directional nominations of actors by actors, possibly under
/// several criteria.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RankingTable {
    pub actors: Vec<String>,
    pub nominations: Vec<Nomination>,
}

impl RankingTable {
    /// Builds a table, registering actors in first-seen order.
    pub fn new(nominations: Vec<Nomination>) -> Result<Self, IngestError> {
        let mut actors: Vec<String> = Vec::new();
        let mut known = HashSet::new();
        for n in &nominations {
            if n.rater == n.ratee {
                return Err(IngestError::Ranking(format!("{} ranks itself", n.rater)));
            }
            if n.polarity == Polarity::Ranked && n.rank.is_none() {
                return Err(IngestError::Ranking(format!(
                    "ranked criterion {} lacks a rank for {} -> {}",
                    n.criterion, n.rater, n.ratee
                )));
            }
            for a in [&n.rater, &n.ratee] {
                if known.insert(a.clone()) {
                    actors.push(a.clone());
                }
            }
        }
        Ok(RankingTable { actors, nominations })
    }

    /// Reads CSV with header `criterion,polarity,rater,ratee,rank`.
    pub fn from_csv(text: &str) -> Result<Self, IngestError> {
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .comment(Some(b'#'))
            .from_reader(text.as_bytes());
        let rows = reader
            .deserialize()
            .collect::<Result<Vec<Nomination>, _>>()
            .map_err(|e| IngestError::Ranking(e.to_string()))?;
        RankingTable::new(rows)
    }
}

/// Signed graph of reciprocated relations. Per ordered pair the signs of all
/// nominations are summed; the majority sign is the directed relation and a
/// tie gives none. An undirected edge appears only when both directions
/// carry the same sign.
pub fn infer_from_rankings(
    table: &RankingTable,
    positive_ranks: RangeInclusive<u32>,
    negative_ranks: RangeInclusive<u32>,
) -> Result<SignedGraph, IngestError> {
    if positive_ranks.start() <= negative_ranks.end() && negative_ranks.start() <= positive_ranks.end() {
        return Err(IngestError::OverlappingRanges {
            positive: positive_ranks,
            negative: negative_ranks,
        });
    }
    let index: HashMap<&str, usize> = table
        .actors
        .iter()
        .enumerate()
        .map(|(i, a)| (a.as_str(), i))
        .collect();
    let mut tally: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for n in &table.nominations {
        let sign = match n.polarity {
            Polarity::Positive => 1,
            Polarity::Negative => -1,
            Polarity::Ranked => {
                let rank = n.rank.expect("validated on construction");
                if positive_ranks.contains(&rank) {
                    1
                } else if negative_ranks.contains(&rank) {
                    -1
                } else {
                    continue;
                }
            }
        };
        let rater = *index
            .get(n.rater.as_str())
            .ok_or_else(|| IngestError::Ranking(format!("unknown actor {}", n.rater)))?;
        let ratee = *index
            .get(n.ratee.as_str())
            .ok_or_else(|| IngestError::Ranking(format!("unknown actor {}", n.ratee)))?;
        *tally.entry((rater, ratee)).or_default() += sign;
    }
    let mut edges = Vec::new();
    for (&(u, v), &forward) in &tally {
        if u > v {
            continue;
        }
        let backward = tally.get(&(v, u)).copied().unwrap_or(0);
        if forward != 0 && backward != 0 && forward.signum() == backward.signum() {
            edges.push((u, v, Sign::from_int(forward.signum()).expect("nonzero")));
        }
    }
    let g = SignedGraph::new(table.actors.len(), edges).expect("distinct ordered pairs");
    Ok(g.with_labels(table.actors.clone()).expect("one label per actor"))
}

/// A published network and the counts it must reproduce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dataset {
    pub name: &'static str,
    pub file: &'static str,
    pub description: &'static str,
    pub triple: (usize, usize, usize),
    /// Counts of the largest connected component, when the graph is disconnected.
    pub giant: Option<(usize, usize, usize)>,
    pub bundled: bool,
}

pub const DATASETS: [Dataset; 7] = [
    Dataset {
        name: "G1",
        file: "G1.edges",
        description: "alliances and enmities among highland tribes",
        triple: (16, 58, 29),
        giant: None,
        bundled: true,
    },
    Dataset {
        name: "G2",
        file: "G2.edges",
        description: "monastery relations, aggregated",
        triple: (18, 49, 12),
        giant: None,
        bundled: true,
    },
    Dataset {
        name: "G3",
        file: "G3.edges",
        description: "fraternity preference rankings",
        triple: (17, 40, 17),
        giant: None,
        bundled: true,
    },
    Dataset {
        name: "G4",
        file: "G4.edges",
        description: "college living-group rankings",
        triple: (17, 36, 16),
        giant: None,
        bundled: true,
    },
    Dataset {
        name: "G5",
        file: "G5.edges",
        description: "external",
        triple: (100, 2461, 1047),
        giant: None,
        bundled: false,
    },
    Dataset {
        name: "G6",
        file: "G6.edges",
        description: "external",
        triple: (690, 1080, 220),
        giant: Some((664, 1064, 220)),
        bundled: false,
    },
    Dataset {
        name: "G7",
        file: "G7.edges",
        description: "external",
        triple: (1461, 3215, 1336),
        giant: Some((1376, 3150, 1302)),
        bundled: false,
    },
];

pub fn dataset(name: &str) -> Result<&'static Dataset, IngestError> {
    DATASETS
        .iter()
        .find(|d| d.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| IngestError::UnknownDataset(name.to_string()))
}

/// `$SIGNED_BALANCE_DATA`, or the `data/` directory of the source tree.
pub fn data_dir() -> PathBuf {
    match std::env::var_os(DATA_ENV) {
        Some(dir) => PathBuf::from(dir),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data"),
    }
}

fn check_triple(name: &str, g: &SignedGraph, expected: (usize, usize, usize)) -> Result<(), IngestError> {
    let found = g.triple();
    if found != expected {
        return Err(IngestError::TripleMismatch {
            name: name.to_string(),
            expected,
            found,
        });
    }
    Ok(())
}

/// Loads a file and insists on the given `(n, m, m⁻)`.
pub fn load_external(path: &Path, expected: (usize, usize, usize)) -> Result<SignedGraph, IngestError> {
    let g = read_edge_list(path)?;
    check_triple(&path.display().to_string(), &g, expected)?;
    Ok(g)
}

/// Loads a named dataset from [`data_dir`], validating its counts.
pub fn load_bundled(name: &str) -> Result<SignedGraph, IngestError> {
    let d = dataset(name)?;
    let g = read_edge_list(&data_dir().join(d.file))?;
    check_triple(d.name, &g, d.triple)?;
    Ok(g)
}

/// The largest connected component as its own graph.
pub fn giant_component(g: &SignedGraph) -> SignedGraph {
    let decomposition = g.components();
    match decomposition.giant() {
        Some(i) => g.induced_subgraph(&decomposition.components[i].nodes),
        None => g.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_small_list() {
        let g = parse_edge_list("a b +\nb c -\n").unwrap();
        assert_eq!(g.triple(), (3, 2, 1));
        assert_eq!(g.label(2), "c");
        let g = parse_edge_list("# header\n\nx y 1   # trailing\ny z \u{2212}1\nw\n").unwrap();
        assert_eq!(g.triple(), (4, 2, 1));
    }

    #[test]
    fn reports_line_numbers() {
        assert_eq!(
            parse_edge_list("a b +\na a +\n"),
            Err(IngestError::Graph {
                line: 2,
                source: GraphError::SelfLoop { node: 0, sign: 1 }
            })
        );
        assert!(matches!(
            parse_edge_list("a b +\nb a -\n"),
            Err(IngestError::Graph {
                line: 2,
                source: GraphError::DuplicateEdge { .. }
            })
        ));
        assert!(matches!(parse_edge_list("a b 2\n"), Err(IngestError::Malformed { line: 1, .. })));
        assert!(matches!(parse_edge_list("a b\n"), Err(IngestError::Malformed { line: 1, .. })));
    }

    #[test]
    fn serializer_format() {
        let g = parse_edge_list("a b +\nb c -\nd\n").unwrap();
        assert_eq!(serialize_edge_list(&g), "a b +1\nb c -1\nd\n");
        assert_eq!(parse_edge_list(&serialize_edge_list(&g)).unwrap(), g);
    }

    fn nomination(rater: &str, ratee: &str, rank: u32) -> Nomination {
        Nomination {
            criterion: "like".into(),
            polarity: Polarity::Ranked,
            rater: rater.into(),
            ratee: ratee.into(),
            rank: Some(rank),
        }
    }

    #[test]
    fn reciprocation_rule() {
        let table = RankingTable::new(vec![
            nomination("u", "v", 2),
            nomination("v", "u", 4),
            nomination("u", "w", 1),
            nomination("w", "u", 15),
            nomination("v", "w", 3),
        ])
        .unwrap();
        let g = infer_from_rankings(&table, 1..=5, 12..=16).unwrap();
        assert_eq!(g.triple(), (3, 1, 0));
        assert!(g.has_edge(0, 1));
        assert!(matches!(
            infer_from_rankings(&table, 1..=5, 5..=16),
            Err(IngestError::OverlappingRanges { .. })
        ));
        assert!(RankingTable::new(vec![nomination("a", "a", 1)]).is_err());
    }

    #[test]
    fn csv_tables_aggregate_criteria() {
        let text = "criterion,polarity,rater,ratee,rank\n\
                    like,positive,a,b,\n\
                    esteem,positive,a,b,\n\
                    dislike,negative,a,b,\n\
                    like,positive,b,a,\n\
                    dislike,negative,a,c,\n\
                    like,positive,c,a,\n\
                    dislike,negative,c,a,\n";
        let table = RankingTable::from_csv(text).unwrap();
        let g = infer_from_rankings(&table, 1..=3, 4..=6).unwrap();
        // a->b: +2-1 > 0, b->a: +1; c->a ties, so no a-c edge
        assert_eq!(g.triple(), (3, 1, 0));
    }

    #[test]
    fn dataset_lookup() {
        assert_eq!(dataset("g2").unwrap().triple, (18, 49, 12));
        assert!(dataset("G9").is_err());
    }

    #[test]
    fn external_triple_mismatch() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x.edges");
        std::fs::write(&path, "a b +\nb c -\n").unwrap();
        assert_eq!(load_external(&path, (3, 2, 1)).unwrap().edge_count(), 2);
        assert!(matches!(
            load_external(&path, (100, 2461, 1047)),
            Err(IngestError::TripleMismatch { .. })
        ));
    }
}
