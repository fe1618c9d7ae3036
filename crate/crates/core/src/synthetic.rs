//! Graph generators, closed forms for the two complete-graph families, and
//! expected values under independent random signs.
//!
//! All randomness goes through ChaCha8 seeded from a `u64`, so a seed
//! reproduces the same graph on every platform.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cycles::CycleCensus;
use crate::graph::{Sign, SignedGraph};

/// Attempts allowed to the pairing model before giving up.
pub const REGULAR_ATTEMPTS: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SyntheticError {
    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),
    #[error("no {k}-regular graph on {n} nodes: n·k is odd")]
    OddDegreeSum { n: usize, k: usize },
    #[error("degree {k} must be below the node count {n}")]
    DegreeTooLarge { n: usize, k: usize },
    #[error("pairing model rejected {attempts} attempts")]
    RejectionBudget { attempts: usize },
    #[error("asked for {requested} negative edges but the graph has {m}")]
    TooManyNegatives { requested: usize, m: usize },
    #[error("complete-graph family needs n ≥ 3, got {0}")]
    TooSmall(usize),
    #[error("unsupported oracle measure `{0}`")]
    UnsupportedMeasure(String),
}

/// SplitMix64 finalizer of `base + index·golden`; per-run seeds for sweeps.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    let mut z = base.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check_probability(p: f64) -> Result<(), SyntheticError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(SyntheticError::InvalidProbability(p))
    }
}

/// G(n, p), all edges positive.
pub fn gen_erdos_renyi(n: usize, p: f64, seed: u64) -> Result<SignedGraph, SyntheticError> {
    check_probability(p)?;
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if r.gen::<f64>() < p {
                edges.push((u, v, Sign::Positive));
            }
        }
    }
    Ok(SignedGraph::new(n, edges).expect("pairs are distinct"))
}

/// Simple k-regular graph from the pairing model, rejecting loops and
/// repeated pairs, all edges positive.
pub fn gen_k_regular(n: usize, k: usize, seed: u64) -> Result<SignedGraph, SyntheticError> {
    if (n * k) % 2 == 1 {
        return Err(SyntheticError::OddDegreeSum { n, k });
    }
    if n > 0 && k >= n {
        return Err(SyntheticError::DegreeTooLarge { n, k });
    }
    let mut r = rng(seed);
    let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat(v).take(k)).collect();
    'attempt: for _ in 0..REGULAR_ATTEMPTS {
        points.shuffle(&mut r);
        let mut seen = std::collections::HashSet::with_capacity(points.len() / 2);
        let mut edges = Vec::with_capacity(points.len() / 2);
        for pair in points.chunks_exact(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u == v || !seen.insert((u, v)) {
                continue 'attempt;
            }
            edges.push((u, v, Sign::Positive));
        }
        return Ok(SignedGraph::new(n, edges).expect("pairing checked"));
    }
    Err(SyntheticError::RejectionBudget {
        attempts: REGULAR_ATTEMPTS,
    })
}

/// How negative signs are placed on a fixed topology.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SignAssignment {
    /// Exactly this many negative edges, chosen uniformly.
    FixedCount(usize),
    /// Each edge negative independently with this probability.
    Iid(f64),
}

pub fn assign_signs(
    g: &SignedGraph,
    spec: SignAssignment,
    seed: u64,
) -> Result<SignedGraph, SyntheticError> {
    let m = g.edge_count();
    let mut r = rng(seed);
    let signs = match spec {
        SignAssignment::FixedCount(requested) => {
            if requested > m {
                return Err(SyntheticError::TooManyNegatives { requested, m });
            }
            let mut signs = vec![Sign::Positive; m];
            for id in index::sample(&mut r, m, requested) {
                signs[id] = Sign::Negative;
            }
            signs
        }
        SignAssignment::Iid(q) => {
            check_probability(q)?;
            (0..m)
                .map(|_| {
                    if r.gen::<f64>() < q {
                        Sign::Negative
                    } else {
                        Sign::Positive
                    }
                })
                .collect()
        }
    };
    Ok(g.with_signs(&signs))
}

/// `K_n` whose only negative edge is `(0, 1)`.
pub fn make_kna(n: usize) -> Result<SignedGraph, SyntheticError> {
    if n < 3 {
        return Err(SyntheticError::TooSmall(n));
    }
    let g = SignedGraph::complete(n, Sign::Positive);
    let mut signs = g.signs();
    signs[g.edge_id(0, 1).expect("complete graph")] = Sign::Negative;
    Ok(g.with_signs(&signs))
}

/// All-negative `K_n`.
pub fn make_knc(n: usize) -> Result<SignedGraph, SyntheticError> {
    if n < 3 {
        return Err(SyntheticError::TooSmall(n));
    }
    Ok(SignedGraph::complete(n, Sign::Negative))
}

/// Measures with closed forms on the complete-graph families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OracleMeasure {
    D,
    /// Weighted cycle balance with `f(k) = 1/k!`.
    C,
    Dk(usize),
    W,
    Lambda,
    A,
    L,
    F,
}

impl OracleMeasure {
    pub fn from_name(name: &str) -> Result<Self, SyntheticError> {
        match name {
            "D" => Ok(OracleMeasure::D),
            "C" => Ok(OracleMeasure::C),
            "W" => Ok(OracleMeasure::W),
            "lambda" => Ok(OracleMeasure::Lambda),
            "A" => Ok(OracleMeasure::A),
            "L" => Ok(OracleMeasure::L),
            "F" => Ok(OracleMeasure::F),
            _ => name
                .strip_prefix('D')
                .and_then(|k| k.parse::<usize>().ok())
                .filter(|&k| k >= 3)
                .map(OracleMeasure::Dk)
                .ok_or_else(|| SyntheticError::UnsupportedMeasure(name.to_string())),
        }
    }
}

fn factorial(n: usize) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

fn ratio(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

/// Number of `k`-cycles in `K_n`: `n! / (2k (n-k)!)`.
pub fn complete_cycle_count(n: usize, k: usize) -> BigInt {
    factorial(n) / (factorial(n - k) * BigInt::from(2 * k))
}

/// Number of `k`-cycles through a fixed edge of `K_n`: `(n-2)! / (n-k)!`.
pub fn cycles_through_edge(n: usize, k: usize) -> BigInt {
    factorial(n - 2) / factorial(n - k)
}

fn weighted_sum<F>(n: usize, weighted: bool, keep: impl Fn(usize) -> bool, term: F) -> BigRational
where
    F: Fn(usize) -> BigInt,
{
    (3..=n).filter(|&k| keep(k)).fold(BigRational::zero(), |acc, k| {
        let w = if weighted { factorial(k) } else { BigInt::one() };
        acc + ratio(term(k), w)
    })
}

/// `D` (or `C` with `1/k!` when `weighted`) of `K_n^a` as an exact rational.
pub fn kna_cycle_balance_exact(n: usize, weighted: bool) -> BigRational {
    let unbalanced = weighted_sum(n, weighted, |_| true, |k| cycles_through_edge(n, k));
    let total = weighted_sum(n, weighted, |_| true, |k| complete_cycle_count(n, k));
    BigRational::one() - unbalanced / total
}

/// `D` (or `C` with `1/k!`) of `K_n^c` as an exact rational.
pub fn knc_cycle_balance_exact(n: usize, weighted: bool) -> BigRational {
    let balanced = weighted_sum(n, weighted, |k| k % 2 == 0, |k| complete_cycle_count(n, k));
    let total = weighted_sum(n, weighted, |_| true, |k| complete_cycle_count(n, k));
    balanced / total
}

/// `L(K_n^c)`: the complement of a maximum cut.
pub fn knc_frustration(n: usize) -> usize {
    if n % 2 == 0 {
        (n * n - 2 * n) / 4
    } else {
        (n * n - 2 * n + 1) / 4
    }
}

fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().expect("finite rational")
}

fn kna_root(n: usize) -> f64 {
    (((n - 2) * (n + 6)) as f64).sqrt()
}

/// Exact (finite-sum or closed-form) value on `K_n^a`.
pub fn oracle_kna(n: usize, measure: OracleMeasure) -> Result<f64, SyntheticError> {
    if n < 3 {
        return Err(SyntheticError::TooSmall(n));
    }
    let nf = n as f64;
    Ok(match measure {
        OracleMeasure::D => to_f64(&kna_cycle_balance_exact(n, false)),
        OracleMeasure::C => to_f64(&kna_cycle_balance_exact(n, true)),
        OracleMeasure::Dk(k) if k > n => 1.0,
        OracleMeasure::Dk(k) => to_f64(&(BigRational::one() - ratio(BigInt::from(2 * k), BigInt::from(n * (n - 1))))),
        OracleMeasure::W => {
            // shifted by n - 1 to keep the exponentials bounded
            let s = nf - 1.0;
            let root = kna_root(n);
            let num = (nf - 3.0) * (-1.0 - s).exp()
                + (1.0 - s).exp()
                + ((nf - 4.0 - root) / 2.0 - s).exp()
                + ((nf - 4.0 + root) / 2.0 - s).exp();
            let den = (nf - 1.0) * (-1.0 - s).exp() + 1.0;
            (num / den + 1.0) / 2.0
        }
        OracleMeasure::Lambda => (nf + 2.0 - kna_root(n)) / 2.0,
        OracleMeasure::A => 1.0 - (nf + 2.0 - kna_root(n)) / (2.0 * nf - 4.0),
        OracleMeasure::L => 1.0,
        OracleMeasure::F => to_f64(&(BigRational::one() - ratio(BigInt::from(4), BigInt::from(n * (n - 1))))),
    })
}

/// Exact (finite-sum or closed-form) value on `K_n^c`.
pub fn oracle_knc(n: usize, measure: OracleMeasure) -> Result<f64, SyntheticError> {
    if n < 3 {
        return Err(SyntheticError::TooSmall(n));
    }
    let nf = n as f64;
    Ok(match measure {
        OracleMeasure::D => to_f64(&knc_cycle_balance_exact(n, false)),
        OracleMeasure::C => to_f64(&knc_cycle_balance_exact(n, true)),
        OracleMeasure::Dk(k) if k > n || k % 2 == 0 => 1.0,
        OracleMeasure::Dk(_) => 0.0,
        OracleMeasure::W => {
            let s = nf - 1.0;
            let num = (nf - 1.0) * (1.0 - s).exp() + (1.0 - nf - s).exp();
            let den = (nf - 1.0) * (-1.0 - s).exp() + 1.0;
            (num / den + 1.0) / 2.0
        }
        OracleMeasure::Lambda => nf - 2.0,
        OracleMeasure::A => 0.0,
        OracleMeasure::L => knc_frustration(n) as f64,
        OracleMeasure::F => {
            let m = n * (n - 1) / 2;
            to_f64(&(BigRational::one() - ratio(BigInt::from(2 * knc_frustration(n)), BigInt::from(m))))
        }
    })
}

/// Large-`n` approximations, for overlays only. `None` where no
/// approximation is given.
pub fn asymptotic_kna(n: usize, measure: OracleMeasure) -> Option<f64> {
    let nf = n as f64;
    match measure {
        OracleMeasure::D => Some(1.0 - 2.0 / nf),
        OracleMeasure::C => Some(1.0 - 1.0 / nf),
        OracleMeasure::Dk(k) => Some(1.0 - 2.0 * k as f64 / (nf * nf)),
        OracleMeasure::W => Some((1.0 + (-4.0 / nf).exp()) / 2.0),
        OracleMeasure::A | OracleMeasure::F => Some(1.0 - 4.0 / (nf * nf)),
        OracleMeasure::Lambda | OracleMeasure::L => None,
    }
}

pub fn asymptotic_knc(n: usize, measure: OracleMeasure) -> Option<f64> {
    let nf = n as f64;
    let parity = if n % 2 == 0 { 1.0 } else { -1.0 };
    match measure {
        OracleMeasure::D => Some(0.5 + parity * (-2.0f64).exp()),
        OracleMeasure::C => Some(0.5 - 3.0 * nf * nf.ln() / 2f64.powi(n as i32)),
        OracleMeasure::W => Some((1.0 + (2.0 - 2.0 * nf).exp()) / 2.0),
        OracleMeasure::A => Some(0.0),
        _ => None,
    }
}

/// `E[D_k] = (1 + (1 - 2q)^k) / 2` under independent signs.
pub fn expected_relative_k_balance(q: f64, k: usize) -> f64 {
    (1.0 + (1.0 - 2.0 * q).powi(k as i32)) / 2.0
}

/// `E[D]` for the topology behind `census` with independent signs.
pub fn expected_degree_of_balance(census: &CycleCensus, q: f64) -> f64 {
    let total = census.total_cycles();
    if total == 0 {
        return 1.0;
    }
    let weighted: f64 = census
        .lengths()
        .map(|k| expected_relative_k_balance(q, k) * census.total(k) as f64)
        .sum();
    weighted / total as f64
}
