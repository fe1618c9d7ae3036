mod common;

use common::*;
use signed_balance::frustration::{frustration_exact, frustration_heuristic, DEFAULT_BNB_BUDGET};
use signed_balance::graph::{Sign, SwitchSet};
use signed_balance::measure::{EvalConfig, MeasureId};
use signed_balance::stats::reshuffle_test;
use signed_balance::synthetic::*;

#[test]
fn fixed_count_marginals_are_uniform() {
    let topology = gen_erdos_renyi(8, 0.6, 3).unwrap();
    let m = topology.edge_count();
    let k = m / 3;
    let draws = 10_000;
    let mut hits = vec![0usize; m];
    for i in 0..draws {
        let g = assign_signs(&topology, SignAssignment::FixedCount(k), derive_seed(77, i)).unwrap();
        assert_eq!(g.negative_count(), k);
        for (id, e) in g.edges().iter().enumerate() {
            if e.sign == Sign::Negative {
                hits[id] += 1;
            }
        }
    }
    let p = k as f64 / m as f64;
    let se = (p * (1.0 - p) / draws as f64).sqrt();
    for (id, &h) in hits.iter().enumerate() {
        let f = h as f64 / draws as f64;
        // 3 SE per edge, with a Bonferroni-style allowance for many edges
        assert!((f - p).abs() <= 4.0 * se, "edge {id}: {f} vs {p}");
    }
}

#[test]
fn erdos_renyi_and_iid_means() {
    let draws = 10_000u64;
    let ms: Vec<f64> = (0..draws).map(|s| gen_erdos_renyi(50, 0.1, s).unwrap().edge_count() as f64).collect();
    let (mean, se) = sample_mean_se(&ms);
    assert!((mean - 122.5).abs() <= 3.0 * se, "{mean} ± {se}");

    let k = gen_k_regular(500, 4, 1).unwrap();
    assert_eq!(k.edge_count(), 1000);
    let negs: Vec<f64> = (0..draws)
        .map(|s| assign_signs(&k, SignAssignment::Iid(0.5), s).unwrap().negative_count() as f64)
        .collect();
    let (mean, se) = sample_mean_se(&negs);
    assert!((mean - 500.0).abs() <= 3.0 * se, "{mean} ± {se}");
}

#[test]
fn generation_is_reproducible() {
    let a = gen_k_regular(30, 4, 9).unwrap();
    assert_eq!(a, gen_k_regular(30, 4, 9).unwrap());
    let sa = assign_signs(&a, SignAssignment::Iid(0.3), 4).unwrap();
    assert_eq!(sa, assign_signs(&a, SignAssignment::Iid(0.3), 4).unwrap());
    assert_eq!(gen_erdos_renyi(20, 0.3, 5).unwrap(), gen_erdos_renyi(20, 0.3, 5).unwrap());
    assert!((0..30).all(|v| a.degree(v) == 4));
    assert!(gen_k_regular(5, 3, 0).is_err());
    assert_eq!(gen_erdos_renyi(7, 0.0, 1).unwrap().edge_count(), 0);
    assert_eq!(gen_erdos_renyi(7, 1.0, 1).unwrap().edge_count(), 21);
}

#[test]
fn heuristic_quality_guard() {
    let mut equal = 0;
    let total = 300;
    for i in 0..total {
        let g = seeded_graph(derive_seed(4242, i), 3, 14);
        let h = frustration_heuristic(&g, i, 20);
        let e = frustration_exact(&g, DEFAULT_BNB_BUDGET);
        assert!(e.exact);
        assert!(h.l_value >= e.l_value);
        equal += (h.l_value == e.l_value) as usize;
    }
    assert!(equal as f64 >= 0.95 * total as f64, "{equal}/{total}");
}

#[test]
fn switching_leaves_observed_values_unchanged() {
    let g = seeded_graph(5, 10, 10);
    let x = SwitchSet::from_nodes(g.node_count(), &[0, 3, 4]);
    let s = g.switch(&x).unwrap();
    let ids = [MeasureId::T, MeasureId::A, MeasureId::F];
    let a = reshuffle_test(&g, &ids, 20, 1, EvalConfig::default()).unwrap();
    let b = reshuffle_test(&s, &ids, 20, 1, EvalConfig::default()).unwrap();
    for (x, y) in a.iter().zip(&b) {
        assert!((x.observed - y.observed).abs() < 1e-9);
    }
}

#[test]
fn imbalance_z_scores_mirror_balance_z_scores() {
    let ids = [MeasureId::Lambda, MeasureId::A, MeasureId::L, MeasureId::F];
    for i in 0..6 {
        let g = seeded_graph(derive_seed(99, i), 10, 14);
        if !g.is_connected() {
            continue;
        }
        let s = reshuffle_test(&g, &ids, 60, i, EvalConfig::default()).unwrap();
        let z = |k: usize| s[k].z;
        if let (Some(zl), Some(za)) = (z(0), z(1)) {
            assert_eq!(zl.signum(), -za.signum(), "graph {i}");
        }
        if let (Some(zl), Some(zf)) = (z(2), z(3)) {
            assert_eq!(zl.signum(), -zf.signum(), "graph {i}");
        }
    }
}
