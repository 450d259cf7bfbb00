use std::collections::BTreeSet;

use aztec_core::aztec::{col_class, col_edge_count, row_class, row_edge_count};
use aztec_core::cellular::{find_completion, random_weight};
use aztec_core::{
    delta, enumerate_matchings, evaluate, oracle_mgf, reduce_step, scale_col_class, scale_row_class, to_graph,
    AztecInstance, BigRational, Field, PeriodMatrix,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_period<R: Rng>(rng: &mut R, k: usize, l: usize) -> PeriodMatrix<BigRational> {
    PeriodMatrix::new((0..k).map(|_| (0..l).map(|_| random_weight(rng)).collect()).collect()).unwrap()
}

#[test]
fn pipeline_matches_oracle_on_random_periods() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for trial in 0..50 {
        let size = if trial % 2 == 0 { 2 } else { 4 };
        let n = 1 + trial % 4;
        let inst = AztecInstance::new(n, random_period(&mut rng, size, size));
        let (v, trace) = evaluate(&inst).unwrap();
        assert_eq!(v, oracle_mgf(&to_graph(&inst).graph).unwrap(), "trial {trial}");
        let orders: Vec<usize> = trace.steps.iter().map(|s| s.order).collect();
        assert_eq!(orders, (1..=n).rev().collect::<Vec<_>>());
        let prod = trace.steps.iter().fold(BigRational::from_i64(1), |a, s| a * s.factor.clone());
        assert_eq!(prod, v);
    }
}

#[test]
fn pipeline_handles_rectangular_and_oversized_periods() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for (k, l, n) in [(2, 4, 3), (4, 2, 2), (2, 6, 2), (6, 4, 3), (8, 8, 2)] {
        let inst = AztecInstance::new(n, random_period(&mut rng, k, l));
        assert_eq!(evaluate(&inst).unwrap().0, oracle_mgf(&to_graph(&inst).graph).unwrap(), "{k}x{l} n={n}");
    }
}

#[test]
fn successor_weight_is_the_complement_weight() {
    // The complement of AD_n in its checkerboard completion is AD_{n-1} on the
    // interior vertices, weighted by the δ image of the period.
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 1..=3 {
        for size in [2, 4] {
            let inst = AztecInstance::new(n, random_period(&mut rng, size, size));
            let ad = to_graph(&inst);
            let c = find_completion(&ad.graph, &ad.graph, &ad.cells()).unwrap();
            assert_eq!(c.extremal().len(), 4 * n);
            let comp = c.complement().unwrap();
            assert_eq!(comp.partial_count, 0);
            let (factor, next) = reduce_step(&inst).unwrap();
            assert_eq!(comp.factor, factor);
            let small = to_graph(&next);
            assert_eq!(comp.graph.num_vertices(), small.graph.num_vertices());
            for e in small.graph.edges() {
                let (a, b) = (small.coords[e.u as usize], small.coords[e.v as usize]);
                let (u, v) = (ad.vertex_at(a.0, a.1).unwrap(), ad.vertex_at(b.0, b.1).unwrap());
                assert_eq!(comp.graph.weight(u, v), Some(&e.w), "n={n} edge {a:?}-{b:?}");
            }
            assert_eq!(comp.graph.edges().len(), small.graph.edges().len());
        }
    }
}

#[test]
fn checkerboard_completion_of_ad2() {
    let ad = to_graph(&AztecInstance::<BigRational>::all_ones(2));
    let c = find_completion(&ad.graph, &ad.graph, &ad.cells()).unwrap();
    assert_eq!(c.cells().len(), 4);
    assert_eq!(c.extremal().len(), 8);
    assert!(c.lines().iter().all(|l| l.ends.is_some()));
}

#[test]
fn all_ones_complement_halves_weights() {
    for n in 1..=3 {
        let ad = to_graph(&AztecInstance::<BigRational>::all_ones(n));
        let comp = find_completion(&ad.graph, &ad.graph, &ad.cells()).unwrap().complement().unwrap();
        assert_eq!(comp.factor, BigRational::from_i64(2).pow_i((n * n) as i64));
        let half = BigRational::new(1.into(), 2.into());
        assert!(comp.graph.edges().iter().all(|e| e.w == half));
        assert_eq!(oracle_mgf(&ad.graph).unwrap(), comp.factor * oracle_mgf(&comp.graph).unwrap());
    }
}

#[test]
fn matchings_respect_row_and_column_classes() {
    for n in 1..=4 {
        let ad = to_graph(&AztecInstance::<BigRational>::all_ones(n));
        let ms = enumerate_matchings(&ad.graph).unwrap();
        assert_eq!(ms.len(), 1 << (n * (n + 1) / 2));
        for m in &ms {
            let mut rows = vec![0; n + 1];
            let mut cols = vec![0; n + 1];
            let mut single_rows = vec![0; 2 * n + 1];
            let mut single_cols = vec![0; 2 * n + 1];
            for &e in &m.edges {
                let (r, c) = ad.positions[e];
                rows[row_class(r)] += 1;
                cols[col_class(c)] += 1;
                single_rows[r] += 1;
                single_cols[c] += 1;
            }
            assert!(rows.iter().all(|&k| k == n));
            assert!(cols[1..].iter().all(|&k| k == n + 1));
            for i in 1..=2 * n {
                assert_eq!(single_rows[i], row_edge_count(n, i), "n={n} row {i}");
                assert_eq!(single_cols[i], col_edge_count(n, i), "n={n} col {i}");
            }
        }
    }
}

#[test]
fn all_ones_values() {
    for n in 0..=12usize {
        let v = evaluate(&AztecInstance::<BigRational>::all_ones(n)).unwrap().0;
        assert_eq!(v, BigRational::from_i64(2).pow_i((n * (n + 1) / 2) as i64));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn class_scaling_multiplies_by_a_power(seed in any::<u64>(), n in 1usize..=3, s in 1i64..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = AztecInstance::new(n, random_period(&mut rng, 2, 2));
        let s = BigRational::new(s.into(), 3.into());
        let base = oracle_mgf(&to_graph(&inst).graph).unwrap();
        let class = rng.gen_range(0..=n);
        let (scaled, m) = scale_row_class(&inst, class, &s).unwrap();
        prop_assert_eq!(m.clone(), s.pow_i(n as i64));
        prop_assert_eq!(oracle_mgf(&to_graph(&scaled).graph).unwrap(), m * base.clone());
        let class = rng.gen_range(1..=n);
        let (scaled, m) = scale_col_class(&inst, class, &s).unwrap();
        prop_assert_eq!(m.clone(), s.pow_i(n as i64 + 1));
        prop_assert_eq!(oracle_mgf(&to_graph(&scaled).graph).unwrap(), m * base);
    }

    #[test]
    fn delta_keeps_zero_positions(seed in any::<u64>()) {
        // zeros placed one per block so block factors stay nonzero
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut p = random_period(&mut rng, 4, 4).rows().to_vec();
        let mut zeros = BTreeSet::new();
        for bi in 0..2 {
            for bj in 0..2 {
                if rng.gen_bool(0.5) {
                    let (r, c) = (2 * bi + rng.gen_range(0..2), 2 * bj + rng.gen_range(0..2));
                    p[r][c] = BigRational::from_i64(0);
                    zeros.insert((r, c));
                }
            }
        }
        let d = delta(&PeriodMatrix::new(p).unwrap()).unwrap();
        // a zero at (r, c) lands on the opposite corner of its block, shifted by one
        let moved: BTreeSet<(usize, usize)> = zeros
            .iter()
            .map(|&(r, c)| {
                let (r2, c2) = (r ^ 1, c ^ 1);
                ((r2 + 3) % 4, (c2 + 3) % 4)
            })
            .collect();
        for r in 0..4 {
            for c in 0..4 {
                prop_assert_eq!(d.rows()[r][c] == BigRational::from_i64(0), moved.contains(&(r, c)));
            }
        }
    }

    #[test]
    fn delta_iterates_compose(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_period(&mut rng, 4, 2);
        let two = delta(&delta(&p).unwrap()).unwrap();
        let inst = AztecInstance::new(3, p);
        let (_, s1) = reduce_step(&inst).unwrap();
        let (_, s2) = reduce_step(&s1).unwrap();
        prop_assert_eq!(s2.period, two);
    }
}
