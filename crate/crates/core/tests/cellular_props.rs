use std::collections::BTreeMap;

use aztec_core::cellular::{find_completion, random_instance, random_weight, CellKind, HalvingGadget};
use aztec_core::graph::{oracle_mgf_capped, WeightedGraph};
use aztec_core::{lemma26_rewrite, oracle_mgf, urban_renewal, BigRational, Field};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CAP: usize = 64;

#[test]
fn complement_identity_on_random_completions() {
    let mut rng = ChaCha8Rng::seed_from_u64(2023);
    let mut kinds: BTreeMap<&str, usize> = BTreeMap::new();
    let mut nonzero = 0;
    for trial in 0..150 {
        let (h, host, cells) = random_instance(&mut rng, 12);
        let c = find_completion(&h, &host, &cells).unwrap();
        let comp = c.complement().unwrap();
        for k in &comp.kinds {
            *kinds.entry(k.tag()).or_default() += 1;
        }
        let lhs = oracle_mgf_capped(&c.h_graph(), CAP).unwrap();
        let rhs = BigRational::from_i64(2).pow_i(comp.partial_count as i64)
            * comp.factor.clone()
            * oracle_mgf_capped(&comp.graph, CAP).unwrap();
        assert_eq!(lhs, rhs, "trial {trial}: kinds {:?}", comp.kinds);
        if !lhs.is_zero() {
            nonzero += 1;
        }
        // complement lives on V(H) Δ X(G)
        let expect: Vec<_> = c.members().symmetric_difference(c.extremal()).copied().collect();
        assert_eq!(comp.graph.vertices().collect::<Vec<_>>(), expect);
    }
    for tag in ["whole", "partial3", "partial2", "partial-with-extremal"] {
        assert!(kinds.get(tag).copied().unwrap_or(0) >= 5, "too few {tag} cells generated: {kinds:?}");
    }
    assert!(nonzero >= 30, "only {nonzero} nonzero trials");
}

#[test]
fn every_cell_gets_exactly_one_kind() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let (h, host, cells) = random_instance(&mut rng, 12);
        let c = find_completion(&h, &host, &cells).unwrap();
        for i in 0..c.cells().len() {
            let k = c.classify(i).unwrap();
            let partial = matches!(k, CellKind::Partial2 | CellKind::Partial3 | CellKind::PartialWithExtremal { .. });
            assert_ne!(partial, k == CellKind::Whole);
        }
        // every line that ends has both ends extremal, and nothing else is
        let ends: std::collections::BTreeSet<_> =
            c.lines().iter().filter_map(|l| l.ends).flat_map(|(a, b)| [a, b]).collect();
        assert_eq!(&ends, c.extremal());
    }
}

/// Random host around the gadget: outer vertices plus a few extra vertices,
/// joined by random edges.
fn random_host<R: Rng>(
    rng: &mut R,
    fixed: &[(u32, u32, BigRational)],
    outer: &[u32],
    extra: u32,
) -> WeightedGraph<BigRational> {
    let mut g = WeightedGraph::new();
    for (u, v, w) in fixed {
        g.add_edge(*u, *v, w.clone()).unwrap();
    }
    let base = 100;
    let pool: Vec<u32> = outer.iter().copied().chain(base..base + extra).collect();
    for &v in &pool {
        g.add_vertex(v);
    }
    for i in 0..pool.len() {
        for j in i + 1..pool.len() {
            if rng.gen_bool(0.5) {
                g.add_edge(pool[i], pool[j], random_weight(rng)).unwrap();
            }
        }
    }
    g
}

#[test]
fn urban_renewal_preserves_mgf_up_to_delta() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let one = BigRational::from_i64(1);
    let mut nonzero = 0;
    for _ in 0..40 {
        let mut fixed: Vec<(u32, u32, BigRational)> =
            (0..4).map(|i| (i, (i + 1) % 4, random_weight(&mut rng))).collect();
        fixed.extend((0..4).map(|i| (i, i + 10, one.clone())));
        let extra = rng.gen_range(0..=4) * 2;
        let g = random_host(&mut rng, &fixed, &[10, 11, 12, 13], extra);
        let (r, f) = urban_renewal(&g, [0, 1, 2, 3], [10, 11, 12, 13]).unwrap();
        let lhs = oracle_mgf(&g).unwrap();
        assert_eq!(lhs, f * oracle_mgf(&r).unwrap());
        nonzero += usize::from(!lhs.is_zero());
    }
    assert!(nonzero > 10);
}

#[test]
fn halving_gadgets_halve_mgf() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let one = BigRational::from_i64(1);
    for trial in 0..40 {
        let extra = rng.gen_range(0..=3) * 2;
        let (g, gadget) = if trial % 2 == 0 {
            let fixed = vec![
                (0, 1, random_weight(&mut rng)),
                (1, 2, random_weight(&mut rng)),
                (0, 10, one.clone()),
                (1, 11, one.clone()),
                (2, 12, one.clone()),
            ];
            (
                random_host(&mut rng, &fixed, &[10, 11, 12], extra + 1),
                HalvingGadget::A { inner: [0, 1, 2], outer: [10, 11, 12] },
            )
        } else {
            let fixed = vec![(0, 1, random_weight(&mut rng)), (0, 10, one.clone()), (1, 11, one.clone())];
            (random_host(&mut rng, &fixed, &[10, 11], extra), HalvingGadget::B { inner: [0, 1], outer: [10, 11] })
        };
        let (r, f) = lemma26_rewrite(&g, gadget).unwrap();
        assert_eq!(f, BigRational::from_i64(2));
        assert_eq!(oracle_mgf(&g).unwrap(), f * oracle_mgf(&r).unwrap(), "trial {trial}");
    }
}
