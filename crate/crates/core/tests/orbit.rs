use aztec_core::families::{
    blum_period, blum_period_01, dungeon_period_n, dungeon_period_n_symbolic, eval_auto, weighted_dungeon_period_m,
    weighted_dungeon_period_m_symbolic, yang_r, ColumnPattern, YangColumnPair,
};
use aztec_core::orbit::{delta_iterate, equivalence_reduce, Axis, DEFAULT_MAX_ITER};
use aztec_core::{
    detect_proportional, detect_q_shift, parse, recurrence_constant, BigRational, Field, OrbitKind, PeriodMatrix,
    RationalFunction,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rf(s: &str) -> RationalFunction {
    parse(s).unwrap()
}

const P: &str = "x^6+3*x^4*y^2+3*x^2*y^4+y^6+2*x^3+2*x*y^2+1";

fn k0() -> RationalFunction {
    rf(&format!("y^4*(x^3+x*y^2+1)^4*(x^4+2*x^2*y^2+y^4+x)^4/((x^2+y^2)^4*({P})^4)"))
}

fn k2() -> RationalFunction {
    rf("(a*g+d*e)^2*(b*h+c*f)^2*(a*g+2*d*e)^2*(b*h+2*c*f)^2/(16*(a*b*g*h+a*c*f*g+b*d*e*h+2*c*d*e*f)^4)")
}

#[test]
fn n_period_returns_after_twelve_steps() {
    let r = detect_proportional(&dungeon_period_n_symbolic(), DEFAULT_MAX_ITER).unwrap();
    assert_eq!(r.period_length, Some(12));
    assert_eq!(r.kind, OrbitKind::Proportional { scalar: k0() });
    assert_eq!(r.per_step_factors.len(), 12);
}

#[test]
fn n_recurrence_constant_at_order_twelve() {
    // M(AD_{2m}; N) = x^{8m−16} y^{16m−44} (x²+y²)^{24−12m} P^{4m−8} M(AD_{2m−12}; N) at m = 6
    let k = recurrence_constant(&dungeon_period_n_symbolic(), 12, 12).unwrap();
    assert_eq!(k, rf(&format!("x^32*y^52*({P})^16/(x^2+y^2)^48")));
}

#[test]
fn recurrence_constants_reproduce_direct_evaluation() {
    let (x, y) = (rf("2/3"), rf("5/4"));
    let n = dungeon_period_n(&x, &y);
    for order in [12, 13] {
        let k = recurrence_constant(&n, order, 12).unwrap();
        assert_eq!(k * eval_auto(&n, order - 12).unwrap(), eval_auto(&n, order).unwrap(), "order {order}");
    }
}

fn m_at_point() -> ([RationalFunction; 8], PeriodMatrix<RationalFunction>) {
    let v = ["3", "1/2", "2", "5/3", "1", "4", "7/2", "2/5"].map(rf);
    let p = weighted_dungeon_period_m([&v[0], &v[1], &v[2], &v[3], &v[4], &v[5], &v[6], &v[7]]);
    (v, p)
}

#[test]
fn m_recurrence_constants_match_both_parities() {
    let (v, p) = m_at_point();
    let [a, b, c, d, e, f, g, h] = v;
    let two = rf("2");
    let ab = a.clone() * b.clone();
    let de = d.clone() * e.clone();
    let gh = g.clone() * h.clone();
    let cf = c.clone() * f.clone();
    let r = ab.clone() * gh.clone() + a * c * f.clone() * g + b * d * e * h + rf("2") * cf.clone() * de.clone();
    let cdef = cf.clone() * de.clone();
    // order 2m = 12 (m = 6) and order 2m−1 = 13 (m = 7)
    let even = two.pow_i(12) * ab.pow_i(14) * cdef.pow_i(12) * gh.pow_i(8) * r.pow_i(16);
    let odd = two.pow_i(12) * de.pow_i(18) * (ab * gh).pow_i(14) * cf.pow_i(12) * r.pow_i(16);
    assert_eq!(recurrence_constant(&p, 12, 12).unwrap(), even);
    assert_eq!(recurrence_constant(&p, 13, 12).unwrap(), odd);
}

#[test]
fn m_recurrence_constant_symbolic() {
    let m = weighted_dungeon_period_m_symbolic();
    let r = "(a*b*g*h+a*c*f*g+b*d*e*h+2*c*d*e*f)";
    let even = recurrence_constant(&m, 12, 12).unwrap();
    assert_eq!(even, rf(&format!("2^12*(a*b)^14*(c*d*e*f)^12*(g*h)^8*{r}^16")));
    let odd = recurrence_constant(&m, 13, 12).unwrap();
    assert_eq!(odd, rf(&format!("2^12*(d*e)^18*(a*b*g*h)^14*(c*f)^12*{r}^16")));
}

#[test]
fn m_period_returns_after_twelve_steps() {
    let r = detect_proportional(&weighted_dungeon_period_m_symbolic(), 12).unwrap();
    assert_eq!(r.period_length, Some(12));
    assert_eq!(r.kind, OrbitKind::Proportional { scalar: k2() });
    // and numerically at a point
    let (v, p) = m_at_point();
    let r = detect_proportional(&p, 12).unwrap();
    let bind = ["a", "b", "c", "d", "e", "f", "g", "h"]
        .iter()
        .zip(&v)
        .map(|(n, e)| (n.to_string(), e.as_rational().unwrap()))
        .collect();
    let want = RationalFunction::from_rational(&k2().eval(&bind).unwrap());
    assert_eq!(r.period_length, Some(12));
    assert_eq!(r.kind, OrbitKind::Proportional { scalar: want });
}

#[test]
fn blum_period_shifts_q_by_nine() {
    let r = detect_q_shift(&blum_period(&RationalFunction::var("q")), "q", DEFAULT_MAX_ITER, None).unwrap();
    assert_eq!(r.period_length, Some(30));
    assert_eq!(r.kind, OrbitKind::QShift { sigma: BigRational::from_i64(9) });
}

#[test]
fn thirtieth_iterate_of_blum_is_powers_of_nine() {
    let a = blum_period_01::<BigRational>();
    let d = delta_iterate(&a, 30).unwrap();
    assert_eq!(d, blum_period(&BigRational::from_i64(9)));
}

#[test]
fn explicit_candidates_restrict_the_search() {
    let a = blum_period(&RationalFunction::var("q"));
    let r = detect_q_shift(&a, "q", 31, Some(&[BigRational::from_i64(4)])).unwrap();
    assert_eq!(r.kind, OrbitKind::None);
}

#[test]
fn yang_blocks_rescale_to_the_quad_pattern() {
    // After one reduction step the quad pattern is the rescaled D of the
    // column-pair argument; row normalisation sends D and E to one form.
    let rows: Vec<[RationalFunction; 2]> = (1..=8).map(|i| [rf(&format!("u{i}^2")), rf(&format!("v{i}^2"))]).collect();
    let t = YangColumnPair::new(rows, ColumnPattern::Quad).unwrap();
    let e = yang_r(&t).unwrap().period();
    let d = PeriodMatrix::new(
        e.rows()
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let s = rf(&format!("{}", i + 2));
                row.iter().map(|v| v.clone() * s.clone()).collect()
            })
            .collect(),
    )
    .unwrap();
    let (nd, ne) = (equivalence_reduce(&d), equivalence_reduce(&e));
    assert_eq!(nd.normal, ne.normal);
    assert!(nd.ledger.iter().filter(|s| s.axis == Axis::Row).count() >= e.k());
}

fn small_period(seed: u64, k: usize, l: usize) -> PeriodMatrix<RationalFunction> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let entries = (0..k)
        .map(|_| {
            (0..l)
                .map(|_| {
                    RationalFunction::from_rational(&BigRational::new(
                        rng.gen_range(1..8).into(),
                        rng.gen_range(1..5).into(),
                    ))
                })
                .collect()
        })
        .collect();
    PeriodMatrix::new(entries).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn iterating_composes(seed in any::<u64>(), i in 0usize..4, j in 0usize..4) {
        let a = small_period(seed, 4, 4);
        let whole = delta_iterate(&a, i + j).unwrap();
        let split = delta_iterate(&delta_iterate(&a, i).unwrap(), j).unwrap();
        prop_assert_eq!(whole, split);
    }

    #[test]
    fn normal_form_multiplier_is_exact(seed in any::<u64>(), n in 1usize..=4, wide in any::<bool>()) {
        let a = small_period(seed, 4, if wide { 6 } else { 4 });
        let eq = equivalence_reduce(&a);
        prop_assert_eq!(eval_auto(&eq.normal, n).unwrap(), eq.multiplier(n) * eval_auto(&a, n).unwrap());
        prop_assert_eq!(equivalence_reduce(&eq.normal).normal, eq.normal.clone());
    }

    #[test]
    fn recurrence_constant_links_orders(seed in any::<u64>(), extra in 0usize..3) {
        // a 2×2 period is proportional after one step
        let a = small_period(seed, 2, 2);
        let n = 1 + extra;
        let k = recurrence_constant(&a, n, 1).unwrap();
        prop_assert_eq!(k * eval_auto(&a, n - 1).unwrap(), eval_auto(&a, n).unwrap());
    }
}
