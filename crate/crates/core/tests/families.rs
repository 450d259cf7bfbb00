use aztec_core::families::{
    blum_closed, blum_closed_q, blum_period, blum_period_01, dragon_period, dragon_region_period, dungeon_d_closed,
    dungeon_e_closed, dungeon_period_n, dungeon_value, eval_auto, hexsquare_period, stanley_t, stanley_value,
    weighted_dungeon_closed, weighted_dungeon_period_m_symbolic, yang_r, yang_value, ColumnPattern, DungeonSpec,
    YangColumnPair,
};
use aztec_core::{
    evaluate, factor_integer, oracle_mgf, parse, to_graph, AztecInstance, BigInt, BigRational, Factored, Field,
    RationalFunction,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rf(s: &str) -> RationalFunction {
    parse(s).unwrap()
}

fn slow() -> bool {
    std::env::var_os("AZTEC_SLOW").is_some()
}

#[test]
fn dungeon_d_symbolic_values() {
    let (x, y) = (Factored::var("x"), Factored::var("y"));
    for n in 0..=5 {
        let v = dungeon_value(&DungeonSpec::D { n, x: x.clone(), y: y.clone() }).unwrap();
        assert_eq!(v.to_rf(), dungeon_d_closed(n, &rf("x"), &rf("y")), "D_{n}");
    }
    assert_eq!(
        dungeon_d_closed(5, &rf("x"), &rf("y")),
        rf("x^16*y^24*(x^6+3*x^4*y^2+3*x^2*y^4+y^6+2*x^3+2*x*y^2+1)^8")
    );
}

#[test]
fn dungeon_d_counts() {
    let one = BigRational::from_i64(1);
    for n in 0..=10 {
        let closed = dungeon_d_closed(n, &one, &one);
        if n <= 7 {
            let piped = dungeon_value(&DungeonSpec::D { n, x: one.clone(), y: one.clone() }).unwrap();
            assert_eq!(piped, closed, "D_{n}");
        }
        if n >= 1 {
            let primes: Vec<BigInt> = factor_integer(closed.numer()).unwrap().into_iter().map(|(p, _)| p).collect();
            assert!(primes.iter().all(|p| *p == BigInt::from(2) || *p == BigInt::from(13)), "D_{n}: {primes:?}");
        }
    }
}

#[test]
fn dungeon_d_weighted_numeric_orders_beyond_the_seeds() {
    // the period-6 recurrence at a generic rational point, through order 8
    let (x, y) = (BigRational::new(2.into(), 3.into()), BigRational::new(5.into(), 4.into()));
    for n in 6..=8 {
        let piped = dungeon_value(&DungeonSpec::D { n, x: x.clone(), y: y.clone() }).unwrap();
        assert_eq!(piped, dungeon_d_closed(n, &x, &y), "D_{n}");
    }
}

#[test]
fn dungeon_d_recurrence_y_exponent() {
    // T(D_6)/T(D_0) from the pipeline is x^24 y^36 P^12; the form with
    // y^{16n-20} would give y^60.
    let (x, y) = (Factored::var("x"), Factored::var("y"));
    let d6 = dungeon_value(&DungeonSpec::D { n: 6, x, y }).unwrap().to_rf();
    let p = rf("x^6+3*x^4*y^2+3*x^2*y^4+y^6+2*x^3+2*x*y^2+1");
    assert_eq!(d6, rf("x^24*y^36") * p.pow_i(12));
    assert_eq!(dungeon_d_closed(6, &rf("x"), &rf("y")) * rf("y^24"), rf("x^24*y^60") * p.pow_i(12));
}

#[test]
fn dungeon_e_counts() {
    for n in 0..=8 {
        let v = dungeon_value::<BigRational>(&DungeonSpec::E { n }).unwrap();
        assert_eq!(v, BigRational::from_integer(dungeon_e_closed(n)), "E_{n}");
    }
    assert_eq!(dungeon_e_closed(5), BigInt::from(13).pow(12));
}

#[test]
fn weighted_dungeon_symbolic_values() {
    let max = if slow() { 11 } else { 7 };
    let v: Vec<RationalFunction> = ["a", "b", "c", "d", "e", "f", "g", "h"].iter().map(|s| rf(s)).collect();
    for n in 0..=max {
        let inst = AztecInstance::new(n, weighted_dungeon_period_m_symbolic::<Factored>());
        let got = evaluate(&inst).unwrap().0.to_rf();
        let want = weighted_dungeon_closed(n, [&v[0], &v[1], &v[2], &v[3], &v[4], &v[5], &v[6], &v[7]]);
        assert_eq!(got, want, "order {n}");
    }
}

#[test]
fn weighted_dungeon_recurrence_numerically() {
    // orders 12..=15 at a rational point exercise both order-12 recurrences
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let vals: Vec<BigRational> =
        (0..8).map(|_| BigRational::new(rng.gen_range(1..9).into(), rng.gen_range(1..5).into())).collect();
    let r: [&BigRational; 8] = std::array::from_fn(|i| &vals[i]);
    let p = aztec_core::families::weighted_dungeon_period_m(r);
    for n in 0..=15 {
        let got = evaluate(&AztecInstance::new(n, p.clone())).unwrap().0;
        assert_eq!(got, weighted_dungeon_closed(n, r), "order {n}");
    }
}

fn random_square<R: Rng>(rng: &mut R) -> BigRational {
    let v = BigRational::new(rng.gen_range(1..7).into(), rng.gen_range(1..5).into());
    v.clone() * v
}

fn random_pair<R: Rng>(rng: &mut R, n: usize, pattern: ColumnPattern) -> YangColumnPair<BigRational> {
    let rows = (0..2 * n).map(|_| [random_square(rng), random_square(rng)]).collect();
    YangColumnPair::new(rows, pattern).unwrap()
}

#[test]
fn yang_recursion_matches_pipeline_and_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for n in 1..=4 {
        for _ in 0..3 {
            let t = random_pair(&mut rng, n, ColumnPattern::Quad);
            let inst = AztecInstance::new(n, t.period());
            let piped = evaluate(&inst).unwrap().0;
            assert_eq!(yang_value(&t).unwrap(), piped, "n={n}");
            assert_eq!(oracle_mgf(&to_graph(&inst).graph).unwrap(), piped, "n={n}");
        }
    }
    for n in 5..=8 {
        let t = random_pair(&mut rng, n, ColumnPattern::Quad);
        assert_eq!(yang_value(&t).unwrap(), evaluate(&AztecInstance::new(n, t.period())).unwrap().0, "n={n}");
    }
}

#[test]
fn stanley_recursion_matches_pipeline_and_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for n in 1..=4 {
        for _ in 0..3 {
            let t = random_pair(&mut rng, n, ColumnPattern::Duplicate);
            let inst = AztecInstance::new(n, t.period());
            let piped = evaluate(&inst).unwrap().0;
            assert_eq!(stanley_value(&t).unwrap(), piped, "n={n}");
            assert_eq!(oracle_mgf(&to_graph(&inst).graph).unwrap(), piped, "n={n}");
        }
    }
    for n in 5..=9 {
        let t = random_pair(&mut rng, n, ColumnPattern::Duplicate);
        assert_eq!(stanley_value(&t).unwrap(), evaluate(&AztecInstance::new(n, t.period())).unwrap().0, "n={n}");
    }
}

fn symbolic_pair(rows: usize, pattern: ColumnPattern) -> YangColumnPair<RationalFunction> {
    // squares of symbols keep every S_i a rational function
    let rows = (1..=rows).map(|i| [rf(&format!("u{i}^2")), rf(&format!("v{i}^2"))]).collect();
    YangColumnPair::new(rows, pattern).unwrap()
}

#[test]
fn fourth_r_iterate_drops_four_rows_each_end() {
    let t = symbolic_pair(12, ColumnPattern::Quad);
    let mut r = t.clone();
    for _ in 0..4 {
        r = yang_r(&r).unwrap();
    }
    assert_eq!(r.rows(), &t.rows()[4..8]);
}

#[test]
fn second_t_iterate_drops_four_rows_each_end() {
    let t = symbolic_pair(12, ColumnPattern::Duplicate);
    let t2 = stanley_t(&stanley_t(&t).unwrap()).unwrap();
    assert_eq!(t2.rows(), &t.rows()[4..8]);
}

#[test]
fn hexsquare_observed_values() {
    // Orders 3j, 3j+1 give (1+a²)^{2j(j+1)}, order 3j+2 gives (1+a²)^{2(j+1)²}.
    let p = hexsquare_period(&rf("a"));
    for m in 0..=11usize {
        let j = (m / 3) as i64;
        let e = if m % 3 == 2 { 2 * (j + 1) * (j + 1) } else { 2 * j * (j + 1) };
        assert_eq!(eval_auto(&p, m).unwrap(), rf("1+a^2").pow_i(e), "order {m}");
    }
    let two = BigRational::from_i64(2);
    for m in 1..=4 {
        let inst = AztecInstance::new(m, hexsquare_period(&two));
        assert_eq!(evaluate(&inst).unwrap().0, oracle_mgf(&to_graph(&inst).graph).unwrap(), "order {m}");
    }
}

#[test]
fn dragon_values() {
    let b = dragon_period(&rf("a"));
    for n in 0..=5usize {
        assert_eq!(eval_auto(&b, 2 * n).unwrap(), rf("1+a^2").pow_i((n * (n + 1)) as i64), "n={n}");
    }
    let a = dragon_region_period::<BigRational>();
    for n in 0..=8usize {
        let v = evaluate(&AztecInstance::new(2 * n, a.clone())).unwrap().0;
        assert_eq!(v, BigRational::from_i64(2).pow_i((n * (n + 1)) as i64), "n={n}");
    }
    for n in 1..=2 {
        let inst = AztecInstance::new(2 * n, dragon_period(&BigRational::from_i64(3)));
        assert_eq!(evaluate(&inst).unwrap().0, oracle_mgf(&to_graph(&inst).graph).unwrap());
    }
}

#[test]
fn blum_table_and_recurrence() {
    let a = blum_period_01::<BigRational>();
    for n in 1..=35 {
        let v = evaluate(&AztecInstance::new(n, a.clone())).unwrap().0;
        assert_eq!(v, BigRational::from_integer(blum_closed(n)), "n={n}");
    }
    let max = if slow() { 30 } else { 15 };
    let aq = blum_period(&Factored::var("q"));
    for n in 1..=max {
        let v = evaluate(&AztecInstance::new(n, aq.clone())).unwrap().0.to_rf();
        assert_eq!(v, blum_closed_q(n), "n={n}");
    }
}

#[test]
fn blum_small_orders_against_oracle() {
    let a = blum_period_01::<BigRational>();
    for n in 1..=4 {
        let inst = AztecInstance::new(n, a.clone());
        assert_eq!(evaluate(&inst).unwrap().0, oracle_mgf(&to_graph(&inst).graph).unwrap(), "n={n}");
    }
}

#[test]
fn n_period_with_numbers_matches_oracle() {
    let (x, y) = (BigRational::from_i64(2), BigRational::new(1.into(), 3.into()));
    for m in 1..=4 {
        let inst = AztecInstance::new(m, dungeon_period_n(&x, &y));
        assert_eq!(evaluate(&inst).unwrap().0, oracle_mgf(&to_graph(&inst).graph).unwrap());
    }
    // x = y = 1 at order 2: 13/16
    let one = BigRational::from_i64(1);
    let v = evaluate(&AztecInstance::new(2, dungeon_period_n(&one, &one))).unwrap().0;
    assert_eq!(v, BigRational::new(13.into(), 16.into()));
}
