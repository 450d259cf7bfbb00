//! Closed forms: tabulated initial values plus the period-12 (dungeons) and
//! period-30 (powers of 3) recurrences. These are independent of the
//! reduction pipeline and are cross-checked against it in the tests.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow};

use crate::field::Field;
use crate::ratfunc::RationalFunction;

fn p_poly<F: Field>(x: &F, y: &F) -> F {
    let (x2, y2) = (x.pow_i(2), y.pow_i(2));
    x.pow_i(6)
        + F::from_i64(3) * x.pow_i(4) * y2.clone()
        + F::from_i64(3) * x2 * y.pow_i(4)
        + y.pow_i(6)
        + F::from_i64(2) * x.pow_i(3)
        + F::from_i64(2) * x.clone() * y2
        + F::one()
}

/// `T(D_n)` from the six initial values and
/// `T(D_{m+1}) = x^{8m−16} y^{16m−44} P^{4m−8} T(D_{m−5})`, `m ≥ 5`.
///
/// The `y` exponent is the one the reduction produces (and the one the
/// order-12 recurrence for `M(AD_{2m}; N)` implies); the often-quoted
/// `16m−20` carries an extra `y^{24}`, invisible at `x = y = 1`.
pub fn dungeon_d_closed<F: Field>(n: usize, x: &F, y: &F) -> F {
    let p = p_poly(x, y);
    let mono =
        |a: i64, b: i64, s: i64, c: i64| x.pow_i(a) * y.pow_i(b) * (x.pow_i(2) + y.pow_i(2)).pow_i(s) * p.pow_i(c);
    match n {
        0 => F::one(),
        1 => mono(0, 0, 1, 0),
        2 => mono(2, 2, 0, 1),
        3 => mono(6, 6, 0, 3),
        4 => mono(10, 14, 1, 5),
        5 => mono(16, 24, 0, 8),
        _ => {
            let m = n as i64 - 1;
            mono(8 * m - 16, 16 * m - 44, 0, 4 * m - 8) * dungeon_d_closed(n - 6, x, y)
        }
    }
}

/// `T(E_n)`: `1, 2·13, 13³, 13⁵, 2·13⁸, 13¹²`, then `T(E_n) = 13^{4n−8} T(E_{n−6})`.
///
/// The recurrence is applied from `n = 6`, the first order where `E_{n−6}`
/// exists.
pub fn dungeon_e_closed(n: usize) -> BigInt {
    let t = BigInt::from(13);
    match n {
        0 => BigInt::one(),
        1 => BigInt::from(26),
        2 => Pow::pow(&t, 3u32),
        3 => Pow::pow(&t, 5u32),
        4 => BigInt::from(2) * Pow::pow(&t, 8u32),
        5 => Pow::pow(&t, 12u32),
        _ => Pow::pow(&t, (4 * n - 8) as u32) * dungeon_e_closed(n - 6),
    }
}

/// `M(AD_n; wt_M)` from the twelve initial values and the two
/// order-12 recurrences. `v = [a, b, c, d, e, f, g, h]`.
pub fn weighted_dungeon_closed<F: Field>(n: usize, v: [&F; 8]) -> F {
    let [a, b, c, d, e, f, g, h] = v.map(|t| t.clone());
    let ab = a.clone() * b.clone();
    let de = d.clone() * e.clone();
    let gh = g.clone() * h.clone();
    let cf = c.clone() * f.clone();
    let abgh = ab.clone() * gh.clone();
    let cdef = cf.clone() * de.clone();
    let r = abgh.clone() + a * c * f.clone() * g + b * d.clone() * e.clone() * h + F::from_i64(2) * cdef.clone();
    // exponents of 2, ab, de, abgh, cdef, gh, cf, R
    let term = |k: [i64; 8]| {
        [F::from_i64(2), ab.clone(), de.clone(), abgh.clone(), cdef.clone(), gh.clone(), cf.clone(), r.clone()]
            .iter()
            .zip(k)
            .fold(F::one(), |acc, (base, e)| acc * base.pow_i(e))
    };
    const SEEDS: [[i64; 8]; 12] = [
        [0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, 0, 0, 0],
        [0, 1, 0, 0, 0, 0, 0, 1],
        [0, 0, 2, 1, 0, 0, 0, 1],
        [1, 2, 0, 0, 1, 0, 0, 3],
        [1, 0, 4, 2, 0, 0, 1, 3],
        [3, 4, 0, 0, 3, 1, 0, 5],
        [3, 0, 7, 4, 0, 0, 3, 5],
        [5, 7, 0, 0, 5, 3, 0, 8],
        [5, 0, 10, 7, 0, 0, 5, 8],
        [8, 10, 0, 0, 8, 5, 0, 12],
        [8, 0, 14, 10, 0, 0, 8, 12],
    ];
    if n < 12 {
        return term(SEEDS[n]);
    }
    let rest = weighted_dungeon_closed(n - 12, v);
    if n.is_multiple_of(2) {
        let m = (n / 2) as i64;
        term([4 * m - 12, 4 * m - 10, 0, 0, 4 * m - 12, 4 * m - 16, 0, 4 * m - 8]) * rest
    } else {
        let m = (n as i64 + 1) / 2;
        term([4 * m - 16, 0, 4 * m - 10, 4 * m - 14, 0, 0, 4 * m - 16, 4 * m - 12]) * rest
    }
}

/// `M(AD_n; A(q)) = c_n q^{e_n}` for `n = 1..30`; at `q = 1` these are the
/// matching counts of the powers-of-3 family.
pub const BLUM_TABLE: [(&str, i64); 30] = [
    ("1", 2),
    ("2", -2),
    ("6", -2),
    ("6", 0),
    ("6", 0),
    ("6", 2),
    ("27", 2),
    ("486", 2),
    ("486", 0),
    ("486", 0),
    ("486", 2),
    ("6561", -2),
    ("531441", -2),
    ("531441", 0),
    ("531441", 0),
    ("531441", 2),
    ("43046721", 2),
    ("10460353203", 2),
    ("10460353203", 0),
    ("10460353203", 0),
    ("10460353203", 2),
    ("7625597484987", -2),
    ("5559060566555523", -2),
    ("5559060566555523", 0),
    ("5559060566555523", 0),
    ("5559060566555523", 2),
    ("24315330918113857602", 2),
    ("79766443076872509863361", 2),
    ("79766443076872509863361", 0),
    ("79766443076872509863361", 0),
];

fn table(n: usize) -> (BigInt, i64) {
    let (c, e) = BLUM_TABLE[n - 1];
    (c.parse().expect("table literal"), e)
}

/// Exponent `x_n` of `M(B_n) = 3^{4x_n} M(B_{n−30})`, defined for `n ≥ 31`.
pub fn blum_x(n: usize) -> Option<i64> {
    if n < 31 {
        return None;
    }
    let k = ((n - 1) / 5) as i64;
    Some(match n - 5 * k as usize {
        1 => 4 * k - 12,
        2 => 4 * k - 10,
        _ => 4 * k - 8,
    })
}

/// Exponent `y_n` of `M(AD_n; A(q)) = 3^{4y_n} M(AD_{n−30}; A(9q))`, `n ≥ 31`.
pub fn blum_y(n: usize) -> Option<i64> {
    if n < 31 {
        return None;
    }
    let k = ((n - 1) / 10) as i64;
    Some(match n - 10 * k as usize {
        1 => 8 * k - 13,
        2 | 6 => 8 * k - 9,
        3 | 7 => 8 * k - 7,
        4 | 5 => 8 * k - 8,
        8 => 8 * k - 5,
        _ => 8 * k - 4,
    })
}

/// `M(B_n)` for `n ≥ 1` from the table and the `x_n` recurrence.
pub fn blum_closed(n: usize) -> BigInt {
    assert!(n >= 1, "the family starts at order 1");
    if n <= 30 {
        return table(n).0;
    }
    Pow::pow(&BigInt::from(3), (4 * blum_x(n).unwrap()) as u32) * blum_closed(n - 30)
}

fn blum_q_parts(n: usize) -> (BigRational, i64) {
    if n <= 30 {
        let (c, e) = table(n);
        return (BigRational::from_integer(c), e);
    }
    let (c, e) = blum_q_parts(n - 30);
    // substituting q → 9q scales c·q^e by 9^e
    let scale = BigRational::from_i64(9).pow_i(e) * BigRational::from_i64(3).pow_i(4 * blum_y(n).unwrap());
    (c * scale, e)
}

/// `M(AD_n; A(q))` for `n ≥ 1` from the table and the `y_n` recurrence.
pub fn blum_closed_q(n: usize) -> RationalFunction {
    assert!(n >= 1, "the family starts at order 1");
    let (c, e) = blum_q_parts(n);
    RationalFunction::from_rational(&c) * RationalFunction::var("q").pow_i(e)
}
