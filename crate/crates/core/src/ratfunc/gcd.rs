//! Multivariate GCD over Z.
//!
//! Strategy: strip integer and monomial content, then bound the degree of the
//! gcd in every variable with a modular image (evaluate all other variables
//! at random points mod a large prime). Variables whose bound is zero are
//! eliminated by taking the gcd of coefficients; otherwise a primitive PRS
//! runs in the variable with the smallest bound. Most calls in practice are
//! coprime and never get past the modular check.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::{Mono, Poly};

const P: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn addmod(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

fn submod(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

fn powmod(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b);
        }
        b = mulmod(b, b);
        e >>= 1;
    }
    acc
}

fn to_mod(c: &BigInt) -> u64 {
    c.mod_floor(&BigInt::from(P)).to_u64().expect("reduced mod P")
}

/// Image of `f` in F_p[x_v] after evaluating every other variable at `pt`.
fn image(f: &Poly, v: usize, pt: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; f.degree_in(v) as usize + 1];
    for (m, c) in &f.terms {
        let mut t = to_mod(c);
        for (i, &e) in m.iter().enumerate() {
            if i != v && e > 0 {
                t = mulmod(t, powmod(pt[i], e as u64));
            }
        }
        let k = m[v] as usize;
        out[k] = addmod(out[k], t);
    }
    out
}

fn trim(p: &mut Vec<u64>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

fn rem_mod(a: &mut Vec<u64>, b: &[u64]) {
    let inv = powmod(b[b.len() - 1], P - 2);
    while a.len() >= b.len() {
        let shift = a.len() - b.len();
        let q = mulmod(a[a.len() - 1], inv);
        for (i, &bi) in b.iter().enumerate() {
            a[shift + i] = submod(a[shift + i], mulmod(q, bi));
        }
        a.pop();
        trim(a);
    }
}

fn gcd_degree_mod(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        rem_mod(&mut a, &b);
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Upper bound on deg_v gcd(f, g).
fn degree_bound(f: &Poly, g: &Poly, v: usize, rng: &mut ChaCha8Rng) -> u32 {
    let (df, dg) = (f.degree_in(v), g.degree_in(v));
    for _ in 0..4 {
        let pt: Vec<u64> = (0..f.nvars).map(|_| rng.gen_range(1..P)).collect();
        let fi = image(f, v, &pt);
        let gi = image(g, v, &pt);
        if fi[df as usize] == 0 || gi[dg as usize] == 0 {
            continue;
        }
        return gcd_degree_mod(fi, gi) as u32;
    }
    df.min(dg)
}

fn div_mono(f: &Poly, m: &Mono) -> Poly {
    if m.iter().all(|&e| e == 0) {
        return f.clone();
    }
    Poly {
        nvars: f.nvars,
        terms: f.terms.iter().map(|(t, c)| (t.iter().zip(m.iter()).map(|(a, b)| a - b).collect(), c.clone())).collect(),
    }
}

/// Greatest common divisor with positive leading coefficient; gcd(0, 0) = 0.
pub(crate) fn gcd(f: &Poly, g: &Poly) -> Poly {
    if f.is_zero() {
        return g.primitive().scale(&g.content());
    }
    if g.is_zero() {
        return f.primitive().scale(&f.content());
    }
    let (cf, cg) = (f.content(), g.content());
    let c = cf.gcd(&cg);
    let (mf, mg) = (f.mono_content(), g.mono_content());
    let m: Mono = mf.iter().zip(mg.iter()).map(|(a, b)| *a.min(b)).collect();
    let f1 = div_mono(&f.div_scalar(&cf), &mf).primitive();
    let g1 = div_mono(&g.div_scalar(&cg), &mg).primitive();
    let h = gcd_prim(&f1, &g1);
    h.mul_term(&m, &c)
}

/// gcd of a list of polynomials, stopping early once it reaches 1.
pub(crate) fn gcd_many<'a>(polys: impl IntoIterator<Item = &'a Poly>) -> Poly {
    let mut list: Vec<&Poly> = polys.into_iter().filter(|p| !p.is_zero()).collect();
    list.sort_by_key(|p| p.terms.len());
    let mut it = list.into_iter();
    let mut h = match it.next() {
        Some(p) => p.primitive().scale(&p.content()),
        None => return Poly::zero(0),
    };
    for p in it {
        if h.is_one() {
            break;
        }
        h = gcd(&h, p);
    }
    h
}

/// Both inputs primitive, free of monomial content, positive leading coefficient.
fn gcd_prim(f: &Poly, g: &Poly) -> Poly {
    let n = f.nvars;
    if f.is_constant() || g.is_constant() {
        return Poly::one(n);
    }
    if f == g {
        return f.clone();
    }
    let (of, og) = (f.occurring(), g.occurring());
    // A variable present in only one argument cannot occur in the gcd.
    if let Some(v) = (0..n).find(|&v| of[v] != og[v]) {
        return eliminate(f, g, v);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_a27e_c0de);
    let mut best: Option<(u32, usize)> = None;
    for v in (0..n).filter(|&v| of[v]) {
        let b = degree_bound(f, g, v, &mut rng);
        if b == 0 {
            return eliminate(f, g, v);
        }
        if best.is_none_or(|(bb, _)| b < bb) {
            best = Some((b, v));
        }
    }
    let (bound, v) = match best {
        Some(x) => x,
        None => return Poly::one(n),
    };
    // One argument may already be the answer.
    if bound == g.degree_in(v) && g.terms.len() <= f.terms.len() && f.div_exact(g).is_some() {
        return g.clone();
    }
    if bound == f.degree_in(v) && f.terms.len() <= g.terms.len() && g.div_exact(f).is_some() {
        return f.clone();
    }
    prs(f, g, v)
}

/// gcd(f, g) when the answer is known not to involve `v`.
fn eliminate(f: &Poly, g: &Poly, v: usize) -> Poly {
    let cf = f.coeffs_in(v);
    let cg = g.coeffs_in(v);
    gcd_many(cf.values().chain(cg.values())).primitive()
}

fn content_in(f: &Poly, v: usize) -> Poly {
    let cs = f.coeffs_in(v);
    if cs.len() == 1 {
        return cs.into_values().next().unwrap();
    }
    gcd_many(cs.values())
}

fn pp_in(f: &Poly, v: usize) -> Poly {
    let c = content_in(f, v);
    let q = if c.is_constant() { f.clone() } else { f.div_exact(&c).expect("content divides") };
    q.primitive()
}

fn prs(f: &Poly, g: &Poly, v: usize) -> Poly {
    let cf = content_in(f, v);
    let cg = content_in(g, v);
    let c = gcd(&cf, &cg);
    let mut a = pp_in(f, v);
    let mut b = pp_in(g, v);
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    let h = loop {
        let r = a.prem(&b, v);
        if r.is_zero() {
            break b;
        }
        if r.degree_in(v) == 0 {
            break Poly::one(f.nvars);
        }
        a = b;
        b = pp_in(&r, v);
    };
    let h = pp_in(&h, v);
    if c.is_one() {
        h
    } else {
        h.mul(&c).primitive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use smallvec::SmallVec;

    fn var(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    fn k(n: usize, c: i64) -> Poly {
        Poly::constant(n, BigInt::from(c))
    }

    #[test]
    fn coprime_inputs_give_one() {
        let x = var(2, 0);
        let y = var(2, 1);
        let a = x.mul(&x).add(&y.mul(&y));
        let b = x.add(&y);
        assert!(gcd(&a, &b).is_one());
    }

    #[test]
    fn recovers_planted_common_factor() {
        let n = 3;
        let (x, y, z) = (var(n, 0), var(n, 1), var(n, 2));
        let g = x.mul(&y).add(&z.mul(&z)).add(&k(n, 3));
        let a = g.mul(&x.add(&k(n, 1))).mul(&g);
        let b = g.mul(&y.sub(&z.scale(&BigInt::from(2))));
        assert_eq!(gcd(&a, &b), g);
        assert_eq!(gcd(&a, &g.mul(&g)), g.mul(&g));
    }

    #[test]
    fn integer_and_monomial_contents() {
        let n = 2;
        let x = var(n, 0);
        let y = var(n, 1);
        let a = x.mul(&x).mul(&y).scale(&BigInt::from(6));
        let b = x.mul(&y).mul(&y).scale(&BigInt::from(4));
        let expect = Poly::monomial(SmallVec::from_slice(&[1, 1]), BigInt::from(2));
        assert_eq!(gcd(&a, &b), expect);
    }

    #[test]
    fn gcd_with_zero_is_normalized() {
        let x = var(1, 0);
        let a = x.scale(&BigInt::from(-3));
        assert_eq!(gcd(&a, &Poly::zero(1)), x.scale(&BigInt::from(3)));
    }
}
