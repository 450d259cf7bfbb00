//! Integer factorization for display of integer results.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::RatFuncError;

const SMALL_PRIMES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn is_probable_prime(n: &BigInt) -> bool {
    if *n < BigInt::from(2) {
        return false;
    }
    for p in SMALL_PRIMES {
        let p = BigInt::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    // Deterministic below 3.3e24 with these bases; probabilistic beyond.
    'witness: for a in SMALL_PRIMES {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigInt::from(2), n);
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard's rho; `n` odd composite.
fn rho(n: &BigInt) -> BigInt {
    let mut c = BigInt::one();
    loop {
        let f = |x: &BigInt| (x * x + &c) % n;
        let (mut x, mut y, mut d) = (BigInt::from(2), BigInt::from(2), BigInt::one());
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            d = (&x - &y).abs().gcd(n);
        }
        if &d != n {
            return d;
        }
        c += 1;
    }
}

fn split(n: BigInt, out: &mut Vec<BigInt>) {
    if n.is_one() {
        return;
    }
    if is_probable_prime(&n) {
        out.push(n);
        return;
    }
    let r = n.sqrt();
    if &r * &r == n {
        split(r.clone(), out);
        split(r, out);
        return;
    }
    let d = rho(&n);
    let q = &n / &d;
    split(d, out);
    split(q, out);
}

/// Prime factorization of |n| as ascending (prime, exponent) pairs.
pub fn factor_integer(n: &BigInt) -> Result<Vec<(BigInt, u32)>, RatFuncError> {
    if n.is_zero() {
        return Err(RatFuncError::ZeroInput);
    }
    let mut m = n.abs();
    let mut primes = Vec::new();
    let mut p = 2u64;
    while p < 10_000 && m > BigInt::one() {
        let bp = BigInt::from(p);
        while (&m % &bp).is_zero() {
            m /= &bp;
            primes.push(bp.clone());
        }
        if m.to_u64().is_some_and(|v| v < p * p) {
            break;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    split(m, &mut primes);
    primes.sort();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    for q in primes {
        match out.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fi(n: i64) -> Vec<(i64, u32)> {
        factor_integer(&BigInt::from(n)).unwrap().into_iter().map(|(p, e)| (p.to_i64().unwrap(), e)).collect()
    }

    #[test]
    fn examples() {
        assert_eq!(fi(486), vec![(2, 1), (3, 5)]);
        assert_eq!(fi(13), vec![(13, 1)]);
        assert_eq!(fi(1), vec![]);
        assert_eq!(fi(-12), vec![(2, 2), (3, 1)]);
        assert!(factor_integer(&BigInt::zero()).is_err());
    }

    #[test]
    fn large_semiprime_and_prime_powers() {
        let p = BigInt::from(1_000_000_007u64);
        let q = BigInt::from(998_244_353u64);
        let f = factor_integer(&(&p * &q * &q)).unwrap();
        assert_eq!(f, vec![(q.clone(), 2), (p.clone(), 1)]);
        let big = num_traits::pow(BigInt::from(3), 48);
        assert_eq!(factor_integer(&big).unwrap(), vec![(BigInt::from(3), 48)]);
    }
}
