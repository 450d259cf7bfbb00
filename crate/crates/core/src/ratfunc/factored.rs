//! Rational functions kept as a coefficient times a product of powers of
//! pairwise coprime polynomials.
//!
//! Long products such as the per-step factors of a reduction, or δ-iterates
//! whose entries share a handful of irreducible pieces, stay tiny in this
//! form where the expanded quotient would be enormous. Addition only expands
//! the cofactors left after pulling out the common part.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::multipoly::MultiPoly;
use super::rf::forward_ops;
use super::{RatFuncError, RationalFunction};

/// `coeff * Π base_i^{exp_i}`; bases are primitive, non-constant, have a
/// positive leading coefficient and are pairwise coprime.
#[derive(Clone)]
pub struct Factored {
    coeff: BigRational,
    factors: Vec<(MultiPoly, i64)>,
}

type Base = Vec<(MultiPoly, [i64; 2])>;

/// Refines `items` into `base` (already pairwise coprime), splitting
/// elements along common divisors until the whole set is coprime again.
fn coprime_merge(mut base: Base, items: Base) -> Base {
    let mut work = items;
    'next: while let Some((q, e)) = work.pop() {
        if q.total_degree() == 0 {
            continue;
        }
        for slot in base.iter_mut() {
            if slot.0 == q {
                slot.1 = [slot.1[0] + e[0], slot.1[1] + e[1]];
                continue 'next;
            }
        }
        for i in 0..base.len() {
            let g = base[i].0.gcd(&q);
            if g.total_degree() > 0 {
                let (p, ep) = base.swap_remove(i);
                let pg = p.div_exact(&g).expect("gcd divides");
                let qg = q.div_exact(&g).expect("gcd divides");
                work.push((g, [ep[0] + e[0], ep[1] + e[1]]));
                work.push((pg, ep));
                work.push((qg, e));
                continue 'next;
            }
        }
        base.push((q, e));
    }
    base.retain(|(_, e)| e[0] != 0 || e[1] != 0);
    base
}

/// Splits an integer polynomial into rational coefficient and coprime pieces.
fn split_poly(p: &MultiPoly) -> (BigRational, Vec<(MultiPoly, i64)>) {
    let mut c = p.content();
    if p.leading_coefficient().is_negative() {
        c = -c;
    }
    let prim = p.div_exact(&MultiPoly::constant(c.clone())).expect("content divides");
    let (mono, rest) = prim.mono_content();
    let mut out = Vec::new();
    if let Some((vars, _)) = mono.as_monomial() {
        for (v, e) in vars {
            out.push((MultiPoly::var(&v), e as i64));
        }
    }
    if rest.total_degree() > 0 {
        out.push((rest, 1));
    }
    (BigRational::from_integer(c), out)
}

fn expand(factors: impl Iterator<Item = (MultiPoly, u64)>) -> MultiPoly {
    let mut acc = MultiPoly::one();
    for (p, e) in factors {
        if e > 0 {
            acc = acc.mul(&p.pow(e));
        }
    }
    acc
}

impl Factored {
    pub fn zero() -> Self {
        Factored { coeff: BigRational::zero(), factors: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(c: BigRational) -> Self {
        Factored { coeff: c, factors: Vec::new() }
    }

    pub fn from_i64(c: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn var(name: &str) -> Self {
        Factored { coeff: BigRational::one(), factors: vec![(MultiPoly::var(name), 1)] }
    }

    pub fn from_rf(f: &RationalFunction) -> Self {
        if f.is_zero() {
            return Self::zero();
        }
        let (cn, mut fs) = split_poly(f.numer());
        let (cd, fd) = split_poly(f.denom());
        fs.extend(fd.into_iter().map(|(p, e)| (p, -e)));
        // Numerator and denominator are coprime, and their monomial parts use
        // disjoint variables, so the pieces are already a coprime set.
        Factored { coeff: cn / cd, factors: fs }
    }

    /// Expands into canonical form. No gcd is needed: the bases are coprime.
    pub fn to_rf(&self) -> RationalFunction {
        if self.is_zero() {
            return RationalFunction::zero();
        }
        let num = expand(self.factors.iter().filter(|(_, e)| *e > 0).map(|(p, e)| (p.clone(), *e as u64)));
        let den = expand(self.factors.iter().filter(|(_, e)| *e < 0).map(|(p, e)| (p.clone(), e.unsigned_abs())));
        RationalFunction::from_coprime(num.scale(self.coeff.numer()), den.scale(self.coeff.denom()))
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    /// The coprime bases and their (nonzero) exponents.
    pub fn factors(&self) -> &[(MultiPoly, i64)] {
        &self.factors
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.coeff.is_one() && self.factors.is_empty()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.factors.is_empty() {
            Some(&self.coeff)
        } else {
            None
        }
    }

    fn joint(&self, other: &Self) -> Base {
        let a: Base = self.factors.iter().map(|(p, e)| (p.clone(), [*e, 0])).collect();
        let b: Base = other.factors.iter().map(|(p, e)| (p.clone(), [0, *e])).collect();
        coprime_merge(a, b)
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let factors = self.joint(other).into_iter().map(|(p, e)| (p, e[0] + e[1])).filter(|(_, e)| *e != 0).collect();
        Factored { coeff: &self.coeff * &other.coeff, factors }
    }

    pub fn inv(&self) -> Result<Self, RatFuncError> {
        if self.is_zero() {
            return Err(RatFuncError::DivisionByZero);
        }
        Ok(Factored { coeff: self.coeff.recip(), factors: self.factors.iter().map(|(p, e)| (p.clone(), -e)).collect() })
    }

    pub fn div_ref(&self, other: &Self) -> Result<Self, RatFuncError> {
        Ok(self.mul_ref(&other.inv()?))
    }

    pub fn neg_ref(&self) -> Self {
        Factored { coeff: -&self.coeff, factors: self.factors.clone() }
    }

    pub fn pow(&self, e: i64) -> Result<Self, RatFuncError> {
        if e == 0 {
            return Ok(Self::one());
        }
        if self.is_zero() {
            return if e > 0 { Ok(Self::zero()) } else { Err(RatFuncError::DivisionByZero) };
        }
        let c = if e > 0 {
            num_traits::pow(self.coeff.clone(), e as usize)
        } else {
            num_traits::pow(self.coeff.recip(), e.unsigned_abs() as usize)
        };
        Ok(Factored { coeff: c, factors: self.factors.iter().map(|(p, k)| (p.clone(), k * e)).collect() })
    }

    /// Exact square root, factor by factor; a base with odd exponent must
    /// itself be a square.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let coeff = crate::Field::sqrt_exact(&self.coeff)?;
        let mut out = Factored::from_rational(coeff);
        for (p, e) in &self.factors {
            let piece = if e % 2 == 0 {
                Factored { coeff: BigRational::one(), factors: vec![(p.clone(), e / 2)] }
            } else {
                let r = p.sqrt()?;
                Factored::from_rf(&RationalFunction::from_poly(r)).pow(*e).ok()?
            };
            out = out.mul_ref(&piece);
        }
        Some(out)
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let mut common: Base = Vec::new();
        let mut pa = Vec::new();
        let mut pb = Vec::new();
        for (p, [ea, eb]) in self.joint(other) {
            let m = ea.min(eb);
            if m != 0 {
                common.push((p.clone(), [m, 0]));
            }
            if ea > m {
                pa.push((p.clone(), (ea - m) as u64));
            }
            if eb > m {
                pb.push((p, (eb - m) as u64));
            }
        }
        let (ca, cb) = (&self.coeff, &other.coeff);
        let sa = expand(pa.into_iter()).scale(&(ca.numer() * cb.denom()));
        let sb = expand(pb.into_iter()).scale(&(cb.numer() * ca.denom()));
        let s = sa.add(&sb);
        if s.is_zero() {
            return Self::zero();
        }
        let (cs, fs) = split_poly(&s);
        let items: Base = fs.into_iter().map(|(p, e)| (p, [e, 0])).collect();
        let factors =
            coprime_merge(common, items).into_iter().map(|(p, e)| (p, e[0])).filter(|(_, e)| *e != 0).collect();
        let scale = BigRational::new(BigInt::one(), ca.denom() * cb.denom());
        Factored { coeff: cs * scale, factors }
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    /// Prints as a product, e.g. `2^3*(x^2+y^2)^4/(x)`; parseable by the grammar.
    pub fn to_product_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut num: Vec<String> = Vec::new();
        let mut den: Vec<String> = Vec::new();
        let mut sorted: Vec<(String, i64)> = self.factors.iter().map(|(p, e)| (p.to_string(), *e)).collect();
        sorted.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        let wrap = |s: &str, e: u64| {
            let s = if s.contains(['+', '-', '*']) { format!("({s})") } else { s.to_string() };
            if e == 1 {
                s
            } else {
                format!("{s}^{e}")
            }
        };
        for (s, e) in &sorted {
            if *e > 0 {
                num.push(wrap(s, *e as u64));
            } else {
                den.push(wrap(s, e.unsigned_abs()));
            }
        }
        let c = &self.coeff;
        let mut out = String::new();
        if c.numer().is_negative() {
            out.push('-');
        }
        let cn = c.numer().abs();
        if !cn.is_one() || num.is_empty() {
            num.insert(0, cn.to_string());
        }
        out.push_str(&num.join("*"));
        if !c.denom().is_one() {
            den.insert(0, c.denom().to_string());
        }
        if !den.is_empty() {
            out.push_str(&format!("/({})", den.join("*")));
        }
        out
    }
}

impl PartialEq for Factored {
    fn eq(&self, other: &Self) -> bool {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return true,
            (false, false) => {}
            _ => return false,
        }
        if self.coeff != other.coeff {
            return false;
        }
        self.joint(other).iter().all(|(_, e)| e[0] == e[1])
    }
}

impl fmt::Display for Factored {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_rf())
    }
}

impl fmt::Debug for Factored {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Factored[{}]", self.to_product_string())
    }
}

impl Zero for Factored {
    fn zero() -> Self {
        Factored::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }
}

impl One for Factored {
    fn one() -> Self {
        Factored::one()
    }
}

forward_ops!(Factored);

impl From<&RationalFunction> for Factored {
    fn from(f: &RationalFunction) -> Self {
        Factored::from_rf(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::parse;

    fn f(s: &str) -> Factored {
        Factored::from_rf(&parse(s).unwrap())
    }

    #[test]
    fn round_trip_through_rf() {
        for s in ["0", "1", "-3/4", "x^2*y/(x^2+y^2)", "(x+y)^3*(x-y)/(2*z^2)"] {
            assert_eq!(f(s).to_rf(), parse(s).unwrap(), "{s}");
        }
    }

    #[test]
    fn addition_pulls_out_common_factors() {
        let a = f("x^3*(x+y)^5");
        let b = f("y*x^2*(x+y)^4");
        let s = a.add_ref(&b);
        assert_eq!(s.to_rf(), parse("x^3*(x+y)^5+y*x^2*(x+y)^4").unwrap());
        let k = s.factors().iter().find(|(p, _)| p.to_string() == "x+y").map(|(_, e)| *e);
        assert_eq!(k, Some(4));
    }

    #[test]
    fn product_splits_shared_pieces() {
        let a = f("(x^2-y^2)^2");
        let b = f("1/(x+y)^3");
        let p = a.mul_ref(&b);
        assert_eq!(p.to_rf(), parse("(x-y)^2/(x+y)").unwrap());
        assert!(p.mul_ref(&p.inv().unwrap()).is_one());
    }

    #[test]
    fn equality_is_value_equality() {
        assert_eq!(f("(x+y)^2"), f("x^2+2*x*y+y^2"));
        assert_ne!(f("x"), f("2*x"));
        assert_eq!(f("x - x"), Factored::zero());
    }

    #[test]
    fn product_string_reads_back() {
        let a = f("2*(x^2+y^2)^4/(3*x)");
        assert_eq!(parse(&a.to_product_string()).unwrap(), a.to_rf());
    }
}
