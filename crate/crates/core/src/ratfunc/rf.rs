use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::gcd::gcd;
use super::multipoly::{common_space, MultiPoly, Vars};
use super::poly::Poly;
use super::RatFuncError;

/// Canonical quotient of integer polynomials.
///
/// `num` and `den` are coprime (including integer content) and `den` has a
/// positive leading coefficient, so two equal rational functions always have
/// identical representations. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: MultiPoly,
    den: MultiPoly,
}

/// Canonicalizes a num/den pair living in a shared positional space.
fn finish(vars: Vars, mut n: Poly, mut d: Poly) -> RationalFunction {
    if n.is_zero() {
        return RationalFunction::zero();
    }
    if d.lc().is_negative() {
        n = n.neg();
        d = d.neg();
    }
    RationalFunction { num: MultiPoly::compress(vars.clone(), n), den: MultiPoly::compress(vars, d) }
}

fn reduce(vars: Vars, n: Poly, d: Poly) -> RationalFunction {
    if d.is_one() || n.is_zero() {
        return finish(vars, n, d);
    }
    let g = gcd(&n, &d);
    if g.is_one() {
        return finish(vars, n, d);
    }
    let n2 = n.div_exact(&g).expect("gcd divides numerator");
    let d2 = d.div_exact(&g).expect("gcd divides denominator");
    finish(vars, n2, d2)
}

fn quo(a: &Poly, g: &Poly) -> Poly {
    if g.is_one() {
        a.clone()
    } else {
        a.div_exact(g).expect("exact")
    }
}

impl RationalFunction {
    pub fn zero() -> Self {
        RationalFunction { num: MultiPoly::zero(), den: MultiPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_integer(BigInt::one())
    }

    pub fn from_integer(c: BigInt) -> Self {
        RationalFunction { num: MultiPoly::constant(c), den: MultiPoly::one() }
    }

    pub fn from_i64(c: i64) -> Self {
        Self::from_integer(BigInt::from(c))
    }

    pub fn from_rational(q: &BigRational) -> Self {
        RationalFunction { num: MultiPoly::constant(q.numer().clone()), den: MultiPoly::constant(q.denom().clone()) }
    }

    pub fn var(name: &str) -> Self {
        RationalFunction { num: MultiPoly::var(name), den: MultiPoly::one() }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RationalFunction { num: p, den: MultiPoly::one() }
    }

    /// Builds `n / d`, reducing to canonical form.
    pub fn from_parts(n: MultiPoly, d: MultiPoly) -> Result<Self, RatFuncError> {
        if d.is_zero() {
            return Err(RatFuncError::DivisionByZero);
        }
        let (vars, ps) = common_space(&[&n, &d]);
        let mut it = ps.into_iter();
        let (n, d) = (it.next().unwrap(), it.next().unwrap());
        Ok(reduce(vars, n, d))
    }

    /// Trusted constructor: `n`, `d` already coprime with `lc(d) > 0`.
    pub(crate) fn from_coprime(n: MultiPoly, d: MultiPoly) -> Self {
        debug_assert!(!d.is_zero());
        if n.is_zero() {
            return Self::zero();
        }
        RationalFunction { num: n, den: d }
    }

    pub fn numer(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denom(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Exact square root, when numerator and denominator are both perfect
    /// squares (the denominator is positive, so the root is unique up to sign
    /// and the one with positive leading coefficient is returned).
    pub fn sqrt(&self) -> Option<Self> {
        Some(Self::from_coprime(self.num.sqrt()?, self.den.sqrt()?))
    }

    /// The value as a rational number if no variable occurs.
    pub fn as_rational(&self) -> Option<BigRational> {
        let n = self.num.as_integer()?;
        let d = self.den.as_integer()?;
        Some(BigRational::new(n, d))
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    /// Sorted union of the variables of numerator and denominator.
    pub fn variables(&self) -> Vec<String> {
        let mut v: Vec<String> = self.num.variables().iter().chain(self.den.variables()).cloned().collect();
        v.sort();
        v.dedup();
        v
    }

    fn space(&self, other: &Self) -> (Vars, [Poly; 4]) {
        let (vars, ps) = common_space(&[&self.num, &self.den, &other.num, &other.den]);
        let mut it = ps.into_iter();
        let arr = [it.next().unwrap(), it.next().unwrap(), it.next().unwrap(), it.next().unwrap()];
        (vars, arr)
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        self.add_impl(other, false)
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_impl(other, true)
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { other.neg_ref() } else { other.clone() };
        }
        let (vars, [a, b, c, d]) = self.space(other);
        let c = if negate { c.neg() } else { c };
        if b.is_one() && d.is_one() {
            return finish(vars, a.add(&c), b);
        }
        if b == d {
            let n = a.add(&c);
            return reduce(vars, n, b);
        }
        let g = gcd(&b, &d);
        if g.is_one() {
            let n = a.mul(&d).add(&c.mul(&b));
            return finish(vars, n, b.mul(&d));
        }
        let b1 = quo(&b, &g);
        let d1 = quo(&d, &g);
        let t = a.mul(&d1).add(&c.mul(&b1));
        if t.is_zero() {
            return Self::zero();
        }
        let g2 = gcd(&t, &g);
        let n = quo(&t, &g2);
        let den = b1.mul(&quo(&d, &g2));
        finish(vars, n, den)
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (vars, [a, b, c, d]) = self.space(other);
        if b.is_one() && d.is_one() {
            return finish(vars, a.mul(&c), b);
        }
        let g1 = gcd(&a, &d);
        let g2 = gcd(&c, &b);
        let n = quo(&a, &g1).mul(&quo(&c, &g2));
        let den = quo(&b, &g2).mul(&quo(&d, &g1));
        finish(vars, n, den)
    }

    pub fn inv(&self) -> Result<Self, RatFuncError> {
        if self.is_zero() {
            return Err(RatFuncError::DivisionByZero);
        }
        let (n, d) = (self.den.clone(), self.num.clone());
        if d.leading_coefficient().is_negative() {
            Ok(RationalFunction { num: n.neg(), den: d.neg() })
        } else {
            Ok(RationalFunction { num: n, den: d })
        }
    }

    pub fn div_ref(&self, other: &Self) -> Result<Self, RatFuncError> {
        Ok(self.mul_ref(&other.inv()?))
    }

    pub fn neg_ref(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Self, RatFuncError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        if k == 0 {
            return Ok(Self::one());
        }
        // Powers of coprime polynomials stay coprime.
        Ok(RationalFunction { num: base.num.pow(k), den: base.den.pow(k) })
    }

    /// Substitutes rational functions for variables; unbound variables stay.
    pub fn substitute(&self, bind: &BTreeMap<String, RationalFunction>) -> Result<Self, RatFuncError> {
        let n = subst_poly(&self.num, bind)?;
        let d = subst_poly(&self.den, bind)?;
        if d.is_zero() {
            return Err(RatFuncError::Pole);
        }
        Ok(n.div_ref(&d).expect("nonzero"))
    }

    /// Evaluates with every variable bound to a rational number.
    pub fn eval(&self, bind: &BTreeMap<String, BigRational>) -> Result<BigRational, RatFuncError> {
        let missing =
            || RatFuncError::Unbound(self.variables().into_iter().find(|v| !bind.contains_key(v)).unwrap_or_default());
        let n = self.num.eval(bind).ok_or_else(missing)?;
        let d = self.den.eval(bind).ok_or_else(missing)?;
        if d.is_zero() {
            return Err(RatFuncError::Pole);
        }
        Ok(n / d)
    }
}

fn subst_poly(p: &MultiPoly, bind: &BTreeMap<String, RationalFunction>) -> Result<RationalFunction, RatFuncError> {
    let vals: Vec<RationalFunction> =
        p.variables().iter().map(|v| bind.get(v).cloned().unwrap_or_else(|| RationalFunction::var(v))).collect();
    let mut pows: Vec<Vec<RationalFunction>> = vals.iter().map(|v| vec![RationalFunction::one(), v.clone()]).collect();
    let mut acc = RationalFunction::zero();
    for (m, c) in p.terms() {
        let mut t = RationalFunction::from_integer(c.clone());
        for (i, &e) in m.iter().enumerate() {
            let e = e as usize;
            if e == 0 {
                continue;
            }
            while pows[i].len() <= e {
                let next = pows[i].last().unwrap().mul_ref(&vals[i]);
                pows[i].push(next);
            }
            t = t.mul_ref(&pows[i][e]);
        }
        acc = acc.add_ref(&t);
    }
    Ok(acc)
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RF[{self}]")
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        RationalFunction::one()
    }
}

macro_rules! forward_ops {
    ($t:ty) => {
        impl std::ops::Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                self.add_ref(&o)
            }
        }
        impl<'a> std::ops::Add<&'a $t> for &'a $t {
            type Output = $t;
            fn add(self, o: &$t) -> $t {
                self.add_ref(o)
            }
        }
        impl std::ops::Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t {
                self.sub_ref(&o)
            }
        }
        impl<'a> std::ops::Sub<&'a $t> for &'a $t {
            type Output = $t;
            fn sub(self, o: &$t) -> $t {
                self.sub_ref(o)
            }
        }
        impl std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, o: $t) -> $t {
                self.mul_ref(&o)
            }
        }
        impl<'a> std::ops::Mul<&'a $t> for &'a $t {
            type Output = $t;
            fn mul(self, o: &$t) -> $t {
                self.mul_ref(o)
            }
        }
        /// Panics on division by zero, like the numeric types.
        impl std::ops::Div for $t {
            type Output = $t;
            fn div(self, o: $t) -> $t {
                self.div_ref(&o).expect("division by zero")
            }
        }
        impl<'a> std::ops::Div<&'a $t> for &'a $t {
            type Output = $t;
            fn div(self, o: &$t) -> $t {
                self.div_ref(o).expect("division by zero")
            }
        }
        impl std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                self.neg_ref()
            }
        }
    };
}

pub(crate) use forward_ops;

forward_ops!(RationalFunction);

impl From<i64> for RationalFunction {
    fn from(c: i64) -> Self {
        RationalFunction::from_i64(c)
    }
}

impl From<BigRational> for RationalFunction {
    fn from(q: BigRational) -> Self {
        RationalFunction::from_rational(&q)
    }
}

impl From<MultiPoly> for RationalFunction {
    fn from(p: MultiPoly) -> Self {
        RationalFunction::from_poly(p)
    }
}
