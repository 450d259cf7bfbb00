use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::gcd;
use super::poly::{Mono, Poly};

pub(crate) type Vars = Arc<[String]>;

/// Multivariate polynomial with integer coefficients.
///
/// Canonical: the variable list is exactly the sorted set of variables that
/// occur, and terms are in descending grlex order, so structural equality is
/// value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    pub(crate) vars: Vars,
    pub(crate) poly: Poly,
}

fn no_vars() -> Vars {
    Arc::from(Vec::<String>::new())
}

/// Merges variable lists and re-embeds every polynomial into the union.
pub(crate) fn common_space(ps: &[&MultiPoly]) -> (Vars, Vec<Poly>) {
    let first = ps[0].vars.clone();
    if ps.iter().all(|p| p.vars == first) {
        return (first, ps.iter().map(|p| p.poly.clone()).collect());
    }
    let mut names: Vec<String> = ps.iter().flat_map(|p| p.vars.iter().cloned()).collect();
    names.sort();
    names.dedup();
    let vars: Vars = Arc::from(names);
    let polys = ps
        .iter()
        .map(|p| {
            let map: Vec<usize> = p.vars.iter().map(|v| vars.binary_search(v).unwrap()).collect();
            p.poly.remap(vars.len(), &map)
        })
        .collect();
    (vars, polys)
}

impl MultiPoly {
    /// Wraps a positional polynomial, dropping variables that do not occur.
    pub(crate) fn compress(vars: Vars, poly: Poly) -> MultiPoly {
        let occ = poly.occurring();
        if occ.iter().all(|&o| o) {
            return MultiPoly { vars, poly };
        }
        let kept: Vec<usize> = (0..vars.len()).filter(|&i| occ[i]).collect();
        let names: Vec<String> = kept.iter().map(|&i| vars[i].clone()).collect();
        let terms = poly.terms.into_iter().map(|(m, c)| (kept.iter().map(|&i| m[i]).collect::<Mono>(), c)).collect();
        MultiPoly { vars: Arc::from(names), poly: Poly { nvars: kept.len(), terms } }
    }

    pub fn zero() -> Self {
        MultiPoly { vars: no_vars(), poly: Poly::zero(0) }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        MultiPoly { vars: no_vars(), poly: Poly::constant(0, c) }
    }

    pub fn var(name: &str) -> Self {
        MultiPoly { vars: Arc::from(vec![name.to_string()]), poly: Poly::var(1, 0) }
    }

    /// Builds from `(exponents, coefficient)` pairs over the given variable names.
    pub fn from_terms(vars: &[&str], terms: &[(&[u32], i64)]) -> Self {
        let mut order: Vec<(usize, &str)> = vars.iter().copied().enumerate().collect();
        order.sort_by(|a, b| a.1.cmp(b.1));
        let names: Vec<String> = order.iter().map(|(_, v)| v.to_string()).collect();
        let n = names.len();
        let poly = Poly::from_terms(
            n,
            terms.iter().map(|(m, c)| {
                let mono: Mono = order.iter().map(|&(i, _)| m[i]).collect();
                (mono, BigInt::from(*c))
            }),
        );
        Self::compress(Arc::from(names), poly)
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    /// Terms in canonical order as (exponent vector over [`variables`](Self::variables), coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.poly.terms.iter().map(|(m, c)| (m.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.poly.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.poly.is_one()
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        if self.is_zero() {
            return Some(BigInt::zero());
        }
        self.poly.as_constant().cloned()
    }

    pub fn total_degree(&self) -> u64 {
        self.poly.total_degree()
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        match self.vars.iter().position(|v| v == var) {
            Some(i) => self.poly.degree_in(i),
            None => 0,
        }
    }

    pub fn leading_coefficient(&self) -> BigInt {
        if self.is_zero() {
            BigInt::zero()
        } else {
            self.poly.lc().clone()
        }
    }

    pub fn content(&self) -> BigInt {
        self.poly.content()
    }

    fn binop(&self, other: &MultiPoly, f: impl Fn(&Poly, &Poly) -> Poly) -> MultiPoly {
        let (vars, ps) = common_space(&[self, other]);
        Self::compress(vars, f(&ps[0], &ps[1]))
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.binop(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.binop(other, |a, b| a.sub(b))
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.binop(other, |a, b| a.mul(b))
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly { vars: self.vars.clone(), poly: self.poly.neg() }
    }

    pub fn scale(&self, k: &BigInt) -> MultiPoly {
        Self::compress(self.vars.clone(), self.poly.scale(k))
    }

    pub fn pow(&self, e: u64) -> MultiPoly {
        Self::compress(self.vars.clone(), self.poly.pow(e))
    }

    /// Greatest common divisor, normalized to a positive leading coefficient.
    pub fn gcd(&self, other: &MultiPoly) -> MultiPoly {
        self.binop(other, gcd::gcd)
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> MultiPoly {
        MultiPoly { vars: self.vars.clone(), poly: self.poly.primitive() }
    }

    /// Exact quotient `self / d` in Z[vars], if it exists.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let (vars, ps) = common_space(&[self, d]);
        ps[0].div_exact(&ps[1]).map(|q| Self::compress(vars, q))
    }

    /// Square root with positive leading coefficient, when `self` is a
    /// perfect square in Z[vars].
    pub fn sqrt(&self) -> Option<MultiPoly> {
        self.poly.sqrt().map(|r| Self::compress(self.vars.clone(), r))
    }

    /// Evaluates at rational points; every variable must be bound.
    pub fn eval(&self, bind: &BTreeMap<String, BigRational>) -> Option<BigRational> {
        let vals: Option<Vec<&BigRational>> = self.vars.iter().map(|v| bind.get(v)).collect();
        let vals = vals?;
        let mut acc = BigRational::zero();
        for (m, c) in &self.poly.terms {
            let mut t = BigRational::from_integer(c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(vals[i].clone(), e as usize);
                }
            }
            acc += t;
        }
        Some(acc)
    }

    pub(crate) fn mono_content(&self) -> (MultiPoly, MultiPoly) {
        let m = self.poly.mono_content();
        let mono = MultiPoly::compress(self.vars.clone(), Poly::monomial(m.clone(), BigInt::one()));
        let rest = Poly {
            nvars: self.poly.nvars,
            terms: self
                .poly
                .terms
                .iter()
                .map(|(t, c)| (t.iter().zip(m.iter()).map(|(a, b)| a - b).collect::<Mono>(), c.clone()))
                .collect(),
        };
        (mono, MultiPoly::compress(self.vars.clone(), rest))
    }

    /// Per-variable exponents of a monomial, if `self` is `c * monomial`.
    pub(crate) fn as_monomial(&self) -> Option<(Vec<(String, u32)>, BigInt)> {
        match self.poly.terms.as_slice() {
            [(m, c)] => {
                Some((self.vars.iter().cloned().zip(m.iter().copied()).filter(|(_, e)| *e > 0).collect(), c.clone()))
            }
            _ => None,
        }
    }
}

/// `Some(q)` with `f = d * q` when `d` divides `f` exactly over the integers.
pub fn divides(d: &MultiPoly, f: &MultiPoly) -> Option<MultiPoly> {
    f.div_exact(d)
}

fn write_term(f: &mut fmt::Formatter<'_>, vars: &[String], m: &[u32], c: &BigInt, first: bool) -> fmt::Result {
    let neg = c.is_negative();
    if neg {
        f.write_str("-")?;
    } else if !first {
        f.write_str("+")?;
    }
    let a = c.abs();
    let is_const = m.iter().all(|&e| e == 0);
    if is_const {
        return write!(f, "{a}");
    }
    let mut sep = false;
    if !a.is_one() {
        write!(f, "{a}")?;
        sep = true;
    }
    for (v, &e) in vars.iter().zip(m.iter()) {
        if e == 0 {
            continue;
        }
        if sep {
            f.write_str("*")?;
        }
        sep = true;
        if e == 1 {
            f.write_str(v)?;
        } else {
            write!(f, "{v}^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.poly.terms.iter().enumerate() {
            write_term(f, &self.vars, m, c, i == 0)?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

impl From<BigInt> for MultiPoly {
    fn from(c: BigInt) -> Self {
        MultiPoly::constant(c)
    }
}
