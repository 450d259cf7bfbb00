//! Sparse integer polynomials over a fixed, positional variable space.
//!
//! This is the workhorse behind [`MultiPoly`](super::MultiPoly): every term
//! carries an exponent vector of the same length, terms are kept sorted in
//! descending graded-lexicographic order and no zero coefficient is stored.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

pub(crate) type Mono = SmallVec<[u32; 8]>;

pub(crate) fn mono_degree(m: &Mono) -> u64 {
    m.iter().map(|&e| e as u64).sum()
}

/// Graded lexicographic comparison; variable 0 is the most significant.
pub(crate) fn grlex(a: &Mono, b: &Mono) -> Ordering {
    mono_degree(a).cmp(&mono_degree(b)).then_with(|| a.cmp(b))
}

fn mono_mul(a: &Mono, b: &Mono) -> Mono {
    a.iter().zip(b.iter()).map(|(x, y)| x + y).collect()
}

fn mono_div(a: &Mono, b: &Mono) -> Option<Mono> {
    let mut out = Mono::with_capacity(a.len());
    for (x, y) in a.iter().zip(b.iter()) {
        if x < y {
            return None;
        }
        out.push(x - y);
    }
    Some(out)
}

/// Ordering key so that a `BTreeMap` iterates in grlex order.
#[derive(Clone, PartialEq, Eq)]
struct Key(Mono);

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        grlex(&self.0, &other.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Poly {
    pub nvars: usize,
    pub terms: Vec<(Mono, BigInt)>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Poly { nvars, terms: vec![(SmallVec::from_elem(0, nvars), c)] }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m: Mono = SmallVec::from_elem(0, nvars);
        m[i] = 1;
        Poly { nvars, terms: vec![(m, BigInt::one())] }
    }

    pub fn monomial(m: Mono, c: BigInt) -> Self {
        let nvars = m.len();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Poly { nvars, terms: vec![(m, c)] }
    }

    /// Builds a polynomial from unsorted, possibly repeated terms.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Mono, BigInt)>) -> Self {
        let mut acc: HashMap<Mono, BigInt> = HashMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_insert_with(BigInt::zero) += c;
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| grlex(&b.0, &a.0));
        Poly { nvars, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The integer value if the polynomial has no variable part.
    pub fn as_constant(&self) -> Option<&BigInt> {
        match self.terms.as_slice() {
            [] => None,
            [(m, c)] if m.iter().all(|&e| e == 0) => Some(c),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || self.as_constant().is_some()
    }

    pub fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.first().map_or(0, |(m, _)| mono_degree(m))
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m[v]).max().unwrap_or(0)
    }

    pub fn occurring(&self) -> Vec<bool> {
        let mut occ = vec![false; self.nvars];
        for (m, _) in &self.terms {
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    occ[i] = true;
                }
            }
        }
        occ
    }

    pub fn neg(&self) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> Poly {
        if k.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    /// Divides every coefficient by `k`, which must divide them exactly.
    pub fn div_scalar(&self, k: &BigInt) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), c / k)).collect() }
    }

    pub fn mul_term(&self, m: &Mono, k: &BigInt) -> Poly {
        if k.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(a, c)| (mono_mul(a, m), c * k)).collect() }
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match grlex(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate { -&t.1 } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        Poly { nvars: self.nvars, terms: out }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.merge(other, true)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.nvars);
        }
        let (small, big) = if self.terms.len() <= other.terms.len() { (self, other) } else { (other, self) };
        if small.terms.len() == 1 {
            let (m, c) = &small.terms[0];
            return big.mul_term(m, c);
        }
        let mut acc: HashMap<Mono, BigInt> = HashMap::with_capacity(small.terms.len() * big.terms.len());
        for (ma, ca) in &small.terms {
            for (mb, cb) in &big.terms {
                let m = mono_mul(ma, mb);
                let p = ca * cb;
                match acc.get_mut(&m) {
                    Some(v) => *v += p,
                    None => {
                        acc.insert(m, p);
                    }
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| grlex(&b.0, &a.0));
        Poly { nvars: self.nvars, terms }
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.nvars);
        if e == 0 {
            return acc;
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            let m: Mono = m.iter().map(|&x| x * e as u32).collect();
            return Poly::monomial(m, num_traits::pow(c.clone(), e as usize));
        }
        loop {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e == 0 {
                return acc;
            }
            base = base.mul(&base);
        }
    }

    /// Exact division; `None` when `d` does not divide `self` in Z[vars].
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero(self.nvars));
        }
        if d.terms.len() == 1 {
            let (dm, dc) = &d.terms[0];
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                let (q, r) = c.div_rem(dc);
                if !r.is_zero() {
                    return None;
                }
                terms.push((mono_div(m, dm)?, q));
            }
            return Some(Poly { nvars: self.nvars, terms });
        }
        if self.total_degree() < d.total_degree() || self.terms.len() < 2 {
            return None;
        }
        for v in 0..self.nvars {
            if d.degree_in(v) > self.degree_in(v) {
                return None;
            }
        }
        let (lm, lc) = &d.terms[0];
        let mut rem: BTreeMap<Key, BigInt> = self.terms.iter().map(|(m, c)| (Key(m.clone()), c.clone())).collect();
        let mut quot = Vec::new();
        while let Some((Key(m), c)) = rem.pop_last() {
            let qm = mono_div(&m, lm)?;
            let (qc, r) = c.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            for (dm, dc) in &d.terms[1..] {
                let k = Key(mono_mul(&qm, dm));
                let p = &qc * dc;
                match rem.get_mut(&k) {
                    Some(v) => {
                        *v -= p;
                        if v.is_zero() {
                            rem.remove(&k);
                        }
                    }
                    None => {
                        rem.insert(k, -p);
                    }
                }
            }
            quot.push((qm, qc));
        }
        Some(Poly { nvars: self.nvars, terms: quot })
    }

    /// Exact square root with positive leading coefficient, if `self` is a
    /// perfect square in Z[vars].
    ///
    /// Top-down: each new root term is `lt(rem) / (2 lt(root))`; a square
    /// root can have no term of degree below half the lowest degree here.
    pub fn sqrt(&self) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero(self.nvars));
        }
        let (lm, lc) = &self.terms[0];
        if lm.iter().any(|e| e % 2 == 1) || lc.is_negative() {
            return None;
        }
        let c = lc.sqrt();
        if &(&c * &c) != lc {
            return None;
        }
        let floor = self.terms.iter().map(|(m, _)| mono_degree(m)).min().unwrap_or(0);
        let head: Mono = lm.iter().map(|e| e / 2).collect();
        let two_head = (head.clone(), BigInt::from(2) * &c);
        let mut root = Poly::monomial(head, c);
        let mut rem = self.sub(&root.mul(&root));
        while !rem.is_zero() {
            let (m, k) = &rem.terms[0];
            let tm = mono_div(m, &two_head.0)?;
            let (tc, r) = k.div_rem(&two_head.1);
            if !r.is_zero() || 2 * mono_degree(&tm) < floor {
                return None;
            }
            // rem -= (2 root + t) t
            let t = Poly::monomial(tm.clone(), tc.clone());
            let step = root.scale(&BigInt::from(2)).add(&t).mul_term(&tm, &tc);
            rem = rem.sub(&step);
            root = root.add(&t);
        }
        Some(root)
    }

    /// Integer content, always non-negative.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Componentwise minimum exponent over all terms.
    pub fn mono_content(&self) -> Mono {
        let mut m: Mono = SmallVec::from_elem(u32::MAX, self.nvars);
        for (t, _) in &self.terms {
            for (a, &b) in m.iter_mut().zip(t.iter()) {
                *a = (*a).min(b);
            }
        }
        if self.terms.is_empty() {
            m.iter_mut().for_each(|a| *a = 0);
        }
        m
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        if c.is_one() {
            self.clone()
        } else {
            self.div_scalar(&c)
        }
    }

    /// Splits into coefficients with respect to variable `v` (exponent → coefficient).
    pub fn coeffs_in(&self, v: usize) -> BTreeMap<u32, Poly> {
        let mut buckets: BTreeMap<u32, Vec<(Mono, BigInt)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let e = m2[v];
            m2[v] = 0;
            buckets.entry(e).or_default().push((m2, c.clone()));
        }
        buckets
            .into_iter()
            .map(|(e, ts)| {
                // Zeroing one exponent keeps the relative grlex order only up to
                // degree shifts, so re-sort.
                let mut ts = ts;
                ts.sort_by(|a, b| grlex(&b.0, &a.0));
                (e, Poly { nvars: self.nvars, terms: ts })
            })
            .collect()
    }

    pub fn leading_coeff_in(&self, v: usize) -> Poly {
        self.coeffs_in(v).into_iter().next_back().map(|(_, c)| c).unwrap_or_else(|| Poly::zero(self.nvars))
    }

    /// Multiplies by `x_v^e`.
    pub fn shift(&self, v: usize, e: u32) -> Poly {
        let mut m: Mono = SmallVec::from_elem(0, self.nvars);
        m[v] = e;
        self.mul_term(&m, &BigInt::one())
    }

    /// Re-embeds into another variable space via an index map.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Poly {
        let mut terms: Vec<(Mono, BigInt)> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut m2: Mono = SmallVec::from_elem(0, nvars);
                for (i, &e) in m.iter().enumerate() {
                    m2[map[i]] += e;
                }
                (m2, c.clone())
            })
            .collect();
        terms.sort_by(|a, b| grlex(&b.0, &a.0));
        Poly { nvars, terms }
    }

    /// Pseudo-remainder of `self` by `d` with respect to variable `v`.
    pub fn prem(&self, d: &Poly, v: usize) -> Poly {
        let dd = d.degree_in(v);
        let ld = d.leading_coeff_in(v);
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(v) >= dd {
            let dr = r.degree_in(v);
            let lr = r.leading_coeff_in(v);
            r = r.mul(&ld).sub(&d.mul(&lr).shift(v, dr - dd));
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(nvars: usize, ts: &[(&[u32], i64)]) -> Poly {
        Poly::from_terms(nvars, ts.iter().map(|(m, c)| (SmallVec::from_slice(m), BigInt::from(*c))))
    }

    #[test]
    fn grlex_orders_by_degree_then_lex() {
        let xy: Mono = SmallVec::from_slice(&[1, 1]);
        let x2: Mono = SmallVec::from_slice(&[2, 0]);
        let y3: Mono = SmallVec::from_slice(&[0, 3]);
        assert_eq!(grlex(&x2, &xy), Ordering::Greater);
        assert_eq!(grlex(&y3, &x2), Ordering::Greater);
    }

    #[test]
    fn mul_and_exact_division_round_trip() {
        let a = p(2, &[(&[1, 0], 1), (&[0, 1], 1)]);
        let b = p(2, &[(&[1, 0], 1), (&[0, 1], -1), (&[0, 0], 3)]);
        let ab = a.mul(&b);
        assert_eq!(ab.div_exact(&a), Some(b.clone()));
        assert_eq!(ab.div_exact(&b), Some(a.clone()));
        let x2y2 = p(2, &[(&[2, 0], 1), (&[0, 2], 1)]);
        assert_eq!(x2y2.div_exact(&a), None);
    }

    #[test]
    fn prem_of_multiple_is_zero() {
        let a = p(2, &[(&[1, 0], 2), (&[0, 1], 1)]);
        let b = p(2, &[(&[2, 0], 1), (&[0, 0], 1)]);
        assert!(a.mul(&b).prem(&a, 0).is_zero());
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let a = p(2, &[(&[1, 0], 1), (&[0, 1], 2), (&[0, 0], -1)]);
        assert_eq!(a.pow(3), a.mul(&a).mul(&a));
        assert!(a.pow(0).is_one());
    }

    #[test]
    fn sqrt_recovers_squares_and_rejects_others() {
        let a = p(2, &[(&[1, 0], 3), (&[0, 1], -2), (&[0, 0], 1)]);
        assert_eq!(a.mul(&a).sqrt(), Some(a.clone()));
        let x2y2 = p(2, &[(&[2, 0], 1), (&[0, 2], 1)]);
        assert_eq!(x2y2.sqrt(), None);
        assert_eq!(p(2, &[(&[2, 2], 4)]).sqrt(), Some(p(2, &[(&[1, 1], 2)])));
        assert_eq!(p(2, &[(&[2, 0], 2)]).sqrt(), None);
        assert_eq!(a.mul(&a).add(&Poly::one(2)).sqrt(), None);
    }
}
