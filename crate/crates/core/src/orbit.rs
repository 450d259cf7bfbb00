//! δ-orbit analysis: projective periodicity, q-shift self-similarity,
//! recurrence constants and the row/column scaling normal form.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::aztec::{col_edge_count, delta, reduce_step, row_edge_count, AztecError, AztecInstance, PeriodMatrix};
use crate::field::Field;
use crate::ratfunc::{Factored, RationalFunction};

pub const DEFAULT_MAX_ITER: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbitError {
    #[error("zero cell-factor in block ({row},{col}) of iterate {iterate}")]
    ZeroBlock { iterate: usize, row: usize, col: usize },
    #[error("entry ({row},{col}) is not of the form c*{var}^e")]
    NotMonomial { row: usize, col: usize, var: String },
    #[error("iterate {k} is not a scalar multiple of the period")]
    NotProportional { k: usize },
    #[error("order {n} is below the period length {k}")]
    OrderTooSmall { n: usize, k: usize },
    #[error(transparent)]
    Aztec(#[from] AztecError),
}

#[derive(Debug, Clone, PartialEq)]
pub enum OrbitKind {
    /// `δ^k(A) = scalar·A`.
    Proportional {
        scalar: RationalFunction,
    },
    /// `δ^k(A(q)) = A(σq)`.
    QShift {
        sigma: BigRational,
    },
    None,
}

impl OrbitKind {
    pub fn tag(&self) -> &'static str {
        match self {
            OrbitKind::Proportional { .. } => "proportional",
            OrbitKind::QShift { .. } => "q_shift",
            OrbitKind::None => "none",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitReport {
    pub kind: OrbitKind,
    /// `k`, or `None` when no iterate up to the cap qualified.
    pub period_length: Option<usize>,
    /// Product of the cell-factors of one period, for each iterate before δ
    /// is applied to it (`δ^0(A)`, `δ^1(A)`, ...).
    pub per_step_factors: Vec<RationalFunction>,
}

impl fmt::Display for OrbitReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.kind, self.period_length) {
            (OrbitKind::Proportional { scalar }, Some(k)) => write!(f, "proportional, k = {k}, scalar = {scalar}"),
            (OrbitKind::QShift { sigma }, Some(k)) => write!(f, "q-shift, k = {k}, sigma = {sigma}"),
            _ => write!(f, "none within {} iterates", self.per_step_factors.len()),
        }
    }
}

fn all_numeric(a: &PeriodMatrix<RationalFunction>) -> bool {
    a.rows().iter().flatten().all(|e| e.as_rational().is_some())
}

fn lift<F: Field>(a: &PeriodMatrix<RationalFunction>) -> PeriodMatrix<F> {
    a.map(|e| F::from_rf(e).expect("representable"))
}

fn period_factor<F: Field>(p: &PeriodMatrix<F>) -> F {
    let mut f = F::one();
    for r in (0..p.k()).step_by(2) {
        for c in (0..p.l()).step_by(2) {
            f = f * p.block_factor(r, c);
        }
    }
    f
}

fn step<F: Field>(p: &PeriodMatrix<F>, iterate: usize) -> Result<PeriodMatrix<F>, OrbitError> {
    delta(p).map_err(|e| match e {
        AztecError::ZeroCellFactor { row, col, .. } => OrbitError::ZeroBlock { iterate, row, col },
        other => other.into(),
    })
}

/// `δ^times(A)`; a zero block is reported with the index of the iterate it
/// occurred in.
pub fn delta_iterate<F: Field>(p: &PeriodMatrix<F>, times: usize) -> Result<PeriodMatrix<F>, OrbitError> {
    let mut cur = p.clone();
    for i in 0..times {
        cur = step(&cur, i)?;
    }
    Ok(cur)
}

/// `Some(c)` when `d = c·a` entrywise with identical zero patterns.
fn ratio<F: Field>(d: &PeriodMatrix<F>, a: &PeriodMatrix<F>) -> Option<F> {
    if d.k() != a.k() || d.l() != a.l() {
        return None;
    }
    let pairs = || d.rows().iter().flatten().zip(a.rows().iter().flatten());
    if pairs().any(|(x, y)| x.is_zero() != y.is_zero()) {
        return None;
    }
    let (x0, y0) = pairs().find(|(_, y)| !y.is_zero())?;
    let c = x0.clone() / y0.clone();
    pairs().all(|(x, y)| *x == c.clone() * y.clone()).then_some(c)
}

fn proportional<F: Field>(a: &PeriodMatrix<RationalFunction>, max_iter: usize) -> Result<OrbitReport, OrbitError> {
    let a = lift::<F>(a);
    let mut cur = a.clone();
    let mut factors = Vec::new();
    for k in 1..=max_iter {
        factors.push(period_factor(&cur).to_rf());
        cur = step(&cur, k - 1)?;
        if let Some(c) = ratio(&cur, &a) {
            return Ok(OrbitReport {
                kind: OrbitKind::Proportional { scalar: c.to_rf() },
                period_length: Some(k),
                per_step_factors: factors,
            });
        }
    }
    Ok(OrbitReport { kind: OrbitKind::None, period_length: None, per_step_factors: factors })
}

/// Smallest `k ≤ max_iter` with `δ^k(A) = c·A`.
///
/// Numeric periods iterate over rationals, symbolic ones in factored form.
pub fn detect_proportional(a: &PeriodMatrix<RationalFunction>, max_iter: usize) -> Result<OrbitReport, OrbitError> {
    if all_numeric(a) {
        proportional::<BigRational>(a, max_iter)
    } else {
        proportional::<Factored>(a, max_iter)
    }
}

/// `(c, e)` for an entry `c·var^e`; `None` otherwise. Zero is `(0, 0)`.
fn monomial(e: &RationalFunction, var: &str) -> Option<(BigRational, i64)> {
    if e.is_zero() {
        return Some((BigRational::zero(), 0));
    }
    if e.variables().iter().any(|v| v != var) || e.numer().num_terms() != 1 || e.denom().num_terms() != 1 {
        return None;
    }
    let exp = |p: &crate::ratfunc::MultiPoly| p.degree_in(var) as i64;
    let (n, d) = (e.numer(), e.denom());
    let c = BigRational::new(n.leading_coefficient(), d.leading_coefficient());
    Some((c, exp(n) - exp(d)))
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer().sqrt(), q.denom().sqrt());
    (&(&n * &n) == q.numer() && &(&d * &d) == q.denom()).then(|| BigRational::new(n, d))
}

fn default_candidates() -> BTreeSet<BigRational> {
    (1..=10).map(|i: i64| BigRational::from_integer(BigInt::from(i * i))).collect()
}

/// Smallest `k ≤ max_iter` with `δ^k(A(q)) = A(σq)` for a candidate `σ`.
///
/// Candidates default to the integer squares up to 100; positive rational
/// squares that appear as coefficients of monomial step factors are added
/// as the orbit is explored. A period in which `var` does not occur is
/// handed to [`detect_proportional`].
pub fn detect_q_shift(
    a: &PeriodMatrix<RationalFunction>,
    var: &str,
    max_iter: usize,
    candidates: Option<&[BigRational]>,
) -> Result<OrbitReport, OrbitError> {
    let mut uses_var = false;
    for (r, row) in a.rows().iter().enumerate() {
        for (c, e) in row.iter().enumerate() {
            let (_, exp) =
                monomial(e, var).ok_or(OrbitError::NotMonomial { row: r + 1, col: c + 1, var: var.into() })?;
            uses_var |= exp != 0;
        }
    }
    if !uses_var {
        return detect_proportional(a, max_iter);
    }
    let mut pool: BTreeSet<BigRational> = match candidates {
        Some(c) => c.iter().cloned().collect(),
        None => default_candidates(),
    };
    let learn = candidates.is_none();
    let mut shifted: BTreeMap<BigRational, PeriodMatrix<Factored>> = BTreeMap::new();
    let mut cur = lift::<Factored>(a);
    let mut factors = Vec::new();
    for k in 1..=max_iter {
        let f = period_factor(&cur).to_rf();
        if learn {
            if let Some((c, _)) = monomial(&f, var) {
                if c.is_positive() && rational_sqrt(&c).is_some() {
                    pool.insert(c);
                }
            }
        }
        factors.push(f);
        cur = step(&cur, k - 1)?;
        for sigma in &pool {
            let target = shifted.entry(sigma.clone()).or_insert_with(|| {
                let bind =
                    [(var.to_string(), RationalFunction::from_rational(sigma) * RationalFunction::var(var))].into();
                lift(&a.map(|e| e.substitute(&bind).expect("monomial substitution")))
            });
            if *target == cur {
                return Ok(OrbitReport {
                    kind: OrbitKind::QShift { sigma: sigma.clone() },
                    period_length: Some(k),
                    per_step_factors: factors,
                });
            }
        }
    }
    Ok(OrbitReport { kind: OrbitKind::None, period_length: None, per_step_factors: factors })
}

fn constant<F: Field>(a: &PeriodMatrix<RationalFunction>, n: usize, k: usize) -> Result<RationalFunction, OrbitError> {
    let p = lift::<F>(a);
    let d = delta_iterate(&p, k)?;
    let c = ratio(&d, &p).ok_or(OrbitError::NotProportional { k })?;
    let mut inst = AztecInstance::new(n, p);
    let mut product = F::one();
    for _ in 0..k {
        let (f, next) = reduce_step(&inst)?;
        product = product * f;
        inst = next;
    }
    let m = (n - k) as i64;
    Ok((product * c.pow_i(m * (m + 1))).to_rf())
}

/// The constant `K` with `M(AD_n; A) = K·M(AD_{n−k}; A)`, given that
/// `δ^k(A)` is a scalar multiple `c·A`: the cell-factors of the `k`
/// reduction steps times `c^{(n−k)(n−k+1)}` (every perfect matching of
/// `AD_{n−k}` has `(n−k)(n−k+1)` edges).
pub fn recurrence_constant(
    a: &PeriodMatrix<RationalFunction>,
    n: usize,
    k: usize,
) -> Result<RationalFunction, OrbitError> {
    if n < k || k == 0 {
        return Err(OrbitError::OrderTooSmall { n, k });
    }
    if all_numeric(a) {
        constant::<BigRational>(a, n, k)
    } else {
        constant::<Factored>(a, n, k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Row,
    Col,
}

/// One period row or column (0-based) multiplied by `factor`.
#[derive(Debug, Clone, PartialEq)]
pub struct Scaling {
    pub axis: Axis,
    pub index: usize,
    pub factor: RationalFunction,
}

impl Scaling {
    /// Number of matching edges of `AD_n` that the scaling touches: the
    /// single-row (or column) counts summed over the array lines tiled from
    /// this period line.
    pub fn exponent(&self, period_len: usize, n: usize) -> i64 {
        let count = match self.axis {
            Axis::Row => row_edge_count,
            Axis::Col => col_edge_count,
        };
        (1..=2 * n).filter(|i| (i - 1) % period_len == self.index).map(|i| count(n, i) as i64).sum()
    }
}

/// Normal form under single row and column scalings, with the scalings used.
#[derive(Debug, Clone, PartialEq)]
pub struct Equivalence {
    pub normal: PeriodMatrix<RationalFunction>,
    pub ledger: Vec<Scaling>,
}

impl Equivalence {
    /// `μ` with `M(AD_n; normal) = μ·M(AD_n; original)`.
    pub fn multiplier(&self, n: usize) -> RationalFunction {
        let (k, l) = (self.normal.k(), self.normal.l());
        self.ledger.iter().fold(RationalFunction::one(), |acc, s| {
            let len = if s.axis == Axis::Row { k } else { l };
            acc * s.factor.pow_i(s.exponent(len, n))
        })
    }
}

/// Scales each row, then each column, so that its first nonzero entry is 1.
/// Scalings by 1 are not recorded. The form is not claimed to be unique for
/// matrices with zeros.
pub fn equivalence_reduce(a: &PeriodMatrix<RationalFunction>) -> Equivalence {
    let mut m: Vec<Vec<RationalFunction>> = a.rows().to_vec();
    let mut ledger = Vec::new();
    for (i, row) in m.iter_mut().enumerate() {
        if let Some(first) = row.iter().find(|e| !e.is_zero()).cloned() {
            if !first.is_one() {
                let s = RationalFunction::one() / first;
                row.iter_mut().for_each(|e| *e = e.clone() * s.clone());
                ledger.push(Scaling { axis: Axis::Row, index: i, factor: s });
            }
        }
    }
    for j in 0..a.l() {
        if let Some(first) = m.iter().map(|r| &r[j]).find(|e| !e.is_zero()).cloned() {
            if !first.is_one() {
                let s = RationalFunction::one() / first;
                m.iter_mut().for_each(|r| r[j] = r[j].clone() * s.clone());
                ledger.push(Scaling { axis: Axis::Col, index: j, factor: s });
            }
        }
    }
    Equivalence { normal: PeriodMatrix::new(m).expect("same shape"), ledger }
}
