//! Periods determined by their first two columns, and the order-lowering
//! operators that track them through the reduction.
//!
//! Rows of `T` are `[x_i, y_i]`, `i = 1..2n`; block `i` is the row pair
//! `(2i−1, 2i)` with `Δ_i = x_{2i−1} y_{2i} + x_{2i} y_{2i−1}` and, for the
//! quad pattern, `S_i = sqrt(x_{2i−1} y_{2i−1} x_{2i} y_{2i})`.
//!
//! Square roots are taken exactly: callers supply entries whose block
//! products stay perfect squares all the way down (all entries squares is
//! the simplest sufficient condition), otherwise [`FamilyError::NotSquare`].

use std::fmt;

use crate::aztec::PeriodMatrix;
use crate::field::Field;

use super::FamilyError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnPattern {
    /// Rows `[x, y, 1/x, 1/y]`.
    Quad,
    /// Rows `[x, y, y, x]`.
    Duplicate,
}

impl fmt::Display for ColumnPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ColumnPattern::Quad => "quad",
            ColumnPattern::Duplicate => "duplicate",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct YangColumnPair<F> {
    rows: Vec<[F; 2]>,
    pattern: ColumnPattern,
}

impl<F: Field> YangColumnPair<F> {
    /// Needs an even, non-zero number of rows; the quad pattern also needs
    /// every entry nonzero.
    pub fn new(rows: Vec<[F; 2]>, pattern: ColumnPattern) -> Result<Self, FamilyError> {
        if rows.is_empty() || rows.len() % 2 == 1 {
            return Err(FamilyError::Rows { rows: rows.len(), min: 2 });
        }
        if pattern == ColumnPattern::Quad {
            if let Some(i) = rows.iter().position(|r| r[0].is_zero() || r[1].is_zero()) {
                return Err(FamilyError::ZeroEntry(i + 1));
            }
        }
        Ok(YangColumnPair { rows, pattern })
    }

    pub fn rows(&self) -> &[[F; 2]] {
        &self.rows
    }

    pub fn pattern(&self) -> ColumnPattern {
        self.pattern
    }

    /// The diamond order the pair describes.
    pub fn order(&self) -> usize {
        self.rows.len() / 2
    }

    /// The `2n × 4` period.
    pub fn period(&self) -> PeriodMatrix<F> {
        let rows = self
            .rows
            .iter()
            .map(|[x, y]| match self.pattern {
                ColumnPattern::Quad => vec![x.clone(), y.clone(), F::one() / x.clone(), F::one() / y.clone()],
                ColumnPattern::Duplicate => vec![x.clone(), y.clone(), y.clone(), x.clone()],
            })
            .collect();
        PeriodMatrix::new(rows).expect("even rows, four columns")
    }

    fn x(&self, i: usize) -> &F {
        &self.rows[i - 1][0]
    }

    fn y(&self, i: usize) -> &F {
        &self.rows[i - 1][1]
    }

    fn deltas(&self) -> Result<Vec<F>, FamilyError> {
        (1..=self.order())
            .map(|i| {
                let d = self.x(2 * i - 1).clone() * self.y(2 * i).clone()
                    + self.x(2 * i).clone() * self.y(2 * i - 1).clone();
                if d.is_zero() {
                    Err(FamilyError::ZeroDelta(i))
                } else {
                    Ok(d)
                }
            })
            .collect()
    }

    fn s(&self, i: usize) -> Result<F, FamilyError> {
        let p = self.x(2 * i - 1).clone() * self.y(2 * i - 1).clone() * self.x(2 * i).clone() * self.y(2 * i).clone();
        p.sqrt_exact().ok_or(FamilyError::NotSquare(i))
    }

    fn expect(&self, pattern: ColumnPattern, min: usize) -> Result<(), FamilyError> {
        if self.pattern != pattern {
            return Err(FamilyError::Pattern(pattern));
        }
        if self.rows.len() < min {
            return Err(FamilyError::Rows { rows: self.rows.len(), min });
        }
        Ok(())
    }
}

/// The quad-pattern operator: `2n` rows become `2n−2`,
/// `x₁/S₁, S₁/y₁; x₄/S₂, S₂/y₄; x₃/S₂, S₂/y₃; …; x_{2n}/S_n, S_n/y_{2n}`.
pub fn yang_r<F: Field>(t: &YangColumnPair<F>) -> Result<YangColumnPair<F>, FamilyError> {
    t.expect(ColumnPattern::Quad, 4)?;
    let n = t.order();
    let s: Vec<F> = (1..=n).map(|i| t.s(i)).collect::<Result<_, _>>()?;
    let row = |r: usize, s: &F| [t.x(r).clone() / s.clone(), s.clone() / t.y(r).clone()];
    let mut rows = vec![row(1, &s[0])];
    for i in 2..n {
        rows.push(row(2 * i, &s[i - 1]));
        rows.push(row(2 * i - 1, &s[i - 1]));
    }
    rows.push(row(2 * n, &s[n - 1]));
    YangColumnPair::new(rows, ColumnPattern::Quad)
}

/// `M(AD_n)` for the quad pattern: `Π Δ_i / S_i` (even `n`) or `Π Δ_i`
/// (odd `n`) times the value of `r(T)` one order down.
pub fn yang_value<F: Field>(t: &YangColumnPair<F>) -> Result<F, FamilyError> {
    t.expect(ColumnPattern::Quad, 2)?;
    let mut cur = t.clone();
    let mut acc = F::one();
    loop {
        let n = cur.order();
        for (i, d) in cur.deltas()?.into_iter().enumerate() {
            acc = acc * if n.is_multiple_of(2) { d / cur.s(i + 1)? } else { d };
        }
        if n == 1 {
            return Ok(acc);
        }
        cur = yang_r(&cur)?;
    }
}

/// The duplicate-pattern operator: `2n` rows become `2n−4`,
/// `1/x₄, 1/y₄; 1/x₃, 1/y₃; 1/x₆, 1/y₆; 1/x₅, 1/y₅; …; 1/x_{2n−3}, 1/y_{2n−3}`.
pub fn stanley_t<F: Field>(t: &YangColumnPair<F>) -> Result<YangColumnPair<F>, FamilyError> {
    t.expect(ColumnPattern::Duplicate, 6)?;
    stanley_t_unchecked(t)
}

fn stanley_t_unchecked<F: Field>(t: &YangColumnPair<F>) -> Result<YangColumnPair<F>, FamilyError> {
    let inv = |r: usize| -> Result<[F; 2], FamilyError> {
        if t.x(r).is_zero() || t.y(r).is_zero() {
            return Err(FamilyError::ZeroEntry(r));
        }
        Ok([F::one() / t.x(r).clone(), F::one() / t.y(r).clone()])
    };
    let mut rows = Vec::new();
    for j in 2..t.order() {
        rows.push(inv(2 * j)?);
        rows.push(inv(2 * j - 1)?);
    }
    Ok(YangColumnPair { rows, pattern: ColumnPattern::Duplicate })
}

/// `M(AD_n)` for the duplicate pattern: `Δ₁` at `n = 1`; otherwise
/// `2^{n−1} Π Δ_i Π_{i≠2,2n−1} x_i^{⌊n/2⌋} y_i^{⌊(n−1)/2⌋}` times the value of
/// `t(T)` two orders down.
pub fn stanley_value<F: Field>(t: &YangColumnPair<F>) -> Result<F, FamilyError> {
    t.expect(ColumnPattern::Duplicate, 2)?;
    let mut cur = t.clone();
    let mut acc = F::one();
    loop {
        let n = cur.order();
        if n == 0 {
            return Ok(acc);
        }
        for d in cur.deltas()? {
            acc = acc * d;
        }
        if n == 1 {
            return Ok(acc);
        }
        let (ex, ey) = ((n / 2) as i64, ((n - 1) / 2) as i64);
        acc = acc * F::from_i64(2).pow_i(n as i64 - 1);
        for i in (1..=2 * n).filter(|&i| i != 2 && i != 2 * n - 1) {
            acc = acc * cur.x(i).pow_i(ex) * cur.y(i).pow_i(ey);
        }
        cur = stanley_t_unchecked(&cur)?;
    }
}
