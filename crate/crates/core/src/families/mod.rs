//! Named weight patterns and region families, with closed-form evaluators
//! for the ones whose δ-orbits are understood.
//!
//! Conventions for the family order `n`:
//! * `dungeon-D`: `T(D_n) = (x²+y²)^{n²} · M(AD_{2n−2}; N)` (and `T(D_0) = 1`);
//! * `dungeon-E`: `T(E_n) = 2^{(n+1)²} · M(AD_{2n+1}; B)`;
//! * `weighted-dungeon`, `blum`, `aztec`: the diamond `AD_n` itself;
//! * `hexsquare`, `dragon`, `dragon-region`: the even diamond `AD_{2n}`.

mod blum_data;
mod closed;
mod yang;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use thiserror::Error;

use crate::aztec::{evaluate, AztecError, AztecInstance, PeriodMatrix, ReductionTrace, TraceStep};
use crate::field::Field;
use crate::ratfunc::{Factored, RatFuncError, RationalFunction};

pub use closed::{
    blum_closed, blum_closed_q, blum_x, blum_y, dungeon_d_closed, dungeon_e_closed, weighted_dungeon_closed, BLUM_TABLE,
};
pub use yang::{stanley_t, stanley_value, yang_r, yang_value, ColumnPattern, YangColumnPair};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FamilyError {
    #[error(transparent)]
    Aztec(#[from] AztecError),
    #[error(transparent)]
    RatFunc(#[from] RatFuncError),
    #[error("column pair needs an even number of rows, at least {min}, got {rows}")]
    Rows { rows: usize, min: usize },
    #[error("operator expects the {0} pattern")]
    Pattern(ColumnPattern),
    #[error("entry in row {0} is zero")]
    ZeroEntry(usize),
    #[error("Δ_{0} vanishes")]
    ZeroDelta(usize),
    #[error("x·y product of block {0} is not a perfect square")]
    NotSquare(usize),
    #[error("unknown family '{0}'")]
    Unknown(String),
    #[error("value '{0}' cannot be represented in the chosen field")]
    Unrepresentable(String),
}

fn sym<F: Field>(name: &str) -> F {
    F::from_rf(&RationalFunction::var(name)).expect("field must hold symbols")
}

fn int<F: Field>(v: i64) -> F {
    F::from_i64(v)
}

/// The 4×4 period of the weighted dungeon reduction, in the given `x`, `y`.
pub fn dungeon_period_n<F: Field>(x: &F, y: &F) -> PeriodMatrix<F> {
    let s = x.clone() * x.clone() + y.clone() * y.clone();
    let (ys, xs) = (y.clone() / s.clone(), x.clone() / s);
    let (o, z) = (F::one(), F::zero());
    PeriodMatrix::new(vec![
        vec![ys.clone(), y.clone(), x.clone(), xs.clone()],
        vec![y.clone(), z.clone(), o.clone(), x.clone()],
        vec![x.clone(), o, z, y.clone()],
        vec![xs, x.clone(), y.clone(), ys],
    ])
    .expect("4x4")
}

/// [`dungeon_period_n`] in the symbols `x`, `y`.
pub fn dungeon_period_n_symbolic<F: Field>() -> PeriodMatrix<F> {
    dungeon_period_n(&sym("x"), &sym("y"))
}

/// The ½-pattern period reached from the unweighted `E_n` dungeon.
pub fn dungeon_e_period<F: Field>() -> PeriodMatrix<F> {
    let h = F::from_rational(&BigRational::new(1.into(), 2.into()));
    let o = F::one();
    let z = F::zero();
    PeriodMatrix::new(vec![
        vec![h.clone(), h.clone(), o.clone(), o.clone()],
        vec![h.clone(), h, o.clone(), o.clone()],
        vec![o.clone(), o.clone(), z.clone(), o.clone()],
        vec![o.clone(), o.clone(), o, z],
    ])
    .expect("4x4")
}

/// The eight-parameter period `[[a,d,d,a],[e,0,g,e],[f,h,0,f],[b,c,c,b]]`.
pub fn weighted_dungeon_period_m<F: Field>(v: [&F; 8]) -> PeriodMatrix<F> {
    let [a, b, c, d, e, f, g, h] = v.map(|t| t.clone());
    let z = F::zero();
    PeriodMatrix::new(vec![
        vec![a.clone(), d.clone(), d, a.clone()],
        vec![e.clone(), z.clone(), g, e],
        vec![f.clone(), h, z, f],
        vec![b.clone(), c.clone(), c, b],
    ])
    .expect("4x4")
}

/// [`weighted_dungeon_period_m`] in the symbols `a`..`h`.
pub fn weighted_dungeon_period_m_symbolic<F: Field>() -> PeriodMatrix<F> {
    let s: Vec<F> = ["a", "b", "c", "d", "e", "f", "g", "h"].iter().map(|n| sym(n)).collect();
    weighted_dungeon_period_m([&s[0], &s[1], &s[2], &s[3], &s[4], &s[5], &s[6], &s[7]])
}

/// Squares-and-hexagons lattice: horizontal edges 1, vertical edges `a`.
pub fn hexsquare_period<F: Field>(a: &F) -> PeriodMatrix<F> {
    let (o, z) = (F::one(), F::zero());
    PeriodMatrix::new(vec![
        vec![o.clone(), z.clone(), o.clone(), a.clone(), o.clone(), a.clone()],
        vec![a.clone(), o.clone(), a.clone(), o.clone(), z, o],
    ])
    .expect("2x6")
}

/// The unweighted dragon-region pattern.
pub fn dragon_region_period<F: Field>() -> PeriodMatrix<F> {
    PeriodMatrix::from_i64(&[&[1, 1, 1, 1], &[1, 0, 1, 1], &[0, 1, 1, 1], &[1, 1, 1, 1]]).expect("4x4")
}

/// Dragon pattern with horizontal edges weighted `a`.
pub fn dragon_period<F: Field>(a: &F) -> PeriodMatrix<F> {
    let (o, z) = (F::one(), F::zero());
    PeriodMatrix::new(vec![
        vec![a.clone(), o.clone(), a.clone(), o.clone()],
        vec![o.clone(), z.clone(), o.clone(), a.clone()],
        vec![z, o.clone(), a.clone(), o.clone()],
        vec![o.clone(), a.clone(), o, a.clone()],
    ])
    .expect("4x4")
}

/// The 20×20 powers-of-3 pattern with entries `q^{b_ij}` (zero where the
/// 0-1 pattern has a zero); `q = 1` gives the 0-1 pattern itself.
pub fn blum_period<F: Field>(q: &F) -> PeriodMatrix<F> {
    let entries = (0..20)
        .map(|i| {
            (0..20)
                .map(|j| match blum_data::EXPONENTS[i][j] {
                    Some(e) if blum_data::PERIOD[i][j] == 1 => q.pow_i(e as i64),
                    _ => F::zero(),
                })
                .collect()
        })
        .collect();
    PeriodMatrix::new(entries).expect("20x20")
}

/// The 0-1 exponent-free pattern, `blum_period(1)`.
pub fn blum_period_01<F: Field>() -> PeriodMatrix<F> {
    let entries = blum_data::PERIOD.iter().map(|r| r.iter().map(|&v| int(v as i64)).collect()).collect();
    PeriodMatrix::new(entries).expect("20x20")
}

/// Runs the reduction over the cheapest exact field: rationals when every
/// entry is a number, the factored form otherwise.
pub fn evaluate_auto(
    period: &PeriodMatrix<RationalFunction>,
    n: usize,
) -> Result<(RationalFunction, ReductionTrace<RationalFunction>), AztecError> {
    fn lift<F: Field>(
        p: &PeriodMatrix<RationalFunction>,
        n: usize,
    ) -> Result<(RationalFunction, ReductionTrace<RationalFunction>), AztecError> {
        let p = p.map(|e| F::from_rf(e).expect("checked representable"));
        let (v, t) = evaluate(&AztecInstance::new(n, p))?;
        let steps = t
            .steps
            .into_iter()
            .map(|s| TraceStep {
                order: s.order,
                factor: s.factor.to_rf(),
                period_after: s.period_after.map(Field::to_rf),
            })
            .collect();
        Ok((v.to_rf(), ReductionTrace { steps }))
    }
    if period.rows().iter().flatten().all(|e| e.as_rational().is_some()) {
        lift::<BigRational>(period, n)
    } else {
        lift::<Factored>(period, n)
    }
}

/// Value-only shortcut for [`evaluate_auto`].
pub fn eval_auto(period: &PeriodMatrix<RationalFunction>, n: usize) -> Result<RationalFunction, AztecError> {
    evaluate_auto(period, n).map(|(v, _)| v)
}

/// `T(D_n)` (variant D, weights `x`, `y`) or `T(E_n)` (variant E, unweighted).
#[derive(Debug, Clone, PartialEq)]
pub enum DungeonSpec<F> {
    D { n: usize, x: F, y: F },
    E { n: usize },
}

/// Tiling generating function of a dungeon via the reduction pipeline.
pub fn dungeon_value<F: Field>(spec: &DungeonSpec<F>) -> Result<F, AztecError> {
    match spec {
        DungeonSpec::D { n: 0, .. } => Ok(F::one()),
        DungeonSpec::D { n, x, y } => {
            let s = x.clone() * x.clone() + y.clone() * y.clone();
            let (m, _) = evaluate(&AztecInstance::new(2 * n - 2, dungeon_period_n(x, y)))?;
            Ok(s.pow_i((n * n) as i64) * m)
        }
        DungeonSpec::E { n } => {
            let (m, _) = evaluate(&AztecInstance::new(2 * n + 1, dungeon_e_period::<F>()))?;
            Ok(int::<F>(2).pow_i(((n + 1) * (n + 1)) as i64) * m)
        }
    }
}

/// Every family the engine can evaluate by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Family {
    Aztec,
    DungeonD,
    DungeonE,
    WeightedDungeon,
    Hexsquare,
    Dragon,
    DragonRegion,
    Blum,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Aztec,
        Family::DungeonD,
        Family::DungeonE,
        Family::WeightedDungeon,
        Family::Hexsquare,
        Family::Dragon,
        Family::DragonRegion,
        Family::Blum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Aztec => "aztec",
            Family::DungeonD => "dungeon-D",
            Family::DungeonE => "dungeon-E",
            Family::WeightedDungeon => "weighted-dungeon",
            Family::Hexsquare => "hexsquare",
            Family::Dragon => "dragon",
            Family::DragonRegion => "dragon-region",
            Family::Blum => "blum",
        }
    }

    /// Symbols the family's period is written in.
    pub fn parameters(self) -> &'static [&'static str] {
        match self {
            Family::DungeonD => &["x", "y"],
            Family::WeightedDungeon => &["a", "b", "c", "d", "e", "f", "g", "h"],
            Family::Hexsquare | Family::Dragon => &["a"],
            Family::Blum => &["q"],
            Family::Aztec | Family::DungeonE | Family::DragonRegion => &[],
        }
    }

    /// The symbolic period and the diamond order used for family order `n`.
    pub fn instance(self, n: usize) -> (PeriodMatrix<RationalFunction>, usize) {
        match self {
            Family::Aztec => (PeriodMatrix::constant(2, 2, RationalFunction::one()).expect("2x2"), n),
            Family::DungeonD => (dungeon_period_n_symbolic(), (2 * n).saturating_sub(2)),
            Family::DungeonE => (dungeon_e_period(), 2 * n + 1),
            Family::WeightedDungeon => (weighted_dungeon_period_m_symbolic(), n),
            Family::Hexsquare => (hexsquare_period(&sym("a")), 2 * n),
            Family::Dragon => (dragon_period(&sym("a")), 2 * n),
            Family::DragonRegion => (dragon_region_period(), 2 * n),
            Family::Blum => (blum_period(&sym("q")), n),
        }
    }

    /// Multiplier turning the diamond value into the family value.
    pub fn prefactor(
        self,
        n: usize,
        bind: &BTreeMap<String, RationalFunction>,
    ) -> Result<RationalFunction, RatFuncError> {
        Ok(match self {
            Family::DungeonD => crate::parse("x^2+y^2")?.substitute(bind)?.pow((n * n) as i64)?,
            Family::DungeonE => RationalFunction::from_i64(2).pow(((n + 1) * (n + 1)) as i64)?,
            _ => RationalFunction::one(),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = FamilyError;
    fn from_str(s: &str) -> Result<Self, FamilyError> {
        Family::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| FamilyError::Unknown(s.to_string()))
    }
}

/// Substitutes `bind` into every entry of a symbolic period.
pub fn bind_period(
    p: &PeriodMatrix<RationalFunction>,
    bind: &BTreeMap<String, RationalFunction>,
) -> Result<PeriodMatrix<RationalFunction>, RatFuncError> {
    if bind.is_empty() {
        return Ok(p.clone());
    }
    let rows = p
        .rows()
        .iter()
        .map(|r| r.iter().map(|e| e.substitute(bind)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PeriodMatrix::new(rows).expect("shape unchanged"))
}

/// Family value at order `n` through the pipeline, with the diamond trace.
pub fn family_value_traced(
    family: Family,
    n: usize,
    bind: &BTreeMap<String, RationalFunction>,
) -> Result<(RationalFunction, ReductionTrace<RationalFunction>), FamilyError> {
    if family == Family::DungeonD && n == 0 {
        return Ok((RationalFunction::one(), ReductionTrace { steps: Vec::new() }));
    }
    let (period, order) = family.instance(n);
    let period = bind_period(&period, bind)?;
    let (v, trace) = evaluate_auto(&period, order)?;
    Ok((family.prefactor(n, bind)? * v, trace))
}

/// Family value at order `n` through the pipeline.
pub fn family_value(
    family: Family,
    n: usize,
    bind: &BTreeMap<String, RationalFunction>,
) -> Result<RationalFunction, FamilyError> {
    family_value_traced(family, n, bind).map(|(v, _)| v)
}

/// Parses `k=v,k=v` binding lists.
pub fn parse_bindings(text: &str) -> Result<BTreeMap<String, RationalFunction>, FamilyError> {
    let mut out = BTreeMap::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| RatFuncError::Syntax { pos: 0, msg: format!("binding '{part}' lacks '='") })?;
        out.insert(k.trim().to_string(), crate::parse(v)?);
    }
    Ok(out)
}
