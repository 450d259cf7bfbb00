//! Aztec diamonds with periodic weights, the δ operator and the reduction
//! pipeline built on repeated generalized domino shuffling.
//!
//! Layout conventions (all indices in the public API are 1-based):
//! vertices of `AD_n` sit at doubled odd coordinates `(X, Y)` with
//! `|X| + |Y| <= 2n`; the edge between `(X1,Y1)` and `(X2,Y2)` lives at array
//! position `row = (4n+2 - (Y1+Y2) + (X1+X2)) / 4`,
//! `col = (4n+2 + (X1+X2) + (Y1+Y2)) / 4`. `AD_1` therefore reads
//! `[[W, N], [S, E]]`, and the cells of the canonical completion are the
//! 2×2 blocks with odd top-left index.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::field::Field;
use crate::graph::{VertexId, WeightedGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AztecError {
    #[error("period must be a non-empty rectangular matrix with even dimensions, got {k}x{l}")]
    Shape { k: usize, l: usize },
    #[error("zero cell-factor in block ({row},{col}){}", order.map(|n| format!(" at order {n}")).unwrap_or_default())]
    ZeroCellFactor { order: Option<usize>, row: usize, col: usize },
    #[error("class {class} is out of range for order {n}")]
    BadClass { class: usize, n: usize },
}

/// A `k×l` period (both even), stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodMatrix<F> {
    k: usize,
    l: usize,
    entries: Vec<Vec<F>>,
}

impl<F: Field> PeriodMatrix<F> {
    pub fn new(entries: Vec<Vec<F>>) -> Result<Self, AztecError> {
        let k = entries.len();
        let l = entries.first().map_or(0, |r| r.len());
        if k == 0 || l == 0 || k % 2 == 1 || l % 2 == 1 || entries.iter().any(|r| r.len() != l) {
            return Err(AztecError::Shape { k, l });
        }
        Ok(PeriodMatrix { k, l, entries })
    }

    pub fn constant(k: usize, l: usize, v: F) -> Result<Self, AztecError> {
        Self::new(vec![vec![v; l]; k])
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self, AztecError> {
        Self::new(rows.iter().map(|r| r.iter().map(|&v| F::from_i64(v)).collect()).collect())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn rows(&self) -> &[Vec<F>] {
        &self.entries
    }

    /// Entry at 0-based position, read periodically.
    pub fn at(&self, r: usize, c: usize) -> &F {
        &self.entries[r % self.k][c % self.l]
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> PeriodMatrix<G> {
        PeriodMatrix {
            k: self.k,
            l: self.l,
            entries: self.entries.iter().map(|r| r.iter().map(&f).collect()).collect(),
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        self.map(|v| v.clone() * s.clone())
    }

    /// Cell-factor `xz + yw` of the block whose top-left is at 0-based `(r, c)`.
    pub fn block_factor(&self, r: usize, c: usize) -> F {
        let (x, w) = (self.at(r, c), self.at(r, c + 1));
        let (y, z) = (self.at(r + 1, c), self.at(r + 1, c + 1));
        x.clone() * z.clone() + y.clone() * w.clone()
    }
}

impl<F: Field> fmt::Display for PeriodMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// One application of the shuffling operator: invert every 2×2 block
/// `[[x,w],[y,z]]` into `[[z,y],[w,x]] / (xz+yw)`, then shift everything one
/// step up and one step left, cyclically.
pub fn delta<F: Field>(p: &PeriodMatrix<F>) -> Result<PeriodMatrix<F>, AztecError> {
    let (k, l) = (p.k, p.l);
    let mut b = p.entries.clone();
    for i in (0..k).step_by(2) {
        for j in (0..l).step_by(2) {
            let d = p.block_factor(i, j);
            if d.is_zero() {
                return Err(AztecError::ZeroCellFactor { order: None, row: i / 2 + 1, col: j / 2 + 1 });
            }
            let inv = F::one() / d;
            let (x, w) = (p.entries[i][j].clone(), p.entries[i][j + 1].clone());
            let (y, z) = (p.entries[i + 1][j].clone(), p.entries[i + 1][j + 1].clone());
            b[i][j] = z * inv.clone();
            b[i][j + 1] = y * inv.clone();
            b[i + 1][j] = w * inv.clone();
            b[i + 1][j + 1] = x * inv;
        }
    }
    let entries = (0..k).map(|r| (0..l).map(|c| b[(r + 1) % k][(c + 1) % l].clone()).collect()).collect();
    Ok(PeriodMatrix { k, l, entries })
}

#[derive(Debug, Clone, PartialEq)]
pub struct AztecInstance<F> {
    pub n: usize,
    pub period: PeriodMatrix<F>,
}

impl<F: Field> AztecInstance<F> {
    pub fn new(n: usize, period: PeriodMatrix<F>) -> Self {
        AztecInstance { n, period }
    }

    pub fn all_ones(n: usize) -> Self {
        AztecInstance { n, period: PeriodMatrix::constant(2, 2, F::one()).expect("2x2") }
    }
}

/// The `2n×2n` weight array (0-based storage of the 1-based array).
pub fn edge_array<F: Field>(inst: &AztecInstance<F>) -> Vec<Vec<F>> {
    let m = 2 * inst.n;
    (0..m).map(|r| (0..m).map(|c| inst.period.at(r, c).clone()).collect()).collect()
}

/// `AD_n` as a graph together with its geometric bookkeeping.
#[derive(Debug, Clone)]
pub struct AztecGraph<F> {
    pub n: usize,
    pub graph: WeightedGraph<F>,
    /// Doubled coordinates of vertex `id`, indexed by id.
    pub coords: Vec<(i32, i32)>,
    /// 1-based array position of each edge, parallel to `graph.edges()`.
    pub positions: Vec<(usize, usize)>,
}

impl<F: Field> AztecGraph<F> {
    pub fn vertex_at(&self, x: i32, y: i32) -> Option<VertexId> {
        self.coords.iter().position(|&c| c == (x, y)).map(|i| i as VertexId)
    }

    /// Edge index at a 1-based array position.
    pub fn edge_at(&self, row: usize, col: usize) -> Option<usize> {
        self.positions.iter().position(|&p| p == (row, col))
    }

    /// Checkerboard cells (the `n²` blocks of the array), each as a vertex
    /// cycle `[v1, v2, v3, v4]` whose edges `v1v2, v2v3, v3v4, v4v1` carry the
    /// block entries `x, w, z, y`.
    pub fn cells(&self) -> Vec<[VertexId; 4]> {
        let mut out = Vec::new();
        for bi in 0..self.n {
            for bj in 0..self.n {
                let (r, c) = (2 * bi + 1, 2 * bj + 1);
                let e = |row, col| {
                    let i = self.edge_at(row, col).expect("full array");
                    let e = &self.graph.edges()[i];
                    (e.u, e.v)
                };
                out.push(cycle_of([e(r, c), e(r, c + 1), e(r + 1, c + 1), e(r + 1, c)]));
            }
        }
        out
    }
}

fn shared(a: (VertexId, VertexId), b: (VertexId, VertexId)) -> VertexId {
    if a.0 == b.0 || a.0 == b.1 {
        a.0
    } else {
        a.1
    }
}

/// Vertex cycle of four edges listed in cyclic order.
fn cycle_of(e: [(VertexId, VertexId); 4]) -> [VertexId; 4] {
    [shared(e[3], e[0]), shared(e[0], e[1]), shared(e[1], e[2]), shared(e[2], e[3])]
}

pub fn to_graph<F: Field>(inst: &AztecInstance<F>) -> AztecGraph<F> {
    let n = inst.n as i32;
    let mut coords = Vec::new();
    for x in (-2 * n + 1..2 * n).step_by(2) {
        for y in (-2 * n + 1..2 * n).step_by(2) {
            if x.abs() + y.abs() <= 2 * n {
                coords.push((x, y));
            }
        }
    }
    let index: BTreeMap<(i32, i32), VertexId> = coords.iter().enumerate().map(|(i, &c)| (c, i as VertexId)).collect();
    let mut graph = WeightedGraph::new();
    for i in 0..coords.len() {
        graph.add_vertex(i as VertexId);
    }
    let mut positions = Vec::new();
    for (&(x, y), &a) in &index {
        for (dx, dy) in [(2, 0), (0, 2)] {
            if let Some(&b) = index.get(&(x + dx, y + dy)) {
                let (sx, sy) = (2 * x + dx, 2 * y + dy);
                let row = ((4 * n + 2 - sy + sx) / 4) as usize;
                let col = ((4 * n + 2 + sx + sy) / 4) as usize;
                graph.add_edge(a, b, inst.period.at(row - 1, col - 1).clone()).expect("simple graph");
                positions.push((row, col));
            }
        }
    }
    AztecGraph { n: inst.n, graph, coords, positions }
}

/// One step of the reduction trace.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceStep<F> {
    /// Order of the diamond the step was applied to.
    pub order: usize,
    pub factor: F,
    pub period_after: PeriodMatrix<F>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReductionTrace<F> {
    pub steps: Vec<TraceStep<F>>,
}

/// Product of the `n²` cell-factors of the tiled array; each distinct period
/// block is computed once and raised to its multiplicity.
fn array_factor<F: Field>(inst: &AztecInstance<F>) -> Result<F, AztecError> {
    let p = &inst.period;
    let mut counts: BTreeMap<(usize, usize), (i64, (usize, usize))> = BTreeMap::new();
    for bi in 0..inst.n {
        for bj in 0..inst.n {
            let key = ((2 * bi) % p.k, (2 * bj) % p.l);
            counts.entry(key).or_insert((0, (bi + 1, bj + 1))).0 += 1;
        }
    }
    let mut f = F::one();
    for ((r, c), (count, (row, col))) in counts {
        let d = p.block_factor(r, c);
        if d.is_zero() {
            return Err(AztecError::ZeroCellFactor { order: Some(inst.n), row, col });
        }
        f = f * d.pow_i(count);
    }
    Ok(f)
}

/// `M(AD_n; wt_A) = factor · M(AD_{n-1}; wt_{δ(A)})`.
///
/// At `n = 1` the successor is `AD_0`, which ignores its weights, so a period
/// whose unused blocks are singular keeps its old period instead of failing.
pub fn reduce_step<F: Field>(inst: &AztecInstance<F>) -> Result<(F, AztecInstance<F>), AztecError> {
    assert!(inst.n >= 1, "reduce_step needs order at least 1");
    let factor = array_factor(inst)?;
    let period = match delta(&inst.period) {
        Ok(p) => p,
        Err(_) if inst.n == 1 => inst.period.clone(),
        Err(AztecError::ZeroCellFactor { row, col, .. }) => {
            return Err(AztecError::ZeroCellFactor { order: Some(inst.n), row, col })
        }
        Err(e) => return Err(e),
    };
    Ok((factor, AztecInstance { n: inst.n - 1, period }))
}

/// Runs the reduction down to order 0.
pub fn evaluate<F: Field>(inst: &AztecInstance<F>) -> Result<(F, ReductionTrace<F>), AztecError> {
    let mut cur = inst.clone();
    let mut value = F::one();
    let mut steps = Vec::with_capacity(inst.n);
    while cur.n > 0 {
        let order = cur.n;
        let (f, next) = reduce_step(&cur)?;
        value = value * f.clone();
        steps.push(TraceStep { order, factor: f, period_after: next.period.clone() });
        cur = next;
    }
    Ok((value, ReductionTrace { steps }))
}

/// Row class of a 1-based array row: row 1 is class 0, rows `{2i, 2i+1}`
/// form class `i`, row `2n` is class `n`.
pub fn row_class(row: usize) -> usize {
    row / 2
}

/// Column class of a 1-based array column: columns `{2j-1, 2j}` form class `j`.
pub fn col_class(col: usize) -> usize {
    col.div_ceil(2)
}

/// Edges of every perfect matching of `AD_n` lying in the single 1-based
/// array row `row`: `n−i+1` in row `2i−1`, `i` in row `2i`.
///
/// Consecutive pairs `{2i, 2i+1}` recover the row classes (`n` each) and
/// pairs `{2i−1, 2i}` give `n+1`, so both partitions pin every single row.
pub fn row_edge_count(n: usize, row: usize) -> usize {
    assert!((1..=2 * n).contains(&row), "row {row} outside AD_{n}");
    if row % 2 == 1 {
        n - row.div_ceil(2) + 1
    } else {
        row / 2
    }
}

/// Column analogue of [`row_edge_count`]; the counts are the same by the
/// diagonal symmetry of the diamond.
pub fn col_edge_count(n: usize, col: usize) -> usize {
    row_edge_count(n, col)
}

fn scaled<F: Field>(inst: &AztecInstance<F>, hit: impl Fn(usize, usize) -> bool, s: &F) -> AztecInstance<F> {
    let mut a = edge_array(inst);
    for (r, row) in a.iter_mut().enumerate() {
        for (c, v) in row.iter_mut().enumerate() {
            if hit(r + 1, c + 1) {
                *v = v.clone() * s.clone();
            }
        }
    }
    AztecInstance { n: inst.n, period: PeriodMatrix::new(a).expect("2n x 2n") }
}

/// Multiplies a row class (`0..=n`) by `s`; every perfect matching of `AD_n`
/// has exactly `n` edges in each row class, so the value scales by `s^n`.
pub fn scale_row_class<F: Field>(
    inst: &AztecInstance<F>,
    class: usize,
    s: &F,
) -> Result<(AztecInstance<F>, F), AztecError> {
    let n = inst.n;
    if n == 0 || class > n {
        return Err(AztecError::BadClass { class, n });
    }
    Ok((scaled(inst, |r, _| row_class(r) == class, s), s.pow_i(n as i64)))
}

/// Multiplies a column class (`1..=n`) by `s`; each class carries exactly
/// `n+1` edges of every perfect matching.
pub fn scale_col_class<F: Field>(
    inst: &AztecInstance<F>,
    class: usize,
    s: &F,
) -> Result<(AztecInstance<F>, F), AztecError> {
    let n = inst.n;
    if class == 0 || class > n {
        return Err(AztecError::BadClass { class, n });
    }
    Ok((scaled(inst, |_, c| col_class(c) == class, s), s.pow_i(n as i64 + 1)))
}
