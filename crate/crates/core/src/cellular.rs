//! Cellular completions, complements and the local rewrites behind the
//! diamond reduction.
//!
//! A *cell* is a 4-cycle; the cells of a completion partition its edges and
//! each vertex lies in at most two cells. Walking through opposite corners
//! from cell to cell traces *lines*; the free ends of the lines are the
//! *extremal* vertices.
//!
//! Derived weights (cell `v0 v1 v2 v3`, edge `e_i = v_i v_{i+1}`):
//!
//! * whole cell (all four corners covered by H-edges of the cell):
//!   `e_i ↦ wt(e_{i+2}) / Δ`, contributing `Δ = wt(e0)wt(e2) + wt(e1)wt(e3)`;
//! * three corners covered, H-edges `ab = x`, `bc = y`, corner `d` free:
//!   `ab ↦ x/(x²+y²)`, `bc ↦ y/(x²+y²)`, `cd ↦ x/2`, `da ↦ y/2`;
//! * two corners covered, H-edge `ab = x`, corners `c, d` free:
//!   `ab ↦ 1/(2x)`, `bc ↦ 1/2`, `cd ↦ x/2`, `da ↦ 1/2`.
//!
//! Every partial cell contributes a factor 2. Cells touching an extremal
//! vertex of H use the same rules; the complement keeps only the edges whose
//! ends survive. The partial rules are the local solutions of the matching
//! equations of the two small gadgets, and are checked against the oracle.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use thiserror::Error;

use crate::field::Field;
use crate::graph::{GraphError, VertexId, WeightedGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CellularError {
    #[error("cell {0} is not a 4-cycle of the host")]
    NotACycle(usize),
    #[error("edge {0}-{1} lies in no cell")]
    Uncovered(VertexId, VertexId),
    #[error("edge {0}-{1} lies in more than one cell")]
    SharedEdge(VertexId, VertexId),
    #[error("vertex {0} lies in three or more cells")]
    Crowded(VertexId),
    #[error("edge {0}-{1} of H is not an edge of the host")]
    NotSubgraph(VertexId, VertexId),
    #[error("vertex {0} of H is not a vertex of the host")]
    MissingMember(VertexId),
    #[error("vertex {0} is outside H but not extremal")]
    NotExtremal(VertexId),
    #[error("cell {0} contains no edge of H")]
    EmptyCell(usize),
    #[error("partial cell {0} has a free corner that belongs to H")]
    UnsupportedPartial(usize),
    #[error("zero cell-factor on cell {0}")]
    ZeroCellFactor(usize),
    #[error("embedding does not match the gadget: {0}")]
    Embedding(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CellKind {
    Whole,
    Partial3,
    Partial2,
    /// A partial cell with `covered` corners, one of which is an extremal vertex of H.
    PartialWithExtremal {
        covered: u8,
    },
}

impl CellKind {
    pub fn is_partial(self) -> bool {
        self != CellKind::Whole
    }

    pub fn tag(self) -> &'static str {
        match self {
            CellKind::Whole => "whole",
            CellKind::Partial3 => "partial3",
            CellKind::Partial2 => "partial2",
            CellKind::PartialWithExtremal { .. } => "partial-with-extremal",
        }
    }
}

/// A line: the cells met by a walk through opposite corners, with its two
/// end vertices (`None` when the walk closes up).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Line {
    pub cells: Vec<usize>,
    pub ends: Option<(VertexId, VertexId)>,
}

#[derive(Debug, Clone)]
pub struct CellularCompletion<F> {
    host: WeightedGraph<F>,
    cells: Vec<[VertexId; 4]>,
    members: BTreeSet<VertexId>,
    lines: Vec<Line>,
    extremal: BTreeSet<VertexId>,
}

/// Result of complementation: `M(H) = 2^partial_count · factor · M(graph)`.
#[derive(Debug, Clone)]
pub struct Complement<F> {
    pub graph: WeightedGraph<F>,
    pub factor: F,
    pub partial_count: usize,
    pub kinds: Vec<CellKind>,
}

fn edge_key(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    (u.min(v), u.max(v))
}

fn cell_edges(c: &[VertexId; 4]) -> [(VertexId, VertexId); 4] {
    [(c[0], c[1]), (c[1], c[2]), (c[2], c[3]), (c[3], c[0])]
}

/// Checks that `cells` are 4-cycles partitioning the host edges with at most
/// two cells per vertex; returns the vertex → cells map.
fn check_cells<F: Field>(
    host: &WeightedGraph<F>,
    cells: &[[VertexId; 4]],
) -> Result<BTreeMap<VertexId, Vec<usize>>, CellularError> {
    let mut owner: BTreeMap<(VertexId, VertexId), usize> = BTreeMap::new();
    let mut at: BTreeMap<VertexId, Vec<usize>> = BTreeMap::new();
    for (i, c) in cells.iter().enumerate() {
        let distinct: BTreeSet<_> = c.iter().collect();
        if distinct.len() != 4 {
            return Err(CellularError::NotACycle(i));
        }
        for (u, v) in cell_edges(c) {
            if host.edge_index(u, v).is_none() {
                return Err(CellularError::NotACycle(i));
            }
            if owner.insert(edge_key(u, v), i).is_some() {
                return Err(CellularError::SharedEdge(u, v));
            }
        }
        for &v in c {
            let list = at.entry(v).or_default();
            list.push(i);
            if list.len() > 2 {
                return Err(CellularError::Crowded(v));
            }
        }
    }
    for e in host.edges() {
        if !owner.contains_key(&edge_key(e.u, e.v)) {
            return Err(CellularError::Uncovered(e.u, e.v));
        }
    }
    Ok(at)
}

fn opposite(c: &[VertexId; 4], v: VertexId) -> VertexId {
    let i = c.iter().position(|&x| x == v).expect("corner");
    c[(i + 2) % 4]
}

fn diagonal(c: &[VertexId; 4], v: VertexId) -> usize {
    c.iter().position(|&x| x == v).expect("corner") % 2
}

/// Traces every line by the two-sided walk through opposite corners.
fn trace_lines(cells: &[[VertexId; 4]], at: &BTreeMap<VertexId, Vec<usize>>) -> Vec<Line> {
    let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut lines = Vec::new();
    let next_cell = |cell: usize, v: VertexId| at[&v].iter().copied().find(|&c| c != cell);
    for start in 0..cells.len() {
        for diag in 0..2 {
            if !seen.insert((start, diag)) {
                continue;
            }
            let mut members = vec![start];
            let mut ends = Vec::new();
            let mut closed = false;
            for from in [cells[start][diag], cells[start][diag + 2]] {
                let (mut cell, mut v) = (start, from);
                loop {
                    match next_cell(cell, v) {
                        None => {
                            ends.push(v);
                            break;
                        }
                        Some(c) => {
                            let state = (c, diagonal(&cells[c], v));
                            if !seen.insert(state) {
                                closed = true;
                                break;
                            }
                            members.push(c);
                            v = opposite(&cells[c], v);
                            cell = c;
                        }
                    }
                }
                if closed {
                    break;
                }
            }
            lines.push(Line { cells: members, ends: if closed { None } else { Some((ends[0], ends[1])) } });
        }
    }
    lines
}

impl<F: Field> CellularCompletion<F> {
    /// Validates the completion conditions: H is the graph on `members`
    /// spanned by the nonzero host edges between members, and every host
    /// vertex outside H is extremal.
    pub fn new(
        host: WeightedGraph<F>,
        cells: Vec<[VertexId; 4]>,
        members: BTreeSet<VertexId>,
    ) -> Result<Self, CellularError> {
        let at = check_cells(&host, &cells)?;
        if let Some(&v) = members.iter().find(|v| !host.contains(**v)) {
            return Err(CellularError::MissingMember(v));
        }
        let lines = trace_lines(&cells, &at);
        let extremal: BTreeSet<VertexId> = lines.iter().filter_map(|l| l.ends).flat_map(|(a, b)| [a, b]).collect();
        if let Some(v) = host.vertices().find(|v| !members.contains(v) && !extremal.contains(v)) {
            return Err(CellularError::NotExtremal(v));
        }
        Ok(CellularCompletion { host, cells, members, lines, extremal })
    }

    pub fn host(&self) -> &WeightedGraph<F> {
        &self.host
    }

    pub fn cells(&self) -> &[[VertexId; 4]] {
        &self.cells
    }

    pub fn members(&self) -> &BTreeSet<VertexId> {
        &self.members
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn extremal(&self) -> &BTreeSet<VertexId> {
        &self.extremal
    }

    fn is_h_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.members.contains(&u) && self.members.contains(&v) && self.host.weight(u, v).is_some_and(|w| !w.is_zero())
    }

    /// The graph H itself.
    pub fn h_graph(&self) -> WeightedGraph<F> {
        let mut h = WeightedGraph::new();
        for &v in &self.members {
            h.add_vertex(v);
        }
        for e in self.host.edges() {
            if self.is_h_edge(e.u, e.v) {
                h.add_edge(e.u, e.v, e.w.clone()).expect("simple");
            }
        }
        h
    }

    fn covered(&self, i: usize) -> [bool; 4] {
        let c = &self.cells[i];
        let mut cov = [false; 4];
        for k in 0..4 {
            if self.is_h_edge(c[k], c[(k + 1) % 4]) {
                cov[k] = true;
                cov[(k + 1) % 4] = true;
            }
        }
        cov
    }

    pub fn classify(&self, i: usize) -> Result<CellKind, CellularError> {
        let cov = self.covered(i);
        let n = cov.iter().filter(|&&b| b).count() as u8;
        let c = &self.cells[i];
        let touches_extremal = (0..4).any(|k| cov[k] && self.extremal.contains(&c[k]));
        Ok(match n {
            4 => CellKind::Whole,
            0 => return Err(CellularError::EmptyCell(i)),
            _ if touches_extremal => CellKind::PartialWithExtremal { covered: n },
            3 => CellKind::Partial3,
            _ => CellKind::Partial2,
        })
    }

    fn w(&self, u: VertexId, v: VertexId) -> F {
        self.host.weight(u, v).cloned().expect("cell edge")
    }

    /// Derived weights on the four edges `e0..e3` of cell `i`, and its Δ if whole.
    fn derived(&self, i: usize) -> Result<([F; 4], Option<F>), CellularError> {
        let c = self.cells[i];
        let cov = self.covered(i);
        let e: Vec<F> = cell_edges(&c).iter().map(|&(u, v)| self.w(u, v)).collect();
        let n = cov.iter().filter(|&&b| b).count();
        let two = F::from_i64(2);
        if n == 4 {
            let d = e[0].clone() * e[2].clone() + e[1].clone() * e[3].clone();
            if d.is_zero() {
                return Err(CellularError::ZeroCellFactor(i));
            }
            let w = |k: usize| e[(k + 2) % 4].clone() / d.clone();
            return Ok(([w(0), w(1), w(2), w(3)], Some(d)));
        }
        if (0..4).any(|k| !cov[k] && self.members.contains(&c[k])) {
            return Err(CellularError::UnsupportedPartial(i));
        }
        let mut out: [F; 4] = [F::zero(), F::zero(), F::zero(), F::zero()];
        match n {
            3 => {
                // corners a, b, c follow the free corner d
                let d = (0..4).find(|&k| !cov[k]).expect("free corner");
                let (a, b, cc) = ((d + 1) % 4, (d + 2) % 4, (d + 3) % 4);
                let (x, y) = (e[a].clone(), e[b].clone());
                let s = x.clone() * x.clone() + y.clone() * y.clone();
                if s.is_zero() {
                    return Err(CellularError::ZeroCellFactor(i));
                }
                out[a] = x.clone() / s.clone();
                out[b] = y.clone() / s;
                out[cc] = x / two.clone();
                out[d] = y / two;
            }
            2 => {
                let a = (0..4).find(|&k| cov[k] && cov[(k + 1) % 4]).expect("covered edge");
                let x = e[a].clone();
                let half = F::one() / two.clone();
                out[a] = F::one() / (two.clone() * x.clone());
                out[(a + 1) % 4] = half.clone();
                out[(a + 2) % 4] = x / two;
                out[(a + 3) % 4] = half;
            }
            _ => unreachable!("covered corners come in adjacent pairs"),
        }
        Ok((out, None))
    }

    /// The complement H′ on `V(H) △ X(G)` with the derived weight.
    pub fn complement(&self) -> Result<Complement<F>, CellularError> {
        let mut kinds = Vec::with_capacity(self.cells.len());
        let mut factor = F::one();
        let mut weights: BTreeMap<(VertexId, VertexId), F> = BTreeMap::new();
        for i in 0..self.cells.len() {
            kinds.push(self.classify(i)?);
            let (w, d) = self.derived(i)?;
            if let Some(d) = d {
                factor = factor * d;
            }
            for (k, (u, v)) in cell_edges(&self.cells[i]).into_iter().enumerate() {
                weights.insert(edge_key(u, v), w[k].clone());
            }
        }
        let keep: BTreeSet<VertexId> = self.members.symmetric_difference(&self.extremal).copied().collect();
        let mut graph = WeightedGraph::new();
        for &v in &keep {
            graph.add_vertex(v);
        }
        for ((u, v), w) in weights {
            if keep.contains(&u) && keep.contains(&v) {
                graph.add_edge(u, v, w)?;
            }
        }
        let partial_count = kinds.iter().filter(|k| k.is_partial()).count();
        Ok(Complement { graph, factor, partial_count, kinds })
    }
}

/// Builds a completion of `h` inside a cellular `host`: keeps the cells that
/// contain an edge of H, zeroes host edges between H-vertices that are not in
/// H, and detaches cells at vertices outside H so those become extremal.
/// A partial cell whose free corner is an H-vertex (covered by another cell)
/// is detached at that corner as well, so every free corner is outside H.
pub fn find_completion<F: Field>(
    h: &WeightedGraph<F>,
    host: &WeightedGraph<F>,
    cells: &[[VertexId; 4]],
) -> Result<CellularCompletion<F>, CellularError> {
    check_cells(host, cells)?;
    for e in h.edges() {
        if host.edge_index(e.u, e.v).is_none() {
            return Err(CellularError::NotSubgraph(e.u, e.v));
        }
    }
    let hv = h.vertex_set();
    if let Some(&v) = hv.iter().find(|v| !host.contains(**v)) {
        return Err(CellularError::MissingMember(v));
    }
    let is_h = |u: VertexId, v: VertexId| h.weight(u, v).is_some_and(|w| !w.is_zero());
    let mut kept: Vec<[VertexId; 4]> =
        cells.iter().filter(|c| cell_edges(c).iter().any(|&(u, v)| is_h(u, v))).copied().collect();

    let weight_of = |u: VertexId, v: VertexId| -> F {
        if let Some(w) = h.weight(u, v) {
            w.clone()
        } else if hv.contains(&u) && hv.contains(&v) {
            F::zero()
        } else {
            host.weight(u, v).cloned().expect("host edge")
        }
    };
    // (cell, corner) pairs to receive a fresh vertex
    let mut detach: Vec<(usize, usize)> = Vec::new();
    let mut seen: BTreeSet<VertexId> = BTreeSet::new();
    for (i, c) in kept.iter().enumerate() {
        let mut cov = [false; 4];
        for k in 0..4 {
            if is_h(c[k], c[(k + 1) % 4]) {
                cov[k] = true;
                cov[(k + 1) % 4] = true;
            }
        }
        for k in 0..4 {
            let v = c[k];
            // a second cell at an outside vertex, or a free corner inside H
            let outside = !hv.contains(&v);
            if (outside && !seen.insert(v)) || (!outside && !cov[k]) {
                detach.push((i, k));
            }
        }
    }
    let mut out = WeightedGraph::new();
    for &v in hv {
        out.add_vertex(v);
    }
    let originals = kept.clone();
    for (fresh, &(i, k)) in (host.fresh_id().max(h.fresh_id())..).zip(&detach) {
        kept[i][k] = fresh;
    }
    for (c, orig) in kept.iter().zip(&originals) {
        for k in 0..4 {
            let (u, v) = (c[k], c[(k + 1) % 4]);
            let w = weight_of(orig[k], orig[(k + 1) % 4]);
            out.add_edge(u, v, w)?;
        }
    }
    CellularCompletion::new(out, kept, hv.clone())
}

fn check_edge<F: Field>(g: &WeightedGraph<F>, u: VertexId, v: VertexId) -> Result<F, CellularError> {
    g.weight(u, v).cloned().ok_or_else(|| CellularError::Embedding(format!("missing edge {u}-{v}")))
}

/// Checks that each inner vertex has exactly the listed neighbours.
fn check_closed<F: Field>(g: &WeightedGraph<F>, allowed: &[(VertexId, Vec<VertexId>)]) -> Result<(), CellularError> {
    for (v, nbrs) in allowed {
        if !g.contains(*v) {
            return Err(CellularError::Embedding(format!("vertex {v} absent")));
        }
        let actual: BTreeSet<VertexId> = g.incident(*v).map(|e| e.other(*v)).collect();
        let want: BTreeSet<VertexId> = nbrs.iter().copied().collect();
        if actual != want {
            return Err(CellularError::Embedding(format!("vertex {v} has neighbours outside the gadget")));
        }
    }
    Ok(())
}

fn check_pendants<F: Field>(g: &WeightedGraph<F>, inner: &[VertexId], outer: &[VertexId]) -> Result<(), CellularError> {
    let all: BTreeSet<VertexId> = inner.iter().chain(outer).copied().collect();
    if all.len() != inner.len() + outer.len() {
        return Err(CellularError::Embedding("gadget vertices must be distinct".into()));
    }
    for (&a, &b) in inner.iter().zip(outer) {
        if !check_edge(g, a, b)?.is_one() {
            return Err(CellularError::Embedding(format!("pendant edge {a}-{b} must have weight 1")));
        }
    }
    Ok(())
}

/// Urban renewal: an inner 4-cycle `A1..A4` (weights `x = A1A2`, `y = A2A3`,
/// `z = A3A4`, `w = A4A1`) hung on outer vertices `B1..B4` by unit edges is
/// replaced by the outer 4-cycle `B1B2 = z/Δ`, `B2B3 = w/Δ`, `B3B4 = x/Δ`,
/// `B4B1 = y/Δ`, with `M(g) = Δ · M(result)` and `Δ = xz + yw`.
pub fn urban_renewal<F: Field>(
    g: &WeightedGraph<F>,
    inner: [VertexId; 4],
    outer: [VertexId; 4],
) -> Result<(WeightedGraph<F>, F), CellularError> {
    check_pendants(g, &inner, &outer)?;
    let wt: Vec<F> = (0..4).map(|i| check_edge(g, inner[i], inner[(i + 1) % 4])).collect::<Result<_, _>>()?;
    check_closed(
        g,
        &(0..4).map(|i| (inner[i], vec![inner[(i + 1) % 4], inner[(i + 3) % 4], outer[i]])).collect::<Vec<_>>(),
    )?;
    let d = wt[0].clone() * wt[2].clone() + wt[1].clone() * wt[3].clone();
    if d.is_zero() {
        return Err(CellularError::ZeroCellFactor(0));
    }
    let mut r = g.clone();
    for v in inner {
        r.remove_vertex(v);
    }
    for i in 0..4 {
        r.add_weight(outer[i], outer[(i + 1) % 4], wt[(i + 2) % 4].clone() / d.clone())?;
    }
    Ok((r, d))
}

/// The two gadgets that each halve the matching generating function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalvingGadget {
    /// Path `a-b-c` (`ab = x`, `bc = y`) hung on `A, B, C`; becomes the
    /// 4-cycle `A B C D` with a fresh `D`.
    A { inner: [VertexId; 3], outer: [VertexId; 3] },
    /// Edge `a-b` (`ab = x`) hung on `A, B`; becomes the 4-cycle `A B C D`
    /// with fresh `C, D`.
    B { inner: [VertexId; 2], outer: [VertexId; 2] },
}

/// Applies a [`HalvingGadget`] gadget; `M(g) = 2 · M(result)`.
pub fn lemma26_rewrite<F: Field>(
    g: &WeightedGraph<F>,
    gadget: HalvingGadget,
) -> Result<(WeightedGraph<F>, F), CellularError> {
    let two = F::from_i64(2);
    let half = F::one() / two.clone();
    let mut r = g.clone();
    match gadget {
        HalvingGadget::A { inner: [a, b, c], outer: [oa, ob, oc] } => {
            check_pendants(g, &[a, b, c], &[oa, ob, oc])?;
            let x = check_edge(g, a, b)?;
            let y = check_edge(g, b, c)?;
            check_closed(g, &[(a, vec![b, oa]), (b, vec![a, c, ob]), (c, vec![b, oc])])?;
            let s = x.clone() * x.clone() + y.clone() * y.clone();
            if s.is_zero() {
                return Err(CellularError::Embedding("x^2+y^2 vanishes".into()));
            }
            for v in [a, b, c] {
                r.remove_vertex(v);
            }
            let d = r.fresh_id().max(g.fresh_id());
            r.add_weight(oa, ob, x.clone() / s.clone())?;
            r.add_weight(ob, oc, y.clone() / s)?;
            r.add_edge(oc, d, x / two.clone())?;
            r.add_edge(d, oa, y / two.clone())?;
        }
        HalvingGadget::B { inner: [a, b], outer: [oa, ob] } => {
            check_pendants(g, &[a, b], &[oa, ob])?;
            let x = check_edge(g, a, b)?;
            check_closed(g, &[(a, vec![b, oa]), (b, vec![a, ob])])?;
            if x.is_zero() {
                return Err(CellularError::Embedding("gadget edge has weight 0".into()));
            }
            for v in [a, b] {
                r.remove_vertex(v);
            }
            let c = r.fresh_id().max(g.fresh_id());
            let d = c + 1;
            r.add_weight(oa, ob, F::one() / (two.clone() * x.clone()))?;
            r.add_edge(ob, c, half.clone())?;
            r.add_edge(c, d, x / two.clone())?;
            r.add_edge(d, oa, half)?;
        }
    }
    Ok((r, two))
}

/// A random positive rational with small numerator and denominator;
/// positivity keeps every cell-factor nonzero.
pub fn random_weight<R: Rng>(rng: &mut R) -> BigRational {
    BigRational::new(BigInt::from(rng.gen_range(1i64..=7)), BigInt::from(rng.gen_range(1i64..=4)))
}

/// A random instance for the complementation identity: a host made of up to
/// `max_cells` checkerboard squares of the grid (diagonally adjacent squares
/// share a corner), random nonzero weights, and a random edge subset `h`.
pub fn random_instance<R: Rng>(
    rng: &mut R,
    max_cells: usize,
) -> (WeightedGraph<BigRational>, WeightedGraph<BigRational>, Vec<[VertexId; 4]>) {
    const SIDE: i64 = 12;
    let id = |p: i64, q: i64| (p * (SIDE + 1) + q) as VertexId;
    let target = rng.gen_range(1..=max_cells.max(1));
    let start = (SIDE / 2, SIDE / 2);
    let mut chosen: Vec<(i64, i64)> = vec![start];
    // grow through shared corners, preferring candidates that touch many
    // chosen cells so the shapes stay compact
    let mut tries = 0;
    while chosen.len() < target && tries < 1000 {
        tries += 1;
        let (i, j) = chosen[rng.gen_range(0..chosen.len())];
        let (di, dj) = [(1, 1), (1, -1), (-1, 1), (-1, -1)][rng.gen_range(0..4)];
        let cand = (i + di, j + dj);
        if !(0..SIDE).contains(&cand.0) || !(0..SIDE).contains(&cand.1) || chosen.contains(&cand) {
            continue;
        }
        let touching = chosen.iter().filter(|&&(a, b)| (a - cand.0).abs() == 1 && (b - cand.1).abs() == 1).count();
        if touching >= 2 || rng.gen_bool(0.4) {
            chosen.push(cand);
        }
    }
    let mut host = WeightedGraph::new();
    let mut h = WeightedGraph::new();
    let mut cells = Vec::new();
    let keep_prob = rng.gen_range(0.6..1.0);
    for &(i, j) in &chosen {
        let c = [id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)];
        for k in 0..4 {
            let w = random_weight(rng);
            host.add_edge(c[k], c[(k + 1) % 4], w.clone()).expect("cells share no edges");
            if rng.gen_bool(keep_prob) {
                h.add_edge(c[k], c[(k + 1) % 4], w).expect("simple");
            }
        }
        cells.push(c);
    }
    if h.edges().is_empty() {
        let e = host.edges()[0].clone();
        h.add_edge(e.u, e.v, e.w).expect("simple");
    }
    (h, host, cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::oracle_mgf;
    use crate::ratfunc::{parse, RationalFunction};

    fn rf(s: &str) -> RationalFunction {
        parse(s).unwrap()
    }

    fn square(ws: [&str; 4]) -> WeightedGraph<RationalFunction> {
        WeightedGraph::from_edges(0..4, (0..4).map(|i| (i, (i + 1) % 4, rf(ws[i as usize])))).unwrap()
    }

    #[test]
    fn single_whole_cell() {
        let g = square(["x", "y", "z", "w"]);
        let c = find_completion(&g, &g, &[[0, 1, 2, 3]]).unwrap();
        assert_eq!(c.extremal().len(), 4);
        assert_eq!(c.lines().len(), 2);
        let comp = c.complement().unwrap();
        assert_eq!(comp.kinds, vec![CellKind::Whole]);
        assert_eq!(comp.factor, rf("x*z+y*w"));
        assert_eq!(comp.graph.num_vertices(), 0);
        assert_eq!(oracle_mgf(&g).unwrap(), comp.factor * oracle_mgf(&comp.graph).unwrap());
    }

    #[test]
    fn missing_edge_comes_back_at_zero() {
        let host = square(["x", "y", "z", "w"]);
        let h = WeightedGraph::from_edges(0..4, [(0, 1, rf("x")), (1, 2, rf("y")), (2, 3, rf("z"))]).unwrap();
        let c = find_completion(&h, &host, &[[0, 1, 2, 3]]).unwrap();
        assert!(c.host().weight(3, 0).unwrap().is_zero());
        assert_eq!(c.classify(0).unwrap(), CellKind::Whole);
    }

    #[test]
    fn bad_partitions_rejected() {
        let g = square(["1", "1", "1", "1"]);
        assert!(matches!(find_completion(&g, &g, &[]), Err(CellularError::Uncovered(..))));
        assert!(matches!(find_completion(&g, &g, &[[0, 1, 2, 3], [0, 1, 2, 3]]), Err(CellularError::SharedEdge(..))));
        assert!(matches!(find_completion(&g, &g, &[[0, 2, 1, 3]]), Err(CellularError::NotACycle(0))));
    }

    #[test]
    fn urban_renewal_all_ones_halves() {
        // inner square 0..4 with pendants to 4..8, outer square closed up
        let mut g = WeightedGraph::<RationalFunction>::new();
        for i in 0..4 {
            g.add_edge(i, (i + 1) % 4, rf("1")).unwrap();
            g.add_edge(i, i + 4, rf("1")).unwrap();
            g.add_edge(i + 4, (i + 1) % 4 + 4, rf("1")).unwrap();
        }
        let (r, f) = urban_renewal(&g, [0, 1, 2, 3], [4, 5, 6, 7]).unwrap();
        assert_eq!(f, rf("2"));
        assert_eq!(oracle_mgf(&g).unwrap(), f * oracle_mgf(&r).unwrap());
        assert!(urban_renewal(&g, [0, 1, 2, 3], [4, 5, 6, 4]).is_err());
    }

    #[test]
    fn halving_gadgets_on_minimal_hosts() {
        let g = WeightedGraph::from_edges(
            0..6,
            [
                (0, 1, rf("x")),
                (1, 2, rf("y")),
                (0, 3, rf("1")),
                (1, 4, rf("1")),
                (2, 5, rf("1")),
                (3, 4, rf("u")),
                (4, 5, rf("v")),
                (3, 5, rf("t")),
            ],
        )
        .unwrap();
        let (r, f) = lemma26_rewrite(&g, HalvingGadget::A { inner: [0, 1, 2], outer: [3, 4, 5] }).unwrap();
        assert_eq!(oracle_mgf(&g).unwrap(), f * oracle_mgf(&r).unwrap());
        let g = WeightedGraph::from_edges(0..4, [(0, 1, rf("x")), (0, 2, rf("1")), (1, 3, rf("1")), (2, 3, rf("u"))])
            .unwrap();
        let (r, f) = lemma26_rewrite(&g, HalvingGadget::B { inner: [0, 1], outer: [2, 3] }).unwrap();
        assert_eq!(oracle_mgf(&g).unwrap(), f * oracle_mgf(&r).unwrap());
        assert!(lemma26_rewrite(&g, HalvingGadget::B { inner: [0, 2], outer: [1, 3] }).is_err());
    }
}
