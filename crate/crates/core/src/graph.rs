//! Weighted graphs and the brute-force matching oracle every other module is
//! checked against.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::field::Field;

pub type VertexId = u32;

/// Default vertex cap for the oracle.
pub const DEFAULT_CAP: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has {n} vertices, above the oracle cap of {cap}")]
    SizeCap { n: usize, cap: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("vertex {0} is not in the graph")]
    MissingVertex(VertexId),
    #[error("partition does not match the edges incident to vertex {0}")]
    BadPartition(VertexId),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Edge<F> {
    pub u: VertexId,
    pub v: VertexId,
    pub w: F,
}

impl<F> Edge<F> {
    pub fn other(&self, x: VertexId) -> VertexId {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }
}

/// Simple undirected graph; zero-weight edges are allowed and behave like
/// missing edges for matching purposes.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph<F> {
    vertices: BTreeSet<VertexId>,
    edges: Vec<Edge<F>>,
}

impl<F> Default for WeightedGraph<F> {
    fn default() -> Self {
        WeightedGraph { vertices: BTreeSet::new(), edges: Vec::new() }
    }
}

fn key(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    (u.min(v), u.max(v))
}

impl<F: Field> WeightedGraph<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_edges(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = (VertexId, VertexId, F)>,
    ) -> Result<Self, GraphError> {
        let mut g = Self::new();
        for v in vertices {
            g.add_vertex(v);
        }
        for (u, v, w) in edges {
            g.add_edge(u, v, w)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: VertexId) {
        self.vertices.insert(v);
    }

    /// Adds an edge, creating endpoints as needed.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId, w: F) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.edge_index(u, v).is_some() {
            return Err(GraphError::DuplicateEdge(u, v));
        }
        self.vertices.insert(u);
        self.vertices.insert(v);
        self.edges.push(Edge { u, v, w });
        Ok(())
    }

    /// Adds `w` to the weight of `uv`, creating the edge if absent (parallel
    /// edges merge by summing, which preserves the matching generating function).
    pub fn add_weight(&mut self, u: VertexId, v: VertexId, w: F) -> Result<(), GraphError> {
        match self.edge_index(u, v) {
            Some(i) => {
                let e = &mut self.edges[i];
                e.w = e.w.clone() + w;
                Ok(())
            }
            None => self.add_edge(u, v, w),
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    pub fn vertex_set(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> &[Edge<F>] {
        &self.edges
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn edge_index(&self, u: VertexId, v: VertexId) -> Option<usize> {
        let k = key(u, v);
        self.edges.iter().position(|e| key(e.u, e.v) == k)
    }

    pub fn weight(&self, u: VertexId, v: VertexId) -> Option<&F> {
        self.edge_index(u, v).map(|i| &self.edges[i].w)
    }

    pub fn set_weight(&mut self, u: VertexId, v: VertexId, w: F) -> bool {
        match self.edge_index(u, v) {
            Some(i) => {
                self.edges[i].w = w;
                true
            }
            None => false,
        }
    }

    pub fn incident(&self, v: VertexId) -> impl Iterator<Item = &Edge<F>> + '_ {
        self.edges.iter().filter(move |e| e.touches(v))
    }

    /// Neighbors through nonzero-weight edges.
    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        self.incident(v).filter(|e| !e.w.is_zero()).map(|e| e.other(v)).collect()
    }

    pub fn fresh_id(&self) -> VertexId {
        self.vertices.iter().next_back().map_or(0, |v| v + 1)
    }

    pub fn remove_vertex(&mut self, v: VertexId) {
        self.vertices.remove(&v);
        self.edges.retain(|e| !e.touches(v));
    }

    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> Self {
        WeightedGraph {
            vertices: self.vertices.intersection(keep).copied().collect(),
            edges: self.edges.iter().filter(|e| keep.contains(&e.u) && keep.contains(&e.v)).cloned().collect(),
        }
    }

    pub fn map_weights<G: Field>(&self, f: impl Fn(&F) -> G) -> WeightedGraph<G> {
        WeightedGraph {
            vertices: self.vertices.clone(),
            edges: self.edges.iter().map(|e| Edge { u: e.u, v: e.v, w: f(&e.w) }).collect(),
        }
    }
}

/// A perfect matching, as indices into [`WeightedGraph::edges`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pub edges: Vec<usize>,
}

impl Matching {
    pub fn weight<F: Field>(&self, g: &WeightedGraph<F>) -> F {
        self.edges.iter().fold(F::one(), |acc, &i| acc * g.edges[i].w.clone())
    }
}

/// Dense bitmask view of a graph for the branching search.
struct Compact {
    adj: Vec<Vec<(usize, usize)>>, // (neighbor index, edge index)
}

impl Compact {
    fn new<F: Field>(g: &WeightedGraph<F>, cap: usize) -> Result<Self, GraphError> {
        let n = g.num_vertices();
        if n > cap || n > 128 {
            return Err(GraphError::SizeCap { n, cap: cap.min(128) });
        }
        let index: BTreeMap<VertexId, usize> = g.vertices().enumerate().map(|(i, v)| (v, i)).collect();
        let mut adj = vec![Vec::new(); n];
        for (k, e) in g.edges.iter().enumerate() {
            if e.w.is_zero() {
                continue;
            }
            let (a, b) = (index[&e.u], index[&e.v]);
            adj[a].push((b, k));
            adj[b].push((a, k));
        }
        Ok(Compact { adj })
    }

    fn full(&self) -> u128 {
        if self.adj.len() == 128 {
            u128::MAX
        } else {
            (1u128 << self.adj.len()) - 1
        }
    }

    /// Remaining vertex of minimum remaining degree, with its live edges.
    fn pivot(&self, mask: u128) -> (usize, Vec<(usize, usize)>) {
        let mut best: Option<(usize, Vec<(usize, usize)>)> = None;
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            let live: Vec<(usize, usize)> = self.adj[v].iter().copied().filter(|&(u, _)| mask >> u & 1 == 1).collect();
            let better = best.as_ref().is_none_or(|(_, b)| live.len() < b.len());
            if better {
                let done = live.len() <= 1;
                best = Some((v, live));
                if done {
                    break;
                }
            }
        }
        best.expect("nonempty mask")
    }

    fn sum<F: Field>(&self, g: &WeightedGraph<F>, mask: u128) -> F {
        if mask == 0 {
            return F::one();
        }
        let (v, live) = self.pivot(mask);
        let mut acc = F::zero();
        for (u, k) in live {
            let rest = mask & !(1u128 << v) & !(1u128 << u);
            let sub = self.sum(g, rest);
            if !sub.is_zero() {
                acc = acc + g.edges[k].w.clone() * sub;
            }
        }
        acc
    }

    fn collect(&self, mask: u128, stack: &mut Vec<usize>, out: &mut Vec<Matching>) {
        if mask == 0 {
            out.push(Matching { edges: stack.clone() });
            return;
        }
        let (v, live) = self.pivot(mask);
        for (u, k) in live {
            stack.push(k);
            self.collect(mask & !(1u128 << v) & !(1u128 << u), stack, out);
            stack.pop();
        }
    }
}

/// Sum over all perfect matchings of the product of edge weights.
pub fn oracle_mgf_capped<F: Field>(g: &WeightedGraph<F>, cap: usize) -> Result<F, GraphError> {
    let c = Compact::new(g, cap)?;
    if g.num_vertices() % 2 == 1 {
        return Ok(F::zero());
    }
    Ok(c.sum(g, c.full()))
}

pub fn oracle_mgf<F: Field>(g: &WeightedGraph<F>) -> Result<F, GraphError> {
    oracle_mgf_capped(g, DEFAULT_CAP)
}

pub fn enumerate_matchings_capped<F: Field>(g: &WeightedGraph<F>, cap: usize) -> Result<Vec<Matching>, GraphError> {
    let c = Compact::new(g, cap)?;
    let mut out = Vec::new();
    if g.num_vertices().is_multiple_of(2) {
        c.collect(c.full(), &mut Vec::new(), &mut out);
    }
    Ok(out)
}

pub fn enumerate_matchings<F: Field>(g: &WeightedGraph<F>) -> Result<Vec<Matching>, GraphError> {
    enumerate_matchings_capped(g, DEFAULT_CAP)
}

/// Removes forced edges at degree-1 vertices until none remain.
///
/// Returns the residual graph and the product of the removed weights, so that
/// `M(g) = factor * M(residual)`. A vertex left with no usable edge means no
/// perfect matching: the result is `(empty, 0)`.
pub fn strip_forced<F: Field>(g: &WeightedGraph<F>) -> (WeightedGraph<F>, F) {
    let mut h = g.clone();
    let mut factor = F::one();
    loop {
        let mut forced = None;
        for v in h.vertices() {
            let live: Vec<&Edge<F>> = h.incident(v).filter(|e| !e.w.is_zero()).collect();
            match live.len() {
                0 => return (WeightedGraph::new(), F::zero()),
                1 => {
                    forced = Some((v, live[0].other(v), live[0].w.clone()));
                    break;
                }
                _ => {}
            }
        }
        match forced {
            Some((a, b, w)) => {
                factor = factor * w;
                h.remove_vertex(a);
                h.remove_vertex(b);
            }
            None => return (h, factor),
        }
    }
}

/// Replaces `v` by `v1 - m - v2` (unit edges, all fresh ids), attaching the
/// edges to neighbors in `group_a` at `v1` and the rest at `v2`.
pub fn split_vertex<F: Field>(
    g: &WeightedGraph<F>,
    v: VertexId,
    group_a: &[VertexId],
    group_b: &[VertexId],
) -> Result<WeightedGraph<F>, GraphError> {
    if !g.contains(v) {
        return Err(GraphError::MissingVertex(v));
    }
    let nbrs: BTreeSet<VertexId> = g.incident(v).map(|e| e.other(v)).collect();
    let given: BTreeSet<VertexId> = group_a.iter().chain(group_b).copied().collect();
    if given != nbrs || group_a.len() + group_b.len() != nbrs.len() {
        return Err(GraphError::BadPartition(v));
    }
    let base = g.fresh_id();
    let (v1, m, v2) = (base, base + 1, base + 2);
    let mut h = g.clone();
    h.remove_vertex(v);
    h.add_edge(v1, m, F::one())?;
    h.add_edge(m, v2, F::one())?;
    for e in g.incident(v) {
        let u = e.other(v);
        let side = if group_a.contains(&u) { v1 } else { v2 };
        h.add_edge(side, u, e.w.clone())?;
    }
    Ok(h)
}
