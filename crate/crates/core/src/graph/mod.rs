//! Multigraphs with loops and parallel edges, the structural predicates used by the sign
//! algorithms, and the deletion/contraction minors used by the evaluators.

pub mod families;
mod format;

pub use format::{parse_graph, write_graph, GraphFile};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::error::{Error, Result};

/// Stable edge identity; survives deletion and contraction of other edges.
pub type EdgeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub id: EdgeId,
    pub u: usize,
    pub v: usize,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    /// The endpoint opposite `w`.
    pub fn other(&self, w: usize) -> usize {
        if self.u == w {
            self.v
        } else {
            self.u
        }
    }
}

/// Undirected multigraph on vertices `0..vertex_count`.
///
/// Edge ids are strictly increasing along the edge list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<Edge>,
}

impl Multigraph {
    pub fn new(vertex_count: usize) -> Self {
        Multigraph {
            vertex_count,
            edges: Vec::new(),
        }
    }

    /// Builds from endpoint pairs; edge ids are the list positions.
    pub fn from_edges(vertex_count: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut g = Multigraph::new(vertex_count);
        for &(u, v) in pairs {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Appends an edge and returns its id.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<EdgeId> {
        for w in [u, v] {
            if w >= self.vertex_count {
                return Err(Error::UnknownVertex(w));
            }
        }
        let id = self.edges.last().map_or(0, |e| e.id + 1);
        self.edges.push(Edge { id, u, v });
        Ok(id)
    }

    pub fn add_vertex(&mut self) -> usize {
        self.vertex_count += 1;
        self.vertex_count - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.iter().map(|e| e.id)
    }

    fn position(&self, id: EdgeId) -> Result<usize> {
        self.edges
            .binary_search_by_key(&id, |e| e.id)
            .map_err(|_| Error::UnknownEdge(id))
    }

    pub fn edge(&self, id: EdgeId) -> Result<Edge> {
        self.position(id).map(|i| self.edges[i])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| usize::from(e.u == v) + usize::from(e.v == v))
            .sum()
    }

    /// Number of connected components of `(V, subset)`, isolated vertices included.
    pub fn kappa(&self, subset: &[EdgeId]) -> Result<usize> {
        let mut uf = UnionFind::new(self.vertex_count);
        for &id in subset {
            let e = self.edge(id)?;
            uf.union(e.u, e.v);
        }
        Ok(uf.components())
    }

    /// Components of the whole graph.
    pub fn components(&self) -> usize {
        let mut uf = UnionFind::new(self.vertex_count);
        for e in &self.edges {
            uf.union(e.u, e.v);
        }
        uf.components()
    }

    /// Component index of each vertex, numbered by first appearance.
    pub fn component_labels(&self) -> Vec<usize> {
        let mut uf = UnionFind::new(self.vertex_count);
        for e in &self.edges {
            uf.union(e.u, e.v);
        }
        let mut label = vec![usize::MAX; self.vertex_count];
        let mut next = 0;
        let mut out = vec![0; self.vertex_count];
        for (v, slot) in out.iter_mut().enumerate() {
            let r = uf.find(v);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            *slot = label[r];
        }
        out
    }

    pub fn delete(&self, id: EdgeId) -> Result<Multigraph> {
        let pos = self.position(id)?;
        let mut g = self.clone();
        g.edges.remove(pos);
        Ok(g)
    }

    /// Removes the edge and merges its endpoints; vertices are relabeled to stay dense
    /// (the larger endpoint disappears, later vertices shift down by one).
    /// Contracting a loop deletes it.
    pub fn contract(&self, id: EdgeId) -> Result<Multigraph> {
        let pos = self.position(id)?;
        let e = self.edges[pos];
        if e.is_loop() {
            return self.delete(id);
        }
        let (keep, gone) = (e.u.min(e.v), e.u.max(e.v));
        let relabel = |w: usize| {
            if w == gone {
                keep
            } else if w > gone {
                w - 1
            } else {
                w
            }
        };
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != pos)
            .map(|(_, f)| Edge {
                id: f.id,
                u: relabel(f.u),
                v: relabel(f.v),
            })
            .collect();
        Ok(Multigraph {
            vertex_count: self.vertex_count - 1,
            edges,
        })
    }

    /// Disjoint union; the other graph's vertices and edge ids are shifted past ours.
    pub fn disjoint_union(&self, other: &Multigraph) -> Multigraph {
        let mut g = self.clone();
        let offset = self.vertex_count;
        g.vertex_count += other.vertex_count;
        for e in &other.edges {
            g.add_edge(e.u + offset, e.v + offset)
                .expect("shifted endpoints are in range");
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        self.components() <= 1
    }

    /// Loops count as odd cycles.
    pub fn is_bipartite(&self) -> bool {
        let adj = self.adjacency();
        let mut colour: Vec<Option<bool>> = vec![None; self.vertex_count];
        for start in 0..self.vertex_count {
            if colour[start].is_some() {
                continue;
            }
            colour[start] = Some(false);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                let c = colour[v].unwrap();
                for &(w, _) in &adj[v] {
                    match colour[w] {
                        None => {
                            colour[w] = Some(!c);
                            stack.push(w);
                        }
                        Some(cw) if cw == c => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }

    /// Every vertex has even degree (a loop adds two).
    pub fn is_eulerian(&self) -> bool {
        let mut deg = vec![0usize; self.vertex_count];
        for e in &self.edges {
            deg[e.u] += 1;
            deg[e.v] += 1;
        }
        deg.iter().all(|d| d % 2 == 0)
    }

    pub fn loops(&self) -> Vec<EdgeId> {
        self.edges
            .iter()
            .filter(|e| e.is_loop())
            .map(|e| e.id)
            .collect()
    }

    /// Cut-edges, found by lowpoint search. Loops and parallel edges are never bridges.
    pub fn bridges(&self) -> Vec<EdgeId> {
        let adj = self.adjacency();
        let n = self.vertex_count;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut timer = 0;
        let mut out = Vec::new();
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            // frames: (vertex, parent edge id, next adjacency index)
            let mut stack: Vec<(usize, Option<EdgeId>, usize)> = vec![(root, None, 0)];
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            while let Some(frame) = stack.last_mut() {
                let (v, parent, idx) = *frame;
                if idx < adj[v].len() {
                    frame.2 += 1;
                    let (w, id) = adj[v][idx];
                    if Some(id) == parent || w == v {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, Some(id), 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p] = low[p].min(low[v]);
                        if low[v] > disc[p] {
                            out.push(parent.expect("non-root frame has a parent edge"));
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// `adj[v]` lists `(neighbour, edge id)`; a loop appears once at its vertex.
    pub fn adjacency(&self) -> Vec<Vec<(usize, EdgeId)>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for e in &self.edges {
            adj[e.u].push((e.v, e.id));
            if !e.is_loop() {
                adj[e.v].push((e.u, e.id));
            }
        }
        adj
    }

    /// True when `s` and `t` lie in one component of `(V, E)`.
    pub fn connects(&self, s: usize, t: usize) -> bool {
        let mut uf = UnionFind::new(self.vertex_count);
        for e in &self.edges {
            uf.union(e.u, e.v);
        }
        uf.find(s) == uf.find(t)
    }
}

/// Rational weight per edge id.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeightFunction(BTreeMap<EdgeId, Rational>);

impl WeightFunction {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn uniform(g: &Multigraph, w: &Rational) -> Self {
        WeightFunction(g.edge_ids().map(|id| (id, w.clone())).collect())
    }

    /// Weights listed in edge order.
    pub fn from_list(g: &Multigraph, ws: &[Rational]) -> Result<Self> {
        if ws.len() != g.edge_count() {
            return Err(Error::Precondition(format!(
                "{} weights for {} edges",
                ws.len(),
                g.edge_count()
            )));
        }
        Ok(WeightFunction(
            g.edge_ids().zip(ws.iter().cloned()).collect(),
        ))
    }

    pub fn insert(&mut self, id: EdgeId, w: Rational) {
        self.0.insert(id, w);
    }

    pub fn get(&self, id: EdgeId) -> Result<&Rational> {
        self.0.get(&id).ok_or(Error::UnknownEdge(id))
    }

    /// Weights in the graph's edge order; fails unless the function covers every edge.
    pub fn for_graph(&self, g: &Multigraph) -> Result<Vec<Rational>> {
        g.edge_ids().map(|id| self.get(id).cloned()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&EdgeId, &Rational)> {
        self.0.iter()
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
    count: usize,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            count: n,
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        self.count -= 1;
        true
    }

    pub(crate) fn components(&self) -> usize {
        self.count
    }
}
