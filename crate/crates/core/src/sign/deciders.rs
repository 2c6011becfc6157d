//! Backtracking deciders for the NP-complete colouring and flow points.

use crate::error::{Error, Result};
use crate::graph::{Multigraph, UnionFind};

/// Default search-node budget for the backtracking deciders.
pub const DECIDER_NODE_CAP: u64 = 1 << 22;

/// Whether `g` has a proper colouring with at most `q` colours.
pub fn decide_colourable(g: &Multigraph, q: u64) -> Result<bool> {
    decide_colourable_with_cap(g, q, DECIDER_NODE_CAP)
}

pub fn decide_colourable_with_cap(g: &Multigraph, q: u64, cap: u64) -> Result<bool> {
    if !g.loops().is_empty() {
        return Ok(false);
    }
    let n = g.vertex_count();
    if n == 0 {
        return Ok(true);
    }
    if q == 0 {
        return Ok(false);
    }
    let mut neighbours: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in g.edges() {
        neighbours[e.u].push(e.v);
        neighbours[e.v].push(e.u);
    }
    // highest degree first
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(neighbours[v].len()));

    struct Search<'a> {
        neighbours: &'a [Vec<usize>],
        order: &'a [usize],
        colour: Vec<Option<u64>>,
        q: u64,
        nodes: u64,
        cap: u64,
    }

    impl Search<'_> {
        fn run(&mut self, depth: usize, used: u64) -> Result<bool> {
            if depth == self.order.len() {
                return Ok(true);
            }
            self.nodes += 1;
            if self.nodes > self.cap {
                return Err(Error::NpInstanceTooLarge(self.cap as usize));
            }
            let v = self.order[depth];
            // a fresh colour is interchangeable with any other fresh colour
            let limit = self.q.min(used + 1);
            for c in 0..limit {
                let clash = self.neighbours[v]
                    .iter()
                    .any(|&w| self.colour[w] == Some(c));
                if clash {
                    continue;
                }
                self.colour[v] = Some(c);
                if self.run(depth + 1, used.max(c + 1))? {
                    return Ok(true);
                }
                self.colour[v] = None;
            }
            Ok(false)
        }
    }

    Search {
        neighbours: &neighbours,
        order: &order,
        colour: vec![None; n],
        q,
        nodes: 0,
        cap,
    }
    .run(0, 0)
}

/// Whether `g` has a nowhere-zero `q`-flow. `q = 2` is the even-degree test and `q ≥ 6`
/// the bridgeless test; other values are searched over the cotree edges.
pub fn decide_nz_flow(g: &Multigraph, q: u64) -> Result<bool> {
    decide_nz_flow_with_cap(g, q, DECIDER_NODE_CAP)
}

pub fn decide_nz_flow_with_cap(g: &Multigraph, q: u64, cap: u64) -> Result<bool> {
    match q {
        0 => Err(Error::Precondition("flow modulus must be positive".into())),
        1 => Ok(g.edge_count() == 0),
        2 => Ok(g.is_eulerian()),
        q if q >= 6 => Ok(g.bridges().is_empty()),
        q => {
            if !g.bridges().is_empty() {
                return Ok(false);
            }
            search_flow(g, q, cap)
        }
    }
}

/// Tree edges are forced by conservation once the cotree edges carry values, so only
/// cotree assignments are enumerated.
fn search_flow(g: &Multigraph, q: u64, cap: u64) -> Result<bool> {
    let n = g.vertex_count();
    let edges = g.edges();
    let mut uf = UnionFind::new(n);
    let mut tree = Vec::new();
    let mut cotree = Vec::new();
    for (i, e) in edges.iter().enumerate() {
        if uf.union(e.u, e.v) {
            tree.push(i);
        } else if !e.is_loop() {
            cotree.push(i);
        }
    }

    // leaf-peeling order for the forest: (edge, vertex whose balance it settles)
    let mut tree_adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &i in &tree {
        tree_adj[edges[i].u].push(i);
        tree_adj[edges[i].v].push(i);
    }
    let mut remaining: Vec<usize> = tree_adj.iter().map(Vec::len).collect();
    let mut settled = vec![false; edges.len()];
    let mut stack: Vec<usize> = (0..n).filter(|&v| remaining[v] == 1).collect();
    let mut peel = Vec::with_capacity(tree.len());
    while let Some(v) = stack.pop() {
        if remaining[v] != 1 {
            continue;
        }
        let &i = tree_adj[v]
            .iter()
            .find(|&&i| !settled[i])
            .expect("a leaf has one unsettled edge");
        settled[i] = true;
        peel.push((i, v));
        remaining[v] -= 1;
        let w = edges[i].other(v);
        remaining[w] -= 1;
        if remaining[w] == 1 {
            stack.push(w);
        }
    }

    let mut value = vec![1u64; cotree.len()];
    let mut nodes = 0u64;
    let mut balance = vec![0u64; n];
    loop {
        nodes += 1;
        if nodes > cap {
            return Err(Error::NpInstanceTooLarge(cap as usize));
        }
        balance.iter_mut().for_each(|b| *b = 0);
        // balance[v] = inflow − outflow (mod q), edges oriented u → v
        for (&i, &f) in cotree.iter().zip(&value) {
            let e = edges[i];
            balance[e.v] = (balance[e.v] + f) % q;
            balance[e.u] = (balance[e.u] + q - f) % q;
        }
        let mut ok = true;
        for &(i, leaf) in &peel {
            let e = edges[i];
            // choose f on e so that `leaf` balances
            let f = if e.v == leaf {
                (q - balance[leaf]) % q
            } else {
                balance[leaf]
            };
            if f == 0 {
                ok = false;
                break;
            }
            balance[e.v] = (balance[e.v] + f) % q;
            balance[e.u] = (balance[e.u] + q - f) % q;
        }
        if ok && balance.iter().all(|&b| b == 0) {
            return Ok(true);
        }
        // next cotree assignment over 1..q-1
        let mut k = 0;
        loop {
            if k == value.len() {
                return Ok(false);
            }
            value[k] += 1;
            if value[k] < q {
                break;
            }
            value[k] = 1;
            k += 1;
        }
    }
}
