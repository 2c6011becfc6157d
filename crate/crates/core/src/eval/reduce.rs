//! Deletion–contraction with series-parallel reductions and a per-call memo.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::arith::Rational;
use crate::graph::{Multigraph, UnionFind};

type WeightedEdges = Vec<(usize, usize, Rational)>;
type Key = (usize, WeightedEdges);

/// Weighted multigraph on dense vertices `0..n`.
#[derive(Clone, Debug)]
pub(crate) struct Net {
    pub n: usize,
    pub edges: Vec<(usize, usize, Rational)>,
}

impl Net {
    /// Drops vertices outside `keep` and relabels the rest densely in order.
    fn relabel(&self, keep: &[bool]) -> Net {
        let mut map = vec![usize::MAX; self.n];
        let mut next = 0;
        for (v, &k) in keep.iter().enumerate() {
            if k {
                map[v] = next;
                next += 1;
            }
        }
        Net {
            n: next,
            edges: self
                .edges
                .iter()
                .map(|(u, v, w)| (map[*u], map[*v], w.clone()))
                .collect(),
        }
    }

    fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for (u, v, _) in &self.edges {
            deg[*u] += 1;
            deg[*v] += 1;
        }
        deg
    }

    /// Merges vertex `b` into `a` and relabels.
    fn merge(&self, a: usize, b: usize) -> Net {
        let mut net = self.clone();
        for (u, v, _) in net.edges.iter_mut() {
            if *u == b {
                *u = a;
            }
            if *v == b {
                *v = a;
            }
        }
        let keep: Vec<bool> = (0..self.n).map(|x| x != b).collect();
        net.relabel(&keep)
    }

    fn as_multigraph(&self) -> Multigraph {
        let pairs: Vec<_> = self.edges.iter().map(|(u, v, _)| (*u, *v)).collect();
        Multigraph::from_edges(self.n, &pairs).expect("net endpoints are dense")
    }
}

pub(crate) struct Evaluator<'a> {
    q: &'a Rational,
    memo: HashMap<Key, Rational>,
}

impl<'a> Evaluator<'a> {
    pub fn new(q: &'a Rational) -> Self {
        Evaluator {
            q,
            memo: HashMap::new(),
        }
    }

    pub fn eval(&mut self, net: Net) -> Rational {
        let (factor, net) = match self.simplify(net) {
            Some(pair) => pair,
            None => return Rational::zero(),
        };
        if factor.is_zero() {
            return factor;
        }
        if net.edges.is_empty() {
            return factor * crate::arith::rational::pow(self.q, net.n as i64);
        }

        let parts = split_components(&net);
        if parts.len() > 1 {
            let mut acc = factor;
            for part in parts {
                acc *= self.eval(part);
                if acc.is_zero() {
                    break;
                }
            }
            return acc;
        }

        let key = memo_key(&net);
        if let Some(v) = self.memo.get(&key) {
            return factor * v;
        }
        let value = self.branch(&net);
        self.memo.insert(key, value.clone());
        factor * value
    }

    /// `Z(G) = Z(G∖e) + γ_e·Z(G/e)` on the edge whose endpoints have the largest degree sum.
    fn branch(&mut self, net: &Net) -> Rational {
        let deg = net.degrees();
        let pick = (0..net.edges.len())
            .max_by_key(|&i| deg[net.edges[i].0] + deg[net.edges[i].1])
            .expect("branching needs an edge");
        let (u, v, w) = net.edges[pick].clone();

        let mut deleted = net.clone();
        deleted.edges.remove(pick);
        let contracted = deleted.merge(u.min(v), u.max(v));

        let without = self.eval(deleted);
        let with = self.eval(contracted);
        without + w * with
    }

    /// Applies the exact reductions until none fires. Returns the accumulated factor and the
    /// reduced net, or `None` when a factor vanished.
    fn simplify(&self, mut net: Net) -> Option<(Rational, Net)> {
        let q = self.q;
        let mut factor = Rational::one();
        loop {
            // loops and zero-weight edges
            let mut kept = Vec::with_capacity(net.edges.len());
            for (u, v, w) in net.edges.drain(..) {
                if u == v {
                    factor *= Rational::one() + &w;
                } else if !w.is_zero() {
                    kept.push((u.min(v), u.max(v), w));
                }
            }
            if factor.is_zero() {
                return None;
            }

            // parallel classes
            kept.sort_by_key(|e| (e.0, e.1));
            let mut merged: Vec<(usize, usize, Rational)> = Vec::with_capacity(kept.len());
            for (u, v, w) in kept {
                match merged.last_mut() {
                    Some(last) if last.0 == u && last.1 == v => {
                        let one = Rational::one();
                        last.2 = (&one + &last.2) * (&one + &w) - one;
                    }
                    _ => merged.push((u, v, w)),
                }
            }
            merged.retain(|e| !e.2.is_zero());
            net.edges = merged;

            // isolated vertices
            let deg = net.degrees();
            let isolated = deg.iter().filter(|&&d| d == 0).count();
            if isolated > 0 {
                factor *= crate::arith::rational::pow(q, isolated as i64);
                let keep: Vec<bool> = deg.iter().map(|&d| d > 0).collect();
                net = net.relabel(&keep);
            }
            if net.edges.is_empty() {
                return Some((factor, net));
            }

            // bridges: Z(G) = (q + γ_e) Z(G/e)
            let bridges = net.as_multigraph().bridges();
            if !bridges.is_empty() {
                let mut uf = UnionFind::new(net.n);
                let mut is_bridge = vec![false; net.edges.len()];
                for &b in &bridges {
                    let (u, v, w) = &net.edges[b];
                    factor *= q + w;
                    uf.union(*u, *v);
                    is_bridge[b] = true;
                }
                if factor.is_zero() {
                    return None;
                }
                let roots: Vec<usize> = (0..net.n).map(|x| uf.find(x)).collect();
                let edges = net
                    .edges
                    .iter()
                    .zip(&is_bridge)
                    .filter(|(_, &b)| !b)
                    .map(|((u, v, w), _)| (roots[*u], roots[*v], w.clone()))
                    .collect();
                let keep: Vec<bool> = (0..net.n).map(|x| roots[x] == x).collect();
                net = Net { n: net.n, edges }.relabel(&keep);
                continue;
            }

            // one series pair per pass; the next pass may merge the new edge in parallel
            if let Some((factor_here, reduced)) = series_step(&net, q) {
                factor *= factor_here;
                net = reduced;
                continue;
            }
            return Some((factor, net));
        }
    }
}

/// Replaces a degree-2 vertex `u - v - x` (u ≠ x) by a single edge, when `q + w1 + w2 ≠ 0`.
fn series_step(net: &Net, q: &Rational) -> Option<(Rational, Net)> {
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); net.n];
    for (i, (u, v, _)) in net.edges.iter().enumerate() {
        incident[*u].push(i);
        incident[*v].push(i);
    }
    for (mid, inc) in incident.iter().enumerate() {
        if inc.len() != 2 {
            continue;
        }
        let (a, b) = (&net.edges[inc[0]], &net.edges[inc[1]]);
        let far = |e: &(usize, usize, Rational)| if e.0 == mid { e.1 } else { e.0 };
        let (ua, ub) = (far(a), far(b));
        if ua == ub {
            continue;
        }
        let denom = q + &a.2 + &b.2;
        if denom.is_zero() {
            continue;
        }
        let w = &a.2 * &b.2 / &denom;
        let mut edges: Vec<_> = net
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != inc[0] && *i != inc[1])
            .map(|(_, e)| e.clone())
            .collect();
        edges.push((ua, ub, w));
        let keep: Vec<bool> = (0..net.n).map(|x| x != mid).collect();
        return Some((denom, Net { n: net.n, edges }.relabel(&keep)));
    }
    None
}

fn split_components(net: &Net) -> Vec<Net> {
    let mut uf = UnionFind::new(net.n);
    for (u, v, _) in &net.edges {
        uf.union(*u, *v);
    }
    if uf.components() <= 1 {
        return vec![net.clone()];
    }
    let roots: Vec<usize> = (0..net.n).map(|x| uf.find(x)).collect();
    let mut index = vec![usize::MAX; net.n];
    let mut parts: Vec<(Vec<usize>, WeightedEdges)> = Vec::new();
    for &r in &roots {
        if index[r] == usize::MAX {
            index[r] = parts.len();
            parts.push((Vec::new(), Vec::new()));
        }
    }
    let mut local = vec![0; net.n];
    for v in 0..net.n {
        let part = &mut parts[index[roots[v]]];
        local[v] = part.0.len();
        part.0.push(v);
    }
    for (u, v, w) in &net.edges {
        parts[index[roots[*u]]]
            .1
            .push((local[*u], local[*v], w.clone()));
    }
    parts
        .into_iter()
        .map(|(vs, edges)| Net { n: vs.len(), edges })
        .collect()
}

fn memo_key(net: &Net) -> Key {
    let mut edges = net.edges.clone();
    edges.sort_unstable_by(|a, b| (a.0, a.1, &a.2).cmp(&(b.0, b.1, &b.2)));
    (net.n, edges)
}
