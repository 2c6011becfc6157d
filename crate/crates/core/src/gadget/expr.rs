//! Shift expressions: gadgets described as a DAG of series, parallel and template
//! substitutions over leaf edge weights. Shared sub-expressions are evaluated once.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::One;
use serde::Serialize;

use super::{implemented_weight, parallel, point_of, series, Gadget};
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::graph::{families, Multigraph, WeightFunction};
use crate::region::PlanePoint;

/// A two-terminal graph whose edges are to be replaced by sub-gadgets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Template {
    pub graph: Multigraph,
    pub s: usize,
    pub t: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShiftExpr {
    Leaf(Rational),
    Series(Arc<ShiftExpr>, Arc<ShiftExpr>),
    Parallel(Arc<ShiftExpr>, Arc<ShiftExpr>),
    /// Edge `i` of the template is replaced by child `i` (children in edge order).
    Compose(Arc<Template>, Vec<Arc<ShiftExpr>>),
}

/// Outcome of [`ShiftExpr::certify`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    #[serde(with = "crate::arith::rational::serde_str")]
    pub weight: Rational,
    pub point: Option<PlanePoint>,
    /// Distinct nodes whose one-level gadget was evaluated against the closed form.
    pub nodes_checked: usize,
    /// Edge count of the literal gadget, when it was small enough to be evaluated whole.
    pub full_check_edges: Option<usize>,
}

type Key = *const ShiftExpr;

impl ShiftExpr {
    pub fn leaf(w: Rational) -> Arc<Self> {
        Arc::new(ShiftExpr::Leaf(w))
    }

    pub fn series(a: &Arc<Self>, b: &Arc<Self>) -> Arc<Self> {
        Arc::new(ShiftExpr::Series(a.clone(), b.clone()))
    }

    pub fn parallel(a: &Arc<Self>, b: &Arc<Self>) -> Arc<Self> {
        Arc::new(ShiftExpr::Parallel(a.clone(), b.clone()))
    }

    pub fn compose(template: Template, children: Vec<Arc<Self>>) -> Result<Arc<Self>> {
        if children.len() != template.graph.edge_count() {
            return Err(Error::Precondition(format!(
                "{} children for a template with {} edges",
                children.len(),
                template.graph.edge_count()
            )));
        }
        Ok(Arc::new(ShiftExpr::Compose(Arc::new(template), children)))
    }

    /// `k ≥ 1` copies of `a` in series.
    pub fn stretch(a: &Arc<Self>, k: u32) -> Arc<Self> {
        Self::chain(a, k, Self::series)
    }

    /// `k ≥ 1` copies of `a` in parallel.
    pub fn thicken(a: &Arc<Self>, k: u32) -> Arc<Self> {
        Self::chain(a, k, Self::parallel)
    }

    fn chain(a: &Arc<Self>, k: u32, join: fn(&Arc<Self>, &Arc<Self>) -> Arc<Self>) -> Arc<Self> {
        assert!(k >= 1, "at least one copy");
        let mut acc = a.clone();
        for _ in 1..k {
            acc = join(&acc, a);
        }
        acc
    }

    fn children(&self) -> Vec<&ShiftExpr> {
        match self {
            ShiftExpr::Leaf(_) => Vec::new(),
            ShiftExpr::Series(a, b) | ShiftExpr::Parallel(a, b) => vec![a, b],
            ShiftExpr::Compose(_, cs) => cs.iter().map(|c| &**c).collect(),
        }
    }

    /// Implemented weight from the closed forms at each node.
    pub fn weight(&self, q: &Rational) -> Result<Rational> {
        self.weight_memo(q, &mut HashMap::new())
    }

    pub fn point(&self, q: &Rational) -> Result<Option<PlanePoint>> {
        Ok(point_of(q, &self.weight(q)?))
    }

    fn weight_memo(&self, q: &Rational, memo: &mut HashMap<Key, Rational>) -> Result<Rational> {
        let key = self as Key;
        if let Some(w) = memo.get(&key) {
            return Ok(w.clone());
        }
        let w = match self {
            ShiftExpr::Leaf(w) => w.clone(),
            ShiftExpr::Series(a, b) => {
                series(&a.weight_memo(q, memo)?, &b.weight_memo(q, memo)?, q)?
            }
            ShiftExpr::Parallel(a, b) => {
                parallel(&a.weight_memo(q, memo)?, &b.weight_memo(q, memo)?)
            }
            ShiftExpr::Compose(t, cs) => {
                let ws = cs
                    .iter()
                    .map(|c| c.weight_memo(q, memo))
                    .collect::<Result<Vec<_>>>()?;
                implemented_weight(&template_gadget(t, &ws)?, q)?.weight
            }
        };
        memo.insert(key, w.clone());
        Ok(w)
    }

    /// The factor `Z_s|t / q²` by which substituting the literal gadget scales `Z`, from the
    /// closed forms: parallel multiplies child factors, series additionally contributes
    /// `q + w₁ + w₂`.
    pub fn scale(&self, q: &Rational) -> Result<Rational> {
        fn go(
            e: &ShiftExpr,
            q: &Rational,
            weights: &mut HashMap<Key, Rational>,
            memo: &mut HashMap<Key, Rational>,
        ) -> Result<Rational> {
            if let Some(s) = memo.get(&(e as Key)) {
                return Ok(s.clone());
            }
            let s = match e {
                ShiftExpr::Leaf(_) => Rational::one(),
                ShiftExpr::Parallel(a, b) => go(a, q, weights, memo)? * go(b, q, weights, memo)?,
                ShiftExpr::Series(a, b) => {
                    let joint = q + a.weight_memo(q, weights)? + b.weight_memo(q, weights)?;
                    go(a, q, weights, memo)? * go(b, q, weights, memo)? * joint
                }
                ShiftExpr::Compose(t, cs) => {
                    let ws = cs
                        .iter()
                        .map(|c| c.weight_memo(q, weights))
                        .collect::<Result<Vec<_>>>()?;
                    let mut s = implemented_weight(&template_gadget(t, &ws)?, q)?.scale;
                    for c in cs {
                        s *= go(c, q, weights, memo)?;
                    }
                    s
                }
            };
            memo.insert(e as Key, s.clone());
            Ok(s)
        }
        go(self, q, &mut HashMap::new(), &mut HashMap::new())
    }

    /// Number of edges of the literal gadget (saturating).
    pub fn edge_count(&self) -> u128 {
        fn go(e: &ShiftExpr, memo: &mut HashMap<Key, u128>) -> u128 {
            if let Some(&c) = memo.get(&(e as Key)) {
                return c;
            }
            let c = match e {
                ShiftExpr::Leaf(_) => 1,
                _ => e
                    .children()
                    .into_iter()
                    .fold(0u128, |acc, c| acc.saturating_add(go(c, memo))),
            };
            memo.insert(e as Key, c);
            c
        }
        go(self, &mut HashMap::new())
    }

    /// Number of distinct nodes in the DAG.
    pub fn node_count(&self) -> usize {
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![self];
        while let Some(e) = stack.pop() {
            if seen.insert(e as Key) {
                stack.extend(e.children());
            }
        }
        seen.len()
    }

    /// The literal gadget, with terminals `0` and `1`.
    pub fn expand(&self, edge_cap: usize) -> Result<Gadget> {
        let size = self.edge_count();
        if size > edge_cap as u128 {
            return Err(Error::CapExceeded {
                what: "gadget edges",
                size: usize::try_from(size).unwrap_or(usize::MAX),
                cap: edge_cap,
            });
        }
        let mut graph = Multigraph::new(2);
        let mut weights = WeightFunction::new();
        self.emit(&mut graph, &mut weights, 0, 1)?;
        Ok(Gadget {
            graph,
            s: 0,
            t: 1,
            weights,
        })
    }

    fn emit(&self, g: &mut Multigraph, wf: &mut WeightFunction, s: usize, t: usize) -> Result<()> {
        match self {
            ShiftExpr::Leaf(w) => {
                let id = g.add_edge(s, t)?;
                wf.insert(id, w.clone());
            }
            ShiftExpr::Series(a, b) => {
                let mid = g.add_vertex();
                a.emit(g, wf, s, mid)?;
                b.emit(g, wf, mid, t)?;
            }
            ShiftExpr::Parallel(a, b) => {
                a.emit(g, wf, s, t)?;
                b.emit(g, wf, s, t)?;
            }
            ShiftExpr::Compose(tpl, cs) => {
                let mut map = vec![usize::MAX; tpl.graph.vertex_count()];
                map[tpl.s] = s;
                map[tpl.t] = t;
                for slot in map.iter_mut() {
                    if *slot == usize::MAX {
                        *slot = g.add_vertex();
                    }
                }
                for (e, c) in tpl.graph.edges().iter().zip(cs) {
                    c.emit(g, wf, map[e.u], map[e.v])?;
                }
            }
        }
        Ok(())
    }

    /// Re-derives the weight through gadget evaluations. Every distinct node is checked by
    /// evaluating its one-level gadget (children collapsed to their certified weights); by the
    /// substitution identity this certifies the whole expression. When the literal gadget has
    /// at most `full_cap` edges it is additionally evaluated in one piece.
    pub fn certify(&self, q: &Rational, full_cap: usize) -> Result<Certificate> {
        let closed = {
            let mut memo = HashMap::new();
            self.weight_memo(q, &mut memo)?;
            memo
        };
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![self];
        while let Some(e) = stack.pop() {
            if !seen.insert(e as Key) {
                continue;
            }
            stack.extend(e.children());
            let child_weights: Vec<Rational> = e
                .children()
                .iter()
                .map(|c| closed[&(*c as Key)].clone())
                .collect();
            let one_level = match e {
                ShiftExpr::Leaf(_) => continue,
                ShiftExpr::Series(..) => template_gadget(
                    &Template {
                        graph: families::path(3),
                        s: 0,
                        t: 2,
                    },
                    &child_weights,
                )?,
                ShiftExpr::Parallel(..) => template_gadget(
                    &Template {
                        graph: families::bundle(2),
                        s: 0,
                        t: 1,
                    },
                    &child_weights,
                )?,
                ShiftExpr::Compose(t, _) => template_gadget(t, &child_weights)?,
            };
            if implemented_weight(&one_level, q)?.weight != closed[&(e as Key)] {
                return Err(Error::Certification(format!(
                    "node weight differs from its gadget evaluation at q = {q}"
                )));
            }
        }
        let weight = closed[&(self as Key)].clone();
        let mut full_check_edges = None;
        if self.edge_count() <= full_cap as u128 {
            let gd = self.expand(full_cap)?;
            if implemented_weight(&gd, q)?.weight != weight {
                return Err(Error::Certification(format!(
                    "node weight differs from its gadget evaluation at q = {q}"
                )));
            }
            full_check_edges = Some(gd.graph.edge_count());
        }
        Ok(Certificate {
            point: point_of(q, &weight),
            weight,
            nodes_checked: seen.len(),
            full_check_edges,
        })
    }
}

fn template_gadget(t: &Template, ws: &[Rational]) -> Result<Gadget> {
    Ok(Gadget {
        graph: t.graph.clone(),
        s: t.s,
        t: t.t,
        weights: WeightFunction::from_list(&t.graph, ws)?,
    })
}
