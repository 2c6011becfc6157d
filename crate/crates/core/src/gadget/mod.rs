//! Two-terminal gadgets, the weights they implement, and the shift algebra built from
//! series and parallel composition.
//!
//! A gadget `(Υ, s, t, γ̂)` implements `w* = q·Z_st / Z_s|t`: replacing an edge of weight `w*`
//! in any host graph by a copy of the gadget multiplies `Z` by `Z_s|t / q²`.

mod diamond;
mod expr;
mod lemmas;
mod search;
mod special;

pub use diamond::{diamond, diamond_iterate, diamond_weight, DiamondRun, DiamondStep, StepKind};
pub use expr::{Certificate, ShiftExpr, Template};
pub use lemmas::{construct, Construction, Lemma};
pub use search::{approach_coordinate, approach_weight, Approach, Coordinate};
pub(crate) use search::{approach_from, DEFAULT_DEPTH, DEFAULT_WIDTH};
pub use special::{gamma_n_gadget, gamma_n_weight, petersen_gadget, petersen_weight};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::eval::z_two_terminal;
use crate::graph::{write_graph, Multigraph, WeightFunction};
use crate::region::PlanePoint;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gadget {
    pub graph: Multigraph,
    pub s: usize,
    pub t: usize,
    pub weights: WeightFunction,
}

impl Gadget {
    /// A single `s–t` edge of weight `w`.
    pub fn edge(w: Rational) -> Self {
        let graph = Multigraph::from_edges(2, &[(0, 1)]).expect("two vertices");
        let weights = WeightFunction::uniform(&graph, &w);
        Gadget {
            graph,
            s: 0,
            t: 1,
            weights,
        }
    }

    pub fn to_text(&self) -> Result<String> {
        write_graph(&self.graph, Some(&self.weights), Some((self.s, self.t)))
    }
}

/// Implemented weight together with the factor `Z_s|t / q²` by which substitution scales `Z`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Implementation {
    #[serde(with = "crate::arith::rational::serde_str")]
    pub weight: Rational,
    #[serde(with = "crate::arith::rational::serde_str")]
    pub scale: Rational,
}

pub fn implemented_weight(gd: &Gadget, q: &Rational) -> Result<Implementation> {
    if q.is_zero() {
        return Err(Error::Precondition("q must be nonzero".into()));
    }
    let split = z_two_terminal(&gd.graph, gd.s, gd.t, q, &gd.weights)?;
    if split.z_s_bar_t.is_zero() {
        return Err(Error::NonImplementing);
    }
    Ok(Implementation {
        weight: q * &split.z_st / &split.z_s_bar_t,
        scale: split.z_s_bar_t / (q * q),
    })
}

/// Replaces edge `edge` of the weighted host by a copy of `gd` (its `s`, `t` glued to the
/// edge's endpoints in listed order). The gadget's internal vertices are appended.
pub fn substitute(
    host: &Multigraph,
    host_weights: &WeightFunction,
    edge: usize,
    gd: &Gadget,
) -> Result<(Multigraph, WeightFunction)> {
    let target = host.edge(edge)?;
    let base = host.delete(edge)?;
    let mut g = base.clone();
    let mut map = vec![usize::MAX; gd.graph.vertex_count()];
    map[gd.s] = target.u;
    map[gd.t] = target.v;
    for slot in map.iter_mut() {
        if *slot == usize::MAX {
            *slot = g.add_vertex();
        }
    }
    let mut wf = WeightFunction::new();
    for e in base.edges() {
        wf.insert(e.id, host_weights.get(e.id)?.clone());
    }
    for e in gd.graph.edges() {
        let id = g.add_edge(map[e.u], map[e.v])?;
        wf.insert(id, gd.weights.get(e.id)?.clone());
    }
    Ok((g, wf))
}

/// Parallel composition: `(1 + w₁)(1 + w₂) − 1`.
pub fn parallel(w1: &Rational, w2: &Rational) -> Rational {
    let one = Rational::one();
    (&one + w1) * (&one + w2) - one
}

/// Series composition: `w₁w₂ / (q + w₁ + w₂)`.
pub fn series(w1: &Rational, w2: &Rational, q: &Rational) -> Result<Rational> {
    let denom = q + w1 + w2;
    if denom.is_zero() {
        return Err(Error::SingularSeries);
    }
    Ok(w1 * w2 / denom)
}

/// `k` parallel copies: `(1 + w)^k − 1`, i.e. `y ↦ y^k`.
pub fn thicken(w: &Rational, k: u32) -> Rational {
    crate::arith::rational::pow(&(Rational::one() + w), i64::from(k)) - Rational::one()
}

/// `k` copies in series, composed one edge at a time so that every intermediate denominator
/// is checked; the result satisfies `1 + q/w' = (1 + q/w)^k`.
pub fn stretch(w: &Rational, q: &Rational, k: u32) -> Result<Rational> {
    if k == 0 {
        return Err(Error::Precondition(
            "stretch length must be positive".into(),
        ));
    }
    let mut acc = w.clone();
    for _ in 1..k {
        acc = series(&acc, w, q)?;
    }
    Ok(acc)
}

/// The edge weight `y − 1` carried by a point.
pub fn weight_of(p: &PlanePoint) -> Rational {
    p.gamma()
}

/// The point with weight `w` on the hyperbola of `q`; `None` for `w = 0`.
pub fn point_of(q: &Rational, w: &Rational) -> Option<PlanePoint> {
    (!w.is_zero()).then(|| PlanePoint::from_q_gamma(q, w))
}
