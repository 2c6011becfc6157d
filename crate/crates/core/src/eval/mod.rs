//! Exact evaluation of the random-cluster partition function and its specializations.

mod brute;
mod reduce;

pub use brute::{
    count_colourings_brute, count_nzflows_brute, potts_brute, z_brute, z_brute_with_cap,
    z_two_terminal_brute, BRUTE_EDGE_CAP, ORACLE_STATE_CAP,
};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::rational::{int, pow};
use crate::arith::{interpolate, Rational, UniPoly};
use crate::error::{Error, Result};
use crate::graph::{Multigraph, WeightFunction};

use reduce::{Evaluator, Net};

/// `Z = z_st + z_s_bar_t`, split by whether the chosen subset joins the two terminals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoTerminalSplit {
    #[serde(with = "crate::arith::rational::serde_str")]
    pub z_st: Rational,
    #[serde(with = "crate::arith::rational::serde_str")]
    pub z_s_bar_t: Rational,
}

impl TwoTerminalSplit {
    pub fn total(&self) -> Rational {
        &self.z_st + &self.z_s_bar_t
    }
}

pub(crate) fn check_terminals(g: &Multigraph, s: usize, t: usize) -> Result<()> {
    for v in [s, t] {
        if v >= g.vertex_count() {
            return Err(Error::UnknownVertex(v));
        }
    }
    if s == t {
        return Err(Error::Precondition("terminals must be distinct".into()));
    }
    Ok(())
}

/// `Z(G; q, γ)` via series-parallel reduction and memoized deletion–contraction.
pub fn z_multivariate(g: &Multigraph, q: &Rational, w: &WeightFunction) -> Result<Rational> {
    let ws = w.for_graph(g)?;
    Ok(z_of_list(g, q, &ws))
}

/// Same as [`z_multivariate`] with weights given in edge order.
pub fn z_of_list(g: &Multigraph, q: &Rational, ws: &[Rational]) -> Rational {
    debug_assert_eq!(ws.len(), g.edge_count());
    if g.vertex_count() == 0 {
        return Rational::one();
    }
    if q.is_zero() {
        return Rational::zero();
    }
    if q.is_one() {
        return ws.iter().map(|w| Rational::one() + w).product();
    }
    let net = Net {
        n: g.vertex_count(),
        edges: g
            .edges()
            .iter()
            .zip(ws)
            .map(|(e, w)| (e.u, e.v, w.clone()))
            .collect(),
    };
    Evaluator::new(q).eval(net)
}

/// `Z(G; q, γ)` with the same weight on every edge.
pub fn z_uniform(g: &Multigraph, q: &Rational, gamma: &Rational) -> Rational {
    z_of_list(g, q, &vec![gamma.clone(); g.edge_count()])
}

/// Two-terminal split from two full evaluations: `Z` and `Z⁺` (an extra `st` edge of weight 1)
/// satisfy `Z = Z_st + Z_s|t` and `Z⁺ = 2 Z_st + (1 + 1/q) Z_s|t`.
pub fn z_two_terminal(
    g: &Multigraph,
    s: usize,
    t: usize,
    q: &Rational,
    w: &WeightFunction,
) -> Result<TwoTerminalSplit> {
    check_terminals(g, s, t)?;
    let ws = w.for_graph(g)?;
    Ok(split_of_list(g, s, t, q, &ws))
}

pub(crate) fn split_of_list(
    g: &Multigraph,
    s: usize,
    t: usize,
    q: &Rational,
    ws: &[Rational],
) -> TwoTerminalSplit {
    if q.is_zero() {
        return TwoTerminalSplit {
            z_st: Rational::zero(),
            z_s_bar_t: Rational::zero(),
        };
    }
    if q.is_one() {
        return split_at_one(g, s, t, ws);
    }
    let z = z_of_list(g, q, ws);
    let mut plus = g.clone();
    plus.add_edge(s, t).expect("terminals were checked");
    let mut ws_plus = ws.to_vec();
    ws_plus.push(Rational::one());
    let z_plus = z_of_list(&plus, q, &ws_plus);
    // Z⁺ − 2Z = (1/q − 1) Z_s|t
    let z_s_bar_t = (z_plus - &z * int(2)) / (q.recip() - Rational::one());
    TwoTerminalSplit {
        z_st: z - &z_s_bar_t,
        z_s_bar_t,
    }
}

/// At `q = 1` the linear system is singular. Enumerate when small; otherwise each part is a
/// polynomial in `q` of degree at most `|V|`, so interpolate it from `q = 2, …, |V| + 2`.
fn split_at_one(g: &Multigraph, s: usize, t: usize, ws: &[Rational]) -> TwoTerminalSplit {
    if g.edge_count() <= BRUTE_EDGE_CAP {
        let wf = WeightFunction::from_list(g, ws).expect("lengths agree");
        return z_two_terminal_brute(g, s, t, &Rational::one(), &wf).expect("within cap");
    }
    let n = g.vertex_count();
    let mut joined = Vec::with_capacity(n + 1);
    let mut apart = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let q = int(k as i64 + 2);
        let split = split_of_list(g, s, t, &q, ws);
        joined.push((q.clone(), split.z_st));
        apart.push((q, split.z_s_bar_t));
    }
    let one = Rational::one();
    TwoTerminalSplit {
        z_st: interpolate(&joined, n).expect("distinct nodes").eval(&one),
        z_s_bar_t: interpolate(&apart, n).expect("distinct nodes").eval(&one),
    }
}

/// Chromatic polynomial `P(G; q) = Z(G; q, −1)`, interpolated at `q = 1, …, |V| + 1`.
pub fn chromatic_poly(g: &Multigraph) -> UniPoly {
    let n = g.vertex_count();
    let points: Vec<_> = (1..=n as i64 + 1)
        .map(|k| {
            let q = int(k);
            let z = z_uniform(g, &q, &int(-1));
            (q, z)
        })
        .collect();
    interpolate(&points, n).expect("integer nodes are distinct")
}

/// Flow polynomial `F(G; q) = q^{−|V|} (−1)^{|E|} Z(G; q, −q)`, interpolated at
/// `q = 1, …, d + 1` where `d = |E| − |V| + κ(G)`.
pub fn flow_poly(g: &Multigraph) -> UniPoly {
    let degree = g.edge_count() + g.components() - g.vertex_count();
    let points: Vec<_> = (1..=degree as i64 + 1)
        .map(|k| {
            let q = int(k);
            (q.clone(), flow_value(g, &q))
        })
        .collect();
    interpolate(&points, degree).expect("integer nodes are distinct")
}

/// `F(G; q)` at a single nonzero `q`, evaluated directly.
pub fn flow_value(g: &Multigraph, q: &Rational) -> Rational {
    let z = z_uniform(g, q, &-q.clone());
    let sign = if g.edge_count().is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    };
    sign * z * pow(q, -(g.vertex_count() as i64))
}
