//! The sign of `Z(G; q, γ)` at a plane point, by polynomial-time rules where they exist,
//! backtracking deciders at the NP-complete points and exact evaluation otherwise.

mod deciders;
mod matroid_values;

pub use deciders::{
    decide_colourable, decide_colourable_with_cap, decide_nz_flow, decide_nz_flow_with_cap,
    DECIDER_NODE_CAP,
};
pub use matroid_values::{value_matroid_js, value_matroid_qneg};

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::rational::{is_integer, to_i64};
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::eval::z_uniform;
use crate::graph::Multigraph;
use crate::matroid::BinaryMatroid;
use crate::region::{classify, PlanePoint, Region};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SignValue {
    Negative,
    Zero,
    Positive,
}

impl SignValue {
    pub fn of(r: &Rational) -> Self {
        if r.is_zero() {
            SignValue::Zero
        } else if r.is_positive() {
            SignValue::Positive
        } else {
            SignValue::Negative
        }
    }

    /// `(−1)^k`.
    pub fn parity(k: usize) -> Self {
        if k.is_multiple_of(2) {
            SignValue::Positive
        } else {
            SignValue::Negative
        }
    }

    /// `(−1)^k` when `nonzero`, else zero.
    fn parity_or_zero(k: usize, nonzero: bool) -> Self {
        if nonzero {
            Self::parity(k)
        } else {
            SignValue::Zero
        }
    }
}

impl fmt::Display for SignValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SignValue::Negative => "negative",
            SignValue::Zero => "zero",
            SignValue::Positive => "positive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignReport {
    pub sign: SignValue,
    pub method: String,
    pub certificate: Option<String>,
}

impl SignReport {
    fn new(sign: SignValue, method: &str, certificate: impl Into<Option<String>>) -> Self {
        SignReport {
            sign,
            method: method.to_string(),
            certificate: certificate.into(),
        }
    }
}

/// How [`sign_with_method`] may answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SignMethod {
    /// Fast rule if one applies, otherwise exact evaluation.
    #[default]
    Auto,
    /// Fast rule or deciders only; an error where none applies.
    Fp,
    /// Always exact evaluation.
    Exact,
}

/// Sign of `Z(G; q, γ)` with uniform `γ = y − 1` and `q = (x−1)(y−1)`.
pub fn sign_dispatch(g: &Multigraph, p: &PlanePoint) -> SignReport {
    sign_with_method(g, p, SignMethod::Auto).expect("automatic dispatch falls back to exact")
}

pub fn sign_with_method(g: &Multigraph, p: &PlanePoint, method: SignMethod) -> Result<SignReport> {
    if method == SignMethod::Exact {
        return Ok(exact(g, p));
    }
    match fast_rule(g, p) {
        Ok(Some(report)) => Ok(report),
        Ok(None) | Err(Error::NpInstanceTooLarge(_)) if method == SignMethod::Auto => {
            Ok(exact(g, p))
        }
        Ok(None) => Err(Error::Precondition(format!(
            "no polynomial-time sign rule at {p}"
        ))),
        Err(e) => Err(e),
    }
}

fn exact(g: &Multigraph, p: &PlanePoint) -> SignReport {
    let z = z_uniform(g, &p.q(), &p.gamma());
    SignReport::new(SignValue::of(&z), "exact-fallback", None)
}

fn fast_rule(g: &Multigraph, p: &PlanePoint) -> Result<Option<SignReport>> {
    let n = g.vertex_count();
    let m = g.edge_count();
    if n == 0 {
        return Ok(Some(SignReport::new(
            SignValue::Positive,
            "empty-graph",
            None,
        )));
    }
    let (x, y) = (&p.x, &p.y);
    let q = p.q();
    let one = Rational::one();
    if q.is_zero() {
        return Ok(Some(SignReport::new(
            SignValue::Zero,
            "q-zero",
            "every subset has at least one component".to_string(),
        )));
    }
    let class = classify(p);
    let loops = g.loops().len();
    let kappa = g.components();

    let report = match class.region {
        Region::A => {
            let bridges = g.bridges().len();
            let vanishes = (x.is_zero() && y.is_zero() && m > 0)
                || (x.is_zero() && bridges > 0)
                || (y.is_zero() && loops > 0);
            let below_y = usize::from(y < &one);
            let below_x = usize::from(x < &one);
            SignReport::new(
                SignValue::parity_or_zero(n * below_y + kappa * below_x, !vanishes),
                "region-A",
                format!("|V|={n}, components={kappa}, bridges={bridges}, loops={loops}"),
            )
        }
        Region::Q1Hyperbola => SignReport::new(
            SignValue::of(&crate::arith::rational::pow(y, m as i64)),
            "q1-hyperbola",
            format!("Z = y^{m}"),
        ),
        Region::E if is_integer(&q) => {
            SignReport::new(SignValue::Positive, "E-integer-q", format!("q = {q}"))
        }
        Region::F if is_integer(&q) => SignReport::new(
            SignValue::parity(m),
            "F-integer-q",
            format!("q = {q}, |E| = {m}"),
        ),
        Region::BeBoundary if x == &-one.clone() => {
            let ok = g.is_bipartite();
            SignReport::new(
                if ok {
                    SignValue::Positive
                } else {
                    SignValue::Zero
                },
                "bipartite",
                (if ok { "bipartite" } else { "not bipartite" }).to_string(),
            )
        }
        Region::BeBoundary if is_integer(x) => {
            let colours = u64::try_from(1 - to_i64(x).expect("integer x")).expect("x < -1");
            let ok = decide_colourable(g, colours)?;
            SignReport::new(
                if ok {
                    SignValue::Positive
                } else {
                    SignValue::Zero
                },
                "colouring",
                format!("{} {colours}-colourable", if ok { "is" } else { "not" }),
            )
        }
        Region::BfBoundary if is_integer(y) && class.status != crate::region::Status::Open => {
            let flows = u64::try_from(1 - to_i64(y).expect("integer y")).expect("y <= -1");
            let (ok, label) = match flows {
                2 => (g.is_eulerian(), "eulerian"),
                3 => (decide_nz_flow(g, 3)?, "3-flow"),
                _ => (g.bridges().is_empty(), "bridgeless"),
            };
            SignReport::new(
                SignValue::parity_or_zero(m, ok),
                label,
                format!(
                    "{} a nowhere-zero {flows}-flow",
                    if ok { "has" } else { "no" }
                ),
            )
        }
        Region::BSpecial => {
            let b = bicycle_dimension(g);
            SignReport::new(
                SignValue::parity(kappa + n + m + b),
                "bicycle",
                format!("bicycle dimension {b}"),
            )
        }
        Region::K => SignReport::new(
            SignValue::parity(n + loops),
            "K",
            format!("|V|={n}, loops={loops}"),
        ),
        Region::L => SignReport::new(
            SignValue::parity(loops + n - kappa),
            "L",
            format!("loops={loops}, rank={}", n - kappa),
        ),
        Region::J | Region::M => dual_rule(g, p, class.region),
        _ => return Ok(None),
    };
    Ok(Some(report))
}

/// `J` and `M` through the dual matroid. With `γ* = q/γ = x − 1`,
/// `Z̃(M) = Z̃(M*; q, γ*) · q^{r*(E)} / Π γ*` and `Z = q^{|V|} Z̃(M)`.
fn dual_rule(g: &Multigraph, p: &PlanePoint, region: Region) -> SignReport {
    let q = p.q();
    let n = g.vertex_count();
    let m = g.edge_count();
    let dual = BinaryMatroid::cycle_matroid(g).dual();
    let dual_loops = (0..dual.len()).filter(|&e| dual.is_loop(e)).count();
    let dual_rank = dual.full_rank();
    let gamma_star_negative = usize::from((&p.x - Rational::one()).is_negative());
    let q_negative = usize::from(q.is_negative());

    // sign of Z̃(M*; q, γ*): each dual loop contributes 1 + γ* = x < 0; the loopless rest is
    // positive for q < 0 and has sign (−1)^{r*} for 0 < q < 1
    let rest = if region == Region::J { 0 } else { dual_rank };
    let dual_sign = dual_loops + rest;

    let exponent = dual_sign + q_negative * dual_rank + gamma_star_negative * m + q_negative * n;
    SignReport::new(
        SignValue::parity(exponent),
        if region == Region::J {
            "J-dual"
        } else {
            "M-dual"
        },
        format!("dual loops={dual_loops}, dual rank={dual_rank}"),
    )
}

/// Dimension of the bicycle space: the cut space has dimension `|V| − κ`, and its radical
/// under the standard inner product has codimension `rank(N Nᵀ)` over GF(2).
fn bicycle_dimension(g: &Multigraph) -> usize {
    let n = g.vertex_count();
    let laplacian = BinaryMatroid::from_fn(n, n, |r, c| {
        let count = g
            .edges()
            .iter()
            .filter(|e| !e.is_loop())
            .filter(|e| {
                if r == c {
                    e.u == r || e.v == r
                } else {
                    (e.u == r && e.v == c) || (e.u == c && e.v == r)
                }
            })
            .count();
        count % 2 == 1
    });
    (n - g.components()) - laplacian.full_rank()
}
