//! Two fixed templates whose implemented weights are rational functions of `q` alone when
//! every edge carries the flow weight: `K_n` minus an edge, and the Petersen graph minus an
//! edge.

use num_traits::{One, Zero};

use super::Gadget;
use crate::arith::rational::is_integer;
use crate::arith::{int, Rational};
use crate::error::{Error, Result};
use crate::eval::flow_value;
use crate::graph::{families, WeightFunction};

fn reject_integer_q(q: &Rational, what: &'static str) -> Result<()> {
    if is_integer(q) {
        return Err(Error::Hypothesis {
            construction: what,
            failed: format!("q = {q} is an integer"),
        });
    }
    Ok(())
}

/// `K_n − st` with every edge of weight `−1 + δ`; terminals `0` and `1`.
pub fn gamma_n_gadget(n: usize, q: &Rational, delta: &Rational) -> Result<Gadget> {
    reject_integer_q(q, "clique-minus-edge gadget")?;
    if n < 3 {
        return Err(Error::Precondition(format!("n = {n} is below 3")));
    }
    let graph = families::complete_minus_edge(n);
    let weights = WeightFunction::uniform(&graph, &(delta - Rational::one()));
    Ok(Gadget {
        graph,
        s: 0,
        t: 1,
        weights,
    })
}

/// The weight implemented by [`gamma_n_gadget`] at `δ = 0`: `(n − 2) / (q − n + 1)`.
pub fn gamma_n_weight(n: usize, q: &Rational) -> Result<Rational> {
    let n = int(n as i64);
    let denom = q - &n + Rational::one();
    if denom.is_zero() {
        return Err(Error::NonImplementing);
    }
    Ok((n - int(2)) / denom)
}

/// Petersen minus one edge, every edge weighted `−q − δ`, together with the weight it
/// implements at `δ = 0`. Requires `2 < q < 4` with `q` not an integer.
pub fn petersen_gadget(q: &Rational, delta: &Rational) -> Result<(Gadget, Rational)> {
    reject_integer_q(q, "petersen gadget")?;
    if !(q > &int(2) && q < &int(4)) {
        return Err(Error::Hypothesis {
            construction: "petersen gadget",
            failed: format!("q = {q} is outside (2, 4)"),
        });
    }
    let graph = families::petersen().delete(0)?;
    let (s, t) = {
        let e = families::petersen().edge(0)?;
        (e.u, e.v)
    };
    let weights = WeightFunction::uniform(&graph, &(-q.clone() - delta));
    Ok((
        Gadget {
            graph,
            s,
            t,
            weights,
        },
        petersen_weight(q)?,
    ))
}

/// `−q·F(P) / (F(P) − (q − 1)·F(P − e))` with `F` the flow polynomial and `P` the Petersen graph.
pub fn petersen_weight(q: &Rational) -> Result<Rational> {
    let full = families::petersen();
    let minus = full.delete(0)?;
    let f_full = flow_value(&full, q);
    let f_minus = flow_value(&minus, q);
    let denom = &f_full - (q - Rational::one()) * f_minus;
    if denom.is_zero() {
        return Err(Error::NonImplementing);
    }
    Ok(-q.clone() * f_full / denom)
}
