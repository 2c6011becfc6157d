//! The two sign-certifying recursions on binary matroids. Both compute `Z̃` exactly; their
//! structure is what makes the sign predictable.

use num_traits::{One, Signed, Zero};

use crate::arith::{int, Rational};
use crate::error::{Error, Result};
use crate::matroid::BinaryMatroid;

fn project(w: &[Rational], map: &[usize]) -> Vec<Rational> {
    map.iter().map(|&i| w[i].clone()).collect()
}

/// Index of some element parallel to `e`, if any.
fn parallel_partner(m: &BinaryMatroid, e: usize) -> Option<usize> {
    (0..m.len()).find(|&f| m.is_parallel_pair(e, f))
}

/// Replaces the parallel pair `{keep, drop}` by `keep` with weight `(1+γ₁)(1+γ₂) − 1`.
fn merge_parallel(
    m: &BinaryMatroid,
    w: &[Rational],
    keep: usize,
    drop: usize,
) -> (BinaryMatroid, Vec<Rational>) {
    let one = Rational::one();
    let merged = (&one + &w[keep]) * (&one + &w[drop]) - one;
    let (minor, map) = m.delete(drop).expect("element exists");
    let mut ws = project(w, &map);
    let pos = map
        .iter()
        .position(|&i| i == keep)
        .expect("kept element survives");
    ws[pos] = merged;
    (minor, ws)
}

/// `Z̃` for `q < 0`, a loopless matroid and weights in `[−2, 0]`; the result is positive.
pub fn value_matroid_qneg(m: &BinaryMatroid, q: &Rational, w: &[Rational]) -> Result<Rational> {
    let fail = |failed: String| Error::Hypothesis {
        construction: "negative-q matroid recursion",
        failed,
    };
    if !q.is_negative() {
        return Err(fail(format!("q = {q} is not negative")));
    }
    if w.len() != m.len() {
        return Err(Error::Precondition(format!(
            "{} weights for {} elements",
            w.len(),
            m.len()
        )));
    }
    if let Some(e) = (0..m.len()).find(|&e| m.is_loop(e)) {
        return Err(fail(format!("element {e} is a loop")));
    }
    let (lo, hi) = (int(-2), Rational::zero());
    if let Some((e, g)) = w.iter().enumerate().find(|(_, g)| **g < lo || **g > hi) {
        return Err(fail(format!(
            "weight {g} of element {e} is outside [-2, 0]"
        )));
    }
    Ok(qneg_rec(m.clone(), w.to_vec(), q))
}

fn qneg_rec(m: BinaryMatroid, w: Vec<Rational>, q: &Rational) -> Rational {
    if m.is_empty() {
        return Rational::one();
    }
    for e in 0..m.len() {
        if let Some(f) = parallel_partner(&m, e) {
            let (minor, ws) = merge_parallel(&m, &w, e, f);
            return qneg_rec(minor, ws, q);
        }
    }
    if m.full_rank() == m.len() {
        return w.iter().map(|g| Rational::one() + g / q).product();
    }
    // some element lies on a circuit, i.e. is not a coloop
    let e = (0..m.len())
        .find(|&e| !m.is_coloop(e))
        .expect("a dependent matroid has a non-coloop");
    let (deleted, dmap) = m.delete(e).expect("element exists");
    let (contracted, cmap) = m.contract(e).expect("element exists");
    let ge = w[e].clone() / q;
    qneg_rec(deleted, project(&w, &dmap), q) + ge * qneg_rec(contracted, project(&w, &cmap), q)
}

/// `Z̃` for `0 < q < 1` under the loop / coloop / ordinary-element weight bounds; the result
/// has sign `(−1)^{r(E)}`.
pub fn value_matroid_js(m: &BinaryMatroid, q: &Rational, w: &[Rational]) -> Result<Rational> {
    let fail = |failed: String| Error::Hypothesis {
        construction: "small-q matroid recursion",
        failed,
    };
    if !(q.is_positive() && q < &Rational::one()) {
        return Err(fail(format!("q = {q} is not in (0, 1)")));
    }
    if w.len() != m.len() {
        return Err(Error::Precondition(format!(
            "{} weights for {} elements",
            w.len(),
            m.len()
        )));
    }
    let one = Rational::one();
    for (e, g) in w.iter().enumerate() {
        if m.is_loop(e) {
            if *g <= -one.clone() {
                return Err(fail(format!("loop {e} has weight {g} <= -1")));
            }
        } else if m.is_coloop(e) {
            if *g >= -q.clone() {
                return Err(fail(format!("coloop {e} has weight {g} >= -q")));
            }
        } else {
            // −1 − √(1−q) < γ < −1 + √(1−q)  ⇔  (γ + 1)² < 1 − q
            let shifted = g + &one;
            if &shifted * &shifted >= &one - q {
                return Err(fail(format!(
                    "element {e} has weight {g} with (γ+1)² >= 1 - q"
                )));
            }
        }
    }
    Ok(js_rec(m.clone(), w.to_vec(), q))
}

fn js_rec(m: BinaryMatroid, w: Vec<Rational>, q: &Rational) -> Rational {
    let one = Rational::one();
    if m.is_empty() {
        return one;
    }
    if let Some(e) = (0..m.len()).find(|&e| m.is_loop(e)) {
        let (minor, map) = m.delete(e).expect("element exists");
        return (&one + &w[e]) * js_rec(minor, project(&w, &map), q);
    }
    if let Some(e) = (0..m.len()).find(|&e| m.is_coloop(e)) {
        let (minor, map) = m.contract(e).expect("element exists");
        return (&one + &w[e] / q) * js_rec(minor, project(&w, &map), q);
    }
    for e in 0..m.len() {
        if let Some(f) = parallel_partner(&m, e) {
            let (minor, ws) = merge_parallel(&m, &w, e, f);
            return js_rec(minor, ws, q);
        }
    }
    for e in 0..m.len() {
        for f in e + 1..m.len() {
            if !m.is_series_pair(e, f) {
                continue;
            }
            let denom = q + &w[e] + &w[f];
            if denom.is_zero() {
                continue;
            }
            // contract f; e carries the series weight
            let merged = &w[e] * &w[f] / &denom;
            let (minor, map) = m.contract(f).expect("element exists");
            let mut ws = project(&w, &map);
            let pos = map.iter().position(|&i| i == e).expect("e survives");
            ws[pos] = merged;
            return &denom / q * js_rec(minor, ws, q);
        }
    }
    let e = m.len() - 1;
    let (deleted, dmap) = m.delete(e).expect("element exists");
    let (contracted, cmap) = m.contract(e).expect("element exists");
    let ge = &w[e] / q;
    js_rec(deleted, project(&w, &dmap), q) + ge * js_rec(contracted, project(&w, &cmap), q)
}
