//! Bounded beam search for a series-parallel combination of given points whose `x` or `y`
//! lands in a target window.

use std::collections::HashSet;
use std::sync::Arc;

use num_traits::Zero;

use super::expr::ShiftExpr;
use super::{parallel, point_of, series};
use crate::arith::rational::approx_f64;
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::region::PlanePoint;

pub const DEFAULT_DEPTH: usize = 12;
pub const DEFAULT_WIDTH: usize = 256;
/// Literal edges allowed in any candidate, keeping the gadget expandable.
const LEAF_CAP: u128 = 1 << 16;
/// Frontier members paired with every frontier member in each round.
const PARTNERS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coordinate {
    X,
    Y,
}

#[derive(Debug, Clone)]
pub struct Approach {
    pub point: PlanePoint,
    pub expr: Arc<ShiftExpr>,
}

#[derive(Clone)]
struct Candidate {
    weight: Rational,
    point: PlanePoint,
    expr: Arc<ShiftExpr>,
    leaves: u128,
}

/// Searches for a combination of `base` (all on one hyperbola) with `y ∈ [target − tol, target]`.
/// `Ok(None)` means the bounded search found nothing.
pub fn approach_weight(
    base: &[PlanePoint],
    target: &Rational,
    tol: &Rational,
) -> Result<Option<Approach>> {
    approach_coordinate(
        base,
        target,
        tol,
        Coordinate::Y,
        DEFAULT_DEPTH,
        DEFAULT_WIDTH,
    )
}

pub fn approach_coordinate(
    base: &[PlanePoint],
    target: &Rational,
    tol: &Rational,
    coord: Coordinate,
    depth: usize,
    width: usize,
) -> Result<Option<Approach>> {
    let Some(first) = base.first() else {
        return Err(Error::Precondition("no base points".into()));
    };
    let q = first.q();
    if base.iter().any(|p| p.q() != q) {
        return Err(Error::Precondition(
            "base points lie on different hyperbolas".into(),
        ));
    }
    let seeds: Vec<_> = base
        .iter()
        .map(|p| (p.gamma(), ShiftExpr::leaf(p.gamma())))
        .collect();
    approach_from(&q, &seeds, target, tol, coord, depth, width)
}

/// As [`approach_coordinate`], with each base point given as an expression and its weight.
pub(crate) fn approach_from(
    q: &Rational,
    base: &[(Rational, Arc<ShiftExpr>)],
    target: &Rational,
    tol: &Rational,
    coord: Coordinate,
    depth: usize,
    width: usize,
) -> Result<Option<Approach>> {
    if q.is_zero() {
        return Err(Error::Precondition("q must be nonzero".into()));
    }
    let q = q.clone();
    let lo = target - tol;
    let value = |p: &PlanePoint| match coord {
        Coordinate::X => p.x.clone(),
        Coordinate::Y => p.y.clone(),
    };
    let hit = |p: &PlanePoint| {
        let v = value(p);
        v >= lo && &v <= target
    };
    let distance = |p: &PlanePoint| {
        let v = value(p);
        if v < lo {
            approx_f64(&(&lo - &v))
        } else if &v > target {
            approx_f64(&(&v - target))
        } else {
            0.0
        }
    };

    let seeds: Vec<Candidate> = base
        .iter()
        .filter_map(|(w, e)| {
            point_of(&q, w).map(|point| Candidate {
                weight: w.clone(),
                point,
                expr: e.clone(),
                leaves: e.edge_count(),
            })
        })
        .collect();
    if let Some(c) = seeds.iter().find(|c| hit(&c.point)) {
        return Ok(Some(Approach {
            point: c.point.clone(),
            expr: c.expr.clone(),
        }));
    }
    let mut seen: HashSet<PlanePoint> = seeds.iter().map(|c| c.point.clone()).collect();
    let mut frontier = seeds.clone();
    for _ in 0..depth {
        let partners: Vec<Candidate> = seeds
            .iter()
            .chain(frontier.iter().take(PARTNERS))
            .cloned()
            .collect();
        let mut fresh = Vec::new();
        for a in &frontier {
            for b in &partners {
                let leaves = a.leaves + b.leaves;
                if leaves > LEAF_CAP {
                    continue;
                }
                let joined = [
                    series(&a.weight, &b.weight, &q)
                        .ok()
                        .map(|w| (w, ShiftExpr::series(&a.expr, &b.expr))),
                    Some((
                        parallel(&a.weight, &b.weight),
                        ShiftExpr::parallel(&a.expr, &b.expr),
                    )),
                ];
                for (weight, expr) in joined.into_iter().flatten() {
                    let Some(point) = point_of(&q, &weight) else {
                        continue;
                    };
                    if !seen.insert(point.clone()) {
                        continue;
                    }
                    if hit(&point) {
                        return Ok(Some(Approach { point, expr }));
                    }
                    fresh.push(Candidate {
                        weight,
                        point,
                        expr,
                        leaves,
                    });
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        frontier.extend(fresh);
        frontier.sort_by(|a, b| {
            distance(&a.point)
                .total_cmp(&distance(&b.point))
                .then(a.leaves.cmp(&b.leaves))
        });
        frontier.truncate(width);
    }
    Ok(None)
}
