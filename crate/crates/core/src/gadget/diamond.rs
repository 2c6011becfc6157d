//! The diamond operation (two 2-paths in parallel) and its iteration out of the unit square.

use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::expr::ShiftExpr;
use super::{parallel, point_of, series};
use crate::arith::rational::{abs, max};
use crate::arith::{frac, int, Rational};
use crate::error::{Error, Result};
use crate::region::PlanePoint;

/// The point implemented by the diamond gadget on `(x, y)`, defined for `x ≠ −1` and
/// `y ≠ −1 − 2x`.
pub fn diamond(p: &PlanePoint) -> Result<PlanePoint> {
    let one = Rational::one();
    let (x, y) = (&p.x, &p.y);
    let undefined = || Error::DiamondUndefined {
        x: x.to_string(),
        y: y.to_string(),
    };
    let x_plus_one = x + &one;
    if x_plus_one.is_zero() {
        return Err(undefined());
    }
    let denom = &one + x * int(2) + y;
    if denom.is_zero() {
        return Err(undefined());
    }
    let nx = (x + x * x + x * x * x + y) / denom;
    let s = x + y;
    let ny = &s * &s / (&x_plus_one * &x_plus_one);
    Ok(PlanePoint::new(nx, ny))
}

/// The diamond in weight form: `γ²(γ² + 4γ + 2q) / (q + 2γ)²`.
pub fn diamond_weight(w: &Rational, q: &Rational) -> Result<Rational> {
    let half = series(w, w, q)?;
    Ok(parallel(&half, &half))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepKind {
    Diamond,
    /// The point lay on `y = −1 − 2x`; replaced by a parallel of a 2-path and a 4-path.
    OnCriticalLine,
    /// The point had `x = −1`; finished with a parallel/series/parallel triple.
    OnLeftLine,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiamondStep {
    pub kind: StepKind,
    pub point: PlanePoint,
}

#[derive(Debug, Clone, Serialize)]
pub struct DiamondRun {
    /// The first point reached with `y > 1`.
    pub point: PlanePoint,
    #[serde(skip)]
    pub expr: Arc<ShiftExpr>,
    pub steps: Vec<DiamondStep>,
}

impl DiamondRun {
    pub fn critical_line_hits(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| s.kind == StepKind::OnCriticalLine)
            .count()
    }
}

/// Iterates the diamond from a point of the open unit square with `q > 32/27` until `y > 1`,
/// routing around the two lines where the diamond is undefined. Each step's `y` must
/// strictly increase.
pub fn diamond_iterate(p: &PlanePoint, cap: usize) -> Result<DiamondRun> {
    let q = p.q();
    let one = Rational::one();
    let fail = |failed: String| Error::Hypothesis {
        construction: "diamond iteration",
        failed,
    };
    if max(&abs(&p.x), &abs(&p.y)) >= one {
        return Err(fail(format!("{p} is not inside the open unit square")));
    }
    if q <= frac(32, 27) {
        return Err(fail(format!("q = {q} is not above 32/27")));
    }
    let point = |w: &Rational| {
        point_of(&q, w).ok_or_else(|| Error::Certification("the iteration reached weight 0".into()))
    };

    let mut expr = ShiftExpr::leaf(p.gamma());
    let mut w = p.gamma();
    let mut cur = p.clone();
    let mut steps = Vec::new();
    while cur.y <= one {
        if steps.len() >= cap {
            return Err(Error::IterationCap {
                cap,
                x: cur.x.to_string(),
                y: cur.y.to_string(),
            });
        }
        let critical = -(&cur.x * int(2)) - &one;
        let kind = if cur.x == -one.clone() {
            let doubled = ShiftExpr::parallel(&expr, &expr);
            let mixed = ShiftExpr::series(&expr, &doubled);
            expr = ShiftExpr::parallel(&mixed, &mixed);
            let wm = series(&w, &parallel(&w, &w), &q)?;
            w = parallel(&wm, &wm);
            StepKind::OnLeftLine
        } else if cur.y == critical {
            let two = ShiftExpr::series(&expr, &expr);
            let four = ShiftExpr::series(&two, &two);
            expr = ShiftExpr::parallel(&two, &four);
            let w2 = series(&w, &w, &q)?;
            let w4 = series(&w2, &w2, &q)?;
            w = parallel(&w2, &w4);
            StepKind::OnCriticalLine
        } else {
            let half = ShiftExpr::series(&expr, &expr);
            expr = ShiftExpr::parallel(&half, &half);
            w = diamond_weight(&w, &q)?;
            StepKind::Diamond
        };
        let next = point(&w)?;
        if next.y <= cur.y {
            return Err(Error::Certification(format!(
                "y did not increase: {} -> {}",
                cur.y, next.y
            )));
        }
        if kind == StepKind::OnLeftLine && next.y <= one {
            return Err(Error::Certification(format!(
                "left-line finish gave y = {}",
                next.y
            )));
        }
        steps.push(DiamondStep {
            kind,
            point: next.clone(),
        });
        cur = next;
    }
    if steps
        .iter()
        .filter(|s| s.kind == StepKind::OnCriticalLine)
        .count()
        > 2
    {
        return Err(Error::Certification(
            "the critical line was met more than twice".into(),
        ));
    }
    debug_assert!(cur.y.is_positive());
    Ok(DiamondRun {
        point: cur,
        expr,
        steps,
    })
}
