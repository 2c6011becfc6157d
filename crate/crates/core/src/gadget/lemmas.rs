//! Named constructions that move a point of the plane into a target region using series,
//! parallel and template compositions. Every construction checks its hypotheses, picks the
//! smallest sufficient stretch/thickening lengths by exact comparison, and checks its
//! postcondition on the exact result.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::diamond::diamond_iterate;
use super::expr::{Certificate, ShiftExpr, Template};
use super::search::{approach_from, Coordinate, DEFAULT_DEPTH, DEFAULT_WIDTH};
use super::{parallel, point_of, series, stretch, thicken};
use crate::arith::rational::{abs, floor, is_integer, max, pow};
use crate::arith::{frac, int, Rational};
use crate::error::{Error, Result};
use crate::graph::families;
use crate::region::{classify, PlanePoint, Region};

/// Bound on any searched stretch, thickening or copy count.
const LENGTH_CAP: u32 = 10_000;
/// Bound on refinement rounds for the template constructions.
const TEMPLATE_ROUNDS: u32 = 200;
const DIAMOND_CAP: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Lemma {
    /// `q > 0, x < −1`: a 2-stretch reaches `y > 1`.
    EscapeLeft,
    /// `x < −1, y < −1`: one point with `y ∈ (−1, 0)` and one with `|y| > 1`.
    RegionB1,
    /// `x < −1, y = −1`.
    RegionB2,
    /// `x < −1, −1 < y < 0`.
    RegionB3,
    /// `−1 ≤ x < 0, y < −1`.
    RegionB4,
    /// Diamond iteration from the unit square with `q > 32/27` to `y > 1`.
    Diamond,
    /// `x > −1, y < −1 − 2x` to `y > 1`.
    TriangleBelow,
    /// `y > −1, x < −1 − 2y, q > 0` to `y > 1`.
    TriangleLeft,
    /// Unit square with `q > 1` and one of the three escape conditions, to `y ∈ (−1, 0)`.
    UnitSquareNegative,
    /// Regions C and D to `y ∈ (0, 1)`.
    StretchCd,
    /// `x < −1, 0 < y < 1, 1 < q < 2` to `y ∈ (−1, 0)`.
    RegionELowQ,
    /// `x < −1, 0 < y < 1`, non-integer `q > 2`: `K_n − st` template to `y < 0`.
    CliqueMinusEdge,
    /// As [`Lemma::CliqueMinusEdge`], finished into region B or G.
    CliqueToBOrG,
    /// `0 < x < 1, y < −1, 0 < q < 1` to `y ∈ (0, 1)`.
    RegionFQ01,
    /// `0 < x < 1, y < −1, 1 < q < 2` to `y ∈ (−1, 0)`.
    RegionFQ12,
    /// `0 < x < 1, y < −1`, non-integer `2 < q < 4`: Petersen template to `x < 0`.
    Petersen,
}

impl Lemma {
    pub const ALL: [Lemma; 16] = [
        Lemma::EscapeLeft,
        Lemma::RegionB1,
        Lemma::RegionB2,
        Lemma::RegionB3,
        Lemma::RegionB4,
        Lemma::Diamond,
        Lemma::TriangleBelow,
        Lemma::TriangleLeft,
        Lemma::UnitSquareNegative,
        Lemma::StretchCd,
        Lemma::RegionELowQ,
        Lemma::CliqueMinusEdge,
        Lemma::CliqueToBOrG,
        Lemma::RegionFQ01,
        Lemma::RegionFQ12,
        Lemma::Petersen,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Lemma::EscapeLeft => "escape-left",
            Lemma::RegionB1 => "region-b1",
            Lemma::RegionB2 => "region-b2",
            Lemma::RegionB3 => "region-b3",
            Lemma::RegionB4 => "region-b4",
            Lemma::Diamond => "diamond",
            Lemma::TriangleBelow => "triangle-below",
            Lemma::TriangleLeft => "triangle-left",
            Lemma::UnitSquareNegative => "unit-square-negative",
            Lemma::StretchCd => "stretch-cd",
            Lemma::RegionELowQ => "region-e-low-q",
            Lemma::CliqueMinusEdge => "clique-minus-edge",
            Lemma::CliqueToBOrG => "clique-to-b-or-g",
            Lemma::RegionFQ01 => "region-f-q01",
            Lemma::RegionFQ12 => "region-f-q12",
            Lemma::Petersen => "petersen",
        }
    }
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Lemma {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Lemma::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Lemma::ALL.iter().map(|l| l.name()).collect();
                Error::Precondition(format!(
                    "unknown construction {s:?}; expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

/// One implemented point with the expression that realises it from the input point.
#[derive(Debug, Clone)]
pub struct Construction {
    pub role: &'static str,
    pub point: PlanePoint,
    pub expr: Arc<ShiftExpr>,
}

impl Construction {
    pub fn certify(&self, full_cap: usize) -> Result<Certificate> {
        let cert = self.expr.certify(&self.point.q(), full_cap)?;
        if cert.point.as_ref() != Some(&self.point) {
            return Err(Error::Certification(format!(
                "{} point {} disagrees with its gadget",
                self.role, self.point
            )));
        }
        Ok(cert)
    }
}

/// A sub-expression together with its exact weight.
#[derive(Clone)]
struct Part {
    expr: Arc<ShiftExpr>,
    w: Rational,
}

impl Part {
    fn leaf(p: &PlanePoint) -> Self {
        Part {
            expr: ShiftExpr::leaf(p.gamma()),
            w: p.gamma(),
        }
    }

    fn point(&self, q: &Rational) -> Result<PlanePoint> {
        point_of(q, &self.w)
            .ok_or_else(|| Error::Certification("construction reached weight 0".into()))
    }

    fn ser(&self, other: &Part, q: &Rational) -> Result<Part> {
        Ok(Part {
            expr: ShiftExpr::series(&self.expr, &other.expr),
            w: series(&self.w, &other.w, q)?,
        })
    }

    fn par(&self, other: &Part) -> Part {
        Part {
            expr: ShiftExpr::parallel(&self.expr, &other.expr),
            w: parallel(&self.w, &other.w),
        }
    }

    fn stretch(&self, k: u32, q: &Rational) -> Result<Part> {
        Ok(Part {
            expr: ShiftExpr::stretch(&self.expr, k),
            w: stretch(&self.w, q, k)?,
        })
    }

    fn thicken(&self, k: u32) -> Part {
        Part {
            expr: ShiftExpr::thicken(&self.expr, k),
            w: thicken(&self.w, k),
        }
    }
}

struct Ctx {
    lemma: Lemma,
    p: PlanePoint,
    q: Rational,
}

impl Ctx {
    fn require(&self, ok: bool, failed: impl FnOnce() -> String) -> Result<()> {
        if ok {
            Ok(())
        } else {
            Err(Error::Hypothesis {
                construction: self.lemma.name(),
                failed: failed(),
            })
        }
    }

    fn ensure(&self, ok: bool, what: &str, point: &PlanePoint) -> Result<()> {
        if ok {
            Ok(())
        } else {
            Err(Error::Certification(format!(
                "{}: result {point} violates {what}",
                self.lemma.name()
            )))
        }
    }

    fn built(&self, role: &'static str, part: &Part) -> Result<Construction> {
        Ok(Construction {
            role,
            point: part.point(&self.q)?,
            expr: part.expr.clone(),
        })
    }
}

/// Smallest `k ≥ start` (stepping by `step`) with `pred(k)`.
fn smallest(start: u32, step: u32, mut pred: impl FnMut(u32) -> bool) -> Result<u32> {
    let mut k = start;
    while k <= LENGTH_CAP {
        if pred(k) {
            return Ok(k);
        }
        k += step;
    }
    Err(Error::CapExceeded {
        what: "construction length",
        size: k as usize,
        cap: LENGTH_CAP as usize,
    })
}

/// Smallest `k ≥ 1` with `|a| · b^k < 1`, for `0 < |b| < 1`.
fn shrink_below_one(a: &Rational, b: &Rational) -> Result<u32> {
    let (a, b) = (abs(a), abs(b));
    let mut acc = a * &b;
    smallest(1, 1, |_| {
        let ok = acc < Rational::one();
        acc *= &b;
        ok
    })
}

pub fn construct(p: &PlanePoint, lemma: Lemma) -> Result<Vec<Construction>> {
    let ctx = Ctx {
        lemma,
        p: p.clone(),
        q: p.q(),
    };
    let out = match lemma {
        Lemma::EscapeLeft => vec![escape_left(&ctx)?],
        Lemma::RegionB1 => region_b1(&ctx)?,
        Lemma::RegionB2 => region_b2(&ctx)?,
        Lemma::RegionB3 => region_b3(&ctx)?,
        Lemma::RegionB4 => region_b4(&ctx)?,
        Lemma::Diamond => vec![diamond_lemma(&ctx)?],
        Lemma::TriangleBelow => vec![triangle_below(&ctx)?],
        Lemma::TriangleLeft => vec![triangle_left(&ctx)?],
        Lemma::UnitSquareNegative => vec![unit_square_negative(&ctx)?],
        Lemma::StretchCd => vec![stretch_cd(&ctx)?],
        Lemma::RegionELowQ => vec![region_e_low_q(&ctx)?],
        Lemma::CliqueMinusEdge => vec![clique_minus_edge(&ctx)?.0],
        Lemma::CliqueToBOrG => vec![clique_to_b_or_g(&ctx)?],
        Lemma::RegionFQ01 => vec![region_f_small_q(&ctx, false)?],
        Lemma::RegionFQ12 => vec![region_f_small_q(&ctx, true)?],
        Lemma::Petersen => vec![petersen_lemma(&ctx)?],
    };
    Ok(out)
}

fn escape_from(ctx: &Ctx, part: &Part) -> Result<Part> {
    let escaped = part.ser(part, &ctx.q)?;
    let pt = escaped.point(&ctx.q)?;
    ctx.ensure(pt.y > Rational::one(), "y > 1", &pt)?;
    Ok(escaped)
}

fn escape_left(ctx: &Ctx) -> Result<Construction> {
    let (p, q) = (&ctx.p, &ctx.q);
    ctx.require(q.is_positive(), || format!("q = {q} is not positive"))?;
    ctx.require(p.x < int(-1), || format!("x = {} is not below -1", p.x))?;
    ctx.built("escape", &escape_from(ctx, &Part::leaf(p))?)
}

/// Checks the shared postcondition of the region-B constructions.
fn region_b_pair(ctx: &Ctx, inner: &Part, outer: &Part) -> Result<Vec<Construction>> {
    let a = ctx.built("inner", inner)?;
    let b = ctx.built("outer", outer)?;
    let one = Rational::one();
    ctx.ensure(
        a.point.y > -one.clone() && a.point.y.is_negative(),
        "-1 < y < 0",
        &a.point,
    )?;
    ctx.ensure(abs(&b.point.y) > one, "|y| > 1", &b.point)?;
    Ok(vec![a, b])
}

fn region_b1(ctx: &Ctx) -> Result<Vec<Construction>> {
    let (p, q) = (&ctx.p, &ctx.q);
    ctx.require(p.x < int(-1) && p.y < int(-1), || {
        format!("{p} is not in x < -1, y < -1")
    })?;
    let ax = abs(&p.x);
    let j = smallest(1, 2, |j| pow(&ax, i64::from(j)) + Rational::one() > *q)?;
    let leaf = Part::leaf(p);
    let lifted = leaf.stretch(j, q)?;
    let yl = lifted.point(q)?.y;
    ctx.ensure(
        yl.is_positive() && yl < Rational::one(),
        "0 < y < 1",
        &lifted.point(q)?,
    )?;
    let k = shrink_below_one(&p.y, &yl)?;
    let inner = leaf.par(&lifted.thicken(k));
    region_b_pair(ctx, &inner, &leaf)
}

fn region_b2(ctx: &Ctx) -> Result<Vec<Construction>> {
    let (p, q) = (&ctx.p, &ctx.q);
    ctx.require(p.x < int(-1) && p.y == int(-1), || {
        format!("{p} is not in x < -1, y = -1")
    })?;
    let ax = abs(&p.x);
    let j = smallest(1, 2, |j| {
        q / (pow(&ax, i64::from(j)) + Rational::one()) < Rational::one()
    })?;
    let leaf = Part::leaf(p);
    let lifted = leaf.stretch(j, q)?;
    let inner = lifted.par(&leaf);
    let outer = escape_from(ctx, &leaf)?;
    region_b_pair(ctx, &inner, &outer)
}

fn region_b3(ctx: &Ctx) -> Result<Vec<Construction>> {
    let p = &ctx.p;
    ctx.require(p.x < int(-1) && p.y > int(-1) && p.y.is_negative(), || {
        format!("{p} is not in x < -1, -1 < y < 0")
    })?;
    let leaf = Part::leaf(p);
    let outer = escape_from(ctx, &leaf)?;
    region_b_pair(ctx, &leaf, &outer)
}

fn region_b4(ctx: &Ctx) -> Result<Vec<Construction>> {
    let (p, q) = (&ctx.p, &ctx.q);
    ctx.require(p.x >= int(-1) && p.x.is_negative() && p.y < int(-1), || {
        format!("{p} is not in -1 <= x < 0, y < -1")
    })?;
    let leaf = Part::leaf(p);
    let doubled = leaf.thicken(2);
    let xa = doubled.point(q)?.x;
    let ax = abs(&p.x);
    let j = smallest(1, 1, |j| {
        &ax * pow(&xa, i64::from(j)) + Rational::one() > *q
    })?;
    let bridge = leaf.ser(&doubled.stretch(j, q)?, q)?;
    let yb = bridge.point(q)?.y;
    ctx.ensure(
        yb.is_positive() && yb < Rational::one(),
        "0 < y < 1",
        &bridge.point(q)?,
    )?;
    let k = shrink_below_one(&p.y, &yb)?;
    let inner = leaf.par(&bridge.thicken(k));
    region_b_pair(ctx, &inner, &leaf)
}

fn diamond_part(p: &PlanePoint) -> Result<Part> {
    let run = diamond_iterate(p, DIAMOND_CAP)?;
    Ok(Part {
        w: run.point.gamma(),
        expr: run.expr,
    })
}

fn diamond_lemma(ctx: &Ctx) -> Result<Construction> {
    let part = diamond_part(&ctx.p)?;
    let c = ctx.built("escape", &part)?;
    ctx.ensure(c.point.y > Rational::one(), "y > 1", &c.point)?;
    Ok(c)
}

fn triangle_below_part(ctx: &Ctx) -> Result<Part> {
    let (p, q) = (&ctx.p, &ctx.q);
    let one = Rational::one();
    ctx.require(p.x > -one.clone(), || {
        format!("x = {} is not above -1", p.x)
    })?;
    ctx.require(p.y < -(&p.x * int(2)) - &one, || {
        format!("{p} is not below y = -1 - 2x")
    })?;
    let leaf = Part::leaf(p);
    let down = leaf.ser(&leaf, q)?;
    let dp = down.point(q)?;
    ctx.ensure(dp.y < -one.clone(), "y < -1 after the 2-stretch", &dp)?;
    let up = down.par(&down);
    let up_point = up.point(q)?;
    ctx.ensure(up_point.y > one, "y > 1", &up_point)?;
    Ok(up)
}

fn triangle_below(ctx: &Ctx) -> Result<Construction> {
    ctx.built("escape", &triangle_below_part(ctx)?)
}

fn triangle_left(ctx: &Ctx) -> Result<Construction> {
    let (p, q) = (&ctx.p, &ctx.q);
    let one = Rational::one();
    ctx.require(p.y > -one.clone(), || {
        format!("y = {} is not above -1", p.y)
    })?;
    ctx.require(p.x < -(&p.y * int(2)) - &one, || {
        format!("{p} is not left of x = -1 - 2y")
    })?;
    ctx.require(q.is_positive(), || format!("q = {q} is not positive"))?;
    let leaf = Part::leaf(p);
    let left = leaf.par(&leaf);
    let lp = left.point(q)?;
    ctx.ensure(lp.x < -one, "x < -1 after the 2-thickening", &lp)?;
    ctx.built("escape", &escape_from(ctx, &left)?)
}

fn unit_square_negative(ctx: &Ctx) -> Result<Construction> {
    let (p, q) = (&ctx.p, &ctx.q);
    let one = Rational::one();
    let two = int(2);
    ctx.require(max(&abs(&p.x), &abs(&p.y)) < one, || {
        format!("{p} is not in the open unit square")
    })?;
    ctx.require(q > &one, || format!("q = {q} is not above 1"))?;
    let below = p.y < -(&p.x * &two) - &one;
    let left = p.x < -(&p.y * &two) - &one;
    ctx.require(q > &frac(32, 27) || below || left, || {
        format!("q = {q} <= 32/27 and {p} lies in neither triangle")
    })?;
    let leaf = Part::leaf(p);
    if p.y.is_negative() {
        return ctx.built("target", &leaf);
    }
    // now 0 <= y < 1, which forces -1 < x < 0
    let high = if below {
        triangle_below_part(ctx)?
    } else if q > &frac(32, 27) {
        diamond_part(p)?
    } else {
        return Err(Error::Hypothesis {
            construction: ctx.lemma.name(),
            failed: format!("{p} has y >= 0 but only the left-triangle condition holds"),
        });
    };
    let hp = high.point(q)?;
    ctx.ensure(
        hp.y > one.clone() && hp.x > one.clone(),
        "x > 1 and y > 1",
        &hp,
    )?;

    // even j with x^j < 1 − q/4; then aim x'' into ((1 − q/2)/x^j, 1/x^j)
    let limit = &one - q / int(4);
    let j = smallest(2, 2, |j| pow(&p.x, i64::from(j)) < limit)?;
    let xj = pow(&p.x, i64::from(j));
    let target = &limit / &xj;
    let tol = q / int(8) / &xj;
    let doubled = high.thicken(2);
    let found = approach_from(
        q,
        &[
            (high.w.clone(), high.expr.clone()),
            (doubled.w, doubled.expr),
        ],
        &target,
        &tol,
        Coordinate::X,
        DEFAULT_DEPTH,
        DEFAULT_WIDTH,
    )?
    .ok_or_else(|| {
        Error::Certification(format!(
            "{}: no combination of {hp} reached x in [{}, {}]",
            ctx.lemma.name(),
            &target - &tol,
            target
        ))
    })?;
    let aimed = Part {
        w: found.point.gamma(),
        expr: found.expr,
    };
    let dipped = aimed.ser(&leaf.stretch(j, q)?, q)?;
    let dp = dipped.point(q)?;
    ctx.ensure(dp.y < -one.clone(), "y < -1 after the series step", &dp)?;

    let factor = if p.y.is_zero() {
        // weight −1 would annihilate the parallel product; use a point with 0 < y < 1
        let i = smallest(1, 1, |i| &p.x * pow(&hp.x, i64::from(i)) < &one - q)?;
        leaf.ser(&high.stretch(i, q)?, q)?
    } else {
        leaf.clone()
    };
    let fy = factor.point(q)?.y;
    ctx.ensure(
        fy.is_positive() && fy < one.clone(),
        "0 < y < 1 for the shrinking factor",
        &factor.point(q)?,
    )?;
    let l = shrink_below_one(&dp.y, &fy)?;
    let result = dipped.par(&factor.thicken(l));
    let c = ctx.built("target", &result)?;
    ctx.ensure(
        c.point.y > -one && c.point.y.is_negative(),
        "-1 < y < 0",
        &c.point,
    )?;
    Ok(c)
}

fn stretch_cd(ctx: &Ctx) -> Result<Construction> {
    let (p, q) = (&ctx.p, &ctx.q);
    let one = Rational::one();
    let in_c = p.y > one && p.x < -one.clone();
    let in_d = p.x > one && p.y < -one.clone();
    ctx.require(in_c || in_d, || {
        format!("{p} is in neither region C nor region D")
    })?;
    let aq = abs(q);
    let j = smallest(2, 2, |j| pow(&p.x, i64::from(j)) - &one > aq)?;
    let c = ctx.built("target", &Part::leaf(p).stretch(j, q)?)?;
    ctx.ensure(
        c.point.y.is_positive() && c.point.y < one,
        "0 < y < 1",
        &c.point,
    )?;
    Ok(c)
}

fn region_e_low_q(ctx: &Ctx) -> Result<Construction> {
    let (p, q) = (&ctx.p, &ctx.q);
    let one = Rational::one();
    ctx.require(p.x < -one.clone() && p.y.is_positive() && p.y < one, || {
        format!("{p} is not in x < -1, 0 < y < 1")
    })?;
    ctx.require(q > &one && q < &int(2), || {
        format!("q = {q} is not in (1, 2)")
    })?;
    let bound = &one - q / int(2);
    let j = smallest(1, 1, |j| pow(&p.y, i64::from(j)) < bound)?;
    let leaf = Part::leaf(p);
    let folded = leaf.thicken(j);
    let xf = folded.point(q)?.x;
    ctx.ensure(
        xf > -one.clone() && xf.is_negative(),
        "-1 < x < 0 after thickening",
        &folded.point(q)?,
    )?;
    let k = smallest(1, 2, |k| {
        let v = &p.x * pow(&xf, i64::from(k));
        v.is_positive() && v < bound
    })?;
    let c = ctx.built("target", &leaf.ser(&folded.stretch(k, q)?, q)?)?;
    ctx.ensure(
        c.point.y > -one && c.point.y.is_negative(),
        "-1 < y < 0",
        &c.point,
    )?;
    Ok(c)
}

fn clique_minus_edge(ctx: &Ctx) -> Result<(Construction, Part)> {
    let (p, q) = (&ctx.p, &ctx.q);
    let one = Rational::one();
    ctx.require(p.x < -one.clone() && p.y.is_positive() && p.y < one, || {
        format!("{p} is not in x < -1, 0 < y < 1")
    })?;
    ctx.require(q > &int(2) && !is_integer(q), || {
        format!("q = {q} is not a non-integer above 2")
    })?;
    let n = usize::try_from(floor(q)).expect("q is small") + 2;
    let graph = families::complete_minus_edge(n);
    let leaf = Part::leaf(p);
    for k in 1..=TEMPLATE_ROUNDS {
        // each template edge gets weight y^k − 1 = −1 + δ
        let edge = leaf.thicken(k);
        let template = Template {
            graph: graph.clone(),
            s: 0,
            t: 1,
        };
        let children = vec![edge.expr.clone(); graph.edge_count()];
        let expr = ShiftExpr::compose(template, children)?;
        let Ok(w) = expr.weight(q) else { continue };
        if w < -one.clone() {
            let part = Part { expr, w };
            let c = ctx.built("target", &part)?;
            ctx.ensure(c.point.y.is_negative(), "y < 0", &c.point)?;
            return Ok((c, part));
        }
    }
    Err(Error::CapExceeded {
        what: "clique template refinement rounds",
        size: TEMPLATE_ROUNDS as usize + 1,
        cap: TEMPLATE_ROUNDS as usize,
    })
}

fn clique_to_b_or_g(ctx: &Ctx) -> Result<Construction> {
    let (first, part) = clique_minus_edge(ctx)?;
    let in_b_or_g = |pt: &PlanePoint| {
        matches!(
            classify(pt).region,
            Region::B | Region::BSpecial | Region::G
        )
    };
    if in_b_or_g(&first.point) {
        return Ok(first);
    }
    let p = &ctx.p;
    let k = shrink_below_one(&first.point.y, &p.y)?;
    let c = ctx.built("target", &part.par(&Part::leaf(p).thicken(k)))?;
    ctx.ensure(in_b_or_g(&c.point), "membership in region B or G", &c.point)?;
    Ok(c)
}

fn region_f_small_q(ctx: &Ctx, upper: bool) -> Result<Construction> {
    let (p, q) = (&ctx.p, &ctx.q);
    let one = Rational::one();
    let two = int(2);
    ctx.require(p.x.is_positive() && p.x < one && p.y < -one.clone(), || {
        format!("{p} is not in 0 < x < 1, y < -1")
    })?;
    let (bound, lo, hi, want) = if upper {
        ctx.require(q > &one && q < &two, || format!("q = {q} is not in (1, 2)"))?;
        (
            &one - q / &two,
            -one.clone(),
            Rational::zero(),
            "-1 < y < 0",
        )
    } else {
        ctx.require(q.is_positive() && q < &one, || {
            format!("q = {q} is not in (0, 1)")
        })?;
        (&one - q, Rational::zero(), one.clone(), "0 < y < 1")
    };
    let j = smallest(1, 1, |j| pow(&p.x, i64::from(j)) < bound)?;
    let c = ctx.built("target", &Part::leaf(p).stretch(j, q)?)?;
    ctx.ensure(c.point.y > lo && c.point.y < hi, want, &c.point)?;
    Ok(c)
}

fn petersen_lemma(ctx: &Ctx) -> Result<Construction> {
    let (p, q) = (&ctx.p, &ctx.q);
    let one = Rational::one();
    ctx.require(p.x.is_positive() && p.x < one && p.y < -one.clone(), || {
        format!("{p} is not in 0 < x < 1, y < -1")
    })?;
    ctx.require(q > &int(2) && q < &int(4) && !is_integer(q), || {
        format!("q = {q} is not a non-integer in (2, 4)")
    })?;
    let full = families::petersen();
    let graph = full.delete(0)?;
    let e0 = full.edge(0)?;
    let leaf = Part::leaf(p);
    for k in 1..=TEMPLATE_ROUNDS {
        // a k-stretch has weight −q − δ with δ = q·x^k / (1 − x^k)
        let edge = leaf.stretch(k, q)?;
        let template = Template {
            graph: graph.clone(),
            s: e0.u,
            t: e0.v,
        };
        let expr = ShiftExpr::compose(template, vec![edge.expr.clone(); graph.edge_count()])?;
        let Ok(w) = expr.weight(q) else { continue };
        if w.is_negative() && w > -q.clone() {
            let c = ctx.built("target", &Part { expr, w })?;
            ctx.ensure(c.point.x.is_negative(), "x < 0", &c.point)?;
            return Ok(c);
        }
    }
    Err(Error::CapExceeded {
        what: "petersen template refinement rounds",
        size: TEMPLATE_ROUNDS as usize + 1,
        cap: TEMPLATE_ROUNDS as usize,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(p: PlanePoint, lemma: Lemma) -> Vec<Construction> {
        let out = construct(&p, lemma).unwrap_or_else(|e| panic!("{lemma} at {p}: {e}"));
        for c in &out {
            c.certify(512)
                .unwrap_or_else(|e| panic!("{lemma} at {p}: {e}"));
        }
        out
    }

    #[test]
    fn names_round_trip() {
        for l in Lemma::ALL {
            assert_eq!(l.name().parse::<Lemma>().unwrap(), l);
        }
        assert!("nope".parse::<Lemma>().is_err());
    }

    #[test]
    fn region_b_family() {
        for (p, l) in [
            (PlanePoint::new(int(-2), int(-3)), Lemma::RegionB1),
            (PlanePoint::new(frac(-5, 4), frac(-7, 2)), Lemma::RegionB1),
            (PlanePoint::new(int(-3), int(-1)), Lemma::RegionB2),
            (PlanePoint::new(frac(-3, 2), frac(-1, 2)), Lemma::RegionB3),
            (PlanePoint::new(frac(-1, 2), int(-3)), Lemma::RegionB4),
            (PlanePoint::new(int(-1), frac(-3, 2)), Lemma::RegionB4),
        ] {
            let out = run(p, l);
            assert_eq!(out.len(), 2);
        }
    }

    #[test]
    fn escapes() {
        let c = &run(PlanePoint::new(int(-2), frac(1, 2)), Lemma::EscapeLeft)[0];
        assert!(c.point.y > int(1));
        let c = &run(
            PlanePoint::new(frac(-1, 4), frac(-3, 4)),
            Lemma::TriangleBelow,
        )[0];
        assert!(c.point.y > int(1));
        let c = &run(
            PlanePoint::new(frac(-3, 4), frac(-1, 4)),
            Lemma::TriangleLeft,
        )[0];
        assert!(c.point.y > int(1));
        let c = &run(PlanePoint::new(frac(-1, 2), frac(-1, 2)), Lemma::Diamond)[0];
        assert!(c.point.y > int(1));
    }

    #[test]
    fn hypotheses_are_checked() {
        let bad = PlanePoint::new(frac(1, 2), frac(1, 2));
        for l in Lemma::ALL {
            assert!(
                matches!(construct(&bad, l), Err(Error::Hypothesis { .. })),
                "{l} accepted {bad}"
            );
        }
    }

    #[test]
    fn unit_square_cases() {
        // already negative
        run(
            PlanePoint::new(frac(-1, 2), frac(-1, 3)),
            Lemma::UnitSquareNegative,
        );
        // 0 < y < 1 through the diamond
        let c = &run(
            PlanePoint::new(frac(-3, 4), frac(1, 4)),
            Lemma::UnitSquareNegative,
        )[0];
        assert!(c.point.y.is_negative() && c.point.y > int(-1));
        // y = 0 needs the auxiliary shrinking factor
        let c = &run(
            PlanePoint::new(frac(-1, 2), int(0)),
            Lemma::UnitSquareNegative,
        )[0];
        assert!(c.point.y.is_negative() && c.point.y > int(-1));
    }

    #[test]
    fn regions_c_d_e_f() {
        for p in [
            PlanePoint::new(int(-2), int(3)),
            PlanePoint::new(int(3), int(-2)),
        ] {
            let c = &run(p, Lemma::StretchCd)[0];
            assert!(c.point.y.is_positive() && c.point.y < int(1));
        }
        // x < −1, 0 < y < 1, q = 3/2
        run(PlanePoint::new(int(-2), frac(1, 2)), Lemma::RegionELowQ);
        // 0 < x < 1, y < −1: q = 3/4 and q = 3/2
        run(PlanePoint::new(frac(3, 4), int(-2)), Lemma::RegionFQ01);
        run(PlanePoint::new(frac(1, 2), int(-2)), Lemma::RegionFQ12);
    }

    #[test]
    fn template_constructions() {
        // q = (−4)(−2/3) = 8/3
        let p = PlanePoint::new(int(-3), frac(1, 3));
        let c = &run(p.clone(), Lemma::CliqueMinusEdge)[0];
        assert!(c.point.y.is_negative());
        let c = &run(p, Lemma::CliqueToBOrG)[0];
        assert!(matches!(classify(&c.point).region, Region::B | Region::G));
        // 0 < x < 1, y < −1 with q = 5/2
        let c = &run(PlanePoint::new(frac(1, 2), int(-4)), Lemma::Petersen)[0];
        assert!(c.point.x.is_negative());
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(48))]
        #[test]
        fn constructions_are_sound(a in -24i64..=24, b in -24i64..=24) {
            let p = PlanePoint::new(frac(a, 6), frac(b, 6));
            for l in Lemma::ALL {
                match construct(&p, l) {
                    Ok(out) => {
                        for c in &out {
                            proptest::prop_assert_eq!(c.point.q(), p.q());
                            c.certify(256).map_err(|e| {
                                proptest::test_runner::TestCaseError::fail(format!("{l} at {p}: {e}"))
                            })?;
                        }
                    }
                    Err(Error::Hypothesis { .. }) => {}
                    Err(e) => proptest::prop_assert!(false, "{} at {}: {}", l, p, e),
                }
            }
        }
    }
}
