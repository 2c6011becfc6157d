//! Counting minimum-cardinality `(s,t)`-cuts with nothing but a sign oracle for `Z`.
//!
//! Every edge of `G` gets a heavy weight `M`, and an extra `s–t` edge gets `γ' = −1 − σε`
//! (`σ = +1` for `q > 1`, `σ = −1` for `q < 1`). Then
//! `Z(G') = −σε·Z_st + Z_s|t·(1 − (1 + σε)/q)` is affine in `ε`, so bisecting on the sign
//! of `Z(G')` brackets its root `ε*`. At the root `C ≈ ε*·M^k / |q − 1 − σε*|` up to a
//! factor `(1 ± δ)/(1 ∓ δ)`, and for large `M` exactly one pair `(k, C)` is consistent
//! with the bracket.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::rational::{abs, max, min, pow};
use crate::arith::{frac, int, Rational};
use crate::error::{Error, Result};
use crate::eval::{z_multivariate, z_two_terminal, BRUTE_EDGE_CAP};
use crate::gadget::{self, Coordinate, ShiftExpr};
use crate::graph::{Multigraph, UnionFind, WeightFunction};
use crate::region::PlanePoint;
use crate::sign::SignValue;

/// Bound on oracle queries in one run.
pub const QUERY_CAP: usize = 20_000;
const THICKENING_CAP: u32 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// `q > 1`: `γ' = −1 − ε`, `ε ∈ (M^{−2m}, min(1, q − 1))`.
    AboveOne,
    /// `0 < q < 1`: `γ' = −1 + ε`, `ε ∈ (M^{−2m}, 1 − q)`.
    BelowOne,
    /// `q < 0`: `γ' = −1 + ε`, `ε ∈ (M^{−2m}, 1)`.
    Negative,
}

impl Branch {
    fn of(q: &Rational) -> Result<Self> {
        if q.is_zero() || q.is_one() {
            return Err(Error::Precondition(format!("q = {q} must avoid 0 and 1")));
        }
        Ok(if q > &Rational::one() {
            Branch::AboveOne
        } else if q.is_positive() {
            Branch::BelowOne
        } else {
            Branch::Negative
        })
    }

    /// `σ` in `γ' = −1 − σε`.
    fn direction(self) -> Rational {
        match self {
            Branch::AboveOne => Rational::one(),
            _ => -Rational::one(),
        }
    }

    /// Signs of `Z(G')` at the low and high ends of the search interval.
    fn endpoint_signs(self) -> (SignValue, SignValue) {
        match self {
            Branch::BelowOne => (SignValue::Negative, SignValue::Positive),
            _ => (SignValue::Positive, SignValue::Negative),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionParams {
    #[serde(with = "crate::arith::rational::serde_str")]
    pub q: Rational,
    pub branch: Branch,
    pub edges: usize,
    pub vertices: usize,
    /// Weight `γ₂` whose `h`-thickening gives the heavy weight.
    #[serde(with = "crate::arith::rational::serde_str")]
    pub heavy_base: Rational,
    pub h: u32,
    /// `M = (γ₂ + 1)^h − 1`.
    #[serde(rename = "M", with = "crate::arith::rational::serde_str")]
    pub heavy: Rational,
    #[serde(with = "crate::arith::rational::serde_str")]
    pub delta: Rational,
    #[serde(with = "crate::arith::rational::serde_str")]
    pub eps_lo: Rational,
    #[serde(with = "crate::arith::rational::serde_str")]
    pub eps_hi: Rational,
    /// `M^0, …, M^m`.
    #[serde(skip)]
    heavy_powers: Vec<Rational>,
}

impl ReductionParams {
    /// Picks the smallest `h` for which `M = (γ₂+1)^h − 1` satisfies
    /// `M > (8·max(|q|, 1/|q|))^m`, `M > 2/|q − 1|`, `M > 4^m` and
    /// `δ = 2^m·max(|q|,1)^n / (M·min(|q|,1)) ≤ 4^{−m}/16`.
    pub fn new(g: &Multigraph, q: &Rational, heavy_base: &Rational) -> Result<Self> {
        let branch = Branch::of(q)?;
        let one = Rational::one();
        if heavy_base >= &int(-2) && heavy_base <= &Rational::zero() {
            return Err(Error::Precondition(format!(
                "heavy base weight {heavy_base} lies in [-2, 0]"
            )));
        }
        let (m, n) = (g.edge_count(), g.vertex_count());
        let mi = m as i64;
        let aq = abs(q);
        let big_q = max(&aq, &one);
        let small_q = min(&aq, &one);
        let spread = max(&aq, &(&one / &aq));
        let floor_m = max(
            &max(&pow(&(spread * int(8)), mi), &(int(2) / abs(&(q - &one)))),
            &pow(&int(4), mi),
        );
        let numerator = pow(&int(2), mi) * pow(&big_q, n as i64);
        let delta_cap = pow(&int(4), -mi) / int(16);
        let y2 = heavy_base + &one;
        let mut power = one.clone();
        for h in 1..=THICKENING_CAP {
            power *= &y2;
            let heavy = &power - &one;
            if heavy <= floor_m {
                continue;
            }
            let delta = &numerator / (&heavy * &small_q);
            if delta > delta_cap {
                continue;
            }
            let eps_lo = pow(&heavy, -2 * mi);
            let eps_hi = match branch {
                Branch::AboveOne => min(&one, &(q - &one)),
                Branch::BelowOne => &one - q,
                Branch::Negative => one.clone(),
            };
            return Ok(ReductionParams {
                q: q.clone(),
                branch,
                edges: m,
                vertices: n,
                heavy_base: heavy_base.clone(),
                h,
                delta,
                eps_lo,
                eps_hi,
                heavy_powers: (0..=m).map(|k| pow(&heavy, k as i64)).collect(),
                heavy,
            });
        }
        Err(Error::CapExceeded {
            what: "thickening exponent",
            size: THICKENING_CAP as usize + 1,
            cap: THICKENING_CAP as usize,
        })
    }

    /// `γ' = −1 − σε`.
    pub fn extra_weight(&self, eps: &Rational) -> Rational {
        -Rational::one() - self.branch.direction() * eps
    }

    /// The unique `(k, C)` consistent with a root in `[a, b]`, if the bracket forces one.
    /// Products are formed from raw numerators and denominators, skipping normalisation.
    fn recover(&self, a: &Rational, b: &Rational) -> Option<CutCount> {
        let one = Rational::one();
        let direction = self.branch.direction();
        let denom_a = abs(&(&self.q - &one - &direction * a));
        let denom_b = abs(&(&self.q - &one - &direction * b));
        if denom_a.is_zero() || denom_b.is_zero() {
            return None;
        }
        let (lo_shrink, hi_shrink) = (&one - &self.delta, &one + &self.delta);
        let cap = BigInt::one() << self.edges;
        let mut found = Vec::new();
        for (k, mk) in self.heavy_powers.iter().enumerate().skip(1) {
            let lo = ceil_of(&[a, mk, &lo_shrink], &[&denom_a, &hi_shrink]).max(BigInt::one());
            let hi = floor_of(&[b, mk, &hi_shrink], &[&denom_b, &lo_shrink]).min(cap.clone());
            if lo <= hi {
                found.push((k, lo, hi));
            }
        }
        match found.as_slice() {
            [(k, lo, hi)] if lo == hi => Some(CutCount {
                k: *k,
                count: lo.to_u64()?,
            }),
            _ => None,
        }
    }

    /// `ρ = 2^m·max(|q|,1)^m·M^m·width`, the bound on `|Z(G')|` at the bracket ends.
    pub fn rho(&self, width: &Rational) -> Rational {
        let mi = self.edges as i64;
        pow(&int(2), mi)
            * pow(&max(&abs(&self.q), &Rational::one()), mi)
            * pow(&self.heavy, mi)
            * width
    }
}

/// `(Π top) / (Π bottom)` as an unreduced numerator and positive denominator.
fn raw_quotient(top: &[&Rational], bottom: &[&Rational]) -> (BigInt, BigInt) {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for r in top {
        num *= r.numer();
        den *= r.denom();
    }
    for r in bottom {
        num *= r.denom();
        den *= r.numer();
    }
    if den.is_negative() {
        (-num, -den)
    } else {
        (num, den)
    }
}

fn floor_of(top: &[&Rational], bottom: &[&Rational]) -> BigInt {
    let (num, den) = raw_quotient(top, bottom);
    num.div_floor(&den)
}

fn ceil_of(top: &[&Rational], bottom: &[&Rational]) -> BigInt {
    let (num, den) = raw_quotient(top, bottom);
    num.div_ceil(&den)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CutCount {
    pub k: usize,
    #[serde(rename = "C")]
    pub count: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleMode {
    /// The oracle sees `G'` with arbitrary rational weights.
    Idealized,
    /// Heavy edges are `h`-thickenings and `γ'` is a series-parallel gadget, so every
    /// queried edge carries one of two fixed weights.
    Gadget,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReductionReport {
    pub mode: OracleMode,
    pub params: ReductionParams,
    pub queries: usize,
    #[serde(with = "crate::arith::rational::serde_str")]
    pub bracket_lo: Rational,
    #[serde(with = "crate::arith::rational::serde_str")]
    pub bracket_hi: Rational,
    #[serde(with = "crate::arith::rational::serde_str")]
    pub precision: Rational,
    #[serde(with = "crate::arith::rational::serde_str")]
    pub rho: Rational,
    pub endpoint_signs: (SignValue, SignValue),
    pub count: CutCount,
}

fn check_instance(g: &Multigraph, s: usize, t: usize) -> Result<()> {
    let n = g.vertex_count();
    for v in [s, t] {
        if v >= n {
            return Err(Error::UnknownVertex(v));
        }
    }
    if s == t {
        return Err(Error::Precondition("terminals must differ".into()));
    }
    if !g.connects(s, t) {
        return Err(Error::Disconnected { s, t });
    }
    Ok(())
}

/// Exhaustive count over edge subsets (the removed edges).
pub fn count_min_cuts_brute(g: &Multigraph, s: usize, t: usize) -> Result<CutCount> {
    check_instance(g, s, t)?;
    let m = g.edge_count();
    if m > BRUTE_EDGE_CAP {
        return Err(Error::CapExceeded {
            what: "edges for cut enumeration",
            size: m,
            cap: BRUTE_EDGE_CAP,
        });
    }
    let edges = g.edges();
    let mut best: Option<CutCount> = None;
    for removed in 0u64..(1 << m) {
        let size = removed.count_ones() as usize;
        if best.is_some_and(|b| size > b.k) {
            continue;
        }
        let mut uf = UnionFind::new(g.vertex_count());
        for (i, e) in edges.iter().enumerate() {
            if removed >> i & 1 == 0 {
                uf.union(e.u, e.v);
            }
        }
        if uf.find(s) == uf.find(t) {
            continue;
        }
        best = match best {
            Some(b) if b.k == size => Some(CutCount {
                k: size,
                count: b.count + 1,
            }),
            _ => Some(CutCount { k: size, count: 1 }),
        };
    }
    Ok(best.expect("removing every edge separates s and t"))
}

fn check_reduction_instance(g: &Multigraph, s: usize, t: usize) -> Result<()> {
    check_instance(g, s, t)?;
    if !g.is_connected() {
        return Err(Error::Precondition("the graph must be connected".into()));
    }
    if g.edges()
        .iter()
        .any(|e| (e.u, e.v) == (s, t) || (e.u, e.v) == (t, s))
    {
        return Err(Error::Precondition("the graph has an s-t edge".into()));
    }
    Ok(())
}

/// `G` with weight `M` everywhere plus an `s–t` edge of weight `γ'`; the extra edge is last.
fn augmented(
    g: &Multigraph,
    s: usize,
    t: usize,
    heavy: &Rational,
    extra: &Rational,
) -> Result<(Multigraph, WeightFunction)> {
    let mut h = g.clone();
    let mut w = WeightFunction::uniform(g, heavy);
    let id = h.add_edge(s, t)?;
    w.insert(id, extra.clone());
    Ok((h, w))
}

/// A sign oracle answering with the exact sign of `Z(G; q, w)`.
pub fn idealized_oracle(
    q: &Rational,
) -> impl FnMut(&Multigraph, &WeightFunction) -> Result<SignValue> {
    let q = q.clone();
    move |g, w| Ok(SignValue::of(&z_multivariate(g, &q, w)?))
}

type Probe<'a> = dyn FnMut(&Rational, &Rational) -> Result<(Rational, SignValue)> + 'a;

/// Bisection on `ε`. `probe(ε, tol)` realises some `ε' ∈ [ε − tol, ε]` and returns it with
/// the sign of `Z(G')` there.
fn bisect(
    params: &ReductionParams,
    mode: OracleMode,
    probe: &mut Probe<'_>,
) -> Result<ReductionReport> {
    let (want_lo, want_hi) = params.branch.endpoint_signs();
    let span = &params.eps_hi - &params.eps_lo;
    let (mut a, sign_lo) = probe(&params.eps_lo, &(&params.eps_lo / int(2)))?;
    let (mut b, sign_hi) = probe(&params.eps_hi, &(&span / int(1000)))?;
    let mut queries = 2;
    if (sign_lo, sign_hi) != (want_lo, want_hi) {
        return Err(Error::OracleInconsistent(format!(
            "expected signs ({want_lo:?}, {want_hi:?}) at eps = {} and {}, got ({sign_lo:?}, {sign_hi:?})",
            params.eps_lo, params.eps_hi
        )));
    }
    let count = loop {
        if let Some(c) = params.recover(&a, &b) {
            break c;
        }
        if queries >= QUERY_CAP {
            return Err(Error::Recovery(format!(
                "no unique (k, C) after {queries} queries; bracket [{a}, {b}]"
            )));
        }
        let width = &b - &a;
        let mid = (&a + &b) / int(2);
        let (e, sign) = probe(&mid, &(&width / int(6)))?;
        queries += 1;
        if e <= a || e >= b {
            return Err(Error::Recovery(format!(
                "probe at {e} left the bracket [{a}, {b}]"
            )));
        }
        match sign {
            SignValue::Zero => {
                a = e.clone();
                b = e;
            }
            s if s == want_lo => a = e,
            _ => b = e,
        }
    };
    let precision = &b - &a;
    Ok(ReductionReport {
        mode,
        rho: params.rho(&precision),
        params: params.clone(),
        queries,
        bracket_lo: a,
        bracket_hi: b,
        precision,
        endpoint_signs: (sign_lo, sign_hi),
        count,
    })
}

/// Recovers `(k, C)` by querying `oracle` on `G'` with exact rational weights.
pub fn count_min_cuts_via_sign(
    g: &Multigraph,
    s: usize,
    t: usize,
    q: &Rational,
    oracle: &mut dyn FnMut(&Multigraph, &WeightFunction) -> Result<SignValue>,
) -> Result<ReductionReport> {
    check_reduction_instance(g, s, t)?;
    let params = ReductionParams::new(g, q, &Rational::one())?;
    let mut probe = |eps: &Rational, _tol: &Rational| {
        let (h, w) = augmented(g, s, t, &params.heavy, &params.extra_weight(eps))?;
        Ok((eps.clone(), oracle(&h, &w)?))
    };
    bisect(&params, OracleMode::Idealized, &mut probe)
}

/// Weights `(γ₁, γ₂)` used by the gadget mode for each branch.
pub fn gadget_weights(branch: Branch) -> (Rational, Rational) {
    match branch {
        Branch::AboveOne => (frac(-3, 2), Rational::one()),
        _ => (frac(-1, 2), Rational::one()),
    }
}

/// Best-effort variant in which the oracle only ever sees the two weights of
/// [`gadget_weights`]: heavy edges are literal `h`-thickenings of `γ₂`, and `γ'` is a
/// series-parallel gadget found by bounded search. Fails with [`Error::Recovery`] once the
/// bracket is narrower than the search can resolve.
pub fn count_min_cuts_gadget(
    g: &Multigraph,
    s: usize,
    t: usize,
    q: &Rational,
    oracle: &mut dyn FnMut(&Multigraph, &WeightFunction) -> Result<SignValue>,
) -> Result<ReductionReport> {
    check_reduction_instance(g, s, t)?;
    let branch = Branch::of(q)?;
    let (light, heavy_base) = gadget_weights(branch);
    let params = ReductionParams::new(g, q, &heavy_base)?;
    let one = Rational::one();
    let y1 = &light + &one;
    let high = PlanePoint::from_q_gamma(q, &heavy_base);
    let mut seeds = vec![(heavy_base.clone(), ShiftExpr::leaf(heavy_base.clone()))];
    if branch == Branch::Negative {
        seeds.push((light.clone(), ShiftExpr::leaf(light.clone())));
    }
    let odd_only = branch == Branch::AboveOne;

    // G with each edge an h-bundle of γ₂, plus the s–t slot as the last edge
    let mut host = Multigraph::new(g.vertex_count());
    let mut host_w = WeightFunction::new();
    for e in g.edges() {
        for _ in 0..params.h {
            let id = host.add_edge(e.u, e.v)?;
            host_w.insert(id, heavy_base.clone());
        }
    }
    let slot = host.add_edge(s, t)?;

    let mut probe = |eps: &Rational, tol: &Rational| -> Result<(Rational, SignValue)> {
        let ay = abs(&y1);
        let mut j = 1u32;
        while pow(&ay, i64::from(j)) >= *eps {
            j += if odd_only { 2 } else { 1 };
        }
        let tail = pow(&ay, i64::from(j + 2));
        let target = eps / &tail;
        let found = gadget::approach_from(
            q,
            &seeds,
            &target,
            &(tol / &tail),
            Coordinate::Y,
            gadget::DEFAULT_DEPTH,
            gadget::DEFAULT_WIDTH,
        )?
        .ok_or_else(|| {
            Error::Recovery(format!(
                "gadget search from {high} could not reach y in [{}, {target}]",
                &target - tol / &tail
            ))
        })?;
        let expr: Arc<ShiftExpr> = ShiftExpr::parallel(
            &found.expr,
            &ShiftExpr::thicken(&ShiftExpr::leaf(light.clone()), j + 2),
        );
        let realised = expr.weight(q)?;
        let eps_real = -(&realised + &one) / branch.direction();
        let gd = expr.expand(1 << 16)?;
        host_w.insert(slot, realised.clone());
        let (literal, literal_w) = gadget::substitute(&host, &host_w, slot, &gd)?;
        let raw = oracle(&literal, &literal_w)?;
        let scale = SignValue::of(&expr.scale(q)?);
        Ok((eps_real, sign_product(raw, scale)))
    };
    bisect(&params, OracleMode::Gadget, &mut probe)
}

fn sign_product(a: SignValue, b: SignValue) -> SignValue {
    use SignValue::*;
    match (a, b) {
        (Zero, _) | (_, Zero) => Zero,
        (x, y) if x == y => Positive,
        _ => Negative,
    }
}

/// The two estimates on `Z_st` and `Z_s|t` at uniform weight `M`, checked exactly against
/// the true cut data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FactCheck {
    /// `|Z_st − M^m·q| ≤ δ·M^m·|q|`.
    pub joined: bool,
    /// `C·M^{m−k}·q²·(1 − δ) ≤ Z_s|t ≤ C·M^{m−k}·q²·(1 + δ)`.
    pub separated: bool,
}

pub fn check_facts(
    g: &Multigraph,
    s: usize,
    t: usize,
    params: &ReductionParams,
    truth: CutCount,
) -> Result<FactCheck> {
    let q = &params.q;
    let one = Rational::one();
    let w = WeightFunction::uniform(g, &params.heavy);
    let split = z_two_terminal(g, s, t, q, &w)?;
    let mm = pow(&params.heavy, params.edges as i64);
    let joined = abs(&(&split.z_st - &mm * q)) <= &params.delta * &mm * abs(q);
    let core =
        int(truth.count as i64) * pow(&params.heavy, (params.edges - truth.k) as i64) * q * q;
    let separated = &core * (&one - &params.delta) <= split.z_s_bar_t
        && split.z_s_bar_t <= &core * (&one + &params.delta);
    Ok(FactCheck { joined, separated })
}
