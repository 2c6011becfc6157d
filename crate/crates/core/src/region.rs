//! Complexity status of every rational point of the `(x, y)` plane.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::rational::{abs, is_integer, max};
use crate::arith::{frac, int, Rational};
use crate::error::{Error, Result};

/// A point `(x, y)`; `q = (x−1)(y−1)` and `γ = y−1` are always derived.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PlanePoint {
    #[serde(with = "crate::arith::rational::serde_str")]
    pub x: Rational,
    #[serde(with = "crate::arith::rational::serde_str")]
    pub y: Rational,
}

impl PlanePoint {
    pub fn new(x: Rational, y: Rational) -> Self {
        PlanePoint { x, y }
    }

    pub fn ints(x: i64, y: i64) -> Self {
        PlanePoint::new(int(x), int(y))
    }

    pub fn q(&self) -> Rational {
        (&self.x - Rational::one()) * (&self.y - Rational::one())
    }

    pub fn gamma(&self) -> Rational {
        &self.y - Rational::one()
    }

    /// The point with the given `q` and edge weight `γ`, for `γ ≠ 0`.
    pub fn from_q_gamma(q: &Rational, gamma: &Rational) -> Self {
        PlanePoint::new(q / gamma + Rational::one(), gamma + Rational::one())
    }

    pub fn swapped(&self) -> Self {
        PlanePoint::new(self.y.clone(), self.x.clone())
    }
}

impl fmt::Display for PlanePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    A,
    B,
    #[serde(rename = "B-special")]
    BSpecial,
    C,
    D,
    E,
    F,
    #[serde(rename = "BE-boundary")]
    BeBoundary,
    #[serde(rename = "BF-boundary")]
    BfBoundary,
    G,
    H,
    I,
    J,
    K,
    L,
    M,
    #[serde(rename = "Q1-hyperbola")]
    Q1Hyperbola,
    Open,
}

impl Region {
    pub fn label(self) -> &'static str {
        match self {
            Region::A => "A",
            Region::B => "B",
            Region::BSpecial => "B-special",
            Region::C => "C",
            Region::D => "D",
            Region::E => "E",
            Region::F => "F",
            Region::BeBoundary => "BE-boundary",
            Region::BfBoundary => "BF-boundary",
            Region::G => "G",
            Region::H => "H",
            Region::I => "I",
            Region::J => "J",
            Region::K => "K",
            Region::L => "L",
            Region::M => "M",
            Region::Q1Hyperbola => "Q1-hyperbola",
            Region::Open => "Open",
        }
    }

    /// The label under the `x ↔ y` swap.
    pub fn mirror(self) -> Region {
        match self {
            Region::C => Region::D,
            Region::D => Region::C,
            Region::E => Region::F,
            Region::F => Region::E,
            Region::BeBoundary => Region::BfBoundary,
            Region::BfBoundary => Region::BeBoundary,
            Region::H => Region::I,
            Region::I => Region::H,
            Region::J => Region::K,
            Region::K => Region::J,
            Region::L => Region::M,
            Region::M => Region::L,
            other => other,
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "FP")]
    Fp,
    #[serde(rename = "NP-complete")]
    NpComplete,
    #[serde(rename = "SharpP-hard")]
    SharpPHard,
    Open,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Fp => "FP",
            Status::NpComplete => "NP-complete",
            Status::SharpPHard => "SharpP-hard",
            Status::Open => "Open",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PointClass {
    pub region: Region,
    pub status: Status,
}

/// Which of the eighteen ordered rules fired, with its verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RuleMatch {
    pub rule: u8,
    pub class: PointClass,
}

pub fn classify(p: &PlanePoint) -> PointClass {
    classify_with_rule(p).class
}

pub fn classify_with_rule(p: &PlanePoint) -> RuleMatch {
    use Region::*;
    use Status::*;

    let (x, y) = (&p.x, &p.y);
    let q = p.q();
    let zero = Rational::zero();
    let one = Rational::one();
    let minus_one = -Rational::one();
    let four = int(4);
    let open_threshold = frac(11, 27);
    let hit = |rule, region, status| RuleMatch {
        rule,
        class: PointClass { region, status },
    };

    if x >= &zero && y >= &zero {
        return hit(1, A, Fp);
    }
    if *x == minus_one && *y == minus_one {
        return hit(2, BSpecial, Fp);
    }
    if x.min(y) <= &minus_one && x.max(y) < &zero {
        return hit(3, B, SharpPHard);
    }
    if x < &minus_one && y > &one {
        return hit(4, C, SharpPHard);
    }
    if x > &one && y < &minus_one {
        return hit(5, D, SharpPHard);
    }
    if x <= &minus_one && y.is_zero() {
        let status = if *x == minus_one {
            Fp
        } else if is_integer(x) {
            NpComplete
        } else {
            SharpPHard
        };
        return hit(6, BeBoundary, status);
    }
    if x.is_zero() && y <= &minus_one {
        let status = if *y == minus_one {
            Fp
        } else if *y == int(-2) {
            NpComplete
        } else if *y == int(-3) || *y == int(-4) {
            Status::Open
        } else if is_integer(y) {
            Fp
        } else if q < four {
            SharpPHard
        } else {
            Status::Open
        };
        return hit(7, BfBoundary, status);
    }
    if x <= &minus_one && y > &zero && y <= &one {
        let status = if is_integer(&q) {
            Fp
        } else if *x == minus_one && y >= &open_threshold && y < &one {
            Status::Open
        } else {
            SharpPHard
        };
        return hit(8, E, status);
    }
    if x > &zero && x <= &one && y <= &minus_one {
        let status = if is_integer(&q) {
            Fp
        } else if *y == minus_one && x >= &open_threshold && x < &one {
            Status::Open
        } else if q < four {
            SharpPHard
        } else {
            Status::Open
        };
        return hit(9, F, status);
    }
    if q.is_one() {
        return hit(10, Q1Hyperbola, Fp);
    }
    let inside = max(&abs(x), &abs(y)) < one;
    if inside && q > frac(32, 27) {
        return hit(11, G, SharpPHard);
    }
    if inside && *y < -(x * int(2)) - &one {
        return hit(12, H, SharpPHard);
    }
    if inside && *x < -(y * int(2)) - &one {
        return hit(13, I, SharpPHard);
    }
    if x >= &minus_one && x < &zero && y >= &one {
        return hit(14, J, Fp);
    }
    if x >= &one && y >= &minus_one && y < &zero {
        return hit(15, K, Fp);
    }
    if x > &zero && x < &one && y < &zero && *y > -x.clone() {
        return hit(16, L, Fp);
    }
    if y > &zero && y < &one && x < &zero && *x > -y.clone() {
        return hit(17, M, Fp);
    }
    hit(18, Region::Open, Status::Open)
}

/// One classified lattice point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridRow {
    #[serde(with = "crate::arith::rational::serde_str")]
    pub x: Rational,
    #[serde(with = "crate::arith::rational::serde_str")]
    pub y: Rational,
    #[serde(with = "crate::arith::rational::serde_str")]
    pub q: Rational,
    pub region: Region,
    pub status: Status,
}

/// Classifies `x = x_lo + i·step ≤ x_hi`, `y = y_lo + j·step ≤ y_hi`, row-major in `y` then `x`.
pub fn scan_grid(
    x_range: (&Rational, &Rational),
    y_range: (&Rational, &Rational),
    step: &Rational,
) -> Result<Vec<GridRow>> {
    if !step.is_positive() {
        return Err(Error::Precondition("grid step must be positive".into()));
    }
    let axis = |(lo, hi): (&Rational, &Rational)| {
        let mut out = Vec::new();
        let mut v = lo.clone();
        while &v <= hi {
            out.push(v.clone());
            v += step;
        }
        out
    };
    let (xs, ys) = (axis(x_range), axis(y_range));
    let mut rows = Vec::with_capacity(xs.len() * ys.len());
    for y in &ys {
        for x in &xs {
            let p = PlanePoint::new(x.clone(), y.clone());
            let c = classify(&p);
            rows.push(GridRow {
                q: p.q(),
                x: p.x,
                y: p.y,
                region: c.region,
                status: c.status,
            });
        }
    }
    Ok(rows)
}

pub fn grid_to_csv(rows: &[GridRow]) -> String {
    let mut out = String::from("x,y,q,region,status\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.x, r.y, r.q, r.region, r.status
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn at(x: Rational, y: Rational) -> PointClass {
        classify(&PlanePoint::new(x, y))
    }

    #[test]
    fn examples() {
        assert_eq!(
            classify(&PlanePoint::ints(2, 2)),
            PointClass {
                region: Region::A,
                status: Status::Fp
            }
        );
        assert_eq!(
            classify(&PlanePoint::ints(0, -2)).status,
            Status::NpComplete
        );
        assert_eq!(at(int(-1), frac(1, 2)).status, Status::Fp);
        assert_eq!(
            at(int(-2), frac(1, 2)),
            PointClass {
                region: Region::E,
                status: Status::SharpPHard
            }
        );
        let boundary = PlanePoint::new(frac(-1, 3), frac(1, 9));
        assert_eq!(boundary.q(), frac(32, 27));
        assert_eq!(classify(&boundary).status, Status::Open);
    }

    #[test]
    fn grid() {
        let two = int(2);
        let rows = scan_grid((&two, &two), (&two, &two), &int(1)).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!((rows[0].region, rows[0].status), (Region::A, Status::Fp));

        let rows = scan_grid((&int(-2), &two), (&int(-2), &two), &int(1)).unwrap();
        assert_eq!(rows.len(), 25);
        for r in &rows {
            let c = at(r.x.clone(), r.y.clone());
            assert_eq!((r.region, r.status), (c.region, c.status));
        }
        let quadrant = scan_grid((&int(0), &int(3)), (&int(0), &int(3)), &frac(1, 4)).unwrap();
        assert!(quadrant.iter().all(|r| r.status == Status::Fp));

        assert!(scan_grid((&two, &int(1)), (&two, &two), &int(1))
            .unwrap()
            .is_empty());
        assert!(scan_grid((&two, &two), (&two, &two), &int(0)).is_err());
        let csv = grid_to_csv(&scan_grid((&two, &two), (&int(-5), &int(-5)), &int(1)).unwrap());
        assert_eq!(csv, "x,y,q,region,status\n2,-5,-6,D,SharpP-hard\n");
    }

    #[test]
    fn json_labels() {
        let c = classify(&PlanePoint::ints(0, -2));
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            r#"{"region":"BF-boundary","status":"NP-complete"}"#
        );
    }

    fn arb_point() -> impl Strategy<Value = PlanePoint> {
        let coord = (-12i64..=12, 1i64..=6).prop_map(|(a, b)| frac(a, b));
        (coord.clone(), coord).prop_map(|(x, y)| PlanePoint::new(x, y))
    }

    fn arb_inner_point() -> impl Strategy<Value = PlanePoint> {
        let coord =
            (1i64..=30).prop_flat_map(|b| (-(b - 1)..b, Just(b)).prop_map(|(a, b)| frac(a, b)));
        (coord.clone(), coord).prop_map(|(x, y)| PlanePoint::new(x, y))
    }

    proptest! {
        #[test]
        fn unit_square_mirror_symmetry(p in arb_inner_point()) {
            let (a, b) = (classify(&p), classify(&p.swapped()));
            prop_assert_eq!(a.status, b.status);
            prop_assert_eq!(a.region.mirror(), b.region);
        }

        #[test]
        fn q_and_gamma_round_trip(p in arb_point()) {
            prop_assume!(!p.gamma().is_zero());
            prop_assert_eq!(PlanePoint::from_q_gamma(&p.q(), &p.gamma()), p);
        }
    }
}
