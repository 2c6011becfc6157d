use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::Rational;
use crate::error::{Error, Result};

/// Dense univariate polynomial in `q` with rational coefficients, lowest degree first.
///
/// The coefficient list never ends in a zero; the zero polynomial is the empty list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct UniPoly {
    #[serde(with = "super::rational::serde_vec")]
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// Builds from coefficients (index = power), trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| super::rational::int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Horner evaluation.
    pub fn eval(&self, q: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * q + c;
        }
        acc
    }

    /// Multiplies in place by `(q - root)`.
    fn mul_linear(&mut self, root: &Rational) {
        if self.coeffs.is_empty() {
            return;
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i + 1] += c;
            out[i] -= c * root;
        }
        *self = Self::from_coeffs(out);
    }

    fn add_constant(&mut self, c: &Rational) {
        if self.coeffs.is_empty() {
            self.coeffs.push(c.clone());
        } else {
            self.coeffs[0] += c;
        }
        let trimmed = std::mem::take(&mut self.coeffs);
        *self = Self::from_coeffs(trimmed);
    }
}

/// Exact interpolation through `points` by a polynomial of degree at most `degree_bound`.
///
/// The first `degree_bound + 1` points determine the polynomial (Newton divided differences);
/// any further points must lie on it.
pub fn interpolate(points: &[(Rational, Rational)], degree_bound: usize) -> Result<UniPoly> {
    let needed = degree_bound + 1;
    if points.len() < needed {
        return Err(Error::InsufficientNodes {
            needed,
            got: points.len(),
        });
    }
    for (i, (a, _)) in points.iter().enumerate() {
        if points[..i].iter().any(|(b, _)| b == a) {
            return Err(Error::DegenerateNodes(a.to_string()));
        }
    }

    let xs: Vec<&Rational> = points[..needed].iter().map(|(x, _)| x).collect();
    let mut table: Vec<Rational> = points[..needed].iter().map(|(_, y)| y.clone()).collect();
    // table[i] becomes f[x_0..x_i] after the sweep.
    for level in 1..needed {
        for i in (level..needed).rev() {
            let num = &table[i] - &table[i - 1];
            let den = xs[i] - xs[i - level];
            table[i] = num / den;
        }
    }

    let mut poly = UniPoly::zero();
    for i in (0..needed).rev() {
        poly.mul_linear(xs[i]);
        poly.add_constant(&table[i]);
    }

    for (x, y) in &points[needed..] {
        if &poly.eval(x) != y {
            return Err(Error::InconsistentNodes(format!("{x}, {y}")));
        }
    }
    Ok(poly)
}

/// `eval_poly(p, q)` as a free function.
pub fn eval_poly(p: &UniPoly, q: &Rational) -> Rational {
    p.eval(q)
}

impl fmt::Display for UniPoly {
    /// Human-readable form, highest degree first, e.g. `q^2 - 3/2q + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (power, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let show_coeff = power == 0 || !magnitude.is_one();
            if show_coeff {
                if magnitude.denom().is_one() || power == 0 {
                    write!(f, "{magnitude}")?;
                } else {
                    write!(f, "({magnitude})")?;
                }
            }
            match power {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{power}")?,
            }
        }
        Ok(())
    }
}
