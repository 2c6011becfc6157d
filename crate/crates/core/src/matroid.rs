//! Binary matroids given by 0/1 matrices over GF(2), their minors and duals, and the
//! normalized partition function `Z̃(M; q, γ) = Σ_A q^{−r(A)} Π_{e∈A} γ_e`.

use std::fmt::Write as _;

use num_traits::{One, Zero};

use crate::arith::rational::pow;
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::graph::Multigraph;

type Column = Vec<u64>;

fn words(rows: usize) -> usize {
    rows.div_ceil(64)
}

fn bit(col: &Column, r: usize) -> bool {
    col[r / 64] >> (r % 64) & 1 == 1
}

fn flip(col: &mut Column, r: usize) {
    col[r / 64] ^= 1 << (r % 64);
}

fn xor_into(dst: &mut Column, src: &Column) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

fn lowest_bit(col: &Column) -> Option<usize> {
    col.iter()
        .enumerate()
        .find(|(_, w)| **w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

/// Incremental GF(2) basis keyed by pivot row.
struct Basis {
    pivots: Vec<(usize, Column)>,
}

impl Basis {
    fn new() -> Self {
        Basis { pivots: Vec::new() }
    }

    /// Adds `col`; true when it was independent of what came before.
    fn insert(&mut self, col: &Column) -> bool {
        let mut v = col.clone();
        for (row, p) in &self.pivots {
            if bit(&v, *row) {
                xor_into(&mut v, p);
            }
        }
        match lowest_bit(&v) {
            Some(row) => {
                for (_, p) in self.pivots.iter_mut() {
                    if bit(p, row) {
                        xor_into(p, &v);
                    }
                }
                self.pivots.push((row, v));
                true
            }
            None => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatroid {
    rows: usize,
    columns: Vec<Column>,
}

impl BinaryMatroid {
    /// Builds from a row-major 0/1 matrix.
    pub fn from_rows(rows: &[Vec<bool>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Precondition("ragged matrix".into()));
        }
        Ok(Self::from_fn(rows.len(), cols, |r, c| rows[r][c]))
    }

    pub fn from_fn(rows: usize, cols: usize, entry: impl Fn(usize, usize) -> bool) -> Self {
        let columns = (0..cols)
            .map(|c| {
                let mut col = vec![0u64; words(rows)];
                for r in 0..rows {
                    if entry(r, c) {
                        flip(&mut col, r);
                    }
                }
                col
            })
            .collect();
        BinaryMatroid { rows, columns }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| r == c)
    }

    /// Vertex–edge incidence matrix; a loop gives a zero column.
    pub fn cycle_matroid(g: &Multigraph) -> Self {
        let edges = g.edges();
        Self::from_fn(g.vertex_count(), edges.len(), |r, c| {
            let e = edges[c];
            (e.u == r) != (e.v == r)
        })
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn row_count(&self) -> usize {
        self.rows
    }

    pub fn entry(&self, r: usize, c: usize) -> bool {
        bit(&self.columns[c], r)
    }

    fn check(&self, e: usize) -> Result<()> {
        if e < self.len() {
            Ok(())
        } else {
            Err(Error::UnknownElement(e))
        }
    }

    pub fn rank(&self, subset: &[usize]) -> Result<usize> {
        let mut basis = Basis::new();
        let mut r = 0;
        for &e in subset {
            self.check(e)?;
            r += usize::from(basis.insert(&self.columns[e]));
        }
        Ok(r)
    }

    /// Rank of the elements whose bits are set in `mask` (ground sets of at most 64).
    pub fn rank_mask(&self, mask: u64) -> usize {
        let mut basis = Basis::new();
        (0..self.len())
            .filter(|e| mask >> e & 1 == 1)
            .filter(|&e| basis.insert(&self.columns[e]))
            .count()
    }

    pub fn full_rank(&self) -> usize {
        let all: Vec<_> = (0..self.len()).collect();
        self.rank(&all).expect("all elements exist")
    }

    pub fn is_loop(&self, e: usize) -> bool {
        lowest_bit(&self.columns[e]).is_none()
    }

    pub fn is_coloop(&self, e: usize) -> bool {
        let rest: Vec<_> = (0..self.len()).filter(|&f| f != e).collect();
        self.rank(&rest).expect("all elements exist") < self.full_rank()
    }

    /// `{e, f}` is a circuit: equal nonzero columns.
    pub fn is_parallel_pair(&self, e: usize, f: usize) -> bool {
        e != f && !self.is_loop(e) && self.columns[e] == self.columns[f]
    }

    /// `{e, f}` is a cocircuit: neither is a coloop, but removing both drops the rank.
    pub fn is_series_pair(&self, e: usize, f: usize) -> bool {
        if e == f || self.is_coloop(e) || self.is_coloop(f) {
            return false;
        }
        let rest: Vec<_> = (0..self.len()).filter(|&x| x != e && x != f).collect();
        self.rank(&rest).expect("all elements exist") < self.full_rank()
    }

    /// Drops element `e`; the map sends new indices to old ones.
    pub fn delete(&self, e: usize) -> Result<(BinaryMatroid, Vec<usize>)> {
        self.check(e)?;
        let map: Vec<usize> = (0..self.len()).filter(|&f| f != e).collect();
        let columns = map.iter().map(|&f| self.columns[f].clone()).collect();
        Ok((
            BinaryMatroid {
                rows: self.rows,
                columns,
            },
            map,
        ))
    }

    /// Contracts `e` by pivoting on one of its nonzero rows and dropping that row.
    /// Contracting a loop deletes it.
    pub fn contract(&self, e: usize) -> Result<(BinaryMatroid, Vec<usize>)> {
        self.check(e)?;
        let Some(pivot) = lowest_bit(&self.columns[e]) else {
            return self.delete(e);
        };
        let pivot_col = self.columns[e].clone();
        let map: Vec<usize> = (0..self.len()).filter(|&f| f != e).collect();
        let columns = map
            .iter()
            .map(|&f| {
                let mut col = self.columns[f].clone();
                if bit(&col, pivot) {
                    xor_into(&mut col, &pivot_col);
                }
                drop_row(&col, pivot, self.rows)
            })
            .collect();
        Ok((
            BinaryMatroid {
                rows: self.rows - 1,
                columns,
            },
            map,
        ))
    }

    /// The dual: reduce to `[I | D]` on a basis `B` and its complement `N`, then represent
    /// the dual by `[Dᵀ | I]` with columns back in their original order.
    pub fn dual(&self) -> BinaryMatroid {
        let n = self.len();
        let mut basis_elems = Vec::new();
        let mut basis = Basis::new();
        for e in 0..n {
            if basis.insert(&self.columns[e]) {
                basis_elems.push(e);
            }
        }
        let coords: Vec<Vec<bool>> = (0..n).map(|e| self.coordinates(&basis_elems, e)).collect();
        let nonbasis: Vec<usize> = (0..n).filter(|e| !basis_elems.contains(e)).collect();
        let dual_rows = nonbasis.len();
        Self::from_fn(dual_rows, n, |row, col| {
            let j = nonbasis[row];
            match basis_elems.iter().position(|&b| b == col) {
                Some(i) => coords[j][i],
                None => col == j,
            }
        })
    }

    /// Expresses column `e` as a GF(2) combination of the independent columns `basis`.
    fn coordinates(&self, basis: &[usize], e: usize) -> Vec<bool> {
        // Gaussian elimination on [basis columns | target], tracking combinations as masks.
        let k = basis.len();
        let mut rows: Vec<(Column, Vec<bool>)> = basis
            .iter()
            .enumerate()
            .map(|(i, &b)| {
                let mut tag = vec![false; k];
                tag[i] = true;
                (self.columns[b].clone(), tag)
            })
            .collect();
        let mut reduced: Vec<(usize, Column, Vec<bool>)> = Vec::new();
        for (mut col, mut tag) in rows.drain(..) {
            for (row, p, ptag) in &reduced {
                if bit(&col, *row) {
                    xor_into(&mut col, p);
                    tag.iter_mut().zip(ptag).for_each(|(a, b)| *a ^= b);
                }
            }
            let row = lowest_bit(&col).expect("basis columns are independent");
            reduced.push((row, col, tag));
        }
        let mut target = self.columns[e].clone();
        let mut combo = vec![false; k];
        for (row, p, ptag) in &reduced {
            if bit(&target, *row) {
                xor_into(&mut target, p);
                combo.iter_mut().zip(ptag).for_each(|(a, b)| *a ^= b);
            }
        }
        debug_assert!(lowest_bit(&target).is_none());
        combo
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "matrix {} {}", self.rows, self.len()).unwrap();
        for r in 0..self.rows {
            let row: String = (0..self.len())
                .map(|c| if self.entry(r, c) { '1' } else { '0' })
                .collect();
            writeln!(out, "{row}").unwrap();
        }
        out
    }

    /// Parses `matrix <rows> <cols>` followed by one 0/1 string per row; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let parse_err = |line: usize, message: &str| Error::Parse {
            line,
            message: message.to_string(),
        };
        let (line, header) = lines.next().ok_or(parse_err(0, "empty matroid file"))?;
        let dims: Vec<&str> = header.split_whitespace().collect();
        let (rows, cols) = match dims.as_slice() {
            ["matrix", r, c] => (
                r.parse::<usize>()
                    .map_err(|_| parse_err(line, "bad row count"))?,
                c.parse::<usize>()
                    .map_err(|_| parse_err(line, "bad column count"))?,
            ),
            _ => return Err(parse_err(line, "first line must be `matrix <rows> <cols>`")),
        };
        let mut matrix = Vec::with_capacity(rows);
        for (line, row) in lines {
            if row.len() != cols || !row.bytes().all(|b| b == b'0' || b == b'1') {
                return Err(parse_err(
                    line,
                    "row must be a 0/1 string of the declared width",
                ));
            }
            matrix.push(row.bytes().map(|b| b == b'1').collect::<Vec<_>>());
        }
        if matrix.len() != rows {
            return Err(parse_err(0, "row count does not match header"));
        }
        Ok(Self::from_fn(rows, cols, |r, c| matrix[r][c]))
    }
}

fn drop_row(col: &Column, row: usize, rows: usize) -> Column {
    let mut out = vec![0u64; words(rows - 1)];
    let mut k = 0;
    for r in 0..rows {
        if r == row {
            continue;
        }
        if bit(col, r) {
            flip(&mut out, k);
        }
        k += 1;
    }
    out
}

/// Enumeration cap for [`z_tilde_brute`].
pub const MATROID_ENUM_CAP: usize = 20;

fn require_nonzero(q: &Rational) -> Result<()> {
    if q.is_zero() {
        Err(Error::Precondition("q must be nonzero".into()))
    } else {
        Ok(())
    }
}

/// `Z̃` by listing every subset of the ground set.
pub fn z_tilde_brute(m: &BinaryMatroid, q: &Rational, w: &[Rational]) -> Result<Rational> {
    require_nonzero(q)?;
    check_weights(m, w)?;
    if m.len() > MATROID_ENUM_CAP {
        return Err(Error::CapExceeded {
            what: "matroid subset enumeration",
            size: m.len(),
            cap: MATROID_ENUM_CAP,
        });
    }
    let inv_pows: Vec<Rational> = (0..=m.row_count()).map(|r| pow(q, -(r as i64))).collect();
    let mut total = Rational::zero();
    for mask in 0u64..1 << m.len() {
        let mut term = inv_pows[m.rank_mask(mask)].clone();
        for (e, we) in w.iter().enumerate() {
            if mask >> e & 1 == 1 {
                term *= we;
            }
        }
        total += term;
    }
    Ok(total)
}

fn check_weights(m: &BinaryMatroid, w: &[Rational]) -> Result<()> {
    if w.len() == m.len() {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "{} weights for {} elements",
            w.len(),
            m.len()
        )))
    }
}

/// `Z̃` by deletion–contraction: loops give `1 + γ_e`, coloops give `1 + γ_e/q`, and
/// any other element splits as `Z̃(M∖e) + (γ_e/q) Z̃(M/e)`.
pub fn z_tilde(m: &BinaryMatroid, q: &Rational, w: &[Rational]) -> Result<Rational> {
    require_nonzero(q)?;
    check_weights(m, w)?;
    Ok(z_tilde_rec(m, q, w))
}

fn z_tilde_rec(m: &BinaryMatroid, q: &Rational, w: &[Rational]) -> Rational {
    if m.is_empty() {
        return Rational::one();
    }
    let e = m.len() - 1;
    let keep = |map: &[usize]| map.iter().map(|&i| w[i].clone()).collect::<Vec<_>>();
    if m.is_loop(e) {
        let (minor, map) = m.delete(e).expect("e exists");
        return (Rational::one() + &w[e]) * z_tilde_rec(&minor, q, &keep(&map));
    }
    let (contracted, cmap) = m.contract(e).expect("e exists");
    let with = &w[e] / q * z_tilde_rec(&contracted, q, &keep(&cmap));
    if m.is_coloop(e) {
        // M∖e = M/e for a coloop
        return (Rational::one() + &w[e] / q) * z_tilde_rec(&contracted, q, &keep(&cmap));
    }
    let (deleted, dmap) = m.delete(e).expect("e exists");
    z_tilde_rec(&deleted, q, &keep(&dmap)) + with
}
