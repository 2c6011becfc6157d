//! Direct enumeration oracles. Each is exponential and guarded by a cap.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::graph::{Multigraph, UnionFind, WeightFunction};

use super::TwoTerminalSplit;

/// Default edge-count cap for subset enumeration.
pub const BRUTE_EDGE_CAP: usize = 20;

/// Default cap on the number of colourings or flow assignments enumerated.
pub const ORACLE_STATE_CAP: u64 = 1 << 24;

/// Weights rewritten as `numerators[i] / denominator` over a common denominator, so the
/// subset sum can run on integers.
struct ScaledWeights {
    numerators: Vec<BigInt>,
    denominator: BigInt,
}

impl ScaledWeights {
    fn new(ws: &[Rational]) -> Self {
        let denominator = ws.iter().fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let numerators = ws
            .iter()
            .map(|w| w.numer() * (&denominator / w.denom()))
            .collect();
        ScaledWeights {
            numerators,
            denominator,
        }
    }
}

/// Integer sums `table[κ][|A|]` of `Π numerators` over subsets, split by whether `s` and `t`
/// end up joined (index 1) or not (index 0).
type Tally = [Vec<Vec<BigInt>>; 2];

struct SubsetWalk<'a> {
    edges: &'a [crate::graph::Edge],
    nums: &'a [BigInt],
    n: usize,
    terminals: Option<(usize, usize)>,
    table: Tally,
    chosen: Vec<usize>,
}

impl SubsetWalk<'_> {
    fn walk(&mut self, i: usize, prod: &BigInt) {
        if prod.is_zero() {
            return;
        }
        if i == self.edges.len() {
            let mut uf = UnionFind::new(self.n);
            for &j in &self.chosen {
                uf.union(self.edges[j].u, self.edges[j].v);
            }
            let joined = self
                .terminals
                .is_some_and(|(s, t)| uf.find(s) == uf.find(t));
            self.table[usize::from(joined)][uf.components()][self.chosen.len()] += prod;
            return;
        }
        self.walk(i + 1, prod);
        self.chosen.push(i);
        let next = prod * &self.nums[i];
        self.walk(i + 1, &next);
        self.chosen.pop();
    }
}

fn tally(g: &Multigraph, nums: &[BigInt], terminals: Option<(usize, usize)>) -> Tally {
    let n = g.vertex_count();
    let m = g.edge_count();
    let empty = || vec![vec![BigInt::zero(); m + 1]; n + 1];
    let mut state = SubsetWalk {
        edges: g.edges(),
        nums,
        n,
        terminals,
        table: [empty(), empty()],
        chosen: Vec::with_capacity(m),
    };
    state.walk(0, &BigInt::one());
    state.table
}

fn collapse(rows: &[Vec<BigInt>], q: &Rational, denominator: &BigInt) -> Rational {
    let mut total = Rational::zero();
    let mut q_pow = Rational::one();
    for row in rows {
        let mut inner = Rational::zero();
        let mut d_pow = BigInt::one();
        for c in row {
            if !c.is_zero() {
                inner += Rational::new(c.clone(), d_pow.clone());
            }
            d_pow *= denominator;
        }
        total += &q_pow * inner;
        q_pow *= q;
    }
    total
}

fn check_cap(g: &Multigraph, cap: usize) -> Result<()> {
    if g.edge_count() > cap {
        return Err(Error::CapExceeded {
            what: "subset enumeration",
            size: g.edge_count(),
            cap,
        });
    }
    Ok(())
}

/// `Σ_{A ⊆ E} q^{κ(V,A)} Π_{e∈A} γ_e` by listing every subset.
pub fn z_brute(g: &Multigraph, q: &Rational, w: &WeightFunction) -> Result<Rational> {
    z_brute_with_cap(g, q, w, BRUTE_EDGE_CAP)
}

pub fn z_brute_with_cap(
    g: &Multigraph,
    q: &Rational,
    w: &WeightFunction,
    cap: usize,
) -> Result<Rational> {
    check_cap(g, cap)?;
    let scaled = ScaledWeights::new(&w.for_graph(g)?);
    let [apart, _] = tally(g, &scaled.numerators, None);
    Ok(collapse(&apart, q, &scaled.denominator))
}

/// The two-terminal split by enumeration.
pub fn z_two_terminal_brute(
    g: &Multigraph,
    s: usize,
    t: usize,
    q: &Rational,
    w: &WeightFunction,
) -> Result<TwoTerminalSplit> {
    check_cap(g, BRUTE_EDGE_CAP)?;
    super::check_terminals(g, s, t)?;
    let scaled = ScaledWeights::new(&w.for_graph(g)?);
    let [apart, joined] = tally(g, &scaled.numerators, Some((s, t)));
    Ok(TwoTerminalSplit {
        z_st: collapse(&joined, q, &scaled.denominator),
        z_s_bar_t: collapse(&apart, q, &scaled.denominator),
    })
}

fn state_cap(base: u64, exponent: usize) -> Result<()> {
    let fits = u32::try_from(exponent)
        .ok()
        .and_then(|e| base.checked_pow(e))
        .is_some_and(|states| states <= ORACLE_STATE_CAP);
    if fits {
        Ok(())
    } else {
        Err(Error::CapExceeded {
            what: "state enumeration",
            size: usize::try_from(base.saturating_pow(exponent.min(64) as u32))
                .unwrap_or(usize::MAX),
            cap: ORACLE_STATE_CAP as usize,
        })
    }
}

/// Steps an odometer of `digits.len()` digits in base `q`; false once it wraps.
fn advance(digits: &mut [u64], q: u64) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < q {
            return true;
        }
        *d = 0;
    }
    false
}

/// Proper colourings `V → {0..q-1}`, by enumeration.
pub fn count_colourings_brute(g: &Multigraph, q: u64) -> Result<u64> {
    state_cap(q, g.vertex_count())?;
    if q == 0 {
        return Ok(u64::from(g.vertex_count() == 0));
    }
    let mut colour = vec![0u64; g.vertex_count()];
    let mut count = 0;
    loop {
        if g.edges().iter().all(|e| colour[e.u] != colour[e.v]) {
            count += 1;
        }
        if !advance(&mut colour, q) {
            return Ok(count);
        }
    }
}

/// Nowhere-zero `Z_q`-flows, orienting each edge `u → v` as listed.
pub fn count_nzflows_brute(g: &Multigraph, q: u64) -> Result<u64> {
    state_cap(q, g.edge_count())?;
    if q <= 1 {
        return Ok(u64::from(g.edge_count() == 0));
    }
    let m = g.edge_count();
    // digits run over 0..q-1 and stand for flow values 1..q
    let mut value = vec![0u64; m];
    let mut count = 0;
    let mut net = vec![0u64; g.vertex_count()];
    loop {
        net.iter_mut().for_each(|x| *x = 0);
        for (e, d) in g.edges().iter().zip(&value) {
            let f = d + 1;
            net[e.v] = (net[e.v] + f) % q;
            net[e.u] = (net[e.u] + q - f) % q;
        }
        if net.iter().all(|&x| x == 0) {
            count += 1;
        }
        if !advance(&mut value, q - 1) {
            return Ok(count);
        }
    }
}

/// `Σ_σ Π_{uv} (1 + γ_uv·[σ(u) = σ(v)])` over all `q`-colourings.
pub fn potts_brute(g: &Multigraph, q: u64, w: &WeightFunction) -> Result<Rational> {
    state_cap(q, g.vertex_count())?;
    let ws = w.for_graph(g)?;
    if q == 0 {
        return Ok(if g.vertex_count() == 0 {
            Rational::one()
        } else {
            Rational::zero()
        });
    }
    let factors: Vec<Rational> = ws.iter().map(|x| Rational::one() + x).collect();
    let mut colour = vec![0u64; g.vertex_count()];
    let mut total = Rational::zero();
    loop {
        let mut term = Rational::one();
        for (e, f) in g.edges().iter().zip(&factors) {
            if colour[e.u] == colour[e.v] {
                term *= f;
            }
        }
        total += term;
        if !advance(&mut colour, q) {
            return Ok(total);
        }
    }
}
