//! The eleven acceptance criteria, each checked against an oracle that does not share code
//! with the routine under test (subset enumeration, state enumeration, or a transcribed
//! table). Prints one PASS/FAIL line per criterion and exits nonzero if any fails or runs
//! past its time limit.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tuttesign::arith::rational::{is_integer, pow};
use tuttesign::eval::{
    chromatic_poly, count_colourings_brute, count_nzflows_brute, flow_poly, flow_value,
    potts_brute, z_brute, z_multivariate, z_two_terminal_brute,
};
use tuttesign::gadget::{
    self, diamond, diamond_iterate, gamma_n_gadget, implemented_weight, Gadget, StepKind,
};
use tuttesign::graph::families;
use tuttesign::matroid::{z_tilde, z_tilde_brute, BinaryMatroid};
use tuttesign::reduction::{
    check_facts, count_min_cuts_brute, count_min_cuts_via_sign, idealized_oracle,
};
use tuttesign::region::{classify, PlanePoint};
use tuttesign::sign::{sign_dispatch, SignValue};
use tuttesign::{frac, int, interpolate, Error, Multigraph, Rational, UniPoly, WeightFunction};

type Outcome = Result<String, String>;
type Edges = Vec<(usize, usize)>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

// ---------------------------------------------------------------- generators

fn random_rational(rng: &mut ChaCha8Rng, num: i64, den: i64) -> Rational {
    frac(rng.gen_range(-num..=num), rng.gen_range(1..=den))
}

fn random_nonzero(rng: &mut ChaCha8Rng, num: i64, den: i64) -> Rational {
    loop {
        let r = random_rational(rng, num, den);
        if !r.is_zero() {
            return r;
        }
    }
}

/// Any multigraph (loops, parallels, isolated vertices) on `1..=max_n` vertices.
fn random_graph(rng: &mut ChaCha8Rng, max_n: usize, max_m: usize) -> Multigraph {
    let n = rng.gen_range(1..=max_n);
    let m = rng.gen_range(0..=max_m);
    let pairs: Edges = (0..m)
        .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
        .collect();
    Multigraph::from_edges(n, &pairs).unwrap()
}

fn random_connected(rng: &mut ChaCha8Rng, max_n: usize, max_m: usize, loops: bool) -> Multigraph {
    loop {
        let g = random_graph(rng, max_n, max_m);
        if g.is_connected() && (loops || g.loops().is_empty()) {
            return g;
        }
    }
}

fn edges_of(g: &Multigraph) -> Edges {
    g.edges().iter().map(|e| (e.u, e.v)).collect()
}

/// Smallest sorted edge list over all relabellings.
fn canonical(n: usize, edges: &[(usize, usize)]) -> Edges {
    (0..n)
        .permutations(n)
        .map(|p| {
            let mut e: Edges = edges
                .iter()
                .map(|&(u, v)| (p[u].min(p[v]), p[u].max(p[v])))
                .collect();
            e.sort_unstable();
            e
        })
        .min()
        .unwrap_or_default()
}

/// One representative of every isomorphism class of connected multigraphs with at most
/// `max_edges` edges. A connected graph with an edge loses either a non-bridge edge or a
/// pendant edge and leaf and stays connected, so growing level by level reaches all classes.
fn connected_classes(max_edges: usize, loops: bool) -> Vec<Multigraph> {
    let mut level: BTreeSet<(usize, Edges)> = BTreeSet::from([(1, Vec::new())]);
    let mut all: Vec<(usize, Edges)> = level.iter().cloned().collect();
    for _ in 0..max_edges {
        let mut next = BTreeSet::new();
        for (n, edges) in &level {
            let n = *n;
            let mut grow = |n2: usize, e: (usize, usize)| {
                let mut es = edges.clone();
                es.push(e);
                next.insert((n2, canonical(n2, &es)));
            };
            for u in 0..n {
                for v in u..n {
                    if u != v || loops {
                        grow(n, (u, v));
                    }
                }
                grow(n + 1, (u, n));
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    all.into_iter()
        .map(|(n, e)| Multigraph::from_edges(n, &e).unwrap())
        .collect()
}

/// Every multigraph (loops allowed, possibly disconnected) on exactly `n` vertices with
/// `m` edges, one per isomorphism class.
fn all_graphs(n: usize, m: usize) -> Vec<Multigraph> {
    let slots: Edges = (0..n).flat_map(|u| (u..n).map(move |v| (u, v))).collect();
    let classes: BTreeSet<Edges> = slots
        .iter()
        .copied()
        .combinations_with_replacement(m)
        .map(|es| canonical(n, &es))
        .collect();
    classes
        .into_iter()
        .map(|es| Multigraph::from_edges(n, &es).unwrap())
        .collect()
}

// ---------------------------------------------------------------- shared oracles

/// `F(G; q) = (−1)^{|E|} q^{−|V|} Z(G; q, −q)` by subset enumeration.
fn flow_by_subsets(g: &Multigraph, q: &Rational) -> Rational {
    let z = z_brute(g, q, &WeightFunction::uniform(g, &-q.clone())).unwrap();
    let signed = if g.edge_count().is_multiple_of(2) {
        z
    } else {
        -z
    };
    signed * pow(q, -(g.vertex_count() as i64))
}

/// `q·Z_st / Z_s|t` by subset enumeration, `None` when `Z_s|t = 0`.
fn weight_by_subsets(gd: &Gadget, q: &Rational) -> Option<Rational> {
    let split = z_two_terminal_brute(&gd.graph, gd.s, gd.t, q, &gd.weights).unwrap();
    (!split.z_s_bar_t.is_zero()).then(|| q * split.z_st / split.z_s_bar_t)
}

fn brute_sign(g: &Multigraph, p: &PlanePoint) -> SignValue {
    SignValue::of(&z_brute(g, &p.q(), &WeightFunction::uniform(g, &p.gamma())).unwrap())
}

// ---------------------------------------------------------------- criteria

fn petersen_polynomials(_: &mut ChaCha8Rng) -> Outcome {
    let full = UniPoly::from_ints(&[240, -620, 624, -325, 95, -15, 1]);
    let minus = UniPoly::from_ints(&[-66, 157, -138, 58, -12, 1]);
    let p = families::petersen();
    ensure!(
        flow_poly(&p) == full,
        "flow_poly(Petersen) = {}",
        flow_poly(&p)
    );
    let nodes = |g: &Multigraph, k: i64| -> Vec<(Rational, Rational)> {
        (1..=k)
            .map(|q| (int(q), flow_by_subsets(g, &int(q))))
            .collect()
    };
    let interpolated = ok(interpolate(&nodes(&p, 7), 6), "interpolate")?;
    ensure!(
        interpolated == full,
        "subset-sum interpolation gives {interpolated}"
    );
    for e in 0..15 {
        let g = p.delete(e).unwrap();
        ensure!(
            flow_poly(&g) == minus,
            "edge {e}: flow_poly = {}",
            flow_poly(&g)
        );
        let interpolated = ok(interpolate(&nodes(&g, 6), 5), "interpolate")?;
        ensure!(
            interpolated == minus,
            "edge {e}: interpolation gives {interpolated}"
        );
    }
    Ok("both polynomials exact; all 15 deletions; matched subset-sum interpolation".into())
}

fn petersen_signs(_: &mut ChaCha8Rng) -> Outcome {
    let p = families::petersen();
    let pe = p.delete(0).unwrap();
    let q = frac(5, 2);
    for (value, what) in [
        (flow_value(&p, &q), "library"),
        (flow_by_subsets(&p, &q), "subsets"),
    ] {
        ensure!(value.is_positive(), "F(P; 5/2) = {value} ({what})");
    }
    for (value, what) in [
        (flow_value(&pe, &q), "library"),
        (flow_by_subsets(&pe, &q), "subsets"),
    ] {
        ensure!(value.is_negative(), "F(P-e; 5/2) = {value} ({what})");
    }
    for k in 1..=4 {
        ensure!(flow_value(&p, &int(k)).is_zero(), "F(P; {k}) != 0");
        ensure!(
            flow_poly(&p).eval(&int(k)).is_zero(),
            "F(P; {k}) != 0 (poly)"
        );
    }
    for k in 1..=3 {
        ensure!(flow_value(&pe, &int(k)).is_zero(), "F(P-e; {k}) != 0");
        ensure!(
            flow_poly(&pe).eval(&int(k)).is_zero(),
            "F(P-e; {k}) != 0 (poly)"
        );
    }
    Ok(format!(
        "F(P;5/2) = {}, F(P-e;5/2) = {}",
        flow_value(&p, &q),
        flow_value(&pe, &q)
    ))
}

fn clique_gadget(rng: &mut ChaCha8Rng) -> Outcome {
    let mut checked = 0;
    for n in 4..=6usize {
        let ni = n as i64;
        let mut qs = Vec::new();
        while qs.len() < 20 {
            let den = rng.gen_range(2..=60);
            let q = int(ni - 2) + frac(rng.gen_range(1..den), den);
            if !is_integer(&q) {
                qs.push(q);
            }
        }
        while qs.len() < 40 {
            let den = rng.gen_range(2..=60);
            let q = int(1) + frac(rng.gen_range(1..(ni - 2) * den), den);
            if !is_integer(&q) {
                qs.push(q);
            }
        }
        for q in qs {
            let gd = ok(gamma_n_gadget(n, &q, &Rational::zero()), "gamma_n_gadget")?;
            let w = weight_by_subsets(&gd, &q).ok_or(format!("n={n}, q={q}: Z_s|t = 0"))?;
            let closed = int(ni - 2) / (&q - int(ni) + int(1));
            ensure!(
                w == closed,
                "n={n}, q={q}: enumeration {w} vs closed form {closed}"
            );
            ensure!(w < int(-1), "n={n}, q={q}: w = {w} is not below -1");
            let lib = ok(implemented_weight(&gd, &q), "implemented_weight")?;
            ensure!(
                lib.weight == w,
                "n={n}, q={q}: library weight {}",
                lib.weight
            );
            checked += 1;
        }
    }
    Ok(format!("{checked} (n, q) cases"))
}

fn evaluator_equivalence(rng: &mut ChaCha8Rng) -> Outcome {
    let classes = connected_classes(5, true);
    let mut evaluations = 0;
    let mut compare = |g: &Multigraph, rng: &mut ChaCha8Rng| -> Result<(), String> {
        let q = random_rational(rng, 6, 5);
        let ws: Vec<Rational> = (0..g.edge_count())
            .map(|_| random_rational(rng, 6, 5))
            .collect();
        let w = WeightFunction::from_list(g, &ws).unwrap();
        let fast = ok(z_multivariate(g, &q, &w), "z_multivariate")?;
        let slow = ok(z_brute(g, &q, &w), "z_brute")?;
        ensure!(
            fast == slow,
            "{:?} at q={q}, w={ws:?}: {fast} vs {slow}",
            edges_of(g)
        );
        evaluations += 1;
        Ok(())
    };
    for g in &classes {
        for _ in 0..5 {
            compare(g, rng)?;
        }
    }
    for _ in 0..200 {
        let g = random_graph(rng, 7, 10);
        compare(&g, rng)?;
    }
    Ok(format!(
        "{} connected classes x 5 + 200 random graphs; {evaluations} evaluations",
        classes.len()
    ))
}

fn specializations(rng: &mut ChaCha8Rng) -> Outcome {
    let mut graphs = 0;
    for n in 1..=4 {
        for m in 0..=6 {
            for g in all_graphs(n, m) {
                let (chromatic, flow) = (chromatic_poly(&g), flow_poly(&g));
                for q in 1..=4u64 {
                    let colourings = ok(count_colourings_brute(&g, q), "colourings")?;
                    let flows = ok(count_nzflows_brute(&g, q), "flows")?;
                    let qr = int(q as i64);
                    ensure!(
                        chromatic.eval(&qr) == int(colourings as i64),
                        "{:?}: P({q}) = {} but {colourings} colourings",
                        edges_of(&g),
                        chromatic.eval(&qr)
                    );
                    ensure!(
                        flow.eval(&qr) == int(flows as i64),
                        "{:?}: F({q}) = {} but {flows} flows",
                        edges_of(&g),
                        flow.eval(&qr)
                    );
                }
                graphs += 1;
            }
        }
    }
    for _ in 0..100 {
        let g = random_graph(rng, 6, 8);
        let ws: Vec<Rational> = (0..g.edge_count())
            .map(|_| random_rational(rng, 6, 5))
            .collect();
        let w = WeightFunction::from_list(&g, &ws).unwrap();
        for q in 1..=3u64 {
            let potts = ok(potts_brute(&g, q, &w), "potts_brute")?;
            let z = ok(z_brute(&g, &int(q as i64), &w), "z_brute")?;
            ensure!(
                potts == z,
                "{:?}, q={q}: Potts {potts} vs Z {z}",
                edges_of(&g)
            );
        }
    }
    Ok(format!(
        "{graphs} graph classes at q=1..4; 100 Potts comparisons at q=1..3"
    ))
}

fn random_matroid(rng: &mut ChaCha8Rng) -> BinaryMatroid {
    let rows = rng.gen_range(1..=4);
    let cols = rng.gen_range(1..=6);
    let density = rng.gen_range(0.2..0.8);
    let entries: Vec<Vec<bool>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_bool(density)).collect())
        .collect();
    BinaryMatroid::from_fn(rows, cols, |r, c| entries[r][c])
}

fn matroid_layer(rng: &mut ChaCha8Rng) -> Outcome {
    let (mut loops, mut coloops) = (0, 0);
    for _ in 0..100 {
        let m = random_matroid(rng);
        let q = random_nonzero(rng, 6, 5);
        let w: Vec<Rational> = (0..m.len()).map(|_| random_nonzero(rng, 6, 5)).collect();
        let z = ok(z_tilde_brute(&m, &q, &w), "z_tilde_brute")?;
        ensure!(
            ok(z_tilde(&m, &q, &w), "z_tilde")? == z,
            "z_tilde disagrees with enumeration"
        );

        let dual = m.dual();
        let full = (1u64 << m.len()) - 1;
        for mask in 0..=full {
            let expected =
                mask.count_ones() as usize + m.rank_mask(full ^ mask) - m.rank_mask(full);
            ensure!(
                dual.rank_mask(mask) == expected,
                "dual rank wrong on {mask:b}"
            );
            ensure!(
                dual.dual().rank_mask(mask) == m.rank_mask(mask),
                "dual of dual changed rank on {mask:b}"
            );
        }
        let w_star: Vec<Rational> = w.iter().map(|g| &q / g).collect();
        let lhs = ok(z_tilde_brute(&dual, &q, &w), "z_tilde_brute")?;
        let product = w.iter().fold(Rational::one(), |acc, g| acc * g);
        let rhs = pow(&q, -(dual.rank_mask(full) as i64))
            * product
            * ok(z_tilde_brute(&m, &q, &w_star), "z_tilde_brute")?;
        ensure!(lhs == rhs, "duality fails: {lhs} vs {rhs}");

        for e in 0..m.len() {
            let keep = |map: &[usize]| map.iter().map(|&i| w[i].clone()).collect::<Vec<_>>();
            if m.rank_mask(1 << e) == 0 {
                let (minor, map) = m.delete(e).unwrap();
                let rest = ok(z_tilde_brute(&minor, &q, &keep(&map)), "z_tilde_brute")?;
                ensure!(
                    z == (Rational::one() + &w[e]) * rest,
                    "loop factor fails at {e}"
                );
                loops += 1;
            }
            if m.rank_mask(full ^ (1 << e)) < m.rank_mask(full) {
                let (minor, map) = m.contract(e).unwrap();
                let rest = ok(z_tilde_brute(&minor, &q, &keep(&map)), "z_tilde_brute")?;
                ensure!(
                    z == (Rational::one() + &w[e] / &q) * rest,
                    "coloop factor fails at {e}"
                );
                coloops += 1;
            }
        }

        let g = random_graph(rng, 5, 6);
        let gw: Vec<Rational> = (0..g.edge_count())
            .map(|_| random_rational(rng, 6, 5))
            .collect();
        let tilde = ok(
            z_tilde_brute(&BinaryMatroid::cycle_matroid(&g), &q, &gw),
            "z_tilde_brute",
        )?;
        let zg = ok(
            z_brute(&g, &q, &WeightFunction::from_list(&g, &gw).unwrap()),
            "z_brute",
        )?;
        ensure!(
            pow(&q, g.vertex_count() as i64) * tilde == zg,
            "graph/matroid identity fails on {:?}",
            edges_of(&g)
        );
    }
    ensure!(
        loops > 0 && coloops > 0,
        "sample had {loops} loops and {coloops} coloops"
    );
    Ok(format!(
        "100 matroids and graphs; {loops} loop and {coloops} coloop factorizations"
    ))
}

/// A random in-region point for each polynomial-time rule, with the methods allowed to answer.
type Sampler = Box<dyn Fn(&mut ChaCha8Rng) -> Option<PlanePoint>>;

fn rule_points() -> Vec<(&'static str, &'static [&'static str], Sampler)> {
    let unit = |rng: &mut ChaCha8Rng| frac(rng.gen_range(1..12), 12);
    vec![
        (
            "A",
            &["region-A"],
            Box::new(move |rng| {
                Some(PlanePoint::new(
                    frac(rng.gen_range(0..30), 6),
                    frac(rng.gen_range(0..30), 6),
                ))
                .filter(|p| !p.q().is_zero())
            }),
        ),
        (
            "q=1",
            &["q1-hyperbola"],
            Box::new(|rng| {
                let t = -frac(rng.gen_range(51..200), 100);
                (t != int(-1)).then(|| PlanePoint::new(int(1) + int(1) / &t, int(1) + t))
            }),
        ),
        (
            "E-integer",
            &["E-integer-q"],
            Box::new(move |rng| {
                let y = unit(rng);
                let k = rng.gen_range(1..=6);
                let x = int(1) + int(k) / (&y - int(1));
                (x <= int(-1)).then(|| PlanePoint::new(x, y))
            }),
        ),
        (
            "F-integer",
            &["F-integer-q"],
            Box::new(move |rng| {
                let x = unit(rng);
                let k = rng.gen_range(1..=6);
                let y = int(1) + int(k) / (&x - int(1));
                (y <= int(-1)).then(|| PlanePoint::new(x, y))
            }),
        ),
        (
            "(-1,0)",
            &["bipartite"],
            Box::new(|_| Some(PlanePoint::ints(-1, 0))),
        ),
        (
            "(0,-1)",
            &["eulerian"],
            Box::new(|_| Some(PlanePoint::ints(0, -1))),
        ),
        (
            "(0,y<=-5)",
            &["bridgeless"],
            Box::new(|rng| Some(PlanePoint::ints(0, rng.gen_range(-12..=-5)))),
        ),
        (
            "K",
            &["K"],
            Box::new(|rng| {
                Some(PlanePoint::new(
                    int(1) + frac(rng.gen_range(1..30), 6),
                    -frac(rng.gen_range(1..=12), 12),
                ))
            }),
        ),
        (
            "J",
            &["J-dual"],
            Box::new(|rng| {
                Some(PlanePoint::new(
                    -frac(rng.gen_range(1..=12), 12),
                    int(1) + frac(rng.gen_range(1..30), 6),
                ))
            }),
        ),
        (
            "L",
            &["L"],
            Box::new(move |rng| {
                let x = unit(rng);
                let y = -(&x * frac(rng.gen_range(1..12), 12));
                Some(PlanePoint::new(x, y))
            }),
        ),
        (
            "M",
            &["M-dual"],
            Box::new(move |rng| {
                let y = unit(rng);
                let x = -(&y * frac(rng.gen_range(1..12), 12));
                Some(PlanePoint::new(x, y))
            }),
        ),
        (
            "(-2,0)",
            &["colouring"],
            Box::new(|_| Some(PlanePoint::ints(-2, 0))),
        ),
        (
            "(-3,0)",
            &["colouring"],
            Box::new(|_| Some(PlanePoint::ints(-3, 0))),
        ),
        (
            "(0,-2)",
            &["3-flow"],
            Box::new(|_| Some(PlanePoint::ints(0, -2))),
        ),
    ]
}

fn sign_algorithms(rng: &mut ChaCha8Rng) -> Outcome {
    let mut summary = Vec::new();
    for (name, methods, sample) in rule_points() {
        let mut agreed = 0;
        while agreed < 100 {
            let Some(p) = sample(rng) else { continue };
            let g = random_graph(rng, 6, 8);
            let report = sign_dispatch(&g, &p);
            if !methods.contains(&report.method.as_str()) {
                // points on a rule's edge may be claimed by an earlier rule (e.g. q = 1)
                ensure!(
                    report.method != "exact-fallback" || name == "q=1",
                    "rule {name}: {p} fell back to exact evaluation"
                );
                continue;
            }
            let truth = brute_sign(&g, &p);
            ensure!(
                report.sign == truth,
                "rule {name} at {p} on {:?}: {:?} via {} but enumeration says {truth:?}",
                edges_of(&g),
                report.sign,
                report.method
            );
            agreed += 1;
        }
        summary.push(name);
    }
    Ok(format!(
        "100 agreeing cases for each of {}",
        summary.join(", ")
    ))
}

fn region_goldens(_: &mut ChaCha8Rng) -> Outcome {
    // (x, y, region, status), one or more per bullet of the published region list
    let table: &[(Rational, Rational, &str, &str)] = &[
        (int(2), int(2), "A", "FP"),
        (int(0), int(0), "A", "FP"),
        (int(-2), frac(-1, 2), "B", "SharpP-hard"),
        (int(-1), frac(-1, 2), "B", "SharpP-hard"),
        (int(-1), int(-1), "B-special", "FP"),
        (int(-2), int(2), "C", "SharpP-hard"),
        (int(2), int(-2), "D", "SharpP-hard"),
        (int(-2), frac(1, 2), "E", "SharpP-hard"),
        (int(-1), frac(1, 2), "E", "FP"),
        (int(-3), frac(1, 2), "E", "FP"),
        (int(-1), frac(2, 3), "E", "Open"),
        (int(-1), frac(11, 27), "E", "Open"),
        (int(-1), frac(2, 5), "E", "SharpP-hard"),
        (frac(1, 2), int(-2), "F", "SharpP-hard"),
        (frac(1, 2), int(-3), "F", "FP"),
        (frac(2, 3), int(-1), "F", "Open"),
        (frac(11, 27), int(-1), "F", "Open"),
        (frac(1, 10), int(-4), "F", "Open"),
        (int(-1), int(0), "BE-boundary", "FP"),
        (int(-2), int(0), "BE-boundary", "NP-complete"),
        (int(-7), int(0), "BE-boundary", "NP-complete"),
        (frac(-3, 2), int(0), "BE-boundary", "SharpP-hard"),
        (int(0), int(-1), "BF-boundary", "FP"),
        (int(0), int(-2), "BF-boundary", "NP-complete"),
        (int(0), int(-3), "BF-boundary", "Open"),
        (int(0), int(-4), "BF-boundary", "Open"),
        (int(0), int(-5), "BF-boundary", "FP"),
        (int(0), frac(-3, 2), "BF-boundary", "SharpP-hard"),
        (int(0), frac(-9, 2), "BF-boundary", "Open"),
        (frac(-1, 2), frac(-1, 2), "G", "SharpP-hard"),
        (frac(-9, 10), frac(1, 2), "H", "SharpP-hard"),
        (frac(1, 2), frac(-9, 10), "I", "SharpP-hard"),
        (frac(-9, 10), frac(9, 19), "Q1-hyperbola", "FP"),
        (frac(-1, 2), int(2), "J", "FP"),
        (int(2), frac(-1, 2), "K", "FP"),
        (frac(1, 2), frac(-1, 4), "L", "FP"),
        (frac(-1, 4), frac(1, 2), "M", "FP"),
        (frac(-1, 2), frac(1, 4), "Open", "Open"),
        (frac(-1, 3), frac(1, 9), "Open", "Open"),
    ];
    for (x, y, region, status) in table {
        let p = PlanePoint::new(x.clone(), y.clone());
        let c = classify(&p);
        ensure!(
            c.region.label() == *region && c.status.label() == *status,
            "{p}: got {}/{} but the table says {region}/{status}",
            c.region,
            c.status
        );
    }
    Ok(format!("{} transcribed points", table.len()))
}

fn four_edge_diamond(w: &Rational) -> Gadget {
    let graph = Multigraph::from_edges(4, &[(0, 2), (2, 1), (0, 3), (3, 1)]).unwrap();
    let weights = WeightFunction::uniform(&graph, w);
    Gadget {
        graph,
        s: 0,
        t: 1,
        weights,
    }
}

fn shift_algebra(rng: &mut ChaCha8Rng) -> Outcome {
    let (mut cases, mut singular) = (0, 0);
    while cases < 200 {
        let p = PlanePoint::new(random_rational(rng, 8, 4), random_rational(rng, 8, 4));
        let (q, w) = (p.q(), p.gamma());
        if q.is_zero() || w.is_zero() {
            continue;
        }
        let k = rng.gen_range(1..=6usize);
        let bundle = Gadget {
            weights: WeightFunction::uniform(&families::bundle(k), &w),
            graph: families::bundle(k),
            s: 0,
            t: 1,
        };
        let path = Gadget {
            weights: WeightFunction::uniform(&families::path(k + 1), &w),
            graph: families::path(k + 1),
            s: 0,
            t: k,
        };
        let thick = weight_by_subsets(&bundle, &q).ok_or("bundle has Z_s|t = 0")?;
        ensure!(
            thick == gadget::thicken(&w, k as u32),
            "{p}, k={k}: thicken"
        );
        ensure!(&thick + int(1) == pow(&p.y, k as i64), "{p}, k={k}: y^k");
        if let Some(stretched) = weight_by_subsets(&path, &q) {
            match gadget::stretch(&w, &q, k as u32) {
                Ok(closed) => ensure!(closed == stretched, "{p}, k={k}: stretch"),
                // a shorter prefix of the path implements nothing; only x^k applies
                Err(Error::SingularSeries) => singular += 1,
                Err(e) => return Err(format!("{p}, k={k}: stretch: {e}")),
            }
            if !stretched.is_zero() {
                ensure!(
                    &q / &stretched + int(1) == pow(&p.x, k as i64),
                    "{p}, k={k}: x^k"
                );
            }
        }
        if let Some(dw) = weight_by_subsets(&four_edge_diamond(&w), &q) {
            if let Ok(d) = diamond(&p) {
                ensure!(
                    d.y == &dw + int(1) && d.q() == q,
                    "{p}: diamond point {d} vs weight {dw}"
                );
            }
        }
        cases += 1;
    }

    let mut substitutions = 0;
    while substitutions < 200 {
        let host = random_graph(rng, 5, 5);
        let Some(edge) = host.edges().iter().find(|e| !e.is_loop()).map(|e| e.id) else {
            continue;
        };
        let q = random_nonzero(rng, 6, 4);
        let hw: Vec<Rational> = (0..host.edge_count())
            .map(|_| random_rational(rng, 6, 4))
            .collect();
        let mut host_w = WeightFunction::from_list(&host, &hw).unwrap();
        let inner = random_graph(rng, 4, 5);
        if inner.vertex_count() < 2 {
            continue;
        }
        let gw: Vec<Rational> = (0..inner.edge_count())
            .map(|_| random_rational(rng, 6, 4))
            .collect();
        let gd = Gadget {
            weights: WeightFunction::from_list(&inner, &gw).unwrap(),
            graph: inner,
            s: 0,
            t: 1,
        };
        let split = z_two_terminal_brute(&gd.graph, 0, 1, &q, &gd.weights).unwrap();
        if split.z_s_bar_t.is_zero() {
            continue;
        }
        let w_star = &q * &split.z_st / &split.z_s_bar_t;
        let (big, big_w) = ok(gadget::substitute(&host, &host_w, edge, &gd), "substitute")?;
        let lhs = z_brute(&big, &q, &big_w).unwrap();
        host_w.insert(edge, w_star);
        let rhs = z_brute(&host, &q, &host_w).unwrap() * &split.z_s_bar_t / (&q * &q);
        ensure!(lhs == rhs, "substitution identity fails: {lhs} vs {rhs}");
        substitutions += 1;
    }
    Ok(format!(
        "{cases} thicken/stretch/diamond cases ({singular} with a singular path prefix); {substitutions} substitutions"
    ))
}

/// Independent diamond map in point form.
fn diamond_point(p: &PlanePoint) -> PlanePoint {
    let (x, y) = (&p.x, &p.y);
    let nx = (x + x * x + x * x * x + y) / (int(1) + x * int(2) + y);
    let ny = (x + y) * (x + y) / ((x + int(1)) * (x + int(1)));
    PlanePoint::new(nx, ny)
}

fn diamond_runs(rng: &mut ChaCha8Rng) -> Outcome {
    let mut points = vec![
        PlanePoint::new(frac(-1, 4), frac(-1, 2)),
        PlanePoint::new(frac(-1, 2), int(0)),
        PlanePoint::new(frac(-1, 3), frac(-1, 3)),
        PlanePoint::new(frac(-3, 5), frac(1, 5)),
        PlanePoint::new(frac(-1, 2), frac(3, 16)),
        PlanePoint::new(frac(-1, 3), frac(-1, 27)),
        PlanePoint::new(frac(-2, 5), frac(13, 250)),
        PlanePoint::new(frac(-1, 4), frac(-19, 128)),
    ];
    let hand = points.len();
    while points.len() < hand + 50 {
        let d = rng.gen_range(2..=8);
        let p = PlanePoint::new(
            frac(rng.gen_range(1 - d..d), d),
            frac(rng.gen_range(1 - d..d), d),
        );
        if classify(&p).region.label() == "G" {
            points.push(p);
        }
    }
    let (mut critical, mut left) = (0, 0);
    for p in &points {
        let run = ok(diamond_iterate(p, 10_000), &format!("diamond_iterate{p}"))?;
        let q = p.q();
        let mut prev = p.clone();
        for step in &run.steps {
            ensure!(
                step.point.y > prev.y,
                "{p}: y fell from {} to {}",
                prev.y,
                step.point.y
            );
            ensure!(step.point.q() == q, "{p}: q drifted");
            if step.kind == StepKind::Diamond {
                ensure!(
                    step.point == diamond_point(&prev),
                    "{p}: diamond step mismatch"
                );
            }
            prev = step.point.clone();
        }
        ensure!(run.point.y > int(1), "{p}: finished at y = {}", run.point.y);
        ensure!(
            run.critical_line_hits() <= 2,
            "{p}: {} critical-line hits",
            run.critical_line_hits()
        );
        ensure!(
            ok(run.expr.weight(&q), "weight")? == run.point.gamma(),
            "{p}: expression weight"
        );
        critical += usize::from(run.critical_line_hits() > 0);
        left += usize::from(run.steps.iter().any(|s| s.kind == StepKind::OnLeftLine));
    }
    ensure!(
        critical > 0 && left > 0,
        "exceptional branches not exercised ({critical}, {left})"
    );
    Ok(format!(
        "{hand} hand-placed + 50 random points; {critical} runs met y=-1-2x, {left} met x=-1"
    ))
}

fn reduction_end_to_end(rng: &mut ChaCha8Rng) -> Outcome {
    let qs = [frac(3, 2), frac(5, 2), frac(1, 2), int(-1)];
    let mut instances: Vec<(Multigraph, usize, usize)> = Vec::new();
    for g in connected_classes(6, false) {
        let n = g.vertex_count();
        for (s, t) in (0..n).tuple_combinations() {
            if !g
                .edges()
                .iter()
                .any(|e| (e.u, e.v) == (s, t) || (e.u, e.v) == (t, s))
            {
                instances.push((g.clone(), s, t));
            }
        }
    }
    let exhaustive = instances.len();
    while instances.len() < exhaustive + 25 {
        let g = random_connected(rng, 7, 9, false);
        let n = g.vertex_count();
        if n < 3 {
            continue;
        }
        let (s, t) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if s != t
            && !g
                .edges()
                .iter()
                .any(|e| (e.u, e.v) == (s, t) || (e.u, e.v) == (t, s))
        {
            instances.push((g, s, t));
        }
    }
    let mut queries = 0;
    for (g, s, t) in &instances {
        let truth = count_min_cuts_brute(g, *s, *t).unwrap();
        for q in &qs {
            let mut oracle = idealized_oracle(q);
            let report = ok(
                count_min_cuts_via_sign(g, *s, *t, q, &mut oracle),
                &format!("{:?} s={s} t={t} q={q}", edges_of(g)),
            )?;
            ensure!(
                report.count == truth,
                "{:?} s={s} t={t} q={q}: {:?} vs brute {truth:?}",
                edges_of(g),
                report.count
            );
            let facts = ok(check_facts(g, *s, *t, &report.params, truth), "check_facts")?;
            ensure!(
                facts.joined && facts.separated,
                "{:?} q={q}: facts {facts:?}",
                edges_of(g)
            );

            // endpoint signs, recomputed by enumeration on G'
            let expected = if q > &int(1) || q.is_negative() {
                (SignValue::Positive, SignValue::Negative)
            } else {
                (SignValue::Negative, SignValue::Positive)
            };
            let sigma = if q > &int(1) { int(1) } else { int(-1) };
            let mut got = Vec::new();
            for eps in [&report.params.eps_lo, &report.params.eps_hi] {
                let mut h = g.clone();
                let mut w = WeightFunction::uniform(g, &report.params.heavy);
                let id = h.add_edge(*s, *t).unwrap();
                w.insert(id, int(-1) - &sigma * eps);
                got.push(SignValue::of(&z_brute(&h, q, &w).unwrap()));
            }
            ensure!(
                (got[0], got[1]) == expected && report.endpoint_signs == expected,
                "{:?} q={q}: endpoint signs {got:?} / {:?}",
                edges_of(g),
                report.endpoint_signs
            );
            queries += report.queries;
        }
    }
    Ok(format!(
        "{exhaustive} exhaustive + 25 random instances x 4 values of q; {queries} oracle queries"
    ))
}

// ---------------------------------------------------------------- driver

struct Criterion {
    number: u8,
    name: &'static str,
    limit: Duration,
    check: fn(&mut ChaCha8Rng) -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            number: 1,
            name: "Petersen flow polynomials",
            limit: Duration::from_secs(60),
            check: petersen_polynomials,
        },
        Criterion {
            number: 2,
            name: "Petersen sign facts at q=5/2 and integer roots",
            limit: Duration::from_secs(1),
            check: petersen_signs,
        },
        Criterion {
            number: 3,
            name: "clique-minus-edge gadget closed form",
            limit: Duration::from_secs(30),
            check: clique_gadget,
        },
        Criterion {
            number: 4,
            name: "multivariate evaluator vs subset enumeration",
            limit: Duration::from_secs(120),
            check: evaluator_equivalence,
        },
        Criterion {
            number: 5,
            name: "chromatic, flow and Potts specializations",
            limit: Duration::from_secs(120),
            check: specializations,
        },
        Criterion {
            number: 6,
            name: "binary matroid identities",
            limit: Duration::from_secs(60),
            check: matroid_layer,
        },
        Criterion {
            number: 7,
            name: "polynomial-time sign rules vs exact sign",
            limit: Duration::from_secs(300),
            check: sign_algorithms,
        },
        Criterion {
            number: 8,
            name: "region map goldens",
            limit: Duration::from_secs(1),
            check: region_goldens,
        },
        Criterion {
            number: 9,
            name: "shift algebra and substitution identity",
            limit: Duration::from_secs(60),
            check: shift_algebra,
        },
        Criterion {
            number: 10,
            name: "diamond iteration out of the unit square",
            limit: Duration::from_secs(60),
            check: diamond_runs,
        },
        Criterion {
            number: 11,
            name: "sign-oracle cut counting end to end",
            limit: Duration::from_secs(600),
            check: reduction_end_to_end,
        },
    ];
    let only: Vec<u8> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut failed = 0;
    for c in criteria
        .iter()
        .filter(|c| only.is_empty() || only.contains(&c.number))
    {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5157_0000 + u64::from(c.number));
        let start = Instant::now();
        let outcome = (c.check)(&mut rng);
        let elapsed = start.elapsed();
        let verdict = match &outcome {
            Ok(_) if elapsed > c.limit => "FAIL",
            Ok(_) => "PASS",
            Err(_) => "FAIL",
        };
        let detail = match outcome {
            Ok(d) if elapsed > c.limit => format!("{d}; over the time limit"),
            Ok(d) => d,
            Err(e) => e,
        };
        failed += usize::from(verdict == "FAIL");
        println!(
            "{verdict} criterion {:>2} {} ({:.2?} of {:?}): {detail}",
            c.number, c.name, elapsed, c.limit
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} acceptance criteria failed");
        ExitCode::FAILURE
    }
}
