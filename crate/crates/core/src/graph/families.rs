//! Small named graphs used throughout the tests and constructions.

use super::Multigraph;

fn build(n: usize, pairs: &[(usize, usize)]) -> Multigraph {
    Multigraph::from_edges(n, pairs).expect("family endpoints are in range")
}

pub fn complete(n: usize) -> Multigraph {
    let pairs: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    build(n, &pairs)
}

/// Cycle on `n ≥ 1` vertices; `n = 1` is a loop and `n = 2` a double edge.
pub fn cycle(n: usize) -> Multigraph {
    let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    build(n, &pairs)
}

/// Path on `n` vertices `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> Multigraph {
    let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    build(n, &pairs)
}

/// `k` parallel edges between vertices 0 and 1.
pub fn bundle(k: usize) -> Multigraph {
    build(2, &vec![(0, 1); k])
}

/// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i - (i+5)`.
pub fn petersen() -> Multigraph {
    let mut pairs = Vec::with_capacity(15);
    for i in 0..5 {
        pairs.push((i, (i + 1) % 5));
        pairs.push((i, i + 5));
        pairs.push((5 + i, 5 + (i + 2) % 5));
    }
    build(10, &pairs)
}

/// `K_n` minus the edge between vertices 0 and 1 (the terminals).
pub fn complete_minus_edge(n: usize) -> Multigraph {
    let pairs: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&p| p != (0, 1))
        .collect();
    build(n, &pairs)
}
