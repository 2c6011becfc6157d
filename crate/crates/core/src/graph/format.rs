//! Line-oriented text format:
//!
//! ```text
//! vertices 3
//! edge 0 1
//! edge 1 2 -1/2   # optional rational weight
//! terminal s 0    # gadget files only
//! terminal t 2
//! ```

use std::fmt::Write as _;

use super::{Multigraph, WeightFunction};
use crate::arith::{parse_rational, Rational};
use crate::error::{Error, Result};

/// Parsed contents of a graph (or gadget) file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: Multigraph,
    /// Per-edge weight in edge order; `None` where the file gave none.
    pub weights: Vec<Option<Rational>>,
    pub source: Option<usize>,
    pub sink: Option<usize>,
}

impl GraphFile {
    /// Fills missing weights with `default`.
    pub fn weights_or(&self, default: &Rational) -> WeightFunction {
        let mut wf = WeightFunction::new();
        for (e, w) in self.graph.edges().iter().zip(&self.weights) {
            wf.insert(e.id, w.clone().unwrap_or_else(|| default.clone()));
        }
        wf
    }

    /// All weights, failing if any edge lacks one.
    pub fn explicit_weights(&self) -> Result<WeightFunction> {
        let mut wf = WeightFunction::new();
        for (i, (e, w)) in self.graph.edges().iter().zip(&self.weights).enumerate() {
            let w = w.clone().ok_or_else(|| {
                Error::Precondition(format!(
                    "edge #{i} has no weight and no default was supplied"
                ))
            })?;
            wf.insert(e.id, w);
        }
        Ok(wf)
    }
}

pub fn parse_graph(text: &str) -> Result<GraphFile> {
    let mut graph: Option<Multigraph> = None;
    let mut weights = Vec::new();
    let (mut source, mut sink) = (None, None);

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse { line, message };
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let number = |tok: &str| -> Result<usize> {
            tok.parse::<usize>()
                .map_err(|_| err(format!("expected a non-negative integer, found {tok:?}")))
        };

        let Some(g) = graph.as_mut() else {
            match tokens.as_slice() {
                ["vertices", n] => {
                    graph = Some(Multigraph::new(number(n)?));
                    continue;
                }
                _ => return Err(err("first line must be `vertices <n>`".into())),
            }
        };

        match tokens.as_slice() {
            ["edge", u, v, rest @ ..] if rest.len() <= 1 => {
                let (u, v) = (number(u)?, number(v)?);
                g.add_edge(u, v)
                    .map_err(|_| err(format!("endpoint out of range in edge {u} {v}")))?;
                let w = rest
                    .first()
                    .map(|t| parse_rational(t).map_err(|e| err(e.to_string())))
                    .transpose()?;
                weights.push(w);
            }
            ["terminal", which, v] => {
                let v = number(v)?;
                if v >= g.vertex_count() {
                    return Err(err(format!("terminal {v} out of range")));
                }
                match *which {
                    "s" => source = Some(v),
                    "t" => sink = Some(v),
                    other => return Err(err(format!("unknown terminal {other:?}"))),
                }
            }
            ["vertices", ..] => return Err(err("duplicate `vertices` line".into())),
            _ => return Err(err(format!("unrecognized line {content:?}"))),
        }
    }

    let graph = graph.ok_or(Error::Parse {
        line: 0,
        message: "missing `vertices <n>` line".into(),
    })?;
    Ok(GraphFile {
        graph,
        weights,
        source,
        sink,
    })
}

/// Writes `g` in the text format, with weights when given and terminal lines when given.
pub fn write_graph(
    g: &Multigraph,
    weights: Option<&WeightFunction>,
    terminals: Option<(usize, usize)>,
) -> Result<String> {
    let mut out = String::new();
    writeln!(out, "vertices {}", g.vertex_count()).unwrap();
    for e in g.edges() {
        match weights {
            Some(wf) => writeln!(out, "edge {} {} {}", e.u, e.v, wf.get(e.id)?).unwrap(),
            None => writeln!(out, "edge {} {}", e.u, e.v).unwrap(),
        }
    }
    if let Some((s, t)) = terminals {
        writeln!(out, "terminal s {s}").unwrap();
        writeln!(out, "terminal t {t}").unwrap();
    }
    Ok(out)
}
