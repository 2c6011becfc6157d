//! Argument parsing and command execution for the `tuttesign` binary.
//!
//! [`run`] never touches the process streams; it returns the text for stdout and stderr
//! together with the exit status, so the binary and the tests share one code path.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use tuttesign::eval::{chromatic_poly, flow_poly, z_multivariate};
use tuttesign::gadget::{construct, Lemma};
use tuttesign::graph::{parse_graph, GraphFile};
use tuttesign::reduction::{count_min_cuts_gadget, count_min_cuts_via_sign, idealized_oracle};
use tuttesign::region::{classify, grid_to_csv, scan_grid, PlanePoint};
use tuttesign::sign::{sign_with_method, SignMethod};
use tuttesign::{parse_rational, Error, Rational, UniPoly};

/// Grid points `map` will classify in one call.
const MAP_POINT_CAP: usize = 1_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "tuttesign",
    version,
    about = "Exact Tutte polynomial values, signs and complexity regions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact value of Z(G; q, γ).
    Eval {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        q: Rational,
        /// Weight for edges the file leaves unweighted.
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        gamma: Option<Rational>,
        /// Comma-separated per-edge weights, overriding the file.
        #[arg(long, allow_hyphen_values = true)]
        weights: Option<String>,
    },
    /// Sign of Z at the point (x, y) with uniform weight y − 1.
    Sign {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        x: Rational,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        y: Rational,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
    },
    /// Region and complexity status of (x, y).
    Classify {
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        x: Rational,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        y: Rational,
    },
    /// CSV classification of a rectangular grid.
    Map {
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        xmin: Rational,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        xmax: Rational,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        ymin: Rational,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        ymax: Rational,
        #[arg(long, value_parser = rational)]
        step: Rational,
    },
    /// Chromatic polynomial P(G; q).
    Chromatic {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Flow polynomial F(G; q).
    Flow {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Builds and certifies the gadgets of one construction at (x, y).
    Gadget {
        #[arg(long)]
        lemma: Lemma,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        x: Rational,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        y: Rational,
        /// Largest gadget printed literally and evaluated whole.
        #[arg(long, default_value_t = 4096)]
        max_edges: usize,
    },
    /// Counts minimum s–t cuts through a sign oracle.
    Mincut {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        q: Rational,
        #[arg(long, value_enum, default_value_t = ModeArg::Idealized)]
        mode: ModeArg,
        /// Print the whole reduction report instead of just (k, C).
        #[arg(long)]
        report: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Fp,
    Exact,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Idealized,
    Gadget,
}

fn rational(text: &str) -> Result<Rational, String> {
    parse_rational(text).map_err(|e| e.to_string())
}

/// What a command printed and how it exited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    status: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    status: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(cli.command) {
        Ok(stdout) => Outcome {
            status: 0,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            status: 1,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

#[derive(Debug)]
enum Failure {
    Io(PathBuf, std::io::Error),
    Domain(Error),
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Io(path, e) => write!(f, "{}: {e}", path.display()),
            Failure::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

fn read_graph(path: &Path) -> Result<GraphFile, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))?;
    Ok(parse_graph(&text)?)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string(value).expect("report types serialize");
    text.push('\n');
    text
}

fn poly_json(p: &UniPoly) -> String {
    let coefficients: Vec<String> = p.coeffs().iter().map(ToString::to_string).collect();
    to_json(&json!({ "coefficients": coefficients, "expression": p.to_string() }))
}

fn execute(command: Command) -> Result<String, Failure> {
    match command {
        Command::Eval {
            graph,
            q,
            gamma,
            weights,
        } => {
            let file = read_graph(&graph)?;
            let wf = match (weights, gamma) {
                (Some(list), _) => {
                    let ws = list
                        .split(',')
                        .map(|w| parse_rational(w.trim()))
                        .collect::<Result<Vec<_>, _>>()?;
                    tuttesign::WeightFunction::from_list(&file.graph, &ws)?
                }
                (None, Some(g)) => file.weights_or(&g),
                (None, None) => file.explicit_weights()?,
            };
            Ok(format!("{}\n", z_multivariate(&file.graph, &q, &wf)?))
        }
        Command::Sign {
            graph,
            x,
            y,
            method,
        } => {
            let file = read_graph(&graph)?;
            let method = match method {
                MethodArg::Auto => SignMethod::Auto,
                MethodArg::Fp => SignMethod::Fp,
                MethodArg::Exact => SignMethod::Exact,
            };
            let report = sign_with_method(&file.graph, &PlanePoint::new(x, y), method)?;
            Ok(to_json(&report))
        }
        Command::Classify { x, y } => Ok(to_json(&classify(&PlanePoint::new(x, y)))),
        Command::Map {
            xmin,
            xmax,
            ymin,
            ymax,
            step,
        } => {
            let span = |lo: &Rational, hi: &Rational| {
                if hi < lo {
                    0.0
                } else {
                    tuttesign::arith::rational::approx_f64(&((hi - lo) / &step)) + 1.0
                }
            };
            let points = span(&xmin, &xmax) * span(&ymin, &ymax);
            if points > MAP_POINT_CAP as f64 {
                return Err(Error::CapExceeded {
                    what: "grid points",
                    size: points as usize,
                    cap: MAP_POINT_CAP,
                }
                .into());
            }
            let rows = scan_grid((&xmin, &xmax), (&ymin, &ymax), &step)?;
            Ok(grid_to_csv(&rows))
        }
        Command::Chromatic { graph } => Ok(poly_json(&chromatic_poly(&read_graph(&graph)?.graph))),
        Command::Flow { graph } => Ok(poly_json(&flow_poly(&read_graph(&graph)?.graph))),
        Command::Gadget {
            lemma,
            x,
            y,
            max_edges,
        } => {
            let input = PlanePoint::new(x, y);
            let mut parts = Vec::new();
            for c in construct(&input, lemma)? {
                let certificate = c.certify(max_edges)?;
                let edges = c.expr.edge_count();
                let file = match c.expr.expand(max_edges) {
                    Ok(gd) => Some(gd.to_text()?),
                    Err(Error::CapExceeded { .. }) => None,
                    Err(e) => return Err(e.into()),
                };
                parts.push(json!({
                    "role": c.role,
                    "point": c.point,
                    "edges": edges.to_string(),
                    "certificate": certificate,
                    "gadget": file,
                }));
            }
            Ok(to_json(
                &json!({ "lemma": lemma.name(), "input": input, "constructions": parts }),
            ))
        }
        Command::Mincut {
            graph,
            s,
            t,
            q,
            mode,
            report,
        } => {
            let file = read_graph(&graph)?;
            let mut oracle = idealized_oracle(&q);
            let result = match mode {
                ModeArg::Idealized => count_min_cuts_via_sign(&file.graph, s, t, &q, &mut oracle)?,
                ModeArg::Gadget => count_min_cuts_gadget(&file.graph, s, t, &q, &mut oracle)?,
            };
            Ok(if report {
                to_json(&result)
            } else {
                to_json(&result.count)
            })
        }
    }
}
