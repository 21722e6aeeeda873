//! Text formats for networks and metric spaces.
//!
//! Edge-list format (UTF-8, LF): first line `n`, then one `u v w` line per
//! edge; `#` starts a comment line. Metric-matrix format: first line `n`,
//! then `n` lines of `n` space-separated floats. Weights are written with
//! the shortest decimal representation that parses back to the same `f64`,
//! so write-then-read is the identity and read-then-write normalizes.

use std::fmt::Write as _;
use std::fs;
use std::path::Path as FsPath;

use thiserror::Error;

use crate::graph::{FiniteMetricSpace, MetricViolation, Network, NetworkError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error(transparent)]
    Metric(#[from] MetricViolation),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn parse_err(line: usize, msg: impl Into<String>) -> IoError {
    IoError::Parse {
        line,
        msg: msg.into(),
    }
}

/// Lines that carry data: skips blanks and `#` comments, keeps 1-based numbers.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse_edge_list(text: &str) -> Result<Network, IoError> {
    let mut lines = data_lines(text);
    let (line_no, header) = lines.next().ok_or_else(|| parse_err(1, "missing node count"))?;
    let n: usize = header
        .parse()
        .map_err(|_| parse_err(line_no, format!("invalid node count {header:?}")))?;
    let mut triples = Vec::new();
    for (line_no, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(parse_err(
                line_no,
                format!("expected `u v w`, found {} field(s)", fields.len()),
            ));
        }
        let u: usize = fields[0]
            .parse()
            .map_err(|_| parse_err(line_no, format!("invalid node id {:?}", fields[0])))?;
        let v: usize = fields[1]
            .parse()
            .map_err(|_| parse_err(line_no, format!("invalid node id {:?}", fields[1])))?;
        let w: f64 = fields[2]
            .parse()
            .map_err(|_| parse_err(line_no, format!("invalid weight {:?}", fields[2])))?;
        triples.push((u, v, w));
    }
    Ok(Network::from_triples(n, &triples)?)
}

pub fn format_edge_list(g: &Network) -> String {
    let mut out = String::new();
    writeln!(out, "{}", g.node_count()).unwrap();
    for &(u, v, w) in g.edges() {
        writeln!(out, "{u} {v} {w}").unwrap();
    }
    out
}

pub fn read_edge_list(path: impl AsRef<FsPath>) -> Result<Network, IoError> {
    parse_edge_list(&fs::read_to_string(path)?)
}

pub fn write_edge_list(path: impl AsRef<FsPath>, g: &Network) -> Result<(), IoError> {
    Ok(fs::write(path, format_edge_list(g))?)
}

pub fn parse_metric_matrix(text: &str) -> Result<FiniteMetricSpace, IoError> {
    let mut lines = data_lines(text);
    let (line_no, header) = lines.next().ok_or_else(|| parse_err(1, "missing node count"))?;
    let n: usize = header
        .parse()
        .map_err(|_| parse_err(line_no, format!("invalid node count {header:?}")))?;
    let mut dist = Vec::with_capacity(n * n);
    let mut rows = 0usize;
    for (line_no, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != n {
            return Err(parse_err(
                line_no,
                format!("expected {n} entries, found {}", fields.len()),
            ));
        }
        for f in fields {
            let v: f64 = f
                .parse()
                .map_err(|_| parse_err(line_no, format!("invalid entry {f:?}")))?;
            dist.push(v);
        }
        rows += 1;
    }
    if rows != n {
        return Err(parse_err(0, format!("expected {n} rows, found {rows}")));
    }
    Ok(FiniteMetricSpace::new(n, dist)?)
}

pub fn format_metric_matrix(m: &FiniteMetricSpace) -> String {
    use crate::graph::Dissimilarity;
    let n = m.len();
    let mut out = String::new();
    writeln!(out, "{n}").unwrap();
    for x in 0..n {
        for y in 0..n {
            if y > 0 {
                out.push(' ');
            }
            write!(out, "{}", m.dist(x, y)).unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn read_metric_matrix(path: impl AsRef<FsPath>) -> Result<FiniteMetricSpace, IoError> {
    parse_metric_matrix(&fs::read_to_string(path)?)
}

pub fn write_metric_matrix(path: impl AsRef<FsPath>, m: &FiniteMetricSpace) -> Result<(), IoError> {
    Ok(fs::write(path, format_metric_matrix(m))?)
}
