use std::fmt::Write as _;
use std::path::Path;

use crate::engine::{PartialColoring, RunReport};
use crate::graph::Graph;

use super::WorkbenchError;

fn parse_err(line: usize, msg: impl Into<String>) -> WorkbenchError {
    WorkbenchError::Parse {
        line,
        msg: msg.into(),
    }
}

fn numbers(line: &str, lineno: usize, want: usize) -> Result<Vec<usize>, WorkbenchError> {
    let v: Vec<usize> = line
        .split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| parse_err(lineno, format!("not a number: {t:?}")))
        })
        .collect::<Result<_, _>>()?;
    if v.len() != want {
        return Err(parse_err(
            lineno,
            format!("expected {want} numbers, found {}", v.len()),
        ));
    }
    Ok(v)
}

/// Data lines of a text file: blank lines and `#` comments are skipped.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Header `n m`, then `m` lines `u v` with `0 <= u < v < n`.
pub fn parse_graph(text: &str) -> Result<Graph, WorkbenchError> {
    let mut lines = data_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let h = numbers(header, hl, 2)?;
    let (n, m) = (h[0], h[1]);
    let mut edges = Vec::with_capacity(m);
    for (ln, l) in lines {
        let e = numbers(l, ln, 2)?;
        if e[0] >= e[1] || e[1] >= n {
            return Err(parse_err(
                ln,
                format!("edge {} {} violates 0 <= u < v < {n}", e[0], e[1]),
            ));
        }
        edges.push((e[0], e[1]));
    }
    if edges.len() != m {
        return Err(parse_err(
            hl,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    Ok(Graph::from_edges(n, edges)?)
}

pub fn write_graph(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

pub fn read_graph(path: &Path) -> Result<Graph, WorkbenchError> {
    parse_graph(&std::fs::read_to_string(path)?)
}

/// `v c` lines; nodes not listed stay uncolored. A node listed twice is an
/// error.
pub fn parse_partial_coloring(text: &str, n: usize) -> Result<PartialColoring, WorkbenchError> {
    let mut c = PartialColoring::uncolored(n);
    for (ln, l) in data_lines(text) {
        let e = numbers(l, ln, 2)?;
        if e[0] >= n {
            return Err(parse_err(ln, format!("node {} out of range", e[0])));
        }
        if c.is_colored(e[0]) {
            return Err(parse_err(ln, format!("node {} colored twice", e[0])));
        }
        let color = u32::try_from(e[1]).map_err(|_| parse_err(ln, "color too large"))?;
        c.set(e[0], color);
    }
    Ok(c)
}

/// One `v c` line per node; a node listed twice or not at all is an error.
pub fn parse_coloring(text: &str, n: usize) -> Result<PartialColoring, WorkbenchError> {
    let c = parse_partial_coloring(text, n)?;
    if let Some(&v) = c.uncolored_nodes().first() {
        return Err(parse_err(0, format!("node {v} has no color")));
    }
    Ok(c)
}

/// Colored nodes only, in id order.
pub fn write_coloring(c: &PartialColoring) -> String {
    let mut s = String::new();
    for (v, col) in c.as_slice().iter().enumerate() {
        if let Some(col) = col {
            let _ = writeln!(s, "{v} {col}");
        }
    }
    s
}

pub fn write_report(report: &RunReport) -> String {
    report.to_json() + "\n"
}

pub fn write_report_file(report: &RunReport, path: &Path) -> Result<(), WorkbenchError> {
    Ok(std::fs::write(path, write_report(report))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::test_graphs::petersen;

    #[test]
    fn graph_round_trip() {
        let g = petersen();
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn graph_errors() {
        assert!(parse_graph("").is_err());
        assert!(parse_graph("3 1\n1 0\n").is_err());
        assert!(parse_graph("3 2\n0 1\n").is_err());
        assert!(parse_graph("3 2\n0 1\n0 1\n").is_err());
        assert!(parse_graph("3 1\n0 x\n").is_err());
        assert_eq!(parse_graph("# comment\n3 1\n\n0 2\n").unwrap().m(), 1);
    }

    #[test]
    fn coloring_round_trip() {
        let c = PartialColoring::from_colors(vec![1, 2, 3]);
        assert_eq!(parse_coloring(&write_coloring(&c), 3).unwrap(), c);
        assert!(parse_coloring("0 1\n1 2\n", 3).is_err());
        assert!(parse_coloring("0 1\n0 2\n1 1\n2 1\n", 3).is_err());
        let p = parse_partial_coloring("2 3\n", 3).unwrap();
        assert_eq!(p.uncolored_nodes(), vec![0, 1]);
    }
}
