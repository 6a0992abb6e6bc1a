//! Text formats: edge lists, JSON graphs, padded graphs, signals and filter
//! coefficients.
//!
//! Edge lists hold one `u v [w]` triple per line with 1-based ids. Lines
//! starting with `#` and blank lines are ignored. An optional `n <count>`
//! line fixes the vertex count; otherwise it is the largest id seen.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Dag, Digraph, Edge};
use crate::padding::PaddedDag;

/// Parses an edge list or a JSON graph (detected by a leading `{`).
pub fn parse_graph(text: &str) -> Result<Digraph<f64>> {
    if text.trim_start().starts_with('{') {
        parse_graph_json(text)
    } else {
        parse_edge_list(text)
    }
}

/// Parses a graph and validates it as a DAG.
pub fn parse_dag(text: &str) -> Result<Dag<f64>> {
    Dag::from_digraph(parse_graph(text)?)
}

pub fn read_dag(path: impl AsRef<Path>) -> Result<Dag<f64>> {
    parse_dag(&std::fs::read_to_string(path)?)
}

pub fn parse_edge_list(text: &str) -> Result<Digraph<f64>> {
    let mut declared_n = None;
    let mut edges = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .collect();
        if fields[0] == "n" {
            if fields.len() != 2 || declared_n.is_some() || !edges.is_empty() {
                return Err(Error::parse(
                    line_no,
                    "vertex count must be a single leading `n <count>` line",
                ));
            }
            declared_n = Some(parse_index(fields[1], line_no)?);
            continue;
        }
        if !(2..=3).contains(&fields.len()) {
            return Err(Error::parse(
                line_no,
                format!("expected `u v [w]`, got {:?}", line),
            ));
        }
        let u = parse_index(fields[0], line_no)?;
        let v = parse_index(fields[1], line_no)?;
        let w = match fields.get(2) {
            Some(s) => parse_number(s, line_no)?,
            None => 1.0,
        };
        edges.push(Edge::new(u, v, w));
    }
    let n = match declared_n {
        Some(n) => n,
        None => edges
            .iter()
            .map(|e| e.from.max(e.to))
            .max()
            .ok_or_else(|| Error::parse(last_line.max(1), "no edges and no vertex count"))?,
    };
    Digraph::new(n, edges)
}

fn parse_index(s: &str, line: usize) -> Result<usize> {
    s.parse::<usize>()
        .map_err(|_| Error::parse(line, format!("invalid vertex id {s:?}")))
}

fn parse_number(s: &str, line: usize) -> Result<f64> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(Error::parse(line, format!("invalid number {s:?}"))),
    }
}

/// Writes an edge list with an explicit vertex count; weights of 1 are omitted.
pub fn write_edge_list(g: &Digraph<f64>) -> String {
    let mut out = format!("n {}\n", g.n());
    for e in g.edges() {
        if e.weight == 1.0 {
            out.push_str(&format!("{} {}\n", e.from, e.to));
        } else {
            out.push_str(&format!("{} {} {}\n", e.from, e.to, e.weight));
        }
    }
    out
}

#[derive(Serialize, Deserialize)]
struct EdgeTriple(usize, usize, #[serde(default = "unit")] f64);

fn unit() -> f64 {
    1.0
}

impl From<&Edge<f64>> for EdgeTriple {
    fn from(e: &Edge<f64>) -> Self {
        EdgeTriple(e.from, e.to, e.weight)
    }
}

impl From<EdgeTriple> for Edge<f64> {
    fn from(t: EdgeTriple) -> Self {
        Edge::new(t.0, t.1, t.2)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    n: usize,
    edges: Vec<EdgeTriple>,
}

/// `{"n": 3, "edges": [[1, 2], [2, 3, 0.5]]}`.
pub fn parse_graph_json(text: &str) -> Result<Digraph<f64>> {
    let g: GraphJson = serde_json::from_str(text)?;
    Digraph::new(g.n, g.edges.into_iter().map(Edge::from))
}

pub fn write_graph_json(g: &Digraph<f64>) -> Result<String> {
    Ok(serde_json::to_string(&GraphJson {
        n: g.n(),
        edges: g.edges().iter().map(EdgeTriple::from).collect(),
    })?)
}

#[derive(Serialize, Deserialize)]
struct AddedEdges {
    connectivity: Vec<EdgeTriple>,
    return_path: Vec<EdgeTriple>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PaddedJson {
    n: usize,
    original_n: usize,
    edges: Vec<EdgeTriple>,
    added_vertices: Vec<usize>,
    added_edges: AddedEdges,
    original_map: Vec<usize>,
}

pub fn write_padded_json(p: &PaddedDag<f64>) -> Result<String> {
    let doc = PaddedJson {
        n: p.n(),
        original_n: p.original_n(),
        edges: p.graph().edges().iter().map(EdgeTriple::from).collect(),
        added_vertices: p.added_vertices().to_vec(),
        added_edges: AddedEdges {
            connectivity: p
                .connectivity_edges()
                .iter()
                .map(EdgeTriple::from)
                .collect(),
            return_path: p.return_path().iter().map(EdgeTriple::from).collect(),
        },
        original_map: p.original_map().to_vec(),
    };
    Ok(serde_json::to_string_pretty(&doc)?)
}

/// Parses and validates a padded graph written by [`write_padded_json`].
pub fn parse_padded_json(text: &str) -> Result<PaddedDag<f64>> {
    let doc: PaddedJson = serde_json::from_str(text)?;
    let graph = Digraph::new(doc.n, doc.edges.into_iter().map(Edge::from))?;
    let connectivity: Vec<Edge<f64>> = doc
        .added_edges
        .connectivity
        .into_iter()
        .map(Edge::from)
        .collect();
    let return_path: Vec<Edge<f64>> = doc
        .added_edges
        .return_path
        .into_iter()
        .map(Edge::from)
        .collect();
    let invalid = |msg: &str| Error::InvalidArgument(format!("padded graph: {msg}"));
    if return_path.is_empty() {
        return Err(invalid("empty return path"));
    }
    if doc.original_map.len() != doc.original_n
        || doc.original_n + doc.added_vertices.len() != doc.n
    {
        return Err(invalid("vertex counts are inconsistent"));
    }
    let in_range = |v: &usize| (1..=doc.n).contains(v);
    if !doc
        .original_map
        .iter()
        .chain(&doc.added_vertices)
        .all(in_range)
    {
        return Err(invalid("vertex id out of range"));
    }
    for e in connectivity.iter().chain(&return_path) {
        if graph.weight(e.from, e.to) != Some(&e.weight) {
            return Err(invalid(&format!(
                "added edge ({}, {}) missing from edges",
                e.from, e.to
            )));
        }
    }
    Ok(PaddedDag {
        graph,
        original_n: doc.original_n,
        added_vertices: doc.added_vertices,
        connectivity,
        return_path,
        original_map: doc.original_map,
    })
}

/// One value per line, or `vertex,value` rows (any order, every vertex once).
pub fn parse_signal(text: &str) -> Result<Vec<f64>> {
    let mut plain = Vec::new();
    let mut indexed: Vec<(usize, f64, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match line.split_once(',') {
            Some((v, x)) => {
                let (v, x) = (v.trim(), x.trim());
                if v.parse::<usize>().is_err() && indexed.is_empty() && plain.is_empty() {
                    continue; // header row
                }
                indexed.push((parse_index(v, line_no)?, parse_number(x, line_no)?, line_no));
            }
            None => plain.push(parse_number(line, line_no)?),
        }
        if !plain.is_empty() && !indexed.is_empty() {
            return Err(Error::parse(line_no, "mixed plain and `vertex,value` rows"));
        }
    }
    if indexed.is_empty() {
        if plain.is_empty() {
            return Err(Error::parse(1, "empty signal"));
        }
        return Ok(plain);
    }
    let n = indexed.len();
    let mut out = vec![None; n];
    for (v, x, line) in indexed {
        if v == 0 || v > n || out[v - 1].is_some() {
            return Err(Error::parse(
                line,
                format!("vertex {v} missing, repeated or out of range 1..={n}"),
            ));
        }
        out[v - 1] = Some(x);
    }
    Ok(out
        .into_iter()
        .map(|x| x.expect("all slots filled"))
        .collect())
}

pub fn write_signal(values: &[f64]) -> String {
    let mut out = String::from("vertex,value\n");
    for (v, x) in values.iter().enumerate() {
        out.push_str(&format!("{},{}\n", v + 1, x));
    }
    out
}

/// Comma- or newline-separated coefficients `h0, h1, ...`.
pub fn parse_coefficients(text: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        for tok in line.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            out.push(parse_number(tok, idx + 1)?);
        }
    }
    if out.is_empty() {
        return Err(Error::EmptyFilter);
    }
    Ok(out)
}
