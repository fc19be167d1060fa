//! Line-oriented graph files and seeded random instances.
//!
//! ```text
//! p <n> <m>          header, first non-comment line
//! s <vertex>         source, exactly once
//! e <tail> <head>    m lines; edge ID = 0-based order of e-lines
//! ```
//!
//! `#` starts a comment. An e-line may end in `# <id>`; when every e-line
//! carries one, those IDs are used instead of line order. This is how
//! certificates keep the original edge IDs after deletions.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{normalize, Digraph, EdgeId, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedGraph {
    pub graph: Digraph,
    pub source: VertexId,
    pub warnings: Vec<String>,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_num(line: usize, token: Option<&str>, what: &str) -> Result<usize> {
    let token = token.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    token
        .parse()
        .map_err(|_| parse_err(line, format!("invalid {what} '{token}'")))
}

pub fn parse_graph(text: &str) -> Result<ParsedGraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut source: Option<VertexId> = None;
    let mut edges: Vec<(usize, VertexId, VertexId, Option<EdgeId>)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let (body, comment) = match raw.split_once('#') {
            Some((b, c)) => (b, Some(c.trim())),
            None => (raw, None),
        };
        let mut tokens = body.split_whitespace();
        let Some(tag) = tokens.next() else { continue };

        match tag {
            "p" => {
                if header.is_some() {
                    return Err(parse_err(line, "duplicate header"));
                }
                let n = parse_num(line, tokens.next(), "vertex count")?;
                let m = parse_num(line, tokens.next(), "edge count")?;
                header = Some((n, m));
            }
            _ if header.is_none() => {
                return Err(parse_err(line, "expected 'p <n> <m>' header first"));
            }
            "s" => {
                if source.is_some() {
                    return Err(parse_err(line, "duplicate source declaration"));
                }
                source = Some(parse_num(line, tokens.next(), "source vertex")?);
            }
            "e" => {
                let tail = parse_num(line, tokens.next(), "tail")?;
                let head = parse_num(line, tokens.next(), "head")?;
                let id = comment.and_then(|c| c.parse::<EdgeId>().ok());
                edges.push((line, tail, head, id));
            }
            other => return Err(parse_err(line, format!("unknown line type '{other}'"))),
        }
        if let Some(extra) = tokens.next() {
            return Err(parse_err(line, format!("unexpected token '{extra}'")));
        }
    }

    let last = text.lines().count();
    let (n, m) = header.ok_or_else(|| parse_err(last, "missing 'p <n> <m>' header"))?;
    let source = source.ok_or_else(|| parse_err(last, "missing 's <vertex>' line"))?;
    if edges.len() != m {
        return Err(parse_err(
            last,
            format!(
                "header declares {m} edges but {} e-lines found",
                edges.len()
            ),
        ));
    }
    let check = |line: usize, v: VertexId| {
        if v < n {
            Ok(())
        } else {
            Err(parse_err(
                line,
                format!("vertex {v} out of range (n = {n})"),
            ))
        }
    };
    if source >= n {
        return Err(parse_err(
            last,
            format!("source {source} out of range (n = {n})"),
        ));
    }

    let with_ids = edges.iter().filter(|e| e.3.is_some()).count();
    let mut raw = Digraph::new(n);
    if with_ids == 0 {
        for &(line, tail, head, _) in &edges {
            check(line, tail)?;
            check(line, head)?;
            raw.add_edge(tail, head)?;
        }
    } else if with_ids == edges.len() {
        let mut by_id: BTreeMap<EdgeId, (usize, VertexId, VertexId)> = BTreeMap::new();
        for &(line, tail, head, id) in &edges {
            check(line, tail)?;
            check(line, head)?;
            let id = id.expect("counted");
            if by_id.insert(id, (line, tail, head)).is_some() {
                return Err(parse_err(line, format!("duplicate edge id {id}")));
            }
        }
        for (id, (_, tail, head)) in by_id {
            while raw.edge_id_bound() < id {
                raw.add_dead_slot();
            }
            raw.add_edge(tail, head)?;
        }
    } else {
        return Err(parse_err(
            last,
            "either every e-line carries an '# <id>' column or none does",
        ));
    }

    let (graph, loops) = normalize(&raw);
    let warnings = loops
        .iter()
        .map(|&e| {
            let v = raw.edge(e).expect("loop edge").tail;
            format!("removed self-loop on vertex {v} (edge {e})")
        })
        .collect();
    Ok(ParsedGraph {
        graph,
        source,
        warnings,
    })
}

/// Canonical text form: alive edges in ID order, each tagged with its ID.
pub fn serialize_graph(g: &Digraph, source: VertexId) -> String {
    let mut out = String::new();
    writeln!(out, "p {} {}", g.vertex_count(), g.alive_edge_count()).unwrap();
    writeln!(out, "s {source}").unwrap();
    for (id, e) in g.alive_edges() {
        writeln!(out, "e {} {} # {id}", e.tail, e.head).unwrap();
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Model {
    /// Distinct ordered pairs, no self-loops.
    #[default]
    Uniform,
    /// Vertices on levels (vertex 0 alone on the first), edges only go to a
    /// strictly later level.
    Layered,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenSpec {
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub model: Model,
}

pub fn gen_random(spec: &GenSpec) -> Result<Digraph> {
    let GenSpec { n, m, seed, model } = *spec;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(VertexId, VertexId)> = match model {
        Model::Uniform => (0..n)
            .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
            .collect(),
        Model::Layered => {
            let levels = ((n as f64).sqrt().ceil() as usize).max(2);
            let level: Vec<usize> = (0..n)
                .map(|v| {
                    if v == 0 {
                        0
                    } else {
                        rng.random_range(1..levels)
                    }
                })
                .collect();
            (0..n)
                .flat_map(|u| (0..n).map(move |v| (u, v)))
                .filter(|&(u, v)| level[u] < level[v])
                .collect()
        }
    };
    if m > pairs.len() {
        return Err(Error::Input(format!(
            "cannot place {m} distinct edges: the {model:?} model allows {} on {n} vertices",
            pairs.len()
        )));
    }
    let mut g = Digraph::new(n);
    for i in index::sample(&mut rng, pairs.len(), m) {
        let (u, v) = pairs[i];
        g.add_edge(u, v)?;
    }
    Ok(g)
}
