//! Text interchange formats: graph6 (header-less), DIMACS edge format and a
//! small JSON schema that keeps vertex labels.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Graph, GraphError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Graph6,
    Dimacs,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "graph6" | "g6" => Ok(Format::Graph6),
            "dimacs" | "col" => Ok(Format::Dimacs),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown graph format `{other}`")),
        }
    }
}

pub fn export_graph(g: &Graph, format: Format) -> Result<Vec<u8>, GraphError> {
    match format {
        Format::Graph6 => to_graph6(g).map(String::into_bytes),
        Format::Dimacs => Ok(to_dimacs(g).into_bytes()),
        Format::Json => Ok(to_json(g).into_bytes()),
    }
}

pub fn import_graph(bytes: &[u8], format: Format) -> Result<Graph, GraphError> {
    match format {
        Format::Graph6 => from_graph6(bytes),
        Format::Dimacs => from_dimacs(bytes),
        Format::Json => from_json(bytes),
    }
}

/// Guesses the format from the first non-blank byte.
pub fn detect_format(bytes: &[u8]) -> Format {
    match bytes.iter().find(|b| !b.is_ascii_whitespace()) {
        Some(b'{') => Format::Json,
        Some(b'c') | Some(b'p') => Format::Dimacs,
        _ => Format::Graph6,
    }
}

fn parse_err(offset: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse {
        offset,
        message: message.into(),
    }
}

// graph6 -----------------------------------------------------------------

const G6_MAX: usize = 68_719_476_735;

fn g6_size(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

fn to_graph6(g: &Graph) -> Result<String, GraphError> {
    let n = g.vertex_count();
    if n > G6_MAX {
        return Err(GraphError::Unencodable("graph6", n));
    }
    let mut out = Vec::with_capacity(8 + n * n.saturating_sub(1) / 12);
    g6_size(n, &mut out);
    let (mut acc, mut filled) = (0u8, 0);
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                (acc, filled) = (0, 0);
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are printable ASCII"))
}

fn from_graph6(bytes: &[u8]) -> Result<Graph, GraphError> {
    let mut start = 0;
    if bytes.starts_with(b">>graph6<<") {
        start = 10;
    }
    let mut end = bytes.len();
    while end > start && bytes[end - 1].is_ascii_whitespace() {
        end -= 1;
    }
    let data = &bytes[..end];
    let sextet = |pos: usize| -> Result<usize, GraphError> {
        match data.get(pos) {
            Some(&b) if (63..=126).contains(&b) => Ok((b - 63) as usize),
            Some(&b) => Err(parse_err(pos, format!("byte {b:#04x} outside graph6 range 63..=126"))),
            None => Err(parse_err(pos, "unexpected end of graph6 data")),
        }
    };
    let (n, mut pos) = match data.get(start) {
        None => return Err(parse_err(start, "empty graph6 string")),
        Some(126) if data.get(start + 1) == Some(&126) => {
            let mut n = 0;
            for k in 0..6 {
                n = (n << 6) | sextet(start + 2 + k)?;
            }
            (n, start + 8)
        }
        Some(126) => {
            let mut n = 0;
            for k in 0..3 {
                n = (n << 6) | sextet(start + 1 + k)?;
            }
            (n, start + 4)
        }
        Some(_) => (sextet(start)?, start + 1),
    };
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if data.len() - pos != expected {
        return Err(parse_err(
            pos,
            format!(
                "expected {expected} adjacency bytes for {n} vertices, found {}",
                data.len() - pos
            ),
        ));
    }
    let mut g = Graph::new(n);
    let (mut j, mut i) = (1, 0);
    let mut consumed = 0;
    while consumed < bits {
        let word = sextet(pos)?;
        for b in (0..6).rev() {
            if consumed == bits {
                if (word >> b) & 1 == 1 {
                    return Err(parse_err(pos, "non-zero padding bits"));
                }
                continue;
            }
            if (word >> b) & 1 == 1 {
                g.set_edge(i, j);
            }
            consumed += 1;
            i += 1;
            if i == j {
                j += 1;
                i = 0;
            }
        }
        pos += 1;
    }
    Ok(g)
}

// DIMACS -----------------------------------------------------------------

fn to_dimacs(g: &Graph) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "p edge {} {}", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "e {} {}", u + 1, v + 1);
    }
    s
}

fn from_dimacs(bytes: &[u8]) -> Result<Graph, GraphError> {
    let text = std::str::from_utf8(bytes).map_err(|e| parse_err(e.valid_up_to(), "invalid UTF-8"))?;
    let mut graph: Option<(Graph, usize)> = None;
    let mut seen_edges = 0;
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let at = offset;
        offset += line.len();
        let mut fields = line.split_whitespace();
        match fields.next() {
            None | Some("c") => {}
            Some("p") => {
                if graph.is_some() {
                    return Err(parse_err(at, "second problem line"));
                }
                let kind = fields.next();
                if !matches!(kind, Some("edge") | Some("col")) {
                    return Err(parse_err(at, "expected `p edge N M`"));
                }
                let n = parse_num(fields.next(), at)?;
                let m = parse_num(fields.next(), at)?;
                graph = Some((Graph::new(n), m));
            }
            Some("e") => {
                let (g, _) = graph
                    .as_mut()
                    .ok_or_else(|| parse_err(at, "edge before problem line"))?;
                let u = parse_num(fields.next(), at)?;
                let v = parse_num(fields.next(), at)?;
                if u == 0 || v == 0 {
                    return Err(parse_err(at, "DIMACS vertices are 1-based"));
                }
                g.add_edge(u - 1, v - 1).map_err(|e| parse_err(at, e.to_string()))?;
                seen_edges += 1;
            }
            Some(other) => return Err(parse_err(at, format!("unknown line type `{other}`"))),
        }
    }
    let (g, m) = graph.ok_or_else(|| parse_err(0, "missing problem line"))?;
    if m != seen_edges {
        return Err(parse_err(
            offset,
            format!("header declares {m} edges, found {seen_edges}"),
        ));
    }
    Ok(g)
}

fn parse_num(field: Option<&str>, at: usize) -> Result<usize, GraphError> {
    field
        .ok_or_else(|| parse_err(at, "missing number"))?
        .parse()
        .map_err(|e| parse_err(at, format!("bad number: {e}")))
}

// JSON -------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

fn to_json(g: &Graph) -> String {
    let doc = JsonGraph {
        n: g.vertex_count(),
        edges: g.edges().map(|(u, v)| [u, v]).collect(),
        labels: g.labels().map(<[String]>::to_vec),
    };
    serde_json::to_string(&doc).expect("graph JSON is always serializable")
}

fn byte_offset(bytes: &[u8], line: usize, column: usize) -> usize {
    let line_start: usize = bytes
        .split_inclusive(|&b| b == b'\n')
        .take(line.saturating_sub(1))
        .map(<[u8]>::len)
        .sum();
    line_start + column.saturating_sub(1)
}

fn from_json(bytes: &[u8]) -> Result<Graph, GraphError> {
    let doc: JsonGraph = serde_json::from_slice(bytes)
        .map_err(|e| parse_err(byte_offset(bytes, e.line(), e.column()), e.to_string()))?;
    let mut g = Graph::new(doc.n);
    for [u, v] in doc.edges {
        g.add_edge(u, v)?;
    }
    if let Some(labels) = doc.labels {
        g.set_labels(labels)?;
    }
    Ok(g)
}
