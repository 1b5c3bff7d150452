//! JSON and DOT encodings of graphs with an optional terminal set `A`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

/// Wire form of a graph:
/// `{"m": int|null, "vertices": [..], "edges": [[u,v],..], "labels": [[u,v,x],..]?, "A": [..]?}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub m: Option<u32>,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<[Vertex; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<(Vertex, Vertex, u32)>>,
    #[serde(rename = "A", default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<Vertex>>,
}

impl GraphDoc {
    pub fn from_graph(g: &Graph, a: Option<&VertexSet>) -> Self {
        GraphDoc {
            m: g.modulus(),
            vertices: g.vertices().collect(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
            labels: g
                .is_labelled()
                .then(|| g.edges().map(|(u, v)| (u, v, g.label(u, v).unwrap())).collect()),
            a: a.map(|s| s.iter().copied().collect()),
        }
    }

    pub fn to_graph(&self) -> Result<(Graph, VertexSet)> {
        let mut g = Graph::new();
        for &v in &self.vertices {
            if !g.add_vertex(v) {
                return Err(Error::Parse(format!("vertex {v} listed twice")));
            }
        }
        for &[u, v] in &self.edges {
            g.add_edge(u, v)?;
        }
        match (self.m, &self.labels) {
            (None, Some(_)) => return Err(Error::Parse("labels given without \"m\"".into())),
            (None, None) => {}
            (Some(m), labels) => {
                g.set_modulus(m)?;
                if let Some(labels) = labels {
                    let mut seen = std::collections::BTreeSet::new();
                    for &(u, v, x) in labels {
                        g.set_label(u, v, x)?;
                        seen.insert(crate::graph::edge_key(u, v));
                    }
                    if seen.len() != g.edge_count() {
                        return Err(Error::Parse("some edge has no label".into()));
                    }
                }
            }
        }
        let a: VertexSet = self.a.iter().flatten().copied().collect();
        if let Some(&v) = a.iter().find(|&&v| !g.contains(v)) {
            return Err(Error::UnknownVertex(v));
        }
        Ok((g, a))
    }
}

pub fn to_json(g: &Graph, a: Option<&VertexSet>) -> String {
    serde_json::to_string(&GraphDoc::from_graph(g, a)).expect("graph docs always serialise")
}

/// Parses and validates a graph document; errors carry the JSON position.
pub fn from_json(s: &str) -> Result<(Graph, VertexSet)> {
    let doc: GraphDoc = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    doc.to_graph()
}

/// DOT rendering; vertices of `a` are drawn as boxes.
pub fn to_dot(g: &Graph, a: &VertexSet) -> String {
    let mut out = String::from("graph G {\n");
    if let Some(m) = g.modulus() {
        out.push_str(&format!("  graph [m={m}];\n"));
    }
    for v in g.vertices() {
        if a.contains(&v) {
            out.push_str(&format!("  {v} [shape=box];\n"));
        } else {
            out.push_str(&format!("  {v};\n"));
        }
    }
    for (u, v) in g.edges() {
        match g.label(u, v) {
            Some(x) => out.push_str(&format!("  {u} -- {v} [label=\"{x}\"];\n")),
            None => out.push_str(&format!("  {u} -- {v};\n")),
        }
    }
    out.push_str("}\n");
    out
}

/// Reads the DOT dialect written by [`to_dot`].
pub fn from_dot(s: &str) -> Result<(Graph, VertexSet)> {
    let bad = |n: usize, line: &str| Error::Parse(format!("line {}: unexpected `{line}`", n + 1));
    let mut lines = s.lines().enumerate();
    match lines.next() {
        Some((_, l)) if l.trim() == "graph G {" => {}
        _ => return Err(Error::Parse("line 1: expected `graph G {`".into())),
    }
    let mut g = Graph::new();
    let mut a = VertexSet::new();
    let mut labels = Vec::new();
    let mut closed = false;
    let num = |t: &str, n: usize, line: &str| t.trim().parse::<usize>().map_err(|_| bad(n, line));
    for (n, raw) in lines {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line == "}" {
            closed = true;
            continue;
        }
        if closed {
            return Err(bad(n, line));
        }
        let body = line.strip_suffix(';').ok_or_else(|| bad(n, line))?;
        if let Some(m) = body.strip_prefix("graph [m=").and_then(|r| r.strip_suffix(']')) {
            let m = m.parse::<u32>().map_err(|_| bad(n, line))?;
            g.set_modulus(m)?;
        } else if let Some((lhs, rhs)) = body.split_once(" -- ") {
            let (v, attr) = match rhs.split_once(' ') {
                Some((v, attr)) => (v, Some(attr)),
                None => (rhs, None),
            };
            let (u, v) = (num(lhs, n, line)?, num(v, n, line)?);
            g.add_edge(u, v)?;
            if let Some(attr) = attr {
                let x = attr
                    .strip_prefix("[label=\"")
                    .and_then(|r| r.strip_suffix("\"]"))
                    .ok_or_else(|| bad(n, line))?;
                labels.push((u, v, x.parse::<u32>().map_err(|_| bad(n, line))?));
            }
        } else if let Some(v) = body.strip_suffix(" [shape=box]") {
            let v = num(v, n, line)?;
            g.add_vertex(v);
            a.insert(v);
        } else {
            g.add_vertex(num(body, n, line)?);
        }
    }
    if !closed {
        return Err(Error::Parse("missing closing `}`".into()));
    }
    if g.is_labelled() {
        if labels.len() != g.edge_count() {
            return Err(Error::Parse("some edge has no label".into()));
        }
        for (u, v, x) in labels {
            g.set_label(u, v, x)?;
        }
    } else if !labels.is_empty() {
        return Err(Error::Parse("edge labels without a modulus".into()));
    }
    Ok((g, a))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> (Graph, VertexSet) {
        let mut g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        g.add_vertex(9);
        g.set_modulus(4).unwrap();
        g.set_label(1, 2, 3).unwrap();
        (g, [0, 3].into())
    }

    #[test]
    fn json_round_trip_is_exact() {
        let (g, a) = sample();
        let s = to_json(&g, Some(&a));
        let (h, b) = from_json(&s).unwrap();
        assert_eq!((&h, &b), (&g, &a));
        assert_eq!(to_json(&h, Some(&b)), s);
    }

    #[test]
    fn dot_round_trip_is_exact() {
        let (g, a) = sample();
        let s = to_dot(&g, &a);
        assert!(s.contains("0 [shape=box]"));
        let (h, b) = from_dot(&s).unwrap();
        assert_eq!((&h, &b), (&g, &a));
        assert_eq!(to_dot(&h, &b), s);
    }

    #[test]
    fn malformed_json_reports_position() {
        let err = from_json("{\"m\": null, \"vertices\": [0,").unwrap_err();
        assert!(err.to_string().contains("line 1"), "{err}");
        let err = from_json(r#"{"m":null,"vertices":[0],"edges":[[0,1]]}"#).unwrap_err();
        assert_eq!(err, Error::UnknownVertex(1));
    }
}
