//! Splitting terminals along a bipartition, and the Z4 labelling that turns
//! zero paths into non-zero ones.

use serde_json::json;

use super::ReductionTrace;
use crate::connectivity::{bipartition, two_colouring};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

/// The split graph with its two terminal copies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitInstance {
    pub graph: Graph,
    /// `a1` keeps the id of `a` and sees the neighbours of `a` in the second
    /// class of `g - a`.
    pub a1: VertexSet,
    /// `a2` is fresh and sees the neighbours of `a` in the first class.
    pub a2: VertexSet,
    pub trace: ReductionTrace,
}

impl SplitInstance {
    /// The instance `(g' - A_{3-i}, A_i)` for `i` in `{1, 2}`.
    pub fn side(&self, i: usize) -> (Graph, VertexSet) {
        let (keep, drop) = if i == 1 { (&self.a1, &self.a2) } else { (&self.a2, &self.a1) };
        (self.graph.without(drop), keep.clone())
    }
}

/// Replaces each terminal `a` by two copies attached to the two colour
/// classes of `g - a`. Requires `g - a` bipartite.
pub fn bipartite_split(g: &Graph, a: &VertexSet) -> Result<SplitInstance> {
    let (v1, v2) = bipartition(g, a).ok_or_else(|| Error::NotBipartite("graph minus terminals".into()))?;
    let mut h = g.without(a);
    let mut trace = ReductionTrace::default();
    for v in h.vertices() {
        trace.forward_vertex_map.insert(v, vec![v]);
    }
    let (mut a1, mut a2) = (VertexSet::new(), VertexSet::new());
    for (y, &x) in (g.next_id()..).zip(a) {
        h.add_vertex(x);
        h.add_vertex(y);
        for w in g.neighbors(x) {
            if v2.contains(&w) {
                h.add_edge(x, w)?;
            } else if v1.contains(&w) {
                h.add_edge(y, w)?;
            }
        }
        a1.insert(x);
        a2.insert(y);
        trace.forward_vertex_map.insert(x, vec![x, y]);
        trace.a_map.insert(x, vec![x, y]);
    }
    let dropped: Vec<(Vertex, Vertex)> =
        g.edges().filter(|(u, v)| a.contains(u) && a.contains(v)).collect();
    trace.notes.insert("dropped_terminal_edges".into(), json!(dropped));
    Ok(SplitInstance { graph: h, a1, a2, trace })
}

/// Pulls hitting sets of the two sides back to the original graph:
/// `{a : a1 ∈ X1 or a2 ∈ X2} ∪ (X1 ∪ X2) \ (A1 ∪ A2)`.
pub fn pullback_split_hitting_set(split: &SplitInstance, x1: &VertexSet, x2: &VertexSet) -> VertexSet {
    let mut out = VertexSet::new();
    for (&a, copies) in &split.trace.a_map {
        if x1.contains(&copies[0]) || x2.contains(&copies[1]) {
            out.insert(a);
        }
    }
    for &v in x1.iter().chain(x2) {
        if !split.a1.contains(&v) && !split.a2.contains(&v) {
            out.insert(v);
        }
    }
    out
}

/// The Z4 labelling with 0 on edges at terminals and 1 elsewhere. Requires
/// `g` bipartite with all terminals of a component in one colour class.
pub fn build_gamma_instance(g: &Graph, a: &VertexSet) -> Result<Graph> {
    let colour = two_colouring(g, &VertexSet::new()).ok_or_else(|| Error::NotBipartite("graph".into()))?;
    for comp in g.components() {
        let cs: VertexSet = comp.iter().filter(|v| a.contains(v)).map(|v| usize::from(colour[v])).collect();
        if cs.len() > 1 {
            return Err(Error::Precondition(format!(
                "terminals of the component of {} lie in both colour classes",
                comp.first().unwrap()
            )));
        }
    }
    let mut h = g.clone();
    h.set_modulus(4)?;
    let edges: Vec<(Vertex, Vertex)> = h.edges().collect();
    for (u, v) in edges {
        let x = if a.contains(&u) || a.contains(&v) { 0 } else { 1 };
        h.set_label(u, v, x)?;
    }
    Ok(h)
}
