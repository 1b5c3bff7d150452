//! The subdivided grid in which `A`-paths of odd length modulo 4 cannot be
//! packed, and the subdivision reducing length 2 to length 0.

use serde_json::json;

use super::ReductionTrace;
use crate::error::{Error, Result};
use crate::graph::{edge_key, Graph, Path, Vertex, VertexSet};

/// An `n x n` grid whose top-row edges have length 2 and all others length 4,
/// with terminals on the left (paths of length 4) and on the right (paths of
/// length `d + 2`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub graph: Graph,
    pub a: VertexSet,
    pub n: usize,
    pub d: usize,
    /// Left terminals, top to bottom.
    pub left: Vec<Vertex>,
    /// Right terminals, top to bottom.
    pub right: Vec<Vertex>,
    /// `grid[i][j]` is the branch vertex in row `i + 1` (top first) and
    /// column `j + 1`.
    pub grid: Vec<Vec<Vertex>>,
    /// Subdivided top row, left to right.
    pub top_row: Path,
}

impl Counterexample {
    /// Number of subdivided top-row edges that `p` traverses.
    pub fn top_edges(&self, p: &Path) -> usize {
        let on_row = self.top_row.edge_set();
        // Each grid edge of the top row is two subdivided edges.
        p.edges().filter(|&(u, v)| on_row.contains(&edge_key(u, v))).count() / 2
    }
}

/// Branch vertices get ids `0..n²` row by row, then left terminals, right
/// terminals, and subdivision vertices in order of creation.
#[allow(clippy::needless_range_loop)]
pub fn build_counterexample(n: usize, d: usize) -> Result<Counterexample> {
    if n < 2 {
        return Err(Error::InvalidParameters(format!("grid size must be at least 2, got {n}")));
    }
    if d != 1 && d != 3 {
        return Err(Error::InvalidParameters(format!("d must be 1 or 3, got {d}")));
    }
    let mut g = Graph::with_vertices(n * n + 2 * n);
    let grid: Vec<Vec<Vertex>> = (0..n).map(|i| (0..n).map(|j| i * n + j).collect()).collect();
    let left: Vec<Vertex> = (0..n).map(|i| n * n + i).collect();
    let right: Vec<Vertex> = (0..n).map(|i| n * n + n + i).collect();
    let mut top = vec![grid[0][0]];
    for j in 1..n {
        let seg = g.add_path(grid[0][j - 1], grid[0][j], 2)?;
        top.extend(&seg.vertices()[1..]);
    }
    for i in 1..n {
        for j in 1..n {
            g.add_path(grid[i][j - 1], grid[i][j], 4)?;
        }
    }
    for i in 1..n {
        for j in 0..n {
            g.add_path(grid[i - 1][j], grid[i][j], 4)?;
        }
    }
    for i in 0..n {
        g.add_path(left[i], grid[i][0], 4)?;
        g.add_path(right[i], grid[i][n - 1], d + 2)?;
    }
    let a = left.iter().chain(&right).copied().collect();
    Ok(Counterexample { graph: g, a, n, d, left, right, grid, top_row: Path::new(top) })
}

/// Deletes edges inside `a` and subdivides every remaining edge at `a` once,
/// so that `A`-paths of length 2 modulo 4 become `A`-paths of length 0.
pub fn d2_reduction(g: &Graph, a: &VertexSet) -> Result<(Graph, ReductionTrace)> {
    let mut h = g.clone();
    h.clear_labels();
    let mut trace = ReductionTrace::default();
    for v in g.vertices() {
        trace.forward_vertex_map.insert(v, vec![v]);
    }
    for &v in a {
        trace.a_map.insert(v, vec![v]);
    }
    let edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    let mut dropped = Vec::new();
    let mut subdivided = Vec::new();
    for (u, v) in edges {
        match (a.contains(&u), a.contains(&v)) {
            (true, true) => {
                h.remove_edge(u, v);
                dropped.push((u, v));
            }
            (false, false) => {}
            _ => {
                h.remove_edge(u, v);
                let p = h.add_path(u, v, 2)?;
                subdivided.push((u, v, p.vertices()[1]));
            }
        }
    }
    trace.notes.insert("dropped_terminal_edges".into(), json!(dropped));
    trace.notes.insert("subdivisions".into(), json!(subdivided));
    Ok((h, trace))
}
