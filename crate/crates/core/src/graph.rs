//! Simple undirected graphs with stable vertex ids, optional `Z_m` edge labels,
//! paths and vertex separations.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type VertexSet = BTreeSet<Vertex>;

/// Unordered edge key, smaller endpoint first.
pub fn edge_key(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labelling {
    modulus: u32,
    values: BTreeMap<(Vertex, Vertex), u32>,
}

impl Labelling {
    pub fn modulus(&self) -> u32 {
        self.modulus
    }
}

/// A finite simple undirected graph.
///
/// Vertex ids are caller-chosen integers and survive deletions, so a subgraph
/// keeps the names of the graph it came from.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    adj: BTreeMap<Vertex, BTreeSet<Vertex>>,
    labels: Option<Labelling>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph on vertices `0..n` with no edges.
    pub fn with_vertices(n: usize) -> Self {
        let mut g = Self::new();
        for v in 0..n {
            g.add_vertex(v);
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut g = Self::with_vertices(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: Vertex) -> bool {
        if self.adj.contains_key(&v) {
            return false;
        }
        self.adj.insert(v, BTreeSet::new());
        true
    }

    /// Adds a vertex with the next unused id.
    pub fn fresh_vertex(&mut self) -> Vertex {
        let v = self.next_id();
        self.add_vertex(v);
        v
    }

    pub fn next_id(&self) -> Vertex {
        self.adj.keys().next_back().map_or(0, |&v| v + 1)
    }

    /// Adds `uv`. Returns `false` when the edge was already present; parallel
    /// edges collapse.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<bool> {
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        for x in [u, v] {
            if !self.adj.contains_key(&x) {
                return Err(Error::UnknownVertex(x));
            }
        }
        let fresh = self.adj.get_mut(&u).unwrap().insert(v);
        self.adj.get_mut(&v).unwrap().insert(u);
        if fresh {
            if let Some(l) = self.labels.as_mut() {
                l.values.insert(edge_key(u, v), 0);
            }
        }
        Ok(fresh)
    }

    /// Adds a path of `length` edges from `u` to `v` through fresh interior
    /// vertices and returns its vertex sequence.
    pub fn add_path(&mut self, u: Vertex, v: Vertex, length: usize) -> Result<Path> {
        if length == 0 {
            return Err(Error::InvalidParameters("path length must be positive".into()));
        }
        let mut seq = vec![u];
        for _ in 1..length {
            seq.push(self.fresh_vertex());
        }
        seq.push(v);
        for w in seq.windows(2) {
            self.add_edge(w[0], w[1])?;
        }
        Ok(Path::new(seq))
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        let removed = self.adj.get_mut(&u).is_some_and(|s| s.remove(&v));
        if removed {
            self.adj.get_mut(&v).unwrap().remove(&u);
            if let Some(l) = self.labels.as_mut() {
                l.values.remove(&edge_key(u, v));
            }
        }
        removed
    }

    pub fn remove_vertex(&mut self, v: Vertex) -> bool {
        let Some(nbrs) = self.adj.remove(&v) else {
            return false;
        };
        for u in nbrs {
            self.adj.get_mut(&u).unwrap().remove(&v);
            if let Some(l) = self.labels.as_mut() {
                l.values.remove(&edge_key(u, v));
            }
        }
        true
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj.get(&u).is_some_and(|s| s.contains(&v))
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.adj.keys().copied().collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .flat_map(|(&u, s)| s.range(u + 1..).map(move |&v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.get(&v).into_iter().flat_map(|s| s.iter().copied())
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj.get(&v).map_or(0, BTreeSet::len)
    }

    /// `G - X`: ids of the remaining vertices are unchanged.
    pub fn without(&self, removed: &VertexSet) -> Graph {
        let mut g = self.clone();
        for &v in removed {
            g.remove_vertex(v);
        }
        g
    }

    /// `G[X]`.
    pub fn induced(&self, keep: &VertexSet) -> Graph {
        let mut g = Graph {
            adj: BTreeMap::new(),
            labels: self.labels.as_ref().map(|l| Labelling {
                modulus: l.modulus,
                values: BTreeMap::new(),
            }),
        };
        for &v in keep {
            if self.contains(v) {
                g.adj.insert(v, BTreeSet::new());
            }
        }
        for (u, v) in self.edges() {
            if keep.contains(&u) && keep.contains(&v) {
                g.adj.get_mut(&u).unwrap().insert(v);
                g.adj.get_mut(&v).unwrap().insert(u);
                if let (Some(dst), Some(src)) = (g.labels.as_mut(), self.labels.as_ref()) {
                    dst.values.insert((u, v), src.values[&(u, v)]);
                }
            }
        }
        g
    }

    /// Attaches an all-zero `Z_m` labelling (replacing any existing one).
    pub fn set_modulus(&mut self, modulus: u32) -> Result<()> {
        if modulus < 2 {
            return Err(Error::InvalidParameters(format!(
                "label modulus must be at least 2, got {modulus}"
            )));
        }
        let values = self.edges().map(|e| (e, 0)).collect();
        self.labels = Some(Labelling { modulus, values });
        Ok(())
    }

    pub fn clear_labels(&mut self) {
        self.labels = None;
    }

    pub fn set_label(&mut self, u: Vertex, v: Vertex, value: u32) -> Result<()> {
        if !self.has_edge(u, v) {
            return Err(Error::MissingEdge(u, v));
        }
        let l = self.labels.as_mut().ok_or(Error::MissingLabels)?;
        if value >= l.modulus {
            return Err(Error::LabelOutOfRange { u, v, value, modulus: l.modulus });
        }
        l.values.insert(edge_key(u, v), value);
        Ok(())
    }

    pub fn label(&self, u: Vertex, v: Vertex) -> Option<u32> {
        self.labels.as_ref()?.values.get(&edge_key(u, v)).copied()
    }

    pub fn modulus(&self) -> Option<u32> {
        self.labels.as_ref().map(|l| l.modulus)
    }

    pub fn is_labelled(&self) -> bool {
        self.labels.is_some()
    }

    /// Connected components in order of their smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::new();
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen.contains(&s) {
                continue;
            }
            let comp = self.reachable_from(std::iter::once(s), &VertexSet::new());
            seen.extend(comp.iter().copied());
            out.push(comp);
        }
        out
    }

    /// Vertices reachable from `sources` without entering `blocked`.
    /// Blocked sources are not expanded.
    pub fn reachable_from(
        &self,
        sources: impl IntoIterator<Item = Vertex>,
        blocked: &VertexSet,
    ) -> VertexSet {
        let mut seen = VertexSet::new();
        let mut queue = VecDeque::new();
        for s in sources {
            if self.contains(s) && !blocked.contains(&s) && seen.insert(s) {
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            for w in self.neighbors(u) {
                if !blocked.contains(&w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// BFS shortest path from `s` to any vertex of `targets`, avoiding
    /// `blocked`; ties go to the lowest ids.
    pub fn shortest_path(
        &self,
        s: Vertex,
        targets: &VertexSet,
        blocked: &VertexSet,
    ) -> Option<Path> {
        if !self.contains(s) || blocked.contains(&s) {
            return None;
        }
        let mut parent = BTreeMap::new();
        parent.insert(s, s);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if targets.contains(&u) {
                let mut seq = vec![u];
                let mut x = u;
                while parent[&x] != x {
                    x = parent[&x];
                    seq.push(x);
                }
                seq.reverse();
                return Some(Path::new(seq));
            }
            for w in self.neighbors(u) {
                if !blocked.contains(&w) && !parent.contains_key(&w) {
                    parent.insert(w, u);
                    queue.push_back(w);
                }
            }
        }
        None
    }
}

/// A simple path given by its vertex sequence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Path(Vec<Vertex>);

impl Path {
    pub fn new(vertices: Vec<Vertex>) -> Self {
        Path(vertices)
    }

    pub fn single(v: Vertex) -> Self {
        Path(vec![v])
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn into_vertices(self) -> Vec<Vertex> {
        self.0
    }

    /// Number of edges.
    pub fn length(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Vertex {
        self.0[0]
    }

    pub fn last(&self) -> Vertex {
        *self.0.last().expect("empty path")
    }

    pub fn interior(&self) -> &[Vertex] {
        if self.0.len() <= 2 {
            &[]
        } else {
            &self.0[1..self.0.len() - 1]
        }
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.contains(&v)
    }

    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.0.iter().position(|&x| x == v)
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.0.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn edge_set(&self) -> BTreeSet<(Vertex, Vertex)> {
        self.edges().map(|(u, v)| edge_key(u, v)).collect()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.0.iter().copied().collect()
    }

    pub fn reversed(&self) -> Path {
        let mut v = self.0.clone();
        v.reverse();
        Path(v)
    }

    /// The orientation with the smaller endpoint first.
    pub fn canonical(&self) -> Path {
        if self.0.len() > 1 && self.first() > self.last() {
            self.reversed()
        } else {
            self.clone()
        }
    }

    /// Subpath between positions `i` and `j` inclusive, reversed when `i > j`.
    pub fn segment(&self, i: usize, j: usize) -> Path {
        if i <= j {
            Path(self.0[i..=j].to_vec())
        } else {
            let mut v = self.0[j..=i].to_vec();
            v.reverse();
            Path(v)
        }
    }

    /// Concatenation sharing the joint vertex: `self` must end where `other`
    /// starts.
    pub fn join(&self, other: &Path) -> Result<Path> {
        if self.last() != other.first() {
            return Err(Error::InvalidPath {
                path: other.0.clone(),
                reason: format!("does not start at {}", self.last()),
            });
        }
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0[1..]);
        Ok(Path(v))
    }

    pub fn is_simple(&self) -> bool {
        self.vertex_set().len() == self.0.len()
    }

    pub fn is_disjoint(&self, other: &Path) -> bool {
        let mine = self.vertex_set();
        other.0.iter().all(|v| !mine.contains(v))
    }

    /// Checks that the path is nonempty, simple and follows edges of `g`.
    pub fn validate_in(&self, g: &Graph) -> Result<()> {
        let fail = |reason: String| Error::InvalidPath { path: self.0.clone(), reason };
        if self.0.is_empty() {
            return Err(fail("empty".into()));
        }
        if let Some(&v) = self.0.iter().find(|&&v| !g.contains(v)) {
            return Err(fail(format!("vertex {v} not in graph")));
        }
        if !self.is_simple() {
            return Err(fail("repeats a vertex".into()));
        }
        if let Some((u, v)) = self.edges().find(|&(u, v)| !g.has_edge(u, v)) {
            return Err(fail(format!("{u}-{v} is not an edge")));
        }
        Ok(())
    }
}

/// Are the paths pairwise vertex-disjoint?
pub fn pairwise_disjoint(paths: &[Path]) -> bool {
    let mut seen = VertexSet::new();
    paths.iter().flat_map(|p| p.vertices()).all(|&v| seen.insert(v))
}

/// Sum of edge labels along `p`, reduced modulo the labelling's modulus.
pub fn path_weight(g: &Graph, p: &Path) -> Result<u32> {
    let m = g.modulus().ok_or(Error::MissingLabels)?;
    let mut total = 0u32;
    for (u, v) in p.edges() {
        let l = g.label(u, v).ok_or(Error::MissingEdge(u, v))?;
        total = (total + l) % m;
    }
    Ok(total)
}

/// A separation `(C, D)` of a graph, stored by its two vertex sides.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Separation {
    left: VertexSet,
    right: VertexSet,
}

impl Separation {
    /// Rejects sides that miss a vertex or leave an edge between the two
    /// private parts.
    pub fn new(g: &Graph, left: VertexSet, right: VertexSet) -> Result<Self> {
        for v in left.iter().chain(&right) {
            if !g.contains(*v) {
                return Err(Error::InvalidSeparation(format!("vertex {v} not in graph")));
            }
        }
        if let Some(v) = g.vertices().find(|v| !left.contains(v) && !right.contains(v)) {
            return Err(Error::InvalidSeparation(format!("vertex {v} is on neither side")));
        }
        for (u, v) in g.edges() {
            let crossing = |a: Vertex, b: Vertex| {
                !right.contains(&a) && !left.contains(&b)
            };
            if crossing(u, v) || crossing(v, u) {
                return Err(Error::InvalidSeparation(format!("edge {u}-{v} crosses")));
            }
        }
        Ok(Separation { left, right })
    }

    pub(crate) fn new_unchecked(left: VertexSet, right: VertexSet) -> Self {
        Separation { left, right }
    }

    pub fn left(&self) -> &VertexSet {
        &self.left
    }

    pub fn right(&self) -> &VertexSet {
        &self.right
    }

    pub fn separator(&self) -> VertexSet {
        self.left.intersection(&self.right).copied().collect()
    }

    pub fn order(&self) -> usize {
        self.left.intersection(&self.right).count()
    }

    pub fn flipped(&self) -> Separation {
        Separation { left: self.right.clone(), right: self.left.clone() }
    }
}
