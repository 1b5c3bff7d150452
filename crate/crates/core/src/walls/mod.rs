//! Walls: elementary walls, subdivisions and subwalls.
//!
//! Coordinates are `(row, column)` with row 1 on top. In the elementary
//! `n`-wall the vertical edge between rows `r` and `r + 1` at column `c`
//! exists iff `r` and `c` have the same parity.

pub mod linkage;
pub mod tangle;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::connectivity::is_bipartite;
use crate::error::{Error, Result};
use crate::graph::{pairwise_disjoint, Graph, Path, Vertex, VertexSet};
use crate::io::GraphDoc;

pub type Coord = (usize, usize);

fn ekey(a: Coord, b: Coord) -> (Coord, Coord) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// A subdivided elementary wall. Every elementary edge is realised by a path
/// between the images of its ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wall {
    size: usize,
    graph: Graph,
    coords: BTreeMap<Coord, Vertex>,
    /// Keyed by the ordered coordinate pair; each path runs from the smaller
    /// coordinate to the larger.
    edge_paths: BTreeMap<(Coord, Coord), Path>,
    nails: Vec<Vertex>,
}

/// Coordinates and edges of the elementary `n`-wall.
pub fn elementary_layout(n: usize) -> (Vec<Coord>, Vec<(Coord, Coord)>) {
    let rows = n + 1;
    let cols = 2 * n + 2;
    let mut edges = Vec::new();
    let mut degree: BTreeMap<Coord, usize> = BTreeMap::new();
    for r in 1..=rows {
        for c in 1..=cols {
            degree.entry((r, c)).or_default();
            if c < cols {
                edges.push(((r, c), (r, c + 1)));
            }
            if r < rows && r % 2 == c % 2 {
                edges.push(((r, c), (r + 1, c)));
            }
        }
    }
    for &(a, b) in &edges {
        *degree.get_mut(&a).unwrap() += 1;
        *degree.get_mut(&b).unwrap() += 1;
    }
    let gone: BTreeSet<Coord> = degree.iter().filter(|&(_, &d)| d == 1).map(|(&c, _)| c).collect();
    let coords = degree.keys().copied().filter(|c| !gone.contains(c)).collect();
    edges.retain(|(a, b)| !gone.contains(a) && !gone.contains(b));
    edges.sort();
    (coords, edges)
}

/// The elementary `n`-wall, vertex ids assigned in row-major order.
pub fn build_elementary_wall(n: usize) -> Result<Wall> {
    if n < 2 {
        return Err(Error::InvalidParameters(format!("wall size must be at least 2, got {n}")));
    }
    let (cs, es) = elementary_layout(n);
    let coords: BTreeMap<Coord, Vertex> = cs.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut graph = Graph::with_vertices(cs.len());
    let mut edge_paths = BTreeMap::new();
    for (a, b) in es {
        graph.add_edge(coords[&a], coords[&b])?;
        edge_paths.insert((a, b), Path::new(vec![coords[&a], coords[&b]]));
    }
    let nails = (1..=n).map(|m| coords[&(1, 2 * m)]).collect();
    Ok(Wall { size: n, graph, coords, edge_paths, nails })
}

/// Per-edge subdivision factors: every host edge on the path of an
/// elementary edge is replaced by a path of the given length.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SubdivisionRule {
    pub default: usize,
    pub overrides: BTreeMap<(Coord, Coord), usize>,
}

impl SubdivisionRule {
    pub fn uniform(length: usize) -> Self {
        SubdivisionRule { default: length, overrides: BTreeMap::new() }
    }

    pub fn with(mut self, a: Coord, b: Coord, length: usize) -> Self {
        self.overrides.insert(ekey(a, b), length);
        self
    }

    pub fn length(&self, a: Coord, b: Coord) -> usize {
        self.overrides.get(&ekey(a, b)).copied().unwrap_or(self.default)
    }
}

pub fn subdivide_wall(w: &Wall, rule: &SubdivisionRule) -> Result<Wall> {
    if rule.default == 0 || rule.overrides.values().any(|&l| l == 0) {
        return Err(Error::InvalidParameters("subdivision lengths must be positive".into()));
    }
    if let Some(k) = rule.overrides.keys().find(|k| !w.edge_paths.contains_key(k)) {
        return Err(Error::InvalidParameters(format!("{k:?} is not an elementary edge")));
    }
    let mut graph = Graph::new();
    for v in w.graph.vertices() {
        graph.add_vertex(v);
    }
    let mut edge_paths = BTreeMap::new();
    for (&(a, b), p) in &w.edge_paths {
        let len = rule.length(a, b);
        let mut seq = vec![p.first()];
        for (x, y) in p.edges() {
            if len == 1 {
                graph.add_edge(x, y)?;
                seq.push(y);
            } else {
                let q = graph.add_path(x, y, len)?;
                seq.extend_from_slice(&q.vertices()[1..]);
            }
        }
        edge_paths.insert((a, b), Path::new(seq));
    }
    Ok(Wall { size: w.size, graph, coords: w.coords.clone(), edge_paths, nails: w.nails.clone() })
}

/// Horizontal and vertical path indices (1-based) selecting a subwall.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallWindow {
    pub rows: Vec<usize>,
    pub columns: Vec<usize>,
}

impl WallWindow {
    /// Rows `r0..r0+s` and vertical paths `k0..k0+s`, giving a wall of size `s`.
    pub fn square(r0: usize, k0: usize, s: usize) -> Self {
        WallWindow { rows: (r0..=r0 + s).collect(), columns: (k0..=k0 + s).collect() }
    }
}

fn contiguous(xs: &[usize]) -> Option<(usize, usize)> {
    let mut v = xs.to_vec();
    v.sort_unstable();
    v.dedup();
    let (&lo, &hi) = (v.first()?, v.last()?);
    (hi - lo + 1 == v.len()).then_some((lo, hi))
}

pub fn extract_subwall(w: &Wall, window: &WallWindow) -> Result<Wall> {
    let (r0, r1) = contiguous(&window.rows)
        .ok_or_else(|| Error::NonContiguousWindow(format!("rows {:?}", window.rows)))?;
    let (k0, k1) = contiguous(&window.columns)
        .ok_or_else(|| Error::NonContiguousWindow(format!("columns {:?}", window.columns)))?;
    let s = r1 - r0;
    if k1 - k0 != s {
        return Err(Error::InvalidWall(format!(
            "window has {} rows but {} vertical paths",
            s + 1,
            k1 - k0 + 1
        )));
    }
    if s < 2 {
        return Err(Error::InvalidWall(format!("subwall size {s} is below 2")));
    }
    if r0 == 0 || k0 == 0 || r1 > w.size + 1 || k1 > w.size + 1 {
        return Err(Error::InvalidWall("window exceeds the wall".into()));
    }
    // An even first row is mirrored so the subwall's top row keeps the
    // elementary vertical pattern.
    let map = |(i, j): Coord| -> Coord {
        let r = r0 + i - 1;
        if r0 % 2 == 1 {
            (r, j + 2 * (k0 - 1))
        } else {
            (r, 2 * k0 + 2 * s + 1 - j)
        }
    };
    let (cs, es) = elementary_layout(s);
    let mut coords = BTreeMap::new();
    for c in cs {
        let v = *w
            .coords
            .get(&map(c))
            .ok_or_else(|| Error::Internal(format!("subwall coordinate {c:?} has no image")))?;
        coords.insert(c, v);
    }
    let mut graph = Graph::new();
    let mut edge_paths = BTreeMap::new();
    for (a, b) in es {
        let p = w
            .edge_path(map(a), map(b))
            .ok_or_else(|| Error::Internal(format!("edge {a:?}-{b:?} has no image")))?;
        for &v in p.vertices() {
            graph.add_vertex(v);
        }
        for (x, y) in p.edges() {
            graph.add_edge(x, y)?;
        }
        edge_paths.insert((a, b), p);
    }
    let nails = (1..=s).map(|m| coords[&(1, 2 * m)]).collect();
    Ok(Wall { size: s, graph, coords, edge_paths, nails })
}

/// Whether `sub` avoids the first and last `k` horizontal and vertical
/// paths of `w`.
pub fn k_contained(w: &Wall, sub: &Wall, k: usize) -> bool {
    if k == 0 {
        return true;
    }
    let n = w.size + 1;
    let outer: Vec<usize> = (1..=n).filter(|&i| i <= k || i + k > n).collect();
    let hs = w.horizontal_paths();
    let vs = w.vertical_paths();
    let mut banned = VertexSet::new();
    for &i in &outer {
        banned.extend(hs[i - 1].vertices());
        banned.extend(vs[i - 1].vertices());
    }
    sub.graph.vertices().all(|v| !banned.contains(&v))
}

impl Wall {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn coord(&self, c: Coord) -> Option<Vertex> {
        self.coords.get(&c).copied()
    }

    pub fn coords(&self) -> &BTreeMap<Coord, Vertex> {
        &self.coords
    }

    pub fn branch_vertices(&self) -> VertexSet {
        self.coords.values().copied().collect()
    }

    /// Nails in left-to-right order.
    pub fn nails(&self) -> &[Vertex] {
        &self.nails
    }

    pub fn nail_set(&self) -> VertexSet {
        self.nails.iter().copied().collect()
    }

    pub fn elementary_edges(&self) -> impl Iterator<Item = (Coord, Coord)> + '_ {
        self.edge_paths.keys().copied()
    }

    /// Path realising the elementary edge `ab`, oriented from `a` to `b`.
    pub fn edge_path(&self, a: Coord, b: Coord) -> Option<Path> {
        let p = self.edge_paths.get(&ekey(a, b))?;
        Some(if a < b { p.clone() } else { p.reversed() })
    }

    /// Concatenates the edge paths along a walk of adjacent coordinates.
    pub fn trace(&self, walk: &[Coord]) -> Result<Path> {
        let first = self.coord(walk[0]).ok_or_else(|| {
            Error::InvalidWall(format!("no vertex at {:?}", walk[0]))
        })?;
        let mut p = Path::single(first);
        for w in walk.windows(2) {
            let e = self
                .edge_path(w[0], w[1])
                .ok_or_else(|| Error::InvalidWall(format!("no edge {:?}-{:?}", w[0], w[1])))?;
            p = p.join(&e)?;
        }
        Ok(p)
    }

    fn row_walk(&self, r: usize) -> Vec<Coord> {
        self.coords.keys().copied().filter(|&(i, _)| i == r).collect()
    }

    /// Coordinates of the `k`-th vertical path, top to bottom.
    pub fn vertical_walk(&self, k: usize) -> Vec<Coord> {
        let col = |r: usize| if r % 2 == 1 { 2 * k - 1 } else { 2 * k };
        let mut walk = vec![(1, col(1))];
        for r in 1..=self.size {
            if r > 1 && col(r) != col(r - 1) {
                walk.push((r, col(r)));
            }
            walk.push((r + 1, col(r)));
        }
        walk
    }

    /// Full rows, top to bottom.
    pub fn horizontal_paths(&self) -> Vec<Path> {
        (1..=self.size + 1).map(|r| self.trace(&self.row_walk(r)).unwrap()).collect()
    }

    pub fn vertical_paths(&self) -> Vec<Path> {
        (1..=self.size + 1).map(|k| self.trace(&self.vertical_walk(k)).unwrap()).collect()
    }

    pub fn top_row(&self) -> Path {
        self.trace(&self.row_walk(1)).unwrap()
    }

    /// The six corners of brick `j` (1-based) in layer `r`, clockwise from
    /// the top left.
    pub fn brick_walk(&self, r: usize, j: usize) -> Vec<Coord> {
        let c = if r % 2 == 1 { 2 * j - 1 } else { 2 * j };
        vec![(r, c), (r, c + 1), (r, c + 2), (r + 1, c + 2), (r + 1, c + 1), (r + 1, c)]
    }

    /// Brick as a cyclic vertex sequence.
    pub fn brick(&self, r: usize, j: usize) -> Vec<Vertex> {
        let mut walk = self.brick_walk(r, j);
        walk.push(walk[0]);
        let mut seq = self.trace(&walk).unwrap().into_vertices();
        seq.pop();
        seq
    }

    /// All bricks, layer by layer.
    pub fn bricks(&self) -> Vec<Vec<Vertex>> {
        let n = self.size;
        (1..=n).flat_map(|r| (1..=n).map(move |j| (r, j))).map(|(r, j)| self.brick(r, j)).collect()
    }

    /// Outer cycle as a cyclic sequence starting at the top-left corner:
    /// top row, last vertical path, bottom row, first vertical path.
    pub fn outer_cycle(&self) -> Vec<Vertex> {
        let n = self.size;
        let mut walk = self.row_walk(1);
        walk.extend(self.vertical_walk(n + 1).into_iter().skip(1));
        let mut bottom = self.row_walk(n + 1);
        bottom.reverse();
        walk.extend(bottom.into_iter().skip(1));
        let mut left = self.vertical_walk(1);
        left.reverse();
        walk.extend(left.into_iter().skip(1));
        let mut seq = self.trace(&walk).unwrap().into_vertices();
        seq.pop();
        seq
    }

    /// Checks the structural invariants of a wall.
    pub fn validate(&self) -> Result<()> {
        let n = self.size;
        let fail = |m: String| Err(Error::InvalidWall(m));
        let hs = self.horizontal_paths();
        let vs = self.vertical_paths();
        if hs.len() != n + 1 || vs.len() != n + 1 {
            return fail("wrong number of horizontal or vertical paths".into());
        }
        if !pairwise_disjoint(&hs) || !pairwise_disjoint(&vs) {
            return fail("horizontal or vertical paths intersect".into());
        }
        for p in hs.iter().chain(&vs) {
            p.validate_in(&self.graph)?;
        }
        let top = self.top_row();
        for &x in &self.nails {
            let pos = top.position(x);
            if self.graph.degree(x) != 2 || !matches!(pos, Some(i) if i > 0 && i < top.length()) {
                return fail(format!("nail {x} is not an interior degree-2 top-row vertex"));
            }
        }
        if self.nails.len() != n {
            return fail(format!("expected {n} nails"));
        }
        let branch = self.branch_vertices();
        for b in self.bricks() {
            let on: usize = b.iter().filter(|v| branch.contains(v)).count();
            let distinct: VertexSet = b.iter().copied().collect();
            if distinct.len() != b.len() || on != 6 {
                return fail(format!("brick {b:?} is not a cycle through six branch vertices"));
            }
            for i in 0..b.len() {
                if !self.graph.has_edge(b[i], b[(i + 1) % b.len()]) {
                    return fail(format!("brick {b:?} is not a cycle"));
                }
            }
        }
        let all_even = self.bricks().iter().all(|b| b.len() % 2 == 0);
        if all_even != is_bipartite(&self.graph) {
            return fail("bipartiteness disagrees with brick parities".into());
        }
        Ok(())
    }

    pub fn to_doc(&self) -> WallDoc {
        WallDoc {
            graph: GraphDoc::from_graph(&self.graph, None),
            size: self.size,
            coords: self.coords.iter().map(|(&(i, j), &v)| (i, j, v)).collect(),
            edge_paths: self.edge_paths.iter().map(|(&(a, b), p)| (a, b, p.clone())).collect(),
            nails: self.nails.clone(),
        }
    }

    pub fn from_doc(doc: &WallDoc) -> Result<Wall> {
        let (graph, _) = doc.graph.to_graph()?;
        let coords: BTreeMap<Coord, Vertex> =
            doc.coords.iter().map(|&(i, j, v)| ((i, j), v)).collect();
        let mut edge_paths = BTreeMap::new();
        for (a, b, p) in &doc.edge_paths {
            p.validate_in(&graph)?;
            if coords.get(a) != Some(&p.first()) || coords.get(b) != Some(&p.last()) || a >= b {
                return Err(Error::InvalidWall(format!("edge path {a:?}-{b:?} misplaced")));
            }
            edge_paths.insert((*a, *b), p.clone());
        }
        let w = Wall { size: doc.size, graph, coords, edge_paths, nails: doc.nails.clone() };
        let (cs, es) = elementary_layout(w.size);
        let keys: Vec<Coord> = w.coords.keys().copied().collect();
        let ekeys: Vec<(Coord, Coord)> = w.edge_paths.keys().copied().collect();
        if keys != cs || ekeys != es {
            return Err(Error::InvalidWall("coordinates do not match the elementary wall".into()));
        }
        w.validate()?;
        Ok(w)
    }
}

/// Wire form of a wall: its graph plus coordinates, edge paths and nails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WallDoc {
    pub graph: GraphDoc,
    pub size: usize,
    pub coords: Vec<(usize, usize, Vertex)>,
    pub edge_paths: Vec<(Coord, Coord, Path)>,
    pub nails: Vec<Vertex>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_walls_have_expected_counts() {
        for n in 2..=8 {
            let w = build_elementary_wall(n).unwrap();
            w.validate().unwrap();
            assert_eq!(w.graph().vertex_count(), 2 * n * n + 4 * n);
            assert_eq!(w.nails().len(), n);
            assert_eq!(w.bricks().len(), n * n);
            assert!(w.graph().vertices().all(|v| (2..=3).contains(&w.graph().degree(v))));
        }
        assert!(build_elementary_wall(1).is_err());
    }

    #[test]
    fn outer_cycle_is_a_cycle() {
        for n in 2..=5 {
            let w = build_elementary_wall(n).unwrap();
            let c = w.outer_cycle();
            let set: VertexSet = c.iter().copied().collect();
            assert_eq!(set.len(), c.len());
            for i in 0..c.len() {
                assert!(w.graph().has_edge(c[i], c[(i + 1) % c.len()]));
            }
        }
    }

    #[test]
    fn subdivision_parities() {
        let w = build_elementary_wall(3).unwrap();
        assert_eq!(subdivide_wall(&w, &SubdivisionRule::uniform(1)).unwrap(), w);
        let w4 = subdivide_wall(&w, &SubdivisionRule::uniform(4)).unwrap();
        w4.validate().unwrap();
        assert!(w4.bricks().iter().all(|b| b.len() == 24));
        let rule = SubdivisionRule::uniform(1).with((1, 1), (1, 2), 2);
        let odd = subdivide_wall(&w, &rule).unwrap();
        odd.validate().unwrap();
        assert_eq!(odd.brick(1, 1).len(), 7);
        assert!(subdivide_wall(&w, &SubdivisionRule::uniform(0)).is_err());
    }

    #[test]
    fn subwalls() {
        let w = build_elementary_wall(8).unwrap();
        let full = extract_subwall(&w, &WallWindow::square(1, 1, 8)).unwrap();
        assert_eq!(full, w);
        assert!(!k_contained(&w, &full, 1));
        assert!(k_contained(&w, &full, 0));
        for r0 in 2..=4 {
            let sub = extract_subwall(&w, &WallWindow::square(r0, 3, 4)).unwrap();
            sub.validate().unwrap();
            assert!(k_contained(&w, &sub, 1));
        }
        let central = extract_subwall(&w, &WallWindow::square(4, 4, 2)).unwrap();
        assert!(k_contained(&w, &central, 2));
        let bad = WallWindow { rows: vec![2, 3, 5], columns: vec![2, 3, 4] };
        assert!(matches!(extract_subwall(&w, &bad), Err(Error::NonContiguousWindow(_))));
    }

    #[test]
    fn doc_round_trip() {
        let w = subdivide_wall(&build_elementary_wall(3).unwrap(), &SubdivisionRule::uniform(2)).unwrap();
        assert_eq!(Wall::from_doc(&w.to_doc()).unwrap(), w);
    }
}
