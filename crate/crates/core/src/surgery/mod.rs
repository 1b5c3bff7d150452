//! Executable versions of the constructive path and model surgeries.

mod assembly;
mod model;
mod reroute;
mod wall_links;
mod windmill;

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

pub use assembly::assemble_zero_paths;
pub use model::{find_model_linkage, nicely_linked_to_model, windmills_from_odd_model, ModelLinkage};
pub use reroute::{reroute_two_families, Rerouted};
pub use wall_links::{
    link_a_to_subwall, nicely_linked_to_wall, precedes, select_link_and_linkage,
    windmills_from_odd_wall, LinkSelection, SubwallLink,
};
pub use windmill::{extract_zero_path_from_windmill, Windmill};

use crate::error::{Error, Result};
use crate::graph::{Graph, Path, Vertex, VertexSet};

/// A model of a clique: disjoint connected branch sets, indexed `0..t`, and
/// for every pair `i < j` a host edge from set `i` to set `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueModel {
    pub branch_sets: Vec<VertexSet>,
    /// `(i, j) -> (u, v)` with `i < j`, `u` in set `i`, `v` in set `j`.
    #[serde(with = "model_edges")]
    pub edges: BTreeMap<(usize, usize), (Vertex, Vertex)>,
}

mod model_edges {
    use super::*;
    use serde::{Deserializer, Serializer};

    type Edges = BTreeMap<(usize, usize), (Vertex, Vertex)>;

    pub fn serialize<S: Serializer>(
        m: &Edges,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<(usize, usize, Vertex, Vertex)> =
            m.iter().map(|(&(i, j), &(u, v))| (i, j, u, v)).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Edges, D::Error> {
        let v: Vec<(usize, usize, Vertex, Vertex)> = Vec::deserialize(d)?;
        Ok(v.into_iter().map(|(i, j, u, v)| ((i, j), (u, v))).collect())
    }
}

impl CliqueModel {
    pub fn order(&self) -> usize {
        self.branch_sets.len()
    }

    pub fn edge(&self, i: usize, j: usize) -> (Vertex, Vertex) {
        if i < j {
            self.edges[&(i, j)]
        } else {
            let (u, v) = self.edges[&(j, i)];
            (v, u)
        }
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.branch_sets.iter().flatten().copied().collect()
    }

    /// Index of the branch set containing `v`.
    pub fn set_of(&self, v: Vertex) -> Option<usize> {
        self.branch_sets.iter().position(|s| s.contains(&v))
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        let fail = |m: String| Err(Error::InvalidModel(m));
        let mut seen = VertexSet::new();
        for (i, s) in self.branch_sets.iter().enumerate() {
            if s.is_empty() {
                return fail(format!("branch set {i} is empty"));
            }
            if s.iter().any(|&v| !seen.insert(v)) {
                return fail(format!("branch set {i} overlaps an earlier one"));
            }
            let h = g.induced(s);
            if h.vertex_count() != s.len() || !h.is_connected() {
                return fail(format!("branch set {i} does not induce a connected subgraph"));
            }
        }
        let t = self.order();
        if self.edges.len() != t * (t - 1) / 2 {
            return fail(format!("expected {} model edges, found {}", t * (t - 1) / 2, self.edges.len()));
        }
        for (&(i, j), &(u, v)) in &self.edges {
            if i >= j || j >= t {
                return fail(format!("bad model edge index ({i}, {j})"));
            }
            if !self.branch_sets[i].contains(&u) || !self.branch_sets[j].contains(&v) || !g.has_edge(u, v) {
                return fail(format!("model edge ({i}, {j}) is not a host edge between its sets"));
            }
        }
        Ok(())
    }

    /// The submodel on the branch sets `keep`, re-indexed in the given order.
    pub fn submodel(&self, keep: &[usize]) -> CliqueModel {
        let branch_sets = keep.iter().map(|&i| self.branch_sets[i].clone()).collect();
        let mut edges = BTreeMap::new();
        for (x, &i) in keep.iter().enumerate() {
            for (y, &j) in keep.iter().enumerate().skip(x + 1) {
                edges.insert((x, y), self.edge(i, j));
            }
        }
        CliqueModel { branch_sets, edges }
    }

    /// Spanning tree of set `i` as a parent map, rooted at its least vertex.
    pub fn tree(&self, g: &Graph, i: usize) -> BTreeMap<Vertex, Option<Vertex>> {
        let s = &self.branch_sets[i];
        let root = *s.first().expect("non-empty branch set");
        let mut parent = BTreeMap::from([(root, None)]);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for v in g.neighbors(u) {
                if s.contains(&v) && !parent.contains_key(&v) {
                    parent.insert(v, Some(u));
                    queue.push_back(v);
                }
            }
        }
        parent
    }

    /// The path from `x` to `y` in the spanning tree of set `i`.
    pub fn tree_path(&self, g: &Graph, i: usize, x: Vertex, y: Vertex) -> Path {
        tree_path(&self.tree(g, i), x, y)
    }

    /// The cycle through the branch sets `i`, `j`, `k` and their model edges.
    pub fn triangle_cycle(&self, g: &Graph, i: usize, j: usize, k: usize) -> Vec<Vertex> {
        let mut cyc = Vec::new();
        for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
            // Enter set y from x, leave towards z.
            let a = self.edge(x, y).1;
            let b = self.edge(y, z).0;
            cyc.extend(self.tree_path(g, y, a, b).into_vertices());
        }
        cyc
    }

    /// Whether every triangle cycle is odd; otherwise the first violating
    /// triple.
    pub fn check_odd(&self, g: &Graph) -> Result<()> {
        self.validate(g)?;
        let t = self.order();
        for i in 0..t {
            for j in i + 1..t {
                for k in j + 1..t {
                    let c = self.triangle_cycle(g, i, j, k);
                    if c.len().is_multiple_of(2) {
                        return Err(Error::InvalidModel(format!(
                            "triangle ({i}, {j}, {k}) has an even cycle of length {}",
                            c.len()
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn tree_path(parent: &BTreeMap<Vertex, Option<Vertex>>, x: Vertex, y: Vertex) -> Path {
    let up = |mut v: Vertex| {
        let mut seq = vec![v];
        while let Some(Some(p)) = parent.get(&v) {
            v = *p;
            seq.push(v);
        }
        seq
    };
    let (ux, uy) = (up(x), up(y));
    let on_y: VertexSet = uy.iter().copied().collect();
    let meet = ux.iter().position(|v| on_y.contains(v)).expect("same tree");
    let lca = ux[meet];
    let mut seq = ux[..=meet].to_vec();
    let k = uy.iter().position(|&v| v == lca).unwrap();
    seq.extend(uy[..k].iter().rev());
    Path::new(seq)
}
